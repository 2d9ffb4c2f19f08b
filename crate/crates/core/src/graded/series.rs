//! Lower central and derived series by exact row reduction.

use serde::Serialize;

use super::algebra::{basis_vector, span_basis, StructureAlgebra, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    /// Dimensions of the terms `1, 2, ...` computed.
    pub dims: Vec<usize>,
    /// The series reached zero at term `class`.
    pub class: Option<usize>,
    /// Two consecutive terms agree and are nonzero.
    pub stabilized: bool,
    /// The step budget ran out before either outcome.
    pub exhausted: bool,
}

impl SeriesReport {
    pub fn is_nilpotent(&self) -> bool {
        self.class.is_some()
    }
}

/// Default step budget `2 dim`, at least 1.
pub fn default_steps(alg: &StructureAlgebra) -> usize {
    (2 * alg.dim()).max(1)
}

fn run(alg: &StructureAlgebra, t_max: usize, next: impl Fn(&[Vector]) -> Vec<Vector>) -> SeriesReport {
    let d = alg.dim();
    let all: Vec<Vector> = (0..d).map(|i| basis_vector(d, i)).collect();
    let mut term = next(&all);
    let mut dims = vec![term.len()];
    loop {
        if term.is_empty() {
            let class = dims.len();
            return SeriesReport { dims, class: Some(class), stabilized: false, exhausted: false };
        }
        if dims.len() >= t_max {
            return SeriesReport { dims, class: None, stabilized: false, exhausted: true };
        }
        let following = next(&term);
        // Terms are nested, so equal dimension means equal subspaces.
        let same = following.len() == term.len();
        dims.push(following.len());
        if same {
            return SeriesReport { dims, class: None, stabilized: true, exhausted: false };
        }
        term = following;
    }
}

fn brackets(alg: &StructureAlgebra, left: &[Vector], right: &[Vector]) -> Vec<Vector> {
    span_basis(left.iter().flat_map(|u| right.iter().map(move |v| alg.bracket(u, v))))
}

/// `gamma_1 = [L, L]`, `gamma_{t+1} = [gamma_t, L]`. The reported class is
/// the first `t` with `gamma_t = 0`, so an abelian algebra has class 1 and
/// the Heisenberg algebra class 2.
pub fn lower_central_series(alg: &StructureAlgebra, t_max: usize) -> SeriesReport {
    let d = alg.dim();
    let all: Vec<Vector> = (0..d).map(|i| basis_vector(d, i)).collect();
    run(alg, t_max, |term| brackets(alg, term, &all))
}

/// `delta_1 = [L, L]`, `delta_{t+1} = [delta_t, delta_t]`; `class` is then
/// the derived length.
pub fn derived_series(alg: &StructureAlgebra, t_max: usize) -> SeriesReport {
    run(alg, t_max, |term| brackets(alg, term, term))
}
