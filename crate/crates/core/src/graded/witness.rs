//! Graded algebras witnessing that a support is not arithmetically-free.

use serde::Serialize;

use super::algebra::{AlgebraBuilder, StructureAlgebra};
use super::grading::{direct_sum, Grading};
use super::GradedError;
use crate::groups::{cyclic_subgroup, full_orbit, is_arithmetically_free, AfVerdict, ElementSet, Extent, GroupElement};

#[derive(Clone, Debug)]
pub struct Witness {
    pub algebra: StructureAlgebra,
    pub grading: Grading,
    pub x: GroupElement,
    pub g: GroupElement,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessSummary {
    pub x: GroupElement,
    pub g: GroupElement,
    pub dim: usize,
    pub core_dim: usize,
    pub padding: usize,
}

impl Witness {
    pub fn summary(&self) -> WitnessSummary {
        let n = match self.g.order() {
            crate::groups::Order::Finite(n) => n as usize,
            crate::groups::Order::Infinite => 0,
        };
        WitnessSummary {
            x: self.x.clone(),
            g: self.g.clone(),
            dim: self.algebra.dim(),
            core_dim: n + 1,
            padding: self.algebra.dim() - (n + 1),
        }
    }
}

/// `Lm(n)`: basis `v, w_0, ..., w_{n-1}` with `[v, w_i] = w_{i+1 mod n}`.
pub fn standard_metabelian(n: usize) -> StructureAlgebra {
    let mut labels = vec!["v".to_string()];
    labels.extend((0..n).map(|i| format!("w{i}")));
    let mut b = AlgebraBuilder::new(n + 1).labels(labels);
    for i in 0..n {
        b.set_int(0, 1 + i, 1 + (i + 1) % n, 1).expect("in range");
    }
    b.build().expect("Lm(n) is Lie")
}

/// A metabelian, non-nilpotent graded algebra with support exactly `Y`.
///
/// Takes the witness pair `x, g` of the freeness test, `n = ord(g)`, and
/// grades `Lm(n)` by `deg v = g`, `deg w_i = x g^i`; every other element of
/// `Y` carries one abelian basis vector.
pub fn construct_metabelian_witness(y: &ElementSet) -> Result<Witness, GradedError> {
    let group = y.group();
    if y.contains(&group.identity()) {
        return Err(GradedError::Refused(
            "the identity lies in the set; every Lie algebra is graded with the identity in its support".into(),
        ));
    }
    let AfVerdict::NotFree { x, g } = is_arithmetically_free(y) else {
        return Err(GradedError::Refused(format!(
            "{y} is arithmetically-free, so every algebra graded with this support is nilpotent"
        )));
    };
    let Extent::Finite(orbit) = full_orbit(&x, &g)? else {
        unreachable!("an orbit inside a finite set is finite");
    };
    let n = orbit.len();
    let mut degrees = vec![g.clone()];
    let mut cur = x.clone();
    for _ in 0..n {
        degrees.push(cur.clone());
        cur = cur.compose(&g)?;
    }
    let core = Grading::new(group, degrees)?;
    let mut used = core.support();
    debug_assert_eq!(used.len(), n + 1);
    let rest: Vec<GroupElement> = y.iter().filter(|e| !used.contains(e)).cloned().collect();
    for e in &rest {
        used.insert(e.clone())?;
    }
    let pad = StructureAlgebra::abelian(rest.len());
    let pad_grading = Grading::new(group, rest)?;
    let (algebra, grading) = direct_sum(&standard_metabelian(n), &core, &pad, &pad_grading)?;
    Ok(Witness { algebra, grading, x, g })
}

/// Truncation of the standard filiform algebra: `v, w_1, ..., w_N` with
/// `[v, w_i] = w_{i+1}` and `w_{N+1} = 0`, graded by `deg v = g`,
/// `deg w_i = x g^i`. Its class is `N`.
pub fn construct_filiform_truncation(
    x: &GroupElement,
    g: &GroupElement,
    depth: usize,
) -> Result<(StructureAlgebra, Grading), GradedError> {
    if !x.commutes_with(g) {
        return Err(GradedError::Group(crate::groups::GroupError::NonCommuting(format!("{:?}", x.coords()), format!("{:?}", g.coords()))));
    }
    let n = match g.order() {
        crate::groups::Order::Finite(n) => n as usize,
        crate::groups::Order::Infinite => return Err(GradedError::Refused("the increment has infinite order".into())),
    };
    if let Extent::Finite(h) = cyclic_subgroup(g) {
        if h.contains(x) {
            return Err(GradedError::Refused("the base lies in the cyclic subgroup of the increment".into()));
        }
    }
    if depth < n {
        return Err(GradedError::Refused(format!("truncation depth {depth} is below ord(g) = {n}")));
    }
    let mut labels = vec!["v".to_string()];
    labels.extend((1..=depth).map(|i| format!("w{i}")));
    let mut b = AlgebraBuilder::new(depth + 1).labels(labels);
    for i in 1..depth {
        b.set_int(0, i, i + 1, 1)?;
    }
    let algebra = b.build()?;
    let mut degrees = vec![g.clone()];
    let mut cur = x.compose(g)?;
    for _ in 1..=depth {
        degrees.push(cur.clone());
        cur = cur.compose(g)?;
    }
    Ok((algebra, Grading::new(x.group(), degrees)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::grading::verify_grading;
    use crate::graded::series::{derived_series, lower_central_series};
    use crate::groups::Group;

    #[test]
    fn klein_four_witness() {
        let v4 = Group::abelian(&[2, 2], 0).unwrap();
        let y = v4.parse_element_set("(1,0);(0,1);(1,1)").unwrap();
        let w = construct_metabelian_witness(&y).unwrap();
        assert_eq!(w.algebra.dim(), 3);
        assert_eq!(w.x, v4.parse_element("(0,1)").unwrap());
        assert_eq!(w.g, v4.parse_element("(1,0)").unwrap());
        assert!(verify_grading(&w.algebra, &w.grading).unwrap().passed());
        assert_eq!(w.grading.support(), y);
        assert!(lower_central_series(&w.algebra, 6).stabilized);
        assert_eq!(derived_series(&w.algebra, 6).class, Some(2));
    }

    #[test]
    fn refusals() {
        let z5 = Group::cyclic(5).unwrap();
        assert!(matches!(
            construct_metabelian_witness(&z5.parse_element_set("1,2").unwrap()),
            Err(GradedError::Refused(_))
        ));
        assert!(matches!(
            construct_metabelian_witness(&z5.parse_element_set("0,1").unwrap()),
            Err(GradedError::Refused(_))
        ));
    }

    #[test]
    fn padding_fills_the_rest() {
        // Z/6: O(1, 2) = {1, 3, 5}, g = 2; 4 is padding.
        let z6 = Group::cyclic(6).unwrap();
        let y = z6.parse_element_set("1,2,3,4,5").unwrap();
        let w = construct_metabelian_witness(&y).unwrap();
        assert_eq!(w.algebra.dim(), 5);
        assert_eq!(w.grading.support(), y);
        assert!(verify_grading(&w.algebra, &w.grading).unwrap().passed());
    }

    #[test]
    fn filiform_klein_four() {
        let v4 = Group::abelian(&[2, 2], 0).unwrap();
        let (x, g) = (v4.parse_element("(0,1)").unwrap(), v4.parse_element("(1,0)").unwrap());
        let (alg, gr) = construct_filiform_truncation(&x, &g, 6).unwrap();
        assert_eq!(alg.dim(), 7);
        assert!(verify_grading(&alg, &gr).unwrap().passed());
        assert_eq!(gr.support(), v4.parse_element_set("(0,1);(1,1);(1,0)").unwrap());
        assert_eq!(lower_central_series(&alg, 20).class, Some(6));
        assert!(construct_filiform_truncation(&g, &g, 6).is_err());
        let (alg, _) = construct_filiform_truncation(&x, &g, 2).unwrap();
        assert_eq!(lower_central_series(&alg, 20).dims, vec![1, 0]);
    }
}
