//! Group gradings of structure-constant algebras.

use std::collections::BTreeMap;

use serde::Serialize;

use super::algebra::StructureAlgebra;
use super::GradedError;
use crate::groups::{is_arithmetically_free, AfVerdict, ElementSet, Group, GroupElement, GroupSpec};

/// A degree for every basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    group: Group,
    degrees: Vec<GroupElement>,
}

impl Grading {
    pub fn new(group: &Group, degrees: Vec<GroupElement>) -> Result<Self, GradedError> {
        if degrees.iter().any(|d| d.group() != group) {
            return Err(GradedError::Group(crate::groups::GroupError::OwnerMismatch));
        }
        Ok(Grading { group: group.clone(), degrees })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> &GroupElement {
        &self.degrees[i]
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// `{g : L_g != 0}`.
    pub fn support(&self) -> ElementSet {
        ElementSet::new(&self.group, self.degrees.iter().cloned()).expect("degrees share the group")
    }

    /// Reads a JSON array of coordinate arrays.
    pub fn from_json(group: &Group, value: &serde_json::Value) -> Result<Self, GradedError> {
        let items = value.as_array().ok_or_else(|| GradedError::Malformed("grading must be an array".into()))?;
        let degrees = items.iter().map(|v| group.element_from_json(v)).collect::<Result<Vec<_>, _>>()?;
        Grading::new(group, degrees)
    }
}

/// `{g : L_g != 0}`.
pub fn support(grading: &Grading) -> ElementSet {
    grading.support()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum GradingVerdict {
    Pass,
    /// `c_ij^k != 0` but `deg k` differs from `deg i * deg j` (or from
    /// `deg j * deg i`).
    Fail { i: usize, j: usize, k: usize },
}

impl GradingVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, GradingVerdict::Pass)
    }
}

/// Checks `[L_g, L_h] ⊆ L_{gh}` on every nonzero structure constant.
pub fn verify_grading(alg: &StructureAlgebra, grading: &Grading) -> Result<GradingVerdict, GradedError> {
    if grading.len() != alg.dim() {
        return Err(GradedError::Malformed(format!("{} degrees for dimension {}", grading.len(), alg.dim())));
    }
    for (i, j, k, _) in alg.constants() {
        let (di, dj, dk) = (grading.degree(i), grading.degree(j), grading.degree(k));
        if di.compose(dj)? != *dk || dj.compose(di)? != *dk {
            return Ok(GradingVerdict::Fail { i, j, k });
        }
    }
    Ok(GradingVerdict::Pass)
}

fn checked(alg: &StructureAlgebra, grading: &Grading) -> Result<(), GradedError> {
    match verify_grading(alg, grading)? {
        GradingVerdict::Pass => Ok(()),
        GradingVerdict::Fail { i, j, k } => Err(GradedError::InvalidGrading { i, j, k }),
    }
}

/// Whether `h` contains the identity and is closed under products and
/// inverses.
pub fn is_subgroup(h: &ElementSet) -> Result<bool, GradedError> {
    if !h.contains(&h.group().identity()) {
        return Ok(false);
    }
    for a in h.iter() {
        if !h.contains(&a.inverse()) {
            return Ok(false);
        }
        for b in h.iter() {
            if !h.contains(&a.compose(b)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `L_H`: the basis vectors with degree in the subgroup `H`.
pub fn homogeneous_subalgebra(
    alg: &StructureAlgebra,
    grading: &Grading,
    h: &ElementSet,
) -> Result<(StructureAlgebra, Grading), GradedError> {
    checked(alg, grading)?;
    if h.group() != grading.group() {
        return Err(GradedError::Group(crate::groups::GroupError::OwnerMismatch));
    }
    if !is_subgroup(h)? {
        return Err(GradedError::NotSubgroup(h.to_string()));
    }
    let keep: Vec<usize> = (0..alg.dim()).filter(|&i| h.contains(grading.degree(i))).collect();
    let sub = alg.restrict(&keep)?;
    let degrees = keep.iter().map(|&i| grading.degree(i).clone()).collect();
    Ok((sub, Grading::new(grading.group(), degrees)?))
}

/// Checks the contraction law for `f` on `X` and returns the first triple
/// `(x1, x2, x3)` with `x1 x2 = x3` in `X` but `f(x1) f(x2) != f(x3)`.
pub fn contraction_violation(
    x: &ElementSet,
    f: &BTreeMap<GroupElement, GroupElement>,
) -> Result<Option<(GroupElement, GroupElement, GroupElement)>, GradedError> {
    for a in x.iter() {
        for b in x.iter() {
            let c = a.compose(b)?;
            if !x.contains(&c) {
                continue;
            }
            let (fa, fb, fc) = (&f[a], &f[b], &f[&c]);
            if fa.compose(fb)? != *fc {
                return Ok(Some((a.clone(), b.clone(), c)));
            }
        }
    }
    Ok(None)
}

/// Regrades `L` along a contraction `f` of its support onto `f(X)`.
pub fn regrade_by_contraction(
    alg: &StructureAlgebra,
    grading: &Grading,
    f: &BTreeMap<GroupElement, GroupElement>,
    target: &Group,
) -> Result<Grading, GradedError> {
    checked(alg, grading)?;
    let x = grading.support();
    for e in x.iter() {
        match f.get(e) {
            None => return Err(GradedError::Contraction(format!("map undefined at {}", fmt_elem(e)))),
            Some(y) if y.group() != target => {
                return Err(GradedError::Group(crate::groups::GroupError::OwnerMismatch))
            }
            Some(_) => {}
        }
    }
    if let Some((a, b, c)) = contraction_violation(&x, f)? {
        return Err(GradedError::Contraction(format!(
            "{} * {} = {} but the images do not compose",
            fmt_elem(&a),
            fmt_elem(&b),
            fmt_elem(&c)
        )));
    }
    let regraded = Grading::new(target, grading.degrees().iter().map(|d| f[d].clone()).collect())?;
    checked(alg, &regraded)?;
    Ok(regraded)
}

/// Direct sum of graded algebras over the same group.
pub fn direct_sum(
    a: &StructureAlgebra,
    ga: &Grading,
    b: &StructureAlgebra,
    gb: &Grading,
) -> Result<(StructureAlgebra, Grading), GradedError> {
    if ga.group() != gb.group() {
        return Err(GradedError::Group(crate::groups::GroupError::OwnerMismatch));
    }
    let degrees = ga.degrees().iter().chain(gb.degrees()).cloned().collect();
    Ok((a.direct_sum(b), Grading::new(ga.group(), degrees)?))
}

fn fmt_elem(e: &GroupElement) -> String {
    let c = e.coords();
    if c.len() == 1 {
        c[0].to_string()
    } else {
        format!("({})", c.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Projection {
    /// The modulus applied to every free coordinate.
    pub modulus: u64,
    /// Text form of the finite group `F + (Z/R)^m`.
    pub group: String,
    pub image: ElementSet,
}

/// Reduces the free coordinates of an arithmetically-free `X` modulo
/// `R = 3 max |x_i| + 1`, the least `R` with every `|x_i| < R / 3`.
///
/// Every free coordinate of every element must be nonzero.
pub fn project_to_finite(x: &ElementSet) -> Result<Projection, GradedError> {
    let GroupSpec::Abelian { factors, free_rank } = x.group().spec() else {
        return Err(GradedError::Group(crate::groups::GroupError::NonAbelian));
    };
    let (factors, m) = (factors.clone(), *free_rank);
    if m == 0 {
        return Err(GradedError::Projection("the group has no free coordinates".into()));
    }
    if let AfVerdict::NotFree { .. } = is_arithmetically_free(x) {
        return Err(GradedError::Projection(format!("{x} is not arithmetically-free")));
    }
    let k = factors.len();
    let mut max = 0u64;
    for e in x.iter() {
        let c = e.coords();
        if c[k..].contains(&0) {
            return Err(GradedError::Projection(format!("{} has a zero free coordinate", fmt_elem(e))));
        }
        max = max.max(c[k..].iter().map(|v| v.unsigned_abs()).max().unwrap_or(0));
    }
    let r = 3 * max + 1;
    let mut new_factors = factors;
    new_factors.extend(std::iter::repeat_n(r, m));
    let target = Group::abelian(&new_factors, 0)?;
    let image = ElementSet::new(&target, x.iter().map(|e| target.element(&e.coords())).collect::<Result<Vec<_>, _>>()?)?;
    if image.len() != x.len() || !is_arithmetically_free(&image).is_free() {
        return Err(GradedError::Projection(format!("image {image} is not arithmetically-free")));
    }
    Ok(Projection { modulus: r, group: target.spec().to_string(), image })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heisenberg_z3(deg_z: i64) -> (StructureAlgebra, Grading) {
        let z3 = Group::cyclic(3).unwrap();
        let d = |n| z3.element(&[n]).unwrap();
        (StructureAlgebra::heisenberg(), Grading::new(&z3, vec![d(1), d(1), d(deg_z)]).unwrap())
    }

    #[test]
    fn heisenberg_grading() {
        let (h, g) = heisenberg_z3(2);
        assert!(verify_grading(&h, &g).unwrap().passed());
        assert_eq!(g.support(), g.group().parse_element_set("1,2").unwrap());
        let (h, g) = heisenberg_z3(1);
        assert_eq!(verify_grading(&h, &g).unwrap(), GradingVerdict::Fail { i: 0, j: 1, k: 2 });
    }

    #[test]
    fn abelian_accepts_any_grading() {
        let z3 = Group::cyclic(3).unwrap();
        let g = Grading::new(&z3, vec![z3.element(&[1]).unwrap(); 4]).unwrap();
        assert!(verify_grading(&StructureAlgebra::abelian(4), &g).unwrap().passed());
        assert!(Grading::new(&z3, vec![]).unwrap().support().is_empty());
    }

    #[test]
    fn subalgebras() {
        let (h, g) = heisenberg_z3(2);
        let whole = g.group().parse_element_set("0,1,2").unwrap();
        let (sub, _) = homogeneous_subalgebra(&h, &g, &whole).unwrap();
        assert_eq!(sub, h);
        let trivial = g.group().parse_element_set("0").unwrap();
        assert_eq!(homogeneous_subalgebra(&h, &g, &trivial).unwrap().0.dim(), 0);
        let not_sub = g.group().parse_element_set("0,1").unwrap();
        assert!(matches!(homogeneous_subalgebra(&h, &g, &not_sub), Err(GradedError::NotSubgroup(_))));
    }

    #[test]
    fn contraction_onto_z2() {
        // Support {1, 2} of Z/3 is not sum-free (1 + 1 = 2): the constant map
        // fails, reduction to the trivial group works.
        let (h, g) = heisenberg_z3(2);
        let z2 = Group::cyclic(2).unwrap();
        let one = z2.element(&[1]).unwrap();
        let f: BTreeMap<_, _> = g.support().iter().map(|e| (e.clone(), one.clone())).collect();
        assert!(matches!(regrade_by_contraction(&h, &g, &f, &z2), Err(GradedError::Contraction(_))));
        let triv = Group::abelian(&[], 0).unwrap();
        let f: BTreeMap<_, _> = g.support().iter().map(|e| (e.clone(), triv.identity())).collect();
        let r = regrade_by_contraction(&h, &g, &f, &triv).unwrap();
        assert_eq!(r.support().len(), 1);
    }

    #[test]
    fn projection_examples() {
        let z = Group::free_abelian(1);
        let p = project_to_finite(&z.parse_element_set("1,2").unwrap()).unwrap();
        assert_eq!(p.modulus, 7);
        assert_eq!(p.group, "Z/7");
        let z2 = Group::free_abelian(2);
        let p = project_to_finite(&z2.parse_element_set("(1,1)").unwrap()).unwrap();
        assert_eq!(p.modulus, 4);
        assert!(matches!(
            project_to_finite(&z2.parse_element_set("(0,5)").unwrap()),
            Err(GradedError::Projection(_))
        ));
    }
}
