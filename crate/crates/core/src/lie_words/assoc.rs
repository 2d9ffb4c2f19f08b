//! Noncommutative polynomials with integer coefficients, used to check
//! Lie identities by embedding brackets as `xy - yx`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::tree::ProductTree;
use super::LieWordsError;

/// Default bound on the number of factors the oracle will expand.
pub const DEFAULT_ORACLE_ARITY: usize = 10;

/// An element of the free associative ring on generators `0, 1, 2, ...`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NcPoly {
    terms: BTreeMap<Vec<usize>, i64>,
}

impl NcPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(g: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![g], 1);
        NcPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &[usize]) -> i64 {
        self.terms.get(word).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, i64)> + '_ {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    fn add_term(&mut self, word: Vec<usize>, coef: i64) {
        let entry = self.terms.entry(word.clone()).or_insert(0);
        *entry += coef;
        if *entry == 0 {
            self.terms.remove(&word);
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        NcPoly { terms: self.terms.iter().map(|(w, &c)| (w.clone(), c * k)).collect() }
    }

    /// The commutator `self * other - other * self`.
    pub fn bracket(&self, other: &NcPoly) -> NcPoly {
        &(self * other) - &(other * self)
    }
}

impl Add for &NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, &c) in &rhs.terms {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl Sub for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        self + &(-rhs)
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        self.scale(-1)
    }
}

impl Mul for &NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &rhs.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, &c) in &self.terms {
            let word: String = w.iter().map(|g| format!("x{g}")).collect();
            match (first, c < 0) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "{word}")?;
            first = false;
        }
        Ok(())
    }
}

fn check_arity(arity: usize, bound: usize) -> Result<(), LieWordsError> {
    if arity > bound {
        Err(LieWordsError::ArityOverBound { arity, bound })
    } else {
        Ok(())
    }
}

/// Associative expansion of a bracketing, with leaf `i` mapped to generator
/// `labels[i - 1]`.
pub fn expand_tree(tree: &ProductTree, labels: &[usize], bound: usize) -> Result<NcPoly, LieWordsError> {
    check_arity(tree.arity(), bound)?;
    fn rec(t: &ProductTree, labels: &[usize]) -> NcPoly {
        match t {
            ProductTree::Leaf(i) => NcPoly::generator(labels[*i - 1]),
            ProductTree::Bracket(a, b) => rec(a, labels).bracket(&rec(b, labels)),
        }
    }
    Ok(rec(tree, labels))
}

/// Associative expansion of the left-normed product `[g_1, ..., g_k]`.
pub fn expand_left_normed(generators: &[usize], bound: usize) -> Result<NcPoly, LieWordsError> {
    check_arity(generators.len(), bound)?;
    let mut iter = generators.iter();
    let Some(&first) = iter.next() else {
        return Ok(NcPoly::zero());
    };
    Ok(iter.fold(NcPoly::generator(first), |acc, &g| acc.bracket(&NcPoly::generator(g))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_bracket() {
        let p = expand_left_normed(&[1, 2], DEFAULT_ORACLE_ARITY).unwrap();
        assert_eq!(p.coefficient(&[1, 2]), 1);
        assert_eq!(p.coefficient(&[2, 1]), -1);
        assert_eq!(p.terms().count(), 2);
    }

    #[test]
    fn three_fold_left_normed() {
        // ((v1 v2 - v2 v1) v3 - v3 (v1 v2 - v2 v1))
        let p = expand_left_normed(&[1, 2, 3], DEFAULT_ORACLE_ARITY).unwrap();
        let v = NcPoly::generator;
        let inner = &(&v(1) * &v(2)) - &(&v(2) * &v(1));
        let expected = &(&inner * &v(3)) - &(&v(3) * &inner);
        assert_eq!(p, expected);
        assert_eq!(p.terms().count(), 4);
    }

    #[test]
    fn jacobi_vanishes() {
        let v = NcPoly::generator;
        let j = &(&v(1).bracket(&v(2)).bracket(&v(3)) + &v(2).bracket(&v(3)).bracket(&v(1)))
            + &v(3).bracket(&v(1)).bracket(&v(2));
        assert!(j.is_zero());
    }

    #[test]
    fn arity_bound_is_enforced() {
        let err = expand_left_normed(&[0; 12], DEFAULT_ORACLE_ARITY).unwrap_err();
        assert!(matches!(err, LieWordsError::ArityOverBound { arity: 12, bound: 10 }));
        let t = ProductTree::left_normed(4);
        assert!(expand_tree(&t, &[1, 2, 3, 4], 3).is_err());
    }

    #[test]
    fn display_is_readable() {
        let p = expand_left_normed(&[1, 2], 4).unwrap();
        assert_eq!(p.to_string(), "x1x2 - x2x1");
    }
}
