//! Bracketings of `v_1, ..., v_l` and their linearisations.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use super::LieWordsError;
use crate::groups::cycle_notation;

/// A binary bracketing whose leaves are labelled `1..=l` from left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProductTree {
    Leaf(usize),
    Bracket(Box<ProductTree>, Box<ProductTree>),
}

impl ProductTree {
    pub fn leaf(label: usize) -> Self {
        ProductTree::Leaf(label)
    }

    pub fn bracket(left: ProductTree, right: ProductTree) -> Self {
        ProductTree::Bracket(Box::new(left), Box::new(right))
    }

    /// The left-normed product `[v_1, ..., v_l]`.
    pub fn left_normed(l: usize) -> Self {
        assert!(l >= 1, "a product needs at least one factor");
        (2..=l).fold(ProductTree::Leaf(1), |acc, i| Self::bracket(acc, ProductTree::Leaf(i)))
    }

    pub fn arity(&self) -> usize {
        match self {
            ProductTree::Leaf(_) => 1,
            ProductTree::Bracket(a, b) => a.arity() + b.arity(),
        }
    }

    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            ProductTree::Leaf(i) => out.push(*i),
            ProductTree::Bracket(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    /// Checks that the leaves read `1, 2, ..., l` in order.
    pub fn validate(&self) -> Result<(), LieWordsError> {
        let leaves = self.leaves();
        if leaves.iter().enumerate().all(|(i, &x)| x == i + 1) {
            Ok(())
        } else {
            Err(LieWordsError::MalformedTree(format!("leaves {leaves:?} are not 1..{}", leaves.len())))
        }
    }

    /// Nested-array encoding: a leaf is its label, a bracket is `[left, right]`.
    pub fn from_json(value: &serde_json::Value) -> Result<Self, LieWordsError> {
        fn rec(v: &serde_json::Value) -> Result<ProductTree, LieWordsError> {
            match v {
                serde_json::Value::Number(n) => n
                    .as_u64()
                    .map(|x| ProductTree::Leaf(x as usize))
                    .ok_or_else(|| LieWordsError::MalformedTree(format!("bad leaf {n}"))),
                serde_json::Value::Array(items) if items.len() == 2 => {
                    Ok(ProductTree::bracket(rec(&items[0])?, rec(&items[1])?))
                }
                other => Err(LieWordsError::MalformedTree(format!("unexpected {other}"))),
            }
        }
        let tree = rec(value)?;
        tree.validate()?;
        Ok(tree)
    }

    /// All bracketings of `l` leaves, `Catalan(l - 1)` of them. Trees are
    /// ordered by the size of the left factor, then recursively.
    pub fn enumerate(l: usize) -> Vec<ProductTree> {
        fn rec(lo: usize, hi: usize) -> Vec<ProductTree> {
            if lo == hi {
                return vec![ProductTree::Leaf(lo)];
            }
            let mut out = Vec::new();
            for split in lo..hi {
                let rights = rec(split + 1, hi);
                for left in rec(lo, split) {
                    for right in &rights {
                        out.push(ProductTree::bracket(left.clone(), right.clone()));
                    }
                }
            }
            out
        }
        if l == 0 {
            Vec::new()
        } else {
            rec(1, l)
        }
    }
}

impl fmt::Display for ProductTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductTree::Leaf(i) => write!(f, "v{i}"),
            ProductTree::Bracket(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

impl Serialize for ProductTree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ProductTree::Leaf(i) => s.serialize_u64(*i as u64),
            ProductTree::Bracket(a, b) => {
                let mut t = s.serialize_tuple(2)?;
                t.serialize_element(a)?;
                t.serialize_element(b)?;
                t.end()
            }
        }
    }
}

/// A permutation of `{0, ..., l-1}` in one-line notation: the word
/// `v_{p(1)} ... v_{p(l)}`. Displayed in 1-based cycle notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(l: usize) -> Self {
        Permutation((0..l).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(images: &[usize]) -> Self {
        Permutation(images.iter().map(|&i| i - 1).collect())
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i + 1).collect()
    }

    /// Rearranges `seq` into `(seq[p(1)], ..., seq[p(l)])`.
    pub fn apply<T: Clone>(&self, seq: &[T]) -> Vec<T> {
        self.0.iter().map(|&i| seq[i].clone()).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", cycle_notation(&self.0))
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.one_line().serialize(s)
    }
}

/// A signed permutation term of a linearisation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub perm: Permutation,
    pub sign: i8,
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&self.perm)?;
        t.serialize_element(&self.sign)?;
        t.end()
    }
}

/// The signed permutations expressing a bracketing as a combination of
/// left-normed products. Terms are sorted by permutation, so the identity
/// comes first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Linearisation {
    pub arity: usize,
    pub terms: Vec<Term>,
}

impl Linearisation {
    pub fn sign_of(&self, perm: &Permutation) -> Option<i8> {
        self.terms.iter().find(|t| &t.perm == perm).map(|t| t.sign)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_words(arity: usize, words: Vec<(Vec<usize>, i64)>) -> Result<Self, LieWordsError> {
        let mut collected: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
        for (word, coef) in words {
            if collected.insert(word.clone(), coef).is_some() {
                return Err(LieWordsError::DuplicatePermutation(
                    Permutation(word).to_string(),
                ));
            }
        }
        let terms = collected
            .into_iter()
            .map(|(word, coef)| Term { perm: Permutation(word), sign: coef as i8 })
            .collect();
        Ok(Linearisation { arity, terms })
    }
}

type Combination = Vec<(Vec<usize>, i64)>;

/// `[U, t]` for a combination `U` of left-normed words, rewritten with
/// `[U, [A, B]] = [U, A, B] - [U, B, A]`.
fn act(words: Combination, tree: &ProductTree) -> Combination {
    match tree {
        ProductTree::Leaf(i) => words
            .into_iter()
            .map(|(mut w, c)| {
                w.push(i - 1);
                (w, c)
            })
            .collect(),
        ProductTree::Bracket(a, b) => {
            let mut out = act(act(words.clone(), a), b);
            out.extend(act(act(words, b), a).into_iter().map(|(w, c)| (w, -c)));
            out
        }
    }
}

/// Linearisation of `P` inside a left-normed product with at least one
/// factor before it:
/// `[u_1, ..., u_k, P, w_1, ...] = sum eps(p) [u_1, ..., u_k, v_p(1), ..., v_p(l), w_1, ...]`
/// for `k >= 1`. This is the signed set `S_P` used by Lie-regularity.
pub fn linearise(tree: &ProductTree) -> Result<Linearisation, LieWordsError> {
    tree.validate()?;
    Linearisation::from_words(tree.arity(), act(vec![(Vec::new(), 1)], tree))
}

/// Linearisation of `P` standing first in a left-normed product
/// (`[P, w_1, ...]`, no factor before it).
pub fn linearise_bare(tree: &ProductTree) -> Result<Linearisation, LieWordsError> {
    fn top(tree: &ProductTree) -> Combination {
        match tree {
            ProductTree::Leaf(i) => vec![(vec![i - 1], 1)],
            ProductTree::Bracket(a, b) => act(top(a), b),
        }
    }
    tree.validate()?;
    Linearisation::from_words(tree.arity(), top(tree))
}
