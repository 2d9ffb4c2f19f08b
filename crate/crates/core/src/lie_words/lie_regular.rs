//! Lie-regularity: a sequence is Lie-regular when, for some bracketing `P`,
//! it is strictly smaller than each of its rearrangements by `S_P \ {id}`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use super::tree::{linearise, Linearisation, ProductTree};
use super::LieWordsError;

pub const DEFAULT_MAX_ARITY: usize = 8;

type Table = Arc<Vec<(ProductTree, Linearisation)>>;

/// All bracketings of `l` leaves with their linearisations, in enumeration
/// order. Computed once per arity.
pub fn linearisation_table(l: usize) -> Table {
    static TABLES: OnceLock<Mutex<HashMap<usize, Table>>> = OnceLock::new();
    let tables = TABLES.get_or_init(Default::default);
    if let Some(t) = tables.lock().expect("table lock").get(&l) {
        return t.clone();
    }
    let table: Table = Arc::new(
        ProductTree::enumerate(l)
            .into_iter()
            .map(|t| {
                let lin = linearise(&t).expect("enumerated trees have distinct linearisation terms");
                (t, lin)
            })
            .collect(),
    );
    tables.lock().expect("table lock").entry(l).or_insert(table).clone()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum LieVerdict {
    /// The first bracketing (in enumeration order) that works.
    Regular { witness: ProductTree },
    NotRegular,
}

impl LieVerdict {
    pub fn is_regular(&self) -> bool {
        matches!(self, LieVerdict::Regular { .. })
    }
}

/// Whether `seq` is strictly smaller than every non-identity rearrangement
/// prescribed by `lin`.
pub fn minimal_under<T: Ord>(seq: &[T], lin: &Linearisation) -> bool {
    lin.terms.iter().filter(|t| !t.perm.is_identity()).all(|t| {
        let image = t.perm.0.iter().map(|&i| &seq[i]);
        seq.iter().cmp(image) == Ordering::Less
    })
}

pub fn is_lie_regular<T: Ord>(seq: &[T]) -> Result<LieVerdict, LieWordsError> {
    is_lie_regular_with_cap(seq, DEFAULT_MAX_ARITY)
}

/// Decides Lie-regularity by trying all `Catalan(l - 1)` bracketings.
pub fn is_lie_regular_with_cap<T: Ord>(seq: &[T], max_arity: usize) -> Result<LieVerdict, LieWordsError> {
    let l = seq.len();
    if l == 0 {
        return Err(LieWordsError::LengthOverBound { length: 0, bound: max_arity });
    }
    if l > max_arity {
        return Err(LieWordsError::LengthOverBound { length: l, bound: max_arity });
    }
    for (tree, lin) in linearisation_table(l).iter() {
        if minimal_under(seq, lin) {
            return Ok(LieVerdict::Regular { witness: tree.clone() });
        }
    }
    Ok(LieVerdict::NotRegular)
}

/// The least image of `seq` over all of `S_P` and over `S_P \ {id}`,
/// computed from `S_[A,B] = S_A S_B  ∪  S_B S_A` without expanding `P`.
fn least_images<'a, T: Ord>(seq: &'a [T], tree: &ProductTree) -> (Vec<&'a T>, Option<Vec<&'a T>>) {
    match tree {
        ProductTree::Leaf(_) => (seq.iter().collect(), None),
        ProductTree::Bracket(a, b) => {
            let (left, right) = seq.split_at(a.arity());
            let (a_all, a_other) = least_images(left, a);
            let (b_all, b_other) = least_images(right, b);
            let concat = |x: &[&'a T], y: &[&'a T]| x.iter().chain(y).copied().collect::<Vec<_>>();
            // Blocks have fixed lengths, so the least concatenation takes
            // the least left block first.
            let mut other = vec![concat(&b_all, &a_all)];
            if let Some(x) = &a_other {
                other.push(concat(x, &b_all));
            }
            if let Some(y) = &b_other {
                other.push(concat(&left.iter().collect::<Vec<_>>(), y));
            }
            let other = other.into_iter().min().expect("nonempty");
            let own: Vec<&T> = seq.iter().collect();
            let all = if other < own { other.clone() } else { own };
            (all, Some(other))
        }
    }
}

/// [`minimal_under`] for the linearisation of `tree`, in time polynomial in
/// the arity.
pub fn minimal_under_tree<T: Ord>(seq: &[T], tree: &ProductTree) -> bool {
    if tree.arity() != seq.len() {
        return false;
    }
    match least_images(seq, tree).1 {
        None => true,
        Some(other) => seq.iter().collect::<Vec<_>>() < other,
    }
}

/// Decides Lie-regularity for any length.
///
/// Unwinding the least images of `[A, B]` shows that `w` is Lie-regular
/// exactly when it has length 1, or splits as `w = uv` with `u`, `v`
/// Lie-regular and `uv < vu`. This is checked over all segments, shortest
/// first; the witness uses the leftmost valid split at each level.
pub fn is_lie_regular_by_splits<T: Ord>(seq: &[T]) -> Result<LieVerdict, LieWordsError> {
    let l = seq.len();
    if l == 0 {
        return Err(LieWordsError::LengthOverBound { length: 0, bound: 0 });
    }
    // split[i][j]: a valid cut of seq[i..j], or 0 if regular only as a leaf,
    // or None.
    let mut split: Vec<Vec<Option<usize>>> = vec![vec![None; l + 1]; l + 1];
    for i in 0..l {
        split[i][i + 1] = Some(0);
    }
    for len in 2..=l {
        for i in 0..=l - len {
            let j = i + len;
            split[i][j] = (i + 1..j).find(|&k| {
                split[i][k].is_some()
                    && split[k][j].is_some()
                    && seq[i..j].iter().cmp(seq[k..j].iter().chain(&seq[i..k])) == Ordering::Less
            });
        }
    }
    if split[0][l].is_none() {
        return Ok(LieVerdict::NotRegular);
    }
    fn build(split: &[Vec<Option<usize>>], i: usize, j: usize) -> ProductTree {
        if j == i + 1 {
            return ProductTree::leaf(i + 1);
        }
        let k = split[i][j].expect("valid segment");
        ProductTree::bracket(build(split, i, k), build(split, k, j))
    }
    Ok(LieVerdict::Regular { witness: build(&split, 0, l) })
}

/// Enumeration up to `max_arity` leaves, the split criterion beyond.
pub fn lie_regular_any_length<T: Ord>(seq: &[T], max_arity: usize) -> Result<LieVerdict, LieWordsError> {
    if seq.len() <= max_arity {
        is_lie_regular_with_cap(seq, max_arity)
    } else {
        is_lie_regular_by_splits(seq)
    }
}
