//! Nested words `W^n(A)` over an ordered alphabet of letters `0, 1, 2, ...`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use super::LieWordsError;

/// An element of `W^n(A)`: a letter (`n = 0`) or a nonempty sequence of
/// elements of `W^{n-1}(A)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NestedWord {
    Letter(usize),
    Seq(Vec<NestedWord>),
}

impl NestedWord {
    /// A sequence of components, all of one depth.
    pub fn seq(items: Vec<NestedWord>) -> Result<Self, LieWordsError> {
        let Some(first) = items.first() else {
            return Err(LieWordsError::MalformedWord("empty sequence".into()));
        };
        let d = first.depth();
        if let Some(bad) = items.iter().find(|w| w.depth() != d) {
            return Err(LieWordsError::DepthMismatch { left: d, right: bad.depth() });
        }
        Ok(NestedWord::Seq(items))
    }

    /// The depth-1 word with the given letters.
    pub fn word(letters: &[usize]) -> Self {
        assert!(!letters.is_empty(), "words are nonempty");
        NestedWord::Seq(letters.iter().map(|&a| NestedWord::Letter(a)).collect())
    }

    pub fn depth(&self) -> usize {
        match self {
            NestedWord::Letter(_) => 0,
            NestedWord::Seq(items) => 1 + items[0].depth(),
        }
    }

    /// `||S||`: the number of components (1 for a letter).
    pub fn len(&self) -> usize {
        match self {
            NestedWord::Letter(_) => 1,
            NestedWord::Seq(items) => items.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn components(&self) -> &[NestedWord] {
        match self {
            NestedWord::Letter(_) => &[],
            NestedWord::Seq(items) => items,
        }
    }

    /// Nested arrays of letter indices.
    pub fn from_json(value: &serde_json::Value) -> Result<Self, LieWordsError> {
        match value {
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(|x| NestedWord::Letter(x as usize))
                .ok_or_else(|| LieWordsError::MalformedWord(format!("bad letter {n}"))),
            serde_json::Value::Array(items) => {
                NestedWord::seq(items.iter().map(NestedWord::from_json).collect::<Result<_, _>>()?)
            }
            other => Err(LieWordsError::MalformedWord(format!("unexpected {other}"))),
        }
    }

    /// Lexicographic comparison in `W^n(A)`; a proper prefix is smaller.
    pub fn shift_compare(&self, other: &NestedWord) -> Result<Ordering, LieWordsError> {
        if self.depth() != other.depth() {
            return Err(LieWordsError::DepthMismatch { left: self.depth(), right: other.depth() });
        }
        Ok(self.cmp(other))
    }

    /// The underlying letter sequence, read left to right.
    pub fn underlying(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut Vec<usize>) {
        match self {
            NestedWord::Letter(a) => out.push(*a),
            NestedWord::Seq(items) => items.iter().for_each(|w| w.collect_letters(out)),
        }
    }

    /// Two elements of equal depth have the same type when they are letters,
    /// or when their first components agree.
    pub fn same_type(&self, other: &NestedWord) -> bool {
        match (self, other) {
            (NestedWord::Letter(_), NestedWord::Letter(_)) => true,
            (NestedWord::Seq(a), NestedWord::Seq(b)) => a[0] == b[0],
            _ => false,
        }
    }

    /// Regularity: letters are regular; `(x_1, ..., x_k)` with `k >= 2` is
    /// regular when the `x_i` are strictly regular, of one type, and
    /// `x_1 = ... = x_l < x_{l+1}, ..., x_k` for some `l < k`.
    ///
    /// A word of length 1 is regular when its component is. This only
    /// holds at the outside: as a component, a length-1 word is never
    /// regular, otherwise `((a),(a,b),(a,a,b))` would be regular with the
    /// non-Lie-regular underlying sequence `(a,a,b,a,a,b)`.
    pub fn is_regular(&self) -> bool {
        match self {
            NestedWord::Seq(items) if items.len() == 1 => items[0].is_regular(),
            _ => self.is_strictly_regular(),
        }
    }

    /// Regularity without the length-1 convention.
    pub fn is_strictly_regular(&self) -> bool {
        let items = match self {
            NestedWord::Letter(_) => return true,
            NestedWord::Seq(items) => items,
        };
        items.iter().all(NestedWord::is_strictly_regular)
            && items.iter().all(|x| x.same_type(&items[0]))
            && proper_block(items)
    }
}

/// At least two items, and the run of `x_1` at the front is followed only
/// by elements strictly greater than `x_1`.
pub(crate) fn proper_block<T: Ord>(items: &[T]) -> bool {
    items.len() >= 2 && strict_prefix_block(items)
}

/// `k = 1`, or the run of `x_1` at the front is followed only by elements
/// strictly greater than `x_1` (and at least one of them).
pub(crate) fn strict_prefix_block<T: Ord>(items: &[T]) -> bool {
    if items.len() == 1 {
        return true;
    }
    let head = &items[0];
    let run = items.iter().take_while(|x| *x == head).count();
    run < items.len() && items[run..].iter().all(|x| x > head)
}

impl fmt::Display for NestedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NestedWord::Letter(a) => write!(f, "{a}"),
            NestedWord::Seq(items) => {
                write!(f, "(")?;
                for (i, w) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{w}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl Serialize for NestedWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            NestedWord::Letter(a) => s.serialize_u64(*a as u64),
            NestedWord::Seq(items) => s.collect_seq(items.iter()),
        }
    }
}
