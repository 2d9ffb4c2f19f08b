//! Linearisations of Lie products, Lie-regular sequences, nested words over
//! weighted alphabets, derivations and fullness.

pub mod alphabet;
pub mod assoc;
pub mod characterisation;
pub mod derivation;
pub mod fullness;
pub mod lie_regular;
pub mod nested;
pub mod tree;

use serde::Serialize;
use thiserror::Error;

use crate::groups::GroupError;

pub use alphabet::{Alphabet, SequenceStats};
pub use assoc::{expand_left_normed, expand_tree, NcPoly, DEFAULT_ORACLE_ARITY};
pub use characterisation::{check_characterisation, CharacterisationReport, SegmentViolation};
pub use derivation::{find_derivation, find_hyper_derivation, obvious_derivation, DEFAULT_MAX_SEARCH_LENGTH};
pub use fullness::{is_full, Certificate, FullnessOptions, FullnessReport, FullnessVerdict};
pub use lie_regular::{
    is_lie_regular, is_lie_regular_by_splits, is_lie_regular_with_cap, lie_regular_any_length, linearisation_table,
    minimal_under, minimal_under_tree, LieVerdict, DEFAULT_MAX_ARITY,
};
pub use nested::NestedWord;
pub use tree::{linearise, linearise_bare, Linearisation, Permutation, ProductTree, Term};

/// Failed preconditions of the hyper-derivation search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HyperPrecondition {
    /// A letter whose weight is outside `X`.
    LetterOutsideTarget(usize),
    /// The span cannot be translated into `X`.
    Untranslatable,
}

impl std::fmt::Display for HyperPrecondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HyperPrecondition::LetterOutsideTarget(a) => write!(f, "letter {a} has weight outside X"),
            HyperPrecondition::Untranslatable => write!(f, "span cannot be translated into X"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LieWordsError {
    #[error("arity {arity} exceeds the bound {bound}")]
    ArityOverBound { arity: usize, bound: usize },
    #[error("length {length} outside the supported range (bound {bound})")]
    LengthOverBound { length: usize, bound: usize },
    #[error("depth mismatch: {left} vs {right}")]
    DepthMismatch { left: usize, right: usize },
    #[error("malformed product tree: {0}")]
    MalformedTree(String),
    #[error("malformed word: {0}")]
    MalformedWord(String),
    #[error("linearisation produced the permutation {0} twice")]
    DuplicatePermutation(String),
    #[error("precondition failed: {0}")]
    Precondition(HyperPrecondition),
    #[error("alphabet weights must lie in an abelian group")]
    NonAbelian,
    #[error(transparent)]
    Group(#[from] GroupError),
}
