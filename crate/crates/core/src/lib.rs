//! Arithmetically-free subsets of groups and the nilpotency of graded Lie
//! algebras: group arithmetic, the generalised Higman bound, Lie-regular
//! words, structure-constant Lie algebras and Cayley-graph walks.

pub mod cayley;
pub mod graded;
pub mod groups;
pub mod higman;
pub mod lie_words;
