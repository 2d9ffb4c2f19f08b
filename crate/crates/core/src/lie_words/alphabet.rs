//! Weighted alphabets and the weight, span and content of a sequence.

use std::collections::BTreeSet;

use serde::Serialize;

use super::nested::NestedWord;
use super::LieWordsError;
use crate::groups::{translate_into, ElementSet, Group, GroupElement};

/// Letters `0..n` (ordered by index), a weight for each letter in an
/// abelian group, and a finite target set `X`.
#[derive(Clone, Debug)]
pub struct Alphabet {
    weights: Vec<GroupElement>,
    target: ElementSet,
}

/// Weight `w1(S)`, span `sigma(S)`, the letters of `S` with weight in `X`,
/// and the content `(|sigma(S)|, |alpha(S)|)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceStats {
    pub weight: GroupElement,
    pub span: ElementSet,
    pub alpha: BTreeSet<usize>,
    pub content: (usize, usize),
}

impl Alphabet {
    pub fn new(weights: Vec<GroupElement>, target: ElementSet) -> Result<Self, LieWordsError> {
        if !target.group().is_abelian() {
            return Err(LieWordsError::NonAbelian);
        }
        if weights.iter().any(|w| w.group() != target.group()) {
            return Err(LieWordsError::Group(crate::groups::GroupError::OwnerMismatch));
        }
        Ok(Alphabet { weights, target })
    }

    /// The alphabet whose letters are the elements of `letters` in canonical
    /// order, each weighted by itself.
    pub fn identity(letters: &ElementSet, target: ElementSet) -> Result<Self, LieWordsError> {
        Self::new(letters.to_vec(), target)
    }

    pub fn group(&self) -> &Group {
        self.target.group()
    }

    pub fn target(&self) -> &ElementSet {
        &self.target
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, letter: usize) -> &GroupElement {
        &self.weights[letter]
    }

    /// The letter whose weight is `e`, for identity alphabets.
    pub fn letter_of(&self, e: &GroupElement) -> Option<usize> {
        self.weights.iter().position(|w| w == e)
    }

    /// Letters whose weight lies in `X`.
    pub fn target_letters(&self) -> BTreeSet<usize> {
        (0..self.len()).filter(|&a| self.target.contains(&self.weights[a])).collect()
    }

    fn check(&self, seq: &[usize]) -> Result<(), LieWordsError> {
        match seq.iter().find(|&&a| a >= self.len()) {
            Some(a) => Err(LieWordsError::MalformedWord(format!("letter {a} not in alphabet"))),
            None => Ok(()),
        }
    }

    /// `w1(S)`, the sum of the weights.
    pub fn weight_of(&self, seq: &[usize]) -> Result<GroupElement, LieWordsError> {
        self.check(seq)?;
        let mut acc = self.group().identity();
        for &a in seq {
            acc = acc.compose(&self.weights[a])?;
        }
        Ok(acc)
    }

    /// `sigma(S)`: all partial sums, the empty one included.
    pub fn span(&self, seq: &[usize]) -> Result<ElementSet, LieWordsError> {
        self.check(seq)?;
        let mut acc = self.group().identity();
        let mut set = ElementSet::new(self.group(), [acc.clone()])?;
        for &a in seq {
            acc = acc.compose(&self.weights[a])?;
            set.insert(acc.clone())?;
        }
        Ok(set)
    }

    /// Span of a nested word in the shifted alphabet: partial sums taken at
    /// the boundaries of its components.
    pub fn span_nested(&self, word: &NestedWord) -> Result<ElementSet, LieWordsError> {
        let mut acc = self.group().identity();
        let mut set = ElementSet::new(self.group(), [acc.clone()])?;
        for part in word.components() {
            acc = acc.compose(&self.weight_of(&part.underlying())?)?;
            set.insert(acc.clone())?;
        }
        if let NestedWord::Letter(a) = word {
            set.insert(self.weight_of(&[*a])?)?;
        }
        Ok(set)
    }

    pub fn stats(&self, seq: &[usize]) -> Result<SequenceStats, LieWordsError> {
        let span = self.span(seq)?;
        let targets = self.target_letters();
        let alpha: BTreeSet<usize> = seq.iter().copied().filter(|a| targets.contains(a)).collect();
        Ok(SequenceStats {
            weight: self.weight_of(seq)?,
            content: (span.len(), alpha.len()),
            span,
            alpha,
        })
    }

    /// Some `h` with `h + sigma(S)` inside `X`.
    pub fn translation(&self, seq: &[usize]) -> Result<Option<GroupElement>, LieWordsError> {
        Ok(translate_into(&self.span(seq)?, &self.target)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z5_alphabet(target: &str) -> Alphabet {
        let z5 = Group::cyclic(5).unwrap();
        let letters = z5.parse_element_set("0,1,2,3,4").unwrap();
        Alphabet::identity(&letters, z5.parse_element_set(target).unwrap()).unwrap()
    }

    #[test]
    fn stats_examples() {
        let a = z5_alphabet("1,2");
        let st = a.stats(&[1, 1, 1]).unwrap();
        assert_eq!(st.span, a.group().parse_element_set("0,1,2,3").unwrap());
        assert_eq!(st.content, (4, 1));
        let st = a.stats(&[]).unwrap();
        assert_eq!(st.span.len(), 1);
        assert_eq!(st.content, (1, 0));
        let st = a.stats(&[1, 4]).unwrap();
        assert_eq!(st.span, a.group().parse_element_set("0,1").unwrap());
        assert!(st.weight.is_identity());
    }

    #[test]
    fn nested_span_uses_component_boundaries() {
        let a = z5_alphabet("1,2");
        let t = NestedWord::seq(vec![NestedWord::word(&[1, 1]), NestedWord::word(&[1, 2])]).unwrap();
        // Boundaries at 0, 2, 5 = 0.
        assert_eq!(a.span_nested(&t).unwrap(), a.group().parse_element_set("0,2").unwrap());
    }

    #[test]
    fn rejects_non_abelian_groups() {
        let s3 = Group::symmetric(3);
        let t = ElementSet::empty(&s3);
        assert!(matches!(Alphabet::new(vec![], t), Err(LieWordsError::NonAbelian)));
    }

    #[test]
    fn unknown_letter_is_an_error() {
        let a = z5_alphabet("1");
        assert!(a.span(&[7]).is_err());
    }
}
