//! Empirical check of the characterisation of arithmetically-free sets by
//! sequences with an initial or Lie-regular segment of weight outside `X`.

use std::collections::HashMap;

use serde::Serialize;

use super::lie_regular::{lie_regular_any_length, DEFAULT_MAX_ARITY};
use super::LieWordsError;
use crate::groups::{is_arithmetically_free, AfVerdict, ElementSet, GroupElement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegmentViolation {
    /// Index of the sequence `S_k`.
    pub k: usize,
    pub start: usize,
    pub end: usize,
    /// `"initial"` or `"lie-regular"`.
    pub kind: String,
    pub weight: GroupElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum CharacterisationReport {
    /// `X` is free. Every sequence over `X` of length `bound` qualifies,
    /// where `bound` is `None` if some sequence of length `max_length`
    /// still does not.
    Free {
        max_length: usize,
        bound: Option<usize>,
        /// Number of non-qualifying sequences of each length `0..`.
        bad_counts: Vec<u64>,
        /// The least longest non-qualifying sequence.
        longest_bad: Vec<GroupElement>,
    },
    /// `X` is not free; the sequences `(x, g, ..., g)` of lengths
    /// `2..=max_length + 1` were checked segment by segment.
    NotFree { x: GroupElement, g: GroupElement, max_length: usize, checked: usize, violations: Vec<SegmentViolation> },
}

impl CharacterisationReport {
    pub fn passed(&self) -> bool {
        match self {
            CharacterisationReport::Free { bound, .. } => bound.is_some(),
            CharacterisationReport::NotFree { violations, .. } => violations.is_empty(),
        }
    }
}

struct Search<'a> {
    letters: Vec<GroupElement>,
    target: &'a ElementSet,
    max_length: usize,
    lie_cache: HashMap<Vec<usize>, bool>,
    bad_counts: Vec<u64>,
    longest_bad: Vec<usize>,
}

impl Search<'_> {
    fn lie_regular(&mut self, seg: &[usize]) -> Result<bool, LieWordsError> {
        if let Some(&v) = self.lie_cache.get(seg) {
            return Ok(v);
        }
        let v = lie_regular_any_length(seg, DEFAULT_MAX_ARITY)?.is_regular();
        self.lie_cache.insert(seg.to_vec(), v);
        Ok(v)
    }

    /// `seq` is non-qualifying; `sums[i]` is the weight of `seq[i..]`.
    fn dfs(&mut self, seq: &mut Vec<usize>, sums: &[GroupElement]) -> Result<(), LieWordsError> {
        let len = seq.len();
        if self.bad_counts.len() <= len {
            self.bad_counts.push(0);
        }
        self.bad_counts[len] += 1;
        if len > self.longest_bad.len() {
            self.longest_bad = seq.clone();
        }
        if len == self.max_length {
            return Ok(());
        }
        'letters: for a in 0..self.letters.len() {
            seq.push(a);
            // Weights of the segments ending at the new letter.
            let mut new_sums = Vec::with_capacity(len + 1);
            for s in sums {
                new_sums.push(s.compose(&self.letters[a])?);
            }
            new_sums.push(self.letters[a].clone());
            // The whole sequence is its own initial segment.
            if !self.target.contains(&new_sums[0]) {
                seq.pop();
                continue;
            }
            for (start, w) in new_sums.iter().enumerate() {
                if !self.target.contains(w) && self.lie_regular(&seq[start..])? {
                    seq.pop();
                    continue 'letters;
                }
            }
            self.dfs(seq, &new_sums)?;
            seq.pop();
        }
        Ok(())
    }
}

/// Checks the characterisation on `X` for sequences up to `max_length`.
///
/// For free `X` the sequences searched are those with letters in `X`: a
/// letter outside `X` is already a Lie-regular segment of weight outside
/// `X`. Non-qualifying sequences are closed under prefixes, so a
/// depth-first search visits them all. Letters are ordered as group
/// elements. Segments longer than the default arity cap are decided by the
/// split criterion.
pub fn check_characterisation(target: &ElementSet, max_length: usize) -> Result<CharacterisationReport, LieWordsError> {
    if !target.group().is_abelian() {
        return Err(LieWordsError::NonAbelian);
    }
    match is_arithmetically_free(target) {
        AfVerdict::Free => {
            let mut search = Search {
                letters: target.to_vec(),
                target,
                max_length,
                lie_cache: HashMap::new(),
                bad_counts: Vec::new(),
                longest_bad: Vec::new(),
            };
            search.dfs(&mut Vec::new(), &[])?;
            let longest = search.bad_counts.len() - 1;
            let bound = (longest < max_length).then_some(longest + 1);
            Ok(CharacterisationReport::Free {
                max_length,
                bound,
                bad_counts: search.bad_counts,
                longest_bad: search.longest_bad.iter().map(|&a| search.letters[a].clone()).collect(),
            })
        }
        AfVerdict::NotFree { x, g } => {
            let mut violations = Vec::new();
            let mut lie_cache: HashMap<Vec<usize>, bool> = HashMap::new();
            for k in 1..=max_length {
                let elems: Vec<GroupElement> = std::iter::once(x.clone()).chain(std::iter::repeat_n(g.clone(), k)).collect();
                let ranks: Vec<usize> = elems.iter().map(|e| target.rank_of(e).expect("orbit lies in X")).collect();
                for start in 0..elems.len() {
                    let mut w = target.group().identity();
                    for end in start + 1..=elems.len() {
                        w = w.compose(&elems[end - 1])?;
                        if target.contains(&w) {
                            continue;
                        }
                        if start == 0 {
                            violations.push(SegmentViolation { k, start, end, kind: "initial".into(), weight: w.clone() });
                        }
                        let seg = &ranks[start..end];
                        let lie = match lie_cache.get(seg) {
                            Some(&v) => v,
                            None => {
                                let v = lie_regular_any_length(seg, DEFAULT_MAX_ARITY)?.is_regular();
                                lie_cache.insert(seg.to_vec(), v);
                                v
                            }
                        };
                        if lie {
                            violations.push(SegmentViolation { k, start, end, kind: "lie-regular".into(), weight: w.clone() });
                        }
                    }
                }
            }
            Ok(CharacterisationReport::NotFree { x, g, max_length, checked: max_length, violations })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Group;

    #[test]
    fn z2_singleton() {
        let z2 = Group::cyclic(2).unwrap();
        let r = check_characterisation(&z2.parse_element_set("1").unwrap(), 6).unwrap();
        match r {
            CharacterisationReport::Free { bound, bad_counts, .. } => {
                assert_eq!(bound, Some(2));
                assert_eq!(bad_counts, vec![1, 1]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn klein_four_not_free() {
        let v4 = Group::abelian(&[2, 2], 0).unwrap();
        let r = check_characterisation(&v4.parse_element_set("(1,0);(0,1);(1,1)").unwrap(), 5).unwrap();
        assert!(r.passed());
        assert!(matches!(r, CharacterisationReport::NotFree { checked: 5, .. }));
    }

    #[test]
    fn units_of_z5() {
        let z5 = Group::cyclic(5).unwrap();
        let r = check_characterisation(&z5.parse_element_set("1,2,3,4").unwrap(), 60).unwrap();
        match r {
            CharacterisationReport::Free { bound, bad_counts, longest_bad, .. } => {
                assert_eq!(bound, Some(47));
                assert_eq!(&bad_counts[..6], &[1, 4, 12, 30, 64, 120]);
                assert_eq!(longest_bad.len(), 46);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn z5_pair_has_a_small_bound() {
        let z5 = Group::cyclic(5).unwrap();
        let r = check_characterisation(&z5.parse_element_set("1,2").unwrap(), 8).unwrap();
        match r {
            CharacterisationReport::Free { bound: Some(n), .. } => assert!(n <= 8),
            other => panic!("unexpected {other:?}"),
        }
    }
}
