//! Fullness of a sequence over a weighted alphabet.
//!
//! `S` is full when `sigma(S)` cannot be translated into `X`, or when some
//! segment of `S` is the underlying sequence of a regular nested word and
//! has weight outside `X`.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::alphabet::Alphabet;
use super::lie_regular::{lie_regular_any_length, LieVerdict, DEFAULT_MAX_ARITY};
use super::nested::{proper_block, NestedWord};
use super::tree::ProductTree;
use super::LieWordsError;
use crate::groups::{ElementSet, GroupElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullnessOptions {
    /// Largest nesting depth searched for regular elements.
    pub depth_budget: usize,
    /// Search Lie-regular segments instead of regular elements.
    pub lie_regular_fallback: bool,
    /// Longest segment decided by enumerating bracketings; longer ones use
    /// the split criterion.
    pub max_arity: usize,
    /// Cap on the number of regular parses built for one sequence.
    pub parse_budget: usize,
}

impl Default for FullnessOptions {
    fn default() -> Self {
        FullnessOptions {
            depth_budget: 3,
            lie_regular_fallback: true,
            max_arity: DEFAULT_MAX_ARITY,
            parse_budget: 200_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FullnessVerdict {
    Full,
    NotFull,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// Every candidate translation was refuted.
    Untranslatable { span: ElementSet, candidates_tried: usize },
    /// `S[start..end]` underlies `word` and has weight outside `X`.
    RegularSegment { start: usize, end: usize, word: NestedWord, weight: GroupElement },
    /// `S[start..end]` is Lie-regular via `tree` and has weight outside `X`.
    LieRegularSegment { start: usize, end: usize, tree: ProductTree, weight: GroupElement },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FullnessReport {
    pub verdict: FullnessVerdict,
    /// 1 or 2 when full.
    pub clause: Option<u8>,
    pub certificate: Option<Certificate>,
    /// A translation of the span into `X`, when one exists.
    pub translation: Option<GroupElement>,
    /// Why the search could not conclude, for `Unknown`.
    pub note: Option<String>,
}

impl FullnessReport {
    pub fn is_full(&self) -> bool {
        self.verdict == FullnessVerdict::Full
    }
}

/// Strictly regular elements of `W^n(A)` with a prescribed underlying
/// sequence.
struct Parser<'a> {
    seq: &'a [usize],
    memo: HashMap<(usize, usize, usize), Vec<NestedWord>>,
    built: usize,
    budget: usize,
}

impl Parser<'_> {
    fn parses(&mut self, i: usize, j: usize, depth: usize) -> Option<Vec<NestedWord>> {
        if let Some(v) = self.memo.get(&(i, j, depth)) {
            return Some(v.clone());
        }
        let out = if depth == 0 {
            if j - i == 1 {
                vec![NestedWord::Letter(self.seq[i])]
            } else {
                vec![]
            }
        } else {
            let mut found = BTreeSet::new();
            let mut stack = Vec::new();
            self.extend(i, j, depth, &mut stack, &mut found)?;
            found.into_iter().collect()
        };
        self.built += out.len();
        if self.built > self.budget {
            return None;
        }
        self.memo.insert((i, j, depth), out.clone());
        Some(out)
    }

    /// Extends a partial list of components covering `[.., pos)`.
    fn extend(
        &mut self,
        pos: usize,
        end: usize,
        depth: usize,
        stack: &mut Vec<NestedWord>,
        found: &mut BTreeSet<NestedWord>,
    ) -> Option<()> {
        if pos == end {
            if proper_block(stack) {
                found.insert(NestedWord::Seq(stack.clone()));
            }
            return Some(());
        }
        for q in pos + 1..=end {
            for part in self.parses(pos, q, depth - 1)? {
                if let Some(first) = stack.first() {
                    if !part.same_type(first) {
                        continue;
                    }
                    // Once the run of the first component has ended, every
                    // later one must exceed it.
                    let run_over = stack.iter().any(|x| x != first);
                    if part < *first || (run_over && part == *first) {
                        continue;
                    }
                }
                stack.push(part);
                self.extend(q, end, depth, stack, found)?;
                stack.pop();
            }
        }
        Some(())
    }
}

/// Some regular element of depth at most `depth` with underlying sequence
/// `seq`, least depth first. `None` in the outer option means the parse
/// budget ran out.
pub fn regular_parse(seq: &[usize], depth: usize, budget: usize) -> Option<Option<NestedWord>> {
    if seq.is_empty() {
        return Some(None);
    }
    let mut parser = Parser { seq, memo: HashMap::new(), built: 0, budget };
    for d in 0..=depth {
        if let Some(w) = parser.parses(0, seq.len(), d)?.into_iter().next() {
            return Some(Some(w));
        }
    }
    Some(None)
}

/// Decides fullness of `seq` over `alphabet`.
///
/// Segments are scanned by start position, then by length. `NotFull` is
/// only reported when the scan is exhaustive: always with the Lie-regular
/// fallback, otherwise when the depth budget reaches `|S| - 1`, beyond
/// which no new regular elements appear.
pub fn is_full(seq: &[usize], alphabet: &Alphabet, options: &FullnessOptions) -> Result<FullnessReport, LieWordsError> {
    let span = alphabet.span(seq)?;
    let translation = alphabet.translation(seq)?;
    let Some(h) = translation else {
        let candidates_tried = if span.len() > alphabet.target().len() { 0 } else { alphabet.target().len() };
        return Ok(FullnessReport {
            verdict: FullnessVerdict::Full,
            clause: Some(1),
            certificate: Some(Certificate::Untranslatable { span, candidates_tried }),
            translation: None,
            note: None,
        });
    };

    let mut gaps = Vec::new();
    for start in 0..seq.len() {
        for end in start + 1..=seq.len() {
            let segment = &seq[start..end];
            let weight = alphabet.weight_of(segment)?;
            if alphabet.target().contains(&weight) {
                continue;
            }
            let certificate = if options.lie_regular_fallback {
                match lie_regular_any_length(segment, options.max_arity)? {
                    LieVerdict::Regular { witness } => {
                        Some(Certificate::LieRegularSegment { start, end, tree: witness, weight })
                    }
                    LieVerdict::NotRegular => None,
                }
            } else {
                match regular_parse(segment, options.depth_budget, options.parse_budget) {
                    Some(Some(word)) => Some(Certificate::RegularSegment { start, end, word, weight }),
                    Some(None) => {
                        if options.depth_budget + 1 < segment.len() {
                            gaps.push(format!("segment {start}..{end} needs depth {}", segment.len() - 1));
                        }
                        None
                    }
                    None => {
                        gaps.push(format!("segment {start}..{end} exhausted the parse budget"));
                        None
                    }
                }
            };
            if let Some(c) = certificate {
                return Ok(FullnessReport {
                    verdict: FullnessVerdict::Full,
                    clause: Some(2),
                    certificate: Some(c),
                    translation: Some(h),
                    note: None,
                });
            }
        }
    }
    let (verdict, note) = if gaps.is_empty() {
        (FullnessVerdict::NotFull, None)
    } else {
        (FullnessVerdict::Unknown, Some(gaps.join("; ")))
    };
    Ok(FullnessReport { verdict, clause: None, certificate: None, translation: Some(h), note })
}
