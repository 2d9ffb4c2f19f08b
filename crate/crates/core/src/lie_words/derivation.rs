//! Derivations: regular elements of `W^2(A)` whose underlying sequence is a
//! segment of a given sequence. Hyper-derivations additionally have a
//! strictly smaller span.

use super::alphabet::Alphabet;
use super::nested::{proper_block, NestedWord};
use super::{HyperPrecondition, LieWordsError};

/// Default bound on the length of sequences searched exhaustively.
pub const DEFAULT_MAX_SEARCH_LENGTH: usize = 16;

type Block = (usize, usize);

fn blocks_to_word(seq: &[usize], blocks: &[Block]) -> NestedWord {
    NestedWord::seq(blocks.iter().map(|&(p, q)| NestedWord::word(&seq[p..q])).collect())
        .expect("blocks are nonempty words")
}

/// Depth-first search over segment parses that form regular depth-2 words.
///
/// Segments are visited by start position; within a start, block lengths
/// are tried shortest first. `accept` sees each regular parse as it is
/// found; the first accepted parse is returned.
fn search_parses<F>(seq: &[usize], mut accept: F) -> Option<Vec<Block>>
where
    F: FnMut(&[Block]) -> bool,
{
    fn dfs<F: FnMut(&[Block]) -> bool>(
        seq: &[usize],
        pos: usize,
        blocks: &mut Vec<Block>,
        run_open: bool,
        accept: &mut F,
    ) -> bool {
        if pos >= seq.len() {
            return false;
        }
        let head_letter = seq[blocks.first().map_or(pos, |b| b.0)];
        if seq[pos] != head_letter {
            return false;
        }
        for q in pos + 1..=seq.len() {
            let block = &seq[pos..q];
            if !proper_block(block) {
                // Longer blocks keep the offending letter.
                if q - pos > 1 && seq[q - 1] <= head_letter {
                    break;
                }
                continue;
            }
            let (still_open, ok) = match blocks.first() {
                None => (true, true),
                Some(&(p0, q0)) => {
                    let first = &seq[p0..q0];
                    match block.cmp(first) {
                        std::cmp::Ordering::Equal => (run_open, run_open),
                        std::cmp::Ordering::Greater => (false, true),
                        std::cmp::Ordering::Less => (run_open, false),
                    }
                }
            };
            if !ok {
                continue;
            }
            blocks.push((pos, q));
            let complete = blocks.len() == 1 || !still_open;
            if (complete && accept(blocks)) || dfs(seq, q, blocks, still_open, accept) {
                return true;
            }
            blocks.pop();
        }
        false
    }
    for start in 0..seq.len() {
        let mut blocks = Vec::new();
        if dfs(seq, start, &mut blocks, true, &mut accept) {
            return Some(blocks);
        }
    }
    None
}

/// Cut `seq` into blocks starting at each run of its least letter and take
/// the longest stretch of consecutive blocks forming a regular element.
pub fn obvious_derivation(seq: &[usize]) -> Option<NestedWord> {
    let &least = seq.iter().min()?;
    let starts: Vec<usize> = (0..seq.len())
        .filter(|&i| seq[i] == least && (i == 0 || seq[i - 1] != least))
        .collect();
    let mut blocks: Vec<Block> = starts
        .iter()
        .enumerate()
        .map(|(t, &p)| (p, starts.get(t + 1).copied().unwrap_or(seq.len())))
        .collect();
    if let Some(&(p, q)) = blocks.last() {
        if seq[p..q].iter().all(|&a| a == least) {
            blocks.pop();
        }
    }
    let mut best: Option<(usize, usize)> = None;
    for i in 0..blocks.len() {
        let first = &seq[blocks[i].0..blocks[i].1];
        let mut j = i + 1;
        while j < blocks.len() && seq[blocks[j].0..blocks[j].1] == *first {
            j += 1;
        }
        let run_end = j;
        while j < blocks.len() && seq[blocks[j].0..blocks[j].1] > *first {
            j += 1;
        }
        let end = if j > run_end { j } else { i + 1 };
        if best.is_none_or(|(a, b)| end - i > b - a) {
            best = Some((i, end));
        }
    }
    let (i, j) = best?;
    let word = blocks_to_word(seq, &blocks[i..j]);
    debug_assert!(word.is_regular());
    Some(word)
}

fn check_length(seq: &[usize], max_len: usize) -> Result<(), LieWordsError> {
    if seq.len() > max_len {
        Err(LieWordsError::LengthOverBound { length: seq.len(), bound: max_len })
    } else {
        Ok(())
    }
}

/// A derivation of `seq` with at least `min_len` components, or `None` when
/// no parse of any segment qualifies.
pub fn find_derivation(seq: &[usize], min_len: usize, max_len: usize) -> Result<Option<NestedWord>, LieWordsError> {
    check_length(seq, max_len)?;
    let min_len = min_len.max(1);
    if let Some(w) = obvious_derivation(seq) {
        if w.len() >= min_len {
            return Ok(Some(w));
        }
    }
    Ok(search_parses(seq, |blocks| blocks.len() >= min_len).map(|b| blocks_to_word(seq, &b)))
}

/// A derivation with at least `min_len` components and a span strictly
/// smaller than that of `seq`.
///
/// Requires every letter to have weight in `X` and `sigma(seq)` to be
/// translatable into `X`; violations are reported as
/// [`LieWordsError::Precondition`].
pub fn find_hyper_derivation(
    seq: &[usize],
    alphabet: &Alphabet,
    min_len: usize,
    max_len: usize,
) -> Result<Option<NestedWord>, LieWordsError> {
    check_length(seq, max_len)?;
    let targets = alphabet.target_letters();
    if let Some(&a) = seq.iter().find(|a| !targets.contains(a)) {
        return Err(LieWordsError::Precondition(HyperPrecondition::LetterOutsideTarget(a)));
    }
    if alphabet.translation(seq)?.is_none() {
        return Err(LieWordsError::Precondition(HyperPrecondition::Untranslatable));
    }
    let span_size = alphabet.span(seq)?.len();
    let min_len = min_len.max(1);
    let mut failure = None;
    let found = search_parses(seq, |blocks| {
        if blocks.len() < min_len {
            return false;
        }
        match alphabet.span_nested(&blocks_to_word(seq, blocks)) {
            Ok(s) => s.len() < span_size,
            Err(e) => {
                failure = Some(e);
                true
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(found.map(|b| blocks_to_word(seq, &b)))
}
