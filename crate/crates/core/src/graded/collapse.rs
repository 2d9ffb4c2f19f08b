//! Sampled checks that homogeneous left-normed products vanish when a
//! prefix, or a Lie-regular segment, has degree outside the support.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::algebra::{is_zero_vector, zero_vector, StructureAlgebra};
use super::grading::Grading;
use super::GradedError;
use crate::lie_words::{is_lie_regular_with_cap, linearise, linearise_bare, LieVerdict};

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseOptions {
    /// Number of tuples on which at least one identity applies.
    pub samples: usize,
    pub max_len: usize,
    pub seed: u64,
}

impl Default for CollapseOptions {
    fn default() -> Self {
        CollapseOptions { samples: 1000, max_len: 6, seed: DEFAULT_SEED }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollapseViolation {
    pub indices: Vec<usize>,
    /// `"prefix"` or `"segment"`.
    pub kind: String,
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollapseReport {
    pub seed: u64,
    pub attempts: usize,
    /// Tuples on which some identity applied.
    pub tuples_checked: usize,
    pub prefix_checks: usize,
    pub segment_checks: usize,
    pub violations: Vec<CollapseViolation>,
}

impl CollapseReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Samples basis tuples `(e_{i_1}, ..., e_{i_k})` and checks:
/// a prefix of degree outside the support kills `[e_{i_1}, ..., e_{i_k}]`;
/// a Lie-regular segment of degree outside the support, bracketed by the
/// witness tree `P`, kills the signed sum of its linearisation.
///
/// Gives up after `50 * samples` draws.
pub fn verify_collapse_identities(
    alg: &StructureAlgebra,
    grading: &Grading,
    options: &CollapseOptions,
) -> Result<CollapseReport, GradedError> {
    if !grading.group().is_abelian() {
        return Err(GradedError::Group(crate::groups::GroupError::NonAbelian));
    }
    let support = grading.support();
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut report = CollapseReport {
        seed: options.seed,
        attempts: 0,
        tuples_checked: 0,
        prefix_checks: 0,
        segment_checks: 0,
        violations: Vec::new(),
    };
    let d = alg.dim();
    if d == 0 || options.max_len < 2 {
        return Ok(report);
    }
    while report.tuples_checked < options.samples && report.attempts < 50 * options.samples {
        report.attempts += 1;
        let k = rng.random_range(2..=options.max_len);
        let idx: Vec<usize> = (0..k).map(|_| rng.random_range(0..d)).collect();
        let degs: Vec<_> = idx.iter().map(|&i| grading.degree(i).clone()).collect();
        let mut applied = false;

        let mut acc = grading.group().identity();
        for (p, deg) in degs.iter().enumerate() {
            acc = acc.compose(deg)?;
            if !support.contains(&acc) {
                applied = true;
                report.prefix_checks += 1;
                if !is_zero_vector(&alg.left_normed(&idx)) {
                    report.violations.push(CollapseViolation { indices: idx.clone(), kind: "prefix".into(), start: 0, end: p + 1 });
                }
                break;
            }
        }

        for s in 0..k {
            let mut w = grading.group().identity();
            for e in s + 1..=k {
                w = w.compose(&degs[e - 1])?;
                if e - s < 2 || support.contains(&w) {
                    continue;
                }
                let LieVerdict::Regular { witness } = is_lie_regular_with_cap(&degs[s..e], options.max_len)? else {
                    continue;
                };
                applied = true;
                report.segment_checks += 1;
                let lin = if s == 0 { linearise_bare(&witness)? } else { linearise(&witness)? };
                let mut total = zero_vector(d);
                for term in &lin.terms {
                    let mut word = idx[..s].to_vec();
                    word.extend(term.perm.apply(&idx[s..e]));
                    word.extend_from_slice(&idx[e..]);
                    let v = alg.left_normed(&word);
                    for (t, x) in total.iter_mut().zip(v) {
                        if term.sign > 0 {
                            *t += x;
                        } else {
                            *t -= x;
                        }
                    }
                }
                if !is_zero_vector(&total) {
                    report.violations.push(CollapseViolation { indices: idx.clone(), kind: "segment".into(), start: s, end: e });
                }
            }
        }
        if applied {
            report.tuples_checked += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::witness::{construct_filiform_truncation, construct_metabelian_witness};
    use crate::groups::Group;

    #[test]
    fn witness_and_filiform_collapse() {
        let v4 = Group::abelian(&[2, 2], 0).unwrap();
        let w = construct_metabelian_witness(&v4.parse_element_set("(1,0);(0,1);(1,1)").unwrap()).unwrap();
        let opts = CollapseOptions { samples: 200, ..Default::default() };
        let r = verify_collapse_identities(&w.algebra, &w.grading, &opts).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.tuples_checked, 200);

        let x = v4.parse_element("(0,1)").unwrap();
        let g = v4.parse_element("(1,0)").unwrap();
        let (alg, gr) = construct_filiform_truncation(&x, &g, 6).unwrap();
        let r = verify_collapse_identities(&alg, &gr, &opts).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.prefix_checks > 0);
    }

    #[test]
    fn determinism() {
        let z6 = Group::cyclic(6).unwrap();
        let w = construct_metabelian_witness(&z6.parse_element_set("1,2,3,5").unwrap()).unwrap();
        let opts = CollapseOptions { samples: 50, ..Default::default() };
        let a = verify_collapse_identities(&w.algebra, &w.grading, &opts).unwrap();
        let b = verify_collapse_identities(&w.algebra, &w.grading, &opts).unwrap();
        assert_eq!(a, b);
        assert!(a.passed());
    }
}
