use std::path::PathBuf;

use afree::cayley::{CayleyGraph, WalkMode};
use afree::graded::{
    self, construct_filiform_truncation, construct_metabelian_witness, default_steps, derived_series,
    lower_central_series, project_to_finite, regrade_by_contraction, verify_collapse_identities, verify_grading,
    CollapseOptions, GradedError, Grading, StructureAlgebra,
};
use afree::groups::{is_arithmetically_free, is_sum_free, orbit, AfVerdict};
use afree::higman::{Higman, HigmanError, DEFAULT_DIGITS_BUDGET, DEFAULT_STEP_BUDGET};
use afree::lie_words::{
    check_characterisation, is_full, is_lie_regular_with_cap, lie_regular_any_length, linearise, linearise_bare,
    Alphabet, CharacterisationReport, FullnessOptions, FullnessVerdict, LieVerdict, LieWordsError, ProductTree,
    DEFAULT_MAX_ARITY,
};
use clap::{Args, ValueEnum};
use serde_json::{json, Value};

use crate::{parse, CliError, Outcome, CACHE_ENV};

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

fn graded_err(e: GradedError) -> CliError {
    CliError::Contract(e.to_string())
}

fn lie_err(e: LieWordsError) -> CliError {
    CliError::Contract(e.to_string())
}

fn write_algebra(path: Option<&str>, alg: &StructureAlgebra, grading: &Grading) -> Result<(), CliError> {
    if let Some(path) = path {
        let text = serde_json::to_string_pretty(&graded::to_json(alg, Some(grading))).expect("algebras serialize");
        std::fs::write(path, text + "\n").map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
    }
    Ok(())
}

#[derive(Debug, Args)]
pub struct AfCheck {
    /// Group, e.g. `Z/5`, `Z/2xZ/4`, `Z^2`, `S3`, or `@table.json`.
    #[arg(long)]
    group: String,
    /// Elements, e.g. `1,2,3,4` or `(1,0);(0,1)`.
    #[arg(long)]
    set: String,
}

impl AfCheck {
    pub fn run(&self) -> Result<Outcome, CliError> {
        let group = parse::group(&self.group)?;
        let set = parse::set(&group, &self.set)?;
        let verdict = is_arithmetically_free(&set);
        let mut result = to_value(&verdict);
        result["group"] = json!(group.spec().to_string());
        result["set"] = to_value(&set);
        result["sum_free"] = json!(is_sum_free(&set));
        if let AfVerdict::NotFree { x, g } = &verdict {
            let witness = orbit(x, g, set.len() as u64).map_err(CliError::contract)?;
            result["orbit"] = to_value(&witness);
        }
        Ok(Outcome::verdict(result))
    }
}

#[derive(Debug, Args)]
pub struct HigmanArgs {
    a: u64,
    b: u64,
    c: u64,
    /// Largest number of decimal digits of any intermediate value.
    #[arg(long, alias = "budget-digits", default_value_t = DEFAULT_DIGITS_BUDGET)]
    digits_budget: u64,
    /// Largest recursion argument walked step by step.
    #[arg(long, default_value_t = DEFAULT_STEP_BUDGET)]
    budget_steps: u64,
    /// Memo file, read before and written after evaluation.
    #[arg(long, env = CACHE_ENV)]
    cache: Option<PathBuf>,
}

impl HigmanArgs {
    pub fn run(&self) -> Result<Outcome, CliError> {
        let h = Higman::new(self.digits_budget).with_step_budget(self.budget_steps);
        if let Some(path) = &self.cache {
            if path.exists() {
                h.load(path).map_err(CliError::contract)?;
            }
        }
        let (a, b, c) = (self.a, self.b, self.c);
        let outcome = match h.eval(a, b, c) {
            Ok(v) => {
                let text = v.to_string();
                Outcome::verdict(json!({ "a": a, "b": b, "c": c, "value": text, "digits": text.len() }))
            }
            Err(e) if e.is_budget() => {
                let (bound, (bb, cc)) = h.lower_bound(a, b, c).map_err(CliError::contract)?;
                Outcome {
                    result: json!({
                        "a": a, "b": b, "c": c,
                        "value": Value::Null,
                        "reason": e.to_string(),
                        "lower_bound": { "value": bound.to_string(), "b": bb, "c": cc },
                    }),
                    unknown: true,
                }
            }
            Err(HigmanError::ZeroArgument) => return Err(CliError::Usage("arguments must be at least 1".into())),
            Err(e) => return Err(CliError::contract(e)),
        };
        if let Some(path) = &self.cache {
            h.save(path).map_err(CliError::contract)?;
        }
        Ok(outcome)
    }
}

/// Nested arrays `[[1,2],3]` or the bracket form `[v1,[v2,v3]]`.
fn parse_tree(text: &str) -> Result<ProductTree, CliError> {
    let cleaned: String = text.chars().filter(|c| !matches!(c, 'v' | ' ')).collect();
    let value: Value =
        serde_json::from_str(&cleaned).map_err(|e| CliError::Usage(format!("malformed tree {text:?}: {e}")))?;
    ProductTree::from_json(&value).map_err(|e| CliError::Usage(e.to_string()))
}

#[derive(Debug, Args)]
pub struct Linearise {
    /// Bracketing, e.g. `[[1,2],3]` or `[v1,[v2,v3]]`.
    #[arg(required_unless_present = "left_normed", conflicts_with = "left_normed")]
    tree: Option<String>,
    /// Use the left-normed product of this many factors instead.
    #[arg(long)]
    left_normed: Option<usize>,
    /// Expand the bracketing on its own rather than inside a longer product.
    #[arg(long)]
    bare: bool,
}

impl Linearise {
    pub fn run(&self) -> Result<Outcome, CliError> {
        let tree = match (&self.tree, self.left_normed) {
            (Some(t), _) => parse_tree(t)?,
            (None, Some(0)) => return Err(CliError::Usage("a product needs at least one factor".into())),
            (None, Some(l)) => ProductTree::left_normed(l),
            (None, None) => unreachable!("clap requires one of them"),
        };
        let lin = if self.bare { linearise_bare(&tree) } else { linearise(&tree) }.map_err(lie_err)?;
        let terms: Vec<Value> = lin
            .terms
            .iter()
            .map(|t| json!({ "perm": t.perm.to_string(), "one_line": t.perm.one_line(), "sign": t.sign }))
            .collect();
        Ok(Outcome::verdict(json!({
            "tree": tree.to_string(),
            "arity": lin.arity,
            "form": if self.bare { "bare" } else { "contextual" },
            "terms": terms,
        })))
    }
}

#[derive(Debug, Args)]
pub struct LieRegular {
    /// Letters as comparable integers, e.g. `0,0,1`.
    seq: String,
    /// Longest sequence decided by enumerating bracketings.
    #[arg(long, default_value_t = DEFAULT_MAX_ARITY)]
    budget_arity: usize,
    /// Never fall back to the split criterion; longer sequences are unknown.
    #[arg(long)]
    enumerate_only: bool,
}

impl LieRegular {
    pub fn run(&self) -> Result<Outcome, CliError> {
        let seq = parse::letters(&self.seq)?;
        if seq.is_empty() {
            return Err(CliError::Usage("the sequence is empty".into()));
        }
        let long = seq.len() > self.budget_arity;
        if long && self.enumerate_only {
            return Ok(Outcome {
                result: json!({
                    "sequence": seq,
                    "verdict": "unknown",
                    "reason": format!("length {} exceeds the arity budget {}", seq.len(), self.budget_arity),
                }),
                unknown: true,
            });
        }
        let verdict = if long {
            lie_regular_any_length(&seq, self.budget_arity)
        } else {
            is_lie_regular_with_cap(&seq, self.budget_arity)
        }
        .map_err(lie_err)?;
        let mut result = json!({
            "sequence": seq,
            "method": if long { "splits" } else { "enumeration" },
        });
        match verdict {
            LieVerdict::Regular { witness } => {
                result["verdict"] = json!("regular");
                result["witness"] = json!(witness.to_string());
            }
            LieVerdict::NotRegular => result["verdict"] = json!("not-regular"),
        }
        Ok(Outcome::verdict(result))
    }
}

#[derive(Debug, Args)]
pub struct Fullness {
    #[arg(long)]
    group: String,
    /// The set X.
    #[arg(long)]
    target: String,
    /// Weights of letters 0, 1, ... in order; defaults to the elements of X.
    #[arg(long)]
    weights: Option<String>,
    /// The sequence, as letter indices.
    #[arg(long)]
    seq: String,
    /// Largest nesting depth searched for regular segments.
    #[arg(long, default_value_t = 3)]
    budget_depth: usize,
    /// Longest segment decided by enumerating bracketings.
    #[arg(long, default_value_t = DEFAULT_MAX_ARITY)]
    budget_arity: usize,
    #[arg(long, default_value_t = 200_000)]
    budget_parses: usize,
    /// Only accept regular nested words, not Lie-regular segments.
    #[arg(long)]
    no_lie_fallback: bool,
}

impl Fullness {
    pub fn run(&self) -> Result<Outcome, CliError> {
        let group = parse::group(&self.group)?;
        let target = parse::set(&group, &self.target)?;
        let weights = match &self.weights {
            Some(w) => parse::list(&group, w)?,
            None => target.to_vec(),
        };
        let seq = parse::letters(&self.seq)?;
        if let Some(&bad) = seq.iter().find(|&&a| a >= weights.len()) {
            return Err(CliError::Usage(format!("letter {bad} has no weight ({} letters)", weights.len())));
        }
        let alphabet = Alphabet::new(weights, target).map_err(lie_err)?;
        let options = FullnessOptions {
            depth_budget: self.budget_depth,
            lie_regular_fallback: !self.no_lie_fallback,
            max_arity: self.budget_arity,
            parse_budget: self.budget_parses,
        };
        let report = is_full(&seq, &alphabet, &options).map_err(lie_err)?;
        let mut result = to_value(&report);
        result["sequence"] = json!(seq);
        Ok(Outcome { result, unknown: report.verdict == FullnessVerdict::Unknown })
    }
}

#[derive(Debug, Args)]
pub struct Characterise {
    #[arg(long)]
    group: String,
    #[arg(long)]
    set: String,
    /// Longest sequence examined.
    #[arg(long, default_value_t = 16)]
    budget_length: usize,
}

impl Characterise {
    pub fn run(&self) -> Result<Outcome, CliError> {
        let group = parse::group(&self.group)?;
        let set = parse::set(&group, &self.set)?;
        if set.is_empty() {
            return Err(CliError::Usage("the set is empty".into()));
        }
        let report = check_characterisation(&set, self.budget_length).map_err(lie_err)?;
        let unknown = matches!(report, CharacterisationReport::Free { bound: None, .. });
        let mut result = to_value(&report);
        result["passed"] = json!(report.passed());
        Ok(Outcome { result, unknown })
    }
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[arg(long)]
    group: String,
    /// The intended support Y, not arithmetically-free.
    #[arg(long)]
    set: String,
    /// Write the graded algebra here.
    #[arg(long)]
    output: Option<String>,
}

impl WitnessArgs {
    pub fn run(&self) -> Result<Outcome, CliError> {
        let group = parse::group(&self.group)?;
        let y = parse::set(&group, &self.set)?;
        let w = construct_metabelian_witness(&y).map_err(graded_err)?;
        write_algebra(self.output.as_deref(), &w.algebra, &w.grading)?;
        let steps = default_steps(&w.algebra);
        Ok(Outcome::verdict(json!({
            "summary": to_value(&w.summary()),
            "support": to_value(&w.grading.support()),
            "grading": to_value(&verify_grading(&w.algebra, &w.grading).map_err(graded_err)?),
            "lower_central": to_value(&lower_central_series(&w.algebra, steps)),
            "derived": to_value(&derived_series(&w.algebra, steps)),
            "algebra": graded::to_json(&w.algebra, Some(&w.grading)),
        })))
    }
}

#[derive(Debug, Args)]
pub struct Filiform {
    #[arg(long)]
    group: String,
    /// Degree of `w_0`.
    #[arg(long)]
    x: String,
    /// Degree of `v`.
    #[arg(long)]
    g: String,
    /// Number of `w` generators kept.
    #[arg(long)]
    depth: usize,
    #[arg(long)]
    output: Option<String>,
}

impl Filiform {
    pub fn run(&self) -> Result<Outcome, CliError> {
        let group = parse::group(&self.group)?;
        let (x, g) = (parse::element(&group, &self.x)?, parse::element(&group, &self.g)?);
        let (alg, grading) = construct_filiform_truncation(&x, &g, self.depth).map_err(graded_err)?;
        write_algebra(self.output.as_deref(), &alg, &grading)?;
        Ok(Outcome::verdict(json!({
            "dim": alg.dim(),
            "support": to_value(&grading.support()),
            "grading": to_value(&verify_grading(&alg, &grading).map_err(graded_err)?),
            "lower_central": to_value(&lower_central_series(&alg, default_steps(&alg))),
            "algebra": graded::to_json(&alg, Some(&grading)),
        })))
    }
}

fn load_graded(path: &str, group: Option<&str>) -> Result<(StructureAlgebra, Grading), CliError> {
    let group = group.map(parse::group).transpose()?;
    let (alg, grading) = parse::algebra(path, group.as_ref())?;
    let grading = grading.ok_or_else(|| CliError::Usage(format!("{path} has no grading")))?;
    Ok((alg, grading))
}

#[derive(Debug, Args)]
pub struct GradeVerify {
    /// Algebra file with a grading.
    #[arg(long)]
    algebra: String,
    /// Group of the grading, when the file does not name one.
    #[arg(long)]
    group: Option<String>,
    /// Random tuples on which to test the collapse identities; 0 skips.
    #[arg(long, default_value_t = 0)]
    collapse_samples: usize,
    #[arg(long, default_value_t = 6)]
    collapse_max_len: usize,
    #[arg(long, default_value_t = graded::collapse::DEFAULT_SEED)]
    seed: u64,
}

impl GradeVerify {
    pub fn run(&self) -> Result<Outcome, CliError> {
        let (alg, grading) = load_graded(&self.algebra, self.group.as_deref())?;
        let verdict = verify_grading(&alg, &grading).map_err(graded_err)?;
        let support = grading.support();
        let mut result = to_value(&verdict);
        result["support"] = to_value(&support);
        if grading.group().is_abelian() {
            result["support_af"] = to_value(&is_arithmetically_free(&support));
        }
        if self.collapse_samples > 0 && verdict.passed() {
            let options =
                CollapseOptions { samples: self.collapse_samples, max_len: self.collapse_max_len, seed: self.seed };
            let report = verify_collapse_identities(&alg, &grading, &options).map_err(graded_err)?;
            result["collapse"] = to_value(&report);
            result["collapse_passed"] = json!(report.passed());
        }
        Ok(Outcome::verdict(result))
    }
}

#[derive(Debug, Args)]
pub struct Lcs {
    #[arg(long)]
    algebra: String,
    #[arg(long)]
    group: Option<String>,
    /// Number of series terms computed; defaults to twice the dimension.
    #[arg(long)]
    budget_steps: Option<usize>,
}

impl Lcs {
    pub fn run(&self) -> Result<Outcome, CliError> {
        let group = self.group.as_deref().map(parse::group).transpose()?;
        let (alg, _) = parse::algebra(&self.algebra, group.as_ref())?;
        let steps = self.budget_steps.unwrap_or_else(|| default_steps(&alg));
        let lcs = lower_central_series(&alg, steps);
        let derived = derived_series(&alg, steps);
        let unknown = lcs.exhausted || derived.exhausted;
        Ok(Outcome {
            result: json!({
                "dim": alg.dim(),
                "lower_central": to_value(&lcs),
                "derived": to_value(&derived),
                "nilpotent": lcs.exhausted.then_some(Value::Null).unwrap_or(json!(lcs.is_nilpotent())),
                "solvable": derived.exhausted.then_some(Value::Null).unwrap_or(json!(derived.class.is_some())),
            }),
            unknown,
        })
    }
}

#[derive(Debug, Args)]
pub struct Contract {
    #[arg(long)]
    algebra: String,
    #[arg(long)]
    group: Option<String>,
    /// Group receiving the new grading.
    #[arg(long)]
    target: String,
    /// Images of the support, e.g. `1->2;2->4`.
    #[arg(long)]
    map: String,
    #[arg(long)]
    output: Option<String>,
}

impl Contract {
    pub fn run(&self) -> Result<Outcome, CliError> {
        let (alg, grading) = load_graded(&self.algebra, self.group.as_deref())?;
        let target = parse::group(&self.target)?;
        let f = parse::map(grading.group(), &target, &self.map)?;
        let regraded = regrade_by_contraction(&alg, &grading, &f, &target).map_err(graded_err)?;
        write_algebra(self.output.as_deref(), &alg, &regraded)?;
        Ok(Outcome::verdict(json!({
            "support": to_value(&regraded.support()),
            "grading": to_value(&verify_grading(&alg, &regraded).map_err(graded_err)?),
            "algebra": graded::to_json(&alg, Some(&regraded)),
        })))
    }
}

#[derive(Debug, Args)]
pub struct Project {
    /// A group with a free part, e.g. `Z^2` or `Z/3xZ`.
    #[arg(long)]
    group: String,
    #[arg(long)]
    set: String,
}

impl Project {
    pub fn run(&self) -> Result<Outcome, CliError> {
        let group = parse::group(&self.group)?;
        let set = parse::set(&group, &self.set)?;
        let p = project_to_finite(&set).map_err(graded_err)?;
        let mut result = to_value(&p);
        result["image_verdict"] = to_value(&is_arithmetically_free(&p.image));
        Ok(Outcome::verdict(result))
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    LieRegular,
    Regular,
}

#[derive(Debug, Args)]
pub struct CayleyWalk {
    #[arg(long)]
    group: String,
    /// Connection set X.
    #[arg(long)]
    connection: String,
    /// Vertices in order, repeats allowed, e.g. `1,2,4,1`.
    #[arg(long)]
    walk: String,
    #[arg(long, value_enum, default_value_t = Mode::LieRegular)]
    mode: Mode,
    /// Accept vertices outside the connection set.
    #[arg(long)]
    allow_outside: bool,
    /// Longest sub-walk examined, in edges.
    #[arg(long)]
    budget_edges: Option<usize>,
}

impl CayleyWalk {
    pub fn run(&self) -> Result<Outcome, CliError> {
        let group = parse::group(&self.group)?;
        let x = parse::set(&group, &self.connection)?;
        let vertices = parse::list(&group, &self.walk)?;
        let graph = CayleyGraph::new(x).map_err(CliError::contract)?;
        let walk = graph.walk(vertices).map_err(CliError::contract)?;
        let mode = match self.mode {
            Mode::LieRegular => WalkMode::LieRegular,
            Mode::Regular => WalkMode::Regular,
        };
        let max_edges = self.budget_edges.unwrap_or(usize::MAX);
        let found = graph
            .find_regular_cycle(&walk, mode, !self.allow_outside, max_edges)
            .map_err(CliError::contract)?;
        let verified = match &found {
            Some(sub) => Some(graph.verify(&walk, sub).map_err(CliError::contract)?),
            None => None,
        };
        Ok(Outcome::verdict(json!({
            "edges": to_value(&graph.edge_sequence(&walk)),
            "mode": to_value(&mode),
            "certificate": to_value(&found),
            "verified": verified,
        })))
    }
}
