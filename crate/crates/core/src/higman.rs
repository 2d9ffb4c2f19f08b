//! The auxiliary maps `f_n(alpha, lambda)`, `f(alpha, lambda)` and the
//! generalised Higman map `H_a(b, c)`, evaluated exactly.
//!
//! `H` grows very fast: `H(2) = 128`, but `H(3)` already has far more digits
//! than fit in memory. Evaluation therefore runs under a digit budget and
//! reports [`HigmanError::DigitBudget`] instead of attempting the impossible.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::Mutex;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

pub const DEFAULT_DIGITS_BUDGET: u64 = 100_000;
pub const DEFAULT_STEP_BUDGET: u64 = 100_000;

#[derive(Debug, Error)]
pub enum HigmanError {
    #[error("arguments must be at least 1")]
    ZeroArgument,
    #[error("result needs about {estimate} decimal digits, budget is {budget}")]
    DigitBudget { estimate: f64, budget: u64 },
    #[error("recursion would need {steps} steps, budget is {budget}")]
    StepBudget { steps: String, budget: u64 },
    #[error("cache file line {line}: {reason}")]
    CacheFormat { line: usize, reason: String },
    #[error("cache entry H_{a}({b},{c}) disagrees with recomputation")]
    CacheMismatch { a: u64, b: u64, c: u64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl HigmanError {
    /// Whether the failure is a resource limit rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(self, HigmanError::DigitBudget { .. } | HigmanError::StepBudget { .. })
    }
}

/// `f_n(alpha, lambda)` by its recursion
/// `f_n(alpha + 1, lambda) = lambda * (f_n(alpha, lambda) + n)`, `f_n(1, lambda) = n`.
pub fn f_rec(n: u64, alpha: u64, lambda: u64) -> Result<BigUint, HigmanError> {
    if alpha == 0 {
        return Err(HigmanError::ZeroArgument);
    }
    let n = BigUint::from(n);
    let lambda = BigUint::from(lambda);
    let mut value = n.clone();
    for _ in 1..alpha {
        value = &lambda * (value + &n);
    }
    Ok(value)
}

/// `f_n(alpha, lambda) = n * (lambda^(alpha-1) + sum_{1<=j<=alpha-1} lambda^j)`.
pub fn f_closed(n: u64, alpha: u64, lambda: u64) -> Result<BigUint, HigmanError> {
    if alpha == 0 {
        return Err(HigmanError::ZeroArgument);
    }
    let lambda = BigUint::from(lambda);
    let top = u32::try_from(alpha - 1).map_err(|_| HigmanError::StepBudget {
        steps: alpha.to_string(),
        budget: u32::MAX as u64,
    })?;
    let mut sum = lambda.pow(top);
    let mut power = BigUint::one();
    for _ in 1..alpha {
        power *= &lambda;
        sum += &power;
    }
    Ok(BigUint::from(n) * sum)
}

/// `f(alpha, lambda) = lambda * alpha^lambda`. Unbounded: large `lambda`
/// allocates accordingly.
pub fn f_cap(alpha: u64, lambda: u64) -> BigUint {
    let exp = u32::try_from(lambda).expect("exponent fits in u32");
    BigUint::from(lambda) * BigUint::from(alpha).pow(exp)
}

fn decimal_digits(x: &BigUint) -> f64 {
    if x.is_zero() {
        1.0
    } else {
        x.bits() as f64 * std::f64::consts::LOG10_2
    }
}

fn f_cap_budgeted(alpha: &BigUint, lambda: &BigUint, budget: u64) -> Result<BigUint, HigmanError> {
    if lambda.is_zero() || alpha.is_zero() {
        return Ok(BigUint::zero());
    }
    if alpha.is_one() {
        return Ok(lambda.clone());
    }
    let estimate = lambda.to_f64().unwrap_or(f64::INFINITY) * decimal_digits(alpha) + decimal_digits(lambda);
    if estimate > budget as f64 {
        return Err(HigmanError::DigitBudget { estimate, budget });
    }
    let exp = lambda.to_u32().expect("bounded by the digit budget");
    Ok(lambda * alpha.pow(exp))
}

type Key = (u64, u64, u64);

/// Memoized evaluator for `H_a(b, c)`.
///
/// Safe to share between threads; the cache is behind a mutex and every
/// value is deterministic, so concurrent inserts of one key agree.
pub struct Higman {
    cache: Mutex<HashMap<Key, BigUint>>,
    digits_budget: u64,
    step_budget: u64,
}

impl Default for Higman {
    fn default() -> Self {
        Self::new(DEFAULT_DIGITS_BUDGET)
    }
}

impl Higman {
    pub fn new(digits_budget: u64) -> Self {
        Higman { cache: Mutex::new(HashMap::new()), digits_budget, step_budget: DEFAULT_STEP_BUDGET }
    }

    pub fn with_step_budget(mut self, steps: u64) -> Self {
        self.step_budget = steps;
        self
    }

    pub fn digits_budget(&self) -> u64 {
        self.digits_budget
    }

    fn check_digits(&self, x: &BigUint) -> Result<(), HigmanError> {
        let estimate = decimal_digits(x);
        if estimate > self.digits_budget as f64 {
            Err(HigmanError::DigitBudget { estimate, budget: self.digits_budget })
        } else {
            Ok(())
        }
    }

    fn cached(&self, key: Key) -> Option<BigUint> {
        self.cache.lock().expect("cache lock").get(&key).cloned()
    }

    fn store(&self, key: Key, value: BigUint) -> BigUint {
        self.cache.lock().expect("cache lock").entry(key).or_insert(value).clone()
    }

    /// `H_a(b, c)`.
    pub fn eval(&self, a: u64, b: u64, c: u64) -> Result<BigUint, HigmanError> {
        if a == 0 || b == 0 || c == 0 {
            return Err(HigmanError::ZeroArgument);
        }
        self.eval_big(a, b, &BigUint::from(c))
    }

    /// `H(m, n) = H_m(m, n)`.
    pub fn eval_pair(&self, m: u64, n: u64) -> Result<BigUint, HigmanError> {
        self.eval(m, m, n)
    }

    /// The generalised Higman map `H(n) = H_n(n, n)`.
    pub fn eval_single(&self, n: u64) -> Result<BigUint, HigmanError> {
        self.eval(n, n, n)
    }

    fn eval_big(&self, a: u64, b: u64, c: &BigUint) -> Result<BigUint, HigmanError> {
        if b == 1 {
            return Ok(BigUint::one());
        }
        if c.is_one() {
            return Ok(BigUint::from(a));
        }
        let c = match c.to_u64() {
            Some(c) if c <= self.step_budget => c,
            _ => {
                return Err(HigmanError::StepBudget { steps: c.to_string(), budget: self.step_budget })
            }
        };
        if let Some(v) = self.cached((a, b, c)) {
            return Ok(v);
        }
        // Walk c upwards so the H_a(b, c-1) dependency never recurses deeply.
        let mut prev = BigUint::from(a);
        for cc in 2..=c {
            if let Some(v) = self.cached((a, b, cc)) {
                prev = v;
                continue;
            }
            let value = self.step(a, b, cc, &prev)?;
            prev = self.store((a, b, cc), value);
        }
        Ok(prev)
    }

    /// One application of the recursion, given `H_a(b, c-1)`.
    fn step(&self, a: u64, b: u64, c: u64, below: &BigUint) -> Result<BigUint, HigmanError> {
        let big_a = BigUint::from(a);
        // H_a(1, r) = 1 whatever r is, so r is only needed when b > 2.
        let inner = if b - 1 == 1 {
            BigUint::one()
        } else {
            let r = &big_a * f_cap_budgeted(&BigUint::from(c - 1), below, self.digits_budget)?;
            self.check_digits(&r)?;
            self.eval_big(a, b - 1, &r)?
        };
        let lambda = &big_a + inner + 1u32;
        let main = &big_a * f_cap_budgeted(&BigUint::from(c), &lambda, self.digits_budget)?;
        self.check_digits(&main)?;
        let left = self.eval_big(a, b - 1, &BigUint::from(c))?;
        Ok(main.max(left).max(below.clone()))
    }

    /// The largest `H_a(b', c')` with `b' <= b`, `c' <= c` that fits the
    /// budget, with its arguments. By monotonicity it bounds `H_a(b, c)` from
    /// below.
    pub fn lower_bound(&self, a: u64, b: u64, c: u64) -> Result<(BigUint, (u64, u64)), HigmanError> {
        if a == 0 || b == 0 || c == 0 {
            return Err(HigmanError::ZeroArgument);
        }
        let mut best = (BigUint::one(), (1, 1));
        for bb in 1..=b {
            for cc in 1..=c {
                match self.eval(a, bb, cc) {
                    Ok(v) if v > best.0 => best = (v, (bb, cc)),
                    Ok(_) => {}
                    Err(e) if e.is_budget() => break,
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(best)
    }

    /// Snapshot of the cache, sorted by key.
    pub fn entries(&self) -> Vec<(Key, BigUint)> {
        let mut v: Vec<_> = self.cache.lock().expect("cache lock").iter().map(|(k, v)| (*k, v.clone())).collect();
        v.sort();
        v
    }

    /// First cached pair of triples violating monotonicity in `(b, c)`.
    pub fn monotonicity_violation(&self) -> Option<(Key, Key)> {
        let entries = self.entries();
        for (k1, v1) in &entries {
            for (k2, v2) in &entries {
                if k1.0 == k2.0 && k1.1 <= k2.1 && k1.2 <= k2.2 && v1 > v2 {
                    return Some((*k1, *k2));
                }
            }
        }
        None
    }

    /// Writes one `a,b,c,value` line per cached entry.
    pub fn save(&self, path: &Path) -> Result<(), HigmanError> {
        let mut out = fs::File::create(path)?;
        for ((a, b, c), v) in self.entries() {
            writeln!(out, "{a},{b},{c},{v}")?;
        }
        Ok(())
    }

    /// Loads entries written by [`Higman::save`]. Every eighth entry (and at
    /// least the first) is recomputed with an empty cache before anything is
    /// inserted.
    pub fn load(&self, path: &Path) -> Result<usize, HigmanError> {
        let text = fs::read_to_string(path)?;
        let mut parsed = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = |reason: &str| HigmanError::CacheFormat { line: i + 1, reason: reason.into() };
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 4 {
                return Err(bad("expected a,b,c,value"));
            }
            let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad("bad argument"));
            let (a, b, c) = (num(fields[0])?, num(fields[1])?, num(fields[2])?);
            if a == 0 || b == 0 || c == 0 {
                return Err(bad("zero argument"));
            }
            let v: BigUint = fields[3].trim().parse().map_err(|_| bad("bad value"))?;
            parsed.push(((a, b, c), v));
        }
        let fresh = Higman::new(self.digits_budget).with_step_budget(self.step_budget);
        for (i, ((a, b, c), v)) in parsed.iter().enumerate() {
            if i % 8 == 0 && fresh.eval(*a, *b, *c)? != *v {
                return Err(HigmanError::CacheMismatch { a: *a, b: *b, c: *c });
            }
        }
        let n = parsed.len();
        let mut cache = self.cache.lock().expect("cache lock");
        for (k, v) in parsed {
            cache.entry(k).or_insert(v);
        }
        Ok(n)
    }
}
