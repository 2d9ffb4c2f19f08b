//! Lie algebras given by structure constants over the rationals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::GradedError;

pub type Vector = Vec<BigRational>;

/// Structure constants `[e_i, e_j] = sum_k c_ij^k e_k`, stored for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureAlgebra {
    dim: usize,
    labels: Vec<String>,
    brackets: BTreeMap<(usize, usize), BTreeMap<usize, BigRational>>,
}

/// Collects brackets and checks the Lie axioms on `build`.
#[derive(Clone, Debug)]
pub struct AlgebraBuilder {
    dim: usize,
    labels: Vec<String>,
    brackets: BTreeMap<(usize, usize), BTreeMap<usize, BigRational>>,
}

impl AlgebraBuilder {
    pub fn new(dim: usize) -> Self {
        AlgebraBuilder { dim, labels: (0..dim).map(|i| format!("e{i}")).collect(), brackets: BTreeMap::new() }
    }

    pub fn labels<S: Into<String>>(mut self, labels: impl IntoIterator<Item = S>) -> Self {
        self.labels = labels.into_iter().map(Into::into).collect();
        self
    }

    /// Adds `coef * e_k` to `[e_i, e_j]`. Order of `i, j` is free; `i == j`
    /// is rejected.
    pub fn add(&mut self, i: usize, j: usize, k: usize, coef: BigRational) -> Result<&mut Self, GradedError> {
        if i.max(j).max(k) >= self.dim {
            return Err(GradedError::Malformed(format!("basis index out of range in [{i},{j}] -> {k}")));
        }
        if i == j {
            if coef.is_zero() {
                return Ok(self);
            }
            return Err(GradedError::Antisymmetry(i));
        }
        let (a, b, c) = if i < j { (i, j, coef) } else { (j, i, -coef) };
        let entry = self.brackets.entry((a, b)).or_default();
        let slot = entry.entry(k).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            entry.remove(&k);
            if entry.is_empty() {
                self.brackets.remove(&(a, b));
            }
        }
        Ok(self)
    }

    /// `[e_i, e_j] = coef * e_k` with an integer coefficient.
    pub fn set_int(&mut self, i: usize, j: usize, k: usize, coef: i64) -> Result<&mut Self, GradedError> {
        self.add(i, j, k, BigRational::from_integer(BigInt::from(coef)))
    }

    pub fn build(self) -> Result<StructureAlgebra, GradedError> {
        if self.labels.len() != self.dim {
            return Err(GradedError::Malformed(format!("{} labels for dimension {}", self.labels.len(), self.dim)));
        }
        let alg = StructureAlgebra { dim: self.dim, labels: self.labels, brackets: self.brackets };
        if let Some(t) = alg.jacobi_violation() {
            return Err(GradedError::Jacobi(t.0, t.1, t.2));
        }
        Ok(alg)
    }
}

pub fn zero_vector(dim: usize) -> Vector {
    vec![BigRational::zero(); dim]
}

pub fn basis_vector(dim: usize, i: usize) -> Vector {
    let mut v = zero_vector(dim);
    v[i] = BigRational::one();
    v
}

pub fn is_zero_vector(v: &[BigRational]) -> bool {
    v.iter().all(Zero::is_zero)
}

impl StructureAlgebra {
    pub fn abelian(dim: usize) -> Self {
        AlgebraBuilder::new(dim).build().expect("abelian algebras are Lie")
    }

    /// `x, y, z` with `[x, y] = z`.
    pub fn heisenberg() -> Self {
        let mut b = AlgebraBuilder::new(3).labels(["x", "y", "z"]);
        b.set_int(0, 1, 2, 1).expect("in range");
        b.build().expect("Heisenberg is Lie")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Nonzero constants as `(i, j, k, c)` with `i < j`.
    pub fn constants(&self) -> impl Iterator<Item = (usize, usize, usize, &BigRational)> + '_ {
        self.brackets.iter().flat_map(|(&(i, j), m)| m.iter().map(move |(&k, c)| (i, j, k, c)))
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    /// `[e_i, e_j]` as a sparse map.
    pub fn bracket_basis(&self, i: usize, j: usize) -> BTreeMap<usize, BigRational> {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => BTreeMap::new(),
            std::cmp::Ordering::Less => self.brackets.get(&(i, j)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Greater => self
                .brackets
                .get(&(j, i))
                .map(|m| m.iter().map(|(&k, c)| (k, -c.clone())).collect())
                .unwrap_or_default(),
        }
    }

    /// `[u, v]` for dense coordinate vectors.
    pub fn bracket(&self, u: &[BigRational], v: &[BigRational]) -> Vector {
        let mut out = zero_vector(self.dim);
        for (&(i, j), m) in &self.brackets {
            // [u, v] picks up (u_i v_j - u_j v_i) c_ij.
            let coef = &u[i] * &v[j] - &u[j] * &v[i];
            if coef.is_zero() {
                continue;
            }
            for (&k, c) in m {
                out[k] += &coef * c;
            }
        }
        out
    }

    /// `[v, e_j]`.
    pub fn bracket_with_basis(&self, v: &[BigRational], j: usize) -> Vector {
        self.bracket(v, &basis_vector(self.dim, j))
    }

    /// The left-normed product `[e_{i_1}, ..., e_{i_k}]`.
    pub fn left_normed(&self, indices: &[usize]) -> Vector {
        let Some((&first, rest)) = indices.split_first() else {
            return zero_vector(self.dim);
        };
        let mut acc = basis_vector(self.dim, first);
        for &j in rest {
            if is_zero_vector(&acc) {
                break;
            }
            acc = self.bracket_with_basis(&acc, j);
        }
        acc
    }

    /// First basis triple `i < j < k` breaking the Jacobi identity.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim;
        let e = |i| basis_vector(d, i);
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let a = self.bracket(&self.bracket(&e(i), &e(j)), &e(k));
                    let b = self.bracket(&self.bracket(&e(j), &e(k)), &e(i));
                    let c = self.bracket(&self.bracket(&e(k), &e(i)), &e(j));
                    if (0..d).any(|t| !(&a[t] + &b[t] + &c[t]).is_zero()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Subalgebra spanned by the basis vectors `keep`, renumbered in order.
    /// Fails if the span is not closed under the bracket.
    pub fn restrict(&self, keep: &[usize]) -> Result<StructureAlgebra, GradedError> {
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(n, &i)| (i, n)).collect();
        let mut b = AlgebraBuilder::new(keep.len()).labels(keep.iter().map(|&i| self.labels[i].clone()));
        for (i, j, k, c) in self.constants() {
            if let (Some(&a), Some(&bb)) = (pos.get(&i), pos.get(&j)) {
                let Some(&t) = pos.get(&k) else {
                    return Err(GradedError::NotClosed(format!("[{},{}]", self.labels[i], self.labels[j])));
                };
                b.add(a, bb, t, c.clone())?;
            }
        }
        b.build()
    }

    /// Block-diagonal direct sum; the basis of `other` follows that of `self`.
    pub fn direct_sum(&self, other: &StructureAlgebra) -> StructureAlgebra {
        let off = self.dim;
        let mut brackets = self.brackets.clone();
        for (&(i, j), m) in &other.brackets {
            brackets.insert((i + off, j + off), m.iter().map(|(&k, c)| (k + off, c.clone())).collect());
        }
        let labels = self.labels.iter().chain(&other.labels).cloned().collect();
        StructureAlgebra { dim: off + other.dim, labels, brackets }
    }

    /// Brackets in the JSON layout `[[i, j, [[k, num, den], ...]], ...]`.
    pub fn brackets_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .brackets
            .iter()
            .map(|(&(i, j), m)| {
                let terms: Vec<serde_json::Value> = m
                    .iter()
                    .map(|(&k, c)| {
                        serde_json::json!([k, int_json(c.numer()), int_json(c.denom())])
                    })
                    .collect();
                serde_json::json!([i, j, terms])
            })
            .collect();
        serde_json::Value::Array(rows)
    }

    /// Reads `dim`, optional `labels` and `brackets` from a JSON object.
    pub fn from_json(value: &serde_json::Value) -> Result<Self, GradedError> {
        let bad = |m: &str| GradedError::Malformed(m.to_string());
        let dim = value.get("dim").and_then(|d| d.as_u64()).ok_or_else(|| bad("missing dim"))? as usize;
        let mut b = AlgebraBuilder::new(dim);
        if let Some(labels) = value.get("labels") {
            let labels: Vec<String> = serde_json::from_value(labels.clone()).map_err(|e| bad(&format!("labels: {e}")))?;
            b = b.labels(labels);
        }
        let rows = match value.get("brackets") {
            None => Vec::new(),
            Some(v) => v.as_array().cloned().ok_or_else(|| bad("brackets must be an array"))?,
        };
        for row in rows {
            let (i, j, terms): (usize, usize, Vec<(usize, serde_json::Value, serde_json::Value)>) =
                serde_json::from_value(row.clone()).map_err(|e| bad(&format!("bracket {row}: {e}")))?;
            for (k, num, den) in terms {
                let num: BigInt = json_int(&num).ok_or_else(|| bad(&format!("numerator {num}")))?;
                let den: BigInt = json_int(&den).ok_or_else(|| bad(&format!("denominator {den}")))?;
                if den.is_zero() {
                    return Err(bad("zero denominator"));
                }
                b.add(i, j, k, BigRational::new(num, den))?;
            }
        }
        b.build()
    }
}

/// Small integers as JSON numbers, large ones as decimal strings.
fn int_json(n: &BigInt) -> serde_json::Value {
    match i64::try_from(n) {
        Ok(v) => serde_json::Value::from(v),
        Err(_) => serde_json::Value::String(n.to_string()),
    }
}

/// An integer given as a JSON number or a decimal string.
fn json_int(v: &serde_json::Value) -> Option<BigInt> {
    match v {
        serde_json::Value::Number(n) => n.to_string().parse().ok(),
        serde_json::Value::String(s) => s.trim().parse().ok(),
        _ => None,
    }
}

/// Row-reduced basis of the span of `vectors`.
pub fn span_basis(vectors: impl IntoIterator<Item = Vector>) -> Vec<Vector> {
    let mut rows: Vec<Vector> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for mut v in vectors {
        for (row, &p) in rows.iter().zip(&pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &f * r;
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        // Keep earlier rows reduced at the new pivot.
        for row in rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    *x -= &f * y;
                }
            }
        }
        rows.push(v);
        pivots.push(p);
    }
    rows
}
