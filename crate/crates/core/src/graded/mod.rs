//! Group-graded Lie algebras over the rationals: gradings, series,
//! witnesses for non-free supports, contractions and projections.

pub mod algebra;
pub mod collapse;
pub mod grading;
pub mod series;
pub mod witness;

use thiserror::Error;

use crate::groups::{Group, GroupError};
use crate::lie_words::LieWordsError;

pub use algebra::{span_basis, AlgebraBuilder, StructureAlgebra, Vector};
pub use collapse::{verify_collapse_identities, CollapseOptions, CollapseReport, CollapseViolation};
pub use grading::{
    contraction_violation, direct_sum, homogeneous_subalgebra, is_subgroup, project_to_finite, regrade_by_contraction,
    support, verify_grading, Grading, GradingVerdict, Projection,
};
pub use series::{default_steps, derived_series, lower_central_series, SeriesReport};
pub use witness::{construct_filiform_truncation, construct_metabelian_witness, standard_metabelian, Witness};

#[derive(Debug, Error)]
pub enum GradedError {
    #[error("malformed algebra: {0}")]
    Malformed(String),
    #[error("[e{0}, e{0}] must vanish")]
    Antisymmetry(usize),
    #[error("Jacobi identity fails on basis vectors {0}, {1}, {2}")]
    Jacobi(usize, usize, usize),
    #[error("grading incompatible with [e{i}, e{j}] -> e{k}")]
    InvalidGrading { i: usize, j: usize, k: usize },
    #[error("{0} is not a subgroup")]
    NotSubgroup(String),
    #[error("span not closed under the bracket: {0}")]
    NotClosed(String),
    #[error("not a contraction: {0}")]
    Contraction(String),
    #[error("projection refused: {0}")]
    Projection(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    LieWords(#[from] LieWordsError),
}

/// The file layout `{dim, labels, brackets, grading, group?}`.
pub fn to_json(alg: &StructureAlgebra, grading: Option<&Grading>) -> serde_json::Value {
    let mut obj = serde_json::json!({
        "dim": alg.dim(),
        "labels": alg.labels(),
        "brackets": alg.brackets_json(),
    });
    if let Some(g) = grading {
        obj["grading"] = serde_json::to_value(g.degrees()).expect("elements serialize");
        obj["group"] = serde_json::Value::String(g.group().spec().to_string());
    }
    obj
}

/// Reads an algebra and, if present, its grading. The grading group is
/// `group` when given, otherwise parsed from the file's `group` field.
pub fn from_json(value: &serde_json::Value, group: Option<&Group>) -> Result<(StructureAlgebra, Option<Grading>), GradedError> {
    let alg = StructureAlgebra::from_json(value)?;
    let Some(degrees) = value.get("grading") else {
        return Ok((alg, None));
    };
    let owned;
    let group = match group {
        Some(g) => g,
        None => {
            let text = value
                .get("group")
                .and_then(|g| g.as_str())
                .ok_or_else(|| GradedError::Malformed("grading given without a group".into()))?;
            owned = Group::parse(text)?;
            &owned
        }
    };
    let grading = Grading::from_json(group, degrees)?;
    if grading.len() != alg.dim() {
        return Err(GradedError::Malformed(format!("{} degrees for dimension {}", grading.len(), alg.dim())));
    }
    Ok((alg, Some(grading)))
}
