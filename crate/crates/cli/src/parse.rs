//! Text and file inputs shared by the subcommands.

use std::collections::BTreeMap;
use std::fs;

use afree::graded::{self, Grading, StructureAlgebra};
use afree::groups::{ElementSet, Group, GroupElement, TableGroup};

use crate::CliError;

/// `Z/4xZ^2`-style text, `S<n>` for a symmetric group, or `@file.json`
/// holding a multiplication table.
pub fn group(text: &str) -> Result<Group, CliError> {
    let t = text.trim();
    if let Some(path) = t.strip_prefix('@') {
        let raw = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
        let table: TableGroup =
            serde_json::from_str(&raw).map_err(|e| CliError::Usage(format!("{path}: malformed table group: {e}")))?;
        return Group::from_table(table).map_err(CliError::contract);
    }
    if let Some(n) = t.strip_prefix('S').and_then(|n| n.parse::<usize>().ok()) {
        if !(1..=6).contains(&n) {
            return Err(CliError::Usage(format!("symmetric groups S1..S6 are supported, got {t}")));
        }
        return Ok(Group::symmetric(n));
    }
    Group::parse(t).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn set(group: &Group, text: &str) -> Result<ElementSet, CliError> {
    group.parse_element_set(text).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn element(group: &Group, text: &str) -> Result<GroupElement, CliError> {
    group.parse_element(text).map_err(|e| CliError::Usage(e.to_string()))
}

/// An ordered element list, repeats allowed, in the same syntax as sets.
pub fn list(group: &Group, text: &str) -> Result<Vec<GroupElement>, CliError> {
    let t = text.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    let items: Vec<&str> = if t.contains('(') || group.rank() > 1 {
        t.split(';').filter(|s| !s.trim().is_empty()).collect()
    } else {
        t.split([',', ';']).filter(|s| !s.trim().is_empty()).collect()
    };
    items.into_iter().map(|s| element(group, s)).collect()
}

/// Comma-separated letter indices.
pub fn letters(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("bad letter {s:?}"))))
        .collect()
}

/// `a->b; c->d`.
pub fn map(domain: &Group, target: &Group, text: &str) -> Result<BTreeMap<GroupElement, GroupElement>, CliError> {
    let mut out = BTreeMap::new();
    for pair in text.split(';').filter(|s| !s.trim().is_empty()) {
        let (a, b) = pair
            .split_once("->")
            .ok_or_else(|| CliError::Usage(format!("expected x->y, got {pair:?}")))?;
        out.insert(element(domain, a)?, element(target, b)?);
    }
    Ok(out)
}

pub fn json_file(path: &str) -> Result<serde_json::Value, CliError> {
    let raw = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
    serde_json::from_str(&raw).map_err(|e| CliError::Usage(format!("{path}: malformed JSON: {e}")))
}

/// An algebra file, with its grading when present.
pub fn algebra(path: &str, group: Option<&Group>) -> Result<(StructureAlgebra, Option<Grading>), CliError> {
    let value = json_file(path)?;
    graded::from_json(&value, group).map_err(CliError::contract)
}
