//! Walks in Cayley graphs `Γ(G, X)` of abelian groups and their
//! (Lie-)regular sub-walks.

use serde::Serialize;
use thiserror::Error;

use crate::groups::{ElementSet, Group, GroupElement, GroupError};
use crate::lie_words::fullness::regular_parse;
use crate::lie_words::{
    lie_regular_any_length, minimal_under_tree, LieVerdict, LieWordsError, NestedWord, ProductTree, DEFAULT_MAX_ARITY,
};

#[derive(Debug, Error)]
pub enum CayleyError {
    #[error("Cayley graphs are built over abelian groups")]
    NonAbelian,
    #[error("step {step} is not an edge: difference outside the connection set")]
    NotAWalk { step: usize },
    #[error("vertex {index} lies outside the connection set")]
    VertexOutside { index: usize },
    #[error("a walk has at least one vertex")]
    Empty,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    LieWords(#[from] LieWordsError),
}

#[derive(Clone, Debug)]
pub struct CayleyGraph {
    connection: ElementSet,
}

/// Vertices `v_1, ..., v_{n+1}` with `v_{i+1} - v_i` in the connection set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Walk {
    vertices: Vec<GroupElement>,
}

impl Walk {
    pub fn vertices(&self) -> &[GroupElement] {
        &self.vertices
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WalkMode {
    LieRegular,
    Regular,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WalkCertificate {
    LieRegular { tree: ProductTree },
    /// Nested word over edge letters, numbered by rank in the connection set.
    Regular { word: NestedWord },
}

/// The sub-walk `v_{start}, ..., v_{end}` (0-based vertex indices).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubWalk {
    pub start: usize,
    pub end: usize,
    pub from: GroupElement,
    pub to: GroupElement,
    pub difference: GroupElement,
    pub is_cycle: bool,
    pub certificate: WalkCertificate,
}

impl CayleyGraph {
    pub fn new(connection: ElementSet) -> Result<Self, CayleyError> {
        if !connection.group().is_abelian() {
            return Err(CayleyError::NonAbelian);
        }
        Ok(CayleyGraph { connection })
    }

    pub fn group(&self) -> &Group {
        self.connection.group()
    }

    pub fn connection(&self) -> &ElementSet {
        &self.connection
    }

    /// Checks that consecutive differences are edges.
    pub fn walk(&self, vertices: Vec<GroupElement>) -> Result<Walk, CayleyError> {
        if vertices.is_empty() {
            return Err(CayleyError::Empty);
        }
        for (step, pair) in vertices.windows(2).enumerate() {
            let d = pair[1].compose(&pair[0].inverse())?;
            if !self.connection.contains(&d) {
                return Err(CayleyError::NotAWalk { step });
            }
        }
        Ok(Walk { vertices })
    }

    /// `E(W) = (v_2 - v_1, ..., v_{n+1} - v_n)`.
    pub fn edge_sequence(&self, walk: &Walk) -> Vec<GroupElement> {
        walk.vertices
            .windows(2)
            .map(|p| p[1].compose(&p[0].inverse()).expect("walk vertices share the group"))
            .collect()
    }

    /// The walk from `start` along `edges`.
    pub fn reconstruct(&self, start: &GroupElement, edges: &[GroupElement]) -> Result<Walk, CayleyError> {
        let mut vertices = vec![start.clone()];
        for e in edges {
            let next = vertices.last().expect("nonempty").compose(e)?;
            vertices.push(next);
        }
        self.walk(vertices)
    }

    /// The first sub-walk (by start vertex, then length) whose edge
    /// sequence is (Lie-)regular and whose endpoints differ by an element
    /// outside the connection set.
    ///
    /// With `enforce_vertices`, every vertex must lie in the connection
    /// set. Sub-walks with more than `max_edges` edges are skipped.
    pub fn find_regular_cycle(
        &self,
        walk: &Walk,
        mode: WalkMode,
        enforce_vertices: bool,
        max_edges: usize,
    ) -> Result<Option<SubWalk>, CayleyError> {
        if enforce_vertices {
            if let Some(index) = walk.vertices.iter().position(|v| !self.connection.contains(v)) {
                return Err(CayleyError::VertexOutside { index });
            }
        }
        let edges = self.edge_sequence(walk);
        let ranks: Vec<usize> = edges.iter().map(|e| self.connection.rank_of(e).expect("edges lie in X")).collect();
        for start in 0..edges.len() {
            for end in start + 1..=edges.len().min(start.saturating_add(max_edges)) {
                let (from, to) = (&walk.vertices[start], &walk.vertices[end]);
                let difference = to.compose(&from.inverse())?;
                if self.connection.contains(&difference) {
                    continue;
                }
                let certificate = match mode {
                    WalkMode::LieRegular => match lie_regular_any_length(&ranks[start..end], DEFAULT_MAX_ARITY)? {
                        LieVerdict::Regular { witness } => Some(WalkCertificate::LieRegular { tree: witness }),
                        LieVerdict::NotRegular => None,
                    },
                    WalkMode::Regular => {
                        let seg = &ranks[start..end];
                        regular_parse(seg, seg.len().saturating_sub(1), 1_000_000)
                            .flatten()
                            .map(|word| WalkCertificate::Regular { word })
                    }
                };
                if let Some(certificate) = certificate {
                    return Ok(Some(SubWalk {
                        start,
                        end,
                        from: from.clone(),
                        to: to.clone(),
                        is_cycle: difference.is_identity(),
                        difference,
                        certificate,
                    }));
                }
            }
        }
        Ok(None)
    }

    /// Re-checks a certificate against the walk.
    pub fn verify(&self, walk: &Walk, sub: &SubWalk) -> Result<bool, CayleyError> {
        if sub.start >= sub.end || sub.end > walk.len() {
            return Ok(false);
        }
        let (from, to) = (&walk.vertices[sub.start], &walk.vertices[sub.end]);
        let difference = to.compose(&from.inverse())?;
        if self.connection.contains(&difference) || difference != sub.difference {
            return Ok(false);
        }
        let ranks: Vec<usize> = self.edge_sequence(walk)[sub.start..sub.end]
            .iter()
            .map(|e| self.connection.rank_of(e).expect("edges lie in X"))
            .collect();
        Ok(match &sub.certificate {
            WalkCertificate::LieRegular { tree } => tree.validate().is_ok() && minimal_under_tree(&ranks, tree),
            WalkCertificate::Regular { word } => word.is_regular() && word.underlying() == ranks,
        })
    }
}
