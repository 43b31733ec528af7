//! Pushing schemes, the derived sigma coloring and properness.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Per-vertex push counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct PushingScheme {
    pub rho: Vec<u32>,
}

impl PushingScheme {
    pub fn new(rho: Vec<u32>) -> Self {
        PushingScheme { rho }
    }

    pub fn zeros(n: usize) -> Self {
        PushingScheme { rho: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.rho.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rho.is_empty()
    }

    pub fn max(&self) -> u32 {
        self.rho.iter().copied().max().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.rho.iter().map(|&r| u64::from(r)).sum()
    }

    pub fn cost(&self) -> SchemeCost {
        SchemeCost {
            max: self.max(),
            total: self.total(),
        }
    }

    fn check_len(&self, g: &Graph) -> Result<()> {
        if self.len() != g.n() {
            return Err(Error::LengthMismatch {
                expected: g.n(),
                got: self.len(),
            });
        }
        Ok(())
    }
}

impl From<Vec<u32>> for PushingScheme {
    fn from(rho: Vec<u32>) -> Self {
        PushingScheme { rho }
    }
}

/// Renders as `rho: v0 v1 ...`.
impl fmt::Display for PushingScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("rho:")?;
        for r in &self.rho {
            write!(f, " {r}")?;
        }
        Ok(())
    }
}

/// Accepts whitespace-separated values with or without the `rho:` prefix.
impl FromStr for PushingScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        let body = body.strip_prefix("rho:").unwrap_or(body);
        body.split_whitespace()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| Error::SchemeParse(format!("not a non-negative integer: {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(PushingScheme::new)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeCost {
    pub max: u32,
    pub total: u64,
}

pub fn scheme_cost(rho: &PushingScheme) -> SchemeCost {
    rho.cost()
}

/// Sigma values together with every monochromatic edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaProfile {
    pub sigma: Vec<u64>,
    /// Edges `(u, v)`, `u < v`, with `sigma(u) == sigma(v)`, sorted.
    pub conflicts: Vec<(usize, usize)>,
}

impl SigmaProfile {
    pub fn is_proper(&self) -> bool {
        self.conflicts.is_empty()
    }
}

/// `sigma(u)` for a single vertex.
pub fn sigma_at(g: &Graph, rho: &[u32], u: usize) -> u64 {
    let d = g.degree(u) as u64;
    let pushed: u64 = g.neighbors(u).iter().map(|&v| u64::from(rho[v])).sum();
    (1 + u64::from(rho[u])) * d + pushed
}

pub fn derive_sigma(g: &Graph, rho: &PushingScheme) -> Result<SigmaProfile> {
    rho.check_len(g)?;
    let sigma: Vec<u64> = (0..g.n()).map(|u| sigma_at(g, &rho.rho, u)).collect();
    let conflicts = g.edges().filter(|&(u, v)| sigma[u] == sigma[v]).collect();
    Ok(SigmaProfile { sigma, conflicts })
}

/// `1 + rho(u) + rho(v)` for an edge `uv`.
pub fn edge_label(g: &Graph, rho: &PushingScheme, u: usize, v: usize) -> Result<u64> {
    rho.check_len(g)?;
    if !g.has_edge(u, v) {
        return Err(Error::NotAnEdge { u, v });
    }
    Ok(1 + u64::from(rho.rho[u]) + u64::from(rho.rho[v]))
}

/// Outcome of a properness check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Properness {
    Proper,
    /// Lexicographically first monochromatic edge.
    Conflict(usize, usize),
}

impl Properness {
    pub fn is_proper(self) -> bool {
        self == Properness::Proper
    }
}

pub fn is_proper(g: &Graph, rho: &PushingScheme) -> Result<Properness> {
    let profile = derive_sigma(g, rho)?;
    Ok(match profile.conflicts.first() {
        None => Properness::Proper,
        Some(&(u, v)) => Properness::Conflict(u, v),
    })
}
