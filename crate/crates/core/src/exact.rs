//! Exact max-push (`P1`) and total-push (`Pt`) parameters.
//!
//! Both solvers share a depth-first search over a static vertex order
//! (descending degree, ties by index). Sigma is maintained incrementally and
//! an edge is tested only once it is *fully decided*: both endpoints and all
//! their neighbors carry values, so both sigma values are final. Pruning on
//! decided edges alone never discards a completable assignment.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::greedy::greedy_under_bound;
use crate::scheme::{derive_sigma, is_proper, PushingScheme};

/// Refuse exhaustive boxes larger than this many schemes.
pub const ORACLE_BOX_LIMIT: u128 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExactStatus {
    Optimal,
    CapExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub value: u64,
    pub witness: PushingScheme,
    /// Search-tree nodes over all sub-searches.
    pub nodes: u64,
    pub status: ExactStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapSearch {
    pub scheme: Option<PushingScheme>,
    pub nodes: u64,
}

struct Search<'g> {
    g: &'g Graph,
    order: Vec<usize>,
    rho: Vec<u32>,
    sigma: Vec<u64>,
    /// Unassigned vertices in the closed neighborhood.
    pending: Vec<usize>,
    nodes: u64,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph) -> Self {
        let mut order: Vec<usize> = (0..g.n()).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        Search {
            g,
            order,
            rho: vec![0; g.n()],
            sigma: g.degrees().map(|d| d as u64).collect(),
            pending: g.degrees().map(|d| d + 1).collect(),
            nodes: 0,
        }
    }

    /// Assigns `value` to `v`; returns false if some edge became fully
    /// decided and monochromatic. Always leaves the state updated.
    fn assign(&mut self, v: usize, value: u32) -> bool {
        let g = self.g;
        self.rho[v] = value;
        let val = u64::from(value);
        self.sigma[v] += val * g.degree(v) as u64;
        self.pending[v] -= 1;
        for &w in g.neighbors(v) {
            self.sigma[w] += val;
            self.pending[w] -= 1;
        }
        let mut ok = true;
        for w in std::iter::once(v).chain(g.neighbors(v).iter().copied()) {
            if self.pending[w] != 0 {
                continue;
            }
            if g.neighbors(w)
                .iter()
                .any(|&x| self.pending[x] == 0 && self.sigma[x] == self.sigma[w])
            {
                ok = false;
                break;
            }
        }
        ok
    }

    fn unassign(&mut self, v: usize) {
        let g = self.g;
        let val = u64::from(self.rho[v]);
        self.sigma[v] -= val * g.degree(v) as u64;
        self.pending[v] += 1;
        for &w in g.neighbors(v) {
            self.sigma[w] -= val;
            self.pending[w] += 1;
        }
        self.rho[v] = 0;
    }

    /// Some proper completion with all values in `0..=cap`.
    fn feasible(&mut self, depth: usize, cap: u32) -> bool {
        self.nodes += 1;
        let Some(&v) = self.order.get(depth) else {
            return true;
        };
        for value in 0..=cap {
            let ok = self.assign(v, value);
            if ok && self.feasible(depth + 1, cap) {
                return true;
            }
            self.unassign(v);
        }
        false
    }

    /// Branch and bound on the total; `best` holds the incumbent total and
    /// only strictly smaller totals are explored.
    fn minimize_total(&mut self, depth: usize, used: u64, best: &mut u64, witness: &mut Vec<u32>) {
        self.nodes += 1;
        let Some(&v) = self.order.get(depth) else {
            *best = used;
            witness.clone_from(&self.rho);
            return;
        };
        let mut value = 0u64;
        while used + value < *best {
            let ok = self.assign(v, value as u32);
            if ok {
                self.minimize_total(depth + 1, used + value, best, witness);
            }
            self.unassign(v);
            value += 1;
        }
    }
}

/// A proper scheme with every value in `0..=cap`, if one exists.
pub fn feasible_with_cap(g: &Graph, cap: u32) -> Result<CapSearch> {
    g.require_nice()?;
    let mut search = Search::new(g);
    let scheme = search
        .feasible(0, cap)
        .then(|| PushingScheme::new(search.rho.clone()));
    Ok(CapSearch {
        scheme,
        nodes: search.nodes,
    })
}

/// Smallest `k` admitting a proper scheme with maximum `k`. Every nice
/// graph has one with `k <= Delta^2`, which bounds the scan.
pub fn exact_p1(g: &Graph) -> Result<ExactResult> {
    g.require_nice()?;
    let delta = g.max_degree() as u32;
    let ceiling = delta * delta;
    let mut nodes = 0;
    for k in 0..=ceiling {
        let found = feasible_with_cap(g, k)?;
        nodes += found.nodes;
        if let Some(witness) = found.scheme {
            return Ok(ExactResult {
                value: u64::from(k),
                witness,
                nodes,
                status: ExactStatus::Optimal,
            });
        }
    }
    Ok(ExactResult {
        value: u64::from(ceiling),
        witness: PushingScheme::zeros(g.n()),
        nodes,
        status: ExactStatus::CapExceeded,
    })
}

/// Minimum total over proper schemes. The incumbent comes from greedy runs
/// within the expected-total bound; per-vertex values are limited only by
/// the remaining budget.
pub fn exact_pt(g: &Graph) -> Result<ExactResult> {
    g.require_nice()?;
    let incumbent = greedy_under_bound(g, 0, 32)?.scheme;
    let mut best = incumbent.total();
    let mut witness = incumbent.rho.clone();
    let mut search = Search::new(g);
    search.minimize_total(0, 0, &mut best, &mut witness);
    let witness = PushingScheme::new(witness);
    debug_assert!(is_proper(g, &witness)?.is_proper());
    Ok(ExactResult {
        value: best,
        witness,
        nodes: search.nodes,
        status: ExactStatus::Optimal,
    })
}

/// Minima found by exhaustive enumeration of a value box.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleResult {
    /// Smallest maximum over proper schemes in the box.
    pub p1: Option<u64>,
    /// Smallest total over proper schemes in the box.
    pub pt: Option<u64>,
}

/// Scans every scheme with values in `0..=max_value` and checks each one
/// with [`derive_sigma`] from scratch.
pub fn enumerate_oracle(g: &Graph, max_value: u32) -> Result<OracleResult> {
    g.require_nice()?;
    let base = u128::from(max_value) + 1;
    let size = (0..g.n()).try_fold(1u128, |acc, _| {
        acc.checked_mul(base).filter(|&s| s <= ORACLE_BOX_LIMIT)
    });
    let Some(_) = size else {
        let estimate = base.checked_pow(g.n() as u32).unwrap_or(u128::MAX);
        return Err(Error::BoxTooLarge {
            size: estimate,
            limit: ORACLE_BOX_LIMIT,
        });
    };
    let mut rho = PushingScheme::zeros(g.n());
    let mut best = OracleResult { p1: None, pt: None };
    loop {
        if derive_sigma(g, &rho)?.is_proper() {
            let max = u64::from(rho.max());
            let total = rho.total();
            best.p1 = Some(best.p1.map_or(max, |b| b.min(max)));
            best.pt = Some(best.pt.map_or(total, |b| b.min(total)));
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == g.n() {
                return Ok(best);
            }
            if rho.rho[i] < max_value {
                rho.rho[i] += 1;
                break;
            }
            rho.rho[i] = 0;
            i += 1;
        }
    }
}
