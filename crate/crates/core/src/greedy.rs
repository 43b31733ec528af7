//! The greedy push algorithm.
//!
//! Vertices are processed along a linear ordering `u_1, ..., u_n`. At step
//! `i` the vertex `u_i` receives the smallest push value `s` such that no
//! edge with both endpoints already processed is monochromatic under the
//! current sigma. Unprocessed vertices keep push value 0 throughout.
//!
//! Each step records two counts:
//!
//! * `s1`: processed neighbors `u_j` of `u_i` (each edge `u_i u_j` excludes
//!   at most one candidate value);
//! * `s2`: pairs `(u_j, u_k)` of processed vertices with `u_i u_j` and
//!   `u_j u_k` edges but `u_i u_k` not an edge (each such edge `u_j u_k`
//!   excludes at most one candidate value).
//!
//! Hence the chosen value never exceeds `s1 + s2 <= Delta^2`.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;
use crate::scheme::{is_proper, PushingScheme};

/// A permutation of `0..n`; `perm[i]` is processed at step `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexOrdering {
    perm: Vec<usize>,
}

impl VertexOrdering {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &v in &perm {
            if v >= n {
                return Err(Error::InvalidOrdering(format!(
                    "vertex {v} out of range 0..{n}"
                )));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidOrdering(format!("vertex {v} repeated")));
            }
        }
        Ok(VertexOrdering { perm })
    }

    pub fn identity(n: usize) -> Self {
        VertexOrdering {
            perm: (0..n).collect(),
        }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// `position[v]` is the step index (0-based) of vertex `v`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.perm.len()];
        for (i, &v) in self.perm.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

/// Accounting for one greedy step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyStep {
    pub vertex: usize,
    pub s1: u32,
    pub s2: u32,
    /// Value assigned to `vertex`.
    pub g: u32,
    /// Candidates in `0..=s1+s2` that violate some condition, ascending.
    pub excluded: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GreedyTrace {
    pub steps: Vec<GreedyStep>,
}

impl GreedyTrace {
    /// `(d_minus, d_plus)` per step: neighbors processed before and after.
    pub fn degree_split(&self, g: &Graph) -> Vec<(usize, usize)> {
        let mut pos = vec![0; g.n()];
        for (i, st) in self.steps.iter().enumerate() {
            pos[st.vertex] = i;
        }
        self.steps
            .iter()
            .enumerate()
            .map(|(i, st)| {
                let before = g
                    .neighbors(st.vertex)
                    .iter()
                    .filter(|&&v| pos[v] < i)
                    .count();
                (before, g.degree(st.vertex) - before)
            })
            .collect()
    }

    /// Sum of `s1 + s2` over all steps.
    pub fn total_allowance(&self) -> u64 {
        self.steps.iter().map(|s| u64::from(s.s1 + s.s2)).sum()
    }

    /// `step,vertex,s1,s2,g,excluded_count`, one row per step, 1-based steps.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,vertex,s1,s2,g,excluded_count\n");
        for (i, s) in self.steps.iter().enumerate() {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                i + 1,
                s.vertex,
                s.s1,
                s.s2,
                s.g,
                s.excluded.len()
            );
        }
        out
    }
}

/// Partial scheme during a greedy run. Unprocessed vertices have push 0.
struct GreedyState<'g> {
    g: &'g Graph,
    rho: Vec<u32>,
    sigma: Vec<u64>,
    done: Vec<bool>,
}

impl<'g> GreedyState<'g> {
    fn new(g: &'g Graph) -> Self {
        GreedyState {
            g,
            rho: vec![0; g.n()],
            sigma: g.degrees().map(|d| d as u64).collect(),
            done: vec![false; g.n()],
        }
    }

    /// Whether giving the unprocessed vertex `u` the value `s` makes an edge
    /// between processed vertices (with `u` counted as processed)
    /// monochromatic. Only edges at `u` or at a neighbor of `u` can change.
    fn violates(&self, u: usize, s: u32) -> bool {
        let g = self.g;
        let s = u64::from(s);
        let su = self.sigma[u] + s * g.degree(u) as u64;
        for &v in g.neighbors(u) {
            if !self.done[v] {
                continue;
            }
            let sv = self.sigma[v] + s;
            if su == sv {
                return true;
            }
            for &w in g.neighbors(v) {
                if w == u || !self.done[w] {
                    continue;
                }
                let sw = self.sigma[w] + if g.has_edge(u, w) { s } else { 0 };
                if sv == sw {
                    return true;
                }
            }
        }
        false
    }

    fn counts(&self, u: usize) -> (u32, u32) {
        let g = self.g;
        let mut s1 = 0;
        let mut s2 = 0;
        for &v in g.neighbors(u) {
            if !self.done[v] {
                continue;
            }
            s1 += 1;
            s2 += g
                .neighbors(v)
                .iter()
                .filter(|&&w| w != u && self.done[w] && !g.has_edge(u, w))
                .count() as u32;
        }
        (s1, s2)
    }

    fn set(&mut self, u: usize, s: u32) {
        let old = self.rho[u];
        let d = self.g.degree(u) as u64;
        self.sigma[u] = self.sigma[u] - u64::from(old) * d + u64::from(s) * d;
        for &v in self.g.neighbors(u) {
            self.sigma[v] = self.sigma[v] - u64::from(old) + u64::from(s);
        }
        self.rho[u] = s;
    }

    fn step(&mut self, u: usize) -> Result<GreedyStep> {
        let (s1, s2) = self.counts(u);
        let (g, excluded) = if self.g.degree(u) <= 1 {
            // a leaf can always take 0 in a nice graph: its neighbor has
            // degree >= 2 and therefore a strictly larger sigma
            debug_assert!(
                !self.violates(u, 0),
                "degree<=1 shortcut invalid at vertex {u}"
            );
            (0, Vec::new())
        } else {
            let allowance = s1 + s2;
            let excluded: Vec<u32> = (0..=allowance).filter(|&s| self.violates(u, s)).collect();
            let g = (0..=allowance)
                .find(|s| excluded.binary_search(s).is_err())
                .ok_or_else(|| {
                    Error::Invariant(format!(
                        "greedy step at vertex {u}: every value in 0..={allowance} excluded"
                    ))
                })?;
            (g, excluded)
        };
        self.set(u, g);
        self.done[u] = true;
        Ok(GreedyStep {
            vertex: u,
            s1,
            s2,
            g,
            excluded,
        })
    }
}

fn check_ordering(g: &Graph, ordering: &VertexOrdering) -> Result<()> {
    if ordering.len() != g.n() {
        return Err(Error::InvalidOrdering(format!(
            "ordering has {} entries, graph has {} vertices",
            ordering.len(),
            g.n()
        )));
    }
    Ok(())
}

/// Runs the greedy algorithm along `ordering`.
pub fn greedy_run(g: &Graph, ordering: &VertexOrdering) -> Result<(PushingScheme, GreedyTrace)> {
    g.require_nice()?;
    check_ordering(g, ordering)?;
    let mut state = GreedyState::new(g);
    let steps = ordering
        .as_slice()
        .iter()
        .map(|&u| state.step(u))
        .collect::<Result<Vec<_>>>()?;
    Ok((PushingScheme::new(state.rho), GreedyTrace { steps }))
}

/// Uniform permutation of `0..n`: ChaCha8 seeded from `seed`, then a
/// Fisher-Yates shuffle of the identity.
pub fn random_ordering(n: usize, seed: u64) -> VertexOrdering {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    VertexOrdering { perm }
}

/// Seed of the `trial`-th ordering in a seeded series.
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    seed.wrapping_add(trial)
}

/// BFS levels from `root`, farthest level first, ascending index within a
/// level. Every vertex except `root` has a neighbor later in the ordering.
pub fn reverse_bfs_ordering(g: &Graph, root: usize) -> Result<VertexOrdering> {
    let dist = g.bfs_distances(&[root])?;
    if dist.iter().any(Option::is_none) {
        return Err(Error::Disconnected);
    }
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.sort_by_key(|&v| (std::cmp::Reverse(dist[v].unwrap()), v));
    Ok(VertexOrdering { perm })
}

/// `sum over u of d(u) (2 d(u) + 1) / 6`, the expected value of
/// `sum (s1 + s2)` over uniformly random orderings of a triangle-free graph
/// and an upper bound on it in general.
pub fn expected_total_bound<T: Scalar>(g: &Graph) -> T {
    T::ratio(expected_bound_sixths(g), 6)
}

/// Six times [`expected_total_bound`], as an integer.
pub fn expected_bound_sixths(g: &Graph) -> u64 {
    g.degrees().map(|d| (d * (2 * d + 1)) as u64).sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedGreedy {
    pub scheme: PushingScheme,
    pub trials_used: u64,
    /// Whether `scheme.total()` is within [`expected_total_bound`].
    pub bound_met: bool,
}

/// Greedy over seeded random orderings (`trial_seed(seed, t)` for
/// `t = 0, 1, ...`) until a scheme's total meets the expected-total bound.
/// Falls back to the best total seen after `max_trials`.
pub fn greedy_under_bound(g: &Graph, seed: u64, max_trials: u64) -> Result<BoundedGreedy> {
    g.require_nice()?;
    if max_trials == 0 {
        return Err(Error::Precondition("max_trials must be at least 1".into()));
    }
    let sixths = expected_bound_sixths(g);
    let mut best: Option<PushingScheme> = None;
    for t in 0..max_trials {
        let ordering = random_ordering(g.n(), trial_seed(seed, t));
        let (scheme, _) = greedy_run(g, &ordering)?;
        if 6 * scheme.total() <= sixths {
            return Ok(BoundedGreedy {
                scheme,
                trials_used: t + 1,
                bound_met: true,
            });
        }
        if best.as_ref().is_none_or(|b| scheme.total() < b.total()) {
            best = Some(scheme);
        }
    }
    Ok(BoundedGreedy {
        scheme: best.unwrap(),
        trials_used: max_trials,
        bound_met: false,
    })
}

/// A retry that lowered the final vertex below `Delta^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinalVertexRetry {
    pub final_vertex: usize,
    /// Neighbor of the final vertex whose value was changed.
    pub neighbor: usize,
    pub from: u32,
    pub to: u32,
    /// Value the plain run had to give the final vertex.
    pub plain_value: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaSqOutcome {
    pub scheme: PushingScheme,
    pub ordering: VertexOrdering,
    pub retry: Option<FinalVertexRetry>,
}

/// Proper scheme with maximum at most `Delta^2 - 1` for a connected,
/// `Delta`-regular graph (`Delta >= 2`) other than `K_{Delta,Delta}`.
///
/// Greedy along the reverse BFS ordering from vertex 0 uses at most
/// `Delta^2 - Delta` on every vertex but the root. If the root needs
/// `Delta^2`, one neighbor `v1` of the root is moved to another value in
/// `0..=Delta^2-Delta+1` that keeps the prefix proper and the root is
/// finalized again.
pub fn delta_sq_minus_one_scheme(g: &Graph) -> Result<DeltaSqOutcome> {
    g.require_nice()?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let delta = g
        .regular_degree()
        .ok_or_else(|| Error::Precondition("graph is not regular".into()))?;
    if delta < 2 {
        return Err(Error::Precondition(format!("regularity {delta} < 2")));
    }
    if g.is_complete_bipartite_balanced() {
        return Err(Error::Precondition(
            "K_{d,d} is excluded; its P1 witness is the constant-1-on-one-side scheme".into(),
        ));
    }
    let cap = (delta * delta - 1) as u32;
    let root = 0;
    let ordering = reverse_bfs_ordering(g, root)?;
    let (plain, trace) = greedy_run(g, &ordering)?;
    let plain_value = trace.steps.last().map_or(0, |s| s.g);
    if plain_value <= cap {
        return Ok(DeltaSqOutcome {
            scheme: plain,
            ordering,
            retry: None,
        });
    }

    let mut base = plain.rho.clone();
    base[root] = 0;
    match lower_final_vertex(g, root, &base, plain_value)? {
        Some((scheme, retry)) => {
            log::info!("delta^2-1 retry activated: {retry:?}");
            Ok(DeltaSqOutcome {
                scheme,
                ordering,
                retry: Some(retry),
            })
        }
        None => Err(Error::Invariant(format!(
            "no retry lowered the final vertex below {}; plain value {plain_value}, trace {:?}",
            cap + 1,
            trace.steps
        ))),
    }
}

/// Moves one neighbor `v1` of `u` to another value in `0..=Delta^2-Delta+1`
/// that keeps every edge not at `u` proper, then gives `u` the least value
/// below `Delta^2` that makes the whole scheme proper. `base` holds the
/// values of all other vertices; `v1` ranges over neighbors with another
/// neighbor `w` that misses some `x` in `N(u)`, `x != w`.
pub(crate) fn lower_final_vertex(
    g: &Graph,
    u: usize,
    base: &[u32],
    plain_value: u32,
) -> Result<Option<(PushingScheme, FinalVertexRetry)>> {
    let delta = g.degree(u);
    let cap = (delta * delta - 1) as u32;
    let prefix_ok = |rho: &[u32]| {
        let sigma: Vec<u64> = (0..g.n())
            .map(|x| crate::scheme::sigma_at(g, rho, x))
            .collect();
        g.edges()
            .filter(|&(a, b)| a != u && b != u)
            .all(|(a, b)| sigma[a] != sigma[b])
    };
    let nu = g.neighbors(u);
    let witnesses: Vec<usize> = nu
        .iter()
        .copied()
        .filter(|&v| {
            g.neighbors(v)
                .iter()
                .any(|&w| w != u && nu.iter().any(|&x| x != w && !g.has_edge(w, x)))
        })
        .collect();
    let top = (delta * delta - delta + 1) as u32;
    for (attempt, &v1) in witnesses.iter().enumerate() {
        if attempt > 0 {
            log::warn!(
                "delta^2-1 retry: witness {} failed, trying neighbor {v1}",
                witnesses[attempt - 1]
            );
        }
        let t = base[v1];
        for t_new in (0..=top).filter(|&x| x != t) {
            let mut rho = base.to_vec();
            rho[v1] = t_new;
            if !prefix_ok(&rho) {
                continue;
            }
            for s in 0..=cap {
                rho[u] = s;
                let candidate = PushingScheme::new(rho.clone());
                if is_proper(g, &candidate)?.is_proper() {
                    let retry = FinalVertexRetry {
                        final_vertex: u,
                        neighbor: v1,
                        from: t,
                        to: t_new,
                        plain_value,
                    };
                    return Ok(Some((candidate, retry)));
                }
            }
            // the first prefix-valid value should already have succeeded
            log::warn!("delta^2-1 retry: value {t_new} at neighbor {v1} kept the prefix proper but did not help");
        }
    }
    Ok(None)
}
