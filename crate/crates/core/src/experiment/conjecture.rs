//! Witness search for the conjectured bound `P1(G) <= Delta(G)`.

use crate::construct::{bipartite_regular_scheme, cubic_scheme};
use crate::error::Result;
use crate::exact::feasible_with_cap;
use crate::graph::Graph;
use crate::greedy::{greedy_run, random_ordering, trial_seed};
use crate::scheme::{is_proper, PushingScheme};

/// Largest order for which the exact cap search is attempted.
pub const EXACT_MAX_ORDER: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessSource {
    CubicConstruction,
    BipartiteConstruction,
    /// Greedy on the ordering with this trial index.
    Greedy {
        trial: u64,
    },
    ExactSearch,
}

/// A witness of maximum at most `Delta`, or no conclusion. There is no
/// refuting verdict: a missing witness proves nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    HoldsWitnessed {
        scheme: PushingScheme,
        via: WitnessSource,
    },
    Undecided,
}

impl Verdict {
    pub fn is_witnessed(&self) -> bool {
        matches!(self, Verdict::HoldsWitnessed { .. })
    }
}

/// Tries, in order: the explicit constructions, greedy on `budget` seeded
/// random orderings, and exact search with cap `Delta` for small graphs.
pub fn conjecture_check(g: &Graph, budget: u64, seed: u64) -> Result<Verdict> {
    g.require_nice()?;
    let delta = g.max_degree() as u32;
    let accept = |scheme: PushingScheme, via| -> Result<Option<Verdict>> {
        Ok(
            (scheme.max() <= delta && is_proper(g, &scheme)?.is_proper())
                .then_some(Verdict::HoldsWitnessed { scheme, via }),
        )
    };

    if g.is_cubic() {
        if let Some(v) = accept(cubic_scheme(g)?, WitnessSource::CubicConstruction)? {
            return Ok(v);
        }
    }
    if delta >= 4 && g.is_connected() && g.regular_degree().is_some() && g.bipartition().is_some() {
        if let Some(v) = accept(
            bipartite_regular_scheme(g, 0)?,
            WitnessSource::BipartiteConstruction,
        )? {
            return Ok(v);
        }
    }
    for trial in 0..budget {
        let ordering = random_ordering(g.n(), trial_seed(seed, trial));
        let (scheme, _) = greedy_run(g, &ordering)?;
        if let Some(v) = accept(scheme, WitnessSource::Greedy { trial })? {
            return Ok(v);
        }
    }
    if g.n() <= EXACT_MAX_ORDER {
        if let Some(scheme) = feasible_with_cap(g, delta)?.scheme {
            if let Some(v) = accept(scheme, WitnessSource::ExactSearch)? {
                return Ok(v);
            }
        }
    }
    Ok(Verdict::Undecided)
}
