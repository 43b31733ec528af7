//! Proper pushing schemes for graph coloring.
//!
//! A pushing scheme assigns every vertex `u` a non-negative push count
//! `rho(u)`. Pushing a vertex raises the label of each incident edge by one,
//! so an edge `uv` carries `1 + rho(u) + rho(v)` and a vertex collects
//! `sigma(u) = (1 + rho(u)) d(u) + sum of rho over N(u)`. The scheme is
//! *proper* when `sigma` is a proper vertex coloring.
//!
//! The crate provides:
//!
//! * [`graph`]: simple undirected graphs, graph6 and edge-list ingestion,
//!   structural queries;
//! * [`scheme`]: sigma derivation and properness checks;
//! * [`greedy`]: the greedy push algorithm with per-step accounting and the
//!   orderings it is run on;
//! * [`construct`]: explicit schemes for cubic and regular bipartite graphs;
//! * [`exact`]: exact computation of the max-push and total-push parameters;
//! * [`experiment`]: batch runs, averages, the conjecture checker and the
//!   permutation-class oracle.
//!
//! Exact-versus-approximate arithmetic is chosen by the caller through the
//! [`Scalar`] trait; [`Rational`] and `f64` are the two instantiations used
//! throughout.

pub mod construct;
pub mod error;
pub mod exact;
pub mod experiment;
pub mod families;
pub mod graph;
pub mod greedy;
pub mod scalar;
pub mod scheme;

pub use error::{Error, Result};
pub use graph::Graph;
pub use scalar::Scalar;
pub use scheme::{PushingScheme, SigmaProfile};

/// Exact rational arithmetic for bounds and class fractions.
pub type Rational = num_rational::Ratio<i64>;

/// Permutation-class fractions in exact arithmetic.
pub type PermFractionsQ = experiment::perm::PermFractions<Rational>;

/// Permutation-class fractions in double precision.
pub type PermFractionsF64 = experiment::perm::PermFractions<f64>;

/// Sample statistics over double-precision observations.
pub type SampleStatsF64 = experiment::stats::SampleStats<f64>;
