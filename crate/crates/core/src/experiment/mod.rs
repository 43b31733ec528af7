//! Batch experiments over graph6 corpora and the supporting oracles.

pub mod batch;
pub mod conjecture;
pub mod perm;
pub mod stats;

pub use batch::{
    average_report, batch_run, AverageReport, BatchConfig, BatchMode, BatchReport, BatchRow,
};
pub use conjecture::{conjecture_check, Verdict, WitnessSource};
pub use perm::{girth5_bound, perm_oracle, PermClassCounts};
pub use stats::SampleStats;
