//! Corpus runs over graph6 streams.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construct::{bipartite_regular_scheme, cubic_scheme};
use crate::error::{Error, Result};
use crate::exact::exact_p1;
use crate::graph::{parse_graph6, Graph};
use crate::greedy::{
    delta_sq_minus_one_scheme, expected_total_bound, greedy_run, random_ordering, trial_seed,
};
use crate::scheme::{is_proper, PushingScheme};
use crate::Rational;

/// Default number of seeded orderings per graph in greedy mode.
pub const DEFAULT_TRIALS: u64 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BatchMode {
    Greedy,
    Construct,
    ExactP1,
}

impl fmt::Display for BatchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BatchMode::Greedy => "greedy",
            BatchMode::Construct => "construct",
            BatchMode::ExactP1 => "exact-p1",
        })
    }
}

impl FromStr for BatchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greedy" => Ok(BatchMode::Greedy),
            "construct" => Ok(BatchMode::Construct),
            "exact-p1" => Ok(BatchMode::ExactP1),
            other => Err(Error::Precondition(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BatchConfig {
    pub mode: BatchMode,
    pub seed: u64,
    pub trials: u64,
}

impl Default for BatchConfig {
    fn default() -> Self {
        BatchConfig {
            mode: BatchMode::Greedy,
            seed: 0,
            trials: DEFAULT_TRIALS,
        }
    }
}

/// One processed graph. Column order is fixed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchRow {
    /// 1-based input line number.
    pub graph_id: usize,
    pub n: usize,
    pub m: usize,
    pub delta: usize,
    pub regular: bool,
    /// Empty for forests.
    pub girth: Option<usize>,
    pub mode: BatchMode,
    /// Maximum push value (the exact parameter in `exact-p1` mode, the best
    /// maximum over trials in greedy mode).
    pub p1_or_max: u32,
    pub total: u64,
    /// Expected-total bound as an exact fraction.
    pub bound: String,
    pub trials: u64,
    pub proper: bool,
    /// Wall-clock milliseconds; the only nondeterministic column.
    pub runtime: f64,
}

impl BatchRow {
    pub const HEADER: [&'static str; 13] = [
        "graph_id",
        "n",
        "m",
        "delta",
        "regular",
        "girth",
        "mode",
        "p1_or_max",
        "total",
        "bound",
        "trials",
        "proper",
        "runtime",
    ];
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skipped {
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Default)]
pub struct BatchReport {
    pub rows: Vec<BatchRow>,
    /// Scheme behind each row, parallel to `rows`.
    pub witnesses: Vec<PushingScheme>,
    pub skipped: Vec<Skipped>,
}

impl BatchReport {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .has_headers(false)
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let io = |e: csv::Error| Error::Report(e.to_string());
        w.write_record(BatchRow::HEADER).map_err(io)?;
        for row in &self.rows {
            w.serialize(row).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Report(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Report(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(&self.rows).map_err(|e| Error::Report(e.to_string()))
    }

    /// `graph_id rho: ...` per row, for re-verification.
    pub fn witness_lines(&self) -> String {
        self.rows
            .iter()
            .zip(&self.witnesses)
            .map(|(r, w)| format!("{} {w}\n", r.graph_id))
            .collect()
    }
}

/// Processes every graph6 record of `input` (one per non-blank line).
/// Unparsable and non-nice records are reported in `skipped`; rows come out
/// in input order regardless of scheduling.
pub fn batch_run(input: &str, config: &BatchConfig) -> Result<BatchReport> {
    if config.mode == BatchMode::Greedy && config.trials == 0 {
        return Err(Error::Precondition(
            "greedy mode needs at least one trial".into(),
        ));
    }
    let mut skipped = Vec::new();
    let mut graphs = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        match parse_graph6(line.trim()) {
            Ok(g) if g.is_nice() => graphs.push((line_no, g)),
            Ok(_) => skipped.push(Skipped {
                line: line_no,
                reason: "not nice".into(),
            }),
            Err(e) => skipped.push(Skipped {
                line: line_no,
                reason: e.to_string(),
            }),
        }
    }
    let outcomes: Vec<(usize, Result<(BatchRow, PushingScheme)>)> = graphs
        .par_iter()
        .map(|(id, g)| (*id, process(*id, g, config)))
        .collect();
    let mut report = BatchReport::default();
    for (id, outcome) in outcomes {
        match outcome {
            Ok((row, w)) => {
                report.rows.push(row);
                report.witnesses.push(w);
            }
            Err(e) => skipped.push(Skipped {
                line: id,
                reason: e.to_string(),
            }),
        }
    }
    skipped.sort_by_key(|s| s.line);
    report.skipped = skipped;
    Ok(report)
}

fn process(graph_id: usize, g: &Graph, config: &BatchConfig) -> Result<(BatchRow, PushingScheme)> {
    let start = Instant::now();
    let (witness, p1_or_max, total, trials) = match config.mode {
        BatchMode::Greedy => {
            let mut best: Option<PushingScheme> = None;
            let mut best_max = u32::MAX;
            for t in 0..config.trials {
                let (s, _) = greedy_run(g, &random_ordering(g.n(), trial_seed(config.seed, t)))?;
                best_max = best_max.min(s.max());
                if best.as_ref().is_none_or(|b| s.total() < b.total()) {
                    best = Some(s);
                }
            }
            let best = best.expect("at least one trial");
            let total = best.total();
            (best, best_max, total, config.trials)
        }
        BatchMode::Construct => {
            let s = construct(g)?;
            let (max, total) = (s.max(), s.total());
            (s, max, total, 0)
        }
        BatchMode::ExactP1 => {
            let r = exact_p1(g)?;
            (r.witness, r.value as u32, 0, 0)
        }
    };
    let total = if config.mode == BatchMode::ExactP1 {
        witness.total()
    } else {
        total
    };
    let proper = is_proper(g, &witness)?.is_proper();
    if !proper {
        return Err(Error::Invariant(format!(
            "improper witness for graph {graph_id}"
        )));
    }
    let delta = g.max_degree();
    debug_assert!(total <= (g.n() * delta * delta) as u64);
    let row = BatchRow {
        graph_id,
        n: g.n(),
        m: g.m(),
        delta,
        regular: g.regular_degree().is_some(),
        girth: g.girth(),
        mode: config.mode,
        p1_or_max,
        total,
        bound: expected_total_bound::<Rational>(g).to_string(),
        trials,
        proper,
        runtime: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok((row, witness))
}

/// Cubic construction, then the regular bipartite one, then the
/// `Delta^2 - 1` scheme for other connected regular graphs.
pub fn construct(g: &Graph) -> Result<PushingScheme> {
    if g.is_cubic() {
        return cubic_scheme(g);
    }
    let regular = g.regular_degree();
    let connected = g.is_connected();
    if connected && regular.is_some_and(|d| d >= 4) && g.bipartition().is_some() {
        return bipartite_regular_scheme(g, 0);
    }
    if connected && regular.is_some_and(|d| d >= 2) && !g.is_complete_bipartite_balanced() {
        return delta_sq_minus_one_scheme(g).map(|o| o.scheme);
    }
    Err(Error::Precondition("no construction applies".into()))
}

/// Corpus-level means of a batch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AverageReport {
    pub rows: usize,
    pub mean_total_per_n: f64,
    pub mean_max: f64,
    /// Share of rows with `p1_or_max <= delta`.
    pub fraction_max_within_delta: f64,
}

impl AverageReport {
    pub fn from_rows(rows: &[BatchRow]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Report("no rows to average".into()));
        }
        let k = rows.len() as f64;
        let mean = |f: &dyn Fn(&BatchRow) -> f64| rows.iter().map(f).sum::<f64>() / k;
        Ok(AverageReport {
            rows: rows.len(),
            mean_total_per_n: mean(&|r| {
                if r.n == 0 {
                    0.0
                } else {
                    r.total as f64 / r.n as f64
                }
            }),
            mean_max: mean(&|r| f64::from(r.p1_or_max)),
            fraction_max_within_delta: mean(&|r| {
                if r.p1_or_max as usize <= r.delta {
                    1.0
                } else {
                    0.0
                }
            }),
        })
    }
}

/// Averages over a CSV produced by [`BatchReport::to_csv`].
pub fn average_report(csv_text: &str) -> Result<AverageReport> {
    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    let rows = reader
        .deserialize()
        .collect::<std::result::Result<Vec<BatchRow>, _>>()
        .map_err(|e| Error::Report(e.to_string()))?;
    AverageReport::from_rows(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strip_runtime(csv: &str) -> String {
        csv.lines()
            .map(|l| l.rsplit_once(',').map_or(l, |(a, _)| a).to_string())
            .collect::<Vec<_>>()
            .join("\n")
    }

    #[test]
    fn cubic_order_six() {
        let input = "EFz_\nEUxo\n";
        let report = batch_run(input, &BatchConfig::default()).unwrap();
        assert_eq!(report.rows.len(), 2);
        assert!(report
            .rows
            .iter()
            .all(|r| r.proper && r.trials == 10 && r.bound == "21"));
        assert!(report.skipped.is_empty());
    }

    #[test]
    fn empty_stream_has_header_only() {
        let report = batch_run("", &BatchConfig::default()).unwrap();
        assert_eq!(report.to_csv().unwrap(), BatchRow::HEADER.join(",") + "\n");
    }

    #[test]
    fn non_nice_and_garbage_are_skipped() {
        let report = batch_run("A_\nC~\nC\n", &BatchConfig::default()).unwrap();
        assert_eq!(report.rows.len(), 1);
        assert_eq!(report.rows[0].graph_id, 2);
        assert_eq!(report.skipped.len(), 2);
        assert_eq!(
            report.skipped[0],
            Skipped {
                line: 1,
                reason: "not nice".into()
            }
        );
        assert_eq!(report.skipped[1].line, 3);
    }

    #[test]
    fn deterministic_apart_from_runtime() {
        let input = std::fs::read_to_string(concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/../../corpus/cubic_n10.g6"
        ))
        .unwrap();
        let cfg = BatchConfig {
            seed: 5,
            ..BatchConfig::default()
        };
        let a = batch_run(&input, &cfg).unwrap().to_csv().unwrap();
        let b = batch_run(&input, &cfg).unwrap().to_csv().unwrap();
        assert_eq!(strip_runtime(&a), strip_runtime(&b));
    }

    #[test]
    fn modes_and_averages() {
        let input = "C~\nEFz_\n";
        for mode in [BatchMode::Greedy, BatchMode::Construct, BatchMode::ExactP1] {
            let report = batch_run(
                input,
                &BatchConfig {
                    mode,
                    seed: 1,
                    trials: 3,
                },
            )
            .unwrap();
            assert_eq!(report.rows.len(), 2, "{mode}");
            let avg = average_report(&report.to_csv().unwrap()).unwrap();
            assert_eq!(avg.rows, 2);
            assert_eq!(avg.fraction_max_within_delta, 1.0);
            assert_eq!(report.witness_lines().lines().count(), 2);
        }
        let exact = batch_run(
            "C~\n",
            &BatchConfig {
                mode: BatchMode::ExactP1,
                seed: 0,
                trials: 1,
            },
        )
        .unwrap();
        assert_eq!(exact.rows[0].p1_or_max, 3);
        assert!(average_report(&BatchReport::default().to_csv().unwrap()).is_err());
    }

    #[test]
    fn single_row_average_echoes_values() {
        let report = batch_run("C~\n", &BatchConfig::default()).unwrap();
        let avg = average_report(&report.to_csv().unwrap()).unwrap();
        assert_eq!(avg.mean_total_per_n, 6.0 / 4.0);
        assert_eq!(avg.mean_max, 3.0);
    }

    #[test]
    fn json_uses_row_field_names() {
        let report = batch_run("C~\n", &BatchConfig::default()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&report.to_json().unwrap()).unwrap();
        let obj = v[0].as_object().unwrap();
        for key in BatchRow::HEADER {
            assert!(obj.contains_key(key), "{key}");
        }
        assert_eq!(v[0]["mode"], "greedy");
    }
}
