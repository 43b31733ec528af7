//! `pushing`: command-line front end for pushing-scheme experiments.

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use pushing_core::construct::cubic_scheme_detailed;
use pushing_core::exact::{exact_p1, exact_pt, feasible_with_cap, ExactStatus};
use pushing_core::experiment::batch::{construct, AverageReport};
use pushing_core::experiment::{
    average_report, batch_run, conjecture_check, perm_oracle, BatchConfig, BatchMode, Verdict,
};
use pushing_core::graph::{parse_edge_list, parse_graph6};
use pushing_core::greedy::{
    expected_total_bound, greedy_run, random_ordering, trial_seed, VertexOrdering,
};
use pushing_core::scheme::derive_sigma;
use pushing_core::{Graph, PermFractionsQ, PushingScheme, Rational};

#[derive(Parser)]
#[command(
    name = "pushing",
    version,
    about = "Proper pushing schemes: verification, search and corpus experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a scheme for properness; exit 1 on a conflict.
    Verify {
        #[command(flatten)]
        input: GraphInput,
        /// Push values, whitespace separated, optionally prefixed by `rho:`.
        #[arg(long)]
        scheme: String,
    },
    /// Run the greedy algorithm on seeded random orderings.
    Greedy {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        /// Explicit vertex ordering instead of random ones.
        #[arg(long, conflicts_with_all = ["seed", "trials"])]
        ordering: Option<String>,
        /// Write the per-step trace of the best run as CSV.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        emit_witness: Option<PathBuf>,
    },
    /// Build a scheme with an explicit construction.
    Construct {
        #[command(flatten)]
        input: GraphInput,
        /// Print the class, layer, push value and sigma of every vertex
        /// (cubic graphs only).
        #[arg(long)]
        dump: bool,
        #[arg(long)]
        emit_witness: Option<PathBuf>,
    },
    /// Exact max-push or total-push parameter, or a feasibility check.
    Exact {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, group = "target")]
        p1: bool,
        #[arg(long, group = "target")]
        pt: bool,
        /// Look for a proper scheme with every value at most K; exit 1 if none.
        #[arg(long, group = "target", value_name = "K")]
        cap: Option<u32>,
        #[arg(long)]
        emit_witness: Option<PathBuf>,
    },
    /// Process every graph of a graph6 stream.
    Batch {
        /// graph6 file, one graph per line; `-` reads stdin.
        #[arg(long)]
        graph6: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Greedy)]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = pushing_core::experiment::batch::DEFAULT_TRIALS)]
        trials: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Report file; stdout when absent.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Write `graph_id rho: ...` lines for every row.
        #[arg(long)]
        emit_witness: Option<PathBuf>,
        /// Print corpus means to stderr.
        #[arg(long)]
        summary: bool,
    },
    /// Corpus means of a batch CSV.
    Average {
        /// Batch CSV; `-` reads stdin.
        #[arg(long)]
        csv: PathBuf,
    },
    /// Exhaustive permutation-class counts over the ten-vertex tree.
    PermOracle {
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Look for a scheme with maximum at most the maximum degree; exit 1 if
    /// any graph stays undecided.
    Conjecture {
        #[command(flatten)]
        input: GraphInput,
        /// Random orderings tried by greedy before exact search.
        #[arg(long, default_value_t = pushing_core::experiment::batch::DEFAULT_TRIALS)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        emit_witness: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphInput {
    /// Edge list: vertex count, then one `u v` pair per line.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// graph6 file; single-graph commands read its first record, `conjecture`
    /// reads all of them.
    #[arg(long)]
    graph6: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Greedy,
    Construct,
    ExactP1,
}

impl From<ModeArg> for BatchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Greedy => BatchMode::Greedy,
            ModeArg::Construct => BatchMode::Construct,
            ModeArg::ExactP1 => BatchMode::ExactP1,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

enum Outcome {
    Yes,
    No,
}

fn read_text(path: &Path) -> anyhow::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_text(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

impl GraphInput {
    fn graphs(&self) -> anyhow::Result<Vec<(usize, Graph)>> {
        if let Some(path) = &self.graph {
            let text = read_text(path)?;
            let g = parse_edge_list(&text)
                .with_context(|| format!("parsing {}", path.display()))?
                .graph;
            return Ok(vec![(1, g)]);
        }
        let path = self.graph6.as_ref().expect("clap enforces one input");
        let text = read_text(path)?;
        let mut out = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let g = parse_graph6(line.trim())
                .with_context(|| format!("{}: line {}", path.display(), i + 1))?;
            out.push((i + 1, g));
        }
        if out.is_empty() {
            bail!("{}: no graphs", path.display());
        }
        Ok(out)
    }

    fn graph(&self) -> anyhow::Result<Graph> {
        Ok(self.graphs()?.swap_remove(0).1)
    }
}

fn parse_ordering(text: &str, n: usize) -> anyhow::Result<VertexOrdering> {
    let perm = text
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .with_context(|| format!("bad vertex {t:?} in ordering"))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    if perm.len() != n {
        bail!(
            "ordering has {} entries, graph has {n} vertices",
            perm.len()
        );
    }
    Ok(VertexOrdering::new(perm)?)
}

fn emit(path: &Option<PathBuf>, scheme: &PushingScheme) -> anyhow::Result<()> {
    match path {
        Some(p) => write_text(p, &format!("{scheme}\n")),
        None => Ok(()),
    }
}

fn print_sigma(g: &Graph, scheme: &PushingScheme) -> anyhow::Result<()> {
    let sigma = derive_sigma(g, scheme)?.sigma;
    let text: Vec<String> = sigma.iter().map(u64::to_string).collect();
    println!("sigma: {}", text.join(" "));
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Verify { input, scheme } => {
            let g = input.graph()?;
            let scheme: PushingScheme = scheme.parse()?;
            let profile = derive_sigma(&g, &scheme)?;
            let text: Vec<String> = profile.sigma.iter().map(u64::to_string).collect();
            println!("sigma: {}", text.join(" "));
            println!("max: {} total: {}", scheme.max(), scheme.total());
            match profile.conflicts.first() {
                None => {
                    println!("proper");
                    Ok(Outcome::Yes)
                }
                Some(&(u, v)) => {
                    println!("conflict: {u} {v} (sigma {})", profile.sigma[u]);
                    Ok(Outcome::No)
                }
            }
        }
        Command::Greedy {
            input,
            seed,
            trials,
            ordering,
            trace,
            emit_witness,
        } => {
            let g = input.graph()?;
            let orderings: Vec<VertexOrdering> = match ordering {
                Some(text) => vec![parse_ordering(&text, g.n())?],
                None => {
                    if trials == 0 {
                        return Err(anyhow::anyhow!("--trials must be positive"));
                    }
                    (0..trials)
                        .map(|t| random_ordering(g.n(), trial_seed(seed, t)))
                        .collect()
                }
            };
            let mut best = None;
            for ord in &orderings {
                let (scheme, tr) = greedy_run(&g, ord)?;
                let key = (scheme.total(), scheme.max());
                if best.as_ref().is_none_or(|(k, _, _)| key < *k) {
                    best = Some((key, scheme, tr));
                }
            }
            let (_, scheme, tr) = best.expect("at least one ordering");
            println!("{scheme}");
            println!("max: {} total: {}", scheme.max(), scheme.total());
            println!("bound: {}", expected_total_bound::<Rational>(&g));
            println!("allowance: {}", tr.total_allowance());
            if let Some(p) = trace {
                write_text(&p, &tr.to_csv())?;
            }
            emit(&emit_witness, &scheme)?;
            Ok(Outcome::Yes)
        }
        Command::Construct {
            input,
            dump,
            emit_witness,
        } => {
            let g = input.graph()?;
            let scheme = if dump {
                let c = cubic_scheme_detailed(&g)?;
                print!("{}", c.dump(&g));
                c.scheme
            } else {
                construct(&g)?
            };
            println!("{scheme}");
            println!("max: {} total: {}", scheme.max(), scheme.total());
            print_sigma(&g, &scheme)?;
            emit(&emit_witness, &scheme)?;
            Ok(Outcome::Yes)
        }
        Command::Exact {
            input,
            p1,
            pt,
            cap,
            emit_witness,
        } => {
            let g = input.graph()?;
            g.require_nice()?;
            if let Some(k) = cap {
                let search = feasible_with_cap(&g, k)?;
                log::info!("search nodes: {}", search.nodes);
                return match search.scheme {
                    Some(s) => {
                        println!("feasible");
                        println!("{s}");
                        emit(&emit_witness, &s)?;
                        Ok(Outcome::Yes)
                    }
                    None => {
                        println!("infeasible");
                        Ok(Outcome::No)
                    }
                };
            }
            if !p1 && !pt {
                return Err(anyhow::anyhow!("one of --p1, --pt, --cap is required"));
            }
            let r = if p1 { exact_p1(&g)? } else { exact_pt(&g)? };
            log::info!("search nodes: {}", r.nodes);
            if r.status != ExactStatus::Optimal {
                bail!("search did not reach an optimum");
            }
            println!("{}", r.value);
            println!("{}", r.witness);
            emit(&emit_witness, &r.witness)?;
            Ok(Outcome::Yes)
        }
        Command::Batch {
            graph6,
            mode,
            seed,
            trials,
            format,
            output,
            emit_witness,
            summary,
        } => {
            let text = read_text(&graph6)?;
            let config = BatchConfig {
                mode: mode.into(),
                seed,
                trials,
            };
            let report = batch_run(&text, &config)?;
            for s in &report.skipped {
                eprintln!("skipped line {}: {}", s.line, s.reason);
            }
            let body = match format {
                Format::Csv => report.to_csv()?,
                Format::Json => report.to_json()? + "\n",
            };
            match &output {
                Some(p) => write_text(p, &body)?,
                None => print!("{body}"),
            }
            if let Some(p) = &emit_witness {
                write_text(p, &report.witness_lines())?;
            }
            if summary {
                match AverageReport::from_rows(&report.rows) {
                    Ok(avg) => eprintln!("{}", format_average(&avg)),
                    Err(e) => eprintln!("no summary: {e}"),
                }
            }
            Ok(Outcome::Yes)
        }
        Command::Average { csv } => {
            let text = read_text(&csv)?;
            let avg = average_report(&text)?;
            println!("{}", format_average(&avg));
            Ok(Outcome::Yes)
        }
        Command::PermOracle { format } => {
            let counts = perm_oracle();
            let f: PermFractionsQ = counts.fractions();
            match format {
                Format::Csv => {
                    println!("class,count,fraction");
                    println!("S1,{},{}", counts.s1, f.s1);
                    println!("S2,{},{}", counts.s2, f.s2);
                    println!("S3,{},{}", counts.s3, f.s3);
                    println!("bound,,{}", f.bound);
                    println!("mean_allowance,,{}", f.mean_allowance);
                }
                Format::Json => {
                    let v = serde_json::json!({
                        "total": counts.total,
                        "s1": counts.s1,
                        "s2": counts.s2,
                        "s3": counts.s3,
                        "fraction_s1": f.s1.to_string(),
                        "fraction_s2": f.s2.to_string(),
                        "fraction_s3": f.s3.to_string(),
                        "bound": f.bound.to_string(),
                        "mean_allowance": f.mean_allowance.to_string(),
                    });
                    println!("{}", serde_json::to_string_pretty(&v)?);
                }
            }
            Ok(Outcome::Yes)
        }
        Command::Conjecture {
            input,
            trials,
            seed,
            emit_witness,
        } => {
            let graphs = input.graphs()?;
            let mut undecided = 0;
            let mut witnesses = String::new();
            for (line, g) in &graphs {
                let verdict = conjecture_check(g, trials, seed)
                    .with_context(|| format!("graph on line {line}"))?;
                match verdict {
                    Verdict::HoldsWitnessed { scheme, via } => {
                        println!(
                            "{line} holds max={} delta={} via={via:?}",
                            scheme.max(),
                            g.max_degree()
                        );
                        witnesses.push_str(&format!("{line} {scheme}\n"));
                    }
                    Verdict::Undecided => {
                        println!("{line} undecided delta={}", g.max_degree());
                        undecided += 1;
                    }
                }
            }
            if let Some(p) = &emit_witness {
                write_text(p, &witnesses)?;
            }
            Ok(if undecided == 0 {
                Outcome::Yes
            } else {
                Outcome::No
            })
        }
    }
}

fn format_average(avg: &AverageReport) -> String {
    format!(
        "rows: {} mean_total_per_n: {:.4} mean_max: {:.4} fraction_max_within_delta: {:.4}",
        avg.rows, avg.mean_total_per_n, avg.mean_max, avg.fraction_max_within_delta
    )
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Yes) => ExitCode::SUCCESS,
        Ok(Outcome::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
