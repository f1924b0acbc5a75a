use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use indreg::asymptotics::{
    bound_pki, estimate_count, estimate_pk, log_ratio_estimate, prob_induced, RatioSpec,
};
use indreg::enumeration::{
    count_by_degree_sequence, count_constrained, exact_pk, exact_pki, sample_regular_exact,
    ConstrainedProfile,
};
use indreg::experiments::{
    moment_csv, run_moment_sweep, run_sweep, sweep_csv, ExperimentConfig, ExperimentKind,
    SearchMode,
};
use indreg::graph::{parse_graph6, sample_gnp, write_graph6};
use indreg::moments::{upper_bound_tail, variance_bound_profile, PkiMode};
use indreg::search::{
    max_induced_regular_exact, max_induced_regular_heuristic, DEFAULT_ITERATION_BUDGET,
    DEFAULT_NODE_BUDGET,
};
use indreg::{DegreeSequence, Error, Seed};

#[derive(Parser)]
#[command(name = "indreg", version, about = "Induced regular subgraphs of G(n, 1/2): exact counts, estimates, search and sweeps")]
struct Cli {
    /// Print results as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of labeled graphs with a degree sequence.
    CountDegseq {
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
    },
    /// Number of (k-1)/2-regular extensions of a core with degrees d.
    CountConstrained {
        #[arg(long)]
        k: usize,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        d: Vec<u32>,
    },
    /// Probability that G(k, 1/2) is floor((k-1)/2)-regular.
    Pk {
        #[arg(long)]
        k: usize,
        /// Exact rational instead of the estimate.
        #[arg(long)]
        exact: bool,
    },
    /// p_(k,i): exact maximum, or the two closed-form bounds.
    Pki {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        exact: bool,
    },
    /// Closed-form estimate of the number of graphs with a degree sequence.
    Estimate {
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
    },
    /// Estimate of N(d) / N(d - s).
    Ratio {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        i: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        s: Vec<i64>,
    },
    /// Estimate of P[G[0..i] = H] for a uniform regular graph on k vertices.
    ProbInduced {
        #[arg(long)]
        k: usize,
        /// Degree sequence of H.
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
    },
    /// First moment, threshold and variance profile.
    Moments {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value_t = PkiArg::LemmaBound)]
        mode: PkiArg,
        /// Per-row CSV instead of the summary.
        #[arg(long)]
        csv: bool,
    },
    /// Union bound over all k >= k0.
    Tail {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k0: u64,
    },
    /// Largest induced regular subgraph.
    Search {
        #[command(flatten)]
        input: GraphInput,
        /// Seed for --gnp.
        #[arg(long, conflicts_with = "graph6")]
        seed: Option<u64>,
        #[arg(long)]
        heuristic: bool,
        /// Node budget (exact) or iteration budget (heuristic).
        #[arg(long)]
        budget: Option<u64>,
        /// Heuristic seed.
        #[arg(long, default_value_t = 0)]
        search_seed: u64,
    },
    /// Exact-uniform floor((k-1)/2)-regular graphs on k vertices, as graph6.
    Sample {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Seeded experiment from a JSON config or flags.
    Sweep(SweepArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphInput {
    #[arg(long)]
    graph6: Option<String>,
    /// Sample G(n, 1/2) with --seed.
    #[arg(long, requires = "seed")]
    gnp: Option<usize>,
}

#[derive(Args)]
struct SweepArgs {
    /// JSON config; the other flags are ignored when given.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    n: Vec<u64>,
    #[arg(long, default_value_t = 1)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = SearchArg::Auto)]
    search: SearchArg,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Print the effective config as JSON and exit.
    #[arg(long)]
    print_config: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum PkiArg {
    Exact,
    LemmaBound,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchArg {
    Auto,
    Exact,
    Heuristic,
}

struct Output {
    text: String,
    json: Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            let mut text = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("json")
            } else {
                out.text
            };
            if !text.ends_with('\n') {
                text.push('\n');
            }
            // A closed pipe (`| head`) is not an error.
            match std::io::stdout().lock().write_all(text.as_bytes()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::Config { .. }) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("result serialises")
}

fn run(command: Command) -> Result<Output, Error> {
    Ok(match command {
        Command::CountDegseq { degrees } => {
            let c = count_by_degree_sequence(&DegreeSequence::new(degrees.clone()));
            Output {
                text: c.to_string(),
                json: json!({ "degrees": degrees, "count": c.to_string() }),
            }
        }
        Command::CountConstrained { k, d } => {
            let profile = ConstrainedProfile::new(k, d)?;
            let c = count_constrained(&profile);
            Output {
                text: c.to_string(),
                json: json!({ "k": k, "core": profile.core(), "count": c.to_string() }),
            }
        }
        Command::Pk { k, exact: true } => {
            let p = exact_pk(k)?;
            Output {
                text: format!("{p}\n{:?}", p.to_f64()),
                json: json!({ "k": k, "exact": to_json(&p) }),
            }
        }
        Command::Pk { k, exact: false } => {
            let e = estimate_pk(k)?;
            Output {
                text: format!("{:?}\nln {:?}", e.value(), e.log_value),
                json: json!({ "k": k, "estimate": to_json(&e) }),
            }
        }
        Command::Pki { k, i, exact: true } => {
            let r = exact_pki(k, i)?;
            Output {
                text: format!(
                    "{}\n{:?}\nargmax {:?}",
                    r.probability,
                    r.probability.to_f64(),
                    r.argmax
                ),
                json: to_json(&r),
            }
        }
        Command::Pki { k, i, exact: false } => {
            let b = bound_pki(k, i)?;
            Output {
                text: format!("ln bound A {:?}\nln bound B {:?}", b.log_a, b.log_b),
                json: json!({ "k": k, "i": i, "bounds": to_json(&b) }),
            }
        }
        Command::Estimate { degrees } => {
            let e = estimate_count(&DegreeSequence::new(degrees))?;
            Output {
                text: format!("{:?}\nregime {:?}", e.value(), e.regime),
                json: to_json(&e),
            }
        }
        Command::Ratio { k, i, d, s } => {
            if d.len() != i {
                return Err(Error::Config {
                    field: "d".into(),
                    reason: format!("expected {i} entries, got {}", d.len()),
                });
            }
            let spec = RatioSpec::new(k, d, s)?;
            let ln = log_ratio_estimate(&spec);
            Output {
                text: format!("{:?}", ln.exp()),
                json: json!({ "spec": to_json(&spec), "ratio": ln.exp(), "log_ratio": ln }),
            }
        }
        Command::ProbInduced { k, degrees } => {
            let e = prob_induced(k, &degrees)?;
            Output {
                text: format!("{:?}", e.value()),
                json: to_json(&e),
            }
        }
        Command::Moments { n, k, mode, csv } => {
            let mode = match mode {
                PkiArg::Exact => PkiMode::Exact,
                PkiArg::LemmaBound => PkiMode::LemmaBound,
            };
            let report = variance_bound_profile(n, k, mode)?;
            let text = if csv {
                report.to_csv()
            } else {
                let t = report.t.map_or("none (outside the regime)".to_string(), |t| t.to_string());
                format!(
                    "ln E[X] {:?}\nt {t}\nln variance ratio bound {:?}\nln sum g {:?}\nconstant-sensitive rows {}",
                    report.log_ex,
                    report.log_variance_ratio_bound,
                    report.log_sum_g,
                    report.rows.iter().filter(|r| r.constant_sensitive).count()
                )
            };
            Output {
                text,
                json: to_json(&report),
            }
        }
        Command::Tail { n, k0 } => {
            let v = upper_bound_tail(n, k0)?;
            Output {
                text: format!("{v:?}"),
                json: json!({ "n": n, "k0": k0, "log_tail": v }),
            }
        }
        Command::Search {
            input,
            seed,
            heuristic,
            budget,
            search_seed,
        } => {
            let g = match (input.graph6, input.gnp) {
                (Some(text), _) => parse_graph6(&text)?,
                (None, Some(n)) => sample_gnp(n, 0.5, Seed(seed.unwrap_or(0)))?,
                (None, None) => unreachable!("clap requires one input"),
            };
            let r = if heuristic {
                max_induced_regular_heuristic(
                    &g,
                    Seed(search_seed),
                    budget.unwrap_or(DEFAULT_ITERATION_BUDGET),
                )
            } else {
                max_induced_regular_exact(&g, budget.unwrap_or(DEFAULT_NODE_BUDGET))
            };
            Output {
                text: format!(
                    "size {}\nr {}\nsubset {:?}\noptimal {}",
                    r.size, r.r, r.subset, r.optimal
                ),
                json: to_json(&r),
            }
        }
        Command::Sample { k, seed, count } => {
            let gs = sample_regular_exact(k, Seed(seed), count)?;
            let lines: Vec<String> = gs.iter().map(write_graph6).collect();
            Output {
                text: lines.join("\n"),
                json: json!({ "k": k, "graph6": lines }),
            }
        }
        Command::Sweep(args) => sweep(args)?,
    })
}

fn sweep(args: SweepArgs) -> Result<Output, Error> {
    let config = match &args.config {
        Some(path) => ExperimentConfig::from_json(&std::fs::read_to_string(path)?)?,
        None => {
            let mut cfg = ExperimentConfig::sweep(args.n.clone(), args.trials, Seed(args.seed));
            cfg.search = match args.search {
                SearchArg::Auto => SearchMode::Auto,
                SearchArg::Exact => SearchMode::Exact,
                SearchArg::Heuristic => SearchMode::Heuristic,
            };
            cfg.output = args.output.as_ref().map(|p| p.display().to_string());
            cfg.validate()?;
            cfg
        }
    };
    if args.print_config {
        return Ok(Output {
            text: config.to_json(),
            json: to_json(&config),
        });
    }
    let (csv, json) = match config.command {
        ExperimentKind::Sweep => {
            let rows = run_sweep(&config)?;
            (sweep_csv(&rows), to_json(&rows))
        }
        ExperimentKind::Moments => {
            let rows = run_moment_sweep(&config)?;
            (moment_csv(&rows), to_json(&rows))
        }
    };
    match &config.output {
        Some(path) => {
            std::fs::write(path, &csv)?;
            Ok(Output {
                text: format!("wrote {} rows to {path}", csv.lines().count() - 1),
                json: json!({ "output": path, "rows": json }),
            })
        }
        None => Ok(Output { text: csv, json }),
    }
}
