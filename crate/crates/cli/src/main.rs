//! `freedyn`: iterate free group automorphisms, compute limits, detect
//! parabolic orbits, build dynamics graphs and reproduce the canned tables.
//!
//! Exit codes: 0 success or positive verdict, 1 negative verdict,
//! 2 inconclusive, 3 input error.

mod config;
mod explore;
mod repro;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use freedyn::dynamics::{detect_boundary_period, detect_parabolic, growth_classify, iterate, omega_limit, omega_limit_backward};
use freedyn::report::{growth_report_json, limit_result_json, matrix_json, parabolic_report_json};
use freedyn::{
    build_graph_with_bound, classify_twist, twist_reduce, Alphabet, AutoFile, FamilySpec, IterationConfig, LimitResult,
    Verdict,
};
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Engine(#[from] freedyn::Error),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("config {path}: {message}")]
    Config { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
}

/// How a successful run ended; maps onto the exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Positive,
    Negative,
    Inconclusive,
}

impl Outcome {
    fn code(self) -> u8 {
        match self {
            Outcome::Positive => 0,
            Outcome::Negative => 1,
            Outcome::Inconclusive => 2,
        }
    }
}

const INPUT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "freedyn", version, about = "Boundary dynamics of free group automorphisms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Iteration budgets. Unset flags fall back to the file named by
/// `FREEDYN_CONFIG` (TOML), then to the engine defaults.
#[derive(Args, Debug, Clone, Default)]
struct Budget {
    #[arg(long)]
    max_iter: Option<usize>,
    /// Common prefix length required before a limit is declared.
    #[arg(long)]
    prefix: Option<usize>,
    /// Consecutive non-shrinking steps required.
    #[arg(long)]
    window: Option<usize>,
    /// Largest word length an iterate may reach.
    #[arg(long)]
    max_len: Option<usize>,
    /// Largest q tried by the boundary period probe.
    #[arg(long)]
    period_bound: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Print [φ^p(g)]; negative p iterates the inverse.
    Iterate {
        /// Automorphism file, or a catalog spec such as `phi_k:k=1`.
        auto: String,
        word: String,
        #[arg(allow_hyphen_values = true)]
        p: i64,
        #[command(flatten)]
        budget: Budget,
        #[arg(long)]
        json: bool,
    },
    /// ω-limit of an element as JSON.
    Omega {
        auto: String,
        word: String,
        /// Iterate the inverse instead.
        #[arg(long)]
        backward: bool,
        #[command(flatten)]
        budget: Budget,
    },
    /// Parabolic orbit test for a seed; exit 0 iff parabolic.
    Parabolic {
        auto: String,
        seed: String,
        #[command(flatten)]
        budget: Budget,
    },
    /// Dynamics graph as JSON, optionally also as DOT.
    Graph {
        auto: String,
        /// `;`-separated seeds; defaults to the file's seeds, then to all
        /// words of length at most 2.
        #[arg(long)]
        seeds: Option<String>,
        /// Write the DOT rendering here (`-` prints DOT instead of JSON).
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Length bound on `Fix` elements tried for approximate limits.
        #[arg(long, default_value_t = freedyn::graph::DEFAULT_SEARCH_BOUND)]
        bound: usize,
        #[command(flatten)]
        budget: Budget,
    },
    /// Abelianization matrix of φ^p.
    Abelianize {
        auto: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        power: i64,
    },
    /// Growth class of |φ^p(g)| for p up to --p-max.
    Growth {
        auto: String,
        word: String,
        #[arg(long, default_value_t = 40)]
        p_max: usize,
        #[command(flatten)]
        budget: Budget,
    },
    /// Heuristic probe for boundary points of period greater than one.
    Period {
        auto: String,
        seed: String,
        #[command(flatten)]
        budget: Budget,
    },
    /// Case label of i_{a^k} ∘ δ^n on F_2.
    TwistClassify {
        #[arg(allow_hyphen_values = true)]
        n: i64,
        #[arg(allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        json: bool,
    },
    /// Bounded search for w with w^-1 u δ^n(w) = a^k.
    TwistReduce {
        u: String,
        #[arg(allow_hyphen_values = true)]
        n: i64,
        #[arg(long, default_value_t = 6)]
        bound: usize,
        #[arg(long)]
        json: bool,
    },
    /// Random search for parabolic orbits of automorphisms of low rank.
    Explore {
        #[arg(long, default_value_t = 3)]
        rank: usize,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        /// Number of elementary Nielsen moves per sample.
        #[arg(long, default_value_t = 6)]
        moves: usize,
        #[arg(long, default_value_t = 1)]
        rng_seed: u64,
        #[command(flatten)]
        budget: Budget,
    },
    /// Rerun a canned reproduction and compare it with its golden file.
    Repro {
        /// One of the ids printed by `--list`, or `all`.
        id: Option<String>,
        #[arg(long)]
        list: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(outcome) => ExitCode::from(outcome.code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}

/// A file path when one exists, otherwise a catalog spec.
pub fn load_auto(source: &str) -> Result<AutoFile, CliError> {
    let path = Path::new(source);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        return Ok(AutoFile::parse(&text)?);
    }
    Ok(FamilySpec::parse(source)?.build()?.into())
}

fn budget_config(b: &Budget) -> Result<IterationConfig, CliError> {
    let mut cfg = config::from_env()?;
    let overrides = [
        (&mut cfg.max_iterations, b.max_iter),
        (&mut cfg.target_prefix, b.prefix),
        (&mut cfg.stability_window, b.window),
        (&mut cfg.max_word_length, b.max_len),
        (&mut cfg.period_bound, b.period_bound),
    ];
    for (field, value) in overrides {
        if let Some(v) = value {
            *field = v;
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Writes to stdout; a closed pipe ends output quietly.
pub fn emit(text: &str) {
    let mut out = io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: cannot write output: {e}");
        }
    }
}

fn print_json(v: &Value) {
    emit(&(serde_json::to_string_pretty(v).expect("serializable") + "\n"));
}

fn limit_outcome(r: &LimitResult) -> Outcome {
    match r {
        LimitResult::NotConverged { .. } => Outcome::Inconclusive,
        _ => Outcome::Positive,
    }
}

fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Iterate {
            auto,
            word,
            p,
            budget,
            json,
        } => {
            let f = load_auto(&auto)?;
            let a = f.alphabet();
            let cfg = budget_config(&budget)?;
            let w = iterate(&f.pair, &a.parse(&word)?, p, &cfg)?;
            if json {
                print_json(&json!({"p": p, "word": a.format(&w), "length": w.len()}));
            } else {
                emit(&format!("{}\n", a.format(&w)));
            }
            Ok(Outcome::Positive)
        }
        Command::Omega {
            auto,
            word,
            backward,
            budget,
        } => {
            let f = load_auto(&auto)?;
            let a = f.alphabet();
            let cfg = budget_config(&budget)?;
            let g = a.parse(&word)?;
            let r = if backward {
                omega_limit_backward(&f.pair, &g, &cfg)?
            } else {
                omega_limit(&f.pair, &g, &cfg)?
            };
            print_json(&limit_result_json(&r, a));
            Ok(limit_outcome(&r))
        }
        Command::Parabolic { auto, seed, budget } => {
            let f = load_auto(&auto)?;
            let a = f.alphabet();
            let cfg = budget_config(&budget)?;
            let report = detect_parabolic(&f.pair, &a.parse(&seed)?, &cfg)?;
            print_json(&parabolic_report_json(&report, a));
            Ok(match report.verdict {
                Verdict::Parabolic(_) => Outcome::Positive,
                Verdict::NotParabolic(_) => Outcome::Negative,
                Verdict::Inconclusive { .. } => Outcome::Inconclusive,
            })
        }
        Command::Graph {
            auto,
            seeds,
            dot,
            bound,
            budget,
        } => {
            let f = load_auto(&auto)?;
            let a = f.alphabet();
            let cfg = budget_config(&budget)?;
            let seeds = match seeds {
                Some(list) => freedyn::autofile::parse_list(a, &list)?,
                None if !f.seeds.is_empty() => f.seeds.clone(),
                None => freedyn::default_seeds(a.rank()),
            };
            let g = build_graph_with_bound(&f.pair, &f.fix_gens, &seeds, &cfg, bound)?;
            match dot {
                Some(path) if path.as_os_str() == "-" => emit(&g.to_dot()),
                Some(path) => {
                    fs::write(&path, g.to_dot()).map_err(|source| CliError::Io { path, source })?;
                    print_json(&g.to_json());
                }
                None => print_json(&g.to_json()),
            }
            Ok(if g.diagnostics.is_empty() {
                Outcome::Positive
            } else {
                Outcome::Inconclusive
            })
        }
        Command::Abelianize { auto, power } => {
            let f = load_auto(&auto)?;
            let m = f.pair.power(power).abelianize();
            let mut v = matrix_json(&m);
            v["power"] = json!(power);
            v["determinant"] = json!(m.determinant()?);
            print_json(&v);
            Ok(Outcome::Positive)
        }
        Command::Growth {
            auto,
            word,
            p_max,
            budget,
        } => {
            let f = load_auto(&auto)?;
            let cfg = budget_config(&budget)?;
            let r = growth_classify(&f.pair, &f.alphabet().parse(&word)?, p_max, &cfg)?;
            print_json(&growth_report_json(&r));
            Ok(Outcome::Positive)
        }
        Command::Period { auto, seed, budget } => {
            let f = load_auto(&auto)?;
            let cfg = budget_config(&budget)?;
            let found = detect_boundary_period(&f.pair, &f.alphabet().parse(&seed)?, cfg.period_bound, &cfg)?;
            print_json(&json!({"seed": seed, "bound": cfg.period_bound, "period": found}));
            Ok(if found.is_some() { Outcome::Positive } else { Outcome::Negative })
        }
        Command::TwistClassify { n, k, json } => {
            let case = classify_twist(n, k)?;
            if json {
                print_json(&json!({"n": n, "k": k, "case": case.to_string()}));
            } else {
                emit(&format!("{case}\n"));
            }
            Ok(Outcome::Positive)
        }
        Command::TwistReduce { u, n, bound, json } => {
            let a = Alphabet::standard(2)?;
            let found = twist_reduce(&a.parse(&u)?, n, bound)?;
            match (&found, json) {
                (Some((w, k)), true) => print_json(&json!({"status": "elliptic", "w": a.format(w), "k": k})),
                (Some((w, k)), false) => emit(&format!("w = {}\nk = {k}\n", a.format(w))),
                (None, true) => print_json(&json!({"status": "unresolved", "bound": bound})),
                (None, false) => emit(&format!("unresolved within bound {bound}\n")),
            }
            Ok(if found.is_some() {
                Outcome::Positive
            } else {
                Outcome::Inconclusive
            })
        }
        Command::Explore {
            rank,
            samples,
            moves,
            rng_seed,
            budget,
        } => {
            let cfg = budget_config(&budget)?;
            let summary = explore::run(rank, samples, moves, rng_seed, &cfg)?;
            print_json(&summary.to_json());
            Ok(if summary.parabolic > 0 {
                Outcome::Positive
            } else if summary.inconclusive > 0 {
                Outcome::Inconclusive
            } else {
                Outcome::Negative
            })
        }
        Command::Repro { id, list } => {
            if list || id.is_none() {
                for r in repro::CATALOG {
                    emit(&format!("{:<8} {}\n", r.id, r.title));
                }
                return Ok(Outcome::Positive);
            }
            repro::run(id.as_deref().unwrap_or_default())
        }
    }
}
