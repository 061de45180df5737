use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use pareto_lab::constructions::br_parameters;
use pareto_lab::geometry::{
    lower_bound_basic, lower_bound_restricted, lower_bound_simple, rational_to_f64,
    wendel_probability, zonotope_vertex_count_generic,
};
use pareto_lab::harness::{
    export, run_experiment, ExperimentConfig, Family, Format, ProjectionSet, RunOutput, Verdict,
};

#[derive(Parser)]
#[command(name = "pareto-lab", version, about = "Pareto-optima experiments for random 0-1 programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Output {
    /// Write trial records to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: Format,
    /// Record wall-clock time per trial (output is then not reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form counts and lower bounds.
    Bounds {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u64,
        /// Feasible-set size for the restricted bound.
        #[arg(long)]
        s_card: Option<BigUint>,
    },
    /// Monte Carlo estimate of the origin-avoidance probability.
    Wendel {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Point distribution (must be symmetric about 0).
        #[arg(long)]
        dist: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Hull vertex counts of zonotope point sets.
    Zonotope {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Any experiment family, from flags or a JSON config file.
    Experiment {
        #[arg(long, required_unless_present = "config")]
        family: Option<Family>,
        #[arg(long, required_unless_present = "config")]
        n: Option<usize>,
        #[arg(long, required_unless_present = "config")]
        d: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        dist: Option<String>,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// JSON file with the experiment configuration; other flags are ignored.
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Pareto-optimal spanning trees of the gadget distribution.
    TreeGadget {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Unit-weight knapsack Pareto counts.
    Knapsack {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        /// Also check that restricted optima stay optimal.
        #[arg(long)]
        verify_embedding: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Object accounting of the cloning-step construction.
    BrParams {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        phi: f64,
    },
    /// Vertex counts of random projections of 0/1 point sets.
    Projection {
        #[arg(long)]
        set: ProjectionSet,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        size: Option<usize>,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        /// Number of random subsets compared (randomsubset only).
        #[arg(long, default_value_t = 20)]
        subsets: u64,
        #[command(flatten)]
        output: Output,
    },
}

/// Computed, PASS or INCONCLUSIVE.
const OK: u8 = 0;
const FAILED: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(command: Command) -> anyhow::Result<u8> {
    match command {
        Command::Bounds { n, d, s_card } => bounds(n, d, s_card),
        Command::Wendel { n, d, trials, seed, dist, output } => {
            let mut cfg = ExperimentConfig::new(Family::Wendel, n, d, trials, seed);
            cfg.dist = dist;
            let out = execute(cfg, &output)?;
            let exact = rational_to_f64(&wendel_probability(n as u64, d as u64)?);
            let summary = out.summary.as_ref().context("no completed trials")?;
            let agrees = summary.within(exact, 3.0);
            println!("exact: {}", wendel_probability(n as u64, d as u64)?);
            println!(
                "two-sided check |mean - exact| <= 3 SE: {}",
                if agrees { "PASS" } else { "FAIL" }
            );
            Ok(if agrees && out.is_complete() { OK } else { FAILED })
        }
        Command::Zonotope { n, d, trials, seed, output } => {
            let cfg = ExperimentConfig::new(Family::Zonotope, n, d, trials, seed);
            let out = execute(cfg, &output)?;
            println!("exact vertex count: {}", zonotope_vertex_count_generic(n as u64, d as u64)?);
            Ok(exit_code(&out))
        }
        Command::Experiment { family, n, d, k, dist, trials, seed, config, output } => {
            let cfg = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    ExperimentConfig::from_json(&text)?
                }
                None => {
                    let mut cfg = ExperimentConfig::new(
                        family.expect("required"),
                        n.expect("required"),
                        d.expect("required"),
                        trials,
                        seed,
                    );
                    cfg.k = k;
                    cfg.dist = dist;
                    cfg
                }
            };
            let out = execute(cfg, &output)?;
            Ok(exit_code(&out))
        }
        Command::TreeGadget { m, d, trials, seed, output } => {
            let out = execute(ExperimentConfig::new(Family::TreeGadget, m, d, trials, seed), &output)?;
            Ok(exit_code(&out))
        }
        Command::Knapsack { n, d, trials, seed, verify_embedding, output } => {
            let mut cfg = ExperimentConfig::new(Family::Knapsack, n, d, trials, seed);
            cfg.verify_embedding = verify_embedding;
            let out = execute(cfg, &output)?;
            Ok(exit_code(&out))
        }
        Command::BrParams { n, d, phi } => {
            let p = br_parameters(n, d, phi)?;
            println!("{}", serde_json::to_string_pretty(&p)?);
            Ok(OK)
        }
        Command::Projection { set, n, d, size, trials, seed, subsets, output } => {
            let runs = if set == ProjectionSet::RandomSubset { subsets } else { 1 };
            if runs == 0 {
                bail!("--subsets must be at least 1");
            }
            let mut code = OK;
            let mut means = Vec::new();
            for subset in 0..runs {
                let mut cfg = ExperimentConfig::new(Family::Projection, n, d, trials, seed);
                cfg.set = Some(set);
                cfg.k = size;
                cfg.subset = subset;
                let mut output = output.clone();
                if runs > 1 {
                    output.out = output.out.map(|p| suffixed(&p, subset));
                    println!("subset {subset}:");
                }
                let out = execute(cfg, &output)?;
                code = code.max(exit_code(&out));
                means.extend(out.summary.map(|s| s.mean));
            }
            if runs > 1 {
                let avg = means.iter().sum::<f64>() / means.len() as f64;
                println!("mean over {} subsets: {avg}", means.len());
            }
            Ok(code)
        }
    }
}

fn bounds(n: u64, d: u64, s_card: Option<BigUint>) -> anyhow::Result<u8> {
    let basic = lower_bound_basic(n, d)?;
    println!("wendel_probability: {} ({})", wendel_probability(n, d)?, rational_to_f64(&wendel_probability(n, d)?));
    println!("zonotope_vertex_count: {}", zonotope_vertex_count_generic(n, d)?);
    println!("lower_bound_basic: {basic} ({})", rational_to_f64(&basic));
    match lower_bound_simple(n, d) {
        Ok(v) => println!("lower_bound_simple: {v}"),
        Err(e) => println!("lower_bound_simple: n/a ({e})"),
    }
    if let Some(card) = s_card {
        let r = lower_bound_restricted(n, d, &card)?;
        println!("lower_bound_restricted: {r} ({})", rational_to_f64(&r));
    }
    Ok(OK)
}

/// `out.csv` -> `out-subset3.csv`.
fn suffixed(path: &Path, subset: u64) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}-subset{subset}.{}", ext.to_string_lossy()),
        None => format!("{stem}-subset{subset}"),
    };
    path.with_file_name(name)
}

fn execute(mut cfg: ExperimentConfig, output: &Output) -> anyhow::Result<RunOutput> {
    if output.out.is_some() {
        cfg.out = output.out.clone();
        cfg.format = output.format;
    }
    cfg.timing |= output.timing;
    let out = run_experiment(&cfg)?;
    if let Some(path) = &cfg.out {
        export(&out, path, cfg.format)?;
    }
    report(&out);
    if let Some(e) = &out.error {
        bail!("trial {} failed: {}", e.trial, e.message);
    }
    Ok(out)
}

fn report(out: &RunOutput) {
    let cfg = &out.config;
    println!(
        "family: {}  n: {}  d: {}  trials: {}  seed: {}",
        cfg.family, cfg.n, cfg.d, cfg.trials, cfg.seed
    );
    if let Some(s) = &out.summary {
        println!("mean: {}  sd: {}  se: {}", s.mean, s.sample_stddev, s.standard_error);
        println!("ci95: [{}, {}]", s.ci95_lo, s.ci95_hi);
        match s.bound_target {
            Some(t) => println!("bound_target: {t}"),
            None => println!("bound_target: none"),
        }
        println!("verdict: {}", s.verdict);
    }
    for f in &out.check_failures {
        println!("check failed in trial {}: {}", f.trial, f.message);
    }
}

fn exit_code(out: &RunOutput) -> u8 {
    let failed = out.summary.as_ref().is_some_and(|s| s.verdict == Verdict::Fail)
        || !out.check_failures.is_empty();
    if failed {
        FAILED
    } else {
        OK
    }
}
