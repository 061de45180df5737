//! Parallel, reproducible Monte Carlo runner.

use std::time::Instant;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::{
    build_tree_gadget, build_unit_weight_knapsack, is_gadget_tree, pareto_spanning_trees,
    verify_knapsack_embedding, TreeGadgetInstance, DEFAULT_CLAIM_MAX_M,
};
use crate::dominance::evaluate_unchecked;
use crate::enumeration::{count_pareto, Budget, FeasibleSet};
use crate::error::{Error, Result};
use crate::geometry::{
    binomial, hamming_ball, hull_vertices, lower_bound_basic, lower_bound_restricted,
    origin_in_hull, random_projection_vertex_count, random_subset, rational_to_f64,
    wendel_probability, zonotope_vertex_count_generic,
};
use crate::model::{DominanceOrder, Solution};
use crate::sampling::{MatrixDistribution, RandomStream};

use super::config::{ExperimentConfig, Family, ProjectionSet};
use super::stats::{summarize, SummaryStats};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "PARETO_LAB_THREADS";

/// Path element under which projection subsets are drawn, disjoint from
/// trial indices.
pub const SUBSET_STREAM: u64 = u64::MAX;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub family: Family,
    pub n: usize,
    pub d: usize,
    pub k: Option<usize>,
    pub seed: u64,
    /// Derivation path of the trial stream below `seed`.
    pub stream_path: Vec<u64>,
    pub statistic: f64,
    pub elapsed_ms: f64,
}

/// A per-trial structural check that did not hold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckFailure {
    pub trial: u64,
    pub message: String,
}

/// The first trial that returned an error; records stop before it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialError {
    pub trial: u64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub config: ExperimentConfig,
    pub records: Vec<TrialRecord>,
    /// `None` only when the first trial failed.
    pub summary: Option<SummaryStats>,
    pub check_failures: Vec<CheckFailure>,
    pub error: Option<TrialError>,
}

impl RunOutput {
    pub fn is_complete(&self) -> bool {
        self.error.is_none()
    }
}

/// Per-run state shared by all trials.
enum Prepared {
    Cube { dist: MatrixDistribution, fs: FeasibleSet, order: DominanceOrder },
    TreeGadget { gadget: TreeGadgetInstance, check_claim: bool },
    Knapsack { k: usize, verify: bool },
    Wendel { dist: MatrixDistribution },
    Zonotope { dist: MatrixDistribution, solutions: Vec<Solution>, expected: f64 },
    Projection { fs: FeasibleSet },
}

struct TrialOutcome {
    statistic: f64,
    failure: Option<String>,
}

fn big_to_f64(v: &BigUint) -> f64 {
    v.to_f64().unwrap_or(f64::INFINITY)
}

/// Expected-value target of the family, if any.
pub fn bound_target(config: &ExperimentConfig) -> Result<Option<f64>> {
    let (n, d) = (config.n as u64, config.d as u64);
    Ok(match config.family {
        Family::BasicCube | Family::SignCube => Some(rational_to_f64(&lower_bound_basic(n, d)?)),
        Family::Restricted => {
            let card = binomial(n, config.k_or_half() as u64);
            Some(rational_to_f64(&lower_bound_restricted(n, d, &card)?))
        }
        Family::TreeGadget => Some(build_tree_gadget(config.n, config.d)?.bound_target()),
        Family::Knapsack => {
            let card = binomial(n, n / 2);
            Some(rational_to_f64(&lower_bound_restricted(n, d, &card)?))
        }
        Family::Wendel => Some(rational_to_f64(&wendel_probability(n, d)?)),
        Family::Zonotope => Some(big_to_f64(&zonotope_vertex_count_generic(n, d)?)),
        Family::Projection => None,
    })
}

fn prepare(config: &ExperimentConfig) -> Result<Prepared> {
    let (n, d) = (config.n, config.d);
    let iid = || MatrixDistribution::iid(d, n, config.distribution()?);
    Ok(match config.family {
        Family::BasicCube | Family::SignCube | Family::Restricted => {
            let fs = match config.family {
                Family::BasicCube => FeasibleSet::FullCube(n),
                Family::SignCube => FeasibleSet::SignCube(n),
                _ => FeasibleSet::FixedCardinality { n, k: config.k_or_half() },
            };
            Prepared::Cube { dist: iid()?, fs, order: DominanceOrder::maximize_all(d) }
        }
        Family::TreeGadget => Prepared::TreeGadget {
            gadget: build_tree_gadget(n, d)?,
            check_claim: n <= DEFAULT_CLAIM_MAX_M,
        },
        Family::Knapsack => Prepared::Knapsack { k: n / 2, verify: config.verify_embedding },
        Family::Wendel => Prepared::Wendel { dist: iid()? },
        Family::Zonotope => Prepared::Zonotope {
            dist: iid()?,
            solutions: FeasibleSet::FullCube(n).enumerate(&Budget::default())?,
            expected: big_to_f64(&zonotope_vertex_count_generic(n as u64, d as u64)?),
        },
        Family::Projection => {
            let set = config.set.expect("validated");
            let fs = match set {
                ProjectionSet::Cube => FeasibleSet::FullCube(n),
                ProjectionSet::HammingBall => hamming_ball(
                    n,
                    &Solution::zero_one(vec![false; n]),
                    config.k.expect("validated"),
                )?,
                ProjectionSet::RandomSubset => random_subset(
                    n,
                    config.k.expect("validated"),
                    &RandomStream::with_path(config.seed, vec![SUBSET_STREAM, config.subset]),
                )?,
            };
            Prepared::Projection { fs }
        }
    })
}

fn run_trial(config: &ExperimentConfig, prep: &Prepared, stream: &RandomStream) -> Result<TrialOutcome> {
    let ok = |statistic: f64| Ok(TrialOutcome { statistic, failure: None });
    let budget = Budget::default();
    match prep {
        Prepared::Cube { dist, fs, order } => {
            ok(count_pareto(&dist.sample(stream), fs, order, &budget)? as f64)
        }
        Prepared::TreeGadget { gadget, check_claim } => {
            let v = gadget.sample(stream);
            let set = pareto_spanning_trees(&v, gadget.m(), gadget.d())?;
            let escaped = if *check_claim {
                set.solutions().iter().find(|s| !is_gadget_tree(gadget.m(), s.bits()))
            } else {
                None
            };
            Ok(TrialOutcome {
                statistic: set.count() as f64,
                failure: escaped.map(|s| format!("Pareto-optimal tree {s} is not a gadget tree")),
            })
        }
        Prepared::Knapsack { k, verify } => {
            let inst = build_unit_weight_knapsack(config.n, config.d, stream)?;
            let count = count_pareto(
                &inst.objective_matrix(),
                &FeasibleSet::FullCube(config.n),
                &inst.order(),
                &budget,
            )?;
            let failure = if *verify && !verify_knapsack_embedding(&inst, *k)? {
                Some(format!("embedding of {k}-item optima failed"))
            } else {
                None
            };
            Ok(TrialOutcome { statistic: count as f64, failure })
        }
        Prepared::Wendel { dist } => {
            let points = dist.sample(stream).columns();
            ok(if origin_in_hull(&points)? { 0.0 } else { 1.0 })
        }
        Prepared::Zonotope { dist, solutions, expected } => {
            let v = dist.sample(stream);
            let points: Vec<Vec<f64>> = solutions.iter().map(|x| evaluate_unchecked(&v, x)).collect();
            let count = hull_vertices(&points)?.len() as f64;
            Ok(TrialOutcome {
                statistic: count,
                failure: (count != *expected)
                    .then(|| format!("{count} hull vertices, expected {expected}")),
            })
        }
        Prepared::Projection { fs } => {
            ok(random_projection_vertex_count(fs, config.d, stream, &budget)? as f64)
        }
    }
}

/// Worker count from [`THREADS_ENV`], if set.
pub fn thread_cap() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(k) if k >= 1 => Ok(Some(k)),
            _ => Err(Error::InvalidInput(format!(
                "{THREADS_ENV} must be a positive integer, got {v:?}"
            ))),
        },
    }
}

/// Runs every trial of `config`.
///
/// Trial `t` draws its instance from the stream `(seed, [t])`, so records
/// do not depend on the number of worker threads. A failing trial truncates
/// the records before it and is reported in [`RunOutput::error`].
pub fn run_experiment(config: &ExperimentConfig) -> Result<RunOutput> {
    run_experiment_with_threads(config, thread_cap()?)
}

pub fn run_experiment_with_threads(config: &ExperimentConfig, threads: Option<usize>) -> Result<RunOutput> {
    config.validate()?;
    let target = bound_target(config)?;
    let prep = prepare(config)?;
    let k = match config.family {
        Family::Restricted | Family::Knapsack => Some(config.k_or_half()),
        _ => config.k,
    };

    let one = |t: u64| {
        let stream = RandomStream::with_path(config.seed, vec![t]);
        let start = Instant::now();
        let outcome = run_trial(config, &prep, &stream);
        let elapsed_ms = if config.timing { start.elapsed().as_secs_f64() * 1e3 } else { 0.0 };
        outcome.map(|o| {
            let record = TrialRecord {
                trial: t,
                family: config.family,
                n: config.n,
                d: config.d,
                k,
                seed: config.seed,
                stream_path: stream.path().to_vec(),
                statistic: o.statistic,
                elapsed_ms,
            };
            (record, o.failure)
        })
    };
    let results: Vec<Result<(TrialRecord, Option<String>)>> = match threads {
        Some(cap) => rayon::ThreadPoolBuilder::new()
            .num_threads(cap)
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?
            .install(|| (0..config.trials).into_par_iter().map(one).collect()),
        None => (0..config.trials).into_par_iter().map(one).collect(),
    };

    collect(config, results, target)
}

fn collect(
    config: &ExperimentConfig,
    results: Vec<Result<(TrialRecord, Option<String>)>>,
    target: Option<f64>,
) -> Result<RunOutput> {
    let mut records = Vec::with_capacity(results.len());
    let mut check_failures = Vec::new();
    let mut error = None;
    for (t, r) in results.into_iter().enumerate() {
        match r {
            Ok((record, failure)) => {
                if let Some(message) = failure {
                    check_failures.push(CheckFailure { trial: t as u64, message });
                }
                records.push(record);
            }
            Err(e) => {
                error = Some(TrialError { trial: t as u64, message: e.to_string() });
                break;
            }
        }
    }
    let values: Vec<f64> = records.iter().map(|r| r.statistic).collect();
    let summary = if values.is_empty() { None } else { Some(summarize(&values, target)?) };
    Ok(RunOutput { config: config.clone(), records, summary, check_failures, error })
}
