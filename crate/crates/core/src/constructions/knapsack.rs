//! Multiobjective knapsack instances with unit weights.

use crate::dominance::evaluate_unchecked;
use crate::enumeration::{is_pareto_optimal, pareto_set, Budget, FeasibleSet};
use crate::error::{Error, Result};
use crate::model::{DominanceOrder, ObjectiveMatrix, Solution};
use crate::sampling::{DistributionSpec, MatrixDistribution, RandomStream};

/// Largest item count for which [`verify_knapsack_embedding`] enumerates
/// the full cube.
pub const DEFAULT_EMBEDDING_MAX_N: usize = 20;

/// `d` profit objectives to maximize and one weight to minimize.
#[derive(Debug, Clone, PartialEq)]
pub struct KnapsackInstance {
    profits: ObjectiveMatrix,
    weights: Vec<f64>,
}

impl KnapsackInstance {
    pub fn new(profits: ObjectiveMatrix, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != profits.n() {
            return Err(Error::DimensionMismatch {
                context: "knapsack weights",
                expected: profits.n(),
                found: weights.len(),
            });
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidInput("weights must be finite and non-negative".into()));
        }
        Ok(Self { profits, weights })
    }

    pub fn n(&self) -> usize {
        self.profits.n()
    }

    pub fn d(&self) -> usize {
        self.profits.d()
    }

    pub fn profits(&self) -> &ObjectiveMatrix {
        &self.profits
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `(Maximize^d, Minimize)` over `(profits, weight)`.
    pub fn order(&self) -> DominanceOrder {
        DominanceOrder::knapsack(self.d())
    }

    /// Profit rows followed by the weight row.
    pub fn objective_matrix(&self) -> ObjectiveMatrix {
        let mut rows: Vec<Vec<f64>> = self.profits.rows().map(<[f64]>::to_vec).collect();
        rows.push(self.weights.clone());
        ObjectiveMatrix::from_rows(&rows).expect("validated on construction")
    }

    /// Profits and weight of `x`.
    pub fn evaluate(&self, x: &Solution) -> Vec<f64> {
        evaluate_unchecked(&self.objective_matrix(), x)
    }
}

/// Unit weights and profits drawn uniformly from `[0, 1]`.
pub fn build_unit_weight_knapsack(n: usize, d: usize, stream: &RandomStream) -> Result<KnapsackInstance> {
    if n < 2 || d < 1 {
        return Err(Error::Precondition(format!(
            "knapsack family needs n >= 2 and d >= 1, got n={n}, d={d}"
        )));
    }
    let spec = DistributionSpec::uniform(0.0, 1.0)?;
    let profits = MatrixDistribution::iid(d, n, spec)?.sample(stream);
    KnapsackInstance::new(profits, vec![1.0; n])
}

/// Solutions with exactly `k` items that are Pareto-optimal for the
/// profits shifted by `-1/2`.
pub fn restricted_pareto_solutions(instance: &KnapsackInstance, k: usize) -> Result<Vec<Solution>> {
    let shifted = instance.profits.map(|_, _, v| v - 0.5)?;
    let set = pareto_set(
        &shifted,
        &FeasibleSet::FixedCardinality { n: instance.n(), k },
        &DominanceOrder::maximize_all(instance.d()),
        &Budget::default(),
    )?;
    Ok(set.solutions().to_vec())
}

/// Checks that every solution Pareto-optimal in the shifted problem
/// restricted to `k` items stays Pareto-optimal in the full knapsack
/// instance. `k` defaults to `floor(n/2)` at call sites.
pub fn verify_knapsack_embedding(instance: &KnapsackInstance, k: usize) -> Result<bool> {
    let n = instance.n();
    if n > DEFAULT_EMBEDDING_MAX_N {
        return Err(Error::Capacity {
            what: format!("knapsack embedding check over {{0,1}}^{n}"),
            cardinality: 1u128 << n,
            budget: 1u128 << DEFAULT_EMBEDDING_MAX_N,
        });
    }
    if k > n {
        return Err(Error::InvalidInput(format!("k={k} exceeds n={n}")));
    }
    let full = instance.objective_matrix();
    let order = instance.order();
    let cube = FeasibleSet::FullCube(n);
    for x in restricted_pareto_solutions(instance, k)? {
        if !is_pareto_optimal(&full, &cube, &order, &x, &Budget::default())? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_weights_and_support() {
        let k = build_unit_weight_knapsack(12, 3, &RandomStream::new(8)).unwrap();
        assert!(k.weights().iter().all(|&w| w == 1.0));
        assert!(k.profits().entries().iter().all(|&p| (0.0..=1.0).contains(&p)));
        assert_eq!(k, build_unit_weight_knapsack(12, 3, &RandomStream::new(8)).unwrap());
        assert_eq!(k.objective_matrix().d(), 4);
        assert!(build_unit_weight_knapsack(1, 2, &RandomStream::new(0)).is_err());
    }

    #[test]
    fn two_items() {
        let profits = ObjectiveMatrix::from_rows(&[[0.9, 0.2], [0.1, 0.7]]).unwrap();
        let inst = KnapsackInstance::new(profits, vec![1.0, 1.0]).unwrap();
        let mut sols: Vec<String> = restricted_pareto_solutions(&inst, 1)
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        sols.sort();
        assert_eq!(sols, ["01", "10"]);
        assert!(verify_knapsack_embedding(&inst, 1).unwrap());
    }

    #[test]
    fn embedding_holds_on_samples() {
        for (n, d, seeds) in [(10, 2, 50), (12, 3, 10)] {
            for s in 0..seeds {
                let inst = build_unit_weight_knapsack(n, d, &RandomStream::new(s)).unwrap();
                assert!(verify_knapsack_embedding(&inst, n / 2).unwrap());
            }
        }
    }

    #[test]
    fn negative_weights_rejected() {
        let p = ObjectiveMatrix::from_rows(&[[0.5, 0.5]]).unwrap();
        assert!(KnapsackInstance::new(p.clone(), vec![1.0, -1.0]).is_err());
        assert!(KnapsackInstance::new(p, vec![1.0]).is_err());
    }
}
