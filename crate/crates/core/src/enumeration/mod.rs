//! Feasible-set families and exact Pareto-set enumeration.
//!
//! [`pareto_bruteforce`] is the oracle: it enumerates the feasible set and
//! runs the quadratic [`pareto_filter`](crate::dominance::pareto_filter).
//! [`pareto_maxima_dc`] and [`pareto_incremental_cube`] are faster exact
//! routes that must agree with it.

mod feasible;
mod incremental;
mod maxima;
pub mod trees;

pub use feasible::{gadget_tree_bits, FeasibleSet};
pub use incremental::{pareto_incremental, pareto_incremental_cube};
pub use maxima::pareto_maxima_dc;

use crate::dominance::{evaluate_unchecked, pareto_filter_unchecked};
use crate::error::{Error, Result};
use crate::model::{Domain, DominanceOrder, ObjectiveMatrix, ObjectiveVector, Solution};


/// Guardrails for exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest feasible set that may be enumerated.
    pub max_solutions: u128,
    /// Largest Pareto set the incremental enumerator may store.
    pub max_pareto: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_solutions: 1 << 26, max_pareto: 1 << 22 }
    }
}

/// Pareto-optimal solutions with their objective values.
///
/// Each entry stands for `multiplicity` feasible solutions sharing the
/// value; `solution` is one of them. Enumerators that list solutions
/// individually use multiplicity 1 throughout.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParetoSet {
    solutions: Vec<Solution>,
    values: Vec<ObjectiveVector>,
    multiplicities: Vec<u64>,
}

impl ParetoSet {
    pub(crate) fn push(&mut self, solution: Solution, value: ObjectiveVector, multiplicity: u64) {
        self.solutions.push(solution);
        self.values.push(value);
        self.multiplicities.push(multiplicity);
    }

    pub fn solutions(&self) -> &[Solution] {
        &self.solutions
    }

    pub fn values(&self) -> &[ObjectiveVector] {
        &self.values
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.multiplicities
    }

    /// Number of stored entries.
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    /// Number of Pareto-optimal feasible solutions.
    pub fn count(&self) -> u64 {
        self.multiplicities.iter().sum()
    }

    /// Values expanded by multiplicity and sorted, for set comparisons.
    pub fn sorted_values(&self) -> Vec<Vec<f64>> {
        let mut out: Vec<Vec<f64>> = self
            .values
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(v, &m)| std::iter::repeat_n(v.coords().to_vec(), m as usize))
            .collect();
        out.sort_by(|a, b| {
            a.iter()
                .zip(b)
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        out
    }

    pub fn contains(&self, solution: &Solution) -> bool {
        self.solutions.contains(solution)
    }
}

fn check_instance(matrix: &ObjectiveMatrix, fs: &FeasibleSet, order: &DominanceOrder) -> Result<()> {
    order.check_len(matrix.d())?;
    fs.validate()?;
    if fs.vector_len() != matrix.n() {
        return Err(Error::DimensionMismatch {
            context: "feasible-set vector length",
            expected: matrix.n(),
            found: fs.vector_len(),
        });
    }
    Ok(())
}

fn evaluate_all(matrix: &ObjectiveMatrix, fs: &FeasibleSet, budget: &Budget) -> Result<(Vec<Solution>, Vec<Vec<f64>>)> {
    let solutions = fs.enumerate(budget)?;
    let values = solutions.iter().map(|s| evaluate_unchecked(matrix, s)).collect();
    Ok((solutions, values))
}

fn collect_set(solutions: Vec<Solution>, values: Vec<Vec<f64>>, keep: &[usize]) -> ParetoSet {
    let mut set = ParetoSet::default();
    let mut solutions: Vec<Option<Solution>> = solutions.into_iter().map(Some).collect();
    let mut values: Vec<Option<Vec<f64>>> = values.into_iter().map(Some).collect();
    for &i in keep {
        set.push(
            solutions[i].take().unwrap(),
            ObjectiveVector::new(values[i].take().unwrap()).expect("finite sums"),
            1,
        );
    }
    set
}

/// Exact Pareto set by pairwise domination tests over the enumerated set.
pub fn pareto_bruteforce(
    matrix: &ObjectiveMatrix,
    fs: &FeasibleSet,
    order: &DominanceOrder,
    budget: &Budget,
) -> Result<ParetoSet> {
    check_instance(matrix, fs, order)?;
    let (solutions, values) = evaluate_all(matrix, fs, budget)?;
    let keep = pareto_filter_unchecked(&values, order);
    Ok(collect_set(solutions, values, &keep))
}

/// Exact Pareto set through the cheapest applicable enumerator: the
/// incremental cube algorithm for cubes, enumeration plus divide and conquer
/// otherwise.
pub fn pareto_set(
    matrix: &ObjectiveMatrix,
    fs: &FeasibleSet,
    order: &DominanceOrder,
    budget: &Budget,
) -> Result<ParetoSet> {
    check_instance(matrix, fs, order)?;
    match fs {
        FeasibleSet::FullCube(_) => pareto_incremental(matrix, Domain::ZeroOne, order, budget),
        FeasibleSet::SignCube(_) => pareto_incremental(matrix, Domain::PlusMinusOne, order, budget),
        _ => {
            let (solutions, values) = evaluate_all(matrix, fs, budget)?;
            let keep = maxima::maxima_unchecked(&values, order);
            Ok(collect_set(solutions, values, &keep))
        }
    }
}

/// Number of Pareto-optimal feasible solutions (solutions sharing a value
/// are each counted).
pub fn count_pareto(
    matrix: &ObjectiveMatrix,
    fs: &FeasibleSet,
    order: &DominanceOrder,
    budget: &Budget,
) -> Result<u64> {
    Ok(pareto_set(matrix, fs, order, budget)?.count())
}

/// `true` iff `x` is not dominated by any solution of `fs`.
pub fn is_pareto_optimal(
    matrix: &ObjectiveMatrix,
    fs: &FeasibleSet,
    order: &DominanceOrder,
    x: &Solution,
    budget: &Budget,
) -> Result<bool> {
    check_instance(matrix, fs, order)?;
    if x.len() != matrix.n() {
        return Err(Error::DimensionMismatch {
            context: "solution length",
            expected: matrix.n(),
            found: x.len(),
        });
    }
    let target = evaluate_unchecked(matrix, x);
    let mut dominated = false;
    fs.visit(budget, |y| {
        if !dominated && order.dominates_unchecked(&evaluate_unchecked(matrix, &y), &target) {
            dominated = true;
        }
    })?;
    Ok(!dominated)
}

/// The matrix whose column `j` is `v_j` where `r_j = 1` and `-v_j` where
/// `r_j = 0`.
///
/// `r` is Pareto-optimal for `V` over the cube exactly when the all-ones
/// solution is Pareto-optimal for the flipped matrix.
pub fn flip_columns(matrix: &ObjectiveMatrix, r: &Solution) -> Result<ObjectiveMatrix> {
    if r.len() != matrix.n() {
        return Err(Error::DimensionMismatch {
            context: "flip vector length",
            expected: matrix.n(),
            found: r.len(),
        });
    }
    matrix.map(|_, j, v| if r.bits()[j] { v } else { -v })
}
