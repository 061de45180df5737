//! Item-by-item Pareto set construction over the full cube.
//!
//! `P_j` is the Pareto set of the first `j` items; `P_j` is obtained by
//! filtering `P_{j-1}` extended once with item `j` off and once with it on.
//! Every prefix of a Pareto-optimal solution is Pareto-optimal for its
//! prefix problem, so nothing optimal is ever discarded.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::{Domain, DominanceOrder, ObjectiveMatrix, ObjectiveVector, Solution};

use super::maxima::maxima_unchecked;
use super::{Budget, ParetoSet};

struct Entry {
    value: Vec<f64>,
    bits: Vec<bool>,
    multiplicity: u64,
}

/// Exact Pareto set of `{Vr : r in {0,1}^n}`.
pub fn pareto_incremental_cube(
    matrix: &ObjectiveMatrix,
    order: &DominanceOrder,
    budget: &Budget,
) -> Result<ParetoSet> {
    pareto_incremental(matrix, Domain::ZeroOne, order, budget)
}

/// Exact Pareto set of the full cube over `domain`.
///
/// One representative solution is kept per distinct value; the
/// multiplicity records how many solutions share it.
pub fn pareto_incremental(
    matrix: &ObjectiveMatrix,
    domain: Domain,
    order: &DominanceOrder,
    budget: &Budget,
) -> Result<ParetoSet> {
    order.check_len(matrix.d())?;
    let d = matrix.d();
    let mut front = vec![Entry {
        value: vec![0.0; d],
        bits: Vec::with_capacity(matrix.n()),
        multiplicity: 1,
    }];

    for j in 0..matrix.n() {
        let column = matrix.column(j);
        let mut candidates: Vec<Entry> = Vec::with_capacity(front.len() * 2);
        for e in &front {
            let mut off = e.value.clone();
            if domain == Domain::PlusMinusOne {
                for (x, v) in off.iter_mut().zip(&column) {
                    *x -= v;
                }
            }
            let mut on = e.value.clone();
            for (x, v) in on.iter_mut().zip(&column) {
                *x += v;
            }
            let mut off_bits = e.bits.clone();
            off_bits.push(false);
            let mut on_bits = e.bits.clone();
            on_bits.push(true);
            candidates.push(Entry { value: off, bits: off_bits, multiplicity: e.multiplicity });
            candidates.push(Entry { value: on, bits: on_bits, multiplicity: e.multiplicity });
        }

        let merged = merge_equal_values(candidates);
        let values: Vec<&[f64]> = merged.iter().map(|e| e.value.as_slice()).collect();
        let keep = maxima_unchecked(&values, order);
        if keep.len() > budget.max_pareto {
            let partial: u64 = keep.iter().map(|&i| merged[i].multiplicity).sum();
            return Err(Error::Capacity {
                what: format!(
                    "stored Pareto set after {} of {} items (partial count {partial})",
                    j + 1,
                    matrix.n()
                ),
                cardinality: keep.len() as u128,
                budget: budget.max_pareto as u128,
            });
        }
        let mut slots: Vec<Option<Entry>> = merged.into_iter().map(Some).collect();
        front = keep.into_iter().map(|i| slots[i].take().unwrap()).collect();
    }

    let mut set = ParetoSet::default();
    for e in front {
        set.push(
            Solution::new(e.bits, domain),
            ObjectiveVector::new(e.value).expect("finite sums"),
            e.multiplicity,
        );
    }
    Ok(set)
}

/// Collapses exactly equal values, summing multiplicities. The first
/// candidate with a value stays its representative.
fn merge_equal_values(candidates: Vec<Entry>) -> Vec<Entry> {
    let key = |v: &[f64]| -> Vec<u64> {
        v.iter()
            .map(|&x| if x == 0.0 { 0.0f64.to_bits() } else { x.to_bits() })
            .collect()
    };
    let mut index: HashMap<Vec<u64>, usize> = HashMap::with_capacity(candidates.len());
    let mut out: Vec<Entry> = Vec::with_capacity(candidates.len());
    for c in candidates {
        match index.get(&key(&c.value)) {
            Some(&i) => out[i].multiplicity += c.multiplicity,
            None => {
                index.insert(key(&c.value), out.len());
                out.push(c);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_item() {
        let v = ObjectiveMatrix::from_rows(&[[1.0]]).unwrap();
        let set = pareto_incremental_cube(&v, &DominanceOrder::maximize_all(1), &Budget::default())
            .unwrap();
        assert_eq!(set.count(), 1);
        assert_eq!(set.values()[0].coords(), &[1.0]);
        assert_eq!(set.solutions()[0].to_string(), "1");
    }

    #[test]
    fn opposite_extremes_both_optimal() {
        let v = ObjectiveMatrix::from_rows(&[[-1.0, -2.0, -0.5], [1.0, 3.0, 0.25]]).unwrap();
        let set = pareto_incremental_cube(&v, &DominanceOrder::maximize_all(2), &Budget::default())
            .unwrap();
        let sols: Vec<String> = set.solutions().iter().map(ToString::to_string).collect();
        assert!(sols.contains(&"000".to_string()));
        assert!(sols.contains(&"111".to_string()));
    }

    #[test]
    fn ties_counted_by_multiplicity() {
        // two identical items: solutions 10 and 01 share a value
        let v = ObjectiveMatrix::from_rows(&[[1.0, 1.0], [-1.0, -1.0]]).unwrap();
        let set = pareto_incremental_cube(&v, &DominanceOrder::maximize_all(2), &Budget::default())
            .unwrap();
        assert_eq!(set.len(), 3);
        assert_eq!(set.count(), 4);
    }

    #[test]
    fn capacity_error_reports_partial() {
        let v = ObjectiveMatrix::from_rows(&[[1.0, 2.0, 4.0, 8.0], [-1.0, -2.0, -4.0, -8.0]])
            .unwrap();
        let budget = Budget { max_pareto: 3, ..Budget::default() };
        let err = pareto_incremental_cube(&v, &DominanceOrder::maximize_all(2), &budget)
            .unwrap_err();
        assert!(matches!(err, Error::Capacity { .. }));
        assert!(err.to_string().contains("partial count"));
    }
}
