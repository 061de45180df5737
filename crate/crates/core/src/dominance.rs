//! Evaluation of solutions and the domination / Pareto-filter primitives.

use crate::error::{Error, Result};
use crate::model::{Domain, DominanceOrder, ObjectiveMatrix, ObjectiveVector, Solution};

/// Computes `Vx`.
///
/// Terms are accumulated left to right over the variables; a `0` coordinate
/// contributes nothing and a `-1` coordinate subtracts its column. The
/// incremental enumerators accumulate in the same order, so both routes
/// produce bit-identical values.
pub fn evaluate(matrix: &ObjectiveMatrix, x: &Solution) -> Result<ObjectiveVector> {
    if x.len() != matrix.n() {
        return Err(Error::DimensionMismatch {
            context: "solution length",
            expected: matrix.n(),
            found: x.len(),
        });
    }
    Ok(ObjectiveVector::new(evaluate_unchecked(matrix, x))
        .expect("sums of finite entries over at most 2^63 terms stay finite"))
}

pub(crate) fn evaluate_unchecked(matrix: &ObjectiveMatrix, x: &Solution) -> Vec<f64> {
    let bits = x.bits();
    let signed = x.domain() == Domain::PlusMinusOne;
    matrix
        .rows()
        .map(|row| {
            let mut sum = 0.0;
            for (&v, &bit) in row.iter().zip(bits) {
                if bit {
                    sum += v;
                } else if signed {
                    sum -= v;
                }
            }
            sum
        })
        .collect()
}

/// `true` iff `b` dominates `a` under `order`.
pub fn dominates(b: &ObjectiveVector, a: &ObjectiveVector, order: &DominanceOrder) -> Result<bool> {
    if b.len() != a.len() {
        return Err(Error::DimensionMismatch {
            context: "dominance comparison",
            expected: b.len(),
            found: a.len(),
        });
    }
    order.check_len(b.len())?;
    Ok(order.dominates_unchecked(b, a))
}

/// Indices (ascending) of the points not dominated by any other point.
///
/// Quadratic pairwise scan; this is the reference every faster filter is
/// checked against. Coordinate-wise equal points never dominate each other,
/// so all copies of a non-dominated value are kept.
pub fn pareto_filter<P: AsRef<[f64]>>(points: &[P], order: &DominanceOrder) -> Result<Vec<usize>> {
    check_points(points, order)?;
    Ok(pareto_filter_unchecked(points, order))
}

pub(crate) fn pareto_filter_unchecked<P: AsRef<[f64]>>(
    points: &[P],
    order: &DominanceOrder,
) -> Vec<usize> {
    (0..points.len())
        .filter(|&i| {
            let a = points[i].as_ref();
            !points
                .iter()
                .enumerate()
                .any(|(j, b)| j != i && order.dominates_unchecked(b.as_ref(), a))
        })
        .collect()
}

pub(crate) fn check_points<P: AsRef<[f64]>>(points: &[P], order: &DominanceOrder) -> Result<()> {
    if points.is_empty() {
        return Err(Error::EmptyInput("point list"));
    }
    let d = order.len();
    for p in points {
        let p = p.as_ref();
        if p.len() != d {
            return Err(Error::DimensionMismatch {
                context: "point dimension",
                expected: d,
                found: p.len(),
            });
        }
        if p.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite coordinate".into()));
        }
    }
    Ok(())
}
