//! Dense tableau simplex with Bland's rule, generic over the scalar type.

use num_rational::BigRational;

use crate::error::{Error, Result};

use super::exact::{solve_square, Scalar};

/// `minimize cost·x subject to rows·x = rhs, x >= 0`.
pub(crate) struct Lp<T> {
    pub rows: Vec<Vec<T>>,
    pub rhs: Vec<T>,
    pub cost: Vec<T>,
}

pub(crate) struct Optimum<T> {
    /// Basic column of each row.
    pub basis: Vec<usize>,
    pub objective: T,
    /// Reduced cost of every column.
    pub reduced: Vec<T>,
}

struct Tableau<T> {
    t: Vec<Vec<T>>,
    obj: Vec<T>,
}

impl<T: Scalar> Tableau<T> {
    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.t[r][col].clone();
        for v in self.t[r].iter_mut() {
            *v = v.div(&p);
        }
        self.t[r][col] = T::one_value();
        let pivot_row = self.t[r].clone();
        let eliminate = |row: &mut Vec<T>| {
            let f = row[col].clone();
            if f.is_exact_zero() {
                return;
            }
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_exact_zero() {
                    *v = v.sub(&f.mul(pv));
                }
            }
            row[col] = T::zero_value();
        };
        for (i, row) in self.t.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
    }
}

/// Runs the simplex method from a feasible starting basis. `basis[r]` is
/// the column made basic in row `r`; rows are canonicalized in order.
pub(crate) fn minimize<T: Scalar>(lp: &Lp<T>, mut basis: Vec<usize>) -> Result<Optimum<T>> {
    let m = lp.rows.len();
    let n = lp.cost.len();
    debug_assert_eq!(basis.len(), m);
    let mut tab = Tableau {
        t: lp
            .rows
            .iter()
            .zip(&lp.rhs)
            .map(|(row, b)| {
                let mut r = row.clone();
                r.push(b.clone());
                r
            })
            .collect(),
        obj: lp.cost.iter().cloned().chain([T::zero_value()]).collect(),
    };
    for (r, &col) in basis.iter().enumerate() {
        if tab.t[r][col].is_zero_ish() {
            return Err(Error::NumericFailure("singular starting basis".into()));
        }
        tab.pivot(r, col);
    }
    if tab.t.iter().any(|row| row[n].below_zero()) {
        return Err(Error::NumericFailure("infeasible starting basis".into()));
    }

    let cap = 50 * (m + n) + 1000;
    for _ in 0..cap {
        let Some(enter) = (0..n).find(|&j| tab.obj[j].below_zero()) else {
            return Ok(Optimum {
                objective: T::zero_value().sub(&tab.obj[n]),
                reduced: tab.obj[..n].to_vec(),
                basis,
            });
        };
        let mut leave: Option<(usize, T)> = None;
        for r in 0..m {
            if !tab.t[r][enter].exceeds_zero() {
                continue;
            }
            let ratio = tab.t[r][n].div(&tab.t[r][enter]);
            let better = match &leave {
                None => true,
                Some((lr, best)) => {
                    let diff = ratio.sub(best);
                    diff.below_zero() || (diff.is_zero_ish() && basis[r] < basis[*lr])
                }
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        let Some((r, _)) = leave else {
            return Err(Error::NumericFailure("linear program reported unbounded".into()));
        };
        tab.pivot(r, enter);
        basis[r] = enter;
    }
    Err(Error::NumericFailure(format!("simplex exceeded {cap} pivots")))
}

/// Solves `B x = rhs` where `B` has the given columns.
pub(crate) fn solve_columns(columns: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let m = rhs.len();
    let rows = (0..m)
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect();
    solve_square(rows, rhs.to_vec())
}

/// Solves `B^T y = cost_b` where `B` has the given columns.
pub(crate) fn solve_columns_transposed(
    columns: &[Vec<BigRational>],
    cost_b: &[BigRational],
) -> Option<Vec<BigRational>> {
    solve_square(columns.to_vec(), cost_b.to_vec())
}
