//! Divide-and-conquer maximal-vector computation.
//!
//! Points are first mapped to maximization form and grouped into distinct
//! values. Among distinct values, "dominates" coincides with "weakly greater
//! in every coordinate", which lets the merge step ignore ties. The recursion
//! splits the lexicographically sorted values in half: a value in the lower
//! half can never dominate one in the upper half, so only the upper maxima
//! have to filter the lower maxima. That filter is the classic
//! multidimensional divide and conquer on one coordinate at a time, with a
//! three-way split around the median so that equal coordinates stay sound.

use std::cmp::Ordering;

use crate::dominance::check_points;
use crate::error::Result;
use crate::model::DominanceOrder;

const BRUTE_FORCE_PAIRS: usize = 64;

/// Same index set as [`crate::dominance::pareto_filter`], in ascending order.
pub fn pareto_maxima_dc<P: AsRef<[f64]>>(points: &[P], order: &DominanceOrder) -> Result<Vec<usize>> {
    check_points(points, order)?;
    Ok(maxima_unchecked(points, order))
}

pub(crate) fn maxima_unchecked<P: AsRef<[f64]>>(points: &[P], order: &DominanceOrder) -> Vec<usize> {
    let pts: Vec<Vec<f64>> = points
        .iter()
        .map(|p| order.to_maximization(p.as_ref()))
        .collect();

    let mut sorted: Vec<usize> = (0..pts.len()).collect();
    sorted.sort_by(|&a, &b| lex_cmp(&pts[b], &pts[a]));

    // distinct values in lexicographically descending order, with members
    let mut reps: Vec<usize> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for &i in &sorted {
        match reps.last() {
            Some(&r) if lex_cmp(&pts[r], &pts[i]) == Ordering::Equal => {
                members.last_mut().unwrap().push(i)
            }
            _ => {
                reps.push(i);
                members.push(vec![i]);
            }
        }
    }

    let ctx = Ctx { pts: &pts, d: order.len() };
    let maximal = ctx.maxima(&reps);

    let mut keep = vec![false; pts.len()];
    for r in maximal {
        keep[r] = true;
    }
    let mut out: Vec<usize> = reps
        .iter()
        .zip(&members)
        .filter(|(r, _)| keep[**r])
        .flat_map(|(_, m)| m.iter().copied())
        .collect();
    out.sort_unstable();
    out
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

struct Ctx<'a> {
    pts: &'a [Vec<f64>],
    d: usize,
}

impl Ctx<'_> {
    fn weakly_covers(&self, a: usize, b: usize, from: usize) -> bool {
        self.pts[a][from..]
            .iter()
            .zip(&self.pts[b][from..])
            .all(|(x, y)| x >= y)
    }

    /// Maxima of distinct points given in lexicographically descending order.
    fn maxima(&self, ids: &[usize]) -> Vec<usize> {
        if ids.len() <= 3 {
            return ids
                .iter()
                .copied()
                .filter(|&b| !ids.iter().any(|&a| a != b && self.weakly_covers(a, b, 0)))
                .collect();
        }
        let (upper, lower) = ids.split_at(ids.len() / 2);
        let mut top = self.maxima(upper);
        let bottom = self.maxima(lower);
        let survivors = self.filter(&top, bottom, 0);
        top.extend(survivors);
        top
    }

    /// Members of `b` not weakly covered on coordinates `k..` by any member of
    /// `a`; every `a` already weakly covers every `b` on coordinates `..k`.
    fn filter(&self, a: &[usize], b: Vec<usize>, k: usize) -> Vec<usize> {
        if a.is_empty() || b.is_empty() {
            return b;
        }
        if k == self.d {
            return Vec::new();
        }
        if k + 1 == self.d {
            let best = a
                .iter()
                .map(|&i| self.pts[i][k])
                .fold(f64::NEG_INFINITY, f64::max);
            return b.into_iter().filter(|&j| self.pts[j][k] > best).collect();
        }
        if a.len() * b.len() <= BRUTE_FORCE_PAIRS {
            return b
                .into_iter()
                .filter(|&j| !a.iter().any(|&i| self.weakly_covers(i, j, k)))
                .collect();
        }

        let mut values: Vec<f64> = a.iter().chain(&b).map(|&i| self.pts[i][k]).collect();
        let mid = values.len() / 2;
        let (_, &mut pivot, _) = values.select_nth_unstable_by(mid, f64::total_cmp);

        let split = |ids: &[usize]| {
            let (mut hi, mut eq, mut lo) = (Vec::new(), Vec::new(), Vec::new());
            for &i in ids {
                match self.pts[i][k].total_cmp(&pivot) {
                    Ordering::Greater => hi.push(i),
                    Ordering::Equal => eq.push(i),
                    Ordering::Less => lo.push(i),
                }
            }
            (hi, eq, lo)
        };
        let (a_hi, a_eq, a_lo) = split(a);
        let (b_hi, b_eq, b_lo) = split(&b);
        let mut a_hi_eq = a_hi.clone();
        a_hi_eq.extend_from_slice(&a_eq);

        let mut out = self.filter(&a_hi, b_hi, k);
        out.extend(self.filter(&a_hi_eq, b_eq, k + 1));
        let lo = self.filter(&a_lo, b_lo, k);
        out.extend(self.filter(&a_hi_eq, lo, k + 1));
        out
    }
}
