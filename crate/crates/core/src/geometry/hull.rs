//! Convex-hull predicates decided by linear programs.
//!
//! Every answer is certified in exact arithmetic. A floating-point solve
//! proposes a basis; "inside" answers are confirmed by re-solving that basis
//! over the rationals, "outside" answers by checking the separating
//! direction with exact sign predicates. When a certificate fails the
//! problem is re-solved with rational pivoting, and a result that still
//! cannot be certified becomes [`Error::NumericFailure`].

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::model::{DominanceOrder, Sense};

use super::exact::{det_sign, dot_sign, to_rational, Scalar, DET_FILTER_MAX};
use super::lp::{minimize, solve_columns, solve_columns_transposed, Lp};

/// Arithmetic used by the hull predicates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Arithmetic {
    /// Floating-point solves with exact certification and exact fallback.
    #[default]
    Certified,
    /// Rational pivoting throughout.
    Exact,
}

/// Position of a point relative to the convex hull of a point set.
#[derive(Clone, Debug, PartialEq)]
pub enum Membership {
    Inside,
    /// Outside, with a direction `u` such that `u·q > u·p` for every hull
    /// point `q`.
    Outside(Vec<f64>),
}

fn check_cloud<P: AsRef<[f64]>>(points: &[P]) -> Result<usize> {
    let first = points.first().ok_or(Error::EmptyInput("point set"))?;
    let d = first.as_ref().len();
    if d == 0 {
        return Err(Error::InvalidInput("points must have at least one coordinate".into()));
    }
    for p in points {
        let p = p.as_ref();
        if p.len() != d {
            return Err(Error::DimensionMismatch { context: "point set", expected: d, found: p.len() });
        }
        if p.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("points must be finite".into()));
        }
    }
    Ok(d)
}

/// Min-L1 residual program: `min sum(a + b)` over `sum_j l_j (q_j - p) - a + b = 0`,
/// `sum_j l_j = 1`. Columns: `l_0..l_k`, then `a`, then `b`.
fn residual_lp<T: Scalar>(p: &[f64], cols: &[&[f64]]) -> (Lp<T>, Vec<usize>) {
    let d = p.len();
    let k = cols.len();
    let width = k + 2 * d;
    let mut rows = vec![vec![T::zero_value(); width]; d + 1];
    for (j, q) in cols.iter().enumerate() {
        for i in 0..d {
            rows[i][j] = T::from_f64(q[i]).sub(&T::from_f64(p[i]));
        }
        rows[d][j] = T::one_value();
    }
    let mut basis = Vec::with_capacity(d + 1);
    for i in 0..d {
        rows[i][k + i] = T::zero_value().sub(&T::one_value());
        rows[i][k + d + i] = T::one_value();
        basis.push(if cols[0][i] >= p[i] { k + i } else { k + d + i });
    }
    basis.push(0);
    let mut rhs = vec![T::zero_value(); d + 1];
    rhs[d] = T::one_value();
    let mut cost = vec![T::zero_value(); width];
    for c in cost.iter_mut().skip(k) {
        *c = T::one_value();
    }
    (Lp { rows, rhs, cost }, basis)
}

/// `u·q > u·p` for every `q`, decided exactly.
fn separates(u: &[f64], p: &[f64], cols: &[&[f64]]) -> bool {
    let mut a: Vec<f64> = u.to_vec();
    a.extend(u.iter().map(|x| -x));
    let mut b = vec![0.0; 2 * p.len()];
    b[p.len()..].copy_from_slice(p);
    cols.iter().all(|q| {
        b[..p.len()].copy_from_slice(q);
        dot_sign(&a, &b) == Ordering::Greater
    })
}

/// Re-solves a basis of the residual program exactly; true when it yields a
/// convex combination of the columns equal to `p`.
fn certify_inside(p: &[f64], cols: &[&[f64]], basis: &[usize]) -> bool {
    let d = p.len();
    let k = cols.len();
    if d < DET_FILTER_MAX && basis.iter().all(|&j| j < k) {
        let verts: Vec<&[f64]> = basis.iter().map(|&j| cols[j]).collect();
        return simplex_contains(p, &verts);
    }
    let columns: Vec<Vec<BigRational>> = basis
        .iter()
        .map(|&j| {
            let mut c = vec![BigRational::zero(); d + 1];
            if j < k {
                for i in 0..d {
                    c[i] = to_rational(cols[j][i]) - to_rational(p[i]);
                }
                c[d] = BigRational::one();
            } else if j < k + d {
                c[j - k] = -BigRational::one();
            } else {
                c[j - k - d] = BigRational::one();
            }
            c
        })
        .collect();
    let mut rhs = vec![BigRational::zero(); d + 1];
    rhs[d] = BigRational::one();
    let Some(x) = solve_columns(&columns, &rhs) else {
        return false;
    };
    basis
        .iter()
        .zip(&x)
        .all(|(&j, v)| if j < k { !v.is_negative() } else { v.is_zero() })
}

/// Barycentric sign test: `p` lies in the simplex spanned by `verts`
/// (`d + 1` affinely independent points) iff replacing any vertex by `p`
/// never flips the orientation.
fn simplex_contains(p: &[f64], verts: &[&[f64]]) -> bool {
    let lift = |q: &[f64]| q.iter().copied().chain([1.0]).collect::<Vec<f64>>();
    let mut m: Vec<Vec<f64>> = verts.iter().map(|q| lift(q)).collect();
    let orientation = det_sign(&m);
    if orientation == Ordering::Equal {
        return false;
    }
    for j in 0..verts.len() {
        let saved = std::mem::replace(&mut m[j], lift(p));
        let s = det_sign(&m);
        m[j] = saved;
        if s != Ordering::Equal && s != orientation {
            return false;
        }
    }
    true
}

fn residual_direction<T: Scalar>(reduced: &[T], k: usize, d: usize) -> Vec<f64> {
    (0..d).map(|i| 1.0 - reduced[k + i].approx_f64()).collect()
}

fn locate_exact(p: &[f64], cols: &[&[f64]]) -> Result<Membership> {
    let (lp, basis) = residual_lp::<BigRational>(p, cols);
    let opt = minimize(&lp, basis)?;
    if opt.objective.is_zero() {
        return Ok(Membership::Inside);
    }
    let u = residual_direction(&opt.reduced, cols.len(), p.len());
    if separates(&u, p, cols) {
        Ok(Membership::Outside(u))
    } else {
        Err(Error::NumericFailure(
            "separating direction lost its sign after rounding".into(),
        ))
    }
}

fn locate_certified(p: &[f64], cols: &[&[f64]]) -> Result<Membership> {
    let (lp, basis) = residual_lp::<f64>(p, cols);
    if let Ok(opt) = minimize(&lp, basis) {
        if opt.objective.exceeds_zero() {
            let u = residual_direction(&opt.reduced, cols.len(), p.len());
            if separates(&u, p, cols) {
                return Ok(Membership::Outside(u));
            }
        } else if certify_inside(p, cols, &opt.basis) {
            return Ok(Membership::Inside);
        }
    }
    locate_exact(p, cols)
}

fn locate(p: &[f64], cols: &[&[f64]], arithmetic: Arithmetic) -> Result<Membership> {
    match arithmetic {
        Arithmetic::Certified => locate_certified(p, cols),
        Arithmetic::Exact => locate_exact(p, cols),
    }
}

/// Whether `p` lies in the convex hull of `points`.
pub fn membership<P: AsRef<[f64]>>(p: &[f64], points: &[P], arithmetic: Arithmetic) -> Result<Membership> {
    let d = check_cloud(points)?;
    if p.len() != d {
        return Err(Error::DimensionMismatch { context: "query point", expected: d, found: p.len() });
    }
    if p.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("query point must be finite".into()));
    }
    let cols: Vec<&[f64]> = points.iter().map(AsRef::as_ref).collect();
    locate(p, &cols, arithmetic)
}

/// Origin membership with a strictly separating direction when outside.
pub fn origin_membership<P: AsRef<[f64]>>(points: &[P], arithmetic: Arithmetic) -> Result<Membership> {
    let d = check_cloud(points)?;
    membership(&vec![0.0; d], points, arithmetic)
}

/// True iff the origin is a convex combination of `points`.
pub fn origin_in_hull<P: AsRef<[f64]>>(points: &[P]) -> Result<bool> {
    Ok(origin_membership(points, Arithmetic::Certified)? == Membership::Inside)
}

fn lex_partial(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.partial_cmp(y).expect("finite"))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

const ADD_PER_ROUND: usize = 8;

/// Indices of the extreme points of `points`, ascending.
///
/// Repeated points are one geometric point; its first occurrence stands for
/// it.
pub fn hull_vertices<P: AsRef<[f64]>>(points: &[P]) -> Result<Vec<usize>> {
    hull_vertices_with(points, Arithmetic::Certified)
}

pub fn hull_vertices_with<P: AsRef<[f64]>>(points: &[P], arithmetic: Arithmetic) -> Result<Vec<usize>> {
    let d = check_cloud(points)?;
    let pts: Vec<&[f64]> = points.iter().map(AsRef::as_ref).collect();

    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| lex_partial(pts[a], pts[b]).then(a.cmp(&b)));
    let mut reps: Vec<usize> = Vec::new();
    for i in order {
        match reps.last() {
            Some(&r) if lex_partial(pts[r], pts[i]).is_eq() => {}
            _ => reps.push(i),
        }
    }
    let m = reps.len();
    if m == 1 {
        return Ok(reps);
    }
    let q: Vec<&[f64]> = reps.iter().map(|&i| pts[i]).collect();

    // seed the working set with extremes along each axis and the diagonal
    let mut in_w = vec![false; m];
    let mut w: Vec<usize> = Vec::new();
    let add = |i: usize, in_w: &mut Vec<bool>, w: &mut Vec<usize>| {
        if !in_w[i] {
            in_w[i] = true;
            w.push(i);
        }
    };
    let score = |i: usize, c: Option<usize>| match c {
        Some(c) => q[i][c],
        None => q[i].iter().sum(),
    };
    for c in (0..d).map(Some).chain([None]) {
        let lo = (0..m).min_by(|&a, &b| score(a, c).total_cmp(&score(b, c))).unwrap();
        let hi = (0..m).max_by(|&a, &b| score(a, c).total_cmp(&score(b, c))).unwrap();
        add(lo, &mut in_w, &mut w);
        add(hi, &mut in_w, &mut w);
    }

    let mut vertices = Vec::new();
    for i in 0..m {
        loop {
            let mut cols: Vec<&[f64]> = w.iter().filter(|&&j| j != i).map(|&j| q[j]).collect();
            if cols.is_empty() {
                let other = if i == 0 { 1 } else { 0 };
                add(other, &mut in_w, &mut w);
                cols.push(q[other]);
            }
            match locate(q[i], &cols, arithmetic)? {
                Membership::Inside => break,
                Membership::Outside(u) => {
                    let ui: f64 = u.iter().zip(q[i]).map(|(a, b)| a * b).sum();
                    let mut violators: Vec<(f64, usize)> = (0..m)
                        .filter(|&j| j != i && !separates(&u, q[i], &[q[j]]))
                        .map(|j| (u.iter().zip(q[j]).map(|(a, b)| a * b).sum::<f64>() - ui, j))
                        .collect();
                    if violators.is_empty() {
                        vertices.push(reps[i]);
                        break;
                    }
                    violators.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                    let before = w.len();
                    for &(_, j) in violators.iter().take(ADD_PER_ROUND) {
                        add(j, &mut in_w, &mut w);
                    }
                    if w.len() == before {
                        return Err(Error::NumericFailure(
                            "hull working set stopped growing".into(),
                        ));
                    }
                }
            }
        }
    }
    vertices.sort_unstable();
    Ok(vertices)
}

/// Checks that every hull vertex is maximal among the points under at
/// least one of the `2^d` sign patterns.
pub fn bentley_cover_check<P: AsRef<[f64]>>(points: &[P]) -> Result<bool> {
    let d = check_cloud(points)?;
    if d >= 32 {
        return Err(Error::InvalidInput(format!("2^{d} sign patterns is too many")));
    }
    let pts: Vec<&[f64]> = points.iter().map(AsRef::as_ref).collect();
    let orders: Vec<DominanceOrder> = (0..1u32 << d)
        .map(|mask| {
            DominanceOrder::new(
                (0..d)
                    .map(|i| if mask >> i & 1 == 1 { Sense::Minimize } else { Sense::Maximize })
                    .collect(),
            )
        })
        .collect();
    for v in hull_vertices(points)? {
        let covered = orders
            .iter()
            .any(|order| !pts.iter().any(|q| order.dominates_unchecked(q, pts[v])));
        if !covered {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Phase-one program for `sum_i a_i v_i + s = -e_c` with `a, s >= 0`.
/// Columns: `a_0..a_n`, slacks `s_0..s_d`, one artificial.
fn orthant_lp<T: Scalar>(points: &[&[f64]], c: usize) -> (Lp<T>, Vec<usize>) {
    let n = points.len();
    let d = points[0].len();
    let width = n + d + 1;
    let sign = |k: usize| if k == c { -1.0 } else { 1.0 };
    let mut rows = vec![vec![T::zero_value(); width]; d];
    for (k, row) in rows.iter_mut().enumerate() {
        for (i, v) in points.iter().enumerate() {
            row[i] = T::from_f64(sign(k) * v[k]);
        }
        row[n + k] = T::from_f64(sign(k));
    }
    rows[c][n + d] = T::one_value();
    let mut rhs = vec![T::zero_value(); d];
    rhs[c] = T::one_value();
    let mut cost = vec![T::zero_value(); width];
    cost[n + d] = T::one_value();
    let basis = (0..d).map(|k| if k == c { n + d } else { n + k }).collect();
    (Lp { rows, rhs, cost }, basis)
}

fn exact_columns(lp: &Lp<BigRational>, which: &[usize]) -> Vec<Vec<BigRational>> {
    which
        .iter()
        .map(|&j| lp.rows.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Exact verdict for one strict coordinate: `Some(feasible)` when the float
/// basis certifies either way.
fn certify_orthant(points: &[&[f64]], c: usize, basis: &[usize], claims_feasible: bool) -> Option<bool> {
    let (lp, _) = orthant_lp::<BigRational>(points, c);
    let artificial = lp.cost.len() - 1;
    let columns = exact_columns(&lp, basis);
    if claims_feasible {
        let x = solve_columns(&columns, &lp.rhs)?;
        let ok = basis
            .iter()
            .zip(&x)
            .all(|(&j, v)| !v.is_negative() && (j != artificial || v.is_zero()));
        ok.then_some(true)
    } else {
        // Farkas: y with y·A_j <= 0 on real columns and y·rhs > 0
        let cost_b: Vec<BigRational> = basis.iter().map(|&j| lp.cost[j].clone()).collect();
        let y = solve_columns_transposed(&columns, &cost_b)?;
        if !y[c].is_positive() {
            return None;
        }
        let ok = (0..artificial).all(|j| {
            let s: BigRational = lp.rows.iter().zip(&y).map(|(r, yk)| &r[j] * yk).sum();
            !s.is_positive()
        });
        ok.then_some(false)
    }
}

fn orthant_feasible(points: &[&[f64]], c: usize, arithmetic: Arithmetic) -> Result<bool> {
    if arithmetic == Arithmetic::Certified {
        let (lp, basis) = orthant_lp::<f64>(points, c);
        if let Ok(opt) = minimize(&lp, basis) {
            let claims = !opt.objective.exceeds_zero();
            if let Some(v) = certify_orthant(points, c, &opt.basis, claims) {
                return Ok(v);
            }
        }
    }
    let (lp, basis) = orthant_lp::<BigRational>(points, c);
    Ok(minimize(&lp, basis)?.objective.is_zero())
}

/// True iff the cone spanned by `points` contains a nonzero point with all
/// coordinates `<= 0`.
pub fn cone_meets_negative_orthant<P: AsRef<[f64]>>(points: &[P]) -> Result<bool> {
    cone_meets_negative_orthant_with(points, Arithmetic::Certified)
}

pub fn cone_meets_negative_orthant_with<P: AsRef<[f64]>>(
    points: &[P],
    arithmetic: Arithmetic,
) -> Result<bool> {
    let d = check_cloud(points)?;
    let pts: Vec<&[f64]> = points.iter().map(AsRef::as_ref).collect();
    for c in 0..d {
        if orthant_feasible(&pts, c, arithmetic)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn origin_examples() {
        let cross = [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]];
        assert!(origin_in_hull(&cross).unwrap());
        let pos = [[1.0, 2.0, 0.5], [0.1, 0.2, 3.0]];
        match origin_membership(&pos, Arithmetic::Certified).unwrap() {
            Membership::Outside(u) => {
                for p in pos {
                    assert!(u.iter().zip(p).map(|(a, b)| a * b).sum::<f64>() > 0.0);
                }
            }
            Membership::Inside => panic!("origin is outside"),
        }
        // origin exactly on an edge counts as inside
        assert!(origin_in_hull(&[[1.0, 1.0], [-1.0, -1.0], [5.0, 0.0]]).unwrap());
        assert!(origin_in_hull(&[[0.0, 0.0]]).unwrap());
        assert!(!origin_in_hull(&[[1e-300, 0.0]]).unwrap());
    }

    #[test]
    fn exact_and_certified_agree_on_random_clouds() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let d = rng.random_range(1..4);
            let n = rng.random_range(1..9);
            let pts: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..d).map(|_| rng.random_range(-1.0..1.0)).collect())
                .collect();
            let a = origin_membership(&pts, Arithmetic::Certified).unwrap();
            let b = origin_membership(&pts, Arithmetic::Exact).unwrap();
            assert_eq!(a == Membership::Inside, b == Membership::Inside);
        }
    }

    #[test]
    fn hull_examples() {
        assert_eq!(hull_vertices(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap(), vec![0, 1, 2]);
        let sq = [[0.0, 0.0], [1.0, 0.0], [0.5, 0.5], [1.0, 1.0], [0.0, 1.0]];
        assert_eq!(hull_vertices(&sq).unwrap(), vec![0, 1, 3, 4]);
        assert_eq!(hull_vertices(&[[2.0, 3.0]]).unwrap(), vec![0]);
        // collinear middle point and duplicates
        let line = [[0.0], [1.0], [0.5], [1.0], [0.0]];
        assert_eq!(hull_vertices(&line).unwrap(), vec![0, 1]);
        let exact = hull_vertices_with(&sq, Arithmetic::Exact).unwrap();
        assert_eq!(exact, vec![0, 1, 3, 4]);
    }

    #[test]
    fn degenerate_configurations() {
        // edge midpoints, a repeated corner and collinear runs in the plane
        let pts = [
            [0.0, 0.0],
            [2.0, 0.0],
            [1.0, 0.0],
            [2.0, 2.0],
            [0.0, 2.0],
            [2.0, 1.0],
            [0.0, 0.0],
            [1.0, 1.0],
        ];
        assert_eq!(hull_vertices(&pts).unwrap(), vec![0, 1, 3, 4]);
        let diag = [[0.0, 0.0], [1.0, 1.0], [2.0, 2.0], [0.5, 0.5]];
        assert_eq!(hull_vertices(&diag).unwrap(), vec![0, 2]);
        // tiny offsets only exact arithmetic can resolve
        let e = f64::EPSILON;
        let thin = [[0.0, 0.0], [1.0, e], [2.0, 0.0], [1.0, 0.0]];
        assert_eq!(hull_vertices(&thin).unwrap(), vec![0, 1, 2]);
        let thin_exact = hull_vertices_with(&thin, Arithmetic::Exact).unwrap();
        assert_eq!(thin_exact, vec![0, 1, 2]);
        let p = [1.0, e / 4.0];
        assert_eq!(membership(&p, &thin, Arithmetic::Certified).unwrap(), Membership::Inside);
        let q = [1.0, -e / 4.0];
        assert!(matches!(membership(&q, &thin, Arithmetic::Certified).unwrap(), Membership::Outside(_)));
    }

    #[test]
    fn bentley_examples() {
        let sq = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        assert!(bentley_cover_check(&sq).unwrap());
        assert!(bentley_cover_check(&[[4.0, -1.0, 2.0]]).unwrap());
    }

    #[test]
    fn cone_examples() {
        assert!(!cone_meets_negative_orthant(&[[1.0, 1.0]]).unwrap());
        assert!(cone_meets_negative_orthant(&[[-1.0, -1.0]]).unwrap());
        // (1,-2) + (-2,1) = (-1,-1)
        assert!(cone_meets_negative_orthant(&[[1.0, -2.0], [-2.0, 1.0]]).unwrap());
        assert!(!cone_meets_negative_orthant(&[[1.0, -0.5], [-0.5, 1.0]]).unwrap());
        // boundary: (1,-1) + (-1,0) = (0,-1)
        assert!(cone_meets_negative_orthant(&[[1.0, -1.0], [-1.0, 0.0]]).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let pts: Vec<Vec<f64>> = (0..rng.random_range(1..6))
                .map(|_| (0..3).map(|_| rng.random_range(-1.0..1.0)).collect())
                .collect();
            assert_eq!(
                cone_meets_negative_orthant_with(&pts, Arithmetic::Certified).unwrap(),
                cone_meets_negative_orthant_with(&pts, Arithmetic::Exact).unwrap()
            );
        }
    }
}
