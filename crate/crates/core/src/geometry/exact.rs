//! Number types for the simplex solver and filtered exact sign predicates.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Feasibility tolerance of the floating-point solver.
pub const FLOAT_TOL: f64 = 1e-9;

/// Arithmetic used by the simplex tableau. Floating point compares against
/// [`FLOAT_TOL`]; rationals compare exactly.
pub(crate) trait Scalar: Clone + Debug {
    fn zero_value() -> Self;
    fn one_value() -> Self;
    fn from_f64(x: f64) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn exceeds_zero(&self) -> bool;
    fn below_zero(&self) -> bool;
    fn magnitude(&self) -> f64;
    fn is_exact_zero(&self) -> bool;
    fn approx_f64(&self) -> f64;

    fn is_zero_ish(&self) -> bool {
        !self.exceeds_zero() && !self.below_zero()
    }
}

impl Scalar for f64 {
    fn zero_value() -> Self {
        0.0
    }
    fn one_value() -> Self {
        1.0
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn exceeds_zero(&self) -> bool {
        *self > FLOAT_TOL
    }
    fn below_zero(&self) -> bool {
        *self < -FLOAT_TOL
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn is_exact_zero(&self) -> bool {
        *self == 0.0
    }
    fn approx_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for BigRational {
    fn zero_value() -> Self {
        Zero::zero()
    }
    fn one_value() -> Self {
        One::one()
    }
    fn from_f64(x: f64) -> Self {
        to_rational(x)
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn exceeds_zero(&self) -> bool {
        Signed::is_positive(self)
    }
    fn below_zero(&self) -> bool {
        Signed::is_negative(self)
    }
    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
    fn is_exact_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn approx_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// The exact value of a finite double.
pub fn to_rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite input")
}

/// Exact sign of `sum_i a_i b_i` for finite doubles.
///
/// A forward error bound on the floating-point sum decides almost every
/// call; the rest fall back to rational arithmetic.
pub fn dot_sign(a: &[f64], b: &[f64]) -> Ordering {
    debug_assert_eq!(a.len(), b.len());
    let mut sum = 0.0f64;
    let mut mag = 0.0f64;
    for (x, y) in a.iter().zip(b) {
        let p = x * y;
        sum += p;
        mag += p.abs();
    }
    let k = a.len() as f64 + 2.0;
    let u = f64::EPSILON / 2.0;
    let gamma = k * u / (1.0 - k * u);
    let bound = gamma * mag * (1.0 + 4.0 * u) + k * f64::MIN_POSITIVE;
    if mag.is_finite() {
        if sum > bound {
            return Ordering::Greater;
        }
        if sum < -bound {
            return Ordering::Less;
        }
    }
    let exact: BigRational = a
        .iter()
        .zip(b)
        .map(|(&x, &y)| to_rational(x) * to_rational(y))
        .fold(BigRational::zero(), |acc, t| acc + t);
    exact.cmp(&BigRational::zero())
}

/// Largest matrix order for which [`det_sign`] expands the determinant.
pub(crate) const DET_FILTER_MAX: usize = 5;

fn permutations(m: usize) -> Vec<(Vec<usize>, bool)> {
    // Heap's algorithm; each swap flips the parity
    let mut perm: Vec<usize> = (0..m).collect();
    let mut out = vec![(perm.clone(), false)];
    let mut c = vec![0usize; m];
    let mut odd = false;
    let mut i = 1;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            odd = !odd;
            out.push((perm.clone(), odd));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Exact sign of the determinant of a square matrix of finite doubles.
///
/// Orders up to [`DET_FILTER_MAX`] try a floating-point Leibniz expansion
/// with a forward error bound first; undecided cases and larger orders use
/// rational elimination.
pub(crate) fn det_sign(m: &[Vec<f64>]) -> Ordering {
    let n = m.len();
    if n == 0 {
        return Ordering::Greater;
    }
    if n <= DET_FILTER_MAX {
        thread_local! {
            static PERMS: Vec<Vec<(Vec<usize>, bool)>> =
                (0..=DET_FILTER_MAX).map(permutations).collect();
        }
        let decided = PERMS.with(|perms| {
            let mut sum = 0.0f64;
            let mut mag = 0.0f64;
            for (perm, odd) in &perms[n] {
                let t: f64 = perm.iter().enumerate().map(|(r, &c)| m[r][c]).product();
                sum += if *odd { -t } else { t };
                mag += t.abs();
            }
            let k = (perms[n].len() + n) as f64;
            let u = f64::EPSILON / 2.0;
            let bound = k * u / (1.0 - k * u) * mag * (1.0 + 4.0 * u)
                + k * f64::MIN_POSITIVE;
            if !mag.is_finite() {
                None
            } else if sum > bound {
                Some(Ordering::Greater)
            } else if sum < -bound {
                Some(Ordering::Less)
            } else {
                None
            }
        });
        if let Some(o) = decided {
            return o;
        }
    }
    exact_det(m).cmp(&BigRational::zero())
}

fn exact_det(m: &[Vec<f64>]) -> BigRational {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|&v| to_rational(v)).collect()).collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let (top, bottom) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        det *= &pivot_row[col];
        for row in bottom {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot_row[col];
            for (v, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *v -= p * &f;
            }
        }
    }
    det
}

/// Solves the square system `m x = rhs` by Gaussian elimination; `None`
/// when the matrix is singular (to the scalar's tolerance).
pub(crate) fn solve_square<T: Scalar>(mut m: Vec<Vec<T>>, mut rhs: Vec<T>) -> Option<Vec<T>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !m[r][col].is_zero_ish())
            .max_by(|&a, &b| m[a][col].magnitude().total_cmp(&m[b][col].magnitude()))?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let pivot_row = m[col].clone();
        let pivot_rhs = rhs[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || row[col].is_exact_zero() {
                continue;
            }
            let f = row[col].div(&pivot_row[col]);
            for (v, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *v = v.sub(&f.mul(p));
            }
            rhs[r] = rhs[r].sub(&f.mul(&pivot_rhs));
        }
    }
    Some((0..n).map(|i| rhs[i].div(&m[i][i])).collect())
}
