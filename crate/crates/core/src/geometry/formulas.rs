//! Closed-form counts and bounds in exact arithmetic.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `sum_{k=0}^{d-1} C(n-1, k)`, the count shared by every formula below.
pub fn binomial_prefix_sum(n: u64, d: u64) -> BigUint {
    debug_assert!(n >= 1);
    (0..d).map(|k| binomial(n - 1, k)).sum()
}

fn pow2(e: u64) -> BigUint {
    BigUint::one() << e
}

fn ratio(num: BigUint, den: BigUint) -> Rational {
    Rational::new(num.into(), den.into())
}

fn check_positive(n: u64, d: u64) -> Result<()> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidInput(format!("need n >= 1 and d >= 1, got n={n}, d={d}")));
    }
    Ok(())
}

/// Probability that `n` independent origin-symmetric points in general
/// position in `R^d` have the origin outside their convex hull:
/// `2^{-(n-1)} sum_{k<d} C(n-1, k)`.
pub fn wendel_probability(n: u64, d: u64) -> Result<Rational> {
    check_positive(n, d)?;
    Ok(ratio(binomial_prefix_sum(n, d), pow2(n - 1)))
}

/// Vertex count `2 sum_{k<d} C(n-1, k)` of a `d`-dimensional zonotope with
/// `n` generators in general position.
pub fn zonotope_vertex_count_generic(n: u64, d: u64) -> Result<BigUint> {
    check_positive(n, d)?;
    Ok(binomial_prefix_sum(n, d) * 2u32)
}

/// Lower bound `2^{-(d-1)} sum_{k<d} C(n-1, k)` on the expected number of
/// Pareto optima over the full cube.
pub fn lower_bound_basic(n: u64, d: u64) -> Result<Rational> {
    check_positive(n, d)?;
    Ok(ratio(binomial_prefix_sum(n, d), pow2(d - 1)))
}

/// The weaker closed form `((n-1) / (2(d-1)))^{d-1}`.
pub fn lower_bound_simple(n: u64, d: u64) -> Result<f64> {
    if n < 2 || d < 2 {
        return Err(Error::Precondition(format!(
            "simple bound needs n >= 2 and d >= 2, got n={n}, d={d}"
        )));
    }
    Ok(((n - 1) as f64 / (2.0 * (d - 1) as f64)).powi((d - 1) as i32))
}

/// Lower bound `|S| 2^{-(n+d-1)} sum_{k<d} C(n-1, k)` for a feasible set
/// `S` of the given size inside `{0,1}^n`.
pub fn lower_bound_restricted(n: u64, d: u64, s_card: &BigUint) -> Result<Rational> {
    check_positive(n, d)?;
    if s_card.is_zero() || *s_card > pow2(n) {
        return Err(Error::Precondition(format!(
            "feasible set size must lie in [1, 2^{n}], got {s_card}"
        )));
    }
    Ok(ratio(s_card * binomial_prefix_sum(n, d), pow2(n + d - 1)))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(10, 5), BigUint::from(252u32));
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(binomial(3, 7), BigUint::zero());
        assert_eq!(
            binomial(100, 50).to_string(),
            "100891344545564193334812497256"
        );
    }

    #[test]
    fn wendel_examples() {
        assert_eq!(wendel_probability(1, 3).unwrap(), q(1, 1));
        assert_eq!(wendel_probability(6, 2).unwrap(), q(6, 32));
        assert_eq!(rational_to_f64(&wendel_probability(6, 2).unwrap()), 0.1875);
        assert!(wendel_probability(0, 2).is_err());
    }

    #[test]
    fn wendel_is_one_up_to_dimension_then_decreasing() {
        for d in 1..6u64 {
            for n in 1..=d {
                assert_eq!(wendel_probability(n, d).unwrap(), q(1, 1));
            }
            let mut prev = wendel_probability(d, d).unwrap();
            for n in d + 1..40 {
                let p = wendel_probability(n, d).unwrap();
                assert!(p < prev && p > q(0, 1));
                prev = p;
            }
        }
    }

    #[test]
    fn zonotope_examples() {
        for n in 1..20 {
            assert_eq!(zonotope_vertex_count_generic(n, 1).unwrap(), BigUint::from(2u32));
        }
        assert_eq!(zonotope_vertex_count_generic(10, 2).unwrap(), BigUint::from(20u32));
        assert_eq!(zonotope_vertex_count_generic(6, 3).unwrap(), BigUint::from(32u32));
        assert_eq!(zonotope_vertex_count_generic(8, 2).unwrap(), BigUint::from(16u32));
    }

    #[test]
    fn basic_bound_examples() {
        for n in 1..10 {
            assert_eq!(lower_bound_basic(n, 1).unwrap(), q(1, 1));
        }
        assert_eq!(lower_bound_basic(12, 2).unwrap(), q(6, 1));
        assert_eq!(lower_bound_basic(9, 3).unwrap(), q(37, 4));
        assert_eq!(lower_bound_basic(10, 3).unwrap(), q(23, 2));
        assert_eq!(lower_bound_simple(9, 3).unwrap(), 4.0);
        assert!(lower_bound_simple(9, 1).is_err());
    }

    #[test]
    fn basic_bound_dominates_simple_bound() {
        for d in 2..8u64 {
            for n in 2..80u64 {
                let basic = rational_to_f64(&lower_bound_basic(n, d).unwrap());
                let simple = lower_bound_simple(n, d).unwrap();
                assert!(basic >= simple * (1.0 - 1e-12), "n={n} d={d}: {basic} < {simple}");
            }
        }
    }

    #[test]
    fn restricted_bound_examples() {
        for (n, d) in [(5u64, 2u64), (10, 3), (12, 4)] {
            assert_eq!(
                lower_bound_restricted(n, d, &pow2(n)).unwrap(),
                lower_bound_basic(n, d).unwrap()
            );
        }
        assert_eq!(
            lower_bound_restricted(10, 2, &BigUint::from(252u32)).unwrap(),
            q(2520, 2048)
        );
        for n in 1..12 {
            for d in 1..5 {
                assert!(lower_bound_restricted(n, d, &BigUint::one()).unwrap() <= q(1, 1));
            }
        }
        assert!(lower_bound_restricted(3, 2, &BigUint::zero()).is_err());
        assert!(lower_bound_restricted(3, 2, &BigUint::from(9u32)).is_err());
    }
}
