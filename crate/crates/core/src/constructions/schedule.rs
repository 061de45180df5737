//! Object accounting for the cloning-step lower-bound construction.
//!
//! A base instance with `n_p` objects is followed by `n_q` cloning steps of
//! `d` objects each, plus the objects the final step needs to compensate
//! for the density bound. Only the accounting and the bound product are
//! computed; the cloning gadget itself is not built.

use serde::Serialize;

use crate::error::{Error, Result};

/// Parameters of the schedule for `n` objects, `d` profits and density
/// bound `phi`. Logarithms are natural.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BRParameters {
    pub n: u64,
    pub d: u64,
    pub phi: f64,
    pub n_p: u64,
    pub n_q: u64,
    pub n_q_hat: f64,
    /// Whether `phi <= (2 phi / (phi - d))^(n / 2d)`.
    pub density_fits: bool,
    /// Saturation density, set when `density_fits` is false.
    pub phi_hat: Option<f64>,
    /// Relative residual of `phi_hat` in its defining equation.
    pub phi_hat_residual: Option<f64>,
    /// `n_p + d n_q + ceil((2d^2 / (phi - d)) (2 phi / (phi - d))^n_q)`,
    /// with `phi_hat` in place of `phi` when set. Saturates.
    pub objects_used: u64,
    /// The same count before rounding up the last term.
    pub objects_used_real: f64,
    pub bound_value: f64,
    pub ln_bound_value: f64,
}

fn ln_ratio(phi: f64, d: f64) -> f64 {
    // ln(2 phi / (phi - d)) = ln 2 - ln(1 - d/phi)
    std::f64::consts::LN_2 - (-d / phi).ln_1p()
}

/// `ln phi - (n / 2d) ln(2 phi / (phi - d))` at `phi = e^l`.
fn saturation_gap(l: f64, n: f64, d: f64) -> f64 {
    l - n / (2.0 * d) * (std::f64::consts::LN_2 - (-d * (-l).exp()).ln_1p())
}

/// Root of `phi = (2 phi / (phi - d))^(n / 2d)` with `phi > d`, by
/// bisection on `ln phi`. Returns the root and its relative residual.
pub fn solve_phi_hat(n: u64, d: u64) -> Result<(f64, f64)> {
    let (nf, df) = (n as f64, d as f64);
    if d == 0 || n == 0 {
        return Err(Error::Precondition("saturation density needs n, d >= 1".into()));
    }
    // the gap tends to -inf as phi decreases to d
    let mut lo = df.ln();
    let mut hi = (nf / (2.0 * df) * std::f64::consts::LN_2).max(lo + 1.0);
    while saturation_gap(hi, nf, df) <= 0.0 {
        hi = 2.0 * hi + 1.0;
        if !hi.is_finite() {
            return Err(Error::NumericFailure("no upper bracket for the saturation density".into()));
        }
    }
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if saturation_gap(mid, nf, df) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-13 * hi.abs().max(1.0) {
            break;
        }
    }
    let l = 0.5 * (lo + hi);
    Ok((l.exp(), saturation_gap(l, nf, df).exp_m1().abs()))
}

/// `n_p^(d - 1.5) (2^d / d)^n_q`.
pub fn br_bound_value(params: &BRParameters) -> f64 {
    bound(params.n_p, params.n_q, params.d)
}

fn bound(n_p: u64, n_q: u64, d: u64) -> f64 {
    let df = d as f64;
    let base = (n_p as f64).powf(df - 1.5);
    let step = 2f64.powi(d as i32) / df;
    match i32::try_from(n_q) {
        Ok(q) => base * step.powi(q),
        Err(_) => f64::INFINITY,
    }
}

fn ln_bound(n_p: u64, n_q: u64, d: u64) -> f64 {
    let df = d as f64;
    (df - 1.5) * (n_p as f64).ln() + n_q as f64 * (df * std::f64::consts::LN_2 - df.ln())
}

/// Computes the schedule. Requires `d >= 2`, `n >= 16 d^2` and `phi >= 2d`.
pub fn br_parameters(n: u64, d: u64, phi: f64) -> Result<BRParameters> {
    if d < 2 {
        return Err(Error::Precondition(format!("d >= 2 violated: d = {d}")));
    }
    if n < 16 * d * d {
        return Err(Error::Precondition(format!(
            "n >= 16 d^2 violated: n = {n}, 16 d^2 = {}",
            16 * d * d
        )));
    }
    if !(phi.is_finite() && phi >= 2.0 * d as f64) {
        return Err(Error::Precondition(format!(
            "phi >= 2d violated: phi = {phi}, 2d = {}",
            2 * d
        )));
    }
    let (nf, df) = (n as f64, d as f64);
    let half_steps = nf / (2.0 * df);
    let n_q_hat_raw = phi.ln() / ln_ratio(phi, df);
    let density_fits = n_q_hat_raw <= half_steps;

    let (n_q_hat, phi_eff, phi_hat, residual) = if density_fits {
        (n_q_hat_raw, phi, None, None)
    } else {
        let (ph, res) = solve_phi_hat(n, d)?;
        (half_steps, ph, Some(ph), Some(res))
    };
    let n_p = n / 2;
    let n_q = n_q_hat.floor() as u64;
    let ln_tail = (2.0 * df * df / (phi_eff - df)).ln() + n_q as f64 * ln_ratio(phi_eff, df);
    let tail = ln_tail.exp();
    let base = (n_p + d * n_q) as f64;
    let objects_used_real = base + tail;
    let objects_used = if objects_used_real.ceil() >= u64::MAX as f64 {
        u64::MAX
    } else {
        n_p + d * n_q + tail.ceil() as u64
    };
    let ln_bound_value = ln_bound(n_p, n_q, d);
    Ok(BRParameters {
        n,
        d,
        phi,
        n_p,
        n_q,
        n_q_hat,
        density_fits,
        phi_hat,
        phi_hat_residual: residual,
        objects_used,
        objects_used_real,
        bound_value: bound(n_p, n_q, d),
        ln_bound_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example() {
        let p = br_parameters(100, 2, 16.0).unwrap();
        assert_eq!(p.n_p, 50);
        // independent base-10 logarithms
        let expect = 16f64.log10() / (32.0f64 / 14.0).log10();
        assert!((p.n_q_hat - expect).abs() < 1e-12);
        assert!((p.n_q_hat - 3.3539).abs() < 1e-3);
        assert_eq!(p.n_q, 3);
        assert!((p.bound_value - 50f64.sqrt() * 8.0).abs() < 1e-9);
        assert!((br_bound_value(&p) - 56.5685).abs() < 1e-3);
        assert!(p.density_fits && p.objects_used <= 100);
    }

    #[test]
    fn phi_equal_to_2d() {
        let p = br_parameters(64, 2, 4.0).unwrap();
        assert!((p.n_q_hat - 1.0).abs() < 1e-12);
        assert_eq!(p.n_q, 1);
    }

    #[test]
    fn preconditions_named() {
        assert!(br_parameters(100, 1, 16.0).unwrap_err().to_string().contains("d >= 2"));
        assert!(br_parameters(63, 2, 16.0).unwrap_err().to_string().contains("16 d^2"));
        assert!(br_parameters(100, 2, 3.0).unwrap_err().to_string().contains("phi >= 2d"));
    }

    #[test]
    fn saturation_density() {
        let (ph, res) = solve_phi_hat(80, 2).unwrap();
        assert!(res < 1e-9);
        let rhs = (2.0 * ph / (ph - 2.0)).powf(20.0);
        assert!((ph - rhs).abs() / ph < 1e-9);
        // of the order of 2^20
        assert!(ph > 2f64.powi(19) && ph < 2f64.powi(21));
        let p = br_parameters(80, 2, 1e12).unwrap();
        assert!(!p.density_fits);
        assert_eq!(p.n_q, 20);
        assert_eq!(p.phi_hat, Some(ph));
    }

    #[test]
    fn bound_monotone_in_steps() {
        for d in 2..6 {
            for n_q in 0..30 {
                assert!(ln_bound(50, n_q + 1, d) > ln_bound(50, n_q, d));
            }
            assert_eq!(bound(50, 0, d), 50f64.powf(d as f64 - 1.5));
            assert!((ln_bound(50, 7, d) - bound(50, 7, d).ln()).abs() < 1e-12);
        }
    }
}
