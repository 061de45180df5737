//! Summary statistics and bound verdicts.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fewest trials for which a verdict is issued.
pub const MIN_TRIALS_FOR_VERDICT: u64 = 30;
/// Standard errors a mean may sit below its target before it fails.
pub const FAIL_MARGIN_SE: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub trials: u64,
    pub mean: f64,
    pub sample_stddev: f64,
    pub standard_error: f64,
    pub ci95_lo: f64,
    pub ci95_hi: f64,
    pub bound_target: Option<f64>,
    pub verdict: Verdict,
}

impl SummaryStats {
    /// `|mean - value| <= k * standard_error`.
    pub fn within(&self, value: f64, k: f64) -> bool {
        (self.mean - value).abs() <= k * self.standard_error
    }
}

/// Mean, sample standard deviation, normal-approximation 95% interval and
/// the one-sided verdict against `bound_target`.
///
/// The verdict is FAIL iff `mean + 3 SE < target`; it is INCONCLUSIVE with
/// fewer than 30 values or without a target.
pub fn summarize(values: &[f64], bound_target: Option<f64>) -> Result<SummaryStats> {
    if values.is_empty() {
        return Err(Error::EmptyInput("trial records"));
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let sample_stddev = if values.len() > 1 {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    let standard_error = sample_stddev / n.sqrt();
    let verdict = match bound_target {
        _ if (values.len() as u64) < MIN_TRIALS_FOR_VERDICT => Verdict::Inconclusive,
        None => Verdict::Inconclusive,
        Some(t) if mean + FAIL_MARGIN_SE * standard_error < t => Verdict::Fail,
        Some(_) => Verdict::Pass,
    };
    Ok(SummaryStats {
        trials: values.len() as u64,
        mean,
        sample_stddev,
        standard_error,
        ci95_lo: mean - 1.96 * standard_error,
        ci95_hi: mean + 1.96 * standard_error,
        bound_target,
        verdict,
    })
}
