//! Growth-law estimation from ledger counters.
//!
//! A counter that scales as `C(n) = a * n^e` is linear in log-log space:
//! `ln C = ln a + e * ln n`. Ordinary least squares on the logged samples
//! estimates the exponent as the slope, with the usual standard error
//! `s / sqrt(sum (x - mean x)^2)` where `s^2` is the residual variance on
//! `k - 2` degrees of freedom, and a 95% confidence interval from the
//! two-sided Student t quantile. Counters here are integers obtained by
//! ceiling real charges, so fitted slopes carry a small positive bias at
//! tiny `n`; bench grids start at `n = 64` where it is negligible.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Least-squares fit of `ln counter` against `ln n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    /// Estimated exponent.
    pub slope: f64,
    /// Estimated `ln` of the leading constant.
    pub intercept: f64,
    /// Standard error of the slope.
    pub slope_stderr: f64,
    /// Two-sided 95% confidence interval for the slope.
    pub ci95: (f64, f64),
    /// Root-mean-square residual in log space.
    pub residual_rms: f64,
    /// Number of fitted points.
    pub points: usize,
}

impl FitResult {
    /// Whether `exponent` lies within `tolerance` of the fitted slope.
    pub fn slope_within(&self, exponent: f64, tolerance: f64) -> bool {
        (self.slope - exponent).abs() <= tolerance
    }
}

/// Two-sided 95% Student t quantile for `df` degrees of freedom.
fn t_quantile_975(df: usize) -> f64 {
    const TABLE: [f64; 30] = [
        12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228, 2.201, 2.179, 2.160,
        2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086, 2.080, 2.074, 2.069, 2.064, 2.060, 2.056,
        2.052, 2.048, 2.045, 2.042,
    ];
    assert!(df >= 1, "t quantile needs at least one degree of freedom");
    if df <= TABLE.len() {
        TABLE[df - 1]
    } else {
        1.960
    }
}

/// Fits a power law to `(n, counter)` samples by least squares on natural
/// logs. Requires at least four samples with positive coordinates and at
/// least two distinct `n`.
pub fn fit_power_law(samples: &[(u64, u64)]) -> Result<FitResult> {
    if samples.len() < 4 {
        return Err(Error::InvalidParameter(format!(
            "power-law fit needs at least 4 samples, got {}",
            samples.len()
        )));
    }
    for &(n, counter) in samples {
        if n == 0 || counter == 0 {
            return Err(Error::InvalidParameter(format!(
                "power-law fit needs positive samples, got ({n}, {counter})"
            )));
        }
    }
    let logged: Vec<(f64, f64)> = samples
        .iter()
        .map(|&(n, c)| ((n as f64).ln(), (c as f64).ln()))
        .collect();
    let k = logged.len() as f64;
    let mean_x = logged.iter().map(|p| p.0).sum::<f64>() / k;
    let mean_y = logged.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = logged.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidParameter(
            "power-law fit needs at least two distinct n".into(),
        ));
    }
    let sxy: f64 = logged.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;

    let rss: f64 = logged
        .iter()
        .map(|p| (p.1 - (intercept + slope * p.0)).powi(2))
        .sum();
    let df = logged.len() - 2;
    let variance = rss / df as f64;
    let slope_stderr = (variance / sxx).sqrt();
    let half_width = t_quantile_975(df) * slope_stderr;
    Ok(FitResult {
        slope,
        intercept,
        slope_stderr,
        ci95: (slope - half_width, slope + half_width),
        residual_rms: (rss / k).sqrt(),
        points: logged.len(),
    })
}
