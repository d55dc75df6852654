//! Log-log trend fitting and the three-valued verdict rules used by every
//! finite-n diagnostic.
//!
//! Asymptotic statements ("-> 0", "O(1)") have no finite-n decision rule, so
//! diagnostics fit `log value` against `log n` over the tested grid and
//! combine the fitted slope with the observed magnitudes under explicit
//! tolerances. Verdicts are deliberately three-valued: a short grid or a bad
//! fit yields `Inconclusive` rather than a guess.

use serde::{Deserialize, Serialize};

/// Least-squares fit of `ln value` against `ln n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrendFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual in log space.
    pub rms_residual: f64,
    /// Number of (positive) points entering the fit.
    pub points_used: usize,
}

/// Fits `ln v` vs `ln n` over the strictly positive values.
///
/// Returns `None` when fewer than two positive points exist.
pub fn fit_log_log(points: &[(f64, f64)]) -> Option<TrendFit> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(n, v)| n > 0.0 && v > 0.0 && v.is_finite())
        .map(|&(n, v)| (n.ln(), v.ln()))
        .collect();
    if logs.len() < 2 {
        return None;
    }
    let m = logs.len() as f64;
    let mean_x = logs.iter().map(|&(x, _)| x).sum::<f64>() / m;
    let mean_y = logs.iter().map(|&(_, y)| y).sum::<f64>() / m;
    let sxx: f64 = logs.iter().map(|&(x, _)| (x - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = logs
        .iter()
        .map(|&(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = logs
        .iter()
        .map(|&(x, y)| (y - (intercept + slope * x)).powi(2))
        .sum();
    Some(TrendFit {
        slope,
        intercept,
        rms_residual: (ss_res / m).sqrt(),
        points_used: logs.len(),
    })
}

/// Outcome of a finite-n diagnostic for an asymptotic condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Consistent,
    Inconsistent,
    Inconclusive,
}

/// Tolerances governing verdicts. All fields have conservative defaults and
/// are echoed into every report.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictThresholds {
    /// Slopes within this margin of 0 count as flat.
    pub slope_tol: f64,
    /// A "-> 0" condition additionally needs its final value below this.
    pub value_tol: f64,
    /// An "O(1)" condition needs all values at or below this.
    pub bound_tol: f64,
    /// Fits with RMS log-residual above this are inconclusive.
    pub fit_tol: f64,
    /// Minimum grid length for any verdict.
    pub min_grid: usize,
    /// Tail sums below this count as vanished (ratio-tail condition).
    pub eps_tail: f64,
    /// For random pairs: tolerated exceedance probability of the tail sum.
    pub exceedance_tol: f64,
}

impl Default for VerdictThresholds {
    fn default() -> Self {
        Self {
            slope_tol: 0.1,
            value_tol: 1e-2,
            bound_tol: 1e2,
            fit_tol: 1.0,
            min_grid: 4,
            eps_tail: 1e-3,
            exceedance_tol: 0.05,
        }
    }
}

/// Verdict for a "values -> 0" condition over an increasing n-grid.
///
/// Consistent requires a clearly negative fitted slope *and* a final value
/// below `value_tol`; grids shorter than `min_grid` or fits with large
/// residual are inconclusive. All-zero value sequences are consistent (the
/// quantity already vanished).
pub fn vanishing_verdict(points: &[(f64, f64)], th: &VerdictThresholds) -> (Verdict, Option<TrendFit>) {
    if points.len() < th.min_grid {
        return (Verdict::Inconclusive, fit_log_log(points));
    }
    if points.iter().any(|&(_, v)| v.is_nan()) {
        return (Verdict::Inconclusive, None);
    }
    if points.iter().any(|&(_, v)| v.is_infinite()) {
        return (Verdict::Inconsistent, None);
    }
    let final_value = points.last().expect("nonempty").1;
    if points.iter().all(|&(_, v)| v == 0.0) {
        return (Verdict::Consistent, None);
    }
    let fit = fit_log_log(points);
    match fit {
        Some(f) => {
            if f.rms_residual > th.fit_tol {
                return (Verdict::Inconclusive, fit);
            }
            // A sequence that exactly reaches zero has vanished regardless
            // of the slope fitted to its positive prefix.
            if final_value == 0.0 && f.slope < th.slope_tol {
                return (Verdict::Consistent, fit);
            }
            if f.slope < -th.slope_tol && final_value < th.value_tol {
                (Verdict::Consistent, fit)
            } else {
                (Verdict::Inconsistent, fit)
            }
        }
        // Not enough positive points for a fit: decide on magnitudes alone.
        None => {
            if points.iter().all(|&(_, v)| v < th.value_tol) {
                (Verdict::Consistent, None)
            } else {
                (Verdict::Inconclusive, None)
            }
        }
    }
}

/// Verdict for a "values = O(1)" condition: everything stays at or below
/// `bound_tol` with no increasing trend.
pub fn bounded_verdict(points: &[(f64, f64)], th: &VerdictThresholds) -> (Verdict, Option<TrendFit>) {
    if points.len() < th.min_grid {
        return (Verdict::Inconclusive, fit_log_log(points));
    }
    if points.iter().any(|&(_, v)| v.is_nan()) {
        return (Verdict::Inconclusive, None);
    }
    if points.iter().any(|&(_, v)| v.is_infinite()) {
        return (Verdict::Inconsistent, None);
    }
    if points.iter().all(|&(_, v)| v == 0.0) {
        return (Verdict::Consistent, None);
    }
    let max_value = points.iter().map(|&(_, v)| v).fold(f64::MIN, f64::max);
    let fit = fit_log_log(points);
    match fit {
        Some(f) => {
            if f.rms_residual > th.fit_tol {
                return (Verdict::Inconclusive, fit);
            }
            if max_value <= th.bound_tol && f.slope <= th.slope_tol {
                (Verdict::Consistent, fit)
            } else {
                (Verdict::Inconsistent, fit)
            }
        }
        None => {
            if max_value <= th.bound_tol {
                (Verdict::Consistent, None)
            } else {
                (Verdict::Inconsistent, None)
            }
        }
    }
}
