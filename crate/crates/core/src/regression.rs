//! Least-squares line `ŷ = a + b·x` and the coefficient of determination.

use serde::Serialize;

use crate::error::{Axis, Error, Result};
use crate::sample::{is_constant, mean, BivariateSample};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegressionFit {
    /// `b`, in y-units per x-unit.
    pub slope: f64,
    /// `a = ȳ − b·x̄`.
    pub intercept: f64,
    /// `ŷ_i = a + b·x_i`, aligned with the sample.
    pub predictions: Vec<f64>,
    /// `Σ(y − ȳ)²`.
    pub ss_total: f64,
    /// `Σ(y − ŷ)²`.
    pub ss_resid: f64,
    /// `1 − ss_resid/ss_total`; `None` when y is constant and r² is undefined.
    pub r_squared: Option<f64>,
}

impl RegressionFit {
    pub fn predict(&self, x: f64) -> f64 {
        self.intercept + self.slope * x
    }
}

pub fn least_squares_fit(sample: &BivariateSample) -> Result<RegressionFit> {
    let (xs, ys) = (sample.xs(), sample.ys());
    if is_constant(xs) {
        return Err(Error::ZeroVariance(Axis::X));
    }
    let (mx, my) = (mean(xs), mean(ys));
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if sxx == 0.0 {
        return Err(Error::ZeroVariance(Axis::X));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;

    let predictions: Vec<f64> = xs.iter().map(|x| intercept + slope * x).collect();
    let ss_total: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let ss_resid: f64 = ys
        .iter()
        .zip(&predictions)
        .map(|(y, p)| (y - p) * (y - p))
        .sum();

    let mut fit = RegressionFit {
        slope,
        intercept,
        predictions,
        ss_total,
        ss_resid,
        r_squared: None,
    };
    fit.r_squared = r_squared_of(&fit).ok();
    Ok(fit)
}

/// `1 − SSResid/SSTo`, clamped to [0, 1].
pub fn r_squared_of(fit: &RegressionFit) -> Result<f64> {
    if fit.ss_total.is_nan() || fit.ss_total <= 0.0 {
        return Err(Error::ZeroVariance(Axis::Y));
    }
    Ok((1.0 - fit.ss_resid / fit.ss_total).clamp(0.0, 1.0))
}
