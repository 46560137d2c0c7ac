//! Pearson's product-moment correlation and the strength banding of |r|.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Axis, Error, Result};
use crate::sample::{is_constant, mean, BivariateSample, SummaryStats};

/// Rounding slack tolerated above |r| = 1 before the value is treated as a bug.
pub const CLAMP_TOLERANCE: f64 = 1e-12;

/// Which coefficient a [`CorrelationResult`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Pearson on the raw values.
    Pearson,
    /// Pearson on the ranks of both axes.
    Spearman,
    /// Pearson on (rank of x, raw y).
    MixRankX,
    /// Pearson on (raw x, rank of y).
    MixRankY,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Pearson,
        Method::Spearman,
        Method::MixRankX,
        Method::MixRankY,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Pearson => "pearson",
            Method::Spearman => "spearman",
            Method::MixRankX => "mix_rank_x",
            Method::MixRankY => "mix_rank_y",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "pearson" => Ok(Method::Pearson),
            "spearman" => Ok(Method::Spearman),
            "mix-x" | "mix_x" | "mix_rank_x" => Ok(Method::MixRankX),
            "mix-y" | "mix_y" | "mix_rank_y" => Ok(Method::MixRankY),
            other => Err(format!("unknown method `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrelationResult {
    /// Always within [-1, 1].
    pub value: f64,
    pub method: Method,
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StrengthClass {
    Strong,
    Moderate,
    Weak,
}

impl fmt::Display for StrengthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StrengthClass::Strong => "strong",
            StrengthClass::Moderate => "moderate",
            StrengthClass::Weak => "weak",
        })
    }
}

/// Bands |r|: strong on [0.8, 1], moderate on (0.5, 0.8), weak on [0, 0.5].
pub fn classify_strength(value: f64) -> Result<StrengthClass> {
    let magnitude = value.abs();
    if magnitude.is_nan() || magnitude > 1.0 {
        return Err(Error::OutOfRange(value));
    }
    Ok(if magnitude >= 0.8 {
        StrengthClass::Strong
    } else if magnitude > 0.5 {
        StrengthClass::Moderate
    } else {
        StrengthClass::Weak
    })
}

pub fn pearson(sample: &BivariateSample) -> Result<CorrelationResult> {
    let value = pearson_slices(sample.xs(), sample.ys())?;
    Ok(CorrelationResult {
        value,
        method: Method::Pearson,
        n: sample.len(),
    })
}

/// Pearson's coefficient on two equally long slices, centered about the
/// means before any products are formed.
///
/// Callers guarantee equal lengths of at least two finite values.
pub(crate) fn pearson_slices(xs: &[f64], ys: &[f64]) -> Result<f64> {
    debug_assert_eq!(xs.len(), ys.len());
    if is_constant(xs) {
        return Err(Error::ZeroVariance(Axis::X));
    }
    if is_constant(ys) {
        return Err(Error::ZeroVariance(Axis::Y));
    }
    let (mx, my) = (mean(xs), mean(ys));
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    // Non-constant data can still underflow to zero spread.
    if sxx == 0.0 {
        return Err(Error::ZeroVariance(Axis::X));
    }
    if syy == 0.0 {
        return Err(Error::ZeroVariance(Axis::Y));
    }
    clamp_unit(sxy / denominator(sxx, syy))
}

/// Pearson's coefficient evaluated directly from the raw sums,
/// `(Σxy − ΣxΣy/n) / (√(Σx² − (Σx)²/n) · √(Σy² − (Σy)²/n))`.
///
/// This mirrors the hand-calculation layout and loses precision when the
/// data sit far from the origin; [`pearson`] is the stable route. A centered
/// sum that is zero or lost in rounding of the raw sums counts as zero
/// variance.
pub fn pearson_from_sums(stats: &SummaryStats) -> Result<f64> {
    let cxx = stats.centered_xx();
    let cyy = stats.centered_yy();
    // Relative cut-off below which the centered sum is cancellation noise.
    let noise = 64.0 * f64::EPSILON;
    if cxx.is_nan() || cxx <= noise * stats.sum_x2 {
        return Err(Error::ZeroVariance(Axis::X));
    }
    if cyy.is_nan() || cyy <= noise * stats.sum_y2 {
        return Err(Error::ZeroVariance(Axis::Y));
    }
    clamp_unit(stats.centered_xy() / denominator(cxx, cyy))
}

/// `√(sxx·syy)`, taking the roots separately only if the product leaves the
/// normal range. A single root keeps exactly linear data at exactly ±1.
fn denominator(sxx: f64, syy: f64) -> f64 {
    let product = sxx * syy;
    if product.is_normal() {
        product.sqrt()
    } else {
        sxx.sqrt() * syy.sqrt()
    }
}

fn clamp_unit(r: f64) -> Result<f64> {
    if r.abs() <= 1.0 {
        Ok(r)
    } else if r.abs() <= 1.0 + CLAMP_TOLERANCE {
        Ok(r.signum())
    } else {
        Err(Error::Inconsistent(r))
    }
}
