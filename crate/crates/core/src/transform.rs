//! Sample-to-sample transforms: deviations from a reference point, shifts
//! and per-axis scaling.
//!
//! Every deviation and shift is a translation of the coordinate axes and
//! leaves Pearson's coefficient unchanged. Scaling leaves its magnitude
//! unchanged and flips its sign when exactly one axis is scaled by a
//! negative factor, so "any non-zero factor preserves r" only holds for
//! factors of matching sign.
//!
//! Text form, as accepted by [`TransformSpec::from_str`] and produced by
//! `Display`: `mean`, `min`, `max`, `point:K` (1-based), `median`, `std`,
//! `shift:A,B`, `scale:OPa,OPb` where `OP` is `*` or `/`, e.g. `scale:/5,*2`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::correlation::pearson;
use crate::error::{Axis, Error, Result};
use crate::sample::{is_constant, mean, median, min_max, BivariateSample};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScaleOp {
    Mul,
    Div,
}

impl ScaleOp {
    fn symbol(self) -> char {
        match self {
            ScaleOp::Mul => '*',
            ScaleOp::Div => '/',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TransformSpec {
    /// `x − x̄`, `y − ȳ`.
    DeviationFromMean,
    /// `x − x_min`, `y − y_min`.
    DeviationFromMin,
    /// `x_max − x`, `y_max − y`. Note the reversed order.
    DeviationFromMax,
    /// `x − x_k`, `y − y_k` for the 1-based pair index `k`.
    DeviationFromPoint(usize),
    /// `x − median(x)`, `y − median(y)`.
    DeviationFromMedian,
    /// `x − s_x`, `y − s_y` with `s` the sample standard deviation (n − 1
    /// divisor). A translation by a constant, not a standardization.
    DeviationFromStd,
    /// `x + a`, `y + b`.
    Shift(f64, f64),
    /// `x ∘ a`, `y ∘ b` where each `∘` is multiplication or division.
    Scale {
        a: f64,
        op_x: ScaleOp,
        b: f64,
        op_y: ScaleOp,
    },
}

impl TransformSpec {
    /// Builds a scale transform, rejecting zero factors.
    pub fn scale(a: f64, op_x: ScaleOp, b: f64, op_y: ScaleOp) -> Result<Self> {
        let spec = TransformSpec::Scale { a, op_x, b, op_y };
        spec.validate_factors()?;
        Ok(spec)
    }

    fn validate_factors(&self) -> Result<()> {
        if let TransformSpec::Scale { a, b, .. } = *self {
            if a == 0.0 || !a.is_finite() {
                return Err(Error::ZeroScale(Axis::X));
            }
            if b == 0.0 || !b.is_finite() {
                return Err(Error::ZeroScale(Axis::Y));
            }
        }
        Ok(())
    }

    /// Relation between Pearson's coefficient before and after this transform.
    pub fn expected_relation(&self) -> Relation {
        match *self {
            // Dividing by a negative is a negative effective factor, so the
            // sign of the factor alone decides.
            TransformSpec::Scale { a, b, .. } if (a < 0.0) != (b < 0.0) => Relation::SignFlipped,
            _ => Relation::Equal,
        }
    }
}

impl fmt::Display for TransformSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformSpec::DeviationFromMean => f.write_str("mean"),
            TransformSpec::DeviationFromMin => f.write_str("min"),
            TransformSpec::DeviationFromMax => f.write_str("max"),
            TransformSpec::DeviationFromPoint(k) => write!(f, "point:{k}"),
            TransformSpec::DeviationFromMedian => f.write_str("median"),
            TransformSpec::DeviationFromStd => f.write_str("std"),
            TransformSpec::Shift(a, b) => write!(f, "shift:{a},{b}"),
            TransformSpec::Scale { a, op_x, b, op_y } => {
                write!(f, "scale:{}{a},{}{b}", op_x.symbol(), op_y.symbol())
            }
        }
    }
}

impl FromStr for TransformSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidTransform {
            spec: text.to_string(),
            reason: reason.to_string(),
        };
        let number = |s: &str| -> Result<f64> {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| invalid(&format!("`{}` is not a finite number", s.trim())))
        };
        let pair = |args: Option<&str>| -> Result<(String, String)> {
            let args = args.ok_or_else(|| invalid("expected two comma-separated arguments"))?;
            match args.split_once(',') {
                Some((l, r)) => Ok((l.trim().to_string(), r.trim().to_string())),
                None => Err(invalid("expected two comma-separated arguments")),
            }
        };

        let (name, args) = match text.trim().split_once(':') {
            Some((name, args)) => (name, Some(args)),
            None => (text.trim(), None),
        };
        let spec = match (name, args) {
            ("mean", None) => TransformSpec::DeviationFromMean,
            ("min", None) => TransformSpec::DeviationFromMin,
            ("max", None) => TransformSpec::DeviationFromMax,
            ("median", None) => TransformSpec::DeviationFromMedian,
            ("std", None) => TransformSpec::DeviationFromStd,
            ("point", Some(k)) => {
                let k = k
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| invalid("point index must be a positive integer"))?;
                if k == 0 {
                    return Err(invalid("point index is 1-based"));
                }
                TransformSpec::DeviationFromPoint(k)
            }
            ("shift", args) => {
                let (a, b) = pair(args)?;
                TransformSpec::Shift(number(&a)?, number(&b)?)
            }
            ("scale", args) => {
                let (a, b) = pair(args)?;
                let factor = |s: &str| -> Result<(ScaleOp, f64)> {
                    let (op, rest) = match s.chars().next() {
                        Some('*') => (ScaleOp::Mul, &s[1..]),
                        Some('/') => (ScaleOp::Div, &s[1..]),
                        _ => return Err(invalid("scale factors start with `*` or `/`")),
                    };
                    Ok((op, number(rest)?))
                };
                let (op_x, a) = factor(&a)?;
                let (op_y, b) = factor(&b)?;
                TransformSpec::scale(a, op_x, b, op_y)?
            }
            ("mean" | "min" | "max" | "median" | "std", Some(_)) => {
                return Err(invalid("this transform takes no arguments"))
            }
            ("point", None) => return Err(invalid("expected `point:K`")),
            _ => return Err(invalid("unknown transform")),
        };
        Ok(spec)
    }
}

/// Expected effect of a transform on Pearson's coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Equal,
    SignFlipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvarianceCheck {
    pub r_before: f64,
    pub r_after: f64,
    pub expected_relation: Relation,
}

impl InvarianceCheck {
    /// Whether the observed pair honours the expected relation within `tol`.
    pub fn holds(&self, tol: f64) -> bool {
        let target = match self.expected_relation {
            Relation::Equal => self.r_before,
            Relation::SignFlipped => -self.r_before,
        };
        (self.r_after - target).abs() <= tol
    }
}

fn sample_std(values: &[f64]) -> f64 {
    let m = mean(values);
    let ss: f64 = values.iter().map(|v| (v - m) * (v - m)).sum();
    (ss / (values.len() - 1) as f64).sqrt()
}

fn scaled(v: f64, op: ScaleOp, factor: f64) -> f64 {
    match op {
        ScaleOp::Mul => v * factor,
        ScaleOp::Div => v / factor,
    }
}

/// Applies `spec` to both axes, returning a new sample of the same length
/// and pair order.
pub fn apply_transform(sample: &BivariateSample, spec: &TransformSpec) -> Result<BivariateSample> {
    let (xs, ys) = (sample.xs(), sample.ys());
    let offset = |fx: f64, fy: f64| -> (Vec<f64>, Vec<f64>) {
        (
            xs.iter().map(|x| x - fx).collect(),
            ys.iter().map(|y| y - fy).collect(),
        )
    };

    let (tx, ty) = match *spec {
        TransformSpec::DeviationFromMean => offset(mean(xs), mean(ys)),
        TransformSpec::DeviationFromMin => offset(min_max(xs).0, min_max(ys).0),
        TransformSpec::DeviationFromMax => {
            let (xmax, ymax) = (min_max(xs).1, min_max(ys).1);
            (
                xs.iter().map(|x| xmax - x).collect(),
                ys.iter().map(|y| ymax - y).collect(),
            )
        }
        TransformSpec::DeviationFromPoint(k) => {
            if k == 0 || k > sample.len() {
                return Err(Error::IndexOutOfRange { k, n: sample.len() });
            }
            offset(xs[k - 1], ys[k - 1])
        }
        TransformSpec::DeviationFromMedian => offset(median(xs)?, median(ys)?),
        TransformSpec::DeviationFromStd => {
            if is_constant(xs) {
                return Err(Error::ZeroVariance(Axis::X));
            }
            if is_constant(ys) {
                return Err(Error::ZeroVariance(Axis::Y));
            }
            offset(sample_std(xs), sample_std(ys))
        }
        TransformSpec::Shift(a, b) => offset(-a, -b),
        TransformSpec::Scale { a, op_x, b, op_y } => {
            spec.validate_factors()?;
            (
                xs.iter().map(|&x| scaled(x, op_x, a)).collect(),
                ys.iter().map(|&y| scaled(y, op_y, b)).collect(),
            )
        }
    };
    BivariateSample::new(tx, ty)
}

/// Pearson's coefficient before and after applying `spec`.
pub fn demonstrate_invariance(
    sample: &BivariateSample,
    spec: &TransformSpec,
) -> Result<InvarianceCheck> {
    let r_before = pearson(sample)?.value;
    let r_after = pearson(&apply_transform(sample, spec)?)?.value;
    Ok(InvarianceCheck {
        r_before,
        r_after,
        expected_relation: spec.expected_relation(),
    })
}
