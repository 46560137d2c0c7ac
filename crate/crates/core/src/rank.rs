//! Rank transformation, Spearman's coefficient and the two mixed
//! rank/value coefficients.
//!
//! The mixed coefficients apply Pearson's formula after rank-transforming
//! only one axis: [`mix_rank_x`] ranks x and keeps y raw, [`mix_rank_y`]
//! keeps x raw and ranks y. They usually land between Spearman's and
//! Pearson's values, though that ordering is not guaranteed.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::correlation::{pearson_slices, CorrelationResult, Method};
use crate::error::{Axis, Error, Result};
use crate::sample::BivariateSample;

/// How equal values share ranks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TiePolicy {
    /// Mean of the positions the tied group occupies (fractional ranks).
    #[default]
    Average,
    /// Lowest position of the group.
    Min,
    /// Highest position of the group.
    Max,
    /// Consecutive integers per distinct value, no gaps.
    Dense,
}

impl fmt::Display for TiePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TiePolicy::Average => "average",
            TiePolicy::Min => "min",
            TiePolicy::Max => "max",
            TiePolicy::Dense => "dense",
        })
    }
}

impl FromStr for TiePolicy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "average" => Ok(TiePolicy::Average),
            "min" => Ok(TiePolicy::Min),
            "max" => Ok(TiePolicy::Max),
            "dense" => Ok(TiePolicy::Dense),
            other => Err(format!("unknown tie policy `{other}`")),
        }
    }
}

/// Ascending ranks (1 = smallest) aligned with the source sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct RankVector {
    ranks: Vec<f64>,
    tie_policy: TiePolicy,
}

impl RankVector {
    pub fn ranks(&self) -> &[f64] {
        &self.ranks
    }

    pub fn tie_policy(&self) -> TiePolicy {
        self.tie_policy
    }

    pub fn source_length(&self) -> usize {
        self.ranks.len()
    }

    pub fn into_ranks(self) -> Vec<f64> {
        self.ranks
    }
}

pub fn rank_transform(values: &[f64], tie_policy: TiePolicy) -> Result<RankVector> {
    if values.is_empty() {
        return Err(Error::EmptySequence);
    }
    if let Some(index) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFiniteValue {
            axis: Axis::X,
            index,
        });
    }

    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));

    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    let mut dense = 0.0;
    while start < order.len() {
        let mut end = start + 1;
        // -0.0 and 0.0 compare equal here and share a rank.
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        dense += 1.0;
        // Positions start..end hold 1-based ranks start+1..=end.
        let rank = match tie_policy {
            TiePolicy::Average => (start + 1 + end) as f64 / 2.0,
            TiePolicy::Min => (start + 1) as f64,
            TiePolicy::Max => end as f64,
            TiePolicy::Dense => dense,
        };
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        start = end;
    }

    Ok(RankVector { ranks, tie_policy })
}

fn ranks_of(sample: &BivariateSample, axis: Axis, tie_policy: TiePolicy) -> Vec<f64> {
    // A validated sample is non-empty and finite, so ranking cannot fail.
    rank_transform(sample.axis(axis), tie_policy)
        .expect("validated sample")
        .into_ranks()
}

fn correlate(xs: &[f64], ys: &[f64], method: Method) -> Result<CorrelationResult> {
    Ok(CorrelationResult {
        value: pearson_slices(xs, ys)?,
        method,
        n: xs.len(),
    })
}

/// Pearson's coefficient on the ranks of both axes.
pub fn spearman(sample: &BivariateSample, tie_policy: TiePolicy) -> Result<CorrelationResult> {
    let rx = ranks_of(sample, Axis::X, tie_policy);
    let ry = ranks_of(sample, Axis::Y, tie_policy);
    correlate(&rx, &ry, Method::Spearman)
}

/// Pearson's coefficient on (rank of x, raw y).
pub fn mix_rank_x(sample: &BivariateSample, tie_policy: TiePolicy) -> Result<CorrelationResult> {
    let rx = ranks_of(sample, Axis::X, tie_policy);
    correlate(&rx, sample.ys(), Method::MixRankX)
}

/// Pearson's coefficient on (raw x, rank of y).
pub fn mix_rank_y(sample: &BivariateSample, tie_policy: TiePolicy) -> Result<CorrelationResult> {
    let ry = ranks_of(sample, Axis::Y, tie_policy);
    correlate(sample.xs(), &ry, Method::MixRankY)
}

/// Dispatches to the coefficient named by `method`.
pub fn correlation(
    sample: &BivariateSample,
    method: Method,
    tie_policy: TiePolicy,
) -> Result<CorrelationResult> {
    match method {
        Method::Pearson => crate::correlation::pearson(sample),
        Method::Spearman => spearman(sample, tie_policy),
        Method::MixRankX => mix_rank_x(sample, tie_policy),
        Method::MixRankY => mix_rank_y(sample, tie_policy),
    }
}
