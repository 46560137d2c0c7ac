//! Bivariate samples and their summary sums.

use serde::Serialize;

use crate::error::{Axis, Error, Result};

/// Paired observations `(x_i, y_i)`, at least two of them, all finite.
///
/// Pair order is preserved exactly as given; every derived sequence is
/// indexed the same way.
#[derive(Debug, Clone, PartialEq)]
pub struct BivariateSample {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl BivariateSample {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::LengthMismatch {
                x_len: xs.len(),
                y_len: ys.len(),
            });
        }
        if xs.len() < 2 {
            return Err(Error::TooFewObservations(xs.len()));
        }
        // Report the first offending pair, x before y.
        for (index, (x, y)) in xs.iter().zip(&ys).enumerate() {
            if !x.is_finite() {
                return Err(Error::NonFiniteValue {
                    axis: Axis::X,
                    index,
                });
            }
            if !y.is_finite() {
                return Err(Error::NonFiniteValue {
                    axis: Axis::Y,
                    index,
                });
            }
        }
        Ok(Self { xs, ys })
    }

    pub fn from_pairs<I: IntoIterator<Item = (f64, f64)>>(pairs: I) -> Result<Self> {
        let (xs, ys) = pairs.into_iter().unzip();
        Self::new(xs, ys)
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    /// Always false; a valid sample holds at least two pairs.
    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn axis(&self, axis: Axis) -> &[f64] {
        match axis {
            Axis::X => &self.xs,
            Axis::Y => &self.ys,
        }
    }

    pub fn pairs(&self) -> impl ExactSizeIterator<Item = (f64, f64)> + '_ {
        self.xs.iter().copied().zip(self.ys.iter().copied())
    }

    /// The same observations with the roles of x and y exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            xs: self.ys.clone(),
            ys: self.xs.clone(),
        }
    }

    pub fn into_parts(self) -> (Vec<f64>, Vec<f64>) {
        (self.xs, self.ys)
    }
}

/// Validates and zips two equally long sequences into a sample.
pub fn make_sample(xs: &[f64], ys: &[f64]) -> Result<BivariateSample> {
    BivariateSample::new(xs.to_vec(), ys.to_vec())
}

/// Raw sums, means and medians of a sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SummaryStats {
    pub n: usize,
    pub sum_x: f64,
    pub sum_y: f64,
    pub sum_x2: f64,
    pub sum_y2: f64,
    pub sum_xy: f64,
    pub mean_x: f64,
    pub mean_y: f64,
    pub median_x: f64,
    pub median_y: f64,
}

impl SummaryStats {
    /// `Σx² − (Σx)²/n`, the centered sum of squares of x.
    pub fn centered_xx(&self) -> f64 {
        self.sum_x2 - self.sum_x * self.sum_x / self.n as f64
    }

    /// `Σy² − (Σy)²/n`.
    pub fn centered_yy(&self) -> f64 {
        self.sum_y2 - self.sum_y * self.sum_y / self.n as f64
    }

    /// `Σxy − ΣxΣy/n`.
    pub fn centered_xy(&self) -> f64 {
        self.sum_xy - self.sum_x * self.sum_y / self.n as f64
    }
}

pub fn summarize(sample: &BivariateSample) -> SummaryStats {
    let n = sample.len();
    let (mut sum_x, mut sum_y, mut sum_x2, mut sum_y2, mut sum_xy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (x, y) in sample.pairs() {
        sum_x += x;
        sum_y += y;
        sum_x2 += x * x;
        sum_y2 += y * y;
        sum_xy += x * y;
    }
    SummaryStats {
        n,
        sum_x,
        sum_y,
        sum_x2,
        sum_y2,
        sum_xy,
        mean_x: sum_x / n as f64,
        mean_y: sum_y / n as f64,
        // A valid sample is never empty.
        median_x: median(sample.xs()).expect("non-empty sample"),
        median_y: median(sample.ys()).expect("non-empty sample"),
    }
}

/// Middle order statistic; the mean of the two central ones for even length.
pub fn median(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptySequence);
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        Ok(sorted[mid])
    } else {
        Ok((sorted[mid - 1] + sorted[mid]) / 2.0)
    }
}

pub(crate) fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

pub(crate) fn is_constant(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[0] == w[1])
}

pub(crate) fn min_max(values: &[f64]) -> (f64, f64) {
    values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{TABLE1_X, TABLE1_Y};
    use proptest::prelude::*;

    #[test]
    fn table1_is_a_valid_sample() {
        let s = make_sample(&TABLE1_X, &TABLE1_Y).unwrap();
        assert_eq!(s.len(), 10);
        assert_eq!(s.pairs().nth(3), Some((14.0, 2.1)));
    }

    #[test]
    fn rejects_single_pair() {
        assert_eq!(
            make_sample(&[1.0], &[1.0]),
            Err(Error::TooFewObservations(1))
        );
    }

    #[test]
    fn rejects_length_mismatch() {
        assert_eq!(
            make_sample(&[1.0, 2.0], &[3.0]),
            Err(Error::LengthMismatch { x_len: 2, y_len: 1 })
        );
    }

    #[test]
    fn rejects_non_finite_with_index() {
        assert_eq!(
            make_sample(&[1.0, 2.0, 3.0], &[0.0, f64::NAN, 1.0]),
            Err(Error::NonFiniteValue {
                axis: Axis::Y,
                index: 1
            })
        );
        assert_eq!(
            make_sample(&[1.0, f64::INFINITY], &[0.0, 1.0]),
            Err(Error::NonFiniteValue {
                axis: Axis::X,
                index: 1
            })
        );
    }

    #[test]
    fn duplicate_pairs_are_allowed() {
        assert!(make_sample(&[1.0, 1.0, 2.0], &[1.0, 1.0, 2.0]).is_ok());
    }

    #[test]
    fn table1_sums() {
        let st = summarize(&make_sample(&TABLE1_X, &TABLE1_Y).unwrap());
        assert!((st.sum_x - 357.0).abs() <= 1e-9);
        assert!((st.sum_y - 124.3).abs() <= 1e-9);
        assert!((st.sum_x2 - 18989.0).abs() <= 1e-9);
        assert!((st.sum_y2 - 2634.11).abs() <= 1e-9);
        assert!((st.sum_xy - 6916.8).abs() <= 1e-9);
        assert!((st.mean_x - 35.7).abs() <= 1e-12);
        assert!((st.mean_y - 12.43).abs() <= 1e-12);
        assert_eq!(st.median_x, 32.0);
        assert!((st.median_y - 10.8).abs() <= 1e-12);
    }

    #[test]
    fn two_point_sums() {
        let st = summarize(&make_sample(&[0.0, 1.0], &[0.0, 1.0]).unwrap());
        assert_eq!(
            (st.sum_x, st.sum_y, st.sum_x2, st.sum_y2, st.sum_xy),
            (1.0, 1.0, 1.0, 1.0, 1.0)
        );
        assert_eq!((st.mean_x, st.mean_y), (0.5, 0.5));
    }

    #[test]
    fn rank_table_sums() {
        let ranks: Vec<f64> = (1..=10).map(f64::from).collect();
        let st = summarize(
            &make_sample(&ranks, &[3.0, 1.0, 5.0, 2.0, 4.0, 6.0, 8.0, 7.0, 9.0, 10.0]).unwrap(),
        );
        assert_eq!(
            (st.sum_x, st.sum_y, st.sum_x2, st.sum_y2, st.sum_xy),
            (55.0, 55.0, 385.0, 385.0, 377.0)
        );
    }

    #[test]
    fn median_cases() {
        assert_eq!(median(&TABLE1_X).unwrap(), 32.0);
        assert!((median(&TABLE1_Y).unwrap() - 10.8).abs() < 1e-12);
        assert_eq!(median(&[7.0]).unwrap(), 7.0);
        assert_eq!(median(&[]), Err(Error::EmptySequence));
    }

    fn sample_strategy() -> impl Strategy<Value = Vec<(f64, f64)>> {
        prop::collection::vec((-1e3..1e3f64, -1e3..1e3f64), 2..60)
    }

    proptest! {
        #[test]
        fn median_within_extremes(v in prop::collection::vec(-1e6..1e6f64, 1..50)) {
            let m = median(&v).unwrap();
            let (lo, hi) = min_max(&v);
            prop_assert!(lo <= m && m <= hi);
        }

        #[test]
        fn summary_is_permutation_invariant(pairs in sample_strategy(), seed in any::<u64>()) {
            let mut shuffled = pairs.clone();
            // Deterministic Fisher-Yates driven by the generated seed.
            let mut state = seed | 1;
            for i in (1..shuffled.len()).rev() {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                shuffled.swap(i, (state % (i as u64 + 1)) as usize);
            }
            let a = summarize(&BivariateSample::from_pairs(pairs).unwrap());
            let b = summarize(&BivariateSample::from_pairs(shuffled).unwrap());
            let tol = 1e-9 * a.n as f64 * 1e6;
            prop_assert!((a.sum_x - b.sum_x).abs() <= tol);
            prop_assert!((a.sum_y - b.sum_y).abs() <= tol);
            prop_assert!((a.sum_x2 - b.sum_x2).abs() <= tol);
            prop_assert!((a.sum_y2 - b.sum_y2).abs() <= tol);
            prop_assert!((a.sum_xy - b.sum_xy).abs() <= tol);
            prop_assert_eq!(a.median_x, b.median_x);
            prop_assert_eq!(a.median_y, b.median_y);
        }

        #[test]
        fn centered_sums_non_negative(pairs in sample_strategy()) {
            let st = summarize(&BivariateSample::from_pairs(pairs).unwrap());
            let n = st.n as f64;
            // Rounding slack proportional to the magnitude of n·Σx².
            prop_assert!(n * st.sum_x2 - st.sum_x * st.sum_x >= -1e-9 * n * st.sum_x2.max(1.0));
            prop_assert!(n * st.sum_y2 - st.sum_y * st.sum_y >= -1e-9 * n * st.sum_y2.max(1.0));
        }
    }

    #[test]
    fn centered_sum_zero_for_constant_axis() {
        let st = summarize(&make_sample(&[4.0, 4.0, 4.0], &[1.0, 2.0, 3.0]).unwrap());
        assert_eq!(st.n as f64 * st.sum_x2 - st.sum_x * st.sum_x, 0.0);
        assert!(st.centered_yy() > 0.0);
    }
}
