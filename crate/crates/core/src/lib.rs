//! Correlation of bivariate samples: Pearson's and Spearman's coefficients,
//! the two mixed coefficients that rank only one axis, translation and
//! scaling transforms with their invariance laws, and least-squares fitting.
//!
//! ```
//! use corrmix::{fixtures, pearson, mix_rank_x, TiePolicy};
//!
//! let sample = fixtures::table1();
//! let rp = pearson(&sample).unwrap();
//! let rsp = mix_rank_x(&sample, TiePolicy::Average).unwrap();
//! assert!(rsp.value < rp.value);
//! ```

pub mod correlation;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod plot;
pub mod rank;
pub mod regression;
pub mod report;
pub mod sample;
pub mod transform;

pub use correlation::{
    classify_strength, pearson, pearson_from_sums, CorrelationResult, Method, StrengthClass,
};
pub use error::{Axis, Error, Result};
pub use io::{parse_csv, write_csv, ColumnRef, CsvOptions};
pub use plot::{emit_scatter, PlotFormat};
pub use rank::{
    correlation, mix_rank_x, mix_rank_y, rank_transform, spearman, RankVector, TiePolicy,
};
pub use regression::{least_squares_fit, r_squared_of, RegressionFit};
pub use report::{run_report, OutputFormat, ReportDocument, ReportRequest};
pub use sample::{make_sample, median, summarize, BivariateSample, SummaryStats};
pub use transform::{
    apply_transform, demonstrate_invariance, InvarianceCheck, Relation, ScaleOp, TransformSpec,
};
