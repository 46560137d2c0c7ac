//! Batch reports over a sample: coefficients with strength classes, an
//! optional fit, and before/after rows for requested transforms.
//!
//! Computation errors are captured per entry so a degenerate axis surfaces
//! as error records instead of aborting the whole report.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::correlation::{classify_strength, CorrelationResult, Method, StrengthClass};
use crate::error::{Error, Result};
use crate::rank::{correlation, TiePolicy};
use crate::regression::{least_squares_fit, RegressionFit};
use crate::sample::{summarize, BivariateSample, SummaryStats};
use crate::transform::{demonstrate_invariance, InvarianceCheck, TransformSpec};

/// Tolerance used to mark a transform row as honouring its expected relation.
pub const INVARIANCE_TOLERANCE: f64 = 1e-9;

pub const DEFAULT_PRECISION: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRequest {
    pub methods: Vec<Method>,
    pub tie_policy: TiePolicy,
    pub transforms: Vec<TransformSpec>,
    pub fit: bool,
}

impl Default for ReportRequest {
    fn default() -> Self {
        Self {
            methods: Method::ALL.to_vec(),
            tie_policy: TiePolicy::Average,
            transforms: Vec::new(),
            fit: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientEntry {
    pub method: Method,
    pub outcome: Result<(CorrelationResult, StrengthClass)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransformEntry {
    pub spec: TransformSpec,
    pub outcome: Result<InvarianceCheck>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportDocument {
    pub summary: SummaryStats,
    pub tie_policy: TiePolicy,
    pub coefficients: Vec<CoefficientEntry>,
    pub regression: Option<Result<RegressionFit>>,
    pub transforms: Vec<TransformEntry>,
}

impl ReportDocument {
    pub fn errors(&self) -> impl Iterator<Item = &Error> {
        let coefficient = self
            .coefficients
            .iter()
            .filter_map(|c| c.outcome.as_ref().err());
        let fit = self.regression.iter().filter_map(|r| r.as_ref().err());
        let transform = self
            .transforms
            .iter()
            .filter_map(|t| t.outcome.as_ref().err());
        coefficient.chain(fit).chain(transform)
    }
}

pub fn run_report(sample: &BivariateSample, request: &ReportRequest) -> ReportDocument {
    let mut methods = request.methods.clone();
    methods.dedup();
    let coefficients = methods
        .into_iter()
        .map(|method| CoefficientEntry {
            method,
            outcome: correlation(sample, method, request.tie_policy).and_then(|r| {
                let class = classify_strength(r.value)?;
                Ok((r, class))
            }),
        })
        .collect();
    let transforms = request
        .transforms
        .iter()
        .map(|spec| TransformEntry {
            spec: *spec,
            outcome: demonstrate_invariance(sample, spec),
        })
        .collect();
    ReportDocument {
        summary: summarize(sample),
        tie_policy: request.tie_policy,
        coefficients,
        regression: request.fit.then(|| least_squares_fit(sample)),
        transforms,
    }
}

/// One flat machine-readable row. Only the fields relevant to the row's
/// kind are present.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub n: usize,
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strength: Option<StrengthClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transform: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_before: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_after: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ss_total: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ss_resid: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_squared: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error_kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Record {
    fn failed(n: usize, method: &str, err: &Error) -> Self {
        Record {
            n,
            method: method.to_string(),
            error_kind: Some(err.kind().to_string()),
            error: Some(err.to_string()),
            ..Record::default()
        }
    }
}

pub const FIT_METHOD: &str = "least_squares";

pub fn records(doc: &ReportDocument) -> Vec<Record> {
    let n = doc.summary.n;
    let mut out = Vec::new();
    for entry in &doc.coefficients {
        out.push(match &entry.outcome {
            Ok((r, class)) => Record {
                n,
                method: r.method.to_string(),
                value: Some(r.value),
                strength: Some(*class),
                ..Record::default()
            },
            Err(e) => Record::failed(n, entry.method.as_str(), e),
        });
    }
    if let Some(fit) = &doc.regression {
        out.push(match fit {
            Ok(fit) => Record {
                n,
                method: FIT_METHOD.to_string(),
                a: Some(fit.intercept),
                b: Some(fit.slope),
                ss_total: Some(fit.ss_total),
                ss_resid: Some(fit.ss_resid),
                r_squared: fit.r_squared,
                ..Record::default()
            },
            Err(e) => Record::failed(n, FIT_METHOD, e),
        });
    }
    for entry in &doc.transforms {
        let mut record = match &entry.outcome {
            Ok(check) => Record {
                n,
                method: Method::Pearson.to_string(),
                value: Some(check.r_after),
                r_before: Some(check.r_before),
                r_after: Some(check.r_after),
                relation: Some(relation_name(check).to_string()),
                ..Record::default()
            },
            Err(e) => Record::failed(n, Method::Pearson.as_str(), e),
        };
        record.transform = Some(entry.spec.to_string());
        out.push(record);
    }
    out
}

fn relation_name(check: &InvarianceCheck) -> &'static str {
    match check.expected_relation {
        crate::transform::Relation::Equal => "equal",
        crate::transform::Relation::SignFlipped => "sign_flipped",
    }
}

pub fn render(doc: &ReportDocument, format: OutputFormat, precision: usize) -> Result<String> {
    match format {
        OutputFormat::Text => Ok(render_text(doc, precision)),
        OutputFormat::Json => render_json(doc),
        OutputFormat::Csv => render_csv(doc),
    }
}

/// JSON array of flat records, numbers at full round-trip precision.
pub fn render_json(doc: &ReportDocument) -> Result<String> {
    let mut s =
        serde_json::to_string_pretty(&records(doc)).map_err(|e| Error::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

const CSV_COLUMNS: [&str; 15] = [
    "n",
    "method",
    "value",
    "strength",
    "transform",
    "r_before",
    "r_after",
    "relation",
    "a",
    "b",
    "ss_total",
    "ss_resid",
    "r_squared",
    "error_kind",
    "error",
];

pub fn render_csv(doc: &ReportDocument) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    writer.write_record(CSV_COLUMNS).map_err(io)?;
    let num = |v: Option<f64>| v.map(|v| v.to_string()).unwrap_or_default();
    for r in records(doc) {
        writer
            .write_record([
                r.n.to_string(),
                r.method,
                num(r.value),
                r.strength.map(|s| s.to_string()).unwrap_or_default(),
                r.transform.unwrap_or_default(),
                num(r.r_before),
                num(r.r_after),
                r.relation.unwrap_or_default(),
                num(r.a),
                num(r.b),
                num(r.ss_total),
                num(r.ss_resid),
                num(r.r_squared),
                r.error_kind.unwrap_or_default(),
                r.error.unwrap_or_default(),
            ])
            .map_err(io)?;
    }
    let bytes = writer.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

/// Fixed-point decimal with `precision` digits; never scientific notation.
pub fn fixed(v: f64, precision: usize) -> String {
    let s = format!("{v:.precision$}");
    // Avoid printing "-0.00000" for values that round to zero.
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

pub fn render_text(doc: &ReportDocument, precision: usize) -> String {
    let p = precision;
    let st = &doc.summary;
    let mut out = String::new();
    let _ = writeln!(out, "sample: n = {}", st.n);
    let _ = writeln!(
        out,
        "  sum_x = {}  sum_y = {}  sum_x2 = {}  sum_y2 = {}  sum_xy = {}",
        fixed(st.sum_x, p),
        fixed(st.sum_y, p),
        fixed(st.sum_x2, p),
        fixed(st.sum_y2, p),
        fixed(st.sum_xy, p)
    );
    let _ = writeln!(
        out,
        "  mean_x = {}  mean_y = {}  median_x = {}  median_y = {}",
        fixed(st.mean_x, p),
        fixed(st.mean_y, p),
        fixed(st.median_x, p),
        fixed(st.median_y, p)
    );

    if !doc.coefficients.is_empty() {
        let _ = writeln!(out, "coefficients (ties: {}):", doc.tie_policy);
        for entry in &doc.coefficients {
            match &entry.outcome {
                Ok((r, class)) => {
                    let _ = writeln!(
                        out,
                        "  {:<10}  {:>width$}  {}",
                        r.method.as_str(),
                        fixed(r.value, p),
                        class,
                        width = p + 3
                    );
                }
                Err(e) => {
                    let _ = writeln!(
                        out,
                        "  {:<10}  error[{}]: {}",
                        entry.method.as_str(),
                        e.kind(),
                        e
                    );
                }
            }
        }
    }

    if let Some(fit) = &doc.regression {
        let _ = writeln!(out, "least-squares fit:");
        match fit {
            Ok(fit) => {
                let _ = writeln!(
                    out,
                    "  y = a + b*x  a = {}  b = {}",
                    fixed(fit.intercept, p),
                    fixed(fit.slope, p)
                );
                let _ = writeln!(
                    out,
                    "  ss_total = {}  ss_resid = {}  r_squared = {}",
                    fixed(fit.ss_total, p),
                    fixed(fit.ss_resid, p),
                    fit.r_squared
                        .map_or_else(|| "undefined".to_string(), |v| fixed(v, p))
                );
            }
            Err(e) => {
                let _ = writeln!(out, "  error[{}]: {}", e.kind(), e);
            }
        }
    }

    if !doc.transforms.is_empty() {
        let _ = writeln!(out, "transforms (pearson before -> after):");
        for entry in &doc.transforms {
            let label = entry.spec.to_string();
            match &entry.outcome {
                Ok(check) => {
                    let _ = writeln!(
                        out,
                        "  {:<14}  {} -> {}  {}  {}",
                        label,
                        fixed(check.r_before, p),
                        fixed(check.r_after, p),
                        relation_name(check),
                        if check.holds(INVARIANCE_TOLERANCE) {
                            "ok"
                        } else {
                            "MISMATCH"
                        }
                    );
                }
                Err(e) => {
                    let _ = writeln!(out, "  {:<14}  error[{}]: {}", label, e.kind(), e);
                }
            }
        }
    }
    out
}
