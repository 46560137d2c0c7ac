//! Scatter plots as SVG or as a plain character grid, with an optional
//! least-squares line.
//!
//! Both axes span the data extent padded by 5% on each side.

use std::fmt::Write as _;
use std::io::Write;

use crate::error::{Error, Result};
use crate::regression::RegressionFit;
use crate::sample::{min_max, BivariateSample};

pub const DEFAULT_GRID_WIDTH: usize = 60;
pub const DEFAULT_GRID_HEIGHT: usize = 20;

const PADDING: f64 = 0.05;
const SVG_WIDTH: f64 = 640.0;
const SVG_HEIGHT: f64 = 480.0;
const SVG_MARGIN: f64 = 48.0;

pub const POINT_CHAR: char = '*';
pub const LINE_CHAR: char = '.';

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotFormat {
    Svg,
    Ascii { width: usize, height: usize },
}

impl PlotFormat {
    pub fn ascii() -> Self {
        PlotFormat::Ascii {
            width: DEFAULT_GRID_WIDTH,
            height: DEFAULT_GRID_HEIGHT,
        }
    }
}

/// Closed interval covering one axis of the plot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
}

impl Range {
    pub fn padded(values: &[f64]) -> Self {
        let (lo, hi) = min_max(values);
        let span = hi - lo;
        // A constant axis gets a unit-wide window around its value.
        let pad = if span > 0.0 { span * PADDING } else { 0.5 };
        Range {
            lo: lo - pad,
            hi: hi + pad,
        }
    }

    /// Position of `v` in [0, 1] across the range.
    fn unit(&self, v: f64) -> f64 {
        (v - self.lo) / (self.hi - self.lo)
    }
}

pub fn emit_scatter<W: Write>(
    sample: &BivariateSample,
    fit: Option<&RegressionFit>,
    format: PlotFormat,
    mut destination: W,
) -> Result<()> {
    let body = match format {
        PlotFormat::Svg => render_svg(sample, fit),
        PlotFormat::Ascii { width, height } => render_ascii(sample, fit, width, height),
    };
    destination
        .write_all(body.as_bytes())
        .and_then(|_| destination.flush())
        .map_err(|e| Error::Io(e.to_string()))
}

pub fn render_svg(sample: &BivariateSample, fit: Option<&RegressionFit>) -> String {
    let xr = Range::padded(sample.xs());
    let yr = Range::padded(sample.ys());
    let plot_w = SVG_WIDTH - 2.0 * SVG_MARGIN;
    let plot_h = SVG_HEIGHT - 2.0 * SVG_MARGIN;
    let px = |x: f64| SVG_MARGIN + xr.unit(x) * plot_w;
    let py = |y: f64| SVG_HEIGHT - SVG_MARGIN - yr.unit(y) * plot_h;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#
    );
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">"#
    );
    let _ = writeln!(
        out,
        r#"<defs><clipPath id="plot-area"><rect x="{SVG_MARGIN}" y="{SVG_MARGIN}" width="{plot_w}" height="{plot_h}"/></clipPath></defs>"#
    );
    let _ = writeln!(
        out,
        r##"<rect class="frame" x="{SVG_MARGIN}" y="{SVG_MARGIN}" width="{plot_w}" height="{plot_h}" fill="none" stroke="#444"/>"##
    );
    // Axis extents as tick labels at the frame corners.
    let _ = writeln!(
        out,
        r#"<text x="{SVG_MARGIN}" y="{:.2}" font-size="11" text-anchor="start">{}</text>"#,
        SVG_HEIGHT - SVG_MARGIN + 16.0,
        fmt_label(xr.lo)
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end">{}</text>"#,
        SVG_WIDTH - SVG_MARGIN,
        SVG_HEIGHT - SVG_MARGIN + 16.0,
        fmt_label(xr.hi)
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end">{}</text>"#,
        SVG_MARGIN - 4.0,
        SVG_HEIGHT - SVG_MARGIN,
        fmt_label(yr.lo)
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end">{}</text>"#,
        SVG_MARGIN - 4.0,
        SVG_MARGIN + 11.0,
        fmt_label(yr.hi)
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="middle">x</text>"#,
        SVG_WIDTH / 2.0,
        SVG_HEIGHT - 12.0
    );
    let _ = writeln!(
        out,
        r#"<text x="14" y="{:.2}" font-size="12" text-anchor="middle">y</text>"#,
        SVG_HEIGHT / 2.0
    );

    if let Some(fit) = fit {
        let _ = writeln!(
            out,
            r##"<line class="fit" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#c0392b" stroke-width="1.5" clip-path="url(#plot-area)"/>"##,
            px(xr.lo),
            py(fit.predict(xr.lo)),
            px(xr.hi),
            py(fit.predict(xr.hi))
        );
    }
    for (x, y) in sample.pairs() {
        let _ = writeln!(
            out,
            r##"<circle class="point" cx="{:.3}" cy="{:.3}" r="3.5" fill="#2c3e50"/>"##,
            px(x),
            py(y)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn fmt_label(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// Grid cell (column, row) for a data point; row 0 is the top.
pub fn grid_cell(
    xr: &Range,
    yr: &Range,
    width: usize,
    height: usize,
    x: f64,
    y: f64,
) -> (usize, usize) {
    let col = (xr.unit(x) * (width - 1) as f64).round();
    let row = ((1.0 - yr.unit(y)) * (height - 1) as f64).round();
    (
        col.clamp(0.0, (width - 1) as f64) as usize,
        row.clamp(0.0, (height - 1) as f64) as usize,
    )
}

/// A `height`-line grid of `width` characters each. Points are `*`, the
/// fitted line is `.` and points win where both fall in one cell.
pub fn render_ascii(
    sample: &BivariateSample,
    fit: Option<&RegressionFit>,
    width: usize,
    height: usize,
) -> String {
    let (width, height) = (width.max(2), height.max(2));
    let xr = Range::padded(sample.xs());
    let yr = Range::padded(sample.ys());
    let mut grid = vec![vec![' '; width]; height];

    if let Some(fit) = fit {
        let rows: Vec<f64> = (0..width)
            .map(|col| {
                let x = xr.lo + col as f64 / (width - 1) as f64 * (xr.hi - xr.lo);
                (1.0 - yr.unit(fit.predict(x))) * (height - 1) as f64
            })
            .collect();
        for (col, row) in rows.into_iter().enumerate() {
            if (-0.5..(height as f64 - 0.5)).contains(&row) {
                grid[row.round() as usize][col] = LINE_CHAR;
            }
        }
    }
    for (x, y) in sample.pairs() {
        let (col, row) = grid_cell(&xr, &yr, width, height, x, y);
        grid[row][col] = POINT_CHAR;
    }

    let mut out = String::with_capacity((width + 1) * height);
    for row in grid {
        out.extend(row);
        out.push('\n');
    }
    out
}
