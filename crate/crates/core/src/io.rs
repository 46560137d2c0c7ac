//! Reading and writing samples as delimited text.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::sample::BivariateSample;

/// A column selected by 0-based position or by header name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnRef {
    Index(usize),
    Name(String),
}

impl ColumnRef {
    /// Parses a user-facing column reference: a positive integer is a
    /// 1-based position, anything else a header name.
    pub fn parse_user(text: &str) -> Self {
        match text.parse::<usize>() {
            Ok(n) if n >= 1 => ColumnRef::Index(n - 1),
            _ => ColumnRef::Name(text.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvOptions {
    pub delimiter: u8,
    pub has_header: bool,
    pub x_column: ColumnRef,
    pub y_column: ColumnRef,
}

impl Default for CsvOptions {
    fn default() -> Self {
        Self {
            delimiter: b',',
            has_header: false,
            x_column: ColumnRef::Index(0),
            y_column: ColumnRef::Index(1),
        }
    }
}

fn resolve(column: &ColumnRef, header: Option<&csv::StringRecord>) -> Result<usize> {
    match column {
        ColumnRef::Index(i) => Ok(*i),
        ColumnRef::Name(name) => header
            .and_then(|h| h.iter().position(|field| field == name))
            .ok_or_else(|| Error::ColumnNotFound(name.clone())),
    }
}

fn parse_field(record: &csv::StringRecord, column: usize, line: u64) -> Result<f64> {
    let field = record.get(column).ok_or_else(|| Error::Parse {
        line,
        column: column + 1,
        reason: format!("row has only {} fields", record.len()),
    })?;
    let value: f64 = field.parse().map_err(|_| Error::Parse {
        line,
        column: column + 1,
        reason: format!("`{field}` is not a number"),
    })?;
    if !value.is_finite() {
        return Err(Error::Parse {
            line,
            column: column + 1,
            reason: format!("`{field}` is not finite"),
        });
    }
    Ok(value)
}

/// Parses the selected columns of a delimited stream into a sample.
///
/// Blank lines between data rows are an error; trailing blank lines at the
/// end of the input are ignored.
pub fn parse_csv<R: Read>(mut source: R, options: &CsvOptions) -> Result<BivariateSample> {
    let mut text = String::new();
    source
        .read_to_string(&mut text)
        .map_err(|e| match e.kind() {
            std::io::ErrorKind::InvalidData => Error::Parse {
                line: 0,
                column: 1,
                reason: "input is not valid UTF-8".into(),
            },
            _ => Error::from(e),
        })?;
    // The csv reader silently skips empty lines, which would hide holes in
    // the data and shift reported line numbers.
    if let Some(line) = first_interior_blank_line(&text) {
        return Err(Error::Parse {
            line,
            column: 1,
            reason: "blank line in data".into(),
        });
    }

    let mut reader = csv::ReaderBuilder::new()
        .delimiter(options.delimiter)
        .has_headers(options.has_header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let header = if options.has_header {
        let header = reader.headers().map_err(csv_error)?.clone();
        if header.is_empty() {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                reason: "missing header row".into(),
            });
        }
        Some(header)
    } else {
        None
    };
    let x_col = resolve(&options.x_column, header.as_ref())?;
    let y_col = resolve(&options.y_column, header.as_ref())?;
    if let Some(header) = &header {
        for col in [x_col, y_col] {
            if col >= header.len() {
                return Err(Error::ColumnNotFound(format!("column {}", col + 1)));
            }
        }
    }

    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line());
        xs.push(parse_field(&record, x_col, line)?);
        ys.push(parse_field(&record, y_col, line)?);
    }
    BivariateSample::new(xs, ys)
}

/// 1-based number of the first whitespace-only line that has content after
/// it. Trailing blank lines are not reported.
fn first_interior_blank_line(text: &str) -> Option<u64> {
    let mut pending = None;
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            pending.get_or_insert(i as u64 + 1);
        } else if pending.is_some() {
            return pending;
        }
    }
    None
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    match e.kind() {
        csv::ErrorKind::Io(io) => Error::Io(io.to_string()),
        csv::ErrorKind::Utf8 { .. } => Error::Parse {
            line,
            column: 1,
            reason: "invalid UTF-8".into(),
        },
        _ => Error::Parse {
            line,
            column: 1,
            reason: e.to_string(),
        },
    }
}

/// Writes a sample as two delimited columns. Values use Rust's shortest
/// round-trip decimal form, so re-parsing reproduces them exactly.
pub fn write_csv<W: Write>(
    sample: &BivariateSample,
    destination: W,
    delimiter: u8,
    header: Option<(&str, &str)>,
) -> Result<()> {
    let mut writer = csv::WriterBuilder::new()
        .delimiter(delimiter)
        .from_writer(destination);
    let io = |e: csv::Error| Error::Io(e.to_string());
    if let Some((hx, hy)) = header {
        writer.write_record([hx, hy]).map_err(io)?;
    }
    for (x, y) in sample.pairs() {
        writer
            .write_record([x.to_string(), y.to_string()])
            .map_err(io)?;
    }
    writer.flush()?;
    Ok(())
}
