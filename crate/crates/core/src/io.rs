//! Matrix file formats.
//!
//! CSV: `n` rows of `n` comma-separated cells. A cell is a decimal or an exact
//! fraction such as `1/9`. Blank lines and lines starting with `#` are
//! skipped. JSON: `{"n": 3, "rows": [[...], ...]}`.
//!
//! Writers print every number with 17 significant digits so values round-trip
//! exactly.

use std::path::Path;

use crate::error::{PcmError, Result};
use crate::matrix::{MatrixRecord, PairwiseComparisonMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    Csv,
    Json,
}

impl MatrixFormat {
    /// `.json` selects JSON, anything else CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => MatrixFormat::Json,
            _ => MatrixFormat::Csv,
        }
    }
}

/// Formats like C's `%.17g`.
pub fn format_f64(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        trim_fraction(format!("{x:.decimals$}"))
    } else {
        let mantissa = trim_fraction(mantissa.to_string());
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    }
}

fn trim_fraction(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Parses a decimal or a fraction `p/q`. Integer fractions are reduced before
/// the single rounding division.
pub fn parse_number(cell: &str) -> Result<f64> {
    let cell = cell.trim();
    let bad = || PcmError::Parse(format!("cannot parse '{cell}' as a number"));
    match cell.split_once('/') {
        Some((p, q)) => {
            let (p, q) = (p.trim(), q.trim());
            if let (Ok(pi), Ok(qi)) = (p.parse::<u128>(), q.parse::<u128>()) {
                if qi == 0 {
                    return Err(bad());
                }
                let g = gcd(pi, qi).max(1);
                return Ok((pi / g) as f64 / (qi / g) as f64);
            }
            let pf: f64 = p.parse().map_err(|_| bad())?;
            let qf: f64 = q.parse().map_err(|_| bad())?;
            Ok(pf / qf)
        }
        None => cell.parse().map_err(|_| bad()),
    }
}

/// Raw rows from CSV text, before validation.
pub fn parse_csv_rows(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| PcmError::Parse(e.to_string()))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        rows.push(record.iter().map(parse_number).collect::<Result<Vec<_>>>()?);
    }
    Ok(rows)
}

pub fn parse_csv(text: &str) -> Result<PairwiseComparisonMatrix> {
    PairwiseComparisonMatrix::validate(&parse_csv_rows(text)?)
}

pub fn parse_json(text: &str) -> Result<PairwiseComparisonMatrix> {
    let rec: MatrixRecord = serde_json::from_str(text).map_err(|e| PcmError::Parse(e.to_string()))?;
    PairwiseComparisonMatrix::try_from(rec)
}

pub fn parse(text: &str, format: MatrixFormat) -> Result<PairwiseComparisonMatrix> {
    match format {
        MatrixFormat::Csv => parse_csv(text),
        MatrixFormat::Json => parse_json(text),
    }
}

pub fn to_csv(m: &PairwiseComparisonMatrix) -> String {
    let mut out = String::new();
    for row in m.rows() {
        let cells: Vec<String> = row.into_iter().map(format_f64).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn to_json(m: &PairwiseComparisonMatrix) -> String {
    let rows: Vec<String> = m
        .rows()
        .into_iter()
        .map(|row| {
            let cells: Vec<String> = row.into_iter().map(format_f64).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("{{\"n\": {}, \"rows\": [{}]}}\n", m.order(), rows.join(", "))
}

pub fn render(m: &PairwiseComparisonMatrix, format: MatrixFormat) -> String {
    match format {
        MatrixFormat::Csv => to_csv(m),
        MatrixFormat::Json => to_json(m),
    }
}

/// Error from reading a matrix file: either the file or its contents.
#[derive(Debug, thiserror::Error)]
pub enum ReadError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Invalid { path: String, source: PcmError },
}

pub fn read_matrix(path: &Path) -> std::result::Result<PairwiseComparisonMatrix, ReadError> {
    let text = std::fs::read_to_string(path).map_err(|source| ReadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text, MatrixFormat::from_path(path)).map_err(|source| ReadError::Invalid {
        path: path.display().to_string(),
        source,
    })
}
