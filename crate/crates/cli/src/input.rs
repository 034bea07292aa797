//! Readers for the two input formats.

use std::fs;
use std::path::Path;

use nalgebra::{DMatrix, DVector};

use crate::CliError;

/// One value per line; blank lines and `#` comments are skipped.
pub fn read_sample(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("--input: cannot read {}: {e}", path.display())))?;
    parse_sample(&text)
}

pub fn parse_sample(text: &str) -> Result<Vec<f64>, CliError> {
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: f64 = line.parse().map_err(|_| {
            CliError::usage(format!(
                "--input: line {}: cannot parse {line:?} as a number",
                lineno + 1
            ))
        })?;
        values.push(v);
    }
    if values.is_empty() {
        return Err(CliError::usage("--input: no observations"));
    }
    Ok(values)
}

/// CSV with header `y,x1,x2,...`; returns (design, response).
pub fn read_regression(path: &Path) -> Result<(DMatrix<f64>, DVector<f64>), CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("--input: cannot read {}: {e}", path.display())))?;
    parse_regression(&text)
}

pub fn parse_regression(text: &str) -> Result<(DMatrix<f64>, DVector<f64>), CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| CliError::usage(format!("--input: bad CSV header: {e}")))?
        .clone();
    if headers.get(0) != Some("y") || headers.len() < 2 {
        return Err(CliError::usage("--input: CSV header must be y,x1,x2,..."));
    }
    let cols = headers.len() - 1;
    let mut response = Vec::new();
    let mut design = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record =
            record.map_err(|e| CliError::usage(format!("--input: row {}: {e}", row + 1)))?;
        for (col, field) in record.iter().enumerate() {
            let v: f64 = field.parse().map_err(|_| {
                CliError::usage(format!(
                    "--input: row {}, column {}: cannot parse {field:?}",
                    row + 1,
                    &headers[col]
                ))
            })?;
            if col == 0 {
                response.push(v);
            } else {
                design.push(v);
            }
        }
    }
    if response.is_empty() {
        return Err(CliError::usage("--input: no data rows"));
    }
    Ok((
        DMatrix::from_row_slice(response.len(), cols, &design),
        DVector::from_vec(response),
    ))
}
