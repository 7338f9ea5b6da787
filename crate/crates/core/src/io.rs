//! Matrix file formats.
//!
//! CSV: one matrix row per line, comma separated, `.` decimal separator.
//! JSON: `{"n": 3, "entries": [[...], ...]}`.
//!
//! Numbers are written in the shortest form that parses back to the same
//! `f64`, so a write/read cycle is lossless.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{PcMatrix, FILE_RECIPROCITY_TOL};

/// Shortest round-trip decimal form; never locale dependent.
pub fn fmt_num(v: f64) -> String {
    format!("{v}")
}

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

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    entries: Vec<Vec<f64>>,
}

pub fn matrix_to_csv(m: &PcMatrix) -> String {
    let mut out = String::new();
    for row in m.rows() {
        let line: Vec<String> = row.iter().map(|&v| fmt_num(v)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn matrix_to_json(m: &PcMatrix) -> String {
    let doc = MatrixJson { n: m.order(), entries: m.to_grid() };
    serde_json::to_string(&doc).expect("matrix serialises")
}

pub fn write_matrix<W: Write>(m: &PcMatrix, format: MatrixFormat, mut w: W) -> Result<()> {
    match format {
        MatrixFormat::Csv => w.write_all(matrix_to_csv(m).as_bytes())?,
        MatrixFormat::Json => {
            w.write_all(matrix_to_json(m).as_bytes())?;
            w.write_all(b"\n")?;
        }
    }
    Ok(())
}

/// Parses a CSV grid and validates it with `reciprocity_tol`.
pub fn read_matrix_csv<R: Read>(r: R, reciprocity_tol: f64) -> Result<PcMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(r);
    let mut grid = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let parsed = record
            .iter()
            .enumerate()
            .map(|(col, field)| {
                field.parse::<f64>().map_err(|_| {
                    Error::Parse(format!("row {row}, column {col}: `{field}` is not a number"))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        grid.push(parsed);
    }
    PcMatrix::new(grid, reciprocity_tol)
}

/// Parses the JSON form; `n` must agree with the grid.
pub fn read_matrix_json<R: Read>(r: R, reciprocity_tol: f64) -> Result<PcMatrix> {
    let doc: MatrixJson = serde_json::from_reader(r).map_err(|e| Error::Parse(e.to_string()))?;
    if doc.entries.len() != doc.n {
        return Err(Error::NonSquare {
            row: doc.entries.len(),
            len: doc.entries.len(),
            expected: doc.n,
        });
    }
    PcMatrix::new(doc.entries, reciprocity_tol)
}

/// Reads a matrix file using the file-input reciprocity tolerance.
pub fn read_matrix_file(path: &Path) -> Result<PcMatrix> {
    let file = std::fs::File::open(path)?;
    match MatrixFormat::from_path(path) {
        MatrixFormat::Csv => read_matrix_csv(file, FILE_RECIPROCITY_TOL),
        MatrixFormat::Json => read_matrix_json(file, FILE_RECIPROCITY_TOL),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_lpc;

    #[test]
    fn csv_layout() {
        let m = gen_lpc(2.0, 5).unwrap();
        let csv = matrix_to_csv(&m);
        assert_eq!(csv.lines().next().unwrap(), "1,2,0.5,2,0.5");
        assert_eq!(csv.lines().count(), 5);
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let m = gen_lpc(3.0, 6).unwrap();
        let back = read_matrix_csv(matrix_to_csv(&m).as_bytes(), 0.0).unwrap();
        assert_eq!(back.as_slice(), m.as_slice());
    }

    #[test]
    fn json_round_trip() {
        let m = gen_lpc(7.0, 4).unwrap();
        let json = matrix_to_json(&m);
        assert!(json.starts_with(r#"{"n":4,"entries":[[1.0,7.0,"#));
        let back = read_matrix_json(json.as_bytes(), 0.0).unwrap();
        assert_eq!(back.as_slice(), m.as_slice());
    }

    #[test]
    fn csv_rejections() {
        assert!(matches!(
            read_matrix_csv("1,2\n0.5\n".as_bytes(), 1e-9),
            Err(Error::NonSquare { .. })
        ));
        assert!(matches!(
            read_matrix_csv("1,-2\n-0.5,1\n".as_bytes(), 1e-9),
            Err(Error::NonPositiveEntry { .. })
        ));
        assert!(matches!(read_matrix_csv("1,a\n1,1\n".as_bytes(), 1e-9), Err(Error::Parse(_))));
        let spaced = " 1 , 3\n0.3333333333333333, 1\n\n";
        assert!(read_matrix_csv(spaced.as_bytes(), 1e-9).is_ok());
    }

    #[test]
    fn json_rejections() {
        let bad_n = r#"{"n": 3, "entries": [[1, 2], [0.5, 1]]}"#;
        assert!(matches!(read_matrix_json(bad_n.as_bytes(), 1e-9), Err(Error::NonSquare { .. })));
        let ragged = r#"{"n": 2, "entries": [[1, 2], [0.5]]}"#;
        assert!(matches!(read_matrix_json(ragged.as_bytes(), 1e-9), Err(Error::NonSquare { .. })));
        assert!(matches!(read_matrix_json("{".as_bytes(), 1e-9), Err(Error::Parse(_))));
    }
}
