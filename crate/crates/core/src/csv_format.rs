//! Labelled matrix CSV.
//!
//! ```text
//! # row-to-column: rows are producing sectors, columns are consuming sectors
//! ,Agriculture,Manufacturing
//! Agriculture,0,0.1
//! Manufacturing,0.2,0
//! ```
//!
//! The first record is the header (its first cell is ignored), every other
//! record is a row label followed by values. Lines starting with `#` are
//! comments. Values use a decimal point and no thousands separators. A vector
//! is a one-column matrix.

use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};

pub const ORIENTATION_COMMENT: &str =
    "row-to-column: rows are producing sectors, columns are consuming sectors";

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledMatrix {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub values: Matrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledVector {
    pub labels: Vec<String>,
    pub values: Vector,
}

impl LabeledMatrix {
    pub fn new(row_labels: Vec<String>, col_labels: Vec<String>, values: Matrix) -> Result<Self> {
        if row_labels.len() != values.rows() || col_labels.len() != values.cols() {
            return Err(Error::DimensionMismatch(format!(
                "{} row and {} column labels for a {}x{} matrix",
                row_labels.len(),
                col_labels.len(),
                values.rows(),
                values.cols()
            )));
        }
        Ok(Self {
            row_labels,
            col_labels,
            values,
        })
    }

    /// Square matrix with the same labels on both axes.
    pub fn square(labels: &[String], values: Matrix) -> Result<Self> {
        Self::new(labels.to_vec(), labels.to_vec(), values)
    }
}

fn parse_err(line: Option<u64>, msg: impl std::fmt::Display) -> Error {
    match line {
        Some(l) => Error::Parse(format!("line {l}: {msg}")),
        None => Error::Parse(msg.to_string()),
    }
}

pub fn parse_matrix_csv<R: Read>(reader: R) -> Result<LabeledMatrix> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(false)
        .from_reader(reader);

    let mut records = rdr.records();
    let header = match records.next() {
        Some(rec) => rec.map_err(|e| parse_err(None, e))?,
        None => return Err(parse_err(None, "empty CSV")),
    };
    let col_labels: Vec<String> = header.iter().skip(1).map(str::to_owned).collect();
    if col_labels.is_empty() {
        return Err(parse_err(header.position().map(|p| p.line()), "no value columns"));
    }

    let mut row_labels = Vec::new();
    let mut data = Vec::new();
    for rec in records {
        let rec = rec.map_err(|e| parse_err(None, e))?;
        let line = rec.position().map(|p| p.line());
        let mut cells = rec.iter();
        row_labels.push(cells.next().unwrap_or_default().to_owned());
        for cell in cells {
            let v: f64 = cell
                .parse()
                .map_err(|_| parse_err(line, format!("'{cell}' is not a decimal number")))?;
            if !v.is_finite() {
                return Err(parse_err(line, format!("'{cell}' is not finite")));
            }
            data.push(v);
        }
    }
    if row_labels.is_empty() {
        return Err(parse_err(None, "no data rows"));
    }
    let values = Matrix::new(row_labels.len(), col_labels.len(), data)?;
    LabeledMatrix::new(row_labels, col_labels, values)
}

pub fn parse_vector_csv<R: Read>(reader: R) -> Result<LabeledVector> {
    let m = parse_matrix_csv(reader)?;
    if m.values.cols() != 1 {
        return Err(Error::Parse(format!(
            "expected a single value column, found {}",
            m.values.cols()
        )));
    }
    Ok(LabeledVector {
        labels: m.row_labels,
        values: Vector::new(m.values.as_slice().to_vec())?,
    })
}

pub fn read_matrix_csv(path: impl AsRef<Path>) -> Result<LabeledMatrix> {
    let path = path.as_ref();
    let file = std::fs::File::open(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_matrix_csv(file).map_err(|e| with_path(e, path))
}

pub fn read_vector_csv(path: impl AsRef<Path>) -> Result<LabeledVector> {
    let path = path.as_ref();
    let file = std::fs::File::open(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_vector_csv(file).map_err(|e| with_path(e, path))
}

fn with_path(err: Error, path: &Path) -> Error {
    match err {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    }
}

/// Shortest representation that parses back to the same `f64`.
pub fn format_value(v: f64) -> String {
    format!("{v:?}")
}

fn write_records<W: Write>(
    out: W,
    comment: &str,
    col_labels: &[String],
    rows: impl Iterator<Item = (String, Vec<f64>)>,
) -> Result<()> {
    let mut out = out;
    writeln!(out, "# {comment}")?;
    let mut wtr = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| Error::Io(e.to_string());
    wtr.write_record(std::iter::once("").chain(col_labels.iter().map(String::as_str)))
        .map_err(csv_err)?;
    for (label, values) in rows {
        let mut record = vec![label];
        record.extend(values.into_iter().map(format_value));
        wtr.write_record(&record).map_err(csv_err)?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_matrix_csv<W: Write>(out: W, m: &LabeledMatrix) -> Result<()> {
    write_records(
        out,
        ORIENTATION_COMMENT,
        &m.col_labels,
        m.row_labels
            .iter()
            .cloned()
            .zip(m.values.to_rows()),
    )
}

pub fn write_vector_csv<W: Write>(out: W, header: &str, v: &LabeledVector) -> Result<()> {
    write_records(
        out,
        "one value per sector",
        &[header.to_owned()],
        v.labels
            .iter()
            .cloned()
            .zip(v.values.as_slice().iter().map(|&x| vec![x])),
    )
}

pub fn matrix_csv_string(m: &LabeledMatrix) -> String {
    let mut buf = Vec::new();
    write_matrix_csv(&mut buf, m).expect("writing to memory");
    String::from_utf8(buf).expect("CSV output is UTF-8")
}
