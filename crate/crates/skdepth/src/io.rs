//! Point files and result serialization.
//!
//! Input is CSV with one point per row and an optional header row; the
//! dimension comes from the first data row. Lines starting with `#` are
//! ignored.

use std::io::{Read, Write};

use serde::Serialize;
use skdepth_core::{Dataset, DepthKind, DepthResult};

use crate::error::{Error, Result};

/// Reads a point set from CSV.
pub fn read_points<R: Read>(reader: R) -> Result<Dataset> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let mut dim = None;
    let mut coords = Vec::new();
    for (row, record) in csv.records().enumerate() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(row as u64 + 1, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        let parsed: std::result::Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
        let values = match parsed {
            Ok(v) => v,
            // a non-numeric first row is a header
            Err(_) if dim.is_none() && coords.is_empty() && row == 0 => continue,
            Err(e) => {
                return Err(Error::Parse {
                    line,
                    message: format!("{e} in {:?}", record.iter().collect::<Vec<_>>()),
                })
            }
        };
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Parse {
                line,
                message: format!("coordinate is not finite: {bad}"),
            });
        }
        let expected = *dim.get_or_insert(values.len());
        if values.len() != expected {
            return Err(Error::RowDimension {
                line,
                expected,
                found: values.len(),
            });
        }
        coords.extend(values);
    }
    match dim {
        Some(d) => Ok(Dataset::from_flat(d, coords)?),
        None => Err(Error::Config("point file contains no points".into())),
    }
}

pub fn read_points_file(path: &std::path::Path) -> Result<Dataset> {
    let file = std::fs::File::open(path)
        .map_err(|e| Error::Config(format!("cannot open {}: {e}", path.display())))?;
    read_points(std::io::BufReader::new(file))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Serialize)]
struct ResultRow {
    query_index: usize,
    raw_count: u64,
    normalized: f64,
}

#[derive(Serialize)]
struct ResultDocument<'a> {
    n: usize,
    beta: serde_json::Value,
    method: &'a str,
    results: Vec<ResultRow>,
}

fn beta_value(kind: DepthKind) -> serde_json::Value {
    match kind {
        DepthKind::Skeleton(b) => serde_json::json!(b.value()),
        DepthKind::Simplicial => serde_json::json!("simplicial"),
    }
}

/// Writes one row per query result.
pub fn write_results<W: Write>(out: W, results: &[DepthResult], format: OutputFormat) -> Result<()> {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["query_index", "raw_count", "normalized", "n", "beta", "method"])
                .map_err(csv_io)?;
            for (i, r) in results.iter().enumerate() {
                let beta = match r.kind {
                    DepthKind::Skeleton(b) => b.value().to_string(),
                    DepthKind::Simplicial => "simplicial".into(),
                };
                w.write_record([
                    i.to_string(),
                    r.raw_count.to_string(),
                    r.normalized.to_string(),
                    r.n.to_string(),
                    beta,
                    r.method.as_str().to_string(),
                ])
                .map_err(csv_io)?;
            }
            w.flush()?;
        }
        OutputFormat::Json => {
            let first = results.first();
            let doc = ResultDocument {
                n: first.map_or(0, |r| r.n),
                beta: first.map_or(serde_json::Value::Null, |r| beta_value(r.kind)),
                method: first.map_or("none", |r| r.method.as_str()),
                results: results
                    .iter()
                    .enumerate()
                    .map(|(query_index, r)| ResultRow {
                        query_index,
                        raw_count: r.raw_count,
                        normalized: r.normalized,
                    })
                    .collect(),
            };
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, &doc).map_err(std::io::Error::from)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

pub(crate) fn csv_io(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_comments_are_skipped() {
        let d = read_points("x,y\n# comment\n1,2\n 3.5 , -4\n".as_bytes()).unwrap();
        assert_eq!((d.len(), d.dim()), (2, 2));
        assert_eq!(d.point(1), &[3.5, -4.0]);
    }

    #[test]
    fn dimension_from_first_row() {
        let d = read_points("1,2,3\n4,5,6\n".as_bytes()).unwrap();
        assert_eq!(d.dim(), 3);
        let err = read_points("1,2,3\n4,5\n".as_bytes()).unwrap_err();
        assert_eq!(err.to_string(), "line 2: expected 3 coordinates, found 2");
    }

    #[test]
    fn malformed_rows_name_their_line() {
        let err = read_points("1,2\n3,abc\n".as_bytes()).unwrap_err();
        assert!(err.to_string().starts_with("line 2:"), "{err}");
        let err = read_points("x,y\n1,2\nfoo,bar\n".as_bytes()).unwrap_err();
        assert!(err.to_string().starts_with("line 3:"), "{err}");
        assert!(read_points("1,nan\n".as_bytes()).is_err());
        assert!(read_points("x,y\n".as_bytes()).is_err());
    }
}
