//! Matrix writers and readers.
//!
//! Dense TSV: one header line of tab-separated sequence ids, then N rows
//! of N tab-separated values. Precomputed-SVM: one line per sequence,
//! `<label> 0:<1-based index> 1:<K(i,1)> ... N:<K(i,N)>`. Normalized
//! values always render with exactly six fractional digits (round half to
//! even); raw counts render as integers. The JSON report carries
//! parameters, statistics, and matrices but never wall times, so report
//! output is byte-identical across runs.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{CountStats, KernelMatrix, TimingReport};
use crate::matrix::SymMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    DenseTsv,
    PrecomputedSvm,
    Report,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense" => Ok(OutputFormat::DenseTsv),
            "svm" => Ok(OutputFormat::PrecomputedSvm),
            "report" => Ok(OutputFormat::Report),
            other => Err(Error::InvalidParams(format!(
                "unknown output format '{other}' (expected dense, svm, or report)"
            ))),
        }
    }
}

/// Render one kernel value: the normalized view when present, raw counts
/// otherwise.
fn render_value(kernel: &KernelMatrix, i: usize, j: usize) -> String {
    match &kernel.normalized {
        Some(normalized) => format!("{:.6}", normalized.get(i, j)),
        None => kernel.raw.get(i, j).to_string(),
    }
}

/// Write the kernel in dense TSV or precomputed-SVM form.
pub fn write_matrix(kernel: &KernelMatrix, format: OutputFormat, out: &mut impl Write) -> Result<()> {
    let n = kernel.n();
    let io_err = |e: std::io::Error| Error::io("<writer>", e);
    match format {
        OutputFormat::DenseTsv => {
            writeln!(out, "{}", kernel.sequence_ids.join("\t")).map_err(io_err)?;
            for i in 0..n {
                let row: Vec<String> = (0..n).map(|j| render_value(kernel, i, j)).collect();
                writeln!(out, "{}", row.join("\t")).map_err(io_err)?;
            }
        }
        OutputFormat::PrecomputedSvm => {
            for i in 0..n {
                let label = kernel.labels.get(i).copied().flatten().unwrap_or(0);
                write!(out, "{label} 0:{}", i + 1).map_err(io_err)?;
                for j in 0..n {
                    write!(out, " {}:{}", j + 1, render_value(kernel, i, j)).map_err(io_err)?;
                }
                writeln!(out).map_err(io_err)?;
            }
        }
        OutputFormat::Report => {
            return Err(Error::InvalidParams(
                "report output needs statistics; use write_report".into(),
            ))
        }
    }
    Ok(())
}

pub fn write_matrix_file(kernel: &KernelMatrix, format: OutputFormat, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    match format {
        OutputFormat::Report => Err(Error::InvalidParams(
            "report output needs statistics; use write_report".into(),
        )),
        other => {
            write_matrix(kernel, other, &mut out)?;
            out.flush().map_err(|e| Error::io(path, e))
        }
    }
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    params: &'a crate::kernel::KernelParams,
    n_sequences: usize,
    sequence_ids: &'a [String],
    labels: &'a [Option<i64>],
    stats: &'a CountStats,
    train_boundary: Option<usize>,
    raw: Vec<Vec<u64>>,
    normalized: Option<Vec<Vec<f64>>>,
}

/// Machine-readable JSON report: parameters, counting statistics, and the
/// matrices. Timings stay in the sidecar.
pub fn write_report(
    kernel: &KernelMatrix,
    stats: &CountStats,
    train_boundary: Option<usize>,
    out: &mut impl Write,
) -> Result<()> {
    let doc = ReportDoc {
        params: &kernel.params,
        n_sequences: kernel.n(),
        sequence_ids: &kernel.sequence_ids,
        labels: &kernel.labels,
        stats,
        train_boundary,
        raw: kernel.raw.to_dense(),
        normalized: kernel.normalized.as_ref().map(|m| m.to_dense()),
    };
    serde_json::to_writer_pretty(&mut *out, &doc)
        .map_err(|e| Error::InvalidParams(format!("report serialization: {e}")))?;
    writeln!(out).map_err(|e| Error::io("<writer>", e))
}

/// Write the timing sidecar (key/value text).
pub fn write_timing_file(report: &TimingReport, path: &Path) -> Result<()> {
    std::fs::write(path, report.to_text()).map_err(|e| Error::io(path, e))
}

fn read_dense_cells(path: &Path) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::parse(path, 1, "missing header line"))?;
    let ids: Vec<String> = header.split('\t').map(str::to_owned).collect();
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let cells: Vec<String> = line.split('\t').map(str::to_owned).collect();
        if cells.len() != ids.len() {
            return Err(Error::parse(
                path,
                i + 2,
                format!("expected {} columns, found {}", ids.len(), cells.len()),
            ));
        }
        rows.push(cells);
    }
    if rows.len() != ids.len() {
        return Err(Error::parse(
            path,
            1,
            format!("expected {} rows, found {}", ids.len(), rows.len()),
        ));
    }
    Ok((ids, rows))
}

/// Parse a dense TSV of raw integer counts back into a packed matrix,
/// checking symmetry.
pub fn read_dense_tsv_raw(path: &Path) -> Result<(Vec<String>, SymMatrix<u64>)> {
    let (ids, rows) = read_dense_cells(path)?;
    let n = ids.len();
    let mut matrix = SymMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let value: u64 = rows[i][j]
                .parse()
                .map_err(|_| Error::parse(path, i + 2, format!("bad count '{}'", rows[i][j])))?;
            if j < i && matrix.get(i, j) != value {
                return Err(Error::parse(path, i + 2, "matrix is not symmetric"));
            }
            matrix.set(i, j, value);
        }
    }
    Ok((ids, matrix))
}

/// Parse a dense TSV of normalized values back into a packed matrix.
pub fn read_dense_tsv_normalized(path: &Path) -> Result<(Vec<String>, SymMatrix<f64>)> {
    let (ids, rows) = read_dense_cells(path)?;
    let n = ids.len();
    let mut matrix = SymMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let value: f64 = rows[i][j]
                .parse()
                .map_err(|_| Error::parse(path, i + 2, format!("bad value '{}'", rows[i][j])))?;
            matrix.set(i, j, value);
        }
    }
    Ok((ids, matrix))
}
