//! Output files: trajectory CSV, JSON reports, JSON lines.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use pseudospin_core::{BlochVector, ComplexVector3, Operator2, Trajectory, TrajectorySample, C64};
use serde::Serialize;

use crate::error::{CliError, Result};

pub const TRAJECTORY_HEADER: [&str; 9] =
    ["t", "n1_re", "n1_im", "n2_re", "n2_im", "n3_re", "n3_im", "norm_canonical", "norm_eta"];

/// 17 significant digits; enough for an exact `f64` round trip.
pub fn format_f64(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else {
        format!("{x:.16e}")
    }
}

pub fn c(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

pub fn vector(v: &ComplexVector3) -> [[f64; 2]; 3] {
    v.to_array().map(c)
}

pub fn matrix(m: &Operator2) -> [[[f64; 2]; 2]; 2] {
    m.0.map(|row| row.map(c))
}

pub fn write_trajectory(traj: &Trajectory, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(BufWriter::new(file));
    let wrap = |e: csv::Error| CliError::io(path, e.into());
    w.write_record(TRAJECTORY_HEADER).map_err(wrap)?;
    for s in &traj.samples {
        let n = s.n.0.to_array();
        let row = [
            s.t, n[0].re, n[0].im, n[1].re, n[1].im, n[2].re, n[2].im, s.norm_canonical, s.norm_eta,
        ];
        w.write_record(row.map(format_f64)).map_err(wrap)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

/// Reads a file written by [`write_trajectory`].
pub fn read_trajectory(path: &Path) -> Result<Vec<TrajectorySample>> {
    let parse_err = |message: String| CliError::Parse { path: path.into(), message };
    let mut r = csv::Reader::from_path(path).map_err(|e| parse_err(e.to_string()))?;
    let header = r.headers().map_err(|e| parse_err(e.to_string()))?;
    if header.iter().ne(TRAJECTORY_HEADER) {
        return Err(parse_err(format!("unexpected header {header:?}")));
    }
    let mut out = Vec::new();
    for record in r.records() {
        let record = record.map_err(|e| parse_err(e.to_string()))?;
        let v = record
            .iter()
            .map(|s| s.parse::<f64>().map_err(|e| parse_err(format!("{s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        if v.len() != TRAJECTORY_HEADER.len() {
            return Err(parse_err(format!("row has {} fields", v.len())));
        }
        out.push(TrajectorySample {
            t: v[0],
            n: BlochVector(ComplexVector3::from_parts([(v[1], v[2]), (v[3], v[4]), (v[5], v[6])])),
            norm_canonical: v[7],
            norm_eta: v[8],
        });
    }
    Ok(out)
}

pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Validation(format!("serialization failed: {e}")))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn write_json_lines<T: Serialize>(rows: &[T], path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut w = BufWriter::new(file);
    for row in rows {
        serde_json::to_writer(&mut w, row).map_err(|e| CliError::io(path, e.into()))?;
        w.write_all(b"\n").map_err(|e| CliError::io(path, e))?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

/// Two-column complex series, e.g. transition amplitudes.
pub fn write_series(rows: &[(f64, C64, C64)], names: [&str; 2], path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(BufWriter::new(file));
    let wrap = |e: csv::Error| CliError::io(path, e.into());
    let header = [
        "t".to_string(),
        format!("{}_re", names[0]),
        format!("{}_im", names[0]),
        format!("{}_re", names[1]),
        format!("{}_im", names[1]),
    ];
    w.write_record(&header).map_err(wrap)?;
    for (t, a, b) in rows {
        w.write_record([*t, a.re, a.im, b.re, b.im].map(format_f64)).map_err(wrap)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}
