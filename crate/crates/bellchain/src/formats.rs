// Copyright 2026 The Bellchain Developers
// SPDX-License-Identifier: Apache-2.0

//! CSV schemas and number formatting.
//!
//! Every number is written with 12 significant digits. Readers parse the
//! same schemas back; a value read and written again prints identically.

use std::path::Path;

use bellchain_core::measures::TransmissionRecord;
use bellchain_core::sweep::SweepSample;

use crate::error::{HarnessError, Result};

/// Column names of each file kind.
pub mod schema {
    pub const TRACE: &[&str] = &["tau", "concurrence", "eof", "fidelity"];
    pub const SWEEP: &[&str] = &["jm", "tau_star", "objective"];
    pub const OPTIMUM: &[&str] = &["jm_star", "tau_star", "objective_value", "objective"];
    pub const DISORDER: &[&str] = &["p", "realization", "eof"];
    pub const DISORDER_SUMMARY: &[&str] = &["p", "mean", "min", "max", "fraction_beating_clean"];
    pub const DISORDER_CLEAN: &[&str] = &["jm_star", "tau_star", "clean_value", "base_seed", "n_realizations"];
    pub const PERTURB: &[&str] = &["p", "draw", "delta_alpha", "delta_gamma", "eof", "ratio"];
    pub const PERTURB_SUMMARY: &[&str] = &["p", "mean_ratio", "min_ratio", "max_ratio"];
    pub const COMPARE: &[&str] =
        &["label", "kind", "j_a", "j_a_tilde", "j_b", "j_b_tilde", "jm_star", "tau_star", "objective_value"];
    pub const SINGLE: &[&str] = &["model", "jm_star", "tau_star", "fidelity"];
    pub const ORACLE: &[&str] = &["kind", "n_chain", "state", "tau", "max_deviation", "leakage"];
}

/// Shortest of fixed or scientific notation carrying 12 significant digits.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".into()
    } else {
        t.to_string()
    }
}

/// Writes a CSV with the given header and rows of preformatted cells.
pub fn write_table(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| HarnessError::format(path, e))?;
    w.write_record(header).map_err(|e| HarnessError::format(path, e))?;
    for row in rows {
        w.write_record(&row).map_err(|e| HarnessError::format(path, e))?;
    }
    w.flush().map_err(|e| HarnessError::io(path, e))
}

/// Reads a CSV, checking its header against `header`.
pub fn read_table(path: &Path, header: &[&str]) -> Result<Vec<Vec<String>>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| HarnessError::format(path, e))?;
    let found: Vec<String> = r.headers().map_err(|e| HarnessError::format(path, e))?.iter().map(str::to_owned).collect();
    if found != header {
        return Err(HarnessError::format(path, format!("expected columns {header:?}, found {found:?}")));
    }
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| HarnessError::format(path, e))?;
        rows.push(rec.iter().map(str::to_owned).collect());
    }
    Ok(rows)
}

pub fn parse_num(path: &Path, cell: &str) -> Result<f64> {
    cell.parse().map_err(|_| HarnessError::format(path, format!("`{cell}` is not a number")))
}

fn numeric_rows(path: &Path, header: &[&str]) -> Result<Vec<Vec<f64>>> {
    read_table(path, header)?
        .into_iter()
        .map(|row| row.iter().map(|c| parse_num(path, c)).collect())
        .collect()
}

pub fn write_trace(path: &Path, records: &[TransmissionRecord]) -> Result<()> {
    write_table(
        path,
        schema::TRACE,
        records.iter().map(|r| vec![fmt_num(r.tau), fmt_num(r.concurrence), fmt_num(r.eof), fmt_num(r.fidelity)]),
    )
}

pub fn read_trace(path: &Path) -> Result<Vec<TransmissionRecord>> {
    Ok(numeric_rows(path, schema::TRACE)?
        .into_iter()
        .map(|v| TransmissionRecord { tau: v[0], concurrence: v[1], eof: v[2], fidelity: v[3] })
        .collect())
}

pub fn write_sweep(path: &Path, samples: &[SweepSample]) -> Result<()> {
    write_table(path, schema::SWEEP, samples.iter().map(|s| vec![fmt_num(s.jm), fmt_num(s.tau_star), fmt_num(s.objective)]))
}

pub fn read_sweep(path: &Path) -> Result<Vec<SweepSample>> {
    Ok(numeric_rows(path, schema::SWEEP)?
        .into_iter()
        .map(|v| SweepSample { jm: v[0], tau_star: v[1], objective: v[2] })
        .collect())
}

/// One row of a per-realization disorder file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisorderSample {
    pub p: f64,
    pub realization: u64,
    pub eof: f64,
}

pub fn read_disorder(path: &Path) -> Result<Vec<DisorderSample>> {
    read_table(path, schema::DISORDER)?
        .into_iter()
        .map(|row| {
            let realization = row[1].parse().map_err(|_| HarnessError::format(path, format!("bad realization `{}`", row[1])))?;
            Ok(DisorderSample { p: parse_num(path, &row[0])?, realization, eof: parse_num(path, &row[2])? })
        })
        .collect()
}

/// One row of a disorder summary file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisorderSummaryRow {
    pub p: f64,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    pub fraction_beating_clean: f64,
}

pub fn read_disorder_summary(path: &Path) -> Result<Vec<DisorderSummaryRow>> {
    Ok(numeric_rows(path, schema::DISORDER_SUMMARY)?
        .into_iter()
        .map(|v| DisorderSummaryRow { p: v[0], mean: v[1], min: v[2], max: v[3], fraction_beating_clean: v[4] })
        .collect())
}
