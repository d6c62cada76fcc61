//! Report and table serialization. Field order is fixed by the struct
//! definitions; nothing time- or machine-dependent is emitted.

use std::fmt::Write as _;

use classinv_core::radicals::VerificationReport;
use serde::Serialize;

use crate::failure::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Serialize)]
struct ReportRow<'a> {
    id: &'a str,
    anchor: &'a str,
    digits_requested: u32,
    digits_agreed: u32,
    residual: &'a str,
    pass: bool,
    notes: &'a str,
}

impl<'a> From<&'a VerificationReport> for ReportRow<'a> {
    fn from(r: &'a VerificationReport) -> Self {
        ReportRow {
            id: &r.id,
            anchor: &r.anchor,
            digits_requested: r.digits_requested,
            digits_agreed: r.digits_agreed,
            residual: &r.residual,
            pass: r.pass,
            notes: &r.notes,
        }
    }
}

/// One row of a corpus table.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub id: String,
    pub kind: String,
    pub index: String,
    pub closed_form: String,
    pub value: String,
    pub digits_agreed: u32,
    pub notes: String,
}

pub fn reports(reports: &[VerificationReport], format: Format) -> Result<String, Failure> {
    let rows: Vec<ReportRow> = reports.iter().map(ReportRow::from).collect();
    match format {
        Format::Json => json(&rows),
        Format::Csv => csv_of(&rows),
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                let status = if r.pass { "PASS" } else { "FAIL" };
                write!(
                    out,
                    "{status} {:<7} {:<28} digits {:>3}/{:<3} residual {}",
                    r.anchor, r.id, r.digits_agreed, r.digits_requested, r.residual
                )
                .unwrap();
                if !r.notes.is_empty() {
                    write!(out, "  ({})", r.notes).unwrap();
                }
                out.push('\n');
            }
            Ok(out)
        }
    }
}

pub fn table(rows: &[TableRow], format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => json(rows),
        Format::Csv => csv_of(rows),
        Format::Text => {
            let mut out = String::new();
            for r in rows {
                writeln!(
                    out,
                    "{:<22} {}  agreed {}  {}",
                    r.id, r.value, r.digits_agreed, r.closed_form
                )
                .unwrap();
            }
            Ok(out)
        }
    }
}

fn json<T: Serialize>(rows: &[T]) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(rows).map_err(|e| Failure::Usage(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv_of<T: Serialize>(rows: &[T]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
