//! CSV and JSON renderings of sweep results.
//!
//! Floats use Rust's shortest round-trip formatting, so identical reports
//! render to identical bytes. Two-qubit-only columns are left empty for
//! larger registers.

use std::fmt::Write as _;

use rank2_core::protocol::ExactRow;
use rank2_core::{EntanglementReport, ReportRow};
use serde::Serialize;

use crate::calibration::Calibration;

pub const CSV_HEADER: &str = "omega,mean_x,mean_y,E_est,C_est,E_exact,C_exact,delta_E,delta_C,stderr_x,stderr_y";
pub const EXACT_CSV_HEADER: &str = "omega,E_exact,C_exact";

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn to_csv(report: &EntanglementReport) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in &report.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.omega,
            r.mean_x,
            r.mean_y,
            r.e_est,
            opt(r.c_est),
            r.e_exact,
            opt(r.c_exact),
            r.delta_e,
            opt(r.delta_c),
            r.stderr_x,
            r.stderr_y
        )
        .expect("writing to a String");
    }
    out
}

pub fn exact_to_csv(rows: &[ExactRow]) -> String {
    let mut out = String::from(EXACT_CSV_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(out, "{},{},{}", r.omega, r.e_exact, opt(r.c_exact)).expect("writing to a String");
    }
    out
}

#[derive(Debug, Serialize)]
struct JsonRow<'a> {
    omega: f64,
    mean_x: f64,
    mean_y: f64,
    #[serde(rename = "E_est")]
    e_est: f64,
    #[serde(rename = "C_est")]
    c_est: Option<f64>,
    #[serde(rename = "E_exact")]
    e_exact: f64,
    #[serde(rename = "C_exact")]
    c_exact: Option<f64>,
    #[serde(rename = "delta_E")]
    delta_e: f64,
    #[serde(rename = "delta_C")]
    delta_c: Option<f64>,
    stderr_x: f64,
    stderr_y: f64,
    shots_per_member: &'a [u64],
}

impl<'a> From<&'a ReportRow> for JsonRow<'a> {
    fn from(r: &'a ReportRow) -> Self {
        Self {
            omega: r.omega,
            mean_x: r.mean_x,
            mean_y: r.mean_y,
            e_est: r.e_est,
            c_est: r.c_est,
            e_exact: r.e_exact,
            c_exact: r.c_exact,
            delta_e: r.delta_e,
            delta_c: r.delta_c,
            stderr_x: r.stderr_x,
            stderr_y: r.stderr_y,
            shots_per_member: &r.shots_per_member,
        }
    }
}

#[derive(Debug, Serialize)]
struct QubitCoherence {
    id: usize,
    t1_us: f64,
    t2_us: f64,
}

#[derive(Debug, Serialize)]
struct NoiseInfo {
    model: &'static str,
    readout: &'static str,
    /// Not simulated; echoed for reference.
    coherence: Vec<QubitCoherence>,
}

#[derive(Debug, Serialize)]
struct JsonReport<'a> {
    family: &'a str,
    num_qubits: usize,
    sigma_x: String,
    sigma_y: String,
    shots: u64,
    shots_note: &'static str,
    seed: u64,
    noise: Option<NoiseInfo>,
    rows: Vec<JsonRow<'a>>,
}

/// Pretty JSON with run metadata. `calibration` supplies the echoed
/// coherence times when the run was noisy.
pub fn to_json(report: &EntanglementReport, calibration: Option<&Calibration>) -> String {
    let noise = report.noisy.then(|| NoiseInfo {
        model: "depolarizing Pauli injection after each gate, then readout flips",
        readout: "symmetric",
        coherence: calibration
            .map(|c| c.qubits.iter().map(|q| QubitCoherence { id: q.id, t1_us: q.t1_us, t2_us: q.t2_us }).collect())
            .unwrap_or_default(),
    });
    let json = JsonReport {
        family: report.family,
        num_qubits: report.num_qubits,
        sigma_x: report.sigma_x.to_string(),
        sigma_y: report.sigma_y.to_string(),
        shots: report.shots,
        shots_note: "shots are split across ensemble members; each member uses its full share for every setting",
        seed: report.seed,
        noise,
        rows: report.rows.iter().map(JsonRow::from).collect(),
    };
    let mut s = serde_json::to_string_pretty(&json).expect("report serializes");
    s.push('\n');
    s
}
