//! Device calibration files.
//!
//! ```json
//! {"qubits": [{"id": 0, "t1_us": 64.9, "t2_us": 22.6,
//!              "gate_error": 7.5e-4, "readout_error": 1.85e-2}, ...],
//!  "cx_errors": [{"pair": [0, 1], "error": 2.65e-2}, ...]}
//! ```
//!
//! T1/T2 are carried along for reports; the simulator does not use them.

use std::path::Path;

use rank2_core::{CouplingMap, NoiseModel};
use serde::{Deserialize, Serialize};

use crate::error::{read_json, Error, Result};

pub const MELBOURNE_CAL_NAME: &str = "ibmq-melbourne-cal.json";
const MELBOURNE_CAL: &str = include_str!("../data/ibmq-melbourne-cal.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QubitCalibration {
    pub id: usize,
    pub t1_us: f64,
    pub t2_us: f64,
    pub gate_error: f64,
    pub readout_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CxCalibration {
    pub pair: [usize; 2],
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    pub qubits: Vec<QubitCalibration>,
    pub cx_errors: Vec<CxCalibration>,
}

impl Calibration {
    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn load(path: &Path) -> Result<Self> {
        read_json(path)
    }

    /// Loads `path`, falling back to the bundled calibration when the file
    /// does not exist and its name matches the bundled one.
    pub fn load_or_bundled(path: &Path) -> Result<Self> {
        if !path.exists() && path.file_name().is_some_and(|n| n == MELBOURNE_CAL_NAME) {
            return Ok(Self::melbourne());
        }
        Self::load(path)
    }

    /// The bundled 15-qubit ibmq-melbourne calibration.
    pub fn melbourne() -> Self {
        Self::from_json(MELBOURNE_CAL).expect("bundled calibration parses")
    }

    /// Qubits must be listed once each with ids `0..n`.
    pub fn noise_model(&self) -> Result<NoiseModel> {
        let n = self.qubits.len();
        let mut readout = vec![None; n];
        let mut gate = vec![0.0; n];
        for q in &self.qubits {
            if q.id >= n || readout[q.id].is_some() {
                return Err(Error::Invalid(format!("calibration qubit ids must be 0..{n} without repeats")));
            }
            readout[q.id] = Some(q.readout_error);
            gate[q.id] = q.gate_error;
        }
        let readout = readout.into_iter().map(|r| r.expect("all ids seen")).collect();
        let pairs = self.cx_errors.iter().map(|c| ((c.pair[0], c.pair[1]), c.error));
        Ok(NoiseModel::new(readout, gate, pairs)?)
    }

    /// Every calibrated CX pair must be an edge of `map`.
    pub fn check_against(&self, map: &CouplingMap) -> Result<()> {
        if self.qubits.len() > map.num_qubits() {
            return Err(Error::Invalid(format!(
                "calibration has {} qubits, coupling map {}",
                self.qubits.len(),
                map.num_qubits()
            )));
        }
        for c in &self.cx_errors {
            if !map.contains(c.pair[0], c.pair[1]) {
                return Err(Error::Invalid(format!("calibrated pair {:?} is not a coupling-map edge", c.pair)));
            }
        }
        Ok(())
    }
}
