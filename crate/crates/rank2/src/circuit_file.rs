//! JSON circuit format.
//!
//! ```json
//! {"num_qubits": 2,
//!  "gates": [{"gate": "h", "qubits": [0]},
//!            {"gate": "cx", "qubits": [0, 1]},
//!            {"gate": "u3", "qubits": [1], "params": [1.0, 0.5, 0.25]}]}
//! ```
//!
//! Gate names: `u1 u2 u3 cx rx ry x h`. Parameters follow the constructor
//! order of [`Gate`] (`u3`: θ, φ, λ).

use std::path::Path;

use rank2_core::{Circuit, Gate};
use serde::{Deserialize, Serialize};

use crate::error::{read_json, Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateSpec {
    pub gate: String,
    pub qubits: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitFile {
    pub num_qubits: usize,
    pub gates: Vec<GateSpec>,
}

impl GateSpec {
    pub fn to_gate(&self) -> Result<Gate> {
        let name = self.gate.to_ascii_lowercase();
        let (nq, np) = match name.as_str() {
            "u1" | "rx" | "ry" => (1, 1),
            "u2" => (1, 2),
            "u3" => (1, 3),
            "x" | "h" => (1, 0),
            "cx" => (2, 0),
            _ => return Err(Error::Invalid(format!("unknown gate {:?}", self.gate))),
        };
        if self.qubits.len() != nq || self.params.len() != np {
            return Err(Error::Invalid(format!(
                "gate {name} takes {nq} qubit(s) and {np} parameter(s), got {} and {}",
                self.qubits.len(),
                self.params.len()
            )));
        }
        let (q, p) = (&self.qubits, &self.params);
        Ok(match name.as_str() {
            "u1" => Gate::u1(q[0], p[0]),
            "u2" => Gate::u2(q[0], p[0], p[1]),
            "u3" => Gate::u3(q[0], p[0], p[1], p[2]),
            "rx" => Gate::rx(q[0], p[0]),
            "ry" => Gate::ry(q[0], p[0]),
            "x" => Gate::x(q[0]),
            "h" => Gate::h(q[0]),
            _ => Gate::cx(q[0], q[1]),
        })
    }
}

impl From<&Gate> for GateSpec {
    fn from(g: &Gate) -> Self {
        let (gate, qubits, params) = match *g {
            Gate::U1 { qubit, lambda } => ("u1", vec![qubit], vec![lambda]),
            Gate::U2 { qubit, phi, lambda } => ("u2", vec![qubit], vec![phi, lambda]),
            Gate::U3 { qubit, theta, phi, lambda } => ("u3", vec![qubit], vec![theta, phi, lambda]),
            Gate::Cx { control, target } => ("cx", vec![control, target], vec![]),
            Gate::Rx { qubit, angle } => ("rx", vec![qubit], vec![angle]),
            Gate::Ry { qubit, angle } => ("ry", vec![qubit], vec![angle]),
            Gate::X { qubit } => ("x", vec![qubit], vec![]),
            Gate::H { qubit } => ("h", vec![qubit], vec![]),
        };
        Self { gate: gate.into(), qubits, params }
    }
}

impl CircuitFile {
    pub fn to_circuit(&self) -> Result<Circuit> {
        let mut c = Circuit::new(self.num_qubits)?;
        for (k, spec) in self.gates.iter().enumerate() {
            let gate = spec.to_gate().map_err(|e| Error::Invalid(format!("gate {k}: {e}")))?;
            c.push(gate)?;
        }
        Ok(c)
    }
}

impl From<&Circuit> for CircuitFile {
    fn from(c: &Circuit) -> Self {
        Self { num_qubits: c.num_qubits(), gates: c.gates().iter().map(GateSpec::from).collect() }
    }
}

pub fn load_circuit(path: &Path) -> Result<Circuit> {
    read_json::<CircuitFile>(path)?.to_circuit()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_gate_kinds() {
        let text = r#"{"num_qubits": 2, "gates": [
            {"gate": "u1", "qubits": [0], "params": [0.3]},
            {"gate": "u2", "qubits": [1], "params": [0.1, 0.2]},
            {"gate": "U3", "qubits": [0], "params": [1.0, 0.5, 0.25]},
            {"gate": "cx", "qubits": [1, 0]},
            {"gate": "rx", "qubits": [0], "params": [0.7]},
            {"gate": "ry", "qubits": [1], "params": [-0.7]},
            {"gate": "x", "qubits": [0]},
            {"gate": "h", "qubits": [1]}]}"#;
        let file: CircuitFile = serde_json::from_str(text).unwrap();
        let c = file.to_circuit().unwrap();
        assert_eq!(c.len(), 8);
        assert_eq!(c.gates()[3], Gate::cx(1, 0));
        assert_eq!(c.gates()[2], Gate::u3(0, 1.0, 0.5, 0.25));
    }

    #[test]
    fn roundtrip_preserves_circuit() {
        let mut c = Circuit::new(3).unwrap();
        c.extend([Gate::h(0), Gate::cx(0, 2), Gate::u3(1, 2.5, 0.1, 6.0), Gate::ry(2, 0.4)]).unwrap();
        let text = serde_json::to_string(&CircuitFile::from(&c)).unwrap();
        let back: CircuitFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_circuit().unwrap(), c);
    }

    #[test]
    fn rejects_malformed_gates() {
        for bad in [
            r#"{"gate": "cz", "qubits": [0, 1]}"#,
            r#"{"gate": "cx", "qubits": [0]}"#,
            r#"{"gate": "u3", "qubits": [0], "params": [1.0]}"#,
        ] {
            let spec: GateSpec = serde_json::from_str(bad).unwrap();
            assert!(spec.to_gate().is_err(), "{bad}");
        }
        let out_of_range = CircuitFile { num_qubits: 1, gates: vec![GateSpec::from(&Gate::cx(0, 1))] };
        assert!(out_of_range.to_circuit().is_err());
    }
}
