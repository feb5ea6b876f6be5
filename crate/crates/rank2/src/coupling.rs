//! Coupling-map files: `{"num_qubits": n, "edges": [[a, b], ...]}`.

use std::path::Path;

use rank2_core::CouplingMap;
use serde::{Deserialize, Serialize};

use crate::error::{read_json, Result};

pub const MELBOURNE_MAP_NAME: &str = "ibmq-melbourne.json";
const MELBOURNE_MAP: &str = include_str!("../data/ibmq-melbourne.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CouplingFile {
    pub num_qubits: usize,
    pub edges: Vec<[usize; 2]>,
}

impl CouplingFile {
    pub fn to_map(&self) -> Result<CouplingMap> {
        Ok(CouplingMap::new(self.num_qubits, self.edges.iter().map(|e| (e[0], e[1])))?)
    }
}

impl From<&CouplingMap> for CouplingFile {
    fn from(map: &CouplingMap) -> Self {
        Self { num_qubits: map.num_qubits(), edges: map.edges().map(|(a, b)| [a, b]).collect() }
    }
}

pub fn load_coupling(path: &Path) -> Result<CouplingMap> {
    if !path.exists() && path.file_name().is_some_and(|n| n == MELBOURNE_MAP_NAME) {
        return Ok(melbourne_map());
    }
    read_json::<CouplingFile>(path)?.to_map()
}

/// The bundled 15-qubit ibmq-melbourne connectivity.
pub fn melbourne_map() -> CouplingMap {
    serde_json::from_str::<CouplingFile>(MELBOURNE_MAP)
        .expect("bundled coupling map parses")
        .to_map()
        .expect("bundled coupling map is valid")
}
