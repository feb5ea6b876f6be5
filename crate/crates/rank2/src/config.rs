//! Experiment configuration files.
//!
//! ```json
//! {"family": "cat", "num_qubits": 4, "target_qubit": 0,
//!  "omega_step": 0.125, "shots": 8192, "seed": 7,
//!  "noise": "ibmq-melbourne-cal.json",
//!  "sigma_x": "XXXX", "sigma_y": "YXXX"}
//! ```
//!
//! `omega_grid` (explicit list) may replace `omega_step`. The `custom`
//! family needs `custom: {"first": <circuit>, "second": <circuit>}` with
//! circuits in the [`crate::circuit_file`] format. Relative noise paths are
//! resolved against the config file's directory.

use std::path::{Path, PathBuf};

use rank2_core::protocol::{omega_grid, DEFAULT_OMEGA_STEP, DEFAULT_SHOTS};
use rank2_core::{ExperimentConfig, PauliString, StateFamily};
use serde::{Deserialize, Serialize};

use crate::calibration::Calibration;
use crate::circuit_file::CircuitFile;
use crate::error::{read_json, Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CustomPair {
    pub first: CircuitFile,
    pub second: CircuitFile,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub family: String,
    #[serde(default)]
    pub num_qubits: Option<usize>,
    #[serde(default)]
    pub target_qubit: usize,
    #[serde(default)]
    pub omega_step: Option<f64>,
    #[serde(default)]
    pub omega_grid: Option<Vec<f64>>,
    #[serde(default = "default_shots")]
    pub shots: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub noise: Option<PathBuf>,
    #[serde(default)]
    pub sigma_x: Option<String>,
    #[serde(default)]
    pub sigma_y: Option<String>,
    #[serde(default)]
    pub custom: Option<CustomPair>,
}

fn default_shots() -> u64 {
    DEFAULT_SHOTS
}

/// A resolved configuration plus the calibration it was built from, if any.
#[derive(Debug, Clone)]
pub struct LoadedConfig {
    pub experiment: ExperimentConfig,
    pub calibration: Option<Calibration>,
}

pub fn parse_family(name: &str, custom: Option<&CustomPair>) -> Result<StateFamily> {
    Ok(match name.to_ascii_lowercase().as_str() {
        "cat" => StateFamily::Cat,
        "rho1" => StateFamily::Rho1,
        "rho2" => StateFamily::Rho2,
        "custom" => {
            let pair = custom.ok_or_else(|| Error::Invalid("family custom needs a `custom` circuit pair".into()))?;
            StateFamily::Custom { first: pair.first.to_circuit()?, second: pair.second.to_circuit()? }
        }
        other => return Err(Error::Invalid(format!("unknown family {other:?} (cat, rho1, rho2, custom)"))),
    })
}

pub fn parse_sigma_pair(x: Option<&str>, y: Option<&str>) -> Result<Option<(PauliString, PauliString)>> {
    match (x, y) {
        (None, None) => Ok(None),
        (Some(x), Some(y)) => Ok(Some((x.parse()?, y.parse()?))),
        _ => Err(Error::Invalid("sigma_x and sigma_y must be given together".into())),
    }
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        read_json(path)
    }

    /// `base` anchors relative noise paths.
    pub fn resolve(&self, base: Option<&Path>) -> Result<LoadedConfig> {
        let family = parse_family(&self.family, self.custom.as_ref())?;
        let num_qubits = match (&family, self.num_qubits) {
            (_, Some(n)) => n,
            (StateFamily::Rho1 | StateFamily::Rho2, None) => 2,
            (StateFamily::Custom { first, .. }, None) => first.num_qubits(),
            (StateFamily::Cat, None) => return Err(Error::Invalid("family cat needs num_qubits".into())),
        };
        let mut cfg = ExperimentConfig::new(family, num_qubits);
        cfg.target_qubit = self.target_qubit;
        cfg.shots = self.shots;
        cfg.seed = self.seed;
        cfg.omega_grid = match (&self.omega_grid, self.omega_step) {
            (Some(_), Some(_)) => return Err(Error::Invalid("give omega_grid or omega_step, not both".into())),
            (Some(list), None) => list.clone(),
            (None, step) => omega_grid(step.unwrap_or(DEFAULT_OMEGA_STEP))?,
        };
        cfg.sigma_strings = parse_sigma_pair(self.sigma_x.as_deref(), self.sigma_y.as_deref())?;
        let calibration = match &self.noise {
            None => None,
            Some(p) => {
                let path = match base {
                    Some(b) if p.is_relative() => b.join(p),
                    _ => p.clone(),
                };
                Some(Calibration::load_or_bundled(&path)?)
            }
        };
        cfg.noise = calibration.as_ref().map(Calibration::noise_model).transpose()?;
        cfg.validate()?;
        Ok(LoadedConfig { experiment: cfg, calibration })
    }
}

pub fn load_config(path: &Path) -> Result<LoadedConfig> {
    ConfigFile::load(path)?.resolve(path.parent())
}
