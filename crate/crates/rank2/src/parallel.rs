//! Rayon-parallel drivers. Every shot and every ω point draws from its own
//! seeded stream, so results match the serial drivers bit for bit whatever
//! the thread count.

use std::collections::BTreeMap;

use rank2_core::protocol::{report_header, run_point};
use rank2_core::simulator::{NoiseModel, Sampler, ShotRecord};
use rank2_core::{Circuit, EntanglementReport, ExperimentConfig};
use rayon::prelude::*;

/// Shots handled per rayon task.
const CHUNK: u64 = 4096;

pub fn run_experiment_par(cfg: &ExperimentConfig) -> rank2_core::Result<EntanglementReport> {
    let mut report = report_header(cfg)?;
    report.rows = (0..cfg.omega_grid.len()).into_par_iter().map(|k| run_point(cfg, k)).collect::<Result<_, _>>()?;
    Ok(report)
}

pub fn sample_shots_par(
    circuit: &Circuit,
    shots: u64,
    seed: u64,
    noise: Option<&NoiseModel>,
) -> rank2_core::Result<Vec<ShotRecord>> {
    if shots == 0 {
        return Err(rank2_core::Error::ZeroShots);
    }
    let sampler = Sampler::new(circuit, seed, noise)?;
    let chunks = shots.div_ceil(CHUNK);
    let counts = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut m = BTreeMap::new();
            for k in c * CHUNK..((c + 1) * CHUNK).min(shots) {
                *m.entry(sampler.sample(k)).or_insert(0u64) += 1;
            }
            m
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (i, n) in b {
                *a.entry(i).or_insert(0) += n;
            }
            a
        });
    let n = circuit.num_qubits();
    Ok(counts.into_iter().map(|(i, c)| ShotRecord::from_index(i, n, c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rank2_core::{run_experiment, sample_shots, Gate, StateFamily};

    use crate::calibration::Calibration;

    #[test]
    fn parallel_sampling_matches_serial() {
        let mut c = Circuit::new(3).unwrap();
        c.extend([Gate::h(0), Gate::cx(0, 1), Gate::cx(1, 2), Gate::ry(2, 0.3)]).unwrap();
        let c = c.to_basis();
        let noise = Calibration::melbourne().noise_model().unwrap();
        for noise in [None, Some(&noise)] {
            for shots in [1, 4095, 4096, 10_001] {
                assert_eq!(sample_shots_par(&c, shots, 11, noise).unwrap(), sample_shots(&c, shots, 11, noise).unwrap());
            }
        }
    }

    #[test]
    fn parallel_sweep_matches_serial() {
        let mut cfg = ExperimentConfig::new(StateFamily::Cat, 3);
        cfg.shots = 1000;
        cfg.seed = 5;
        cfg.noise = Some(Calibration::melbourne().noise_model().unwrap());
        assert_eq!(run_experiment_par(&cfg).unwrap(), run_experiment(&cfg).unwrap());
    }
}
