//! Shot-based simulation of entanglement measurements on rank-2 mixed
//! states.
//!
//! A rank-2 state is prepared as a weighted ensemble of pure-state
//! circuits. Each member is measured in two Pauli-string settings, the
//! parities are combined with the realized shot weights, and the resulting
//! correlations give the geometric measure of entanglement of one qubit
//! with the rest and, for two qubits, the concurrence.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the CLI and
//! parallel execution live in the companion `rank2` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod circuit;
pub mod entanglement;
mod error;
pub mod math;
pub mod observables;
pub mod protocol;
pub mod rng;
pub mod simulator;

pub use circuit::{validate_against_coupling, Circuit, CouplingMap, Gate, GateMatrix, Violation};
pub use entanglement::{
    concurrence_from_correlations, concurrence_rank2_closed_form, ensemble_density_matrix, exact_sigma_means,
    geometric_measure, relation_check, wootters_concurrence, DensityMatrix, EntanglementValue, Rank2Amplitudes,
    Rank2Term,
};
pub use error::{Error, Result};
pub use observables::{
    estimate_parity, measurement_setting, pauli_expectation_sampled, sigma_operators, CorrelationEstimate, Pauli,
    PauliString,
};
pub use protocol::{
    allocate_shots, build_cat_ensemble, build_rho1_ensemble, build_rho2_ensemble, run_experiment, EntanglementReport,
    ExperimentConfig, Rank2Ensemble, ReportRow, ShotAllocation, StateFamily,
};
pub use simulator::{expectation_exact, run_statevector, sample_shots, NoiseModel, ShotRecord, StateVector};
