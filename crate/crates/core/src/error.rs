use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit index {index} out of range for {num_qubits} qubits")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    #[error("controlled gate uses qubit {0} as both control and target")]
    SameControlTarget(usize),

    #[error("a circuit needs at least one qubit")]
    NoQubits,

    #[error("dimension mismatch: expected {expected} qubits, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("circuit has {circuit} qubits but the coupling map only {map}")]
    CircuitLargerThanMap { circuit: usize, map: usize },

    #[error("noise model covers {model} qubits but the circuit uses {circuit}")]
    NoiseModelTooSmall { model: usize, circuit: usize },

    #[error("no calibrated CX error for pair ({0}, {1})")]
    UncalibratedPair(usize, usize),

    #[error("invalid probability {value} for {what}")]
    InvalidProbability { what: &'static str, value: f64 },

    #[error("weights sum to {0}, expected 1")]
    WeightSum(f64),

    #[error("amplitudes of member {0} are not normalized")]
    Unnormalized(usize),

    #[error("shot count must be positive")]
    ZeroShots,

    #[error("no shot records to estimate from")]
    EmptyRecords,

    #[error("shot records have inconsistent bitstring lengths")]
    RaggedRecords,

    #[error("ensemble has no members")]
    EmptyEnsemble,

    #[error("density matrix is not {0}")]
    InvalidDensityMatrix(&'static str),

    #[error("expectation value has imaginary residue {0}")]
    ImaginaryResidue(f64),

    #[error("value {value} outside the domain of {what}")]
    OutOfDomain { what: &'static str, value: f64 },

    #[error("eigenvalue computation failed: {0}")]
    Numerical(&'static str),

    #[error("invalid Pauli letter {0:?}")]
    InvalidPauli(char),

    #[error("invalid experiment configuration: {0}")]
    InvalidConfig(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
