//! Pauli-string observables, their Z-basis measurement settings, and parity
//! estimation of correlation functions from shot counts.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;
use core::fmt;
use core::str::FromStr;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::math::{self, C64, I, ONE};
use crate::simulator::{sample_shots, NoiseModel, ShotRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

impl TryFrom<char> for Pauli {
    type Error = Error;

    fn try_from(c: char) -> Result<Self> {
        match c.to_ascii_uppercase() {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            _ => Err(Error::InvalidPauli(c)),
        }
    }
}

/// Tensor product of single-qubit Paulis, qubit 0 first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    letters: Vec<Pauli>,
}

impl PauliString {
    pub fn new(letters: Vec<Pauli>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::NoQubits);
        }
        Ok(Self { letters })
    }

    pub fn identity(num_qubits: usize) -> Result<Self> {
        Self::new(alloc::vec![Pauli::I; num_qubits])
    }

    pub fn num_qubits(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.iter().all(|&p| p == Pauli::I)
    }

    /// Basis-index bits flipped by the string (its X and Y positions).
    pub(crate) fn flip_mask(&self) -> usize {
        let n = self.letters.len();
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, p)| matches!(p, Pauli::X | Pauli::Y))
            .fold(0, |m, (q, _)| m | 1 << (n - 1 - q))
    }

    /// Phase `c` such that `P|i> = c |i ^ flip_mask>`.
    pub(crate) fn phase_on(&self, index: usize) -> C64 {
        let n = self.letters.len();
        self.letters.iter().enumerate().fold(ONE, |acc, (q, p)| {
            let bit = (index >> (n - 1 - q)) & 1 == 1;
            match (p, bit) {
                (Pauli::Y, false) => acc * I,
                (Pauli::Y, true) => acc * -I,
                (Pauli::Z, true) => -acc,
                _ => acc,
            }
        })
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(s.chars().map(Pauli::try_from).collect::<Result<_>>()?)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.letters.iter().map(|p| p.letter()).collect();
        f.write_str(&s)
    }
}

/// The Σ operators for `target`: all-X, all-X with Y at `target`, and Z on
/// qubit 0.
pub fn sigma_operators(num_qubits: usize, target: usize) -> Result<(PauliString, PauliString, PauliString)> {
    if num_qubits == 0 {
        return Err(Error::NoQubits);
    }
    if target >= num_qubits {
        return Err(Error::QubitOutOfRange { index: target, num_qubits });
    }
    let sx = alloc::vec![Pauli::X; num_qubits];
    let mut sy = sx.clone();
    sy[target] = Pauli::Y;
    let mut sz = alloc::vec![Pauli::I; num_qubits];
    sz[0] = Pauli::Z;
    Ok((PauliString { letters: sx }, PauliString { letters: sy }, PauliString { letters: sz }))
}

/// Pre-measurement rotations and the qubits whose parity carries the value.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSetting {
    pub rotations: Vec<Gate>,
    pub parity_mask: BTreeSet<usize>,
}

/// Maps an X (Y) measurement onto Z with `Ry(-π/2)` (`Rx(π/2)`), i.e.
/// `exp(+iπ/4 σy)` and `exp(-iπ/4 σx)`.
pub fn measurement_setting(p: &PauliString) -> MeasurementSetting {
    let mut rotations = Vec::new();
    let mut parity_mask = BTreeSet::new();
    for (q, &letter) in p.letters().iter().enumerate() {
        match letter {
            Pauli::I => continue,
            Pauli::X => rotations.push(Gate::ry(q, -FRAC_PI_2)),
            Pauli::Y => rotations.push(Gate::rx(q, FRAC_PI_2)),
            Pauli::Z => {}
        }
        parity_mask.insert(q);
    }
    MeasurementSetting { rotations, parity_mask }
}

/// Parity estimate of a ±1-valued correlation function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationEstimate {
    pub value: f64,
    pub p_plus: f64,
    pub p_minus: f64,
    pub shots: u64,
    pub std_error: f64,
}

impl CorrelationEstimate {
    fn from_counts(plus: u64, minus: u64) -> Self {
        let shots = plus + minus;
        let p_plus = plus as f64 / shots as f64;
        let p_minus = minus as f64 / shots as f64;
        let value = p_plus - p_minus;
        let std_error = math::sqrt(((1.0 - value * value) / shots as f64).max(0.0));
        Self { value, p_plus, p_minus, shots, std_error }
    }
}

/// `Σ count · (-1)^(ones in mask) / total`. An empty mask is the identity
/// observable and gives exactly +1.
pub fn estimate_parity(records: &[ShotRecord], mask: &BTreeSet<usize>) -> Result<CorrelationEstimate> {
    let Some(first) = records.first() else {
        return Err(Error::EmptyRecords);
    };
    let width = first.bitstring.len();
    if records.iter().any(|r| r.bitstring.len() != width) {
        return Err(Error::RaggedRecords);
    }
    if let Some(&q) = mask.iter().find(|&&q| q >= width) {
        return Err(Error::QubitOutOfRange { index: q, num_qubits: width });
    }
    let (mut plus, mut minus) = (0u64, 0u64);
    for r in records {
        let ones = mask.iter().filter(|&&q| r.bitstring[q] == 1).count();
        if ones % 2 == 0 {
            plus += r.count;
        } else {
            minus += r.count;
        }
    }
    if plus + minus == 0 {
        return Err(Error::EmptyRecords);
    }
    if mask.is_empty() {
        let mut est = CorrelationEstimate::from_counts(plus, 0);
        est.std_error = 0.0;
        return Ok(est);
    }
    Ok(CorrelationEstimate::from_counts(plus, minus))
}

/// Circuit that prepares `circuit`'s state and rotates it for measuring
/// `p` in the Z basis, reduced to basis gates.
pub fn measurement_circuit(circuit: &Circuit, p: &PauliString) -> Result<(Circuit, BTreeSet<usize>)> {
    if p.num_qubits() != circuit.num_qubits() {
        return Err(Error::DimensionMismatch { expected: circuit.num_qubits(), found: p.num_qubits() });
    }
    let setting = measurement_setting(p);
    let mut c = circuit.to_basis();
    c.extend(setting.rotations.iter().flat_map(Gate::to_basis))?;
    Ok((c, setting.parity_mask))
}

/// Estimates `<P>` on the state prepared by `circuit` from `shots` samples.
pub fn pauli_expectation_sampled(
    circuit: &Circuit,
    p: &PauliString,
    shots: u64,
    seed: u64,
    noise: Option<&NoiseModel>,
) -> Result<CorrelationEstimate> {
    let (c, mask) = measurement_circuit(circuit, p)?;
    let records = sample_shots(&c, shots, seed, noise)?;
    estimate_parity(&records, &mask)
}
