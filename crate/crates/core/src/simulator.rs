//! Statevector evolution, Z-basis shot sampling and stochastic noise.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::circuit::{edge_key, Circuit, Gate, GateMatrix};
use crate::error::{Error, Result};
use crate::math::{Mat2, C64, I, ONE, ZERO};
use crate::observables::{Pauli, PauliString};
use crate::rng::{shot_stream, ShotRng};

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<C64>,
}

impl StateVector {
    /// `|0...0>`
    pub fn zero(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::NoQubits);
        }
        let mut amplitudes = vec![ZERO; 1 << num_qubits];
        amplitudes[0] = ONE;
        Ok(Self { num_qubits, amplitudes })
    }

    /// Wraps raw amplitudes; the length must be a power of two and the
    /// vector normalized within 1e-10.
    pub fn from_amplitudes(amplitudes: Vec<C64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidConfig("amplitude count must be a power of two ≥ 2"));
        }
        let sv = Self { num_qubits: len.trailing_zeros() as usize, amplitudes };
        if (sv.norm_sqr() - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidConfig("state vector is not normalized"));
        }
        Ok(sv)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    fn mask(&self, qubit: usize) -> usize {
        1 << (self.num_qubits - 1 - qubit)
    }

    /// Applies a 2×2 unitary to `qubit` in place.
    pub fn apply_single(&mut self, m: &Mat2, qubit: usize) {
        let mask = self.mask(qubit);
        let len = self.amplitudes.len();
        let mut base = 0;
        while base < len {
            for i in base..base + mask {
                let j = i | mask;
                let (a0, a1) = (self.amplitudes[i], self.amplitudes[j]);
                self.amplitudes[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amplitudes[j] = m[1][0] * a0 + m[1][1] * a1;
            }
            base += mask << 1;
        }
    }

    pub fn apply_cx(&mut self, control: usize, target: usize) {
        let (cm, tm) = (self.mask(control), self.mask(target));
        for i in 0..self.amplitudes.len() {
            if i & cm != 0 && i & tm == 0 {
                self.amplitudes.swap(i, i | tm);
            }
        }
    }

    pub fn apply_pauli(&mut self, p: Pauli, qubit: usize) {
        let mask = self.mask(qubit);
        match p {
            Pauli::I => {}
            Pauli::X => {
                for i in (0..self.amplitudes.len()).filter(|i| i & mask == 0) {
                    self.amplitudes.swap(i, i | mask);
                }
            }
            Pauli::Y => {
                for i in (0..self.amplitudes.len()).filter(|i| i & mask == 0) {
                    let (a0, a1) = (self.amplitudes[i], self.amplitudes[i | mask]);
                    self.amplitudes[i] = -I * a1;
                    self.amplitudes[i | mask] = I * a0;
                }
            }
            Pauli::Z => {
                for (i, a) in self.amplitudes.iter_mut().enumerate() {
                    if i & mask != 0 {
                        *a = -*a;
                    }
                }
            }
        }
    }

    pub fn apply(&mut self, gate: &Gate) {
        match (gate.matrix(), *gate) {
            (_, Gate::Cx { control, target }) => self.apply_cx(control, target),
            (GateMatrix::Single(m), g) => self.apply_single(&m, g.qubits().0),
            (GateMatrix::Two(_), _) => unreachable!("only CX is a two-qubit gate"),
        }
    }
}

/// Evolves `|0...0>` through the circuit.
pub fn run_statevector(circuit: &Circuit) -> StateVector {
    let mut sv = StateVector::zero(circuit.num_qubits()).expect("circuits have ≥ 1 qubit");
    for g in circuit.gates() {
        sv.apply(g);
    }
    sv
}

/// `<ψ|P|ψ>` computed directly from the amplitudes.
pub fn expectation_exact(state: &StateVector, p: &PauliString) -> Result<f64> {
    if p.num_qubits() != state.num_qubits() {
        return Err(Error::DimensionMismatch { expected: state.num_qubits(), found: p.num_qubits() });
    }
    let amps = state.amplitudes();
    let flip = p.flip_mask();
    let value: C64 = amps
        .iter()
        .enumerate()
        .map(|(i, &a)| amps[i ^ flip].conj() * p.phase_on(i) * a)
        .sum();
    if value.im.abs() > 1e-10 {
        return Err(Error::ImaginaryResidue(value.im));
    }
    Ok(value.re)
}

/// Per-qubit and per-pair error rates of a device.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseModel {
    readout_flip: Vec<f64>,
    single_qubit_depol: Vec<f64>,
    two_qubit_depol: BTreeMap<(usize, usize), f64>,
    /// Error rate for CX pairs without an entry; `None` makes such pairs an
    /// error.
    uncalibrated_pair: Option<f64>,
}

impl NoiseModel {
    pub fn new<I>(readout_flip: Vec<f64>, single_qubit_depol: Vec<f64>, two_qubit_depol: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), f64)>,
    {
        let n = readout_flip.len();
        if n == 0 {
            return Err(Error::NoQubits);
        }
        if single_qubit_depol.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: single_qubit_depol.len() });
        }
        for &p in &readout_flip {
            check_probability("readout flip", p)?;
        }
        for &p in &single_qubit_depol {
            check_probability("single-qubit depolarizing", p)?;
        }
        let mut pairs = BTreeMap::new();
        for ((a, b), p) in two_qubit_depol {
            check_probability("CX depolarizing", p)?;
            for q in [a, b] {
                if q >= n {
                    return Err(Error::QubitOutOfRange { index: q, num_qubits: n });
                }
            }
            if a == b {
                return Err(Error::SameControlTarget(a));
            }
            pairs.insert(edge_key(a, b), p);
        }
        Ok(Self { readout_flip, single_qubit_depol, two_qubit_depol: pairs, uncalibrated_pair: None })
    }

    /// Readout flips only; gates are error-free on every pair.
    pub fn readout_only(readout_flip: Vec<f64>) -> Result<Self> {
        let n = readout_flip.len();
        let mut model = Self::new(readout_flip, vec![0.0; n], [])?;
        model.uncalibrated_pair = Some(0.0);
        Ok(model)
    }

    pub fn num_qubits(&self) -> usize {
        self.readout_flip.len()
    }

    pub fn readout_flip(&self, qubit: usize) -> f64 {
        self.readout_flip[qubit]
    }

    pub fn single_qubit_depol(&self, qubit: usize) -> f64 {
        self.single_qubit_depol[qubit]
    }

    pub fn two_qubit_depol(&self, a: usize, b: usize) -> Option<f64> {
        self.two_qubit_depol.get(&edge_key(a, b)).copied().or(self.uncalibrated_pair)
    }

    pub fn pairs(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.two_qubit_depol.iter().map(|(&k, &v)| (k, v))
    }
}

fn check_probability(what: &'static str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidProbability { what, value: p })
    }
}

/// One observed bitstring (qubit 0 first) and how often it occurred.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShotRecord {
    pub bitstring: Vec<u8>,
    pub count: u64,
}

impl ShotRecord {
    pub fn from_index(index: usize, num_qubits: usize, count: u64) -> Self {
        let bitstring = (0..num_qubits).map(|q| ((index >> (num_qubits - 1 - q)) & 1) as u8).collect();
        Self { bitstring, count }
    }

    pub fn index(&self) -> usize {
        self.bitstring.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }
}

impl fmt::Display for ShotRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bitstring {
            write!(f, "{b}")?;
        }
        write!(f, ": {}", self.count)
    }
}

/// Pauli error injected after a gate in one trajectory.
#[derive(Debug, Clone, Copy)]
struct Injection {
    after_gate: usize,
    qubit: usize,
    pauli: Pauli,
}

const PAULIS: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

/// Precomputed sampling state for one circuit. `sample(k)` returns the
/// basis-state index measured in shot `k`.
pub struct Sampler<'a> {
    circuit: &'a Circuit,
    noise: Option<&'a NoiseModel>,
    seed: u64,
    cumulative: Vec<f64>,
    gate_error: Vec<GateError>,
}

#[derive(Debug, Clone, Copy)]
enum GateError {
    Single { qubit: usize, p: f64 },
    Pair { control: usize, target: usize, p: f64 },
}

impl<'a> Sampler<'a> {
    pub fn new(circuit: &'a Circuit, seed: u64, noise: Option<&'a NoiseModel>) -> Result<Self> {
        let mut gate_error = Vec::new();
        if let Some(model) = noise {
            if model.num_qubits() < circuit.num_qubits() {
                return Err(Error::NoiseModelTooSmall {
                    model: model.num_qubits(),
                    circuit: circuit.num_qubits(),
                });
            }
            for g in circuit.gates() {
                gate_error.push(match *g {
                    Gate::Cx { control, target } => GateError::Pair {
                        control,
                        target,
                        p: model
                            .two_qubit_depol(control, target)
                            .ok_or(Error::UncalibratedPair(control, target))?,
                    },
                    other => {
                        let qubit = other.qubits().0;
                        GateError::Single { qubit, p: model.single_qubit_depol(qubit) }
                    }
                });
            }
        }
        Ok(Self { circuit, noise, seed, cumulative: cumulative(&run_statevector(circuit)), gate_error })
    }

    pub fn num_qubits(&self) -> usize {
        self.circuit.num_qubits()
    }

    pub fn sample(&self, shot: u64) -> usize {
        let mut rng = shot_stream(self.seed, shot);
        let Some(model) = self.noise else {
            return draw(&self.cumulative, rng.uniform());
        };

        let injections = self.draw_injections(&mut rng);
        let index = if injections.is_empty() {
            draw(&self.cumulative, rng.uniform())
        } else {
            let mut sv = StateVector::zero(self.circuit.num_qubits()).expect("nonzero qubits");
            let mut pending = injections.iter().peekable();
            for (k, g) in self.circuit.gates().iter().enumerate() {
                sv.apply(g);
                while let Some(inj) = pending.next_if(|inj| inj.after_gate == k) {
                    sv.apply_pauli(inj.pauli, inj.qubit);
                }
            }
            draw(&cumulative(&sv), rng.uniform())
        };

        let n = self.circuit.num_qubits();
        (0..n).fold(index, |acc, q| {
            if rng.bernoulli(model.readout_flip(q)) {
                acc ^ (1 << (n - 1 - q))
            } else {
                acc
            }
        })
    }

    fn draw_injections(&self, rng: &mut ShotRng) -> Vec<Injection> {
        let mut out = Vec::new();
        for (after_gate, err) in self.gate_error.iter().enumerate() {
            match *err {
                GateError::Single { qubit, p } => {
                    if rng.bernoulli(p) {
                        let pauli = PAULIS[1 + rng.below(3) as usize];
                        out.push(Injection { after_gate, qubit, pauli });
                    }
                }
                GateError::Pair { control, target, p } => {
                    if rng.bernoulli(p) {
                        let k = 1 + rng.below(15) as usize;
                        for (qubit, pauli) in [(control, PAULIS[k / 4]), (target, PAULIS[k % 4])] {
                            if pauli != Pauli::I {
                                out.push(Injection { after_gate, qubit, pauli });
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

fn cumulative(sv: &StateVector) -> Vec<f64> {
    let mut acc = 0.0;
    sv.amplitudes()
        .iter()
        .map(|a| {
            acc += a.norm_sqr();
            acc
        })
        .collect()
}

fn draw(cumulative: &[f64], u: f64) -> usize {
    let total = *cumulative.last().expect("nonempty");
    let idx = cumulative.partition_point(|&c| c <= u * total);
    // guard against the tail rounding past the last nonzero bin
    idx.min(cumulative.len() - 1)
}

/// Accumulates per-index counts into sorted records.
pub fn tally<I: IntoIterator<Item = usize>>(num_qubits: usize, outcomes: I) -> Vec<ShotRecord> {
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    for i in outcomes {
        *counts.entry(i).or_default() += 1;
    }
    counts.into_iter().map(|(i, c)| ShotRecord::from_index(i, num_qubits, c)).collect()
}

/// Samples `shots` Z-basis measurements of the circuit's output. With a
/// noise model each shot runs its own Pauli-injection trajectory and then
/// flips each bit with the qubit's readout probability.
pub fn sample_shots(circuit: &Circuit, shots: u64, seed: u64, noise: Option<&NoiseModel>) -> Result<Vec<ShotRecord>> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let sampler = Sampler::new(circuit, seed, noise)?;
    Ok(tally(circuit.num_qubits(), (0..shots).map(|k| sampler.sample(k))))
}
