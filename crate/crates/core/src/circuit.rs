//! Gates, circuits and coupling-map validation.
//!
//! Qubit `i` of an `n`-qubit register is bit `n - 1 - i` of a basis-state
//! index, so `|q0 q1 ... q(n-1)>` reads left to right as a binary number.
//! Single-qubit gates follow the `U3(θ, φ, λ) = Rz(φ) Ry(θ) Rz(λ)`
//! convention with `Rz(a) = exp(-i a σz / 2)` and `Ry(a) = exp(-i a σy / 2)`;
//! all equality between gates is taken up to a global phase.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::math::{self, cis, wrap_tau, Mat2, Mat4, C64, ONE, ZERO};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    U1 { qubit: usize, lambda: f64 },
    U2 { qubit: usize, phi: f64, lambda: f64 },
    U3 { qubit: usize, theta: f64, phi: f64, lambda: f64 },
    Cx { control: usize, target: usize },
    Rx { qubit: usize, angle: f64 },
    Ry { qubit: usize, angle: f64 },
    X { qubit: usize },
    H { qubit: usize },
}

/// Unitary of a gate, sized by its arity. Two-qubit matrices use the
/// `(control, target)` ordering, control as the high bit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateMatrix {
    Single(Mat2),
    Two(Mat4),
}

impl Gate {
    pub fn u1(qubit: usize, lambda: f64) -> Self {
        Gate::U1 { qubit, lambda }.canonical()
    }

    pub fn u2(qubit: usize, phi: f64, lambda: f64) -> Self {
        Gate::U2 { qubit, phi, lambda }.canonical()
    }

    pub fn u3(qubit: usize, theta: f64, phi: f64, lambda: f64) -> Self {
        Gate::U3 { qubit, theta, phi, lambda }.canonical()
    }

    pub fn cx(control: usize, target: usize) -> Self {
        Gate::Cx { control, target }
    }

    pub fn rx(qubit: usize, angle: f64) -> Self {
        Gate::Rx { qubit, angle }
    }

    pub fn ry(qubit: usize, angle: f64) -> Self {
        Gate::Ry { qubit, angle }
    }

    pub fn x(qubit: usize) -> Self {
        Gate::X { qubit }
    }

    pub fn h(qubit: usize) -> Self {
        Gate::H { qubit }
    }

    /// Qubits the gate touches; for CX the control comes first.
    pub fn qubits(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::Cx { control, target } => (control, Some(target)),
            Gate::U1 { qubit, .. }
            | Gate::U2 { qubit, .. }
            | Gate::U3 { qubit, .. }
            | Gate::Rx { qubit, .. }
            | Gate::Ry { qubit, .. }
            | Gate::X { qubit }
            | Gate::H { qubit } => (qubit, None),
        }
    }

    pub fn is_basis(&self) -> bool {
        matches!(self, Gate::U1 { .. } | Gate::U2 { .. } | Gate::U3 { .. } | Gate::Cx { .. })
    }

    /// Reduces U-gate parameters into `θ ∈ [0, π]`, `φ, λ ∈ [0, 2π)`.
    /// The result equals the input up to a global phase.
    pub fn canonical(self) -> Self {
        match self {
            Gate::U1 { qubit, lambda } => Gate::U1 { qubit, lambda: wrap_tau(lambda) },
            Gate::U2 { qubit, phi, lambda } => Gate::U2 {
                qubit,
                phi: wrap_tau(phi),
                lambda: wrap_tau(lambda),
            },
            Gate::U3 { qubit, theta, phi, lambda } => {
                let t = wrap_tau(theta);
                if t > PI {
                    // Ry(2π - θ') = -Z Ry(θ') Z, and the Z's fold into the
                    // outer z-rotations as a shift by π.
                    Gate::U3 {
                        qubit,
                        theta: math::TAU - t,
                        phi: wrap_tau(phi + PI),
                        lambda: wrap_tau(lambda + PI),
                    }
                } else {
                    Gate::U3 { qubit, theta: t, phi: wrap_tau(phi), lambda: wrap_tau(lambda) }
                }
            }
            other => other,
        }
    }

    pub fn matrix(&self) -> GateMatrix {
        match *self {
            Gate::U1 { lambda, .. } => GateMatrix::Single(u3_matrix(0.0, 0.0, lambda)),
            Gate::U2 { phi, lambda, .. } => GateMatrix::Single(u3_matrix(FRAC_PI_2, phi, lambda)),
            Gate::U3 { theta, phi, lambda, .. } => GateMatrix::Single(u3_matrix(theta, phi, lambda)),
            Gate::Cx { .. } => GateMatrix::Two(cx_matrix()),
            Gate::Rx { angle, .. } => {
                let (c, s) = (math::cos(angle / 2.0), math::sin(angle / 2.0));
                let mis = C64::new(0.0, -s);
                GateMatrix::Single([[C64::new(c, 0.0), mis], [mis, C64::new(c, 0.0)]])
            }
            Gate::Ry { angle, .. } => {
                let (c, s) = (math::cos(angle / 2.0), math::sin(angle / 2.0));
                GateMatrix::Single([
                    [C64::new(c, 0.0), C64::new(-s, 0.0)],
                    [C64::new(s, 0.0), C64::new(c, 0.0)],
                ])
            }
            Gate::X { .. } => GateMatrix::Single([[ZERO, ONE], [ONE, ZERO]]),
            Gate::H { .. } => {
                let h = C64::new(FRAC_1_SQRT_2, 0.0);
                GateMatrix::Single([[h, h], [h, -h]])
            }
        }
    }

    /// Rewrites the gate over the {U1, U2, U3, CX} basis. Basis gates pass
    /// through unchanged; everything else becomes a single U-gate equal to
    /// the original up to global phase.
    pub fn to_basis(&self) -> Vec<Gate> {
        let g = match *self {
            Gate::U1 { .. } | Gate::U2 { .. } | Gate::U3 { .. } | Gate::Cx { .. } => *self,
            Gate::Rx { qubit, angle } => Gate::u3(qubit, angle, -FRAC_PI_2, FRAC_PI_2),
            Gate::Ry { qubit, angle } => Gate::u3(qubit, angle, 0.0, 0.0),
            Gate::X { qubit } => Gate::u3(qubit, PI, 0.0, PI),
            Gate::H { qubit } => Gate::u2(qubit, 0.0, PI),
        };
        alloc::vec![g]
    }
}

/// `Rz(φ) Ry(θ) Rz(λ)`.
pub fn u3_matrix(theta: f64, phi: f64, lambda: f64) -> Mat2 {
    let (c, s) = (math::cos(theta / 2.0), math::sin(theta / 2.0));
    [
        [cis(-(phi + lambda) / 2.0) * c, -cis(-(phi - lambda) / 2.0) * s],
        [cis((phi - lambda) / 2.0) * s, cis((phi + lambda) / 2.0) * c],
    ]
}

pub fn cx_matrix() -> Mat4 {
    let mut m = [[ZERO; 4]; 4];
    m[0][0] = ONE;
    m[1][1] = ONE;
    m[2][3] = ONE;
    m[3][2] = ONE;
    m
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::NoQubits);
        }
        Ok(Self { num_qubits, gates: Vec::new() })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Appends a gate after checking its qubit indices.
    pub fn push(&mut self, gate: Gate) -> Result<&mut Self> {
        let (a, b) = gate.qubits();
        for q in core::iter::once(a).chain(b) {
            if q >= self.num_qubits {
                return Err(Error::QubitOutOfRange { index: q, num_qubits: self.num_qubits });
            }
        }
        if b == Some(a) {
            return Err(Error::SameControlTarget(a));
        }
        self.gates.push(gate.canonical());
        Ok(self)
    }

    pub fn extend<I: IntoIterator<Item = Gate>>(&mut self, gates: I) -> Result<&mut Self> {
        for g in gates {
            self.push(g)?;
        }
        Ok(self)
    }

    /// A copy of the circuit with every gate rewritten over the basis set.
    pub fn to_basis(&self) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            gates: self.gates.iter().flat_map(Gate::to_basis).collect(),
        }
    }

    pub fn is_basis(&self) -> bool {
        self.gates.iter().all(Gate::is_basis)
    }
}

/// Undirected qubit connectivity of a device.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingMap {
    num_qubits: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl CouplingMap {
    pub fn new<I>(num_qubits: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if num_qubits == 0 {
            return Err(Error::NoQubits);
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            for q in [a, b] {
                if q >= num_qubits {
                    return Err(Error::QubitOutOfRange { index: q, num_qubits });
                }
            }
            if a == b {
                return Err(Error::SameControlTarget(a));
            }
            set.insert(edge_key(a, b));
        }
        Ok(Self { num_qubits, edges: set })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Edges as `(low, high)` pairs in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&edge_key(a, b))
    }
}

pub(crate) fn edge_key(a: usize, b: usize) -> (usize, usize) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A CX placed on a pair the device cannot couple directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub gate_index: usize,
    pub control: usize,
    pub target: usize,
}

/// Lists every CX in `circuit` whose qubit pair is not an edge of `map`.
pub fn validate_against_coupling(circuit: &Circuit, map: &CouplingMap) -> Result<Vec<Violation>> {
    if circuit.num_qubits() > map.num_qubits() {
        return Err(Error::CircuitLargerThanMap {
            circuit: circuit.num_qubits(),
            map: map.num_qubits(),
        });
    }
    Ok(circuit
        .gates()
        .iter()
        .enumerate()
        .filter_map(|(gate_index, g)| match *g {
            Gate::Cx { control, target } if !map.contains(control, target) => {
                Some(Violation { gate_index, control, target })
            }
            _ => None,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{matmul2, phase_overlap2, unitarity_defect2};
    use proptest::prelude::*;

    fn single(g: &Gate) -> Mat2 {
        match g.matrix() {
            GateMatrix::Single(m) => m,
            GateMatrix::Two(_) => panic!("expected a single-qubit gate"),
        }
    }

    fn composed(gates: &[Gate]) -> Mat2 {
        gates.iter().fold(math::identity2(), |acc, g| matmul2(&single(g), &acc))
    }

    fn assert_entrywise(a: &Mat2, b: &Mat2, tol: f64) {
        for i in 0..2 {
            for j in 0..2 {
                assert!((a[i][j] - b[i][j]).norm() <= tol, "{a:?} vs {b:?}");
            }
        }
    }

    /// `exp(-i θ n·σ / 2)` for a unit axis, built from the closed form
    /// `cos(θ/2) I - i sin(θ/2) n·σ`.
    fn axis_rotation(theta: f64, n: [f64; 3]) -> Mat2 {
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        let [nx, ny, nz] = n;
        [
            [C64::new(c, -s * nz), C64::new(-s * ny, -s * nx)],
            [C64::new(s * ny, -s * nx), C64::new(c, s * nz)],
        ]
    }

    #[test]
    fn u3_zero_is_identity() {
        assert_entrywise(&single(&Gate::u3(0, 0.0, 0.0, 0.0)), &math::identity2(), 1e-15);
    }

    #[test]
    fn u3_prepares_plus_state() {
        let m = single(&Gate::u3(0, FRAC_PI_2, 0.0, PI));
        let (a, b) = (m[0][0], m[1][0]);
        // up to global phase: both amplitudes 1/√2, relative phase 1
        assert!((a.norm() - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((b.norm() - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((b / a - ONE).norm() < 1e-12);
    }

    #[test]
    fn u1_and_u2_are_special_u3() {
        for &l in &[0.0, 0.3, 2.0, 5.5] {
            assert_entrywise(&single(&Gate::u1(0, l)), &u3_matrix(0.0, 0.0, l), 1e-15);
            for &p in &[0.0, 1.1, 4.0] {
                assert_entrywise(&single(&Gate::u2(0, p, l)), &u3_matrix(FRAC_PI_2, p, l), 1e-15);
            }
        }
    }

    #[test]
    fn rotations_match_axis_exponentials() {
        for &t in &[-2.0, -FRAC_PI_2, 0.0, 0.7, PI, 5.0] {
            assert_entrywise(&single(&Gate::rx(0, t)), &axis_rotation(t, [1.0, 0.0, 0.0]), 1e-14);
            assert_entrywise(&single(&Gate::ry(0, t)), &axis_rotation(t, [0.0, 1.0, 0.0]), 1e-14);
        }
    }

    #[test]
    fn ry_minus_half_pi_reduces_to_canonical_u3() {
        let reduced = Gate::ry(0, -FRAC_PI_2).to_basis();
        assert_eq!(reduced.len(), 1);
        match reduced[0] {
            Gate::U3 { theta, .. } => assert!((theta - FRAC_PI_2).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
        // exp(+iπ/4 σy)
        let target = axis_rotation(-FRAC_PI_2, [0.0, 1.0, 0.0]);
        assert!((phase_overlap2(&composed(&reduced), &target) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn hadamard_reduces_to_u2() {
        let reduced = Gate::h(3).to_basis();
        assert_eq!(reduced, alloc::vec![Gate::u2(3, 0.0, PI)]);
        assert!((phase_overlap2(&composed(&reduced), &single(&Gate::h(3))) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn basis_gate_passes_through() {
        let g = Gate::u3(0, 1.0, 2.0, 3.0);
        assert_eq!(g.to_basis(), alloc::vec![g]);
        let cx = Gate::cx(0, 1);
        assert_eq!(cx.to_basis(), alloc::vec![cx]);
    }

    #[test]
    fn cx_flips_target_when_control_set() {
        let m = match Gate::cx(0, 1).matrix() {
            GateMatrix::Two(m) => m,
            _ => unreachable!(),
        };
        // |10> -> |11>
        assert_eq!(m[3][2], ONE);
        assert_eq!(m[2][2], ZERO);
        assert_eq!(m[0][0], ONE);
    }

    #[test]
    fn circuit_rejects_bad_indices() {
        let mut c = Circuit::new(2).unwrap();
        assert_eq!(c.push(Gate::h(2)).unwrap_err(), Error::QubitOutOfRange { index: 2, num_qubits: 2 });
        assert_eq!(c.push(Gate::cx(1, 1)).unwrap_err(), Error::SameControlTarget(1));
        assert!(c.is_empty());
        assert_eq!(Circuit::new(0).unwrap_err(), Error::NoQubits);
    }

    #[test]
    fn pushing_keeps_earlier_gates() {
        let mut c = Circuit::new(2).unwrap();
        c.push(Gate::h(0)).unwrap();
        let snapshot = c.clone();
        c.push(Gate::cx(0, 1)).unwrap();
        assert_eq!(&c.gates()[..1], snapshot.gates());
    }

    fn fig2_map() -> CouplingMap {
        CouplingMap::new(15, [(0, 1), (1, 2), (2, 3), (0, 14), (1, 13)]).unwrap()
    }

    #[test]
    fn coupling_validation() {
        let map = fig2_map();
        let mut ok = Circuit::new(4).unwrap();
        ok.push(Gate::cx(0, 1)).unwrap().push(Gate::cx(1, 0)).unwrap();
        assert!(validate_against_coupling(&ok, &map).unwrap().is_empty());

        let mut bad = Circuit::new(3).unwrap();
        bad.push(Gate::h(0)).unwrap().push(Gate::cx(0, 2)).unwrap();
        assert_eq!(
            validate_against_coupling(&bad, &map).unwrap(),
            alloc::vec![Violation { gate_index: 1, control: 0, target: 2 }]
        );

        let mut local = Circuit::new(3).unwrap();
        local.push(Gate::h(0)).unwrap().push(Gate::x(2)).unwrap();
        assert!(validate_against_coupling(&local, &map).unwrap().is_empty());
    }

    #[test]
    fn coupling_rejects_oversized_circuit() {
        let map = CouplingMap::new(2, [(0, 1)]).unwrap();
        let c = Circuit::new(3).unwrap();
        assert!(matches!(
            validate_against_coupling(&c, &map),
            Err(Error::CircuitLargerThanMap { circuit: 3, map: 2 })
        ));
    }

    #[test]
    fn coupling_map_is_symmetric() {
        let map = fig2_map();
        assert!(map.contains(14, 0) && map.contains(0, 14));
        assert!(CouplingMap::new(2, [(0, 2)]).is_err());
    }

    fn any_single_gate() -> impl Strategy<Value = Gate> {
        let a = -20.0..20.0f64;
        prop_oneof![
            a.clone().prop_map(|l| Gate::U1 { qubit: 0, lambda: l }),
            (a.clone(), a.clone()).prop_map(|(p, l)| Gate::U2 { qubit: 0, phi: p, lambda: l }),
            (a.clone(), a.clone(), a.clone())
                .prop_map(|(t, p, l)| Gate::U3 { qubit: 0, theta: t, phi: p, lambda: l }),
            a.clone().prop_map(|t| Gate::rx(0, t)),
            a.prop_map(|t| Gate::ry(0, t)),
            Just(Gate::x(0)),
            Just(Gate::h(0)),
        ]
    }

    proptest! {
        #[test]
        fn single_qubit_gates_are_unitary(g in any_single_gate()) {
            prop_assert!(unitarity_defect2(&single(&g)) <= 1e-12);
        }

        #[test]
        fn basis_reduction_preserves_unitary(g in any_single_gate()) {
            let reduced = g.to_basis();
            prop_assert!(reduced.iter().all(Gate::is_basis));
            let ov = phase_overlap2(&composed(&reduced), &single(&g));
            prop_assert!((ov - 1.0).abs() <= 1e-10);
        }

        #[test]
        fn canonical_form_is_in_range_and_phase_equal(
            t in -30.0..30.0f64, p in -30.0..30.0f64, l in -30.0..30.0f64
        ) {
            let raw = Gate::U3 { qubit: 0, theta: t, phi: p, lambda: l };
            let can = raw.canonical();
            if let Gate::U3 { theta, phi, lambda, .. } = can {
                prop_assert!((0.0..=PI).contains(&theta));
                prop_assert!((0.0..math::TAU).contains(&phi));
                prop_assert!((0.0..math::TAU).contains(&lambda));
            } else {
                prop_assert!(false);
            }
            prop_assert!((phase_overlap2(&single(&raw), &single(&can)) - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn u3_on_zero_matches_bloch_parametrisation() {
        use rand_chacha::ChaCha8Rng;
        use rand_core::{RngCore, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut uniform = || (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        for _ in 0..1000 {
            let theta = uniform() * PI;
            let phi = uniform() * math::TAU;
            let lambda = uniform() * math::TAU;
            let m = single(&Gate::u3(0, theta, phi, lambda));
            let want = [C64::new((theta / 2.0).cos(), 0.0), cis(phi) * (theta / 2.0).sin()];
            let got = [m[0][0], m[1][0]];
            let overlap = (want[0].conj() * got[0] + want[1].conj() * got[1]).norm();
            assert!((overlap - 1.0).abs() < 1e-12);
        }
    }
}
