//! Entanglement measures of rank-2 mixed states.
//!
//! Three independent routes to the two-qubit concurrence live here: the
//! Wootters eigenvalue formula on `ρρ̃`, the closed form in the amplitudes
//! of an ensemble over `{|00>, |11>}`, and the correlation formula
//! `sqrt(<Σx>² + <Σy>²)`. They must agree, which is what
//! [`oracle_suite`] checks.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, Matrix4};

use crate::error::{Error, Result};
use crate::math::{self, kron2, matmul4, Mat4, C64, I, ZERO};
use crate::observables::{sigma_operators, PauliString};
use crate::protocol::Rank2Ensemble;
use crate::rng::shot_stream;
use crate::simulator::{run_statevector, StateVector};

const HERMITIAN_TOL: f64 = 1e-10;

/// Spin-flip eigenvalues at or below this are treated as exact zeros;
/// rounding in the eigen-solve leaves residues near 1e-16 whose square
/// roots would otherwise leak ~1e-8 into the concurrence.
const SPECTRUM_FLOOR: f64 = 1e-14;

/// Eigenvalues of `ρρ̃` below this are a genuine failure, not rounding.
const NEGATIVE_CLAMP: f64 = -1e-9;

/// `1 − s` at or below this counts as a saturated state. The square root
/// in the geometric measure turns a 1e-16 rounding residue in `s` into a
/// 1e-8 error in E at full entanglement.
const SATURATION_FLOOR: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    num_qubits: usize,
    data: Vec<C64>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity (eigenvalues
    /// ≥ −1e−10).
    pub fn new(num_qubits: usize, data: Vec<C64>) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::NoQubits);
        }
        let dim = 1usize << num_qubits;
        if data.len() != dim * dim {
            return Err(Error::InvalidDensityMatrix("square with side 2^num_qubits"));
        }
        let rho = Self { num_qubits, data };
        for i in 0..dim {
            for j in i..dim {
                if (rho.get(i, j) - rho.get(j, i).conj()).norm() > HERMITIAN_TOL {
                    return Err(Error::InvalidDensityMatrix("Hermitian"));
                }
            }
        }
        if (rho.trace() - 1.0).abs() > HERMITIAN_TOL {
            return Err(Error::InvalidDensityMatrix("unit trace"));
        }
        if rho.eigenvalues()?.iter().any(|&e| e < -HERMITIAN_TOL) {
            return Err(Error::InvalidDensityMatrix("positive semidefinite"));
        }
        Ok(rho)
    }

    pub fn pure(state: &StateVector) -> Self {
        let amps = state.amplitudes();
        let data = amps.iter().flat_map(|&a| amps.iter().map(move |&b| a * b.conj())).collect();
        Self { num_qubits: state.num_qubits(), data }
    }

    /// `Σ w_k |ψ_k><ψ_k|`; weights must sum to one.
    pub fn mixture<'a, I>(num_qubits: usize, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, &'a StateVector)>,
    {
        let dim = 1usize << num_qubits;
        let mut data = vec![ZERO; dim * dim];
        let mut total = 0.0;
        for (w, sv) in members {
            if sv.num_qubits() != num_qubits {
                return Err(Error::DimensionMismatch { expected: num_qubits, found: sv.num_qubits() });
            }
            total += w;
            let amps = sv.amplitudes();
            for (i, &a) in amps.iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                for (j, &b) in amps.iter().enumerate() {
                    data[i * dim + j] += a * b.conj() * w;
                }
            }
        }
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::WeightSum(total));
        }
        Ok(Self { num_qubits, data })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.num_qubits
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.dim() + col]
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.get(i, i).re).sum()
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let dim = self.dim();
        let m = DMatrix::from_fn(dim, dim, |i, j| self.get(i, j));
        let eig = nalgebra::SymmetricEigen::try_new(m, 1e-15, 10_000)
            .ok_or(Error::Numerical("Hermitian eigen-solve did not converge"))?;
        let mut ev: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        ev.sort_by(|a, b| b.total_cmp(a));
        Ok(ev)
    }

    fn as_mat4(&self) -> Result<Mat4> {
        if self.num_qubits != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: self.num_qubits });
        }
        Ok(core::array::from_fn(|i| core::array::from_fn(|j| self.get(i, j))))
    }
}

/// `tr(ρP)`, checked to be real.
pub fn pauli_mean(rho: &DensityMatrix, p: &PauliString) -> Result<f64> {
    if p.num_qubits() != rho.num_qubits() {
        return Err(Error::DimensionMismatch { expected: rho.num_qubits(), found: p.num_qubits() });
    }
    let flip = p.flip_mask();
    // <i^f| P |i> = phase(i), so tr(ρP) = Σ_i ρ[i][i^f] phase(i)
    let value: C64 = (0..rho.dim()).map(|i| rho.get(i, i ^ flip) * p.phase_on(i)).sum();
    if value.im.abs() > HERMITIAN_TOL {
        return Err(Error::ImaginaryResidue(value.im));
    }
    Ok(value.re)
}

/// `(tr(ρΣx), tr(ρΣy))`.
pub fn exact_sigma_means(rho: &DensityMatrix, sigma_x: &PauliString, sigma_y: &PauliString) -> Result<(f64, f64)> {
    Ok((pauli_mean(rho, sigma_x)?, pauli_mean(rho, sigma_y)?))
}

/// Geometric measure `½(1 − sqrt(1 − s))`, `s = <Σx>² + <Σy>²` clamped to
/// `[0, 1]`.
pub fn geometric_measure(mean_x: f64, mean_y: f64) -> f64 {
    let s = (mean_x * mean_x + mean_y * mean_y).clamp(0.0, 1.0);
    let gap = if 1.0 - s <= SATURATION_FLOOR { 0.0 } else { 1.0 - s };
    0.5 * (1.0 - math::sqrt(gap))
}

/// Concurrence of a two-qubit rank-2 state from its Σ correlations,
/// capped at 1.
pub fn concurrence_from_correlations(mean_x: f64, mean_y: f64) -> f64 {
    math::sqrt(mean_x * mean_x + mean_y * mean_y).min(1.0)
}

/// Concurrence implied by a geometric measure, `2 sqrt(E(1 − E))`.
pub fn relation_check(e: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&e) {
        return Err(Error::OutOfDomain { what: "geometric measure", value: e });
    }
    Ok(2.0 * math::sqrt(e * (1.0 - e)))
}

fn spin_flip_operator() -> Mat4 {
    let y = [[ZERO, -I], [I, ZERO]];
    kron2(&y, &y)
}

/// Eigenvalues `λ_i²` of `ρρ̃`, `ρ̃ = (σy⊗σy) ρ* (σy⊗σy)`, in descending
/// order, from a general (non-Hermitian) complex Schur decomposition.
pub fn spin_flip_spectrum(rho: &DensityMatrix) -> Result<[f64; 4]> {
    let r = rho.as_mat4()?;
    let yy = spin_flip_operator();
    let conj: Mat4 = r.map(|row| row.map(|z| z.conj()));
    let tilde = matmul4(&matmul4(&yy, &conj), &yy);
    let prod = matmul4(&r, &tilde);

    let m = Matrix4::from_fn(|i, j| prod[i][j]);
    let schur = nalgebra::Schur::try_new(m, 1e-15, 10_000).ok_or(Error::Numerical("Schur iteration did not converge"))?;
    let ev = schur.eigenvalues().ok_or(Error::Numerical("Schur form not triangular"))?;

    let mut out = [0.0; 4];
    for (slot, z) in out.iter_mut().zip(ev.iter()) {
        if z.im.abs() > 1e-8 {
            return Err(Error::Numerical("complex eigenvalue of ρρ̃"));
        }
        if z.re < NEGATIVE_CLAMP {
            return Err(Error::Numerical("negative eigenvalue of ρρ̃"));
        }
        *slot = if z.re <= SPECTRUM_FLOOR { 0.0 } else { z.re };
    }
    out.sort_by(|a, b| b.total_cmp(a));
    Ok(out)
}

/// `max(0, λ1 − λ2 − λ3 − λ4)`.
pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<f64> {
    let l = spin_flip_spectrum(rho)?.map(math::sqrt);
    Ok((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

/// One member `a|00> + b|11>` of a two-qubit ensemble.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rank2Term {
    pub weight: f64,
    pub a: C64,
    pub b: C64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rank2Amplitudes {
    terms: Vec<Rank2Term>,
}

impl Rank2Amplitudes {
    pub fn new(terms: Vec<Rank2Term>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyEnsemble);
        }
        let mut total = 0.0;
        for (k, t) in terms.iter().enumerate() {
            if !(0.0..=1.0).contains(&t.weight) {
                return Err(Error::InvalidProbability { what: "ensemble weight", value: t.weight });
            }
            if (t.a.norm_sqr() + t.b.norm_sqr() - 1.0).abs() > 1e-12 {
                return Err(Error::Unnormalized(k));
            }
            total += t.weight;
        }
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::WeightSum(total));
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[Rank2Term] {
        &self.terms
    }

    /// `Σ ω a b*`
    pub fn coherence(&self) -> C64 {
        self.terms.iter().map(|t| t.a * t.b.conj() * t.weight).sum()
    }

    pub fn density_matrix(&self) -> DensityMatrix {
        let mut data = vec![ZERO; 16];
        for t in &self.terms {
            let amps = [t.a, ZERO, ZERO, t.b];
            for i in 0..4 {
                for j in 0..4 {
                    data[i * 4 + j] += amps[i] * amps[j].conj() * t.weight;
                }
            }
        }
        DensityMatrix { num_qubits: 2, data }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rank2Concurrence {
    pub lambda1: f64,
    pub lambda2: f64,
    pub concurrence: f64,
}

/// `λ1,2 = sqrt(Σ ωα ωβ |aα|²|bβ|²) ± |Σ ω a b*|`, `λ3 = λ4 = 0`, and
/// `C = 2|Σ ω a b*|`.
pub fn concurrence_rank2_closed_form(amps: &Rank2Amplitudes) -> Rank2Concurrence {
    let t = amps.terms();
    let cross: f64 = t
        .iter()
        .flat_map(|x| t.iter().map(move |y| x.weight * y.weight * x.a.norm_sqr() * y.b.norm_sqr()))
        .sum();
    let root = math::sqrt(cross);
    let coh = amps.coherence().norm();
    Rank2Concurrence { lambda1: root + coh, lambda2: (root - coh).max(0.0), concurrence: 2.0 * coh }
}

/// Geometric measure and concurrence of one state, each optional.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EntanglementValue {
    pub geometric: Option<f64>,
    pub concurrence: Option<f64>,
}

impl EntanglementValue {
    /// Both measures from Σ means; the concurrence only for two qubits.
    pub fn from_means(mean_x: f64, mean_y: f64, num_qubits: usize) -> Self {
        Self {
            geometric: Some(geometric_measure(mean_x, mean_y)),
            concurrence: (num_qubits == 2).then(|| concurrence_from_correlations(mean_x, mean_y)),
        }
    }
}

/// `Σ ω |ψ><ψ|` over the ensemble's prepared states.
pub fn ensemble_density_matrix(ensemble: &Rank2Ensemble) -> Result<DensityMatrix> {
    let states: Vec<(f64, StateVector)> =
        ensemble.members().iter().map(|m| (m.weight, run_statevector(&m.circuit))).collect();
    DensityMatrix::mixture(ensemble.num_qubits(), states.iter().map(|(w, s)| (*w, s)))
}

/// Draws a random ensemble of 2–4 members over `{|00>, |11>}`.
pub fn random_rank2_amplitudes(seed: u64, trial: u64) -> Rank2Amplitudes {
    let mut rng = shot_stream(seed, trial);
    let members = 2 + rng.below(3) as usize;
    let raw: Vec<f64> = (0..members).map(|_| rng.uniform() + 1e-3).collect();
    let total: f64 = raw.iter().sum();
    let mut terms: Vec<Rank2Term> = raw
        .iter()
        .map(|&w| {
            let theta = rng.uniform() * core::f64::consts::FRAC_PI_2;
            let pa = rng.uniform() * math::TAU;
            let pb = rng.uniform() * math::TAU;
            Rank2Term { weight: w / total, a: math::cis(pa) * math::cos(theta), b: math::cis(pb) * math::sin(theta) }
        })
        .collect();
    // absorb rounding so the weights sum to one
    let drift: f64 = 1.0 - terms.iter().map(|t| t.weight).sum::<f64>();
    terms[0].weight += drift;
    Rank2Amplitudes::new(terms).expect("generated amplitudes are valid")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSummary {
    pub trials: u64,
    pub max_discrepancy: f64,
    pub worst_trial: u64,
}

/// Runs [`oracle_suite_with`] on the real correlation formula.
pub fn oracle_suite(trials: u64, seed: u64) -> Result<OracleSummary> {
    oracle_suite_with(trials, seed, concurrence_from_correlations)
}

/// Compares, on `trials` random two-qubit rank-2 states, the Wootters
/// concurrence, the closed form, `concurrence_fn` applied to the exact Σ
/// means, and the concurrence implied by the geometric measure. Reports
/// the largest pairwise disagreement.
pub fn oracle_suite_with(trials: u64, seed: u64, concurrence_fn: fn(f64, f64) -> f64) -> Result<OracleSummary> {
    let (sx, sy, _) = sigma_operators(2, 0)?;
    let mut summary = OracleSummary { trials, max_discrepancy: 0.0, worst_trial: 0 };
    for trial in 0..trials {
        let amps = random_rank2_amplitudes(seed, trial);
        let rho = amps.density_matrix();
        let (mx, my) = exact_sigma_means(&rho, &sx, &sy)?;
        let values = [
            wootters_concurrence(&rho)?,
            concurrence_rank2_closed_form(&amps).concurrence,
            concurrence_fn(mx, my),
            relation_check(geometric_measure(mx, my))?,
        ];
        for (i, a) in values.iter().enumerate() {
            for b in &values[i + 1..] {
                let d = (a - b).abs();
                if d > summary.max_discrepancy || d.is_nan() {
                    summary.max_discrepancy = d;
                    summary.worst_trial = trial;
                }
            }
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Circuit, Gate};
    use crate::math::ONE;
    use core::f64::consts::FRAC_1_SQRT_2;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn bell() -> StateVector {
        let mut c = Circuit::new(2).unwrap();
        c.push(Gate::h(0)).unwrap().push(Gate::cx(0, 1)).unwrap();
        run_statevector(&c)
    }

    fn cat2(omega: f64) -> Rank2Amplitudes {
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        Rank2Amplitudes::new(vec![
            Rank2Term { weight: omega, a: h, b: h },
            Rank2Term { weight: 1.0 - omega, a: h, b: -h },
        ])
        .unwrap()
    }

    #[test]
    fn geometric_measure_values() {
        assert_eq!(geometric_measure(0.0, 0.0), 0.0);
        assert_eq!(geometric_measure(1.0, 0.0), 0.5);
        assert!((geometric_measure(0.6, 0.8) - 0.5).abs() < 1e-15);
        // sampling overshoot is clamped
        assert_eq!(geometric_measure(0.9, 0.9), 0.5);
    }

    #[test]
    fn correlation_concurrence_values() {
        assert!((concurrence_from_correlations(2.0 * 0.75 - 1.0, 0.0) - 0.5).abs() < 1e-15);
        assert_eq!(concurrence_from_correlations(0.0, 0.0), 0.0);
        assert!((concurrence_from_correlations(0.6, 0.8) - 1.0).abs() < 1e-15);
        assert_eq!(concurrence_from_correlations(1.0, 1.0), 1.0);
    }

    #[test]
    fn relation_values() {
        assert_eq!(relation_check(0.0).unwrap(), 0.0);
        assert_eq!(relation_check(0.5).unwrap(), 1.0);
        let omega: f64 = 0.875;
        let e = 0.5 * (1.0 - 2.0 * (omega * (1.0 - omega)).sqrt());
        assert!((e - 0.169281).abs() < 1e-6);
        assert!((relation_check(e).unwrap() - 0.75).abs() < 1e-12);
        assert!((relation_check(0.169281).unwrap() - 0.75).abs() < 1e-5);
        assert!(relation_check(0.6).is_err());
        assert!(relation_check(-0.1).is_err());
    }

    #[test]
    fn wootters_on_reference_states() {
        assert!((wootters_concurrence(&DensityMatrix::pure(&bell())).unwrap() - 1.0).abs() < 1e-12);
        let zero = StateVector::zero(2).unwrap();
        assert!(wootters_concurrence(&DensityMatrix::pure(&zero)).unwrap().abs() < 1e-12);
        let rho = cat2(0.75).density_matrix();
        let spec = spin_flip_spectrum(&rho).unwrap();
        let want = [0.5625, 0.0625, 0.0, 0.0];
        for (a, b) in spec.iter().zip(want) {
            assert!((a - b).abs() < 1e-12, "{spec:?}");
        }
        assert!((wootters_concurrence(&rho).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn wootters_rejects_wrong_size() {
        let rho = DensityMatrix::pure(&StateVector::zero(3).unwrap());
        assert!(matches!(wootters_concurrence(&rho), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn closed_form_reference_values() {
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        let pure = Rank2Amplitudes::new(vec![Rank2Term { weight: 1.0, a: h, b: h }]).unwrap();
        let r = concurrence_rank2_closed_form(&pure);
        assert!((r.lambda1 - 1.0).abs() < 1e-12 && r.lambda2.abs() < 1e-12 && (r.concurrence - 1.0).abs() < 1e-12);

        let r = concurrence_rank2_closed_form(&cat2(0.75));
        assert!((r.lambda1 - 0.75).abs() < 1e-12);
        assert!((r.lambda2 - 0.25).abs() < 1e-12);
        assert!((r.concurrence - 0.5).abs() < 1e-12);

        let r = concurrence_rank2_closed_form(&cat2(0.5));
        assert!(r.concurrence.abs() < 1e-15);
        assert!((r.lambda1 - r.lambda2).abs() < 1e-15);
    }

    #[test]
    fn amplitude_validation() {
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        assert_eq!(
            Rank2Amplitudes::new(vec![Rank2Term { weight: 0.5, a: h, b: h }]).unwrap_err(),
            Error::WeightSum(0.5)
        );
        assert_eq!(
            Rank2Amplitudes::new(vec![Rank2Term { weight: 1.0, a: ONE, b: ONE }]).unwrap_err(),
            Error::Unnormalized(0)
        );
        assert_eq!(Rank2Amplitudes::new(vec![]).unwrap_err(), Error::EmptyEnsemble);
    }

    #[test]
    fn sigma_means_of_cat_mixture() {
        for &omega in &[0.0, 0.125, 0.3, 0.875, 1.0] {
            let rho = cat2(omega).density_matrix();
            let (mx, my) = exact_sigma_means(&rho, &ps("XX"), &ps("YX")).unwrap();
            assert!((mx - (2.0 * omega - 1.0)).abs() < 1e-12);
            assert!(my.abs() < 1e-12);
        }
        let mixed = DensityMatrix::new(2, (0..16).map(|k| if k % 5 == 0 { C64::new(0.25, 0.0) } else { ZERO }).collect())
            .unwrap();
        assert_eq!(exact_sigma_means(&mixed, &ps("XX"), &ps("YX")).unwrap(), (0.0, 0.0));
        assert!(exact_sigma_means(&mixed, &ps("XXX"), &ps("YX")).is_err());
    }

    #[test]
    fn density_matrix_validation() {
        let bad_trace = (0..16).map(|k| if k == 0 { C64::new(0.5, 0.0) } else { ZERO }).collect();
        assert_eq!(DensityMatrix::new(2, bad_trace).unwrap_err(), Error::InvalidDensityMatrix("unit trace"));
        let mut non_herm = vec![ZERO; 4];
        non_herm[0] = ONE;
        non_herm[1] = C64::new(0.1, 0.0);
        assert_eq!(DensityMatrix::new(1, non_herm).unwrap_err(), Error::InvalidDensityMatrix("Hermitian"));
        let negative = vec![C64::new(1.5, 0.0), ZERO, ZERO, C64::new(-0.5, 0.0)];
        assert_eq!(
            DensityMatrix::new(1, negative).unwrap_err(),
            Error::InvalidDensityMatrix("positive semidefinite")
        );
    }

    #[test]
    fn mixture_weights_must_sum_to_one() {
        let z = StateVector::zero(2).unwrap();
        assert_eq!(DensityMatrix::mixture(2, [(0.4, &z)]).unwrap_err(), Error::WeightSum(0.4));
    }

    #[test]
    fn oracle_suite_agrees() {
        let s = oracle_suite(200, 1).unwrap();
        assert!(s.max_discrepancy <= 1e-9, "{s:?}");
    }

    #[test]
    fn oracle_suite_catches_a_dropped_square_root() {
        fn broken(x: f64, y: f64) -> f64 {
            (x * x + y * y).min(1.0)
        }
        let s = oracle_suite_with(50, 1, broken).unwrap();
        assert!(s.max_discrepancy > 1e-3);
    }

    #[test]
    fn xy_swap_gives_same_measures() {
        for trial in 0..200 {
            let rho = random_rank2_amplitudes(4, trial).density_matrix();
            let (mx, my) = exact_sigma_means(&rho, &ps("XX"), &ps("YX")).unwrap();
            let (mx2, my2) = exact_sigma_means(&rho, &ps("XX"), &ps("XY")).unwrap();
            assert!((geometric_measure(mx, my) - geometric_measure(mx2, my2)).abs() < 1e-9);
            assert!((concurrence_from_correlations(mx, my) - concurrence_from_correlations(mx2, my2)).abs() < 1e-9);
        }
    }

    proptest::proptest! {
        #[test]
        fn measures_stay_in_range(x in -2.0..2.0f64, y in -2.0..2.0f64) {
            let e = geometric_measure(x, y);
            proptest::prop_assert!((0.0..=0.5).contains(&e));
            let c = concurrence_from_correlations(x, y);
            proptest::prop_assert!((0.0..=1.0).contains(&c));
        }

        #[test]
        fn product_states_have_zero_concurrence(
            t1 in 0.0..3.2f64, p1 in 0.0..6.3f64, t2 in 0.0..3.2f64, p2 in 0.0..6.3f64
        ) {
            let mut c = Circuit::new(2).unwrap();
            c.push(Gate::u3(0, t1, p1, 0.0)).unwrap().push(Gate::u3(1, t2, p2, 0.0)).unwrap();
            let rho = DensityMatrix::pure(&run_statevector(&c));
            proptest::prop_assert!(wootters_concurrence(&rho).unwrap() <= 1e-7);
        }

        #[test]
        fn maximally_entangled_states_have_unit_concurrence(
            t in 0.0..3.2f64, p in 0.0..6.3f64, l in 0.0..6.3f64
        ) {
            // local unitaries on a Bell pair
            let mut c = Circuit::new(2).unwrap();
            c.extend([Gate::h(0), Gate::cx(0, 1), Gate::u3(0, t, p, l), Gate::u3(1, l, t, p)]).unwrap();
            let rho = DensityMatrix::pure(&run_statevector(&c));
            proptest::prop_assert!((wootters_concurrence(&rho).unwrap() - 1.0).abs() <= 1e-9);
        }
    }
}
