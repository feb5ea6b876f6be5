//! Sweep runner: weighted ensembles of preparation circuits, shot
//! allocation, the built-in state families, and per-ω report rows.

use alloc::vec;
use alloc::vec::Vec;

use crate::circuit::{Circuit, Gate};
use crate::entanglement::{
    concurrence_from_correlations, ensemble_density_matrix, exact_sigma_means, geometric_measure,
    wootters_concurrence,
};
use crate::error::{Error, Result};
use crate::math;
use crate::observables::{pauli_expectation_sampled, sigma_operators, CorrelationEstimate, PauliString};
use crate::rng::derive_seed;
use crate::simulator::NoiseModel;

pub const DEFAULT_SHOTS: u64 = 8192;
pub const DEFAULT_OMEGA_STEP: f64 = 0.125;

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleMember {
    pub weight: f64,
    pub circuit: Circuit,
}

/// `ρ = Σ ω_α |ψ_α><ψ_α|`, each `|ψ_α>` given by its preparation circuit.
#[derive(Debug, Clone, PartialEq)]
pub struct Rank2Ensemble {
    num_qubits: usize,
    members: Vec<EnsembleMember>,
}

impl Rank2Ensemble {
    pub fn new(members: Vec<EnsembleMember>) -> Result<Self> {
        let first = members.first().ok_or(Error::EmptyEnsemble)?;
        let num_qubits = first.circuit.num_qubits();
        let mut total = 0.0;
        for m in &members {
            if m.circuit.num_qubits() != num_qubits {
                return Err(Error::DimensionMismatch { expected: num_qubits, found: m.circuit.num_qubits() });
            }
            if !(0.0..=1.0).contains(&m.weight) {
                return Err(Error::InvalidProbability { what: "ensemble weight", value: m.weight });
            }
            total += m.weight;
        }
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::WeightSum(total));
        }
        Ok(Self { num_qubits, members })
    }

    /// Two members with weights `ω` and `1 − ω`.
    pub fn pair(omega: f64, first: Circuit, second: Circuit) -> Result<Self> {
        check_omega(omega)?;
        Self::new(vec![
            EnsembleMember { weight: omega, circuit: first },
            EnsembleMember { weight: 1.0 - omega, circuit: second },
        ])
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn members(&self) -> &[EnsembleMember] {
        &self.members
    }

    pub fn weights(&self) -> Vec<f64> {
        self.members.iter().map(|m| m.weight).collect()
    }
}

fn check_omega(omega: f64) -> Result<()> {
    if (0.0..=1.0).contains(&omega) {
        Ok(())
    } else {
        Err(Error::InvalidProbability { what: "omega", value: omega })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShotAllocation {
    pub total: u64,
    pub per_member: Vec<u64>,
}

impl ShotAllocation {
    /// Realized weights `allocated / total`.
    pub fn fractions(&self) -> Vec<f64> {
        self.per_member.iter().map(|&n| n as f64 / self.total as f64).collect()
    }
}

/// Rounds `total · ω_α` for every member but the last, which takes the
/// remainder.
pub fn allocate_shots(total: u64, weights: &[f64]) -> Result<ShotAllocation> {
    if total == 0 {
        return Err(Error::ZeroShots);
    }
    if weights.is_empty() {
        return Err(Error::EmptyEnsemble);
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > 1e-9 || weights.iter().any(|w| !(0.0..=1.0).contains(w)) {
        return Err(Error::WeightSum(sum));
    }
    let last = weights.len() - 1;
    let mut per_member: Vec<u64> = weights[..last].iter().map(|&w| math::round(total as f64 * w) as u64).collect();
    // With many members the rounded prefix can overshoot; trim the members
    // that rounded up the most until the remainder is non-negative.
    while per_member.iter().sum::<u64>() > total {
        let (k, _) = per_member
            .iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .map(|(k, &n)| (k, n as f64 - total as f64 * weights[k]))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("an overshooting prefix has a nonzero member");
        per_member[k] -= 1;
    }
    let used: u64 = per_member.iter().sum();
    per_member.push(total - used);
    Ok(ShotAllocation { total, per_member })
}

fn cnot_chain(c: &mut Circuit) -> Result<()> {
    for q in 0..c.num_qubits() - 1 {
        c.push(Gate::cx(q, q + 1))?;
    }
    Ok(())
}

/// Cat states `(|0...0> ± |1...1>)/√2`, the plus state first.
pub fn cat_circuits(num_qubits: usize) -> Result<(Circuit, Circuit)> {
    if num_qubits < 2 {
        return Err(Error::InvalidConfig("cat states need at least two qubits"));
    }
    let mut plus = Circuit::new(num_qubits)?;
    plus.push(Gate::h(0))?;
    cnot_chain(&mut plus)?;
    let mut minus = Circuit::new(num_qubits)?;
    minus.push(Gate::x(0))?.push(Gate::h(0))?;
    cnot_chain(&mut minus)?;
    Ok((plus.to_basis(), minus.to_basis()))
}

/// `ω|ψ+><ψ+| + (1 − ω)|ψ−><ψ−|` over N-qubit cat states.
pub fn build_cat_ensemble(num_qubits: usize, omega: f64) -> Result<Rank2Ensemble> {
    let (plus, minus) = cat_circuits(num_qubits)?;
    Rank2Ensemble::pair(omega, plus, minus)
}

fn bell_circuit() -> Result<Circuit> {
    let mut c = Circuit::new(2)?;
    c.push(Gate::h(0))?.push(Gate::cx(0, 1))?;
    Ok(c)
}

/// `ω|Φ+><Φ+| + (1 − ω)|00><00|`.
pub fn build_rho1_ensemble(omega: f64) -> Result<Rank2Ensemble> {
    Rank2Ensemble::pair(omega, bell_circuit()?.to_basis(), Circuit::new(2)?)
}

/// The Hadamard-basis image of ρ1, `ω|Φ+x><Φ+x| + (1 − ω)|++><++|`, with
/// the Pauli strings that act as Σx, Σy, Σz on its support.
pub fn build_rho2_ensemble(omega: f64) -> Result<(Rank2Ensemble, (PauliString, PauliString, PauliString))> {
    let mut phi_x = bell_circuit()?;
    phi_x.push(Gate::h(0))?.push(Gate::h(1))?;
    let mut plus_plus = Circuit::new(2)?;
    plus_plus.push(Gate::h(0))?.push(Gate::h(1))?;
    let ensemble = Rank2Ensemble::pair(omega, phi_x.to_basis(), plus_plus.to_basis())?;
    let sigmas = ("ZZ".parse()?, "YZ".parse()?, "XI".parse()?);
    Ok((ensemble, sigmas))
}

#[derive(Debug, Clone, PartialEq)]
pub enum StateFamily {
    Cat,
    Rho1,
    Rho2,
    /// Any two-member mixture; `first` carries weight ω.
    Custom { first: Circuit, second: Circuit },
}

impl StateFamily {
    pub fn name(&self) -> &'static str {
        match self {
            StateFamily::Cat => "cat",
            StateFamily::Rho1 => "rho1",
            StateFamily::Rho2 => "rho2",
            StateFamily::Custom { .. } => "custom",
        }
    }
}

/// `0, step, 2·step, ...` up to and including 1 when `1/step` is whole.
pub fn omega_grid(step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step <= 1.0) {
        return Err(Error::InvalidConfig("omega step must lie in (0, 1]"));
    }
    let count = libm::floor(1.0 / step + 1e-9) as usize;
    Ok((0..=count).map(|k| (k as f64 * step).min(1.0)).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub family: StateFamily,
    pub num_qubits: usize,
    pub target_qubit: usize,
    pub omega_grid: Vec<f64>,
    pub shots: u64,
    pub seed: u64,
    pub noise: Option<NoiseModel>,
    /// Replaces the family's (Σx, Σy) pair.
    pub sigma_strings: Option<(PauliString, PauliString)>,
}

impl ExperimentConfig {
    /// Defaults: target qubit 0, ω step 0.125, 8192 shots, seed 0, no noise.
    pub fn new(family: StateFamily, num_qubits: usize) -> Self {
        Self {
            family,
            num_qubits,
            target_qubit: 0,
            omega_grid: omega_grid(DEFAULT_OMEGA_STEP).expect("default step is valid"),
            shots: DEFAULT_SHOTS,
            seed: 0,
            noise: None,
            sigma_strings: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.shots == 0 {
            return Err(Error::ZeroShots);
        }
        if self.omega_grid.is_empty() {
            return Err(Error::InvalidConfig("empty omega grid"));
        }
        for &w in &self.omega_grid {
            check_omega(w)?;
        }
        match &self.family {
            StateFamily::Cat if self.num_qubits < 2 => {
                return Err(Error::InvalidConfig("cat states need at least two qubits"))
            }
            StateFamily::Rho1 | StateFamily::Rho2 if self.num_qubits != 2 => {
                return Err(Error::InvalidConfig("rho1 and rho2 are two-qubit families"))
            }
            StateFamily::Custom { first, second } => {
                for c in [first, second] {
                    if c.num_qubits() != self.num_qubits {
                        return Err(Error::DimensionMismatch { expected: self.num_qubits, found: c.num_qubits() });
                    }
                }
            }
            _ => {}
        }
        if self.target_qubit >= self.num_qubits {
            return Err(Error::QubitOutOfRange { index: self.target_qubit, num_qubits: self.num_qubits });
        }
        if let Some((sx, sy)) = &self.sigma_strings {
            for p in [sx, sy] {
                if p.num_qubits() != self.num_qubits {
                    return Err(Error::DimensionMismatch { expected: self.num_qubits, found: p.num_qubits() });
                }
            }
        }
        if let Some(noise) = &self.noise {
            if noise.num_qubits() < self.num_qubits {
                return Err(Error::NoiseModelTooSmall { model: noise.num_qubits(), circuit: self.num_qubits });
            }
        }
        Ok(())
    }

    /// The ensemble at `omega` and the (Σx, Σy) strings to measure.
    pub fn prepare(&self, omega: f64) -> Result<(Rank2Ensemble, PauliString, PauliString)> {
        let (ensemble, defaults) = match &self.family {
            StateFamily::Cat => (build_cat_ensemble(self.num_qubits, omega)?, None),
            StateFamily::Rho1 => (build_rho1_ensemble(omega)?, None),
            StateFamily::Rho2 => {
                let (e, (sx, sy, _)) = build_rho2_ensemble(omega)?;
                (e, Some((sx, sy)))
            }
            StateFamily::Custom { first, second } => {
                (Rank2Ensemble::pair(omega, first.to_basis(), second.to_basis())?, None)
            }
        };
        let (sx, sy) = match (&self.sigma_strings, defaults) {
            (Some(over), _) => over.clone(),
            (None, Some(d)) => d,
            (None, None) => {
                let (sx, sy, _) = sigma_operators(self.num_qubits, self.target_qubit)?;
                (sx, sy)
            }
        };
        Ok((ensemble, sx, sy))
    }
}

/// One ω point of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub omega: f64,
    pub mean_x: f64,
    pub mean_y: f64,
    pub e_est: f64,
    pub c_est: Option<f64>,
    pub e_exact: f64,
    pub c_exact: Option<f64>,
    /// Relative deviation, or absolute when the exact value is zero.
    pub delta_e: f64,
    pub delta_c: Option<f64>,
    pub stderr_x: f64,
    pub stderr_y: f64,
    pub shots_per_member: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntanglementReport {
    pub family: &'static str,
    pub num_qubits: usize,
    pub sigma_x: PauliString,
    pub sigma_y: PauliString,
    pub shots: u64,
    pub seed: u64,
    pub noisy: bool,
    pub rows: Vec<ReportRow>,
}

/// Below this an exact value counts as zero for the deviation metric.
const ZERO_EXACT: f64 = 1e-12;

pub fn deviation(estimate: f64, exact: f64) -> f64 {
    let abs = (estimate - exact).abs();
    if exact.abs() > ZERO_EXACT {
        abs / exact.abs()
    } else {
        abs
    }
}

/// `Σ ω̂_α v_α` and its propagated standard error, with `ω̂` the realized
/// shot fractions.
pub fn combine_member_means(fractions: &[f64], estimates: &[(f64, f64)]) -> (f64, f64) {
    let mean = fractions.iter().zip(estimates).map(|(w, (v, _))| w * v).sum();
    let var: f64 = fractions.iter().zip(estimates).map(|(w, (_, se))| w * w * se * se).sum();
    (mean, math::sqrt(var))
}

/// Seed of the sampling run for (ω index, member, setting).
pub fn setting_seed(seed: u64, omega_index: usize, member: usize, setting: usize) -> u64 {
    derive_seed(seed, &[omega_index as u64, member as u64, setting as u64])
}

/// Runs a single grid point of the sweep.
pub fn run_point(cfg: &ExperimentConfig, omega_index: usize) -> Result<ReportRow> {
    let omega = *cfg.omega_grid.get(omega_index).ok_or(Error::InvalidConfig("omega index out of range"))?;
    let (ensemble, sx, sy) = cfg.prepare(omega)?;
    let alloc = allocate_shots(cfg.shots, &ensemble.weights())?;
    let fractions = alloc.fractions();

    let mut per_setting: [Vec<(f64, f64)>; 2] = [Vec::new(), Vec::new()];
    for (member, (m, &n)) in ensemble.members().iter().zip(&alloc.per_member).enumerate() {
        for (setting, p) in [&sx, &sy].into_iter().enumerate() {
            let est = if n == 0 {
                (0.0, 0.0)
            } else {
                let seed = setting_seed(cfg.seed, omega_index, member, setting);
                let CorrelationEstimate { value, std_error, .. } =
                    pauli_expectation_sampled(&m.circuit, p, n, seed, cfg.noise.as_ref())?;
                (value, std_error)
            };
            per_setting[setting].push(est);
        }
    }
    let (mean_x, stderr_x) = combine_member_means(&fractions, &per_setting[0]);
    let (mean_y, stderr_y) = combine_member_means(&fractions, &per_setting[1]);

    let two_qubit = cfg.num_qubits == 2;
    let e_est = geometric_measure(mean_x, mean_y);
    let c_est = two_qubit.then(|| concurrence_from_correlations(mean_x, mean_y));

    let rho = ensemble_density_matrix(&ensemble)?;
    let (exact_x, exact_y) = exact_sigma_means(&rho, &sx, &sy)?;
    let e_exact = geometric_measure(exact_x, exact_y);
    let c_exact = if two_qubit { Some(wootters_concurrence(&rho)?) } else { None };

    Ok(ReportRow {
        omega,
        mean_x,
        mean_y,
        e_est,
        c_est,
        e_exact,
        c_exact,
        delta_e: deviation(e_est, e_exact),
        delta_c: c_est.zip(c_exact).map(|(e, x)| deviation(e, x)),
        stderr_x,
        stderr_y,
        shots_per_member: alloc.per_member,
    })
}

/// Report shell without rows, for callers that fill rows themselves.
pub fn report_header(cfg: &ExperimentConfig) -> Result<EntanglementReport> {
    cfg.validate()?;
    let (_, sigma_x, sigma_y) = cfg.prepare(cfg.omega_grid[0])?;
    Ok(EntanglementReport {
        family: cfg.family.name(),
        num_qubits: cfg.num_qubits,
        sigma_x,
        sigma_y,
        shots: cfg.shots,
        seed: cfg.seed,
        noisy: cfg.noise.is_some(),
        rows: Vec::new(),
    })
}

/// Runs the sweep serially over the ω grid.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<EntanglementReport> {
    let mut report = report_header(cfg)?;
    report.rows = (0..cfg.omega_grid.len()).map(|k| run_point(cfg, k)).collect::<Result<_>>()?;
    Ok(report)
}

/// Sampling-free row: exact E and (for two qubits) Wootters C.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactRow {
    pub omega: f64,
    pub e_exact: f64,
    pub c_exact: Option<f64>,
}

pub fn exact_curve(cfg: &ExperimentConfig) -> Result<Vec<ExactRow>> {
    cfg.validate()?;
    cfg.omega_grid
        .iter()
        .map(|&omega| {
            let (ensemble, sx, sy) = cfg.prepare(omega)?;
            let rho = ensemble_density_matrix(&ensemble)?;
            let (mx, my) = exact_sigma_means(&rho, &sx, &sy)?;
            let c_exact = if cfg.num_qubits == 2 { Some(wootters_concurrence(&rho)?) } else { None };
            Ok(ExactRow { omega, e_exact: geometric_measure(mx, my), c_exact })
        })
        .collect()
}
