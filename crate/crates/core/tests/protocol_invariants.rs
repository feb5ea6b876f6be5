use proptest::prelude::*;
use rank2_core::entanglement::pauli_mean;
use rank2_core::protocol::{combine_member_means, omega_grid};
use rank2_core::simulator::{expectation_exact, run_statevector};
use rank2_core::{
    allocate_shots, build_cat_ensemble, build_rho1_ensemble, build_rho2_ensemble, ensemble_density_matrix,
    run_experiment, sigma_operators, ExperimentConfig, PauliString, Rank2Ensemble, StateFamily,
};

fn weighted_exact(ensemble: &Rank2Ensemble, weights: &[f64], p: &PauliString) -> f64 {
    let per_member: Vec<(f64, f64)> = ensemble
        .members()
        .iter()
        .map(|m| (expectation_exact(&run_statevector(&m.circuit), p).unwrap(), 0.0))
        .collect();
    combine_member_means(weights, &per_member).0
}

fn ensembles(omega: f64) -> Vec<(Rank2Ensemble, PauliString, PauliString)> {
    let (sx2, sy2, _) = sigma_operators(2, 0).unwrap();
    let (sx4, sy4, _) = sigma_operators(4, 2).unwrap();
    let (rho2, (zz, yz, _)) = build_rho2_ensemble(omega).unwrap();
    vec![
        (build_cat_ensemble(2, omega).unwrap(), sx2.clone(), sy2.clone()),
        (build_cat_ensemble(4, omega).unwrap(), sx4, sy4),
        (build_rho1_ensemble(omega).unwrap(), sx2, sy2),
        (rho2, zz, yz),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weighted_member_means_equal_trace(omega in 0.0f64..=1.0) {
        for (ensemble, sx, sy) in ensembles(omega) {
            let rho = ensemble_density_matrix(&ensemble).unwrap();
            for p in [&sx, &sy] {
                let lhs = weighted_exact(&ensemble, &ensemble.weights(), p);
                prop_assert!((lhs - pauli_mean(&rho, p).unwrap()).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn shots_are_conserved(total in 1u64..100_000, omega in 0.0f64..=1.0) {
        let alloc = allocate_shots(total, &[omega, 1.0 - omega]).unwrap();
        prop_assert_eq!(alloc.per_member.iter().sum::<u64>(), total);
        let f = alloc.fractions();
        prop_assert!((f.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn sweep_rows_conserve_shots_and_repeat_exactly() {
    let mut cfg = ExperimentConfig::new(StateFamily::Cat, 3);
    cfg.shots = 777;
    cfg.seed = 99;
    cfg.omega_grid = omega_grid(0.25).unwrap();
    let a = run_experiment(&cfg).unwrap();
    assert_eq!(a, run_experiment(&cfg).unwrap());
    assert_eq!(a.rows.len(), 5);
    for row in &a.rows {
        assert_eq!(row.shots_per_member.iter().sum::<u64>(), 777);
        assert!(row.c_est.is_none() && row.c_exact.is_none());
    }
    cfg.seed = 100;
    assert_ne!(a.rows, run_experiment(&cfg).unwrap().rows);
}

#[test]
fn sampled_means_approach_exact_trace() {
    let mut cfg = ExperimentConfig::new(StateFamily::Rho2, 2);
    cfg.shots = 40_000;
    cfg.seed = 3;
    cfg.omega_grid = vec![0.3, 0.8];
    let report = run_experiment(&cfg).unwrap();
    for row in &report.rows {
        let (ensemble, sx, sy) = cfg.prepare(row.omega).unwrap();
        let rho = ensemble_density_matrix(&ensemble).unwrap();
        let (ex, ey) = (pauli_mean(&rho, &sx).unwrap(), pauli_mean(&rho, &sy).unwrap());
        assert!((row.mean_x - ex).abs() < 5.0 * row.stderr_x.max(1e-3), "{row:?}");
        assert!((row.mean_y - ey).abs() < 5.0 * row.stderr_y.max(1e-3), "{row:?}");
    }
}
