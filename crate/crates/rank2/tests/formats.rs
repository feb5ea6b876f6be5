use rank2::calibration::Calibration;
use rank2::circuit_file::load_circuit;
use rank2::config::load_config;
use rank2::coupling::{load_coupling, melbourne_map};
use rank2::rank2_core::validate_against_coupling;
use rank2::report::{to_csv, to_json};
use rank2::rank2_core::run_experiment;
use rank2::Error;

#[test]
fn config_resolves_noise_relative_to_its_directory() {
    let dir = tempfile::tempdir().unwrap();
    let cal = Calibration::melbourne();
    let mut tweaked = cal.clone();
    tweaked.qubits[0].readout_error = 0.5;
    std::fs::write(dir.path().join("cal.json"), serde_json::to_string(&tweaked).unwrap()).unwrap();
    std::fs::write(
        dir.path().join("cfg.json"),
        r#"{"family": "rho1", "noise": "cal.json", "omega_step": 0.5, "shots": 300}"#,
    )
    .unwrap();
    let loaded = load_config(&dir.path().join("cfg.json")).unwrap();
    assert_eq!(loaded.experiment.noise.as_ref().unwrap().readout_flip(0), 0.5);
    assert_eq!(loaded.experiment.omega_grid, vec![0.0, 0.5, 1.0]);

    let report = run_experiment(&loaded.experiment).unwrap();
    let v: serde_json::Value = serde_json::from_str(&to_json(&report, loaded.calibration.as_ref())).unwrap();
    assert_eq!(v["noise"]["readout"], "symmetric");
    assert_eq!(v["noise"]["coherence"][0]["t2_us"], 22.6);
    assert_eq!(to_csv(&report).lines().count(), 4);
}

#[test]
fn malformed_files_report_their_path() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("broken.json");
    std::fs::write(&p, "{not json").unwrap();
    for err in [load_circuit(&p).unwrap_err(), load_coupling(&p).unwrap_err(), load_config(&p).unwrap_err()] {
        assert!(matches!(err, Error::Json { .. }));
        assert!(err.to_string().contains("broken.json"), "{err}");
    }
}

#[test]
fn circuit_file_validates_against_coupling_file() {
    let dir = tempfile::tempdir().unwrap();
    let map_path = dir.path().join("line.json");
    std::fs::write(&map_path, r#"{"num_qubits": 3, "edges": [[0, 1], [1, 2]]}"#).unwrap();
    let circ_path = dir.path().join("c.json");
    std::fs::write(
        &circ_path,
        r#"{"num_qubits": 3, "gates": [{"gate": "cx", "qubits": [2, 1]}, {"gate": "cx", "qubits": [2, 0]}]}"#,
    )
    .unwrap();
    let c = load_circuit(&circ_path).unwrap();
    let v = validate_against_coupling(&c, &load_coupling(&map_path).unwrap()).unwrap();
    assert_eq!(v.len(), 1);
    assert_eq!((v[0].gate_index, v[0].control, v[0].target), (1, 2, 0));
    // 0-2 is not a device edge either
    assert_eq!(validate_against_coupling(&c, &melbourne_map()).unwrap(), v);
}
