use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rank2::calibration::Calibration;
use rank2::circuit_file::load_circuit;
use rank2::config::{load_config, parse_family, parse_sigma_pair, CustomPair, LoadedConfig};
use rank2::coupling::{load_coupling, melbourne_map, MELBOURNE_MAP_NAME};
use rank2::parallel::run_experiment_par;
use rank2::report::{exact_to_csv, to_csv, to_json};
use rank2::rank2_core::entanglement::oracle_suite;
use rank2::rank2_core::protocol::{exact_curve, omega_grid};
use rank2::rank2_core::{validate_against_coupling, ExperimentConfig, StateFamily};
use rank2::{Error, Result};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_CONFIG: u8 = 3;

/// Entanglement of rank-2 mixed states from simulated Pauli measurements.
#[derive(Debug, Parser)]
#[command(name = "rank2", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample an ω sweep and report estimated vs exact entanglement.
    Sweep(SweepArgs),
    /// Exact entanglement over an ω grid, without sampling.
    ExactCurve(StateArgs),
    /// Cross-check the concurrence formulas on random rank-2 states.
    OracleCheck {
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Check a circuit's CX gates against a coupling map.
    Validate {
        /// Circuit JSON file.
        circuit: PathBuf,
        /// Coupling-map JSON file; defaults to the bundled ibmq-melbourne map.
        #[arg(long)]
        coupling: Option<PathBuf>,
    },
    /// Summarize a calibration file (default: the bundled one).
    Info {
        #[arg(long)]
        calibration: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct StateArgs {
    /// JSON experiment config; other flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// cat, rho1, rho2 or custom.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    qubits: Option<usize>,
    /// Qubit whose entanglement with the rest is measured.
    #[arg(long)]
    target: Option<usize>,
    #[arg(long, conflicts_with = "omega_list")]
    omega_step: Option<f64>,
    /// Comma-separated ω values.
    #[arg(long, value_delimiter = ',')]
    omega_list: Option<Vec<f64>>,
    /// Override Σx (requires --sigma-y).
    #[arg(long, requires = "sigma_y")]
    sigma_x: Option<String>,
    #[arg(long, requires = "sigma_x")]
    sigma_y: Option<String>,
    /// Circuit file for the ω-weighted member of a custom family.
    #[arg(long, requires = "custom_second")]
    custom_first: Option<PathBuf>,
    #[arg(long, requires = "custom_first")]
    custom_second: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    state: StateArgs,
    #[arg(long)]
    shots: Option<u64>,
    #[arg(long, env = "RANK2_SEED")]
    seed: Option<u64>,
    /// Calibration JSON; `ibmq-melbourne-cal.json` resolves to the bundled file.
    #[arg(long)]
    noise: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

impl StateArgs {
    fn build(&self) -> Result<LoadedConfig> {
        let mut loaded = match &self.config {
            Some(path) => load_config(path)?,
            None => {
                let name = self.family.as_deref().ok_or_else(|| Error::Invalid("--family or --config is required".into()))?;
                let custom = self.custom_pair()?;
                let family = parse_family(name, custom.as_ref())?;
                let n = match (&family, self.qubits) {
                    (_, Some(n)) => n,
                    (StateFamily::Cat, None) => 2,
                    (StateFamily::Custom { first, .. }, None) => first.num_qubits(),
                    _ => 2,
                };
                LoadedConfig { experiment: ExperimentConfig::new(family, n), calibration: None }
            }
        };
        let cfg = &mut loaded.experiment;
        if self.config.is_some() {
            if let Some(name) = &self.family {
                cfg.family = parse_family(name, self.custom_pair()?.as_ref())?;
            }
            if let Some(n) = self.qubits {
                cfg.num_qubits = n;
            }
        }
        if let Some(t) = self.target {
            cfg.target_qubit = t;
        }
        if let Some(step) = self.omega_step {
            cfg.omega_grid = omega_grid(step)?;
        }
        if let Some(list) = &self.omega_list {
            cfg.omega_grid = list.clone();
        }
        if let Some(pair) = parse_sigma_pair(self.sigma_x.as_deref(), self.sigma_y.as_deref())? {
            cfg.sigma_strings = Some(pair);
        }
        Ok(loaded)
    }

    fn custom_pair(&self) -> Result<Option<CustomPair>> {
        match (&self.custom_first, &self.custom_second) {
            (Some(a), Some(b)) => Ok(Some(CustomPair {
                first: (&load_circuit(a)?).into(),
                second: (&load_circuit(b)?).into(),
            })),
            _ => Ok(None),
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| Error::Io { path: path.into(), source }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| Error::Io { path: "<stdout>".into(), source })
        }
    }
}

fn sweep(args: &SweepArgs) -> Result<()> {
    let mut loaded = args.state.build()?;
    let cfg = &mut loaded.experiment;
    if let Some(shots) = args.shots {
        cfg.shots = shots;
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(path) = &args.noise {
        let cal = Calibration::load_or_bundled(path)?;
        cfg.noise = Some(cal.noise_model()?);
        loaded.calibration = Some(cal);
    }
    let report = run_experiment_par(&loaded.experiment)?;
    let text = match args.format {
        Format::Csv => to_csv(&report),
        Format::Json => to_json(&report, loaded.calibration.as_ref()),
    };
    emit(args.state.out.as_deref(), &text)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Sweep(args) => sweep(&args).map(|_| true),
        Command::ExactCurve(args) => {
            let cfg = args.build()?.experiment;
            emit(args.out.as_deref(), &exact_to_csv(&exact_curve(&cfg)?)).map(|_| true)
        }
        Command::OracleCheck { trials, seed, tolerance } => {
            let s = oracle_suite(trials, seed)?;
            let ok = s.max_discrepancy <= tolerance;
            println!(
                "trials={} max_discrepancy={:e} worst_trial={} tolerance={:e} {}",
                s.trials,
                s.max_discrepancy,
                s.worst_trial,
                tolerance,
                if ok { "PASS" } else { "FAIL" }
            );
            Ok(ok)
        }
        Command::Validate { circuit, coupling } => {
            let c = load_circuit(&circuit)?;
            let map = match &coupling {
                Some(p) => load_coupling(p)?,
                None => melbourne_map(),
            };
            let violations = validate_against_coupling(&c, &map)?;
            for v in &violations {
                println!("gate {}: cx {} -> {} is not a coupling-map edge", v.gate_index, v.control, v.target);
            }
            if violations.is_empty() {
                let name = coupling.as_deref().map_or(MELBOURNE_MAP_NAME.into(), |p| p.display().to_string());
                eprintln!("{}: all {} gates respect {name}", circuit.display(), c.len());
            }
            Ok(violations.is_empty())
        }
        Command::Info { calibration } => {
            let cal = match &calibration {
                Some(p) => Calibration::load_or_bundled(p)?,
                None => Calibration::melbourne(),
            };
            cal.noise_model()?;
            println!("qubit,t1_us,t2_us,gate_error,readout_error");
            for q in &cal.qubits {
                println!("{},{},{},{},{}", q.id, q.t1_us, q.t2_us, q.gate_error, q.readout_error);
            }
            println!();
            println!("pair,cx_error");
            for c in &cal.cx_errors {
                println!("{}-{},{}", c.pair[0], c.pair[1], c.error);
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_CHECK_FAILED),
        Err(e) => {
            eprintln!("rank2: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}
