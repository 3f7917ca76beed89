//! Shared plumbing: error classification, file loading, model assembly.

use std::fmt;
use std::path::Path;

use noisim::{Architecture, CalibrationData, Circuit, Distribution, NoiseModel, Variant};

/// Errors split by exit code: usage/IO problems exit 2, simulation and
/// validation failures exit 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Run(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Run(_) => 1,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Run(m) => f.write_str(m),
        }
    }
}

impl From<noisim::Error> for CliError {
    fn from(e: noisim::Error) -> Self {
        CliError::Run(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .map_err(|e| CliError::usage(format!("{}: {e}", parent.display())))?;
        }
    }
    std::fs::write(path, contents).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

pub fn load_calibration(path: &Path) -> CliResult<CalibrationData> {
    let text = read_file(path)?;
    Ok(CalibrationData::from_json_str(&text)?)
}

pub fn load_circuit(path: &Path) -> CliResult<Circuit> {
    let text = read_file(path)?;
    Ok(Circuit::parse_text(&text)?)
}

/// Parse a distribution CSV (`outcome,probability` rows, optional header).
pub fn load_distribution(path: &Path) -> CliResult<Distribution> {
    let text = read_file(path)?;
    let mut entries: Vec<(usize, f64)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let a = parts.next().unwrap_or("").trim();
        let b = parts.next().unwrap_or("").trim();
        if idx == 0 && a.parse::<usize>().is_err() {
            continue; // header row
        }
        let outcome: usize = a.parse().map_err(|_| {
            CliError::Run(format!(
                "{}: line {}: bad outcome '{a}'",
                path.display(),
                idx + 1
            ))
        })?;
        let prob: f64 = b.parse().map_err(|_| {
            CliError::Run(format!(
                "{}: line {}: bad probability '{b}'",
                path.display(),
                idx + 1
            ))
        })?;
        entries.push((outcome, prob));
    }
    if entries.is_empty() {
        return Err(CliError::Run(format!(
            "{}: no distribution rows",
            path.display()
        )));
    }
    let len = entries.iter().map(|&(o, _)| o + 1).max().unwrap_or(1);
    let mut probs = vec![0.0; len];
    for (o, p) in entries {
        probs[o] = p;
    }
    Ok(Distribution::new(probs)?)
}

/// Assemble a noise model for a circuit: architecture from the calibration
/// coupling, or all-to-all when requested. Without a calibration only the
/// ideal variant is possible.
pub fn build_model(
    circuit: &Circuit,
    calib: Option<&CalibrationData>,
    variant: Variant,
    assume_full: bool,
    control_trc: noisim::ControlTrc,
) -> CliResult<NoiseModel> {
    let model = match (calib, variant) {
        (None, Variant::Ideal) => NoiseModel::ideal(circuit.n_qubits()),
        (None, other) => {
            return Err(CliError::usage(format!(
                "--calib is required for the {other} model"
            )));
        }
        (Some(cal), variant) => {
            if assume_full {
                let n = circuit.n_qubits().max(cal.n_qubits());
                NoiseModel::new_relaxed(cal.clone(), Architecture::full(n), variant)?
            } else {
                NoiseModel::new(cal.clone(), cal.architecture()?, variant)?
            }
        }
    };
    Ok(model.with_control_trc(control_trc))
}

/// Architecture used for parameter counting, mirroring `build_model`.
pub fn build_architecture(
    circuit: &Circuit,
    calib: Option<&CalibrationData>,
    assume_full: bool,
) -> CliResult<Architecture> {
    if assume_full {
        let n = calib
            .map(|c| c.n_qubits())
            .unwrap_or(0)
            .max(circuit.n_qubits());
        return Ok(Architecture::full(n));
    }
    match calib {
        Some(cal) => Ok(cal.architecture()?),
        None => Ok(Architecture::full(circuit.n_qubits())),
    }
}

pub fn walk_spec(states: usize, steps: usize, start: usize) -> CliResult<noisim::WalkSpec> {
    noisim::WalkSpec::new(states, steps, start).map_err(|e| CliError::usage(e.to_string()))
}
