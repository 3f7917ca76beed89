//! Calibration data: per-qubit times and SPAM rates, per-gate error rates
//! and durations, device coupling and temperature.
//!
//! The JSON schema uses the exact field names `temperature_K`, `qubits`
//! (`id`, `T1_us`, `T2_us`, `freq_Hz`, `readout_error`, `prep_error`),
//! `gates` (`kind`, `qubits`, `error_rate`, `duration_ns`) and `coupling`
//! (`[control, target]` pairs).

use serde::{Deserialize, Serialize};

use crate::channels::ThermalParams;
use crate::circuit::{Architecture, GateKind};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QubitCalibration {
    pub id: usize,
    #[serde(rename = "T1_us")]
    pub t1_us: f64,
    #[serde(rename = "T2_us")]
    pub t2_us: f64,
    #[serde(rename = "freq_Hz")]
    pub freq_hz: f64,
    pub readout_error: f64,
    pub prep_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateCalibration {
    pub kind: String,
    pub qubits: Vec<usize>,
    pub error_rate: f64,
    pub duration_ns: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationData {
    #[serde(rename = "temperature_K")]
    pub temperature_k: f64,
    pub qubits: Vec<QubitCalibration>,
    pub gates: Vec<GateCalibration>,
    pub coupling: Vec<[usize; 2]>,
}

/// Representative defaults for the generated template (average single-qubit,
/// two-qubit and readout error rates and T1/T2 of a 15-qubit-era
/// superconducting device).
pub mod defaults {
    pub const SINGLE_QUBIT_ERROR: f64 = 11.68e-4;
    pub const TWO_QUBIT_ERROR: f64 = 3.17e-2;
    pub const READOUT_ERROR: f64 = 7.61e-2;
    pub const T1_US: f64 = 56.15;
    pub const T2_US: f64 = 56.01;
    pub const FREQ_HZ: f64 = 4.9801e9;
    pub const TEMPERATURE_K: f64 = 0.015;
    pub const SINGLE_QUBIT_DURATION_NS: f64 = 50.0;
    pub const CNOT_DURATION_NS: f64 = 300.0;
}

impl CalibrationData {
    /// Parse and validate a calibration document.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let cal: CalibrationData =
            serde_json::from_str(text).map_err(|e| Error::Calibration(e.to_string()))?;
        cal.validate()?;
        Ok(cal)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("calibration serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.qubits.is_empty() {
            return Err(Error::Calibration("no qubits".into()));
        }
        let n = self.qubits.len();
        for (i, q) in self.qubits.iter().enumerate() {
            if q.id != i {
                return Err(Error::Calibration(format!(
                    "qubit entries must be listed in id order 0..{n}; entry {i} has id {}",
                    q.id
                )));
            }
            if q.t1_us.is_nan() || q.t1_us <= 0.0 || q.t2_us.is_nan() || q.t2_us <= 0.0 {
                return Err(Error::Calibration(format!(
                    "qubit {}: T1 and T2 must be positive",
                    q.id
                )));
            }
            if q.t2_us > 2.0 * q.t1_us {
                return Err(Error::Calibration(format!(
                    "qubit {}: T2 = {} us exceeds 2*T1 = {} us; \
                     the physical constraint is T2(q) <= 2*T1(q)",
                    q.id,
                    q.t2_us,
                    2.0 * q.t1_us
                )));
            }
            for (name, rate) in [
                ("readout_error", q.readout_error),
                ("prep_error", q.prep_error),
            ] {
                if !(0.0..=1.0).contains(&rate) {
                    return Err(Error::Calibration(format!(
                        "qubit {}: {name} = {rate} outside [0, 1]",
                        q.id
                    )));
                }
            }
            if q.freq_hz < 0.0 {
                return Err(Error::Calibration(format!(
                    "qubit {}: negative frequency",
                    q.id
                )));
            }
        }
        if self.temperature_k < 0.0 {
            return Err(Error::Calibration("negative temperature".into()));
        }
        for g in &self.gates {
            let kind = GateKind::parse(&g.kind)
                .ok_or_else(|| Error::Calibration(format!("unknown gate kind '{}'", g.kind)))?;
            if let Some(arity) = kind.arity() {
                if g.qubits.len() != arity {
                    return Err(Error::Calibration(format!(
                        "gate entry {} expects {arity} qubit(s), got {}",
                        g.kind,
                        g.qubits.len()
                    )));
                }
            }
            for &q in &g.qubits {
                if q >= n {
                    return Err(Error::Calibration(format!(
                        "gate entry {} references qubit {q} outside 0..{n}",
                        g.kind
                    )));
                }
            }
            if !(0.0..=1.0).contains(&g.error_rate) {
                return Err(Error::Calibration(format!(
                    "gate entry {} on {:?}: error_rate = {} outside [0, 1]",
                    g.kind, g.qubits, g.error_rate
                )));
            }
            if g.duration_ns.is_nan() || g.duration_ns < 0.0 {
                return Err(Error::Calibration(format!(
                    "gate entry {} on {:?}: negative duration",
                    g.kind, g.qubits
                )));
            }
        }
        for &[c, t] in &self.coupling {
            if c >= n || t >= n {
                return Err(Error::Calibration(format!(
                    "coupling [{c}, {t}] references a qubit outside 0..{n}"
                )));
            }
            if c == t {
                return Err(Error::Calibration(format!(
                    "coupling [{c}, {t}] is a self-loop"
                )));
            }
        }
        Ok(())
    }

    /// Uniform template with the default average rates over the given
    /// coupling graph.
    pub fn template(n_qubits: usize, coupling: Vec<(usize, usize)>) -> Self {
        use defaults::*;
        let qubits = (0..n_qubits)
            .map(|id| QubitCalibration {
                id,
                t1_us: T1_US,
                t2_us: T2_US,
                freq_hz: FREQ_HZ,
                readout_error: READOUT_ERROR,
                prep_error: 0.0,
            })
            .collect();
        let mut gates = Vec::new();
        for q in 0..n_qubits {
            for kind in ["H", "X"] {
                gates.push(GateCalibration {
                    kind: kind.into(),
                    qubits: vec![q],
                    error_rate: SINGLE_QUBIT_ERROR,
                    duration_ns: SINGLE_QUBIT_DURATION_NS,
                });
            }
        }
        for &(c, t) in &coupling {
            gates.push(GateCalibration {
                kind: "CNOT".into(),
                qubits: vec![c, t],
                error_rate: TWO_QUBIT_ERROR,
                duration_ns: CNOT_DURATION_NS,
            });
        }
        Self {
            temperature_k: TEMPERATURE_K,
            qubits,
            gates,
            coupling: coupling.into_iter().map(|(c, t)| [c, t]).collect(),
        }
    }

    /// Noiseless calibration: zero rates, effectively infinite T1/T2.
    pub fn noiseless(n_qubits: usize, coupling: Vec<(usize, usize)>) -> Self {
        let mut cal = Self::template(n_qubits, coupling);
        for q in &mut cal.qubits {
            q.t1_us = f64::INFINITY;
            q.t2_us = f64::INFINITY;
            q.readout_error = 0.0;
            q.prep_error = 0.0;
        }
        for g in &mut cal.gates {
            g.error_rate = 0.0;
        }
        cal
    }

    pub fn n_qubits(&self) -> usize {
        self.qubits.len()
    }

    /// Architecture induced by the calibration's coupling list.
    pub fn architecture(&self) -> Result<Architecture> {
        Architecture::new(
            self.n_qubits(),
            self.coupling.iter().map(|&[c, t]| (c, t)).collect(),
        )
    }

    pub fn qubit(&self, q: usize) -> Result<&QubitCalibration> {
        self.qubits.get(q).ok_or(Error::QubitOutOfRange {
            qubit: q,
            n_qubits: self.n_qubits(),
        })
    }

    fn entries(&self, kind: GateKind) -> impl Iterator<Item = &GateCalibration> {
        let name = kind.name();
        self.gates.iter().filter(move |g| g.kind == name)
    }

    /// Error rate of a single-qubit gate kind on qubit `q`; falls back to
    /// the mean of the qubit's other single-qubit entries.
    pub fn single_qubit_rate(&self, kind: GateKind, q: usize) -> Option<f64> {
        if let Some(g) = self.entries(kind).find(|g| g.qubits == [q]) {
            return Some(g.error_rate);
        }
        self.qubit_mean_single_rate(q)
    }

    pub fn single_qubit_duration(&self, kind: GateKind, q: usize) -> Option<f64> {
        if let Some(g) = self.entries(kind).find(|g| g.qubits == [q]) {
            return Some(g.duration_ns);
        }
        let durs: Vec<f64> = self
            .gates
            .iter()
            .filter(|g| g.qubits == [q] && GateKind::parse(&g.kind).is_some_and(|k| k.is_body()))
            .map(|g| g.duration_ns)
            .collect();
        mean(&durs)
    }

    /// Mean single-qubit error rate of qubit `q` over its entries.
    pub fn qubit_mean_single_rate(&self, q: usize) -> Option<f64> {
        let rates: Vec<f64> = self
            .gates
            .iter()
            .filter(|g| {
                g.qubits == [q]
                    && GateKind::parse(&g.kind).is_some_and(|k| k.arity() == Some(1) && k.is_body())
            })
            .map(|g| g.error_rate)
            .collect();
        mean(&rates)
    }

    /// Mean of the per-qubit single-qubit rates over all qubits that have
    /// entries (the architecture-unaware average).
    pub fn mean_single_qubit_rate(&self) -> f64 {
        let per_qubit: Vec<f64> = (0..self.n_qubits())
            .filter_map(|q| self.qubit_mean_single_rate(q))
            .collect();
        mean(&per_qubit).unwrap_or(0.0)
    }

    /// CNOT rate for an ordered pair, falling back to the reversed pair.
    pub fn pair_rate(&self, control: usize, target: usize) -> Option<f64> {
        self.entries(GateKind::Cnot)
            .find(|g| g.qubits == [control, target])
            .or_else(|| {
                self.entries(GateKind::Cnot)
                    .find(|g| g.qubits == [target, control])
            })
            .map(|g| g.error_rate)
    }

    pub fn pair_duration(&self, control: usize, target: usize) -> Option<f64> {
        self.entries(GateKind::Cnot)
            .find(|g| g.qubits == [control, target])
            .or_else(|| {
                self.entries(GateKind::Cnot)
                    .find(|g| g.qubits == [target, control])
            })
            .map(|g| g.duration_ns)
    }

    pub fn mean_pair_rate(&self) -> f64 {
        let rates: Vec<f64> = self.entries(GateKind::Cnot).map(|g| g.error_rate).collect();
        mean(&rates).unwrap_or(0.0)
    }

    pub fn mean_pair_duration(&self) -> f64 {
        let durs: Vec<f64> = self
            .entries(GateKind::Cnot)
            .map(|g| g.duration_ns)
            .collect();
        mean(&durs).unwrap_or(0.0)
    }

    /// Explicit CCX entry, if the document carries one.
    pub fn ccx_entry(&self, a: usize, b: usize, t: usize) -> Option<&GateCalibration> {
        self.entries(GateKind::Ccx).find(|g| g.qubits == [a, b, t])
    }

    /// Thermal parameters of qubit `q` over an elapsed time.
    pub fn thermal_params(&self, q: usize, elapsed_ns: f64) -> Result<ThermalParams> {
        let qc = self.qubit(q)?;
        ThermalParams::new(
            qc.t1_us,
            qc.t2_us,
            elapsed_ns,
            self.temperature_k,
            qc.freq_hz,
        )
    }

    // -- overlay mutators used by the optimizer --------------------------

    /// Set every single-qubit gate rate of qubit `q`.
    pub fn set_single_qubit_rates(&mut self, q: usize, rate: f64) {
        for g in &mut self.gates {
            if g.qubits == [q]
                && GateKind::parse(&g.kind).is_some_and(|k| k.arity() == Some(1) && k.is_body())
            {
                g.error_rate = rate;
            }
        }
    }

    /// Set the CNOT rate of an unordered pair (both orientations).
    pub fn set_pair_rate(&mut self, a: usize, b: usize, rate: f64) {
        for g in &mut self.gates {
            if g.kind == "CNOT" && (g.qubits == [a, b] || g.qubits == [b, a]) {
                g.error_rate = rate;
            }
        }
    }

    pub fn set_readout_error(&mut self, q: usize, rate: f64) {
        if let Some(qc) = self.qubits.get_mut(q) {
            qc.readout_error = rate;
        }
    }

    pub fn set_prep_error(&mut self, q: usize, rate: f64) {
        if let Some(qc) = self.qubits.get_mut(q) {
            qc.prep_error = rate;
        }
    }

    pub fn set_times(&mut self, q: usize, t1_us: f64, t2_us: f64) {
        if let Some(qc) = self.qubits.get_mut(q) {
            qc.t1_us = t1_us;
            qc.t2_us = t2_us;
        }
    }
}

fn mean(xs: &[f64]) -> Option<f64> {
    if xs.is_empty() {
        None
    } else {
        Some(xs.iter().sum::<f64>() / xs.len() as f64)
    }
}
