//! The unified noise model and its variants, plus the noisy simulation loop
//! that interleaves channels with circuit gates.
//!
//! Channel placement per gate: the gate unitary first, then the depolarizing
//! channel (on a two-qubit gate only the target is depolarized; the control
//! merely drives the gate), then thermal relaxation/dephasing on every
//! operand. The thermal step for a qubit covers the idle gap since the
//! qubit's last activity plus the gate duration, so decay over waiting time
//! is accounted for. Measurement-error channels act on each measured qubit
//! right before readout; preparation-error channels right after state
//! preparation.
//!
//! CCX is a logical-level primitive with no hardware calibration entry; its
//! depolarizing rate and duration resolve, in order, from an explicit CCX
//! calibration entry, the (second-control → target) CNOT pair, the
//! (first-control → target) pair, and finally the calibration's mean CNOT
//! values.

use crate::calibration::CalibrationData;
use crate::channels;
use crate::circuit::{self, Architecture, Circuit, Gate, GateKind};
use crate::error::{Error, Result};
use crate::qstate::{DensityMatrix, Distribution, ShotCounts};

/// Which error groups a model applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Unified model: depolarizing + SPAM + thermal.
    Unm,
    /// Depolarizing + SPAM only.
    Dspam,
    /// Thermal relaxation/dephasing only.
    Trm,
    /// Simple depolarizing model with one averaged rate, ignoring
    /// connectivity.
    Sdm,
    /// No noise.
    Ideal,
}

impl Variant {
    pub fn name(&self) -> &'static str {
        match self {
            Variant::Unm => "unm",
            Variant::Dspam => "dspam",
            Variant::Trm => "trm",
            Variant::Sdm => "sdm",
            Variant::Ideal => "ideal",
        }
    }

    pub fn parse(s: &str) -> Option<Variant> {
        match s.to_ascii_lowercase().as_str() {
            "unm" => Some(Variant::Unm),
            "dspam" => Some(Variant::Dspam),
            "trm" => Some(Variant::Trm),
            "sdm" => Some(Variant::Sdm),
            "ideal" => Some(Variant::Ideal),
            _ => None,
        }
    }

    fn depolarizing(&self) -> bool {
        matches!(self, Variant::Unm | Variant::Dspam)
    }

    fn averaged_depolarizing(&self) -> bool {
        matches!(self, Variant::Sdm)
    }

    fn spam(&self) -> bool {
        matches!(self, Variant::Unm | Variant::Dspam)
    }

    fn thermal(&self) -> bool {
        matches!(self, Variant::Unm | Variant::Trm)
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// How much thermal time the control qubit of a CNOT/CCX accrues for the
/// gate itself (its idle gap is always counted).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ControlTrc {
    /// The control decays for the full gate duration.
    #[default]
    FullDuration,
    /// The gate is instantaneous for the control (the literal reading of the
    /// identity placeholder on the control wire).
    Zero,
}

/// A noise model bound to calibration data and an architecture.
#[derive(Debug, Clone)]
pub struct NoiseModel {
    variant: Variant,
    calibration: CalibrationData,
    architecture: Architecture,
    control_trc: ControlTrc,
}

impl NoiseModel {
    /// Build a model, checking that the calibration covers every qubit and
    /// every coupled pair of the architecture.
    pub fn new(
        calibration: CalibrationData,
        architecture: Architecture,
        variant: Variant,
    ) -> Result<Self> {
        Self::build(calibration, architecture, variant, false)
    }

    /// Like [`NoiseModel::new`] but lets missing pair entries fall back to
    /// the calibration's mean CNOT rate (used with assumed-full
    /// connectivity, where the coupling graph outgrows the calibration).
    pub fn new_relaxed(
        calibration: CalibrationData,
        architecture: Architecture,
        variant: Variant,
    ) -> Result<Self> {
        Self::build(calibration, architecture, variant, true)
    }

    fn build(
        calibration: CalibrationData,
        architecture: Architecture,
        variant: Variant,
        relaxed_pairs: bool,
    ) -> Result<Self> {
        calibration.validate()?;
        if calibration.n_qubits() < architecture.n_qubits() {
            return Err(Error::CoverageGap(format!(
                "architecture has {} qubit(s) but calibration covers {}",
                architecture.n_qubits(),
                calibration.n_qubits()
            )));
        }
        if !relaxed_pairs {
            for &(c, t) in architecture.coupling() {
                if calibration.pair_rate(c, t).is_none() {
                    return Err(Error::CoverageGap(format!(
                        "no CNOT calibration entry for coupled pair ({c}, {t})"
                    )));
                }
            }
        } else if !architecture.coupling().is_empty()
            && calibration
                .gates
                .iter()
                .all(|g| g.kind != GateKind::Cnot.name())
        {
            return Err(Error::CoverageGap(
                "no CNOT calibration entries to average over".into(),
            ));
        }
        Ok(Self {
            variant,
            calibration,
            architecture,
            control_trc: ControlTrc::default(),
        })
    }

    /// Noiseless model over a full-connectivity architecture.
    pub fn ideal(n_qubits: usize) -> Self {
        let arch = Architecture::full(n_qubits);
        let cal = CalibrationData::noiseless(n_qubits, arch.coupling().to_vec());
        Self {
            variant: Variant::Ideal,
            calibration: cal,
            architecture: arch,
            control_trc: ControlTrc::default(),
        }
    }

    pub fn with_control_trc(mut self, control_trc: ControlTrc) -> Self {
        self.control_trc = control_trc;
        self
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn calibration(&self) -> &CalibrationData {
        &self.calibration
    }

    pub fn architecture(&self) -> &Architecture {
        &self.architecture
    }

    /// Default duration of a gate from the calibration tables.
    fn default_duration(&self, gate: &Gate) -> f64 {
        match gate.kind {
            GateKind::I | GateKind::Prepare | GateKind::Measure => 0.0,
            GateKind::H | GateKind::X => self
                .calibration
                .single_qubit_duration(gate.kind, gate.qubits[0])
                .unwrap_or(0.0),
            GateKind::Cnot => self
                .calibration
                .pair_duration(gate.qubits[0], gate.qubits[1])
                .unwrap_or_else(|| self.calibration.mean_pair_duration()),
            GateKind::Ccx => self.ccx_rate_and_duration(&gate.qubits).1,
        }
    }

    /// Depolarizing rate and duration resolution for a CCX.
    fn ccx_rate_and_duration(&self, qubits: &[usize]) -> (f64, f64) {
        let (a, b, t) = (qubits[0], qubits[1], qubits[2]);
        if let Some(entry) = self.calibration.ccx_entry(a, b, t) {
            return (entry.error_rate, entry.duration_ns);
        }
        for control in [b, a] {
            if let (Some(rate), Some(dur)) = (
                self.calibration.pair_rate(control, t),
                self.calibration.pair_duration(control, t),
            ) {
                return (rate, dur);
            }
        }
        (
            self.calibration.mean_pair_rate(),
            self.calibration.mean_pair_duration(),
        )
    }

    /// Copy of the circuit with unset durations resolved from calibration.
    fn resolve_durations(&self, circuit: &Circuit) -> Circuit {
        let mut resolved = Circuit::new(circuit.n_qubits());
        for g in circuit.gates() {
            let mut gate = g.clone();
            if gate.duration_ns.is_none() {
                gate.duration_ns = Some(self.default_duration(g));
            }
            resolved.push(gate).expect("already valid");
        }
        resolved
    }

    fn apply_depolarizing(
        &self,
        rho: DensityMatrix,
        rate: f64,
        qubit: usize,
    ) -> Result<DensityMatrix> {
        if rate <= 0.0 {
            return Ok(rho);
        }
        let ch = channels::depolarizing(rate)?;
        rho.apply_kraus(&ch, &[qubit])
    }

    fn apply_thermal(
        &self,
        rho: DensityMatrix,
        qubit: usize,
        elapsed_ns: f64,
    ) -> Result<DensityMatrix> {
        if elapsed_ns <= 0.0 {
            return Ok(rho);
        }
        let tp = self.calibration.thermal_params(qubit, elapsed_ns)?;
        let ch = channels::thermal(&tp)?;
        rho.apply_kraus(&ch, &[qubit])
    }

    fn apply_spam(&self, rho: DensityMatrix, rate: f64, qubit: usize) -> Result<DensityMatrix> {
        if rate <= 0.0 {
            return Ok(rho);
        }
        let ch = channels::spam(rate)?;
        rho.apply_kraus(&ch, &[qubit])
    }

    /// Exact-mode simulation: evolve |0…0⟩⟨0…0| through the circuit with the
    /// variant's channels and return the measured-qubit distribution.
    pub fn simulate_exact(&self, circuit: &Circuit) -> Result<Distribution> {
        let violations = circuit::validate(circuit, &self.architecture);
        if !violations.is_empty() {
            let msgs: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            return Err(Error::ArchitectureViolation(msgs.join("; ")));
        }
        let measured = circuit.measured();
        if measured.is_empty() {
            return Err(Error::EmptyMeasurement);
        }
        for (i, &q) in measured.iter().enumerate() {
            if measured[i + 1..].contains(&q) {
                return Err(Error::RepeatedQubit(q));
            }
        }

        let resolved = self.resolve_durations(circuit);
        let sched = circuit::schedule(&resolved);
        let mean_single = self.calibration.mean_single_qubit_rate();

        let mut rho = DensityMatrix::pure_state(resolved.n_qubits(), 0)?;

        for (gate, entry) in resolved.gates().iter().zip(sched.entries()) {
            match gate.kind {
                GateKind::Prepare => {
                    // preparation error right after injecting |0⟩
                    if self.variant.spam() {
                        let rate = self.calibration.qubit(gate.qubits[0])?.prep_error;
                        rho = self.apply_spam(rho, rate, gate.qubits[0])?;
                    }
                    // prep-time thermal step has zero duration by default
                }
                GateKind::Measure => {
                    // handled after the loop
                }
                _ => {
                    if let Some(u) = gate.kind.unitary() {
                        rho = rho.apply_unitary(&u, &gate.qubits)?;
                    }
                    // depolarizing group
                    if self.variant.depolarizing() {
                        match gate.kind {
                            GateKind::H | GateKind::X => {
                                let q = gate.qubits[0];
                                let rate = self
                                    .calibration
                                    .single_qubit_rate(gate.kind, q)
                                    .unwrap_or(0.0);
                                rho = self.apply_depolarizing(rho, rate, q)?;
                            }
                            GateKind::Cnot => {
                                let rate = self
                                    .calibration
                                    .pair_rate(gate.qubits[0], gate.qubits[1])
                                    .unwrap_or_else(|| self.calibration.mean_pair_rate());
                                // only the target qubit is depolarized
                                rho = self.apply_depolarizing(rho, rate, gate.qubits[1])?;
                            }
                            GateKind::Ccx => {
                                let (rate, _) = self.ccx_rate_and_duration(&gate.qubits);
                                rho = self.apply_depolarizing(rho, rate, gate.qubits[2])?;
                            }
                            _ => {}
                        }
                    } else if self.variant.averaged_depolarizing() && gate.kind != GateKind::I {
                        for &q in &gate.qubits {
                            rho = self.apply_depolarizing(rho, mean_single, q)?;
                        }
                    }
                    // thermal group: idle gap + gate duration per operand
                    if self.variant.thermal() {
                        let is_two_qubit_kind = matches!(gate.kind, GateKind::Cnot | GateKind::Ccx);
                        let n_ops = gate.qubits.len();
                        for (pos, &q) in gate.qubits.iter().enumerate() {
                            let is_control = is_two_qubit_kind && pos + 1 < n_ops;
                            let gate_time = if is_control && self.control_trc == ControlTrc::Zero {
                                0.0
                            } else {
                                entry.duration_ns
                            };
                            let elapsed = entry.idle_gaps_ns[pos] + gate_time;
                            rho = self.apply_thermal(rho, q, elapsed)?;
                        }
                    }
                }
            }
        }

        // measurement-error channels, then the measurement itself
        if self.variant.spam() {
            for &q in &measured {
                let rate = self.calibration.qubit(q)?.readout_error;
                rho = self.apply_spam(rho, rate, q)?;
            }
        }
        rho.measure_distribution(&measured)
    }

    /// Shot-sampled simulation: exact evolution followed by a reproducible
    /// multinomial draw.
    pub fn simulate_shots(&self, circuit: &Circuit, shots: u64, seed: u64) -> Result<ShotCounts> {
        let dist = self.simulate_exact(circuit)?;
        dist.sample(shots, seed)
    }
}
