//! Circuit intermediate representation, device architecture graph,
//! architecture validation, ASAP scheduling, and the line-based text format.
//!
//! Circuits stay at logical level: `CCX` is a primitive here (decomposing it
//! into a hardware basis is transpilation, which is out of scope), so
//! coupling validation applies to `CNOT` gates only.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, CMat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    H,
    X,
    /// Virtual identity placeholder with zero execution time.
    I,
    Cnot,
    /// Toffoli; logical-level primitive used by the walk cascades.
    Ccx,
    Prepare,
    Measure,
}

impl GateKind {
    /// Fixed operand count, or `None` for variadic kinds (MEASURE).
    pub fn arity(&self) -> Option<usize> {
        match self {
            GateKind::H | GateKind::X | GateKind::I | GateKind::Prepare => Some(1),
            GateKind::Cnot => Some(2),
            GateKind::Ccx => Some(3),
            GateKind::Measure => None,
        }
    }

    pub fn is_body(&self) -> bool {
        !matches!(self, GateKind::Prepare | GateKind::Measure)
    }

    /// Unitary action on the local operand ordering, `None` for
    /// PREPARE/MEASURE markers and the virtual identity.
    pub fn unitary(&self) -> Option<CMat> {
        match self {
            GateKind::H => Some(linalg::hadamard()),
            GateKind::X => Some(linalg::pauli_x()),
            GateKind::I => None,
            GateKind::Cnot => Some(linalg::cnot()),
            GateKind::Ccx => Some(linalg::ccx()),
            GateKind::Prepare | GateKind::Measure => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::X => "X",
            GateKind::I => "I",
            GateKind::Cnot => "CNOT",
            GateKind::Ccx => "CCX",
            GateKind::Prepare => "PREPARE",
            GateKind::Measure => "MEASURE",
        }
    }

    pub fn parse(s: &str) -> Option<GateKind> {
        match s.to_ascii_uppercase().as_str() {
            "H" => Some(GateKind::H),
            "X" => Some(GateKind::X),
            "I" => Some(GateKind::I),
            "CNOT" => Some(GateKind::Cnot),
            "CCX" => Some(GateKind::Ccx),
            "PREPARE" => Some(GateKind::Prepare),
            "MEASURE" => Some(GateKind::Measure),
            _ => None,
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One gate instance. `duration_ns = None` means "take the default from the
/// calibration data at simulation time".
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
    pub duration_ns: Option<f64>,
}

impl Gate {
    pub fn new(kind: GateKind, qubits: Vec<usize>) -> Result<Self> {
        if let Some(arity) = kind.arity() {
            if qubits.len() != arity {
                return Err(Error::InvalidCircuit(format!(
                    "{} expects {arity} operand(s), got {}",
                    kind.name(),
                    qubits.len()
                )));
            }
        } else if qubits.is_empty() {
            return Err(Error::InvalidCircuit(format!(
                "{} needs at least one operand",
                kind.name()
            )));
        }
        for (i, &q) in qubits.iter().enumerate() {
            if qubits[i + 1..].contains(&q) {
                return Err(Error::RepeatedQubit(q));
            }
        }
        Ok(Self {
            kind,
            qubits,
            duration_ns: None,
        })
    }

    pub fn h(q: usize) -> Self {
        Self::new(GateKind::H, vec![q]).expect("single operand")
    }

    pub fn x(q: usize) -> Self {
        Self::new(GateKind::X, vec![q]).expect("single operand")
    }

    pub fn ident(q: usize) -> Self {
        Self::new(GateKind::I, vec![q]).expect("single operand")
    }

    pub fn cnot(control: usize, target: usize) -> Result<Self> {
        Self::new(GateKind::Cnot, vec![control, target])
    }

    pub fn ccx(control_a: usize, control_b: usize, target: usize) -> Result<Self> {
        Self::new(GateKind::Ccx, vec![control_a, control_b, target])
    }

    pub fn prepare(q: usize) -> Self {
        Self::new(GateKind::Prepare, vec![q]).expect("single operand")
    }

    pub fn measure(qubits: Vec<usize>) -> Result<Self> {
        Self::new(GateKind::Measure, qubits)
    }

    pub fn with_duration(mut self, ns: f64) -> Self {
        self.duration_ns = Some(ns);
        self
    }
}

/// Ordered gate list over `n_qubits`. PREPARE gates may only appear before
/// body gates, MEASURE gates only after them; enforced on push.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            gates: Vec::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
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

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        for &q in &gate.qubits {
            if q >= self.n_qubits {
                return Err(Error::QubitOutOfRange {
                    qubit: q,
                    n_qubits: self.n_qubits,
                });
            }
        }
        if let Some(d) = gate.duration_ns {
            if d.is_nan() || d < 0.0 {
                return Err(Error::InvalidCircuit(format!(
                    "negative gate duration {d} ns"
                )));
            }
        }
        match gate.kind {
            GateKind::Prepare => {
                if self.gates.iter().any(|g| g.kind != GateKind::Prepare) {
                    return Err(Error::InvalidCircuit(
                        "PREPARE gates must appear at the start".into(),
                    ));
                }
            }
            GateKind::Measure => {}
            _ => {
                if self.gates.iter().any(|g| g.kind == GateKind::Measure) {
                    return Err(Error::InvalidCircuit(
                        "body gates may not follow MEASURE".into(),
                    ));
                }
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    /// Qubits measured at the end of the circuit, in gate/operand order.
    pub fn measured(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for g in &self.gates {
            if g.kind == GateKind::Measure {
                out.extend_from_slice(&g.qubits);
            }
        }
        out
    }

    /// Qubits with explicit PREPARE markers, in order.
    pub fn prepared(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for g in &self.gates {
            if g.kind == GateKind::Prepare {
                out.extend_from_slice(&g.qubits);
            }
        }
        out
    }

    /// Qubits touched by at least one body gate (H, X, I, CNOT, CCX).
    pub fn active_qubits(&self) -> Vec<usize> {
        let mut set = BTreeSet::new();
        for g in &self.gates {
            if g.kind.is_body() {
                set.extend(g.qubits.iter().copied());
            }
        }
        set.into_iter().collect()
    }

    /// Parse the line-based text format, one gate per line:
    ///
    /// ```text
    /// # one-step walk fragment
    /// H 0
    /// CNOT 0 1 @300
    /// MEASURE 1 3
    /// ```
    ///
    /// `#` starts a comment; a trailing `@<ns>` token overrides the gate
    /// duration. The qubit count is inferred from the largest operand.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut gates: Vec<Gate> = Vec::new();
        let mut max_q = 0usize;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tokens: Vec<&str> = line.split_whitespace().collect();
            let mut duration = None;
            if let Some(last) = tokens.last() {
                if let Some(ns) = last.strip_prefix('@') {
                    duration = Some(ns.parse::<f64>().map_err(|_| Error::Parse {
                        line: line_no,
                        msg: format!("bad duration '{last}'"),
                    })?);
                    tokens.pop();
                }
            }
            let kind = GateKind::parse(tokens[0]).ok_or_else(|| Error::Parse {
                line: line_no,
                msg: format!("unknown gate '{}'", tokens[0]),
            })?;
            let qubits: Vec<usize> = tokens[1..]
                .iter()
                .map(|t| {
                    t.parse::<usize>().map_err(|_| Error::Parse {
                        line: line_no,
                        msg: format!("bad qubit index '{t}'"),
                    })
                })
                .collect::<Result<_>>()?;
            let mut gate = Gate::new(kind, qubits).map_err(|e| Error::Parse {
                line: line_no,
                msg: e.to_string(),
            })?;
            gate.duration_ns = duration;
            max_q = max_q.max(gate.qubits.iter().copied().max().unwrap_or(0));
            gates.push(gate);
        }
        let mut circuit = Circuit::new(max_q + 1);
        for g in gates {
            circuit.push(g).map_err(|e| Error::Parse {
                line: 0,
                msg: e.to_string(),
            })?;
        }
        Ok(circuit)
    }

    /// Emit the text format accepted by [`Circuit::parse_text`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for g in &self.gates {
            out.push_str(g.kind.name());
            for q in &g.qubits {
                out.push(' ');
                out.push_str(&q.to_string());
            }
            if let Some(d) = g.duration_ns {
                out.push_str(&format!(" @{d}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Device coupling graph: ordered (control, target) pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct Architecture {
    n_qubits: usize,
    coupling: Vec<(usize, usize)>,
}

impl Architecture {
    pub fn new(n_qubits: usize, coupling: Vec<(usize, usize)>) -> Result<Self> {
        for &(c, t) in &coupling {
            if c >= n_qubits || t >= n_qubits {
                return Err(Error::InvalidArchitecture(format!(
                    "coupling ({c}, {t}) references a qubit outside 0..{n_qubits}"
                )));
            }
            if c == t {
                return Err(Error::InvalidArchitecture(format!(
                    "coupling ({c}, {t}) is a self-loop"
                )));
            }
        }
        Ok(Self { n_qubits, coupling })
    }

    /// Line topology: (0,1), (1,2), ...
    pub fn linear(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            coupling: (1..n_qubits).map(|q| (q - 1, q)).collect(),
        }
    }

    /// All ordered pairs.
    pub fn full(n_qubits: usize) -> Self {
        let mut coupling = Vec::new();
        for c in 0..n_qubits {
            for t in 0..n_qubits {
                if c != t {
                    coupling.push((c, t));
                }
            }
        }
        Self { n_qubits, coupling }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn coupling(&self) -> &[(usize, usize)] {
        &self.coupling
    }

    pub fn is_coupled(&self, control: usize, target: usize) -> bool {
        self.coupling.contains(&(control, target))
    }

    /// Distinct unordered coupled pairs, sorted.
    pub fn unordered_pairs(&self) -> Vec<(usize, usize)> {
        let set: BTreeSet<(usize, usize)> = self
            .coupling
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        set.into_iter().collect()
    }
}

/// One architecture-conformance problem found by [`validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub gate_index: Option<usize>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.gate_index {
            Some(i) => write!(f, "gate {}: {}", i, self.message),
            None => f.write_str(&self.message),
        }
    }
}

/// Check a circuit against an architecture. Every CNOT's (control, target)
/// must be a coupled pair and the circuit must fit the device. Returns the
/// violations instead of failing.
pub fn validate(circuit: &Circuit, arch: &Architecture) -> Vec<Violation> {
    let mut violations = Vec::new();
    if circuit.n_qubits() > arch.n_qubits() {
        violations.push(Violation {
            gate_index: None,
            message: format!(
                "circuit uses {} qubit(s) but the architecture has {}",
                circuit.n_qubits(),
                arch.n_qubits()
            ),
        });
    }
    for (i, g) in circuit.gates().iter().enumerate() {
        if g.kind == GateKind::Cnot && !arch.is_coupled(g.qubits[0], g.qubits[1]) {
            violations.push(Violation {
                gate_index: Some(i),
                message: format!(
                    "CNOT ({}, {}) is not a coupled pair",
                    g.qubits[0], g.qubits[1]
                ),
            });
        }
    }
    violations
}

/// ASAP schedule entry for one gate.
#[derive(Debug, Clone, PartialEq)]
pub struct ScheduledGate {
    pub start_ns: f64,
    pub duration_ns: f64,
    pub qubits: Vec<usize>,
    /// Idle gap each operand sat through before this gate started, aligned
    /// with `qubits`.
    pub idle_gaps_ns: Vec<f64>,
}

/// As-soon-as-possible schedule: each gate starts at the latest ready time of
/// its operands; per-qubit clocks advance by the gate duration.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    entries: Vec<ScheduledGate>,
    qubit_clocks_ns: Vec<f64>,
}

impl Schedule {
    pub fn entries(&self) -> &[ScheduledGate] {
        &self.entries
    }

    /// Final per-qubit clock values.
    pub fn qubit_clocks_ns(&self) -> &[f64] {
        &self.qubit_clocks_ns
    }

    pub fn makespan_ns(&self) -> f64 {
        self.qubit_clocks_ns.iter().copied().fold(0.0, f64::max)
    }

    /// Decay-relevant durations seen by qubit `q`: for each gate touching
    /// `q`, the idle gap preceding it plus the gate duration. The total
    /// equals the qubit's final clock.
    pub fn idle_decay_durations(&self, q: usize) -> Vec<f64> {
        let mut out = Vec::new();
        for e in &self.entries {
            if let Some(pos) = e.qubits.iter().position(|&x| x == q) {
                out.push(e.idle_gaps_ns[pos] + e.duration_ns);
            }
        }
        out
    }
}

/// Compute the ASAP schedule. Unset durations count as 0 ns (resolve them
/// from calibration first when simulating noise).
pub fn schedule(circuit: &Circuit) -> Schedule {
    let mut clocks = vec![0.0f64; circuit.n_qubits()];
    let mut entries = Vec::with_capacity(circuit.len());
    for g in circuit.gates() {
        let duration = g.duration_ns.unwrap_or(0.0);
        let start = g.qubits.iter().map(|&q| clocks[q]).fold(0.0f64, f64::max);
        let idle_gaps = g.qubits.iter().map(|&q| start - clocks[q]).collect();
        for &q in &g.qubits {
            clocks[q] = start + duration;
        }
        entries.push(ScheduledGate {
            start_ns: start,
            duration_ns: duration,
            qubits: g.qubits.clone(),
            idle_gaps_ns: idle_gaps,
        });
    }
    Schedule {
        entries,
        qubit_clocks_ns: clocks,
    }
}
