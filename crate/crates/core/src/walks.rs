//! Discrete-time quantum-walk benchmark circuits on a cycle of N states:
//! Hadamard coin, coin-controlled increment/decrement of the position
//! register, multi-controlled X gates expanded through an ancilla pool.
//!
//! Workspace layout for N = 2^k states: qubit 0 is the coin, position bit
//! `j` sits at qubit `2j + 1` and ancilla `j` at qubit `2j + 2`, giving the
//! `2·log₂N` workspace (position k, coin 1, ancillas k − 1). The interleaved
//! layout puts every conjunction-carrying CNOT on an adjacent ascending
//! pair, so the emitted circuits conform to a linear coupling as-is.

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::linalg;
use crate::qstate::{DensityMatrix, Distribution};

/// Parameters of a walk experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkSpec {
    /// Cycle size N; must be a power of two, at least 4.
    pub n_states: usize,
    /// Number of coin flips.
    pub steps: usize,
    /// Starting position in `[0, N)`.
    pub initial_position: usize,
}

impl WalkSpec {
    pub fn new(n_states: usize, steps: usize, initial_position: usize) -> Result<Self> {
        if n_states < 4 || !n_states.is_power_of_two() {
            return Err(Error::InvalidWalkSize(n_states));
        }
        if initial_position >= n_states {
            return Err(Error::IndexOutOfRange {
                index: initial_position,
                n_qubits: n_states.trailing_zeros() as usize,
            });
        }
        Ok(Self {
            n_states,
            steps,
            initial_position,
        })
    }

    /// Position register width log₂N.
    pub fn position_bits(&self) -> usize {
        self.n_states.trailing_zeros() as usize
    }

    /// Total workspace: position + coin + ancilla pool = 2·log₂N qubits.
    pub fn workspace_qubits(&self) -> usize {
        2 * self.position_bits()
    }

    pub fn coin_qubit(&self) -> usize {
        0
    }

    pub fn position_qubit(&self, bit: usize) -> usize {
        2 * bit + 1
    }

    pub fn ancilla_qubit(&self, index: usize) -> usize {
        2 * index + 2
    }

    /// Position qubits in bit order (LSB first); these are the measured set.
    pub fn position_qubits(&self) -> Vec<usize> {
        (0..self.position_bits())
            .map(|b| self.position_qubit(b))
            .collect()
    }

    pub fn ancilla_qubits(&self) -> Vec<usize> {
        (0..self.position_bits().saturating_sub(1))
            .map(|i| self.ancilla_qubit(i))
            .collect()
    }
}

/// Expand an X on `target` controlled by all of `controls` into CNOT/CCX
/// gates, writing conjunctions into `ancillas` and uncomputing them so every
/// ancilla returns to |0⟩. A single control yields one CNOT; `n` controls
/// need `n − 1` ancillas.
pub fn generalized_cnot(
    controls: &[usize],
    ancillas: &[usize],
    target: usize,
) -> Result<Vec<Gate>> {
    if controls.is_empty() {
        return Err(Error::InvalidCircuit(
            "generalized CNOT needs at least one control".into(),
        ));
    }
    if controls.len() == 1 {
        return Ok(vec![Gate::cnot(controls[0], target)?]);
    }
    let needed = controls.len() - 1;
    if ancillas.len() < needed {
        return Err(Error::InvalidCircuit(format!(
            "{} control(s) need {needed} ancilla(s), got {}",
            controls.len(),
            ancillas.len()
        )));
    }
    let mut compute: Vec<Gate> = Vec::with_capacity(needed);
    compute.push(Gate::ccx(controls[0], controls[1], ancillas[0])?);
    for i in 2..controls.len() {
        compute.push(Gate::ccx(controls[i], ancillas[i - 2], ancillas[i - 1])?);
    }
    let mut gates = compute.clone();
    gates.push(Gate::cnot(ancillas[needed - 1], target)?);
    gates.extend(compute.into_iter().rev());
    Ok(gates)
}

/// Increment cascade: flip position bit `j` (highest first) controlled on
/// the coin and all lower position bits.
fn increment_gates(spec: &WalkSpec) -> Result<Vec<Gate>> {
    let k = spec.position_bits();
    let ancillas = spec.ancilla_qubits();
    let mut gates = Vec::new();
    for j in (1..k).rev() {
        let mut controls = vec![spec.coin_qubit()];
        controls.extend((0..j).map(|b| spec.position_qubit(b)));
        gates.extend(generalized_cnot(
            &controls,
            &ancillas[..j],
            spec.position_qubit(j),
        )?);
    }
    gates.push(Gate::cnot(spec.coin_qubit(), spec.position_qubit(0))?);
    Ok(gates)
}

/// Build the walk circuit: initial-position X gates, then per step a
/// Hadamard coin flip, the increment controlled on coin = 1 and the
/// decrement controlled on coin = 0 (the increment cascade conjugated by X
/// on its empty-circle controls). The position register is measured; the
/// coin never is.
pub fn walk_circuit(spec: &WalkSpec) -> Result<Circuit> {
    let k = spec.position_bits();
    let mut circuit = Circuit::new(spec.workspace_qubits());

    for b in 0..k {
        if (spec.initial_position >> b) & 1 == 1 {
            circuit.push(Gate::x(spec.position_qubit(b)))?;
        }
    }

    // empty-circle controls of the decrement: coin + position bits 0..k-1
    let mut conjugated = vec![spec.coin_qubit()];
    conjugated.extend((0..k.saturating_sub(1)).map(|b| spec.position_qubit(b)));

    for _ in 0..spec.steps {
        circuit.push(Gate::h(spec.coin_qubit()))?;
        for g in increment_gates(spec)? {
            circuit.push(g)?;
        }
        for &q in &conjugated {
            circuit.push(Gate::x(q))?;
        }
        for g in increment_gates(spec)? {
            circuit.push(g)?;
        }
        for &q in &conjugated {
            circuit.push(Gate::x(q))?;
        }
    }

    circuit.push(Gate::measure(spec.position_qubits())?)?;
    Ok(circuit)
}

/// Noise-free exact simulation of the walk circuit's output distribution
/// over positions.
pub fn ideal_walk_distribution(spec: &WalkSpec) -> Result<Distribution> {
    let circuit = walk_circuit(spec)?;
    let mut rho = DensityMatrix::pure_state(circuit.n_qubits(), 0)?;
    for gate in circuit.gates() {
        if let Some(u) = gate.kind.unitary() {
            rho = rho.apply_unitary(&u, &gate.qubits)?;
        }
    }
    rho.measure_distribution(&circuit.measured())
}

/// Purity and ancilla bookkeeping for tests: simulate noiselessly and
/// return the final state.
pub fn ideal_walk_state(spec: &WalkSpec) -> Result<DensityMatrix> {
    let circuit = walk_circuit(spec)?;
    let mut rho = DensityMatrix::pure_state(circuit.n_qubits(), 0)?;
    for gate in circuit.gates() {
        if let Some(u) = gate.kind.unitary() {
            rho = rho.apply_unitary(&u, &gate.qubits)?;
        }
    }
    Ok(rho)
}

/// Multi-controlled X truth-table helper used by tests: applies the gate
/// list to a basis state of `n` qubits and returns the resulting basis
/// index (all gates here map basis states to basis states).
#[doc(hidden)]
pub fn apply_classical(gates: &[Gate], n_qubits: usize, basis: usize) -> usize {
    let mut state = basis;
    for g in gates {
        match g.kind {
            crate::circuit::GateKind::X => state ^= 1 << g.qubits[0],
            crate::circuit::GateKind::Cnot => {
                if (state >> g.qubits[0]) & 1 == 1 {
                    state ^= 1 << g.qubits[1];
                }
            }
            crate::circuit::GateKind::Ccx => {
                if (state >> g.qubits[0]) & 1 == 1 && (state >> g.qubits[1]) & 1 == 1 {
                    state ^= 1 << g.qubits[2];
                }
            }
            _ => panic!("not a classical gate"),
        }
    }
    let _ = n_qubits;
    let _ = linalg::ONE;
    state
}
