//! Noisy simulation of gate-based quantum circuits under an
//! architecture-aware noise model.
//!
//! The library combines three error groups into one composable model:
//!
//! * gate infidelities as symmetric depolarizing channels,
//! * state-preparation and measurement (SPAM) bit-flip channels,
//! * thermal relaxation and dephasing driven by per-qubit T1/T2 times and
//!   per-gate execution times, including idle-time accounting.
//!
//! On top of the simulator it provides discrete-time quantum-walk benchmark
//! circuits, the Hellinger distance between output distributions, and a
//! genetic-algorithm fitter that adjusts the model's noise parameters to
//! match a target distribution.
//!
//! States are dense density matrices, so memory grows as `4^n`: 12 qubits
//! (the largest walk workspace generated here) needs ~268 MB per matrix and
//! is the practical ceiling. Values are immutable from the caller's
//! perspective; operations return new states and are safe to run in
//! parallel.

pub mod calibration;
pub mod channels;
pub mod circuit;
pub mod error;
pub mod linalg;
pub mod metrics;
pub mod noise;
pub mod optimizer;
pub mod qstate;
pub mod walks;

pub use calibration::CalibrationData;
pub use channels::{ChoiMatrix, KrausChannel, ThermalParams, ThermalProbabilities};
pub use circuit::{Architecture, Circuit, Gate, GateKind, Schedule};
pub use error::{Error, Result};
pub use noise::{ControlTrc, NoiseModel, Variant};
pub use optimizer::{census, optimize, Census, GaConfig, OptimizationResult, OptimizeMode};
pub use qstate::{DensityMatrix, Distribution, ShotCounts};
pub use walks::WalkSpec;
