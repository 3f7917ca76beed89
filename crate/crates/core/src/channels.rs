//! The three error-group channels: depolarizing, SPAM bit-flip, and thermal
//! relaxation/dephasing, plus the Choi-matrix representation and the
//! Choi → Kraus conversion used when `T1 < T2 ≤ 2·T1`.

use crate::error::{Error, Result};
use crate::linalg::{self, re, CMat};
use crate::qstate::DensityMatrix;

/// Planck constant, J·s (CODATA).
pub const PLANCK: f64 = 6.62607015e-34;
/// Boltzmann constant, J/K (CODATA).
pub const BOLTZMANN: f64 = 1.380649e-23;
/// Default device temperature in kelvin (dilution-refrigerator scale).
pub const DEFAULT_TEMPERATURE_K: f64 = 0.015;

/// Eigen-/singular-value cutoff below which Kraus operators are dropped.
const RETENTION_CUTOFF: f64 = 1e-12;
/// Completeness tolerance for Σ K†K = I.
const CPTP_TOL: f64 = 1e-10;

/// A quantum channel in operator-sum form: a finite set of matrices
/// `{K_i}` with `Σ K_i† K_i = I`.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    arity: usize,
    ops: Vec<CMat>,
}

impl KrausChannel {
    /// Build a channel and verify the completeness relation to 1e-10.
    pub fn new(arity: usize, ops: Vec<CMat>) -> Result<Self> {
        let ch = Self::new_unchecked(arity, ops)?;
        let defect = ch.completeness_defect();
        if defect > CPTP_TOL {
            return Err(Error::NotCptp(format!(
                "completeness defect {defect:.3e} exceeds {CPTP_TOL:.0e}"
            )));
        }
        Ok(ch)
    }

    fn new_unchecked(arity: usize, ops: Vec<CMat>) -> Result<Self> {
        if ops.is_empty() {
            return Err(Error::NotCptp("channel has no operators".into()));
        }
        let dim = 1usize << arity;
        for op in &ops {
            if op.nrows() != dim || op.ncols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: op.nrows(),
                });
            }
        }
        Ok(Self { arity, ops })
    }

    pub fn identity(arity: usize) -> Self {
        Self {
            arity,
            ops: vec![linalg::identity(1 << arity)],
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn operators(&self) -> &[CMat] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Max-norm of `Σ K_i† K_i − I`.
    pub fn completeness_defect(&self) -> f64 {
        let dim = 1usize << self.arity;
        let mut sum = CMat::zeros(dim, dim);
        for k in &self.ops {
            sum += k.adjoint() * k;
        }
        linalg::max_abs_diff(&sum, &linalg::identity(dim))
    }
}

fn check_probability(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) || value.is_nan() {
        return Err(Error::InvalidProbability { name, value });
    }
    Ok(())
}

/// Symmetric depolarizing channel:
/// `{√(1−p1)·I, √(p1/3)·X, √(p1/3)·Z, √(p1/3)·Y}`.
pub fn depolarizing(p1: f64) -> Result<KrausChannel> {
    check_probability("p1", p1)?;
    let ops = vec![
        linalg::identity(2).map(|e| e * re((1.0 - p1).sqrt())),
        linalg::pauli_x().map(|e| e * re((p1 / 3.0).sqrt())),
        linalg::pauli_z().map(|e| e * re((p1 / 3.0).sqrt())),
        linalg::pauli_y().map(|e| e * re((p1 / 3.0).sqrt())),
    ];
    KrausChannel::new(1, ops)
}

/// SPAM bit-flip channel `{√(1−p2)·I, √p2·X}`. The same construction serves
/// measurement errors (p2) and state-preparation errors (p2').
pub fn spam(p2: f64) -> Result<KrausChannel> {
    check_probability("p2", p2)?;
    let ops = vec![
        linalg::identity(2).map(|e| e * re((1.0 - p2).sqrt())),
        linalg::pauli_x().map(|e| e * re(p2.sqrt())),
    ];
    KrausChannel::new(1, ops)
}

/// Weight steering a thermal reset toward the excited state:
/// `w_e = 1 / (1 + exp(2·h·f / (k_B·Θ)))`, in `[0, 0.5]`.
///
/// `theta_k = 0` returns the zero-temperature limit 0.
pub fn excitation_weight(freq_hz: f64, theta_k: f64) -> f64 {
    if theta_k <= 0.0 {
        return 0.0;
    }
    let exponent = 2.0 * PLANCK * freq_hz / (BOLTZMANN * theta_k);
    1.0 / (1.0 + exponent.exp())
}

/// Inputs of the thermal relaxation and dephasing channel for one qubit and
/// one gate application.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalParams {
    /// Relaxation time, microseconds.
    pub t1_us: f64,
    /// Dephasing time, microseconds; physically `T2 ≤ 2·T1`.
    pub t2_us: f64,
    /// Elapsed (gate) time, nanoseconds.
    pub gate_ns: f64,
    /// Device temperature, kelvin.
    pub theta_k: f64,
    /// Qubit frequency, hertz.
    pub freq_hz: f64,
}

impl ThermalParams {
    pub fn new(t1_us: f64, t2_us: f64, gate_ns: f64, theta_k: f64, freq_hz: f64) -> Result<Self> {
        if t1_us.is_nan() || t1_us <= 0.0 || t2_us.is_nan() || t2_us <= 0.0 {
            return Err(Error::InvalidThermalParams(format!(
                "T1 and T2 must be positive, got T1 = {t1_us} us, T2 = {t2_us} us"
            )));
        }
        if t2_us > 2.0 * t1_us {
            return Err(Error::InvalidThermalParams(format!(
                "T2 = {t2_us} us exceeds 2*T1 = {} us; the physical constraint is T2 <= 2*T1",
                2.0 * t1_us
            )));
        }
        if gate_ns.is_nan() || gate_ns < 0.0 {
            return Err(Error::InvalidThermalParams(format!(
                "gate time must be non-negative, got {gate_ns} ns"
            )));
        }
        if theta_k.is_nan() || theta_k < 0.0 {
            return Err(Error::InvalidThermalParams(format!(
                "temperature must be non-negative, got {theta_k} K"
            )));
        }
        Ok(Self {
            t1_us,
            t2_us,
            gate_ns,
            theta_k,
            freq_hz,
        })
    }

    pub fn with_gate_ns(mut self, gate_ns: f64) -> Self {
        self.gate_ns = gate_ns;
        self
    }
}

/// Probabilities characterizing the thermal channel over one time step.
///
/// `phase_flip` follows `(1 − p_reset)(1 − p_T2/p_T1)/2` and is only a valid
/// probability in the mixed-unital regime `T2 ≤ T1`; for `T1 < T2 ≤ 2·T1` it
/// is negative and the channel must be built from the Choi matrix instead.
/// The four event probabilities always sum to 1 exactly because `identity`
/// is computed as the complement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalProbabilities {
    /// Probability that nothing happens.
    pub identity: f64,
    /// Phase-flip (Z) probability.
    pub phase_flip: f64,
    /// Probability of a reset to |0⟩.
    pub reset_to_ground: f64,
    /// Probability of a reset to |1⟩ (thermal excitation).
    pub reset_to_excited: f64,
    /// Survival probability exp(−t/T1).
    pub t1_survival: f64,
    /// Survival probability exp(−t/T2).
    pub t2_survival: f64,
    /// Excitation weight w_e at the given frequency and temperature.
    pub excitation: f64,
}

/// Derive the per-step thermal probabilities from times and temperature.
pub fn thermal_probabilities(tp: &ThermalParams) -> ThermalProbabilities {
    let t_ns_t1 = tp.gate_ns / (tp.t1_us * 1e3);
    let t_ns_t2 = tp.gate_ns / (tp.t2_us * 1e3);
    let t1_survival = (-t_ns_t1).exp();
    let t2_survival = (-t_ns_t2).exp();
    let reset = 1.0 - t1_survival;
    let w_e = excitation_weight(tp.freq_hz, tp.theta_k);
    let reset_to_excited = w_e * reset;
    let reset_to_ground = (1.0 - w_e) * reset;
    let phase_flip = (1.0 - reset) * (1.0 - t2_survival / t1_survival) / 2.0;
    let identity = 1.0 - phase_flip - reset_to_ground - reset_to_excited;
    ThermalProbabilities {
        identity,
        phase_flip,
        reset_to_ground,
        reset_to_excited,
        t1_survival,
        t2_survival,
        excitation: w_e,
    }
}

/// Thermal relaxation and dephasing channel for one qubit over one step.
///
/// For `T2 ≤ T1` the channel is a mixed reset and unital channel built
/// directly in operator-sum form. The bare reset projector `√p·|0⟩⟨0|` does
/// not close the completeness sum on its own, so each reset branch carries
/// its amplitude-damping partner (`√p·|0⟩⟨1|`, and `√p·|1⟩⟨0|` for resets to
/// the excited state); the event probabilities are unchanged.
///
/// For `T1 < T2 ≤ 2·T1` the phase-flip probability becomes negative and the
/// channel is instead constructed from its Choi matrix and converted back to
/// operator-sum form.
pub fn thermal(tp: &ThermalParams) -> Result<KrausChannel> {
    // validate via the constructor invariants
    let tp = ThermalParams::new(tp.t1_us, tp.t2_us, tp.gate_ns, tp.theta_k, tp.freq_hz)?;
    if tp.t2_us <= tp.t1_us {
        let p = thermal_probabilities(&tp);
        let mut ops = Vec::with_capacity(6);
        if p.identity > 0.0 {
            ops.push(linalg::identity(2).map(|e| e * re(p.identity.sqrt())));
        }
        if p.phase_flip > 0.0 {
            ops.push(linalg::pauli_z().map(|e| e * re(p.phase_flip.sqrt())));
        }
        if p.reset_to_ground > 0.0 {
            let a = re(p.reset_to_ground.sqrt());
            ops.push(linalg::ket0_bra0().map(|e| e * a));
            ops.push(linalg::ket0_bra1().map(|e| e * a));
        }
        if p.reset_to_excited > 0.0 {
            let a = re(p.reset_to_excited.sqrt());
            ops.push(linalg::ket1_bra1().map(|e| e * a));
            ops.push(linalg::ket1_bra0().map(|e| e * a));
        }
        KrausChannel::new(1, ops)
    } else {
        choi_to_kraus(&ChoiMatrix::thermal(&tp))
    }
}

/// Choi matrix of a single-qubit channel, indexed so that
/// `C[2i + m, 2j + n] = E(|i⟩⟨j|)[m, n]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiMatrix {
    mat: CMat,
}

impl ChoiMatrix {
    pub fn new(mat: CMat) -> Result<Self> {
        if mat.nrows() != 4 || mat.ncols() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                got: mat.nrows(),
            });
        }
        Ok(Self { mat })
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    /// Choi matrix of the identity channel.
    pub fn identity() -> Self {
        let mut mat = CMat::zeros(4, 4);
        mat[(0, 0)] = linalg::ONE;
        mat[(0, 3)] = linalg::ONE;
        mat[(3, 0)] = linalg::ONE;
        mat[(3, 3)] = linalg::ONE;
        Self { mat }
    }

    /// Choi matrix of the thermal channel. At zero temperature this is
    ///
    /// ```text
    /// ( 1       0  0        p_T2       )
    /// ( 0       0  0        0          )
    /// ( 0       0  p_reset  0          )
    /// ( p_T2    0  0        1−p_reset  )
    /// ```
    ///
    /// and for Θ > 0 the diagonal populations split between the ground- and
    /// excited-state resets according to the excitation weight.
    pub fn thermal(tp: &ThermalParams) -> Self {
        let p = thermal_probabilities(tp);
        let reset = p.reset_to_ground + p.reset_to_excited;
        let w = p.excitation;
        let mut mat = CMat::zeros(4, 4);
        mat[(0, 0)] = re(1.0 - w * reset);
        mat[(1, 1)] = re(w * reset);
        mat[(2, 2)] = re((1.0 - w) * reset);
        mat[(3, 3)] = re(1.0 - (1.0 - w) * reset);
        mat[(0, 3)] = re(p.t2_survival);
        mat[(3, 0)] = re(p.t2_survival);
        Self { mat }
    }

    /// Trace over the input copy: the residue must be I for a
    /// trace-preserving channel. Returns the max-norm deviation.
    pub fn trace_preservation_defect(&self) -> f64 {
        // tr_out over the channel output: T[i, j] = Σ_m C[2i+m, 2j+m]
        let mut t = CMat::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                for m in 0..2 {
                    t[(i, j)] += self.mat[(2 * i + m, 2 * j + m)];
                }
            }
        }
        linalg::max_abs_diff(&t, &linalg::identity(2))
    }
}

/// Evolve a single-qubit state with a Choi matrix: `ρ ↦ tr₁[C(ρᵀ ⊗ I)]`,
/// where tr₁ traces out the input copy.
pub fn apply_choi(rho: &DensityMatrix, choi: &ChoiMatrix) -> Result<DensityMatrix> {
    if rho.n_qubits() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: rho.dim(),
        });
    }
    let c = choi.matrix();
    let r = rho.matrix();
    let mut out = CMat::zeros(2, 2);
    for m in 0..2 {
        for n in 0..2 {
            let mut acc = linalg::ZERO;
            for i in 0..2 {
                for k in 0..2 {
                    acc += c[(2 * i + m, 2 * k + n)] * r[(i, k)];
                }
            }
            out[(m, n)] = acc;
        }
    }
    DensityMatrix::from_matrix(1, out)
}

/// Reshape a length-4 vector column-major into the 2×2 operator it encodes:
/// `K[m, i] = v[2i + m]`.
fn unvec(v: &nalgebra::DVectorView<linalg::C64>) -> CMat {
    CMat::from_column_slice(2, 2, &[v[0], v[1], v[2], v[3]])
}

/// Convert a Choi matrix to operator-sum form.
///
/// A Hermitian Choi with eigenvalues ≥ −1e-10 yields `K_λ = √λ·Φ(v_λ)` via
/// the spectral theorem. Otherwise an SVD is taken and the left/right
/// operators `√σ·Φ(u)` and `√σ·Φ(v)` must agree; a mismatch on any retained
/// singular value means the map is not CPTP and is reported as an error.
/// Components with eigenvalue or singular value ≤ 1e-12 are dropped.
pub fn choi_to_kraus(choi: &ChoiMatrix) -> Result<KrausChannel> {
    let c = choi.matrix();
    if linalg::is_hermitian(c, 1e-10) {
        let (vals, vecs) = linalg::eigh(c);
        if vals.iter().all(|&l| l >= -1e-10) {
            let mut ops = Vec::new();
            for (idx, &l) in vals.iter().enumerate() {
                if l > RETENTION_CUTOFF {
                    let col = vecs.column(idx);
                    ops.push(unvec(&col.as_view()).map(|e| e * re(l.sqrt())));
                }
            }
            return KrausChannel::new(1, ops);
        }
    }
    // SVD path for non-Hermitian matrices or negative spectra
    let (u, sigma, v) = linalg::svd(c);
    let mut ops = Vec::new();
    for (idx, &s) in sigma.iter().enumerate() {
        if s <= RETENTION_CUTOFF {
            continue;
        }
        let ui = u.column(idx);
        let vi = v.column(idx);
        let mismatch = ui
            .iter()
            .zip(vi.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if mismatch > 1e-7 {
            return Err(Error::NotCptp(format!(
                "left/right singular vectors differ (σ = {s:.3e}, mismatch {mismatch:.3e})"
            )));
        }
        ops.push(unvec(&ui.as_view()).map(|e| e * re(s.sqrt())));
    }
    KrausChannel::new(1, ops)
}
