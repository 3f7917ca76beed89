//! Density matrices, local operator application, measurement marginals and
//! shot sampling.

use rand::distr::weighted::WeightedIndex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::channels::KrausChannel;
use crate::error::{Error, Result};
use crate::linalg::{self, CMat, C64};

/// Dense density matrix over `n` qubits (a `2^n × 2^n` Hermitian PSD matrix
/// with unit trace). Qubit 0 is the least-significant bit of basis indices.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    mat: CMat,
}

impl DensityMatrix {
    /// The pure computational-basis state |basis_index⟩⟨basis_index|.
    pub fn pure_state(n_qubits: usize, basis_index: usize) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if basis_index >= dim {
            return Err(Error::IndexOutOfRange {
                index: basis_index,
                n_qubits,
            });
        }
        let mut mat = CMat::zeros(dim, dim);
        mat[(basis_index, basis_index)] = linalg::ONE;
        Ok(Self { n_qubits, mat })
    }

    /// Wrap an existing matrix. Only the dimension is checked; use
    /// [`DensityMatrix::validate`] to assert the physical invariants.
    pub fn from_matrix(n_qubits: usize, mat: CMat) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if mat.nrows() != dim || mat.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: mat.nrows(),
            });
        }
        Ok(Self { n_qubits, mat })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1usize << self.n_qubits
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    pub fn trace(&self) -> C64 {
        self.mat.diagonal().iter().sum()
    }

    /// tr(ρ²); 1 for pure states.
    pub fn purity(&self) -> f64 {
        self.mat.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Check Hermiticity (1e-10), unit trace (1e-10) and positive
    /// semidefiniteness (smallest eigenvalue ≥ -1e-9).
    pub fn validate(&self) -> Result<()> {
        let herm = linalg::max_abs_diff(&self.mat, &self.mat.adjoint());
        if herm > 1e-10 {
            return Err(Error::InvalidDistribution(format!(
                "density matrix not Hermitian: deviation {herm:.3e}"
            )));
        }
        let tr = self.trace();
        if (tr - linalg::ONE).norm() > 1e-10 {
            return Err(Error::InvalidDistribution(format!(
                "density matrix trace {tr} differs from 1"
            )));
        }
        let min = linalg::min_eigenvalue(&self.mat);
        if min < -1e-9 {
            return Err(Error::InvalidDistribution(format!(
                "density matrix has negative eigenvalue {min:.3e}"
            )));
        }
        Ok(())
    }

    fn check_targets(&self, targets: &[usize]) -> Result<()> {
        for (i, &q) in targets.iter().enumerate() {
            if q >= self.n_qubits {
                return Err(Error::QubitOutOfRange {
                    qubit: q,
                    n_qubits: self.n_qubits,
                });
            }
            if targets[i + 1..].contains(&q) {
                return Err(Error::RepeatedQubit(q));
            }
        }
        Ok(())
    }

    /// ρ ↦ Ũ ρ Ũ† where `u` acts on `targets` (bit k of `u`'s index space is
    /// `targets[k]`).
    pub fn apply_unitary(&self, u: &CMat, targets: &[usize]) -> Result<Self> {
        self.check_targets(targets)?;
        let d = 1usize << targets.len();
        if u.nrows() != d || u.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: u.nrows(),
            });
        }
        let ops = std::slice::from_ref(u);
        let mat = linalg::apply_local_ops(&self.mat, ops, targets, self.n_qubits);
        Ok(Self {
            n_qubits: self.n_qubits,
            mat,
        })
    }

    /// ρ ↦ Σᵢ K̃ᵢ ρ K̃ᵢ† for a CPTP channel acting on `targets`.
    pub fn apply_kraus(&self, channel: &KrausChannel, targets: &[usize]) -> Result<Self> {
        self.check_targets(targets)?;
        if channel.arity() != targets.len() {
            return Err(Error::DimensionMismatch {
                expected: channel.arity(),
                got: targets.len(),
            });
        }
        let mat = linalg::apply_local_ops(&self.mat, channel.operators(), targets, self.n_qubits);
        Ok(Self {
            n_qubits: self.n_qubits,
            mat,
        })
    }

    /// Diagonal marginal over the measured qubits. Outcome bit k is the value
    /// of `measured[k]`.
    pub fn measure_distribution(&self, measured: &[usize]) -> Result<Distribution> {
        if measured.is_empty() {
            return Err(Error::EmptyMeasurement);
        }
        self.check_targets(measured)?;
        let mut probs = vec![0.0f64; 1usize << measured.len()];
        for i in 0..self.dim() {
            let outcome = linalg::extract_bits(i, measured);
            // clamp tiny negative diagonal noise
            probs[outcome] += self.mat[(i, i)].re.max(0.0);
        }
        Distribution::new(probs)
    }

    /// Partial trace keeping only `keep` (bit k of the reduced space is
    /// `keep[k]`).
    pub fn reduced(&self, keep: &[usize]) -> Result<CMat> {
        if keep.is_empty() {
            return Err(Error::EmptyMeasurement);
        }
        self.check_targets(keep)?;
        let kd = 1usize << keep.len();
        let mask = linalg::target_mask(keep);
        let mut out = CMat::zeros(kd, kd);
        let dim = self.dim();
        for i in 0..dim {
            let li = linalg::extract_bits(i, keep);
            let rest_i = i & !mask;
            for lj in 0..kd {
                let j = rest_i | linalg::spread_bits(lj, keep);
                out[(li, lj)] += self.mat[(i, j)];
            }
        }
        Ok(out)
    }
}

/// Probability mass over computational-basis outcomes `0..len`.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    /// Build from raw probabilities; must be non-negative (up to numerical
    /// noise) and sum to 1 within 1e-9.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("no outcomes".into()));
        }
        let mut clean = probs;
        for p in &mut clean {
            if *p < -1e-9 || *p > 1.0 + 1e-9 {
                return Err(Error::InvalidDistribution(format!(
                    "probability {p} outside [0, 1]"
                )));
            }
            *p = p.clamp(0.0, 1.0);
        }
        let sum: f64 = clean.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {sum}, not 1"
            )));
        }
        Ok(Self { probs: clean })
    }

    pub fn uniform(n_outcomes: usize) -> Result<Self> {
        if n_outcomes == 0 {
            return Err(Error::InvalidDistribution("no outcomes".into()));
        }
        Ok(Self {
            probs: vec![1.0 / n_outcomes as f64; n_outcomes],
        })
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, outcome: usize) -> f64 {
        self.probs.get(outcome).copied().unwrap_or(0.0)
    }

    /// Reproducible multinomial sample: `shots` independent draws with a
    /// ChaCha stream seeded from `seed`.
    pub fn sample(&self, shots: u64, seed: u64) -> Result<ShotCounts> {
        if shots == 0 {
            return Err(Error::ZeroShots);
        }
        let weights = WeightedIndex::new(self.probs.iter().copied())
            .map_err(|e| Error::InvalidDistribution(e.to_string()))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts = vec![0u64; self.probs.len()];
        for _ in 0..shots {
            counts[rng.sample(&weights)] += 1;
        }
        Ok(ShotCounts::new(counts))
    }
}

/// Outcome counts from repeated shot sampling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShotCounts {
    counts: Vec<u64>,
}

impl ShotCounts {
    pub fn new(counts: Vec<u64>) -> Self {
        Self { counts }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total_shots(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}
