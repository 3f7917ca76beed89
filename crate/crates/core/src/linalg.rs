//! Dense complex linear algebra shared by the state and channel code.
//!
//! Qubit 0 is the least-significant bit of basis-state indices everywhere in
//! this crate. An operator acting on the low bits of an index therefore sits
//! on the *right* side of a Kronecker product: `kron(I_high, M)`.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

pub fn identity(dim: usize) -> CMat {
    CMat::identity(dim, dim)
}

pub fn pauli_x() -> CMat {
    CMat::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO])
}

pub fn pauli_y() -> CMat {
    CMat::from_row_slice(2, 2, &[ZERO, C64::new(0.0, -1.0), C64::new(0.0, 1.0), ZERO])
}

pub fn pauli_z() -> CMat {
    CMat::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE])
}

pub fn hadamard() -> CMat {
    let s = re(std::f64::consts::FRAC_1_SQRT_2);
    CMat::from_row_slice(2, 2, &[s, s, s, -s])
}

/// |0⟩⟨0| projector.
pub fn ket0_bra0() -> CMat {
    CMat::from_row_slice(2, 2, &[ONE, ZERO, ZERO, ZERO])
}

/// |0⟩⟨1| lowering operator.
pub fn ket0_bra1() -> CMat {
    CMat::from_row_slice(2, 2, &[ZERO, ONE, ZERO, ZERO])
}

/// |1⟩⟨1| projector.
pub fn ket1_bra1() -> CMat {
    CMat::from_row_slice(2, 2, &[ZERO, ZERO, ZERO, ONE])
}

/// |1⟩⟨0| raising operator.
pub fn ket1_bra0() -> CMat {
    CMat::from_row_slice(2, 2, &[ZERO, ZERO, ONE, ZERO])
}

/// CNOT on the local ordering (bit 0 = control, bit 1 = target).
pub fn cnot() -> CMat {
    let mut m = CMat::zeros(4, 4);
    // |c t⟩ indexed as c + 2t; flip t when c = 1
    m[(0, 0)] = ONE;
    m[(3, 1)] = ONE;
    m[(2, 2)] = ONE;
    m[(1, 3)] = ONE;
    m
}

/// Toffoli on the local ordering (bits 0, 1 = controls, bit 2 = target).
pub fn ccx() -> CMat {
    let mut m = CMat::identity(8, 8);
    m[(3, 3)] = ZERO;
    m[(7, 7)] = ZERO;
    m[(7, 3)] = ONE;
    m[(3, 7)] = ONE;
    m
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Largest absolute entry of `m`.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest absolute entrywise difference between two matrices.
pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    debug_assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn is_hermitian(m: &CMat, tol: f64) -> bool {
    max_abs_diff(m, &m.adjoint()) <= tol
}

/// Eigendecomposition of a Hermitian matrix: real eigenvalues plus the
/// unitary of eigenvectors (columns).
pub fn eigh(m: &CMat) -> (Vec<f64>, CMat) {
    let se = nalgebra::linalg::SymmetricEigen::new(m.clone());
    (se.eigenvalues.iter().copied().collect(), se.eigenvectors)
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(m: &CMat) -> f64 {
    let (vals, _) = eigh(m);
    vals.into_iter().fold(f64::INFINITY, f64::min)
}

/// Singular value decomposition `m = U Σ V†`; returns `(U, σ, V)` with the
/// singular vectors as columns, so that `m v_i = σ_i u_i`.
pub fn svd(m: &CMat) -> (CMat, Vec<f64>, CMat) {
    let svd = nalgebra::linalg::SVD::new(m.clone(), true, true);
    let u = svd.u.expect("U requested");
    let v_t = svd.v_t.expect("V^t requested");
    let sigma: Vec<f64> = svd.singular_values.iter().copied().collect();
    (u, sigma, v_t.adjoint())
}

/// Extract the local index of `full` on the given target bit positions
/// (bit k of the result is bit `targets[k]` of `full`).
#[inline]
pub fn extract_bits(full: usize, targets: &[usize]) -> usize {
    let mut local = 0usize;
    for (k, &t) in targets.iter().enumerate() {
        local |= ((full >> t) & 1) << k;
    }
    local
}

/// Mask with a 1 at every target bit position.
#[inline]
pub fn target_mask(targets: &[usize]) -> usize {
    targets.iter().fold(0usize, |m, &t| m | (1 << t))
}

/// Spread the bits of a local index onto the target bit positions.
#[inline]
pub fn spread_bits(local: usize, targets: &[usize]) -> usize {
    let mut full = 0usize;
    for (k, &t) in targets.iter().enumerate() {
        full |= ((local >> k) & 1) << t;
    }
    full
}

/// Compute `Σ_i K̃_i ρ K̃_i†` where each `K_i` acts on the `targets` subset of
/// an `n`-qubit register and `K̃_i` is its embedding into the full space.
///
/// Index arithmetic only; no embedded operator is materialized. Cost is
/// `O(k · 4^n · 2^t)` for `k` operators on `t` targets.
pub fn apply_local_ops(rho: &CMat, ops: &[CMat], targets: &[usize], n_qubits: usize) -> CMat {
    let dim = 1usize << n_qubits;
    debug_assert_eq!(rho.nrows(), dim);
    let t = targets.len();
    let d = 1usize << t;
    let mask = target_mask(targets);
    let spread: Vec<usize> = (0..d).map(|a| spread_bits(a, targets)).collect();

    let mut out = CMat::zeros(dim, dim);
    let mut m1 = CMat::zeros(dim, dim);
    for k in ops {
        debug_assert_eq!(k.nrows(), d);
        // m1 = ρ K̃†  (column j of m1 gathers columns of ρ)
        m1.fill(ZERO);
        for j in 0..dim {
            let loc_j = extract_bits(j, targets);
            let base_j = j & !mask;
            for b in 0..d {
                let w = k[(loc_j, b)].conj();
                if w == ZERO {
                    continue;
                }
                let src = base_j | spread[b];
                for i in 0..dim {
                    m1[(i, j)] += rho[(i, src)] * w;
                }
            }
        }
        // out += K̃ m1  (row gather, written column by column)
        for j in 0..dim {
            for i in 0..dim {
                let loc_i = extract_bits(i, targets);
                let base_i = i & !mask;
                let mut acc = ZERO;
                for a in 0..d {
                    let w = k[(loc_i, a)];
                    if w == ZERO {
                        continue;
                    }
                    acc += w * m1[(base_i | spread[a], j)];
                }
                out[(i, j)] += acc;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_algebra() {
        let x = pauli_x();
        let y = pauli_y();
        let z = pauli_z();
        // XY = iZ
        let xy = &x * &y;
        let iz = z.map(|e| e * C64::new(0.0, 1.0));
        assert!(max_abs_diff(&xy, &iz) < 1e-15);
        assert!(max_abs_diff(&(&x * &x), &identity(2)) < 1e-15);
    }

    #[test]
    fn hadamard_is_unitary() {
        let h = hadamard();
        assert!(max_abs_diff(&(h.adjoint() * &h), &identity(2)) < 1e-15);
    }

    #[test]
    fn bit_gymnastics_round_trip() {
        let targets = [1usize, 3];
        for full in 0..16 {
            let loc = extract_bits(full, &targets);
            let rebuilt = (full & !target_mask(&targets)) | spread_bits(loc, &targets);
            assert_eq!(rebuilt, full);
        }
    }

    #[test]
    fn svd_reconstructs_and_pairs_vectors() {
        // Fix the U Σ V† convention for complex matrices once and for all.
        let m = CMat::from_row_slice(
            2,
            2,
            &[
                C64::new(0.3, 0.1),
                C64::new(-0.2, 0.7),
                C64::new(1.1, -0.4),
                C64::new(0.0, 0.9),
            ],
        );
        let (u, sigma, v) = svd(&m);
        let mut rec = CMat::zeros(2, 2);
        for (i, &s) in sigma.iter().enumerate() {
            let ui = u.column(i);
            let vi = v.column(i);
            for r in 0..2 {
                for c in 0..2 {
                    rec[(r, c)] += re(s) * ui[r] * vi[c].conj();
                }
            }
        }
        assert!(max_abs_diff(&rec, &m) < 1e-12);
        // m v_i = σ_i u_i
        for (i, &s) in sigma.iter().enumerate() {
            let lhs = &m * v.column(i);
            let rhs = u.column(i).map(|e| e * re(s));
            assert!((lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-12);
        }
    }

    #[test]
    fn eigh_of_pauli_z() {
        let (vals, vecs) = eigh(&pauli_z());
        let mut sorted = vals.clone();
        sorted.sort_by(f64::total_cmp);
        assert!((sorted[0] + 1.0).abs() < 1e-14);
        assert!((sorted[1] - 1.0).abs() < 1e-14);
        // eigenvectors unitary
        assert!(max_abs_diff(&(vecs.adjoint() * &vecs), &identity(2)) < 1e-12);
    }
}
