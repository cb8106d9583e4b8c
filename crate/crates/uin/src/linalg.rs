//! Dense complex-matrix primitives: Hermitian eigendecomposition, principal
//! matrix square root, Kronecker products, partial traces and the squared
//! Hellinger distance.
//!
//! All functions are pure and operate on [`CMatrix`] values; nothing here
//! knows about density matrices or subsystem splits.

use nalgebra::linalg::SymmetricEigen;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::tol::{HERMITIAN_TOL, PSD_CLAMP};
use crate::{Error, Result};

/// Dense complex matrix with `f64` components.
pub type CMatrix = DMatrix<Complex64>;

/// Shorthand for a complex scalar.
#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The Pauli matrices (σ_x, σ_y, σ_z).
pub fn paulis() -> [CMatrix; 3] {
    [
        CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]),
        CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]),
        CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]),
    ]
}

/// Maximum absolute deviation of `m` from its own adjoint.
pub fn hermiticity_deviation(m: &CMatrix) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in i..m.ncols() {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Tr(A·B) without forming the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let mut acc = Complex64::ZERO;
    for k in 0..a.nrows() {
        for l in 0..a.ncols() {
            acc += a[(k, l)] * b[(l, k)];
        }
    }
    acc
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    /// Real eigenvalues in ascending order.
    pub eigenvalues: DVector<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub eigenvectors: CMatrix,
}

impl HermitianEig {
    /// Rebuild U·diag(λ)·U†; used to bound decomposition error in tests.
    pub fn reconstruct(&self) -> CMatrix {
        let n = self.eigenvalues.len();
        let mut scaled = self.eigenvectors.clone();
        for j in 0..n {
            let l = Complex64::new(self.eigenvalues[j], 0.0);
            for i in 0..n {
                scaled[(i, j)] *= l;
            }
        }
        scaled * self.eigenvectors.adjoint()
    }
}

/// Decompose a Hermitian matrix into eigenvalues and eigenvectors.
///
/// Inputs within [`HERMITIAN_TOL`] of Hermitian are symmetrized as
/// (H + H†)/2 before decomposing so downstream results are deterministic.
pub fn hermitian_eig(h: &CMatrix) -> Result<HermitianEig> {
    if h.nrows() != h.ncols() {
        return Err(Error::NotSquare(h.nrows(), h.ncols()));
    }
    let dev = hermiticity_deviation(h);
    if dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian(dev));
    }
    let n = h.nrows();
    let sym = (h + h.adjoint()).scale(0.5);
    if n == 1 {
        return Ok(HermitianEig {
            eigenvalues: DVector::from_element(1, sym[(0, 0)].re),
            eigenvectors: CMatrix::identity(1, 1),
        });
    }

    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());

    let eigenvalues = DVector::from_iterator(n, order.iter().map(|&k| eig.eigenvalues[k]));
    let mut eigenvectors = CMatrix::zeros(n, n);
    for (j, &k) in order.iter().enumerate() {
        eigenvectors.set_column(j, &eig.eigenvectors.column(k));
    }
    Ok(HermitianEig {
        eigenvalues,
        eigenvectors,
    })
}

/// Principal square root of a Hermitian positive-semidefinite matrix.
///
/// Eigenvalues in [-`PSD_CLAMP`, 0) are clamped to zero; anything more
/// negative is rejected with the offending eigenvalue. Eigenvalues within
/// n·ε·λ_max of zero are also treated as exact zeros: rank-deficient inputs
/// otherwise pollute the root with √ε-sized noise on the null space.
pub fn matrix_sqrt(rho: &CMatrix) -> Result<CMatrix> {
    let eig = hermitian_eig(rho)?;
    let n = eig.eigenvalues.len();
    let lmax = eig.eigenvalues[n - 1].max(0.0);
    let zero_cutoff = n as f64 * f64::EPSILON * lmax;
    let mut roots = Vec::with_capacity(n);
    for &l in eig.eigenvalues.iter() {
        if l < -PSD_CLAMP {
            return Err(Error::NotPsd(l));
        }
        roots.push(if l <= zero_cutoff { 0.0 } else { l.sqrt() });
    }
    let u = &eig.eigenvectors;
    let mut scaled = u.clone();
    for (j, &r) in roots.iter().enumerate() {
        for i in 0..n {
            scaled[(i, j)] *= Complex64::new(r, 0.0);
        }
    }
    Ok(scaled * u.adjoint())
}

/// Kronecker product A ⊗ B.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Trace out subsystem B of a (dA·dB)×(dA·dB) matrix, leaving dA×dA.
pub fn partial_trace_b(rho: &CMatrix, da: usize, db: usize) -> Result<CMatrix> {
    check_bipartite_dims(rho, da, db)?;
    let mut out = CMatrix::zeros(da, da);
    for a in 0..da {
        for ap in 0..da {
            let mut acc = Complex64::ZERO;
            for b in 0..db {
                acc += rho[(a * db + b, ap * db + b)];
            }
            out[(a, ap)] = acc;
        }
    }
    Ok(out)
}

/// Trace out subsystem A, leaving dB×dB.
pub fn partial_trace_a(rho: &CMatrix, da: usize, db: usize) -> Result<CMatrix> {
    check_bipartite_dims(rho, da, db)?;
    let mut out = CMatrix::zeros(db, db);
    for b in 0..db {
        for bp in 0..db {
            let mut acc = Complex64::ZERO;
            for a in 0..da {
                acc += rho[(a * db + b, a * db + bp)];
            }
            out[(b, bp)] = acc;
        }
    }
    Ok(out)
}

fn check_bipartite_dims(rho: &CMatrix, da: usize, db: usize) -> Result<()> {
    if rho.nrows() != rho.ncols() {
        return Err(Error::NotSquare(rho.nrows(), rho.ncols()));
    }
    if rho.nrows() != da * db {
        return Err(Error::DimensionMismatch {
            expected: da * db,
            got: rho.nrows(),
        });
    }
    Ok(())
}

/// Squared Hellinger distance ½·Tr{(√ρ − √τ)²} between two PSD matrices.
///
/// Symmetric by construction: both orders run the identical arithmetic on
/// the entrywise difference of the two square roots.
pub fn hellinger_sq(rho: &CMatrix, tau: &CMatrix) -> Result<f64> {
    if rho.nrows() != tau.nrows() || rho.ncols() != tau.ncols() {
        return Err(Error::DimensionMismatch {
            expected: rho.nrows(),
            got: tau.nrows(),
        });
    }
    let diff = matrix_sqrt(rho)? - matrix_sqrt(tau)?;
    Ok(0.5 * diff.norm_squared())
}

/// Orthonormal traceless Hermitian basis of the d×d operator space
/// (generalized Gell-Mann matrices), Tr(Y_i Y_j) = δ_ij. Returns d²−1 items.
pub fn traceless_orthonormal_basis(d: usize) -> Vec<CMatrix> {
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut basis = Vec::with_capacity(d * d - 1);
    for j in 0..d {
        for k in (j + 1)..d {
            let mut sym = CMatrix::zeros(d, d);
            sym[(j, k)] = c(inv_sqrt2, 0.0);
            sym[(k, j)] = c(inv_sqrt2, 0.0);
            basis.push(sym);
            let mut asym = CMatrix::zeros(d, d);
            asym[(j, k)] = c(0.0, -inv_sqrt2);
            asym[(k, j)] = c(0.0, inv_sqrt2);
            basis.push(asym);
        }
    }
    for l in 1..d {
        let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
        let mut diag = CMatrix::zeros(d, d);
        for m in 0..l {
            diag[(m, m)] = c(norm, 0.0);
        }
        diag[(l, l)] = c(-(l as f64) * norm, 0.0);
        basis.push(diag);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::random_density;

    fn random_hermitian(n: usize, seed: u64) -> CMatrix {
        // Any full-rank density matrix shifted and scaled is a generic
        // Hermitian test input.
        let rho = random_density(n, n, seed).unwrap();
        rho.matrix() * c(3.0, 0.0) - CMatrix::identity(n, n)
    }

    #[test]
    fn eig_identity() {
        let eig = hermitian_eig(&CMatrix::identity(2, 2)).unwrap();
        assert!((eig.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eig_diagonal_sorted() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[c(0.75, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.25, 0.0)],
        );
        let eig = hermitian_eig(&m).unwrap();
        assert!((eig.eigenvalues[0] - 0.25).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 0.75).abs() < 1e-14);
    }

    #[test]
    fn eig_reconstruction_and_orthonormality() {
        for n in [2, 3, 4, 6, 8] {
            let h = random_hermitian(n, 100 + n as u64);
            let eig = hermitian_eig(&h).unwrap();
            assert!(
                (eig.reconstruct() - &h).norm() < 1e-10,
                "reconstruction failed at n={n}"
            );
            let gram = eig.eigenvectors.adjoint() * &eig.eigenvectors;
            assert!((gram - CMatrix::identity(n, n)).norm() < 1e-10);
            for w in eig.eigenvalues.as_slice().windows(2) {
                assert!(w[0] <= w[1]);
            }
        }
    }

    #[test]
    fn eig_rejects_non_square() {
        let m = CMatrix::zeros(2, 3);
        assert!(matches!(hermitian_eig(&m), Err(Error::NotSquare(2, 3))));
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let mut m = CMatrix::identity(2, 2);
        m[(0, 1)] = c(0.5, 0.0);
        match hermitian_eig(&m) {
            Err(Error::NotHermitian(dev)) => assert!((dev - 0.5).abs() < 1e-14),
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn sqrt_identity() {
        let s = matrix_sqrt(&CMatrix::identity(3, 3)).unwrap();
        assert!((s - CMatrix::identity(3, 3)).norm() < 1e-14);
    }

    #[test]
    fn sqrt_diagonal() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[c(0.25, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.75, 0.0)],
        );
        let s = matrix_sqrt(&m).unwrap();
        assert!((s[(0, 0)].re - 0.5).abs() < 1e-14);
        assert!((s[(1, 1)].re - 0.75f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn sqrt_squares_back() {
        for n in [2, 4, 6] {
            let rho = random_density(n, n, 7 + n as u64).unwrap();
            let s = matrix_sqrt(rho.matrix()).unwrap();
            assert!((&s * &s - rho.matrix()).norm() < 1e-9);
            assert!(hermiticity_deviation(&s) < 1e-12);
        }
    }

    #[test]
    fn sqrt_rejects_negative_eigenvalue() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[c(-0.1, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.1, 0.0)],
        );
        match matrix_sqrt(&m) {
            Err(Error::NotPsd(l)) => assert!((l + 0.1).abs() < 1e-12),
            other => panic!("expected NotPsd, got {other:?}"),
        }
    }

    #[test]
    fn sqrt_clamps_rounding_noise() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[c(-5e-11, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        );
        let s = matrix_sqrt(&m).unwrap();
        assert!(s[(0, 0)].norm() < 1e-12);
    }

    #[test]
    fn kron_pauli_z_identity() {
        let [_, _, sz] = paulis();
        let k = kron(&sz, &CMatrix::identity(2, 2));
        let expect = [1.0, 1.0, -1.0, -1.0];
        for (i, e) in expect.iter().enumerate() {
            assert_eq!(k[(i, i)].re, *e);
        }
        assert_eq!(k.norm_squared(), 4.0);
    }

    #[test]
    fn kron_identity_left() {
        let b = random_density(3, 3, 5).unwrap();
        let k = kron(&CMatrix::identity(1, 1), b.matrix());
        assert_eq!(k, *b.matrix());
    }

    #[test]
    fn kron_flips_basis_column() {
        let [sx, _, _] = paulis();
        let ket00 = CMatrix::from_row_slice(
            4,
            1,
            &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        );
        let flipped = kron(&sx, &sx) * ket00;
        assert_eq!(flipped[(3, 0)].re, 1.0);
        assert_eq!(flipped.norm_squared(), 1.0);
    }

    #[test]
    fn partial_trace_b_factors_product() {
        let ra = random_density(2, 2, 11).unwrap();
        let rb = random_density(3, 3, 12).unwrap();
        let joint = kron(ra.matrix(), rb.matrix());
        let back = partial_trace_b(&joint, 2, 3).unwrap();
        assert!((back - ra.matrix()).norm() < 1e-12);
    }

    #[test]
    fn partial_trace_a_factors_product() {
        let ra = random_density(2, 2, 13).unwrap();
        let rb = random_density(3, 3, 14).unwrap();
        let joint = kron(ra.matrix(), rb.matrix());
        let back = partial_trace_a(&joint, 2, 3).unwrap();
        assert!((back - rb.matrix()).norm() < 1e-12);
    }

    #[test]
    fn partial_traces_of_bell_are_maximally_mixed() {
        let mut bell = CMatrix::zeros(4, 4);
        for &i in &[0usize, 3] {
            for &j in &[0usize, 3] {
                bell[(i, j)] = c(0.5, 0.0);
            }
        }
        let half = CMatrix::identity(2, 2).scale(0.5);
        assert!((partial_trace_b(&bell, 2, 2).unwrap() - &half).norm() < 1e-14);
        assert!((partial_trace_a(&bell, 2, 2).unwrap() - half).norm() < 1e-14);
    }

    #[test]
    fn partial_traces_preserve_trace() {
        for seed in [1u64, 2, 3] {
            let rho = random_density(6, 6, seed).unwrap();
            let ta = partial_trace_a(rho.matrix(), 2, 3).unwrap();
            let tb = partial_trace_b(rho.matrix(), 2, 3).unwrap();
            assert!((ta.trace() - c(1.0, 0.0)).norm() < 1e-12);
            assert!((tb.trace() - c(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn partial_trace_rejects_bad_dims() {
        let rho = CMatrix::identity(4, 4);
        assert!(matches!(
            partial_trace_b(&rho, 2, 3),
            Err(Error::DimensionMismatch { expected: 6, got: 4 })
        ));
    }

    #[test]
    fn hellinger_identical_is_zero() {
        let rho = random_density(4, 4, 21).unwrap();
        assert_eq!(hellinger_sq(rho.matrix(), rho.matrix()).unwrap(), 0.0);
    }

    #[test]
    fn hellinger_orthogonal_pure_states() {
        let p0 = CMatrix::from_row_slice(
            2,
            2,
            &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        );
        let p1 = CMatrix::from_row_slice(
            2,
            2,
            &[c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        );
        assert!((hellinger_sq(&p0, &p1).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn hellinger_symmetric_bitwise() {
        let rho = random_density(4, 4, 31).unwrap();
        let tau = random_density(4, 2, 32).unwrap();
        let ab = hellinger_sq(rho.matrix(), tau.matrix()).unwrap();
        let ba = hellinger_sq(tau.matrix(), rho.matrix()).unwrap();
        assert_eq!(ab, ba);
        assert!(ab >= 0.0);
    }

    #[test]
    fn hellinger_rejects_dim_mismatch() {
        let a = CMatrix::identity(2, 2);
        let b = CMatrix::identity(3, 3);
        assert!(matches!(
            hellinger_sq(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn gell_mann_basis_is_orthonormal_traceless() {
        for d in [2usize, 3, 4] {
            let basis = traceless_orthonormal_basis(d);
            assert_eq!(basis.len(), d * d - 1);
            for (i, yi) in basis.iter().enumerate() {
                assert!(yi.trace().norm() < 1e-14);
                assert!(hermiticity_deviation(yi) < 1e-14);
                for (j, yj) in basis.iter().enumerate() {
                    let g = trace_product(yi, yj);
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((g.re - expect).abs() < 1e-13 && g.im.abs() < 1e-13);
                }
            }
        }
    }
}
