//! Skew-information correlation measures and the closed forms that make
//! them computable on 2⊗d states.
//!
//! The skew information of a state and an observable is evaluated through
//! the defining commutator, I(ρ, K) = ½‖[√ρ, K]‖²_F, which is manifestly
//! nonnegative. For direction observables K = (n·σ)⊗I it collapses to the
//! quadratic form 1 − n·W·nᵀ on the unit sphere, so each measure reduces to
//! eigenvalues of the 3×3 W matrix, or to its value along the Bloch vector
//! when the commutation constraint pins the direction.

use std::fmt;

use nalgebra::{Matrix3, Vector3};

use crate::linalg::{
    kron, matrix_sqrt, paulis, trace_product, traceless_orthonormal_basis, CMatrix,
};
use crate::state::{bloch_vector_a, BipartiteState};
use crate::tol::{R_ZERO_THRESHOLD, VALUE_CLAMP};
use crate::{Error, Result};

/// Which formula produced a measure value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Degenerate marginal: value is 1 − λ_min(W).
    RZero,
    /// Nondegenerate marginal: value is the quadratic form along r.
    RNonzero,
    /// Pure-state shortcut 2(1 − Tr ρ_a²).
    PureShortcut,
    /// The measure does not branch on the Bloch vector.
    NotApplicable,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Branch::RZero => "r-zero",
            Branch::RNonzero => "r-nonzero",
            Branch::PureShortcut => "pure-shortcut",
            Branch::NotApplicable => "not-applicable",
        };
        f.write_str(s)
    }
}

/// A measure value in [0, 1] plus the branch that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureValue {
    pub value: f64,
    pub branch: Branch,
}

/// Clamp values that rounding pushed just outside [0, 1]; anything further
/// out is a bug in the caller's arithmetic and surfaces as an error.
fn clamp_unit(v: f64) -> Result<f64> {
    if !(-VALUE_CLAMP..=1.0 + VALUE_CLAMP).contains(&v) {
        return Err(Error::ValueOutOfRange(v));
    }
    Ok(v.clamp(0.0, 1.0))
}

/// A Hermitian observable on the full bipartite space, remembering the Bloch
/// direction when it has the form (n·σ) ⊗ I_b.
#[derive(Debug, Clone)]
pub struct Observable {
    matrix: CMatrix,
    direction: Option<Vector3<f64>>,
}

impl Observable {
    /// Wrap an explicit Hermitian matrix.
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::NotSquare(matrix.nrows(), matrix.ncols()));
        }
        let dev = crate::linalg::hermiticity_deviation(&matrix);
        if dev > crate::tol::HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        Ok(Self {
            matrix,
            direction: None,
        })
    }

    /// Build (n̂·σ) ⊗ I_db from a direction; `n` is normalized internally.
    pub fn from_direction(n: Vector3<f64>, db: usize) -> Result<Self> {
        let norm = n.norm();
        if norm == 0.0 {
            return Err(Error::ZeroDirection);
        }
        let unit = n / norm;
        let [sx, sy, sz] = paulis();
        let pointer = sx.scale(unit.x) + sy.scale(unit.y) + sz.scale(unit.z);
        let matrix = kron(&pointer, &CMatrix::identity(db, db));
        Ok(Self {
            matrix,
            direction: Some(unit),
        })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn direction(&self) -> Option<Vector3<f64>> {
        self.direction
    }
}

/// Wigner–Yanase skew information I(ρ, K) = −½ Tr [√ρ, K]².
pub fn skew_information(state: &BipartiteState, observable: &Observable) -> Result<f64> {
    if observable.matrix().nrows() != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: state.dim(),
            got: observable.matrix().nrows(),
        });
    }
    let sqrt_rho = matrix_sqrt(state.matrix())?;
    Ok(skew_information_with_sqrt(&sqrt_rho, observable.matrix()))
}

/// Commutator-norm form of the skew information, for callers that reuse √ρ.
pub(crate) fn skew_information_with_sqrt(sqrt_rho: &CMatrix, k: &CMatrix) -> f64 {
    let commutator = sqrt_rho * k - k * sqrt_rho;
    0.5 * commutator.norm_squared()
}

/// The 3×3 Gram-type matrix W_ij = Tr{√ρ (σ_i⊗I) √ρ (σ_j⊗I)}.
///
/// Symmetric by construction (entries are computed once for i ≤ j and
/// mirrored) with eigenvalues in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WMatrix {
    m: Matrix3<f64>,
}

impl WMatrix {
    pub fn as_matrix(&self) -> &Matrix3<f64> {
        &self.m
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 3] {
        let eig = self.m.symmetric_eigen();
        let mut vals = [eig.eigenvalues[0], eig.eigenvalues[1], eig.eigenvalues[2]];
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        vals
    }

    /// n·W·nᵀ for a unit direction n.
    pub fn quadratic_form(&self, n: &Vector3<f64>) -> f64 {
        (n.transpose() * self.m * n)[(0, 0)]
    }
}

/// Compute W for a 2⊗d state.
pub fn w_matrix(state: &BipartiteState) -> Result<WMatrix> {
    if state.da() != 2 {
        return Err(Error::SubsystemANotQubit(state.da()));
    }
    let sqrt_rho = matrix_sqrt(state.matrix())?;
    let eye_b = CMatrix::identity(state.db(), state.db());
    let lifted: Vec<CMatrix> = paulis()
        .iter()
        .map(|s| &sqrt_rho * kron(s, &eye_b))
        .collect();
    let mut m = Matrix3::zeros();
    for i in 0..3 {
        for j in i..3 {
            let w = trace_product(&lifted[i], &lifted[j]).re;
            m[(i, j)] = w;
            m[(j, i)] = w;
        }
    }
    Ok(WMatrix { m })
}

/// Local quantum uncertainty: the minimum skew information over direction
/// observables, 1 − λ_max(W).
pub fn lqu(state: &BipartiteState) -> Result<MeasureValue> {
    let w = w_matrix(state)?;
    let value = clamp_unit(1.0 - w.eigenvalues()[2])?;
    Ok(MeasureValue {
        value,
        branch: Branch::NotApplicable,
    })
}

/// Uncertainty-induced nonlocality: the maximum skew information over
/// direction observables commuting with the reduced state of A.
///
/// A nondegenerate marginal pins the direction to ±r̂, giving
/// 1 − r·W·rᵀ/|r|²; a degenerate marginal (|r| ≤ threshold) leaves the
/// direction free, giving 1 − λ_min(W).
pub fn uin(state: &BipartiteState) -> Result<MeasureValue> {
    let r = bloch_vector_a(state)?;
    let w = w_matrix(state)?;
    if r.norm() <= R_ZERO_THRESHOLD {
        let value = clamp_unit(1.0 - w.eigenvalues()[0])?;
        Ok(MeasureValue {
            value,
            branch: Branch::RZero,
        })
    } else {
        let unit = r.vector() / r.norm();
        let value = clamp_unit(1.0 - w.quadratic_form(&unit))?;
        Ok(MeasureValue {
            value,
            branch: Branch::RNonzero,
        })
    }
}

/// Pure-state shortcut for UIN: 2(1 − Tr ρ_a²).
pub fn uin_pure(state: &BipartiteState) -> Result<MeasureValue> {
    let purity = state.density().purity();
    if (purity - 1.0).abs() > crate::tol::PURITY_TOL {
        return Err(Error::NotPure(purity));
    }
    if state.da() != 2 {
        return Err(Error::SubsystemANotQubit(state.da()));
    }
    let marginal_purity = state.reduced_a().norm_squared();
    let value = clamp_unit(2.0 * (1.0 - marginal_purity))?;
    Ok(MeasureValue {
        value,
        branch: Branch::PureShortcut,
    })
}

/// Maximal uncertainty-induced nonlocality: the unconstrained maximum of
/// the skew information over direction observables, 1 − λ_min(W).
pub fn muin(state: &BipartiteState) -> Result<MeasureValue> {
    let w = w_matrix(state)?;
    let value = clamp_unit(1.0 - w.eigenvalues()[0])?;
    Ok(MeasureValue {
        value,
        branch: Branch::NotApplicable,
    })
}

/// Correlation matrix T of the Bloch decomposition in the orthonormal local
/// bases {σ_i/√2} on A and the generalized Gell-Mann basis on B;
/// 3 × (d_b²−1).
fn correlation_t(state: &BipartiteState) -> nalgebra::DMatrix<f64> {
    let db = state.db();
    let basis_b = traceless_orthonormal_basis(db);
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut t = nalgebra::DMatrix::zeros(3, basis_b.len());
    for (i, sigma) in paulis().iter().enumerate() {
        let half = sigma.scale(inv_sqrt2);
        for (j, y) in basis_b.iter().enumerate() {
            t[(i, j)] = trace_product(state.matrix(), &kron(&half, y)).re;
        }
    }
    t
}

/// Hilbert–Schmidt measurement-induced nonlocality: the maximal squared
/// Hilbert–Schmidt disturbance by a local projective measurement on A that
/// preserves ρ_a.
///
/// Closed form on the correlation matrix T: Tr(TTᵀ) − r·TTᵀ·rᵀ/|r|² when the
/// marginal is nondegenerate, Tr(TTᵀ) − λ_min(TTᵀ) when r = 0.
pub fn min_hs(state: &BipartiteState) -> Result<MeasureValue> {
    let r = bloch_vector_a(state)?;
    let t = correlation_t(state);
    let tt3 = &t * t.transpose();
    let tt = Matrix3::from_fn(|i, j| tt3[(i, j)]);
    if r.norm() <= R_ZERO_THRESHOLD {
        let eig = WMatrix { m: tt }.eigenvalues();
        let value = clamp_unit(tt.trace() - eig[0])?;
        Ok(MeasureValue {
            value,
            branch: Branch::RZero,
        })
    } else {
        let unit = r.vector() / r.norm();
        let along = (unit.transpose() * tt * unit)[(0, 0)];
        let value = clamp_unit(tt.trace() - along)?;
        Ok(MeasureValue {
            value,
            branch: Branch::RNonzero,
        })
    }
}
