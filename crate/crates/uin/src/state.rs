//! Bipartite density matrices: validation, reference states, seeded random
//! ensembles and Bloch-vector extraction.
//!
//! All generators take explicit seeds and are bit-reproducible for a fixed
//! seed; nothing draws from ambient randomness.

use nalgebra::Vector3;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{
    c, hermitian_eig, hermiticity_deviation, kron, partial_trace_a, partial_trace_b, paulis,
    trace_product, CMatrix,
};
use crate::tol::{BLOCH_NORM_TOL, HERMITIAN_TOL, TRACE_TOL};
use crate::{Error, Result};

/// A validated density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
    dim: usize,
}

impl DensityMatrix {
    /// Validate a candidate matrix. Rejects rather than repairs: a trace off
    /// by more than [`TRACE_TOL`] is an error, never renormalized.
    pub fn validate(matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::NotSquare(matrix.nrows(), matrix.ncols()));
        }
        let dev = hermiticity_deviation(&matrix);
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::BadTrace(tr.re));
        }
        // hermitian_eig re-checks squareness/Hermiticity; cheap at these sizes.
        let eig = hermitian_eig(&matrix)?;
        if let Some(&lmin) = eig
            .eigenvalues
            .as_slice()
            .iter()
            .find(|&&l| l < -crate::tol::PSD_CLAMP)
        {
            return Err(Error::NotPsd(lmin));
        }
        let dim = matrix.nrows();
        Ok(Self { matrix, dim })
    }

    /// Wrap a matrix that is valid by construction (e.g. a Kronecker product
    /// of validated factors) without re-running the checks.
    pub(crate) fn trusted(matrix: CMatrix) -> Self {
        let dim = matrix.nrows();
        Self { matrix, dim }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Tr ρ², equal to the squared Frobenius norm for Hermitian ρ.
    pub fn purity(&self) -> f64 {
        self.matrix.norm_squared()
    }
}

/// A density matrix together with its subsystem split dA ⊗ dB.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState {
    state: DensityMatrix,
    da: usize,
    db: usize,
}

impl BipartiteState {
    pub fn new(state: DensityMatrix, da: usize, db: usize) -> Result<Self> {
        if da * db != state.dim() {
            return Err(Error::DimensionMismatch {
                expected: da * db,
                got: state.dim(),
            });
        }
        Ok(Self { state, da, db })
    }

    pub fn density(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn matrix(&self) -> &CMatrix {
        self.state.matrix()
    }

    pub fn da(&self) -> usize {
        self.da
    }

    pub fn db(&self) -> usize {
        self.db
    }

    pub fn dim(&self) -> usize {
        self.state.dim()
    }

    /// Reduced state of subsystem A (B traced out).
    pub fn reduced_a(&self) -> CMatrix {
        partial_trace_b(self.matrix(), self.da, self.db).expect("dims checked at construction")
    }

    /// Reduced state of subsystem B (A traced out).
    pub fn reduced_b(&self) -> CMatrix {
        partial_trace_a(self.matrix(), self.da, self.db).expect("dims checked at construction")
    }
}

/// Bloch vector of a qubit marginal, |r| ≤ 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    r: Vector3<f64>,
}

impl BlochVector {
    pub fn new(r: Vector3<f64>) -> Result<Self> {
        let norm = r.norm();
        if norm > 1.0 + BLOCH_NORM_TOL {
            return Err(Error::BlochNormTooLarge(norm));
        }
        Ok(Self { r })
    }

    pub fn vector(&self) -> Vector3<f64> {
        self.r
    }

    pub fn norm(&self) -> f64 {
        self.r.norm()
    }
}

/// Bloch vector of subsystem A: r_i = Tr[ρ (σ_i ⊗ I_b)].
///
/// The imaginary residue of each trace is rounding noise for a validated
/// state and is discarded.
pub fn bloch_vector_a(state: &BipartiteState) -> Result<BlochVector> {
    if state.da() != 2 {
        return Err(Error::SubsystemANotQubit(state.da()));
    }
    let eye_b = CMatrix::identity(state.db(), state.db());
    let mut r = Vector3::zeros();
    for (i, sigma) in paulis().iter().enumerate() {
        let k = kron(sigma, &eye_b);
        r[i] = trace_product(state.matrix(), &k).re;
    }
    BlochVector::new(r)
}

/// The 4×4 reference state used by the worked example, with dA = dB = 2.
///
/// Entries are exact decimal literals; the trace is exactly 1 at the stated
/// precision.
pub fn example_state() -> BipartiteState {
    let m = CMatrix::from_row_slice(
        4,
        4,
        &[
            c(0.4205, 0.0),
            c(0.0805, 0.0),
            c(0.3278, 0.0),
            c(0.0966, 0.0),
            c(0.0805, 0.0),
            c(0.1757, 0.0),
            c(0.0564, 0.0),
            c(0.0840, 0.0),
            c(0.3278, 0.0),
            c(0.0564, 0.0),
            c(0.2808, 0.0),
            c(0.0615, 0.0),
            c(0.0966, 0.0),
            c(0.0840, 0.0),
            c(0.0615, 0.0),
            c(0.1230, 0.0),
        ],
    );
    let dm = DensityMatrix::validate(m).expect("reference state entries form a valid density");
    BipartiteState::new(dm, 2, 2).expect("4 = 2*2")
}

/// Maximally entangled two-qubit state (|00⟩ + |11⟩)/√2.
pub fn bell_state() -> BipartiteState {
    let mut m = CMatrix::zeros(4, 4);
    for &i in &[0usize, 3] {
        for &j in &[0usize, 3] {
            m[(i, j)] = c(0.5, 0.0);
        }
    }
    let dm = DensityMatrix::validate(m).expect("Bell projector is a valid density");
    BipartiteState::new(dm, 2, 2).expect("4 = 2*2")
}

/// |0⟩⟨0| ⊗ I/2: a product state whose unconstrained maximum skew
/// information is 1 even though it carries no nonlocality.
pub fn product_mixed_state() -> BipartiteState {
    let mut a = CMatrix::zeros(2, 2);
    a[(0, 0)] = c(1.0, 0.0);
    let b = CMatrix::identity(2, 2).scale(0.5);
    product_state(
        &DensityMatrix::validate(a).expect("|0><0| is valid"),
        &DensityMatrix::validate(b).expect("I/2 is valid"),
    )
}

/// Maximally mixed state I/(dA·dB).
pub fn max_mixed_state(da: usize, db: usize) -> BipartiteState {
    let n = da * db;
    let m = CMatrix::identity(n, n).scale(1.0 / n as f64);
    let dm = DensityMatrix::validate(m).expect("I/n is valid");
    BipartiteState::new(dm, da, db).expect("dims consistent")
}

/// Tensor product of two validated factors as a bipartite state.
pub fn product_state(rho_a: &DensityMatrix, rho_b: &DensityMatrix) -> BipartiteState {
    let joint = kron(rho_a.matrix(), rho_b.matrix());
    // Hermitian ⊗ Hermitian is Hermitian, PSD ⊗ PSD is PSD and the traces
    // multiply, so the product needs no re-validation.
    let dm = DensityMatrix::trusted(joint);
    BipartiteState {
        state: dm,
        da: rho_a.dim(),
        db: rho_b.dim(),
    }
}

/// Average of the four Pauli conjugations on subsystem A.
///
/// Sends the A-side Bloch vector to zero exactly (each component is flipped
/// by two of the three conjugations) while generally leaving nontrivial
/// correlations, so the result exercises the degenerate-marginal branch of
/// the closed forms.
pub fn twirl_a(state: &BipartiteState) -> Result<BipartiteState> {
    if state.da() != 2 {
        return Err(Error::SubsystemANotQubit(state.da()));
    }
    let eye_a = CMatrix::identity(2, 2);
    let eye_b = CMatrix::identity(state.db(), state.db());
    let [sx, sy, sz] = paulis();
    let mut acc = CMatrix::zeros(state.dim(), state.dim());
    for p in [eye_a, sx, sy, sz] {
        let lifted = kron(&p, &eye_b);
        acc += &lifted * state.matrix() * lifted.adjoint();
    }
    BipartiteState::new(DensityMatrix::validate(acc.scale(0.25))?, 2, state.db())
}

fn standard_complex<R: Rng>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Ginibre matrix with independent standard complex Gaussian entries,
/// filled row-major so results are reproducible for a fixed seed.
fn ginibre(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let mut g = CMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            g[(i, j)] = standard_complex(rng);
        }
    }
    g
}

/// Random rank-`rank` density matrix via G·G†/Tr(G·G†).
pub fn random_density(d: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    if rank == 0 || rank > d {
        return Err(Error::RankOutOfRange { rank, dim: d });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = ginibre(d, rank, &mut rng);
    let gram = &g * g.adjoint();
    let tr = gram.trace().re;
    DensityMatrix::validate(gram.scale(1.0 / tr))
}

/// Random pure bipartite state from a seeded Gaussian ket.
pub fn random_pure(da: usize, db: usize, seed: u64) -> BipartiteState {
    let n = da * db;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ket = CMatrix::zeros(n, 1);
    for i in 0..n {
        ket[(i, 0)] = standard_complex(&mut rng);
    }
    let norm = ket.norm();
    let ket = ket.scale(1.0 / norm);
    let rho = &ket * ket.adjoint();
    let dm = DensityMatrix::validate(rho).expect("normalized projector is a valid density");
    BipartiteState::new(dm, da, db).expect("dims consistent")
}

/// Haar-random unitary: QR of a seeded Ginibre matrix with the phases of the
/// triangular factor's diagonal absorbed into Q.
pub fn random_unitary(d: usize, seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = ginibre(d, d, &mut rng);
    let qr = g.qr();
    let r = qr.r();
    let mut phases = Vec::with_capacity(d);
    for j in 0..d {
        let rjj = r[(j, j)];
        let m = rjj.norm();
        phases.push(if m > 0.0 { rjj / m } else { c(1.0, 0.0) });
    }
    let mut q = qr.q();
    for j in 0..d {
        for i in 0..d {
            q[(i, j)] *= phases[j];
        }
    }
    q
}
