//! Skew-information measures of quantum correlation for bipartite 2⊗d states.
//!
//! Everything here is built around the Wigner–Yanase skew information
//! \(I(\rho, K) = -\tfrac{1}{2}\mathrm{Tr}[\sqrt{\rho}, K]^2\) of a state and a
//! local observable \(K = K_a \otimes \mathbb{I}_b\). Restricting \(K_a\) to
//! unit Bloch directions \(\mathbf{n}\cdot\boldsymbol{\sigma}\) turns the skew
//! information into the quadratic form \(1 - \mathbf{n} W \mathbf{n}^T\), with
//! \(W_{ij} = \mathrm{Tr}\{\sqrt{\rho}(\sigma_i\otimes\mathbb{I})\sqrt{\rho}(\sigma_j\otimes\mathbb{I})\}\)
//! a 3×3 Gram-type matrix. The measures provided are extrema of that form:
//!
//! - [`measure::uin`] — maximum over observables commuting with the reduced
//!   state of A (uncertainty-induced nonlocality),
//! - [`measure::muin`] — unconstrained maximum,
//! - [`measure::lqu`] — unconstrained minimum (local quantum uncertainty),
//! - [`measure::min_hs`] — the Hilbert–Schmidt measurement-induced
//!   nonlocality, kept as a comparator for contractivity studies.
//!
//! Every closed form is cross-checked against brute-force observable
//! optimization in [`oracle`], and [`channel`] supplies Kraus channels acting
//! on subsystem B for contractivity sweeps.

use thiserror::Error;

pub mod channel;
pub mod linalg;
pub mod measure;
pub mod oracle;
pub mod state;
pub mod statefile;
pub mod tol;
pub mod verify;

pub use linalg::CMatrix;
pub use measure::{Branch, MeasureValue, Observable};
pub use state::{BipartiteState, BlochVector, DensityMatrix};

/// Errors for state validation and measure evaluation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),

    #[error("matrix is not Hermitian (max |H - H^†| = {0:.3e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (eigenvalue {0:.6e})")]
    NotPsd(f64),

    #[error("trace must be 1 (got {0:.12})")]
    BadTrace(f64),

    #[error("dimension mismatch (expected {expected}, got {got})")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("subsystem A must be a qubit for this operation (got dimension {0})")]
    SubsystemANotQubit(usize),

    #[error("Bloch vector norm {0:.12} exceeds 1")]
    BlochNormTooLarge(f64),

    #[error("state is not pure (Tr rho^2 = {0:.12})")]
    NotPure(f64),

    #[error("rank must be in 1..={dim} (got {rank})")]
    RankOutOfRange { rank: usize, dim: usize },

    #[error("direction vector must be nonzero")]
    ZeroDirection,

    #[error("channel parameter {0} outside [0, 1]")]
    ParameterOutOfRange(f64),

    #[error("Kraus operators violate completeness (deviation {0:.3e})")]
    IncompleteKraus(f64),

    #[error("measure value {0:.12e} lies outside [0, 1] beyond tolerance")]
    ValueOutOfRange(f64),

    #[error("sweep grid must be strictly ascending within [0, 1]")]
    BadGrid,

    #[error("unknown measure label `{0}`")]
    UnknownMeasure(String),

    #[error("unknown channel `{0}`")]
    UnknownChannel(String),

    #[error("unknown builtin state `{0}`")]
    UnknownBuiltin(String),

    #[error("state file dims ({da}, {db}) do not match a {rows}x{rows} matrix")]
    StateFileDims { da: usize, db: usize, rows: usize },

    #[error("state file parse error: {0}")]
    Parse(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
