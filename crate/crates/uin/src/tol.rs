//! Numerical tolerances shared across the crate.
//!
//! Hermiticity, trace and positivity checks run at `1e-10`; that is loose
//! enough for rounding accumulated by channel application and tensor
//! products on the ≤64-dimensional matrices handled here, and tight enough
//! to reject genuinely malformed inputs.

/// Max-abs deviation allowed when checking H = H†.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Eigenvalues in [-PSD_CLAMP, 0) are rounding noise and get clamped to zero;
/// anything below -PSD_CLAMP is a hard positivity error.
pub const PSD_CLAMP: f64 = 1e-10;

/// Allowed deviation of a density-matrix trace from 1.
pub const TRACE_TOL: f64 = 1e-10;

/// Allowed excess of a Bloch-vector norm over 1.
pub const BLOCH_NORM_TOL: f64 = 1e-9;

/// Bloch norms at or below this select the degenerate-marginal branch of the
/// closed forms (the marginal is treated as maximally mixed).
pub const R_ZERO_THRESHOLD: f64 = 1e-8;

/// Purity deviation accepted by the pure-state shortcut.
pub const PURITY_TOL: f64 = 1e-8;

/// Measure values within this distance outside [0, 1] are clamped onto the
/// boundary; larger excursions indicate a bug and are reported as errors.
pub const VALUE_CLAMP: f64 = 1e-9;

/// Completeness tolerance for Kraus operator sets (Frobenius norm).
pub const KRAUS_TOL: f64 = 1e-10;
