//! Brute-force optimizers over local observables and measurements: the
//! independent ground truth for every closed-form measure.
//!
//! Direction searches walk a deterministic Fibonacci lattice on the unit
//! sphere and then polish the best grid point with golden-section line
//! searches on the two spherical angles. No randomness enters the
//! verification path, so repeated runs are bit-identical.

use std::f64::consts::PI;

use nalgebra::Vector3;

use crate::linalg::{kron, matrix_sqrt, paulis, CMatrix};
use crate::measure::{skew_information_with_sqrt, Observable};
use crate::state::{bloch_vector_a, BipartiteState};
use crate::tol::R_ZERO_THRESHOLD;
use crate::{Error, Result};

/// A probed direction and the objective value found there.
#[derive(Debug, Clone, Copy)]
pub struct SphereSample {
    /// Unit direction on the Bloch sphere.
    pub direction: Vector3<f64>,
    /// Objective value at that direction.
    pub value: f64,
}

/// Deterministic near-uniform directions via the golden-angle spiral.
pub fn fibonacci_sphere(count: usize) -> Vec<Vector3<f64>> {
    let golden_angle = PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / count as f64;
            let radius = (1.0 - z * z).max(0.0).sqrt();
            let azimuth = golden_angle * i as f64;
            Vector3::new(radius * azimuth.cos(), radius * azimuth.sin(), z)
        })
        .collect()
}

/// (n̂·σ) ⊗ I_db with the direction recorded; `n` is normalized internally.
pub fn observable_from_direction(n: Vector3<f64>, db: usize) -> Result<Observable> {
    Observable::from_direction(n, db)
}

fn direction_from_angles(theta: f64, phi: f64) -> Vector3<f64> {
    Vector3::new(
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
        theta.cos(),
    )
}

const INV_GOLDEN: f64 = 0.618_033_988_749_894_8;

/// Number of alternating theta/phi line-search passes after the coarse scan.
const REFINE_SWEEPS: usize = 3;

struct LineBest {
    x: f64,
    value: f64,
}

/// Golden-section maximization on [lo, hi], returning the best probed point.
fn golden_max_line<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, iters: usize) -> LineBest {
    let mut a = lo;
    let mut b = hi;
    let mut x1 = b - (b - a) * INV_GOLDEN;
    let mut x2 = a + (b - a) * INV_GOLDEN;
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut best = if f1 >= f2 {
        LineBest { x: x1, value: f1 }
    } else {
        LineBest { x: x2, value: f2 }
    };
    for _ in 0..iters {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - (b - a) * INV_GOLDEN;
            f1 = f(x1);
            if f1 > best.value {
                best = LineBest { x: x1, value: f1 };
            }
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + (b - a) * INV_GOLDEN;
            f2 = f(x2);
            if f2 > best.value {
                best = LineBest { x: x2, value: f2 };
            }
        }
    }
    best
}

/// Coarse Fibonacci scan plus angle refinement. Ties on the grid keep the
/// smallest index and the refined value never falls below the coarse one:
/// refinement only ever replaces the incumbent on strict improvement.
fn maximize_on_sphere<F>(
    objective: F,
    coarse_samples: usize,
    refine_iters: usize,
) -> (SphereSample, SphereSample)
where
    F: Fn(&Vector3<f64>) -> f64,
{
    let grid = fibonacci_sphere(coarse_samples.max(1));
    let mut best_idx = 0;
    let mut best_val = f64::NEG_INFINITY;
    for (i, n) in grid.iter().enumerate() {
        let v = objective(n);
        if v > best_val {
            best_val = v;
            best_idx = i;
        }
    }
    let coarse = SphereSample {
        direction: grid[best_idx],
        value: best_val,
    };

    let theta = coarse.direction.z.clamp(-1.0, 1.0).acos();
    let phi = coarse.direction.y.atan2(coarse.direction.x);
    let mut best = (coarse.value, theta, phi);
    let mut width = 1.5 * (4.0 * PI / coarse_samples.max(1) as f64).sqrt();
    for _ in 0..REFINE_SWEEPS {
        let line = golden_max_line(
            |t| objective(&direction_from_angles(t, best.2)),
            best.1 - width,
            best.1 + width,
            refine_iters,
        );
        if line.value > best.0 {
            best = (line.value, line.x, best.2);
        }
        let line = golden_max_line(
            |p| objective(&direction_from_angles(best.1, p)),
            best.2 - width,
            best.2 + width,
            refine_iters,
        );
        if line.value > best.0 {
            best = (line.value, best.1, line.x);
        }
        width *= 0.35;
    }
    let refined = SphereSample {
        direction: direction_from_angles(best.1, best.2),
        value: best.0,
    };
    (coarse, refined)
}

/// Skew information as a function of the observable direction, with √ρ
/// computed once up front.
fn skew_objective(sqrt_rho: CMatrix, db: usize) -> impl Fn(&Vector3<f64>) -> f64 {
    let [sx, sy, sz] = paulis();
    let eye_b = CMatrix::identity(db, db);
    move |n: &Vector3<f64>| {
        let pointer = sx.scale(n.x) + sy.scale(n.y) + sz.scale(n.z);
        let k = kron(&pointer, &eye_b);
        skew_information_with_sqrt(&sqrt_rho, &k)
    }
}

fn require_qubit_a(state: &BipartiteState) -> Result<()> {
    if state.da() != 2 {
        return Err(Error::SubsystemANotQubit(state.da()));
    }
    Ok(())
}

/// Brute-force UIN: skew information maximized over directions commuting
/// with the reduced state of A.
///
/// A nondegenerate marginal admits only n = ±r̂, and the skew information is
/// even in n, so a single evaluation is exact. A degenerate marginal frees
/// the direction and the full sphere search runs.
pub fn oracle_uin(
    state: &BipartiteState,
    coarse_samples: usize,
    refine_iters: usize,
) -> Result<f64> {
    require_qubit_a(state)?;
    let r = bloch_vector_a(state)?;
    let objective = skew_objective(matrix_sqrt(state.matrix())?, state.db());
    if r.norm() > R_ZERO_THRESHOLD {
        Ok(objective(&(r.vector() / r.norm())))
    } else {
        let (_, refined) = maximize_on_sphere(objective, coarse_samples, refine_iters);
        Ok(refined.value)
    }
}

/// Brute-force MUIN: unconstrained sphere maximization of skew information.
pub fn oracle_muin(
    state: &BipartiteState,
    coarse_samples: usize,
    refine_iters: usize,
) -> Result<f64> {
    require_qubit_a(state)?;
    let objective = skew_objective(matrix_sqrt(state.matrix())?, state.db());
    let (_, refined) = maximize_on_sphere(objective, coarse_samples, refine_iters);
    Ok(refined.value)
}

/// Brute-force LQU: unconstrained sphere minimization of skew information.
pub fn oracle_lqu(
    state: &BipartiteState,
    coarse_samples: usize,
    refine_iters: usize,
) -> Result<f64> {
    require_qubit_a(state)?;
    let objective = skew_objective(matrix_sqrt(state.matrix())?, state.db());
    let (_, refined) =
        maximize_on_sphere(|n| -objective(n), coarse_samples, refine_iters);
    Ok(-refined.value)
}

/// Squared Hilbert–Schmidt distance between ρ and the post-measurement state
/// for the projective measurement of A along n̂.
pub fn measurement_disturbance(state: &BipartiteState, n: &Vector3<f64>) -> f64 {
    let [sx, sy, sz] = paulis();
    let pointer = sx.scale(n.x) + sy.scale(n.y) + sz.scale(n.z);
    let eye_a = CMatrix::identity(2, 2);
    let eye_b = CMatrix::identity(state.db(), state.db());
    let proj_plus = kron(&(&eye_a + &pointer).scale(0.5), &eye_b);
    let proj_minus = kron(&(eye_a - pointer).scale(0.5), &eye_b);
    let post = &proj_plus * state.matrix() * &proj_plus + &proj_minus * state.matrix() * &proj_minus;
    (state.matrix() - post).norm_squared()
}

/// Brute-force Hilbert–Schmidt MIN: maximal disturbance over projective
/// measurements on A that leave ρ_a invariant.
///
/// For a nondegenerate marginal the measurement basis is pinned to r̂ and a
/// single evaluation is exact; for r = 0 every basis qualifies and the
/// sphere is sampled and refined.
pub fn oracle_min_hs(state: &BipartiteState, measurement_samples: usize) -> Result<f64> {
    require_qubit_a(state)?;
    let r = bloch_vector_a(state)?;
    if r.norm() > R_ZERO_THRESHOLD {
        return Ok(measurement_disturbance(state, &(r.vector() / r.norm())));
    }
    let (_, refined) = maximize_on_sphere(
        |n| measurement_disturbance(state, n),
        measurement_samples,
        40,
    );
    Ok(refined.value)
}
