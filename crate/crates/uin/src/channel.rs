//! Kraus-operator channels on subsystem B and parameter sweeps for
//! contractivity studies.

use std::str::FromStr;

use crate::linalg::{c, kron, CMatrix};
use crate::measure::{self, MeasureValue};
use crate::state::{BipartiteState, DensityMatrix};
use crate::tol::KRAUS_TOL;
use crate::{Error, Result};

/// A completely positive trace-preserving map as a finite Kraus set.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    operators: Vec<CMatrix>,
}

impl KrausChannel {
    /// Validate completeness Σ E†E = I (Frobenius, [`KRAUS_TOL`]).
    pub fn new(operators: Vec<CMatrix>) -> Result<Self> {
        let dim = match operators.first() {
            Some(op) => op.nrows(),
            None => return Err(Error::IncompleteKraus(f64::INFINITY)),
        };
        for op in &operators {
            if op.nrows() != dim || op.ncols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: op.nrows(),
                });
            }
        }
        let mut sum = CMatrix::zeros(dim, dim);
        for op in &operators {
            sum += op.adjoint() * op;
        }
        let dev = (sum - CMatrix::identity(dim, dim)).norm();
        if dev > KRAUS_TOL {
            return Err(Error::IncompleteKraus(dev));
        }
        Ok(Self { operators })
    }

    pub fn operators(&self) -> &[CMatrix] {
        &self.operators
    }

    pub fn dim(&self) -> usize {
        self.operators[0].nrows()
    }
}

fn check_rate(gamma: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::ParameterOutOfRange(gamma));
    }
    Ok(gamma)
}

/// Amplitude damping at rate γ: E₀ = |0⟩⟨0| + √(1−γ)|1⟩⟨1|, E₁ = √γ|0⟩⟨1|.
pub fn amplitude_damping(gamma: f64) -> Result<KrausChannel> {
    let gamma = check_rate(gamma)?;
    let e0 = CMatrix::from_row_slice(
        2,
        2,
        &[
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c((1.0 - gamma).sqrt(), 0.0),
        ],
    );
    let e1 = CMatrix::from_row_slice(
        2,
        2,
        &[
            c(0.0, 0.0),
            c(gamma.sqrt(), 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
        ],
    );
    KrausChannel::new(vec![e0, e1])
}

/// Phase damping at rate γ: decoheres the off-diagonals without relaxation.
pub fn phase_damping(gamma: f64) -> Result<KrausChannel> {
    let gamma = check_rate(gamma)?;
    let e0 = CMatrix::from_row_slice(
        2,
        2,
        &[
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c((1.0 - gamma).sqrt(), 0.0),
        ],
    );
    let e1 = CMatrix::from_row_slice(
        2,
        2,
        &[
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(gamma.sqrt(), 0.0),
        ],
    );
    KrausChannel::new(vec![e0, e1])
}

/// Depolarizing channel at strength p: a random Pauli with probability p.
pub fn depolarizing(p: f64) -> Result<KrausChannel> {
    let p = check_rate(p)?;
    let [sx, sy, sz] = crate::linalg::paulis();
    let ops = vec![
        CMatrix::identity(2, 2).scale((1.0 - 0.75 * p).sqrt()),
        sx.scale((p / 4.0).sqrt()),
        sy.scale((p / 4.0).sqrt()),
        sz.scale((p / 4.0).sqrt()),
    ];
    KrausChannel::new(ops)
}

/// The parametrized channel families available to sweeps and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelFamily {
    AmplitudeDamping,
    PhaseDamping,
    Depolarizing,
}

impl ChannelFamily {
    pub fn channel(&self, gamma: f64) -> Result<KrausChannel> {
        match self {
            ChannelFamily::AmplitudeDamping => amplitude_damping(gamma),
            ChannelFamily::PhaseDamping => phase_damping(gamma),
            ChannelFamily::Depolarizing => depolarizing(gamma),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ChannelFamily::AmplitudeDamping => "amplitude-damping",
            ChannelFamily::PhaseDamping => "phase-damping",
            ChannelFamily::Depolarizing => "depolarizing",
        }
    }

    pub const ALL: [ChannelFamily; 3] = [
        ChannelFamily::AmplitudeDamping,
        ChannelFamily::PhaseDamping,
        ChannelFamily::Depolarizing,
    ];
}

impl FromStr for ChannelFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "amplitude-damping" => Ok(ChannelFamily::AmplitudeDamping),
            "phase-damping" => Ok(ChannelFamily::PhaseDamping),
            "depolarizing" => Ok(ChannelFamily::Depolarizing),
            other => Err(Error::UnknownChannel(other.to_string())),
        }
    }
}

/// Apply a channel to subsystem B: ρ ↦ Σ_k (I⊗E_k) ρ (I⊗E_k)†.
pub fn apply_channel_b(state: &BipartiteState, channel: &KrausChannel) -> Result<BipartiteState> {
    if channel.dim() != state.db() {
        return Err(Error::DimensionMismatch {
            expected: state.db(),
            got: channel.dim(),
        });
    }
    let eye_a = CMatrix::identity(state.da(), state.da());
    let mut out = CMatrix::zeros(state.dim(), state.dim());
    for op in channel.operators() {
        let lifted = kron(&eye_a, op);
        out += &lifted * state.matrix() * lifted.adjoint();
    }
    BipartiteState::new(DensityMatrix::validate(out)?, state.da(), state.db())
}

/// The measures a sweep can tabulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureKind {
    Uin,
    Muin,
    Lqu,
    MinHs,
}

impl MeasureKind {
    pub fn name(&self) -> &'static str {
        match self {
            MeasureKind::Uin => "uin",
            MeasureKind::Muin => "muin",
            MeasureKind::Lqu => "lqu",
            MeasureKind::MinHs => "min_hs",
        }
    }

    pub fn evaluate(&self, state: &BipartiteState) -> Result<MeasureValue> {
        match self {
            MeasureKind::Uin => measure::uin(state),
            MeasureKind::Muin => measure::muin(state),
            MeasureKind::Lqu => measure::lqu(state),
            MeasureKind::MinHs => measure::min_hs(state),
        }
    }

    pub const ALL: [MeasureKind; 4] = [
        MeasureKind::Uin,
        MeasureKind::Muin,
        MeasureKind::Lqu,
        MeasureKind::MinHs,
    ];
}

impl FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uin" => Ok(MeasureKind::Uin),
            "muin" => Ok(MeasureKind::Muin),
            "lqu" => Ok(MeasureKind::Lqu),
            "min_hs" => Ok(MeasureKind::MinHs),
            other => Err(Error::UnknownMeasure(other.to_string())),
        }
    }
}

/// Measure values tabulated over a channel-parameter grid.
#[derive(Debug, Clone)]
pub struct SweepSeries {
    grid: Vec<f64>,
    measures: Vec<MeasureKind>,
    /// values[m][p] is measure m at grid point p.
    values: Vec<Vec<f64>>,
}

impl SweepSeries {
    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn measures(&self) -> &[MeasureKind] {
        &self.measures
    }

    pub fn series(&self, kind: MeasureKind) -> Option<&[f64]> {
        self.measures
            .iter()
            .position(|&m| m == kind)
            .map(|i| self.values[i].as_slice())
    }
}

/// Uniform grid of `points` values covering [0, 1] inclusive.
pub fn uniform_grid(points: usize) -> Vec<f64> {
    if points <= 1 {
        return vec![0.0];
    }
    (0..points)
        .map(|i| i as f64 / (points - 1) as f64)
        .collect()
}

/// Evaluate the requested measures on ε_γ(ρ) at every grid point.
///
/// Points are evaluated in grid order; the output is deterministic.
pub fn sweep(
    state: &BipartiteState,
    family: ChannelFamily,
    grid: &[f64],
    measures: &[MeasureKind],
) -> Result<SweepSeries> {
    if grid.is_empty() {
        return Err(Error::BadGrid);
    }
    for w in grid.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::BadGrid);
        }
    }
    if grid[0] < 0.0 || *grid.last().unwrap() > 1.0 {
        return Err(Error::BadGrid);
    }
    let mut values = vec![Vec::with_capacity(grid.len()); measures.len()];
    for &gamma in grid {
        let damped = apply_channel_b(state, &family.channel(gamma)?)?;
        for (slot, kind) in values.iter_mut().zip(measures) {
            slot.push(kind.evaluate(&damped)?.value);
        }
    }
    Ok(SweepSeries {
        grid: grid.to_vec(),
        measures: measures.to_vec(),
        values,
    })
}
