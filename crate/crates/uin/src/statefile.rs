//! JSON state-file schema used by the CLI: subsystem dims plus the density
//! matrix as nested `[re, im]` pairs in row-major order.

use serde::{Deserialize, Serialize};

use crate::linalg::{c, CMatrix};
use crate::state::{BipartiteState, DensityMatrix};
use crate::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    /// (dA, dB)
    pub dims: (usize, usize),
    /// matrix[i][j] = [re, im]
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl StateFile {
    pub fn from_state(state: &BipartiteState) -> Self {
        let m = state.matrix();
        let matrix = (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
            .collect();
        Self {
            dims: (state.da(), state.db()),
            matrix,
        }
    }

    /// Validate and convert into a bipartite state.
    pub fn into_state(&self) -> Result<BipartiteState> {
        let (da, db) = self.dims;
        let n = da * db;
        if self.matrix.len() != n || self.matrix.iter().any(|row| row.len() != n) {
            return Err(Error::StateFileDims {
                da,
                db,
                rows: self.matrix.len(),
            });
        }
        let mut m = CMatrix::zeros(n, n);
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, &[re, im]) in row.iter().enumerate() {
                m[(i, j)] = c(re, im);
            }
        }
        BipartiteState::new(DensityMatrix::validate(m)?, da, db)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("schema serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
