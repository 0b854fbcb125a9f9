use super::guidance::GuidanceField;
use super::region::{neighbors, Region};
use crate::error::{Error, Result};
use crate::image::GrayImage;

/// Sparse 5-point Laplacian system `A x = b` over the unknowns of a [`Region`].
///
/// Off-diagonal entries are stored in CSR form; every diagonal entry is 4 and
/// every stored off-diagonal is −1.
#[derive(Debug, Clone, PartialEq)]
pub struct PoissonSystem {
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    rhs: Vec<f64>,
}

const DIAGONAL: f64 = 4.0;

/// Builds the system for `target` on `region` with guidance divergence `guidance`.
///
/// Row `p` reads `4 x_p − Σ_{q ∈ Ω} x_q = Σ_{q ∈ ∂Ω} target(q) + div(p)`.
pub fn assemble_system(
    target: &GrayImage,
    region: &Region,
    guidance: &GuidanceField,
) -> Result<PoissonSystem> {
    if target.dims() != region.dims() {
        return Err(Error::DimensionMismatch {
            expected: region.dims(),
            found: target.dims(),
        });
    }
    if guidance.len() != region.len() {
        return Err(Error::DimensionMismatch {
            expected: (region.len(), 1),
            found: (guidance.len(), 1),
        });
    }
    if region.is_empty() {
        return Err(Error::EmptyRegion);
    }

    let n = region.len();
    let mut row_ptr = Vec::with_capacity(n + 1);
    let mut cols = Vec::with_capacity(4 * n);
    let mut rhs = Vec::with_capacity(n);
    row_ptr.push(0);
    for (&(x, y), &div) in region.pixels().iter().zip(guidance.values()) {
        let mut b = div;
        for (nx, ny) in neighbors(x, y) {
            match region.unknown_at(nx, ny) {
                Some(j) => cols.push(j),
                None => b += target.get(nx, ny),
            }
        }
        row_ptr.push(cols.len());
        rhs.push(b);
    }
    Ok(PoissonSystem { row_ptr, cols, rhs })
}

impl PoissonSystem {
    pub fn len(&self) -> usize {
        self.rhs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rhs.is_empty()
    }

    pub fn rhs(&self) -> &[f64] {
        &self.rhs
    }

    pub fn diagonal(&self, _row: usize) -> f64 {
        DIAGONAL
    }

    /// Column indices of the −1 entries in `row`.
    pub fn neighbors(&self, row: usize) -> &[usize] {
        &self.cols[self.row_ptr[row]..self.row_ptr[row + 1]]
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        if row == col {
            DIAGONAL
        } else if self.neighbors(row).contains(&col) {
            -1.0
        } else {
            0.0
        }
    }

    /// `out = A x`.
    pub fn apply(&self, x: &[f64], out: &mut [f64]) {
        for (row, o) in out.iter_mut().enumerate() {
            let mut acc = DIAGONAL * x[row];
            for &j in self.neighbors(row) {
                acc -= x[j];
            }
            *o = acc;
        }
    }

    /// `‖b − A x‖₂`.
    pub fn residual_norm(&self, x: &[f64]) -> f64 {
        let mut ax = vec![0.0; self.len()];
        self.apply(x, &mut ax);
        ax.iter()
            .zip(&self.rhs)
            .map(|(a, b)| (b - a) * (b - a))
            .sum::<f64>()
            .sqrt()
    }

    /// Dense row-major copy of `A`, for inspection of small systems.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.len();
        let mut dense = vec![vec![0.0; n]; n];
        for (i, row) in dense.iter_mut().enumerate() {
            row[i] = DIAGONAL;
            for &j in self.neighbors(i) {
                row[j] = -1.0;
            }
        }
        dense
    }
}
