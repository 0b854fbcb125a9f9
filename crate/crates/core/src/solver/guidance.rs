use super::region::{neighbors, Region};
use crate::error::{Error, Result};

/// Divergence of the guidance gradient, one value per unknown of a [`Region`].
#[derive(Debug, Clone, PartialEq)]
pub struct GuidanceField {
    values: Vec<f64>,
}

impl GuidanceField {
    /// The `v = 0` field used for membrane (harmonic) interpolation.
    pub fn zero(region: &Region) -> Self {
        GuidanceField {
            values: vec![0.0; region.len()],
        }
    }

    /// Wraps explicit divergence values given in unknown order.
    pub fn from_values(region: &Region, values: Vec<f64>) -> Result<Self> {
        if values.len() != region.len() {
            return Err(Error::DimensionMismatch {
                expected: (region.len(), 1),
                found: (values.len(), 1),
            });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            let (x, y) = region.pixel(i);
            return Err(Error::MissingNeighborValue { x, y });
        }
        Ok(GuidanceField { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Evaluates `div(p) = 4 g(p) − Σ g(q)` over the 4-neighbors of each Ω pixel.
///
/// `source(x, y)` gives the guidance intensity `g` in target coordinates and
/// returns `None` where it is undefined. It must be defined (and finite) on Ω
/// and on every 4-neighbor of Ω.
pub fn compute_divergence<F>(region: &Region, source: F) -> Result<GuidanceField>
where
    F: Fn(usize, usize) -> Option<f64>,
{
    let sample = |x: usize, y: usize| match source(x, y) {
        Some(v) if v.is_finite() => Ok(v),
        _ => Err(Error::MissingNeighborValue { x, y }),
    };
    let values = region
        .pixels()
        .iter()
        .map(|&(x, y)| {
            let center = sample(x, y)?;
            let mut div = 4.0 * center;
            for (nx, ny) in neighbors(x, y) {
                div -= sample(nx, ny)?;
            }
            Ok(div)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GuidanceField { values })
}
