use rand::Rng;
use serde::{Deserialize, Serialize};

use super::roi::RoiPatch;
use crate::error::{Error, Result};
use crate::image::BinaryMask;

/// Target-image position of the patch crop's top-left corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placement {
    pub dx: i64,
    pub dy: i64,
}

impl Placement {
    pub fn offset(&self) -> (i64, i64) {
        (self.dx, self.dy)
    }
}

/// How a pasted lesion interacts with instances already in the target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OverlapPolicy {
    /// The pasted mask may not touch any existing instance.
    Reject,
    /// The pasted lesion is drawn on top; covered pixels leave the originals.
    Occlude,
}

/// Inclusive offset ranges `((dx_lo, dx_hi), (dy_lo, dy_hi))` keeping every
/// patch-mask pixel strictly inside a `dims`-sized target, or `None` if the
/// patch does not fit.
pub fn valid_offset_range(
    patch: &RoiPatch,
    dims: (usize, usize),
) -> Option<((i64, i64), (i64, i64))> {
    let (w, h) = (dims.0 as i64, dims.1 as i64);
    let (x0, y0, x1, y1) = patch.mask_bounds();
    let dx = (1 - x0 as i64, w - 2 - x1 as i64);
    let dy = (1 - y0 as i64, h - 2 - y1 as i64);
    (dx.0 <= dx.1 && dy.0 <= dy.1).then_some((dx, dy))
}

fn overlaps(patch: &RoiPatch, placement: Placement, existing: &[BinaryMask]) -> bool {
    patch.mask().members().any(|(x, y)| {
        let tx = x as i64 + placement.dx;
        let ty = y as i64 + placement.dy;
        existing.iter().any(|m| m.get_signed(tx, ty))
    })
}

/// Draws a uniformly random valid offset for `patch` in a `dims`-sized target.
///
/// Under [`OverlapPolicy::Reject`] up to `max_retries` offsets are drawn and
/// the first one whose shifted mask misses every mask in `existing` wins.
pub fn sample_placement<R: Rng + ?Sized>(
    rng: &mut R,
    dims: (usize, usize),
    patch: &RoiPatch,
    existing: &[BinaryMask],
    policy: OverlapPolicy,
    max_retries: usize,
) -> Result<Placement> {
    if max_retries == 0 {
        return Err(Error::InvalidConfig(
            "placement retries must be at least 1".to_string(),
        ));
    }
    let ((dx_lo, dx_hi), (dy_lo, dy_hi)) =
        valid_offset_range(patch, dims).ok_or(Error::PatchTooLarge {
            patch: patch.dims(),
            target: dims,
        })?;
    for _ in 0..max_retries {
        let placement = Placement {
            dx: rng.random_range(dx_lo..=dx_hi),
            dy: rng.random_range(dy_lo..=dy_hi),
        };
        if policy == OverlapPolicy::Occlude || !overlaps(patch, placement, existing) {
            return Ok(placement);
        }
    }
    Err(Error::NoValidPlacement {
        retries: max_retries,
    })
}
