use serde::{Deserialize, Serialize};

use super::placement::{OverlapPolicy, Placement};
use super::roi::RoiPatch;
use crate::error::{Error, Result};
use crate::image::{BinaryMask, GrayImage};
use crate::solver::{seamless_clone, SolveReport, SolverParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlendMode {
    /// Gradient-domain blend with the target as Dirichlet boundary.
    Seamless,
    /// Copy patch intensities verbatim.
    Direct,
}

/// An augmented image with its full instance-mask set. The pasted instance
/// is always the last mask.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentedSample {
    pub image: GrayImage,
    pub masks: Vec<BinaryMask>,
    /// Present for seamless blends.
    pub solve: Option<SolveReport>,
}

impl AugmentedSample {
    pub fn pasted_mask(&self) -> &BinaryMask {
        self.masks.last().expect("sample always holds the pasted mask")
    }
}

/// Pastes `patch` into `target` at `placement` and updates the instance masks.
///
/// A seamless blend that fails to converge still returns a sample; check
/// `solve.converged`.
pub fn paste(
    target: &GrayImage,
    target_masks: &[BinaryMask],
    patch: &RoiPatch,
    placement: Placement,
    mode: BlendMode,
    policy: OverlapPolicy,
    params: &SolverParams,
) -> Result<AugmentedSample> {
    if let Some(m) = target_masks.iter().find(|m| m.dims() != target.dims()) {
        return Err(Error::DimensionMismatch {
            expected: target.dims(),
            found: m.dims(),
        });
    }
    let pasted = patch.placed_mask(target.dims(), placement.offset())?;

    let mut masks = target_masks.to_vec();
    match policy {
        OverlapPolicy::Reject => {
            if let Some(instance) = masks.iter().position(|m| m.intersects(&pasted)) {
                return Err(Error::OverlapViolation { instance });
            }
        }
        OverlapPolicy::Occlude => masks.iter_mut().for_each(|m| m.subtract(&pasted)),
    }

    let (image, solve) = match mode {
        BlendMode::Seamless => {
            let solved = seamless_clone(target, patch, placement.offset(), params)?;
            (solved.value, Some(solved.report))
        }
        BlendMode::Direct => {
            let mut image = target.clone();
            for (x, y) in patch.mask().members() {
                let tx = (x as i64 + placement.dx) as usize;
                let ty = (y as i64 + placement.dy) as usize;
                image.set(tx, ty, patch.values().get(x, y));
            }
            (image, None)
        }
    };
    masks.push(pasted);
    Ok(AugmentedSample {
        image,
        masks,
        solve,
    })
}
