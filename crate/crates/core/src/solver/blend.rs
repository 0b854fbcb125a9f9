use super::cg::{solve, Solved, SolverParams};
use super::guidance::{compute_divergence, GuidanceField};
use super::region::{index_region, Region};
use super::system::assemble_system;
use crate::error::Result;
use crate::image::{clamp_unit, BinaryMask, GrayImage};
use crate::pipeline::RoiPatch;

/// Solves the Poisson system for `region` and writes the clamped solution
/// into a copy of `target`. Pixels outside Ω are copied unchanged.
pub fn blend_region(
    target: &GrayImage,
    region: &Region,
    guidance: &GuidanceField,
    params: &SolverParams,
) -> Result<Solved<GrayImage>> {
    let system = assemble_system(target, region, guidance)?;
    let solved = solve(&system, params)?;
    let mut out = target.clone();
    for (&(x, y), &v) in region.pixels().iter().zip(&solved.value) {
        out.set(x, y, clamp_unit(v));
    }
    Ok(solved.map(|_| out))
}

/// Membrane interpolation: fills Ω with the discrete-harmonic function that
/// matches `target` on ∂Ω.
pub fn harmonic_fill(
    target: &GrayImage,
    mask: &BinaryMask,
    params: &SolverParams,
) -> Result<Solved<GrayImage>> {
    let region = index_region(mask)?;
    blend_region(target, &region, &GuidanceField::zero(&region), params)
}

/// Pastes `patch` into `target` with its crop's top-left at `offset`, using
/// the patch gradient as guidance and `target` as the Dirichlet boundary.
///
/// Fails with [`Error::PlacementOutOfBounds`] unless every shifted mask pixel
/// lies strictly inside `target`.
pub fn seamless_clone(
    target: &GrayImage,
    patch: &RoiPatch,
    offset: (i64, i64),
    params: &SolverParams,
) -> Result<Solved<GrayImage>> {
    let mask = patch.placed_mask(target.dims(), offset)?;
    let region = index_region(&mask)?;
    let (dx, dy) = offset;
    let values = patch.values();
    let guidance = compute_divergence(&region, |x, y| {
        let px = x as i64 - dx;
        let py = y as i64 - dy;
        if px < 0 || py < 0 || px as usize >= values.width() || py as usize >= values.height() {
            None
        } else {
            Some(values.get(px as usize, py as usize))
        }
    })?;
    blend_region(target, &region, &guidance, params)
}
