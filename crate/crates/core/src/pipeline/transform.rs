use serde::{Deserialize, Serialize};

use super::roi::RoiPatch;
use crate::error::{Error, Result};
use crate::image::{BinaryMask, GrayImage};

/// Geometric transform applied to a patch before pasting.
///
/// The patch is flipped (if requested), scaled, then rotated, all about the
/// crop center. Positive rotation turns the patch counter-clockwise as
/// displayed (y pointing down).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransformParams {
    pub scale: f64,
    pub rotation_deg: f64,
    pub flip_horizontal: bool,
}

impl TransformParams {
    pub const IDENTITY: TransformParams = TransformParams {
        scale: 1.0,
        rotation_deg: 0.0,
        flip_horizontal: false,
    };

    fn is_axis_aligned_unit(&self) -> bool {
        self.scale == 1.0 && self.rotation_deg.rem_euclid(360.0) == 0.0
    }
}

impl Default for TransformParams {
    fn default() -> Self {
        Self::IDENTITY
    }
}

/// Resamples `patch` under `params`.
///
/// Intensities are sampled bilinearly with edge clamping; the mask is sampled
/// bilinearly as 0/1 and thresholded at 0.5. The result is re-cropped to the
/// new mask's bounding box grown by one pixel. Pure flips (unit scale, zero
/// rotation) move pixels without resampling and are exact.
pub fn transform_roi(patch: &RoiPatch, params: &TransformParams) -> Result<RoiPatch> {
    if !(params.scale > 0.0 && params.scale.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "scale must be positive and finite, got {}",
            params.scale
        )));
    }
    if !params.rotation_deg.is_finite() {
        return Err(Error::InvalidConfig(format!(
            "rotation must be finite, got {}",
            params.rotation_deg
        )));
    }

    let (w, h) = patch.dims();
    if params.is_axis_aligned_unit() {
        let src_x = |x: usize| if params.flip_horizontal { w - 1 - x } else { x };
        let values = GrayImage::from_fn(w, h, |x, y| patch.values().get(src_x(x), y));
        let mask = BinaryMask::from_fn(w, h, |x, y| patch.mask().get(src_x(x), y));
        return RoiPatch::recrop(&values, &mask, patch.origin());
    }

    let (sin, cos) = params.rotation_deg.to_radians().sin_cos();
    let flip = if params.flip_horizontal { -1.0 } else { 1.0 };
    let scale = params.scale;
    let forward = |x: f64, y: f64| {
        let (x, y) = (flip * x * scale, y * scale);
        (cos * x + sin * y, -sin * x + cos * y)
    };
    let inverse = |u: f64, v: f64| {
        let (x, y) = (cos * u - sin * v, sin * u + cos * v);
        (flip * x / scale, y / scale)
    };

    // Canvas large enough for the transformed crop plus a 2-pixel margin.
    let (hw, hh) = (w as f64 / 2.0, h as f64 / 2.0);
    let (mut ex, mut ey) = (0.0f64, 0.0f64);
    for (cx, cy) in [(-hw, -hh), (hw, -hh), (-hw, hh), (hw, hh)] {
        let (u, v) = forward(cx, cy);
        ex = ex.max(u.abs());
        ey = ey.max(v.abs());
    }
    // Trim rounding noise so axis-aligned rotations keep pixel-center alignment.
    let out_w = (2.0 * ex - 1e-9).ceil() as usize + 4;
    let out_h = (2.0 * ey - 1e-9).ceil() as usize + 4;
    let src_c = ((w as f64 - 1.0) / 2.0, (h as f64 - 1.0) / 2.0);
    let dst_c = ((out_w as f64 - 1.0) / 2.0, (out_h as f64 - 1.0) / 2.0);

    let mut values = Vec::with_capacity(out_w * out_h);
    let mut bits = Vec::with_capacity(out_w * out_h);
    for y in 0..out_h {
        for x in 0..out_w {
            let (sx, sy) = inverse(x as f64 - dst_c.0, y as f64 - dst_c.1);
            let (sx, sy) = (sx + src_c.0, sy + src_c.1);
            values.push(bilinear(sx, sy, |i, j| {
                let i = i.clamp(0, w as i64 - 1) as usize;
                let j = j.clamp(0, h as i64 - 1) as usize;
                patch.values().get(i, j)
            }));
            let m = bilinear(sx, sy, |i, j| {
                if patch.mask().get_signed(i, j) {
                    1.0
                } else {
                    0.0
                }
            });
            bits.push(m >= 0.5);
        }
    }
    let values = GrayImage::from_fn(out_w, out_h, |x, y| values[y * out_w + x]);
    let mask = BinaryMask::from_bits(out_w, out_h, bits)?;
    RoiPatch::recrop(&values, &mask, patch.origin())
}

fn bilinear(x: f64, y: f64, at: impl Fn(i64, i64) -> f64) -> f64 {
    let x0 = x.floor();
    let y0 = y.floor();
    let fx = x - x0;
    let fy = y - y0;
    let (i, j) = (x0 as i64, y0 as i64);
    let top = at(i, j) * (1.0 - fx) + at(i + 1, j) * fx;
    let bottom = at(i, j + 1) * (1.0 - fx) + at(i + 1, j + 1) * fx;
    top * (1.0 - fy) + bottom * fy
}
