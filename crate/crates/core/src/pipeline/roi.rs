use crate::error::{Error, Result};
use crate::image::{BinaryMask, GrayImage};

/// A cropped source lesion: intensities `g` over a rectangle plus the lesion mask.
///
/// Every mask member has its four neighbors inside the crop, so the guidance
/// divergence is defined on the whole mask.
#[derive(Debug, Clone, PartialEq)]
pub struct RoiPatch {
    values: GrayImage,
    mask: BinaryMask,
    origin: (i64, i64),
}

impl RoiPatch {
    /// `origin` is the source-image position of the crop's top-left corner.
    /// It may be negative when the crop was padded past the source border.
    pub fn new(values: GrayImage, mask: BinaryMask, origin: (i64, i64)) -> Result<Self> {
        if values.dims() != mask.dims() {
            return Err(Error::DimensionMismatch {
                expected: values.dims(),
                found: mask.dims(),
            });
        }
        let (w, h) = mask.dims();
        let mut any = false;
        for (x, y) in mask.members() {
            if x == 0 || y == 0 || x + 1 >= w || y + 1 >= h {
                return Err(Error::BorderViolation { x, y });
            }
            any = true;
        }
        if !any {
            return Err(Error::EmptyMask);
        }
        Ok(RoiPatch {
            values,
            mask,
            origin,
        })
    }

    pub fn values(&self) -> &GrayImage {
        &self.values
    }

    pub fn mask(&self) -> &BinaryMask {
        &self.mask
    }

    pub fn origin(&self) -> (i64, i64) {
        self.origin
    }

    pub fn width(&self) -> usize {
        self.values.width()
    }

    pub fn height(&self) -> usize {
        self.values.height()
    }

    pub fn dims(&self) -> (usize, usize) {
        self.values.dims()
    }

    pub fn area(&self) -> usize {
        self.mask.count()
    }

    /// Member bounding box in crop coordinates. Always present.
    pub fn mask_bounds(&self) -> (usize, usize, usize, usize) {
        self.mask.bounding_box().expect("patch mask is non-empty")
    }

    /// The patch mask shifted by `offset` onto a `dims`-sized canvas.
    ///
    /// Every shifted member must be strictly interior to the canvas.
    pub fn placed_mask(&self, dims: (usize, usize), offset: (i64, i64)) -> Result<BinaryMask> {
        let (w, h) = dims;
        let (dx, dy) = offset;
        let mut out = BinaryMask::new(w, h);
        for (x, y) in self.mask.members() {
            let tx = x as i64 + dx;
            let ty = y as i64 + dy;
            if tx < 1 || ty < 1 || tx > w as i64 - 2 || ty > h as i64 - 2 {
                return Err(Error::PlacementOutOfBounds { dx, dy });
            }
            out.set(tx as usize, ty as usize, true);
        }
        Ok(out)
    }

    /// Smallest sub-rectangle holding the mask dilated by one pixel.
    pub(crate) fn recrop(values: &GrayImage, mask: &BinaryMask, origin: (i64, i64)) -> Result<Self> {
        let (x0, y0, x1, y1) = mask.bounding_box().ok_or(Error::DegenerateTransform)?;
        if x0 == 0 || y0 == 0 || x1 + 1 >= mask.width() || y1 + 1 >= mask.height() {
            return Err(Error::BorderViolation { x: x0, y: y0 });
        }
        let (cx, cy) = (x0 - 1, y0 - 1);
        let cw = x1 - x0 + 3;
        let ch = y1 - y0 + 3;
        let v = GrayImage::from_fn(cw, ch, |x, y| values.get(cx + x, cy + y));
        let m = BinaryMask::from_fn(cw, ch, |x, y| mask.get(cx + x, cy + y));
        RoiPatch::new(v, m, (origin.0 + cx as i64, origin.1 + cy as i64))
    }
}

/// Crops the instance at `instance_mask` out of `source`.
///
/// The crop is the mask's bounding box grown by one pixel on each side. Where
/// that ring falls outside the source, intensities replicate the nearest edge
/// pixel and the mask is empty.
pub fn extract_roi(source: &GrayImage, instance_mask: &BinaryMask) -> Result<RoiPatch> {
    if source.dims() != instance_mask.dims() {
        return Err(Error::DimensionMismatch {
            expected: source.dims(),
            found: instance_mask.dims(),
        });
    }
    let (x0, y0, x1, y1) = instance_mask.bounding_box().ok_or(Error::EmptyMask)?;
    let ox = x0 as i64 - 1;
    let oy = y0 as i64 - 1;
    let cw = x1 - x0 + 3;
    let ch = y1 - y0 + 3;
    let max_x = source.width() as i64 - 1;
    let max_y = source.height() as i64 - 1;
    let values = GrayImage::from_fn(cw, ch, |x, y| {
        let sx = (ox + x as i64).clamp(0, max_x) as usize;
        let sy = (oy + y as i64).clamp(0, max_y) as usize;
        source.get(sx, sy)
    });
    let mask = BinaryMask::from_fn(cw, ch, |x, y| {
        instance_mask.get_signed(ox + x as i64, oy + y as i64)
    });
    RoiPatch::new(values, mask, (ox, oy))
}
