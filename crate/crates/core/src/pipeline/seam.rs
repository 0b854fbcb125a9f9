use crate::error::{Error, Result};
use crate::image::{BinaryMask, GrayImage};
use crate::solver::index_region;

/// Mean absolute intensity jump across the region boundary: the average of
/// `|image(p) − image(q)|` over every 4-neighbor pair with `p ∈ Ω`, `q ∉ Ω`.
pub fn seam_score(image: &GrayImage, mask: &BinaryMask) -> Result<f64> {
    if image.dims() != mask.dims() {
        return Err(Error::DimensionMismatch {
            expected: image.dims(),
            found: mask.dims(),
        });
    }
    let region = index_region(mask)?;
    let mut total = 0.0;
    let mut pairs = 0usize;
    for &(x, y) in region.pixels() {
        let inside = image.get(x, y);
        for (nx, ny) in [(x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1)] {
            if !region.contains(nx, ny) {
                total += (inside - image.get(nx, ny)).abs();
                pairs += 1;
            }
        }
    }
    Ok(total / pairs as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disk(w: usize, r: f64) -> BinaryMask {
        let c = (w as f64 - 1.0) / 2.0;
        BinaryMask::from_fn(w, w, |x, y| {
            (x as f64 - c).powi(2) + (y as f64 - c).powi(2) <= r * r
        })
    }

    #[test]
    fn uniform_image_scores_zero() {
        let image = GrayImage::filled(32, 32, 0.4);
        assert_eq!(seam_score(&image, &disk(32, 9.0)).unwrap(), 0.0);
    }

    #[test]
    fn unit_jump_scores_one() {
        let mask = disk(32, 9.0);
        let image = GrayImage::from_fn(32, 32, |x, y| if mask.get(x, y) { 1.0 } else { 0.0 });
        assert_eq!(seam_score(&image, &mask).unwrap(), 1.0);
    }

    #[test]
    fn empty_mask_is_an_error() {
        let image = GrayImage::filled(8, 8, 0.4);
        assert!(matches!(
            seam_score(&image, &BinaryMask::new(8, 8)),
            Err(Error::EmptyRegion)
        ));
    }
}
