use crate::error::{Error, Result};
use crate::image::BinaryMask;

const NOT_IN_REGION: usize = usize::MAX;

/// A validated paste region Ω together with its pixel ↔ unknown numbering.
///
/// Every member has all four axis-aligned neighbors inside the image, so the
/// boundary ring ∂Ω (non-members 4-adjacent to a member) is always defined.
/// Unknowns are numbered in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    width: usize,
    height: usize,
    pixels: Vec<(usize, usize)>,
    index: Vec<usize>,
}

/// Validates `mask` as a paste region and numbers its pixels.
pub fn index_region(mask: &BinaryMask) -> Result<Region> {
    let (width, height) = mask.dims();
    let mut pixels = Vec::new();
    let mut index = vec![NOT_IN_REGION; width * height];
    for (x, y) in mask.members() {
        if x == 0 || y == 0 || x + 1 >= width || y + 1 >= height {
            return Err(Error::BorderViolation { x, y });
        }
        index[y * width + x] = pixels.len();
        pixels.push((x, y));
    }
    if pixels.is_empty() {
        return Err(Error::EmptyRegion);
    }
    Ok(Region {
        width,
        height,
        pixels,
        index,
    })
}

impl Region {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    /// Number of unknowns, `|Ω|`.
    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    /// Pixel coordinates in unknown order.
    pub fn pixels(&self) -> &[(usize, usize)] {
        &self.pixels
    }

    pub fn pixel(&self, unknown: usize) -> (usize, usize) {
        self.pixels[unknown]
    }

    pub fn unknown_at(&self, x: usize, y: usize) -> Option<usize> {
        match self.index.get(y * self.width + x) {
            Some(&i) if i != NOT_IN_REGION => Some(i),
            _ => None,
        }
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        x < self.width && y < self.height && self.unknown_at(x, y).is_some()
    }

    pub fn to_mask(&self) -> BinaryMask {
        let mut mask = BinaryMask::new(self.width, self.height);
        for &(x, y) in &self.pixels {
            mask.set(x, y, true);
        }
        mask
    }

    /// The boundary ring ∂Ω in row-major order.
    pub fn boundary(&self) -> Vec<(usize, usize)> {
        let mut ring = BinaryMask::new(self.width, self.height);
        for &(x, y) in &self.pixels {
            for (nx, ny) in neighbors(x, y) {
                if !self.contains(nx, ny) {
                    ring.set(nx, ny, true);
                }
            }
        }
        ring.members().collect()
    }
}

/// The 4 axis-aligned neighbors of an interior pixel: left, right, up, down.
#[inline]
pub(crate) fn neighbors(x: usize, y: usize) -> [(usize, usize); 4] {
    [(x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn center_block_is_numbered_row_major() {
        let mask = BinaryMask::from_fn(5, 5, |x, y| (1..=3).contains(&x) && (1..=3).contains(&y));
        let region = index_region(&mask).unwrap();
        assert_eq!(region.len(), 9);
        for (i, &(x, y)) in region.pixels().iter().enumerate() {
            assert_eq!((x, y), (1 + i % 3, 1 + i / 3));
            assert_eq!(region.unknown_at(x, y), Some(i));
        }
        assert_eq!(region.unknown_at(0, 0), None);
        assert_eq!(region.to_mask(), mask);
    }

    #[test]
    fn empty_mask_is_rejected() {
        let mask = BinaryMask::new(5, 5);
        assert!(matches!(index_region(&mask), Err(Error::EmptyRegion)));
    }

    #[test]
    fn border_pixel_is_rejected() {
        let mut mask = BinaryMask::new(5, 5);
        mask.set(2, 2, true);
        mask.set(2, 0, true);
        assert!(matches!(
            index_region(&mask),
            Err(Error::BorderViolation { x: 2, y: 0 })
        ));
    }

    #[test]
    fn boundary_of_single_pixel_is_its_four_neighbors() {
        let mut mask = BinaryMask::new(5, 5);
        mask.set(2, 2, true);
        let region = index_region(&mask).unwrap();
        assert_eq!(region.boundary(), vec![(2, 1), (1, 2), (3, 2), (2, 3)]);
    }
}
