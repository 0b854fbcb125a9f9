#![allow(dead_code)]

pub mod fixtures;
pub mod oracle;

use rand::Rng;
use seampaste::image::BinaryMask;

/// Grows a 4-connected random region of `size` pixels inside the box
/// `[lo, hi]²` of a `dims`-sized canvas, starting from a random seed pixel.
pub fn random_region<R: Rng>(
    rng: &mut R,
    dims: (usize, usize),
    lo: usize,
    hi: usize,
    size: usize,
) -> BinaryMask {
    let mut mask = BinaryMask::new(dims.0, dims.1);
    let start = (rng.random_range(lo..=hi), rng.random_range(lo..=hi));
    mask.set(start.0, start.1, true);
    let mut members = vec![start];
    let capacity = (hi - lo + 1) * (hi - lo + 1);
    while members.len() < size.min(capacity) {
        let (x, y) = members[rng.random_range(0..members.len())];
        let (nx, ny) = match rng.random_range(0..4) {
            0 => (x.wrapping_sub(1), y),
            1 => (x + 1, y),
            2 => (x, y.wrapping_sub(1)),
            _ => (x, y + 1),
        };
        if (lo..=hi).contains(&nx) && (lo..=hi).contains(&ny) && !mask.get(nx, ny) {
            mask.set(nx, ny, true);
            members.push((nx, ny));
        }
    }
    mask
}

pub fn disk_mask(w: usize, h: usize, cx: f64, cy: f64, r: f64) -> BinaryMask {
    BinaryMask::from_fn(w, h, |x, y| {
        let dx = x as f64 - cx;
        let dy = y as f64 - cy;
        dx * dx + dy * dy <= r * r
    })
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn fixtures_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}
