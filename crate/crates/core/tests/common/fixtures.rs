//! Generator for the files under `fixtures/`.
//!
//! The images imitate B-mode ultrasound: layered tissue echogenicity with
//! depth attenuation, multiplicative Rayleigh speckle, and anechoic cysts with
//! posterior acoustic enhancement. Regenerate the committed copies with
//! `SEAMPASTE_BLESS=1 cargo test -p seampaste --test fixtures`.

use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use seampaste::image::{BinaryMask, GrayImage};
use seampaste::io::{save_image, save_mask};

use super::disk_mask;

pub const US_SIZE: usize = 96;
pub const DISK_SIZE: usize = 64;
pub const DISK_RADIUS: f64 = 10.0;

struct Cyst {
    cx: f64,
    cy: f64,
    ax: f64,
    ay: f64,
}

impl Cyst {
    fn level(&self, x: f64, y: f64) -> f64 {
        ((x - self.cx) / self.ax).powi(2) + ((y - self.cy) / self.ay).powi(2)
    }
}

fn ultrasound(seed: u64, cysts: &[Cyst]) -> (GrayImage, Vec<BinaryMask>) {
    let n = US_SIZE;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<f64> = (0..n * n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            (re * re + im * im).sqrt() / std::f64::consts::SQRT_2
        })
        .collect();
    // 3x3 box filter gives the speckle a finite correlation length.
    let speckle = |x: usize, y: usize| {
        let mut s = 0.0;
        let mut k = 0.0;
        for j in y.saturating_sub(1)..=(y + 1).min(n - 1) {
            for i in x.saturating_sub(1)..=(x + 1).min(n - 1) {
                s += raw[j * n + i];
                k += 1.0;
            }
        }
        s / k
    };
    let phase = seed as f64 * 0.7;
    let image = GrayImage::from_fn(n, n, |x, y| {
        let (fx, fy) = (x as f64, y as f64);
        let layers = 0.42 + 0.1 * (fy / 9.0 + phase).sin() + 0.04 * (fx / 23.0 + fy / 31.0).cos();
        let mut echo = layers * (-fy / 220.0).exp();
        for c in cysts {
            let l = c.level(fx, fy);
            if l <= 1.0 {
                echo = 0.07 + 0.03 * l;
            } else if fy > c.cy && (fx - c.cx).abs() < c.ax {
                // posterior enhancement fading with depth below the cyst
                let depth = fy - c.cy;
                echo *= 1.0 + 0.3 * (-depth / 30.0).exp() * (1.0 - ((fx - c.cx) / c.ax).powi(2));
            }
        }
        (echo * speckle(x, y)).min(0.95)
    });
    let masks = cysts
        .iter()
        .map(|c| BinaryMask::from_fn(n, n, |x, y| c.level(x as f64, y as f64) <= 1.0))
        .collect();
    (image, masks)
}

const MANIFEST: &str = r#"{
  "version": 1,
  "entries": [
    {"id": "us_a", "image": "us_a.png", "masks": ["us_a_0.png"]},
    {"id": "us_b", "image": "us_b.png", "masks": ["us_b_0.png", "us_b_1.png"]},
    {"id": "us_c", "image": "us_c.png", "masks": ["us_c_0.png"]}
  ]
}
"#;

/// Writes the full fixture tree into `root`.
pub fn write_fixtures(root: &Path) {
    let dataset = root.join("dataset");
    std::fs::create_dir_all(&dataset).unwrap();
    let specs: [(&str, u64, Vec<Cyst>); 3] = [
        ("us_a", 1, vec![Cyst { cx: 40.0, cy: 38.0, ax: 12.0, ay: 8.0 }]),
        (
            "us_b",
            2,
            vec![
                Cyst { cx: 28.0, cy: 30.0, ax: 7.0, ay: 6.0 },
                Cyst { cx: 66.0, cy: 58.0, ax: 10.0, ay: 7.0 },
            ],
        ),
        ("us_c", 3, vec![Cyst { cx: 60.0, cy: 34.0, ax: 9.0, ay: 9.0 }]),
    ];
    for (id, seed, cysts) in &specs {
        let (image, masks) = ultrasound(*seed, cysts);
        save_image(&image, dataset.join(format!("{id}.png"))).unwrap();
        for (k, m) in masks.iter().enumerate() {
            save_mask(m, dataset.join(format!("{id}_{k}.png"))).unwrap();
        }
    }
    std::fs::write(dataset.join("manifest.json"), MANIFEST).unwrap();

    let disk = root.join("disk");
    std::fs::create_dir_all(&disk).unwrap();
    let c = (DISK_SIZE as f64 - 1.0) / 2.0;
    let mask = disk_mask(DISK_SIZE, DISK_SIZE, c, c, DISK_RADIUS);
    save_mask(&mask, disk.join("mask.png")).unwrap();
    save_image(&GrayImage::filled(DISK_SIZE, DISK_SIZE, 0.9), disk.join("source.png")).unwrap();
    save_image(&GrayImage::filled(DISK_SIZE, DISK_SIZE, 0.1), disk.join("target.png")).unwrap();
    let unit = GrayImage::from_fn(DISK_SIZE, DISK_SIZE, |x, y| if mask.get(x, y) { 1.0 } else { 0.0 });
    save_image(&unit, disk.join("unit_jump.png")).unwrap();
}
