//! Copy-paste data augmentation for grayscale ultrasound images.
//!
//! A lesion is cropped from one annotated image, randomly scaled, flipped and
//! rotated, then pasted into another image. Instead of copying pixels, the
//! paste solves a discrete Poisson equation: inside the pasted region the
//! result follows the lesion's gradients, while on the region boundary it is
//! pinned to the background. The seam therefore disappears.
//!
//! ```
//! use seampaste::image::{BinaryMask, GrayImage};
//! use seampaste::pipeline::{extract_roi, seam_score};
//! use seampaste::solver::{seamless_clone, SolverParams};
//!
//! // A bright lesion on a mid-gray source.
//! let source = GrayImage::from_fn(32, 32, |x, y| {
//!     let r2 = (x as f64 - 16.0).powi(2) + (y as f64 - 16.0).powi(2);
//!     0.5 + 0.4 * (-r2 / 20.0).exp()
//! });
//! let lesion = BinaryMask::from_fn(32, 32, |x, y| {
//!     (x as f64 - 16.0).powi(2) + (y as f64 - 16.0).powi(2) <= 36.0
//! });
//! let patch = extract_roi(&source, &lesion)?;
//!
//! let background = GrayImage::filled(48, 48, 0.2);
//! let blended = seamless_clone(&background, &patch, (20, 20), &SolverParams::default())?;
//! assert!(blended.report.converged);
//!
//! let region = patch.placed_mask(background.dims(), (20, 20))?;
//! assert!(seam_score(&blended.value, &region)? < 0.05);
//! # Ok::<(), seampaste::Error>(())
//! ```

pub mod error;
pub mod image;
pub mod io;
pub mod pipeline;
pub mod solver;

pub use error::{Error, Result};
