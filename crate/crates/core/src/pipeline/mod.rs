//! Copy-paste augmentation: crop a lesion, transform it, place it in another
//! image and blend it in, keeping the instance masks consistent.

mod augment;
mod paste;
mod placement;
mod roi;
mod seam;
mod transform;

pub use augment::{
    augment_dataset, derive_sample_seed, generate_sample, AugmentConfig, AugmentSummary, Dataset,
    DatasetItem, GeneratedSample, Provenance, SampleSink, SkipReason,
};
pub use paste::{paste, AugmentedSample, BlendMode};
pub use placement::{sample_placement, valid_offset_range, OverlapPolicy, Placement};
pub use roi::{extract_roi, RoiPatch};
pub use seam::seam_score;
pub use transform::{transform_roi, TransformParams};
