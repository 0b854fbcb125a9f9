use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::paste::{paste, AugmentedSample, BlendMode};
use super::placement::{sample_placement, OverlapPolicy, Placement};
use super::roi::extract_roi;
use super::seam::seam_score;
use super::transform::{transform_roi, TransformParams};
use crate::error::{Error, Result};
use crate::image::{BinaryMask, GrayImage};
use crate::solver::{SolveReport, SolverParams};

/// One annotated image held in memory.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetItem {
    pub id: String,
    pub image: GrayImage,
    pub masks: Vec<BinaryMask>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Dataset {
    pub items: Vec<DatasetItem>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AugmentConfig {
    /// Inclusive scale range `[lo, hi]`, `0 < lo ≤ hi`.
    pub scale: [f64; 2],
    /// Rotation is drawn uniformly from `[-rotation_deg, +rotation_deg]`.
    pub rotation_deg: f64,
    pub flip_prob: f64,
    pub mode: BlendMode,
    pub overlap: OverlapPolicy,
    pub retries: usize,
    pub solver: SolverParams,
    pub seed: u64,
    /// Total number of samples requested for the run.
    pub count: usize,
}

impl Default for AugmentConfig {
    fn default() -> Self {
        AugmentConfig {
            scale: [0.8, 1.25],
            rotation_deg: 25.0,
            flip_prob: 0.5,
            mode: BlendMode::Seamless,
            overlap: OverlapPolicy::Reject,
            retries: 64,
            solver: SolverParams::default(),
            seed: 0,
            count: 1,
        }
    }
}

impl AugmentConfig {
    pub fn validate(&self) -> Result<()> {
        let [lo, hi] = self.scale;
        if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "scale range must satisfy 0 < lo <= hi, got [{lo}, {hi}]"
            )));
        }
        if !(self.rotation_deg >= 0.0 && self.rotation_deg.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "rotation range must be a finite non-negative angle, got {}",
                self.rotation_deg
            )));
        }
        if !(0.0..=1.0).contains(&self.flip_prob) {
            return Err(Error::InvalidConfig(format!(
                "flip probability must lie in [0, 1], got {}",
                self.flip_prob
            )));
        }
        if self.retries == 0 {
            return Err(Error::InvalidConfig(
                "placement retries must be at least 1".to_string(),
            ));
        }
        self.solver.validate()
    }
}

/// Seed of the RNG stream for sample `index` of a run seeded with `master`.
///
/// `splitmix64(master ^ splitmix64(index))`, where `splitmix64` is the
/// standard SplitMix64 finalizer applied after adding the golden-gamma
/// increment. Frozen: changing it changes every generated dataset.
pub fn derive_sample_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index))
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Everything needed to regenerate a sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub sample_index: usize,
    pub sample_seed: u64,
    pub donor_id: String,
    pub donor_instance: usize,
    pub recipient_id: String,
    pub transform: TransformParams,
    pub placement: Placement,
    pub mode: BlendMode,
    pub solve: Option<SolveReport>,
    pub seam_score: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedSample {
    pub index: usize,
    pub sample: AugmentedSample,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SkipReason {
    DegenerateTransform,
    PatchTooLarge,
    NoValidPlacement,
    OverlapViolation,
    PlacementOutOfBounds,
    SolverError,
}

impl SkipReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            SkipReason::DegenerateTransform => "degenerate_transform",
            SkipReason::PatchTooLarge => "patch_too_large",
            SkipReason::NoValidPlacement => "no_valid_placement",
            SkipReason::OverlapViolation => "overlap_violation",
            SkipReason::PlacementOutOfBounds => "placement_out_of_bounds",
            SkipReason::SolverError => "solver_error",
        }
    }

    fn from_error(err: &Error) -> Self {
        match err {
            Error::DegenerateTransform => SkipReason::DegenerateTransform,
            Error::PatchTooLarge { .. } => SkipReason::PatchTooLarge,
            Error::NoValidPlacement { .. } => SkipReason::NoValidPlacement,
            Error::OverlapViolation { .. } => SkipReason::OverlapViolation,
            Error::PlacementOutOfBounds { .. } | Error::BorderViolation { .. } => {
                SkipReason::PlacementOutOfBounds
            }
            _ => SkipReason::SolverError,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AugmentSummary {
    pub requested: usize,
    pub written: usize,
    pub skipped: usize,
    pub skips_by_reason: BTreeMap<SkipReason, usize>,
    /// `(sample index, reason)` for every skipped sample.
    pub skips: Vec<(usize, SkipReason)>,
    /// Seamless samples whose solve hit the iteration cap.
    pub unconverged: usize,
    /// Mean seam score of the pasted region over written samples.
    pub mean_seam_score: Option<f64>,
}

/// Receives generated samples in index order.
pub trait SampleSink {
    fn write_sample(&mut self, sample: &GeneratedSample) -> Result<()>;

    /// Called once after the last sample.
    fn finish(&mut self, _config: &AugmentConfig, _summary: &AugmentSummary) -> Result<()> {
        Ok(())
    }
}

impl SampleSink for Vec<GeneratedSample> {
    fn write_sample(&mut self, sample: &GeneratedSample) -> Result<()> {
        self.push(sample.clone());
        Ok(())
    }
}

fn donors(dataset: &Dataset) -> Vec<(usize, usize)> {
    dataset
        .items
        .iter()
        .enumerate()
        .flat_map(|(i, item)| {
            item.masks
                .iter()
                .enumerate()
                .filter(|(_, m)| !m.is_empty())
                .map(move |(k, _)| (i, k))
        })
        .collect()
}

/// Produces sample `index` of a run. Depends only on the dataset, the
/// config and `index`.
///
/// Draw order from the per-sample stream: donor instance, recipient image,
/// scale, rotation, flip, then placement offsets.
pub fn generate_sample(
    dataset: &Dataset,
    config: &AugmentConfig,
    index: usize,
) -> Result<std::result::Result<GeneratedSample, SkipReason>> {
    let donor_list = donors(dataset);
    if donor_list.is_empty() {
        return Err(Error::NoDonorInstances);
    }
    Ok(generate_with(dataset, &donor_list, config, index))
}

fn generate_with(
    dataset: &Dataset,
    donor_list: &[(usize, usize)],
    config: &AugmentConfig,
    index: usize,
) -> std::result::Result<GeneratedSample, SkipReason> {
    let sample_seed = derive_sample_seed(config.seed, index as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(sample_seed);

    let (donor_item, donor_instance) = donor_list[rng.random_range(0..donor_list.len())];
    let n = dataset.items.len();
    let recipient_item = if n >= 2 {
        let r = rng.random_range(0..n - 1);
        if r >= donor_item {
            r + 1
        } else {
            r
        }
    } else {
        donor_item
    };
    let [lo, hi] = config.scale;
    let transform = TransformParams {
        scale: if lo < hi { rng.random_range(lo..=hi) } else { lo },
        rotation_deg: if config.rotation_deg > 0.0 {
            rng.random_range(-config.rotation_deg..=config.rotation_deg)
        } else {
            0.0
        },
        flip_horizontal: rng.random_bool(config.flip_prob),
    };

    let skip = |e: Error| SkipReason::from_error(&e);
    let donor = &dataset.items[donor_item];
    let recipient = &dataset.items[recipient_item];
    let patch = extract_roi(&donor.image, &donor.masks[donor_instance]).map_err(skip)?;
    let patch = transform_roi(&patch, &transform).map_err(skip)?;
    let placement = sample_placement(
        &mut rng,
        recipient.image.dims(),
        &patch,
        &recipient.masks,
        config.overlap,
        config.retries,
    )
    .map_err(skip)?;
    let sample = paste(
        &recipient.image,
        &recipient.masks,
        &patch,
        placement,
        config.mode,
        config.overlap,
        &config.solver,
    )
    .map_err(skip)?;
    let seam = seam_score(&sample.image, sample.pasted_mask()).map_err(skip)?;

    Ok(GeneratedSample {
        index,
        provenance: Provenance {
            sample_index: index,
            sample_seed,
            donor_id: donor.id.clone(),
            donor_instance,
            recipient_id: recipient.id.clone(),
            transform,
            placement,
            mode: config.mode,
            solve: sample.solve,
            seam_score: seam,
        },
        sample,
    })
}

const BATCH: usize = 32;

/// Runs `config.count` extract → transform → place → paste rounds and hands
/// each produced sample to `sink` in index order.
///
/// Samples are generated in parallel batches; output does not depend on the
/// worker count. Failed rounds are counted in the summary, never retried.
pub fn augment_dataset(
    dataset: &Dataset,
    config: &AugmentConfig,
    sink: &mut dyn SampleSink,
) -> Result<AugmentSummary> {
    config.validate()?;
    let donor_list = donors(dataset);
    if donor_list.is_empty() {
        return Err(Error::NoDonorInstances);
    }

    let mut summary = AugmentSummary {
        requested: config.count,
        ..Default::default()
    };
    let mut seam_total = 0.0;
    for start in (0..config.count).step_by(BATCH) {
        let end = (start + BATCH).min(config.count);
        let batch: Vec<_> = (start..end)
            .into_par_iter()
            .map(|i| (i, generate_with(dataset, &donor_list, config, i)))
            .collect();
        for (i, outcome) in batch {
            match outcome {
                Ok(generated) => {
                    sink.write_sample(&generated)?;
                    summary.written += 1;
                    seam_total += generated.provenance.seam_score;
                    if generated.sample.solve.is_some_and(|r| !r.converged) {
                        summary.unconverged += 1;
                    }
                }
                Err(reason) => {
                    summary.skipped += 1;
                    *summary.skips_by_reason.entry(reason).or_default() += 1;
                    summary.skips.push((i, reason));
                }
            }
        }
    }
    if summary.written > 0 {
        summary.mean_seam_score = Some(seam_total / summary.written as f64);
    }
    sink.finish(config, &summary)?;
    Ok(summary)
}
