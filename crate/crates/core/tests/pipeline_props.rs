mod common;

use common::{disk_mask, fixtures_dir, random_region};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seampaste::image::{BinaryMask, GrayImage};
use seampaste::io::{load_dataset, load_image, load_manifest};
use seampaste::pipeline::{
    augment_dataset, extract_roi, paste, sample_placement, seam_score, transform_roi,
    valid_offset_range, AugmentConfig, BlendMode, Dataset, DatasetItem, GeneratedSample,
    OverlapPolicy, Placement, RoiPatch, TransformParams,
};
use seampaste::solver::{seamless_clone, SolverParams};
use seampaste::Error;

fn square_patch(side: usize) -> RoiPatch {
    let source = GrayImage::filled(side + 10, side + 10, 0.6);
    let mask = BinaryMask::from_fn(side + 10, side + 10, |x, y| {
        (5..5 + side).contains(&x) && (5..5 + side).contains(&y)
    });
    extract_roi(&source, &mask).unwrap()
}

/// Counts output pixels whose centers fall inside the ideal scaled square,
/// sampled on a canvas centered like the transform's.
fn reference_scaled_square_area(side: usize, scale: f64) -> usize {
    let half = side as f64 * scale / 2.0;
    let n = (side as f64 * scale).ceil() as i64 + 8;
    let c = (n as f64 - 1.0) / 2.0;
    let mut count = 0;
    for y in 0..n {
        for x in 0..n {
            let (u, v) = (x as f64 - c, y as f64 - c);
            if u.abs() < half && v.abs() < half {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn doubling_scale_quadruples_area() {
    let patch = square_patch(10);
    assert_eq!(patch.area(), 100);
    let p = TransformParams { scale: 2.0, ..TransformParams::IDENTITY };
    let out = transform_roi(&patch, &p).unwrap();
    let reference = reference_scaled_square_area(10, 2.0);
    assert_eq!(reference, 400);
    let ratio = out.area() as f64 / patch.area() as f64;
    assert!((3.6..=4.4).contains(&ratio), "area ratio {ratio}");
    assert!((out.area() as f64 - reference as f64).abs() / (reference as f64) < 0.1);
}

#[test]
fn saturated_recipient_has_no_valid_placement() {
    let (w, h) = (30, 30);
    let patch = square_patch(4);
    let blocker = BinaryMask::from_fn(w, h, |x, y| x >= 1 && y >= 1 && x + 2 <= w && y + 2 <= h);

    // Exhaustive check: every in-range offset overlaps the blocker.
    let ((x0, x1), (y0, y1)) = valid_offset_range(&patch, (w, h)).unwrap();
    for dy in y0..=y1 {
        for dx in x0..=x1 {
            let placed = patch.placed_mask((w, h), (dx, dy)).unwrap();
            assert!(placed.intersects(&blocker));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let err = sample_placement(&mut rng, (w, h), &patch, &[blocker], OverlapPolicy::Reject, 64);
    assert!(matches!(err, Err(Error::NoValidPlacement { retries: 64 })));
}

#[test]
fn disk_seam_scores() {
    let n = 64;
    let c = (n as f64 - 1.0) / 2.0;
    let mask = disk_mask(n, n, c, c, 10.0);
    let patch = extract_roi(&GrayImage::filled(n, n, 1.0), &mask).unwrap();
    let target = GrayImage::filled(n, n, 0.0);
    let at = Placement { dx: patch.origin().0, dy: patch.origin().1 };
    let params = SolverParams::default();
    let direct = paste(&target, &[], &patch, at, BlendMode::Direct, OverlapPolicy::Reject, &params).unwrap();
    let seamless = paste(&target, &[], &patch, at, BlendMode::Seamless, OverlapPolicy::Reject, &params).unwrap();
    assert_eq!(direct.pasted_mask(), &mask);
    assert_eq!(seam_score(&direct.image, &mask).unwrap(), 1.0);
    assert!(seam_score(&seamless.image, &mask).unwrap() < 1.0);
}

#[test]
fn self_paste_on_fixture_is_a_fixed_point() {
    let dir = fixtures_dir().join("dataset");
    let image = load_image(dir.join("us_a.png")).unwrap();
    let mask = seampaste::io::load_mask(dir.join("us_a_0.png"), image.dims()).unwrap();
    let patch = extract_roi(&image, &mask).unwrap();
    let out = seamless_clone(&image, &patch, patch.origin(), &SolverParams::default()).unwrap();
    assert!(out.report.converged);
    for (a, b) in out.value.data().iter().zip(image.data()) {
        assert!((a - b).abs() <= 1e-4);
    }
}

fn two_image_dataset() -> Dataset {
    let manifest = load_manifest(fixtures_dir().join("dataset/manifest.json")).unwrap();
    let mut data = load_dataset(&manifest).unwrap();
    data.items.truncate(2);
    data
}

#[test]
fn accounting_identity_under_reject_policy() {
    let data = two_image_dataset();
    let config = AugmentConfig {
        count: 100,
        seed: 99,
        scale: [0.8, 2.5],
        ..Default::default()
    };
    let mut out: Vec<GeneratedSample> = Vec::new();
    let summary = augment_dataset(&data, &config, &mut out).unwrap();
    assert_eq!(summary.written + summary.skipped, 100);
    assert_eq!(summary.skips.len(), summary.skipped);
    assert_eq!(summary.skips_by_reason.values().sum::<usize>(), summary.skipped);
    assert_eq!(out.len(), summary.written);
    assert!(out.windows(2).all(|w| w[0].index < w[1].index));
}

#[test]
fn augmented_samples_keep_masks_consistent() {
    let data = two_image_dataset();
    for mode in [BlendMode::Seamless, BlendMode::Direct] {
        let config = AugmentConfig { count: 12, seed: 4, mode, ..Default::default() };
        let mut out: Vec<GeneratedSample> = Vec::new();
        augment_dataset(&data, &config, &mut out).unwrap();
        assert!(!out.is_empty());
        for s in &out {
            let recipient = data.items.iter().find(|i| i.id == s.provenance.recipient_id).unwrap();
            assert_eq!(s.sample.masks.len(), recipient.masks.len() + 1);
            let pasted = s.sample.pasted_mask();
            for i in 0..s.sample.masks.len() {
                assert_eq!(s.sample.masks[i].dims(), recipient.image.dims());
                for j in i + 1..s.sample.masks.len() {
                    assert!(!s.sample.masks[i].intersects(&s.sample.masks[j]));
                }
            }
            for (k, (a, b)) in s.sample.image.data().iter().zip(recipient.image.data()).enumerate() {
                let (x, y) = (k % recipient.image.width(), k / recipient.image.width());
                if !pasted.get(x, y) {
                    assert_eq!(a.to_bits(), b.to_bits());
                }
            }
        }
    }
}

#[test]
fn single_image_dataset_pastes_into_itself() {
    let mut data = two_image_dataset();
    data.items.truncate(1);
    let config = AugmentConfig { count: 6, seed: 1, overlap: OverlapPolicy::Occlude, ..Default::default() };
    let mut out: Vec<GeneratedSample> = Vec::new();
    let summary = augment_dataset(&data, &config, &mut out).unwrap();
    assert_eq!(summary.written, 6);
    for s in &out {
        assert_eq!(s.provenance.donor_id, s.provenance.recipient_id);
    }
}

#[test]
fn empty_dataset_has_no_donors() {
    let mut out: Vec<GeneratedSample> = Vec::new();
    assert!(matches!(
        augment_dataset(&Dataset::default(), &AugmentConfig::default(), &mut out),
        Err(Error::NoDonorInstances)
    ));
    let item = DatasetItem { id: "x".into(), image: GrayImage::filled(8, 8, 0.1), masks: vec![] };
    assert!(matches!(
        augment_dataset(&Dataset { items: vec![item] }, &AugmentConfig::default(), &mut out),
        Err(Error::NoDonorInstances)
    ));
}

fn random_patch(seed: u64) -> RoiPatch {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let source = GrayImage::from_fn(20, 20, |_, _| rng.random_range(0.0..=1.0));
    let size = rng.random_range(1..=60);
    let mask = random_region(&mut rng, (20, 20), 0, 19, size);
    extract_roi(&source, &mask).unwrap()
}

proptest! {
    #[test]
    fn flip_is_an_involution(seed in any::<u64>()) {
        let patch = random_patch(seed);
        let flip = TransformParams { flip_horizontal: true, ..TransformParams::IDENTITY };
        let twice = transform_roi(&transform_roi(&patch, &flip).unwrap(), &flip).unwrap();
        prop_assert_eq!(twice, patch);
    }

    #[test]
    fn identity_transform_is_exact(seed in any::<u64>()) {
        let patch = random_patch(seed);
        prop_assert_eq!(transform_roi(&patch, &TransformParams::IDENTITY).unwrap(), patch);
    }

    #[test]
    fn transformed_patches_stay_valid(seed in any::<u64>(), scale in 0.5f64..2.0, rot in -180.0f64..180.0, flip: bool) {
        let patch = random_patch(seed);
        let p = TransformParams { scale, rotation_deg: rot, flip_horizontal: flip };
        match transform_roi(&patch, &p) {
            Ok(out) => {
                let (x0, y0, x1, y1) = out.mask_bounds();
                prop_assert_eq!((x0, y0), (1, 1));
                prop_assert_eq!((x1 + 2, y1 + 2), out.dims());
                prop_assert!(out.values().data().iter().all(|v| (0.0..=1.0).contains(v)));
            }
            Err(e) => prop_assert!(matches!(e, Error::DegenerateTransform)),
        }
    }

    #[test]
    fn direct_paste_copies_exactly(seed in any::<u64>()) {
        let patch = random_patch(seed);
        let target = GrayImage::filled(40, 40, 0.3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let at = sample_placement(&mut rng, target.dims(), &patch, &[], OverlapPolicy::Reject, 1).unwrap();
        let s = paste(&target, &[], &patch, at, BlendMode::Direct, OverlapPolicy::Reject, &SolverParams::default()).unwrap();
        for (x, y) in patch.mask().members() {
            let tx = (x as i64 + at.dx) as usize;
            let ty = (y as i64 + at.dy) as usize;
            prop_assert_eq!(s.image.get(tx, ty), patch.values().get(x, y));
        }
        prop_assert_eq!(s.pasted_mask().count(), patch.area());
    }
}
