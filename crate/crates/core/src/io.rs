//! Image, mask and manifest files.
//!
//! Images are 8-bit grayscale PNG or binary PGM. Intensities map to `[0, 1]`
//! as `byte / 255` on load and back as `round(v × 255)` (half up) on save.
//! Masks are 8-bit grayscale files where bytes above 127 are members.
//!
//! A manifest is a JSON document listing images and their per-instance mask
//! files, with paths relative to the manifest:
//!
//! ```json
//! {"version": 1, "entries": [{"id": "a", "image": "a.png", "masks": ["a_0.png"]}]}
//! ```
//!
//! Output manifests written by [`DirectorySink`] use the same layout plus a
//! top-level `"config"` and a per-entry `"provenance"`, so they can be fed
//! back in as input.

use std::collections::HashSet;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use image::codecs::pnm::{PnmEncoder, PnmSubtype, SampleEncoding};
use image::{DynamicImage, ImageEncoder, ImageFormat, ImageReader};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::image::{BinaryMask, GrayImage};
use crate::pipeline::{
    AugmentConfig, AugmentSummary, Dataset, DatasetItem, GeneratedSample, Provenance, SampleSink,
};

pub const MANIFEST_VERSION: u32 = 1;

/// `round(v × 255)` with halves rounded up, after clamping to `[0, 1]`.
pub fn quantize(v: f64) -> u8 {
    (v.clamp(0.0, 1.0) * 255.0 + 0.5).floor() as u8
}

fn decode_luma8(path: &Path) -> Result<image::GrayImage> {
    let reader = ImageReader::open(path)?
        .with_guessed_format()
        .map_err(Error::Io)?;
    match reader.format() {
        Some(ImageFormat::Png) | Some(ImageFormat::Pnm) => {}
        other => {
            return Err(Error::UnsupportedFormat {
                path: path.to_path_buf(),
                reason: match other {
                    Some(f) => format!("{f:?} is not PNG or PGM"),
                    None => "unrecognized file signature".to_string(),
                },
            })
        }
    }
    let decoded = reader.decode().map_err(|e| Error::Decode {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })?;
    match decoded {
        DynamicImage::ImageLuma8(img) => Ok(img),
        other => Err(Error::UnsupportedFormat {
            path: path.to_path_buf(),
            reason: format!("expected 8-bit grayscale, found {:?}", other.color()),
        }),
    }
}

pub fn load_image(path: impl AsRef<Path>) -> Result<GrayImage> {
    let raw = decode_luma8(path.as_ref())?;
    let (w, h) = (raw.width() as usize, raw.height() as usize);
    GrayImage::new(w, h, raw.into_raw().into_iter().map(|b| b as f64 / 255.0).collect())
}

/// Writes 8-bit grayscale; PGM when the extension is `.pgm`, PNG otherwise.
pub fn save_image(image: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    let bytes: Vec<u8> = image.data().iter().map(|&v| quantize(v)).collect();
    write_luma8(path.as_ref(), image.width(), image.height(), &bytes)
}

/// Loads a mask and checks it has `expected` dimensions.
pub fn load_mask(path: impl AsRef<Path>, expected: (usize, usize)) -> Result<BinaryMask> {
    let raw = decode_luma8(path.as_ref())?;
    let found = (raw.width() as usize, raw.height() as usize);
    if found != expected {
        return Err(Error::DimensionMismatch { expected, found });
    }
    BinaryMask::from_bits(found.0, found.1, raw.into_raw().into_iter().map(|b| b > 127).collect())
}

/// Members are written as 255, everything else as 0.
pub fn save_mask(mask: &BinaryMask, path: impl AsRef<Path>) -> Result<()> {
    let bytes: Vec<u8> = mask.bits().iter().map(|&b| if b { 255 } else { 0 }).collect();
    write_luma8(path.as_ref(), mask.width(), mask.height(), &bytes)
}

fn write_luma8(path: &Path, width: usize, height: usize, bytes: &[u8]) -> Result<()> {
    let encode_err = |e: image::ImageError| match e {
        image::ImageError::IoError(io) => Error::Io(io),
        other => Error::Io(std::io::Error::other(other)),
    };
    let mut out = BufWriter::new(File::create(path)?);
    let is_pgm = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("pgm"));
    if is_pgm {
        PnmEncoder::new(&mut out)
            .with_subtype(PnmSubtype::Graymap(SampleEncoding::Binary))
            .write_image(bytes, width as u32, height as u32, image::ExtendedColorType::L8)
            .map_err(encode_err)?;
    } else {
        image::codecs::png::PngEncoder::new(&mut out)
            .write_image(bytes, width as u32, height as u32, image::ExtendedColorType::L8)
            .map_err(encode_err)?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawManifest {
    version: u32,
    entries: Vec<RawEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawEntry {
    id: String,
    image: String,
    masks: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub id: String,
    /// Resolved against the manifest's directory.
    pub image: PathBuf,
    pub masks: Vec<PathBuf>,
}

/// A validated input manifest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetManifest {
    pub entries: Vec<ManifestEntry>,
}

/// Reads and validates a manifest. Ids must be unique and every mask must
/// have its image's dimensions; file headers are read to check this. Any
/// violation fails the whole load.
pub fn load_manifest(path: impl AsRef<Path>) -> Result<DatasetManifest> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    let raw: RawManifest = serde_json::from_str(&text).map_err(|e| {
        Error::schema(None, "manifest", format!("{e}"))
    })?;
    if raw.version != MANIFEST_VERSION {
        return Err(Error::schema(
            None,
            "version",
            format!("unsupported version {}, expected {MANIFEST_VERSION}", raw.version),
        ));
    }
    let root = path.parent().unwrap_or(Path::new(""));
    let mut seen = HashSet::new();
    let mut entries = Vec::with_capacity(raw.entries.len());
    for (index, e) in raw.entries.into_iter().enumerate() {
        if e.id.is_empty() {
            return Err(Error::schema(Some(index), "id", "id must not be empty"));
        }
        if !seen.insert(e.id.clone()) {
            return Err(Error::schema(Some(index), "id", format!("duplicate id `{}`", e.id)));
        }
        let image = root.join(&e.image);
        let dims = header_dims(&image).map_err(|m| Error::schema(Some(index), "image", m))?;
        let mut masks = Vec::with_capacity(e.masks.len());
        for m in &e.masks {
            let mask_path = root.join(m);
            let mdims =
                header_dims(&mask_path).map_err(|msg| Error::schema(Some(index), "masks", msg))?;
            if mdims != dims {
                return Err(Error::schema(
                    Some(index),
                    "masks",
                    format!(
                        "mask {} is {}x{} but image is {}x{}",
                        mask_path.display(),
                        mdims.0,
                        mdims.1,
                        dims.0,
                        dims.1
                    ),
                ));
            }
            masks.push(mask_path);
        }
        entries.push(ManifestEntry {
            id: e.id,
            image,
            masks,
        });
    }
    Ok(DatasetManifest { entries })
}

fn header_dims(path: &Path) -> std::result::Result<(usize, usize), String> {
    if !path.is_file() {
        return Err(format!("file {} does not exist", path.display()));
    }
    image::image_dimensions(path)
        .map(|(w, h)| (w as usize, h as usize))
        .map_err(|e| format!("cannot read {}: {e}", path.display()))
}

/// Decodes every image and mask named by `manifest`.
pub fn load_dataset(manifest: &DatasetManifest) -> Result<Dataset> {
    let items = manifest
        .entries
        .iter()
        .map(|e| {
            let image = load_image(&e.image)?;
            let masks = e
                .masks
                .iter()
                .map(|m| load_mask(m, image.dims()))
                .collect::<Result<Vec<_>>>()?;
            Ok(DatasetItem {
                id: e.id.clone(),
                image,
                masks,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Dataset { items })
}

/// One written sample, with paths relative to the output manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub id: String,
    pub image: String,
    pub masks: Vec<String>,
    pub provenance: Provenance,
}

#[derive(Serialize)]
struct OutputManifest<'a> {
    version: u32,
    config: &'a AugmentConfig,
    entries: &'a [OutputRecord],
}

pub fn write_output_manifest(
    records: &[OutputRecord],
    config: &AugmentConfig,
    path: impl AsRef<Path>,
) -> Result<()> {
    let doc = OutputManifest {
        version: MANIFEST_VERSION,
        config,
        entries: records,
    };
    let mut text = serde_json::to_string_pretty(&doc).map_err(std::io::Error::other)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

/// Writes samples under a directory:
///
/// ```text
/// <dir>/images/sample_00000.png
/// <dir>/masks/sample_00000_00.png   (one per instance, pasted last)
/// <dir>/manifest.json
/// ```
pub struct DirectorySink {
    dir: PathBuf,
    records: Vec<OutputRecord>,
}

impl DirectorySink {
    pub fn create(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(dir.join("images"))?;
        fs::create_dir_all(dir.join("masks"))?;
        Ok(DirectorySink {
            dir,
            records: Vec::new(),
        })
    }

    pub fn records(&self) -> &[OutputRecord] {
        &self.records
    }

    pub fn manifest_path(&self) -> PathBuf {
        self.dir.join("manifest.json")
    }
}

impl SampleSink for DirectorySink {
    fn write_sample(&mut self, s: &GeneratedSample) -> Result<()> {
        let id = format!("sample_{:05}", s.index);
        let image = format!("images/{id}.png");
        save_image(&s.sample.image, self.dir.join(&image))?;
        let mut masks = Vec::with_capacity(s.sample.masks.len());
        for (k, m) in s.sample.masks.iter().enumerate() {
            let rel = format!("masks/{id}_{k:02}.png");
            save_mask(m, self.dir.join(&rel))?;
            masks.push(rel);
        }
        self.records.push(OutputRecord {
            id,
            image,
            masks,
            provenance: s.provenance.clone(),
        });
        Ok(())
    }

    fn finish(&mut self, config: &AugmentConfig, _summary: &AugmentSummary) -> Result<()> {
        write_output_manifest(&self.records, config, self.manifest_path())
    }
}
