//! Clip and library persistence.
//!
//! Clips are stored as JSON Lines: a header object followed by one object
//! per frame. A library is a directory of clip files plus `manifest.json`
//! holding the clip list, dataset statistics and a hash of the model
//! parameters the clips were generated for.

use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::clip::{ClipSource, MotionClip};
use super::frame::Frame;
use super::stats::FeatureStats;
use super::LibraryError;
use crate::srbd::SrbdParams;
use crate::terrain::TerrainModel;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct ClipHeader {
    format: String,
    version: u32,
    fps: f64,
    source: ClipSource,
    terrain: TerrainModel,
}

#[derive(Debug, Serialize, Deserialize)]
struct FrameRecord {
    t: f64,
    r: [f64; 3],
    rd: [f64; 3],
    w6: [f64; 6],
    e: [[f64; 3]; 4],
    ed: [[f64; 3]; 4],
    contact: [bool; 4],
}

impl FrameRecord {
    fn from_frame(f: &Frame) -> Self {
        Self {
            t: f.time,
            r: f.root_position.into(),
            rd: f.root_velocity.into(),
            w6: f.orientation,
            e: std::array::from_fn(|leg| f.foot_positions[leg].into()),
            ed: std::array::from_fn(|leg| f.foot_velocities[leg].into()),
            contact: f.contact_flags,
        }
    }

    fn into_frame(self) -> Frame {
        Frame {
            time: self.t,
            root_position: self.r.into(),
            root_velocity: self.rd.into(),
            orientation: self.w6,
            foot_positions: std::array::from_fn(|leg| self.e[leg].into()),
            foot_velocities: std::array::from_fn(|leg| self.ed[leg].into()),
            contact_flags: self.contact,
        }
    }
}

pub fn save_clip(clip: &MotionClip, path: &Path) -> Result<(), LibraryError> {
    let mut w = BufWriter::new(File::create(path)?);
    let header = ClipHeader {
        format: "motion-clip".into(),
        version: FORMAT_VERSION,
        fps: clip.fps,
        source: clip.source,
        terrain: clip.terrain_ref.clone(),
    };
    let line = serde_json::to_string(&header).map_err(|e| LibraryError::Parse(e.to_string()))?;
    writeln!(w, "{line}")?;
    for frame in &clip.frames {
        let rec = FrameRecord::from_frame(frame);
        let line = serde_json::to_string(&rec).map_err(|e| LibraryError::Parse(e.to_string()))?;
        writeln!(w, "{line}")?;
    }
    w.flush()?;
    Ok(())
}

/// Load and validate a clip written by [`save_clip`] (or hand-authored in
/// the same format, see [`import_clip`]).
pub fn load_clip(path: &Path) -> Result<MotionClip, LibraryError> {
    let reader = BufReader::new(File::open(path)?);
    let mut lines = reader.lines();
    let header_line = lines
        .next()
        .ok_or_else(|| LibraryError::Parse("empty clip file".into()))??;
    let header: ClipHeader = serde_json::from_str(&header_line)
        .map_err(|e| LibraryError::Parse(format!("bad header: {e}")))?;
    if header.format != "motion-clip" {
        return Err(LibraryError::Parse(format!(
            "unexpected format tag {:?}",
            header.format
        )));
    }
    if header.version != FORMAT_VERSION {
        return Err(LibraryError::VersionMismatch {
            found: header.version,
            expected: FORMAT_VERSION,
        });
    }
    let mut frames = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: FrameRecord = serde_json::from_str(&line)
            .map_err(|e| LibraryError::Parse(format!("frame {i}: {e}")))?;
        frames.push(rec.into_frame());
    }
    let clip = MotionClip {
        fps: header.fps,
        frames,
        terrain_ref: header.terrain,
        source: header.source,
    };
    clip.validate()?;
    Ok(clip)
}

/// Load an externally produced clip, forcing its source tag to `Imported`.
pub fn import_clip(path: &Path) -> Result<MotionClip, LibraryError> {
    let mut clip = load_clip(path)?;
    clip.source = ClipSource::Imported;
    Ok(clip)
}

/// Stable hash of the model parameters a library was generated with, so a
/// library can be detected as stale after a parameter change.
pub fn params_hash(params: &SrbdParams) -> String {
    let json = serde_json::to_string(params).expect("params serialize");
    let digest = Sha256::digest(json.as_bytes());
    format!("{digest:x}")
}

#[derive(Debug, Serialize, Deserialize)]
pub struct LibraryManifest {
    pub version: u32,
    pub params_hash: String,
    pub clips: Vec<String>,
    pub stats: Option<FeatureStats>,
}

/// Write clips plus `manifest.json` into `dir` (created if absent).
pub fn save_library(
    dir: &Path,
    clips: &[(String, MotionClip)],
    params: &SrbdParams,
    stats: Option<&FeatureStats>,
) -> Result<(), LibraryError> {
    fs::create_dir_all(dir)?;
    let mut names = Vec::new();
    for (name, clip) in clips {
        let file = format!("{name}.jsonl");
        save_clip(clip, &dir.join(&file))?;
        names.push(file);
    }
    let manifest = LibraryManifest {
        version: FORMAT_VERSION,
        params_hash: params_hash(params),
        clips: names,
        stats: stats.cloned(),
    };
    let json = serde_json::to_string_pretty(&manifest)
        .map_err(|e| LibraryError::Parse(e.to_string()))?;
    fs::write(dir.join("manifest.json"), json)?;
    Ok(())
}

pub fn load_library(dir: &Path) -> Result<(LibraryManifest, Vec<MotionClip>), LibraryError> {
    let json = fs::read_to_string(dir.join("manifest.json"))?;
    let manifest: LibraryManifest =
        serde_json::from_str(&json).map_err(|e| LibraryError::Parse(format!("manifest: {e}")))?;
    if manifest.version != FORMAT_VERSION {
        return Err(LibraryError::VersionMismatch {
            found: manifest.version,
            expected: FORMAT_VERSION,
        });
    }
    let mut clips = Vec::with_capacity(manifest.clips.len());
    for file in &manifest.clips {
        clips.push(load_clip(&dir.join(file))?);
    }
    if clips.is_empty() {
        return Err(LibraryError::EmptyDataset);
    }
    Ok((manifest, clips))
}
