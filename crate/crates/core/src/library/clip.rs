//! Timed frame sequences with their terrain reference.

use serde::{Deserialize, Serialize};

use super::frame::Frame;
use super::LibraryError;
use crate::terrain::TerrainModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClipSource {
    Optimized,
    Imported,
}

/// Uniformly sampled motion clip; the unit of the motion library.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MotionClip {
    pub fps: f64,
    pub frames: Vec<Frame>,
    pub terrain_ref: TerrainModel,
    pub source: ClipSource,
}

impl MotionClip {
    pub fn duration(&self) -> f64 {
        (self.frames.len().saturating_sub(1)) as f64 / self.fps
    }

    pub fn validate(&self) -> Result<(), LibraryError> {
        if self.frames.len() < 2 {
            return Err(LibraryError::InvariantViolation {
                field: "frames".into(),
                detail: format!("need at least 2 frames, got {}", self.frames.len()),
            });
        }
        if !(self.fps > 0.0) {
            return Err(LibraryError::InvariantViolation {
                field: "fps".into(),
                detail: format!("fps must be positive, got {}", self.fps),
            });
        }
        let t0 = self.frames[0].time;
        for (i, f) in self.frames.iter().enumerate() {
            f.validate().map_err(|e| match e {
                LibraryError::InvariantViolation { field, detail } => {
                    LibraryError::InvariantViolation {
                        field: format!("frames[{i}].{field}"),
                        detail,
                    }
                }
                other => other,
            })?;
            let expected = t0 + i as f64 / self.fps;
            if (f.time - expected).abs() > 1e-6 {
                return Err(LibraryError::InvariantViolation {
                    field: format!("frames[{i}].time"),
                    detail: format!("expected {expected}, got {}", f.time),
                });
            }
        }
        Ok(())
    }

    /// Frame index whose timestamp is nearest to clip-relative time `t`,
    /// clamped to the clip.
    pub fn frame_index_at(&self, t: f64) -> usize {
        let idx = (t * self.fps).round() as i64;
        idx.clamp(0, self.frames.len() as i64 - 1) as usize
    }
}
