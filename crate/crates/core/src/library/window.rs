//! Surrounding root-trajectory windows: 6 past and 6 future samples at
//! 1/6 s spacing, expressed in a reference frame's local coordinates.

use nalgebra::Vector2;

use super::clip::MotionClip;
use super::frame::{extract_local_frame, Frame, PlanarTransform};
use super::LibraryError;

/// Sample offsets in sixths of a second: `-6..=-1` past, `1..=6` future.
pub const WINDOW_OFFSETS: [i32; 12] = [-6, -5, -4, -3, -2, -1, 1, 2, 3, 4, 5, 6];

/// Number of window samples (K).
pub const WINDOW_SAMPLES: usize = 12;

/// One root sample in world coordinates.
#[derive(Debug, Clone, Copy)]
pub struct RootSample {
    pub position: Vector2<f64>,
    pub direction: Vector2<f64>,
    pub velocity: Vector2<f64>,
    /// Desired (for library data: realized) planar speed.
    pub speed: f64,
}

impl RootSample {
    pub fn from_frame(frame: &Frame) -> Result<Self, LibraryError> {
        let yaw = frame.yaw()?;
        let velocity = frame.root_velocity.xy();
        Ok(Self {
            position: frame.root_position.xy(),
            direction: Vector2::new(yaw.cos(), yaw.sin()),
            velocity,
            speed: velocity.norm(),
        })
    }

    pub fn to_local(&self, tf: &PlanarTransform) -> Self {
        Self {
            position: tf.planar_to_local(&self.position),
            direction: tf.dir_to_local(&self.direction),
            velocity: tf.dir_to_local(&self.velocity),
            speed: self.speed,
        }
    }
}

/// The K=12 surrounding root-trajectory samples in local coordinates.
#[derive(Debug, Clone)]
pub struct TrajectoryWindow {
    pub samples: [RootSample; WINDOW_SAMPLES],
}

impl TrajectoryWindow {
    /// Flatten into the 84-dim network slice: positions (24), directions
    /// (24), velocities (24), desired speeds (12).
    pub fn to_vec(&self) -> [f64; 84] {
        let mut out = [0.0; 84];
        for (k, s) in self.samples.iter().enumerate() {
            out[2 * k] = s.position.x;
            out[2 * k + 1] = s.position.y;
            out[24 + 2 * k] = s.direction.x;
            out[24 + 2 * k + 1] = s.direction.y;
            out[48 + 2 * k] = s.velocity.x;
            out[48 + 2 * k + 1] = s.velocity.y;
            out[72 + k] = s.speed;
        }
        out
    }

    /// Future half (offsets +1/6 .. +6/6).
    pub fn future(&self) -> &[RootSample] {
        &self.samples[6..]
    }
}

/// World-frame root sample of the clip frame nearest to offset
/// `offset_sixths / 6` seconds around frame `i`, clamped to the clip ends.
pub fn clip_root_sample(
    clip: &MotionClip,
    i: usize,
    offset_sixths: i32,
    clamp: bool,
) -> Result<RootSample, LibraryError> {
    let step = clip.fps / 6.0;
    let j = i as f64 + offset_sixths as f64 * step;
    let j = j.round() as i64;
    let max = clip.frames.len() as i64 - 1;
    if !clamp && (j < 0 || j > max) {
        return Err(LibraryError::ClipTooShort(format!(
            "window sample {offset_sixths}/6 s around frame {i} falls outside the clip"
        )));
    }
    RootSample::from_frame(&clip.frames[j.clamp(0, max) as usize])
}

/// Build the 12-sample surrounding trajectory window of frame `i`, in frame
/// `i`'s local coordinates. For library data the desired-speed channel is
/// the realized planar speed.
pub fn build_trajectory_window(
    clip: &MotionClip,
    i: usize,
    clamp: bool,
) -> Result<TrajectoryWindow, LibraryError> {
    if !clamp && clip.duration() < 2.0 {
        return Err(LibraryError::ClipTooShort(format!(
            "clip duration {:.3} s < 2 s",
            clip.duration()
        )));
    }
    let tf = extract_local_frame(&clip.frames[i])?;
    let mut samples = [RootSample {
        position: Vector2::zeros(),
        direction: Vector2::new(1.0, 0.0),
        velocity: Vector2::zeros(),
        speed: 0.0,
    }; WINDOW_SAMPLES];
    for (k, &off) in WINDOW_OFFSETS.iter().enumerate() {
        samples[k] = clip_root_sample(clip, i, off, clamp)?.to_local(&tf);
    }
    Ok(TrajectoryWindow { samples })
}
