//! Supervised training pairs: 120-dim input (state + surrounding
//! trajectory), 72-dim output (next state + predicted future trajectory),
//! all expressed in the current frame's local coordinates.

use super::clip::MotionClip;
use super::frame::{extract_local_frame, STATE_DIM};
use super::window::{build_trajectory_window, clip_root_sample};
use super::LibraryError;

pub const INPUT_DIM: usize = 120;
pub const OUTPUT_DIM: usize = 72;

#[derive(Debug, Clone)]
pub struct TrainingPair {
    pub input: [f64; INPUT_DIM],
    pub output: [f64; OUTPUT_DIM],
}

/// One pair per transition `i -> i + 1`. The output's future trajectory is
/// the ground-truth future window of frame `i + 1`, expressed in frame `i`'s
/// local coordinates; window samples beyond the clip edges clamp to the clip
/// ends.
pub fn make_training_pairs(clip: &MotionClip) -> Result<Vec<TrainingPair>, LibraryError> {
    if clip.duration() < 2.0 {
        return Err(LibraryError::ClipTooShort(format!(
            "clip duration {:.3} s < 2 s",
            clip.duration()
        )));
    }
    let mut pairs = Vec::with_capacity(clip.frames.len() - 1);
    for i in 0..clip.frames.len() - 1 {
        let tf = extract_local_frame(&clip.frames[i])?;
        let window = build_trajectory_window(clip, i, true)?;

        let mut input = [0.0; INPUT_DIM];
        input[..STATE_DIM].copy_from_slice(&clip.frames[i].state_local(&tf));
        input[STATE_DIM..].copy_from_slice(&window.to_vec());

        let mut output = [0.0; OUTPUT_DIM];
        output[..STATE_DIM].copy_from_slice(&clip.frames[i + 1].state_local(&tf));
        for (k, off) in (1..=6).enumerate() {
            let s = clip_root_sample(clip, i + 1, off, true)?.to_local(&tf);
            output[STATE_DIM + 2 * k] = s.position.x;
            output[STATE_DIM + 2 * k + 1] = s.position.y;
            output[STATE_DIM + 12 + 2 * k] = s.direction.x;
            output[STATE_DIM + 12 + 2 * k + 1] = s.direction.y;
            output[STATE_DIM + 24 + 2 * k] = s.velocity.x;
            output[STATE_DIM + 24 + 2 * k + 1] = s.velocity.y;
        }
        pairs.push(TrainingPair { input, output });
    }
    Ok(pairs)
}
