//! Motion library: clips of 30 fps robot states and their conversion into a
//! normalized supervised dataset of state-transition pairs in the robot's
//! local frame.

mod clip;
mod frame;
mod io;
mod pairs;
mod stats;
mod window;

pub use clip::{ClipSource, MotionClip};
pub use frame::{extract_local_frame, Frame, PlanarTransform, STATE_DIM};
pub use io::{
    import_clip, load_clip, load_library, save_clip, save_library, LibraryManifest, params_hash,
};
pub use pairs::{make_training_pairs, TrainingPair, INPUT_DIM, OUTPUT_DIM};
pub use stats::{compute_stats, FeatureStats};
pub use window::{build_trajectory_window, RootSample, TrajectoryWindow, WINDOW_OFFSETS};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LibraryError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invariant violation at {field}: {detail}")]
    InvariantViolation { field: String, detail: String },
    #[error("unsupported format version {found}, expected {expected}")]
    VersionMismatch { found: u32, expected: u32 },
    #[error("clip too short: {0}")]
    ClipTooShort(String),
    #[error("empty dataset")]
    EmptyDataset,
    #[error("degenerate orientation: projected forward vector is near zero")]
    DegenerateOrientation,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
