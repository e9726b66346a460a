//! Core library for an autoregressive quadruped motion planner.
//!
//! The pipeline has three stages: a motion library is generated by solving
//! single-rigid-body trajectory optimization problems over parameterized
//! terrains, a mixture-of-experts network is trained on the resulting
//! state-transition dataset, and a closed-loop runtime rolls the network out
//! autoregressively while blending its predicted future root trajectory with
//! command-derived targets. Supporting modules provide navigation-mesh
//! clamping, RRT* path planning, analytic leg inverse kinematics, and
//! physical-plausibility validation of generated clips.

pub mod gait;
pub mod library;
pub mod math;
pub mod moe;
pub mod nav;
pub mod runtime;
pub mod spline;
pub mod srbd;
pub mod terrain;
pub mod validate;

pub use gait::{GaitSchedule, Phase, PhaseKind};
pub use spline::HermiteSpline;
pub use terrain::TerrainModel;

/// Frame rate every motion clip and rollout is sampled at.
pub const CLIP_FPS: f64 = 30.0;
