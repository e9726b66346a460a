//! Single-rigid-body trajectory optimization.
//!
//! The robot is reduced to one rigid body driven by four end-effector contact
//! forces. Root position, ZYX Euler orientation, foot positions and contact
//! forces are parameterized as cubic Hermite splines; dynamics, kinematic
//! cuboid, terrain and friction-pyramid constraints are enforced on a
//! collocation grid and solved by an augmented Lagrangian method with an
//! L-BFGS inner loop.

mod constraints;
mod dynamics;
mod params;
mod problem;
mod sample;
mod solver;

pub use constraints::{ConstraintGrid, ViolationReport};
pub use dynamics::{angular_motion, dynamics_residual, AngularMotion};
pub use params::{PlanarPose, SrbdParams};
pub use problem::{build_problem, BuildOptions, Channel, NodeRef, ProblemError, TOProblem};
pub use sample::sample_solution;
pub use solver::{solve, ConvergenceReport, SolveError, SolverConfig, TOSolution};
