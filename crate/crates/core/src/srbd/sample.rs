//! Uniform resampling of an optimized trajectory into a motion clip.

use nalgebra::Vector3;

use super::solver::TOSolution;
use crate::gait::GaitSchedule;
use crate::library::{ClipSource, Frame, MotionClip};
use crate::math::{rot_from_euler, rotation_to_6d};
use crate::spline::SplineError;
use crate::terrain::TerrainModel;

/// Sample the solution splines at `fps` into frames, tagging contacts from
/// the gait schedule.
pub fn sample_solution(
    solution: &TOSolution,
    gait: &GaitSchedule,
    terrain: &TerrainModel,
    fps: f64,
) -> Result<MotionClip, SplineError> {
    let duration = solution.total_duration();
    // +1e-9 guards against floor() dropping the final frame to rounding
    let n = (duration * fps + 1e-9).floor() as usize + 1;
    let mut frames = Vec::with_capacity(n);
    for k in 0..n {
        let t = (k as f64 / fps).min(duration);
        let mut root_position = Vector3::zeros();
        let mut root_velocity = Vector3::zeros();
        let mut euler = Vector3::zeros();
        for axis in 0..3 {
            let (v, d, _) = solution.root[axis].eval(t)?;
            root_position[axis] = v;
            root_velocity[axis] = d;
            euler[axis] = solution.euler[axis].eval(t)?.0;
        }
        let mut foot_positions = [Vector3::zeros(); 4];
        let mut foot_velocities = [Vector3::zeros(); 4];
        let mut contact_flags = [false; 4];
        for leg in 0..4 {
            for axis in 0..3 {
                let (v, d, _) = solution.feet[leg][axis].eval(t)?;
                foot_positions[leg][axis] = v;
                foot_velocities[leg][axis] = d;
            }
            contact_flags[leg] = gait.in_stance(leg, t);
        }
        frames.push(Frame {
            time: k as f64 / fps,
            root_position,
            root_velocity,
            orientation: rotation_to_6d(&rot_from_euler(&euler)),
            foot_positions,
            foot_velocities,
            contact_flags,
        });
    }
    Ok(MotionClip {
        fps,
        frames,
        terrain_ref: terrain.clone(),
        source: ClipSource::Optimized,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gait::GaitSchedule;
    use crate::srbd::{build_problem, BuildOptions, PlanarPose, SrbdParams};
    use approx::assert_relative_eq;

    #[test]
    fn initial_guess_samples_into_valid_clip() {
        let params = SrbdParams::aliengo_like();
        let gait = GaitSchedule::trot(2.0, 0.6, 0.5, 0.2);
        let problem = build_problem(
            &params,
            &TerrainModel::Flat,
            &gait,
            PlanarPose::new(0.0, 0.0, 0.0),
            PlanarPose::new(0.6, 0.0, 0.0),
            BuildOptions::default(),
        )
        .unwrap();
        let (root, euler, feet, forces) = problem.splines(&problem.x0);
        let solution = TOSolution {
            root,
            euler,
            feet,
            forces,
            report: crate::srbd::ConvergenceReport {
                converged: true,
                outer_iterations: 0,
                inner_iterations: 0,
                max_violation: 0.0,
                final_merit: 0.0,
                violations: Default::default(),
            },
        };
        let clip = sample_solution(&solution, &gait, &TerrainModel::Flat, 30.0).unwrap();
        clip.validate().unwrap();
        assert_eq!(clip.frames.len(), 61);
        assert_relative_eq!(clip.duration(), 2.0, epsilon = 1e-9);
        // boundary poses are pinned to start and goal
        assert_relative_eq!(clip.frames[0].root_position.x, 0.0, epsilon = 1e-9);
        assert_relative_eq!(
            clip.frames.last().unwrap().root_position.x,
            0.6,
            epsilon = 1e-9
        );
        // gait starts in full stance
        assert_eq!(clip.frames[0].contact_flags, [true; 4]);
    }
}
