//! Decision-variable layout of one trajectory optimization problem.
//!
//! Every spline node scalar (value or derivative) is either a free variable
//! indexed into the flat decision vector or a pinned constant. Stance feet
//! are held constant by routing all node slots of a stance phase to one
//! shared variable triple; swing-phase force nodes are pinned to zero, which
//! makes the force spline identically zero over the whole swing.

use nalgebra::Vector3;
use thiserror::Error;

use super::params::{ParamError, PlanarPose, SrbdParams};
use crate::gait::{GaitError, GaitSchedule, PhaseKind, NUM_LEGS};
use crate::math::{rot2, wrap_angle};
use crate::spline::HermiteSpline;
use crate::terrain::TerrainModel;

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("invalid gait: {0}")]
    InvalidGait(#[from] GaitError),
    #[error("invalid parameters: {0}")]
    InvalidParams(#[from] ParamError),
}

/// A spline node scalar: pinned constant or index into the decision vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NodeRef {
    Fixed(f64),
    Var(usize),
}

impl NodeRef {
    #[inline]
    pub fn value(&self, x: &[f64]) -> f64 {
        match *self {
            NodeRef::Fixed(v) => v,
            NodeRef::Var(i) => x[i],
        }
    }
}

/// One scalar spline channel: per-segment durations plus node references.
#[derive(Debug, Clone)]
pub struct Channel {
    pub durations: Vec<f64>,
    /// `(value, derivative)` reference per node; `durations.len() + 1` nodes.
    pub nodes: Vec<(NodeRef, NodeRef)>,
}

impl Channel {
    pub fn total_duration(&self) -> f64 {
        self.durations.iter().sum()
    }

    pub fn materialize(&self, x: &[f64]) -> HermiteSpline {
        HermiteSpline {
            nodes: self
                .nodes
                .iter()
                .map(|(v, d)| (v.value(x), d.value(x)))
                .collect(),
            durations: self.durations.clone(),
        }
    }

    /// The four node references a segment's cubic depends on: `[v0, d0, v1, d1]`.
    pub fn segment_refs(&self, seg: usize) -> [NodeRef; 4] {
        [
            self.nodes[seg].0,
            self.nodes[seg].1,
            self.nodes[seg + 1].0,
            self.nodes[seg + 1].1,
        ]
    }
}

/// Discretization choices for problem construction.
#[derive(Debug, Clone)]
pub struct BuildOptions {
    /// Root / orientation spline knot spacing, s.
    pub root_knot_spacing: f64,
    /// Swing apex clearance above terrain, m.
    pub swing_height: f64,
    /// Target spacing of interior force nodes within a stance phase, s.
    pub force_node_spacing: f64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            // the force nodes must be dense relative to the root knots: the
            // dynamics are collocated on the root grid, and only a force
            // discretization with more local freedom than collocation points
            // can absorb the load shifts at every touchdown and liftoff
            root_knot_spacing: 0.25,
            swing_height: 0.08,
            force_node_spacing: 0.04,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TOProblem {
    pub params: SrbdParams,
    pub terrain: TerrainModel,
    pub gait: GaitSchedule,
    pub start: PlanarPose,
    pub goal: PlanarPose,
    pub root: [Channel; 3],
    pub euler: [Channel; 3],
    pub feet: [[Channel; 3]; 4],
    pub forces: [[Channel; 3]; 4],
    pub n_vars: usize,
    pub x0: Vec<f64>,
    pub opts: BuildOptions,
}

impl TOProblem {
    pub fn total_duration(&self) -> f64 {
        self.gait.total_duration
    }

    /// Materialize every channel into concrete splines.
    #[allow(clippy::type_complexity)]
    pub fn splines(
        &self,
        x: &[f64],
    ) -> (
        [HermiteSpline; 3],
        [HermiteSpline; 3],
        [[HermiteSpline; 3]; 4],
        [[HermiteSpline; 3]; 4],
    ) {
        let mat3 = |c: &[Channel; 3]| {
            [
                c[0].materialize(x),
                c[1].materialize(x),
                c[2].materialize(x),
            ]
        };
        (
            mat3(&self.root),
            mat3(&self.euler),
            [
                mat3(&self.feet[0]),
                mat3(&self.feet[1]),
                mat3(&self.feet[2]),
                mat3(&self.feet[3]),
            ],
            [
                mat3(&self.forces[0]),
                mat3(&self.forces[1]),
                mat3(&self.forces[2]),
                mat3(&self.forces[3]),
            ],
        )
    }

    /// Root planar pose linearly interpolated start -> goal (the
    /// initialization reference).
    pub fn nominal_pose(&self, t: f64) -> PlanarPose {
        let s = (t / self.total_duration()).clamp(0.0, 1.0);
        PlanarPose {
            x: self.start.x + (self.goal.x - self.start.x) * s,
            y: self.start.y + (self.goal.y - self.start.y) * s,
            yaw: self.start.yaw + wrap_angle(self.goal.yaw - self.start.yaw) * s,
        }
    }
}

struct VarPool {
    x0: Vec<f64>,
}

impl VarPool {
    fn var(&mut self, init: f64) -> NodeRef {
        self.x0.push(init);
        NodeRef::Var(self.x0.len() - 1)
    }
}

/// Allocate spline nodes, pin boundary conditions and initialize the
/// decision vector: root linearly interpolated start -> goal, feet at their
/// nominal offsets tracking the root, stance forces sharing the weight.
pub fn build_problem(
    params: &SrbdParams,
    terrain: &TerrainModel,
    gait: &GaitSchedule,
    start: PlanarPose,
    goal: PlanarPose,
    opts: BuildOptions,
) -> Result<TOProblem, ProblemError> {
    params.validate()?;
    gait.validate()?;
    let total = gait.total_duration;
    let mut pool = VarPool { x0: Vec::new() };

    let stand_z = params.stand_height();
    let nominal_pose = |t: f64| -> PlanarPose {
        let s = (t / total).clamp(0.0, 1.0);
        PlanarPose {
            x: start.x + (goal.x - start.x) * s,
            y: start.y + (goal.y - start.y) * s,
            yaw: start.yaw + wrap_angle(goal.yaw - start.yaw) * s,
        }
    };

    // --- root and orientation channels: uniform knots ---
    let n_seg = ((total / opts.root_knot_spacing).ceil() as usize).max(2);
    let dt = total / n_seg as f64;
    let durations = vec![dt; n_seg];
    let mean_v = [
        (goal.x - start.x) / total,
        (goal.y - start.y) / total,
        wrap_angle(goal.yaw - start.yaw) / total,
    ];

    let mut root: Vec<Channel> = Vec::new();
    let mut euler: Vec<Channel> = Vec::new();
    for dim in 0..3 {
        // root x, y
        if dim < 2 {
            let mut nodes = Vec::with_capacity(n_seg + 1);
            for k in 0..=n_seg {
                let t = k as f64 * dt;
                let p = nominal_pose(t);
                let init = if dim == 0 { p.x } else { p.y };
                let (v, d) = if k == 0 || k == n_seg {
                    (NodeRef::Fixed(init), NodeRef::Fixed(0.0))
                } else {
                    (pool.var(init), pool.var(mean_v[dim]))
                };
                nodes.push((v, d));
            }
            root.push(Channel {
                durations: durations.clone(),
                nodes,
            });
        } else {
            // root z: free values following the terrain, resting end derivatives
            let mut nodes = Vec::with_capacity(n_seg + 1);
            for k in 0..=n_seg {
                let t = k as f64 * dt;
                let p = nominal_pose(t);
                let init = stand_z + terrain.height(p.x, p.y);
                let v = pool.var(init);
                let d = if k == 0 || k == n_seg {
                    NodeRef::Fixed(0.0)
                } else {
                    pool.var(0.0)
                };
                nodes.push((v, d));
            }
            root.push(Channel {
                durations: durations.clone(),
                nodes,
            });
        }
        // euler roll, pitch, yaw
        let mut nodes = Vec::with_capacity(n_seg + 1);
        for k in 0..=n_seg {
            let t = k as f64 * dt;
            let init = if dim == 2 { nominal_pose(t).yaw } else { 0.0 };
            let (v, d) = if k == 0 || k == n_seg {
                (NodeRef::Fixed(init), NodeRef::Fixed(0.0))
            } else {
                let dinit = if dim == 2 { mean_v[2] } else { 0.0 };
                (pool.var(init), pool.var(dinit))
            };
            nodes.push((v, d));
        }
        euler.push(Channel {
            durations: durations.clone(),
            nodes,
        });
    }

    // --- foot channels: knots at phase boundaries plus swing midpoints ---
    let mut feet: Vec<[Channel; 3]> = Vec::new();
    for leg in 0..NUM_LEGS {
        let phases = &gait.legs[leg];
        let bounds = gait.phase_times(leg);
        // shared variable triple per stance phase
        let mut stance_pos: Vec<Option<(Vector3<f64>, [NodeRef; 3])>> = Vec::new();
        for (ph, phase) in phases.iter().enumerate() {
            if phase.kind == PhaseKind::Stance {
                let tm = 0.5 * (bounds[ph] + bounds[ph + 1]);
                let pose = nominal_pose(tm);
                let off = params.nominal_foot_offsets[leg];
                let planar =
                    nalgebra::Vector2::new(pose.x, pose.y) + rot2(pose.yaw) * off.xy();
                let z = terrain.height(planar.x, planar.y);
                let init = Vector3::new(planar.x, planar.y, z);
                let refs = [pool.var(init.x), pool.var(init.y), pool.var(init.z)];
                stance_pos.push(Some((init, refs)));
            } else {
                stance_pos.push(None);
            }
        }
        // boundary node for the junction between phase `ph` and `ph + 1`
        // (or the schedule edges): owned by whichever side is in stance.
        let boundary_refs = |ph_left: Option<usize>, ph_right: Option<usize>| -> [NodeRef; 3] {
            for ph in [ph_right, ph_left].into_iter().flatten() {
                if let Some((_, refs)) = &stance_pos[ph] {
                    return *refs;
                }
            }
            unreachable!("schedule starts and ends in stance");
        };
        let stance_init = |ph: usize| -> Option<Vector3<f64>> {
            stance_pos.get(ph).and_then(|s| s.as_ref().map(|(p, _)| *p))
        };

        let mut dims: [Channel; 3] = std::array::from_fn(|_| Channel {
            durations: Vec::new(),
            nodes: Vec::new(),
        });
        // first node
        let first = boundary_refs(None, Some(0));
        for d in 0..3 {
            dims[d].nodes.push((first[d], NodeRef::Fixed(0.0)));
        }
        for (ph, phase) in phases.iter().enumerate() {
            let next_ph = if ph + 1 < phases.len() {
                Some(ph + 1)
            } else {
                None
            };
            match phase.kind {
                PhaseKind::Stance => {
                    let end = boundary_refs(Some(ph), next_ph);
                    for d in 0..3 {
                        dims[d].durations.push(phase.duration);
                        dims[d].nodes.push((end[d], NodeRef::Fixed(0.0)));
                    }
                }
                PhaseKind::Swing => {
                    let prev = stance_init(ph.wrapping_sub(1))
                        .unwrap_or_else(|| Vector3::new(0.0, 0.0, 0.0));
                    let next = stance_init(ph + 1).unwrap_or(prev);
                    let mid = 0.5 * (prev + next);
                    let apex_z = terrain
                        .height(prev.x, prev.y)
                        .max(terrain.height(mid.x, mid.y))
                        .max(terrain.height(next.x, next.y))
                        + opts.swing_height;
                    let apex = Vector3::new(mid.x, mid.y, apex_z);
                    let vel = (next - prev) / phase.duration;
                    let end = boundary_refs(Some(ph), next_ph);
                    for d in 0..3 {
                        dims[d].durations.push(phase.duration / 2.0);
                        let dv = if d < 2 { vel[d] } else { 0.0 };
                        dims[d].nodes.push((pool.var(apex[d]), pool.var(dv)));
                        dims[d].durations.push(phase.duration / 2.0);
                        dims[d].nodes.push((end[d], NodeRef::Fixed(0.0)));
                    }
                }
            }
        }
        feet.push(dims);
    }

    // --- force channels: phase boundaries plus interior stance nodes ---
    let weight = params.mass * params.gravity;
    // trapezoidal load share: a leg's share ramps in after touchdown and out
    // before liftoff (except at the schedule ends, which stay loaded), and
    // the shares are normalized so they always sum to the body weight; this
    // keeps the initial vertical forces consistent with zero root
    // acceleration through every transition
    let stance_ramp = |leg: usize, t: f64| -> f64 {
        let phases = &gait.legs[leg];
        let bounds = gait.phase_times(leg);
        for (ph, phase) in phases.iter().enumerate() {
            if matches!(phase.kind, PhaseKind::Stance) {
                let a = bounds[ph];
                let b = a + phase.duration;
                if t >= a - 1e-9 && t <= b + 1e-9 {
                    let tau = 0.25 * phase.duration;
                    let up = if a <= 1e-9 { 1.0 } else { ((t - a) / tau).min(1.0) };
                    let down = if b >= total - 1e-9 {
                        1.0
                    } else {
                        ((b - t) / tau).min(1.0)
                    };
                    return up.min(down).max(0.0);
                }
            }
        }
        0.0
    };
    let stance_fz = |leg: usize, t: f64| -> f64 {
        let total_share: f64 = (0..NUM_LEGS).map(|j| stance_ramp(j, t)).sum();
        weight * stance_ramp(leg, t) / total_share.max(1e-9)
    };
    let mut forces: Vec<[Channel; 3]> = Vec::new();
    for leg in 0..NUM_LEGS {
        let phases = &gait.legs[leg];
        let bounds = gait.phase_times(leg);
        let mut dims: [Channel; 3] = std::array::from_fn(|_| Channel {
            durations: Vec::new(),
            nodes: Vec::new(),
        });
        // first node: schedule starts in stance with no preceding swing
        for d in 0..3 {
            let init = if d == 2 { stance_fz(leg, 0.0) } else { 0.0 };
            let v = pool.var(init);
            dims[d].nodes.push((v, NodeRef::Fixed(0.0)));
        }
        for (ph, phase) in phases.iter().enumerate() {
            let is_last = ph + 1 == phases.len();
            match phase.kind {
                PhaseKind::Stance => {
                    let n_sub = ((phase.duration / opts.force_node_spacing).ceil() as usize).max(2);
                    let sub = phase.duration / n_sub as f64;
                    for s in 1..=n_sub {
                        let t = bounds[ph] + s as f64 * sub;
                        for d in 0..3 {
                            dims[d].durations.push(sub);
                            let node = if s == n_sub && !is_last {
                                // touchdown/liftoff boundary shared with a swing
                                (NodeRef::Fixed(0.0), NodeRef::Fixed(0.0))
                            } else {
                                let init = if d == 2 { stance_fz(leg, t.min(total)) } else { 0.0 };
                                (pool.var(init), pool.var(0.0))
                            };
                            dims[d].nodes.push(node);
                        }
                    }
                }
                PhaseKind::Swing => {
                    for d in 0..3 {
                        dims[d].durations.push(phase.duration);
                        dims[d].nodes.push((NodeRef::Fixed(0.0), NodeRef::Fixed(0.0)));
                    }
                }
            }
        }
        forces.push(dims);
    }

    let n_vars = pool.x0.len();
    Ok(TOProblem {
        params: params.clone(),
        terrain: terrain.clone(),
        gait: gait.clone(),
        start,
        goal,
        root: root.try_into().unwrap(),
        euler: euler.try_into().unwrap(),
        feet: feet.try_into().unwrap(),
        forces: forces.try_into().unwrap(),
        n_vars,
        x0: pool.x0,
        opts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn trot_problem() -> TOProblem {
        let params = SrbdParams::default();
        let gait = GaitSchedule::trot(4.0, 0.7, 0.4, 0.3);
        build_problem(
            &params,
            &TerrainModel::Flat,
            &gait,
            PlanarPose::new(0.0, 0.0, 0.0),
            PlanarPose::new(1.0, 0.0, 0.0),
            BuildOptions::default(),
        )
        .unwrap()
    }

    #[test]
    fn root_x_nodes_span_start_to_goal() {
        let p = trot_problem();
        let spline = p.root[0].materialize(&p.x0);
        let times = spline.node_times();
        for (i, &t) in times.iter().enumerate() {
            assert_relative_eq!(spline.nodes[i].0, t / 4.0, epsilon = 1e-12);
        }
        assert_relative_eq!(spline.eval(0.0).unwrap().0, 0.0);
        assert_relative_eq!(spline.eval(4.0).unwrap().0, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn zero_duration_gait_is_invalid() {
        let params = SrbdParams::default();
        let gait = GaitSchedule::stand(0.0);
        let err = build_problem(
            &params,
            &TerrainModel::Flat,
            &gait,
            PlanarPose::new(0.0, 0.0, 0.0),
            PlanarPose::new(0.0, 0.0, 0.0),
            BuildOptions::default(),
        );
        assert!(matches!(err, Err(ProblemError::InvalidGait(_))));
    }

    #[test]
    fn stance_feet_are_constant_splines() {
        let p = trot_problem();
        let (_, _, feet, _) = p.splines(&p.x0);
        // during the lead-in stance every foot holds still
        for leg in 0..4 {
            let (v0, d0, _) = feet[leg][0].eval(0.05).unwrap();
            let (v1, d1, _) = feet[leg][0].eval(0.25).unwrap();
            assert_relative_eq!(v0, v1, epsilon = 1e-12);
            assert_relative_eq!(d0, 0.0, epsilon = 1e-12);
            assert_relative_eq!(d1, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn swing_forces_identically_zero() {
        let p = trot_problem();
        let (_, _, _, forces) = p.splines(&p.x0);
        for leg in 0..4 {
            for t in 0..400 {
                let t = 4.0 * t as f64 / 400.0;
                if !p.gait.in_stance(leg, t) {
                    for d in 0..3 {
                        // samples exactly on a phase boundary may land in the
                        // adjacent stance segment, so allow roundoff there
                        assert!(forces[leg][d].eval(t).unwrap().0.abs() < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn stairs_swing_apex_above_terrain() {
        let params = SrbdParams::default();
        let terrain = TerrainModel::Stairs {
            start_x: 0.5,
            rise: 0.21,
            run: 0.28,
            n_steps: 8,
        };
        let gait = GaitSchedule::trot(6.0, 0.7, 0.4, 0.3);
        let p = build_problem(
            &params,
            &terrain,
            &gait,
            PlanarPose::new(0.0, 0.0, 0.0),
            PlanarPose::new(3.0, 0.0, 0.0),
            BuildOptions::default(),
        )
        .unwrap();
        let (_, _, feet, _) = p.splines(&p.x0);
        // at each swing midpoint the initialized apex clears local terrain
        for leg in 0..4 {
            let bounds = p.gait.phase_times(leg);
            for (ph, phase) in p.gait.legs[leg].iter().enumerate() {
                if phase.kind == PhaseKind::Swing {
                    let tm = 0.5 * (bounds[ph] + bounds[ph + 1]);
                    let x = feet[leg][0].eval(tm).unwrap().0;
                    let y = feet[leg][1].eval(tm).unwrap().0;
                    let z = feet[leg][2].eval(tm).unwrap().0;
                    assert!(z >= terrain.height(x, y), "apex below terrain for leg {leg}");
                }
            }
        }
    }

    #[test]
    fn initial_forces_balance_weight() {
        let p = trot_problem();
        let (_, _, _, forces) = p.splines(&p.x0);
        let w = p.params.mass * p.params.gravity;
        // at t = 0 all four legs are grounded with a quarter of the weight each
        let total_fz: f64 = (0..4).map(|l| forces[l][2].eval(0.0).unwrap().0).sum();
        assert_relative_eq!(total_fz, w, epsilon = 1e-9);
    }
}
