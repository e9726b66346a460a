//! Collocation-grid constraint evaluation: violation reporting and the
//! augmented Lagrangian merit function with analytic gradients.
//!
//! Equality constraints (dynamics, stance-foot terrain height) carry
//! multipliers; inequalities (kinematic cuboid, swing-foot clearance,
//! friction pyramid, pitch clamp) enter the merit as squared hinges scaled
//! by the penalty parameter.

use nalgebra::{DMatrix, Matrix3, Vector2, Vector3};

use super::dynamics::angular_motion;
use super::problem::{Channel, NodeRef, TOProblem};
use crate::gait::NUM_LEGS;
use crate::math::{rot_from_euler_partials, skew};
use crate::spline::{Basis, HermiteSpline};

/// Weight of the force-smoothness regularizer (squared second differences of
/// force value nodes).
const FORCE_SMOOTHNESS_WEIGHT: f64 = 1e-6;
/// Weight on sampled second derivatives of the force splines. The dynamics
/// are only collocated at grid points, so without a curvature penalty the
/// free derivative nodes can ring between samples without affecting the
/// constraint residuals at all.
const FORCE_CURVATURE_WEIGHT: f64 = 0.0;
/// Pitch is kept away from the Euler-angle singularity.
const PITCH_LIMIT: f64 = 1.4;
/// Inward bias applied to terrain height lookups at stance feet, m.
const TERRAIN_BIAS: f64 = 0.01;
/// Collocation points per spline segment at density 1.
const POINTS_PER_SEGMENT: usize = 10;

/// Per-family maximum constraint violations, in each constraint's native
/// units.
#[derive(Debug, Clone, Default, serde::Serialize, serde::Deserialize)]
pub struct ViolationReport {
    pub dynamics_linear: f64,
    pub dynamics_angular: f64,
    /// Acceleration jump across interior spline knots, m/s^2 or rad/s^2.
    pub accel_continuity: f64,
    pub kinematic_box: f64,
    pub terrain_stance: f64,
    pub terrain_swing: f64,
    pub friction: f64,
    pub swing_force: f64,
    pub pitch: f64,
}

impl ViolationReport {
    pub fn max_violation(&self) -> f64 {
        [
            self.dynamics_linear,
            self.dynamics_angular,
            self.accel_continuity,
            self.kinematic_box,
            self.terrain_stance,
            self.terrain_swing,
            self.friction,
            self.swing_force,
            self.pitch,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    /// Name of the family with the largest violation.
    pub fn worst_family(&self) -> &'static str {
        let entries = [
            ("dynamics_linear", self.dynamics_linear),
            ("dynamics_angular", self.dynamics_angular),
            ("accel_continuity", self.accel_continuity),
            ("kinematic_box", self.kinematic_box),
            ("terrain_stance", self.terrain_stance),
            ("terrain_swing", self.terrain_swing),
            ("friction", self.friction),
            ("swing_force", self.swing_force),
            ("pitch", self.pitch),
        ];
        entries
            .into_iter()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap()
            .0
    }
}

/// Full evaluation of the constraint program at one decision vector.
pub struct Evaluation {
    pub merit: f64,
    pub grad: Option<Vec<f64>>,
    /// Equality constraint values, in the evaluator's fixed ordering.
    pub eq: Vec<f64>,
    pub report: ViolationReport,
}

/// Precomputed collocation times for one problem at a given density.
pub struct ConstraintGrid {
    /// Times for the dynamics and pitch constraints (root-spline grid).
    pub dyn_times: Vec<f64>,
    /// Per-leg foot-spline grid: `(t, in_stance)`.
    pub foot_times: [Vec<(f64, bool)>; 4],
    /// Per-leg force-spline grid: `(t, in_stance)`.
    pub force_times: [Vec<(f64, bool)>; 4],
    /// Total number of scalar equality constraints.
    pub n_eq: usize,
}

fn segment_grid(durations: &[f64], per_seg: usize) -> Vec<f64> {
    let mut ts = Vec::with_capacity(durations.len() * per_seg);
    let mut t0 = 0.0;
    for &d in durations {
        for k in 0..per_seg {
            ts.push(t0 + d * k as f64 / (per_seg - 1) as f64);
        }
        t0 += d;
    }
    ts
}

impl ConstraintGrid {
    /// `density` multiplies the base 10-points-per-segment resolution.
    pub fn new(problem: &TOProblem, density: usize) -> Self {
        let per_seg = POINTS_PER_SEGMENT * density.max(1);
        let dyn_times = segment_grid(&problem.root[0].durations, per_seg);
        let foot_times: [Vec<(f64, bool)>; 4] = std::array::from_fn(|leg| {
            segment_grid(&problem.feet[leg][0].durations, per_seg)
                .into_iter()
                .map(|t| (t, problem.gait.in_stance(leg, t)))
                .collect()
        });
        let force_times: [Vec<(f64, bool)>; 4] = std::array::from_fn(|leg| {
            segment_grid(&problem.forces[leg][0].durations, per_seg)
                .into_iter()
                .map(|t| (t, problem.gait.in_stance(leg, t)))
                .collect()
        });
        let n_eq = 6 * dyn_times.len()
            + 6 * (problem.root[0].durations.len() - 1)
            + foot_times
                .iter()
                .map(|pts| pts.iter().filter(|(_, s)| *s).count())
                .sum::<usize>();
        Self {
            dyn_times,
            foot_times,
            force_times,
            n_eq,
        }
    }

    /// Evaluate merit, equality values, per-family violations and optionally
    /// the analytic merit gradient.
    ///
    /// `lambda` must have length `n_eq` (or be `None` for pure reporting).
    pub fn evaluate(
        &self,
        problem: &TOProblem,
        x: &[f64],
        lambda: Option<&[f64]>,
        rho: f64,
        want_grad: bool,
    ) -> Evaluation {
        self.evaluate_impl(problem, x, lambda, rho, want_grad, None)
    }

    /// Evaluate with gradient plus the Gauss-Newton approximation of the
    /// merit Hessian (`sum_i w_i grad_c_i grad_c_i^T`), written into `jtj`.
    pub fn evaluate_gn(
        &self,
        problem: &TOProblem,
        x: &[f64],
        lambda: Option<&[f64]>,
        rho: f64,
        jtj: &mut DMatrix<f64>,
    ) -> Evaluation {
        jtj.fill(0.0);
        self.evaluate_impl(problem, x, lambda, rho, true, Some(jtj))
    }

    fn evaluate_impl(
        &self,
        problem: &TOProblem,
        x: &[f64],
        lambda: Option<&[f64]>,
        rho: f64,
        want_grad: bool,
        mut gn: Option<&mut DMatrix<f64>>,
    ) -> Evaluation {
        let (root_s, euler_s, feet_s, forces_s) = problem.splines(x);
        let total = problem.total_duration();
        let mut merit = 0.0;
        let mut grad = if want_grad {
            Some(vec![0.0; problem.n_vars])
        } else {
            None
        };
        let mut eq = Vec::with_capacity(self.n_eq);
        let mut report = ViolationReport::default();

        let lam = |i: usize| lambda.map_or(0.0, |l| l[i]);
        let need_rows = want_grad || gn.is_some();

        // sparse gradient row of the scalar term currently being assembled;
        // duplicate variable indices are fine (contributions add up, and the
        // outer product over the raw entry list equals the merged one)
        let mut row: Vec<(usize, f64)> = Vec::with_capacity(128);

        // accumulate `d(channel eval)/d(node vars)` into the current row
        fn row_acc(
            row: &mut Vec<(usize, f64)>,
            ch: &Channel,
            b: &Basis,
            wv: f64,
            wd1: f64,
            wd2: f64,
        ) {
            let refs = ch.segment_refs(b.segment);
            for k in 0..4 {
                if let NodeRef::Var(vi) = refs[k] {
                    let w = wv * b.value[k] + wd1 * b.deriv1[k] + wd2 * b.deriv2[k];
                    if w != 0.0 {
                        row.push((vi, w));
                    }
                }
            }
        }

        // fold the finished row into the gradient (`m * row`) and the
        // Gauss-Newton matrix (`w * row row^T`), then reset it
        fn commit(
            row: &mut Vec<(usize, f64)>,
            grad: &mut Option<Vec<f64>>,
            gn: &mut Option<&mut DMatrix<f64>>,
            m: f64,
            w: f64,
        ) {
            if let Some(g) = grad.as_deref_mut() {
                for &(i, v) in row.iter() {
                    g[i] += m * v;
                }
            }
            if let Some(jtj) = gn.as_deref_mut() {
                for &(i, a) in row.iter() {
                    for &(j, b) in row.iter() {
                        jtj[(i, j)] += w * a * b;
                    }
                }
            }
            row.clear();
        }

        // ---- cost: force smoothness ----
        for leg in 0..NUM_LEGS {
            for dim in 0..3 {
                let ch = &problem.forces[leg][dim];
                let vals: Vec<f64> = ch.nodes.iter().map(|(v, _)| v.value(x)).collect();
                for i in 1..vals.len() - 1 {
                    let s = vals[i - 1] - 2.0 * vals[i] + vals[i + 1];
                    merit += FORCE_SMOOTHNESS_WEIGHT * s * s;
                    if need_rows {
                        for (off, w) in [(i - 1, 1.0), (i, -2.0), (i + 1, 1.0)] {
                            if let NodeRef::Var(vi) = ch.nodes[off].0 {
                                row.push((vi, w));
                            }
                        }
                        let m = 2.0 * FORCE_SMOOTHNESS_WEIGHT * s;
                        commit(&mut row, &mut grad, &mut gn, m, 2.0 * FORCE_SMOOTHNESS_WEIGHT);
                    }
                }
            }
        }

        // ---- cost: force curvature at the root-grid samples ----
        for leg in 0..NUM_LEGS {
            for dim in 0..3 {
                let ch = &problem.forces[leg][dim];
                let s = &forces_s[leg][dim];
                for &t in &self.dyn_times {
                    let t = t.clamp(0.0, total);
                    let d2 = s.eval(t).expect("grid time in domain").2;
                    merit += FORCE_CURVATURE_WEIGHT * d2 * d2;
                    if need_rows {
                        let b = s.basis(t).expect("grid time in domain");
                        row_acc(&mut row, ch, &b, 0.0, 0.0, 1.0);
                        commit(
                            &mut row,
                            &mut grad,
                            &mut gn,
                            2.0 * FORCE_CURVATURE_WEIGHT * d2,
                            2.0 * FORCE_CURVATURE_WEIGHT,
                        );
                    }
                }
            }
        }

        let mass = problem.params.mass;
        let gravity = problem.params.gravity;
        let inertia = problem.params.inertia_body;
        let mu = problem.params.mu;
        let half = problem.params.kinematic_box_half_extents;

        let eval_ch = |s: &HermiteSpline, t: f64| -> (f64, f64, f64, Basis) {
            let t = t.clamp(0.0, total);
            let b = s.basis(t).expect("collocation time in domain");
            let (v, d1, d2) = s.eval(t).expect("collocation time in domain");
            (v, d1, d2, b)
        };

        // ---- dynamics and pitch clamp on the root grid ----
        for &t in &self.dyn_times {
            let mut r = Vector3::zeros();
            let mut r_dd = Vector3::zeros();
            let mut rb = [None; 3];
            let mut theta = Vector3::zeros();
            let mut dtheta = Vector3::zeros();
            let mut ddtheta = Vector3::zeros();
            let mut eb = [None; 3];
            for k in 0..3 {
                let (v, _, a, b) = eval_ch(&root_s[k], t);
                r[k] = v;
                r_dd[k] = a;
                rb[k] = Some(b);
                let (v, d1, d2, b) = eval_ch(&euler_s[k], t);
                theta[k] = v;
                dtheta[k] = d1;
                ddtheta[k] = d2;
                eb[k] = Some(b);
            }
            let mut feet = [Vector3::zeros(); 4];
            let mut forces = [Vector3::zeros(); 4];
            let mut fb: [[Option<Basis>; 3]; 4] = Default::default();
            let mut gb: [[Option<Basis>; 3]; 4] = Default::default();
            for j in 0..NUM_LEGS {
                for k in 0..3 {
                    let (v, _, _, b) = eval_ch(&feet_s[j][k], t);
                    feet[j][k] = v;
                    fb[j][k] = Some(b);
                    let (v, _, _, b) = eval_ch(&forces_s[j][k], t);
                    forces[j][k] = v;
                    gb[j][k] = Some(b);
                }
            }
            let am = angular_motion(&theta, &dtheta, &ddtheta);

            // linear: M r_dd - sum f + M g z_hat
            let mut lin = mass * r_dd + Vector3::new(0.0, 0.0, mass * gravity);
            for j in 0..NUM_LEGS {
                lin -= forces[j];
            }
            // angular: I dw + w x I w - sum (p - r) x f
            let iw = inertia * am.w;
            let mut ang = inertia * am.dw + am.w.cross(&iw);
            for j in 0..NUM_LEGS {
                ang -= (feet[j] - r).cross(&forces[j]);
            }

            report.dynamics_linear = report.dynamics_linear.max(lin.amax());
            report.dynamics_angular = report.dynamics_angular.max(ang.amax());

            // the equalities enter the merit in acceleration units so the
            // penalty landscape is comparably conditioned across families;
            // the report above stays in native N / N·m
            let lin_scale = 1.0 / mass;

            // jacobians of the angular residual
            let dwi = skew(&am.w) * inertia - skew(&iw);
            let j_ang_theta = inertia * am.j_dw_theta + dwi * am.j_w_theta;
            let j_ang_dtheta = inertia * am.j_dw_dtheta + dwi * am.j_w_dtheta;
            let j_ang_ddtheta = inertia * am.j_dw_ddtheta;
            let mut j_ang_r = Matrix3::zeros();
            for j in 0..NUM_LEGS {
                j_ang_r -= skew(&forces[j]);
            }

            for comp in 0..3 {
                // linear component (mass * lin_scale = 1 on root acceleration)
                let c = lin[comp] * lin_scale;
                let eq_i = eq.len();
                eq.push(c);
                merit += lam(eq_i) * c + 0.5 * rho * c * c;
                if need_rows {
                    row_acc(&mut row, &problem.root[comp], rb[comp].as_ref().unwrap(), 0.0, 0.0, 1.0);
                    for j in 0..NUM_LEGS {
                        row_acc(
                            &mut row,
                            &problem.forces[j][comp],
                            gb[j][comp].as_ref().unwrap(),
                            -lin_scale,
                            0.0,
                            0.0,
                        );
                    }
                    commit(&mut row, &mut grad, &mut gn, lam(eq_i) + rho * c, rho);
                }
                // angular component
                let c = ang[comp];
                let eq_i = eq.len();
                eq.push(c);
                merit += lam(eq_i) * c + 0.5 * rho * c * c;
                if need_rows {
                    for k in 0..3 {
                        row_acc(
                            &mut row,
                            &problem.euler[k],
                            eb[k].as_ref().unwrap(),
                            j_ang_theta[(comp, k)],
                            j_ang_dtheta[(comp, k)],
                            j_ang_ddtheta[(comp, k)],
                        );
                        row_acc(
                            &mut row,
                            &problem.root[k],
                            rb[k].as_ref().unwrap(),
                            j_ang_r[(comp, k)],
                            0.0,
                            0.0,
                        );
                    }
                    for j in 0..NUM_LEGS {
                        let jp = skew(&forces[j]); // d ang / d p_j
                        let jf = -skew(&(feet[j] - r)); // d ang / d f_j
                        for k in 0..3 {
                            row_acc(
                                &mut row,
                                &problem.feet[j][k],
                                fb[j][k].as_ref().unwrap(),
                                jp[(comp, k)],
                                0.0,
                                0.0,
                            );
                            row_acc(
                                &mut row,
                                &problem.forces[j][k],
                                gb[j][k].as_ref().unwrap(),
                                jf[(comp, k)],
                                0.0,
                                0.0,
                            );
                        }
                    }
                    commit(&mut row, &mut grad, &mut gn, lam(eq_i) + rho * c, rho);
                }
            }

            // pitch clamp
            for sign in [1.0, -1.0] {
                let gval = sign * theta.y - PITCH_LIMIT;
                report.pitch = report.pitch.max(gval);
                if gval > 0.0 {
                    merit += 0.5 * rho * gval * gval;
                    if need_rows {
                        row_acc(&mut row, &problem.euler[1], eb[1].as_ref().unwrap(), sign, 0.0, 0.0);
                        commit(&mut row, &mut grad, &mut gn, rho * gval, rho);
                    }
                }
            }
        }

        // ---- acceleration continuity at interior root-spline knots ----
        // the splines are only C1, so without these equalities the dynamics
        // can hide arbitrary acceleration jumps at the knots, where the
        // collocation grid only ever samples one side
        {
            let durations = &problem.root[0].durations;
            let i_scale = inertia.diagonal().amax();
            let mut tk = 0.0;
            for &dseg in &durations[..durations.len() - 1] {
                tk += dseg;
                let tr = tk + 1e-9; // resolves to the following segment
                for k in 0..3 {
                    // root jump, acceleration units to match the linear family
                    let c = root_s[k].eval(tk).unwrap().2 - root_s[k].eval(tr).unwrap().2;
                    let eq_i = eq.len();
                    eq.push(c);
                    merit += lam(eq_i) * c + 0.5 * rho * c * c;
                    report.accel_continuity = report.accel_continuity.max(c.abs());
                    if need_rows {
                        let bl = root_s[k].basis(tk).unwrap();
                        let br = root_s[k].basis(tr).unwrap();
                        row_acc(&mut row, &problem.root[k], &bl, 0.0, 0.0, 1.0);
                        row_acc(&mut row, &problem.root[k], &br, 0.0, 0.0, -1.0);
                        commit(&mut row, &mut grad, &mut gn, lam(eq_i) + rho * c, rho);
                    }
                    // euler jump, scaled to torque units like the angular family
                    let c = (euler_s[k].eval(tk).unwrap().2 - euler_s[k].eval(tr).unwrap().2)
                        * i_scale;
                    let eq_i = eq.len();
                    eq.push(c);
                    merit += lam(eq_i) * c + 0.5 * rho * c * c;
                    report.accel_continuity = report.accel_continuity.max(c.abs() / i_scale);
                    if need_rows {
                        let bl = euler_s[k].basis(tk).unwrap();
                        let br = euler_s[k].basis(tr).unwrap();
                        row_acc(&mut row, &problem.euler[k], &bl, 0.0, 0.0, i_scale);
                        row_acc(&mut row, &problem.euler[k], &br, 0.0, 0.0, -i_scale);
                        commit(&mut row, &mut grad, &mut gn, lam(eq_i) + rho * c, rho);
                    }
                }
            }
        }

        // ---- kinematic cuboid and terrain constraints on the foot grids ----
        for leg in 0..NUM_LEGS {
            for &(t, stance) in &self.foot_times[leg] {
                let mut p = Vector3::zeros();
                let mut pb = [None; 3];
                let mut r = Vector3::zeros();
                let mut rb = [None; 3];
                let mut theta = Vector3::zeros();
                let mut eb = [None; 3];
                for k in 0..3 {
                    let (v, _, _, b) = eval_ch(&feet_s[leg][k], t);
                    p[k] = v;
                    pb[k] = Some(b);
                    let (v, _, _, b) = eval_ch(&root_s[k], t);
                    r[k] = v;
                    rb[k] = Some(b);
                    let (v, _, _, b) = eval_ch(&euler_s[k], t);
                    theta[k] = v;
                    eb[k] = Some(b);
                }
                let (rot, drot) = rot_from_euler_partials(&theta);
                let u = p - r;
                let q = rot.transpose() * u - problem.params.nominal_foot_offsets[leg];

                for axis in 0..3 {
                    for sign in [1.0, -1.0] {
                        let gval = sign * q[axis] - half[axis];
                        report.kinematic_box = report.kinematic_box.max(gval);
                        if gval > 0.0 {
                            merit += 0.5 * rho * gval * gval;
                            if need_rows {
                                // dq_axis/dp = column `axis` of R; dq/dr = -that
                                for k in 0..3 {
                                    let w = sign * rot[(k, axis)];
                                    row_acc(&mut row, &problem.feet[leg][k], pb[k].as_ref().unwrap(), w, 0.0, 0.0);
                                    row_acc(&mut row, &problem.root[k], rb[k].as_ref().unwrap(), -w, 0.0, 0.0);
                                }
                                for e in 0..3 {
                                    let dq = sign * (drot[e].transpose() * u)[axis];
                                    row_acc(&mut row, &problem.euler[e], eb[e].as_ref().unwrap(), dq, 0.0, 0.0);
                                }
                                commit(&mut row, &mut grad, &mut gn, rho * gval, rho);
                            }
                        }
                    }
                }

                // terrain lookup with a small inward bias toward the stance
                // centroid (frozen direction, no gradient contribution)
                let mut centroid = Vector2::zeros();
                let mut n_stance = 0.0;
                for j in 0..NUM_LEGS {
                    if problem.gait.in_stance(j, t) {
                        let fx = feet_s[j][0].eval(t.clamp(0.0, total)).unwrap().0;
                        let fy = feet_s[j][1].eval(t.clamp(0.0, total)).unwrap().0;
                        centroid += Vector2::new(fx, fy);
                        n_stance += 1.0;
                    }
                }
                let mut lookup = p.xy();
                if n_stance > 0.0 {
                    centroid /= n_stance;
                    let dir = centroid - p.xy();
                    let n = dir.norm();
                    if n > 1e-9 {
                        lookup += dir * (TERRAIN_BIAS / n);
                    }
                }
                let h = problem.terrain.height(lookup.x, lookup.y);
                let gh = problem.terrain.gradient(lookup.x, lookup.y);

                if stance {
                    let c = p.z - h;
                    let eq_i = eq.len();
                    eq.push(c);
                    merit += lam(eq_i) * c + 0.5 * rho * c * c;
                    report.terrain_stance = report.terrain_stance.max(c.abs());
                    if need_rows {
                        row_acc(&mut row, &problem.feet[leg][2], pb[2].as_ref().unwrap(), 1.0, 0.0, 0.0);
                        row_acc(&mut row, &problem.feet[leg][0], pb[0].as_ref().unwrap(), -gh[0], 0.0, 0.0);
                        row_acc(&mut row, &problem.feet[leg][1], pb[1].as_ref().unwrap(), -gh[1], 0.0, 0.0);
                        commit(&mut row, &mut grad, &mut gn, lam(eq_i) + rho * c, rho);
                    }
                } else {
                    let gval = h - p.z;
                    report.terrain_swing = report.terrain_swing.max(gval);
                    if gval > 0.0 {
                        merit += 0.5 * rho * gval * gval;
                        if need_rows {
                            row_acc(&mut row, &problem.feet[leg][2], pb[2].as_ref().unwrap(), -1.0, 0.0, 0.0);
                            row_acc(&mut row, &problem.feet[leg][0], pb[0].as_ref().unwrap(), gh[0], 0.0, 0.0);
                            row_acc(&mut row, &problem.feet[leg][1], pb[1].as_ref().unwrap(), gh[1], 0.0, 0.0);
                            commit(&mut row, &mut grad, &mut gn, rho * gval, rho);
                        }
                    }
                }
            }
        }

        // ---- friction pyramid on the force grids ----
        for leg in 0..NUM_LEGS {
            for &(t, stance) in &self.force_times[leg] {
                let mut f = Vector3::zeros();
                let mut fb = [None; 3];
                for k in 0..3 {
                    let (v, _, _, b) = eval_ch(&forces_s[leg][k], t);
                    f[k] = v;
                    fb[k] = Some(b);
                }
                if !stance {
                    report.swing_force = report.swing_force.max(f.amax());
                    continue;
                }
                // (sign * f_axis) - mu * f_z <= 0 for axis in {x, y}; -f_z <= 0
                for (axis, sign, wz) in [
                    (0, 1.0, -mu),
                    (0, -1.0, -mu),
                    (1, 1.0, -mu),
                    (1, -1.0, -mu),
                    (2, -1.0, 0.0),
                ] {
                    let gval = sign * f[axis] + wz * f.z;
                    report.friction = report.friction.max(gval);
                    if gval > 0.0 {
                        merit += 0.5 * rho * gval * gval;
                        if need_rows {
                            row_acc(&mut row, &problem.forces[leg][axis], fb[axis].as_ref().unwrap(), sign, 0.0, 0.0);
                            if wz != 0.0 {
                                row_acc(&mut row, &problem.forces[leg][2], fb[2].as_ref().unwrap(), wz, 0.0, 0.0);
                            }
                            commit(&mut row, &mut grad, &mut gn, rho * gval, rho);
                        }
                    }
                }
            }
        }

        debug_assert_eq!(eq.len(), self.n_eq);
        Evaluation {
            merit,
            grad,
            eq,
            report,
        }
    }

    /// Per-family maximum violations at a decision vector.
    pub fn violations(&self, problem: &TOProblem, x: &[f64]) -> ViolationReport {
        self.evaluate(problem, x, None, 0.0, false).report
    }
}
