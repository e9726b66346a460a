//! Single-rigid-body equations of motion and their analytic derivatives.
//!
//! Linear: `M r_dd = sum_j f_j - M g z_hat`.
//! Angular: `I w_dot + w x I w = sum_j (p_j - r) x f_j`, with the angular
//! velocity obtained from the ZYX Euler-rate mapping
//! `w = roll_rate * Rz Ry x_hat + pitch_rate * Rz y_hat + yaw_rate * z_hat`.

use nalgebra::{Matrix3, Vector3};

use super::params::SrbdParams;
use super::solver::TOSolution;
use crate::spline::SplineError;

/// Angular velocity and acceleration derived from Euler angles, together
/// with their jacobians with respect to the Euler angle derivatives.
///
/// Jacobian columns are ordered `(roll, pitch, yaw)`.
#[derive(Debug, Clone)]
pub struct AngularMotion {
    pub w: Vector3<f64>,
    pub dw: Vector3<f64>,
    pub j_w_theta: Matrix3<f64>,
    pub j_w_dtheta: Matrix3<f64>,
    pub j_dw_theta: Matrix3<f64>,
    pub j_dw_dtheta: Matrix3<f64>,
    pub j_dw_ddtheta: Matrix3<f64>,
}

/// Expand the Euler-rate mapping at one instant.
pub fn angular_motion(
    theta: &Vector3<f64>,
    dtheta: &Vector3<f64>,
    ddtheta: &Vector3<f64>,
) -> AngularMotion {
    let (sb, cb) = theta.y.sin_cos();
    let (sc, cc) = theta.z.sin_cos();
    let (da, db, dc) = (dtheta.x, dtheta.y, dtheta.z);
    let (dda, ddb, ddc) = (ddtheta.x, ddtheta.y, ddtheta.z);

    let w = Vector3::new(da * cb * cc - db * sc, da * cb * sc + db * cc, -da * sb + dc);
    let dw = Vector3::new(
        dda * cb * cc - da * db * sb * cc - da * dc * cb * sc - ddb * sc - db * dc * cc,
        dda * cb * sc - da * db * sb * sc + da * dc * cb * cc + ddb * cc - db * dc * sc,
        -dda * sb - da * db * cb + ddc,
    );

    // dw/dtheta: w has no roll dependence
    let j_w_theta = Matrix3::from_columns(&[
        Vector3::zeros(),
        Vector3::new(-da * sb * cc, -da * sb * sc, -da * cb),
        Vector3::new(-da * cb * sc - db * cc, da * cb * cc - db * sc, 0.0),
    ]);
    let j_w_dtheta = Matrix3::from_columns(&[
        Vector3::new(cb * cc, cb * sc, -sb),
        Vector3::new(-sc, cc, 0.0),
        Vector3::new(0.0, 0.0, 1.0),
    ]);

    let j_dw_theta = Matrix3::from_columns(&[
        Vector3::zeros(),
        Vector3::new(
            -dda * sb * cc - da * db * cb * cc + da * dc * sb * sc,
            -dda * sb * sc - da * db * cb * sc - da * dc * sb * cc,
            -dda * cb + da * db * sb,
        ),
        Vector3::new(
            -dda * cb * sc + da * db * sb * sc - da * dc * cb * cc - ddb * cc + db * dc * sc,
            dda * cb * cc - da * db * sb * cc - da * dc * cb * sc - ddb * sc - db * dc * cc,
            0.0,
        ),
    ]);
    let j_dw_dtheta = Matrix3::from_columns(&[
        Vector3::new(
            -db * sb * cc - dc * cb * sc,
            -db * sb * sc + dc * cb * cc,
            -db * cb,
        ),
        Vector3::new(-da * sb * cc - dc * cc, -da * sb * sc - dc * sc, -da * cb),
        Vector3::new(-da * cb * sc - db * cc, da * cb * cc - db * sc, 0.0),
    ]);
    let j_dw_ddtheta = Matrix3::from_columns(&[
        Vector3::new(cb * cc, cb * sc, -sb),
        Vector3::new(-sc, cc, 0.0),
        Vector3::new(0.0, 0.0, 1.0),
    ]);

    AngularMotion {
        w,
        dw,
        j_w_theta,
        j_w_dtheta,
        j_dw_theta,
        j_dw_dtheta,
        j_dw_ddtheta,
    }
}

/// Linear and angular dynamics residuals from raw kinematic quantities.
pub fn residual_from_state(
    params: &SrbdParams,
    r: &Vector3<f64>,
    r_dd: &Vector3<f64>,
    w: &Vector3<f64>,
    dw: &Vector3<f64>,
    feet: &[Vector3<f64>; 4],
    forces: &[Vector3<f64>; 4],
) -> (Vector3<f64>, Vector3<f64>) {
    let mut lin = params.mass * r_dd + Vector3::new(0.0, 0.0, params.mass * params.gravity);
    let inertia = &params.inertia_body;
    let mut ang = inertia * dw + w.cross(&(inertia * w));
    for j in 0..4 {
        lin -= forces[j];
        ang -= (feet[j] - r).cross(&forces[j]);
    }
    (lin, ang)
}

/// Dynamics residuals of a solved trajectory at time `t`:
/// `(M r_dd - sum f + M g z_hat, I w_dot + w x I w - sum (p - r) x f)`.
pub fn dynamics_residual(
    solution: &TOSolution,
    params: &SrbdParams,
    t: f64,
) -> Result<(Vector3<f64>, Vector3<f64>), SplineError> {
    let mut r = Vector3::zeros();
    let mut r_dd = Vector3::zeros();
    let mut theta = Vector3::zeros();
    let mut dtheta = Vector3::zeros();
    let mut ddtheta = Vector3::zeros();
    for k in 0..3 {
        let (v, _, a) = solution.root[k].eval(t)?;
        r[k] = v;
        r_dd[k] = a;
        let (v, d, a) = solution.euler[k].eval(t)?;
        theta[k] = v;
        dtheta[k] = d;
        ddtheta[k] = a;
    }
    let mut feet = [Vector3::zeros(); 4];
    let mut forces = [Vector3::zeros(); 4];
    for j in 0..4 {
        for k in 0..3 {
            feet[j][k] = solution.feet[j][k].eval(t)?.0;
            forces[j][k] = solution.forces[j][k].eval(t)?.0;
        }
    }
    let am = angular_motion(&theta, &dtheta, &ddtheta);
    Ok(residual_from_state(
        params, &r, &r_dd, &am.w, &am.dw, &feet, &forces,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn static_stand_balances() {
        let mut params = SrbdParams::default();
        params.mass = 10.0;
        let r = Vector3::new(0.0, 0.0, 0.4);
        let feet = [
            Vector3::new(0.26, 0.15, 0.0),
            Vector3::new(0.26, -0.15, 0.0),
            Vector3::new(-0.26, 0.15, 0.0),
            Vector3::new(-0.26, -0.15, 0.0),
        ];
        let f = Vector3::new(0.0, 0.0, 10.0 * 9.81 / 4.0);
        let (lin, ang) = residual_from_state(
            &params,
            &r,
            &Vector3::zeros(),
            &Vector3::zeros(),
            &Vector3::zeros(),
            &feet,
            &[f, f, f, f],
        );
        assert_relative_eq!(lin.norm(), 0.0, epsilon = 1e-12);
        assert_relative_eq!(ang.norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn free_fall_has_zero_linear_residual() {
        let params = SrbdParams::default();
        let (lin, _) = residual_from_state(
            &params,
            &Vector3::new(0.0, 0.0, 1.0),
            &Vector3::new(0.0, 0.0, -params.gravity),
            &Vector3::zeros(),
            &Vector3::zeros(),
            &[Vector3::zeros(); 4],
            &[Vector3::zeros(); 4],
        );
        assert_relative_eq!(lin.norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn angular_motion_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let theta = Vector3::from_fn(|_, _| rng.gen_range(-1.0..1.0));
            let dtheta = Vector3::from_fn(|_, _| rng.gen_range(-2.0..2.0));
            let ddtheta = Vector3::from_fn(|_, _| rng.gen_range(-2.0..2.0));
            let am = angular_motion(&theta, &dtheta, &ddtheta);

            // w from the rotation matrix derivative: skew(w) = R_dot R^T
            let h = 1e-6;
            let rp = crate::math::rot_from_euler(&(theta + dtheta * h + ddtheta * (h * h / 2.0)));
            let rm = crate::math::rot_from_euler(&(theta - dtheta * h + ddtheta * (h * h / 2.0)));
            let r0 = crate::math::rot_from_euler(&theta);
            let rdot = (rp - rm) / (2.0 * h);
            let wx = rdot * r0.transpose();
            let w_fd = Vector3::new(wx[(2, 1)], wx[(0, 2)], wx[(1, 0)]);
            assert_relative_eq!(am.w, w_fd, epsilon = 1e-5);

            // jacobians against central differences of angular_motion itself
            for k in 0..3 {
                let mut dp = theta;
                let mut dm = theta;
                dp[k] += h;
                dm[k] -= h;
                let ap = angular_motion(&dp, &dtheta, &ddtheta);
                let amn = angular_motion(&dm, &dtheta, &ddtheta);
                assert_relative_eq!(
                    am.j_w_theta.column(k).into_owned(),
                    (ap.w - amn.w) / (2.0 * h),
                    epsilon = 1e-5
                );
                assert_relative_eq!(
                    am.j_dw_theta.column(k).into_owned(),
                    (ap.dw - amn.dw) / (2.0 * h),
                    epsilon = 1e-5
                );

                let mut vp = dtheta;
                let mut vm = dtheta;
                vp[k] += h;
                vm[k] -= h;
                let ap = angular_motion(&theta, &vp, &ddtheta);
                let amn = angular_motion(&theta, &vm, &ddtheta);
                assert_relative_eq!(
                    am.j_w_dtheta.column(k).into_owned(),
                    (ap.w - amn.w) / (2.0 * h),
                    epsilon = 1e-5
                );
                assert_relative_eq!(
                    am.j_dw_dtheta.column(k).into_owned(),
                    (ap.dw - amn.dw) / (2.0 * h),
                    epsilon = 1e-5
                );

                let mut gp = ddtheta;
                let mut gm = ddtheta;
                gp[k] += h;
                gm[k] -= h;
                let ap = angular_motion(&theta, &dtheta, &gp);
                let amn = angular_motion(&theta, &dtheta, &gm);
                assert_relative_eq!(
                    am.j_dw_ddtheta.column(k).into_owned(),
                    (ap.dw - amn.dw) / (2.0 * h),
                    epsilon = 1e-5
                );
            }
        }
    }
}
