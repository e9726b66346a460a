//! Small rotation and geometry helpers shared across the crate.
//!
//! Euler angles are ZYX: `R = Rz(yaw) * Ry(pitch) * Rx(roll)`, stored as
//! `Vector3(roll, pitch, yaw)`.

use nalgebra::{Matrix3, Vector2, Vector3};

pub fn rot_x(a: f64) -> Matrix3<f64> {
    let (s, c) = a.sin_cos();
    Matrix3::new(1.0, 0.0, 0.0, 0.0, c, -s, 0.0, s, c)
}

pub fn rot_y(a: f64) -> Matrix3<f64> {
    let (s, c) = a.sin_cos();
    Matrix3::new(c, 0.0, s, 0.0, 1.0, 0.0, -s, 0.0, c)
}

pub fn rot_z(a: f64) -> Matrix3<f64> {
    let (s, c) = a.sin_cos();
    Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0)
}

/// ZYX Euler angles `(roll, pitch, yaw)` to a rotation matrix.
pub fn rot_from_euler(e: &Vector3<f64>) -> Matrix3<f64> {
    rot_z(e.z) * rot_y(e.y) * rot_x(e.x)
}

/// Rotation matrix plus its partial derivatives with respect to each Euler angle.
pub fn rot_from_euler_partials(e: &Vector3<f64>) -> (Matrix3<f64>, [Matrix3<f64>; 3]) {
    let rx = rot_x(e.x);
    let ry = rot_y(e.y);
    let rz = rot_z(e.z);
    let (sx, cx) = e.x.sin_cos();
    let (sy, cy) = e.y.sin_cos();
    let (sz, cz) = e.z.sin_cos();
    let drx = Matrix3::new(0.0, 0.0, 0.0, 0.0, -sx, -cx, 0.0, cx, -sx);
    let dry = Matrix3::new(-sy, 0.0, cy, 0.0, 0.0, 0.0, -cy, 0.0, -sy);
    let drz = Matrix3::new(-sz, -cz, 0.0, cz, -sz, 0.0, 0.0, 0.0, 0.0);
    let r = rz * ry * rx;
    (r, [rz * ry * drx, rz * dry * rx, drz * ry * rx])
}

pub fn skew(v: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::new(0.0, -v.z, v.y, v.z, 0.0, -v.x, -v.y, v.x, 0.0)
}

/// Encode a rotation as its first two columns.
pub fn rotation_to_6d(r: &Matrix3<f64>) -> [f64; 6] {
    [
        r[(0, 0)],
        r[(1, 0)],
        r[(2, 0)],
        r[(0, 1)],
        r[(1, 1)],
        r[(2, 1)],
    ]
}

/// Decode a 6D orientation by Gram-Schmidt on the two stored columns.
///
/// Returns `None` if either column degenerates (near-zero norm or
/// near-parallel columns).
pub fn rotation_from_6d(w: &[f64; 6]) -> Option<Matrix3<f64>> {
    let a = Vector3::new(w[0], w[1], w[2]);
    let b = Vector3::new(w[3], w[4], w[5]);
    let na = a.norm();
    if na < 1e-9 {
        return None;
    }
    let x = a / na;
    let b_orth = b - x * x.dot(&b);
    let nb = b_orth.norm();
    if nb < 1e-9 {
        return None;
    }
    let y = b_orth / nb;
    let z = x.cross(&y);
    Some(Matrix3::from_columns(&[x, y, z]))
}

/// Axis-angle vector of a rotation matrix (matrix logarithm).
pub fn log_rotation(r: &Matrix3<f64>) -> Vector3<f64> {
    let tr = (r.trace() - 1.0) / 2.0;
    let angle = tr.clamp(-1.0, 1.0).acos();
    if angle < 1e-10 {
        // first-order: R ~ I + skew(v)
        return Vector3::new(
            (r[(2, 1)] - r[(1, 2)]) / 2.0,
            (r[(0, 2)] - r[(2, 0)]) / 2.0,
            (r[(1, 0)] - r[(0, 1)]) / 2.0,
        );
    }
    if (std::f64::consts::PI - angle).abs() < 1e-6 {
        // near pi: extract axis from R + I
        let m = r + Matrix3::identity();
        let col = (0..3)
            .map(|i| m.column(i).norm())
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(i, _)| i)
            .unwrap();
        let axis = m.column(col).normalize();
        return axis * angle;
    }
    let v = Vector3::new(
        r[(2, 1)] - r[(1, 2)],
        r[(0, 2)] - r[(2, 0)],
        r[(1, 0)] - r[(0, 1)],
    );
    v * (angle / (2.0 * angle.sin()))
}

/// Wrap an angle to `(-pi, pi]`.
pub fn wrap_angle(a: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut w = a % two_pi;
    if w > std::f64::consts::PI {
        w -= two_pi;
    } else if w <= -std::f64::consts::PI {
        w += two_pi;
    }
    w
}

pub fn rot2(a: f64) -> nalgebra::Matrix2<f64> {
    let (s, c) = a.sin_cos();
    nalgebra::Matrix2::new(c, -s, s, c)
}

/// Nearest point to `p` on segment `ab`, and its parameter `t` in `[0, 1]`.
pub fn closest_point_on_segment(
    p: &Vector2<f64>,
    a: &Vector2<f64>,
    b: &Vector2<f64>,
) -> (Vector2<f64>, f64) {
    let ab = b - a;
    let len2 = ab.norm_squared();
    if len2 < 1e-18 {
        return (*a, 0.0);
    }
    let t = ((p - a).dot(&ab) / len2).clamp(0.0, 1.0);
    (a + ab * t, t)
}
