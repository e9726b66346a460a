//! Single 30 fps state snapshot and the planar local-frame transform.

use nalgebra::{Matrix3, Vector2, Vector3};
use serde::{Deserialize, Serialize};

use super::LibraryError;
use crate::math::{rot2, rotation_from_6d, rotation_to_6d};

/// Dimension of the flattened robot state: root position and velocity (3+3),
/// 6D orientation, foot positions and velocities (12+12).
pub const STATE_DIM: usize = 36;

/// One snapshot of the simplified robot state in world coordinates.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Frame {
    pub time: f64,
    pub root_position: Vector3<f64>,
    pub root_velocity: Vector3<f64>,
    /// First two columns of the root rotation matrix.
    pub orientation: [f64; 6],
    pub foot_positions: [Vector3<f64>; 4],
    pub foot_velocities: [Vector3<f64>; 4],
    pub contact_flags: [bool; 4],
}

impl Frame {
    pub fn validate(&self) -> Result<(), LibraryError> {
        let violation = |field: &str, detail: String| LibraryError::InvariantViolation {
            field: field.to_string(),
            detail,
        };
        let a = Vector3::new(self.orientation[0], self.orientation[1], self.orientation[2]);
        let b = Vector3::new(self.orientation[3], self.orientation[4], self.orientation[5]);
        if (a.norm() - 1.0).abs() > 1e-6 || (b.norm() - 1.0).abs() > 1e-6 {
            return Err(violation("orientation", "columns must be unit length".into()));
        }
        if a.dot(&b).abs() > 1e-6 {
            return Err(violation("orientation", "columns must be orthogonal".into()));
        }
        for (name, v) in [
            ("root_position", &self.root_position),
            ("root_velocity", &self.root_velocity),
        ] {
            if !v.iter().all(|c| c.is_finite()) {
                return Err(violation(name, "non-finite component".into()));
            }
        }
        for (leg, p) in self.foot_positions.iter().enumerate() {
            if !p.iter().all(|c| c.is_finite()) {
                return Err(violation(
                    &format!("foot_positions[{leg}]"),
                    "non-finite component".into(),
                ));
            }
        }
        for (leg, v) in self.foot_velocities.iter().enumerate() {
            if !v.iter().all(|c| c.is_finite()) {
                return Err(violation(
                    &format!("foot_velocities[{leg}]"),
                    "non-finite component".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn rotation(&self) -> Option<Matrix3<f64>> {
        rotation_from_6d(&self.orientation)
    }

    /// Heading of the forward axis projected onto the ground plane.
    pub fn yaw(&self) -> Result<f64, LibraryError> {
        let fx = self.orientation[0];
        let fy = self.orientation[1];
        if (fx * fx + fy * fy).sqrt() < 1e-6 {
            return Err(LibraryError::DegenerateOrientation);
        }
        Ok(fy.atan2(fx))
    }

    /// Flatten the frame into the 36-dim state vector in the coordinates of
    /// `tf`.
    pub fn state_local(&self, tf: &PlanarTransform) -> [f64; STATE_DIM] {
        let mut s = [0.0; STATE_DIM];
        let r = tf.point_to_local(&self.root_position);
        let rd = tf.vector_to_local(&self.root_velocity);
        s[0..3].copy_from_slice(r.as_slice());
        s[3..6].copy_from_slice(rd.as_slice());
        let a = tf.vector_to_local(&Vector3::new(
            self.orientation[0],
            self.orientation[1],
            self.orientation[2],
        ));
        let b = tf.vector_to_local(&Vector3::new(
            self.orientation[3],
            self.orientation[4],
            self.orientation[5],
        ));
        s[6..9].copy_from_slice(a.as_slice());
        s[9..12].copy_from_slice(b.as_slice());
        for leg in 0..4 {
            let p = tf.point_to_local(&self.foot_positions[leg]);
            let v = tf.vector_to_local(&self.foot_velocities[leg]);
            s[12 + 3 * leg..12 + 3 * leg + 3].copy_from_slice(p.as_slice());
            s[24 + 3 * leg..24 + 3 * leg + 3].copy_from_slice(v.as_slice());
        }
        s
    }

    /// Rebuild a world-frame snapshot from a local state vector. The 6D
    /// orientation is re-orthonormalized by Gram-Schmidt.
    pub fn from_state_local(
        state: &[f64],
        tf: &PlanarTransform,
        time: f64,
        contact_flags: [bool; 4],
    ) -> Result<Self, LibraryError> {
        assert_eq!(state.len(), STATE_DIM);
        let r = tf.point_to_world(&Vector3::new(state[0], state[1], state[2]));
        let rd = tf.vector_to_world(&Vector3::new(state[3], state[4], state[5]));
        let w6_local = [state[6], state[7], state[8], state[9], state[10], state[11]];
        let rot_local =
            rotation_from_6d(&w6_local).ok_or(LibraryError::DegenerateOrientation)?;
        let rot_world = crate::math::rot_z(tf.yaw) * rot_local;
        let mut foot_positions = [Vector3::zeros(); 4];
        let mut foot_velocities = [Vector3::zeros(); 4];
        for leg in 0..4 {
            foot_positions[leg] = tf.point_to_world(&Vector3::new(
                state[12 + 3 * leg],
                state[13 + 3 * leg],
                state[14 + 3 * leg],
            ));
            foot_velocities[leg] = tf.vector_to_world(&Vector3::new(
                state[24 + 3 * leg],
                state[25 + 3 * leg],
                state[26 + 3 * leg],
            ));
        }
        Ok(Self {
            time,
            root_position: r,
            root_velocity: rd,
            orientation: rotation_to_6d(&rot_world),
            foot_positions,
            foot_velocities,
            contact_flags,
        })
    }
}

/// Planar rigid transform: ground-plane origin plus heading.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarTransform {
    pub origin: Vector2<f64>,
    pub yaw: f64,
}

impl PlanarTransform {
    pub fn identity() -> Self {
        Self {
            origin: Vector2::zeros(),
            yaw: 0.0,
        }
    }

    pub fn point_to_local(&self, p: &Vector3<f64>) -> Vector3<f64> {
        let xy = rot2(-self.yaw) * (p.xy() - self.origin);
        Vector3::new(xy.x, xy.y, p.z)
    }

    pub fn vector_to_local(&self, v: &Vector3<f64>) -> Vector3<f64> {
        let xy = rot2(-self.yaw) * v.xy();
        Vector3::new(xy.x, xy.y, v.z)
    }

    pub fn point_to_world(&self, p: &Vector3<f64>) -> Vector3<f64> {
        let xy = rot2(self.yaw) * p.xy() + self.origin;
        Vector3::new(xy.x, xy.y, p.z)
    }

    pub fn vector_to_world(&self, v: &Vector3<f64>) -> Vector3<f64> {
        let xy = rot2(self.yaw) * v.xy();
        Vector3::new(xy.x, xy.y, v.z)
    }

    pub fn planar_to_local(&self, p: &Vector2<f64>) -> Vector2<f64> {
        rot2(-self.yaw) * (p - self.origin)
    }

    pub fn planar_to_world(&self, p: &Vector2<f64>) -> Vector2<f64> {
        rot2(self.yaw) * p + self.origin
    }

    pub fn dir_to_local(&self, d: &Vector2<f64>) -> Vector2<f64> {
        rot2(-self.yaw) * d
    }

    pub fn dir_to_world(&self, d: &Vector2<f64>) -> Vector2<f64> {
        rot2(self.yaw) * d
    }
}

/// Planar transform attached to a frame: root ground-plane position plus the
/// projected heading of the forward axis.
pub fn extract_local_frame(frame: &Frame) -> Result<PlanarTransform, LibraryError> {
    Ok(PlanarTransform {
        origin: frame.root_position.xy(),
        yaw: frame.yaw()?,
    })
}
