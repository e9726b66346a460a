//! Physical parameters of the single-rigid-body model.

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParamError {
    #[error("mass must be positive, got {0}")]
    BadMass(f64),
    #[error("inertia tensor must be symmetric positive definite")]
    BadInertia,
    #[error("friction coefficient must be positive, got {0}")]
    BadFriction(f64),
    #[error("kinematic box half-extents must be positive")]
    BadBox,
}

/// Mass, inertia, friction and leg-workspace geometry of the robot.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SrbdParams {
    /// Total mass, kg.
    pub mass: f64,
    /// Body-frame inertia tensor, kg m^2, assumed constant.
    pub inertia_body: Matrix3<f64>,
    /// Gravitational acceleration magnitude, m/s^2.
    pub gravity: f64,
    /// Friction coefficient of the friction pyramid.
    pub mu: f64,
    /// Nominal foot positions in the body frame, `[FL, FR, RL, RR]`.
    pub nominal_foot_offsets: [Vector3<f64>; 4],
    /// Half-sizes of the per-leg reachable cuboid around the nominal offset.
    pub kinematic_box_half_extents: Vector3<f64>,
}

impl SrbdParams {
    pub fn validate(&self) -> Result<(), ParamError> {
        if !(self.mass > 0.0) {
            return Err(ParamError::BadMass(self.mass));
        }
        let i = &self.inertia_body;
        if (i - i.transpose()).amax() > 1e-9 {
            return Err(ParamError::BadInertia);
        }
        // positive definiteness via Cholesky
        if nalgebra::Cholesky::new(*i).is_none() {
            return Err(ParamError::BadInertia);
        }
        if !(self.mu > 0.0) {
            return Err(ParamError::BadFriction(self.mu));
        }
        if self.kinematic_box_half_extents.min() <= 0.0 {
            return Err(ParamError::BadBox);
        }
        Ok(())
    }

    /// Standing root height implied by the nominal foot offsets.
    pub fn stand_height(&self) -> f64 {
        -self.nominal_foot_offsets[0].z
    }

    /// AlienGo-class defaults used throughout the desk-scale pipeline.
    pub fn aliengo_like() -> Self {
        let x = 0.26;
        let y = 0.15;
        let z = -0.40;
        Self {
            mass: 12.0,
            inertia_body: Matrix3::from_diagonal(&Vector3::new(0.08, 0.26, 0.28)),
            gravity: 9.81,
            mu: 0.6,
            nominal_foot_offsets: [
                Vector3::new(x, y, z),
                Vector3::new(x, -y, z),
                Vector3::new(-x, y, z),
                Vector3::new(-x, -y, z),
            ],
            kinematic_box_half_extents: Vector3::new(0.18, 0.10, 0.13),
        }
    }
}

impl Default for SrbdParams {
    fn default() -> Self {
        Self::aliengo_like()
    }
}

/// Planar root pose: position on the ground plane plus heading.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct PlanarPose {
    pub x: f64,
    pub y: f64,
    pub yaw: f64,
}

impl PlanarPose {
    pub fn new(x: f64, y: f64, yaw: f64) -> Self {
        Self { x, y, yaw }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        SrbdParams::default().validate().unwrap();
    }

    #[test]
    fn bad_params_rejected() {
        let mut p = SrbdParams::default();
        p.mass = 0.0;
        assert!(matches!(p.validate(), Err(ParamError::BadMass(_))));

        let mut p = SrbdParams::default();
        p.inertia_body[(0, 1)] = 0.5;
        assert!(matches!(p.validate(), Err(ParamError::BadInertia)));

        let mut p = SrbdParams::default();
        p.inertia_body = Matrix3::from_diagonal(&Vector3::new(-1.0, 1.0, 1.0));
        assert!(matches!(p.validate(), Err(ParamError::BadInertia)));

        let mut p = SrbdParams::default();
        p.mu = 0.0;
        assert!(matches!(p.validate(), Err(ParamError::BadFriction(_))));
    }
}
