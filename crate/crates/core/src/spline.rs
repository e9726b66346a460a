//! Scalar cubic Hermite splines: per-node value/derivative pairs with
//! per-segment durations, C1 across interior nodes by construction.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SplineError {
    #[error("time {t} outside spline domain [0, {total}]")]
    OutOfDomain { t: f64, total: f64 },
    #[error("spline needs at least 2 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("segment {0} has non-positive duration {1}")]
    BadDuration(usize, f64),
}

/// Piecewise cubic defined by `(value, derivative)` nodes.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct HermiteSpline {
    /// `(value, derivative)` at each node; `durations.len() + 1` entries.
    pub nodes: Vec<(f64, f64)>,
    /// Duration of each segment in seconds.
    pub durations: Vec<f64>,
}

/// Hermite basis weights of one evaluation point over the four segment
/// unknowns `[v0, d0, v1, d1]`, for value, first and second derivative.
#[derive(Debug, Clone, Copy)]
pub struct Basis {
    pub segment: usize,
    pub value: [f64; 4],
    pub deriv1: [f64; 4],
    pub deriv2: [f64; 4],
}

const DOMAIN_EPS: f64 = 1e-9;

impl HermiteSpline {
    pub fn new(nodes: Vec<(f64, f64)>, durations: Vec<f64>) -> Result<Self, SplineError> {
        if nodes.len() < 2 {
            return Err(SplineError::TooFewNodes(nodes.len()));
        }
        assert_eq!(nodes.len(), durations.len() + 1, "node/segment mismatch");
        for (i, &d) in durations.iter().enumerate() {
            if !(d > 0.0) {
                return Err(SplineError::BadDuration(i, d));
            }
        }
        Ok(Self { nodes, durations })
    }

    /// Constant spline over `[0, duration]`.
    pub fn constant(value: f64, duration: f64) -> Self {
        Self {
            nodes: vec![(value, 0.0), (value, 0.0)],
            durations: vec![duration],
        }
    }

    pub fn total_duration(&self) -> f64 {
        self.durations.iter().sum()
    }

    /// Segment index and local time for a query time.
    fn locate(&self, t: f64) -> Result<(usize, f64), SplineError> {
        let total = self.total_duration();
        if t < -DOMAIN_EPS || t > total + DOMAIN_EPS {
            return Err(SplineError::OutOfDomain { t, total });
        }
        let mut tau = t.max(0.0);
        for (i, &d) in self.durations.iter().enumerate() {
            if tau <= d || i == self.durations.len() - 1 {
                return Ok((i, tau.min(d)));
            }
            tau -= d;
        }
        unreachable!()
    }

    /// Value, first and second derivative at time `t`.
    pub fn eval(&self, t: f64) -> Result<(f64, f64, f64), SplineError> {
        let basis = self.basis(t)?;
        let s = basis.segment;
        let q = [
            self.nodes[s].0,
            self.nodes[s].1,
            self.nodes[s + 1].0,
            self.nodes[s + 1].1,
        ];
        let dot = |w: &[f64; 4]| w.iter().zip(q.iter()).map(|(a, b)| a * b).sum::<f64>();
        Ok((dot(&basis.value), dot(&basis.deriv1), dot(&basis.deriv2)))
    }

    /// Basis weights at time `t`; exposes the linear dependence of the
    /// evaluation on the segment's four node unknowns.
    pub fn basis(&self, t: f64) -> Result<Basis, SplineError> {
        let (segment, tau) = self.locate(t)?;
        Ok(Self::basis_for(segment, tau, self.durations[segment]))
    }

    /// Basis weights for local time `tau` within a segment of duration `dt`.
    pub fn basis_for(segment: usize, tau: f64, dt: f64) -> Basis {
        let u = tau / dt;
        let u2 = u * u;
        let u3 = u2 * u;
        let h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
        let h10 = u3 - 2.0 * u2 + u;
        let h01 = -2.0 * u3 + 3.0 * u2;
        let h11 = u3 - u2;
        // d/du
        let g00 = 6.0 * u2 - 6.0 * u;
        let g10 = 3.0 * u2 - 4.0 * u + 1.0;
        let g01 = -6.0 * u2 + 6.0 * u;
        let g11 = 3.0 * u2 - 2.0 * u;
        // d2/du2
        let k00 = 12.0 * u - 6.0;
        let k10 = 6.0 * u - 4.0;
        let k01 = -12.0 * u + 6.0;
        let k11 = 6.0 * u - 2.0;
        Basis {
            segment,
            value: [h00, dt * h10, h01, dt * h11],
            deriv1: [g00 / dt, g10, g01 / dt, g11],
            deriv2: [k00 / (dt * dt), k10 / dt, k01 / (dt * dt), k11 / dt],
        }
    }

    /// Start time of each node.
    pub fn node_times(&self) -> Vec<f64> {
        let mut ts = Vec::with_capacity(self.nodes.len());
        let mut acc = 0.0;
        ts.push(0.0);
        for &d in &self.durations {
            acc += d;
            ts.push(acc);
        }
        ts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn step_spline() -> HermiteSpline {
        HermiteSpline::new(vec![(0.0, 0.0), (1.0, 0.0)], vec![1.0]).unwrap()
    }

    #[test]
    fn endpoint_values_exact() {
        let s = step_spline();
        let (v, d, _) = s.eval(0.0).unwrap();
        assert_eq!(v, 0.0);
        assert_eq!(d, 0.0);
        let (v, d, _) = s.eval(1.0).unwrap();
        assert_relative_eq!(v, 1.0, epsilon = 1e-15);
        assert_relative_eq!(d, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn symmetric_cubic_midpoint() {
        let s = step_spline();
        let (v, _, _) = s.eval(0.5).unwrap();
        assert_relative_eq!(v, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn out_of_domain_rejected() {
        let s = step_spline();
        assert!(matches!(s.eval(-0.1), Err(SplineError::OutOfDomain { .. })));
        assert!(matches!(s.eval(1.1), Err(SplineError::OutOfDomain { .. })));
    }

    #[test]
    fn continuity_at_interior_nodes() {
        let s = HermiteSpline::new(
            vec![(0.0, 1.0), (2.0, -0.5), (1.0, 0.3), (0.0, 0.0)],
            vec![0.7, 1.3, 0.5],
        )
        .unwrap();
        for &tb in &[0.7, 2.0] {
            let (vl, dl, _) = s.eval(tb - 1e-12).unwrap();
            let (vr, dr, _) = s.eval(tb + 1e-12).unwrap();
            assert!((vl - vr).abs() <= 1e-10);
            assert!((dl - dr).abs() <= 1e-9);
        }
    }

    #[test]
    fn bad_construction_rejected() {
        assert!(matches!(
            HermiteSpline::new(vec![(0.0, 0.0)], vec![]),
            Err(SplineError::TooFewNodes(1))
        ));
        assert!(matches!(
            HermiteSpline::new(vec![(0.0, 0.0), (1.0, 0.0)], vec![0.0]),
            Err(SplineError::BadDuration(0, _))
        ));
    }
}
