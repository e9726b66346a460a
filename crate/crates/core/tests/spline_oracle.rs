//! Checks Hermite evaluation against an independent scalar-polynomial oracle:
//! per-segment cubic coefficients are recovered by solving the boundary
//! conditions as a dense 4x4 linear system, then evaluated as a plain
//! polynomial.

use armp_core::spline::HermiteSpline;
use nalgebra::{Matrix4, Vector4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Cubic `a + b t + c t^2 + d t^3` satisfying the segment's boundary values
/// and derivatives, found by linear solve rather than the Hermite basis.
fn segment_poly(v0: f64, d0: f64, v1: f64, d1: f64, dt: f64) -> Vector4<f64> {
    let m = Matrix4::new(
        1.0,
        0.0,
        0.0,
        0.0,
        0.0,
        1.0,
        0.0,
        0.0,
        1.0,
        dt,
        dt * dt,
        dt * dt * dt,
        0.0,
        1.0,
        2.0 * dt,
        3.0 * dt * dt,
    );
    let rhs = Vector4::new(v0, d0, v1, d1);
    m.lu().solve(&rhs).unwrap()
}

fn poly_eval(c: &Vector4<f64>, t: f64) -> (f64, f64, f64) {
    (
        c[0] + c[1] * t + c[2] * t * t + c[3] * t * t * t,
        c[1] + 2.0 * c[2] * t + 3.0 * c[3] * t * t,
        2.0 * c[2] + 6.0 * c[3] * t,
    )
}

#[test]
fn random_splines_match_polynomial_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let n_seg = 3;
        let nodes: Vec<(f64, f64)> = (0..=n_seg)
            .map(|_| (rng.gen_range(-2.0..2.0), rng.gen_range(-3.0..3.0)))
            .collect();
        let durations: Vec<f64> = (0..n_seg).map(|_| rng.gen_range(0.2..1.5)).collect();
        let spline = HermiteSpline::new(nodes.clone(), durations.clone()).unwrap();

        // probe a fixed fractional time plus random ones
        let total: f64 = durations.iter().sum();
        let mut probes = vec![0.37_f64.min(total)];
        for _ in 0..20 {
            probes.push(rng.gen_range(0.0..total));
        }
        for t in probes {
            // locate segment independently
            let mut seg = 0;
            let mut tau = t;
            while seg < n_seg - 1 && tau > durations[seg] {
                tau -= durations[seg];
                seg += 1;
            }
            let c = segment_poly(
                nodes[seg].0,
                nodes[seg].1,
                nodes[seg + 1].0,
                nodes[seg + 1].1,
                durations[seg],
            );
            let (ev, ed, ea) = poly_eval(&c, tau);
            let (v, d, a) = spline.eval(t).unwrap();
            assert!((v - ev).abs() <= 1e-12, "value mismatch at t={t}: {v} vs {ev}");
            assert!((d - ed).abs() <= 1e-10, "deriv mismatch at t={t}");
            assert!((a - ea).abs() <= 1e-9, "accel mismatch at t={t}");
        }
    }
}

#[test]
fn node_continuity_value_and_derivative() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let nodes: Vec<(f64, f64)> = (0..5)
            .map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let durations: Vec<f64> = (0..4).map(|_| rng.gen_range(0.1..1.0)).collect();
        let s = HermiteSpline::new(nodes, durations.clone()).unwrap();
        let mut t = 0.0;
        for d in &durations[..3] {
            t += d;
            let (vl, dl, _) = s.eval(t - 1e-13).unwrap();
            let (vr, dr, _) = s.eval(t + 1e-13).unwrap();
            // the spline itself moves by O(|d2| * 2e-13) across the probe gap
            assert!((vl - vr).abs() <= 1e-10);
            assert!((dl - dr).abs() <= 1e-9);
        }
    }
}
