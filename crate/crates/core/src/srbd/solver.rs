//! Augmented Lagrangian solver with a damped Gauss-Newton inner loop.
//!
//! Equality constraints carry multiplier estimates updated between inner
//! solves; inequality constraints enter as squared hinges scaled by the
//! penalty parameter, which grows whenever the maximum violation stalls.
//! The inner subproblem is a nonlinear least-squares merit, so each inner
//! step solves the damped normal equations and backtracks along the result.

use faer::linalg::solvers::Solve;
use faer::sparse::linalg::solvers::{Llt, SymbolicLlt};
use faer::sparse::{SparseColMat, Triplet};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::constraints::{ConstraintGrid, ViolationReport};
use super::problem::TOProblem;
use crate::spline::HermiteSpline;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Target maximum constraint violation, native units per family.
    pub tolerance: f64,
    pub max_outer: usize,
    pub max_inner: usize,
    /// Multiplier applied to the penalty when progress stalls.
    pub penalty_growth: f64,
    pub initial_penalty: f64,
    /// Consecutive merit increases across outer iterations before giving up.
    pub divergence_guard: usize,
    /// Recorded for reproducibility; the solver itself is deterministic.
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-3,
            max_outer: 12,
            max_inner: 550,
            penalty_growth: 10.0,
            initial_penalty: 1e5,
            divergence_guard: 5,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub converged: bool,
    pub outer_iterations: usize,
    pub inner_iterations: usize,
    pub max_violation: f64,
    pub final_merit: f64,
    pub violations: ViolationReport,
}

/// Solved spline trajectories plus the convergence report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TOSolution {
    pub root: [HermiteSpline; 3],
    pub euler: [HermiteSpline; 3],
    pub feet: [[HermiteSpline; 3]; 4],
    pub forces: [[HermiteSpline; 3]; 4],
    pub report: ConvergenceReport,
}

impl TOSolution {
    pub fn total_duration(&self) -> f64 {
        self.root[0].total_duration()
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("iteration budget exhausted with max violation {max_violation}")]
    MaxIterations {
        max_violation: f64,
        best: Box<TOSolution>,
    },
    #[error("merit diverged; best max violation {max_violation}")]
    Diverged {
        max_violation: f64,
        best: Box<TOSolution>,
    },
}

fn assemble(problem: &TOProblem, x: &[f64], report: ConvergenceReport) -> TOSolution {
    let (root, euler, feet, forces) = problem.splines(x);
    TOSolution {
        root,
        euler,
        feet,
        forces,
        report,
    }
}

/// Minimize the augmented merit by Levenberg-Marquardt over the
/// Gauss-Newton model of its least-squares structure. The damping is
/// adapted from the gain ratio between actual and model-predicted decrease,
/// which keeps the step inside the region where the model is trustworthy.
fn gauss_newton_minimize(
    grid: &ConstraintGrid,
    problem: &TOProblem,
    lambda: &[f64],
    rho: f64,
    mut x: Vec<f64>,
    max_iter: usize,
    tol_viol: f64,
    jtj: &mut DMatrix<f64>,
    symbolic_cache: &mut Option<(Vec<(usize, usize)>, SymbolicLlt<usize>)>,
) -> (Vec<f64>, f64, usize) {
    let n = x.len();
    let trace = std::env::var_os("ARMP_TO_TRACE_INNER").is_some();
    let mut ev = grid.evaluate_gn(problem, &x, Some(lambda), rho, jtj);
    let mut fx = ev.merit;
    let mut iters = 0;
    let mut mu = 1e-3;
    let mut nu = 2.0;
    let mut stagnant = 0usize;
    // once the violation target is met, keep polishing for a bounded number
    // of iterations so the smoothness costs settle before returning
    let mut polish_left: Option<usize> = None;

    for it in 0..max_iter {
        let g = ev.grad.as_ref().unwrap();
        let gnorm = g.iter().fold(0.0_f64, |a, &b| a.max(b.abs()));
        // the merit gradient scales with the penalty parameter
        if gnorm <= 1e-9 * rho.max(1.0) {
            break;
        }
        let f_prev = fx;
        let diag: Vec<f64> = (0..n).map(|i| jtj[(i, i)]).collect();
        let dmax = diag.iter().cloned().fold(0.0_f64, f64::max).max(1e-12);

        // symmetric diagonal (Jacobi) scaling: the normal matrix mixes
        // penalty-weighted constraint rows with tiny regularizer rows, and
        // factorizing the unit-diagonal form keeps the solve well behaved
        let scale: Vec<f64> = diag
            .iter()
            .map(|&d| 1.0 / d.max(1e-10 * dmax).sqrt())
            .collect();
        // the normal matrix is a few percent dense, so the step is solved
        // with a sparse factorization; only its lower triangle is gathered.
        // the sparsity pattern only changes when a hinge activates or
        // deactivates, so the symbolic analysis is reused while it matches
        let mut trips: Vec<Triplet<usize, usize, f64>> = Vec::new();
        let mut accepted = false;
        for _ in 0..30 {
            // scale-invariant damping on the normal-matrix diagonal, with a
            // floor so rank-deficient directions stay bounded
            let damp: Vec<f64> = diag.iter().map(|&d| mu * d.max(1e-8 * dmax)).collect();
            trips.clear();
            for j in 0..n {
                trips.push(Triplet::new(j, j, (jtj[(j, j)] + damp[j]) * scale[j] * scale[j]));
                for i in j + 1..n {
                    let v = jtj[(i, j)];
                    if v != 0.0 {
                        trips.push(Triplet::new(i, j, v * scale[i] * scale[j]));
                    }
                }
            }
            let h = SparseColMat::<usize, f64>::try_new_from_triplets(n, n, &trips)
                .expect("normal-matrix triplets are in range");
            let pattern: Vec<(usize, usize)> = trips.iter().map(|t| (t.row, t.col)).collect();
            if symbolic_cache
                .as_ref()
                .map(|(p, _)| *p != pattern)
                .unwrap_or(true)
            {
                let sym = SymbolicLlt::try_new(h.symbolic(), faer::Side::Lower)
                    .expect("symbolic analysis only fails on allocation");
                *symbolic_cache = Some((pattern, sym));
            }
            let sym = symbolic_cache.as_ref().unwrap().1.clone();
            let Ok(chol) = Llt::try_new_with_symbolic(sym, h.as_ref(), faer::Side::Lower) else {
                mu *= nu;
                nu *= 2.0;
                continue;
            };
            let srhs = faer::Mat::from_fn(n, 1, |i, _| -g[i] * scale[i]);
            let sol = chol.solve(&srhs);
            let d: Vec<f64> = (0..n).map(|i| sol[(i, 0)] * scale[i]).collect();
            // predicted decrease of the damped model: 0.5 d^T (damp d - g)
            let pred: f64 = (0..n)
                .map(|i| 0.5 * d[i] * (damp[i] * d[i] - g[i]))
                .sum();
            let x_new: Vec<f64> = x.iter().zip(&d).map(|(xi, di)| xi + di).collect();
            let f_new = grid.evaluate(problem, &x_new, Some(lambda), rho, false).merit;
            let gain = if pred > 0.0 { (fx - f_new) / pred } else { -1.0 };
            if f_new.is_finite() && gain > 0.0 {
                x = x_new;
                fx = f_new;
                mu = (mu * (1.0_f64 / 3.0).max(1.0 - (2.0 * gain - 1.0).powi(3))).max(1e-12);
                nu = 2.0;
                accepted = true;
                break;
            }
            mu *= nu;
            nu *= 2.0;
        }
        if !accepted {
            break;
        }
        iters += 1;
        ev = grid.evaluate_gn(problem, &x, Some(lambda), rho, jtj);
        fx = fx.min(ev.merit);
        if trace && it % 10 == 0 {
            eprintln!("  gn {it}: f {fx:.6e} |g| {gnorm:.3e} mu {mu:.1e}");
        }
        // stop once progress stalls for a few consecutive iterations
        if f_prev - fx <= 1e-11 * (1.0 + fx.abs()) {
            stagnant += 1;
            if stagnant >= 5 {
                break;
            }
        } else {
            stagnant = 0;
        }
        // periodically check whether the iterate already satisfies the
        // violation target; the outer loop re-verifies before accepting
        if let Some(left) = polish_left.as_mut() {
            if *left == 0 {
                break;
            }
            *left -= 1;
        } else if it % 20 == 19 && grid.violations(problem, &x).max_violation() <= tol_viol {
            polish_left = Some(60);
        }
    }
    (x, fx, iters)
}
/// Solve the trajectory optimization problem to the configured violation
/// tolerance. Deterministic given `(problem, cfg)`.
pub fn solve(problem: &TOProblem, cfg: &SolverConfig) -> Result<TOSolution, SolveError> {
    let grid = ConstraintGrid::new(problem, 1);
    let mut jtj = DMatrix::zeros(problem.n_vars, problem.n_vars);
    let mut symbolic_cache = None;
    let mut x = problem.x0.clone();
    let mut lambda = vec![0.0; grid.n_eq];
    let mut rho = cfg.initial_penalty;
    let mut total_inner = 0;

    let mut best_x = x.clone();
    let mut best_viol = grid.violations(problem, &x).max_violation();
    // start at zero so the penalty ramps after the first outer iteration;
    // the continuation from moderate to stiff penalties is what lets the
    // inner solver stay in its well-conditioned regime
    let mut prev_viol = 0.0_f64;
    let mut prev_merit = f64::INFINITY;
    let mut rising = 0usize;

    for outer in 0..cfg.max_outer {
        let viol_now = grid.violations(problem, &x).max_violation();
        if viol_now <= cfg.tolerance {
            let report = grid.violations(problem, &x);
            return Ok(assemble(
                problem,
                &x,
                ConvergenceReport {
                    converged: true,
                    outer_iterations: outer,
                    inner_iterations: total_inner,
                    max_violation: report.max_violation(),
                    final_merit: grid
                        .evaluate(problem, &x, Some(&lambda), rho, false)
                        .merit,
                    violations: report,
                },
            ));
        }

        let (x_new, merit, inner) =
            gauss_newton_minimize(
                &grid,
                problem,
                &lambda,
                rho,
                x,
                cfg.max_inner,
                0.9 * cfg.tolerance,
                &mut jtj,
                &mut symbolic_cache,
            );
        total_inner += inner;
        x = x_new;
        if std::env::var_os("ARMP_TO_TRACE").is_some() {
            let rep = grid.violations(problem, &x);
            eprintln!(
                "outer {outer}: rho {rho:.1e} merit {merit:.4e} inner {inner} viol {:.4e} (lin {:.2e} ang {:.2e} cont {:.2e} box {:.2e} st {:.2e} sw {:.2e} fr {:.2e})",
                rep.max_violation(),
                rep.dynamics_linear,
                rep.dynamics_angular,
                rep.accel_continuity,
                rep.kinematic_box,
                rep.terrain_stance,
                rep.terrain_swing,
                rep.friction,
            );
        }

        let ev = grid.evaluate(problem, &x, Some(&lambda), rho, false);
        let viol = ev.report.max_violation();
        if viol < best_viol {
            best_viol = viol;
            best_x = x.clone();
        }

        // first-order multiplier update every round; the penalty only grows
        // when the violation stalls, and stays moderate so the normal
        // equations of the inner solver remain well conditioned
        for (l, c) in lambda.iter_mut().zip(&ev.eq) {
            *l = (*l + rho * c).clamp(-1e8, 1e8);
        }
        if viol > 0.25 * prev_viol {
            rho = (rho * cfg.penalty_growth).min(1e6);
        }
        prev_viol = viol;

        // the merit grows mechanically with the penalty, so divergence is
        // judged on the violation itself
        if viol > 2.0 * best_viol.max(cfg.tolerance) {
            rising += 1;
            if rising >= cfg.divergence_guard {
                let report = grid.violations(problem, &best_x);
                let max_violation = report.max_violation();
                return Err(SolveError::Diverged {
                    max_violation,
                    best: Box::new(assemble(
                        problem,
                        &best_x,
                        ConvergenceReport {
                            converged: false,
                            outer_iterations: outer + 1,
                            inner_iterations: total_inner,
                            max_violation,
                            final_merit: merit,
                            violations: report,
                        },
                    )),
                });
            }
        } else {
            rising = 0;
        }
        prev_merit = merit;
    }

    let report = grid.violations(problem, &best_x);
    if report.max_violation() <= cfg.tolerance {
        return Ok(assemble(
            problem,
            &best_x,
            ConvergenceReport {
                converged: true,
                outer_iterations: cfg.max_outer,
                inner_iterations: total_inner,
                max_violation: report.max_violation(),
                final_merit: prev_merit,
                violations: report,
            },
        ));
    }
    let max_violation = report.max_violation();
    Err(SolveError::MaxIterations {
        max_violation,
        best: Box::new(assemble(
            problem,
            &best_x,
            ConvergenceReport {
                converged: false,
                outer_iterations: cfg.max_outer,
                inner_iterations: total_inner,
                max_violation,
                final_merit: prev_merit,
                violations: report,
            },
        )),
    })
}
