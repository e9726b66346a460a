// temporary diagnostic
use armp_core::gait::GaitSchedule;
use armp_core::srbd::{
    build_problem, dynamics_residual, BuildOptions, ConstraintGrid, ConvergenceReport, PlanarPose,
    SrbdParams, TOSolution,
};
use armp_core::terrain::TerrainModel;

fn assemble(p: &armp_core::srbd::TOProblem, x: &[f64]) -> TOSolution {
    let (root, euler, feet, forces) = p.splines(x);
    TOSolution {
        root,
        euler,
        feet,
        forces,
        report: ConvergenceReport {
            converged: false,
            outer_iterations: 0,
            inner_iterations: 0,
            max_violation: 0.0,
            final_merit: 0.0,
            violations: Default::default(),
        },
    }
}

#[test]
#[ignore]
fn profile_solved() {
    let params = SrbdParams::aliengo_like();
    let problem = build_problem(
        &params,
        &TerrainModel::Flat,
        &GaitSchedule::trot(4.0, 0.6, 0.4, 0.3),
        PlanarPose::new(0.0, 0.0, 0.0),
        PlanarPose::new(1.0, 0.0, 0.0),
        BuildOptions::default(),
    )
    .unwrap();
    let config = armp_core::srbd::SolverConfig::default();
    let sol = match armp_core::srbd::solve(&problem, &config) {
        Ok(s) => s,
        Err(armp_core::srbd::SolveError::MaxIterations { best, .. })
        | Err(armp_core::srbd::SolveError::Diverged { best, .. }) => *best,
    };
    for k in 0..=400 {
        let t = (4.0 * k as f64 / 400.0 - 1e-9).max(0.0);
        let (lin, ang) = dynamics_residual(&sol, &params, t).unwrap();
        if lin.amax() > 2.0 || ang.amax() > 2.0 {
            println!(
                "t {:6.3} lin ({:8.2} {:8.2} {:8.2}) ang ({:7.2} {:7.2} {:7.2})",
                t, lin.x, lin.y, lin.z, ang.x, ang.y, ang.z
            );
        }
    }
    for k in 0..=30 {
        let t = 1.48 + 0.0025 * k as f64;
        let rdd = sol.root[2].eval(t).unwrap().2;
        let demand = params.mass * (rdd + params.gravity);
        let f: Vec<f64> = (0..4).map(|j| sol.forces[j][2].eval(t).unwrap().0).collect();
        let tot: f64 = f.iter().sum();
        println!("t {t:.4} demand {demand:8.2} total {tot:8.2} f ({:7.2} {:7.2} {:7.2} {:7.2})", f[0], f[1], f[2], f[3]);
    }
    panic!("done");
}

#[test]
#[ignore]
fn profile_x0() {
    let params = SrbdParams::aliengo_like();
    let problem = build_problem(
        &params,
        &TerrainModel::Flat,
        &GaitSchedule::trot(4.0, 0.6, 0.4, 0.3),
        PlanarPose::new(0.0, 0.0, 0.0),
        PlanarPose::new(1.0, 0.0, 0.0),
        BuildOptions::default(),
    )
    .unwrap();
    let grid = ConstraintGrid::new(&problem, 1);
    let rep = grid.violations(&problem, &problem.x0);
    println!("x0 violations: {:?}", rep);
    let sol = assemble(&problem, &problem.x0);
    for k in 0..=200 {
        let t = 4.0 * k as f64 / 200.0 - 1e-9;
        let t = t.max(0.0);
        let (lin, ang) = dynamics_residual(&sol, &params, t).unwrap();
        if lin.amax() > 20.0 || ang.amax() > 5.0 {
            println!(
                "t {:6.3} lin ({:8.2} {:8.2} {:8.2}) ang ({:7.2} {:7.2} {:7.2})",
                t, lin.x, lin.y, lin.z, ang.x, ang.y, ang.z
            );
        }
    }
    panic!("done");
}
