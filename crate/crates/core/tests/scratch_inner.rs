// temporary diagnostic
use armp_core::gait::GaitSchedule;
use armp_core::srbd::{build_problem, solve, BuildOptions, PlanarPose, SolverConfig, SrbdParams};
use armp_core::terrain::TerrainModel;

#[test]
#[ignore]
fn inner_behavior() {
    let problem = build_problem(
        &SrbdParams::aliengo_like(),
        &TerrainModel::Flat,
        &GaitSchedule::trot(4.0, 0.6, 0.4, 0.3),
        PlanarPose::new(0.0, 0.0, 0.0),
        PlanarPose::new(1.0, 0.0, 0.0),
        BuildOptions {
            root_knot_spacing: 0.25,
            force_node_spacing: 0.04,
            ..BuildOptions::default()
        },
    )
    .unwrap();
    let config = SolverConfig {
        initial_penalty: 1e5,
        max_outer: 12,
        max_inner: 550,
        ..SolverConfig::default()
    };
    let t0 = std::time::Instant::now();
    let r = solve(&problem, &config);
    match &r {
        Ok(sol) => eprintln!(
            "CONVERGED viol {:.3e} outers {} inners {} in {:?}",
            sol.report.max_violation,
            sol.report.outer_iterations,
            sol.report.inner_iterations,
            t0.elapsed()
        ),
        Err(e) => eprintln!("FAILED {e} in {:?}", t0.elapsed()),
    }
    if let Err(armp_core::srbd::SolveError::MaxIterations { best, .. })
    | Err(armp_core::srbd::SolveError::Diverged { best, .. }) = &r
    {
        let mut worst: f64 = 0.0;
        for k in 0..16 {
            let tk = 0.25 * k as f64;
            for ch in 0..3 {
                let l = best.root[ch].eval(tk).unwrap().2;
                let rr = best.root[ch].eval(tk + 1e-9).unwrap().2;
                worst = worst.max((l - rr).abs());
            }
        }
        eprintln!("max root accel jump {worst:.3e} m/s^2");
    }
    panic!("done");
}
