use hiv_dynamics::{
    classified_equilibria, integrate, solve, Method, ModelParams, State, SweepConfig, TimeGrid,
};

fn main() -> Result<(), hiv_dynamics::Error> {
    let params = ModelParams::reference();

    // Steady states with stability verdicts.
    for report in classified_equilibria(&params)? {
        println!(
            "{}: exists={} {}",
            report.label, report.exists, report.stability
        );
    }

    // 500-day uncontrolled run.
    let grid = TimeGrid::from_horizon(500.0, 50_000)?;
    let s0 = State::new(5.0, 1.0, 1.0, 2.0, 1.0);
    let (trajectory, monitor) = integrate(&params, &s0, &grid, None, Method::Rk4)?;
    assert!(monitor.min_component >= -1e-9);
    println!("v(tf) = {}", trajectory.final_state().v);

    // Optimal two-drug schedule.
    let grid = TimeGrid::from_horizon(100.0, 10_000)?;
    let solution = solve(&params, &s0, &grid, &SweepConfig::default(), Method::Rk4)?;
    println!(
        "J = {}, converged in {} sweeps",
        solution.objective, solution.iterations
    );
    Ok(())
}
