//! The RK4 reference integrator for the skew-gradient flow: energy is
//! conserved to integrator precision, and the continuous-time total regret
//! stays below 2M for all horizons.
//!
//! ```bash
//! cargo run --example continuous_reference
//! ```

use skewflow::diagnostics::{bound_cts_tot_reg, energy_state, total_regret};
use skewflow::dynamics::{run, Scheme, SchemeSpec};
use skewflow::game_core::{BilinearGame, Mat};
use skewflow::mirror_maps::MirrorMap;

fn main() -> skewflow::Result<()> {
    let game = BilinearGame::new(
        Mat::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]])?,
        MirrorMap::entropy(2),
        MirrorMap::entropy(2),
    )?;
    let p0 = [0.3, 0.7];
    let q0 = [0.6, 0.4];
    let z0 = game.lift_state(&p0, &q0)?;
    let m = game
        .map_p()
        .divergence_radius(&p0)?
        .unwrap()
        .max(game.map_q().divergence_radius(&q0)?.unwrap());

    let h = 1e-3;
    println!("entropy matching pennies, natural-gradient flow via RK4, h = {h}");
    println!(
        "{:>6} {:>14} {:>14} {:>10}",
        "T", "energy drift", "regret R_T", "2M"
    );
    for t in [5.0f64, 20.0, 50.0] {
        let steps = (t / h).round() as usize;
        let traj = run(
            &game,
            &SchemeSpec::new(Scheme::ContinuousRef, h),
            &z0,
            steps,
        )?;
        let h0 = energy_state(&game, traj.initial())?;
        let drift = traj
            .states
            .iter()
            .map(|st| (energy_state(&game, st).unwrap() - h0).abs())
            .fold(0.0, f64::max);
        let rt = total_regret(&game, &traj, Scheme::ContinuousRef)?;
        println!(
            "{:>6} {:>14.3e} {:>14.6} {:>10.6}",
            t,
            drift,
            rt,
            bound_cts_tot_reg(m)
        );
    }
    Ok(())
}
