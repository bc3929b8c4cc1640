//! Cumulative regret of the two alternating players, summed term by term,
//! equals the closed-form energy-difference expression
//! (D_H(z0,z) - D_H(zK,z) + H_eta(zK) - H_eta(z0)) / eta for any reference.
//!
//! ```bash
//! cargo run --example regret_identity
//! ```

use skewflow::diagnostics::{regret_alternating, regret_energy_formula, total_regret};
use skewflow::dynamics::{run, Scheme, SchemeSpec};
use skewflow::game_core::{BilinearGame, Mat};
use skewflow::mirror_maps::MirrorMap;

fn main() -> skewflow::Result<()> {
    let game = BilinearGame::new(
        Mat::from_rows(&[vec![2.0, 0.0], vec![0.0, 1.0]])?,
        MirrorMap::entropy(2),
        MirrorMap::entropy(2),
    )?;
    let z0 = game.lift_state(&[0.3, 0.7], &[0.6, 0.4])?;
    let traj = run(&game, &SchemeSpec::new(Scheme::Alternating, 0.2), &z0, 1000)?;

    println!(
        "{:>22} {:>16} {:>16} {:>10}",
        "reference (p, q)", "direct sum", "energy formula", "residual"
    );
    for (rp, rq) in [
        (vec![0.5, 0.5], vec![0.5, 0.5]),
        (vec![1.0 / 3.0, 2.0 / 3.0], vec![1.0 / 3.0, 2.0 / 3.0]), // the Nash pair
        (vec![0.9, 0.1], vec![0.2, 0.8]),
    ] {
        let (r1, r2) = regret_alternating(&game, &traj, &rp, &rq)?;
        let formula = regret_energy_formula(&game, &traj, &rp, &rq)?;
        println!(
            "({:.3}, {:.3})({:.3}, {:.3}) {:>16.9} {:>16.9} {:>10.2e}",
            rp[0],
            rp[1],
            rq[0],
            rq[1],
            r1 + r2,
            formula,
            ((r1 + r2) - formula).abs()
        );
    }

    let rk = total_regret(&game, &traj, Scheme::Alternating)?;
    println!("\nbest-in-hindsight total regret over vertex references: R_K = {rk:.6}");
    Ok(())
}
