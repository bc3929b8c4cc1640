//! Long-horizon probe of the bounded-modified-energy conjecture for the
//! alternating multiplicative-weights setting (log-cosh duals, identity
//! payoff): does sup_k |H_eta(z_k)| stay bounded for 100k iterations?
//!
//! Evidence, not proof — an exceeded cap is reported, never fatal.
//!
//! ```bash
//! cargo run --release --example conjecture_probe
//! ```

use skewflow::diagnostics::modified_energy_state;
use skewflow::dynamics::{run, Scheme, SchemeSpec};
use skewflow::game_core::{BilinearGame, Mat};
use skewflow::mirror_maps::MirrorMap;

fn main() -> skewflow::Result<()> {
    let game = BilinearGame::new(Mat::scalar(1.0), MirrorMap::logcosh(), MirrorMap::logcosh())?;
    let z0 = game.state_from_duals(vec![3.0], vec![3.0])?;
    let steps = 100_000;

    println!("alternating log-cosh runs from z0 = (3, 3), K = {steps}");
    println!(
        "{:>5} {:>12} {:>12} {:>12} {:>10}",
        "eta", "|H_eta(z0)|", "sup|H_eta|", "sup|z|", "verdict"
    );
    for eta in [0.1, 1.0, 3.0] {
        let traj = run(
            &game,
            &SchemeSpec::new(Scheme::Alternating, eta),
            &z0,
            steps,
        )?;
        let h0 = modified_energy_state(&game, traj.initial(), eta)?.abs();
        let mut sup_h = 0.0f64;
        let mut sup_z = 0.0f64;
        for st in &traj.states {
            sup_h = sup_h.max(modified_energy_state(&game, st, eta)?.abs());
            sup_z = sup_z.max(st.dual_sup_norm());
        }
        let cap = 10.0 * h0 + 10.0;
        let verdict = if sup_h <= cap { "bounded" } else { "EXCEEDED" };
        println!("{eta:>5} {h0:>12.6} {sup_h:>12.6} {sup_z:>12.4} {verdict:>10}");
    }
    Ok(())
}
