//! Decay of the duality gap of the average iterates on a 2x2 entropy game:
//! roughly K^{-2/3} for alternating with eta ~ K^{-1/3}, K^{-1/2} for the
//! forward method with eta ~ K^{-1/2}, and K^{-1} for backward at fixed eta.
//!
//! A faster variant of the bundled sweep presets (fewer horizons):
//!
//! ```bash
//! cargo run --example average_iterate_rates
//! ```

use skewflow::diagnostics::duality_gap_of_averages;
use skewflow::dynamics::{run, Scheme, SchemeSpec};
use skewflow::game_core::{BilinearGame, Mat};
use skewflow::harness::{log_log_slope, EtaRule};
use skewflow::mirror_maps::MirrorMap;

fn main() -> skewflow::Result<()> {
    let game = BilinearGame::new(
        Mat::from_rows(&[vec![2.0, 0.0], vec![0.0, 1.0]])?,
        MirrorMap::entropy(2),
        MirrorMap::entropy(2),
    )?;
    let z0 = game.lift_state(&[0.5, 0.5], &[0.5, 0.5])?;
    // the eta rules read the certified constants off the domain bounds
    let m_p = game.map_p().divergence_radius(&z0.p)?;
    let m_q = game.map_q().divergence_radius(&z0.q)?;
    let game = game.with_domain_bounds(m_p, m_q);

    let ks: Vec<usize> = (0..8).map(|i| 128usize << i).collect();
    for (label, scheme, rule, target) in [
        (
            "alternating",
            Scheme::Alternating,
            EtaRule::InvCubeRoot,
            -2.0 / 3.0,
        ),
        ("forward", Scheme::Forward, EtaRule::InvSqrt, -0.5),
        ("backward", Scheme::Backward, EtaRule::Fixed(0.5), -1.0),
    ] {
        let mut pts = Vec::new();
        let mut note = String::new();
        print!("{label:<12}");
        for &k in &ks {
            let (eta, n) = rule.eta_for(&game, k);
            note = n;
            let traj = run(&game, &SchemeSpec::new(scheme, eta), &z0, k)?;
            let dg = duality_gap_of_averages(&game, &traj, scheme)?;
            print!(" {dg:9.2e}");
            pts.push(((k as f64).ln(), dg.ln()));
        }
        println!(
            "\n{:<12} slope {:+.3} (theory {target:+.3}); {note}",
            "",
            log_log_slope(&pts)
        );
    }
    Ok(())
}
