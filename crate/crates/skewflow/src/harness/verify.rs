//! The built-in verification matrix behind `skewflow verify`: every
//! identity and bound, across all mirror-map kinds and schemes, at small K.
//! Deterministic — repeated invocations print byte-identical tables.

use crate::diagnostics::{
    bound_alt_smooth, bound_bwd_tot_reg, bound_cts_tot_reg, bound_fwd_tot_reg, certified_constants,
    commutator_dual, energy_state, modified_energy_state, third_order_constant_logsumexp,
    total_regret, verify_identities, BoundReport,
};
use crate::dynamics::{run, step_backward_with, step_forward, Scheme, SchemeSpec};
use crate::error::Result;
use crate::game_core::{BilinearGame, Mat};
use crate::mirror_maps::MirrorMap;

/// Hooks for negative-control tests: a corrupted alternating step must make
/// the lemma_alt check fail and be named in the output.
#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    pub corrupt_alternating_step: bool,
}

pub struct VerifyOutcome {
    pub reports: Vec<BoundReport>,
    pub all_passed: bool,
}

impl VerifyOutcome {
    pub fn failing_names(&self) -> Vec<&str> {
        self.reports
            .iter()
            .filter(|r| !r.satisfied)
            .map(|r| r.bound_name.as_str())
            .collect()
    }

    /// Fixed-width pass/fail table, one row per check.
    pub fn table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<42} {:>13} {:>13}  {}\n",
            "check", "bound", "empirical", "status"
        ));
        for r in &self.reports {
            out.push_str(&format!(
                "{:<42} {:>13.4e} {:>13.4e}  {}\n",
                r.bound_name,
                r.bound_value,
                r.empirical_value,
                if r.satisfied { "PASS" } else { "FAIL" }
            ));
        }
        let failed = self.reports.iter().filter(|r| !r.satisfied).count();
        out.push_str(&format!(
            "{} checks, {} passed, {} failed\n",
            self.reports.len(),
            self.reports.len() - failed,
            failed
        ));
        out
    }
}

struct Rng(u64);
impl Rng {
    fn next_u64(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0
    }
    fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
    fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

fn scalar_game(map: fn() -> MirrorMap) -> Result<BilinearGame> {
    BilinearGame::new(Mat::scalar(1.0), map(), map())
}

fn entropy_mp() -> Result<BilinearGame> {
    BilinearGame::new(
        Mat::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]])?,
        MirrorMap::entropy(2),
        MirrorMap::entropy(2),
    )
}

/// Run the whole matrix. ≥ 12 checks; all parameters fixed, so the outcome
/// is identical run to run.
pub fn run_verification_matrix(opts: &VerifyOptions) -> Result<VerifyOutcome> {
    let mut reports: Vec<BoundReport> = Vec::new();

    // Lemma Alt + regret identities, per mirror-map kind; cubic runs from a
    // small start where the alternating orbit stays bounded.
    type AltCase = (&'static str, BilinearGame, Vec<f64>, Vec<f64>, f64, usize);
    let alternating_cases: Vec<AltCase> = vec![
        {
            let game = entropy_mp()?;
            let z0 = game.lift_state(&[0.3, 0.7], &[0.6, 0.4])?;
            ("entropy", game, z0.x.clone(), z0.y, 0.3, 300)
        },
        (
            "logcosh",
            scalar_game(MirrorMap::logcosh)?,
            vec![3.0],
            vec![3.0],
            0.1,
            300,
        ),
        (
            "cubic",
            scalar_game(MirrorMap::cubic)?,
            vec![0.5],
            vec![0.5],
            0.1,
            300,
        ),
        (
            "mixed",
            BilinearGame::new(
                Mat::scalar(1.0),
                MirrorMap::euclidean(1),
                MirrorMap::logcosh(),
            )?,
            vec![3.0],
            vec![3.0],
            0.1,
            300,
        ),
        (
            "quadratic",
            scalar_game(|| MirrorMap::euclidean(1))?,
            vec![3.0],
            vec![3.0],
            0.1,
            300,
        ),
    ];
    for (tag, game, x0, y0, eta, steps) in alternating_cases {
        let z0 = game.state_from_duals(x0, y0)?;
        let mut traj = run(
            &game,
            &SchemeSpec::new(Scheme::Alternating, eta),
            &z0,
            steps,
        )?;
        if opts.corrupt_alternating_step && tag == "entropy" {
            let mid = traj.states.len() / 2;
            traj.states[mid].x[0] += 1e-3;
        }
        for report in verify_identities(&game, &traj)? {
            reports.push(BoundReport {
                bound_name: format!("{}[{tag}]", report.bound_name),
                ..report
            });
        }
    }

    // Forward grows / backward shrinks the energy, on entropy and quadratic.
    for (tag, game, x0, y0) in [
        (
            "entropy",
            entropy_mp()?,
            vec![-1.2, -0.36],
            vec![-0.51, -0.92],
        ),
        (
            "quadratic",
            scalar_game(|| MirrorMap::euclidean(1))?,
            vec![3.0],
            vec![3.0],
        ),
    ] {
        let z0 = game.state_from_duals(x0, y0)?;
        let fwd = run(&game, &SchemeSpec::new(Scheme::Forward, 0.1), &z0, 200)?;
        for report in verify_identities(&game, &fwd)? {
            reports.push(BoundReport {
                bound_name: format!("{}[{tag}]", report.bound_name),
                ..report
            });
        }
        let bwd = run(&game, &SchemeSpec::new(Scheme::Backward, 0.1), &z0, 200)?;
        for report in verify_identities(&game, &bwd)? {
            reports.push(BoundReport {
                bound_name: format!("{}[{tag}]", report.bound_name),
                ..report
            });
        }
    }

    // Exact per-step growth factor on the scalar quadratic forward method.
    {
        let game = scalar_game(|| MirrorMap::euclidean(1))?;
        let eta = 0.1;
        let factor = 1.0 + eta * eta;
        let mut z = game.state_from_duals(vec![3.0], vec![3.0])?;
        let mut h = energy_state(&game, &z)?;
        let mut worst = 0.0f64;
        for _ in 0..200 {
            z = step_forward(&game, &z, eta)?;
            let next = energy_state(&game, &z)?;
            worst = worst.max((next / h - factor).abs());
            h = next;
        }
        reports.push(BoundReport::new("ex_quad_growth_factor", 1e-12, worst));
    }

    // Backward with negated step inverts forward on quadratics.
    {
        let game = scalar_game(|| MirrorMap::euclidean(1))?;
        let z0 = game.state_from_duals(vec![3.0], vec![3.0])?;
        let fwd = step_forward(&game, &z0, 0.1)?;
        let back = step_backward_with(&game, &fwd, -0.1, 1e-14, 500)?;
        let dev = (back.x[0] - z0.x[0]).abs().max((back.y[0] - z0.y[0]).abs());
        reports.push(BoundReport::new("bwd_fwd_adjoint", 1e-9, dev));
    }

    // Continuous reference conserves H on each kind (short horizon). The
    // cubic dual has a discontinuous third derivative at the axes, so RK4
    // needs a finer step there to hold the same tolerance across crossings.
    for (tag, game, x0, y0, h, steps) in [
        (
            "quadratic",
            scalar_game(|| MirrorMap::euclidean(1))?,
            vec![3.0],
            vec![3.0],
            1e-3,
            500,
        ),
        (
            "entropy",
            entropy_mp()?,
            vec![-1.2, -0.36],
            vec![-0.51, -0.92],
            1e-3,
            500,
        ),
        (
            "logcosh",
            scalar_game(MirrorMap::logcosh)?,
            vec![3.0],
            vec![3.0],
            1e-3,
            500,
        ),
        (
            "cubic",
            scalar_game(MirrorMap::cubic)?,
            vec![3.0],
            vec![3.0],
            1e-4,
            5000,
        ),
    ] {
        let z0 = game.state_from_duals(x0, y0)?;
        let traj = run(
            &game,
            &SchemeSpec::new(Scheme::ContinuousRef, h),
            &z0,
            steps,
        )?;
        for report in verify_identities(&game, &traj)? {
            reports.push(BoundReport {
                bound_name: format!("{}[{tag}]", report.bound_name),
                ..report
            });
        }
    }

    // Smoothness bound on the modified energy for the alternating method.
    {
        let game = entropy_mp()?;
        let z0 = game.lift_state(&[0.3, 0.7], &[0.6, 0.4])?;
        let eta = 0.3;
        let steps = 2000;
        let traj = run(
            &game,
            &SchemeSpec::new(Scheme::Alternating, eta),
            &z0,
            steps,
        )?;
        let consts = certified_constants(&game);
        let h0 = modified_energy_state(&game, traj.initial(), eta)?;
        let mut worst_ratio = 0.0f64;
        for (k, st) in traj.states.iter().enumerate().skip(1) {
            let dev = (modified_energy_state(&game, st, eta)? - h0).abs();
            let bound = bound_alt_smooth(&game, eta, k, consts.l1.unwrap(), consts.l3.unwrap());
            worst_ratio = worst_ratio.max(dev / bound);
        }
        reports.push(BoundReport::new("thm_alt_smooth_bound", 1.0, worst_ratio));
    }

    // Total-regret bounds: forward, backward, continuous (matching pennies).
    {
        let game = entropy_mp()?;
        let p0 = [0.3, 0.7];
        let q0 = [0.6, 0.4];
        let m = game
            .map_p()
            .divergence_radius(&p0)?
            .unwrap()
            .max(game.map_q().divergence_radius(&q0)?.unwrap());
        let z0 = game.lift_state(&p0, &q0)?;
        let consts = certified_constants(&game);

        let eta = 0.1;
        let k = 500;
        let fwd = run(&game, &SchemeSpec::new(Scheme::Forward, eta), &z0, k)?;
        let rk = total_regret(&game, &fwd, Scheme::Forward)?;
        let bound = bound_fwd_tot_reg(
            m,
            game.alpha_max(),
            consts.l1.unwrap(),
            consts.l2.unwrap(),
            eta,
            k,
        );
        reports.push(BoundReport::new("thm_fwd_tot_reg_bound", bound, rk));

        let eta = 0.5;
        let bwd = run(&game, &SchemeSpec::new(Scheme::Backward, eta), &z0, k)?;
        let rk = total_regret(&game, &bwd, Scheme::Backward)?;
        reports.push(BoundReport::new(
            "thm_bwd_tot_reg_bound",
            bound_bwd_tot_reg(m, eta),
            rk,
        ));

        let cts = run(
            &game,
            &SchemeSpec::new(Scheme::ContinuousRef, 1e-3),
            &z0,
            5000,
        )?;
        let rt = total_regret(&game, &cts, Scheme::ContinuousRef)?;
        reports.push(BoundReport::new(
            "thm_cts_tot_reg_bound",
            bound_cts_tot_reg(m) + 1e-4,
            rt,
        ));
    }

    // Third-order commutator bound for logsumexp, sampled.
    {
        let ent = MirrorMap::entropy(2);
        let m3 = third_order_constant_logsumexp(2);
        let mut rng = Rng(0x5eed5);
        let mut worst_excess = f64::NEG_INFINITY;
        let mut largest = 0.0f64;
        for _ in 0..2000 {
            let x = [rng.range(-5.0, 5.0), rng.range(-5.0, 5.0)];
            let x2 = [rng.range(-5.0, 5.0), rng.range(-5.0, 5.0)];
            let c = commutator_dual(&ent, &x2, &x)?;
            let dist = (x2[0] - x[0]).abs().max((x2[1] - x[1]).abs());
            worst_excess = worst_excess.max(c.abs() - m3 / 12.0 * dist.powi(3));
            largest = largest.max(c.abs());
        }
        reports.push(BoundReport::new(
            "lemma_third_order_commutator",
            0.0,
            worst_excess,
        ));
        // non-quadratic functions must have a non-vanishing commutator
        reports.push(BoundReport::new("lemma_vanishing_probe", largest, 1e-3));
    }

    // Gradient maps really are mutual inverses (sampled per kind).
    {
        let mut rng = Rng(0x1d);
        let maps = [
            MirrorMap::entropy(2),
            MirrorMap::euclidean(2),
            MirrorMap::logcosh(),
            MirrorMap::cubic(),
        ];
        let mut worst = 0.0f64;
        for map in &maps {
            for _ in 0..200 {
                let p: Vec<f64> = match map.kind() {
                    crate::mirror_maps::MapKind::NegativeEntropySimplex => {
                        let a = 0.05 + 0.9 * rng.next_f64();
                        vec![a, 1.0 - a]
                    }
                    crate::mirror_maps::MapKind::LogCosh1D => vec![rng.range(-0.99, 0.99)],
                    _ => (0..map.dim()).map(|_| rng.range(-4.0, 4.0)).collect(),
                };
                let back = map.dual_gradient(&map.primal_gradient(&p)?)?;
                for (a, b) in back.iter().zip(&p) {
                    worst = worst.max((a - b).abs());
                }
            }
        }
        reports.push(BoundReport::new("inverse_gradient_pair", 1e-10, worst));
    }

    let all_passed = reports.iter().all(|r| r.satisfied);
    Ok(VerifyOutcome {
        reports,
        all_passed,
    })
}
