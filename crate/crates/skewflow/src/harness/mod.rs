//! Config-driven experiment harness: runs, step-size/horizon sweeps, CSV
//! and SVG artifacts, and the built-in verification matrix.
//!
//! Configs are plain JSON files. Every figure preset ships in the crate's
//! `presets/` directory and is runnable by name (`skewflow run fig_quad1`);
//! editing the text file is the supported way to change an experiment.
//! `SKEWFLOW_OUT_DIR` redirects relative output paths.

pub mod csv;
pub mod svg;
pub mod verify;

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::diagnostics::{certified_constants, trajectory_rows, DiagnosticsRow};
use crate::dynamics::{run, Scheme, SchemeSpec, Trajectory};
use crate::error::{Error, Result};
use crate::game_core::{payoff_preset, BilinearGame, JointState, Mat};
use crate::mirror_maps::{simplex_clamp_events, MapKind, MirrorMap};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameConfig {
    #[serde(default)]
    pub preset: Option<String>,
    #[serde(default)]
    pub payoff: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapConfig {
    pub kind: String,
    #[serde(default)]
    pub dim: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialConfig {
    #[serde(default)]
    pub p0: Option<Vec<f64>>,
    #[serde(default)]
    pub q0: Option<Vec<f64>>,
    #[serde(default)]
    pub x0: Option<Vec<f64>>,
    #[serde(default)]
    pub y0: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub trajectory_csv: Option<String>,
    #[serde(default)]
    pub diagnostics_csv: Option<String>,
    #[serde(default)]
    pub svg_plot: Option<String>,
}

/// One experiment (or sweep) described as data. `eta` and `eta_rule` are
/// mutually exclusive; `steps` drives `run`, `ks` drives `sweep`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    pub game: GameConfig,
    pub map_p: MapConfig,
    pub map_q: MapConfig,
    pub initial: InitialConfig,
    pub scheme: String,
    #[serde(default)]
    pub eta: Option<f64>,
    #[serde(default)]
    pub eta_rule: Option<String>,
    #[serde(default)]
    pub steps: Option<usize>,
    #[serde(default)]
    pub ks: Option<Vec<usize>>,
    #[serde(default)]
    pub domain_bound: Option<f64>,
    #[serde(default)]
    pub backward_tol: Option<f64>,
    #[serde(default)]
    pub backward_max_iters: Option<usize>,
    #[serde(default)]
    pub outputs: Option<OutputSpec>,
    #[serde(default)]
    pub summary_csv: Option<String>,
}

pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    let cfg: ExperimentConfig = serde_json::from_str(&text)
        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    cfg.validate()?;
    Ok(cfg)
}

impl ExperimentConfig {
    fn validate(&self) -> Result<()> {
        match (self.eta, &self.eta_rule) {
            (Some(eta), None) => {
                if eta <= 0.0 {
                    return Err(Error::Config("eta must be positive".into()));
                }
            }
            (None, Some(rule)) => {
                EtaRule::parse(rule)?;
            }
            (Some(_), Some(_)) => {
                return Err(Error::Config(
                    "eta and eta_rule are mutually exclusive".into(),
                ))
            }
            (None, None) => return Err(Error::Config("one of eta / eta_rule is required".into())),
        }
        if let Some(steps) = self.steps {
            if steps < 1 {
                return Err(Error::Config("steps must be at least 1".into()));
            }
        }
        if let Some(ks) = &self.ks {
            if ks.is_empty() || ks.iter().any(|&k| k < 1) {
                return Err(Error::Config(
                    "ks must be a nonempty list of positive horizons".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Step-size selection: fixed, or a horizon rule η = c·K^{-1/3} / c·K^{-1/2}
/// with c taken from the certified constants when available.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EtaRule {
    Fixed(f64),
    InvCubeRoot,
    InvSqrt,
}

impl EtaRule {
    pub fn parse(key: &str) -> Result<Self> {
        match key {
            "K^{-1/3}" => Ok(EtaRule::InvCubeRoot),
            "K^{-1/2}" => Ok(EtaRule::InvSqrt),
            other => Err(Error::Config(format!(
                "unknown eta rule {other:?} (expected \"K^{{-1/3}}\" or \"K^{{-1/2}}\")"
            ))),
        }
    }

    /// The step size for horizon K, plus a note describing the constant it
    /// used (surfaced in sweep summaries, as configs expect).
    pub fn eta_for(&self, game: &BilinearGame, k: usize) -> (f64, String) {
        match self {
            EtaRule::Fixed(eta) => (*eta, format!("fixed eta = {eta}")),
            EtaRule::InvCubeRoot => {
                let (c, note) = match game.divergence_bound() {
                    Some(m) => {
                        // one constant must serve as divergence radius, norm
                        // radius and smoothness constant; take the max of the
                        // first two (norm radius of a simplex point is 1)
                        let m = m.max(1.0);
                        let a = game.alpha_max();
                        let c = (3.0 * m / (4.0 * a.powi(3) * m.powi(4))).cbrt();
                        (
                            c,
                            format!("c = {c:.4} certified (M = {m:.4}, alpha_max = {a:.4})"),
                        )
                    }
                    None => (1.0, "c = 1 (constants not certified)".to_string()),
                };
                (
                    c * (k as f64).powf(-1.0 / 3.0),
                    format!("eta = c*K^(-1/3), {note}"),
                )
            }
            EtaRule::InvSqrt => {
                let consts = certified_constants(game);
                let (c, note) = match (game.divergence_bound(), consts.l1, consts.l2) {
                    (Some(m), Some(l1), Some(l2)) => {
                        let m = m.max(1.0);
                        let c = 2.0 * m.sqrt() / (game.alpha_max() * l1 * l2.sqrt());
                        (
                            c,
                            format!("c = {c:.4} certified (M = {m:.4}, L1 = {l1}, L2 = {l2})"),
                        )
                    }
                    _ => (1.0, "c = 1 (constants not certified)".to_string()),
                };
                (
                    c * (k as f64).powf(-0.5),
                    format!("eta = c*K^(-1/2), {note}"),
                )
            }
        }
    }
}

/// A fully assembled experiment: game with domain bounds attached, lifted
/// initial state, scheme, and the step-size rule.
pub struct Experiment {
    pub config: ExperimentConfig,
    pub game: BilinearGame,
    pub initial: JointState,
    pub scheme: Scheme,
    pub rule: EtaRule,
}

pub fn build_experiment(config: &ExperimentConfig) -> Result<Experiment> {
    build_experiment_inner(config).map_err(|e| match e {
        Error::Config(_) => e,
        other => Error::Config(other.to_string()),
    })
}

fn build_experiment_inner(config: &ExperimentConfig) -> Result<Experiment> {
    let payoff_rows = match (&config.game.preset, &config.game.payoff) {
        (Some(name), None) => payoff_preset(name)
            .ok_or_else(|| Error::Config(format!("unknown payoff preset {name:?}")))?,
        (None, Some(rows)) => rows.clone(),
        _ => {
            return Err(Error::Config(
                "game needs exactly one of preset / payoff".into(),
            ))
        }
    };
    let payoff = Mat::from_rows(&payoff_rows)?;

    let build_map = |mc: &MapConfig, dim_default: usize| -> Result<MirrorMap> {
        let kind = MapKind::from_key(&mc.kind)?;
        MirrorMap::from_kind(kind, mc.dim.unwrap_or(dim_default))
    };
    let map_p = build_map(&config.map_p, payoff.rows())?;
    let map_q = build_map(&config.map_q, payoff.cols())?;
    let game = BilinearGame::new(payoff, map_p, map_q)?;

    let initial = match (
        &config.initial.p0,
        &config.initial.q0,
        &config.initial.x0,
        &config.initial.y0,
    ) {
        (Some(p0), Some(q0), None, None) => game.lift_state(p0, q0)?,
        (None, None, Some(x0), Some(y0)) => game.state_from_duals(x0.clone(), y0.clone())?,
        _ => {
            return Err(Error::Config(
                "initial needs either p0+q0 (primal) or x0+y0 (dual)".into(),
            ))
        }
    };

    // divergence bound M: config override, else default from the initial point
    let m_p = match config.domain_bound {
        Some(m) if game.map_p().is_bounded_domain() => Some(m),
        Some(_) | None => game.map_p().divergence_radius(&initial.p)?,
    };
    let m_q = match config.domain_bound {
        Some(m) if game.map_q().is_bounded_domain() => Some(m),
        Some(_) | None => game.map_q().divergence_radius(&initial.q)?,
    };
    let game = game.with_domain_bounds(m_p, m_q);

    let scheme = Scheme::from_key(&config.scheme)?;
    let rule = match (config.eta, &config.eta_rule) {
        (Some(eta), None) => EtaRule::Fixed(eta),
        (None, Some(rule)) => EtaRule::parse(rule)?,
        _ => unreachable!("validated at load"),
    };

    Ok(Experiment {
        config: config.clone(),
        game,
        initial,
        scheme,
        rule,
    })
}

impl Experiment {
    fn spec_for(&self, eta: f64) -> SchemeSpec {
        let spec = SchemeSpec::new(self.scheme, eta);
        let tol = self.config.backward_tol.unwrap_or(spec.backward_tol);
        let iters = self
            .config
            .backward_max_iters
            .unwrap_or(spec.backward_max_iters);
        spec.with_backward_solver(tol, iters)
    }
}

/// Everything `run` produces: the trajectory, its diagnostics rows, the
/// one-line summary numbers, and the artifact paths written.
pub struct RunOutput {
    pub name: String,
    pub eta: f64,
    pub eta_note: String,
    pub trajectory: Trajectory,
    pub rows: Vec<DiagnosticsRow>,
    pub clamp_events: u64,
    pub written: Vec<PathBuf>,
}

impl RunOutput {
    pub fn final_row(&self) -> &DiagnosticsRow {
        self.rows.last().expect("rows are never empty")
    }

    /// The one-line run summary: final energy, final modified energy, total
    /// regret, duality gap of averages where defined.
    pub fn summary_line(&self) -> String {
        let last = self.final_row();
        let dg = match last.duality_gap_avg {
            Some(v) => format!("{v:.6e}"),
            None => "n/a".to_string(),
        };
        let clamp = if self.clamp_events > 0 {
            format!(" clamp_events={}", self.clamp_events)
        } else {
            String::new()
        };
        format!(
            "{}: K={} eta={} H={:.9e} H_eta={:.9e} R_K={:.6e} dg_avg={}{}",
            self.name,
            last.step,
            self.eta,
            last.energy,
            last.modified_energy,
            last.total_regret,
            dg,
            clamp
        )
    }
}

fn resolve_out_path(rel: &str) -> PathBuf {
    let p = PathBuf::from(rel);
    if p.is_absolute() {
        return p;
    }
    match std::env::var_os("SKEWFLOW_OUT_DIR") {
        Some(dir) => PathBuf::from(dir).join(p),
        None => p,
    }
}

/// Execute a run config end to end: dynamics, diagnostics, declared outputs.
pub fn run_experiment(config: &ExperimentConfig) -> Result<RunOutput> {
    let exp = build_experiment(config)?;
    let steps = exp
        .config
        .steps
        .ok_or_else(|| Error::Config("run config needs a steps count".into()))?;
    let (eta, eta_note) = exp.rule.eta_for(&exp.game, steps);

    let clamps_before = simplex_clamp_events();
    let traj = run(&exp.game, &exp.spec_for(eta), &exp.initial, steps)?;
    let rows = trajectory_rows(&exp.game, &traj)?;
    let clamp_events = simplex_clamp_events() - clamps_before;

    let mut written = Vec::new();
    let outputs = exp.config.outputs.clone().unwrap_or_default();
    // the unified schema goes to whichever CSV outputs are declared
    let mut csv_paths: Vec<PathBuf> = [&outputs.trajectory_csv, &outputs.diagnostics_csv]
        .iter()
        .filter_map(|o| o.as_deref().map(resolve_out_path))
        .collect();
    if let Some(svg_rel) = &outputs.svg_plot {
        // the plotter reads a CSV; make sure one exists next to the figure
        if csv_paths.is_empty() {
            let svg_path = resolve_out_path(svg_rel);
            csv_paths.push(svg_path.with_extension("csv"));
        }
    }
    for path in &csv_paths {
        csv::write(&exp.game, &traj, &rows, path)?;
        written.push(path.clone());
    }
    if let Some(svg_rel) = &outputs.svg_plot {
        let svg_path = resolve_out_path(svg_rel);
        svg::emit_svg(&csv_paths[0], &svg_path)?;
        written.push(svg_path);
    }

    Ok(RunOutput {
        name: exp.config.name.clone(),
        eta,
        eta_note,
        trajectory: traj,
        rows,
        clamp_events,
        written,
    })
}

pub struct SweepPoint {
    pub k: usize,
    pub eta: f64,
    pub dg: f64,
    pub total_regret: f64,
}

pub struct SweepOutput {
    pub name: String,
    pub points: Vec<SweepPoint>,
    pub slope: f64,
    pub eta_note: String,
    pub written: Vec<PathBuf>,
}

impl SweepOutput {
    pub fn summary_line(&self) -> String {
        format!(
            "{}: {} horizons, fitted log-log dg slope = {:.4} ({})",
            self.name,
            self.points.len(),
            self.slope,
            self.eta_note
        )
    }
}

/// Least-squares slope of ln(dg) against ln(K).
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Execute a sweep config: one run per horizon K, collecting the duality
/// gap of the average iterates and the total regret, then fit the decay
/// slope and write the summary CSV.
pub fn run_sweep(config: &ExperimentConfig) -> Result<SweepOutput> {
    let exp = build_experiment(config)?;
    let ks = exp
        .config
        .ks
        .clone()
        .ok_or_else(|| Error::Config("sweep config needs a ks list".into()))?;

    let mut points = Vec::with_capacity(ks.len());
    let mut eta_note = String::new();
    for &k in &ks {
        let (eta, note) = exp.rule.eta_for(&exp.game, k);
        eta_note = note;
        let traj = run(&exp.game, &exp.spec_for(eta), &exp.initial, k)?;
        let dg = crate::diagnostics::duality_gap_of_averages(&exp.game, &traj, exp.scheme)?;
        let total_regret = crate::diagnostics::total_regret(&exp.game, &traj, exp.scheme)?;
        points.push(SweepPoint {
            k,
            eta,
            dg,
            total_regret,
        });
    }

    let fit: Vec<(f64, f64)> = points
        .iter()
        .map(|p| ((p.k as f64).ln(), p.dg.max(1e-300).ln()))
        .collect();
    let slope = log_log_slope(&fit);

    let mut written = Vec::new();
    if let Some(rel) = &exp.config.summary_csv {
        let path = resolve_out_path(rel);
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent)?;
            }
        }
        let mut text = String::from("K,eta,dg,total_regret\n");
        for p in &points {
            text.push_str(&format!("{},{},{},{}\n", p.k, p.eta, p.dg, p.total_regret));
        }
        std::fs::write(&path, text)?;
        written.push(path);
    }

    Ok(SweepOutput {
        name: exp.config.name.clone(),
        points,
        slope,
        eta_note,
        written,
    })
}

/// Find a config by path, by `presets/<name>.json` relative to the working
/// directory, or by the crate's bundled presets.
pub fn resolve_config_path(arg: &str) -> Result<PathBuf> {
    let direct = PathBuf::from(arg);
    if direct.is_file() {
        return Ok(direct);
    }
    let local = PathBuf::from("presets").join(format!("{arg}.json"));
    if local.is_file() {
        return Ok(local);
    }
    let bundled = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("presets")
        .join(format!("{arg}.json"));
    if bundled.is_file() {
        return Ok(bundled);
    }
    Err(Error::Config(format!(
        "no config file or bundled preset named {arg:?}"
    )))
}

/// Exit code policy: 2 for config problems, 3 for numerical failures.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Config(_) | Error::Io(_) | Error::MissingColumn(_) => 2,
        _ => 3,
    }
}
