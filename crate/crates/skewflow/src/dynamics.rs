//! Discretizations of the skew-gradient flow ż = −J∇H(z).
//!
//! In the dual space z = (x, y) the flow generated by the separable energy
//! H(x, y) = f(x) + g(y) and J = [[0, A], [−Aᵀ, 0]] reads
//!
//! ```text
//! ẋ = −A ∇g(y)        ẏ = Aᵀ ∇f(x)
//! ```
//!
//! Three one-step maps discretize it:
//!
//! * forward      x⁺ = x − ηA∇g(y),  y⁺ = y + ηAᵀ∇f(x)      (simultaneous)
//! * backward     z⁺ = z − ηJ∇H(z⁺)                          (implicit)
//! * alternating  x⁺ = x − ηA∇g(y),  y⁺ = y + ηAᵀ∇f(x⁺)     (symplectic Euler)
//!
//! plus a classical RK4 reference integrator for the continuous flow.
//! The primal pair (p, q) is refreshed through the dual gradients after
//! every update, so the `JointState` invariant holds by construction.

use crate::error::{Error, Result};
use crate::game_core::{BilinearGame, JointState};

/// Dual variables beyond this magnitude abort the run; forward runs on
/// unconstrained quadratics grow exponentially by design.
pub const OVERFLOW_GUARD: f64 = 1e150;

/// Which discretization a run uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Forward,
    Backward,
    Alternating,
    ContinuousRef,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Forward => "forward",
            Scheme::Backward => "backward",
            Scheme::Alternating => "alternating",
            Scheme::ContinuousRef => "continuous",
        }
    }

    pub fn from_key(key: &str) -> Result<Self> {
        match key {
            "forward" => Ok(Scheme::Forward),
            "backward" => Ok(Scheme::Backward),
            "alternating" => Ok(Scheme::Alternating),
            "continuous" => Ok(Scheme::ContinuousRef),
            other => Err(Error::Config(format!(
                "unknown scheme {other:?} (expected forward|backward|alternating|continuous)"
            ))),
        }
    }
}

/// A discretization choice with its step size and (for the backward scheme)
/// fixed-point solver settings. For `ContinuousRef`, `eta` is the fine
/// internal RK4 step h.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeSpec {
    pub scheme: Scheme,
    pub eta: f64,
    pub backward_tol: f64,
    pub backward_max_iters: usize,
}

impl SchemeSpec {
    pub fn new(scheme: Scheme, eta: f64) -> Self {
        assert!(eta > 0.0, "step size must be positive");
        SchemeSpec {
            scheme,
            eta,
            backward_tol: 1e-12,
            backward_max_iters: 500,
        }
    }

    pub fn with_backward_solver(mut self, tol: f64, max_iters: usize) -> Self {
        assert!(tol > 0.0, "backward tolerance must be positive");
        self.backward_tol = tol;
        self.backward_max_iters = max_iters;
        self
    }
}

/// An ordered sequence of state snapshots: `states[k]` is the state after k
/// iterations, so a run of K steps holds K+1 states.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub scheme: Scheme,
    pub eta: f64,
    pub states: Vec<JointState>,
}

impl Trajectory {
    /// Number of completed iterations K.
    pub fn iterations(&self) -> usize {
        self.states.len() - 1
    }

    pub fn initial(&self) -> &JointState {
        &self.states[0]
    }

    pub fn last(&self) -> &JointState {
        self.states.last().expect("trajectory is never empty")
    }
}

fn axpy(a: f64, v: &[f64], base: &[f64]) -> Vec<f64> {
    base.iter().zip(v).map(|(b, vi)| b + a * vi).collect()
}

fn sup_diff(a: &JointState, b: &JointState) -> f64 {
    a.x.iter()
        .chain(&a.y)
        .zip(b.x.iter().chain(&b.y))
        .fold(0.0f64, |m, (u, v)| m.max((u - v).abs()))
}

/// One alternating step: the x block moves against the current q, then the
/// y block moves against the refreshed p. Exactly one dual-gradient
/// evaluation per map (the stored primal pair already is ∇H of the old z).
pub fn step_alternating(game: &BilinearGame, state: &JointState, eta: f64) -> Result<JointState> {
    let aq = game.payoff().matvec(&state.q);
    let x_new = axpy(-eta, &aq, &state.x);
    let p_new = game.map_p().dual_gradient(&x_new)?;
    let atp = game.payoff().tr_matvec(&p_new);
    let y_new = axpy(eta, &atp, &state.y);
    let q_new = game.map_q().dual_gradient(&y_new)?;
    Ok(JointState {
        p: p_new,
        q: q_new,
        x: x_new,
        y: y_new,
    })
}

/// One forward (simultaneous) step: both blocks move against the old state.
pub fn step_forward(game: &BilinearGame, state: &JointState, eta: f64) -> Result<JointState> {
    let aq = game.payoff().matvec(&state.q);
    let atp = game.payoff().tr_matvec(&state.p);
    let x_new = axpy(-eta, &aq, &state.x);
    let y_new = axpy(eta, &atp, &state.y);
    game.state_from_duals(x_new, y_new)
}

/// One backward (implicit/proximal) step, solving z⁺ = z − ηJ∇H(z⁺) by
/// plain Picard iteration seeded with a forward step. The iteration
/// contracts when η·α_max·L₂ < 1 (the regime in which the implicit update
/// is well-defined); callers may pass larger steps at their own risk.
///
/// Negative `eta` is accepted: the backward method with step −η is the
/// adjoint (exact inverse) of the forward method with step η.
pub fn step_backward(
    game: &BilinearGame,
    state: &JointState,
    spec: &SchemeSpec,
) -> Result<JointState> {
    step_backward_with(
        game,
        state,
        spec.eta,
        spec.backward_tol,
        spec.backward_max_iters,
    )
}

pub fn step_backward_with(
    game: &BilinearGame,
    state: &JointState,
    eta: f64,
    tol: f64,
    max_iters: usize,
) -> Result<JointState> {
    let mut cur = step_forward(game, state, eta)?;
    let mut residual = f64::INFINITY;
    for _ in 0..max_iters {
        let aq = game.payoff().matvec(&cur.q);
        let atp = game.payoff().tr_matvec(&cur.p);
        let x_new = axpy(-eta, &aq, &state.x);
        let y_new = axpy(eta, &atp, &state.y);
        let next = game.state_from_duals(x_new, y_new)?;
        residual = sup_diff(&next, &cur);
        cur = next;
        if residual <= tol {
            return Ok(cur);
        }
    }
    Err(Error::Convergence {
        what: "backward fixed point",
        residual,
        iterations: max_iters,
    })
}

/// One classical fourth-order Runge–Kutta step of the skew-gradient flow,
/// the continuous-time reference. Local truncation O(h⁵).
pub fn step_continuous_ref(game: &BilinearGame, state: &JointState, h: f64) -> Result<JointState> {
    let field = |x: &[f64], y: &[f64]| -> Result<(Vec<f64>, Vec<f64>)> {
        let gp = game.map_p().dual_gradient(x)?;
        let gq = game.map_q().dual_gradient(y)?;
        let vx: Vec<f64> = game.payoff().matvec(&gq).into_iter().map(|v| -v).collect();
        let vy = game.payoff().tr_matvec(&gp);
        Ok((vx, vy))
    };

    let (k1x, k1y) = field(&state.x, &state.y)?;
    let (k2x, k2y) = field(
        &axpy(0.5 * h, &k1x, &state.x),
        &axpy(0.5 * h, &k1y, &state.y),
    )?;
    let (k3x, k3y) = field(
        &axpy(0.5 * h, &k2x, &state.x),
        &axpy(0.5 * h, &k2y, &state.y),
    )?;
    let (k4x, k4y) = field(&axpy(h, &k3x, &state.x), &axpy(h, &k3y, &state.y))?;

    let combine = |z: &[f64], k1: &[f64], k2: &[f64], k3: &[f64], k4: &[f64]| -> Vec<f64> {
        z.iter()
            .enumerate()
            .map(|(i, zi)| zi + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
            .collect()
    };
    let x_new = combine(&state.x, &k1x, &k2x, &k3x, &k4x);
    let y_new = combine(&state.y, &k1y, &k2y, &k3y, &k4y);
    game.state_from_duals(x_new, y_new)
}

fn step(game: &BilinearGame, spec: &SchemeSpec, state: &JointState) -> Result<JointState> {
    match spec.scheme {
        Scheme::Forward => step_forward(game, state, spec.eta),
        Scheme::Backward => step_backward(game, state, spec),
        Scheme::Alternating => step_alternating(game, state, spec.eta),
        Scheme::ContinuousRef => step_continuous_ref(game, state, spec.eta),
    }
}

/// Iterate the selected step map, recording every state. Deterministic for
/// fixed inputs; aborts with an overflow error once any dual coordinate
/// exceeds the guard, and attaches the failing step index to solver errors.
pub fn run(
    game: &BilinearGame,
    spec: &SchemeSpec,
    initial: &JointState,
    steps: usize,
) -> Result<Trajectory> {
    run_observed(game, spec, initial, steps, |_, _| {})
}

/// Like [`run`], additionally invoking `observer(k, state_k)` for every
/// recorded state (including the initial one at k = 0).
pub fn run_observed(
    game: &BilinearGame,
    spec: &SchemeSpec,
    initial: &JointState,
    steps: usize,
    mut observer: impl FnMut(usize, &JointState),
) -> Result<Trajectory> {
    let mut states = Vec::with_capacity(steps + 1);
    check_overflow(initial, 0)?;
    observer(0, initial);
    states.push(initial.clone());
    for k in 1..=steps {
        let next = step(game, spec, states.last().unwrap()).map_err(|e| Error::AtStep {
            step: k,
            source: Box::new(e),
        })?;
        check_overflow(&next, k)?;
        observer(k, &next);
        states.push(next);
    }
    Ok(Trajectory {
        scheme: spec.scheme,
        eta: spec.eta,
        states,
    })
}

fn check_overflow(state: &JointState, step: usize) -> Result<()> {
    let sup = state.dual_sup_norm();
    if sup > OVERFLOW_GUARD {
        Err(Error::Overflow { step, value: sup })
    } else {
        Ok(())
    }
}
