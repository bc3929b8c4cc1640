//! The bilinear game, paired primal/dual state, and the small dense linear
//! algebra (singular values by power iteration) every bound relies on.

use crate::error::{Error, Result};
use crate::mirror_maps::MirrorMap;

const POWER_TOL: f64 = 1e-12;
const POWER_MAX_ITERS: usize = 10_000;

/// Small dense row-major matrix. Payoffs here are at most a few rows and
/// columns, so nothing fancier is warranted.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Mat {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::Config("payoff matrix must be nonempty".into()));
        }
        let cols = rows[0].len();
        for r in rows {
            if r.len() != cols {
                return Err(Error::Dimension {
                    expected: cols,
                    got: r.len(),
                    what: "payoff row",
                });
            }
        }
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Ok(Mat {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn scalar(a: f64) -> Self {
        Mat {
            rows: 1,
            cols: 1,
            data: vec![a],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Mat {
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    /// A·v for v of length `cols`.
    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// Aᵀ·v for v of length `rows`.
    pub fn tr_matvec(&self, v: &[f64]) -> Vec<f64> {
        debug_assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j) * v[i]).sum())
            .collect()
    }

    /// Bilinear form pᵀAq.
    pub fn bilinear(&self, p: &[f64], q: &[f64]) -> f64 {
        debug_assert_eq!(p.len(), self.rows);
        debug_assert_eq!(q.len(), self.cols);
        let aq = self.matvec(q);
        p.iter().zip(&aq).map(|(a, b)| a * b).sum()
    }
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

/// Power iteration for the largest eigenvalue of a symmetric PSD operator
/// given as a matvec closure.
///
/// Starts from the normalized all-ones vector; because structured payoffs
/// (e.g. matching pennies) can place that start exactly in the kernel, the
/// deterministic fallback cascade over basis vectors keeps the result
/// deterministic while guaranteeing a start with overlap on the dominant
/// eigenvector. Returns the best converged Rayleigh quotient.
fn symmetric_top_eigenvalue<F: Fn(&[f64]) -> Vec<f64>>(dim: usize, op: F) -> Result<f64> {
    let mut starts: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    starts.push(vec![1.0 / (dim as f64).sqrt(); dim]);
    for i in 0..dim {
        let mut e = vec![0.0; dim];
        e[i] = 1.0;
        starts.push(e);
    }

    let mut best: Option<f64> = None;
    let mut last_residual = f64::INFINITY;
    for start in starts {
        let mut v = start;
        let mut converged = None;
        for _ in 0..POWER_MAX_ITERS {
            let w = op(&v);
            let lambda: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
            let residual = norm2(
                &w.iter()
                    .zip(&v)
                    .map(|(wi, vi)| wi - lambda * vi)
                    .collect::<Vec<_>>(),
            );
            if residual <= POWER_TOL * lambda.abs().max(1.0) {
                converged = Some(lambda);
                break;
            }
            last_residual = residual;
            let nw = norm2(&w);
            if nw <= f64::MIN_POSITIVE * dim as f64 {
                // start collapsed into the kernel: eigenvalue 0 for this run
                converged = Some(0.0);
                break;
            }
            v = w.into_iter().map(|wi| wi / nw).collect();
        }
        if let Some(lambda) = converged {
            best = Some(best.map_or(lambda, |b: f64| b.max(lambda)));
        }
    }
    best.ok_or(Error::Convergence {
        what: "power iteration",
        residual: last_residual,
        iterations: POWER_MAX_ITERS,
    })
}

/// Largest and smallest singular values of A.
///
/// alpha_max comes from power iteration on AᵀA; alpha_min (square matrices
/// only) from deflation: the top eigenvalue of lambda_max·I − AᵀA. For
/// non-square A the smallest singular value of the game operator is 0.
pub fn singular_values(a: &Mat) -> Result<(f64, f64)> {
    let n = a.cols;
    let gram = |v: &[f64]| a.tr_matvec(&a.matvec(v));
    let lambda_max = symmetric_top_eigenvalue(n, gram)?.max(0.0);
    let alpha_max = lambda_max.sqrt();
    if a.rows != a.cols {
        return Ok((alpha_max, 0.0));
    }
    let shifted = |v: &[f64]| {
        let bv = a.tr_matvec(&a.matvec(v));
        v.iter()
            .zip(&bv)
            .map(|(vi, bvi)| lambda_max * vi - bvi)
            .collect()
    };
    let nu_max = symmetric_top_eigenvalue(n, shifted)?;
    let lambda_min = (lambda_max - nu_max).max(0.0);
    Ok((alpha_max, lambda_min.sqrt()))
}

/// A bilinear zero-sum game min_p max_q pᵀAq together with the mirror maps
/// of both players and the cached extreme singular values of A.
///
/// Immutable after construction; safe to share across threads.
#[derive(Debug, Clone)]
pub struct BilinearGame {
    payoff: Mat,
    map_p: MirrorMap,
    map_q: MirrorMap,
    alpha_max: f64,
    alpha_min: f64,
}

impl BilinearGame {
    pub fn new(payoff: Mat, map_p: MirrorMap, map_q: MirrorMap) -> Result<Self> {
        if payoff.rows() != map_p.dim() {
            return Err(Error::Dimension {
                expected: payoff.rows(),
                got: map_p.dim(),
                what: "row player map",
            });
        }
        if payoff.cols() != map_q.dim() {
            return Err(Error::Dimension {
                expected: payoff.cols(),
                got: map_q.dim(),
                what: "column player map",
            });
        }
        let (alpha_max, alpha_min) = singular_values(&payoff)?;
        Ok(BilinearGame {
            payoff,
            map_p,
            map_q,
            alpha_max,
            alpha_min,
        })
    }

    pub fn payoff(&self) -> &Mat {
        &self.payoff
    }

    pub fn map_p(&self) -> &MirrorMap {
        &self.map_p
    }

    pub fn map_q(&self) -> &MirrorMap {
        &self.map_q
    }

    pub fn dim_p(&self) -> usize {
        self.map_p.dim()
    }

    pub fn dim_q(&self) -> usize {
        self.map_q.dim()
    }

    pub fn alpha_max(&self) -> f64 {
        self.alpha_max
    }

    pub fn alpha_min(&self) -> f64 {
        self.alpha_min
    }

    /// Uniform divergence bound M covering both players, when both sides
    /// carry one.
    pub fn divergence_bound(&self) -> Option<f64> {
        match (self.map_p.domain_bound(), self.map_q.domain_bound()) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        }
    }

    /// Replace the per-side domain bounds (e.g. after computing defaults
    /// from an initial point).
    pub fn with_domain_bounds(mut self, m_p: Option<f64>, m_q: Option<f64>) -> Self {
        if let Some(m) = m_p {
            self.map_p = self.map_p.clone().with_domain_bound(m);
        }
        if let Some(m) = m_q {
            self.map_q = self.map_q.clone().with_domain_bound(m);
        }
        self
    }

    /// Exact duality gap dg(p, q) = max_j (Aᵀp)_j − min_i (Aq)_i for simplex
    /// domains; a linear program over a simplex attains its optimum at a
    /// vertex, so componentwise max/min is exact.
    pub fn duality_gap(&self, p: &[f64], q: &[f64]) -> Result<f64> {
        if !self.map_p.is_simplex() || !self.map_q.is_simplex() {
            return Err(Error::Unsupported(
                "duality gap is only defined for simplex domains; use energy diagnostics instead"
                    .into(),
            ));
        }
        check_simplex_point(p, self.dim_p())?;
        check_simplex_point(q, self.dim_q())?;
        let at_p = self.payoff.tr_matvec(p);
        let aq = self.payoff.matvec(q);
        let best_response = at_p.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let worst_response = aq.iter().cloned().fold(f64::INFINITY, f64::min);
        Ok(best_response - worst_response)
    }

    /// Lift a primal pair to a full [`JointState`] via x = ∇φ(p), y = ∇ψ(q).
    pub fn lift_state(&self, p: &[f64], q: &[f64]) -> Result<JointState> {
        let x = self.map_p.primal_gradient(p)?;
        let y = self.map_q.primal_gradient(q)?;
        Ok(JointState {
            p: p.to_vec(),
            q: q.to_vec(),
            x,
            y,
        })
    }

    /// Build a state from dual coordinates, refreshing the primal side.
    pub fn state_from_duals(&self, x: Vec<f64>, y: Vec<f64>) -> Result<JointState> {
        let p = self.map_p.dual_gradient(&x)?;
        let q = self.map_q.dual_gradient(&y)?;
        Ok(JointState { p, q, x, y })
    }
}

fn check_simplex_point(p: &[f64], dim: usize) -> Result<()> {
    if p.len() != dim {
        return Err(Error::Dimension {
            expected: dim,
            got: p.len(),
            what: "simplex point",
        });
    }
    if p.iter().any(|&v| v < -1e-12) {
        return Err(Error::Domain(format!(
            "negative simplex component in {p:?}"
        )));
    }
    let s: f64 = p.iter().sum();
    if (s - 1.0).abs() > 1e-9 {
        return Err(Error::Domain(format!("simplex point sums to {s}, not 1")));
    }
    Ok(())
}

/// Paired primal point (p, q) and dual point (x, y), kept in sync:
/// p = ∇φ*(x) and q = ∇ψ*(y) hold at all times by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct JointState {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl JointState {
    /// Largest dual coordinate magnitude, used by the overflow guard.
    pub fn dual_sup_norm(&self) -> f64 {
        self.x
            .iter()
            .chain(&self.y)
            .fold(0.0f64, |m, &v| m.max(v.abs()))
    }
}

/// Named payoff presets usable from config files.
pub fn payoff_preset(name: &str) -> Option<Vec<Vec<f64>>> {
    match name {
        "matching_pennies" => Some(vec![vec![1.0, -1.0], vec![-1.0, 1.0]]),
        "identity2" => Some(vec![vec![1.0, 0.0], vec![0.0, 1.0]]),
        "scalar1" => Some(vec![vec![1.0]]),
        _ => None,
    }
}
