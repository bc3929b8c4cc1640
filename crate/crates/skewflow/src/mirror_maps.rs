//! Legendre regularizers and their convex conjugates.
//!
//! A [`MirrorMap`] bundles one strictly convex regularizer: the primal
//! function on the strategy domain, its conjugate on the (unconstrained)
//! dual space, the gradient maps in both directions, and the Bregman
//! divergences of both sides. These are the only objects through which the
//! rest of the crate touches geometry.
//!
//! Four kinds are provided:
//!
//! | kind                     | primal                | dual f(x)            | ∇f(x)          |
//! |--------------------------|-----------------------|----------------------|----------------|
//! | `EuclideanQuadratic`     | ½‖p‖²  on ℝᵐ          | ½‖x‖²                | x              |
//! | `NegativeEntropySimplex` | Σ pᵢ ln pᵢ on Δₘ      | ln Σ eˣⁱ             | softmax(x)     |
//! | `LogCosh1D`              | dual-side defined     | ln cosh x            | tanh x         |
//! | `Cubic1D`                | dual-side defined     | ⅓\|x\|³              | x\|x\|         |
//!
//! `LogCosh1D` and `Cubic1D` store their dual function directly; the primal
//! value has no clean closed form and is not needed, so `primal_value` is
//! unsupported for them (the primal gradients are still available).

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Floor applied to simplex components before logs; activations are counted,
/// never silent.
const SIMPLEX_FLOOR: f64 = 1e-300;

/// Smoothing used when evaluating divergences at (otherwise boundary)
/// vertices for the default domain-bound computation.
const VERTEX_SMOOTHING: f64 = 1e-6;

static SIMPLEX_CLAMP_EVENTS: AtomicU64 = AtomicU64::new(0);

/// Number of times a simplex component has been clamped to the numerical
/// floor since process start (or the last [`reset_simplex_clamp_events`]).
pub fn simplex_clamp_events() -> u64 {
    SIMPLEX_CLAMP_EVENTS.load(Ordering::Relaxed)
}

pub fn reset_simplex_clamp_events() {
    SIMPLEX_CLAMP_EVENTS.store(0, Ordering::Relaxed);
}

fn clamp_simplex_component(v: f64) -> f64 {
    if v < SIMPLEX_FLOOR {
        SIMPLEX_CLAMP_EVENTS.fetch_add(1, Ordering::Relaxed);
        SIMPLEX_FLOOR
    } else {
        v
    }
}

/// Which Legendre regularizer a [`MirrorMap`] represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    EuclideanQuadratic,
    NegativeEntropySimplex,
    LogCosh1D,
    Cubic1D,
}

impl MapKind {
    /// Config-file key for this kind.
    pub fn key(self) -> &'static str {
        match self {
            MapKind::EuclideanQuadratic => "euclidean",
            MapKind::NegativeEntropySimplex => "entropy",
            MapKind::LogCosh1D => "logcosh",
            MapKind::Cubic1D => "cubic",
        }
    }

    /// Parse a config-file key ("euclidean", "entropy", "logcosh", "cubic").
    pub fn from_key(key: &str) -> Result<Self> {
        match key {
            "euclidean" => Ok(MapKind::EuclideanQuadratic),
            "entropy" => Ok(MapKind::NegativeEntropySimplex),
            "logcosh" => Ok(MapKind::LogCosh1D),
            "cubic" => Ok(MapKind::Cubic1D),
            other => Err(Error::Config(format!(
                "unknown mirror map kind {other:?} (expected euclidean|entropy|logcosh|cubic)"
            ))),
        }
    }
}

/// A concrete Legendre regularizer with both primal and dual machinery.
///
/// Immutable after construction and safe to share across threads; every
/// operation is a pure function of its inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct MirrorMap {
    dim: usize,
    kind: MapKind,
    domain_bound: Option<f64>,
}

impl MirrorMap {
    /// Quadratic regularizer ½‖p‖² on ℝ^dim (unconstrained domain).
    pub fn euclidean(dim: usize) -> Self {
        assert!(dim >= 1, "mirror map dimension must be positive");
        MirrorMap {
            dim,
            kind: MapKind::EuclideanQuadratic,
            domain_bound: None,
        }
    }

    /// Negative entropy Σ pᵢ ln pᵢ on the open probability simplex.
    pub fn entropy(dim: usize) -> Self {
        assert!(dim >= 2, "entropy mirror map needs dimension >= 2");
        MirrorMap {
            dim,
            kind: MapKind::NegativeEntropySimplex,
            domain_bound: None,
        }
    }

    /// One-dimensional map with dual f(x) = ln cosh x; primal domain (-1, 1).
    pub fn logcosh() -> Self {
        MirrorMap {
            dim: 1,
            kind: MapKind::LogCosh1D,
            domain_bound: None,
        }
    }

    /// One-dimensional map with dual f(x) = ⅓|x|³ (unconstrained primal).
    pub fn cubic() -> Self {
        MirrorMap {
            dim: 1,
            kind: MapKind::Cubic1D,
            domain_bound: None,
        }
    }

    pub fn from_kind(kind: MapKind, dim: usize) -> Result<Self> {
        match kind {
            MapKind::EuclideanQuadratic => Ok(MirrorMap::euclidean(dim)),
            MapKind::NegativeEntropySimplex => {
                if dim < 2 {
                    return Err(Error::Config(format!(
                        "entropy mirror map needs dimension >= 2, got {dim}"
                    )));
                }
                Ok(MirrorMap::entropy(dim))
            }
            MapKind::LogCosh1D | MapKind::Cubic1D => {
                if dim != 1 {
                    return Err(Error::Dimension {
                        expected: 1,
                        got: dim,
                        what: "1-D mirror map",
                    });
                }
                Ok(MirrorMap {
                    dim: 1,
                    kind,
                    domain_bound: None,
                })
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    /// Uniform bound M on Bregman divergences over the domain, when one has
    /// been supplied or computed. Only bounded-domain kinds carry one.
    pub fn domain_bound(&self) -> Option<f64> {
        self.domain_bound
    }

    /// Attach a domain bound M (for bounded-domain kinds).
    pub fn with_domain_bound(mut self, m: f64) -> Self {
        assert!(m >= 0.0, "domain bound must be nonnegative");
        self.domain_bound = Some(m);
        self
    }

    /// True when the primal domain is bounded (simplex or interval kinds).
    pub fn is_bounded_domain(&self) -> bool {
        matches!(
            self.kind,
            MapKind::NegativeEntropySimplex | MapKind::LogCosh1D
        )
    }

    /// True when the domain is a simplex (or the 1-D interval image of one),
    /// i.e. extreme points can be enumerated for exact affine maximization.
    pub fn is_simplex(&self) -> bool {
        self.kind == MapKind::NegativeEntropySimplex
    }

    /// Default divergence radius from an initial point: the maximum over
    /// smoothed extreme points v of D_φ(v, p0). `None` for unbounded domains,
    /// where no finite radius exists.
    pub fn divergence_radius(&self, p0: &[f64]) -> Result<Option<f64>> {
        self.check_dim(p0)?;
        match self.kind {
            MapKind::EuclideanQuadratic | MapKind::Cubic1D => Ok(None),
            MapKind::NegativeEntropySimplex => {
                let mut worst = 0.0f64;
                for i in 0..self.dim {
                    let mut v = vec![VERTEX_SMOOTHING / (self.dim as f64 - 1.0); self.dim];
                    v[i] = 1.0 - VERTEX_SMOOTHING;
                    worst = worst.max(self.bregman_primal(&v, p0)?);
                }
                Ok(Some(worst))
            }
            MapKind::LogCosh1D => {
                let mut worst = 0.0f64;
                for endpoint in [-(1.0 - VERTEX_SMOOTHING), 1.0 - VERTEX_SMOOTHING] {
                    worst = worst.max(self.bregman_primal(&[endpoint], p0)?);
                }
                Ok(Some(worst))
            }
        }
    }

    /// Extreme points of the primal domain, for exact maximization of affine
    /// objectives. `None` when the domain is unbounded.
    pub fn extreme_points(&self) -> Option<Vec<Vec<f64>>> {
        match self.kind {
            MapKind::NegativeEntropySimplex => {
                let mut pts = Vec::with_capacity(self.dim);
                for i in 0..self.dim {
                    let mut v = vec![0.0; self.dim];
                    v[i] = 1.0;
                    pts.push(v);
                }
                Some(pts)
            }
            MapKind::LogCosh1D => Some(vec![vec![-1.0], vec![1.0]]),
            MapKind::EuclideanQuadratic | MapKind::Cubic1D => None,
        }
    }

    fn check_dim(&self, v: &[f64]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                got: v.len(),
                what: "mirror map vector",
            });
        }
        Ok(())
    }

    fn check_interior(&self, p: &[f64]) -> Result<()> {
        self.check_dim(p)?;
        match self.kind {
            MapKind::EuclideanQuadratic | MapKind::Cubic1D => Ok(()),
            MapKind::NegativeEntropySimplex => {
                if p.iter().any(|&pi| pi <= 0.0) {
                    Err(Error::Domain(format!(
                        "simplex point has a nonpositive component: {p:?}"
                    )))
                } else {
                    Ok(())
                }
            }
            MapKind::LogCosh1D => {
                if p[0].abs() >= 1.0 {
                    Err(Error::Domain(format!(
                        "log-cosh primal domain is (-1, 1), got {}",
                        p[0]
                    )))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// φ(p). Unsupported for the dual-side-defined kinds.
    pub fn primal_value(&self, p: &[f64]) -> Result<f64> {
        self.check_interior(p)?;
        match self.kind {
            MapKind::EuclideanQuadratic => Ok(0.5 * sq_norm(p)),
            MapKind::NegativeEntropySimplex => Ok(p
                .iter()
                .map(|&pi| {
                    let pi = clamp_simplex_component(pi);
                    pi * pi.ln()
                })
                .sum()),
            MapKind::LogCosh1D | MapKind::Cubic1D => Err(Error::Unsupported(format!(
                "{:?} is defined dual-side only; primal_value has no closed form",
                self.kind
            ))),
        }
    }

    /// The dual function f(x) = φ*(x); defined on all of ℝ^dim.
    pub fn dual_value(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x)?;
        Ok(match self.kind {
            MapKind::EuclideanQuadratic => 0.5 * sq_norm(x),
            MapKind::NegativeEntropySimplex => log_sum_exp(x),
            MapKind::LogCosh1D => log_cosh(x[0]),
            MapKind::Cubic1D => x[0].abs().powi(3) / 3.0,
        })
    }

    /// ∇φ*(x) = (∇φ)⁻¹(x), mapping the dual space back into the primal domain.
    pub fn dual_gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(x)?;
        Ok(match self.kind {
            MapKind::EuclideanQuadratic => x.to_vec(),
            MapKind::NegativeEntropySimplex => softmax(x),
            MapKind::LogCosh1D => vec![x[0].tanh()],
            MapKind::Cubic1D => vec![x[0] * x[0].abs()],
        })
    }

    /// x = ∇φ(p) for interior p. For the simplex kind the gradient is only
    /// defined up to multiples of the all-ones vector; the canonical
    /// representative ln p is returned and trajectories keep whatever gauge
    /// their initial lift fixed.
    pub fn primal_gradient(&self, p: &[f64]) -> Result<Vec<f64>> {
        self.check_interior(p)?;
        Ok(match self.kind {
            MapKind::EuclideanQuadratic => p.to_vec(),
            MapKind::NegativeEntropySimplex => p
                .iter()
                .map(|&pi| clamp_simplex_component(pi).ln())
                .collect(),
            MapKind::LogCosh1D => vec![p[0].atanh()],
            MapKind::Cubic1D => vec![p[0].signum() * p[0].abs().sqrt()],
        })
    }

    /// D_φ(p, p_ref) = φ(p) − φ(p_ref) − ⟨∇φ(p_ref), p − p_ref⟩ ≥ 0.
    ///
    /// For the simplex kind this is the KL divergence Σ pᵢ ln(pᵢ/p̃ᵢ), which
    /// is how it is evaluated (better conditioned than the three-term form).
    /// Dual-side-defined kinds are routed through the duality identity.
    pub fn bregman_primal(&self, p: &[f64], p_ref: &[f64]) -> Result<f64> {
        self.check_interior(p)?;
        self.check_interior(p_ref)?;
        match self.kind {
            MapKind::EuclideanQuadratic => Ok(0.5
                * p.iter()
                    .zip(p_ref)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()),
            MapKind::NegativeEntropySimplex => Ok(p
                .iter()
                .zip(p_ref)
                .map(|(&pi, &ri)| {
                    let pi = clamp_simplex_component(pi);
                    let ri = clamp_simplex_component(ri);
                    pi * (pi.ln() - ri.ln())
                })
                .sum()),
            // D_φ(p, p_ref) = D_f(∇φ(p_ref), ∇φ(p)) for a Legendre pair.
            MapKind::LogCosh1D | MapKind::Cubic1D => {
                let x = self.primal_gradient(p)?;
                let x_ref = self.primal_gradient(p_ref)?;
                self.bregman_dual(&x_ref, &x)
            }
        }
    }

    /// D_f(x, x_ref) for the dual function f = φ*. Satisfies
    /// D_f(x, x') = D_φ(∇φ*(x'), ∇φ*(x)).
    pub fn bregman_dual(&self, x: &[f64], x_ref: &[f64]) -> Result<f64> {
        self.check_dim(x)?;
        self.check_dim(x_ref)?;
        let f_x = self.dual_value(x)?;
        let f_ref = self.dual_value(x_ref)?;
        let grad_ref = self.dual_gradient(x_ref)?;
        let lin: f64 = grad_ref
            .iter()
            .zip(x.iter().zip(x_ref))
            .map(|(g, (a, b))| g * (a - b))
            .sum();
        Ok(f_x - f_ref - lin)
    }
}

fn sq_norm(v: &[f64]) -> f64 {
    v.iter().map(|&a| a * a).sum()
}

/// ln Σ eˣⁱ with max subtraction.
pub(crate) fn log_sum_exp(x: &[f64]) -> f64 {
    let m = x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    m + x.iter().map(|&xi| (xi - m).exp()).sum::<f64>().ln()
}

/// Softmax with max subtraction; components floored at the numerical floor
/// (counted) so downstream logs stay finite.
pub(crate) fn softmax(x: &[f64]) -> Vec<f64> {
    let m = x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = x.iter().map(|&xi| (xi - m).exp()).collect();
    let total: f64 = exps.iter().sum();
    exps.into_iter()
        .map(|e| clamp_simplex_component(e / total))
        .collect()
}

/// ln cosh x, overflow-safe for large |x|.
fn log_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;

    const LOG2: f64 = std::f64::consts::LN_2;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!(
            (a - b).abs() <= tol,
            "expected {b}, got {a} (|diff| = {:e})",
            (a - b).abs()
        );
    }

    /// Independent KL oracle for entropy Bregman checks.
    fn kl(p: &[f64], q: &[f64]) -> f64 {
        p.iter()
            .zip(q)
            .map(|(&a, &b)| if a == 0.0 { 0.0 } else { a * (a / b).ln() })
            .sum()
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
        fn simplex(&mut self, dim: usize) -> Vec<f64> {
            // interior point via normalized positive draws
            let mut v: Vec<f64> = (0..dim).map(|_| 0.05 + self.next_f64()).collect();
            let s: f64 = v.iter().sum();
            v.iter_mut().for_each(|x| *x /= s);
            v
        }
    }

    #[test]
    fn primal_value_examples() {
        let quad = MirrorMap::euclidean(1);
        assert_close(quad.primal_value(&[3.0]).unwrap(), 4.5, 1e-15);

        let ent = MirrorMap::entropy(2);
        assert_close(ent.primal_value(&[0.5, 0.5]).unwrap(), -LOG2, 1e-15);

        // entropy of a near point mass tends to zero
        let eps = 1e-12;
        let v = ent.primal_value(&[1.0 - eps, eps]).unwrap();
        assert!(
            v.abs() < 1e-10,
            "entropy of near-vertex should vanish, got {v}"
        );
    }

    #[test]
    fn primal_value_error_paths() {
        let ent = MirrorMap::entropy(2);
        assert!(matches!(
            ent.primal_value(&[1.0, 0.0]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            ent.primal_value(&[-0.1, 1.1]),
            Err(Error::Domain(_))
        ));

        let lc = MirrorMap::logcosh();
        assert!(matches!(
            lc.primal_value(&[0.3]),
            Err(Error::Unsupported(_))
        ));
        let cu = MirrorMap::cubic();
        assert!(matches!(
            cu.primal_value(&[0.3]),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn dual_value_examples() {
        let ent = MirrorMap::entropy(2);
        assert_close(ent.dual_value(&[0.0, 0.0]).unwrap(), LOG2, 1e-15);

        let lc = MirrorMap::logcosh();
        assert_close(lc.dual_value(&[3.0]).unwrap(), 3.0f64.cosh().ln(), 1e-14);
        assert_close(lc.dual_value(&[3.0]).unwrap(), 2.3093285, 1e-7);

        let quad = MirrorMap::euclidean(1);
        assert_close(quad.dual_value(&[3.0]).unwrap(), 4.5, 1e-15);

        let cu = MirrorMap::cubic();
        assert_close(cu.dual_value(&[-2.0]).unwrap(), 8.0 / 3.0, 1e-15);
    }

    #[test]
    fn dual_gradient_examples() {
        let ent = MirrorMap::entropy(2);
        let uniform = ent.dual_gradient(&[0.0, 0.0]).unwrap();
        assert_close(uniform[0], 0.5, 1e-15);
        assert_close(uniform[1], 0.5, 1e-15);

        // softmax(ln ½ − ½, ln ½) = (e^{-½}, 1)/(e^{-½} + 1)
        let x = [0.5f64.ln() - 0.5, 0.5f64.ln()];
        let p = ent.dual_gradient(&x).unwrap();
        let e = (-0.5f64).exp();
        assert_close(p[0], e / (e + 1.0), 1e-14);
        assert_close(p[1], 1.0 / (e + 1.0), 1e-14);
        assert_close(p[0], 0.377541, 1e-6);
        assert_close(p[1], 0.622459, 1e-6);

        let lc = MirrorMap::logcosh();
        assert_close(lc.dual_gradient(&[0.0]).unwrap()[0], 0.0, 0.0);
    }

    #[test]
    fn softmax_overflow_safety() {
        let ent = MirrorMap::entropy(3);
        let p = ent.dual_gradient(&[800.0, 799.0, -800.0]).unwrap();
        assert!(p.iter().all(|&pi| pi > 0.0));
        assert_close(p.iter().sum::<f64>(), 1.0, 1e-12);
    }

    #[test]
    fn primal_gradient_examples() {
        let quad = MirrorMap::euclidean(1);
        assert_close(quad.primal_gradient(&[3.0]).unwrap()[0], 3.0, 0.0);

        let ent = MirrorMap::entropy(2);
        let x = ent.primal_gradient(&[0.5, 0.5]).unwrap();
        assert_close(x[0], -LOG2, 1e-15);
        assert_close(x[1], -LOG2, 1e-15);

        let lc = MirrorMap::logcosh();
        assert_close(
            lc.primal_gradient(&[0.9]).unwrap()[0],
            0.9f64.atanh(),
            1e-15,
        );
        assert_close(lc.primal_gradient(&[0.9]).unwrap()[0], 1.472219, 1e-6);
        assert!(matches!(lc.primal_gradient(&[1.0]), Err(Error::Domain(_))));
    }

    #[test]
    fn bregman_primal_examples() {
        let quad = MirrorMap::euclidean(2);
        assert_close(
            quad.bregman_primal(&[1.0, 0.0], &[0.0, 1.0]).unwrap(),
            1.0,
            1e-15,
        );
        assert_close(
            quad.bregman_primal(&[0.7, -0.2], &[0.7, -0.2]).unwrap(),
            0.0,
            0.0,
        );

        let ent = MirrorMap::entropy(2);
        let d = ent.bregman_primal(&[0.5, 0.5], &[0.25, 0.75]).unwrap();
        let expect = 0.5 * LOG2 + 0.5 * (2.0f64 / 3.0).ln();
        assert_close(d, expect, 1e-15);
        assert_close(d, 0.143841, 1e-6);
        assert_close(d, kl(&[0.5, 0.5], &[0.25, 0.75]), 1e-15);
    }

    #[test]
    fn bregman_dual_examples() {
        let quad = MirrorMap::euclidean(1);
        assert_close(quad.bregman_dual(&[2.0], &[0.0]).unwrap(), 2.0, 1e-15);
        assert_close(quad.bregman_dual(&[-1.3], &[-1.3]).unwrap(), 0.0, 0.0);

        // duality identity, both sides evaluated independently
        let ent = MirrorMap::entropy(2);
        let lhs = ent.bregman_dual(&[0.0, 0.0], &[1.0, 0.0]).unwrap();
        let p_ref = ent.dual_gradient(&[1.0, 0.0]).unwrap();
        let rhs = kl(&p_ref, &[0.5, 0.5]);
        assert_close(lhs, rhs, 1e-12);
    }

    #[test]
    fn inverse_pair_property() {
        let maps = [
            MirrorMap::euclidean(3),
            MirrorMap::entropy(2),
            MirrorMap::entropy(4),
            MirrorMap::logcosh(),
            MirrorMap::cubic(),
        ];
        let mut rng = Rng(0x5eed);
        for map in &maps {
            for _ in 0..1000 {
                let p: Vec<f64> = match map.kind() {
                    MapKind::NegativeEntropySimplex => rng.simplex(map.dim()),
                    MapKind::LogCosh1D => vec![1.98 * rng.next_f64() - 0.99],
                    _ => (0..map.dim()).map(|_| 8.0 * rng.next_f64() - 4.0).collect(),
                };
                let x = map.primal_gradient(&p).unwrap();
                let back = map.dual_gradient(&x).unwrap();
                for (a, b) in back.iter().zip(&p) {
                    assert!((a - b).abs() <= 1e-10, "{:?}: {a} vs {b}", map.kind());
                }
            }
        }
    }

    #[test]
    fn dual_convexity_and_duality_identity() {
        let maps = [
            MirrorMap::euclidean(2),
            MirrorMap::entropy(3),
            MirrorMap::logcosh(),
            MirrorMap::cubic(),
        ];
        let mut rng = Rng(0xbead);
        for map in &maps {
            for _ in 0..500 {
                let x: Vec<f64> = (0..map.dim()).map(|_| 6.0 * rng.next_f64() - 3.0).collect();
                let x2: Vec<f64> = (0..map.dim()).map(|_| 6.0 * rng.next_f64() - 3.0).collect();
                let d = map.bregman_dual(&x2, &x).unwrap();
                assert!(
                    d >= -1e-12,
                    "{:?}: negative dual divergence {d}",
                    map.kind()
                );
                // duality identity for kinds with an independent primal side
                match map.kind() {
                    MapKind::EuclideanQuadratic | MapKind::NegativeEntropySimplex => {
                        let p = map.dual_gradient(&x).unwrap();
                        let p2 = map.dual_gradient(&x2).unwrap();
                        let via_primal = map.bregman_primal(&p, &p2).unwrap();
                        assert!(
                            (d - via_primal).abs() <= 1e-10,
                            "{:?}: duality identity broke: {d} vs {via_primal}",
                            map.kind()
                        );
                    }
                    _ => {}
                }
            }
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let maps = [
            MirrorMap::euclidean(2),
            MirrorMap::entropy(3),
            MirrorMap::logcosh(),
            MirrorMap::cubic(),
        ];
        let mut rng = Rng(0xfeed);
        let h = 1e-5;
        for map in &maps {
            for _ in 0..200 {
                let x: Vec<f64> = (0..map.dim()).map(|_| 4.0 * rng.next_f64() - 2.0).collect();
                let grad = map.dual_gradient(&x).unwrap();
                for i in 0..map.dim() {
                    let mut xp = x.clone();
                    let mut xm = x.clone();
                    xp[i] += h;
                    xm[i] -= h;
                    let fd =
                        (map.dual_value(&xp).unwrap() - map.dual_value(&xm).unwrap()) / (2.0 * h);
                    let scale = grad[i].abs().max(1.0);
                    assert!(
                        (fd - grad[i]).abs() / scale <= 1e-6,
                        "{:?} component {i}: fd {fd} vs grad {}",
                        map.kind(),
                        grad[i]
                    );
                }
            }
        }
    }

    #[test]
    fn divergence_radius_defaults() {
        let ent = MirrorMap::entropy(2);
        let m = ent.divergence_radius(&[0.5, 0.5]).unwrap().unwrap();
        // KL(vertex, uniform) = ln 2; smoothing shaves off ~1e-5
        assert!((m - LOG2).abs() < 1e-4, "entropy radius {m}");

        assert!(MirrorMap::euclidean(2)
            .divergence_radius(&[0.0, 0.0])
            .unwrap()
            .is_none());
        assert!(MirrorMap::cubic()
            .divergence_radius(&[0.0])
            .unwrap()
            .is_none());
        assert!(
            MirrorMap::logcosh()
                .divergence_radius(&[0.0])
                .unwrap()
                .unwrap()
                > 0.0
        );
    }

    #[test]
    fn clamp_counter_is_not_silent() {
        reset_simplex_clamp_events();
        let ent = MirrorMap::entropy(2);
        let before = simplex_clamp_events();
        // a positive-but-subnormal component must be clamped and counted
        ent.primal_gradient(&[1e-320, 1.0]).unwrap();
        assert!(simplex_clamp_events() > before);
        reset_simplex_clamp_events();
    }

    #[test]
    fn map_kind_keys_round_trip() {
        for kind in [
            MapKind::EuclideanQuadratic,
            MapKind::NegativeEntropySimplex,
            MapKind::LogCosh1D,
            MapKind::Cubic1D,
        ] {
            assert_eq!(MapKind::from_key(kind.key()).unwrap(), kind);
        }
        assert!(MapKind::from_key("sparsemax").is_err());
    }
}
