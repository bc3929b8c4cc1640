//! Two-player bilinear zero-sum game dynamics under mirror descent.
//!
//! The library implements the forward (simultaneous), backward
//! (proximal/implicit) and alternating discretizations of the skew-gradient
//! flow in the dual space, plus a high-order continuous-time reference, and
//! the full diagnostic apparatus around them: energy and modified energy,
//! the Bregman commutator, scheme-specific regret ledgers, duality gaps of
//! average iterates, and the theoretical bound values — so every identity
//! and rate is mechanically checkable at desk scale.
//!
//! # Layout
//!
//! - [`mirror_maps`] — Legendre regularizers, conjugates, Bregman divergences
//! - [`game_core`] — payoff matrix, singular values, joint state, duality gap
//! - [`dynamics`] — the three discretizations + RK4 reference, trajectory runner
//! - [`diagnostics`] — energies, commutators, regrets, bounds, identity checks
//! - [`harness`] — config-driven experiments, sweeps, CSV/SVG artifacts, the
//!   built-in verification matrix behind `skewflow verify`
//!
//! # Runnable examples
//!
//! One example per major capability; run with
//! `cargo run --example <name> [-p skewflow]`:
//!
//! - `energy_conservation` — alternating steps on the quadratic game conserve
//!   the modified energy exactly
//! - `scheme_comparison` — forward grows, backward shrinks, alternating
//!   cycles: energy behavior of the three discretizations side by side
//! - `commutator_drift` — per-step modified-energy drift equals the Bregman
//!   commutator on a log-cosh run
//! - `regret_identity` — the cumulative-regret/energy-difference identity on
//!   an entropy game
//! - `average_iterate_rates` — duality-gap decay rates of the average
//!   iterates for the three schemes
//! - `continuous_reference` — RK4 conservation of the energy and the
//!   continuous-time regret bound
//! - `figure_presets` — run the bundled experiment presets, writing CSV and
//!   SVG artifacts
//! - `conjecture_probe` — long-horizon boundedness probe of the modified
//!   energy for the alternating multiplicative-weights setting
//!
//! # The CLI
//!
//! A thin `skewflow` binary drives the same library functions:
//! `skewflow run <config>`, `skewflow sweep <config>`, `skewflow verify`,
//! `skewflow plot <csv> [--out file.svg]`.

pub mod diagnostics;
pub mod dynamics;
pub mod error;
pub mod game_core;
pub mod harness;
pub mod mirror_maps;

pub use error::{Error, Result};
