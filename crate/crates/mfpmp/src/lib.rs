//! Mean-field Pontryagin training of continuous-depth tanh classifiers.
//!
//! A network with layer map `x ↦ tanh(Wx + τ)` is treated as the time
//! discretization of the controlled dynamics `ẋ = tanh(W_t x + τ_t)` acting on
//! a data-label distribution `μ_t(x, y)`. Training solves the first-order
//! optimality system
//!
//! * forward continuity equation for `μ_t` (particles, Monte Carlo
//!   resampling, or finite volumes),
//! * backward transport equation for the adjoint `ψ_t` with terminal datum
//!   `ψ_T = |x − y|²` (upwind finite differences or characteristics),
//! * per-layer fixed-point equation
//!   `θ_t = −(1/2λ) ∫ ∇_θF(x, θ_t)ᵀ ∇_xψ_t(x, y) dμ_t(x, y)`
//!   solved layerwise by bracketed root finding,
//!
//! iterated by a shooting method until consecutive controls stop moving.
//! The crate also ships the measure-theoretic toolbox used to validate the
//! analytic claims behind the scheme: exact Wasserstein-1 distances, kernel
//! density estimation, characteristic flows and resolvent matrices, exact
//! cost gradients, semiconvexity probes, and generalization-gap experiments.
//!
//! The `mfpmp` binary exposes the experiment suite (`train`, `compare`,
//! `double-descent`, `validate`); see the crate README.

pub mod adjoint;
pub mod cost;
pub mod error;
pub mod field;
pub mod finite_volume;
pub mod flow;
pub mod grid;
pub mod kde;
pub mod linalg;
pub mod measure;
pub mod monte_carlo;
pub mod netflow;
pub mod particles;
pub mod rng;
pub mod rootfind;
pub mod shooting;
pub mod spline;
pub mod tasks;
pub mod validate;
pub mod wasserstein;

pub use error::{Error, Result};
pub use field::{ControlParams, ControlPath};
pub use measure::{EmpiricalMeasure, GaussianSpec};
pub use shooting::{ShootingConfig, ShootingReport};
