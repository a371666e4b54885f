#![cfg_attr(not(test), no_std)]

//! Physics kernels for modelling a 2.45 GHz high-power-microwave
//! counter-UAS engagement.
//!
//! The crate covers free-space propagation and parabolic-antenna math,
//! electric-field coupling to unshielded wiring harnesses, sigmoid
//! semiconductor damage probabilities with system-level aggregation,
//! rectangular-waveguide mode and attenuation analysis, composite design
//! studies (kill curves, trade-space maps, safety distances, thermal and
//! dwell budgets), and a reproducible Monte Carlo campaign engine with
//! exact Clopper-Pearson confidence intervals.
//!
//! Everything here is a pure function of its inputs: no globals, no
//! interior mutability, safe to call from any number of threads. The crate
//! is `no_std` (with `alloc`); float transcendentals are routed through
//! `libm`.

extern crate alloc;

pub mod analyses;
pub mod constants;
pub mod coupling;
pub mod damage;
mod error;
mod math;
pub mod montecarlo;
pub mod physics;
pub mod rng;
pub mod stats;
pub mod waveguide;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
