//! Simulation and verification laboratory for nonsingular group actions.
//!
//! The crate implements a small zoo of concrete dynamical systems — the free
//! group F₂ acting on its boundary of infinite reduced words, Möbius
//! transformations acting on the projective line, the rational affine group
//! acting on ℝ, the dyadic adding machine, and lazy lattice walks — together
//! with the exact measures that live on them (cylinder measures, Bernoulli
//! product measures, the Cauchy law) and the random-walk / Markov-operator
//! machinery needed to probe them: convolution powers, Cesàro averages,
//! conditional-measure estimates, and ergodicity/proximality testers.
//!
//! Arithmetic policy: group operations, cylinder masses, and invariant
//! statistics use exact rationals ([`Rat`]); Monte Carlo estimates use `f64`.
//! Every statistical verdict carries its seeds and thresholds and is labeled
//! as evidence, never as proof.

pub mod config;
pub mod dd;
pub mod error;
pub mod experiments;
pub mod measures;
pub mod mixing;
pub mod operators;
pub mod randomwalk;
pub mod report;
pub mod rng;
pub mod systems;

pub use error::{Error, Result};

/// Exact rational scalar used throughout the exact-arithmetic backend.
pub type Rat = num::BigRational;

/// Convenience constructor for small rationals.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Equality tolerance for floating projective points.
pub const TAU_EQ: f64 = 1e-12;
