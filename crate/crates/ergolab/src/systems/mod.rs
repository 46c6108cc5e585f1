//! Group elements and their actions on the concrete spaces of the lab:
//! F₂ on truncated boundary words, Möbius maps on the projective line,
//! the rational affine group on ℝ, the adding machine on binary sequences,
//! and translations on ℤᵈ.

pub mod affine;
pub mod free;
pub mod lattice;
pub mod mobius;
pub mod odometer;
pub mod schottky;

pub use affine::AffineElement;
pub use free::{boundary_act, word_mul, BoundaryPoint, FreeWord, Letter};
pub use lattice::LatticePoint;
pub use mobius::{apply_f64, cross_ratio, cross_ratio_after_word_dd, cross_ratio_exact, mobius_apply, word_to_dd, word_to_f64, word_to_mobius, MobiusMap, ProjPointQ, ProjectivePoint};
pub use odometer::{odometer_step, OdometerPoint};
pub use schottky::{schottky_pair, Arc, SchottkyPair};

use std::hash::Hash;

/// A group element usable as the support of a step distribution.
///
/// `Ord` gives the canonical encoding used for deterministic tie-breaks when
/// convolution tables are truncated.
pub trait Group: Clone + Eq + Ord + Hash {
    fn identity() -> Self;
    fn op(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
}
