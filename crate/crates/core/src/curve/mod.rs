//! Exact algebraic-curve backends.
//!
//! These oracles use the classical closed forms for the rank on curves of
//! genus 0 and 1. Those closed forms are themselves consequences of
//! Riemann-Roch, so checking the theorem against them is a consistency
//! exercise for the checkers; the graph backend is the independent one.

mod elliptic;
mod field;
mod projective;

pub use elliptic::{CurvePoint, CurveSpec, EllipticCurve, EllipticOracle};
pub use field::PrimeField;
pub use projective::ProjectiveLineOracle;
