//! Numerical laboratory for partially concentrating standing waves of a
//! weakly coupled cubic Schrödinger system
//!
//! ```text
//!   -Δu + V(x) u = μ₁ u³ + β u v²        in R^N,
//!   -ε²Δv + W(x) v = μ₂ v³ + β v u²      in R^N,
//! ```
//!
//! in the singularly perturbed regime ε → 0 with β < 0. The second component
//! develops two spikes at ±P_ε collapsing to the origin while the first stays
//! at unit scale. This crate builds every constructive ingredient at desk
//! scale: scalar ground states, the Φ/Ψ correction terms, the two-spike
//! ansatz with its error fields, the projected corrector solved by a bordered
//! Newton iteration, the reduced peak-location equation, and the overlap
//! integrals that set its constants.
//!
//! Everything runs on uniform finite-difference grids (second-order stencils,
//! banded direct factorizations) over symmetry-reduced domains: radial grids
//! for the scalar profiles, a quarter plane (N=2) or half cylinder (N=3) for
//! fields even in each variable.

// pub mod ansatz;
pub mod asymptotics;
pub mod band;
// pub mod checkpoint;
// pub mod corrections;
// pub mod corrector;
// pub mod coupled;
pub mod error;
pub mod field;
pub mod grid;
pub mod groundstate;
pub mod interp;
pub mod operators;
pub mod potential;
pub mod profile;
pub mod quad;
// pub mod reduced;
// pub mod report;
pub mod rng;
pub mod spectral;

pub use error::{Error, Result};
