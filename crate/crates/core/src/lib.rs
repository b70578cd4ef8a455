//! Extended symmetric unions of knots.
//!
//! Builds knots of the form `N(rot(T) + (D + D*))` from tangle data, computes
//! their Alexander polynomials exactly through Fox calculus on Wirtinger
//! presentations, and checks the two structural facts these knots satisfy:
//! the factorization `Δ_K = Δ_{N(T)} · Δ_{K̂}²` and the existence of a
//! meridian-preserving epimorphism `G(K) → G(K̂)` that kills the longitude.

pub mod alexander;
pub mod catalog;
pub mod construct;
pub mod epi;
pub mod error;
pub mod expr;
pub mod freeword;
pub mod laurent;
pub mod par;
pub mod tangle;
pub mod wirtinger;

pub use error::{Error, Result};
pub use freeword::{Letter, Presentation, Word};
pub use laurent::LaurentPoly;
pub use tangle::{ClosedDiagram, ConnectivityPattern, Diagram, Tangle};
