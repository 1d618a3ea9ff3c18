//! Exact symbolic verification engine for the algebra of theta-deformed
//! 4-spheres and noncommutative tori.
//!
//! The engine mechanizes, in exact arithmetic (Gaussian rationals extended by
//! a formal unit-modulus phase λ), a family of algebraic identities:
//!
//! * Chern-character components of idempotents in the normalized (b,B)
//!   bicomplex, and their vanishing for the canonical sphere idempotent;
//! * Clifford-algebra idempotents on even spheres and their trace identities;
//! * the symbolic Dirac commutator calculus on the deformed 4-sphere and the
//!   quartic identity `<(e - 1/2)[D,e]^4> = c·γ₅`;
//! * the bigraded twist calculus of isospectral deformations (left/right
//!   twists, star products, the twisted antiunitary, the order-one condition);
//! * bounded-degree two-sided ideal membership with explicit witnesses.
//!
//! Every symbolic result is cross-checkable against an independent numeric
//! oracle built from clock and shift matrices at rational deformation values.

pub mod algebra;
pub mod chains;
pub mod clifford;
pub mod deform;
pub mod membership;
pub mod oracle;
pub mod report;
pub mod scalar;
pub mod spectral;
pub mod suites;
#[cfg(test)]
pub(crate) mod testutil;
pub mod trig;

pub use algebra::{nc_adjoint, nc_mul, normal_form, scalar_part, AlgebraError, NCPoly, Presentation, Word};
pub use scalar::{GaussianRational, PhaseScalar};
