//! Noncommutative polynomial arithmetic over generator/relation presentations:
//! normal forms, the algebra product, the involution, homomorphisms, matrices
//! over the algebra, and the textual dump grammar.

mod dump;
mod hom;
mod matrix;
mod poly;
mod presentation;
#[cfg(test)]
mod tests;
mod word;

pub use dump::{fmt_word, parse_poly, parse_word, word_to_string};
pub use hom::{apply_hom, lambda_specialize, torus_embed, AlgebraHom};
pub use matrix::AlgMatrix;
pub use poly::{nc_adjoint, nc_mul, normal_form, scalar_part, Coeff, NCPoly};
pub use presentation::{PresId, PresKind, Presentation, RawPoly};
pub use word::{GenIdx, Word};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("operation requires a confluent presentation, `{0}` is relational")]
    UnsupportedKind(String),
    #[error("presentation mismatch: `{0}` vs `{1}`")]
    PresentationMismatch(String, String),
    #[error("images do not satisfy source presentation: {0}")]
    NotAHomomorphism(String),
    #[error("scalar part undefined for trig-valued coefficients")]
    TrigScalarPart,
    #[error("parse error at byte {0}: {1}")]
    Parse(usize, String),
    #[error("matrix shape error: {0}")]
    Shape(String),
}
