//! Polynomial invariants: Jones through the Kauffman bracket, Alexander
//! through Fox calculus on the Wirtinger presentation, and Conway
//! polynomials of explicit Seifert matrices.

mod alexander;
mod bracket;
mod det;
mod seifert;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::Diagram;
use crate::laurent::LaurentError;

pub use alexander::{alexander, conway};
pub use bracket::{jones, kauffman_bracket};
pub use det::{det_bareiss, det_cofactor, determinant};
pub use seifert::{alexander_from_seifert, conway_from_seifert, SeifertMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("Alexander and Conway polynomials are computed for knots only; diagram has {0} components")]
    NotAKnot(usize),
    #[error("Seifert matrix must be square, got {rows} rows with a row of length {len}")]
    NotSquare { rows: usize, len: usize },
    #[error("Alexander polynomial failed a consistency check: {0}")]
    Inconsistent(#[from] LaurentError),
}

/// Outcome of the unknot test. Only the first variant is a proof.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum UnknotCertificate {
    /// Reidemeister I/II moves reduce the diagram to no crossings.
    TriviallyCertified,
    /// Alexander and Jones polynomials are both trivial.
    PolynomialTrivial,
    NontrivialPolynomial,
}

impl UnknotCertificate {
    pub fn is_trivial(self) -> bool {
        self != UnknotCertificate::NontrivialPolynomial
    }
}

pub fn unknot_certificate(d: &Diagram) -> Result<UnknotCertificate, InvariantError> {
    let reduced = d.simplify();
    if reduced.crossing_count() == 0 {
        return Ok(UnknotCertificate::TriviallyCertified);
    }
    // Alexander is polynomial time; the state sum only runs when it is trivial
    if !alexander(&reduced)?.is_one() || !jones(&reduced).is_one() {
        return Ok(UnknotCertificate::NontrivialPolynomial);
    }
    Ok(UnknotCertificate::PolynomialTrivial)
}
