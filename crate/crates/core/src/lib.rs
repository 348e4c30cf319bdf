//! Exact knot polynomials from planar diagrams, clasp-number obstructions
//! derived from the Conway polynomial, and the `K_n` twist family built on
//! the knot `10_97`.

pub mod clasp;
pub mod diagram;
pub mod family;
pub mod invariants;
pub mod laurent;
pub mod tables;
mod unionfind;

pub use diagram::{Crossing, Diagram, DiagramError, PdCode, Sign};
pub use laurent::{LaurentError, LaurentPoly};
