//! Presentations, normal-form polynomials and the rewriting multiplier.

mod display;
mod engine;
mod poly;
mod presentation;
mod validate;

pub use poly::{ExponentVector, SkewPoly};
pub use presentation::{Presentation, PresentationBuilder};
pub use validate::{Constraint, ValidationReport, Violation};
