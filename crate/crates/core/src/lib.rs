//! Skew PBW extensions: exact arithmetic, presentation checks, endomorphism
//! classification, and localization of quasi-commutative rings.
//!
//! ```
//! use skewpbw::catalog;
//!
//! let p = catalog::load("dqsq").unwrap().ring().unwrap();
//! let f = p.multiply(&p.var(1), &p.pow(&p.var(0), 2));
//! assert_eq!(p.render(&f), "q^2*x1^2*d1 + (q+1)*x1");
//! ```

pub mod catalog;
pub mod coeff;
pub mod document;
pub mod error;
pub mod localization;
pub mod morphism;
pub mod quasi;
pub mod ring;
pub mod units;

pub use coeff::{Backend, BackendKind, Coeff, LaurentPoly, MonomialMap, RatFunc};
pub use document::{
    parse_coeff, parse_document, parse_poly, print_document, Directives, RingDocument,
};
pub use error::{Error, Result};
pub use localization::{
    build_quantum_laurent, classify_over_ore, classify_quantum, laurent_commutation,
    localize_coefficients, Localization,
};
pub use morphism::{
    alev_chamarie_linear_check, classify_filtered, classify_quasi_commutative, invert_diagonal,
    validate_endomorphism, Classification, Endomorphism,
};
pub use quasi::{
    associated_graded, closed_form_coefficient, from_iterated_skew, to_iterated_skew,
    unit_class_of_product, IteratedSkewData, ProductClass, SkewStep,
};
pub use ring::{
    Constraint, ExponentVector, Presentation, PresentationBuilder, SkewPoly, ValidationReport,
    Violation,
};
pub use units::{Certificate, Independence, UnitGroup, UnitLog, DEFAULT_PRIME_BOUND};
