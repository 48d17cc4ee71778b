//! Bundled example rings.

use crate::document::{parse_document, RingDocument};
use crate::error::{Error, Result};

/// `(name, document text)` in presentation order.
pub const ENTRIES: [(&str, &str); 6] = [
    (
        "quantum-plane",
        include_str!("../catalog/quantum-plane.json"),
    ),
    (
        "quantum-torus",
        include_str!("../catalog/quantum-torus.json"),
    ),
    (
        "multiplicative-weyl",
        include_str!("../catalog/multiplicative-weyl.json"),
    ),
    ("skew-3dim", include_str!("../catalog/skew-3dim.json")),
    ("diffusion", include_str!("../catalog/diffusion.json")),
    ("dqsq", include_str!("../catalog/dqsq.json")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|(n, _)| *n)
}

pub fn source(name: &str) -> Option<&'static str> {
    ENTRIES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn load(name: &str) -> Result<RingDocument> {
    let text = source(name).ok_or_else(|| {
        Error::Schema(format!(
            "unknown catalog entry '{name}' (available: {})",
            names().collect::<Vec<_>>().join(", ")
        ))
    })?;
    parse_document(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::print_document;

    #[test]
    fn every_entry_is_valid_and_round_trips() {
        for name in names() {
            let doc = load(name).unwrap();
            assert_eq!(doc.name.as_deref(), Some(name));
            let report = doc.ring().unwrap().validate();
            assert!(report.is_valid(), "{name}: {:?}", report.violations);
            assert_eq!(
                parse_document(&print_document(&doc)).unwrap(),
                doc,
                "{name}"
            );
        }
    }

    #[test]
    fn diffusion_has_lower_terms() {
        let doc = load("diffusion").unwrap();
        let p = &doc.presentation;
        assert_eq!(p.d_entries().len(), 3);
        assert_eq!(p.render(p.d(1, 0).unwrap()), "-x2*D1 + x1*D2");
    }

    #[test]
    fn dqsq_product() {
        let p = load("dqsq").unwrap().ring().unwrap();
        let f = p.multiply(&p.var(1), &p.pow(&p.var(0), 2));
        assert_eq!(p.render(&f), "q^2*x1^2*d1 + (q+1)*x1");
    }

    #[test]
    fn unknown_entry() {
        assert!(matches!(load("weyl"), Err(Error::Schema(_))));
    }
}
