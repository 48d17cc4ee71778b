use super::poly::SkewPoly;
use super::presentation::Presentation;
use crate::coeff::laurent::render_monomial;

impl Presentation {
    /// Renders `f` with terms in descending lexicographic order, e.g.
    /// `q^2*x1^2*d1 + (q+1)*x1`.
    pub fn render(&self, f: &SkewPoly) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let b = self.backend();
        let mut out = String::new();
        for (k, (e, c)) in f.terms().iter().rev().enumerate() {
            let neg = b.is_negative_scalar(c);
            let c = if neg { c.neg() } else { c.clone() };
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mono = render_monomial(e, self.names());
            let coeff = b.render(&c);
            if mono.is_empty() {
                out.push_str(&coeff);
            } else if c.is_one() {
                out.push_str(&mono);
            } else if b.is_compound(&c) {
                out.push_str(&format!("({coeff})*{mono}"));
            } else {
                out.push_str(&format!("{coeff}*{mono}"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use crate::coeff::Backend;
    use crate::ring::{PresentationBuilder, SkewPoly};

    #[test]
    fn renders_descending_with_signs() {
        let b = Backend::laurent(&["q"], 2);
        let q = b.param(0);
        let p = PresentationBuilder::new(b.clone(), vec!["x1".into(), "d1".into()])
            .build()
            .unwrap();
        let f = SkewPoly::from_terms(
            2,
            [
                (vec![2, 1], q.mul(&q)),
                (vec![1, 0], q.add(&b.one())),
                (vec![0, 0], b.from_int(-3)),
                (vec![0, 1], q.neg()),
            ],
        );
        assert_eq!(p.render(&f), "q^2*x1^2*d1 + (q+1)*x1 - q*d1 - 3");
        assert_eq!(p.render(&p.zero()), "0");
        assert_eq!(p.render(&p.var(0).neg()), "-x1");
    }
}
