use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::coeff::Coeff;
use crate::error::{Error, Result};

/// Exponents of `x_1^{t_1} ⋯ x_n^{t_n}`; the derived `Ord` on `Vec<i64>` is
/// the lexicographic order used throughout.
pub type ExponentVector = Vec<i64>;

/// `Σ a_t x^t` in left normal form. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewPoly {
    n: usize,
    terms: BTreeMap<ExponentVector, Coeff>,
}

impl SkewPoly {
    pub fn zero(n: usize) -> Self {
        SkewPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Coeff) -> Self {
        Self::monomial(vec![0; n], c)
    }

    pub fn monomial(exps: ExponentVector, c: Coeff) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// `c · x_i^k`.
    pub fn var_power(n: usize, i: usize, k: i64, c: Coeff) -> Self {
        let mut e = vec![0; n];
        e[i] = k;
        Self::monomial(e, c)
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (ExponentVector, Coeff)>) -> Self {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<ExponentVector, Coeff> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[i64]) -> Option<&Coeff> {
        self.terms.get(e)
    }

    pub fn add_term(&mut self, e: ExponentVector, c: Coeff) {
        debug_assert_eq!(e.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        SkewPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Left scalar multiple `a · f`.
    pub fn scale_left(&self, a: &Coeff) -> Self {
        Self::from_terms(
            self.n,
            self.terms.iter().map(|(e, c)| (e.clone(), a.mul(c))),
        )
    }

    pub fn map_coeffs(&self, f: impl Fn(&Coeff) -> Coeff) -> Self {
        Self::from_terms(self.n, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    /// Lexicographically greatest term.
    pub fn leading_term(&self) -> Result<(&ExponentVector, &Coeff)> {
        self.terms.iter().next_back().ok_or(Error::ZeroPolynomial)
    }

    /// Lexicographically least term.
    pub fn smallest_term(&self) -> Result<(&ExponentVector, &Coeff)> {
        self.terms.iter().next().ok_or(Error::ZeroPolynomial)
    }

    /// Maximum total degree over the support. Callers check the Laurent case.
    pub fn total_degree(&self) -> Result<i64> {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .ok_or(Error::ZeroPolynomial)
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous(&self, d: i64) -> Self {
        Self::from_terms(
            self.n,
            self.terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<i64>() == d)
                .map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    pub fn constant_term(&self) -> Option<&Coeff> {
        self.terms.get(&vec![0; self.n])
    }

    /// The single term, if the polynomial is one.
    pub fn as_monomial(&self) -> Option<(&ExponentVector, &Coeff)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|e| e.iter().any(|&x| x < 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> Coeff {
        Coeff::rat(n)
    }

    #[test]
    fn leading_and_smallest() {
        let f = SkewPoly::from_terms(2, [(vec![1, 1], c(3)), (vec![0, 4], c(5))]);
        assert_eq!(f.leading_term().unwrap(), (&vec![1, 1], &c(3)));
        assert_eq!(f.smallest_term().unwrap(), (&vec![0, 4], &c(5)));
        let g = SkewPoly::from_terms(1, [(vec![-1], c(1)), (vec![1], c(1))]);
        assert_eq!(g.smallest_term().unwrap().0, &vec![-1]);
        assert_eq!(SkewPoly::zero(2).leading_term(), Err(Error::ZeroPolynomial));
        let single = SkewPoly::monomial(vec![2, 0], c(7));
        assert_eq!(
            single.leading_term().unwrap(),
            single.smallest_term().unwrap()
        );
    }

    #[test]
    fn cancellation_removes_terms() {
        let f = SkewPoly::monomial(vec![1, 0], c(2));
        assert!(f.sub(&f).is_zero());
        assert_eq!(f.add(&f).coeff(&[1, 0]), Some(&c(4)));
    }

    #[test]
    fn degrees() {
        let f = SkewPoly::from_terms(3, [(vec![1, 1, 0], c(1)), (vec![0, 0, 1], c(1))]);
        assert_eq!(f.total_degree().unwrap(), 2);
        assert_eq!(f.homogeneous(1), SkewPoly::monomial(vec![0, 0, 1], c(1)));
    }
}
