//! Multivariate Laurent polynomials over the rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by the exponent vector, so the
//! support is always sorted and zero coefficients are never stored. Two
//! polynomials are equal exactly when their maps are equal.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, BigRational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn monomial(nvars: usize, exps: Vec<i64>, c: BigRational) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { nvars, terms }
    }

    /// The parameter `k` itself.
    pub fn param(nvars: usize, k: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k] = 1;
        Self::monomial(nvars, e, BigRational::one())
    }

    pub fn from_terms(nvars: usize, it: impl IntoIterator<Item = (Vec<i64>, BigRational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, BigRational> {
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

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    /// Returns the scalar if the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Single-term view `(exponents, coefficient)`.
    pub fn as_monomial(&self) -> Option<(&[i64], &BigRational)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((e.as_slice(), c))
        } else {
            None
        }
    }

    pub fn add_term(&mut self, e: Vec<i64>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(e.len(), self.nvars);
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
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

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Units of a Laurent polynomial ring are the nonzero scalar monomials.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn inverse(&self) -> Option<Self> {
        let (e, c) = self.as_monomial()?;
        Some(Self::monomial(
            self.nvars,
            e.iter().map(|x| -x).collect(),
            c.recip(),
        ))
    }

    /// Componentwise minimum of the exponents in the support.
    pub fn min_exponents(&self) -> Vec<i64> {
        let mut m: Option<Vec<i64>> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(cur) => cur.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// Lexicographically greatest term.
    pub fn leading(&self) -> Option<(&Vec<i64>, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, v: usize) -> i64 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    /// Coefficient of `x_v^d`, as a polynomial not involving `x_v`.
    pub fn coeff_in(&self, v: usize, d: i64) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[v] == d {
                let mut e2 = e.clone();
                e2[v] = 0;
                out.terms.insert(e2, c.clone());
            }
        }
        out
    }

    /// Exact division of polynomials (nonnegative exponents only).
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let (be, bc) = divisor.leading().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((re, rc)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
            if re.iter().zip(&be).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Vec<i64> = re.iter().zip(&be).map(|(a, b)| a - b).collect();
            let qc = rc / &bc;
            let step = Self::monomial(self.nvars, qe.clone(), qc.clone());
            rem = rem.sub(&step.mul(divisor));
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    /// Scales so that the lexicographically leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Positive rational content: gcd of numerators over lcm of denominators.
    pub fn content(&self) -> BigRational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return BigRational::one();
        }
        BigRational::new(num, den)
    }

    /// Splits `self = s * p` with `p` an integer polynomial of content 1
    /// and positive leading coefficient.
    pub fn integer_primitive(&self) -> (BigRational, Self) {
        let mut s = self.content();
        if let Some((_, c)) = self.leading() {
            if c.is_negative() {
                s = -s;
            }
        }
        (s.clone(), self.scale(&s.recip()))
    }

    /// Monic gcd of two polynomials with nonnegative exponents.
    pub fn gcd(&self, other: &Self) -> Self {
        debug_assert!(self.is_polynomial() && other.is_polynomial());
        poly_gcd(self, other)
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let mono = render_monomial(e, names);
            if mono.is_empty() {
                let _ = write!(out, "{}", render_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                let _ = write!(out, "{}*{}", render_rational(&abs), mono);
            }
        }
        out
    }
}

pub(crate) fn render_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn render_monomial(e: &[i64], names: &[String]) -> String {
    let mut parts = Vec::new();
    for (k, &x) in e.iter().enumerate() {
        match x {
            0 => {}
            1 => parts.push(names[k].clone()),
            _ => parts.push(format!("{}^{}", names[k], x)),
        }
    }
    parts.join("*")
}

fn first_variable(a: &LaurentPoly, b: &LaurentPoly) -> Option<usize> {
    (0..a.nvars).find(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0)
}

/// gcd of the coefficients of `a` viewed as a polynomial in `x_v`.
fn content_in(a: &LaurentPoly, v: usize) -> LaurentPoly {
    let mut g = LaurentPoly::zero(a.nvars);
    for d in 0..=a.degree_in(v) {
        let c = a.coeff_in(v, d);
        if !c.is_zero() {
            g = poly_gcd(&g, &c);
            if g.is_one() {
                break;
            }
        }
    }
    g
}

fn primitive_in(a: &LaurentPoly, v: usize) -> LaurentPoly {
    if a.is_zero() {
        return a.clone();
    }
    let c = content_in(a, v);
    a.div_exact(&c)
        .expect("content divides polynomial")
        .integer_primitive()
        .1
}

/// Pseudo-remainder of `a` by `b` in the variable `x_v`, up to a factor
/// that is a power of the leading coefficient of `b`.
fn pseudo_rem(a: &LaurentPoly, b: &LaurentPoly, v: usize) -> LaurentPoly {
    let db = b.degree_in(v);
    let lb = b.coeff_in(v, db);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.coeff_in(v, dr);
        let mut shift = vec![0; a.nvars];
        shift[v] = dr - db;
        r = lb
            .mul(&r)
            .sub(&lr.mul(&b.shift(&shift)))
            .integer_primitive()
            .1;
    }
    r
}

fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let Some(v) = first_variable(a, b) else {
        return LaurentPoly::one(a.nvars);
    };
    let c = poly_gcd(&content_in(a, v), &content_in(b, v));
    let mut p = primitive_in(a, v);
    let mut q = primitive_in(b, v);
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    let g = loop {
        if q.is_zero() {
            break p;
        }
        if q.degree_in(v) == 0 {
            break LaurentPoly::one(a.nvars);
        }
        let r = pseudo_rem(&p, &q, v);
        p = q;
        q = primitive_in(&r, v);
    };
    c.mul(&primitive_in(&g, v)).monic()
}
