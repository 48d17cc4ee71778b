use std::collections::BTreeMap;

use super::poly::SkewPoly;
use crate::coeff::{Backend, Coeff};
use crate::error::{Error, Result};

/// A skew PBW extension `σ(R)⟨x_1, …, x_n⟩`, or its Laurent version when
/// `r > 0`, given by
///
/// * `x_i a = σ_i(a) x_i + δ_i(a)` (tables in the backend),
/// * `x_j x_i = c_{j,i} x_i x_j + d_{j,i}` for `j > i`, `d_{j,i}` of degree ≤ 1,
/// * `x_i x_i^{-1} = x_i^{-1} x_i = 1` for `i < r`.
///
/// Indices are 0-based in the API.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    n: usize,
    r: usize,
    backend: Backend,
    names: Vec<String>,
    /// `c[a][b]` is the coefficient in `x_a x_b = c[a][b] x_b x_a + …`.
    c: Vec<Vec<Option<Coeff>>>,
    d: BTreeMap<(usize, usize), SkewPoly>,
}

/// Collects relations before the checks in [`PresentationBuilder::build`].
#[derive(Clone, Debug)]
pub struct PresentationBuilder {
    backend: Backend,
    names: Vec<String>,
    r: usize,
    c: BTreeMap<(usize, usize), Coeff>,
    d: BTreeMap<(usize, usize), SkewPoly>,
}

impl PresentationBuilder {
    pub fn new(backend: Backend, names: Vec<String>) -> Self {
        PresentationBuilder {
            backend,
            names,
            r: 0,
            c: BTreeMap::new(),
            d: BTreeMap::new(),
        }
    }

    pub fn laurent(mut self, r: usize) -> Self {
        self.r = r;
        self
    }

    /// Sets `c_{a,b}` for any ordered pair, including `a < b` and `a = b`.
    pub fn c(mut self, a: usize, b: usize, c: Coeff) -> Self {
        self.c.insert((a, b), c);
        self
    }

    /// Sets `d_{j,i}` for `j > i`.
    pub fn d(mut self, j: usize, i: usize, d: SkewPoly) -> Self {
        self.d.insert((j, i), d);
        self
    }

    pub fn build(self) -> Result<Presentation> {
        let n = self.names.len();
        let bad = |m: String| Err(Error::InvalidPresentation(m));
        if self.backend.nvars() != n {
            return bad(format!(
                "backend carries {} automorphisms for {n} variables",
                self.backend.nvars()
            ));
        }
        if self.r > n {
            return bad(format!("Laurent count {} exceeds {n}", self.r));
        }
        for (&(a, b), v) in &self.c {
            if a >= n || b >= n {
                return bad(format!("c index ({}, {}) out of range", a + 1, b + 1));
            }
            self.backend.check(v)?;
            if v.is_zero() {
                return bad(format!("c_{{{},{}}} is zero", a + 1, b + 1));
            }
        }
        let mut c = vec![vec![None; n]; n];
        for (j, row) in c.iter_mut().enumerate() {
            for (i, slot) in row.iter_mut().enumerate() {
                if let Some(v) = self.c.get(&(j, i)) {
                    *slot = Some(v.clone());
                } else if j >= i {
                    *slot = Some(self.backend.one());
                }
            }
        }
        for j in 0..n {
            for i in 0..j {
                if c[i][j].is_none() {
                    c[i][j] = c[j][i].as_ref().and_then(Coeff::inverse);
                }
            }
        }
        let mut d = BTreeMap::new();
        for ((j, i), p) in self.d {
            if j >= n || i >= j {
                return bad(format!("d index ({}, {}) must satisfy j > i", j + 1, i + 1));
            }
            if p.nvars() != n {
                return bad(format!("d_{{{},{}}} has the wrong arity", j + 1, i + 1));
            }
            for (e, v) in p.terms() {
                self.backend.check(v)?;
                if e.iter().any(|&x| x < 0) || e.iter().sum::<i64>() > 1 {
                    return bad(format!(
                        "d_{{{},{}}} must lie in R + Rx_1 + ... + Rx_n",
                        j + 1,
                        i + 1
                    ));
                }
            }
            if !p.is_zero() {
                d.insert((j, i), p);
            }
        }
        let p = Presentation {
            n,
            r: self.r,
            backend: self.backend,
            names: self.names,
            c,
            d,
        };
        if p.r > 0 {
            if !p.is_quasi_commutative() {
                return bad("Laurent variables need a quasi-commutative presentation".into());
            }
            for k in 0..p.r {
                for other in 0..n {
                    if !p.c_entry(other, k).is_some_and(Coeff::is_unit) {
                        return bad(format!(
                            "c_{{{},{}}} must be a unit for the Laurent variable x{}",
                            other + 1,
                            k + 1,
                            k + 1
                        ));
                    }
                }
            }
        }
        Ok(p)
    }
}

impl Presentation {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// `c_{j,i}` for `j > i`, always present.
    pub fn c(&self, j: usize, i: usize) -> &Coeff {
        debug_assert!(j > i);
        self.c[j][i]
            .as_ref()
            .expect("lower commutation coefficients exist")
    }

    /// Any entry of the commutation matrix, if known.
    pub fn c_entry(&self, a: usize, b: usize) -> Option<&Coeff> {
        self.c[a][b].as_ref()
    }

    pub fn d(&self, j: usize, i: usize) -> Option<&SkewPoly> {
        self.d.get(&(j, i))
    }

    pub fn d_entries(&self) -> &BTreeMap<(usize, usize), SkewPoly> {
        &self.d
    }

    pub fn is_quasi_commutative(&self) -> bool {
        self.d.is_empty() && !self.backend.has_derivations()
    }

    /// Every `σ_i` is invertible by construction, so bijectivity reduces to
    /// the lower coefficients `c_{j,i}` being units.
    pub fn is_bijective(&self) -> bool {
        (0..self.n).all(|j| (0..j).all(|i| self.c(j, i).is_unit()))
    }

    pub fn is_laurent(&self) -> bool {
        self.r > 0
    }

    /// Same relations with `r` replaced; rechecks the Laurent constraints.
    pub fn with_laurent(&self, r: usize) -> Result<Presentation> {
        let mut b = PresentationBuilder::new(self.backend.clone(), self.names.clone()).laurent(r);
        for a in 0..self.n {
            for bb in 0..self.n {
                if let Some(v) = &self.c[a][bb] {
                    b = b.c(a, bb, v.clone());
                }
            }
        }
        for (&(j, i), p) in &self.d {
            b = b.d(j, i, p.clone());
        }
        b.build()
    }

    /// Same shape over another backend, coefficients mapped by `f`.
    pub fn map_coefficients(
        &self,
        backend: Backend,
        f: impl Fn(&Coeff) -> Coeff,
    ) -> Result<Presentation> {
        let mut b = PresentationBuilder::new(backend, self.names.clone()).laurent(self.r);
        for a in 0..self.n {
            for bb in 0..self.n {
                if let Some(v) = &self.c[a][bb] {
                    b = b.c(a, bb, f(v));
                }
            }
        }
        for (&(j, i), p) in &self.d {
            b = b.d(j, i, p.map_coeffs(&f));
        }
        b.build()
    }

    /// Copy with all `d_{j,i}` and all `δ_i` removed.
    pub(crate) fn strip_lower_terms(&self, backend: Backend) -> Presentation {
        Presentation {
            n: self.n,
            r: self.r,
            backend,
            names: self.names.clone(),
            c: self.c.clone(),
            d: BTreeMap::new(),
        }
    }

    pub fn zero(&self) -> SkewPoly {
        SkewPoly::zero(self.n)
    }

    pub fn one(&self) -> SkewPoly {
        SkewPoly::constant(self.n, self.backend.one())
    }

    pub fn constant(&self, c: Coeff) -> SkewPoly {
        SkewPoly::constant(self.n, c)
    }

    pub fn var(&self, i: usize) -> SkewPoly {
        SkewPoly::var_power(self.n, i, 1, self.backend.one())
    }

    /// `x^t` with unit coefficient.
    pub fn monomial(&self, t: &[i64]) -> SkewPoly {
        SkewPoly::monomial(t.to_vec(), self.backend.one())
    }

    /// Checks the Laurent exponent pattern.
    pub fn check_exponents(&self, t: &[i64]) -> Result<()> {
        if t.len() != self.n {
            return Err(Error::InvalidExponent(format!(
                "expected {} exponents, got {}",
                self.n,
                t.len()
            )));
        }
        if let Some(k) = (self.r..self.n).find(|&k| t[k] < 0) {
            return Err(Error::InvalidExponent(format!(
                "negative exponent on non-Laurent variable {}",
                self.names[k]
            )));
        }
        Ok(())
    }

    pub fn check_poly(&self, f: &SkewPoly) -> Result<()> {
        if f.nvars() != self.n {
            return Err(Error::InvalidPresentation(
                "polynomial arity differs".into(),
            ));
        }
        for (e, c) in f.terms() {
            self.check_exponents(e)?;
            self.backend.check(c)?;
        }
        Ok(())
    }

    /// Total degree; the filtration is only defined without Laurent variables.
    pub fn degree(&self, f: &SkewPoly) -> Result<i64> {
        if self.r > 0 {
            return Err(Error::LaurentUnsupported);
        }
        f.total_degree()
    }

    pub fn in_filtration(&self, f: &SkewPoly, m: i64) -> Result<bool> {
        if self.r > 0 {
            return Err(Error::LaurentUnsupported);
        }
        Ok(f.is_zero() || f.total_degree()? <= m)
    }
}
