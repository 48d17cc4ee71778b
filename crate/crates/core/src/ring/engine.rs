//! Normal-form multiplication by rewriting words in the letters
//! `x_i` and `x_i^{-1}`.
//!
//! A pending term is `a · w` with `a` a coefficient and `w` a word. The
//! leftmost disorder of `w` (an adjacent pair out of lexicographic order, or
//! `x_i x_i^{-1}`) is rewritten by the defining relations, and any
//! coefficient produced in the middle of the word is pushed to the left
//! through the prefix with `x a = σ(a) x + δ(a)`. Terms with equal words are
//! merged as they appear.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use super::poly::SkewPoly;
use super::presentation::Presentation;
use crate::coeff::Coeff;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Letter {
    var: u16,
    inv: bool,
}

type Word = Vec<Letter>;

fn word_of(t: &[i64]) -> Word {
    let mut w = Vec::with_capacity(t.iter().map(|x| x.unsigned_abs() as usize).sum());
    for (k, &e) in t.iter().enumerate() {
        let l = Letter {
            var: k as u16,
            inv: e < 0,
        };
        w.extend(std::iter::repeat_n(l, e.unsigned_abs() as usize));
    }
    w
}

fn exponents_of(w: &[Letter], n: usize) -> Vec<i64> {
    let mut e = vec![0; n];
    for l in w {
        e[l.var as usize] += if l.inv { -1 } else { 1 };
    }
    e
}

fn first_disorder(w: &[Letter]) -> Option<usize> {
    w.windows(2)
        .position(|p| p[0].var > p[1].var || (p[0].var == p[1].var && p[0].inv != p[1].inv))
}

fn accumulate(map: &mut BTreeMap<Word, Coeff>, w: Word, c: Coeff) {
    if c.is_zero() {
        return;
    }
    match map.entry(w) {
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

impl Presentation {
    /// The product `f g` in left normal form.
    pub fn multiply(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        let mut pending = BTreeMap::new();
        for (t, a) in f.terms() {
            let wt = word_of(t);
            for (l, b) in g.terms() {
                let wl = word_of(l);
                for (c, mut w) in self.push(&wt, b) {
                    w.extend_from_slice(&wl);
                    accumulate(&mut pending, w, a.mul(&c));
                }
            }
        }
        self.reduce(pending)
    }

    /// `f · a` for a coefficient `a`.
    pub fn mul_coeff_right(&self, f: &SkewPoly, a: &Coeff) -> SkewPoly {
        self.multiply(f, &self.constant(a.clone()))
    }

    /// `f^k` for `k ≥ 0`.
    pub fn pow(&self, f: &SkewPoly, k: u32) -> SkewPoly {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.multiply(&acc, f);
        }
        acc
    }

    /// Product of a sequence of polynomials, left to right.
    pub fn product(&self, fs: &[SkewPoly]) -> SkewPoly {
        fs.iter().fold(self.one(), |acc, f| self.multiply(&acc, f))
    }

    fn reduce(&self, mut pending: BTreeMap<Word, Coeff>) -> SkewPoly {
        let mut out = SkewPoly::zero(self.n());
        while let Some((w, a)) = pending.pop_last() {
            let Some(p) = first_disorder(&w) else {
                out.add_term(exponents_of(&w, self.n()), a);
                continue;
            };
            for (c, mid) in self.rewrite(w[p], w[p + 1]) {
                for (c2, mut nw) in self.push(&w[..p], &c) {
                    nw.extend_from_slice(&mid);
                    nw.extend_from_slice(&w[p + 2..]);
                    accumulate(&mut pending, nw, a.mul(&c2));
                }
            }
        }
        out
    }

    /// Writes `prefix · c` as `Σ c_k · w_k`.
    fn push(&self, prefix: &[Letter], c: &Coeff) -> Vec<(Coeff, Word)> {
        if c.is_zero() {
            return Vec::new();
        }
        let b = self.backend();
        if !b.has_derivations() {
            let mut c = c.clone();
            let mut k = prefix.len();
            while k > 0 {
                let l = prefix[k - 1];
                let mut run = 1;
                while run < k && prefix[k - run - 1] == l {
                    run += 1;
                }
                let power = if l.inv { -(run as i64) } else { run as i64 };
                c = b.sigma(l.var as usize, &c, power);
                k -= run;
            }
            return vec![(c, prefix.to_vec())];
        }
        let mut states: BTreeMap<Word, Coeff> = BTreeMap::new();
        states.insert(Vec::new(), c.clone());
        for &l in prefix.iter().rev() {
            let mut next = BTreeMap::new();
            for (suffix, a) in states {
                let i = l.var as usize;
                let mut kept = Vec::with_capacity(suffix.len() + 1);
                kept.push(l);
                kept.extend_from_slice(&suffix);
                if l.inv {
                    accumulate(&mut next, kept, b.sigma(i, &a, -1));
                } else {
                    accumulate(&mut next, kept, b.sigma(i, &a, 1));
                    accumulate(&mut next, suffix, b.delta(i, &a));
                }
            }
            states = next;
        }
        states.into_iter().map(|(w, a)| (a, w)).collect()
    }

    /// Right-hand side of the relation for an out-of-order adjacent pair.
    fn rewrite(&self, left: Letter, right: Letter) -> Vec<(Coeff, Word)> {
        let b = self.backend();
        if left.var == right.var {
            return vec![(b.one(), Vec::new())];
        }
        let (j, i) = (left.var as usize, right.var as usize);
        let c = self.c(j, i);
        let inv = |x: Coeff| {
            x.inverse()
                .expect("Laurent commutation coefficients are units")
        };
        let swapped = vec![right, left];
        match (left.inv, right.inv) {
            (false, false) => {
                let mut out = vec![(c.clone(), swapped)];
                if let Some(d) = self.d(j, i) {
                    out.extend(d.terms().iter().map(|(t, a)| (a.clone(), word_of(t))));
                }
                out
            }
            (false, true) => vec![(inv(b.sigma(i, c, -1)), swapped)],
            (true, false) => vec![(inv(b.sigma(j, c, -1)), swapped)],
            (true, true) => vec![(b.sigma(i, &b.sigma(j, c, -1), -1), swapped)],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }
    use crate::coeff::Backend;
    use crate::ring::PresentationBuilder;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn quantum_plane() -> Presentation {
        let b = Backend::laurent(&["q"], 2);
        let q = b.param(0);
        PresentationBuilder::new(b, names(&["x1", "x2"]))
            .c(1, 0, q)
            .build()
            .unwrap()
    }

    #[test]
    fn quantum_plane_swap() {
        let p = quantum_plane();
        let prod = p.multiply(&p.var(1), &p.var(0));
        let q = p.backend().param(0);
        assert_eq!(prod, SkewPoly::monomial(vec![1, 1], q));
    }

    #[test]
    fn identity_is_neutral() {
        let p = quantum_plane();
        let f = p.var(1).add(&p.monomial(&[2, 1]));
        assert_eq!(p.multiply(&p.one(), &f), f);
        assert_eq!(p.multiply(&f, &p.one()), f);
        assert!(p.multiply(&p.zero(), &f).is_zero());
    }

    #[test]
    fn q_derivative_on_square() {
        // ∂ x = q x ∂ + 1
        let b = Backend::laurent(&["q"], 2);
        let q = b.param(0);
        let one = b.one();
        let p = PresentationBuilder::new(b.clone(), names(&["x1", "d1"]))
            .c(1, 0, q.clone())
            .d(1, 0, SkewPoly::constant(2, one.clone()))
            .build()
            .unwrap();
        let x2 = p.monomial(&[2, 0]);
        let prod = p.multiply(&p.var(1), &x2);
        let expect = SkewPoly::from_terms(2, [(vec![2, 1], q.mul(&q)), (vec![1, 0], q.add(&one))]);
        assert_eq!(prod, expect);
    }

    #[test]
    fn laurent_inverse_cancels() {
        let p = quantum_plane().with_laurent(2).unwrap();
        let x = p.var(0);
        let xi = p.monomial(&[-1, 0]);
        assert_eq!(p.multiply(&x, &xi), p.one());
        assert_eq!(p.multiply(&xi, &x), p.one());
        // x2^{-1} x1 = q^{-1} x1 x2^{-1}
        let prod = p.multiply(&p.monomial(&[0, -1]), &p.var(0));
        let q = p.backend().param(0);
        assert_eq!(prod, SkewPoly::monomial(vec![1, -1], q.inverse().unwrap()));
    }

    #[test]
    fn coefficients_pass_through_sigma_and_delta() {
        // x t = 2 t x + 1 on the coefficient ring Q[t^{±1}]
        let b = Backend::laurent(&["t"], 1);
        let map = crate::coeff::MonomialMap::scaling(1, 0, rat(2)).unwrap();
        let b = b.with_sigma(0, map).unwrap();
        let one = b.one();
        let b = b.with_delta(0, vec![one.clone()]).unwrap();
        let p = PresentationBuilder::new(b.clone(), names(&["x"]))
            .build()
            .unwrap();
        let t = b.param(0);
        let prod = p.mul_coeff_right(&p.var(0), &t);
        let expect = SkewPoly::from_terms(1, [(vec![1], t.mul(&b.from_int(2))), (vec![0], one)]);
        assert_eq!(prod, expect);
    }
}
