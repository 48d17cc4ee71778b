use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use super::ratfunc::RatFunc;

/// Automorphism of a Laurent-parameter ring sending `q_k` to
/// `scale[k] * q_{perm[k]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialMap {
    perm: Vec<usize>,
    scale: Vec<BigRational>,
}

impl MonomialMap {
    pub fn identity(nparams: usize) -> Self {
        MonomialMap {
            perm: (0..nparams).collect(),
            scale: vec![BigRational::one(); nparams],
        }
    }

    /// Returns `None` unless `perm` is a permutation and every scale is nonzero.
    pub fn new(perm: Vec<usize>, scale: Vec<BigRational>) -> Option<Self> {
        let m = perm.len();
        if scale.len() != m || scale.iter().any(|s| s.is_zero()) {
            return None;
        }
        let mut seen = vec![false; m];
        for &p in &perm {
            if p >= m || seen[p] {
                return None;
            }
            seen[p] = true;
        }
        Some(MonomialMap { perm, scale })
    }

    /// `q_k ↦ s q_k`, other parameters fixed.
    pub fn scaling(nparams: usize, k: usize, s: BigRational) -> Option<Self> {
        let mut scale = vec![BigRational::one(); nparams];
        scale[k] = s;
        Self::new((0..nparams).collect(), scale)
    }

    pub fn nparams(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn scale(&self) -> &[BigRational] {
        &self.scale
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(k, &p)| k == p) && self.scale.iter().all(|s| s.is_one())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let perm = other.perm.iter().map(|&p| self.perm[p]).collect();
        let scale = other
            .scale
            .iter()
            .zip(&other.perm)
            .map(|(s, &p)| s * &self.scale[p])
            .collect();
        MonomialMap { perm, scale }
    }

    pub fn inverse(&self) -> Self {
        let m = self.perm.len();
        let mut perm = vec![0; m];
        let mut scale = vec![BigRational::one(); m];
        for k in 0..m {
            perm[self.perm[k]] = k;
            scale[self.perm[k]] = self.scale[k].recip();
        }
        MonomialMap { perm, scale }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity(self.nparams());
        for _ in 0..k.unsigned_abs() {
            acc = base.compose(&acc);
        }
        acc
    }

    pub fn apply_laurent(&self, a: &LaurentPoly) -> LaurentPoly {
        if self.is_identity() {
            return a.clone();
        }
        let m = self.perm.len();
        LaurentPoly::from_terms(
            m,
            a.terms().iter().map(|(e, c)| {
                let mut out = vec![0i64; m];
                let mut coef = c.clone();
                for k in 0..m {
                    out[self.perm[k]] += e[k];
                    if e[k] != 0 && !self.scale[k].is_one() {
                        coef *= pow_rational(&self.scale[k], e[k]);
                    }
                }
                (out, coef)
            }),
        )
    }

    pub fn apply_frac(&self, a: &RatFunc) -> RatFunc {
        if self.is_identity() {
            return a.clone();
        }
        RatFunc::new(self.apply_laurent(a.numer()), self.apply_laurent(a.denom()))
    }
}

pub(crate) fn pow_rational(s: &BigRational, e: i64) -> BigRational {
    let base = if e < 0 { s.recip() } else { s.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> BigRational {
        BigRational::from_integer(2.into())
    }

    #[test]
    fn scaling_powers() {
        let m = MonomialMap::scaling(1, 0, two()).unwrap();
        let q = LaurentPoly::param(1, 0);
        let eight_q = q.scale(&BigRational::from_integer(8.into()));
        assert_eq!(m.pow(3).apply_laurent(&q), eight_q);
        let half_q = q.scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(m.pow(-1).apply_laurent(&q), half_q);
    }

    #[test]
    fn inverse_composes_to_identity() {
        let m = MonomialMap::new(vec![1, 2, 0], vec![two(), BigRational::one(), -two()]).unwrap();
        assert!(m.compose(&m.inverse()).is_identity());
        assert!(m.inverse().compose(&m).is_identity());
        assert!(m.pow(3).pow(-1).compose(&m.pow(3)).is_identity());
    }

    #[test]
    fn rejects_non_permutation() {
        assert!(MonomialMap::new(vec![0, 0], vec![two(), two()]).is_none());
        assert!(MonomialMap::new(vec![0], vec![BigRational::zero()]).is_none());
    }
}
