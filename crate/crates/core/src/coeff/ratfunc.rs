//! Rational functions in the backend parameters, the fraction field of the
//! Laurent-parameter ring.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::LaurentPoly;

/// Reduced fraction `num / den` of polynomials with nonnegative exponents,
/// `gcd(num, den) = 1` and `den` monic in lex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn zero(nvars: usize) -> Self {
        RatFunc {
            num: LaurentPoly::zero(nvars),
            den: LaurentPoly::one(nvars),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(LaurentPoly::one(nvars))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let n = p.nvars();
        Self::new(p, LaurentPoly::one(n))
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::from_poly(LaurentPoly::constant(nvars, c))
    }

    /// Builds `num / den` from arbitrary Laurent polynomials. Panics on a zero
    /// denominator.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let n = num.nvars();
        if num.is_zero() {
            return Self::zero(n);
        }
        let mn = num.min_exponents();
        let md = den.min_exponents();
        let shift: Vec<i64> = mn.iter().zip(&md).map(|(a, b)| -(*a.min(b))).collect();
        let num = num.shift(&shift);
        let den = den.shift(&shift);
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lc = den.leading().map(|(_, c)| c.clone()).unwrap();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The Laurent polynomial this fraction equals, if any.
    pub fn as_laurent(&self) -> Option<LaurentPoly> {
        let (e, c) = self.den.as_monomial()?;
        let inv = LaurentPoly::monomial(self.nvars(), e.iter().map(|x| -x).collect(), c.recip());
        Some(self.num.mul(&inv))
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone());
        }
        Self::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.den.is_one() {
            return self.num.render(names);
        }
        let wrap = |p: &LaurentPoly| {
            let s = p.render(names);
            if p.len() > 1 || s.contains('/') {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl RatFunc {
    pub fn constant_value(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_nonzero_constant(&self) -> bool {
        self.constant_value().is_some_and(|c| !c.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(nv: usize, k: usize) -> LaurentPoly {
        LaurentPoly::param(nv, k)
    }

    #[test]
    fn reduces_common_factors() {
        let one = LaurentPoly::one(1);
        let a = q(1, 0).add(&one);
        let f = RatFunc::new(a.mul(&a), a.mul(&q(1, 0)));
        assert_eq!(f, RatFunc::new(a.clone(), q(1, 0)));
        assert_eq!(f.mul(&RatFunc::new(q(1, 0), a)), RatFunc::one(1));
    }

    #[test]
    fn laurent_inputs_are_cleared() {
        let inv = q(1, 0).inverse().unwrap();
        let f = RatFunc::from_poly(inv.clone());
        assert_eq!(f.numer(), &LaurentPoly::one(1));
        assert_eq!(f.denom(), &q(1, 0));
        assert_eq!(f.as_laurent(), Some(inv));
    }

    #[test]
    fn addition_is_canonical() {
        let one = LaurentPoly::one(2);
        let a = RatFunc::new(one.clone(), q(2, 0));
        let b = RatFunc::new(one.clone(), q(2, 1));
        let lhs = a.add(&b);
        let rhs = RatFunc::new(q(2, 0).add(&q(2, 1)), q(2, 0).mul(&q(2, 1)));
        assert_eq!(lhs, rhs);
        assert!(lhs.sub(&rhs).is_zero());
    }
}
