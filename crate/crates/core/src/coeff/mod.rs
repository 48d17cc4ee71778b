//! Exact coefficient rings.
//!
//! A [`Backend`] fixes the coefficient ring together with the automorphisms
//! `σ_i` and `σ_i`-derivations `δ_i` attached to each ring variable. Values
//! are plain [`Coeff`] enums; arithmetic on two values of different kinds is
//! a programming error and panics, while [`Backend::arith`] reports it.

mod backend;
pub mod laurent;
mod maps;
pub mod ratfunc;

pub use backend::{ArithOp, Backend, BackendKind};
pub use laurent::LaurentPoly;
pub use maps::MonomialMap;
pub use ratfunc::RatFunc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A coefficient value in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rat(BigRational),
    Fp { v: u64, p: u64 },
    Laurent(LaurentPoly),
    Frac(RatFunc),
}

fn mismatch(a: &Coeff, b: &Coeff) -> ! {
    panic!("coefficient kinds differ: {a:?} vs {b:?}")
}

impl Coeff {
    pub fn rat(n: i64) -> Self {
        Coeff::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn same_kind(&self, other: &Coeff) -> bool {
        match (self, other) {
            (Coeff::Rat(_), Coeff::Rat(_)) => true,
            (Coeff::Fp { p, .. }, Coeff::Fp { p: p2, .. }) => p == p2,
            (Coeff::Laurent(a), Coeff::Laurent(b)) => a.nvars() == b.nvars(),
            (Coeff::Frac(a), Coeff::Frac(b)) => a.nvars() == b.nvars(),
            _ => false,
        }
    }

    /// Zero of the same kind.
    pub fn zero_like(&self) -> Coeff {
        match self {
            Coeff::Rat(_) => Coeff::Rat(BigRational::zero()),
            Coeff::Fp { p, .. } => Coeff::Fp { v: 0, p: *p },
            Coeff::Laurent(a) => Coeff::Laurent(LaurentPoly::zero(a.nvars())),
            Coeff::Frac(a) => Coeff::Frac(RatFunc::zero(a.nvars())),
        }
    }

    /// One of the same kind.
    pub fn one_like(&self) -> Coeff {
        match self {
            Coeff::Rat(_) => Coeff::Rat(BigRational::one()),
            Coeff::Fp { p, .. } => Coeff::Fp { v: 1 % p, p: *p },
            Coeff::Laurent(a) => Coeff::Laurent(LaurentPoly::one(a.nvars())),
            Coeff::Frac(a) => Coeff::Frac(RatFunc::one(a.nvars())),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rat(a) => a.is_zero(),
            Coeff::Fp { v, .. } => *v == 0,
            Coeff::Laurent(a) => a.is_zero(),
            Coeff::Frac(a) => a.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rat(a) => a.is_one(),
            Coeff::Fp { v, .. } => *v == 1,
            Coeff::Laurent(a) => a.is_one(),
            Coeff::Frac(a) => a.is_one(),
        }
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a + b),
            (Coeff::Fp { v, p }, Coeff::Fp { v: w, p: p2 }) if p == p2 => Coeff::Fp {
                v: (v + w) % p,
                p: *p,
            },
            (Coeff::Laurent(a), Coeff::Laurent(b)) => Coeff::Laurent(a.add(b)),
            (Coeff::Frac(a), Coeff::Frac(b)) => Coeff::Frac(a.add(b)),
            _ => mismatch(self, other),
        }
    }

    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::Rat(a) => Coeff::Rat(-a),
            Coeff::Fp { v, p } => Coeff::Fp {
                v: (p - v) % p,
                p: *p,
            },
            Coeff::Laurent(a) => Coeff::Laurent(a.neg()),
            Coeff::Frac(a) => Coeff::Frac(a.neg()),
        }
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a * b),
            (Coeff::Fp { v, p }, Coeff::Fp { v: w, p: p2 }) if p == p2 => Coeff::Fp {
                v: (v * w) % p,
                p: *p,
            },
            (Coeff::Laurent(a), Coeff::Laurent(b)) => Coeff::Laurent(a.mul(b)),
            (Coeff::Frac(a), Coeff::Frac(b)) => Coeff::Frac(a.mul(b)),
            _ => mismatch(self, other),
        }
    }

    /// Integer power; negative exponents need a unit.
    pub fn pow(&self, k: i64) -> Option<Coeff> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = self.one_like();
        let mut b = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Some(acc)
    }

    pub fn is_unit(&self) -> bool {
        match self {
            Coeff::Rat(a) => !a.is_zero(),
            Coeff::Fp { v, .. } => *v != 0,
            Coeff::Laurent(a) => a.is_unit(),
            Coeff::Frac(a) => !a.is_zero(),
        }
    }

    pub fn inverse(&self) -> Option<Coeff> {
        match self {
            Coeff::Rat(a) => (!a.is_zero()).then(|| Coeff::Rat(a.recip())),
            Coeff::Fp { v, p } => (*v != 0).then(|| Coeff::Fp {
                v: pow_mod(*v, p - 2, *p),
                p: *p,
            }),
            Coeff::Laurent(a) => a.inverse().map(Coeff::Laurent),
            Coeff::Frac(a) => a.inverse().map(Coeff::Frac),
        }
    }

    /// The rational value, if this is a rational scalar of any char-0 kind.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Coeff::Rat(a) => Some(a.clone()),
            Coeff::Fp { .. } => None,
            Coeff::Laurent(a) => a.as_constant(),
            Coeff::Frac(a) => a.constant_value(),
        }
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Coeff {
        Coeff::Rat(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn rational_sum() {
        assert_eq!(r(2, 3).add(&r(1, 3)), Coeff::rat(1));
    }

    #[test]
    fn prime_field_inverse() {
        let a = Coeff::Fp { v: 3, p: 7 };
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_one());
        assert!(Coeff::Fp { v: 0, p: 7 }.inverse().is_none());
    }

    #[test]
    fn laurent_units() {
        let q = LaurentPoly::param(1, 0);
        let three_q2 = Coeff::Laurent(q.pow(2).scale(&BigRational::from_integer(3.into())));
        let inv = three_q2.inverse().unwrap();
        let expect = LaurentPoly::monomial(1, vec![-2], BigRational::new(1.into(), 3.into()));
        assert_eq!(inv, Coeff::Laurent(expect));
        let one_plus_q = Coeff::Laurent(q.add(&LaurentPoly::one(1)));
        assert!(one_plus_q.inverse().is_none());
    }

    #[test]
    fn negative_power() {
        assert_eq!(r(2, 1).pow(-3), Some(r(1, 8)));
        assert_eq!(Coeff::rat(0).pow(-1), None);
    }
}
