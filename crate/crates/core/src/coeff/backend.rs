use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::laurent::{render_rational, LaurentPoly};
use super::maps::MonomialMap;
use super::ratfunc::RatFunc;
use super::{pow_mod, Coeff};
use crate::error::{Error, Result};

pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BackendKind {
    Rational,
    PrimeField(u64),
    /// `Q[q_1^{±1}, …, q_m^{±1}]` in the named parameters.
    Laurent(Vec<String>),
    /// `Q(q_1, …, q_m)`, the fraction field of the Laurent kind.
    RationalFunction(Vec<String>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Inv,
}

/// Coefficient ring with one automorphism and one derivation per ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Backend {
    kind: BackendKind,
    sigma: Vec<MonomialMap>,
    /// Images of the parameters under `δ_i`; `None` is the zero derivation.
    delta: Vec<Option<Vec<Coeff>>>,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Backend {
    /// Validated constructor.
    pub fn new(
        kind: BackendKind,
        sigma: Vec<MonomialMap>,
        delta: Vec<Option<Vec<Coeff>>>,
    ) -> Result<Self> {
        if sigma.len() != delta.len() {
            return Err(Error::InvalidBackend(
                "sigma and delta tables differ in length".into(),
            ));
        }
        if let BackendKind::PrimeField(p) = kind {
            if !is_prime(p) || p > MAX_PRIME {
                return Err(Error::InvalidBackend(format!(
                    "modulus {p} must be a prime at most 2^31"
                )));
            }
        }
        let m = match &kind {
            BackendKind::Rational | BackendKind::PrimeField(_) => 0,
            BackendKind::Laurent(n) | BackendKind::RationalFunction(n) => n.len(),
        };
        let b = Backend { kind, sigma, delta };
        for (i, s) in b.sigma.iter().enumerate() {
            if s.nparams() != m {
                return Err(Error::InvalidBackend(format!(
                    "sigma_{} acts on {} parameters, expected {m}",
                    i + 1,
                    s.nparams()
                )));
            }
        }
        for (i, d) in b.delta.iter().enumerate() {
            if let Some(imgs) = d {
                if imgs.len() != m {
                    return Err(Error::InvalidBackend(format!(
                        "delta_{} has {} images, expected {m}",
                        i + 1,
                        imgs.len()
                    )));
                }
                if let Some(bad) = imgs.iter().find(|c| !b.contains(c)) {
                    return Err(Error::InvalidBackend(format!(
                        "delta_{} image {bad:?} is not in the backend",
                        i + 1
                    )));
                }
            }
        }
        for i in 0..b.nvars() {
            if let Some((x, y)) = b.leibniz_failure(i) {
                return Err(Error::InvalidBackend(format!(
                    "delta_{} violates the sigma-Leibniz rule on ({}, {})",
                    i + 1,
                    b.render(&x),
                    b.render(&y)
                )));
            }
        }
        Ok(b)
    }

    /// Identity automorphisms and zero derivations for `nvars` variables.
    pub fn trivial(kind: BackendKind, nvars: usize) -> Result<Self> {
        let m = match &kind {
            BackendKind::Rational | BackendKind::PrimeField(_) => 0,
            BackendKind::Laurent(n) | BackendKind::RationalFunction(n) => n.len(),
        };
        Self::new(
            kind,
            vec![MonomialMap::identity(m); nvars],
            vec![None; nvars],
        )
    }

    pub fn rational(nvars: usize) -> Self {
        Self::trivial(BackendKind::Rational, nvars).unwrap()
    }

    pub fn laurent(params: &[&str], nvars: usize) -> Self {
        let names = params.iter().map(|s| s.to_string()).collect();
        Self::trivial(BackendKind::Laurent(names), nvars).unwrap()
    }

    pub fn with_sigma(mut self, i: usize, map: MonomialMap) -> Result<Self> {
        self.sigma[i] = map;
        Self::new(self.kind, self.sigma, self.delta)
    }

    pub fn with_delta(mut self, i: usize, images: Vec<Coeff>) -> Result<Self> {
        self.delta[i] = Some(images);
        Self::new(self.kind, self.sigma, self.delta)
    }

    /// Same automorphisms, all derivations zero.
    pub fn without_derivations(&self) -> Backend {
        Backend {
            kind: self.kind.clone(),
            sigma: self.sigma.clone(),
            delta: vec![None; self.sigma.len()],
        }
    }

    pub fn kind(&self) -> &BackendKind {
        &self.kind
    }

    pub fn nvars(&self) -> usize {
        self.sigma.len()
    }

    pub fn nparams(&self) -> usize {
        self.param_names().len()
    }

    pub fn param_names(&self) -> &[String] {
        match &self.kind {
            BackendKind::Laurent(n) | BackendKind::RationalFunction(n) => n,
            _ => &[],
        }
    }

    pub fn sigma_map(&self, i: usize) -> &MonomialMap {
        &self.sigma[i]
    }

    pub fn delta_images(&self, i: usize) -> Option<&[Coeff]> {
        self.delta[i].as_deref()
    }

    pub fn sigma_is_identity(&self, i: usize) -> bool {
        self.sigma[i].is_identity()
    }

    pub fn has_derivations(&self) -> bool {
        self.delta
            .iter()
            .any(|d| d.as_ref().is_some_and(|v| v.iter().any(|c| !c.is_zero())))
    }

    pub fn is_field(&self) -> bool {
        !matches!(self.kind, BackendKind::Laurent(_))
    }

    pub fn zero(&self) -> Coeff {
        match &self.kind {
            BackendKind::Rational => Coeff::Rat(BigRational::zero()),
            BackendKind::PrimeField(p) => Coeff::Fp { v: 0, p: *p },
            BackendKind::Laurent(n) => Coeff::Laurent(LaurentPoly::zero(n.len())),
            BackendKind::RationalFunction(n) => Coeff::Frac(RatFunc::zero(n.len())),
        }
    }

    pub fn one(&self) -> Coeff {
        self.zero().one_like()
    }

    pub fn from_int(&self, n: i64) -> Coeff {
        self.from_rational(&BigRational::from_integer(BigInt::from(n)))
            .expect("integers embed in every backend")
    }

    /// Embeds a rational number; fails in `F_p` when `p` divides the denominator.
    pub fn from_rational(&self, r: &BigRational) -> Result<Coeff> {
        Ok(match &self.kind {
            BackendKind::Rational => Coeff::Rat(r.clone()),
            BackendKind::PrimeField(p) => {
                let pb = BigInt::from(*p);
                let num = r.numer().mod_floor(&pb).to_u64().unwrap();
                let den = r.denom().mod_floor(&pb).to_u64().unwrap();
                if den == 0 {
                    return Err(Error::NotAUnit(format!("{} modulo {p}", r.denom())));
                }
                Coeff::Fp {
                    v: num * pow_mod(den, p - 2, *p) % p,
                    p: *p,
                }
            }
            BackendKind::Laurent(n) => Coeff::Laurent(LaurentPoly::constant(n.len(), r.clone())),
            BackendKind::RationalFunction(n) => Coeff::Frac(RatFunc::constant(n.len(), r.clone())),
        })
    }

    /// The parameter `q_k` as a coefficient.
    pub fn param(&self, k: usize) -> Coeff {
        let m = self.nparams();
        match &self.kind {
            BackendKind::Laurent(_) => Coeff::Laurent(LaurentPoly::param(m, k)),
            BackendKind::RationalFunction(_) => {
                Coeff::Frac(RatFunc::from_poly(LaurentPoly::param(m, k)))
            }
            _ => panic!("backend has no parameters"),
        }
    }

    /// Wraps a Laurent polynomial in the parameters as a coefficient.
    pub fn from_laurent(&self, p: LaurentPoly) -> Result<Coeff> {
        if p.nvars() != self.nparams() {
            return Err(Error::BackendMismatch("parameter count differs".into()));
        }
        match &self.kind {
            BackendKind::Laurent(_) => Ok(Coeff::Laurent(p)),
            BackendKind::RationalFunction(_) => Ok(Coeff::Frac(RatFunc::from_poly(p))),
            _ => match p.as_constant() {
                Some(c) => self.from_rational(&c),
                None => Err(Error::BackendMismatch("backend has no parameters".into())),
            },
        }
    }

    pub fn contains(&self, a: &Coeff) -> bool {
        match (&self.kind, a) {
            (BackendKind::Rational, Coeff::Rat(_)) => true,
            (BackendKind::PrimeField(p), Coeff::Fp { v, p: q }) => p == q && v < p,
            (BackendKind::Laurent(n), Coeff::Laurent(x)) => x.nvars() == n.len(),
            (BackendKind::RationalFunction(n), Coeff::Frac(x)) => x.nvars() == n.len(),
            _ => false,
        }
    }

    pub fn check(&self, a: &Coeff) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::BackendMismatch(format!(
                "{a:?} is not an element of {:?}",
                self.kind
            )))
        }
    }

    /// Checked arithmetic; `b` is ignored for unary operations.
    pub fn arith(&self, op: ArithOp, a: &Coeff, b: Option<&Coeff>) -> Result<Coeff> {
        self.check(a)?;
        let operand = || -> Result<&Coeff> {
            let b = b.ok_or_else(|| Error::BackendMismatch("missing operand".into()))?;
            self.check(b)?;
            Ok(b)
        };
        match op {
            ArithOp::Add => Ok(a.add(operand()?)),
            ArithOp::Mul => Ok(a.mul(operand()?)),
            ArithOp::Neg => Ok(a.neg()),
            ArithOp::Inv => self.inverse(a),
        }
    }

    pub fn inverse(&self, a: &Coeff) -> Result<Coeff> {
        self.check(a)?;
        a.inverse().ok_or_else(|| Error::NotAUnit(self.render(a)))
    }

    /// `σ_i^power(a)`.
    pub fn sigma(&self, i: usize, a: &Coeff, power: i64) -> Coeff {
        if power == 0 || self.sigma[i].is_identity() {
            return a.clone();
        }
        self.apply_map(&self.sigma[i].pow(power), a)
    }

    pub fn apply_map(&self, map: &MonomialMap, a: &Coeff) -> Coeff {
        match a {
            Coeff::Laurent(p) => Coeff::Laurent(map.apply_laurent(p)),
            Coeff::Frac(f) => Coeff::Frac(map.apply_frac(f)),
            _ => a.clone(),
        }
    }

    /// `δ_i(a)`, extended from the parameter images by additivity and the
    /// `σ_i`-Leibniz rule.
    pub fn delta(&self, i: usize, a: &Coeff) -> Coeff {
        let Some(imgs) = &self.delta[i] else {
            return a.zero_like();
        };
        match a {
            Coeff::Laurent(p) => self.delta_poly(i, imgs, p),
            Coeff::Frac(f) => {
                // δ(a/s) = δ(a)/σ(s) − δ(s)·a/(σ(s)·s)
                let num = Coeff::Frac(RatFunc::from_poly(f.numer().clone()));
                let den = Coeff::Frac(RatFunc::from_poly(f.denom().clone()));
                let sden = self.sigma(i, &den, 1);
                let inv_sden = sden.inverse().expect("sigma of a nonzero denominator");
                let inv_den = den.inverse().expect("nonzero denominator");
                let da = self.delta_poly(i, imgs, f.numer());
                let ds = self.delta_poly(i, imgs, f.denom());
                da.mul(&inv_sden)
                    .sub(&ds.mul(&num).mul(&inv_sden).mul(&inv_den))
            }
            _ => a.zero_like(),
        }
    }

    fn delta_poly(&self, i: usize, imgs: &[Coeff], p: &LaurentPoly) -> Coeff {
        let mut acc = self.zero();
        for (e, c) in p.terms() {
            let d = self.delta_monomial(i, imgs, e);
            if !d.is_zero() {
                acc = acc.add(&d.mul(&self.from_rational(c).unwrap()));
            }
        }
        acc
    }

    fn delta_monomial(&self, i: usize, imgs: &[Coeff], e: &[i64]) -> Coeff {
        let m = self.nparams();
        let mut prefix = self.one();
        let mut acc = self.zero();
        for (k, &ek) in e.iter().enumerate() {
            if ek == 0 {
                continue;
            }
            let q = self.param(k);
            let (factor, df) = if ek > 0 {
                (q.clone(), imgs[k].clone())
            } else {
                // δ(q^{-1}) = −σ(q)^{-1} δ(q) q^{-1}
                let qi = q.inverse().unwrap();
                let sq = self.sigma(i, &q, 1).inverse().unwrap();
                (qi.clone(), sq.mul(&imgs[k]).mul(&qi).neg())
            };
            for _ in 0..ek.unsigned_abs() {
                acc = self.sigma(i, &prefix, 1).mul(&df).add(&acc.mul(&factor));
                prefix = prefix.mul(&factor);
            }
        }
        debug_assert!(m == e.len());
        acc
    }

    fn leibniz_failure(&self, i: usize) -> Option<(Coeff, Coeff)> {
        self.delta[i].as_ref()?;
        let gens = self.generators();
        for a in &gens {
            for b in &gens {
                let lhs = self.delta(i, &a.mul(b));
                let rhs = self
                    .sigma(i, a, 1)
                    .mul(&self.delta(i, b))
                    .add(&self.delta(i, a).mul(b));
                if lhs != rhs {
                    return Some((a.clone(), b.clone()));
                }
            }
        }
        None
    }

    /// A finite generating set: the parameters and their inverses, or `1`.
    pub fn generators(&self) -> Vec<Coeff> {
        match &self.kind {
            BackendKind::Rational | BackendKind::PrimeField(_) => vec![self.one()],
            _ => (0..self.nparams())
                .flat_map(|k| {
                    let q = self.param(k);
                    let qi = q.inverse().unwrap();
                    [q, qi]
                })
                .collect(),
        }
    }

    /// The fraction field, carrying the lifted automorphisms and derivations.
    pub fn fraction_field(&self) -> Backend {
        match &self.kind {
            BackendKind::Laurent(names) => Backend {
                kind: BackendKind::RationalFunction(names.clone()),
                sigma: self.sigma.clone(),
                delta: self
                    .delta
                    .iter()
                    .map(|d| d.as_ref().map(|v| v.iter().map(to_fraction).collect()))
                    .collect(),
            },
            _ => self.clone(),
        }
    }

    /// Inverse of [`Backend::fraction_field`] on elements, when the fraction
    /// lies in the base ring.
    pub fn from_fraction(&self, a: &Coeff) -> Option<Coeff> {
        match (&self.kind, a) {
            (BackendKind::Laurent(_), Coeff::Frac(f)) => f.as_laurent().map(Coeff::Laurent),
            _ => self.contains(a).then(|| a.clone()),
        }
    }

    pub fn render(&self, a: &Coeff) -> String {
        match a {
            Coeff::Rat(r) => render_rational(r),
            Coeff::Fp { v, .. } => v.to_string(),
            Coeff::Laurent(p) => p.render(self.param_names()),
            Coeff::Frac(f) => f.render(self.param_names()),
        }
    }

    /// True when the rendering needs parentheses inside a product.
    pub fn is_compound(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Rat(r) => !r.is_integer(),
            Coeff::Fp { .. } => false,
            Coeff::Laurent(p) => {
                p.len() > 1
                    || p.as_monomial()
                        .is_some_and(|(_, c)| !c.is_integer() && !c.is_negative())
            }
            Coeff::Frac(_) => true,
        }
    }

    /// True when `a` is `-1` times something printable without sign trouble.
    pub fn is_negative_scalar(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Rat(r) => r.is_negative(),
            Coeff::Laurent(p) => p.len() == 1 && p.leading().is_some_and(|(_, c)| c.is_negative()),
            _ => false,
        }
    }

    pub fn characteristic_is_zero(&self) -> bool {
        !matches!(self.kind, BackendKind::PrimeField(_))
    }
}

/// Numerator embedding `a ↦ a/1`.
pub(crate) fn to_fraction(a: &Coeff) -> Coeff {
    match a {
        Coeff::Laurent(p) => Coeff::Frac(RatFunc::from_poly(p.clone())),
        _ => a.clone(),
    }
}

impl Backend {
    /// Numerator embedding into the fraction field.
    pub fn to_fraction(&self, a: &Coeff) -> Coeff {
        to_fraction(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_backend(sigma_scale: i64) -> Backend {
        let b = Backend::laurent(&["q"], 1);
        let map =
            MonomialMap::scaling(1, 0, BigRational::from_integer(sigma_scale.into())).unwrap();
        b.with_sigma(0, map).unwrap()
    }

    #[test]
    fn sigma_powers_of_scaling() {
        let b = q_backend(2);
        let q = b.param(0);
        assert_eq!(b.sigma(0, &q, 3), q.mul(&b.from_int(8)));
        let half = b
            .from_rational(&BigRational::new(1.into(), 2.into()))
            .unwrap();
        assert_eq!(b.sigma(0, &q, -1), q.mul(&half));
        assert_eq!(Backend::laurent(&["q"], 1).sigma(0, &q, 5), q);
    }

    #[test]
    fn delta_by_leibniz() {
        let b = Backend::laurent(&["q"], 1)
            .with_delta(0, vec![Backend::laurent(&["q"], 1).one()])
            .unwrap();
        let q = b.param(0);
        assert_eq!(b.delta(0, &q.mul(&q)), q.mul(&b.from_int(2)));

        let c = 5;
        let b = q_backend(c);
        let one = b.one();
        let b = b.with_delta(0, vec![one]).unwrap();
        let q = b.param(0);
        assert_eq!(b.delta(0, &q.mul(&q)), q.mul(&b.from_int(c + 1)));
    }

    #[test]
    fn inconsistent_derivation_is_rejected() {
        // σ(q1) = 2 q1 and δ(q2) = 1 with δ(q1) = 0 breaks δ(q1 q2) = δ(q2 q1).
        let b = Backend::laurent(&["q1", "q2"], 1);
        let map = MonomialMap::scaling(2, 0, BigRational::from_integer(2.into())).unwrap();
        let b = b.with_sigma(0, map).unwrap();
        let imgs = vec![b.zero(), b.one()];
        assert!(matches!(
            b.with_delta(0, imgs),
            Err(Error::InvalidBackend(_))
        ));
    }

    #[test]
    fn prime_field_bounds() {
        assert!(Backend::trivial(BackendKind::PrimeField(7), 2).is_ok());
        assert!(Backend::trivial(BackendKind::PrimeField(8), 2).is_err());
        let big = (1u64 << 31) + 11;
        assert!(Backend::trivial(BackendKind::PrimeField(big), 1).is_err());
    }

    #[test]
    fn checked_arith_reports_errors() {
        let b = Backend::laurent(&["q"], 1);
        let q = b.param(0);
        let one_plus_q = q.add(&b.one());
        assert!(matches!(
            b.arith(ArithOp::Inv, &one_plus_q, None),
            Err(Error::NotAUnit(_))
        ));
        assert!(matches!(
            b.arith(ArithOp::Add, &Coeff::rat(1), Some(&q)),
            Err(Error::BackendMismatch(_))
        ));
    }

    #[test]
    fn fraction_delta_matches_quotient_rule() {
        let base = Backend::laurent(&["q"], 1)
            .with_delta(0, vec![Backend::laurent(&["q"], 1).one()])
            .unwrap();
        let f = base.fraction_field();
        let q = f.param(0);
        let one = f.one();
        let s = q.add(&one);
        let x = q.mul(&s.inverse().unwrap());
        // d/dq (q/(q+1)) = 1/(q+1)^2
        let expect = s.mul(&s).inverse().unwrap();
        assert_eq!(f.delta(0, &x), expect);
    }
}
