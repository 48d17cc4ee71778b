//! Quasi-commutative extensions: exact commutation scalars, the associated
//! graded ring and the iterated skew polynomial description.

use crate::coeff::{Backend, BackendKind, Coeff, MonomialMap};
use crate::error::{Error, Result};
use crate::ring::{Presentation, PresentationBuilder};
use crate::units::{UnitGroup, UnitLog};

/// `T_σ(a, c)`: the scalar with `x^a c = T_σ(a, c)·…` when `x` commutes
/// past a variable with twist `c`. Equal to `∏_{k<a} σ^k(c)` for `a ≥ 0` and
/// `∏_{k=1}^{|a|} σ^{-k}(c)^{-1}` for `a < 0`.
pub(crate) fn twist(b: &Backend, i: usize, a: i64, c: &Coeff) -> Result<Coeff> {
    let mut acc = b.one();
    if a >= 0 {
        let mut s = c.clone();
        for _ in 0..a {
            acc = acc.mul(&s);
            s = b.sigma(i, &s, 1);
        }
    } else {
        let mut s = c.clone();
        for _ in 0..-a {
            s = b.sigma(i, &s, -1);
            acc = acc.mul(&b.inverse(&s)?);
        }
    }
    Ok(acc)
}

/// `x_j^a x_i^b = κ x_i^b x_j^a` for `j > i`; returns `κ`.
pub(crate) fn pair_scalar(p: &Presentation, j: usize, a: i64, i: usize, b: i64) -> Result<Coeff> {
    let be = p.backend();
    twist(be, i, b, &twist(be, j, a, p.c(j, i))?)
}

/// The exact scalar `a` with `x^t · x^l = a · x^{t+l}`.
///
/// The blocks `x_i^{l_i}` are moved left one at a time. Each block passes
/// `x_n^{u_n}, …, x_{i+1}^{u_{i+1}}` from the right, collecting pair scalars
/// that are then pushed through the remaining prefix by powers of `σ`.
pub fn closed_form_coefficient(p: &Presentation, t: &[i64], l: &[i64]) -> Result<Coeff> {
    if !p.is_quasi_commutative() {
        return Err(Error::NotQuasiCommutative);
    }
    p.check_exponents(t)?;
    p.check_exponents(l)?;
    let b = p.backend();
    let n = p.n();
    let mut u = t.to_vec();
    let mut acc = b.one();
    for i in 0..n {
        if l[i] == 0 {
            continue;
        }
        let mut gamma = b.one();
        for k in (i + 1..n).rev() {
            if u[k] == 0 {
                continue;
            }
            let mut beta = pair_scalar(p, k, u[k], i, l[i])?;
            for m in (i + 1..k).rev() {
                beta = b.sigma(m, &beta, u[m]);
            }
            gamma = gamma.mul(&beta);
        }
        for m in (0..=i).rev() {
            gamma = b.sigma(m, &gamma, u[m]);
        }
        acc = acc.mul(&gamma);
        u[i] += l[i];
    }
    Ok(acc)
}

/// The closed-form scalar of a monomial product next to the product of
/// commutation units that determine its class in `R*/N`.
#[derive(Clone, Debug)]
pub struct ProductClass {
    pub coefficient: Coeff,
    /// `∏_{i<j} c_{j,i}^{t_j l_i}`.
    pub predicted: Coeff,
    pub log: UnitLog,
    pub predicted_log: UnitLog,
    pub same_class: bool,
}

pub fn unit_class_of_product(
    p: &Presentation,
    t: &[i64],
    l: &[i64],
    prime_bound: u64,
) -> Result<ProductClass> {
    let coefficient = closed_form_coefficient(p, t, l)?;
    let b = p.backend();
    let mut predicted = b.one();
    for j in 0..p.n() {
        for i in 0..j {
            let e = t[j] * l[i];
            if e != 0 {
                let f = p
                    .c(j, i)
                    .pow(e)
                    .ok_or_else(|| Error::NotAUnit(b.render(p.c(j, i))))?;
                predicted = predicted.mul(&f);
            }
        }
    }
    let g = UnitGroup::new(b, prime_bound);
    let log = g.unit_log(&coefficient)?;
    let predicted_log = g.unit_log(&predicted)?;
    let same_class = g.same_class(&coefficient, &predicted)?;
    Ok(ProductClass {
        coefficient,
        predicted,
        log,
        predicted_log,
        same_class,
    })
}

/// `Gr(A)`: the same commutation matrix and automorphisms with every lower
/// term `d_{j,i}` and every derivation removed.
pub fn associated_graded(p: &Presentation) -> Result<Presentation> {
    if p.r() > 0 {
        return Err(Error::InvalidPresentation(
            "the degree filtration needs r = 0".into(),
        ));
    }
    Ok(p.strip_lower_terms(p.backend().without_derivations()))
}

/// One step `A_j = A_{j-1}[x_j; θ_j]` with `θ_j|_R = σ_j` and
/// `θ_j(x_i) = scalars[i]·x_i` for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewStep {
    pub name: String,
    pub sigma: MonomialMap,
    pub scalars: Vec<Coeff>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IteratedSkewData {
    pub kind: BackendKind,
    pub steps: Vec<SkewStep>,
}

pub fn to_iterated_skew(p: &Presentation) -> Result<IteratedSkewData> {
    if !p.is_quasi_commutative() {
        return Err(Error::NotQuasiCommutative);
    }
    if p.r() > 0 {
        return Err(Error::LaurentUnsupported);
    }
    let b = p.backend();
    let steps = (0..p.n())
        .map(|j| SkewStep {
            name: p.names()[j].clone(),
            sigma: b.sigma_map(j).clone(),
            scalars: (0..j).map(|i| p.c(j, i).clone()).collect(),
        })
        .collect();
    Ok(IteratedSkewData {
        kind: b.kind().clone(),
        steps,
    })
}

pub fn from_iterated_skew(data: &IteratedSkewData) -> Result<Presentation> {
    let n = data.steps.len();
    let mut backend = Backend::trivial(data.kind.clone(), n)?;
    for (j, s) in data.steps.iter().enumerate() {
        backend = backend
            .with_sigma(j, s.sigma.clone())
            .map_err(|e| Error::NotEndomorphismType(e.to_string()))?;
    }
    let names = data.steps.iter().map(|s| s.name.clone()).collect();
    let mut builder = PresentationBuilder::new(backend.clone(), names);
    for (j, s) in data.steps.iter().enumerate() {
        if s.scalars.len() != j {
            return Err(Error::NotEndomorphismType(format!(
                "θ_{} needs {j} scalars, got {}",
                j + 1,
                s.scalars.len()
            )));
        }
        for (i, c) in s.scalars.iter().enumerate() {
            backend.check(c)?;
            if !c.is_unit() {
                return Err(Error::NotEndomorphismType(format!(
                    "θ_{}({}) = {}·{} needs a unit scalar",
                    j + 1,
                    data.steps[i].name,
                    backend.render(c),
                    data.steps[i].name
                )));
            }
            builder = builder.c(j, i, c.clone());
        }
    }
    builder.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::SkewPoly;
    use num_rational::BigRational;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn plane(b: Backend) -> Presentation {
        let q = b.param(0);
        PresentationBuilder::new(b, names(&["x1", "x2"]))
            .c(1, 0, q)
            .build()
            .unwrap()
    }

    fn twisted() -> Presentation {
        let b = Backend::laurent(&["q"], 2)
            .with_sigma(
                1,
                MonomialMap::scaling(1, 0, BigRational::from_integer(2.into())).unwrap(),
            )
            .unwrap();
        plane(b)
    }

    fn engine_scalar(p: &Presentation, t: &[i64], l: &[i64]) -> Coeff {
        let prod = p.multiply(&p.monomial(t), &p.monomial(l));
        let sum: Vec<i64> = t.iter().zip(l).map(|(a, b)| a + b).collect();
        let (e, c) = prod.as_monomial().expect("monomial product");
        assert_eq!(e, &sum);
        c.clone()
    }

    #[test]
    fn quantum_plane_values() {
        let p = plane(Backend::laurent(&["q"], 2));
        let q = p.backend().param(0);
        assert_eq!(closed_form_coefficient(&p, &[0, 1], &[1, 0]).unwrap(), q);
        assert!(closed_form_coefficient(&p, &[0, 0], &[3, 2])
            .unwrap()
            .is_one());
        assert_eq!(
            closed_form_coefficient(&p, &[0, 3], &[2, 0]).unwrap(),
            q.pow(6).unwrap()
        );
    }

    #[test]
    fn twisted_product_and_class() {
        let p = twisted();
        let b = p.backend();
        let q = b.param(0);
        let c = closed_form_coefficient(&p, &[0, 2], &[1, 0]).unwrap();
        assert_eq!(c, q.mul(&q).mul(&b.from_int(2)));
        let cls = unit_class_of_product(&p, &[0, 2], &[1, 0], 100).unwrap();
        assert_eq!(cls.predicted, q.mul(&q));
        assert!(cls.same_class);
        assert_ne!(cls.log, cls.predicted_log);
    }

    #[test]
    fn laurent_exponents_match_engine() {
        let p = twisted().with_laurent(2).unwrap();
        for t in [[-2, 1], [1, -3], [-1, -1], [2, 2]] {
            for l in [[-1, 2], [3, -2], [-2, -2], [0, 1]] {
                assert_eq!(
                    closed_form_coefficient(&p, &t, &l).unwrap(),
                    engine_scalar(&p, &t, &l)
                );
            }
        }
    }

    #[test]
    fn rejects_lower_terms() {
        let b = Backend::rational(2);
        let p = PresentationBuilder::new(b.clone(), names(&["x", "d"]))
            .d(1, 0, SkewPoly::constant(2, b.one()))
            .build()
            .unwrap();
        assert_eq!(
            closed_form_coefficient(&p, &[0, 1], &[1, 0]),
            Err(Error::NotQuasiCommutative)
        );
        let g = associated_graded(&p).unwrap();
        assert!(g.is_quasi_commutative());
        assert_eq!(g.multiply(&g.var(1), &g.var(0)), g.monomial(&[1, 1]));
    }

    #[test]
    fn iterated_round_trip() {
        let p = twisted();
        let data = to_iterated_skew(&p).unwrap();
        assert_eq!(data.steps[1].scalars, vec![p.backend().param(0)]);
        assert!(data.steps[0].scalars.is_empty());
        assert_eq!(from_iterated_skew(&data).unwrap(), p);

        let mut bad = data.clone();
        bad.steps[1].scalars[0] = p.backend().param(0).add(&p.backend().one());
        assert!(matches!(
            from_iterated_skew(&bad),
            Err(Error::NotEndomorphismType(_))
        ));
    }
}
