#![allow(dead_code)]

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use skewpbw::{
    Backend, BackendKind, Coeff, MonomialMap, Presentation, PresentationBuilder, SkewPoly,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// Seven coefficients per backend.
pub fn pool(b: &Backend) -> Vec<Coeff> {
    let r = |n, d| b.from_rational(&rat(n, d)).unwrap();
    match b.kind() {
        BackendKind::Laurent(_) | BackendKind::RationalFunction(_) => {
            let q = b.param(0);
            let last = b.param(b.nparams() - 1);
            vec![
                b.one(),
                b.from_int(-1),
                b.from_int(2),
                q.clone(),
                q.inverse().unwrap(),
                q.add(&b.one()),
                last.mul(&b.from_int(3)),
            ]
        }
        BackendKind::PrimeField(_) => [1, 2, 3, -1, -2, -3, 4]
            .iter()
            .map(|&k| b.from_int(k))
            .collect(),
        BackendKind::Rational => vec![
            r(1, 1),
            r(-1, 1),
            r(2, 1),
            r(3, 1),
            r(1, 2),
            r(-2, 3),
            r(5, 1),
        ],
    }
}

/// Exponents with `Σ|e_i| ≤ max_deg`; negative only on Laurent variables.
pub fn random_exponents(p: &Presentation, rng: &mut ChaCha8Rng, max_deg: i64) -> Vec<i64> {
    loop {
        let e: Vec<i64> = (0..p.n())
            .map(|i| {
                if i < p.r() {
                    rng.gen_range(-max_deg..=max_deg)
                } else {
                    rng.gen_range(0..=max_deg)
                }
            })
            .collect();
        if e.iter().map(|x| x.abs()).sum::<i64>() <= max_deg {
            return e;
        }
    }
}

pub fn random_poly(
    p: &Presentation,
    rng: &mut ChaCha8Rng,
    max_terms: usize,
    max_deg: i64,
) -> SkewPoly {
    let pool = pool(p.backend());
    let k = rng.gen_range(1..=max_terms);
    let mut f = p.zero();
    for _ in 0..k {
        let e = random_exponents(p, rng, max_deg);
        let c = &pool[rng.gen_range(0..pool.len())];
        f = f.add(&p.monomial(&e).scale_left(c));
    }
    f
}

pub fn random_nonzero(
    p: &Presentation,
    rng: &mut ChaCha8Rng,
    max_terms: usize,
    max_deg: i64,
) -> SkewPoly {
    loop {
        let f = random_poly(p, rng, max_terms, max_deg);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Every exponent vector with `Σ|e_i| ≤ k`, negative entries on Laurent variables.
pub fn exponent_ball(p: &Presentation, k: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for i in 0..p.n() {
        let lo = if i < p.r() { -k } else { 0 };
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (lo..=k).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .filter(|v| v.iter().map(|x| x.abs()).sum::<i64>() <= k)
            .collect();
    }
    out
}

/// The scalar `a` with `x^t x^l = a x^{t+l}`, read off the engine.
pub fn engine_scalar(p: &Presentation, t: &[i64], l: &[i64]) -> Option<Coeff> {
    let prod = p.multiply(&p.monomial(t), &p.monomial(l));
    let sum: Vec<i64> = t.iter().zip(l).map(|(a, b)| a + b).collect();
    let (e, c) = prod.as_monomial()?;
    (e == &sum).then(|| c.clone())
}

/// Quantum plane over `k[q^{±1}]` with `σ_2(q) = 2q`, optionally Laurent.
pub fn twisted_plane(r: usize) -> Presentation {
    let b = Backend::laurent(&["q"], 2)
        .with_sigma(1, MonomialMap::scaling(1, 0, rat(2, 1)).unwrap())
        .unwrap();
    let q = b.param(0);
    PresentationBuilder::new(b, names(&["x1", "x2"]))
        .c(1, 0, q)
        .laurent(r)
        .build()
        .unwrap()
}

/// Three-variable quantum torus whose automorphisms move the parameters:
/// `σ_2(q12) = 3 q12`, `σ_3(q13) = 2 q13`.
pub fn twisted_torus() -> Presentation {
    let b = Backend::laurent(&["q12", "q13", "q23"], 3)
        .with_sigma(1, MonomialMap::scaling(3, 0, rat(3, 1)).unwrap())
        .unwrap()
        .with_sigma(2, MonomialMap::scaling(3, 1, rat(2, 1)).unwrap())
        .unwrap();
    let inv = |k| b.param(k).inverse().unwrap();
    PresentationBuilder::new(b.clone(), names(&["x1", "x2", "x3"]))
        .c(1, 0, inv(0))
        .c(2, 0, inv(1))
        .c(2, 1, inv(2))
        .laurent(3)
        .build()
        .unwrap()
}

/// `R[x; σ, δ]` over `R = k[q^{±1}, t^{±1}]` with `σ(t) = 2t`, `δ(t) = 1`.
pub fn ore_delta_ring() -> Presentation {
    let b = Backend::laurent(&["q", "t"], 1)
        .with_sigma(0, MonomialMap::scaling(2, 1, rat(2, 1)).unwrap())
        .unwrap();
    let imgs = vec![b.zero(), b.one()];
    let b = b.with_delta(0, imgs).unwrap();
    PresentationBuilder::new(b, names(&["x"])).build().unwrap()
}
