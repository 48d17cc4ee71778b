mod common;

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;

use common::*;
use skewpbw::units::intmat::{smith, IntMatrix};
use skewpbw::units::unit_log;
use skewpbw::{
    catalog, localize_coefficients, parse_document, parse_poly, print_document, Backend,
    BackendKind, Coeff, MonomialMap, Presentation, UnitGroup, DEFAULT_PRIME_BOUND,
};

fn rings() -> Vec<Presentation> {
    let mut out: Vec<Presentation> = catalog::names()
        .map(|n| catalog::load(n).unwrap().ring().unwrap())
        .collect();
    out.push(ore_delta_ring());
    out.push(twisted_plane(1));
    out.push(twisted_torus());
    out
}

fn twisted_line() -> Backend {
    Backend::laurent(&["q", "t"], 2)
        .with_sigma(0, MonomialMap::scaling(2, 0, rat(2, 1)).unwrap())
        .unwrap()
        .with_sigma(1, MonomialMap::scaling(2, 1, rat(-3, 1)).unwrap())
        .unwrap()
}

fn random_unit(b: &Backend, rng: &mut rand_chacha::ChaCha8Rng) -> Coeff {
    let scalars = [1, -1, 2, 3, -6, 10, 12];
    let mut u = b.from_int(scalars[rng.gen_range(0..scalars.len())]);
    for k in 0..b.nparams() {
        u = u.mul(&b.param(k).pow(rng.gen_range(-3..=3)).unwrap());
    }
    u
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(seed in any::<u64>(), which in 0usize..9) {
        let p = &rings()[which];
        let mut r = rng(seed);
        let f = random_poly(p, &mut r, 4, 3);
        let g = random_poly(p, &mut r, 4, 3);
        let h = random_poly(p, &mut r, 4, 3);
        prop_assert_eq!(p.multiply(&p.multiply(&f, &g), &h), p.multiply(&f, &p.multiply(&g, &h)));
        prop_assert_eq!(p.multiply(&f, &g.add(&h)), p.multiply(&f, &g).add(&p.multiply(&f, &h)));
        prop_assert_eq!(p.multiply(&f.add(&g), &h), p.multiply(&f, &h).add(&p.multiply(&g, &h)));
        prop_assert_eq!(p.multiply(&p.one(), &f), f.clone());
        prop_assert_eq!(p.multiply(&f, &p.one()), f);
    }

    #[test]
    fn degree_is_subadditive(seed in any::<u64>(), which in 0usize..4) {
        let name = ["multiplicative-weyl", "skew-3dim", "diffusion", "dqsq"][which];
        let p = catalog::load(name).unwrap().ring().unwrap();
        let mut r = rng(seed);
        let f = random_nonzero(&p, &mut r, 4, 3);
        let g = random_nonzero(&p, &mut r, 4, 3);
        let fg = p.multiply(&f, &g);
        if !fg.is_zero() {
            prop_assert!(p.degree(&fg).unwrap() <= p.degree(&f).unwrap() + p.degree(&g).unwrap());
        }
    }

    #[test]
    fn expressions_round_trip(seed in any::<u64>(), which in 0usize..9) {
        let p = &rings()[which];
        let f = random_poly(p, &mut rng(seed), 5, 3);
        prop_assert_eq!(parse_poly(p, &p.render(&f)).unwrap(), f);
    }

    #[test]
    fn unit_log_is_a_homomorphism(seed in any::<u64>(), kind in 0usize..3) {
        let b = match kind {
            0 => Backend::rational(1),
            1 => Backend::trivial(BackendKind::PrimeField(101), 1).unwrap(),
            _ => twisted_line(),
        };
        let mut r = rng(seed);
        let (u, v) = (random_unit(&b, &mut r), random_unit(&b, &mut r));
        let lu = unit_log(&b, &u, DEFAULT_PRIME_BOUND).unwrap();
        let lv = unit_log(&b, &v, DEFAULT_PRIME_BOUND).unwrap();
        let luv = unit_log(&b, &u.mul(&v), DEFAULT_PRIME_BOUND).unwrap();
        prop_assert_eq!(luv, lu.add(&lv));
        let linv = unit_log(&b, &u.inverse().unwrap(), DEFAULT_PRIME_BOUND).unwrap();
        prop_assert!(linv.add(&lu).is_zero());
    }

    #[test]
    fn sigma_powers_cancel(seed in any::<u64>(), k in -5i64..=5) {
        let b = twisted_line();
        let mut r = rng(seed);
        let mut a = b.zero();
        for _ in 0..3 {
            a = a.add(&random_unit(&b, &mut r));
        }
        for i in 0..2 {
            prop_assert_eq!(b.sigma(i, &b.sigma(i, &a, k), -k), a.clone());
            prop_assert_eq!(b.sigma(i, &b.sigma(i, &a, k), 1), b.sigma(i, &a, k + 1));
        }
    }

    #[test]
    fn independence_is_invariant_modulo_n(seed in any::<u64>()) {
        let b = twisted_line();
        let g = UnitGroup::new(&b, DEFAULT_PRIME_BOUND);
        let mut r = rng(seed);
        let units: Vec<Coeff> = (0..r.gen_range(1..=3)).map(|_| random_unit(&b, &mut r)).collect();
        let base = g.independence(&units).unwrap().independent;
        let twist = |u: &Coeff, r: &mut rand_chacha::ChaCha8Rng| {
            let z = random_unit(&b, r);
            let i = r.gen_range(0..2);
            u.mul(&z.inverse().unwrap().mul(&b.sigma(i, &z, 1)))
        };
        let moved: Vec<Coeff> = units.iter().map(|u| twist(u, &mut r)).collect();
        prop_assert_eq!(g.independence(&moved).unwrap().independent, base);
        let mut rev = units.clone();
        rev.reverse();
        prop_assert_eq!(g.independence(&rev).unwrap().independent, base);
        if let Some(c) = g.independence(&units).unwrap().certificate {
            prop_assert!(c.replay(&b, &units));
        }
    }

    #[test]
    fn psi_is_an_injective_homomorphism(seed in any::<u64>(), which in 0usize..9) {
        let p = &rings()[which];
        let loc = localize_coefficients(p).unwrap();
        let lp = loc.localized();
        let mut r = rng(seed);
        let f = random_poly(p, &mut r, 4, 3);
        let g = random_poly(p, &mut r, 4, 3);
        prop_assert_eq!(loc.psi(&p.multiply(&f, &g)), lp.multiply(&loc.psi(&f), &loc.psi(&g)));
        prop_assert_eq!(loc.psi(&f.add(&g)), loc.psi(&f).add(&loc.psi(&g)));
        prop_assert_eq!(loc.pull_back(&loc.psi(&f)), Some(f));
    }

    #[test]
    fn smith_form_is_an_equivalence(seed in any::<u64>(), rows in 1usize..7, cols in 1usize..7) {
        let mut r = rng(seed);
        let a: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| r.gen_range(-20..=20)).collect()).collect();
        let m = IntMatrix::from_i64(&a);
        let s = smith(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        let diag: Vec<BigInt> = (0..rows.min(cols)).map(|i| s.d.get(i, i).clone()).collect();
        for w in diag.windows(2) {
            prop_assert!(w[1].is_zero() || (&w[1] % &w[0]).is_zero());
        }
    }
}

#[test]
fn catalog_documents_round_trip() {
    for name in catalog::names() {
        let doc = catalog::load(name).unwrap();
        assert_eq!(
            parse_document(&print_document(&doc)).unwrap(),
            doc,
            "{name}"
        );
    }
}
