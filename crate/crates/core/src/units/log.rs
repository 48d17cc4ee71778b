//! Unit logarithms: coordinates of a unit in a free abelian group times a
//! finite cyclic torsion group.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::coeff::{pow_mod, Backend, BackendKind, Coeff, LaurentPoly};
use crate::error::{Error, Result};

/// A free generator of the unit group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LogAtom {
    Prime(BigInt),
    /// Integer greater than one with no prime factor below the bound.
    Cofactor(BigInt),
    Param(usize),
    /// Primitive integer polynomial, positive leading coefficient, not a monomial.
    Poly(LaurentPoly),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnitLog {
    pub free: BTreeMap<LogAtom, i64>,
    /// Residue in the cyclic torsion group of the given order.
    pub torsion: u64,
    pub order: u64,
}

impl UnitLog {
    pub fn zero(order: u64) -> Self {
        UnitLog {
            free: BTreeMap::new(),
            torsion: 0,
            order,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free.is_empty() && self.torsion == 0
    }

    fn bump(&mut self, atom: LogAtom, k: i64) {
        if k == 0 {
            return;
        }
        let e = self.free.entry(atom.clone()).or_insert(0);
        *e += k;
        if *e == 0 {
            self.free.remove(&atom);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, k) in &other.free {
            out.bump(a.clone(), *k);
        }
        out.torsion = add_mod(self.torsion, other.torsion, self.order);
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero(self.order);
        }
        UnitLog {
            free: self.free.iter().map(|(a, e)| (a.clone(), e * k)).collect(),
            torsion: (self.torsion as i128 * k as i128).rem_euclid(self.order.max(1) as i128)
                as u64,
            order: self.order,
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }
}

fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    if m <= 1 {
        0
    } else {
        (a + b) % m
    }
}

/// Torsion order of the unit group of the backend.
pub fn torsion_order(b: &Backend) -> u64 {
    match b.kind() {
        BackendKind::PrimeField(p) => p - 1,
        _ => 2,
    }
}

fn log_integer(n: &BigInt, sign: i64, bound: u64, out: &mut UnitLog) {
    let mut n = n.abs();
    let mut d = 2u64;
    while d <= bound {
        let db = BigInt::from(d);
        if &db * &db > n {
            break;
        }
        let mut k = 0;
        while n.is_multiple_of(&db) {
            n /= &db;
            k += 1;
        }
        out.bump(LogAtom::Prime(db), sign * k);
        d += 1;
    }
    if n > BigInt::one() {
        if n <= BigInt::from(bound) {
            out.bump(LogAtom::Prime(n), sign);
        } else {
            out.bump(LogAtom::Cofactor(n), sign);
        }
    }
}

fn log_rational(r: &BigRational, bound: u64, out: &mut UnitLog) {
    if r.is_negative() {
        out.torsion = add_mod(out.torsion, 1, out.order);
    }
    log_integer(r.numer(), 1, bound, out);
    log_integer(r.denom(), -1, bound, out);
}

/// Log of a nonzero polynomial, `sign` = +1 for numerators and -1 for
/// denominators.
fn log_poly(p: &LaurentPoly, sign: i64, bound: u64, out: &mut UnitLog) {
    let mins = p.min_exponents();
    for (k, &e) in mins.iter().enumerate() {
        out.bump(LogAtom::Param(k), sign * e);
    }
    let shifted = p.shift(&mins.iter().map(|x| -x).collect::<Vec<_>>());
    let (s, prim) = shifted.integer_primitive();
    let s = if sign < 0 { s.recip() } else { s };
    log_rational(&s, bound, out);
    if !prim.is_one() {
        out.bump(LogAtom::Poly(prim), sign);
    }
}

/// Smallest primitive root modulo the prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&f| pow_mod(g, (p - 1) / f, p) != 1))
        .expect("primes have primitive roots")
}

/// Discrete logarithm base the smallest primitive root, by baby-step giant-step.
pub fn discrete_log(u: u64, p: u64) -> u64 {
    let g = primitive_root(p);
    let n = p - 1;
    if n <= 1 {
        return 0;
    }
    let m = (n as f64).sqrt().ceil() as u64;
    let mut table = HashMap::with_capacity(m as usize);
    let mut cur = 1u64;
    for j in 0..m {
        table.entry(cur).or_insert(j);
        cur = cur * g % p;
    }
    let factor = pow_mod(pow_mod(g, m, p), p - 2, p);
    let mut gamma = u % p;
    for i in 0..=m {
        if let Some(&j) = table.get(&gamma) {
            return (i * m + j) % n;
        }
        gamma = gamma * factor % p;
    }
    unreachable!("discrete log exists for nonzero residues")
}

/// Log of a single unit, before any joint refinement of composite atoms.
pub fn unit_log(b: &Backend, u: &Coeff, prime_bound: u64) -> Result<UnitLog> {
    b.check(u)?;
    if !u.is_unit() {
        return Err(Error::NotAUnit(b.render(u)));
    }
    let mut out = UnitLog::zero(torsion_order(b));
    match u {
        Coeff::Rat(r) => log_rational(r, prime_bound, &mut out),
        Coeff::Fp { v, p } => out.torsion = discrete_log(*v, *p),
        Coeff::Laurent(p) => log_poly(p, 1, prime_bound, &mut out),
        Coeff::Frac(f) => {
            log_poly(f.numer(), 1, prime_bound, &mut out);
            log_poly(f.denom(), -1, prime_bound, &mut out);
        }
    }
    Ok(out)
}

/// Pairwise coprime base for a list of elements of a gcd domain.
fn coprime_base<T: Clone + PartialEq>(
    items: &[T],
    gcd: impl Fn(&T, &T) -> T,
    div: impl Fn(&T, &T) -> T,
    is_unit: impl Fn(&T) -> bool,
) -> Vec<T> {
    let mut base: Vec<T> = Vec::new();
    let mut work: Vec<T> = items.to_vec();
    'next: while let Some(a) = work.pop() {
        if is_unit(&a) {
            continue;
        }
        for idx in 0..base.len() {
            let g = gcd(&a, &base[idx]);
            if !is_unit(&g) {
                let b = base.swap_remove(idx);
                work.push(div(&a, &g));
                work.push(div(&b, &g));
                work.push(g);
                continue 'next;
            }
        }
        base.push(a);
    }
    base
}

fn decompose<T: Clone>(
    x: &T,
    base: &[T],
    try_div: impl Fn(&T, &T) -> Option<T>,
) -> Vec<(usize, i64)> {
    let mut x = x.clone();
    let mut out = Vec::new();
    for (i, b) in base.iter().enumerate() {
        let mut k = 0;
        while let Some(q) = try_div(&x, b) {
            x = q;
            k += 1;
        }
        if k > 0 {
            out.push((i, k));
        }
    }
    out
}

fn normalize_poly(p: &LaurentPoly) -> LaurentPoly {
    p.integer_primitive().1
}

/// Rewrites cofactor and polynomial atoms of all logs over one common
/// pairwise coprime base, making the coordinates jointly comparable.
pub fn refine(logs: &mut [UnitLog]) {
    let ints: Vec<BigInt> = collect(logs, |a| match a {
        LogAtom::Cofactor(n) => Some(n.clone()),
        _ => None,
    });
    if !ints.is_empty() {
        let base = coprime_base(&ints, |a, b| a.gcd(b), |a, b| a / b, |a| a.is_one());
        rewrite(
            logs,
            |a| matches!(a, LogAtom::Cofactor(_)),
            |a| {
                let LogAtom::Cofactor(n) = a else {
                    unreachable!()
                };
                decompose(n, &base, |x, b| x.is_multiple_of(b).then(|| x / b))
                    .into_iter()
                    .map(|(i, k)| (LogAtom::Cofactor(base[i].clone()), k))
                    .collect()
            },
        );
    }
    let polys: Vec<LaurentPoly> = collect(logs, |a| match a {
        LogAtom::Poly(p) => Some(p.clone()),
        _ => None,
    });
    if !polys.is_empty() {
        let base = coprime_base(
            &polys,
            |a, b| normalize_poly(&a.gcd(b)),
            |a, b| normalize_poly(&a.div_exact(b).expect("gcd divides")),
            |a| a.as_constant().is_some(),
        );
        rewrite(
            logs,
            |a| matches!(a, LogAtom::Poly(_)),
            |a| {
                let LogAtom::Poly(p) = a else { unreachable!() };
                decompose(p, &base, |x, b| {
                    if x.as_constant().is_some() {
                        None
                    } else {
                        x.div_exact(b)
                    }
                })
                .into_iter()
                .map(|(i, k)| (LogAtom::Poly(base[i].clone()), k))
                .collect()
            },
        );
    }
}

fn collect<T: PartialEq>(logs: &[UnitLog], pick: impl Fn(&LogAtom) -> Option<T>) -> Vec<T> {
    let mut out: Vec<T> = Vec::new();
    for l in logs {
        for a in l.free.keys() {
            if let Some(x) = pick(a) {
                if !out.contains(&x) {
                    out.push(x);
                }
            }
        }
    }
    out
}

fn rewrite(
    logs: &mut [UnitLog],
    selected: impl Fn(&LogAtom) -> bool,
    split: impl Fn(&LogAtom) -> Vec<(LogAtom, i64)>,
) {
    for l in logs.iter_mut() {
        let old: Vec<(LogAtom, i64)> = l
            .free
            .iter()
            .filter(|(a, _)| selected(a))
            .map(|(a, k)| (a.clone(), *k))
            .collect();
        for (a, k) in old {
            l.free.remove(&a);
            for (b, e) in split(&a) {
                l.bump(b, e * k);
            }
        }
    }
}

/// Exponent as a machine integer, for replaying relations.
pub(crate) fn small(x: &BigInt) -> Option<i64> {
    x.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> Coeff {
        Coeff::rat(n)
    }

    #[test]
    fn rational_factorization() {
        let b = Backend::rational(1);
        let l = unit_log(&b, &rat(12), 100).unwrap();
        assert_eq!(l.free.get(&LogAtom::Prime(2.into())), Some(&2));
        assert_eq!(l.free.get(&LogAtom::Prime(3.into())), Some(&1));
        assert_eq!(l.torsion, 0);
        let neg = unit_log(&b, &rat(-1), 100).unwrap();
        assert!(neg.free.is_empty());
        assert_eq!(neg.torsion, 1);
    }

    #[test]
    fn prime_field_log() {
        assert_eq!(primitive_root(5), 2);
        assert_eq!(discrete_log(2, 5), 1);
        assert_eq!(primitive_root(7), 3);
        for p in [5u64, 7, 11, 101, 65537] {
            let g = primitive_root(p);
            for u in 1..p.min(200) {
                assert_eq!(pow_mod(g, discrete_log(u, p), p), u);
            }
        }
    }

    #[test]
    fn laurent_scalar_and_params() {
        let b = Backend::laurent(&["q"], 1);
        let u = b.param(0).mul(&b.param(0)).mul(&b.from_int(-3));
        let l = unit_log(&b, &u, 100).unwrap();
        assert_eq!(l.torsion, 1);
        assert_eq!(l.free.get(&LogAtom::Prime(3.into())), Some(&1));
        assert_eq!(l.free.get(&LogAtom::Param(0)), Some(&2));
        assert!(unit_log(&b, &b.param(0).add(&b.one()), 100).is_err());
    }

    #[test]
    fn cofactors_are_refined_jointly() {
        // with bound 2, 15 and 21 stay composite until refined against each other
        let b = Backend::rational(1);
        let mut logs = vec![
            unit_log(&b, &rat(15 * 15), 2).unwrap(),
            unit_log(&b, &rat(21), 2).unwrap(),
        ];
        refine(&mut logs);
        let atoms: Vec<_> = logs[0]
            .free
            .keys()
            .chain(logs[1].free.keys())
            .cloned()
            .collect();
        assert!(atoms.contains(&LogAtom::Cofactor(3.into())));
        assert!(atoms.contains(&LogAtom::Cofactor(25.into())));
        assert!(atoms.contains(&LogAtom::Cofactor(7.into())));
    }

    #[test]
    fn polynomial_atoms_in_fractions() {
        let b = Backend::laurent(&["q"], 1).fraction_field();
        let q = b.param(0);
        let one = b.one();
        let a = q.add(&one);
        let u = a.mul(&a).mul(&q.sub(&one).inverse().unwrap());
        let mut logs = vec![unit_log(&b, &u, 10).unwrap(), unit_log(&b, &a, 10).unwrap()];
        refine(&mut logs);
        assert_eq!(logs[0].free.len(), 2);
        let p = logs[1].free.keys().next().unwrap().clone();
        assert_eq!(logs[0].free.get(&p), Some(&2));
    }
}
