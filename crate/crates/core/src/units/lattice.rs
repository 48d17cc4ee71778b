//! The subgroup `N = ⟨[R*,R*], z^{-1}σ_i(z)⟩` and independence in `R*/N`.
//!
//! Every supported backend is commutative, so the commutator part of `N` is
//! trivial and `N` is generated by the twists `z^{-1}σ_i(z)`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::intmat::{hermite, left_kernel, reduce_mod_lattice, IntMatrix};
use super::log::{refine, small, torsion_order, unit_log, LogAtom, UnitLog};
use crate::coeff::{Backend, BackendKind, Coeff};
use crate::error::{Error, Result};

pub const DEFAULT_PRIME_BOUND: u64 = 1000;

/// Generators of `N` with their logs and the ambient torsion order.
#[derive(Clone, Debug)]
pub struct NLattice {
    pub generators: Vec<Coeff>,
    pub logs: Vec<UnitLog>,
    pub torsion_order: u64,
}

/// A relation `∏ u_k^{m_k} · ∏ n_j^{μ_j} = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub m: Vec<BigInt>,
    pub n_generators: Vec<Coeff>,
    pub mu: Vec<BigInt>,
    /// Multiple of the torsion order absorbed by the relation.
    pub tau: BigInt,
}

#[derive(Clone, Debug)]
pub struct Independence {
    pub independent: bool,
    pub certificate: Option<Certificate>,
}

impl Certificate {
    /// Recomputes the product exactly in the backend.
    pub fn replay(&self, backend: &Backend, units: &[Coeff]) -> bool {
        let mut acc = backend.one();
        let pairs = units
            .iter()
            .zip(&self.m)
            .chain(self.n_generators.iter().zip(&self.mu));
        for (u, e) in pairs {
            let Some(e) = small(e) else { return false };
            match u.pow(e) {
                Some(p) => acc = acc.mul(&p),
                None => return false,
            }
        }
        acc.is_one()
    }
}

/// Unit-group computations over one backend.
#[derive(Clone, Debug)]
pub struct UnitGroup<'a> {
    backend: &'a Backend,
    prime_bound: u64,
}

impl<'a> UnitGroup<'a> {
    pub fn new(backend: &'a Backend, prime_bound: u64) -> Self {
        UnitGroup {
            backend,
            prime_bound: prime_bound.max(2),
        }
    }

    pub fn backend(&self) -> &Backend {
        self.backend
    }

    pub fn unit_log(&self, u: &Coeff) -> Result<UnitLog> {
        unit_log(self.backend, u, self.prime_bound)
    }

    /// Logs of several units over a common refined base.
    pub fn logs(&self, units: &[Coeff]) -> Result<Vec<UnitLog>> {
        let mut logs = units
            .iter()
            .map(|u| self.unit_log(u))
            .collect::<Result<Vec<_>>>()?;
        refine(&mut logs);
        Ok(logs)
    }

    /// Twists `z^{-1}σ_i(z)` over the unit generators of the backend.
    ///
    /// Laurent rings are covered exactly by the parameters. Rational
    /// function fields have infinitely many unit generators; there the
    /// polynomial atoms of `context` and their `σ_i^{±1}` images are added.
    pub fn n_generators(&self, context: &[Coeff]) -> Result<Vec<Coeff>> {
        let b = self.backend;
        let mut zs: Vec<Coeff> = match b.kind() {
            BackendKind::Rational | BackendKind::PrimeField(_) => Vec::new(),
            _ => (0..b.nparams()).map(|k| b.param(k)).collect(),
        };
        if matches!(b.kind(), BackendKind::RationalFunction(_)) {
            let mut atoms = BTreeSet::new();
            for l in self.logs(context)? {
                for a in l.free.keys() {
                    if let LogAtom::Poly(p) = a {
                        atoms.insert(p.clone());
                    }
                }
            }
            for p in atoms {
                let z = b.from_laurent(p)?;
                for i in 0..b.nvars() {
                    let back = b.sigma(i, &z, -1);
                    if back != z {
                        zs.push(back);
                    }
                }
                zs.push(z);
            }
        }
        let mut out: Vec<Coeff> = Vec::new();
        for z in &zs {
            let zi = z.inverse().expect("unit generator");
            for i in 0..b.nvars() {
                let t = zi.mul(&b.sigma(i, z, 1));
                if !t.is_one() && !out.contains(&t) {
                    out.push(t);
                }
            }
        }
        Ok(out)
    }

    pub fn n_lattice(&self, context: &[Coeff]) -> Result<NLattice> {
        let generators = self.n_generators(context)?;
        let logs = self.logs(&generators)?;
        Ok(NLattice {
            generators,
            logs,
            torsion_order: torsion_order(self.backend),
        })
    }

    /// Stacks logs into integer rows over a shared column order; the last
    /// column holds the torsion residue when the torsion group is nontrivial.
    fn matrix(&self, logs: &[UnitLog], with_torsion_row: bool) -> IntMatrix {
        let order = torsion_order(self.backend);
        let atoms: Vec<LogAtom> = logs
            .iter()
            .flat_map(|l| l.free.keys().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let tcol = order > 1;
        let cols = atoms.len() + usize::from(tcol);
        let mut rows: Vec<Vec<BigInt>> = logs
            .iter()
            .map(|l| {
                let mut r: Vec<BigInt> = atoms
                    .iter()
                    .map(|a| BigInt::from(*l.free.get(a).unwrap_or(&0)))
                    .collect();
                if tcol {
                    r.push(BigInt::from(l.torsion));
                }
                r
            })
            .collect();
        if tcol && with_torsion_row {
            let mut r = vec![BigInt::zero(); cols];
            r[cols - 1] = BigInt::from(order);
            rows.push(r);
        }
        IntMatrix::from_rows(rows, cols)
    }

    /// Decides whether the classes of `units` in `R*/N` are independent.
    pub fn independence(&self, units: &[Coeff]) -> Result<Independence> {
        for u in units {
            self.backend.check(u)?;
            if !u.is_unit() {
                return Err(Error::NotAUnit(self.backend.render(u)));
            }
        }
        let gens = self.n_generators(units)?;
        let mut all = units.to_vec();
        all.extend(gens.iter().cloned());
        let logs = self.logs(&all)?;
        let a = self.matrix(&logs, true);
        let k = units.len();
        let kernel = left_kernel(&a);
        if kernel.iter().all(|y| y[..k].iter().all(|x| x.is_zero())) {
            return Ok(Independence {
                independent: true,
                certificate: None,
            });
        }
        let (h, _) = hermite(&IntMatrix::from_rows(kernel, a.rows()));
        let mut row = h.row(0).to_vec();
        if row[..k]
            .iter()
            .find(|x| !x.is_zero())
            .is_some_and(|x| x.is_negative())
        {
            row.iter_mut().for_each(|x| *x = -&*x);
        }
        let ng = gens.len();
        let tau = if a.rows() > k + ng {
            row[k + ng].clone()
        } else {
            BigInt::zero()
        };
        Ok(Independence {
            independent: false,
            certificate: Some(Certificate {
                m: row[..k].to_vec(),
                n_generators: gens,
                mu: row[k..k + ng].to_vec(),
                tau,
            }),
        })
    }

    /// Canonical representatives of the classes of `units` modulo `N`, all
    /// expressed in one coordinate system so they can be compared directly.
    pub fn classes(&self, units: &[Coeff]) -> Result<Vec<Vec<BigInt>>> {
        let gens = self.n_generators(units)?;
        let mut all = units.to_vec();
        all.extend(gens.iter().cloned());
        let logs = self.logs(&all)?;
        let a = self.matrix(&logs, true);
        let k = units.len();
        let lattice_rows: Vec<Vec<BigInt>> = (k..a.rows()).map(|i| a.row(i).to_vec()).collect();
        let (h, _) = hermite(&IntMatrix::from_rows(lattice_rows, a.cols()));
        Ok((0..k).map(|i| reduce_mod_lattice(&h, a.row(i))).collect())
    }

    pub fn same_class(&self, a: &Coeff, b: &Coeff) -> Result<bool> {
        let c = self.classes(&[a.clone(), b.clone()])?;
        Ok(c[0] == c[1])
    }

    /// True when `u` lies in `N`.
    pub fn in_n(&self, u: &Coeff) -> Result<bool> {
        self.same_class(u, &self.backend.one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::MonomialMap;
    use num_rational::BigRational;

    fn rats(xs: &[i64]) -> Vec<Coeff> {
        xs.iter().map(|&x| Coeff::rat(x)).collect()
    }

    fn ints(xs: &[BigInt]) -> Vec<i64> {
        xs.iter().map(|x| small(x).unwrap()).collect()
    }

    #[test]
    fn rational_independence() {
        let b = Backend::rational(2);
        let g = UnitGroup::new(&b, 100);
        assert!(g.independence(&rats(&[2, 3, 5])).unwrap().independent);

        let units = rats(&[2, 3, 6]);
        let r = g.independence(&units).unwrap();
        assert!(!r.independent);
        let cert = r.certificate.unwrap();
        assert_eq!(ints(&cert.m), vec![1, 1, -1]);
        assert!(cert.replay(&b, &units));

        let units = rats(&[-1]);
        let cert = g.independence(&units).unwrap().certificate.unwrap();
        assert_eq!(ints(&cert.m), vec![2]);
        assert!(cert.replay(&b, &units));
    }

    #[test]
    fn twisted_parameter_is_dependent_on_its_scaling() {
        let b = Backend::laurent(&["q"], 1)
            .with_sigma(
                0,
                MonomialMap::scaling(1, 0, BigRational::from_integer(2.into())).unwrap(),
            )
            .unwrap();
        let g = UnitGroup::new(&b, 100);
        let gens = g.n_generators(&[]).unwrap();
        assert_eq!(gens, vec![b.from_int(2)]);
        let q = b.param(0);
        let units = vec![q.clone(), q.mul(&b.from_int(2))];
        let r = g.independence(&units).unwrap();
        assert!(!r.independent);
        assert!(r.certificate.unwrap().replay(&b, &units));
        assert!(g
            .same_class(&q.mul(&q).mul(&b.from_int(2)), &q.mul(&q))
            .unwrap());
    }

    #[test]
    fn prime_field_torsion_only() {
        let b = Backend::trivial(BackendKind::PrimeField(7), 1).unwrap();
        let g = UnitGroup::new(&b, 100);
        let lat = g.n_lattice(&[]).unwrap();
        assert!(lat.generators.is_empty());
        assert_eq!(lat.torsion_order, 6);
        let u = Coeff::Fp { v: 3, p: 7 };
        let cert = g.independence(&[u.clone()]).unwrap().certificate.unwrap();
        assert_eq!(ints(&cert.m), vec![6]);
    }

    #[test]
    fn non_units_are_rejected() {
        let b = Backend::rational(1);
        let g = UnitGroup::new(&b, 100);
        assert!(matches!(
            g.independence(&rats(&[0])),
            Err(Error::NotAUnit(_))
        ));
    }
}
