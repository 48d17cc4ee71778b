//! Fixed workloads shared by the benchmarks.

use skewpbw::{catalog, parse_poly, Presentation, SkewPoly};

pub fn ring(name: &str) -> Presentation {
    catalog::load(name).unwrap().ring().unwrap()
}

/// A dense polynomial of total degree `k` in every variable of `p`.
pub fn dense(p: &Presentation, k: usize) -> SkewPoly {
    let sum = p.names().join(" + ");
    parse_poly(p, &format!("(1 + {sum})^{k}")).unwrap()
}
