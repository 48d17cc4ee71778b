//! Presentation checks. Violations are collected, never raised.

use serde::Serialize;

use super::poly::SkewPoly;
use super::presentation::Presentation;

/// A violated constraint. Indices are 1-based, as printed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Constraint {
    /// `c_{i,i} ≠ 1`.
    DiagonalNotOne { i: usize },
    /// `c_{i,j} c_{j,i} ≠ 1`.
    InversePair { i: usize, j: usize },
    /// `Q_{ijr} Q_{jri} Q_{rij} ≠ 1` with `Q_{ijr} = q_{ij} σ_j(q_{ir})`.
    Cocycle { i: usize, j: usize, r: usize },
    /// `σ_i σ_j ≠ σ_j σ_i` on a coefficient generator.
    SigmaCompatibility {
        i: usize,
        j: usize,
        generator: String,
    },
    /// `(a b) c ≠ a (b c)` for three variables or inverse variables.
    Associativity { word: String },
    /// `(x_j x_i) g ≠ x_j (x_i g)` for a coefficient generator `g`.
    CoefficientAssociativity { word: String, generator: String },
    /// `y_j y_i ≠ c_{j,i} y_i y_j + d_{j,i}(y)`.
    Relation { j: usize, i: usize },
    /// `y_i a ≠ σ_i(a) y_i + δ_i(a)`.
    CoefficientRule { i: usize, generator: String },
    /// An image is not a polynomial over the presentation.
    InvalidImage { i: usize },
    /// The image of a Laurent variable is not a unit.
    NotAUnit { i: usize },
    /// The image of a Laurent variable is not a monomial, so unit-ness is
    /// not decided.
    Unverifiable { i: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    #[serde(flatten)]
    pub constraint: Constraint,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, constraint: Constraint, message: String) {
        self.violations.push(Violation {
            constraint,
            message,
        });
    }
}

impl Presentation {
    /// Runs every structural and associativity check on the presentation.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let b = self.backend();
        let n = self.n();
        let show = |a: &crate::coeff::Coeff| b.render(a);

        for i in 0..n {
            if let Some(c) = self.c_entry(i, i) {
                if !c.is_one() {
                    rep.push(
                        Constraint::DiagonalNotOne { i: i + 1 },
                        format!("c_{{{0},{0}}} = {1} ≠ 1", i + 1, show(c)),
                    );
                }
            }
        }

        let all_units =
            (0..n).all(|a| (0..n).all(|c| self.c_entry(a, c).is_some_and(|v| v.is_unit())));
        for j in 0..n {
            for i in 0..j {
                if let (Some(a), Some(c)) = (self.c_entry(i, j), self.c_entry(j, i)) {
                    let prod = a.mul(c);
                    if (all_units || self.is_bijective()) && !prod.is_one() {
                        rep.push(
                            Constraint::InversePair { i: i + 1, j: j + 1 },
                            format!(
                                "c_{{{},{}}}c_{{{},{}}} = {} ≠ 1",
                                i + 1,
                                j + 1,
                                j + 1,
                                i + 1,
                                show(&prod)
                            ),
                        );
                    }
                }
            }
        }

        if self.is_quasi_commutative() && all_units {
            let q = |a: usize, c: usize| self.c_entry(a, c).unwrap();
            let big_q = |i: usize, j: usize, r: usize| q(i, j).mul(&b.sigma(j, q(i, r), 1));
            for i in 0..n {
                for j in 0..n {
                    for r in 0..n {
                        if i == j || j == r || i == r {
                            continue;
                        }
                        let v = big_q(i, j, r).mul(&big_q(j, r, i)).mul(&big_q(r, i, j));
                        if !v.is_one() {
                            rep.push(
                                Constraint::Cocycle {
                                    i: i + 1,
                                    j: j + 1,
                                    r: r + 1,
                                },
                                format!(
                                    "Q_{{{0}{1}{2}}}Q_{{{1}{2}{0}}}Q_{{{2}{0}{1}}} = {3} ≠ 1",
                                    i + 1,
                                    j + 1,
                                    r + 1,
                                    show(&v)
                                ),
                            );
                        }
                    }
                }
            }
        }

        let gens = b.generators();
        for j in 0..n {
            for i in 0..j {
                for g in &gens {
                    let ij = b.sigma(i, &b.sigma(j, g, 1), 1);
                    let ji = b.sigma(j, &b.sigma(i, g, 1), 1);
                    if ij != ji {
                        rep.push(
                            Constraint::SigmaCompatibility {
                                i: i + 1,
                                j: j + 1,
                                generator: show(g),
                            },
                            format!(
                                "σ_{0}σ_{1}({2}) = {3} but σ_{1}σ_{0}({2}) = {4}",
                                i + 1,
                                j + 1,
                                show(g),
                                show(&ij),
                                show(&ji)
                            ),
                        );
                    }
                }
            }
        }

        let letters: Vec<(usize, i64)> = (0..n)
            .flat_map(|v| {
                let mut l = vec![(v, 1)];
                if v < self.r() {
                    l.push((v, -1));
                }
                l
            })
            .collect();
        let mono = |(v, e): (usize, i64)| SkewPoly::var_power(n, v, e, b.one());
        let name = |(v, e): (usize, i64)| {
            if e == 1 {
                self.names()[v].clone()
            } else {
                format!("{}^-1", self.names()[v])
            }
        };
        for &a in &letters {
            for &m in &letters {
                if m.0 >= a.0 {
                    continue;
                }
                for &c in &letters {
                    if c.0 >= m.0 {
                        continue;
                    }
                    let (fa, fm, fc) = (mono(a), mono(m), mono(c));
                    let left = self.multiply(&self.multiply(&fa, &fm), &fc);
                    let right = self.multiply(&fa, &self.multiply(&fm, &fc));
                    if left != right {
                        let word = format!("{}*{}*{}", name(a), name(m), name(c));
                        rep.push(
                            Constraint::Associativity { word: word.clone() },
                            format!(
                                "({word}) grouped left = {} but grouped right = {}",
                                self.render(&left),
                                self.render(&right)
                            ),
                        );
                    }
                }
                for g in &gens {
                    let (fa, fm, fg) = (mono(a), mono(m), self.constant(g.clone()));
                    let left = self.multiply(&self.multiply(&fa, &fm), &fg);
                    let right = self.multiply(&fa, &self.multiply(&fm, &fg));
                    if left != right {
                        let word = format!("{}*{}", name(a), name(m));
                        rep.push(
                            Constraint::CoefficientAssociativity {
                                word: word.clone(),
                                generator: show(g),
                            },
                            format!(
                                "({word})*{} = {} but {}*({}*{}) = {}",
                                show(g),
                                self.render(&left),
                                name(a),
                                name(m),
                                show(g),
                                self.render(&right)
                            ),
                        );
                    }
                }
            }
        }
        rep
    }
}
