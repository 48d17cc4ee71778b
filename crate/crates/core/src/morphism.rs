//! Endomorphisms fixing the coefficient ring: validation, evaluation and
//! the diagonal and affine classifications.

use std::collections::HashMap;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::quasi::associated_graded;
use crate::ring::{Constraint, Presentation, SkewPoly, ValidationReport, Violation};
use crate::units::{UnitGroup, DEFAULT_PRIME_BOUND};

/// Images `y_i = λ(x_i)` of the variables; coefficients are fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endomorphism {
    presentation: Presentation,
    images: Vec<SkewPoly>,
    validated: bool,
}

impl Endomorphism {
    pub fn new(p: &Presentation, images: Vec<SkewPoly>) -> Result<Self> {
        if images.len() != p.n() {
            return Err(Error::InvalidPresentation(format!(
                "{} images for {} variables",
                images.len(),
                p.n()
            )));
        }
        for y in &images {
            p.check_poly(y)?;
        }
        Ok(Endomorphism {
            presentation: p.clone(),
            images,
            validated: false,
        })
    }

    pub fn identity(p: &Presentation) -> Self {
        Endomorphism {
            presentation: p.clone(),
            images: (0..p.n()).map(|i| p.var(i)).collect(),
            validated: true,
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn images(&self) -> &[SkewPoly] {
        &self.images
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    /// Runs [`validate_endomorphism`] and records success.
    pub fn validate(&mut self) -> ValidationReport {
        let rep = validate_endomorphism(&self.presentation, &self.images);
        self.validated = rep.is_valid();
        rep
    }

    /// Builds and validates in one step.
    pub fn checked(
        p: &Presentation,
        images: Vec<SkewPoly>,
    ) -> Result<std::result::Result<Self, ValidationReport>> {
        let mut e = Self::new(p, images)?;
        let rep = e.validate();
        Ok(if rep.is_valid() { Ok(e) } else { Err(rep) })
    }

    pub fn apply(&self, f: &SkewPoly) -> Result<SkewPoly> {
        if !self.validated {
            return Err(Error::NotValidated);
        }
        substitute(&self.presentation, f, &self.images)
    }

    /// `self ∘ other`, validated when both factors are.
    pub fn compose(&self, other: &Endomorphism) -> Result<Endomorphism> {
        let images = other
            .images
            .iter()
            .map(|y| substitute(&self.presentation, y, &self.images))
            .collect::<Result<Vec<_>>>()?;
        Ok(Endomorphism {
            presentation: self.presentation.clone(),
            images,
            validated: self.validated && other.validated,
        })
    }
}

/// `(a x^t)^{-1}` for a unit monomial; `x^t` may only involve Laurent
/// variables.
pub fn invert_monomial(p: &Presentation, f: &SkewPoly) -> Result<SkewPoly> {
    let not_unit = || Error::NotAUnit(p.render(f));
    let (t, a) = f.as_monomial().ok_or_else(not_unit)?;
    if !a.is_unit() || t[p.r()..].iter().any(|&e| e != 0) {
        return Err(not_unit());
    }
    let neg: Vec<i64> = t.iter().map(|e| -e).collect();
    let prod = p.multiply(&p.monomial(&neg), f);
    let s = prod
        .as_monomial()
        .filter(|(e, _)| e.iter().all(|&x| x == 0))
        .map(|(_, c)| c.clone())
        .ok_or_else(not_unit)?;
    let b = p.backend().inverse(&s)?;
    Ok(SkewPoly::monomial(neg, b))
}

/// `Σ a_t y^t` for `f = Σ a_t x^t`. Negative exponents need unit
/// monomial images.
pub fn substitute(p: &Presentation, f: &SkewPoly, images: &[SkewPoly]) -> Result<SkewPoly> {
    let mut cache: HashMap<(usize, i64), SkewPoly> = HashMap::new();
    let mut power = |i: usize, k: i64| -> Result<SkewPoly> {
        if let Some(v) = cache.get(&(i, k)) {
            return Ok(v.clone());
        }
        let base = if k < 0 {
            invert_monomial(p, &images[i])?
        } else {
            images[i].clone()
        };
        let v = p.pow(&base, k.unsigned_abs() as u32);
        cache.insert((i, k), v.clone());
        Ok(v)
    };
    let mut out = p.zero();
    for (t, a) in f.terms() {
        let mut term = p.constant(a.clone());
        for (i, &k) in t.iter().enumerate() {
            if k != 0 {
                term = p.multiply(&term, &power(i, k)?);
            }
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// Checks that the images satisfy every defining relation.
pub fn validate_endomorphism(p: &Presentation, images: &[SkewPoly]) -> ValidationReport {
    let mut rep = ValidationReport::default();
    if images.len() != p.n() {
        rep.push(
            Constraint::InvalidImage {
                i: images.len().min(p.n()) + 1,
            },
            format!("{} images for {} variables", images.len(), p.n()),
        );
        return rep;
    }
    let mut ok = true;
    for (i, y) in images.iter().enumerate() {
        if let Err(e) = p.check_poly(y) {
            rep.push(Constraint::InvalidImage { i: i + 1 }, e.to_string());
            ok = false;
        }
    }
    if !ok {
        return rep;
    }
    let b = p.backend();
    let n = p.n();
    for j in 0..n {
        for i in 0..j {
            let (yj, yi) = (&images[j], &images[i]);
            let lhs = p.multiply(yj, yi);
            let mut rhs = p.multiply(yi, yj).scale_left(p.c(j, i));
            if let Some(d) = p.d(j, i) {
                match substitute(p, d, images) {
                    Ok(v) => rhs = rhs.add(&v),
                    Err(_) => continue,
                }
            }
            if lhs != rhs {
                rep.push(
                    Constraint::Relation { j: j + 1, i: i + 1 },
                    format!(
                        "y{0}*y{1} = {2} but c_{{{0},{1}}}*y{1}*y{0} + d_{{{0},{1}}}(y) = {3}",
                        j + 1,
                        i + 1,
                        p.render(&lhs),
                        p.render(&rhs)
                    ),
                );
            }
        }
    }
    for (i, y) in images.iter().enumerate() {
        for g in b.generators() {
            let lhs = p.mul_coeff_right(y, &g);
            let rhs = y
                .scale_left(&b.sigma(i, &g, 1))
                .add(&p.constant(b.delta(i, &g)));
            if lhs != rhs {
                rep.push(
                    Constraint::CoefficientRule {
                        i: i + 1,
                        generator: b.render(&g),
                    },
                    format!(
                        "y{0}*{1} = {2} but σ_{0}({1})*y{0} + δ_{0}({1}) = {3}",
                        i + 1,
                        b.render(&g),
                        p.render(&lhs),
                        p.render(&rhs)
                    ),
                );
            }
        }
    }
    for (i, y) in images.iter().enumerate().take(p.r()) {
        if y.len() > 1 {
            rep.push(
                Constraint::Unverifiable { i: i + 1 },
                format!(
                    "y{} = {} is not a monomial; unit status undecided",
                    i + 1,
                    p.render(y)
                ),
            );
        } else if invert_monomial(p, y).is_err() {
            rep.push(
                Constraint::NotAUnit { i: i + 1 },
                format!("y{} = {} is not a unit", i + 1, p.render(y)),
            );
        }
    }
    rep
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// `λ(x_w) = λ_w x_w^ε`. `non_units` lists the 1-based indices whose
    /// scalar is not a unit (zero images included).
    Diagonal {
        scalars: Vec<Coeff>,
        epsilon: i8,
        non_units: Vec<usize>,
    },
    /// `λ(x_w) = a_{w0} + λ_w x_w`.
    Affine {
        constants: Vec<Coeff>,
        scalars: Vec<Coeff>,
    },
    HypothesesNotMet {
        reasons: Vec<String>,
    },
    NotEndomorphism {
        witness: Violation,
    },
}

impl Classification {
    pub fn verdict(&self) -> &'static str {
        match self {
            Classification::Diagonal { .. } => "diagonal",
            Classification::Affine { .. } => "affine",
            Classification::HypothesesNotMet { .. } => "hypotheses_not_met",
            Classification::NotEndomorphism { .. } => "not_endomorphism",
        }
    }
}

/// Failed clauses of "the `c_{i,j}`, `i < j`, are independent in `R*/N`".
pub(crate) fn generality_reasons(p: &Presentation, prime_bound: u64) -> Result<Vec<String>> {
    let b = p.backend();
    let mut units = Vec::new();
    let mut reasons = Vec::new();
    for j in 0..p.n() {
        for i in 0..j {
            let c = p.c_entry(i, j).filter(|c| c.is_unit());
            match c {
                Some(c) => units.push(c.clone()),
                None => reasons.push(format!(
                    "not general: c_{{{},{}}} is not a unit",
                    i + 1,
                    j + 1
                )),
            }
        }
    }
    if reasons.is_empty() && !units.is_empty() {
        let ind = UnitGroup::new(b, prime_bound).independence(&units)?;
        if let Some(cert) = ind.certificate {
            let m: Vec<String> = cert.m.iter().map(|x| x.to_string()).collect();
            reasons.push(format!(
                "not general: the c_{{i,j}} (i < j) are dependent in R*/N with exponents ({})",
                m.join(", ")
            ));
        }
    }
    Ok(reasons)
}

fn nonzero_count_reason(images: &[SkewPoly], n: usize) -> Option<String> {
    let nonzero = images.iter().filter(|y| !y.is_zero()).count();
    if n < 3 {
        Some(format!(
            "n = {n} < 3: fewer than three nonzero images possible"
        ))
    } else if nonzero < 3 {
        Some(format!("only {nonzero} nonzero images, three are needed"))
    } else {
        None
    }
}

/// Pairs `(i, j)`, `i > j`, 1-based, whose leading exponents `l` of `y_i`
/// and `t` of `y_j` break `l_r t_s = δ_{ri}δ_{sj} + t_r l_s` for some `r > s`.
pub fn leading_exponent_check(images: &[SkewPoly]) -> Vec<(usize, usize)> {
    let n = images.len();
    let mut bad = Vec::new();
    for i in 0..n {
        for j in 0..i {
            let (Ok((l, _)), Ok((t, _))) = (images[i].leading_term(), images[j].leading_term())
            else {
                continue;
            };
            let holds = (0..n).all(|r| {
                (0..r).all(|s| {
                    let kd = i64::from(r == i && s == j);
                    l[r] * t[s] == kd + t[r] * l[s]
                })
            });
            if !holds {
                bad.push((i + 1, j + 1));
            }
        }
    }
    bad
}

/// Reads `λ(x_w) = λ_w x_w^ε` off the images, if they have that shape.
pub(crate) fn diagonal_shape(
    p: &Presentation,
    images: &[SkewPoly],
    epsilon: i64,
) -> Option<Vec<Coeff>> {
    let b = p.backend();
    images
        .iter()
        .enumerate()
        .map(|(w, y)| {
            if y.is_zero() {
                return Some(b.zero());
            }
            let (e, c) = y.as_monomial()?;
            let shape = e
                .iter()
                .enumerate()
                .all(|(k, &x)| x == if k == w { epsilon } else { 0 });
            shape.then(|| c.clone())
        })
        .collect()
}

pub(crate) fn diagonal(scalars: Vec<Coeff>, epsilon: i8) -> Classification {
    let non_units = scalars
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_unit())
        .map(|(w, _)| w + 1)
        .collect();
    Classification::Diagonal {
        scalars,
        epsilon,
        non_units,
    }
}

/// Witness for an image set that the theorem rules out.
pub(crate) fn contradiction(p: &Presentation, images: &[SkewPoly], why: &str) -> Classification {
    let rep = validate_endomorphism(p, images);
    match rep.violations.into_iter().next() {
        Some(witness) => Classification::NotEndomorphism { witness },
        None => Classification::HypothesesNotMet {
            reasons: vec![format!("valid images contradict the classification: {why}")],
        },
    }
}

/// Diagonal classification of endomorphisms of a general quasi-commutative
/// extension with `r = 0`.
pub fn classify_quasi_commutative(p: &Presentation, images: &[SkewPoly]) -> Result<Classification> {
    classify_quasi_commutative_with(p, images, DEFAULT_PRIME_BOUND)
}

pub fn classify_quasi_commutative_with(
    p: &Presentation,
    images: &[SkewPoly],
    prime_bound: u64,
) -> Result<Classification> {
    if !p.is_quasi_commutative() {
        return Err(Error::NotQuasiCommutative);
    }
    if p.r() > 0 {
        return Err(Error::LaurentUnsupported);
    }
    let mut reasons = Vec::new();
    reasons.extend(nonzero_count_reason(images, p.n()));
    reasons.extend(generality_reasons(p, prime_bound)?);
    for (w, y) in images.iter().enumerate() {
        if let Ok((_, c)) = y.leading_term() {
            if !c.is_unit() {
                reasons.push(format!(
                    "leading coefficient {} of y{} is not a unit",
                    p.backend().render(c),
                    w + 1
                ));
            }
        }
    }
    if !reasons.is_empty() {
        return Ok(Classification::HypothesesNotMet { reasons });
    }
    if let Some(&(i, j)) = leading_exponent_check(images).first() {
        let rep = validate_endomorphism(p, images);
        let witness = rep
            .violations
            .iter()
            .find(|v| v.constraint == Constraint::Relation { j: i, i: j })
            .or(rep.violations.first())
            .cloned();
        if let Some(witness) = witness {
            return Ok(Classification::NotEndomorphism { witness });
        }
    }
    let rep = validate_endomorphism(p, images);
    if let Some(witness) = rep.violations.into_iter().next() {
        return Ok(Classification::NotEndomorphism { witness });
    }
    match diagonal_shape(p, images, 1) {
        Some(scalars) => Ok(diagonal(scalars, 1)),
        None => Ok(contradiction(p, images, "an image is not λ_w x_w")),
    }
}

/// Affine classification of filtered endomorphisms (`deg y_i ≤ 1`).
pub fn classify_filtered(p: &Presentation, images: &[SkewPoly]) -> Result<Classification> {
    classify_filtered_with(p, images, DEFAULT_PRIME_BOUND)
}

pub fn classify_filtered_with(
    p: &Presentation,
    images: &[SkewPoly],
    prime_bound: u64,
) -> Result<Classification> {
    if p.r() > 0 {
        return Err(Error::LaurentUnsupported);
    }
    for (w, y) in images.iter().enumerate() {
        if !p.in_filtration(y, 1)? {
            return Err(Error::NotFiltered(format!(
                "y{} = {} has degree {}",
                w + 1,
                p.render(y),
                p.degree(y)?
            )));
        }
    }
    let gr = associated_graded(p)?;
    let b = p.backend();
    let mut reasons = Vec::new();
    reasons.extend(nonzero_count_reason(images, p.n()));
    reasons.extend(
        generality_reasons(&gr, prime_bound)?
            .into_iter()
            .map(|r| format!("Gr: {r}")),
    );
    for (w, y) in images.iter().enumerate() {
        if y.is_zero() {
            continue;
        }
        if p.degree(y)? == 0 {
            reasons.push(format!("y{} = {} lies in F_0", w + 1, p.render(y)));
        } else if let Ok((_, c)) = y.leading_term() {
            if !c.is_unit() {
                reasons.push(format!(
                    "leading coefficient {} of y{} is not a unit",
                    b.render(c),
                    w + 1
                ));
            }
        }
    }
    if !reasons.is_empty() {
        return Ok(Classification::HypothesesNotMet { reasons });
    }
    let rep = validate_endomorphism(p, images);
    if let Some(witness) = rep.violations.into_iter().next() {
        return Ok(Classification::NotEndomorphism { witness });
    }
    let graded: Vec<SkewPoly> = images.iter().map(|y| y.homogeneous(1)).collect();
    match classify_quasi_commutative_with(&gr, &graded, prime_bound)? {
        Classification::Diagonal { scalars, .. } => {
            let constants = images
                .iter()
                .map(|y| y.constant_term().cloned().unwrap_or_else(|| b.zero()))
                .collect();
            Ok(Classification::Affine { constants, scalars })
        }
        Classification::NotEndomorphism { witness } => Ok(Classification::HypothesesNotMet {
            reasons: vec![format!(
                "Gr(λ) is not an endomorphism of Gr(A): {}",
                witness.message
            )],
        }),
        other => Ok(other),
    }
}

/// The inverse of a diagonal automorphism, checked on generators.
pub fn invert_diagonal(p: &Presentation, class: &Classification) -> Result<Endomorphism> {
    let Classification::Diagonal {
        scalars, epsilon, ..
    } = class
    else {
        return Err(Error::NotEndomorphismType(
            "not a diagonal classification".into(),
        ));
    };
    let b = p.backend();
    if let Some(w) = scalars.iter().position(|c| !c.is_unit()) {
        return Err(Error::NonUnitScalar(format!(
            "λ_{} = {}",
            w + 1,
            b.render(&scalars[w])
        )));
    }
    if *epsilon == -1 && p.r() < p.n() {
        return Err(Error::NotLaurent);
    }
    let forward: Vec<SkewPoly> = scalars
        .iter()
        .enumerate()
        .map(|(w, c)| SkewPoly::var_power(p.n(), w, i64::from(*epsilon), c.clone()))
        .collect();
    let inverse: Vec<SkewPoly> = if *epsilon == 1 {
        scalars
            .iter()
            .enumerate()
            .map(|(w, c)| Ok(SkewPoly::var_power(p.n(), w, 1, b.inverse(c)?)))
            .collect::<Result<_>>()?
    } else {
        // μ(x_w) = ν_w x_w^{-1} with λ(μ(x_w)) = ν_w (λ_w x_w^{-1})^{-1} = ν_w κ_w x_w.
        forward
            .iter()
            .enumerate()
            .map(|(w, y)| {
                let inv = invert_monomial(p, y)?;
                let kappa = inv
                    .coeff(&unit_vector(p.n(), w, 1))
                    .cloned()
                    .expect("monomial inverse");
                Ok(SkewPoly::var_power(p.n(), w, -1, b.inverse(&kappa)?))
            })
            .collect::<Result<_>>()?
    };
    let lam = Endomorphism {
        presentation: p.clone(),
        images: forward,
        validated: true,
    };
    let mu = Endomorphism {
        presentation: p.clone(),
        images: inverse,
        validated: true,
    };
    for w in 0..p.n() {
        let x = p.var(w);
        if lam.apply(&mu.apply(&x)?)? != x || mu.apply(&lam.apply(&x)?)? != x {
            return Err(Error::InvalidPresentation(format!(
                "composite does not fix {}",
                p.names()[w]
            )));
        }
    }
    Ok(mu)
}

fn unit_vector(n: usize, w: usize, e: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[w] = e;
    v
}

/// The linear criterion `α_{ik}α_{jl}(1 − q_{ij}q_{lk}) = α_{il}α_{jk}(q_{ij} − q_{lk})`
/// for all `i < j`, `k ≤ l`, where `λ(x_i) = Σ_k α_{ik} x_k`.
pub fn linear_criterion(q: &[Vec<Coeff>], alpha: &[Vec<Coeff>]) -> bool {
    let n = q.len();
    let one = q[0][0].one_like();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                for l in k..n {
                    let lhs = alpha[i][k]
                        .mul(&alpha[j][l])
                        .mul(&one.sub(&q[i][j].mul(&q[l][k])));
                    let rhs = alpha[i][l].mul(&alpha[j][k]).mul(&q[i][j].sub(&q[l][k]));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// [`linear_criterion`] with `Q` read from a quantum space presentation.
pub fn alev_chamarie_linear_check(p: &Presentation, alpha: &[Vec<Coeff>]) -> Result<bool> {
    let b = p.backend();
    if !b.is_field() {
        return Err(Error::NotQuantumSpace(
            "coefficients must form a field".into(),
        ));
    }
    if p.r() > 0 || !p.is_quasi_commutative() {
        return Err(Error::NotQuantumSpace(
            "need r = 0 and no lower terms".into(),
        ));
    }
    if let Some(i) = (0..p.n()).find(|&i| !b.sigma_is_identity(i)) {
        return Err(Error::NotQuantumSpace(format!(
            "σ_{} is not the identity",
            i + 1
        )));
    }
    if alpha.len() != p.n() || alpha.iter().any(|r| r.len() != p.n()) {
        return Err(Error::InvalidPresentation("alpha must be n×n".into()));
    }
    let q: Vec<Vec<Coeff>> = (0..p.n())
        .map(|i| {
            (0..p.n())
                .map(|j| p.c_entry(i, j).cloned().expect("field entries are units"))
                .collect()
        })
        .collect();
    Ok(linear_criterion(&q, alpha))
}

/// Images `y_i = Σ_k α_{ik} x_k`.
pub fn linear_images(p: &Presentation, alpha: &[Vec<Coeff>]) -> Vec<SkewPoly> {
    alpha
        .iter()
        .map(|row| {
            SkewPoly::from_terms(
                p.n(),
                row.iter()
                    .enumerate()
                    .map(|(k, a)| (unit_vector(p.n(), k, 1), a.clone())),
            )
        })
        .collect()
}
