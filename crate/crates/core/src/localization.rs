//! Ore localization of the coefficients, Laurent variables, and the
//! classification of endomorphisms over both.

use crate::coeff::{Backend, Coeff};
use crate::error::{Error, Result};
use crate::morphism::{
    classify_quasi_commutative_with, contradiction, diagonal, diagonal_shape, generality_reasons,
    validate_endomorphism, Classification,
};
use crate::quasi::twist;
use crate::ring::{Presentation, SkewPoly};
use crate::units::DEFAULT_PRIME_BOUND;

/// A presentation over `R` next to the same relations over `S^{-1}R`.
#[derive(Clone, Debug)]
pub struct Localization {
    base: Presentation,
    localized: Presentation,
}

impl Localization {
    pub fn base(&self) -> &Presentation {
        &self.base
    }

    pub fn localized(&self) -> &Presentation {
        &self.localized
    }

    /// `ψ(Σ a_t x^t) = Σ (a_t/1) x^t`.
    pub fn psi(&self, f: &SkewPoly) -> SkewPoly {
        let b = self.localized.backend();
        f.map_coeffs(|c| b.to_fraction(c))
    }

    /// Preimage under `ψ` when every coefficient lies in `R`.
    pub fn pull_back(&self, f: &SkewPoly) -> Option<SkewPoly> {
        let b = self.base.backend();
        let terms = f
            .terms()
            .iter()
            .map(|(e, c)| b.from_fraction(c).map(|c| (e.clone(), c)))
            .collect::<Option<Vec<_>>>()?;
        Some(SkewPoly::from_terms(f.nvars(), terms))
    }
}

/// Replaces the coefficients by their fraction field, with `σ̄(a/s) =
/// σ(a)/σ(s)` and the quotient rule for `δ̄`. Rational and prime-field
/// coefficients are already fields and are kept.
pub fn localize_coefficients(p: &Presentation) -> Result<Localization> {
    let fb: Backend = p.backend().fraction_field();
    let localized = p.map_coefficients(fb.clone(), |c| fb.to_fraction(c))?;
    Ok(Localization {
        base: p.clone(),
        localized,
    })
}

/// Inverts `x_1, …, x_r` in a quasi-commutative bijective extension.
pub fn build_quantum_laurent(p: &Presentation, r: usize) -> Result<Presentation> {
    if r == 0 {
        return Ok(p.clone());
    }
    if !p.is_quasi_commutative() {
        return Err(Error::NotQuasiCommutative);
    }
    if !p.is_bijective() {
        return Err(Error::NotBijective("some c_{j,i} is not a unit".into()));
    }
    p.with_laurent(r)
}

/// The scalar `a` with `x_i^t x_j^s = a · x_j^s x_i^t`, namely
/// `T_{σ_i}(t, T_{σ_j}(s, q_{ij}))`.
pub fn laurent_commutation(p: &Presentation, i: usize, j: usize, s: i64, t: i64) -> Result<Coeff> {
    if !p.is_quasi_commutative() {
        return Err(Error::NotQuasiCommutative);
    }
    for (k, e) in [(i, t), (j, s)] {
        if k >= p.n() {
            return Err(Error::InvalidExponent(format!(
                "no variable with index {}",
                k + 1
            )));
        }
        if e < 0 && k >= p.r() {
            return Err(Error::InvalidExponent(format!(
                "negative exponent on non-Laurent variable {}",
                p.names()[k]
            )));
        }
    }
    let b = p.backend();
    if i == j {
        return Ok(b.one());
    }
    let q = p.c_entry(i, j).expect("quasi-commutative entries are set");
    twist(b, i, t, &twist(b, j, s, q)?)
}

fn count_reason(images: &[SkewPoly]) -> Option<String> {
    let nonzero = images.iter().filter(|y| !y.is_zero()).count();
    (nonzero < 3).then(|| format!("only {nonzero} nonzero images, three are needed"))
}

/// `λ(x_w) = λ_w x_w^ε` on a general skew quantum polynomial ring.
pub fn classify_quantum(p: &Presentation, images: &[SkewPoly]) -> Result<Classification> {
    classify_quantum_with(p, images, DEFAULT_PRIME_BOUND)
}

pub fn classify_quantum_with(
    p: &Presentation,
    images: &[SkewPoly],
    prime_bound: u64,
) -> Result<Classification> {
    if !p.is_laurent() {
        return Err(Error::NotLaurent);
    }
    let b = p.backend();
    let mut reasons = Vec::new();
    reasons.extend(count_reason(images));
    reasons.extend(generality_reasons(p, prime_bound)?);
    for (w, y) in images.iter().enumerate() {
        if let (Ok((_, hi)), Ok((_, lo))) = (y.leading_term(), y.smallest_term()) {
            if !hi.is_unit() {
                reasons.push(format!(
                    "leading coefficient {} of y{} is not a unit",
                    b.render(hi),
                    w + 1
                ));
            }
            if !lo.is_unit() {
                reasons.push(format!(
                    "smallest coefficient {} of y{} is not a unit",
                    b.render(lo),
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
    let forced_plus = images
        .iter()
        .enumerate()
        .any(|(w, y)| w >= p.r() && !y.is_zero());
    if let Some(s) = diagonal_shape(p, images, 1) {
        return Ok(diagonal(s, 1));
    }
    if !forced_plus {
        if let Some(s) = diagonal_shape(p, images, -1) {
            return Ok(diagonal(s, -1));
        }
    }
    Ok(contradiction(p, images, "an image is not λ_w x_w^ε"))
}

/// Classifies over the coefficient localization and pulls the scalars back.
/// Independence is tested over the fraction backend.
pub fn classify_over_ore(p: &Presentation, images: &[SkewPoly]) -> Result<Classification> {
    classify_over_ore_with(p, images, DEFAULT_PRIME_BOUND)
}

pub fn classify_over_ore_with(
    p: &Presentation,
    images: &[SkewPoly],
    prime_bound: u64,
) -> Result<Classification> {
    if !p.is_quasi_commutative() {
        return Err(Error::NotQuasiCommutative);
    }
    let loc = localize_coefficients(p)?;
    let lp = loc.localized();
    let general = generality_reasons(lp, prime_bound)?;
    if !general.is_empty() {
        return Err(Error::IndependenceFails(general.join("; ")));
    }
    if let Some(r) = count_reason(images) {
        return Ok(Classification::HypothesesNotMet { reasons: vec![r] });
    }
    let lifted: Vec<SkewPoly> = images.iter().map(|y| loc.psi(y)).collect();
    let cls = if lp.is_laurent() {
        classify_quantum_with(lp, &lifted, prime_bound)?
    } else {
        classify_quasi_commutative_with(lp, &lifted, prime_bound)?
    };
    Ok(match cls {
        Classification::Diagonal {
            scalars, epsilon, ..
        } => {
            let b = p.backend();
            let pulled = scalars
                .iter()
                .map(|c| b.from_fraction(c))
                .collect::<Option<Vec<_>>>()
                .expect("scalars of images over R lie in R");
            diagonal(pulled, epsilon)
        }
        other => other,
    })
}
