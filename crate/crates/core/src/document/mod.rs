//! Ring-definition documents.
//!
//! A document is JSON with the keys `backend`, `variables`, `relations` and the
//! optional `endomorphisms` and `directives`. Coefficients and polynomials are
//! strings in the expression grammar of [`expr`]. Relation keys are 1-based
//! index pairs: `"2,1"` under `c` sets `c_{2,1}` and under `d` sets `d_{2,1}`.
//!
//! ```json
//! {
//!   "name": "quantum-plane",
//!   "backend": { "kind": "laurent", "params": ["q"] },
//!   "variables": { "n": 2 },
//!   "relations": { "c": { "2,1": "q" } },
//!   "endomorphisms": { "diag": ["2*x1", "q*x2"] }
//! }
//! ```

pub mod expr;

use std::collections::BTreeMap;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::coeff::{Backend, BackendKind, Coeff, MonomialMap};
use crate::error::{Error, Result};
use crate::localization::{build_quantum_laurent, localize_coefficients};
use crate::ring::{Presentation, PresentationBuilder, SkewPoly};

use self::expr::{eval_coeff, eval_poly, parse_expr, ExprError};

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    description: Option<String>,
    backend: RawBackend,
    variables: RawVariables,
    #[serde(default)]
    relations: RawRelations,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    endomorphisms: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    directives: Option<Directives>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBackend {
    kind: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    params: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    modulus: Option<u64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    sigma: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    delta: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generators: Option<Vec<String>>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVariables {
    n: usize,
    #[serde(default, skip_serializing_if = "is_zero")]
    r: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

fn is_zero(r: &usize) -> bool {
    *r == 0
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRelations {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    c: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    d: BTreeMap<String, String>,
}

/// Post-processing applied by [`RingDocument::ring`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Directives {
    /// Pass to the fraction field of the coefficients.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub localize: bool,
    /// Invert the first `laurent` variables.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub laurent: Option<usize>,
}

/// A parsed document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDocument {
    pub name: Option<String>,
    pub description: Option<String>,
    /// The presentation exactly as written, before directives.
    pub presentation: Presentation,
    /// Declared generating set of the coefficient ring, if any.
    pub generators: Option<Vec<Coeff>>,
    /// Images of `x_1, …, x_n`, read in the ring after the `laurent` directive.
    pub endomorphisms: BTreeMap<String, Vec<SkewPoly>>,
    pub directives: Directives,
}

impl RingDocument {
    pub fn new(presentation: Presentation) -> Self {
        RingDocument {
            name: None,
            description: None,
            presentation,
            generators: None,
            endomorphisms: BTreeMap::new(),
            directives: Directives::default(),
        }
    }

    /// The presentation with the `laurent` directive applied.
    pub fn laurent_ring(&self) -> Result<Presentation> {
        match self.directives.laurent {
            Some(r) if r > 0 => build_quantum_laurent(&self.presentation, r),
            _ => Ok(self.presentation.clone()),
        }
    }

    /// The presentation with every directive applied.
    pub fn ring(&self) -> Result<Presentation> {
        let p = self.laurent_ring()?;
        if self.directives.localize {
            Ok(localize_coefficients(&p)?.localized().clone())
        } else {
            Ok(p)
        }
    }

    pub fn endomorphism(&self, name: &str) -> Result<&[SkewPoly]> {
        self.endomorphisms
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| {
                let known: Vec<&str> = self.endomorphisms.keys().map(String::as_str).collect();
                Error::Schema(format!(
                    "no endomorphism named '{name}' (available: {})",
                    if known.is_empty() {
                        "none".to_string()
                    } else {
                        known.join(", ")
                    }
                ))
            })
    }
}

/// Locates `needle` as a JSON string literal in `text`; 1-based line and
/// column of the character `offset` positions into it.
fn locate(text: &str, needle: &str, offset: usize) -> (usize, usize) {
    let quoted = serde_json::to_string(needle).unwrap_or_default();
    let Some(start) = text.find(&quoted) else {
        return (0, offset);
    };
    let before = &text[..start];
    let line = before.matches('\n').count() + 1;
    let line_start = before.rfind('\n').map_or(0, |k| k + 1);
    let col = text[line_start..start].chars().count() + 1 + offset;
    (line, col)
}

struct Ctx<'a> {
    text: &'a str,
}

impl Ctx<'_> {
    fn wrap(&self, source: &str, what: &str, e: ExprError) -> Error {
        let (line, column) = locate(self.text, source, e.column);
        if e.schema {
            Error::Schema(format!(
                "{what}: {} at line {line} column {column}",
                e.message
            ))
        } else {
            Error::Parse {
                line,
                column,
                message: format!("{what}: {}", e.message),
            }
        }
    }

    fn coeff(&self, b: &Backend, s: &str, what: &str) -> Result<Coeff> {
        parse_expr(s)
            .and_then(|e| eval_coeff(&e, b))
            .map_err(|e| self.wrap(s, what, e))
    }

    fn poly(&self, p: &Presentation, s: &str, what: &str) -> Result<SkewPoly> {
        parse_expr(s)
            .and_then(|e| eval_poly(&e, p))
            .map_err(|e| self.wrap(s, what, e))
    }
}

fn schema<T>(m: impl Into<String>) -> Result<T> {
    Err(Error::Schema(m.into()))
}

fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && cs.all(|c| c.is_alphanumeric() || c == '_')
}

fn pair_key(key: &str, n: usize, what: &str) -> Result<(usize, usize)> {
    let parts: Vec<&str> = key.split(',').map(str::trim).collect();
    let idx = |s: &str| {
        s.parse::<usize>()
            .ok()
            .filter(|&k| (1..=n).contains(&k))
            .map(|k| k - 1)
    };
    match parts.as_slice() {
        [a, b] => match (idx(a), idx(b)) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => schema(format!("{what} key \"{key}\" needs indices in 1..={n}")),
        },
        _ => schema(format!("{what} key \"{key}\" must look like \"j,i\"")),
    }
}

fn kind_of(raw: &RawBackend) -> Result<BackendKind> {
    let no_params = |k: &str| {
        if raw.params.is_empty() {
            Ok(())
        } else {
            schema(format!("backend kind '{k}' takes no params"))
        }
    };
    if raw.modulus.is_some() && raw.kind != "prime_field" {
        return schema("modulus is only allowed for kind 'prime_field'");
    }
    Ok(match raw.kind.as_str() {
        "rational" => {
            no_params("rational")?;
            BackendKind::Rational
        }
        "prime_field" => {
            no_params("prime_field")?;
            match raw.modulus {
                Some(p) => BackendKind::PrimeField(p),
                None => return schema("kind 'prime_field' needs a modulus"),
            }
        }
        "laurent" => BackendKind::Laurent(raw.params.clone()),
        "rational_function" => BackendKind::RationalFunction(raw.params.clone()),
        other => {
            return schema(format!(
                "unknown backend kind '{other}' (expected rational, prime_field, laurent or rational_function)"
            ))
        }
    })
}

fn kind_name(k: &BackendKind) -> &'static str {
    match k {
        BackendKind::Rational => "rational",
        BackendKind::PrimeField(_) => "prime_field",
        BackendKind::Laurent(_) => "laurent",
        BackendKind::RationalFunction(_) => "rational_function",
    }
}

/// Reads `scale * q_k` back from a coefficient.
fn as_scaled_param(a: &Coeff) -> Option<(usize, num_rational::BigRational)> {
    let lp = match a {
        Coeff::Laurent(p) => p.clone(),
        Coeff::Frac(f) => f.as_laurent()?,
        _ => return None,
    };
    let (e, c) = lp.as_monomial()?;
    let mut hit = None;
    for (k, &x) in e.iter().enumerate() {
        match x {
            0 => {}
            1 if hit.is_none() => hit = Some(k),
            _ => return None,
        }
    }
    hit.map(|k| (k, c.clone()))
}

pub fn parse_document(text: &str) -> Result<RingDocument> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| {
        use serde_json::error::Category;
        match e.classify() {
            Category::Data => Error::Schema(e.to_string()),
            _ => Error::Parse {
                line: e.line(),
                column: e.column(),
                message: strip_position(&e.to_string()),
            },
        }
    })?;
    let ctx = Ctx { text };
    build(&ctx, raw)
}

fn strip_position(m: &str) -> String {
    match m.rfind(" at line ") {
        Some(k) => m[..k].to_string(),
        None => m.to_string(),
    }
}

fn build(ctx: &Ctx, raw: RawDocument) -> Result<RingDocument> {
    let n = raw.variables.n;
    let names = match &raw.variables.names {
        Some(v) if v.len() != n => {
            return schema(format!(
                "variables.names has {} entries, expected {n}",
                v.len()
            ))
        }
        Some(v) => v.clone(),
        None => (1..=n).map(|k| format!("x{k}")).collect(),
    };
    let kind = kind_of(&raw.backend)?;
    let params = &raw.backend.params;
    for (k, s) in names.iter().chain(params).enumerate() {
        if !is_identifier(s) {
            return schema(format!("'{s}' is not a valid name"));
        }
        if names.iter().chain(params).take(k).any(|t| t == s) {
            return schema(format!("name '{s}' is declared twice"));
        }
    }
    let var_index = |s: &str, what: &str| {
        names
            .iter()
            .position(|v| v == s)
            .ok_or_else(|| Error::Schema(format!("{what}: unknown variable '{s}'")))
    };
    let param_index = |s: &str, what: &str| {
        params
            .iter()
            .position(|v| v == s)
            .ok_or_else(|| Error::Schema(format!("{what}: unknown parameter '{s}'")))
    };

    let plain = Backend::trivial(kind.clone(), n)?;
    let m = plain.nparams();
    let mut sigma = vec![MonomialMap::identity(m); n];
    for (v, imgs) in &raw.backend.sigma {
        let i = var_index(v, "backend.sigma")?;
        let mut perm: Vec<usize> = (0..m).collect();
        let mut scale = MonomialMap::identity(m).scale().to_vec();
        for (q, img) in imgs {
            let k = param_index(q, "backend.sigma")?;
            let what = format!("backend.sigma.{v}.{q}");
            let a = ctx.coeff(&plain, img, &what)?;
            let Some((t, s)) = as_scaled_param(&a) else {
                return schema(format!(
                    "{what}: image must be a nonzero scalar times a parameter"
                ));
            };
            perm[k] = t;
            scale[k] = s;
        }
        sigma[i] = MonomialMap::new(perm, scale).ok_or_else(|| {
            Error::Schema(format!("backend.sigma.{v} does not permute the parameters"))
        })?;
    }
    let mut delta = vec![None; n];
    for (v, imgs) in &raw.backend.delta {
        let i = var_index(v, "backend.delta")?;
        let mut out = vec![plain.zero(); m];
        for (q, img) in imgs {
            let k = param_index(q, "backend.delta")?;
            out[k] = ctx.coeff(&plain, img, &format!("backend.delta.{v}.{q}"))?;
        }
        delta[i] = Some(out);
    }
    let backend = Backend::new(kind, sigma, delta)?;
    let generators = match &raw.backend.generators {
        None => None,
        Some(gs) => Some(
            gs.iter()
                .map(|g| ctx.coeff(&backend, g, "backend.generators"))
                .collect::<Result<Vec<_>>>()?,
        ),
    };

    let mut builder =
        PresentationBuilder::new(backend.clone(), names.clone()).laurent(raw.variables.r);
    for (key, s) in &raw.relations.c {
        let (a, b) = pair_key(key, n, "relations.c")?;
        builder = builder.c(
            a,
            b,
            ctx.coeff(&backend, s, &format!("relations.c[{key}]"))?,
        );
    }
    let scratch = builder.clone().build()?;
    for (key, s) in &raw.relations.d {
        let (j, i) = pair_key(key, n, "relations.d")?;
        builder = builder.d(j, i, ctx.poly(&scratch, s, &format!("relations.d[{key}]"))?);
    }
    let presentation = builder.build()?;

    let directives = raw.directives.unwrap_or_default();
    let mut doc = RingDocument {
        name: raw.name,
        description: raw.description,
        presentation,
        generators,
        endomorphisms: BTreeMap::new(),
        directives,
    };
    let host = doc.laurent_ring()?;
    for (name, imgs) in &raw.endomorphisms {
        if imgs.len() != n {
            return schema(format!(
                "endomorphism '{name}' has {} images, expected {n}",
                imgs.len()
            ));
        }
        let polys = imgs
            .iter()
            .enumerate()
            .map(|(k, s)| ctx.poly(&host, s, &format!("endomorphisms.{name}[{}]", k + 1)))
            .collect::<Result<Vec<_>>>()?;
        doc.endomorphisms.insert(name.clone(), polys);
    }
    if doc.directives.localize {
        doc.ring()?;
    }
    Ok(doc)
}

/// Serializes a document; `parse_document(&print_document(d)) == d`.
pub fn print_document(doc: &RingDocument) -> String {
    let p = &doc.presentation;
    let b = p.backend();
    let n = p.n();
    let params = b.param_names().to_vec();

    let mut sigma = BTreeMap::new();
    let mut delta = BTreeMap::new();
    for i in 0..n {
        let map = b.sigma_map(i);
        let mut imgs = BTreeMap::new();
        for k in 0..map.nparams() {
            if map.perm()[k] != k || !map.scale()[k].is_one() {
                let img = b.apply_map(map, &b.param(k));
                imgs.insert(params[k].clone(), b.render(&img));
            }
        }
        if !imgs.is_empty() {
            sigma.insert(p.names()[i].clone(), imgs);
        }
        if let Some(d) = b.delta_images(i) {
            let imgs: BTreeMap<_, _> = d
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(|(k, a)| (params[k].clone(), b.render(a)))
                .collect();
            delta.insert(p.names()[i].clone(), imgs);
        }
    }

    let mut c = BTreeMap::new();
    for a in 0..n {
        for bb in 0..n {
            let Some(v) = p.c_entry(a, bb) else { continue };
            let default = if a >= bb {
                Some(b.one())
            } else {
                p.c_entry(bb, a).and_then(Coeff::inverse)
            };
            if default.as_ref() != Some(v) {
                c.insert(format!("{},{}", a + 1, bb + 1), b.render(v));
            }
        }
    }
    let d = p
        .d_entries()
        .iter()
        .map(|(&(j, i), f)| (format!("{},{}", j + 1, i + 1), p.render(f)))
        .collect();

    let host = doc.laurent_ring().unwrap_or_else(|_| p.clone());
    let default_names: Vec<String> = (1..=n).map(|k| format!("x{k}")).collect();
    let raw = RawDocument {
        name: doc.name.clone(),
        description: doc.description.clone(),
        backend: RawBackend {
            kind: kind_name(b.kind()).to_string(),
            params,
            modulus: match b.kind() {
                BackendKind::PrimeField(q) => Some(*q),
                _ => None,
            },
            sigma,
            delta,
            generators: doc
                .generators
                .as_ref()
                .map(|gs| gs.iter().map(|g| b.render(g)).collect()),
        },
        variables: RawVariables {
            n,
            r: p.r(),
            names: (p.names() != default_names.as_slice()).then(|| p.names().to_vec()),
        },
        relations: RawRelations { c, d },
        endomorphisms: doc
            .endomorphisms
            .iter()
            .map(|(k, imgs)| (k.clone(), imgs.iter().map(|f| host.render(f)).collect()))
            .collect(),
        directives: (doc.directives != Directives::default()).then(|| doc.directives.clone()),
    };
    let mut s = serde_json::to_string_pretty(&raw).expect("document serializes");
    s.push('\n');
    s
}

/// Parses a polynomial typed on a command line.
pub fn parse_poly(p: &Presentation, s: &str) -> Result<SkewPoly> {
    parse_expr(s)
        .and_then(|e| eval_poly(&e, p))
        .map_err(standalone)
}

/// Parses a coefficient typed on a command line.
pub fn parse_coeff(b: &Backend, s: &str) -> Result<Coeff> {
    parse_expr(s)
        .and_then(|e| eval_coeff(&e, b))
        .map_err(standalone)
}

fn standalone(e: ExprError) -> Error {
    if e.schema {
        Error::Schema(format!("{} at column {}", e.message, e.column))
    } else {
        Error::Parse {
            line: 1,
            column: e.column,
            message: e.message,
        }
    }
}
