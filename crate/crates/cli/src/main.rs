use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use skewpbw::localization::{classify_over_ore_with, classify_quantum_with};
use skewpbw::morphism::{classify_filtered_with, classify_quasi_commutative_with};
use skewpbw::{
    associated_graded, build_quantum_laurent, catalog, closed_form_coefficient,
    localize_coefficients, parse_coeff, parse_document, parse_poly, print_document,
    validate_endomorphism, Classification, Error, Presentation, RingDocument, UnitGroup,
    ValidationReport, DEFAULT_PRIME_BOUND,
};

mod report;

use report::{classification_json, classification_text, coeff_list, ints, violations_json};

#[derive(Parser)]
#[command(
    name = "skewpbw",
    version,
    about = "Computations in skew PBW extensions"
)]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest prime tried when factoring rational units.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME_BOUND)]
    prime_bound: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RingArg {
    /// Ring document: a JSON file, or `catalog:NAME` for a bundled ring.
    #[arg(long)]
    ring: String,
}

#[derive(Subcommand)]
enum Command {
    /// Check the presentation and optionally an endomorphism.
    Validate {
        /// One or more ring documents; several are checked in parallel.
        #[arg(long, required = true)]
        ring: Vec<String>,
        #[arg(long)]
        endo: Option<String>,
        /// Exponent bound for the closed-form oracle on monomial products.
        #[arg(long, default_value_t = 2)]
        max_degree: i64,
    },
    /// Multiply two polynomials and print the normal form.
    Multiply {
        #[command(flatten)]
        ring: RingArg,
        f: String,
        g: String,
    },
    /// Classify a named endomorphism of the ring.
    Classify {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        endo: String,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Print the associated graded ring as a document.
    Gr {
        #[command(flatten)]
        ring: RingArg,
    },
    /// Print the ring over the fraction field of its coefficients.
    Localize {
        #[command(flatten)]
        ring: RingArg,
    },
    /// Print the ring with the first R variables inverted.
    Laurent {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        r: usize,
    },
    /// Test coefficient units for independence modulo N.
    Independence {
        #[command(flatten)]
        ring: RingArg,
        #[arg(required = true, allow_negative_numbers = true)]
        units: Vec<String>,
    },
    /// Browse the bundled example rings.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show { name: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Auto,
    Quasi,
    Filtered,
    Quantum,
    Ore,
}

/* --- plumbing --- */

struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

type Res<T> = Result<T, String>;

fn err(e: Error) -> String {
    e.to_string()
}

fn load(spec: &str) -> Res<RingDocument> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        return catalog::load(name).map_err(err);
    }
    let path = PathBuf::from(spec);
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_document(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn label(doc: &RingDocument, spec: &str) -> String {
    doc.name.clone().unwrap_or_else(|| spec.to_string())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

/* --- commands --- */

fn oracle(p: &Presentation, k: i64) -> (usize, Vec<String>) {
    if !p.is_quasi_commutative() || k < 0 {
        return (0, Vec::new());
    }
    let ranges: Vec<(i64, i64)> = (0..p.n())
        .map(|i| (if i < p.r() { -k } else { 0 }, k))
        .collect();
    let mut vectors = vec![Vec::new()];
    for &(lo, hi) in &ranges {
        vectors = vectors
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (lo..=hi).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    let mut checked = 0;
    let mut bad = Vec::new();
    for t in &vectors {
        for l in &vectors {
            checked += 1;
            let sum: Vec<i64> = t.iter().zip(l).map(|(a, b)| a + b).collect();
            let engine = p.multiply(&p.monomial(t), &p.monomial(l));
            let ok = match closed_form_coefficient(p, t, l) {
                Ok(c) => engine == p.monomial(&sum).scale_left(&c),
                Err(_) => false,
            };
            if !ok {
                bad.push(format!("x^{t:?} * x^{l:?}"));
            }
        }
    }
    (checked, bad)
}

fn validate_one(spec: &str, endo: Option<&str>, max_degree: i64) -> Res<(Value, String, bool)> {
    let doc = load(spec)?;
    let p = doc.ring().map_err(err)?;
    let name = label(&doc, spec);
    let rep = p.validate();
    let mut ok = rep.is_valid();
    let mut text = format!("{}: {name}\n", if ok { "valid" } else { "invalid" });
    for v in &rep.violations {
        text += &format!("  {}\n", v.message);
    }
    let (checked, mismatches) = if ok {
        oracle(&p, max_degree)
    } else {
        (0, Vec::new())
    };
    if checked > 0 {
        text += &format!(
            "  oracle: {checked} monomial products, {} mismatches\n",
            mismatches.len()
        );
        for m in &mismatches {
            text += &format!("    {m}\n");
        }
        ok &= mismatches.is_empty();
    }
    let mut out = json!({
        "ring": name,
        "valid": rep.is_valid(),
        "violations": violations_json(&rep),
        "oracle": { "checked": checked, "mismatches": mismatches },
    });
    if let Some(e) = endo {
        let images = doc.endomorphism(e).map_err(err)?;
        let host = doc.laurent_ring().map_err(err)?;
        let erep: ValidationReport = validate_endomorphism(&host, images);
        ok &= erep.is_valid();
        text += &format!(
            "endomorphism {e}: {}\n",
            if erep.is_valid() { "valid" } else { "invalid" }
        );
        for v in &erep.violations {
            text += &format!("  {}\n", v.message);
        }
        out["endomorphism"] = json!({
            "name": e,
            "valid": erep.is_valid(),
            "violations": violations_json(&erep),
        });
    }
    Ok((out, text, ok))
}

fn validate(rings: &[String], endo: Option<&str>, max_degree: i64, as_json: bool) -> Res<Outcome> {
    let results: Vec<Res<(Value, String, bool)>> = std::thread::scope(|s| {
        let handles: Vec<_> = rings
            .iter()
            .map(|r| s.spawn(move || validate_one(r, endo, max_degree)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let results = results.into_iter().collect::<Res<Vec<_>>>()?;
    let all_ok = results.iter().all(|(_, _, ok)| *ok);
    let text = if as_json {
        let mut vals: Vec<Value> = results.into_iter().map(|(v, _, _)| v).collect();
        pretty(&if vals.len() == 1 {
            vals.remove(0)
        } else {
            Value::Array(vals)
        })
    } else {
        results
            .into_iter()
            .map(|(_, t, _)| t)
            .collect::<String>()
            .trim_end()
            .to_string()
    };
    Ok(Outcome {
        text,
        code: if all_ok { 0 } else { 1 },
    })
}

fn multiply(spec: &str, f: &str, g: &str, as_json: bool) -> Res<Outcome> {
    let p = load(spec)?.ring().map_err(err)?;
    let f = parse_poly(&p, f).map_err(err)?;
    let g = parse_poly(&p, g).map_err(err)?;
    let h = p.render(&p.multiply(&f, &g));
    Ok(Outcome::ok(if as_json {
        pretty(&json!({ "product": h }))
    } else {
        h
    }))
}

fn classify(
    spec: &str,
    endo: &str,
    method: Method,
    prime_bound: u64,
    as_json: bool,
) -> Res<Outcome> {
    let doc = load(spec)?;
    let host = doc.laurent_ring().map_err(err)?;
    let images = doc.endomorphism(endo).map_err(err)?;
    let method = match method {
        Method::Auto if doc.directives.localize => Method::Ore,
        Method::Auto if host.is_laurent() => Method::Quantum,
        Method::Auto if host.is_quasi_commutative() => Method::Quasi,
        Method::Auto => Method::Filtered,
        m => m,
    };
    let cls = match method {
        Method::Quasi => classify_quasi_commutative_with(&host, images, prime_bound),
        Method::Filtered => classify_filtered_with(&host, images, prime_bound),
        Method::Quantum => classify_quantum_with(&host, images, prime_bound),
        Method::Ore => classify_over_ore_with(&host, images, prime_bound),
        Method::Auto => unreachable!(),
    }
    .map_err(err)?;
    let b = host.backend();
    let code = match cls {
        Classification::NotEndomorphism { .. } => 1,
        _ => 0,
    };
    let text = if as_json {
        pretty(&classification_json(b, &cls))
    } else {
        classification_text(b, &cls)
    };
    Ok(Outcome { text, code })
}

fn derived(doc: &RingDocument, p: Presentation, prefix: &str) -> String {
    let mut out = RingDocument::new(p);
    out.name = doc.name.as_ref().map(|n| format!("{prefix}({n})"));
    print_document(&out).trim_end().to_string()
}

fn independence(spec: &str, units: &[String], prime_bound: u64, as_json: bool) -> Res<Outcome> {
    let p = load(spec)?.ring().map_err(err)?;
    let b = p.backend();
    let us = units
        .iter()
        .map(|s| parse_coeff(b, s))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    let ind = UnitGroup::new(b, prime_bound)
        .independence(&us)
        .map_err(err)?;
    let cert = ind.certificate.as_ref();
    let text = if as_json {
        pretty(&json!({
            "units": coeff_list(b, &us),
            "independent": ind.independent,
            "certificate": cert.map(|c| json!({
                "m": ints(&c.m),
                "n_generators": coeff_list(b, &c.n_generators),
                "mu": ints(&c.mu),
                "tau": c.tau.to_string(),
                "replays": c.replay(b, &us),
            })),
        }))
    } else if let Some(c) = cert {
        format!(
            "dependent\n  m=({})\n  N generators=({})\n  mu=({})\n  tau={}\n  replays: {}",
            ints(&c.m).join(","),
            coeff_list(b, &c.n_generators).join(","),
            ints(&c.mu).join(","),
            c.tau,
            c.replay(b, &us)
        )
    } else {
        "independent".to_string()
    };
    Ok(Outcome::ok(text))
}

fn run(cli: Cli) -> Res<Outcome> {
    let j = cli.json;
    let pb = cli.prime_bound;
    match cli.command {
        Command::Validate {
            ring,
            endo,
            max_degree,
        } => validate(&ring, endo.as_deref(), max_degree, j),
        Command::Multiply { ring, f, g } => multiply(&ring.ring, &f, &g, j),
        Command::Classify { ring, endo, method } => classify(&ring.ring, &endo, method, pb, j),
        Command::Gr { ring } => {
            let doc = load(&ring.ring)?;
            let g = associated_graded(&doc.ring().map_err(err)?).map_err(err)?;
            Ok(Outcome::ok(derived(&doc, g, "gr")))
        }
        Command::Localize { ring } => {
            let doc = load(&ring.ring)?;
            let l = localize_coefficients(&doc.laurent_ring().map_err(err)?).map_err(err)?;
            Ok(Outcome::ok(derived(&doc, l.localized().clone(), "frac")))
        }
        Command::Laurent { ring, r } => {
            let doc = load(&ring.ring)?;
            let l = build_quantum_laurent(&doc.presentation, r).map_err(err)?;
            Ok(Outcome::ok(derived(&doc, l, "laurent")))
        }
        Command::Independence { ring, units } => independence(&ring.ring, &units, pb, j),
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                let names: Vec<&str> = catalog::names().collect();
                Ok(Outcome::ok(if j {
                    pretty(&json!(names))
                } else {
                    names.join("\n")
                }))
            }
            CatalogAction::Show { name } => {
                let text =
                    catalog::source(&name).ok_or_else(|| err(catalog::load(&name).unwrap_err()))?;
                Ok(Outcome::ok(text.trim_end().to_string()))
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(o) => {
            if !o.text.is_empty() {
                let _ = writeln!(std::io::stdout(), "{}", o.text);
            }
            ExitCode::from(o.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
