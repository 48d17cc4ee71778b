use serde_json::{json, Value};

use skewpbw::{Backend, Classification, Coeff, ValidationReport};

pub fn coeff_list(b: &Backend, cs: &[Coeff]) -> Vec<String> {
    cs.iter().map(|c| b.render(c)).collect()
}

pub fn ints<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn violations_json(rep: &ValidationReport) -> Value {
    serde_json::to_value(&rep.violations).expect("violations serialize")
}

fn sign(e: i8) -> &'static str {
    if e > 0 {
        "+1"
    } else {
        "-1"
    }
}

/// One-line summary, e.g. `Diagonal ε=+1, λ=(2,3,q12)`.
pub fn classification_text(b: &Backend, c: &Classification) -> String {
    match c {
        Classification::Diagonal {
            scalars,
            epsilon,
            non_units,
        } => {
            let mut s = format!(
                "Diagonal ε={}, λ=({})",
                sign(*epsilon),
                coeff_list(b, scalars).join(",")
            );
            if !non_units.is_empty() {
                s += &format!(
                    "\n  non-unit scalars at {}",
                    non_units
                        .iter()
                        .map(|w| format!("x{w}"))
                        .collect::<Vec<_>>()
                        .join(", ")
                );
            }
            s
        }
        Classification::Affine { constants, scalars } => format!(
            "Affine λ=({}), a=({})",
            coeff_list(b, scalars).join(","),
            coeff_list(b, constants).join(",")
        ),
        Classification::HypothesesNotMet { reasons } => {
            let mut s = "HypothesesNotMet".to_string();
            for r in reasons {
                s += &format!("\n  {r}");
            }
            s
        }
        Classification::NotEndomorphism { witness } => {
            format!("NotEndomorphism\n  {}", witness.message)
        }
    }
}

/// Always carries `verdict`, `scalars`, `epsilon` and `reasons`.
pub fn classification_json(b: &Backend, c: &Classification) -> Value {
    let mut v = json!({
        "verdict": c.verdict(),
        "scalars": Value::Null,
        "epsilon": Value::Null,
        "reasons": [],
    });
    match c {
        Classification::Diagonal {
            scalars,
            epsilon,
            non_units,
        } => {
            v["scalars"] = json!(coeff_list(b, scalars));
            v["epsilon"] = json!(epsilon);
            v["non_units"] = json!(non_units);
        }
        Classification::Affine { constants, scalars } => {
            v["scalars"] = json!(coeff_list(b, scalars));
            v["epsilon"] = json!(1);
            v["constants"] = json!(coeff_list(b, constants));
        }
        Classification::HypothesesNotMet { reasons } => {
            v["reasons"] = json!(reasons);
        }
        Classification::NotEndomorphism { witness } => {
            v["reasons"] = json!([witness.message]);
            v["witness"] = serde_json::to_value(witness).expect("violation serializes");
        }
    }
    v
}
