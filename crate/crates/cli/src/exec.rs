//! Command execution; one report per command, failures isolated.

use serde::Serialize;
use serde_json::{json, Value};

use evreg_core::monomial::{fan_compatible, to_proj_map};
use evreg_core::projmap::{Completeness, ProjSelfMap};
use evreg_core::skewprod::{
    classify_linear_auto, first_linear_iterate, leading_coeff_identity_check, skew_iterate_capped,
    LinearAutoCase,
};
use evreg_core::{Certificate, ProjPoint};

use crate::session::{CommandLine, MapDef, Session, Verb};

/// Session-wide defaults; per-command flags override them.
#[derive(Debug, Clone, Copy)]
pub struct Caps {
    pub iterate: usize,
    pub degree: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            iterate: evreg_core::DEFAULT_ITERATE_CAP,
            degree: evreg_core::DEFAULT_DEGREE_CAP,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub fn run_session(session: &Session, caps: &Caps) -> Vec<Report> {
    session
        .commands
        .iter()
        .map(|cmd| match execute(session, cmd, caps) {
            Ok(result) => Report {
                command: cmd.text.clone(),
                status: "ok",
                result: Some(result),
                error: None,
            },
            Err(msg) => Report {
                command: cmd.text.clone(),
                status: "error",
                result: None,
                error: Some(msg),
            },
        })
        .collect()
}

fn execute(session: &Session, cmd: &CommandLine, caps: &Caps) -> Result<Value, String> {
    let def = &session
        .maps
        .iter()
        .find(|(name, _)| name == &cmd.map)
        .expect("names checked at parse time")
        .1;
    let iterate_cap = cmd.cap.unwrap_or(caps.iterate);
    let degree_cap = cmd.degree_cap.unwrap_or(caps.degree);
    match cmd.verb {
        Verb::Analyze => analyze(def, iterate_cap),
        Verb::Iterate => iterate(def, cmd.n.expect("checked at parse"), degree_cap),
        Verb::FirstRegular => first_regular(def, iterate_cap, degree_cap),
        Verb::Degrees => degrees(def, cmd.n.expect("checked at parse"), degree_cap),
        Verb::FanCheck => fan_check(def, cmd),
        Verb::Classify => classify(def),
    }
}

/// Maps with a projective model; others get a kind error.
fn proj_of(def: &MapDef) -> Result<ProjSelfMap, String> {
    match def {
        MapDef::Projective(m) => Ok(m.clone()),
        MapDef::Monomial(m) => to_proj_map(m).map_err(|e| e.to_string()),
        MapDef::Triangular(_) | MapDef::Skew(_) => {
            Err("this command needs a projective, affine, or monomial map".to_string())
        }
    }
}

fn big(n: u64) -> Value {
    Value::String(n.to_string())
}

fn points_json(mut pts: Vec<ProjPoint>) -> Value {
    pts.sort();
    Value::Array(pts.iter().map(|p| Value::String(p.to_string())).collect())
}

fn certificate_str(c: Certificate) -> &'static str {
    match c {
        Certificate::InPaperSet => "InPaperSet",
        Certificate::Invertible => "Invertible",
        Certificate::NotFoundWithinCap => "NotFoundWithinCap",
    }
}

fn analyze(def: &MapDef, iterate_cap: usize) -> Result<Value, String> {
    match def {
        MapDef::Triangular(t) => {
            let first = first_linear_iterate(t, iterate_cap).map_err(|e| e.to_string())?;
            Ok(json!({
                "kind": "triangular",
                "first_linear_iterate": first,
                "iterate_cap": iterate_cap,
            }))
        }
        MapDef::Skew(s) => {
            let mut holds = true;
            for k in 1..=3 {
                holds &= leading_coeff_identity_check(s, k).map_err(|e| e.to_string())?;
            }
            Ok(json!({
                "kind": "skew",
                "y_degree": s.y_degree(),
                "base_degree": s.phi().degree(),
                "leading_identity_checked_to": 3,
                "leading_identity_holds": holds,
            }))
        }
        _ => {
            let m = proj_of(def)?;
            let regular = m.is_regular().map_err(|e| e.to_string())?;
            let dominant = m.is_dominant().map_err(|e| e.to_string())?;
            let (pts, comp) = m
                .rational_indeterminacy_points()
                .map_err(|e| e.to_string())?;
            Ok(json!({
                "degree": big(m.degree()),
                "regular": regular,
                "dominant": dominant,
                "indeterminacy_points": points_json(pts),
                "indeterminacy_complete": comp == Completeness::Complete,
            }))
        }
    }
}

fn iterate(def: &MapDef, n: usize, degree_cap: u64) -> Result<Value, String> {
    match def {
        MapDef::Triangular(t) => {
            let it = t.iterate(n).map_err(|e| e.to_string())?;
            Ok(json!({
                "kind": "triangular",
                "a": it.a().to_string(),
                "c": it.c().to_string(),
                "q": crate::session::upoly_text(it.q(), "y"),
            }))
        }
        MapDef::Skew(s) => {
            let it = skew_iterate_capped(s, n, degree_cap).map_err(|e| e.to_string())?;
            Ok(json!({
                "kind": "skew",
                "phi": crate::session::upoly_text(it.phi(), "x"),
                "coefficients": it.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            }))
        }
        _ => {
            let m = proj_of(def)?;
            let it = m.iterate_capped(n, degree_cap).map_err(|e| e.to_string())?;
            let f = it.forms();
            Ok(json!({
                "degree": big(it.degree()),
                "forms": [f[0].to_string(), f[1].to_string(), f[2].to_string()],
            }))
        }
    }
}

fn first_regular(def: &MapDef, iterate_cap: usize, degree_cap: u64) -> Result<Value, String> {
    let m = proj_of(def)?;
    let rep = m
        .first_regular_iterate(iterate_cap, degree_cap)
        .map_err(|e| e.to_string())?;
    let (pts, _) = m
        .rational_indeterminacy_points()
        .map_err(|e| e.to_string())?;
    Ok(json!({
        "first_regular": rep.first_regular,
        "degree_sequence": rep.degree_sequence.iter().map(|&d| big(d)).collect::<Vec<_>>(),
        "invertible": rep.invertible_flag,
        "dominant": rep.dominant_flag,
        "certificate": certificate_str(rep.certificate),
        "indeterminacy_points": points_json(pts),
    }))
}

fn degrees(def: &MapDef, n: usize, degree_cap: u64) -> Result<Value, String> {
    let m = proj_of(def)?;
    let data = m.degree_sequence(n, degree_cap).map_err(|e| e.to_string())?;
    Ok(json!({
        "degrees": data.degrees.iter().map(|&d| big(d)).collect::<Vec<_>>(),
        "lambda1_base": big(data.lambda1_base),
        "lambda1_exponent": data.lambda1_exponent,
        "lambda1_decimal": data.lambda1_decimal,
    }))
}

fn fan_check(def: &MapDef, cmd: &CommandLine) -> Result<Value, String> {
    let MapDef::Monomial(m) = def else {
        return Err("fan-check needs a monomial map".to_string());
    };
    let (token, fan) = cmd.surface.as_ref().expect("checked at parse");
    let power = cmd.n.unwrap_or(1);
    let compatible =
        fan_compatible(&m.matrix().pow(power), fan).map_err(|e| e.to_string())?;
    Ok(json!({
        "surface": token,
        "power": power,
        "compatible": compatible,
    }))
}

fn classify(def: &MapDef) -> Result<Value, String> {
    let m = proj_of(def)?;
    let Some(matrix) = m.linear_matrix() else {
        return Err(format!(
            "classify needs a linear map; this one has degree {}",
            m.degree()
        ));
    };
    let class = classify_linear_auto(&matrix).map_err(|e| e.to_string())?;
    let case = match class.case {
        LinearAutoCase::CaseA => "CaseA",
        LinearAutoCase::CaseB => "CaseB",
        LinearAutoCase::Neither => "Neither",
        LinearAutoCase::UnsupportedEigenvalues => "UnsupportedEigenvalues",
    };
    let eigenvalues = class.eigen_data.map(|data| {
        data.into_iter()
            .map(|(value, blocks)| {
                json!({
                    "value": value.to_string(),
                    "jordan_blocks": blocks,
                })
            })
            .collect::<Vec<_>>()
    });
    Ok(json!({
        "case": case,
        "eigenvalues": eigenvalues,
    }))
}
