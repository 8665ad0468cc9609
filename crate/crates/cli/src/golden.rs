//! Built-in golden corpus: the worked examples with their known first
//! regular (or first linear) iterates, re-derived from scratch on every
//! run and compared against the frozen expectations.

use std::collections::BTreeSet;
use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};

use evreg_core::monomial::to_proj_map;
use evreg_core::parse::parse_poly;
use evreg_core::projmap::ProjSelfMap;
use evreg_core::skewprod::first_linear_iterate;
use evreg_core::Certificate;

use crate::session::{parse_session, MapDef};
use crate::Format;

struct Golden {
    name: String,
    session: String,
    check: Check,
}

enum Check {
    FirstRegular {
        cap: usize,
        degree_cap: u64,
        expected: Option<usize>,
        certificate: Option<Certificate>,
        iterate: Option<[String; 3]>,
    },
    FirstLinear {
        cap: usize,
        expected: Option<usize>,
    },
}

fn builtin(name: &str, session: &str, check: Check) -> Golden {
    Golden {
        name: name.to_string(),
        session: session.to_string(),
        check,
    }
}

fn first_regular(
    cap: usize,
    degree_cap: u64,
    expected: usize,
    certificate: Certificate,
    iterate: Option<[&str; 3]>,
) -> Check {
    Check::FirstRegular {
        cap,
        degree_cap,
        expected: Some(expected),
        certificate: Some(certificate),
        iterate: iterate.map(|f| f.map(str::to_string)),
    }
}

fn builtin_corpus() -> Vec<Golden> {
    use Certificate::{InPaperSet, Invertible};
    let shear = |n: usize, minpoly: &str| {
        builtin(
            &format!("bir-large-order-{n}"),
            &format!("field ext minpoly {minpoly}\nmap m triangular a=1 c=t q=y^2"),
            Check::FirstLinear {
                cap: 24,
                expected: Some(n),
            },
        )
    };
    vec![
        builtin(
            "endomorphism-squaring",
            "map m monomial A=[[2,0],[0,2]] lambda=(1,1)",
            first_regular(
                12,
                u64::MAX,
                1,
                InPaperSet,
                Some(["X^2", "Y^2", "Z^2"]),
            ),
        ),
        builtin(
            "ex-square-inverse-square",
            "map m monomial A=[[2,0],[0,-2]] lambda=(1,1)",
            first_regular(
                12,
                u64::MAX,
                2,
                InPaperSet,
                Some(["X^4", "Y^4", "Z^4"]),
            ),
        ),
        builtin(
            "ex-dense-quadratic",
            "map m proj [X*Z + Y*Z : X^2 + Y*Z : Z^2]",
            first_regular(
                12,
                4096,
                2,
                InPaperSet,
                Some([
                    "X^2 + X*Z + 2*Y*Z",
                    "2*X^2 + 2*X*Y + Y^2 + Y*Z",
                    "Z^2",
                ]),
            ),
        ),
        builtin(
            "ex-spiral-twelve",
            "map m monomial A=[[3,1],[-3,3]] lambda=(1,1)",
            first_regular(12, u64::MAX, 12, InPaperSet, None),
        ),
        builtin(
            "ex-order-three",
            "map m monomial A=[[-2,-2],[2,0]] lambda=(1,1)",
            first_regular(12, u64::MAX, 3, InPaperSet, None),
        ),
        builtin(
            "ex-order-four",
            "map m monomial A=[[0,-2],[2,0]] lambda=(1,1)",
            first_regular(12, u64::MAX, 4, InPaperSet, None),
        ),
        builtin(
            "ex-order-six",
            "map m monomial A=[[2,2],[-2,0]] lambda=(1,1)",
            first_regular(12, u64::MAX, 6, InPaperSet, None),
        ),
        builtin(
            "ex-order-eight",
            "map m monomial A=[[1,1],[-1,1]] lambda=(1,1)",
            first_regular(12, u64::MAX, 8, InPaperSet, None),
        ),
        builtin(
            "cremona-involution",
            "map m proj [Y*Z : X*Z : X*Y]",
            first_regular(12, 4096, 2, Invertible, Some(["X", "Y", "Z"])),
        ),
        shear(3, "t^2 - t + 1"),
        shear(4, "t^4 + 1"),
        shear(5, "t^4 - t^3 + t^2 - t + 1"),
        shear(6, "t^4 - t^2 + 1"),
    ]
}

/// Extra corpus entries supplied as a JSON array; an empty file means no
/// extras.  Exactly one of `first_regular` / `first_linear` must be
/// present (JSON `null` means "expected not found within cap").
#[derive(Deserialize)]
struct ExtraEntry {
    name: String,
    session: String,
    #[serde(default)]
    cap: Option<usize>,
    #[serde(default)]
    degree_cap: Option<Value>,
    #[serde(default)]
    first_regular: Option<Value>,
    #[serde(default)]
    certificate: Option<String>,
    #[serde(default)]
    iterate: Option<[String; 3]>,
    #[serde(default)]
    first_linear: Option<Value>,
}

fn expected_index(v: &Value) -> Result<Option<usize>, String> {
    match v {
        Value::Null => Ok(None),
        Value::Number(n) => n
            .as_u64()
            .map(|k| Some(k as usize))
            .ok_or_else(|| format!("bad index `{n}`")),
        other => Err(format!("bad index `{other}`")),
    }
}

fn parse_degree_cap(v: &Value) -> Result<u64, String> {
    match v {
        Value::String(s) if s == "max" => Ok(u64::MAX),
        Value::String(s) => s.parse().map_err(|_| format!("bad degree cap `{s}`")),
        Value::Number(n) => n.as_u64().ok_or_else(|| format!("bad degree cap `{n}`")),
        other => Err(format!("bad degree cap `{other}`")),
    }
}

fn parse_certificate(s: &str) -> Result<Certificate, String> {
    match s {
        "InPaperSet" => Ok(Certificate::InPaperSet),
        "Invertible" => Ok(Certificate::Invertible),
        "NotFoundWithinCap" => Ok(Certificate::NotFoundWithinCap),
        other => Err(format!("unknown certificate `{other}`")),
    }
}

fn load_extras(path: &Path) -> Result<Vec<Golden>, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let entries: Vec<ExtraEntry> =
        serde_json::from_str(&text).map_err(|e| format!("bad extra corpus: {e}"))?;
    let mut out = Vec::new();
    for e in entries {
        let against = |msg: String| format!("extra `{}`: {msg}", e.name);
        let check = match (&e.first_regular, &e.first_linear) {
            (Some(v), None) => Check::FirstRegular {
                cap: e.cap.unwrap_or(12),
                degree_cap: e
                    .degree_cap
                    .as_ref()
                    .map_or(Ok(u64::MAX), parse_degree_cap)
                    .map_err(against)?,
                expected: expected_index(v).map_err(against)?,
                certificate: e
                    .certificate
                    .as_deref()
                    .map(parse_certificate)
                    .transpose()
                    .map_err(against)?,
                iterate: e.iterate.clone(),
            },
            (None, Some(v)) => Check::FirstLinear {
                cap: e.cap.unwrap_or(24),
                expected: expected_index(v).map_err(against)?,
            },
            _ => {
                return Err(against(
                    "exactly one of `first_regular` / `first_linear` is required".to_string(),
                ));
            }
        };
        out.push(Golden {
            name: e.name,
            session: e.session,
            check,
        });
    }
    Ok(out)
}

struct Outcome {
    name: String,
    detail: String,
    mismatch: Option<String>,
    realized: Option<usize>,
}

fn run_one(g: &Golden) -> Outcome {
    let fail = |msg: String| Outcome {
        name: g.name.clone(),
        detail: String::new(),
        mismatch: Some(msg),
        realized: None,
    };
    let session = match parse_session(&g.session) {
        Ok(s) => s,
        Err(e) => return fail(format!("session does not parse: {e}")),
    };
    let Some((_, def)) = session.maps.first() else {
        return fail("session defines no map".to_string());
    };
    match &g.check {
        Check::FirstRegular {
            cap,
            degree_cap,
            expected,
            certificate,
            iterate,
        } => {
            let map = match def {
                MapDef::Projective(m) => m.clone(),
                MapDef::Monomial(m) => match to_proj_map(m) {
                    Ok(m) => m,
                    Err(e) => return fail(e.to_string()),
                },
                _ => return fail("first_regular check needs a projective model".to_string()),
            };
            let rep = match map.first_regular_iterate(*cap, *degree_cap) {
                Ok(r) => r,
                Err(e) => return fail(e.to_string()),
            };
            if rep.first_regular != *expected {
                return fail(format!(
                    "first regular iterate: expected {expected:?}, got {:?}",
                    rep.first_regular
                ));
            }
            if let Some(cert) = certificate {
                if rep.certificate != *cert {
                    return fail(format!(
                        "certificate: expected {cert:?}, got {:?}",
                        rep.certificate
                    ));
                }
            }
            if let Some(forms) = iterate {
                let allow_t = session.field.degree() > 1;
                let parsed: Result<Vec<_>, _> = forms
                    .iter()
                    .map(|f| parse_poly(f, &["X", "Y", "Z"], &session.field, allow_t))
                    .collect();
                let want = parsed
                    .map_err(|e| e.to_string())
                    .and_then(|fs| {
                        ProjSelfMap::from_forms(fs[0].clone(), fs[1].clone(), fs[2].clone())
                            .map_err(|e| e.to_string())
                    });
                let want = match want {
                    Ok(w) => w,
                    Err(e) => return fail(format!("bad expected iterate: {e}")),
                };
                match &rep.regular_iterate {
                    Some(got) if *got == want => {}
                    Some(got) => {
                        let f = got.forms();
                        return fail(format!(
                            "iterate mismatch: got [{} : {} : {}]",
                            f[0], f[1], f[2]
                        ));
                    }
                    None => return fail("no regular iterate to compare".to_string()),
                }
            }
            let realized = match rep.certificate {
                Certificate::InPaperSet => rep.first_regular,
                _ => None,
            };
            Outcome {
                name: g.name.clone(),
                detail: format!(
                    "first_regular={}",
                    rep.first_regular
                        .map_or("none".to_string(), |k| k.to_string())
                ),
                mismatch: None,
                realized,
            }
        }
        Check::FirstLinear { cap, expected } => {
            let MapDef::Triangular(t) = def else {
                return fail("first_linear check needs a triangular map".to_string());
            };
            match first_linear_iterate(t, *cap) {
                Ok(got) if got == *expected => Outcome {
                    name: g.name.clone(),
                    detail: format!(
                        "first_linear={}",
                        got.map_or("none".to_string(), |k| k.to_string())
                    ),
                    mismatch: None,
                    realized: None,
                },
                Ok(got) => fail(format!(
                    "first linear iterate: expected {expected:?}, got {got:?}"
                )),
                Err(e) => fail(e.to_string()),
            }
        }
    }
}

pub fn verify_examples(extra: Option<&Path>, format: Format) -> i32 {
    let mut corpus = builtin_corpus();
    if let Some(path) = extra {
        match load_extras(path) {
            Ok(mut extras) => corpus.append(&mut extras),
            Err(e) => {
                eprintln!("{e}");
                return 2;
            }
        }
    }
    let outcomes: Vec<Outcome> = corpus.iter().map(run_one).collect();
    let realized: BTreeSet<usize> = outcomes.iter().filter_map(|o| o.realized).collect();
    let mut mismatches: Vec<&Outcome> = outcomes.iter().filter(|o| o.mismatch.is_some()).collect();
    // Theorem coverage: every admissible non-invertible index must be
    // exercised by some passing example.
    let missing: Vec<usize> = [1, 2, 3, 4, 6, 8, 12]
        .into_iter()
        .filter(|k| !realized.contains(k))
        .collect();
    let coverage_failure = (!missing.is_empty()).then(|| Outcome {
        name: "realized-index-coverage".to_string(),
        detail: String::new(),
        mismatch: Some(format!("indices {missing:?} not witnessed")),
        realized: None,
    });
    if let Some(f) = &coverage_failure {
        mismatches.push(f);
    }
    match format {
        Format::Json => {
            let payload = json!({
                "examples": outcomes.iter().map(|o| json!({
                    "name": o.name,
                    "status": if o.mismatch.is_none() { "ok" } else { "mismatch" },
                    "detail": o.mismatch.clone().unwrap_or_else(|| o.detail.clone()),
                })).collect::<Vec<_>>(),
                "realized_indices": realized.iter().copied().collect::<Vec<_>>(),
                "status": if mismatches.is_empty() { "ok" } else { "golden-mismatch" },
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&payload).expect("serializable")
            );
        }
        Format::Text => {
            for o in &outcomes {
                match &o.mismatch {
                    None => println!("golden {}: ok ({})", o.name, o.detail),
                    Some(m) => println!("golden {}: MISMATCH ({m})", o.name),
                }
            }
            let list: Vec<String> = realized.iter().map(|k| k.to_string()).collect();
            println!("realized indices: {{{}}}", list.join(","));
            if let Some(f) = &coverage_failure {
                println!(
                    "golden {}: MISMATCH ({})",
                    f.name,
                    f.mismatch.as_deref().unwrap_or("")
                );
            }
        }
    }
    if mismatches.is_empty() {
        0
    } else {
        3
    }
}
