//! Line-oriented parser for the session DSL.
//!
//! A session is a sequence of lines: at most one `field` declaration (it
//! must come before any map and defaults to the rationals), `map`
//! declarations, and commands referring to previously declared maps.
//! `#` starts a comment anywhere on a line.

use std::collections::BTreeSet;
use std::fmt;

use evreg_core::monomial::{Fan, IntMatrix2, MonomialMap};
use evreg_core::mpoly::{homogenize_affine_pair, MPoly};
use evreg_core::numfield::{FieldElement, FieldRef, NumberField};
use evreg_core::parse::{parse_poly, parse_ratio, parse_univar_rational};
use evreg_core::projmap::ProjSelfMap;
use evreg_core::skewprod::{SkewMap, TriangularMap};
use evreg_core::upoly::{RatFunc, UPoly};

#[derive(Debug)]
pub struct SessionError {
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for SessionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.msg)
    }
}

#[derive(Debug, Clone)]
pub struct Session {
    pub field: FieldRef,
    pub maps: Vec<(String, MapDef)>,
    pub commands: Vec<CommandLine>,
}

#[derive(Debug, Clone)]
pub enum MapDef {
    /// Projective and affine declarations both land here, affine ones
    /// through denominator clearing.
    Projective(ProjSelfMap),
    Monomial(MonomialMap),
    Triangular(TriangularMap),
    Skew(SkewMap),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verb {
    Analyze,
    Iterate,
    FirstRegular,
    Degrees,
    FanCheck,
    Classify,
}

#[derive(Debug, Clone)]
pub struct CommandLine {
    /// Original text, echoed in the report.
    pub text: String,
    pub line: usize,
    pub verb: Verb,
    pub map: String,
    pub n: Option<usize>,
    pub cap: Option<usize>,
    pub degree_cap: Option<u64>,
    /// Surface token as written plus the parsed fan.
    pub surface: Option<(String, Fan)>,
}

fn serr(line: usize, msg: impl Into<String>) -> SessionError {
    SessionError {
        line,
        msg: msg.into(),
    }
}

fn split_head(s: &str) -> (&str, &str) {
    let s = s.trim_start();
    match s.find(char::is_whitespace) {
        None => (s, ""),
        Some(i) => (&s[..i], s[i..].trim_start()),
    }
}

pub fn parse_session(text: &str) -> Result<Session, SessionError> {
    let mut field: Option<FieldRef> = None;
    let mut field_locked = false;
    let mut maps: Vec<(String, MapDef)> = Vec::new();
    let mut names: BTreeSet<String> = BTreeSet::new();
    let mut commands = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = split_head(line);
        match head {
            "field" => {
                if field.is_some() {
                    return Err(serr(line_no, "duplicate field declaration"));
                }
                if field_locked {
                    return Err(serr(line_no, "field declaration must precede all maps"));
                }
                field = Some(parse_field(rest, line_no)?);
            }
            "map" => {
                let f = field.get_or_insert_with(NumberField::rational).clone();
                field_locked = true;
                let (name, def) = parse_map(rest, line_no, &f)?;
                if !names.insert(name.clone()) {
                    return Err(serr(line_no, format!("duplicate map name `{name}`")));
                }
                maps.push((name, def));
            }
            "analyze" | "iterate" | "first-regular" | "degrees" | "fan-check" | "classify" => {
                let cmd = parse_command(line, line_no)?;
                if !names.contains(&cmd.map) {
                    return Err(serr(line_no, format!("unknown map `{}`", cmd.map)));
                }
                commands.push(cmd);
            }
            other => {
                return Err(serr(line_no, format!("unrecognized directive `{other}`")));
            }
        }
    }
    Ok(Session {
        field: field.unwrap_or_else(NumberField::rational),
        maps,
        commands,
    })
}

fn parse_field(rest: &str, line: usize) -> Result<FieldRef, SessionError> {
    if rest == "rational" {
        return Ok(NumberField::rational());
    }
    let (kw, rest) = split_head(rest);
    if kw != "ext" {
        return Err(serr(line, "expected `rational` or `ext minpoly <poly>`"));
    }
    let (kw2, poly_text) = split_head(rest);
    if kw2 != "minpoly" || poly_text.is_empty() {
        return Err(serr(line, "expected `ext minpoly <poly in t>`"));
    }
    let coeffs = parse_univar_rational(poly_text)
        .map_err(|e| serr(line, format!("bad minimal polynomial: {e}")))?;
    NumberField::extension(coeffs).map_err(|e| serr(line, e.to_string()))
}

fn parse_map(rest: &str, line: usize, field: &FieldRef) -> Result<(String, MapDef), SessionError> {
    let (name, rest) = split_head(rest);
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(serr(line, "map name must be alphanumeric"));
    }
    let (kind, body) = split_head(rest);
    let def = match kind {
        "proj" => parse_proj(body, line, field)?,
        "affine" => parse_affine(body, line, field)?,
        "monomial" => parse_monomial(body, line, field)?,
        "triangular" => parse_triangular(body, line, field)?,
        "skew" => parse_skew(body, line, field)?,
        other => {
            return Err(serr(
                line,
                format!("unknown map kind `{other}` (expected proj, affine, monomial, triangular, or skew)"),
            ));
        }
    };
    Ok((name.to_string(), def))
}

fn allow_t(field: &FieldRef) -> bool {
    field.degree() > 1
}

fn parse_proj(body: &str, line: usize, field: &FieldRef) -> Result<MapDef, SessionError> {
    let inner = body
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| serr(line, "proj maps look like [f0 : f1 : f2]"))?;
    let parts: Vec<&str> = inner.split(':').collect();
    if parts.len() != 3 {
        return Err(serr(
            line,
            format!("expected three forms separated by `:`, found {}", parts.len()),
        ));
    }
    let mut forms = Vec::with_capacity(3);
    for part in parts {
        let p = parse_poly(part.trim(), &["X", "Y", "Z"], field, allow_t(field))
            .map_err(|e| serr(line, e.to_string()))?;
        forms.push(p);
    }
    let map = ProjSelfMap::from_forms(forms[0].clone(), forms[1].clone(), forms[2].clone())
        .map_err(|e| serr(line, e.to_string()))?;
    Ok(MapDef::Projective(map))
}

fn parse_affine(body: &str, line: usize, field: &FieldRef) -> Result<MapDef, SessionError> {
    let inner = body
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| serr(line, "affine maps look like (f(x,y), g(x,y))"))?;
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != 2 {
        return Err(serr(line, "expected two coordinate ratios separated by `,`"));
    }
    let f = parse_ratio(parts[0].trim(), field, allow_t(field))
        .map_err(|e| serr(line, e.to_string()))?;
    let g = parse_ratio(parts[1].trim(), field, allow_t(field))
        .map_err(|e| serr(line, e.to_string()))?;
    let triple = homogenize_affine_pair(&f, &g).map_err(|e| serr(line, e.to_string()))?;
    let map = ProjSelfMap::normalize(triple).map_err(|e| serr(line, e.to_string()))?;
    Ok(MapDef::Projective(map))
}

fn parse_monomial(body: &str, line: usize, field: &FieldRef) -> Result<MapDef, SessionError> {
    let kv = keyed_values(body, &["A", "lambda"], line)?;
    let a_text = required(&kv, "A", line)?;
    let l_text = required(&kv, "lambda", line)?;
    let matrix = parse_int_matrix(a_text, line)?;
    let lam = parse_pair(l_text, line, field)?;
    let map = MonomialMap::new(matrix, lam).map_err(|e| serr(line, e.to_string()))?;
    Ok(MapDef::Monomial(map))
}

fn parse_triangular(body: &str, line: usize, field: &FieldRef) -> Result<MapDef, SessionError> {
    let kv = keyed_values(body, &["a", "c", "q"], line)?;
    let a = parse_scalar(required(&kv, "a", line)?, field, line)?;
    let c = parse_scalar(required(&kv, "c", line)?, field, line)?;
    let q = parse_upoly(required(&kv, "q", line)?, "y", field, line)?;
    let map = TriangularMap::new(a, c, q).map_err(|e| serr(line, e.to_string()))?;
    Ok(MapDef::Triangular(map))
}

fn parse_skew(body: &str, line: usize, field: &FieldRef) -> Result<MapDef, SessionError> {
    let kv = keyed_values(body, &["phi", "f"], line)?;
    let phi = parse_upoly(required(&kv, "phi", line)?, "x", field, line)?;
    let f_text = required(&kv, "f", line)?;
    let f = parse_poly(f_text, &["x", "y"], field, allow_t(field))
        .map_err(|e| serr(line, e.to_string()))?;
    let coeffs = y_coefficients(&f, field);
    let map = SkewMap::new(phi, coeffs).map_err(|e| serr(line, e.to_string()))?;
    Ok(MapDef::Skew(map))
}

/// Split `a=1 c=t q=y^2 + y` into key/value pairs; a value extends until
/// the next recognized `key=` token, so values may contain spaces.
fn keyed_values(
    body: &str,
    keys: &[&str],
    line: usize,
) -> Result<Vec<(String, String)>, SessionError> {
    let mut out: Vec<(String, String)> = Vec::new();
    for tok in body.split_whitespace() {
        let hit = keys.iter().find_map(|k| {
            tok.strip_prefix(k)
                .and_then(|r| r.strip_prefix('='))
                .map(|v| (*k, v))
        });
        match hit {
            Some((k, v)) => {
                if out.iter().any(|(seen, _)| seen == k) {
                    return Err(serr(line, format!("duplicate `{k}=`")));
                }
                out.push((k.to_string(), v.to_string()));
            }
            None => match out.last_mut() {
                Some((_, v)) => {
                    v.push(' ');
                    v.push_str(tok);
                }
                None => {
                    return Err(serr(line, format!("expected a `key=` setting before `{tok}`")));
                }
            },
        }
    }
    Ok(out)
}

fn required<'a>(
    kv: &'a [(String, String)],
    key: &str,
    line: usize,
) -> Result<&'a str, SessionError> {
    kv.iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .ok_or_else(|| serr(line, format!("missing `{key}=`")))
}

fn parse_int_matrix(s: &str, line: usize) -> Result<IntMatrix2, SessionError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let malformed = || serr(line, "matrix must look like [[a,b],[c,d]]");
    let inner = compact
        .strip_prefix("[[")
        .and_then(|r| r.strip_suffix("]]"))
        .ok_or_else(malformed)?;
    let rows: Vec<&str> = inner.split("],[").collect();
    if rows.len() != 2 {
        return Err(malformed());
    }
    let mut m = [[0i64; 2]; 2];
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<&str> = row.split(',').collect();
        if cells.len() != 2 {
            return Err(malformed());
        }
        for (j, cell) in cells.iter().enumerate() {
            m[i][j] = cell
                .parse()
                .map_err(|_| serr(line, format!("bad matrix entry `{cell}`")))?;
        }
    }
    IntMatrix2::from_rows(m).map_err(|e| serr(line, e.to_string()))
}

fn parse_pair(s: &str, line: usize, field: &FieldRef) -> Result<[FieldElement; 2], SessionError> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| serr(line, "lambda must look like (l0, l1)"))?;
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != 2 {
        return Err(serr(line, "lambda needs exactly two entries"));
    }
    Ok([
        parse_scalar(parts[0].trim(), field, line)?,
        parse_scalar(parts[1].trim(), field, line)?,
    ])
}

fn parse_scalar(s: &str, field: &FieldRef, line: usize) -> Result<FieldElement, SessionError> {
    let p = parse_poly(s, &["y"], field, allow_t(field)).map_err(|e| serr(line, e.to_string()))?;
    if !p.is_constant() {
        return Err(serr(line, format!("`{s}` is not a scalar")));
    }
    Ok(constant_of(&p))
}

fn constant_of(p: &MPoly) -> FieldElement {
    p.terms()
        .next()
        .map(|(_, c)| c.clone())
        .unwrap_or_else(|| FieldElement::zero(p.field()))
}

fn parse_upoly(s: &str, var: &str, field: &FieldRef, line: usize) -> Result<UPoly, SessionError> {
    let p = parse_poly(s, &[var], field, allow_t(field)).map_err(|e| serr(line, e.to_string()))?;
    UPoly::from_mpoly_var(&p, 0).map_err(|e| serr(line, e.to_string()))
}

/// Collect the coefficient of each power of `y` as a polynomial in `x`.
fn y_coefficients(f: &MPoly, field: &FieldRef) -> Vec<RatFunc> {
    let dy = f.deg_in(1) as usize;
    let dx = f.deg_in(0) as usize;
    let mut table = vec![vec![FieldElement::zero(field); dx + 1]; dy + 1];
    for (e, c) in f.terms() {
        table[e[1] as usize][e[0] as usize] = c.clone();
    }
    table
        .into_iter()
        .map(|coeffs| RatFunc::from_poly(UPoly::new(field, coeffs)))
        .collect()
}

fn parse_command(line_text: &str, line: usize) -> Result<CommandLine, SessionError> {
    let (verb_tok, mut rest) = split_head(line_text);
    let verb = match verb_tok {
        "analyze" => Verb::Analyze,
        "iterate" => Verb::Iterate,
        "first-regular" => Verb::FirstRegular,
        "degrees" => Verb::Degrees,
        "fan-check" => Verb::FanCheck,
        "classify" => Verb::Classify,
        other => return Err(serr(line, format!("unknown command `{other}`"))),
    };
    let mut n = None;
    let mut cap = None;
    let mut degree_cap = None;
    let mut surface = None;
    let mut name: Option<String> = None;
    while !rest.is_empty() {
        let (tok, r) = split_head(rest);
        rest = r;
        match tok {
            "--n" | "--cap" | "--degree-cap" | "--surface" => {
                let (val, r2) = split_head(rest);
                rest = r2;
                if val.is_empty() {
                    return Err(serr(line, format!("flag `{tok}` needs a value")));
                }
                let dup = match tok {
                    "--n" => n
                        .replace(val.parse::<usize>().map_err(|_| {
                            serr(line, format!("`{val}` is not a valid count"))
                        })?)
                        .is_some(),
                    "--cap" => cap
                        .replace(val.parse::<usize>().map_err(|_| {
                            serr(line, format!("`{val}` is not a valid cap"))
                        })?)
                        .is_some(),
                    "--degree-cap" => degree_cap
                        .replace(val.parse::<u64>().map_err(|_| {
                            serr(line, format!("`{val}` is not a valid degree cap"))
                        })?)
                        .is_some(),
                    _ => surface.replace(parse_surface(val, line)?).is_some(),
                };
                if dup {
                    return Err(serr(line, format!("duplicate flag `{tok}`")));
                }
            }
            t if t.starts_with("--") => {
                return Err(serr(line, format!("unknown flag `{t}`")));
            }
            t => {
                if name.replace(t.to_string()).is_some() {
                    return Err(serr(line, "more than one map name on the line"));
                }
            }
        }
    }
    let map = name.ok_or_else(|| serr(line, "command needs a map name"))?;
    match verb {
        Verb::Iterate | Verb::Degrees => {
            if n.is_none_or(|v| v == 0) {
                return Err(serr(line, "this command needs `--n` with a positive count"));
            }
        }
        Verb::FanCheck => {
            if surface.is_none() {
                return Err(serr(line, "fan-check needs `--surface`"));
            }
        }
        Verb::Analyze | Verb::FirstRegular | Verb::Classify => {
            if n.is_some() {
                return Err(serr(line, format!("`{verb_tok}` does not take `--n`")));
            }
        }
    }
    if verb != Verb::FanCheck && surface.is_some() {
        return Err(serr(line, "`--surface` only applies to fan-check"));
    }
    Ok(CommandLine {
        text: line_text.to_string(),
        line,
        verb,
        map,
        n,
        cap,
        degree_cap,
        surface,
    })
}

impl Session {
    /// Canonical text form; parsing it back yields the same session.
    /// Affine declarations print as their cleared projective model, which
    /// is the parsed representation.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.field.is_rational() {
            out.push_str("field rational\n");
        } else {
            out.push_str(&format!("field ext minpoly {}\n", minpoly_text(&self.field)));
        }
        for (name, def) in &self.maps {
            match def {
                MapDef::Projective(m) => {
                    let f = m.forms();
                    out.push_str(&format!("map {name} proj [{} : {} : {}]\n", f[0], f[1], f[2]));
                }
                MapDef::Monomial(m) => {
                    let e = m.matrix().entries();
                    let l = m.lambda();
                    out.push_str(&format!(
                        "map {name} monomial A=[[{},{}],[{},{}]] lambda=({}, {})\n",
                        e[0][0], e[0][1], e[1][0], e[1][1], l[0], l[1]
                    ));
                }
                MapDef::Triangular(t) => {
                    out.push_str(&format!(
                        "map {name} triangular a={} c={} q={}\n",
                        t.a(),
                        t.c(),
                        upoly_text(t.q(), "y")
                    ));
                }
                MapDef::Skew(s) => {
                    out.push_str(&format!(
                        "map {name} skew phi={} f={}\n",
                        upoly_text(s.phi(), "x"),
                        skew_poly_text(s)
                    ));
                }
            }
        }
        for cmd in &self.commands {
            let verb = match cmd.verb {
                Verb::Analyze => "analyze",
                Verb::Iterate => "iterate",
                Verb::FirstRegular => "first-regular",
                Verb::Degrees => "degrees",
                Verb::FanCheck => "fan-check",
                Verb::Classify => "classify",
            };
            out.push_str(verb);
            if let Some(n) = cmd.n {
                out.push_str(&format!(" --n {n}"));
            }
            if let Some((tok, _)) = &cmd.surface {
                out.push_str(&format!(" --surface {tok}"));
            }
            out.push_str(&format!(" {}", cmd.map));
            if let Some(c) = cmd.cap {
                out.push_str(&format!(" --cap {c}"));
            }
            if let Some(d) = cmd.degree_cap {
                out.push_str(&format!(" --degree-cap {d}"));
            }
            out.push('\n');
        }
        out
    }
}

fn minpoly_text(field: &FieldRef) -> String {
    let q = NumberField::rational();
    let p = MPoly::from_terms(
        &q,
        1,
        field
            .minpoly()
            .iter()
            .enumerate()
            .map(|(i, c)| (FieldElement::from_rational(&q, c.clone()), vec![i as u64])),
    )
    .expect("well-formed minpoly");
    p.to_string()
}

pub(crate) fn upoly_text(p: &UPoly, var: &str) -> String {
    let m = MPoly::from_terms(
        p.field(),
        1,
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), vec![i as u64])),
    )
    .expect("well-formed coefficients");
    m.display_with(&[var])
}

/// Rebuild the defining polynomial `f(x, y)` of a skew map whose
/// coefficients have trivial denominators, as every session-parsed skew
/// map does.
fn skew_poly_text(s: &SkewMap) -> String {
    let field = s.field();
    let mut terms: Vec<(FieldElement, Vec<u64>)> = Vec::new();
    for (j, coeff) in s.coeffs().iter().enumerate() {
        debug_assert!(
            coeff.den().degree() == Some(0),
            "session skew maps have polynomial coefficients"
        );
        let scale = coeff
            .den()
            .coeff(0)
            .inv()
            .expect("nonzero denominator");
        for (i, c) in coeff.num().coeffs().iter().enumerate() {
            if !c.is_zero() {
                terms.push((
                    c.mul(&scale).expect("same field"),
                    vec![i as u64, j as u64],
                ));
            }
        }
    }
    MPoly::from_terms(field, 2, terms)
        .expect("well-formed terms")
        .to_string()
}

fn parse_surface(tok: &str, line: usize) -> Result<(String, Fan), SessionError> {
    let fan = match tok {
        "p2" => Fan::p2(),
        "p1xp1" => Fan::p1xp1(),
        _ => {
            let n = tok
                .strip_prefix('f')
                .and_then(|r| r.parse::<u32>().ok())
                .ok_or_else(|| {
                    serr(line, format!("unknown surface `{tok}` (p2, p1xp1, or f<n>)"))
                })?;
            Fan::hirzebruch(n)
        }
    };
    Ok((tok.to_string(), fan))
}
