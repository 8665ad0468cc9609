//! Sparse multivariate polynomials with exact number-field coefficients.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors, so iteration order,
//! printing, and equality are canonical.  Exponents are machine words with
//! checked arithmetic; overflow is reported, never wrapped.

mod gcd;
mod macaulay;
mod resultant;

pub use gcd::{gcd_many, gcd_pair};
pub use macaulay::has_common_projective_zero;
pub use resultant::resultant;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::numfield::{fmt_rational, FieldElement, FieldRef, Rational};

/// Sparse polynomial in `nvars` variables over a fixed number field.
///
/// Invariants: no explicit zero coefficients; every exponent vector has
/// length `nvars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    field: FieldRef,
    nvars: usize,
    terms: BTreeMap<Vec<u64>, FieldElement>,
}

impl MPoly {
    pub fn zero(field: &FieldRef, nvars: usize) -> Self {
        MPoly {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &FieldRef, nvars: usize, c: FieldElement) -> Self {
        let mut p = Self::zero(field, nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(field: &FieldRef, nvars: usize) -> Self {
        Self::constant(field, nvars, FieldElement::one(field))
    }

    pub fn from_int(field: &FieldRef, nvars: usize, n: i64) -> Self {
        Self::constant(field, nvars, FieldElement::from_int(field, n))
    }

    pub fn variable(field: &FieldRef, nvars: usize, var: usize) -> Result<Self, Error> {
        if var >= nvars {
            return Err(Error::VarOutOfRange { var, nvars });
        }
        let mut e = vec![0; nvars];
        e[var] = 1;
        let mut p = Self::zero(field, nvars);
        p.terms.insert(e, FieldElement::one(field));
        Ok(p)
    }

    /// Build from `(coefficient, exponents)` pairs; like terms are merged.
    pub fn from_terms(
        field: &FieldRef,
        nvars: usize,
        terms: impl IntoIterator<Item = (FieldElement, Vec<u64>)>,
    ) -> Result<Self, Error> {
        let mut p = Self::zero(field, nvars);
        for (c, e) in terms {
            if e.len() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    got: e.len(),
                });
            }
            term_total_degree(&e)?;
            p.add_term(c, e);
        }
        Ok(p)
    }

    fn add_term(&mut self, c: FieldElement, e: Vec<u64>) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let merged = slot.get().add(&c).expect("same field");
                if merged.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = merged;
                }
            }
        }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u64>, &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_value(&self) -> Option<&FieldElement> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            if e.iter().all(|&x| x == 0) {
                return Some(c);
            }
        }
        None
    }

    /// The single term, when the polynomial is a monomial.
    pub fn single_term(&self) -> Option<(&Vec<u64>, &FieldElement)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Greatest term in lexicographic exponent order.
    pub fn lex_lead(&self) -> Option<(&Vec<u64>, &FieldElement)> {
        self.terms.iter().next_back()
    }

    /// Largest total degree among terms; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u64 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u64>())
            .max()
            .unwrap_or(0)
    }

    pub fn deg_in(&self, var: usize) -> u64 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u64>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    fn check_compat(&self, other: &Self) -> Result<(), Error> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: other.nvars,
            });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_compat(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(c.clone(), e.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.check_compat(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(c.neg(), e.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn scale(&self, k: &FieldElement) -> Result<Self, Error> {
        if k.is_zero() {
            return Ok(Self::zero(&self.field, self.nvars));
        }
        let mut out = Self::zero(&self.field, self.nvars);
        for (e, c) in &self.terms {
            out.add_term(c.mul(k)?, e.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_compat(other)?;
        let mut out = Self::zero(&self.field, self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = add_exps(ea, eb)?;
                term_total_degree(&e)?;
                out.add_term(ca.mul(cb)?, e);
            }
        }
        Ok(out)
    }

    /// Multiply by a single term.
    pub fn mul_term(&self, c: &FieldElement, exps: &[u64]) -> Result<Self, Error> {
        if exps.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: exps.len(),
            });
        }
        if c.is_zero() {
            return Ok(Self::zero(&self.field, self.nvars));
        }
        let mut out = Self::zero(&self.field, self.nvars);
        for (e, cc) in &self.terms {
            let e2 = add_exps(e, exps)?;
            term_total_degree(&e2)?;
            out.add_term(cc.mul(c)?, e2);
        }
        Ok(out)
    }

    pub fn pow(&self, n: u64) -> Result<Self, Error> {
        if n == 0 {
            return Ok(Self::one(&self.field, self.nvars));
        }
        if let Some((e, c)) = self.single_term() {
            let exps = e
                .iter()
                .map(|&x| x.checked_mul(n).ok_or(Error::ExponentOverflow))
                .collect::<Result<Vec<_>, _>>()?;
            term_total_degree(&exps)?;
            let mut out = Self::zero(&self.field, self.nvars);
            out.add_term(c.pow_u64(n), exps);
            return Ok(out);
        }
        let mut base = self.clone();
        let mut acc = Self::one(&self.field, self.nvars);
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn derivative(&self, var: usize) -> Result<Self, Error> {
        if var >= self.nvars {
            return Err(Error::VarOutOfRange {
                var,
                nvars: self.nvars,
            });
        }
        let mut out = Self::zero(&self.field, self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            let k = FieldElement::from_bigint(&self.field, BigInt::from(e[var]));
            out.add_term(c.mul(&k)?, e2);
        }
        Ok(out)
    }

    /// Substitute `subs[v]` for variable `v`.
    pub fn compose(&self, subs: &[Self]) -> Result<Self, Error> {
        if subs.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: subs.len(),
            });
        }
        let out_vars = subs.first().map_or(0, |s| s.nvars);
        for s in subs {
            if s.nvars != out_vars {
                return Err(Error::ArityMismatch {
                    expected: out_vars,
                    got: s.nvars,
                });
            }
            if s.field != self.field {
                return Err(Error::FieldMismatch);
            }
        }
        if self.terms.is_empty() {
            return Ok(Self::zero(&self.field, out_vars));
        }
        let terms: Vec<(&Vec<u64>, &FieldElement)> = self.terms.iter().collect();
        compose_level(&self.field, out_vars, &terms, 0, subs)
    }

    /// Substitute a scalar for one variable, keeping the arity.
    pub fn collapse_var(&self, var: usize, value: &FieldElement) -> Result<Self, Error> {
        if var >= self.nvars {
            return Err(Error::VarOutOfRange {
                var,
                nvars: self.nvars,
            });
        }
        let mut out = Self::zero(&self.field, self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[var] = 0;
            let coeff = if e[var] == 0 {
                c.clone()
            } else {
                c.mul(&value.pow_u64(e[var]))?
            };
            out.add_term(coeff, e2);
        }
        Ok(out)
    }

    pub fn evaluate(&self, vals: &[FieldElement]) -> Result<FieldElement, Error> {
        if vals.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: vals.len(),
            });
        }
        let mut acc = FieldElement::zero(&self.field);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &ev) in e.iter().enumerate() {
                if ev > 0 {
                    t = t.mul(&vals[v].pow_u64(ev))?;
                }
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// Dense coefficient list with respect to one variable; coefficients
    /// keep the full arity with exponent 0 in `var`.
    pub fn to_univar(&self, var: usize) -> Result<Vec<Self>, Error> {
        if var >= self.nvars {
            return Err(Error::VarOutOfRange {
                var,
                nvars: self.nvars,
            });
        }
        let deg = self.deg_in(var) as usize;
        let mut out = vec![Self::zero(&self.field, self.nvars); deg + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[var] as usize;
            e2[var] = 0;
            out[k].add_term(c.clone(), e2);
        }
        Ok(out)
    }

    pub fn from_univar(coeffs: &[Self], var: usize, field: &FieldRef, nvars: usize) -> Self {
        let mut out = Self::zero(field, nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, cc) in &c.terms {
                let mut e2 = e.clone();
                e2[var] += k as u64;
                out.add_term(cc.clone(), e2);
            }
        }
        out
    }

    /// Exact quotient, or `None` when `self` is not a multiple of `d`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (de, dc) = d.lex_lead().unwrap();
        let dinv = dc.inv().ok()?;
        let mut rem = self.clone();
        let mut q = Self::zero(&self.field, self.nvars);
        while !rem.is_zero() {
            let (re, rc) = rem.lex_lead().unwrap();
            let mut qe = Vec::with_capacity(self.nvars);
            for (a, b) in re.iter().zip(de.iter()) {
                qe.push(a.checked_sub(*b)?);
            }
            let qc = rc.mul(&dinv).ok()?;
            let t = Self::from_terms(&self.field, self.nvars, [(qc, qe)]).ok()?;
            rem = rem.sub(&t.mul(d).ok()?).ok()?;
            q = q.add(&t).ok()?;
        }
        Some(q)
    }

    /// Per-variable minimum exponent over all terms.
    pub fn monomial_content(&self) -> Vec<u64> {
        let mut m = vec![u64::MAX; self.nvars];
        for e in self.terms.keys() {
            for (slot, &x) in m.iter_mut().zip(e.iter()) {
                *slot = (*slot).min(x);
            }
        }
        if self.terms.is_empty() {
            m.fill(0);
        }
        m
    }

    pub fn div_by_monomial(&self, m: &[u64]) -> Option<Self> {
        let mut out = Self::zero(&self.field, self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = Vec::with_capacity(self.nvars);
            for (a, b) in e.iter().zip(m.iter()) {
                e2.push(a.checked_sub(*b)?);
            }
            out.terms.insert(e2, c.clone());
        }
        Some(out)
    }

    /// Scalar `u` such that `self / u` is in canonical form.
    ///
    /// Over the rationals: cleared denominators, trivial integer content,
    /// positive lexicographically-first coefficient.  Over an extension:
    /// lexicographically-first coefficient equal to 1.
    pub fn canonical_unit(&self) -> FieldElement {
        joint_canonical_unit(std::slice::from_ref(self))
    }

    pub fn canonicalize(&self) -> Self {
        let u = self.canonical_unit();
        if u.is_one() {
            return self.clone();
        }
        let uinv = u.inv().expect("canonical unit is nonzero");
        self.scale(&uinv).expect("same field")
    }

    /// Homogenize a polynomial in `nvars` variables by one extra variable,
    /// padding every term up to the total degree.
    pub fn homogenize(&self) -> Result<Self, Error> {
        let d = self.total_degree();
        let mut out = Self::zero(&self.field, self.nvars + 1);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2.push(d - e.iter().sum::<u64>());
            out.add_term(c.clone(), e2);
        }
        Ok(out)
    }

    pub fn display_with(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.nvars, "one name per variable");
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let mono = monomial_string(e, names);
            let piece = coefficient_piece(c, &mono);
            if out.is_empty() {
                out = piece.lead;
            } else {
                out.push_str(&piece.join);
            }
            out.push_str(&piece.body);
        }
        out
    }
}

struct TermPiece {
    lead: String,
    join: String,
    body: String,
}

fn monomial_string(e: &[u64], names: &[&str]) -> String {
    let mut parts = Vec::new();
    for (v, &ev) in e.iter().enumerate() {
        if ev == 1 {
            parts.push(names[v].to_string());
        } else if ev > 1 {
            parts.push(format!("{}^{}", names[v], ev));
        }
    }
    parts.join("*")
}

fn coefficient_piece(c: &FieldElement, mono: &str) -> TermPiece {
    if let Some(r) = c.to_rational() {
        let mag = r.abs();
        let neg = r.is_negative();
        let coeff = if mag.is_one() && !mono.is_empty() {
            String::new()
        } else {
            fmt_rational(&mag)
        };
        let body = match (coeff.is_empty(), mono.is_empty()) {
            (true, false) => mono.to_string(),
            (false, true) => coeff,
            (false, false) => format!("{}*{}", coeff, mono),
            (true, true) => unreachable!("coefficient and monomial both empty"),
        };
        TermPiece {
            lead: if neg { "-".into() } else { String::new() },
            join: if neg { " - ".into() } else { " + ".into() },
            body,
        }
    } else {
        let text = c.to_string();
        let wrapped = if text.contains(' ') {
            format!("({})", text)
        } else {
            text
        };
        let body = if mono.is_empty() {
            wrapped
        } else {
            format!("{}*{}", wrapped, mono)
        };
        TermPiece {
            lead: String::new(),
            join: " + ".into(),
            body,
        }
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: &[&str] = match self.nvars {
            1 => &["t"],
            2 => &["x", "y"],
            3 => &["X", "Y", "Z"],
            _ => {
                let owned: Vec<String> =
                    (0..self.nvars).map(|i| format!("v{}", i)).collect();
                let refs: Vec<&str> = owned.iter().map(String::as_str).collect();
                return write!(f, "{}", self.display_with(&refs));
            }
        };
        write!(f, "{}", self.display_with(names))
    }
}

fn add_exps(a: &[u64], b: &[u64]) -> Result<Vec<u64>, Error> {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| x.checked_add(*y).ok_or(Error::ExponentOverflow))
        .collect()
}

/// Sparse Horner evaluation of a term group at `subs`, one variable per
/// recursion level: with the group's distinct exponents of variable `v`
/// in descending order e1 > e2 > ..., the result is
/// `(...(C(e1) s^(e1-e2) + C(e2)) s^(e2-e3) + ...) s^(e_last)`,
/// where each C recurses on the remaining variables.  Powers of the
/// substituents are taken only over exponent gaps, so dense forms never
/// repeat work across terms and single-term substituents with huge
/// exponents still power in one step.
fn compose_level(
    field: &FieldRef,
    out_vars: usize,
    terms: &[(&Vec<u64>, &FieldElement)],
    v: usize,
    subs: &[MPoly],
) -> Result<MPoly, Error> {
    if v == subs.len() {
        debug_assert_eq!(terms.len(), 1, "full exponent vectors are unique");
        return Ok(MPoly::constant(field, out_vars, terms[0].1.clone()));
    }
    let mut groups: BTreeMap<u64, Vec<(&Vec<u64>, &FieldElement)>> = BTreeMap::new();
    for t in terms {
        groups.entry(t.0[v]).or_default().push(*t);
    }
    let mut acc: Option<MPoly> = None;
    let mut pending_exp = 0u64;
    for (&e, group) in groups.iter().rev() {
        let c = compose_level(field, out_vars, group, v + 1, subs)?;
        acc = Some(match acc {
            None => c,
            Some(a) => a.mul(&subs[v].pow(pending_exp - e)?)?.add(&c)?,
        });
        pending_exp = e;
    }
    let a = acc.expect("nonempty term group");
    if pending_exp > 0 {
        a.mul(&subs[v].pow(pending_exp)?)
    } else {
        Ok(a)
    }
}

fn term_total_degree(e: &[u64]) -> Result<u64, Error> {
    e.iter()
        .try_fold(0u64, |acc, &x| acc.checked_add(x))
        .ok_or(Error::ExponentOverflow)
}

/// Canonical-scaling unit shared by a tuple of polynomials: the tuple is
/// scaled by one common scalar, so map components stay comparable.
pub fn joint_canonical_unit(polys: &[MPoly]) -> FieldElement {
    let Some(first) = polys.iter().find(|p| !p.is_zero()) else {
        return polys
            .first()
            .map(|p| FieldElement::one(p.field()))
            .expect("at least one polynomial");
    };
    let field = first.field();
    if field.is_rational() {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for p in polys {
            for (_, c) in p.terms() {
                let r = c.to_rational().expect("rational field coefficient");
                num_gcd = num_gcd.gcd(r.numer());
                den_lcm = den_lcm.lcm(r.denom());
            }
        }
        let lead = first
            .lex_lead()
            .unwrap()
            .1
            .to_rational()
            .expect("rational field coefficient");
        let sign = if lead.is_negative() { -1 } else { 1 };
        FieldElement::from_rational(field, Rational::new(num_gcd * sign, den_lcm))
    } else {
        first.lex_lead().unwrap().1.clone()
    }
}

/// A ratio of polynomials in the affine variables `x, y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineRatio {
    pub num: MPoly,
    pub den: MPoly,
}

impl AffineRatio {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self, Error> {
        if num.nvars() != 2 || den.nvars() != 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                got: if num.nvars() != 2 {
                    num.nvars()
                } else {
                    den.nvars()
                },
            });
        }
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(AffineRatio { num, den })
    }

    pub fn from_poly(num: MPoly) -> Result<Self, Error> {
        let den = MPoly::one(num.field(), 2);
        Self::new(num, den)
    }

    /// Remove the polynomial gcd of numerator and denominator.
    pub fn reduced(&self) -> Result<Self, Error> {
        if self.num.is_zero() {
            return Ok(AffineRatio {
                num: self.num.clone(),
                den: MPoly::one(self.den.field(), 2),
            });
        }
        let g = gcd_many(&[self.num.clone(), self.den.clone()])?;
        let num = self.num.exact_div(&g).expect("gcd divides numerator");
        let den = self.den.exact_div(&g).expect("gcd divides denominator");
        Ok(AffineRatio { num, den })
    }
}

/// Three homogeneous ternary forms of one common total degree.
///
/// Zero components are allowed (their degree is unconstrained) as long as at
/// least one form is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousTriple {
    forms: [MPoly; 3],
    degree: u64,
}

impl HomogeneousTriple {
    pub fn new(f0: MPoly, f1: MPoly, f2: MPoly) -> Result<Self, Error> {
        let forms = [f0, f1, f2];
        for f in &forms {
            if f.nvars() != 3 {
                return Err(Error::ArityMismatch {
                    expected: 3,
                    got: f.nvars(),
                });
            }
            if f.field() != forms[0].field() {
                return Err(Error::FieldMismatch);
            }
            if !f.is_homogeneous() {
                return Err(Error::NotHomogeneous);
            }
        }
        let mut degree = None;
        for f in &forms {
            if f.is_zero() {
                continue;
            }
            let d = f.total_degree();
            match degree {
                None => degree = Some(d),
                Some(prev) if prev != d => return Err(Error::DegreeMismatch),
                _ => {}
            }
        }
        let degree = degree.ok_or(Error::AllZero)?;
        Ok(HomogeneousTriple { forms, degree })
    }

    pub fn forms(&self) -> &[MPoly; 3] {
        &self.forms
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn field(&self) -> &FieldRef {
        self.forms[0].field()
    }

    /// Divide out the common polynomial factor and apply the joint
    /// canonical scaling.
    pub fn normalized(&self) -> Result<Self, Error> {
        let nonzero: Vec<MPoly> = self.forms.iter().filter(|f| !f.is_zero()).cloned().collect();
        let g = gcd_many(&nonzero)?;
        let mut forms = self.forms.clone();
        if g.constant_value().is_none() {
            for f in &mut forms {
                if !f.is_zero() {
                    *f = f.exact_div(&g).expect("gcd divides every form");
                }
            }
        }
        let unit = joint_canonical_unit(&forms);
        if !unit.is_one() {
            let uinv = unit.inv().expect("canonical unit is nonzero");
            for f in &mut forms {
                *f = f.scale(&uinv)?;
            }
        }
        let [f0, f1, f2] = forms;
        Self::new(f0, f1, f2)
    }

    /// Determinant of the 3x3 Jacobian matrix of the forms.
    pub fn jacobian_det(&self) -> Result<MPoly, Error> {
        let mut j = Vec::with_capacity(3);
        for f in &self.forms {
            let row = [f.derivative(0)?, f.derivative(1)?, f.derivative(2)?];
            j.push(row);
        }
        let m2 = |r0: usize, r1: usize, c0: usize, c1: usize| -> Result<MPoly, Error> {
            j[r0][c0].mul(&j[r1][c1])?.sub(&j[r0][c1].mul(&j[r1][c0])?)
        };
        let d0 = j[0][0].mul(&m2(1, 2, 1, 2)?)?;
        let d1 = j[0][1].mul(&m2(1, 2, 0, 2)?)?;
        let d2 = j[0][2].mul(&m2(1, 2, 0, 1)?)?;
        d0.sub(&d1)?.add(&d2)
    }
}

/// Clear denominators of an affine pair `(f, g)`: with `f = A/B`, `g = C/D`
/// coprime and of equal degrees, the triple is `[A*D : C*B : B*D]`, then
/// normalized.
pub fn homogenize_affine_pair(
    f: &AffineRatio,
    g: &AffineRatio,
) -> Result<HomogeneousTriple, Error> {
    let f = f.reduced()?;
    let g = g.reduced()?;
    let (a, b) = homogenize_ratio(&f)?;
    let (c, d) = homogenize_ratio(&g)?;
    let t0 = a.mul(&d)?;
    let t1 = c.mul(&b)?;
    let t2 = b.mul(&d)?;
    HomogeneousTriple::new(t0, t1, t2)?.normalized()
}

/// Homogenize a reduced ratio into coprime forms of equal degree.
fn homogenize_ratio(r: &AffineRatio) -> Result<(MPoly, MPoly), Error> {
    let dn = r.num.total_degree();
    let dd = r.den.total_degree();
    let hn = r.num.homogenize()?;
    let hd = r.den.homogenize()?;
    // Pad the lower-degree side with powers of Z (variable index 2).
    let pad = |p: &MPoly, by: u64| -> Result<MPoly, Error> {
        if by == 0 {
            Ok(p.clone())
        } else {
            p.mul_term(&FieldElement::one(p.field()), &[0, 0, by])
        }
    };
    if dn >= dd {
        Ok((hn, pad(&hd, dn - dd)?))
    } else {
        Ok((pad(&hn, dd - dn)?, hd))
    }
}
