//! Dense univariate polynomials and rational functions over a number
//! field, plus exact root extraction inside the field.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::mpoly::MPoly;
use crate::numfield::{FieldElement, FieldRef, Rational};

/// Ascending dense coefficients with no trailing zeros; the zero
/// polynomial has no coefficients at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPoly {
    field: FieldRef,
    coeffs: Vec<FieldElement>,
}

impl UPoly {
    pub fn new(field: &FieldRef, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &FieldRef) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &FieldRef) -> Self {
        Self::constant(FieldElement::one(field))
    }

    pub fn constant(c: FieldElement) -> Self {
        let field = c.field().clone();
        Self::new(&field, vec![c])
    }

    /// The variable itself.
    pub fn var(field: &FieldRef) -> Self {
        Self::new(
            field,
            vec![FieldElement::zero(field), FieldElement::one(field)],
        )
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    fn check_field(&self, other: &Self) -> Result<(), Error> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_field(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i))?);
        }
        Ok(Self::new(&self.field, out))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(
            &self.field,
            self.coeffs.iter().map(|c| c.neg()).collect(),
        )
    }

    pub fn scale(&self, k: &FieldElement) -> Result<Self, Error> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.mul(k)?);
        }
        Ok(Self::new(&self.field, out))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.field));
        }
        let mut out =
            vec![FieldElement::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(Self::new(&self.field, out))
    }

    pub fn pow_u64(&self, n: u64) -> Result<Self, Error> {
        let mut acc = Self::one(&self.field);
        let mut base = self.clone();
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

    pub fn divrem(&self, d: &Self) -> Result<(Self, Self), Error> {
        self.check_field(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = d.degree().unwrap();
        let lead_inv = d.leading().unwrap().inv()?;
        let mut rem = self.coeffs.clone();
        let mut quo = vec![FieldElement::zero(&self.field); rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let f = rem.last().unwrap().mul(&lead_inv)?;
            if !f.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    rem[k + i] = rem[k + i].sub(&f.mul(dc)?)?;
                }
            }
            quo[k] = f;
            rem.pop();
        }
        Ok((Self::new(&self.field, quo), Self::new(&self.field, rem)))
    }

    /// Monic rescaling; the zero polynomial is rejected.
    pub fn monic(&self) -> Result<Self, Error> {
        let lead = self.leading().ok_or(Error::ZeroInput)?;
        if lead.is_one() {
            return Ok(self.clone());
        }
        self.scale(&lead.inv()?)
    }

    /// Monic gcd; at least one input must be nonzero.
    pub fn gcd(&self, other: &Self) -> Result<Self, Error> {
        self.check_field(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        if a.is_zero() && b.is_zero() {
            return Err(Error::AllZero);
        }
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            let k = FieldElement::from_bigint(&self.field, BigInt::from(i));
            out.push(c.mul(&k).expect("same field"));
        }
        Self::new(&self.field, out)
    }

    /// The product of distinct irreducible factors.
    pub fn squarefree_part(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let d = self.derivative();
        if d.is_zero() {
            return self.monic();
        }
        let g = self.gcd(&d)?;
        let (q, _) = self.divrem(&g)?;
        q.monic()
    }

    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement, Error> {
        let mut acc = FieldElement::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x)?.add(c)?;
        }
        Ok(acc)
    }

    /// Substitute another polynomial for the variable.
    pub fn compose(&self, inner: &Self) -> Result<Self, Error> {
        self.check_field(inner)?;
        let mut acc = Self::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner)?.add(&Self::constant(c.clone()))?;
        }
        Ok(acc)
    }

    /// `p(k * x)`: scale the variable by a constant.
    pub fn scale_var(&self, k: &FieldElement) -> Result<Self, Error> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut pw = FieldElement::one(&self.field);
        for c in &self.coeffs {
            out.push(c.mul(&pw)?);
            pw = pw.mul(k)?;
        }
        Ok(Self::new(&self.field, out))
    }

    /// Divide by `x - r`; `None` when `r` is not a root.
    pub fn deflate(&self, r: &FieldElement) -> Option<Self> {
        let n = self.degree()?;
        if n == 0 {
            return None;
        }
        let mut q = vec![FieldElement::zero(&self.field); n];
        q[n - 1] = self.coeffs[n].clone();
        for k in (0..n - 1).rev() {
            q[k] = self.coeffs[k + 1].add(&r.mul(&q[k + 1]).ok()?).ok()?;
        }
        let rem = self.coeffs[0].add(&r.mul(&q[0]).ok()?).ok()?;
        if rem.is_zero() {
            Some(Self::new(&self.field, q))
        } else {
            None
        }
    }

    /// View a multivariate polynomial supported on one variable as
    /// univariate.
    pub fn from_mpoly_var(p: &MPoly, var: usize) -> Result<Self, Error> {
        if var >= p.nvars() {
            return Err(Error::VarOutOfRange {
                var,
                nvars: p.nvars(),
            });
        }
        let mut coeffs = vec![FieldElement::zero(p.field()); p.deg_in(var) as usize + 1];
        for (e, c) in p.terms() {
            for (v, &ev) in e.iter().enumerate() {
                if v != var && ev > 0 {
                    return Err(Error::ArityMismatch {
                        expected: 1,
                        got: 2,
                    });
                }
            }
            coeffs[e[var] as usize] = c.clone();
        }
        Ok(Self::new(p.field(), coeffs))
    }

    fn to_mpoly(&self) -> MPoly {
        MPoly::from_terms(
            &self.field,
            1,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (c.clone(), vec![i as u64])),
        )
        .expect("well-formed terms")
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_mpoly().display_with(&["x"]))
    }
}

/// All roots of `p` lying in its coefficient field, with multiplicity,
/// together with a flag telling whether `p` provably splits into linear
/// factors over that field.
///
/// Over the rationals the candidates come from the rational root theorem
/// with divisor enumeration by bounded trial division; over an extension
/// only linear factors are deflated, so nonlinear split polynomials report
/// `false`.
pub fn field_roots(p: &UPoly) -> Result<(Vec<(FieldElement, usize)>, bool), Error> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    let field = p.field().clone();
    let mut mult: BTreeMap<FieldElement, usize> = BTreeMap::new();
    let zk = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let mut cur = if zk > 0 {
        mult.insert(FieldElement::zero(&field), zk);
        UPoly::new(&field, p.coeffs()[zk..].to_vec())
    } else {
        p.clone()
    };
    if field.is_rational() && cur.degree().is_some_and(|d| d >= 2) {
        for cand in rational_candidates(&cur) {
            let c = FieldElement::from_rational(&field, cand);
            let mut k = 0;
            while let Some(next) = cur.deflate(&c) {
                cur = next;
                k += 1;
            }
            if k > 0 {
                *mult.entry(c).or_insert(0) += k;
            }
            if cur.degree() == Some(0) {
                break;
            }
        }
    }
    while cur.degree() == Some(1) {
        let r = cur.coeff(0).div(&cur.coeff(1))?.neg();
        cur = cur.deflate(&r).expect("linear factor divides");
        *mult.entry(r).or_insert(0) += 1;
    }
    let split = cur.degree() == Some(0);
    Ok((mult.into_iter().collect(), split))
}

/// Candidate rational roots `±u/v` with `u` dividing the constant term and
/// `v` the leading term, after clearing denominators.
fn rational_candidates(p: &UPoly) -> Vec<Rational> {
    let mut den_lcm = BigInt::one();
    for c in p.coeffs() {
        let r = c.to_rational().expect("rational coefficient");
        den_lcm = den_lcm.lcm(r.denom());
    }
    let int_coeff = |c: &FieldElement| -> BigInt {
        let r = c.to_rational().expect("rational coefficient");
        (r * Rational::from(den_lcm.clone())).to_integer()
    };
    let a0 = int_coeff(&p.coeff(0)).abs();
    let an = int_coeff(p.leading().expect("nonzero polynomial")).abs();
    let mut set: BTreeSet<Rational> = BTreeSet::new();
    for u in divisors(&a0) {
        for v in divisors(&an) {
            let r = Rational::new(u.clone(), v.clone());
            set.insert(-r.clone());
            set.insert(r);
        }
    }
    set.into_iter().collect()
}

/// Positive divisors from bounded trial division.  When a cofactor
/// survives the bound it is kept as a single pseudo-prime factor, so every
/// listed divisor is genuine but the list may be partial.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    const TRIAL_BOUND: u64 = 1_000_000;
    const MAX_DIVISORS: usize = 4096;
    let mut m = n.clone();
    assert!(m.is_positive(), "divisors of a positive integer");
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let push = |p: BigInt, k: u32, factors: &mut Vec<(BigInt, u32)>| {
        if k > 0 {
            factors.push((p, k));
        }
    };
    let mut k2 = 0;
    while m.is_even() {
        m /= 2;
        k2 += 1;
    }
    push(BigInt::from(2), k2, &mut factors);
    let mut d: u64 = 3;
    while d <= TRIAL_BOUND {
        let db = BigInt::from(d);
        if (&db * &db) > m {
            break;
        }
        let mut k = 0;
        while (&m % &db).is_zero() {
            m /= &db;
            k += 1;
        }
        push(db, k, &mut factors);
        d += 2;
    }
    if m > BigInt::one() {
        push(m, 1, &mut factors);
    }
    let mut divs = vec![BigInt::one()];
    for (p, k) in factors {
        let mut next = Vec::with_capacity(divs.len() * (k as usize + 1));
        for d in &divs {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..k {
                acc = &acc * &p;
                next.push(acc.clone());
            }
        }
        divs = next;
        if divs.len() > MAX_DIVISORS {
            divs.truncate(MAX_DIVISORS);
            break;
        }
    }
    divs
}

/// Reduced fraction of univariate polynomials with a monic denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: UPoly,
    den: UPoly,
}

impl RatFunc {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFunc {
                den: UPoly::one(num.field()),
                num,
            });
        }
        let g = num.gcd(&den)?;
        let (mut num, _) = num.divrem(&g)?;
        let (mut den, _) = den.divrem(&g)?;
        let lead = den.leading().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.inv()?;
            num = num.scale(&inv)?;
            den = den.scale(&inv)?;
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(num: UPoly) -> Self {
        RatFunc {
            den: UPoly::one(num.field()),
            num,
        }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_poly(UPoly::constant(c))
    }

    pub fn var(field: &FieldRef) -> Self {
        Self::from_poly(UPoly::var(field))
    }

    pub fn zero(field: &FieldRef) -> Self {
        Self::from_poly(UPoly::zero(field))
    }

    pub fn one(field: &FieldRef) -> Self {
        Self::from_poly(UPoly::one(field))
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn field(&self) -> &FieldRef {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_poly(&self) -> Option<&UPoly> {
        if self.den.degree() == Some(0) {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<FieldElement> {
        if self.den.degree() == Some(0) && self.num.degree().is_none_or(|d| d == 0) {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        let n = self
            .num
            .mul(&other.den)?
            .add(&other.num.mul(&self.den)?)?;
        Self::new(n, self.den.mul(&other.den)?)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        Self::new(self.num.mul(&other.num)?, self.den.mul(&other.den)?)
    }

    pub fn div(&self, other: &Self) -> Result<Self, Error> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.num.mul(&other.den)?, self.den.mul(&other.num)?)
    }

    pub fn inv(&self) -> Result<Self, Error> {
        Self::one(self.field()).div(self)
    }

    pub fn pow_u64(&self, n: u64) -> Result<Self, Error> {
        Self::new(self.num.pow_u64(n)?, self.den.pow_u64(n)?)
    }

    /// Substitute a rational function for the variable.
    pub fn compose(&self, inner: &Self) -> Result<Self, Error> {
        let n = upoly_at_ratfunc(&self.num, inner)?;
        let d = upoly_at_ratfunc(&self.den, inner)?;
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        n.div(&d)
    }

    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement, Error> {
        let d = self.den.eval(x)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.num.eval(x)?.div(&d)
    }
}

/// Evaluate a polynomial at a rational function by Horner's rule.
pub fn upoly_at_ratfunc(p: &UPoly, r: &RatFunc) -> Result<RatFunc, Error> {
    let mut acc = RatFunc::zero(p.field());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(r)?.add(&RatFunc::constant(c.clone()))?;
    }
    Ok(acc)
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
