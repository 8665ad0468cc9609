//! Exact scalars: arbitrary-precision rationals and elements of a single
//! algebraic extension `Q[t]/(m(t))` with a monic minimal polynomial.
//!
//! Reducibility of the declared minimal polynomial is detected lazily: the
//! extended Euclid used by [`FieldElement::inv`] returns
//! [`Error::NotInvertible`] when it meets a zero divisor.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rational = num_rational::BigRational;

/// Shared handle to the coefficient field of a computation.
pub type FieldRef = Arc<NumberField>;

/// `Q[t]/(m(t))` for a monic `m`; degree 1 is plain `Q`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NumberField {
    degree: usize,
    /// Monic, ascending coefficients, length `degree + 1`.
    minpoly: Vec<Rational>,
}

impl NumberField {
    /// The rational field, presented as the degree-1 quotient `Q[t]/(t)`.
    pub fn rational() -> FieldRef {
        Arc::new(NumberField {
            degree: 1,
            minpoly: vec![Rational::zero(), Rational::one()],
        })
    }

    /// Build `Q[t]/(m)` from ascending coefficients of a monic `m`.
    pub fn extension(minpoly: Vec<Rational>) -> Result<FieldRef, Error> {
        let minpoly = trim(minpoly);
        if minpoly.len() < 2 {
            return Err(Error::ZeroInput);
        }
        if !minpoly.last().unwrap().is_one() {
            return Err(Error::NotInvertible(
                "minimal polynomial must be monic".into(),
            ));
        }
        Ok(Arc::new(NumberField {
            degree: minpoly.len() - 1,
            minpoly,
        }))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Ascending coefficients of the minimal polynomial.
    pub fn minpoly(&self) -> &[Rational] {
        &self.minpoly
    }

    pub fn is_rational(&self) -> bool {
        self.degree == 1
    }
}

/// Element of a [`NumberField`]: a residue of degree `< field.degree()`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FieldElement {
    field: FieldRef,
    /// Ascending coefficients, length exactly `field.degree()`.
    coeffs: Vec<Rational>,
}

impl FieldElement {
    fn make(field: &FieldRef, mut coeffs: Vec<Rational>) -> Self {
        coeffs.resize(field.degree, Rational::zero());
        FieldElement {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &FieldRef) -> Self {
        Self::make(field, Vec::new())
    }

    pub fn one(field: &FieldRef) -> Self {
        Self::from_rational(field, Rational::one())
    }

    pub fn from_rational(field: &FieldRef, r: Rational) -> Self {
        // Degree-1 fields reduce t to a rational, so the residue of a
        // constant is the constant itself in every case.
        Self::make(field, vec![r])
    }

    pub fn from_int(field: &FieldRef, n: i64) -> Self {
        Self::from_rational(field, Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(field: &FieldRef, n: BigInt) -> Self {
        Self::from_rational(field, Rational::from_integer(n))
    }

    /// The residue of `t`, reduced mod the minimal polynomial.
    pub fn generator(field: &FieldRef) -> Self {
        let rep = reduce(&[Rational::zero(), Rational::one()], &field.minpoly);
        Self::make(field, rep)
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    /// Ascending residue coefficients.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// The rational value, if the element lies in the prime field.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn same_field(&self, other: &Self) -> Result<(), Error> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.same_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self::make(&self.field, coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.same_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self::make(&self.field, coeffs))
    }

    pub fn neg(&self) -> Self {
        Self::make(&self.field, self.coeffs.iter().map(|a| -a).collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        self.same_field(other)?;
        let prod = poly_mul(&self.coeffs, &other.coeffs);
        Ok(Self::make(&self.field, reduce(&prod, &self.field.minpoly)))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::make(&self.field, self.coeffs.iter().map(|a| a * r).collect())
    }

    /// Multiplicative inverse by extended Euclid against the minimal
    /// polynomial.  A non-constant gcd means the declared minimal polynomial
    /// is reducible; that is reported, not repaired.
    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let a = trim(self.coeffs.clone());
        let (g, s) = half_ext_gcd(&a, &self.field.minpoly);
        if g.len() != 1 {
            return Err(Error::NotInvertible(format!(
                "gcd with the minimal polynomial has degree {}; the declared minimal \
                 polynomial is reducible",
                g.len() - 1
            )));
        }
        let ginv = g[0].recip();
        let coeffs = s.iter().map(|c| c * &ginv).collect::<Vec<_>>();
        Ok(Self::make(
            &self.field,
            reduce(&coeffs, &self.field.minpoly),
        ))
    }

    pub fn div(&self, other: &Self) -> Result<Self, Error> {
        self.mul(&other.inv()?)
    }

    pub fn pow_u64(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same field");
            }
        }
        acc
    }

    /// Integer power; negative exponents require invertibility.
    pub fn pow_bigint(&self, e: &BigInt) -> Result<Self, Error> {
        let base = if e.is_negative() {
            self.inv()?
        } else {
            self.clone()
        };
        let mut mag = e.abs();
        let mut acc = Self::one(&self.field);
        let mut sq = base;
        let two = BigInt::from(2);
        while !mag.is_zero() {
            if (&mag % &two).is_one() {
                acc = acc.mul(&sq)?;
            }
            mag /= &two;
            if !mag.is_zero() {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{}", fmt_rational(&r));
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{}", fmt_rational(&mag))?;
            }
            if i > 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                write!(f, "t")?;
                if i > 1 {
                    write!(f, "^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

/// Canonical text for a rational: `p` or `p/q` with positive `q`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

// Dense ascending-coefficient helpers over Q, used only for residue
// reduction and the extended Euclid above.

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(Rational::is_zero) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a monic `m`.
fn reduce(a: &[Rational], m: &[Rational]) -> Vec<Rational> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.last().unwrap().clone();
        let shift = r.len() - 1 - dm;
        for (i, mc) in m.iter().enumerate() {
            if !mc.is_zero() {
                let idx = shift + i;
                let delta = &lead * mc;
                r[idx] -= delta;
            }
        }
        r = trim(r);
    }
    r
}

/// Returns `(g, s)` with `s*a = g (mod m)` and `g` the gcd of `a` and `m`.
fn half_ext_gcd(a: &[Rational], m: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r0 = m.to_vec();
    let mut r1 = trim(a.to_vec());
    let mut s0: Vec<Rational> = Vec::new();
    let mut s1 = vec![Rational::one()];
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    (r0, s0)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = a.to_vec();
    out.resize(out.len().max(b.len()), Rational::zero());
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let lead = b.last().unwrap();
    let mut r = trim(a.to_vec());
    let mut q = vec![Rational::zero(); (r.len() + 1).saturating_sub(b.len())];
    while r.len() >= b.len() {
        let c = r.last().unwrap() / lead;
        let shift = r.len() - b.len();
        q[shift] = c.clone();
        for (i, bc) in b.iter().enumerate() {
            if !bc.is_zero() {
                let delta = &c * bc;
                r[shift + i] -= delta;
            }
        }
        r = trim(r);
    }
    (trim(q), r)
}
