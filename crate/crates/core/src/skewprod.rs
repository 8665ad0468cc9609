//! Skew products and triangular maps of the affine plane.
//!
//! A skew product (x, y) -> (phi(x), f(x, y)) is iterated exactly, with
//! the y-coefficients kept as univariate rational functions of the base
//! variable.  The module checks the leading-coefficient product identity
//! of such iterates, detects the first linear iterate of a triangular map
//! (a x + q(y), c y), decides multiplicative independence of rational
//! numbers by factor refinement, and classifies invertible 3x3 matrices
//! into the two normal forms available to plane automorphisms that
//! preserve no fibration.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::linalg;
use crate::numfield::{FieldElement, FieldRef, Rational};
use crate::upoly::{field_roots, RatFunc, UPoly};
use crate::DEFAULT_DEGREE_CAP;

/// A skew product (x, y) -> (phi(x), sum_i f[i](x) y^i) with y-degree at
/// least 1 and nonzero leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewMap {
    phi: UPoly,
    f: Vec<RatFunc>,
}

impl SkewMap {
    pub fn new(phi: UPoly, mut f: Vec<RatFunc>) -> Result<Self, Error> {
        while f.last().is_some_and(RatFunc::is_zero) {
            f.pop();
        }
        if f.iter().all(RatFunc::is_zero) {
            return Err(Error::ZeroInput);
        }
        if f.len() < 2 {
            return Err(Error::DegreeMismatch);
        }
        for c in &f {
            if c.field() != phi.field() {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(Self { phi, f })
    }

    pub fn phi(&self) -> &UPoly {
        &self.phi
    }

    /// Coefficients of the y-powers, ascending; the last entry is nonzero.
    pub fn coeffs(&self) -> &[RatFunc] {
        &self.f
    }

    pub fn y_degree(&self) -> usize {
        self.f.len() - 1
    }

    pub fn field(&self) -> &FieldRef {
        self.phi.field()
    }
}

/// Exact n-fold composition with the default degree cap.
pub fn skew_iterate(map: &SkewMap, n: usize) -> Result<SkewMap, Error> {
    skew_iterate_capped(map, n, DEFAULT_DEGREE_CAP)
}

/// Exact n-fold composition.  The y-degree of the result is d^n and is
/// checked against the cap before any work; the base-variable degrees of
/// the coefficients are checked against the same cap as they grow.
pub fn skew_iterate_capped(map: &SkewMap, n: usize, cap: u64) -> Result<SkewMap, Error> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let d = map.y_degree() as u64;
    let predicted = d
        .checked_pow(n as u32)
        .ok_or(Error::DegreeCapExceeded {
            degree: u64::MAX,
            cap,
        })?;
    if predicted > cap {
        return Err(Error::DegreeCapExceeded {
            degree: predicted,
            cap,
        });
    }
    let mut phi_n = map.phi.clone();
    let mut f_n = map.f.clone();
    for _ in 1..n {
        f_n = substitute(&f_n, map)?;
        phi_n = phi_n.compose(&map.phi)?;
        let x_degree = f_n
            .iter()
            .flat_map(|c| [c.num().degree(), c.den().degree()])
            .flatten()
            .max()
            .unwrap_or(0) as u64;
        if x_degree > cap {
            return Err(Error::DegreeCapExceeded {
                degree: x_degree,
                cap,
            });
        }
    }
    SkewMap::new(phi_n, f_n)
}

/// Coefficients of g(phi(x), f(x, y)) as a polynomial in y, where g is
/// given by its own y-coefficients.
fn substitute(g: &[RatFunc], map: &SkewMap) -> Result<Vec<RatFunc>, Error> {
    let field = map.field();
    let phi = RatFunc::from_poly(map.phi.clone());
    let mut acc: Vec<RatFunc> = vec![RatFunc::zero(field)];
    for coeff in g.iter().rev() {
        acc = ypoly_mul(&acc, &map.f)?;
        if acc.is_empty() {
            acc.push(RatFunc::zero(field));
        }
        let shifted = coeff.compose(&phi)?;
        acc[0] = acc[0].add(&shifted)?;
    }
    while acc.last().is_some_and(RatFunc::is_zero) {
        acc.pop();
    }
    if acc.is_empty() {
        acc.push(RatFunc::zero(field));
    }
    Ok(acc)
}

fn ypoly_mul(a: &[RatFunc], b: &[RatFunc]) -> Result<Vec<RatFunc>, Error> {
    if a.iter().all(RatFunc::is_zero) || b.iter().all(RatFunc::is_zero) {
        return Ok(Vec::new());
    }
    let field = a[0].field();
    let mut out = vec![RatFunc::zero(field); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&ai.mul(bj)?)?;
        }
    }
    Ok(out)
}

/// Verify that the leading y-coefficient of the k-th iterate equals the
/// telescoping product prod_i a_d(phi^i(x))^(d^(k-1-i)).  True on every
/// valid input; false would expose an iteration bug.
pub fn leading_coeff_identity_check(map: &SkewMap, k: usize) -> Result<bool, Error> {
    if k == 0 {
        return Err(Error::ZeroInput);
    }
    let iterated = skew_iterate(map, k)?;
    let lhs = iterated.coeffs().last().expect("nonempty").clone();

    let d = map.y_degree() as u64;
    let a_d = map.coeffs().last().expect("nonempty");
    let field = map.field();
    let mut rhs = RatFunc::one(field);
    let mut phi_i = UPoly::var(field);
    for i in 0..k {
        let exponent = d
            .checked_pow((k - 1 - i) as u32)
            .ok_or(Error::ExponentOverflow)?;
        let factor = a_d.compose(&RatFunc::from_poly(phi_i.clone()))?;
        rhs = rhs.mul(&factor.pow_u64(exponent)?)?;
        phi_i = phi_i.compose(&map.phi)?;
    }
    Ok(lhs == rhs)
}

/// A triangular polynomial map (x, y) -> (a x + q(y), c y) with nonzero a
/// and c.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularMap {
    a: FieldElement,
    c: FieldElement,
    q: UPoly,
}

impl TriangularMap {
    pub fn new(a: FieldElement, c: FieldElement, q: UPoly) -> Result<Self, Error> {
        if a.field() != c.field() || a.field() != q.field() {
            return Err(Error::FieldMismatch);
        }
        if a.is_zero() || c.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(Self { a, c, q })
    }

    pub fn a(&self) -> &FieldElement {
        &self.a
    }

    pub fn c(&self) -> &FieldElement {
        &self.c
    }

    pub fn q(&self) -> &UPoly {
        &self.q
    }

    pub fn field(&self) -> &FieldRef {
        self.a.field()
    }

    /// The k-th iterate, again triangular:
    /// (a^k x + sum_i a^i q(c^(k-1-i) y), c^k y).
    pub fn iterate(&self, k: usize) -> Result<Self, Error> {
        if k == 0 {
            return Err(Error::ZeroInput);
        }
        let mut q_k = self.q.clone();
        let mut a_pow = FieldElement::one(self.field());
        for _ in 1..k {
            a_pow = a_pow.mul(&self.a)?;
            q_k = self.q.scale(&a_pow)?.add(&q_k.scale_var(&self.c)?)?;
        }
        Ok(Self {
            a: self.a.pow_u64(k as u64),
            c: self.c.pow_u64(k as u64),
            q: q_k,
        })
    }

    /// The same map viewed as a skew product: the y-coordinate c y
    /// depends on y alone, so y serves as the base variable and the
    /// x-coordinate a x + q(y) becomes the fiber polynomial, linear in
    /// the fiber variable with a_0 = q and a_1 = a.
    pub fn as_skew(&self) -> SkewMap {
        let field = self.field();
        let phi = UPoly::var(field).scale(&self.c).expect("same field");
        let f = vec![
            RatFunc::from_poly(self.q.clone()),
            RatFunc::constant(self.a.clone()),
        ];
        SkewMap::new(phi, f).expect("triangular maps are valid skew products")
    }
}

impl fmt::Display for TriangularMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(({})*x + {}, ({})*y)", self.a, self.q, self.c)
    }
}

/// Least k <= cap whose k-th iterate is affine-linear in (x, y), meaning
/// every y^j coefficient with j >= 2 vanishes in the x-component.
pub fn first_linear_iterate(t: &TriangularMap, cap: usize) -> Result<Option<usize>, Error> {
    let mut q_k = t.q.clone();
    let mut a_pow = FieldElement::one(t.field());
    for k in 1..=cap {
        if q_k.degree().is_none_or(|d| d <= 1) {
            return Ok(Some(k));
        }
        a_pow = a_pow.mul(&t.a)?;
        q_k = t.q.scale(&a_pow)?.add(&q_k.scale_var(&t.c)?)?;
    }
    Ok(None)
}

/// Coefficient of y^j in the x-component of the k-th iterate of a
/// triangular map with single-term q = m y^j: the closed form
/// m (a^k - c^(jk)) / (a - c^j) when a != c^j, the direct sum
/// m sum_i a^(k-1-i) c^(ji) otherwise.
pub fn triangular_coefficient(t: &TriangularMap, k: usize) -> Result<FieldElement, Error> {
    match triangular_coefficient_closed_form(t, k) {
        Err(Error::ClosedFormInvalid) => {
            let (m, j) = single_term(&t.q)?;
            if k == 0 {
                return Err(Error::ZeroInput);
            }
            let c_j = t.c.pow_u64(j);
            let mut sum = FieldElement::zero(t.field());
            for i in 0..k {
                let term = t
                    .a
                    .pow_u64((k - 1 - i) as u64)
                    .mul(&c_j.pow_u64(i as u64))?;
                sum = sum.add(&term)?;
            }
            m.mul(&sum)
        }
        other => other,
    }
}

/// Closed-form variant of [`triangular_coefficient`]; refuses the
/// resonant case a = c^j where the geometric-series denominator vanishes.
pub fn triangular_coefficient_closed_form(
    t: &TriangularMap,
    k: usize,
) -> Result<FieldElement, Error> {
    let (m, j) = single_term(&t.q)?;
    if k == 0 {
        return Err(Error::ZeroInput);
    }
    let c_j = t.c.pow_u64(j);
    if t.a == c_j {
        return Err(Error::ClosedFormInvalid);
    }
    let numer = t.a.pow_u64(k as u64).sub(&c_j.pow_u64(k as u64))?;
    let denom = t.a.sub(&c_j)?;
    m.mul(&numer.div(&denom)?)
}

/// The unique term m y^j, j >= 1, of a single-term polynomial.
fn single_term(q: &UPoly) -> Result<(FieldElement, u64), Error> {
    let mut found = None;
    for (j, c) in q.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if found.is_some() || j == 0 {
            return Err(Error::DegreeMismatch);
        }
        found = Some((c.clone(), j as u64));
    }
    found.ok_or(Error::ZeroInput)
}

/// Verdict of a multiplicative-independence test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultIndep {
    pub independent: bool,
    /// A nonzero integer vector e with prod r_i^(e_i) = 1, present exactly
    /// when dependent.
    pub witness: Option<Vec<BigInt>>,
}

/// Decide whether nonzero rationals are multiplicatively independent: the
/// only integer vector e with prod r_i^(e_i) = 1 is zero.  Magnitudes are
/// written over a coprime base obtained by gcd factor refinement (no
/// factorization bound involved), the exponent matrix kernel is computed
/// exactly, and signs contribute one parity coordinate: a kernel witness
/// with odd sign parity is doubled.
pub fn mult_indep_rationals(rs: &[Rational]) -> Result<MultIndep, Error> {
    if rs.iter().any(|r| r.is_zero()) {
        return Err(Error::ZeroInput);
    }
    if rs.is_empty() {
        return Ok(MultIndep {
            independent: true,
            witness: None,
        });
    }
    let mut base: Vec<BigInt> = Vec::new();
    for r in rs {
        insert_refined(&mut base, r.numer().abs());
        insert_refined(&mut base, r.denom().abs());
    }

    // Rows of the exponent matrix, one per rational.
    let rows: Vec<Vec<BigInt>> = rs
        .iter()
        .map(|r| {
            let num = exponents_over_base(&base, &r.numer().abs());
            let den = exponents_over_base(&base, &r.denom().abs());
            num.into_iter()
                .zip(den)
                .map(|(a, b)| BigInt::from(a) - BigInt::from(b))
                .collect()
        })
        .collect();

    // Left kernel of the exponent matrix = kernel of its transpose.
    let transpose: Vec<Vec<Rational>> = (0..base.len())
        .map(|t| rows.iter().map(|row| Rational::from(row[t].clone())).collect())
        .collect();
    let kernel = if base.is_empty() {
        // No magnitude constraints at all (every r_i is +-1): any unit
        // vector is a magnitude relation.
        let mut e = vec![Rational::zero(); rs.len()];
        e[0] = Rational::one();
        vec![e]
    } else {
        linalg::rational_kernel(&transpose)
    };

    let Some(first) = kernel.into_iter().next() else {
        return Ok(MultIndep {
            independent: true,
            witness: None,
        });
    };
    let mut witness = integerize(&first);
    let parity: BigInt = witness
        .iter()
        .zip(rs)
        .filter(|(_, r)| r.is_negative())
        .map(|(e, _)| e)
        .sum();
    if parity.is_odd() {
        for e in &mut witness {
            *e *= 2;
        }
    }
    debug_assert!(
        verify_multiplicative_relation(rs, &witness),
        "witness must satisfy the relation exactly"
    );
    Ok(MultIndep {
        independent: false,
        witness: Some(witness),
    })
}

/// Exact check that prod r_i^(e_i) = 1.
pub fn verify_multiplicative_relation(rs: &[Rational], e: &[BigInt]) -> bool {
    if rs.len() != e.len() {
        return false;
    }
    let mut acc = Rational::one();
    for (r, exp) in rs.iter().zip(e) {
        let steps = exp.magnitude().to_u64().expect("witness exponents are small");
        let factor = if exp.is_negative() { r.recip() } else { r.clone() };
        for _ in 0..steps {
            acc *= &factor;
        }
    }
    acc.is_one()
}

/// Insert a positive integer into a pairwise-coprime base, splitting
/// existing members as needed so every processed value factors exactly
/// over the base.
fn insert_refined(base: &mut Vec<BigInt>, mut v: BigInt) {
    let one = BigInt::one();
    'outer: while v > one {
        for i in 0..base.len() {
            let g = v.gcd(&base[i]);
            if g > one {
                if g == base[i] {
                    v /= &g;
                } else {
                    let b = base.swap_remove(i);
                    insert_refined(base, g.clone());
                    insert_refined(base, b / &g);
                }
                continue 'outer;
            }
        }
        base.push(v);
        return;
    }
}

fn exponents_over_base(base: &[BigInt], value: &BigInt) -> Vec<u64> {
    let mut v = value.clone();
    let mut exps = Vec::with_capacity(base.len());
    for b in base {
        let mut e = 0u64;
        while (&v % b).is_zero() {
            v /= b;
            e += 1;
        }
        exps.push(e);
    }
    debug_assert!(v.is_one(), "base must factor every processed value");
    exps
}

/// Scale a rational vector to a primitive integer vector whose first
/// nonzero entry is positive.
fn integerize(v: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if !g.is_zero() && !g.is_one() {
        for x in &mut ints {
            *x /= &g;
        }
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut ints {
                *x = -&*x;
            }
        }
    }
    ints
}

/// Normal-form cases for an invertible linear automorphism of the plane
/// that preserves no non-constant fibration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinearAutoCase {
    /// One 2x2 Jordan block and a fixed line: J(lambda, 2) + J(1, 1) after
    /// scaling, with lambda not a root of unity.
    CaseA,
    /// Diagonalizable with three distinct eigenvalues whose normalized
    /// pair is multiplicatively independent.
    CaseB,
    Neither,
    /// The characteristic polynomial did not split with rational
    /// eigenvalue ratios, so the independence hypotheses are undecidable
    /// here.
    UnsupportedEigenvalues,
}

/// Classification result with the eigenvalue data that was established.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearAutoClass {
    pub case: LinearAutoCase,
    /// (eigenvalue, Jordan block sizes), present when the characteristic
    /// polynomial split over the coefficient field.
    pub eigen_data: Option<Vec<(FieldElement, Vec<usize>)>>,
}

/// Classify an invertible 3x3 matrix against the two normal forms.  Only
/// split characteristic polynomials with rational eigenvalue ratios are
/// decided; everything else reports UnsupportedEigenvalues rather than a
/// guess.
pub fn classify_linear_auto(a: &[[FieldElement; 3]; 3]) -> Result<LinearAutoClass, Error> {
    let field = a[0][0].field().clone();
    for row in a {
        for entry in row {
            if entry.field() != &field {
                return Err(Error::FieldMismatch);
            }
        }
    }
    let det = linalg::det3(a)?;
    if det.is_zero() {
        return Err(Error::NotInvertible(
            "matrix determinant is zero".to_string(),
        ));
    }

    let trace = a[0][0].add(&a[1][1])?.add(&a[2][2])?;
    let m2 = principal_minor(a, 0, 1)?
        .add(&principal_minor(a, 0, 2)?)?
        .add(&principal_minor(a, 1, 2)?)?;
    let charpoly = UPoly::new(
        &field,
        vec![
            det.neg(),
            m2,
            trace.neg(),
            FieldElement::one(&field),
        ],
    );
    let (roots, split) = field_roots(&charpoly)?;
    if !split {
        return Ok(LinearAutoClass {
            case: LinearAutoCase::UnsupportedEigenvalues,
            eigen_data: None,
        });
    }

    let mut eigen_data = Vec::with_capacity(roots.len());
    for (lambda, mult) in &roots {
        let geometric = 3 - linalg::rank(shifted(a, lambda)?)?;
        eigen_data.push((lambda.clone(), block_sizes(*mult, geometric)));
    }
    let case = decide_case(&eigen_data)?;
    Ok(LinearAutoClass {
        case,
        eigen_data: Some(eigen_data),
    })
}

fn principal_minor(
    a: &[[FieldElement; 3]; 3],
    i: usize,
    j: usize,
) -> Result<FieldElement, Error> {
    a[i][i].mul(&a[j][j])?.sub(&a[i][j].mul(&a[j][i])?)
}

fn shifted(a: &[[FieldElement; 3]; 3], lambda: &FieldElement) -> Result<Vec<Vec<FieldElement>>, Error> {
    let mut rows = Vec::with_capacity(3);
    for (i, row) in a.iter().enumerate() {
        let mut out = Vec::with_capacity(3);
        for (j, entry) in row.iter().enumerate() {
            out.push(if i == j { entry.sub(lambda)? } else { entry.clone() });
        }
        rows.push(out);
    }
    Ok(rows)
}

/// Jordan block sizes of a single eigenvalue from its algebraic and
/// geometric multiplicities; unique for 3x3 matrices.
fn block_sizes(algebraic: usize, geometric: usize) -> Vec<usize> {
    match (algebraic, geometric) {
        (m, g) if m == g => vec![1; m],
        (2, 1) => vec![2],
        (3, 1) => vec![3],
        (3, 2) => vec![2, 1],
        _ => unreachable!("geometric multiplicity is between 1 and algebraic"),
    }
}

fn decide_case(eigen_data: &[(FieldElement, Vec<usize>)]) -> Result<LinearAutoCase, Error> {
    match eigen_data.len() {
        3 => {
            let l0 = &eigen_data[0].0;
            let l1 = &eigen_data[1].0;
            let l2 = &eigen_data[2].0;
            let (Some(r0), Some(r1)) = (
                l0.div(l2)?.to_rational(),
                l1.div(l2)?.to_rational(),
            ) else {
                return Ok(LinearAutoCase::UnsupportedEigenvalues);
            };
            let verdict = mult_indep_rationals(&[r0, r1])?;
            Ok(if verdict.independent {
                LinearAutoCase::CaseB
            } else {
                LinearAutoCase::Neither
            })
        }
        2 => {
            let (double, simple) = if eigen_data[0].1.iter().sum::<usize>() == 2 {
                (&eigen_data[0], &eigen_data[1])
            } else {
                (&eigen_data[1], &eigen_data[0])
            };
            if double.1 != vec![2] {
                // Diagonalizable with a repeated eigenvalue: the
                // normalized pair repeats and is never independent.
                return Ok(LinearAutoCase::Neither);
            }
            let Some(ratio) = double.0.div(&simple.0)?.to_rational() else {
                return Ok(LinearAutoCase::UnsupportedEigenvalues);
            };
            // A rational number is a root of unity only at +-1; the ratio
            // cannot be 1 because the eigenvalues are distinct.
            Ok(if ratio == Rational::from(BigInt::from(-1)) {
                LinearAutoCase::Neither
            } else {
                LinearAutoCase::CaseA
            })
        }
        _ => Ok(LinearAutoCase::Neither),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{rat, rat_frac, NumberField};

    fn q() -> FieldRef {
        NumberField::rational()
    }

    fn fe(field: &FieldRef, n: i64) -> FieldElement {
        FieldElement::from_int(field, n)
    }

    fn up(field: &FieldRef, coeffs: &[i64]) -> UPoly {
        UPoly::new(field, coeffs.iter().map(|&c| fe(field, c)).collect())
    }

    fn rf(field: &FieldRef, coeffs: &[i64]) -> RatFunc {
        RatFunc::from_poly(up(field, coeffs))
    }

    /// (x^2, x y^2 + 1).
    fn running_example(field: &FieldRef) -> SkewMap {
        SkewMap::new(
            up(field, &[0, 0, 1]),
            vec![rf(field, &[1]), RatFunc::zero(field), rf(field, &[0, 1])],
        )
        .unwrap()
    }

    #[test]
    fn iterating_once_is_the_identity_on_maps() {
        let f = q();
        let map = running_example(&f);
        assert_eq!(skew_iterate(&map, 1).unwrap(), map);
    }

    #[test]
    fn second_iterate_by_direct_substitution() {
        let f = q();
        let map = running_example(&f);
        let sq = skew_iterate(&map, 2).unwrap();
        assert_eq!(sq.phi(), &up(&f, &[0, 0, 0, 0, 1]));
        // x^2 (x y^2 + 1)^2 + 1 = x^4 y^4 + 2 x^3 y^2 + x^2 + 1.
        let expected = vec![
            rf(&f, &[1, 0, 1]),
            RatFunc::zero(&f),
            rf(&f, &[0, 0, 0, 2]),
            RatFunc::zero(&f),
            rf(&f, &[0, 0, 0, 0, 1]),
        ];
        assert_eq!(sq.coeffs(), expected.as_slice());
        assert_eq!(sq.y_degree(), 4);
    }

    #[test]
    fn cyclotomic_family_second_iterate_coefficient() {
        // (zeta x, y + x^2) over the field of a primitive sixth root:
        // the y-part of the square is y + (1 + zeta^2) x^2.
        let f = NumberField::extension(vec![rat(1), rat(-1), rat(1)]).unwrap();
        let zeta = FieldElement::generator(&f);
        let phi = UPoly::var(&f).scale(&zeta).unwrap();
        let map = SkewMap::new(
            phi,
            vec![
                RatFunc::from_poly(UPoly::new(
                    &f,
                    vec![
                        FieldElement::zero(&f),
                        FieldElement::zero(&f),
                        FieldElement::one(&f),
                    ],
                )),
                RatFunc::one(&f),
            ],
        )
        .unwrap();
        let sq = skew_iterate(&map, 2).unwrap();
        let one = FieldElement::one(&f);
        let coeff = one.add(&zeta.mul(&zeta).unwrap()).unwrap();
        let expected_a0 = RatFunc::from_poly(
            UPoly::new(&f, vec![FieldElement::zero(&f), FieldElement::zero(&f), coeff]),
        );
        assert_eq!(sq.coeffs()[0], expected_a0);
        assert_eq!(sq.coeffs()[1], RatFunc::one(&f));
    }

    #[test]
    fn degree_caps_abort_iteration() {
        let f = q();
        let map = running_example(&f);
        assert_eq!(
            skew_iterate_capped(&map, 3, 7).unwrap_err(),
            Error::DegreeCapExceeded { degree: 8, cap: 7 }
        );
    }

    #[test]
    fn leading_coefficient_identity_on_fixed_cases() {
        let f = q();
        let map = running_example(&f);
        for k in 1..=3 {
            assert!(leading_coeff_identity_check(&map, k).unwrap(), "k = {k}");
        }
        let sq = skew_iterate(&map, 2).unwrap();
        assert_eq!(sq.coeffs().last().unwrap(), &rf(&f, &[0, 0, 0, 0, 1]));

        // d = 1, k = 1 reduces to a tautology.
        let linear = SkewMap::new(
            up(&f, &[1, 2]),
            vec![rf(&f, &[0, 3]), rf(&f, &[5])],
        )
        .unwrap();
        assert!(leading_coeff_identity_check(&linear, 1).unwrap());

        // A case with denominators in the coefficients.
        let rational_coeffs = SkewMap::new(
            up(&f, &[1, 1]),
            vec![
                rf(&f, &[2]),
                RatFunc::new(up(&f, &[1]), up(&f, &[0, 1])).unwrap(),
                rf(&f, &[0, 0, 3]),
            ],
        )
        .unwrap();
        for k in 1..=3 {
            assert!(
                leading_coeff_identity_check(&rational_coeffs, k).unwrap(),
                "k = {k}"
            );
        }
    }

    #[test]
    fn triangular_iterates_close_under_composition() {
        let f = q();
        let t = TriangularMap::new(fe(&f, 2), fe(&f, 3), up(&f, &[0, 0, 1])).unwrap();
        let t3 = t.iterate(3).unwrap();
        assert_eq!(t3.a(), &fe(&f, 8));
        assert_eq!(t3.c(), &fe(&f, 27));
        // Q_3(y) = a^2 q(y) + a q(c y) + q(c^2 y) = (4 + 2*9 + 81) y^2.
        assert_eq!(t3.q(), &up(&f, &[0, 0, 103]));
    }

    #[test]
    fn triangular_iterate_matches_skew_iterate() {
        let f = q();
        let t = TriangularMap::new(fe(&f, 2), fe(&f, -3), up(&f, &[1, 4, 0, 5])).unwrap();
        for k in 1..=4 {
            let direct = t.iterate(k).unwrap();
            let via_skew = skew_iterate(&t.as_skew(), k).unwrap();
            assert_eq!(via_skew.coeffs()[0], RatFunc::from_poly(direct.q().clone()));
            assert_eq!(
                via_skew.coeffs()[1],
                RatFunc::constant(direct.a().clone())
            );
            assert_eq!(via_skew.phi(), &UPoly::var(&f).scale(direct.c()).unwrap());
        }
    }

    #[test]
    fn cyclotomic_family_first_linear_iterates() {
        // (x + y^2, zeta y) over the 2n-th cyclotomic field becomes linear
        // first at iterate n.
        let cases: Vec<(usize, Vec<i64>)> = vec![
            (3, vec![1, -1, 1]),
            (4, vec![1, 0, 0, 0, 1]),
            (5, vec![1, -1, 1, -1, 1]),
            (6, vec![1, 0, -1, 0, 1]),
        ];
        for (n, minpoly) in cases {
            let f = NumberField::extension(minpoly.iter().map(|&c| rat(c)).collect()).unwrap();
            let zeta = FieldElement::generator(&f);
            let t = TriangularMap::new(
                FieldElement::one(&f),
                zeta,
                UPoly::new(
                    &f,
                    vec![
                        FieldElement::zero(&f),
                        FieldElement::zero(&f),
                        FieldElement::one(&f),
                    ],
                ),
            )
            .unwrap();
            assert_eq!(first_linear_iterate(&t, 24).unwrap(), Some(n), "n = {n}");
            for k in 1..n {
                let coeff = triangular_coefficient(&t, k).unwrap();
                assert!(!coeff.is_zero(), "n = {n}, k = {k}");
            }
            assert!(triangular_coefficient(&t, n).unwrap().is_zero());
        }
    }

    #[test]
    fn linear_q_is_immediately_linear() {
        let f = q();
        let t = TriangularMap::new(fe(&f, 2), fe(&f, 3), up(&f, &[7, 1])).unwrap();
        assert_eq!(first_linear_iterate(&t, 24).unwrap(), Some(1));
    }

    #[test]
    fn generic_triangular_maps_never_linearize() {
        let f = q();
        let t = TriangularMap::new(fe(&f, 2), fe(&f, 3), up(&f, &[0, 0, 1])).unwrap();
        assert_eq!(first_linear_iterate(&t, 24).unwrap(), None);
    }

    #[test]
    fn negative_resonance_linearizes_despite_a_ne_c_squared() {
        // a = -c^2 has a/c^2 = -1, a root of unity, so the y^2 coefficient
        // m (a^k - c^(2k)) / (a - c^2) dies at k = 2 even though a != c^2.
        let f = q();
        let t = TriangularMap::new(fe(&f, -9), fe(&f, 3), up(&f, &[0, 0, 1])).unwrap();
        assert_eq!(first_linear_iterate(&t, 24).unwrap(), Some(2));
    }

    #[test]
    fn coefficient_closed_form_and_fallback() {
        let f = q();
        let t = TriangularMap::new(fe(&f, 2), fe(&f, 3), up(&f, &[0, 0, 1])).unwrap();
        // k = 2: a + c^2 = 2 + 9.
        assert_eq!(triangular_coefficient(&t, 2).unwrap(), fe(&f, 11));
        assert_eq!(triangular_coefficient(&t, 1).unwrap(), fe(&f, 1));
        assert_eq!(
            triangular_coefficient_closed_form(&t, 2).unwrap(),
            fe(&f, 11)
        );

        let resonant = TriangularMap::new(
            FieldElement::one(&f),
            FieldElement::one(&f),
            up(&f, &[0, 0, 1]),
        )
        .unwrap();
        assert_eq!(
            triangular_coefficient_closed_form(&resonant, 3).unwrap_err(),
            Error::ClosedFormInvalid
        );
        assert_eq!(triangular_coefficient(&resonant, 3).unwrap(), fe(&f, 3));
    }

    #[test]
    fn coefficient_matches_direct_extraction() {
        let f = q();
        for (a, c, j, m) in [(2i64, 3i64, 2usize, 1i64), (5, 2, 3, -4), (-2, 2, 2, 3)] {
            let mut coeffs = vec![0; j + 1];
            coeffs[j] = m;
            let t = TriangularMap::new(fe(&f, a), fe(&f, c), up(&f, &coeffs)).unwrap();
            for k in 1..=5 {
                let closed = triangular_coefficient(&t, k).unwrap();
                let direct = t.iterate(k).unwrap().q().coeff(j);
                assert_eq!(closed, direct, "a={a} c={c} j={j} k={k}");
            }
        }
    }

    #[test]
    fn independence_of_small_rationals() {
        let dep = mult_indep_rationals(&[rat(4), rat(8)]).unwrap();
        assert!(!dep.independent);
        assert_eq!(
            dep.witness,
            Some(vec![BigInt::from(3), BigInt::from(-2)])
        );

        let indep = mult_indep_rationals(&[rat(2), rat(3)]).unwrap();
        assert!(indep.independent);
        assert_eq!(indep.witness, None);

        let indep = mult_indep_rationals(&[rat(6), rat(10), rat(15)]).unwrap();
        assert!(indep.independent);
    }

    #[test]
    fn sign_only_relations_are_detected() {
        let dep = mult_indep_rationals(&[rat(-1)]).unwrap();
        assert!(!dep.independent);
        assert_eq!(dep.witness, Some(vec![BigInt::from(2)]));

        let dep = mult_indep_rationals(&[rat(-1), rat(2)]).unwrap();
        assert!(!dep.independent);
        assert_eq!(
            dep.witness,
            Some(vec![BigInt::from(2), BigInt::from(0)])
        );

        // -2 and 2: (-2)^2 * 2^(-2) = 1 needs the doubled witness.
        let dep = mult_indep_rationals(&[rat(-2), rat(2)]).unwrap();
        assert!(!dep.independent);
        let w = dep.witness.unwrap();
        assert!(verify_multiplicative_relation(&[rat(-2), rat(2)], &w));
        assert!(w.iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn fractional_dependencies_are_found() {
        let rs = [rat_frac(3, 2), rat_frac(9, 4)];
        let dep = mult_indep_rationals(&rs).unwrap();
        assert!(!dep.independent);
        let w = dep.witness.unwrap();
        assert!(verify_multiplicative_relation(&rs, &w));

        let rs = [rat_frac(2, 3), rat_frac(3, 5)];
        assert!(mult_indep_rationals(&rs).unwrap().independent);
    }

    #[test]
    fn zero_inputs_are_rejected() {
        assert_eq!(
            mult_indep_rationals(&[rat(2), rat(0)]).unwrap_err(),
            Error::ZeroInput
        );
    }

    fn matrix(field: &FieldRef, rows: [[i64; 3]; 3]) -> [[FieldElement; 3]; 3] {
        rows.map(|row| row.map(|v| fe(field, v)))
    }

    #[test]
    fn classifier_matches_the_normal_forms() {
        let f = q();
        let class = classify_linear_auto(&matrix(&f, [[2, 0, 0], [0, 3, 0], [0, 0, 1]])).unwrap();
        assert_eq!(class.case, LinearAutoCase::CaseB);

        let class = classify_linear_auto(&matrix(&f, [[2, 0, 0], [0, 4, 0], [0, 0, 1]])).unwrap();
        assert_eq!(class.case, LinearAutoCase::Neither);

        let class = classify_linear_auto(&matrix(&f, [[2, 1, 0], [0, 2, 0], [0, 0, 1]])).unwrap();
        assert_eq!(class.case, LinearAutoCase::CaseA);
        let eigen = class.eigen_data.unwrap();
        assert_eq!(eigen[0].0, FieldElement::one(&f));
        assert_eq!(eigen[0].1, vec![1]);
        assert_eq!(eigen[1].0, fe(&f, 2));
        assert_eq!(eigen[1].1, vec![2]);
    }

    #[test]
    fn classifier_edge_cases() {
        let f = q();
        // Ratio -1 on the Jordan block: a root of unity, not case A.
        let class =
            classify_linear_auto(&matrix(&f, [[-1, 1, 0], [0, -1, 0], [0, 0, 1]])).unwrap();
        assert_eq!(class.case, LinearAutoCase::Neither);

        // Diagonalizable with a repeated eigenvalue.
        let class = classify_linear_auto(&matrix(&f, [[2, 0, 0], [0, 2, 0], [0, 0, 1]])).unwrap();
        assert_eq!(class.case, LinearAutoCase::Neither);

        // Identity: a single eigenvalue.
        let class = classify_linear_auto(&matrix(&f, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])).unwrap();
        assert_eq!(class.case, LinearAutoCase::Neither);
        assert_eq!(class.eigen_data.unwrap()[0].1, vec![1, 1, 1]);

        // Rotation block: irrational (complex) eigenvalues.
        let class = classify_linear_auto(&matrix(&f, [[0, -1, 0], [1, 0, 0], [0, 0, 1]])).unwrap();
        assert_eq!(class.case, LinearAutoCase::UnsupportedEigenvalues);
        assert!(class.eigen_data.is_none());

        let err = classify_linear_auto(&matrix(&f, [[1, 2, 0], [2, 4, 0], [0, 0, 1]])).unwrap_err();
        assert!(matches!(err, Error::NotInvertible(_)));
    }

    #[test]
    fn extension_eigenvalues_are_unsupported() {
        let f = NumberField::extension(vec![rat(-2), rat(0), rat(1)]).unwrap();
        let t = FieldElement::generator(&f);
        let one = FieldElement::one(&f);
        let zero = FieldElement::zero(&f);
        let m = [
            [t.clone(), zero.clone(), zero.clone()],
            [zero.clone(), t.mul(&t).unwrap(), zero.clone()],
            [zero.clone(), zero, one],
        ];
        let class = classify_linear_auto(&m).unwrap();
        assert_eq!(class.case, LinearAutoCase::UnsupportedEigenvalues);
    }
}
