//! Monomial self-maps of the two-torus with translation parts.
//!
//! A map acts as x -> lambda_1 x^a y^b, y -> lambda_2 x^c y^d for an
//! integer matrix [[a,b],[c,d]] with nonzero determinant.  The module
//! composes such maps exactly, finds smallest diagonal and scalar powers
//! of the matrix (with the classification certificates asserted), decides
//! extension to the standard toric surfaces through fan compatibility, and
//! homogenizes a map into a projective form triple.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::mpoly::{homogenize_affine_pair, AffineRatio, MPoly};
use crate::numfield::{FieldElement, FieldRef};
use crate::projmap::ProjSelfMap;

/// Powers at which a non-diagonal integer matrix can first become
/// diagonal, given that some power is diagonal.
pub const DIAGONAL_POWER_SET: [usize; 5] = [1, 2, 3, 4, 6];

/// Powers at which a non-scalar integer matrix can first become a positive
/// scalar, given that some power is.
pub const SCALAR_POWER_SET: [usize; 7] = [1, 2, 3, 4, 6, 8, 12];

/// A 2x2 integer matrix with nonzero determinant, rows acting on the
/// exponents of (x, y).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix2 {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl IntMatrix2 {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self, Error> {
        let m = Self {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        };
        if m.det().is_zero() {
            return Err(Error::ZeroDeterminant);
        }
        Ok(m)
    }

    pub fn from_rows(rows: [[i64; 2]; 2]) -> Result<Self, Error> {
        Self::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }

    pub fn identity() -> Self {
        Self {
            a: BigInt::from(1),
            b: BigInt::zero(),
            c: BigInt::zero(),
            d: BigInt::from(1),
        }
    }

    pub fn entries(&self) -> [[&BigInt; 2]; 2] {
        [[&self.a, &self.b], [&self.c, &self.d]]
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            a: &self.a * &other.a + &self.b * &other.c,
            b: &self.a * &other.b + &self.b * &other.d,
            c: &self.c * &other.a + &self.d * &other.c,
            d: &self.c * &other.b + &self.d * &other.d,
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::identity();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        self.b.is_zero() && self.c.is_zero()
    }

    pub fn is_scalar(&self) -> bool {
        self.is_diagonal() && self.a == self.d
    }

    /// Matrix-vector product, rows of the matrix against the column v.
    pub fn apply(&self, v: (&BigInt, &BigInt)) -> (BigInt, BigInt) {
        (
            &self.a * v.0 + &self.b * v.1,
            &self.c * v.0 + &self.d * v.1,
        )
    }
}

impl fmt::Display for IntMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// A torus endomorphism x -> lambda_1 x^a y^b, y -> lambda_2 x^c y^d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialMap {
    matrix: IntMatrix2,
    lambda: [FieldElement; 2],
}

impl MonomialMap {
    pub fn new(matrix: IntMatrix2, lambda: [FieldElement; 2]) -> Result<Self, Error> {
        if lambda[0].field() != lambda[1].field() {
            return Err(Error::FieldMismatch);
        }
        if lambda.iter().any(FieldElement::is_zero) {
            return Err(Error::ZeroInput);
        }
        Ok(Self { matrix, lambda })
    }

    pub fn identity(field: &FieldRef) -> Self {
        Self {
            matrix: IntMatrix2::identity(),
            lambda: [FieldElement::one(field), FieldElement::one(field)],
        }
    }

    pub fn matrix(&self) -> &IntMatrix2 {
        &self.matrix
    }

    pub fn lambda(&self) -> &[FieldElement; 2] {
        &self.lambda
    }

    pub fn field(&self) -> &FieldRef {
        self.lambda[0].field()
    }
}

/// Composition M after N of torus endomorphisms: the matrix parts multiply
/// and N's translation is pushed through M's monomial action.
pub fn mm_compose(m: &MonomialMap, n: &MonomialMap) -> Result<MonomialMap, Error> {
    if m.field() != n.field() {
        return Err(Error::FieldMismatch);
    }
    let rows = [
        [&m.matrix.a, &m.matrix.b],
        [&m.matrix.c, &m.matrix.d],
    ];
    let mut lambda = Vec::with_capacity(2);
    for (i, row) in rows.iter().enumerate() {
        let mut v = m.lambda[i].clone();
        for (j, e) in row.iter().enumerate() {
            v = v.mul(&n.lambda[j].pow_bigint(e)?)?;
        }
        lambda.push(v);
    }
    let lambda = <[FieldElement; 2]>::try_from(lambda).expect("two entries");
    MonomialMap::new(m.matrix.mul(&n.matrix), lambda)
}

/// Order of the eigenvalue ratio of A when it is a root of unity, decided
/// purely in integers: the ratio is a k-th root of unity exactly when
/// tr(A)^2 = c det(A) with c in {0,1,2,3,4}, giving k = 2, 3, 4, 6, 1.
/// The boundary case c = 4 (equal eigenvalues) counts only for scalar
/// matrices; a Jordan block has ratio 1 formally but never diagonalizes.
pub fn ratio_root_of_unity_class(a: &IntMatrix2) -> Option<usize> {
    let tr2 = a.trace() * a.trace();
    let det = a.det();
    for (c, k) in [(0u8, 2usize), (1, 3), (2, 4), (3, 6), (4, 1)] {
        if tr2 == BigInt::from(c) * &det {
            if c == 4 && !a.is_scalar() {
                return None;
            }
            return Some(k);
        }
    }
    None
}

/// Least k <= cap with A^k diagonal, by exact powering.  When A is not
/// itself diagonal, a found k is certified to lie in
/// [`DIAGONAL_POWER_SET`]; anything else would contradict the
/// classification of diagonalizing powers and aborts.
pub fn smallest_diagonal_power(a: &IntMatrix2, cap: usize) -> Option<usize> {
    let mut power = IntMatrix2::identity();
    for k in 1..=cap {
        power = power.mul(a);
        if power.is_diagonal() {
            assert!(
                a.is_diagonal() || DIAGONAL_POWER_SET.contains(&k),
                "first diagonal power {k} of non-diagonal {a} falls outside {DIAGONAL_POWER_SET:?}"
            );
            return Some(k);
        }
    }
    None
}

/// Least k <= cap with A^k = d Id for a positive integer d, by exact
/// powering.  For non-scalar A a found k is certified to lie in
/// [`SCALAR_POWER_SET`].
pub fn smallest_scalar_positive_power(a: &IntMatrix2, cap: usize) -> Option<(usize, BigInt)> {
    let mut power = IntMatrix2::identity();
    for k in 1..=cap {
        power = power.mul(a);
        if power.is_scalar() && power.a.is_positive() {
            assert!(
                a.is_scalar() || SCALAR_POWER_SET.contains(&k),
                "first positive scalar power {k} of non-scalar {a} falls outside {SCALAR_POWER_SET:?}"
            );
            return Some((k, power.a));
        }
    }
    None
}

/// A complete rational fan in the plane: primitive ray generators plus the
/// two-dimensional cones as index pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    rays: Vec<(BigInt, BigInt)>,
    cones: Vec<(usize, usize)>,
}

impl Fan {
    pub fn new(rays: Vec<(BigInt, BigInt)>, cones: Vec<(usize, usize)>) -> Result<Self, Error> {
        for r in &rays {
            if r.0.is_zero() && r.1.is_zero() {
                return Err(Error::ZeroInput);
            }
            if r.0.gcd(&r.1) != BigInt::from(1) {
                return Err(Error::ZeroInput);
            }
        }
        for &(i, j) in &cones {
            if i >= rays.len() || j >= rays.len() || i == j {
                return Err(Error::VarOutOfRange {
                    var: i.max(j),
                    nvars: rays.len(),
                });
            }
        }
        Ok(Self { rays, cones })
    }

    fn from_i64(rays: &[(i64, i64)], cones: &[(usize, usize)]) -> Self {
        Self::new(
            rays.iter()
                .map(|&(x, y)| (BigInt::from(x), BigInt::from(y)))
                .collect(),
            cones.to_vec(),
        )
        .expect("built-in fan data is valid")
    }

    /// Fan of the projective plane.
    pub fn p2() -> Self {
        Self::from_i64(
            &[(1, 0), (0, 1), (-1, -1)],
            &[(0, 1), (1, 2), (2, 0)],
        )
    }

    /// Fan of the product of two projective lines.
    pub fn p1xp1() -> Self {
        Self::from_i64(
            &[(1, 0), (0, 1), (-1, 0), (0, -1)],
            &[(0, 1), (1, 2), (2, 3), (3, 0)],
        )
    }

    /// Fan of the n-th Hirzebruch surface.
    pub fn hirzebruch(n: u32) -> Self {
        Self::from_i64(
            &[(1, 0), (0, 1), (-1, n as i64), (0, -1)],
            &[(0, 1), (1, 2), (2, 3), (3, 0)],
        )
    }

    pub fn rays(&self) -> &[(BigInt, BigInt)] {
        &self.rays
    }

    pub fn cones(&self) -> &[(usize, usize)] {
        &self.cones
    }

    /// Complete means the cones are exactly the consecutive pairs of rays
    /// in circular order, each strictly convex, so their union covers the
    /// plane.
    pub fn is_complete(&self) -> bool {
        let n = self.rays.len();
        if n < 3 || self.cones.len() != n {
            return false;
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| circular_cmp(&self.rays[i], &self.rays[j]));
        // Every consecutive gap (including the wrap) strictly inside
        // (0, pi): the gaps sum to a full turn, so the consecutive cones
        // are strictly convex and sweep the plane exactly once.  This also
        // rules out repeated ray directions.
        let convex = (0..n).all(|w| {
            let i = order[w];
            let j = order[(w + 1) % n];
            cross(&self.rays[i], &self.rays[j]).is_positive()
        });
        if !convex {
            return false;
        }
        let mut expected: Vec<(usize, usize)> = (0..n)
            .map(|w| sorted_pair(order[w], order[(w + 1) % n]))
            .collect();
        expected.sort_unstable();
        let mut got: Vec<(usize, usize)> = self
            .cones
            .iter()
            .map(|&(i, j)| sorted_pair(i, j))
            .collect();
        got.sort_unstable();
        expected == got
    }
}

fn sorted_pair(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

fn cross(u: &(BigInt, BigInt), v: &(BigInt, BigInt)) -> BigInt {
    &u.0 * &v.1 - &u.1 * &v.0
}

/// Exact counterclockwise comparison of nonzero lattice directions
/// starting from the positive x-axis: first by half-plane, then by cross
/// product within a half-plane.
fn circular_cmp(u: &(BigInt, BigInt), v: &(BigInt, BigInt)) -> std::cmp::Ordering {
    fn half(w: &(BigInt, BigInt)) -> u8 {
        // 0 for angles in [0, pi), 1 for [pi, 2pi).
        if w.1.is_positive() || (w.1.is_zero() && w.0.is_positive()) {
            0
        } else {
            1
        }
    }
    half(u)
        .cmp(&half(v))
        .then_with(|| cross(v, u).cmp(&BigInt::zero()))
}

/// Whether s lies in the cone spanned by rays t1, t2 (counterclockwise).
fn in_cone(s: &(BigInt, BigInt), t1: &(BigInt, BigInt), t2: &(BigInt, BigInt)) -> bool {
    !cross(t1, s).is_negative() && !cross(s, t2).is_negative()
}

/// Extension criterion: the monomial map with matrix A extends to the
/// toric surface of the fan exactly when every cone maps into some cone.
/// Translation parts are torus elements and never obstruct extension.
pub fn fan_compatible(a: &IntMatrix2, fan: &Fan) -> Result<bool, Error> {
    if !fan.is_complete() {
        return Err(Error::IncompleteFan);
    }
    for &(i, j) in &fan.cones {
        let si = a.apply((&fan.rays[i].0, &fan.rays[i].1));
        let sj = a.apply((&fan.rays[j].0, &fan.rays[j].1));
        let landed = fan.cones.iter().any(|&(k, l)| {
            let (t1, t2) = orient(&fan.rays[k], &fan.rays[l]);
            in_cone(&si, t1, t2) && in_cone(&sj, t1, t2)
        });
        if !landed {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Order a cone's spanning rays counterclockwise.
fn orient<'a>(
    r1: &'a (BigInt, BigInt),
    r2: &'a (BigInt, BigInt),
) -> (&'a (BigInt, BigInt), &'a (BigInt, BigInt)) {
    if cross(r1, r2).is_positive() {
        (r1, r2)
    } else {
        (r2, r1)
    }
}

/// Least k <= cap such that the k-th matrix power is fan compatible.
pub fn first_extendable_power(
    m: &MonomialMap,
    fan: &Fan,
    cap: usize,
) -> Result<Option<usize>, Error> {
    if !fan.is_complete() {
        return Err(Error::IncompleteFan);
    }
    let mut power = IntMatrix2::identity();
    for k in 1..=cap {
        power = power.mul(m.matrix());
        if fan_compatible(&power, fan)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Homogenize the affine Laurent pair of the map into a projective form
/// triple over the plane.
pub fn to_proj_map(m: &MonomialMap) -> Result<ProjSelfMap, Error> {
    let field = m.field();
    let rows = [
        [&m.matrix().a, &m.matrix().b],
        [&m.matrix().c, &m.matrix().d],
    ];
    let mut ratios = Vec::with_capacity(2);
    for (i, row) in rows.iter().enumerate() {
        let mut num_exps = [0u64; 2];
        let mut den_exps = [0u64; 2];
        for (j, e) in row.iter().enumerate() {
            let mag = e.magnitude().to_u64().ok_or(Error::ExponentOverflow)?;
            if e.is_negative() {
                den_exps[j] = mag;
            } else {
                num_exps[j] = mag;
            }
        }
        let num = MPoly::one(field, 2).mul_term(&m.lambda()[i], &num_exps)?;
        let den = MPoly::one(field, 2).mul_term(&FieldElement::one(field), &den_exps)?;
        ratios.push(AffineRatio::new(num, den)?);
    }
    let triple = homogenize_affine_pair(&ratios[0], &ratios[1])?;
    ProjSelfMap::normalize(triple)
}
