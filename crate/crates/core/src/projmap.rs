//! Rational self-maps of the projective plane as normalized form triples.
//!
//! A map is a triple of homogeneous forms of a common degree with common
//! factor removed and a fixed canonical scaling, so equality of maps is
//! literal equality of representations.  On top of that the module provides
//! composition with cancellation, regularity / dominance / invertibility
//! decisions, the certified first-regular-iterate search, degree sequences
//! with a dynamical-degree report, and enumeration of rational
//! indeterminacy points and point fibers.

mod enumerate;

use std::fmt;

use num_bigint::BigInt;

use crate::error::Error;
use crate::linalg;
use crate::mpoly::{has_common_projective_zero, HomogeneousTriple, MPoly};
use crate::numfield::{FieldElement, FieldRef};
use crate::{DEFAULT_DEGREE_CAP, DEFAULT_ITERATE_CAP};

/// The only indices at which a dominant rational self-map of the plane can
/// first become a non-invertible endomorphism.
pub const REGULAR_INDEX_SET: [usize; 7] = [1, 2, 3, 4, 6, 8, 12];

/// A point of the projective plane, scaled so that the first nonzero
/// coordinate is 1.  Equality and ordering are literal on coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: [FieldElement; 3],
}

impl ProjPoint {
    pub fn new(coords: [FieldElement; 3]) -> Result<Self, Error> {
        let field = coords[0].field().clone();
        for c in &coords[1..] {
            if c.field() != &field {
                return Err(Error::FieldMismatch);
            }
        }
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .ok_or(Error::AllZero)?
            .clone();
        let inv = lead.inv()?;
        let mut scaled = coords;
        for c in &mut scaled {
            *c = c.mul(&inv)?;
        }
        Ok(Self { coords: scaled })
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(field: &FieldRef, a: i64, b: i64, c: i64) -> Result<Self, Error> {
        Self::new([
            FieldElement::from_int(field, a),
            FieldElement::from_int(field, b),
            FieldElement::from_int(field, c),
        ])
    }

    pub fn coords(&self) -> &[FieldElement; 3] {
        &self.coords
    }

    pub fn field(&self) -> &FieldRef {
        self.coords[0].field()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{} : {} : {}]",
            self.coords[0], self.coords[1], self.coords[2]
        )
    }
}

/// Soundness certificate attached to point enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Completeness {
    /// Every eliminant split into linear factors: the list is provably all
    /// of the solutions, over the algebraic closure as well.
    Complete,
    /// Some eliminant did not split (or a positive-dimensional part was
    /// met): the list is sound but possibly not exhaustive.
    Incomplete,
    /// The system has no solution at all.
    Empty,
}

/// Verdict of a total-invariance check over a finite point set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Invariance {
    Invariant,
    NotInvariant,
    /// A fiber enumeration was not certified complete, so containment of
    /// the full preimage could not be decided.
    Unknown,
}

/// Why a first-regular-iterate search stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    /// A non-invertible regular iterate was found and its index lies in
    /// [`REGULAR_INDEX_SET`].
    InPaperSet,
    /// The first regular iterate is invertible; the index set claim does
    /// not apply to it.
    Invertible,
    /// No regular iterate exists up to the requested cap.
    NotFoundWithinCap,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Certificate::InPaperSet => "InPaperSet",
            Certificate::Invertible => "Invertible",
            Certificate::NotFoundWithinCap => "NotFoundWithinCap",
        };
        f.write_str(s)
    }
}

/// Result of [`ProjSelfMap::first_regular_iterate`].
#[derive(Debug, Clone)]
pub struct IterationReport {
    /// Least k with a regular k-th iterate, when one was found within cap.
    pub first_regular: Option<usize>,
    /// The regular iterate itself.
    pub regular_iterate: Option<ProjSelfMap>,
    /// Whether that iterate is an invertible endomorphism.
    pub invertible_flag: bool,
    /// Dominance of the input map (checked up front).
    pub dominant_flag: bool,
    /// Degrees of the iterates, after cancellation, up to the stopping
    /// index.
    pub degree_sequence: Vec<u64>,
    pub certificate: Certificate,
}

/// Degree sequence plus a dynamical-degree estimate.  The estimate is kept
/// exact as the pair (deg of the n-th iterate, n); the decimal string is a
/// truncation of its n-th root to six places, derived from integer roots
/// only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeData {
    pub degrees: Vec<u64>,
    pub lambda1_base: u64,
    pub lambda1_exponent: u32,
    pub lambda1_decimal: String,
}

/// A dominant-or-not rational self-map of the plane in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjSelfMap {
    triple: HomogeneousTriple,
}

impl ProjSelfMap {
    /// Divide out the common factor of the forms and fix the canonical
    /// scaling.  Idempotent.
    pub fn normalize(raw: HomogeneousTriple) -> Result<Self, Error> {
        Ok(Self {
            triple: raw.normalized()?,
        })
    }

    pub fn from_forms(f0: MPoly, f1: MPoly, f2: MPoly) -> Result<Self, Error> {
        Self::normalize(HomogeneousTriple::new(f0, f1, f2)?)
    }

    /// The identity map [X : Y : Z].
    pub fn identity(field: &FieldRef) -> Self {
        let x = MPoly::variable(field, 3, 0).expect("3 variables");
        let y = MPoly::variable(field, 3, 1).expect("3 variables");
        let z = MPoly::variable(field, 3, 2).expect("3 variables");
        Self::from_forms(x, y, z).expect("identity triple is well formed")
    }

    pub fn triple(&self) -> &HomogeneousTriple {
        &self.triple
    }

    pub fn forms(&self) -> &[MPoly; 3] {
        self.triple.forms()
    }

    pub fn degree(&self) -> u64 {
        self.triple.degree()
    }

    pub fn field(&self) -> &FieldRef {
        self.triple.field()
    }

    pub fn compose(&self, inner: &Self) -> Result<Self, Error> {
        self.compose_capped(inner, DEFAULT_DEGREE_CAP)
    }

    /// Substitute `inner`'s forms into `self`'s forms, then normalize.
    /// The pre-cancellation degree (product of the two degrees) is checked
    /// against the cap before any polynomial work happens.
    pub fn compose_capped(&self, inner: &Self, degree_cap: u64) -> Result<Self, Error> {
        if self.field() != inner.field() {
            return Err(Error::FieldMismatch);
        }
        let raw_degree = self
            .degree()
            .checked_mul(inner.degree())
            .ok_or(Error::ExponentOverflow)?;
        if raw_degree > degree_cap {
            return Err(Error::DegreeCapExceeded {
                degree: raw_degree,
                cap: degree_cap,
            });
        }
        let subs = inner.forms();
        let composed = [
            self.forms()[0].compose(subs)?,
            self.forms()[1].compose(subs)?,
            self.forms()[2].compose(subs)?,
        ];
        let [g0, g1, g2] = composed;
        Self::from_forms(g0, g1, g2)
    }

    pub fn iterate(&self, n: usize) -> Result<Self, Error> {
        self.iterate_capped(n, DEFAULT_DEGREE_CAP)
    }

    /// n-th iterate by repeated composition; intermediates are kept within
    /// the call so the cost is n-1 compositions.
    pub fn iterate_capped(&self, n: usize, degree_cap: u64) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::ZeroInput);
        }
        let mut current = self.clone();
        for _ in 1..n {
            current = current.compose_capped(self, degree_cap)?;
        }
        Ok(current)
    }

    /// Regular means the forms have no common projective zero.
    pub fn is_regular(&self) -> Result<bool, Error> {
        Ok(!has_common_projective_zero(&self.triple)?)
    }

    /// Dominant means the Jacobian determinant of the forms is nonzero.
    pub fn is_dominant(&self) -> Result<bool, Error> {
        Ok(!self.triple.jacobian_det()?.is_zero())
    }

    /// Coefficient matrix of a degree-1 map, rows indexed by forms.
    pub fn linear_matrix(&self) -> Option<[[FieldElement; 3]; 3]> {
        if self.degree() != 1 {
            return None;
        }
        let field = self.field();
        let zero = FieldElement::zero(field);
        let mut m = [
            [zero.clone(), zero.clone(), zero.clone()],
            [zero.clone(), zero.clone(), zero.clone()],
            [zero.clone(), zero.clone(), zero],
        ];
        for (i, form) in self.forms().iter().enumerate() {
            for (exps, coeff) in form.terms() {
                let var = exps
                    .iter()
                    .position(|&e| e == 1)
                    .expect("degree-1 form has single-variable terms");
                m[i][var] = coeff.clone();
            }
        }
        Some(m)
    }

    /// True iff the map is a linear automorphism of the plane: degree 1,
    /// regular, and the coefficient matrix is invertible.
    pub fn is_invertible_endo(&self) -> Result<bool, Error> {
        if self.degree() != 1 {
            return Ok(false);
        }
        if !self.is_regular()? {
            return Ok(false);
        }
        let m = self.linear_matrix().expect("degree is 1");
        Ok(!linalg::det3(&m)?.is_zero())
    }

    /// Image of a point, or None when the point is an indeterminacy point.
    pub fn evaluate(&self, p: &ProjPoint) -> Result<Option<ProjPoint>, Error> {
        if self.field() != p.field() {
            return Err(Error::FieldMismatch);
        }
        let vals = [
            self.forms()[0].evaluate(p.coords())?,
            self.forms()[1].evaluate(p.coords())?,
            self.forms()[2].evaluate(p.coords())?,
        ];
        if vals.iter().all(FieldElement::is_zero) {
            return Ok(None);
        }
        Ok(Some(ProjPoint::new(vals)?))
    }

    /// Search for the least k <= cap with a regular k-th iterate.  The map
    /// must be dominant.  A non-invertible hit outside
    /// [`REGULAR_INDEX_SET`] is a counterexample to the classification and
    /// fails loudly instead of being reported.
    pub fn first_regular_iterate(
        &self,
        cap: usize,
        degree_cap: u64,
    ) -> Result<IterationReport, Error> {
        if cap == 0 {
            return Err(Error::ZeroInput);
        }
        if !self.is_dominant()? {
            return Err(Error::NotDominant);
        }
        let mut degrees = Vec::with_capacity(cap);
        let mut current = self.clone();
        for k in 1..=cap {
            if k > 1 {
                current = current.compose_capped(self, degree_cap)?;
            }
            degrees.push(current.degree());
            if current.is_regular()? {
                let invertible = current.is_invertible_endo()?;
                let certificate = certify_regular_index(k, invertible)?;
                return Ok(IterationReport {
                    first_regular: Some(k),
                    regular_iterate: Some(current),
                    invertible_flag: invertible,
                    dominant_flag: true,
                    degree_sequence: degrees,
                    certificate,
                });
            }
        }
        Ok(IterationReport {
            first_regular: None,
            regular_iterate: None,
            invertible_flag: false,
            dominant_flag: true,
            degree_sequence: degrees,
            certificate: Certificate::NotFoundWithinCap,
        })
    }

    /// Degrees of the first n iterates after cancellation, plus the
    /// n-th-root report for the last entry.
    pub fn degree_sequence(&self, n: usize, degree_cap: u64) -> Result<DegreeData, Error> {
        if n == 0 {
            return Err(Error::ZeroInput);
        }
        let mut degrees = Vec::with_capacity(n);
        let mut current = self.clone();
        for k in 1..=n {
            if k > 1 {
                current = current.compose_capped(self, degree_cap)?;
            }
            degrees.push(current.degree());
        }
        let base = *degrees.last().expect("n >= 1");
        let exponent = n as u32;
        Ok(DegreeData {
            degrees,
            lambda1_base: base,
            lambda1_exponent: exponent,
            lambda1_decimal: nth_root_decimal(base, exponent),
        })
    }

    /// All common zeros of the forms with coordinates in the coefficient
    /// field, with a completeness certificate.
    pub fn rational_indeterminacy_points(
        &self,
    ) -> Result<(Vec<ProjPoint>, Completeness), Error> {
        if !has_common_projective_zero(&self.triple)? {
            return Ok((Vec::new(), Completeness::Empty));
        }
        let (points, complete) = enumerate::rational_common_zeros(self.forms(), self.field())?;
        Ok((
            points,
            if complete {
                Completeness::Complete
            } else {
                Completeness::Incomplete
            },
        ))
    }

    /// Rational points of the fiber over p, for a regular map.  The fiber
    /// is cut out by the three 2x2 minors of the matrix with rows
    /// (F0,F1,F2) and (p0,p1,p2).
    pub fn point_fiber(&self, p: &ProjPoint) -> Result<(Vec<ProjPoint>, Completeness), Error> {
        if self.field() != p.field() {
            return Err(Error::FieldMismatch);
        }
        if !self.is_regular()? {
            return Err(Error::NotRegular);
        }
        let f = self.forms();
        let c = p.coords();
        let mut minors = Vec::with_capacity(3);
        for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let m = f[i].scale(&c[j])?.sub(&f[j].scale(&c[i])?)?;
            minors.push(m);
        }
        if minors.iter().all(MPoly::is_zero) {
            // All forms proportional to the target point: the fiber is the
            // whole plane and cannot be enumerated.
            return Ok((Vec::new(), Completeness::Incomplete));
        }
        let [m0, m1, m2] = <[MPoly; 3]>::try_from(minors).expect("three minors");
        let triple = HomogeneousTriple::new(m0, m1, m2)?;
        if !has_common_projective_zero(&triple)? {
            return Ok((Vec::new(), Completeness::Empty));
        }
        let (points, complete) = enumerate::rational_common_zeros(triple.forms(), self.field())?;
        Ok((
            points,
            if complete {
                Completeness::Complete
            } else {
                Completeness::Incomplete
            },
        ))
    }

    /// Check that the finite point set S satisfies: the image of S lies in
    /// S and every fiber over S lies in S.  Fibers that cannot be
    /// enumerated completely downgrade the verdict to Unknown; a witness
    /// outside S decides NotInvariant regardless.
    pub fn verify_totally_invariant(&self, s: &[ProjPoint]) -> Result<Invariance, Error> {
        if !self.is_regular()? {
            return Err(Error::NotRegular);
        }
        let mut any_incomplete = false;
        for p in s {
            match self.evaluate(p)? {
                Some(image) => {
                    if !s.contains(&image) {
                        return Ok(Invariance::NotInvariant);
                    }
                }
                None => unreachable!("regular maps have no indeterminacy points"),
            }
        }
        for p in s {
            let (fiber, completeness) = self.point_fiber(p)?;
            if fiber.iter().any(|q| !s.contains(q)) {
                return Ok(Invariance::NotInvariant);
            }
            if completeness == Completeness::Incomplete {
                any_incomplete = true;
            }
        }
        Ok(if any_incomplete {
            Invariance::Unknown
        } else {
            Invariance::Invariant
        })
    }

    /// First-regular search with the standard caps.
    pub fn first_regular_iterate_default(&self) -> Result<IterationReport, Error> {
        self.first_regular_iterate(DEFAULT_ITERATE_CAP, DEFAULT_DEGREE_CAP)
    }
}

impl fmt::Display for ProjSelfMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let forms = self.forms();
        write!(f, "[{} : {} : {}]", forms[0], forms[1], forms[2])
    }
}

/// Certificate for a first regular index: invertible iterates are exempt,
/// non-invertible ones must lie in [`REGULAR_INDEX_SET`].
pub fn certify_regular_index(index: usize, invertible: bool) -> Result<Certificate, Error> {
    if invertible {
        return Ok(Certificate::Invertible);
    }
    if REGULAR_INDEX_SET.contains(&index) {
        Ok(Certificate::InPaperSet)
    } else {
        Err(Error::UnexpectedRegularIndex { index })
    }
}

/// Decimal string for base^(1/exponent), truncated to six places, computed
/// with integer n-th roots only.
fn nth_root_decimal(base: u64, exponent: u32) -> String {
    const PLACES: u32 = 6;
    let scaled = BigInt::from(base) * BigInt::from(10u32).pow(PLACES * exponent);
    let root = scaled.nth_root(exponent);
    let ten_places = BigInt::from(10u32).pow(PLACES);
    let int_part = &root / &ten_places;
    let frac_part = &root % &ten_places;
    format!("{}.{:0>6}", int_part, frac_part.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::NumberField;
    use crate::parse::parse_poly;

    fn q() -> FieldRef {
        NumberField::rational()
    }

    fn form(field: &FieldRef, s: &str) -> MPoly {
        parse_poly(s, &["X", "Y", "Z"], field, false).expect("valid form")
    }

    fn map(field: &FieldRef, f0: &str, f1: &str, f2: &str) -> ProjSelfMap {
        ProjSelfMap::from_forms(form(field, f0), form(field, f1), form(field, f2))
            .expect("valid map")
    }

    fn ex21(field: &FieldRef) -> ProjSelfMap {
        map(field, "X^2*Y^2", "Z^4", "Y^2*Z^2")
    }

    fn ex22(field: &FieldRef) -> ProjSelfMap {
        map(field, "X*Z + Y*Z", "X^2 + Y*Z", "Z^2")
    }

    fn sigma(field: &FieldRef) -> ProjSelfMap {
        map(field, "Y*Z", "X*Z", "X*Y")
    }

    #[test]
    fn normalize_divides_common_factor() {
        let f = q();
        let raw = HomogeneousTriple::new(
            form(&f, "X^2*Y*Z"),
            form(&f, "X*Y^2*Z"),
            form(&f, "X*Y*Z^2"),
        )
        .unwrap();
        let m = ProjSelfMap::normalize(raw).unwrap();
        assert_eq!(m, ProjSelfMap::identity(&f));
        assert_eq!(m.degree(), 1);

        let raw = HomogeneousTriple::new(
            form(&f, "X^4*Y^4*Z^8"),
            form(&f, "Y^8*Z^8"),
            form(&f, "Y^4*Z^12"),
        )
        .unwrap();
        let m = ProjSelfMap::normalize(raw).unwrap();
        assert_eq!(m, map(&f, "X^4", "Y^4", "Z^4"));
    }

    #[test]
    fn normalize_is_idempotent() {
        let f = q();
        let m = ex22(&f);
        let again = ProjSelfMap::normalize(m.triple().clone()).unwrap();
        assert_eq!(m, again);
    }

    #[test]
    fn cremona_squares_to_identity() {
        let f = q();
        let s = sigma(&f);
        assert_eq!(s.compose(&s).unwrap(), ProjSelfMap::identity(&f));
        assert_eq!(s.iterate(2).unwrap(), ProjSelfMap::identity(&f));
    }

    #[test]
    fn squaring_cancels_for_torus_map() {
        let f = q();
        let phi = ex21(&f);
        let phi2 = phi.compose(&phi).unwrap();
        assert_eq!(phi2, map(&f, "X^4", "Y^4", "Z^4"));
        let phi3 = phi.iterate(3).unwrap();
        assert_eq!(phi3, map(&f, "X^8*Y^8", "Z^16", "Y^8*Z^8"));
    }

    #[test]
    fn dense_quadratic_square() {
        let f = q();
        let phi = ex22(&f);
        let phi2 = phi.iterate(2).unwrap();
        let expected = map(
            &f,
            "X^2 + X*Z + 2*Y*Z",
            "2*X^2 + 2*X*Y + Y^2 + Y*Z",
            "Z^2",
        );
        assert_eq!(phi2, expected);
    }

    #[test]
    fn semigroup_law_on_iterates() {
        let f = q();
        for m in [ex21(&f), ex22(&f), sigma(&f)] {
            let lhs = m.iterate_capped(4, 1 << 20).unwrap();
            let rhs = m
                .iterate_capped(3, 1 << 20)
                .unwrap()
                .compose_capped(&m.iterate_capped(1, 1 << 20).unwrap(), 1 << 20)
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn regularity_decisions() {
        let f = q();
        assert!(map(&f, "X^4", "Y^4", "Z^4").is_regular().unwrap());
        assert!(!sigma(&f).is_regular().unwrap());
        assert!(!ex22(&f).is_regular().unwrap());
        assert!(!ex21(&f).is_regular().unwrap());
    }

    #[test]
    fn dominance_decisions() {
        let f = q();
        assert!(map(&f, "X^2", "Y^2", "Z^2").is_dominant().unwrap());
        assert!(!map(&f, "X^2", "X*Y", "Y^2").is_dominant().unwrap());
        assert!(ProjSelfMap::identity(&f).is_dominant().unwrap());
    }

    #[test]
    fn invertibility_decisions() {
        let f = q();
        assert!(ProjSelfMap::identity(&f).is_invertible_endo().unwrap());
        assert!(!map(&f, "X^4", "Y^4", "Z^4").is_invertible_endo().unwrap());
        assert!(map(&f, "X + Y", "Y", "Z").is_invertible_endo().unwrap());
    }

    #[test]
    fn first_regular_for_paper_maps() {
        let f = q();
        let report = ex21(&f).first_regular_iterate(12, 1 << 20).unwrap();
        assert_eq!(report.first_regular, Some(2));
        assert_eq!(
            report.regular_iterate.as_ref().unwrap(),
            &map(&f, "X^4", "Y^4", "Z^4")
        );
        assert!(!report.invertible_flag);
        assert!(report.dominant_flag);
        assert_eq!(report.degree_sequence, vec![4, 4]);
        assert_eq!(report.certificate, Certificate::InPaperSet);

        let report = ex22(&f).first_regular_iterate(12, 1 << 20).unwrap();
        assert_eq!(report.first_regular, Some(2));
        assert!(!report.invertible_flag);
        assert_eq!(report.certificate, Certificate::InPaperSet);

        let report = sigma(&f).first_regular_iterate(12, 1 << 20).unwrap();
        assert_eq!(report.first_regular, Some(2));
        assert!(report.invertible_flag);
        assert_eq!(report.certificate, Certificate::Invertible);
    }

    #[test]
    fn first_regular_rejects_non_dominant_input() {
        let f = q();
        let err = map(&f, "X^2", "X*Y", "Y^2")
            .first_regular_iterate(12, 1 << 20)
            .unwrap_err();
        assert_eq!(err, Error::NotDominant);
    }

    #[test]
    fn degree_cap_is_a_hard_error() {
        let f = q();
        let phi = ex22(&f);
        let err = phi.compose_capped(&phi, 3).unwrap_err();
        assert_eq!(err, Error::DegreeCapExceeded { degree: 4, cap: 3 });
    }

    #[test]
    fn degree_sequences_and_lambda1() {
        let f = q();
        let data = ex21(&f).degree_sequence(4, 1 << 20).unwrap();
        assert_eq!(data.degrees, vec![4, 4, 16, 16]);
        assert_eq!(data.lambda1_base, 16);
        assert_eq!(data.lambda1_exponent, 4);
        assert_eq!(data.lambda1_decimal, "2.000000");

        let data = ProjSelfMap::identity(&f).degree_sequence(3, 64).unwrap();
        assert_eq!(data.degrees, vec![1, 1, 1]);
        assert_eq!(data.lambda1_decimal, "1.000000");

        let data = map(&f, "X^2", "Y^2", "Z^2").degree_sequence(3, 64).unwrap();
        assert_eq!(data.degrees, vec![2, 4, 8]);
        assert_eq!(data.lambda1_decimal, "2.000000");
    }

    #[test]
    fn truncated_roots_are_exact_on_non_powers() {
        // 2^(1/2) = 1.414213..., truncated not rounded.
        assert_eq!(nth_root_decimal(2, 2), "1.414213");
        assert_eq!(nth_root_decimal(12, 2), "3.464101");
        assert_eq!(nth_root_decimal(1, 7), "1.000000");
    }

    #[test]
    fn indeterminacy_points_of_paper_maps() {
        let f = q();
        let (pts, cert) = ex21(&f).rational_indeterminacy_points().unwrap();
        assert_eq!(cert, Completeness::Complete);
        assert_eq!(
            pts,
            vec![
                ProjPoint::from_ints(&f, 0, 1, 0).unwrap(),
                ProjPoint::from_ints(&f, 1, 0, 0).unwrap(),
            ]
        );

        let (pts, cert) = ex22(&f).rational_indeterminacy_points().unwrap();
        assert_eq!(cert, Completeness::Complete);
        assert_eq!(pts, vec![ProjPoint::from_ints(&f, 0, 1, 0).unwrap()]);

        let (pts, cert) = ProjSelfMap::identity(&f)
            .rational_indeterminacy_points()
            .unwrap();
        assert_eq!(cert, Completeness::Empty);
        assert!(pts.is_empty());
    }

    #[test]
    fn cremona_indeterminacy_is_the_coordinate_triangle() {
        let f = q();
        let (pts, cert) = sigma(&f).rational_indeterminacy_points().unwrap();
        assert_eq!(cert, Completeness::Complete);
        assert_eq!(
            pts,
            vec![
                ProjPoint::from_ints(&f, 0, 0, 1).unwrap(),
                ProjPoint::from_ints(&f, 0, 1, 0).unwrap(),
                ProjPoint::from_ints(&f, 1, 0, 0).unwrap(),
            ]
        );
    }

    #[test]
    fn fibers_of_powers_map() {
        let f = q();
        let quartic = map(&f, "X^4", "Y^4", "Z^4");
        let p = ProjPoint::from_ints(&f, 1, 0, 0).unwrap();
        let (pts, cert) = quartic.point_fiber(&p).unwrap();
        assert_eq!(cert, Completeness::Complete);
        assert_eq!(pts, vec![p]);

        let squares = map(&f, "X^2", "Y^2", "Z^2");
        let p = ProjPoint::from_ints(&f, 1, 1, 1).unwrap();
        let (pts, cert) = squares.point_fiber(&p).unwrap();
        assert_eq!(cert, Completeness::Complete);
        let expect: Vec<ProjPoint> = [(1, 1, 1), (1, 1, -1), (1, -1, 1), (1, -1, -1)]
            .iter()
            .map(|&(a, b, c)| ProjPoint::from_ints(&f, a, b, c).unwrap())
            .collect();
        let mut expect = expect;
        expect.sort();
        assert_eq!(pts, expect);
    }

    #[test]
    fn fiber_of_identity_is_the_point() {
        let f = q();
        let id = ProjSelfMap::identity(&f);
        let p = ProjPoint::from_ints(&f, 1, 2, 3).unwrap();
        let (pts, cert) = id.point_fiber(&p).unwrap();
        assert_eq!(cert, Completeness::Complete);
        assert_eq!(pts, vec![p]);
    }

    #[test]
    fn fiber_requires_regularity() {
        let f = q();
        let p = ProjPoint::from_ints(&f, 1, 0, 0).unwrap();
        let err = sigma(&f).point_fiber(&p).unwrap_err();
        assert_eq!(err, Error::NotRegular);
    }

    #[test]
    fn total_invariance_verdicts() {
        let f = q();
        let quartic = map(&f, "X^4", "Y^4", "Z^4");
        let s = vec![
            ProjPoint::from_ints(&f, 1, 0, 0).unwrap(),
            ProjPoint::from_ints(&f, 0, 1, 0).unwrap(),
        ];
        assert_eq!(
            quartic.verify_totally_invariant(&s).unwrap(),
            Invariance::Invariant
        );

        let squares = map(&f, "X^2", "Y^2", "Z^2");
        let s = vec![ProjPoint::from_ints(&f, 1, 1, 1).unwrap()];
        assert_eq!(
            squares.verify_totally_invariant(&s).unwrap(),
            Invariance::NotInvariant
        );

        let s = vec![ProjPoint::from_ints(&f, 0, 0, 1).unwrap()];
        assert_eq!(
            squares.verify_totally_invariant(&s).unwrap(),
            Invariance::Invariant
        );
    }

    #[test]
    fn evaluation_detects_indeterminacy() {
        let f = q();
        let phi = ex21(&f);
        let generic = ProjPoint::from_ints(&f, 1, 1, 1).unwrap();
        assert_eq!(
            phi.evaluate(&generic).unwrap(),
            Some(ProjPoint::from_ints(&f, 1, 1, 1).unwrap())
        );
        let indet = ProjPoint::from_ints(&f, 1, 0, 0).unwrap();
        assert_eq!(phi.evaluate(&indet).unwrap(), None);
    }

    #[test]
    fn index_certificate_guards_the_paper_set() {
        assert_eq!(
            certify_regular_index(12, false).unwrap(),
            Certificate::InPaperSet
        );
        assert_eq!(
            certify_regular_index(5, true).unwrap(),
            Certificate::Invertible
        );
        assert_eq!(
            certify_regular_index(5, false).unwrap_err(),
            Error::UnexpectedRegularIndex { index: 5 }
        );
    }

    #[test]
    fn projective_points_normalize_and_order() {
        let f = q();
        let p = ProjPoint::new([
            FieldElement::from_int(&f, -2),
            FieldElement::from_int(&f, 4),
            FieldElement::from_int(&f, 6),
        ])
        .unwrap();
        assert_eq!(p, ProjPoint::from_ints(&f, 1, -2, -3).unwrap());
        assert_eq!(p.to_string(), "[1 : -2 : -3]");
        let err = ProjPoint::from_ints(&f, 0, 0, 0).unwrap_err();
        assert_eq!(err, Error::AllZero);
    }
}
