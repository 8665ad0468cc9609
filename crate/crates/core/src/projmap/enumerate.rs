//! Chart-by-chart enumeration of the rational common zeros of a triple of
//! homogeneous forms in three variables.
//!
//! The plane splits into the affine chart Z = 1, the punctured line Z = 0,
//! Y = 1, and the single point [1:0:0].  In the affine chart the solutions
//! are boxed by two eliminants: the gcd of all pairwise resultants with
//! respect to one variable bounds the other.  A chart is certified only
//! when its eliminants exist, are nonzero, and split into linear factors
//! over the coefficient field; everything reported is checked against the
//! full system, so the point list is sound even when certification fails.

use std::collections::BTreeSet;

use super::ProjPoint;
use crate::error::Error;
use crate::mpoly::{gcd_many, resultant, MPoly};
use crate::numfield::{FieldElement, FieldRef};
use crate::upoly::{field_roots, UPoly};

/// Returns the rational common zeros and whether the list is provably
/// exhaustive (over the algebraic closure, not just the field).
pub(crate) fn rational_common_zeros(
    forms: &[MPoly; 3],
    field: &FieldRef,
) -> Result<(Vec<ProjPoint>, bool), Error> {
    let active: Vec<&MPoly> = forms.iter().filter(|f| !f.is_zero()).collect();
    if active.is_empty() {
        return Ok((Vec::new(), false));
    }

    if let Some(result) = monomial_vertex_zeros(&active, field)? {
        return Ok(result);
    }

    let mut points = BTreeSet::new();
    let mut complete = true;

    let (pts, ok) = affine_chart_zeros(&active, field)?;
    points.extend(pts);
    complete &= ok;

    let (pts, ok) = infinity_line_zeros(&active, field)?;
    points.extend(pts);
    complete &= ok;

    let one = FieldElement::one(field);
    let zero = FieldElement::zero(field);
    let corner = [one, zero.clone(), zero];
    if vanishes_at(&active, &corner)? {
        points.insert(ProjPoint::from_ints(field, 1, 0, 0)?);
    }

    Ok((points.into_iter().collect(), complete))
}

/// Fast exact path for systems of monomials with no common monomial
/// factor: at a zero with two nonzero coordinates every form would have to
/// contain the remaining variable, contradicting trivial content, so all
/// zeros sit at coordinate vertices.
fn monomial_vertex_zeros(
    active: &[&MPoly],
    field: &FieldRef,
) -> Result<Option<(Vec<ProjPoint>, bool)>, Error> {
    let mut exps = Vec::with_capacity(active.len());
    for f in active {
        match f.single_term() {
            Some((e, _)) => exps.push(e),
            None => return Ok(None),
        }
    }
    for var in 0..3 {
        if exps.iter().all(|e| e[var] > 0) {
            return Ok(None);
        }
    }
    let mut points = Vec::new();
    for vertex in [(1i64, 0i64, 0i64), (0, 1, 0), (0, 0, 1)] {
        let nonzero_var = [vertex.0, vertex.1, vertex.2]
            .iter()
            .position(|&v| v == 1)
            .expect("vertex has a unit coordinate");
        if exps.iter().all(|e| {
            (0..3).any(|var| var != nonzero_var && e[var] > 0)
        }) {
            points.push(ProjPoint::from_ints(field, vertex.0, vertex.1, vertex.2)?);
        }
    }
    points.sort();
    Ok(Some((points, true)))
}

/// Solutions with Z != 0, reported in the normalization Z = 1.
fn affine_chart_zeros(
    active: &[&MPoly],
    field: &FieldRef,
) -> Result<(Vec<ProjPoint>, bool), Error> {
    let one = FieldElement::one(field);
    let mut sub = Vec::with_capacity(active.len());
    for f in active {
        let g = f.collapse_var(2, &one)?;
        if g.is_constant() {
            // Dehomogenization of a nonzero form is nonzero, so a constant
            // here excludes the whole chart.
            return Ok((Vec::new(), true));
        }
        sub.push(g);
    }

    let mut pure_x = Vec::new();
    let mut pure_y = Vec::new();
    let mut dep_x = Vec::new();
    let mut dep_y = Vec::new();
    for g in &sub {
        if g.deg_in(1) == 0 {
            pure_x.push(g.clone());
        } else {
            dep_y.push(g.clone());
        }
        if g.deg_in(0) == 0 {
            pure_y.push(g.clone());
        } else {
            dep_x.push(g.clone());
        }
    }

    let ex = match eliminant(&pure_x, &dep_y, 1)? {
        Some(e) => e,
        None => return Ok((Vec::new(), false)),
    };
    let ey = match eliminant(&pure_y, &dep_x, 0)? {
        Some(e) => e,
        None => return Ok((Vec::new(), false)),
    };
    if ex.is_constant() || ey.is_constant() {
        return Ok((Vec::new(), true));
    }

    let (xs, x_split) = single_var_roots(&ex, 0)?;
    let (ys, y_split) = single_var_roots(&ey, 1)?;
    let sub_refs: Vec<&MPoly> = sub.iter().collect();
    let mut points = Vec::new();
    for x0 in &xs {
        for y0 in &ys {
            let vals = [x0.clone(), y0.clone(), one.clone()];
            if vanishes_at(&sub_refs, &vals)? {
                points.push(ProjPoint::new(vals)?);
            }
        }
    }
    Ok((points, x_split && y_split))
}

/// Solutions on the line Z = 0 away from [1:0:0], normalized as [x:1:0].
fn infinity_line_zeros(
    active: &[&MPoly],
    field: &FieldRef,
) -> Result<(Vec<ProjPoint>, bool), Error> {
    let zero = FieldElement::zero(field);
    let one = FieldElement::one(field);
    let mut restricted = Vec::new();
    for f in active {
        let g = f.collapse_var(2, &zero)?.collapse_var(1, &one)?;
        if g.is_zero() {
            continue;
        }
        if g.is_constant() {
            return Ok((Vec::new(), true));
        }
        restricted.push(UPoly::from_mpoly_var(&g, 0)?);
    }
    if restricted.is_empty() {
        // Every form is divisible by Z: the whole line consists of zeros.
        return Ok((Vec::new(), false));
    }
    let mut g = restricted[0].clone();
    for p in &restricted[1..] {
        g = g.gcd(p)?;
    }
    if g.degree() == Some(0) {
        return Ok((Vec::new(), true));
    }
    let (roots, split) = field_roots(&g)?;
    let mut points = Vec::new();
    for (r, _) in roots {
        points.push(ProjPoint::new([r, one.clone(), zero.clone()])?);
    }
    Ok((points, split))
}

/// Gcd of the available eliminant candidates for one variable: the members
/// already univariate in it, plus the pairwise resultants of everything
/// depending on the other variable.  None means the variable is not
/// constrained by any candidate.
fn eliminant(
    direct: &[MPoly],
    pair_src: &[MPoly],
    eliminated_var: usize,
) -> Result<Option<MPoly>, Error> {
    let mut candidates: Vec<MPoly> = direct.to_vec();
    for i in 0..pair_src.len() {
        for j in (i + 1)..pair_src.len() {
            candidates.push(resultant(&pair_src[i], &pair_src[j], eliminated_var)?);
        }
    }
    candidates.retain(|c| !c.is_zero());
    if candidates.is_empty() {
        return Ok(None);
    }
    Ok(Some(gcd_many(&candidates)?))
}

/// Roots of a polynomial that involves a single variable, with the
/// split-completely flag.
fn single_var_roots(
    p: &MPoly,
    var: usize,
) -> Result<(Vec<FieldElement>, bool), Error> {
    let u = UPoly::from_mpoly_var(p, var)?;
    let (roots, split) = field_roots(&u)?;
    Ok((roots.into_iter().map(|(r, _)| r).collect(), split))
}

fn vanishes_at(polys: &[&MPoly], vals: &[FieldElement]) -> Result<bool, Error> {
    for p in polys {
        if !p.evaluate(vals)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
