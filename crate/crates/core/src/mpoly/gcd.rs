//! Multivariate gcd by monomial-content splitting and a primitive
//! pseudo-remainder sequence.
//!
//! Monomial content comes off first, so gcds of monomial-heavy inputs never
//! touch the remainder sequence.  Results are canonically scaled.

use crate::error::Error;
use crate::mpoly::MPoly;
use crate::numfield::FieldElement;
use crate::upoly::UPoly;
use num_bigint::BigInt;

/// Canonically scaled gcd of two polynomials; zero inputs are ignored
/// unless both are zero.
pub fn gcd_pair(p: &MPoly, q: &MPoly) -> Result<MPoly, Error> {
    match (p.is_zero(), q.is_zero()) {
        (true, true) => Err(Error::AllZero),
        (true, false) => Ok(q.canonicalize()),
        (false, true) => Ok(p.canonicalize()),
        (false, false) => {
            if p.nvars() != q.nvars() {
                return Err(Error::ArityMismatch {
                    expected: p.nvars(),
                    got: q.nvars(),
                });
            }
            if p.field() != q.field() {
                return Err(Error::FieldMismatch);
            }
            let mp = p.monomial_content();
            let mq = q.monomial_content();
            let p1 = p.div_by_monomial(&mp).expect("content divides");
            let q1 = q.div_by_monomial(&mq).expect("content divides");
            let mg: Vec<u64> = mp.iter().zip(mq.iter()).map(|(a, b)| *a.min(b)).collect();
            let core = core_gcd(&p1, &q1)?;
            let g = core.mul_term(&FieldElement::one(core.field()), &mg)?;
            Ok(g.canonicalize())
        }
    }
}

/// Gcd of a family; at least one member must be nonzero.
pub fn gcd_many(polys: &[MPoly]) -> Result<MPoly, Error> {
    let mut nonzero = polys.iter().filter(|p| !p.is_zero());
    let first = nonzero.next().ok_or(Error::AllZero)?;
    let mut acc = first.canonicalize();
    for p in nonzero {
        if acc.is_constant() {
            break;
        }
        acc = gcd_pair(&acc, p)?;
    }
    Ok(acc)
}

/// Gcd of two nonzero polynomials, recursing on one shared variable at a
/// time.
fn core_gcd(p: &MPoly, q: &MPoly) -> Result<MPoly, Error> {
    let one = MPoly::one(p.field(), p.nvars());
    if p.is_constant() || q.is_constant() {
        return Ok(one);
    }
    // Forms dehomogenize with no information loss once their monomial
    // content is gone (each variable then misses some term, so setting it
    // to 1 preserves degrees and the factor lattice).  Dropping one
    // variable before the remainder sequence sidesteps its coefficient
    // blowup, which is what makes dense trivariate inputs tractable.
    if p.is_homogeneous() && q.is_homogeneous() {
        if let Some(v) = (0..p.nvars()).rev().find(|&v| p.deg_in(v) > 0 || q.deg_in(v) > 0) {
            let unit = FieldElement::one(p.field());
            let pd = p.collapse_var(v, &unit)?;
            let qd = q.collapse_var(v, &unit)?;
            let g = gcd_pair(&pd, &qd)?;
            return Ok(rehomogenize(&g, v));
        }
    }
    // Most pairs we see are coprime; certify that cheaply before paying
    // for a remainder sequence.
    if (active_vars(p) > 1 || active_vars(q) > 1) && certify_coprime(p, q)? {
        return Ok(one);
    }
    let shared = (0..p.nvars()).find(|&v| p.deg_in(v) > 0 && q.deg_in(v) > 0);
    let Some(v) = shared else {
        // No shared variable: a common divisor only involves variables
        // active in both, so it is constant.
        return Ok(one);
    };
    let (cp, pp) = content_and_primitive(p, v)?;
    let (cq, qq) = content_and_primitive(q, v)?;
    let cg = gcd_pair(&cp, &cq)?;
    let gg = primitive_prs(&pp, &qq, v)?;
    cg.mul(&gg)
}

/// Raise every term to the polynomial's total degree with powers of one
/// variable, undoing [`MPoly::collapse_var`] on content-free forms.
fn rehomogenize(p: &MPoly, var: usize) -> MPoly {
    let d = p.total_degree();
    let mut out = MPoly::zero(p.field(), p.nvars());
    for (e, c) in p.terms() {
        let t: u64 = e.iter().sum();
        let mut e2 = e.clone();
        e2[var] += d - t;
        out.add_term(c.clone(), e2);
    }
    out
}

fn active_vars(p: &MPoly) -> usize {
    (0..p.nvars()).filter(|&v| p.deg_in(v) > 0).count()
}

/// Try to prove gcd(p, q) constant by specializing away all but one
/// variable at a time.  Substituting integers for the other variables is a
/// ring map, so it sends any common divisor `g` to a common divisor of the
/// images; `lc_v(g)` divides `lc_v(p)`, so whenever the image of `p` keeps
/// its full degree in `v` the image of `g` does too, and a constant image
/// gcd forces `deg_v(g) = 0`.  A divisor of both inputs only involves
/// variables active in both, so certifying every such variable proves `g`
/// constant.  `Ok(false)` means no certificate, not a nonconstant gcd.
fn certify_coprime(p: &MPoly, q: &MPoly) -> Result<bool, Error> {
    let field = p.field();
    'vars: for v in 0..p.nvars() {
        if p.deg_in(v) == 0 || q.deg_in(v) == 0 {
            continue;
        }
        'attempts: for attempt in 0..3i64 {
            let mut pu = p.clone();
            let mut qu = q.clone();
            for w in 0..p.nvars() {
                if w == v || (pu.deg_in(w) == 0 && qu.deg_in(w) == 0) {
                    continue;
                }
                // Small odd points, shifted per variable and per retry.
                let x = FieldElement::from_bigint(
                    field,
                    BigInt::from(2 * (attempt + w as i64) + 3),
                );
                pu = pu.collapse_var(w, &x)?;
                qu = qu.collapse_var(w, &x)?;
            }
            if pu.deg_in(v) < p.deg_in(v) || qu.is_zero() {
                continue 'attempts;
            }
            let a = UPoly::from_mpoly_var(&pu, v)?;
            let b = UPoly::from_mpoly_var(&qu, v)?;
            if a.gcd(&b)?.degree() == Some(0) {
                continue 'vars;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// Split `p` into `content * primitive` with respect to `var`; the content
/// is the gcd of the coefficient polynomials.
fn content_and_primitive(p: &MPoly, var: usize) -> Result<(MPoly, MPoly), Error> {
    let coeffs = p.to_univar(var)?;
    let content = gcd_many(&coeffs)?;
    let prim = p.exact_div(&content).expect("content divides");
    Ok((content, prim))
}

/// Gcd of two polynomials primitive with respect to `var`, both of
/// positive degree in it.
fn primitive_prs(a: &MPoly, b: &MPoly, var: usize) -> Result<MPoly, Error> {
    let (mut a, mut b) = if a.deg_in(var) >= b.deg_in(var) {
        (a.canonicalize(), b.canonicalize())
    } else {
        (b.canonicalize(), a.canonicalize())
    };
    loop {
        let r = pseudo_rem(&a, &b, var)?;
        if r.is_zero() {
            return Ok(b);
        }
        if r.deg_in(var) == 0 {
            // The gcd is free of `var`, and it divides a primitive
            // polynomial, so it is constant.
            return Ok(MPoly::one(a.field(), a.nvars()));
        }
        // Canonical scaling keeps the rational coefficient sizes flat;
        // without it the pseudo-division factors compound every round.
        let (_, rp) = content_and_primitive(&r, var)?;
        a = b;
        b = rp.canonicalize();
    }
}

/// Pseudo-remainder of `a` by `b` in `var`: the division succeeds over the
/// coefficient ring after scaling by powers of the leading coefficient.
fn pseudo_rem(a: &MPoly, b: &MPoly, var: usize) -> Result<MPoly, Error> {
    let db = b.deg_in(var) as usize;
    let bb = b.to_univar(var)?;
    let lb = bb[db].clone();
    let mut rr = a.to_univar(var)?;
    loop {
        while rr.last().is_some_and(|c| c.is_zero()) {
            rr.pop();
        }
        if rr.len() <= db {
            break;
        }
        let dr = rr.len() - 1;
        let lr = rr[dr].clone();
        for c in rr.iter_mut() {
            *c = c.mul(&lb)?;
        }
        for (i, bc) in bb.iter().enumerate() {
            let shift = dr - db + i;
            rr[shift] = rr[shift].sub(&lr.mul(bc)?)?;
        }
    }
    Ok(MPoly::from_univar(&rr, var, a.field(), a.nvars()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{rat, FieldElement, FieldRef, NumberField};
    use crate::parse::parse_poly;

    fn q() -> FieldRef {
        NumberField::rational()
    }

    fn p3(s: &str) -> MPoly {
        parse_poly(s, &["X", "Y", "Z"], &q(), false).unwrap()
    }

    #[test]
    fn monomial_gcd_is_min_exponents() {
        let g = gcd_pair(&p3("X^2*Y*Z^3"), &p3("X^3*Y^2")).unwrap();
        assert_eq!(g, p3("X^2*Y"));
    }

    #[test]
    fn planted_common_factor_recovered() {
        let g = p3("X + Y + Z");
        let a = g.mul(&p3("X^2 + Y*Z")).unwrap();
        let b = g.mul(&p3("X - Z")).unwrap();
        assert_eq!(gcd_pair(&a, &b).unwrap(), g);
    }

    #[test]
    fn coprime_inputs_give_one() {
        assert_eq!(gcd_pair(&p3("X - Z"), &p3("X^2 + Y*Z")).unwrap(), p3("1"));
        assert_eq!(gcd_pair(&p3("X + 1"), &p3("Y + 1")).unwrap(), p3("1"));
    }

    #[test]
    fn result_is_canonically_scaled() {
        let g = gcd_pair(&p3("2*X + 2*Y"), &p3("4*X + 4*Y")).unwrap();
        assert_eq!(g, p3("X + Y"));
        let h = gcd_pair(&p3("-3*X^2 + 3*Y^2"), &p3("6*X - 6*Y")).unwrap();
        assert_eq!(h, p3("X - Y"));
    }

    #[test]
    fn univariate_chain() {
        let a = p3("X^2 - Z^2");
        let b = p3("X^2 + 2*X*Z + Z^2");
        assert_eq!(gcd_pair(&a, &b).unwrap(), p3("X + Z"));
    }

    #[test]
    fn zero_handling() {
        let z = MPoly::zero(&q(), 3);
        assert_eq!(gcd_pair(&z, &p3("2*X")).unwrap(), p3("X"));
        assert_eq!(gcd_pair(&z, &z).unwrap_err(), Error::AllZero);
        assert_eq!(gcd_many(&[z.clone(), p3("2*X*Y"), p3("4*X^2")]).unwrap(), p3("X"));
    }

    #[test]
    fn gcd_over_extension_normalizes_lead() {
        let k = NumberField::extension(vec![rat(1), rat(-1), rat(1)]).unwrap();
        let t = FieldElement::generator(&k);
        let x = MPoly::variable(&k, 3, 0).unwrap();
        let y = MPoly::variable(&k, 3, 1).unwrap();
        let xy = x.add(&y).unwrap();
        let a = xy.scale(&t).unwrap();
        let b = x.pow(2).unwrap().sub(&y.pow(2).unwrap()).unwrap();
        assert_eq!(gcd_pair(&a, &b).unwrap(), xy);
    }

    #[test]
    fn multiplicative_over_coprime_cofactors() {
        let c = p3("X + Y");
        let a = p3("X - Z").mul(&c).unwrap();
        let b = p3("Y - Z").mul(&c).unwrap();
        assert_eq!(gcd_pair(&a, &b).unwrap(), c);
    }
}
