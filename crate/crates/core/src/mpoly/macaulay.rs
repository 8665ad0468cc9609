//! Decides whether three ternary forms share a projective zero over the
//! algebraic closure.
//!
//! For three forms of degrees `d0, d1, d2` the graded piece of the ideal in
//! degree `N = d0 + d1 + d2 - 2` has full rank exactly when the forms have
//! no common zero, so the question reduces to one exact rank computation.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::linalg::rank_at_least;
use crate::mpoly::{HomogeneousTriple, MPoly};
use crate::numfield::FieldElement;

pub fn has_common_projective_zero(t: &HomogeneousTriple) -> Result<bool, Error> {
    if t.degree() == 0 {
        // Nonzero constants never vanish.
        return Ok(false);
    }
    let nz: Vec<&MPoly> = t.forms().iter().filter(|f| !f.is_zero()).collect();
    if nz.len() <= 2 {
        // One or two curves of positive degree always meet in the plane.
        return Ok(true);
    }
    if nz.iter().all(|f| f.single_term().is_some()) {
        // Monomials vanish exactly where a supported coordinate vanishes,
        // so a common zero exists iff two coordinates cover every support.
        let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
        return Ok(pairs.iter().any(|&(u, w)| {
            nz.iter().all(|f| {
                let e = f.single_term().unwrap().0;
                e[u] > 0 || e[w] > 0
            })
        }));
    }
    let field = t.field().clone();
    let degs: Vec<u64> = nz.iter().map(|f| f.total_degree()).collect();
    let n_deg = degs.iter().sum::<u64>() - 2;
    let cols: Vec<Vec<u64>> = monomials_of_degree(n_deg);
    let index: BTreeMap<&[u64], usize> = cols
        .iter()
        .enumerate()
        .map(|(i, e)| (e.as_slice(), i))
        .collect();
    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    for f in &nz {
        let shift = n_deg - f.total_degree();
        for m in monomials_of_degree(shift) {
            let mut row = vec![FieldElement::zero(&field); cols.len()];
            for (e, c) in f.terms() {
                let col: Vec<u64> = e.iter().zip(m.iter()).map(|(a, b)| a + b).collect();
                row[index[col.as_slice()]] = c.clone();
            }
            rows.push(row);
        }
    }
    let full = rank_at_least(rows, cols.len())?;
    Ok(!full)
}

fn monomials_of_degree(d: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            out.push(vec![a, b, d - a - b]);
        }
    }
    out
}
