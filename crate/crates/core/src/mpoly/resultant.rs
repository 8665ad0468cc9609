//! Sylvester resultants over the polynomial ring, expanded by fraction-free
//! elimination.

use crate::error::Error;
use crate::mpoly::MPoly;
use crate::numfield::FieldRef;

/// Resultant of `p` and `q` with respect to one variable.
///
/// The Sylvester matrix is laid out with the rows of `q` coefficients
/// first, so `resultant(y, y - 1, y) == 1`.
pub fn resultant(p: &MPoly, q: &MPoly, var: usize) -> Result<MPoly, Error> {
    if p.nvars() != q.nvars() {
        return Err(Error::ArityMismatch {
            expected: p.nvars(),
            got: q.nvars(),
        });
    }
    if p.field() != q.field() {
        return Err(Error::FieldMismatch);
    }
    if var >= p.nvars() {
        return Err(Error::VarOutOfRange {
            var,
            nvars: p.nvars(),
        });
    }
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroInput);
    }
    let field = p.field().clone();
    let nvars = p.nvars();
    let dp = p.deg_in(var) as usize;
    let dq = q.deg_in(var) as usize;
    let n = dp + dq;
    if n == 0 {
        return Ok(MPoly::one(&field, nvars));
    }
    let pc = p.to_univar(var)?;
    let qc = q.to_univar(var)?;
    let mut m = vec![vec![MPoly::zero(&field, nvars); n]; n];
    for i in 0..dp {
        for (k, c) in qc.iter().rev().enumerate() {
            m[i][i + k] = c.clone();
        }
    }
    for j in 0..dq {
        for (k, c) in pc.iter().rev().enumerate() {
            m[dp + j][j + k] = c.clone();
        }
    }
    det_bareiss(m, &field, nvars)
}

/// Determinant of a square polynomial matrix by single-step fraction-free
/// elimination; every division is exact.
fn det_bareiss(mut m: Vec<Vec<MPoly>>, field: &FieldRef, nvars: usize) -> Result<MPoly, Error> {
    let n = m.len();
    if n == 0 {
        return Ok(MPoly::one(field, nvars));
    }
    let mut negated = false;
    let mut prev = MPoly::one(field, nvars);
    for k in 0..n - 1 {
        let Some(r) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Ok(MPoly::zero(field, nvars));
        };
        if r != k {
            m.swap(r, k);
            negated = !negated;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&m[k][k])?.sub(&m[i][k].mul(&m[k][j])?)?;
                m[i][j] = t
                    .exact_div(&prev)
                    .expect("fraction-free step divides exactly");
            }
            m[i][k] = MPoly::zero(field, nvars);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negated { det.neg() } else { det })
}
