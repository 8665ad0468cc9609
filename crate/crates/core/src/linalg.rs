//! Exact linear algebra helpers: fraction-free rank, small determinants,
//! and rational null spaces.

use num_traits::{One, Zero};

use crate::error::Error;
use crate::numfield::{FieldElement, Rational};

/// Rank of a dense matrix by fraction-free elimination with column
/// pivoting.
pub(crate) fn rank(rows: Vec<Vec<FieldElement>>) -> Result<usize, Error> {
    rank_bounded(rows, usize::MAX)
}

/// True when the rank reaches `target`; stops eliminating as soon as the
/// answer is known.
pub(crate) fn rank_at_least(rows: Vec<Vec<FieldElement>>, target: usize) -> Result<bool, Error> {
    Ok(rank_bounded(rows, target)? >= target)
}

fn rank_bounded(mut m: Vec<Vec<FieldElement>>, stop: usize) -> Result<usize, Error> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut prev: Option<FieldElement> = None;
    let mut rank = 0;
    for col in 0..ncols {
        if rank >= stop || rank >= nrows {
            break;
        }
        let Some(r) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(r, rank);
        for i in rank + 1..nrows {
            for j in col + 1..ncols {
                let t = m[i][j].mul(&m[rank][col])?.sub(&m[i][col].mul(&m[rank][j])?)?;
                m[i][j] = match &prev {
                    None => t,
                    Some(p) => t.div(p)?,
                };
            }
            m[i][col] = FieldElement::zero(m[i][col].field());
        }
        prev = Some(m[rank][col].clone());
        rank += 1;
    }
    Ok(rank)
}

/// Determinant of a 3x3 matrix of field elements.
pub(crate) fn det3(m: &[[FieldElement; 3]; 3]) -> Result<FieldElement, Error> {
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| -> Result<FieldElement, Error> {
        m[r0][c0].mul(&m[r1][c1])?.sub(&m[r0][c1].mul(&m[r1][c0])?)
    };
    let d0 = m[0][0].mul(&minor(1, 2, 1, 2)?)?;
    let d1 = m[0][1].mul(&minor(1, 2, 0, 2)?)?;
    let d2 = m[0][2].mul(&minor(1, 2, 0, 1)?)?;
    d0.sub(&d1)?.add(&d2)
}

/// Basis of the right null space of a rational matrix.
pub(crate) fn rational_kernel(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    for col in 0..ncols {
        let row = pivots.len();
        if row >= nrows {
            break;
        }
        let Some(r) = (row..nrows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(r, row);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[row].clone();
        for (i, other) in a.iter_mut().enumerate() {
            if i == row || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for (x, p) in other.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        pivots.push(col);
    }
    let mut basis = Vec::new();
    for fc in 0..ncols {
        if pivots.contains(&fc) {
            continue;
        }
        let mut v = vec![Rational::zero(); ncols];
        v[fc] = Rational::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[i][fc].clone();
        }
        basis.push(v);
    }
    basis
}
