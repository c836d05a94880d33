//! Small exact linear algebra over the rationals (Gaussian elimination).

use crate::arith::Rat;
use num_traits::Zero;

/// Solves A x = b exactly. Returns None when the system is singular or
/// inconsistent. A is given row-major, n x n.
pub(crate) fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = b.len();
    debug_assert!(a.len() == n && a.iter().all(|r| r.len() == n));
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = {
            let p = &m[col][col];
            Rat::new(p.denom().clone(), p.numer().clone())
        };
        for j in col..=n {
            let v = &m[col][j] * &inv;
            m[col][j] = v;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in col..=n {
                    let v = &m[r][j] - &f * &m[col][j];
                    m[r][j] = v;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Inverts an n x n matrix exactly. None when singular.
pub(crate) fn invert(a: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[i] = Rat::new(1.into(), 1.into());
        cols.push(solve(a, &e)?);
    }
    // cols[i] is the i-th column of the inverse; transpose into rows.
    let mut inv = vec![vec![Rat::zero(); n]; n];
    for (i, col) in cols.iter().enumerate() {
        for (j, v) in col.iter().enumerate() {
            inv[j][i] = v.clone();
        }
    }
    Some(inv)
}

/// Matrix-vector product.
pub(crate) fn mat_vec(a: &[Vec<Rat>], x: &[Rat]) -> Vec<Rat> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(c, v)| c * v).sum())
        .collect()
}
