//! Dense exact linear algebra over any [`Field`].

use crate::error::{Error, Result};
use crate::scalar::Field;

pub type Matrix<F> = Vec<Vec<F>>;

pub fn zeros<F: Field>(rows: usize, cols: usize) -> Matrix<F> {
    vec![vec![F::zero(); cols]; rows]
}

/// Reduced row echelon form, returning the pivot columns.
pub fn rref<F: Field>(mut m: Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].try_inv().expect("nonzero pivot");
        for x in m[row].iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        let pivot_row = m[row].clone();
        for (i, r) in m.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (x, p) in r.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (m, pivots)
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    rref(m.clone()).1.len()
}

/// Basis of the right kernel `{x : m x = 0}`; one vector per free column.
pub fn kernel<F: Field>(m: &Matrix<F>, cols: usize) -> Vec<Vec<F>> {
    let (r, pivots) = rref(m.clone());
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); cols];
        v[free] = F::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -r[i][free].clone();
        }
        basis.push(v);
    }
    basis
}

pub fn mat_vec<F: Field>(m: &Matrix<F>, v: &[F]) -> Vec<F> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
        })
        .collect()
}

pub fn inverse<F: Field>(m: &Matrix<F>) -> Result<Matrix<F>> {
    let n = m.len();
    let aug: Matrix<F> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let (r, pivots) = rref(aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::DivisionByZero);
    }
    Ok(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Positive definiteness of a symmetric matrix by leading principal minors.
///
/// Elimination without pivoting exposes the minors as running products of
/// pivots. On failure returns the (1-based) size of the first leading minor
/// that is not positive.
pub fn positive_definite<F: Field>(m: &Matrix<F>) -> std::result::Result<(), usize> {
    let n = m.len();
    let mut a = m.clone();
    for k in 0..n {
        if a[k][k].sign() <= 0 {
            return Err(k + 1);
        }
        let inv = a[k][k].try_inv().expect("positive pivot");
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone() * inv.clone();
            for j in k..n {
                if !a[k][j].is_zero() {
                    a[i][j] = a[i][j].clone() - f.clone() * a[k][j].clone();
                }
            }
        }
    }
    Ok(())
}
