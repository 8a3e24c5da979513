//! Exact positive-semidefiniteness by symmetric-pivoting LDL^T.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{int, Rational};

/// One elimination step: `d * l l^T` with `l[pivot] = 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Pivot {
    pub index: usize,
    pub d: Rational,
    pub l: Vec<Rational>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PsdVerdict {
    /// `M = sum d_t l_t l_t^T` with every `d_t > 0`.
    Psd { pivots: Vec<Pivot> },
    /// `w^T M w = value < 0`.
    NotPsd {
        witness: Vec<Rational>,
        value: Rational,
    },
}

impl PsdVerdict {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdVerdict::Psd { .. })
    }

    pub fn rank(&self) -> Option<usize> {
        match self {
            PsdVerdict::Psd { pivots } => Some(pivots.len()),
            PsdVerdict::NotPsd { .. } => None,
        }
    }
}

pub fn check_symmetric(m: &Matrix<Rational>) -> Result<()> {
    let n = m.len();
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(Error::BadLength(row.len()));
        }
        for j in i + 1..n {
            if row[j] != m[j][i] {
                return Err(Error::NotSymmetric(i, j));
            }
        }
    }
    Ok(())
}

/// `x^T M x`.
pub fn quadratic_value(m: &Matrix<Rational>, x: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (i, row) in m.iter().enumerate() {
        if x[i].is_zero() {
            continue;
        }
        for (j, v) in row.iter().enumerate() {
            if !v.is_zero() && !x[j].is_zero() {
                acc += &x[i] * v * &x[j];
            }
        }
    }
    acc
}

/// Decides `M >= 0` exactly. Pivots are chosen by largest diagonal; the
/// first negative diagonal of a Schur complement, or a zero diagonal with
/// a nonzero off-diagonal in its row, ends the run with a witness.
pub fn psd_exact(m: &Matrix<Rational>) -> Result<PsdVerdict> {
    check_symmetric(m)?;
    let n = m.len();
    let mut s = m.clone();
    let mut active: Vec<bool> = vec![true; n];
    let mut pivots: Vec<Pivot> = Vec::new();

    loop {
        let live: Vec<usize> = (0..n).filter(|&i| active[i]).collect();
        if let Some(&q) = live.iter().find(|&&i| s[i][i].is_negative()) {
            let mut z = vec![Rational::zero(); n];
            z[q] = int(1);
            return Ok(witness(m, &pivots, z));
        }
        let best = live
            .iter()
            .copied()
            .filter(|&i| !s[i][i].is_zero())
            .max_by(|&a, &b| s[a][a].cmp(&s[b][b]).then(b.cmp(&a)));
        let Some(p) = best else {
            // all remaining diagonals vanish; any off-diagonal entry breaks PSD
            for &q in &live {
                if let Some(&j) = live.iter().find(|&&j| j != q && !s[q][j].is_zero()) {
                    let mut z = vec![Rational::zero(); n];
                    z[q] = -(&s[j][j] + int(1)) / (int(2) * &s[q][j]);
                    z[j] = int(1);
                    return Ok(witness(m, &pivots, z));
                }
            }
            return Ok(PsdVerdict::Psd { pivots });
        };
        let d = s[p][p].clone();
        let dinv = d.recip();
        let mut l = vec![Rational::zero(); n];
        for &i in &live {
            if !s[i][p].is_zero() {
                l[i] = &s[i][p] * &dinv;
            }
        }
        let nz: Vec<usize> = live.iter().copied().filter(|&i| !l[i].is_zero()).collect();
        for &i in &nz {
            let di = &d * &l[i];
            for &j in &nz {
                let delta = &di * &l[j];
                s[i][j] -= delta;
            }
        }
        active[p] = false;
        pivots.push(Pivot { index: p, d, l });
    }
}

/// Lifts a Schur-complement vector `z` to `w` with `l_t . w = 0` for all
/// eliminated pivots, so `w^T M w = z^T S z`.
fn witness(m: &Matrix<Rational>, pivots: &[Pivot], mut w: Vec<Rational>) -> PsdVerdict {
    for p in pivots.iter().rev() {
        let mut acc = Rational::zero();
        for (j, lj) in p.l.iter().enumerate() {
            if j != p.index && !lj.is_zero() && !w[j].is_zero() {
                acc += lj * &w[j];
            }
        }
        w[p.index] = -acc;
    }
    let value = quadratic_value(m, &w);
    debug_assert!(value.is_negative());
    PsdVerdict::NotPsd { witness: w, value }
}

/// `sum d_t l_t l_t^T`.
pub fn reconstruct(pivots: &[Pivot], n: usize) -> Matrix<Rational> {
    let mut out = vec![vec![Rational::zero(); n]; n];
    for p in pivots {
        let nz: Vec<usize> = (0..n).filter(|&i| !p.l[i].is_zero()).collect();
        for &i in &nz {
            for &j in &nz {
                out[i][j] += &p.d * &p.l[i] * &p.l[j];
            }
        }
    }
    out
}
