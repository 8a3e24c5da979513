//! Cayley-Dickson algebras `A_n` over the rationals.
//!
//! `A_0 = Q` and `A_n = A_{n-1} x A_{n-1}` with
//! `(a, b)(c, d) = (ac - d*b, da + bc*)` and `(a, b)* = (a*, -b)`.
//! The recursion is the reference product; a signed basis table derived
//! from it is cached per level and used for everyday multiplication.

mod expr;
mod zero_divisors;

pub use expr::{format_element, parse_element, parse_pair, parse_terms};
pub use zero_divisors::{
    annihilator_basis, characterization_check, format_table, is_zero_divisor_pair,
    left_multiplication_matrix, octonion_pair_criterion, parse_table, standard_zero_divisors,
    ZeroDivisorPair,
};

use std::sync::OnceLock;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{int, Rational};

/// Levels above this are rejected unless a larger cap is passed explicitly.
pub const DEFAULT_MAX_LEVEL: u32 = 6;

const SEDENION_LEVEL: u32 = 4;

/// Element of `A_n` in the canonical basis `e_0 .. e_{2^n - 1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CdElement {
    level: u32,
    coords: Vec<Rational>,
}

impl CdElement {
    pub fn new(level: u32, coords: Vec<Rational>) -> Result<Self> {
        Self::new_capped(level, coords, DEFAULT_MAX_LEVEL)
    }

    pub fn new_capped(level: u32, coords: Vec<Rational>, cap: u32) -> Result<Self> {
        if level > cap {
            return Err(Error::LevelTooLarge { level, cap });
        }
        if coords.len() != 1usize << level {
            return Err(Error::BadLength(coords.len()));
        }
        Ok(CdElement { level, coords })
    }

    /// Infers the level from the coordinate count.
    pub fn from_coords(coords: Vec<Rational>) -> Result<Self> {
        let n = coords.len();
        if !n.is_power_of_two() {
            return Err(Error::BadLength(n));
        }
        Self::new(n.trailing_zeros(), coords)
    }

    pub fn from_ints(level: u32, coords: &[i64]) -> Result<Self> {
        Self::new(level, coords.iter().map(|&c| int(c)).collect())
    }

    pub fn zero(level: u32) -> Self {
        CdElement {
            level,
            coords: vec![Rational::zero(); 1 << level],
        }
    }

    /// Basis element `e_i`.
    ///
    /// # Panics
    /// If `i >= 2^level`.
    pub fn basis(level: u32, i: usize) -> Self {
        let mut x = Self::zero(level);
        x.coords[i] = int(1);
        x
    }

    /// `e_i + s * e_j` with `s = +1` or `-1`, a common shape of zero divisors.
    pub fn two_term(level: u32, i: usize, sign_j: i64, j: usize) -> Self {
        let mut x = Self::basis(level, i);
        x.coords[j] += int(sign_j);
        x
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Rational {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Nonzero coordinates as `(index, value)` pairs.
    pub fn sparse(&self) -> Vec<(usize, Rational)> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect()
    }

    pub fn conjugate(&self) -> Self {
        let mut coords: Vec<Rational> = self.coords.iter().map(|c| -c).collect();
        coords[0] = self.coords[0].clone();
        CdElement {
            level: self.level,
            coords,
        }
    }

    /// `Re x = (x + x*) / 2`, i.e. the `e_0` component.
    pub fn re_part(&self) -> Self {
        let mut x = Self::zero(self.level);
        x.coords[0] = self.coords[0].clone();
        x
    }

    /// `Im x = (x - x*) / 2`.
    pub fn im_part(&self) -> Self {
        let mut x = self.clone();
        x.coords[0] = Rational::zero();
        x
    }

    pub fn is_imaginary(&self) -> bool {
        self.coords[0].is_zero()
    }

    /// `<x, y> = Re(x y*)`, computed as the coordinate dot product.
    pub fn inner(&self, other: &Self) -> Result<Rational> {
        check_levels(self, other)?;
        Ok(self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum())
    }

    pub fn norm_sq(&self) -> Rational {
        self.coords.iter().map(|a| a * a).sum()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_levels(self, other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_levels(self, other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        CdElement {
            level: self.level,
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        CdElement {
            level: self.level,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    /// The pair `(a, b)` as an element one level up.
    pub fn join(a: &Self, b: &Self) -> Result<Self> {
        check_levels(a, b)?;
        let mut coords = a.coords.clone();
        coords.extend(b.coords.iter().cloned());
        Self::new(a.level + 1, coords)
    }

    /// Splits into the halves `(a, b)` one level down.
    pub fn split(&self) -> Option<(Self, Self)> {
        if self.level == 0 {
            return None;
        }
        let h = self.coords.len() / 2;
        let mk = |c: &[Rational]| CdElement {
            level: self.level - 1,
            coords: c.to_vec(),
        };
        Some((mk(&self.coords[..h]), mk(&self.coords[h..])))
    }

    /// Image under the algebra monomorphism `a -> (a, 0)`, repeated.
    pub fn embed(&self, level: u32) -> Result<Self> {
        if level < self.level {
            return Err(Error::LevelMismatch {
                left: self.level,
                right: level,
            });
        }
        let mut coords = self.coords.clone();
        coords.resize(1 << level, Rational::zero());
        Self::new(level, coords)
    }
}

fn check_levels(x: &CdElement, y: &CdElement) -> Result<()> {
    if x.level != y.level {
        return Err(Error::LevelMismatch {
            left: x.level,
            right: y.level,
        });
    }
    Ok(())
}

/// Product by the doubling formula, recursing down to rational
/// multiplication.
pub fn multiply_recursive(x: &CdElement, y: &CdElement) -> Result<CdElement> {
    check_levels(x, y)?;
    Ok(CdElement {
        level: x.level,
        coords: rec_mul(&x.coords, &y.coords),
    })
}

fn rec_conj(x: &[Rational]) -> Vec<Rational> {
    let mut v: Vec<Rational> = x.iter().map(|c| -c).collect();
    v[0] = x[0].clone();
    v
}

fn rec_mul(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let n = x.len();
    if n == 1 {
        return vec![&x[0] * &y[0]];
    }
    let h = n / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    // (a, b)(c, d) = (ac - d*b, da + bc*)
    let ac = rec_mul(a, c);
    let dsb = rec_mul(&rec_conj(d), b);
    let da = rec_mul(d, a);
    let bcs = rec_mul(b, &rec_conj(c));
    let mut out: Vec<Rational> = ac.iter().zip(&dsb).map(|(p, q)| p - q).collect();
    out.extend(da.iter().zip(&bcs).map(|(p, q)| p + q));
    out
}

/// `e_i e_j = sign * e_index` for every basis pair at one level.
#[derive(Debug)]
pub struct BasisTable {
    dim: usize,
    entries: Vec<(u16, i8)>,
}

impl BasisTable {
    fn derive(level: u32) -> Self {
        let dim = 1usize << level;
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let p = rec_mul(
                    &CdElement::basis(level, i).coords,
                    &CdElement::basis(level, j).coords,
                );
                let nz: Vec<_> = p.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                assert_eq!(
                    nz.len(),
                    1,
                    "basis product e{i} e{j} is not a signed basis element"
                );
                let (k, c) = nz[0];
                let sign = if *c == int(1) {
                    1
                } else {
                    assert_eq!(*c, int(-1), "basis product e{i} e{j} has coefficient {c}");
                    -1
                };
                assert_eq!(k, i ^ j, "basis product e{i} e{j} lands on e{k}");
                entries.push((k as u16, sign));
            }
        }
        BasisTable { dim, entries }
    }

    pub fn get(&self, i: usize, j: usize) -> (usize, i8) {
        let (k, s) = self.entries[i * self.dim + j];
        (k as usize, s)
    }
}

static TABLES: [OnceLock<BasisTable>; DEFAULT_MAX_LEVEL as usize + 1] =
    [const { OnceLock::new() }; DEFAULT_MAX_LEVEL as usize + 1];

/// Cached signed basis table for a level (derived on first use).
pub fn basis_table(level: u32) -> Option<&'static BasisTable> {
    TABLES
        .get(level as usize)
        .map(|cell| cell.get_or_init(|| BasisTable::derive(level)))
}

/// The Cayley-Dickson product.
pub fn cd_multiply(x: &CdElement, y: &CdElement) -> Result<CdElement> {
    check_levels(x, y)?;
    let Some(table) = basis_table(x.level) else {
        return multiply_recursive(x, y);
    };
    let mut out = vec![Rational::zero(); x.dim()];
    for (i, a) in x.coords.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
        for (j, b) in y.coords.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
            let (k, s) = table.get(i, j);
            let p = a * b;
            if s > 0 {
                out[k] += p;
            } else {
                out[k] -= p;
            }
        }
    }
    Ok(CdElement {
        level: x.level,
        coords: out,
    })
}

/// `(xy)z - x(yz)`.
pub fn associator(x: &CdElement, y: &CdElement, z: &CdElement) -> Result<CdElement> {
    cd_multiply(&cd_multiply(x, y)?, z)?.sub(&cd_multiply(x, &cd_multiply(y, z)?)?)
}

/// Left alternativity `(xx)y = x(xy)` for one pair.
pub fn is_left_alternative(x: &CdElement, y: &CdElement) -> Result<bool> {
    Ok(associator(x, x, y)?.is_zero())
}

/// First pair `x = e_i + e_j`, `y = e_k` violating left alternativity, in
/// lexicographic order. `None` for levels 0..=3.
pub fn alternativity_counterexample(level: u32) -> Result<Option<(CdElement, CdElement)>> {
    let dim = 1usize << level;
    basis_table(level).ok_or(Error::LevelTooLarge {
        level,
        cap: DEFAULT_MAX_LEVEL,
    })?;
    for i in 1..dim {
        for j in i + 1..dim {
            let x = CdElement::two_term(level, i, 1, j);
            for k in 1..dim {
                let y = CdElement::basis(level, k);
                if !is_left_alternative(&x, &y)? {
                    return Ok(Some((x, y)));
                }
            }
        }
    }
    Ok(None)
}

/// `2^n - 4n + 4`, the bound on `dim ann(u)` for nonzero `u` in `A_n`.
pub fn annihilator_dim_bound(level: u32) -> usize {
    ((1i64 << level) - 4 * level as i64 + 4).max(0) as usize
}

/// Sedenion convenience: `e_i` in `A_4`.
pub fn sedenion_basis(i: usize) -> CdElement {
    CdElement::basis(SEDENION_LEVEL, i)
}
