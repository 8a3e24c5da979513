//! The Lie algebra g2 = Der(O) as a 14-dimensional subalgebra of so(8).
//!
//! `E_ij` (i < j) has `-1` at `(i, j)` and `+1` at `(j, i)`. The basis
//! `X_0 .. X_13` is orthonormal for `g_bi(X, Y) = -tr(XY)` and splits as
//! `k0 = <X0..X2>`, `m0 = <X3..X5>`, `m1 = <X6..X9>`, `m2 = <X10..X13>`.

use std::fmt::Write as _;
use std::sync::OnceLock;

use crate::cayley_dickson::{basis_table, CdElement};
use crate::error::{Error, Result};
use crate::linalg::{kernel, Matrix};
use crate::par;
use crate::scalar::{int, rat, QuadScalar, Rational};

pub const DIM: usize = 14;

/// Skew-symmetric 8x8 matrix acting on octonion coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct So8Matrix {
    entries: Vec<QuadScalar>,
}

impl So8Matrix {
    pub fn zero() -> Self {
        So8Matrix {
            entries: vec![QuadScalar::zero(); 64],
        }
    }

    /// The elementary skew matrix `E_ij`.
    pub fn elementary(i: usize, j: usize) -> Self {
        assert!(i < j && j < 8, "E_ij needs 0 <= i < j <= 7");
        let mut m = Self::zero();
        m.entries[i * 8 + j] = QuadScalar::from_rational(int(-1));
        m.entries[j * 8 + i] = QuadScalar::from_rational(int(1));
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &QuadScalar {
        &self.entries[i * 8 + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(QuadScalar::is_zero)
    }

    pub fn is_skew(&self) -> bool {
        (0..8).all(|i| (0..8).all(|j| *self.get(i, j) == -self.get(j, i)))
    }

    pub fn add(&self, o: &Self) -> Self {
        So8Matrix {
            entries: self
                .entries
                .iter()
                .zip(&o.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, k: &QuadScalar) -> Self {
        So8Matrix {
            entries: self.entries.iter().map(|a| a * k).collect(),
        }
    }

    pub fn matmul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..8 {
            for k in 0..8 {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..8 {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * 8 + j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> QuadScalar {
        (0..8).fold(QuadScalar::zero(), |acc, i| &acc + self.get(i, i))
    }

    /// Matrix-vector product on an 8-vector.
    pub fn apply(&self, v: &[QuadScalar]) -> Vec<QuadScalar> {
        (0..8)
            .map(|i| {
                (0..8).fold(QuadScalar::zero(), |acc, j| {
                    let (a, x) = (self.get(i, j), &v[j]);
                    if a.is_zero() || x.is_zero() {
                        acc
                    } else {
                        &acc + &(a * x)
                    }
                })
            })
            .collect()
    }
}

/// `g_bi(A, B) = -tr(AB)`.
pub fn bi_form(a: &So8Matrix, b: &So8Matrix) -> QuadScalar {
    -a.matmul(b).trace()
}

/// Matrix commutator `AB - BA`.
pub fn bracket(a: &So8Matrix, b: &So8Matrix) -> So8Matrix {
    let ab = a.matmul(b);
    let ba = b.matmul(a);
    ab.add(&ba.scale(&QuadScalar::from_rational(int(-1))))
}

/// Element of g2 in the basis `X_0 .. X_13`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct G2Vector {
    pub coords: Vec<QuadScalar>,
}

impl G2Vector {
    pub fn zero() -> Self {
        G2Vector {
            coords: vec![QuadScalar::zero(); DIM],
        }
    }

    pub fn basis(i: usize) -> Self {
        let mut v = Self::zero();
        v.coords[i] = QuadScalar::one();
        v
    }

    pub fn from_rationals(c: &[Rational]) -> Self {
        assert_eq!(c.len(), DIM);
        G2Vector {
            coords: c.iter().cloned().map(QuadScalar::from_rational).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(QuadScalar::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        G2Vector {
            coords: self
                .coords
                .iter()
                .zip(&o.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, k: &QuadScalar) -> Self {
        G2Vector {
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }

    /// Indices with nonzero coefficients.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..DIM).filter(|&i| !self.coords[i].is_zero())
    }

    pub fn to_matrix(&self) -> So8Matrix {
        let b = basis();
        self.support().fold(So8Matrix::zero(), |acc, i| {
            acc.add(&b[i].scale(&self.coords[i]))
        })
    }

    /// Exact coordinates of a matrix lying in g2; `None` if it does not.
    pub fn from_matrix(m: &So8Matrix) -> Option<Self> {
        let b = basis();
        let v = G2Vector {
            coords: b.iter().map(|x| bi_form(m, x)).collect(),
        };
        (v.to_matrix() == *m).then_some(v)
    }

    pub fn lies_in(&self, label: SubspaceLabel) -> bool {
        self.support().all(|i| SubspaceLabel::of(i) == label)
    }
}

/// Block of the decomposition `g2 = k0 + m0 + m1 + m2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SubspaceLabel {
    K0,
    M0,
    M1,
    M2,
}

impl SubspaceLabel {
    pub const ALL: [SubspaceLabel; 4] = [Self::K0, Self::M0, Self::M1, Self::M2];

    pub fn indices(self) -> std::ops::Range<usize> {
        match self {
            Self::K0 => 0..3,
            Self::M0 => 3..6,
            Self::M1 => 6..10,
            Self::M2 => 10..14,
        }
    }

    pub fn of(i: usize) -> Self {
        match i {
            0..=2 => Self::K0,
            3..=5 => Self::M0,
            6..=9 => Self::M1,
            10..=13 => Self::M2,
            _ => panic!("g2 index {i} out of range"),
        }
    }
}

fn build_basis() -> Vec<So8Matrix> {
    let e = So8Matrix::elementary;
    let half = QuadScalar::from_rational(rat(1, 2));
    let mhalf = QuadScalar::from_rational(rat(-1, 2));
    let s3 = QuadScalar::sqrt3_times(rat(1, 6));
    let ms3 = QuadScalar::sqrt3_times(rat(-1, 6));
    // linear combination of E_ij with integer weights
    let comb = |terms: &[(i64, usize, usize)]| {
        terms.iter().fold(So8Matrix::zero(), |acc, &(w, i, j)| {
            acc.add(&e(i, j).scale(&QuadScalar::from_rational(int(w))))
        })
    };
    vec![
        comb(&[(1, 4, 5), (1, 6, 7)]).scale(&half),
        comb(&[(1, 4, 6), (-1, 5, 7)]).scale(&half),
        comb(&[(1, 4, 7), (1, 5, 6)]).scale(&half),
        comb(&[(2, 2, 3), (-1, 4, 5), (1, 6, 7)]).scale(&ms3),
        comb(&[(2, 1, 3), (1, 4, 6), (1, 5, 7)]).scale(&s3),
        comb(&[(2, 1, 2), (-1, 4, 7), (1, 5, 6)]).scale(&ms3),
        comb(&[(1, 1, 7), (-1, 2, 4)]).scale(&mhalf),
        comb(&[(1, 1, 6), (1, 2, 5)]).scale(&half),
        comb(&[(1, 1, 5), (-1, 2, 6)]).scale(&mhalf),
        comb(&[(1, 1, 4), (1, 2, 7)]).scale(&half),
        comb(&[(1, 1, 6), (-1, 2, 5), (2, 3, 4)]).scale(&s3),
        comb(&[(1, 1, 7), (1, 2, 4), (2, 3, 5)]).scale(&s3),
        comb(&[(1, 1, 4), (-1, 2, 7), (-2, 3, 6)]).scale(&ms3),
        comb(&[(1, 1, 5), (1, 2, 6), (-2, 3, 7)]).scale(&ms3),
    ]
}

/// The 14 basis matrices `X_0 .. X_13`.
pub fn basis() -> &'static [So8Matrix] {
    static BASIS: OnceLock<Vec<So8Matrix>> = OnceLock::new();
    BASIS.get_or_init(build_basis)
}

/// `c[i][j][k] = g_bi([X_i, X_j], X_k)` with sparse per-pair lists.
#[derive(Debug)]
pub struct StructureConstants {
    dense: Vec<QuadScalar>,
    sparse: Vec<Vec<(usize, QuadScalar)>>,
}

impl StructureConstants {
    fn compute() -> Result<Self> {
        let b = basis();
        let pairs: Vec<(usize, usize)> = (0..DIM)
            .flat_map(|i| (0..DIM).map(move |j| (i, j)))
            .collect();
        let rows = par::try_map(&pairs, |&(i, j)| {
            G2Vector::from_matrix(&bracket(&b[i], &b[j])).ok_or(Error::BracketNotInSpan(i, j))
        })?;
        let mut dense = Vec::with_capacity(DIM * DIM * DIM);
        let mut sparse = Vec::with_capacity(DIM * DIM);
        for v in rows {
            sparse.push(v.support().map(|k| (k, v.coords[k].clone())).collect());
            dense.extend(v.coords);
        }
        Ok(StructureConstants { dense, sparse })
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &QuadScalar {
        &self.dense[(i * DIM + j) * DIM + k]
    }

    /// Nonzero `(k, c_ijk)` for the bracket `[X_i, X_j]`.
    pub fn pair(&self, i: usize, j: usize) -> &[(usize, QuadScalar)] {
        &self.sparse[i * DIM + j]
    }

    /// Bracket of two vectors through the constants.
    pub fn bracket(&self, x: &G2Vector, y: &G2Vector) -> G2Vector {
        let mut out = G2Vector::zero();
        for i in x.support() {
            for j in y.support() {
                let xy = &x.coords[i] * &y.coords[j];
                for (k, c) in self.pair(i, j) {
                    out.coords[*k] += &(&xy * c);
                }
            }
        }
        out
    }
}

/// Cached structure constants; fails with `BracketNotInSpan` if the basis
/// does not close under the commutator.
pub fn structure_constants() -> Result<&'static StructureConstants> {
    static SC: OnceLock<Result<StructureConstants>> = OnceLock::new();
    SC.get_or_init(StructureConstants::compute)
        .as_ref()
        .map_err(Clone::clone)
}

/// Octonion product on coordinate vectors over Q(sqrt2, sqrt3).
pub fn octonion_mul(x: &[QuadScalar], y: &[QuadScalar]) -> Vec<QuadScalar> {
    let table = basis_table(3).expect("level 3 table");
    let mut out = vec![QuadScalar::zero(); 8];
    for i in (0..8).filter(|&i| !x[i].is_zero()) {
        for j in (0..8).filter(|&j| !y[j].is_zero()) {
            let (k, s) = table.get(i, j);
            let p = &x[i] * &y[j];
            if s > 0 {
                out[k] += &p;
            } else {
                out[k] -= &p;
            }
        }
    }
    out
}

fn quad_coords(x: &CdElement) -> Vec<QuadScalar> {
    x.coords()
        .iter()
        .cloned()
        .map(QuadScalar::from_rational)
        .collect()
}

/// Checks `A(e_i e_j) = (A e_i) e_j + e_i (A e_j)` for all 64 octonion
/// basis pairs.
pub fn is_derivation(a: &So8Matrix) -> bool {
    let e = |i| quad_coords(&CdElement::basis(3, i));
    (0..8).all(|i| {
        (0..8).all(|j| {
            let (ei, ej) = (e(i), e(j));
            let lhs = a.apply(&octonion_mul(&ei, &ej));
            let r1 = octonion_mul(&a.apply(&ei), &ej);
            let r2 = octonion_mul(&ei, &a.apply(&ej));
            lhs.iter()
                .zip(r1.iter().zip(&r2))
                .all(|(l, (p, q))| *l == p + q)
        })
    })
}

/// Diagonal infinitesimal action on a sedenion `(a, b)`: returns `(Aa, Ab)`.
pub fn act_on_sedenion(a: &So8Matrix, u: &CdElement) -> Result<Vec<QuadScalar>> {
    if u.level() != 4 {
        return Err(Error::LevelMismatch {
            left: u.level(),
            right: 4,
        });
    }
    let c = quad_coords(u);
    let mut out = a.apply(&c[..8]);
    out.extend(a.apply(&c[8..]));
    Ok(out)
}

/// Matrix (rows = ambient coordinates, columns = X_i) of `A -> A . u` over
/// all given sedenions stacked.
pub fn action_matrix(points: &[&CdElement]) -> Result<Matrix<QuadScalar>> {
    let b = basis();
    let cols = par::try_map(b, |x| {
        let mut col = Vec::new();
        for u in points {
            col.extend(act_on_sedenion(x, u)?);
        }
        Ok::<_, Error>(col)
    })?;
    let rows = cols[0].len();
    Ok((0..rows)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect())
}

/// Kernel of `A -> A . u`: the isotropy subalgebra of `u`.
pub fn isotropy_subalgebra(u: &CdElement) -> Result<Vec<G2Vector>> {
    if u.is_zero() {
        return Err(Error::ZeroInput);
    }
    joint_isotropy(&[u])
}

/// Common isotropy of several sedenions under the diagonal action.
pub fn joint_isotropy(points: &[&CdElement]) -> Result<Vec<G2Vector>> {
    let m = action_matrix(points)?;
    Ok(kernel(&m, DIM)
        .into_iter()
        .map(|coords| G2Vector { coords })
        .collect())
}

/// Text document with the basis matrices (nonzero entries) and all
/// nonzero structure constants, scalars as `(1, sqrt2, sqrt3, sqrt6)`
/// coordinate tuples.
pub fn export_document() -> Result<String> {
    let sc = structure_constants()?;
    let mut out = String::new();
    out.push_str("# g2 basis X0..X13 as 8x8 skew matrices: X<i> (row,col) value\n");
    for (n, m) in basis().iter().enumerate() {
        for i in 0..8 {
            for j in 0..8 {
                if !m.get(i, j).is_zero() {
                    let _ = writeln!(out, "X{n} ({i},{j}) {}", m.get(i, j).to_tuple_string());
                }
            }
        }
    }
    out.push_str("# structure constants c_ijk = g_bi([X_i, X_j], X_k)\n");
    for i in 0..DIM {
        for j in 0..DIM {
            for (k, c) in sc.pair(i, j) {
                let _ = writeln!(out, "c {i} {j} {k} {}", c.to_tuple_string());
            }
        }
    }
    Ok(out)
}
