//! G2-invariant metrics on the zero-divisor manifolds and their curvature.
//!
//! Two carriers are supported: left-invariant metrics on all of g2 (the
//! pair manifold, trivial isotropy) and Ad(K0)-invariant metrics on
//! `m = m0 + m1 + m2` (the single-element manifold, isotropy `k0`).

mod curvature;
mod engine;

pub use curvature::{
    einstein_locus, plane_sweep, ricci_left_invariant, ricci_reductive, sectional_curvature,
    sectional_curvature_plane, sectional_numerator, sectional_numerator_symbolic,
    sectional_polynomial, symbolic, u_tensor, z_vector, CurvatureReport, EinsteinLocus,
    PlaneCurvature, SAMPLE_R,
};
pub use engine::{Engine, Frame};

use std::fmt::Write as _;
use std::ops::Range;

use crate::cayley_dickson::{annihilator_basis, CdElement, ZeroDivisorPair};
use crate::error::{Error, Result};
use crate::g2::{self, act_on_sedenion, joint_isotropy, G2Vector, SubspaceLabel, DIM};
use crate::linalg::{positive_definite, Matrix};
use crate::par;
use crate::scalar::{int, rat, Affine, QuadScalar, Rational};

/// Metric coefficient: affine in `r` over Q(sqrt2, sqrt3).
pub type QAffine = Affine<QuadScalar>;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Carrier {
    /// All of g2; isotropy is trivial.
    FullG2,
    /// `m0 + m1 + m2`, the complement of the isotropy `k0`.
    ReductiveM,
}

impl Carrier {
    /// Indices of the X-basis spanning the carrier.
    pub fn indices(self) -> Range<usize> {
        match self {
            Carrier::FullG2 => 0..DIM,
            Carrier::ReductiveM => 3..DIM,
        }
    }

    /// Indices of the isotropy algebra.
    pub fn isotropy(self) -> Range<usize> {
        match self {
            Carrier::FullG2 => 0..0,
            Carrier::ReductiveM => 0..3,
        }
    }

    pub fn dim(self) -> usize {
        self.indices().len()
    }

    pub fn name(self) -> &'static str {
        match self {
            Carrier::FullG2 => "g2",
            Carrier::ReductiveM => "m",
        }
    }
}

/// Symmetric bilinear form on the carrier, in X-basis coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InvariantMetric {
    pub carrier: Carrier,
    /// `matrix[a][b] = g(X_{i_a}, X_{i_b})` with `i_a` running over the
    /// carrier's indices.
    pub matrix: Vec<Vec<QAffine>>,
}

impl InvariantMetric {
    pub fn new(carrier: Carrier, matrix: Vec<Vec<QAffine>>) -> Result<Self> {
        let n = carrier.dim();
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(Error::BadLength(matrix.len()));
        }
        for a in 0..n {
            for b in a + 1..n {
                if matrix[a][b] != matrix[b][a] {
                    return Err(Error::NotSymmetric(a, b));
                }
            }
        }
        Ok(InvariantMetric { carrier, matrix })
    }

    pub fn from_constant(carrier: Carrier, m: Matrix<QuadScalar>) -> Result<Self> {
        Self::new(
            carrier,
            m.into_iter()
                .map(|row| row.into_iter().map(QAffine::constant).collect())
                .collect(),
        )
    }

    /// Diagonal metric from one value per carrier index.
    pub fn diagonal(carrier: Carrier, diag: Vec<QAffine>) -> Result<Self> {
        let n = diag.len();
        let mut m = vec![vec![QAffine::zero(); n]; n];
        for (a, d) in diag.into_iter().enumerate() {
            m[a][a] = d;
        }
        Self::new(carrier, m)
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_constant(&self) -> bool {
        self.matrix.iter().flatten().all(QAffine::is_constant)
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.dim();
        (0..n).all(|a| (0..n).all(|b| a == b || self.matrix[a][b].is_zero()))
    }

    pub fn diagonal_entries(&self) -> Vec<QAffine> {
        (0..self.dim()).map(|a| self.matrix[a][a].clone()).collect()
    }

    /// Entry for X-basis indices `i, j` (which must lie in the carrier).
    pub fn entry(&self, i: usize, j: usize) -> &QAffine {
        let o = self.carrier.indices().start;
        &self.matrix[i - o][j - o]
    }

    pub fn evaluate(&self, r: &Rational) -> Matrix<QuadScalar> {
        let r = QuadScalar::from_rational(r.clone());
        self.matrix
            .iter()
            .map(|row| row.iter().map(|c| c.eval(&r)).collect())
            .collect()
    }

    /// Leading-principal-minor test at `r`.
    pub fn check_positive_definite(&self, r: &Rational) -> Result<()> {
        positive_definite(&self.evaluate(r)).map_err(Error::DegenerateMetric)
    }

    /// One line per nonzero entry, `g(X_i, X_j) = value`, upper triangle.
    pub fn to_text(&self) -> String {
        let idx: Vec<usize> = self.carrier.indices().collect();
        let mut out = String::new();
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate().skip(a) {
                let c = &self.matrix[a][b];
                if !c.is_zero() {
                    let _ = writeln!(out, "g(X{i}, X{j}) = {}", format_qaffine(c));
                }
            }
        }
        out
    }
}

/// Short form: constants print as the scalar, affine values as `(a) + (b) r`.
pub fn format_qaffine(c: &QAffine) -> String {
    if c.is_constant() {
        c.const_part.to_string()
    } else {
        c.to_string()
    }
}

/// Where a metric is built from.
#[derive(Clone, Debug)]
pub enum Origin {
    Pair(ZeroDivisorPair),
    Element(CdElement),
}

/// Gram matrix of the 14 action vectors `X_i . p`, stacked over `points`.
fn action_gram(points: &[&CdElement]) -> Result<Matrix<QuadScalar>> {
    let vecs = par::try_map(g2::basis(), |x| {
        let mut v = Vec::new();
        for p in points {
            v.extend(act_on_sedenion(x, p)?);
        }
        Ok::<_, Error>(v)
    })?;
    let dot = |a: &[QuadScalar], b: &[QuadScalar]| {
        a.iter()
            .zip(b)
            .filter(|(x, y)| !x.is_zero() && !y.is_zero())
            .fold(QuadScalar::zero(), |acc, (x, y)| &acc + &(x * y))
    };
    Ok((0..DIM)
        .map(|i| (0..DIM).map(|j| dot(&vecs[i], &vecs[j])).collect())
        .collect())
}

/// Induced metric of the orbit through `origin`.
///
/// A pair gives a left-invariant metric on g2 and must be nondegenerate.
/// A single element must have isotropy exactly `k0`; its metric lives on
/// `m`.
pub fn metric_from_origin(origin: &Origin) -> Result<InvariantMetric> {
    match origin {
        Origin::Pair(p) => {
            let gram = action_gram(&[&p.u, &p.v])?;
            let m = InvariantMetric::from_constant(Carrier::FullG2, gram)?;
            m.check_positive_definite(&int(1))?;
            Ok(m)
        }
        Origin::Element(u) => {
            if u.level() != 4 {
                return Err(Error::LevelMismatch {
                    left: u.level(),
                    right: 4,
                });
            }
            if u.norm_sq() != int(2) || annihilator_basis(u)?.is_empty() {
                return Err(Error::InvalidOrigin(crate::cayley_dickson::format_element(
                    u,
                )));
            }
            let iso = joint_isotropy(&[u])?;
            if iso.len() != 3 || !iso.iter().all(|v| v.lies_in(SubspaceLabel::K0)) {
                return Err(Error::IsotropyMismatch(iso.len()));
            }
            let gram = action_gram(&[u])?;
            debug_assert!(gram[..3].iter().flatten().all(QuadScalar::is_zero));
            let sub: Matrix<QuadScalar> = gram[3..].iter().map(|row| row[3..].to_vec()).collect();
            let m = InvariantMetric::from_constant(Carrier::ReductiveM, sub)?;
            m.check_positive_definite(&int(1))?;
            Ok(m)
        }
    }
}

/// The family `g_r = 1/3 (X3 X3 + X4 X4) + r X5 X5 + 1/2 sum_m1 + 1/6 sum_m2`.
pub fn gr_metric() -> InvariantMetric {
    let c = |q: Rational| QAffine::constant(QuadScalar::from_rational(q));
    let mut diag = vec![c(rat(1, 3)), c(rat(1, 3)), QAffine::r()];
    diag.extend((0..4).map(|_| c(rat(1, 2))));
    diag.extend((0..4).map(|_| c(rat(1, 6))));
    InvariantMetric::diagonal(Carrier::ReductiveM, diag).expect("well formed")
}

/// Metric given by a multiple of `g_bi` on the carrier.
pub fn bi_invariant_metric(carrier: Carrier, scale: Rational) -> InvariantMetric {
    let d = QAffine::constant(QuadScalar::from_rational(scale));
    InvariantMetric::diagonal(carrier, vec![d; carrier.dim()]).expect("well formed")
}

/// Block scalings `(alpha_k0, alpha_m0, alpha)` when the metric has the
/// naturally reductive shape for `k = k0 + m0`: a multiple of `g_bi` on each
/// simple ideal `k0`, `m0` (so(3) has trivial centre) and on `m1 + m2`.
pub fn natural_reductive_scalings(metric: &InvariantMetric) -> Option<[QuadScalar; 3]> {
    if metric.carrier != Carrier::FullG2 || !metric.is_constant() || !metric.is_diagonal() {
        return None;
    }
    let d: Vec<QuadScalar> = metric
        .diagonal_entries()
        .into_iter()
        .map(|c| c.const_part)
        .collect();
    let block = |r: Range<usize>| {
        let v = &d[r.start];
        (d[r].iter().all(|x| x == v) && v.signum() > 0).then(|| v.clone())
    };
    Some([block(0..3)?, block(3..6)?, block(6..14)?])
}

pub fn natural_reductivity_check(metric: &InvariantMetric) -> bool {
    natural_reductive_scalings(metric).is_some()
}

/// Matrix of `Z -> [Y, Z]_carrier` on the carrier in X coordinates.
fn ad_on_carrier(y: &G2Vector, carrier: Carrier) -> Result<Matrix<QuadScalar>> {
    let sc = g2::structure_constants()?;
    let idx: Vec<usize> = carrier.indices().collect();
    let mut a = vec![vec![QuadScalar::zero(); idx.len()]; idx.len()];
    for (col, &j) in idx.iter().enumerate() {
        let b = sc.bracket(y, &G2Vector::basis(j));
        for (row, &i) in idx.iter().enumerate() {
            a[row][col] = b.coords[i].clone();
        }
    }
    Ok(a)
}

/// Whether `ad(Y)` projected to the carrier is skew for the metric, for
/// every value of `r`.
pub fn ad_skew_check(y: &G2Vector, metric: &InvariantMetric) -> Result<bool> {
    let a = ad_on_carrier(y, metric.carrier)?;
    let g = &metric.matrix;
    let n = metric.dim();
    // (G A + A^T G)_{pq} = sum_s g_ps a_sq + a_sp g_sq
    for p in 0..n {
        for q in p..n {
            let mut acc = QAffine::zero();
            for s in 0..n {
                if !a[s][q].is_zero() {
                    acc = &acc + &(&g[p][s] * &a[s][q]);
                }
                if !a[s][p].is_zero() {
                    acc = &acc + &(&g[s][q] * &a[s][p]);
                }
            }
            if !acc.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether the vector field induced by `Y in m0` is Killing for the metric.
pub fn killing_check(y: &G2Vector, metric: &InvariantMetric) -> Result<bool> {
    if !y.lies_in(SubspaceLabel::M0) {
        return Err(Error::OutsideSubspace("m0"));
    }
    ad_skew_check(y, metric)
}

/// Ad-invariance of the (possibly degenerate) 14x14 Gram form of an orbit
/// point under its own isotropy algebra. Returns the isotropy dimension.
pub fn ad_invariance_check(points: &[&CdElement]) -> Result<(bool, usize)> {
    let gram = action_gram(points)?;
    let iso = joint_isotropy(points)?;
    let form = InvariantMetric::from_constant(Carrier::FullG2, gram)?;
    for k in &iso {
        if !ad_skew_check(k, &form)? {
            return Ok((false, iso.len()));
        }
    }
    Ok((true, iso.len()))
}

/// Per-origin summary of the scan over a zero-divisor table.
#[derive(Clone, Debug)]
pub struct OriginScan {
    pub pair: ZeroDivisorPair,
    pub positive_definite: bool,
    pub diagonal: bool,
    pub naturally_reductive: bool,
    pub element_isotropy_dim: usize,
    pub ad_invariant: bool,
}

/// Builds the pair metric for every origin (in parallel) and checks
/// definiteness, shape and isotropy invariance of the first component.
pub fn origin_scan(pairs: &[ZeroDivisorPair]) -> Result<Vec<OriginScan>> {
    par::try_map(pairs, |p| {
        let gram = action_gram(&[&p.u, &p.v])?;
        let pd = positive_definite(&gram).is_ok();
        let metric = InvariantMetric::from_constant(Carrier::FullG2, gram)?;
        let (ad_ok, iso_dim) = ad_invariance_check(&[&p.u])?;
        Ok(OriginScan {
            pair: p.clone(),
            positive_definite: pd,
            diagonal: metric.is_diagonal(),
            naturally_reductive: natural_reductivity_check(&metric),
            element_isotropy_dim: iso_dim,
            ad_invariant: ad_ok,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley_dickson::standard_zero_divisors;

    fn q(r: Rational) -> QuadScalar {
        QuadScalar::from_rational(r)
    }

    fn z_metric() -> InvariantMetric {
        metric_from_origin(&Origin::Pair(
            ZeroDivisorPair::parse("(e4+e13,e6+e15)").unwrap(),
        ))
        .unwrap()
    }

    #[test]
    fn pair_origin_metric_is_block_diagonal() {
        let m = z_metric();
        assert!(m.is_diagonal());
        let d: Vec<_> = m
            .diagonal_entries()
            .into_iter()
            .map(|c| c.const_part)
            .collect();
        let mut want = vec![q(int(1)); 3];
        want.extend(vec![q(rat(1, 3)); 3]);
        want.extend(vec![q(rat(1, 2)); 8]);
        assert_eq!(d, want);
        assert_eq!(
            natural_reductive_scalings(&m).unwrap(),
            [q(int(1)), q(rat(1, 3)), q(rat(1, 2))]
        );
    }

    #[test]
    fn element_origin_metric_matches_gr_at_two_thirds() {
        let u0 = CdElement::two_term(4, 1, 1, 10);
        let m = metric_from_origin(&Origin::Element(u0)).unwrap();
        assert_eq!(m.carrier, Carrier::ReductiveM);
        assert_eq!(m.evaluate(&int(0)), gr_metric().evaluate(&rat(2, 3)));
        assert_eq!(gr_metric().entry(5, 5), &QAffine::r());
        assert_eq!(gr_metric().entry(10, 10), &QAffine::constant(q(rat(1, 6))));
    }

    #[test]
    fn element_origins_are_validated() {
        let not_zd = CdElement::two_term(4, 1, 1, 2);
        assert!(matches!(
            metric_from_origin(&Origin::Element(not_zd)),
            Err(Error::InvalidOrigin(_))
        ));
        // a zero divisor whose isotropy is a different su(2)
        let other = CdElement::two_term(4, 4, 1, 13);
        assert!(matches!(
            metric_from_origin(&Origin::Element(other)),
            Err(Error::IsotropyMismatch(3))
        ));
    }

    #[test]
    fn natural_reductivity_block_test() {
        assert!(natural_reductivity_check(&bi_invariant_metric(
            Carrier::FullG2,
            int(1)
        )));
        let mut diag: Vec<QAffine> = [1, 1, 1, 2, 2, 2, 3, 3, 3, 3, 5, 5, 5, 5]
            .iter()
            .map(|&v| QAffine::constant(q(int(v))))
            .collect();
        let m = InvariantMetric::diagonal(Carrier::FullG2, diag.clone()).unwrap();
        assert!(!natural_reductivity_check(&m));
        diag[13] = diag[6].clone();
        let d6 = diag[6].clone();
        diag[10..13].fill(d6);
        let m = InvariantMetric::diagonal(Carrier::FullG2, diag).unwrap();
        assert!(natural_reductivity_check(&m));
        assert!(!natural_reductivity_check(&gr_metric()));
    }

    #[test]
    fn killing_fields_of_gr() {
        let g = gr_metric();
        assert!(killing_check(&G2Vector::basis(5), &g).unwrap());
        assert!(!killing_check(&G2Vector::basis(3), &g).unwrap());
        assert!(!killing_check(&G2Vector::basis(4), &g).unwrap());
        assert_eq!(
            killing_check(&G2Vector::basis(7), &g),
            Err(Error::OutsideSubspace("m0"))
        );
        for k in 0..3 {
            assert!(ad_skew_check(&G2Vector::basis(k), &g).unwrap());
        }
    }

    #[test]
    fn killing_fields_at_bi_invariant_point() {
        // at a multiple of g_bi every ad is skew
        let g = bi_invariant_metric(Carrier::ReductiveM, rat(1, 2));
        for i in 3..6 {
            assert!(killing_check(&G2Vector::basis(i), &g).unwrap());
        }
    }

    #[test]
    fn scan_over_standard_table() {
        let scan = origin_scan(&standard_zero_divisors()).unwrap();
        assert_eq!(scan.len(), 84);
        assert!(scan.iter().all(|s| s.positive_definite));
        assert!(scan
            .iter()
            .all(|s| s.ad_invariant && s.element_isotropy_dim == 3));
        let z = scan
            .iter()
            .find(|s| s.pair.to_string() == "(e4+e13,e6+e15)")
            .unwrap();
        assert!(z.diagonal && z.naturally_reductive);
    }

    #[test]
    fn metric_constructor_validates() {
        let one = QAffine::constant(QuadScalar::one());
        let mut m = vec![vec![QAffine::zero(); 11]; 11];
        m[0][1] = one;
        assert_eq!(
            InvariantMetric::new(Carrier::ReductiveM, m),
            Err(Error::NotSymmetric(0, 1))
        );
        assert!(InvariantMetric::new(Carrier::FullG2, vec![]).is_err());
        let degenerate = InvariantMetric::diagonal(
            Carrier::ReductiveM,
            vec![QAffine::constant(QuadScalar::zero()); 11],
        )
        .unwrap();
        assert_eq!(
            degenerate.check_positive_definite(&int(1)),
            Err(Error::DegenerateMetric(1))
        );
    }

    #[test]
    fn metric_text() {
        let t = gr_metric().to_text();
        assert!(t.starts_with("g(X3, X3) = 1/3\n"));
        assert!(t.contains("g(X5, X5) = (0) + (1) r\n"));
    }
}
