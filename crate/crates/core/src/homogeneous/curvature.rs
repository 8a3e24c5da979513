use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::Zero;

use super::engine::{Engine, Frame};
use super::{Carrier, InvariantMetric};
use crate::error::{Error, Result};
use crate::g2::G2Vector;
use crate::linalg::Matrix;
use crate::par;
use crate::scalar::{format_rational, int, rat, QuadScalar, RAffine, Rational};
use crate::sos::QuarticForm;

/// Sample values of `r`; each is a rational square so the orthonormal
/// frame stays inside Q(sqrt2, sqrt3).
pub const SAMPLE_R: [(i64, i64); 3] = [(1, 4), (4, 9), (1, 1)];

fn sample_points() -> Vec<Rational> {
    SAMPLE_R.iter().map(|&(n, d)| rat(n, d)).collect()
}

fn rational(x: &QuadScalar) -> Result<Rational> {
    x.to_rational()
        .map_err(|_| Error::NotRational(x.to_string()))
}

fn fit(points: &[Rational], values: &[Rational], what: impl Fn() -> String) -> Result<RAffine> {
    let samples: Vec<_> = points.iter().cloned().zip(values.iter().cloned()).collect();
    RAffine::interpolate(&samples).map_err(|e| match e {
        Error::NonAffineInR(s) => Error::NonAffineInR(format!("{}: {s}", what())),
        other => other,
    })
}

/// Runs `f` on engines for the metric and rebuilds each output entry as an
/// affine function of `r`: fitted through two samples and certified by the
/// third. Constant metrics are evaluated once.
pub fn symbolic<F>(metric: &InvariantMetric, frame: Frame, f: F) -> Result<Vec<RAffine>>
where
    F: Fn(&Engine) -> Result<Vec<QuadScalar>> + Sync + Send,
{
    if metric.is_constant() {
        let e = Engine::new(metric, &int(1), frame)?;
        return f(&e)?
            .iter()
            .map(|v| rational(v).map(RAffine::constant))
            .collect();
    }
    let rs = sample_points();
    let values = par::try_map(&rs, |r| {
        let e = Engine::new(metric, r, frame)?;
        f(&e)?.iter().map(rational).collect::<Result<Vec<_>>>()
    })?;
    (0..values[0].len())
        .map(|i| {
            let v: Vec<Rational> = values.iter().map(|s| s[i].clone()).collect();
            fit(&rs, &v, || format!("entry {i}"))
        })
        .collect()
}

/// Ricci tensor, scalar curvature and Einstein deviation in the
/// orthonormal frame `Y_a = g_aa^{-1/2} X_a`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureReport {
    pub carrier: Carrier,
    pub ricci: Vec<Vec<RAffine>>,
    pub scalar: RAffine,
    /// `Ric - (scal / n) g`; vanishes exactly where the metric is Einstein.
    pub einstein_deviation: Vec<Vec<RAffine>>,
    /// Ricci in the X-basis, for metrics independent of `r`.
    pub ricci_x: Option<Matrix<QuadScalar>>,
}

impl CurvatureReport {
    fn from_ricci(metric: &InvariantMetric, ricci: Vec<Vec<RAffine>>) -> Result<Self> {
        let n = ricci.len();
        for a in 0..n {
            for b in a + 1..n {
                if ricci[a][b] != ricci[b][a] {
                    return Err(Error::NotSymmetric(a, b));
                }
            }
        }
        let scalar = (0..n).fold(RAffine::zero(), |acc, a| &acc + &ricci[a][a]);
        let mean = scalar.scale(&rat(1, n as i64));
        let einstein_deviation = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        if a == b {
                            &ricci[a][b] - &mean
                        } else {
                            ricci[a][b].clone()
                        }
                    })
                    .collect()
            })
            .collect();
        let ricci_x = if metric.is_constant() {
            let e = Engine::new(metric, &int(1), Frame::Orthonormal)?;
            Some(
                (0..n)
                    .map(|a| {
                        (0..n)
                            .map(|b| {
                                let s = e.scale(a) * e.scale(b);
                                &QuadScalar::from_rational(ricci[a][b].const_part.clone())
                                    * &s.inverse().expect("nonzero scale")
                            })
                            .collect()
                    })
                    .collect(),
            )
        } else {
            None
        };
        Ok(CurvatureReport {
            carrier: metric.carrier,
            ricci,
            scalar,
            einstein_deviation,
            ricci_x,
        })
    }

    pub fn ricci_diagonal(&self) -> Vec<RAffine> {
        (0..self.ricci.len())
            .map(|a| self.ricci[a][a].clone())
            .collect()
    }

    pub fn is_einstein_at(&self, r: &Rational) -> bool {
        self.einstein_deviation
            .iter()
            .flatten()
            .all(|c| c.eval(r).is_zero())
    }

    /// Ricci evaluated at `r` in the orthonormal frame.
    pub fn ricci_at(&self, r: &Rational) -> Matrix<Rational> {
        self.ricci
            .iter()
            .map(|row| row.iter().map(|c| c.eval(r)).collect())
            .collect()
    }

    pub fn to_text(&self) -> String {
        let off = self.carrier.indices().start;
        let mut out = String::new();
        let _ = writeln!(out, "carrier {}", self.carrier.name());
        for (a, row) in self.ricci.iter().enumerate() {
            for (b, c) in row.iter().enumerate().skip(a) {
                if !c.is_zero() {
                    let _ = writeln!(out, "Ric(Y{}, Y{}) = {c}", a + off, b + off);
                }
            }
        }
        let _ = writeln!(out, "scal = {}", self.scalar);
        if let Some(rx) = &self.ricci_x {
            for (a, row) in rx.iter().enumerate() {
                for (b, c) in row.iter().enumerate().skip(a) {
                    if !c.is_zero() {
                        let _ = writeln!(out, "Ric(X{}, X{}) = {c}", a + off, b + off);
                    }
                }
            }
        }
        out
    }
}

fn unflatten(v: Vec<RAffine>, n: usize) -> Vec<Vec<RAffine>> {
    v.chunks(n).map(<[RAffine]>::to_vec).collect()
}

/// Ricci from the reductive-space formula, assembled by polarization.
pub fn ricci_reductive(metric: &InvariantMetric) -> Result<CurvatureReport> {
    let n = metric.dim();
    let flat = symbolic(metric, Frame::Orthonormal, |e| {
        Ok(e.ricci_polarized().into_iter().flatten().collect())
    })?;
    CurvatureReport::from_ricci(metric, unflatten(flat, n))
}

/// Ricci of a left-invariant metric on g2 from the structure constants of
/// its orthonormal frame.
pub fn ricci_left_invariant(metric: &InvariantMetric) -> Result<CurvatureReport> {
    if !metric.is_diagonal() {
        return Err(Error::NotDiagonal);
    }
    if metric.carrier != Carrier::FullG2 {
        return Err(Error::OutsideSubspace("g2"));
    }
    let n = metric.dim();
    let flat = symbolic(metric, Frame::Orthonormal, |e| {
        Ok(e.ricci_structure_constants()?
            .into_iter()
            .flatten()
            .collect())
    })?;
    CurvatureReport::from_ricci(metric, unflatten(flat, n))
}

/// Where the Einstein deviation vanishes as a function of `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EinsteinLocus {
    Always,
    Never,
    At(Rational),
}

pub fn einstein_locus(report: &CurvatureReport) -> EinsteinLocus {
    let mut root: Option<Rational> = None;
    for c in report.einstein_deviation.iter().flatten() {
        if c.is_zero() {
            continue;
        }
        if c.r_part.is_zero() {
            return EinsteinLocus::Never;
        }
        let z = -(&c.const_part / &c.r_part);
        match &root {
            None => root = Some(z),
            Some(x) if *x == z => {}
            Some(_) => return EinsteinLocus::Never,
        }
    }
    root.map_or(EinsteinLocus::Always, EinsteinLocus::At)
}

/// `U(X, Y)` at `r`, returned in the X-basis.
pub fn u_tensor(
    x: &G2Vector,
    y: &G2Vector,
    metric: &InvariantMetric,
    r: &Rational,
) -> Result<G2Vector> {
    let e = Engine::new(metric, r, Frame::XBasis)?;
    Ok(e.to_g2(&e.u(&e.coords_of(x)?, &e.coords_of(y)?)))
}

/// `Z = sum U(X_i, X_i)` at `r`, in the X-basis.
pub fn z_vector(metric: &InvariantMetric, r: &Rational) -> Result<G2Vector> {
    let e = Engine::new(metric, r, Frame::XBasis)?;
    Ok(e.to_g2(&e.z()))
}

/// `g(R_{X,Y} X, Y)` at a fixed `r` for X-basis vectors.
pub fn sectional_numerator(
    x: &G2Vector,
    y: &G2Vector,
    metric: &InvariantMetric,
    r: &Rational,
) -> Result<QuadScalar> {
    let e = Engine::new(metric, r, Frame::XBasis)?;
    Ok(e.sectional_numerator(&e.coords_of(x)?, &e.coords_of(y)?))
}

/// The numerator as an affine function of `r`; fails with `NonAffineInR`
/// when the plane's X-basis scaling makes it nonlinear.
pub fn sectional_numerator_symbolic(
    x: &G2Vector,
    y: &G2Vector,
    metric: &InvariantMetric,
) -> Result<RAffine> {
    let v = symbolic(metric, Frame::XBasis, |e| {
        Ok(vec![
            e.sectional_numerator(&e.coords_of(x)?, &e.coords_of(y)?)
        ])
    })?;
    Ok(v.into_iter().next().expect("one value"))
}

fn normalized(e: &Engine, x: &[QuadScalar], y: &[QuadScalar]) -> Result<QuadScalar> {
    let area = &(&e.inner(x, x) * &e.inner(y, y))
        - &{
            let xy = e.inner(x, y);
            &xy * &xy
        };
    if area.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(&e.sectional_numerator(x, y) * &area.inverse()?)
}

/// Sectional curvature of the plane spanned by `X, Y` at `r`.
pub fn sectional_curvature(
    x: &G2Vector,
    y: &G2Vector,
    metric: &InvariantMetric,
    r: &Rational,
) -> Result<QuadScalar> {
    let e = Engine::new(metric, r, Frame::XBasis)?;
    normalized(&e, &e.coords_of(x)?, &e.coords_of(y)?)
}

/// Curvature of the coordinate plane `span(X_i, X_j)` as a function of `r`.
pub fn sectional_curvature_plane(i: usize, j: usize, metric: &InvariantMetric) -> Result<RAffine> {
    let (x, y) = (G2Vector::basis(i), G2Vector::basis(j));
    let v = symbolic(metric, Frame::XBasis, |e| {
        Ok(vec![normalized(e, &e.coords_of(&x)?, &e.coords_of(&y)?)?])
    })?;
    Ok(v.into_iter().next().expect("one value"))
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlaneCurvature {
    pub i: usize,
    pub j: usize,
    pub kappa: QuadScalar,
}

/// Curvature of every coordinate plane of the carrier at `r`.
pub fn plane_sweep(metric: &InvariantMetric, r: &Rational) -> Result<Vec<PlaneCurvature>> {
    let e = Engine::new(metric, r, Frame::XBasis)?;
    let idx: Vec<usize> = metric.carrier.indices().collect();
    let planes: Vec<(usize, usize)> = (0..idx.len())
        .flat_map(|a| (a + 1..idx.len()).map(move |b| (a, b)))
        .collect();
    par::try_map(&planes, |&(a, b)| {
        Ok(PlaneCurvature {
            i: idx[a],
            j: idx[b],
            kappa: normalized(&e, &e.basis_vector(a), &e.basis_vector(b))?,
        })
    })
}

/// `F_r(x, y) = g_r(R_{X,Y} X, Y)` with `X = sum x_a Y_a`, `Y = sum
/// x_{a+11} Y_a` over the orthonormal frame of `m`, coefficients affine in
/// `r`.
pub fn sectional_polynomial(metric: &InvariantMetric) -> Result<QuarticForm> {
    if metric.carrier != Carrier::ReductiveM {
        return Err(Error::OutsideSubspace("m"));
    }
    let rs = if metric.is_constant() {
        vec![int(1)]
    } else {
        sample_points()
    };
    let maps = par::try_map(&rs, |r| {
        let e = Engine::new(metric, r, Frame::Orthonormal)?;
        e.quartic_coefficients()
            .into_iter()
            .map(|(k, v)| Ok((k, rational(&v)?)))
            .collect::<Result<std::collections::BTreeMap<_, _>>>()
    })?;
    let keys: BTreeSet<[u8; 4]> = maps.iter().flat_map(|m| m.keys().copied()).collect();
    let mut form = QuarticForm::new();
    for k in keys {
        let vals: Vec<Rational> = maps
            .iter()
            .map(|m| m.get(&k).cloned().unwrap_or_else(Rational::zero))
            .collect();
        let c = if rs.len() == 1 {
            RAffine::constant(vals[0].clone())
        } else {
            fit(&rs, &vals, || format!("monomial {k:?}"))?
        };
        form.add_term(k, &c);
    }
    Ok(form)
}

impl std::fmt::Display for EinsteinLocus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EinsteinLocus::Always => f.write_str("all r"),
            EinsteinLocus::Never => f.write_str("never"),
            EinsteinLocus::At(r) => write!(f, "r = {}", format_rational(r)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley_dickson::ZeroDivisorPair;
    use crate::homogeneous::{bi_invariant_metric, gr_metric, metric_from_origin, Origin};

    fn z_metric() -> InvariantMetric {
        metric_from_origin(&Origin::Pair(
            ZeroDivisorPair::parse("(e4+e13,e6+e15)").unwrap(),
        ))
        .unwrap()
    }

    fn c(q: Rational) -> RAffine {
        RAffine::constant(q)
    }

    #[test]
    fn gr_ricci_is_affine_and_matches_closed_form() {
        let rep = ricci_reductive(&gr_metric()).unwrap();
        let d = rep.ricci_diagonal();
        for (a, v) in d.iter().enumerate() {
            let want = if a == 2 {
                RAffine::new(int(0), rat(15, 2))
            } else {
                RAffine::new(int(5), rat(-3, 2))
            };
            assert_eq!(*v, want, "Y{}", a + 3);
        }
        assert_eq!(rep.scalar, RAffine::new(int(50), rat(-15, 2)));
        assert_eq!(einstein_locus(&rep), EinsteinLocus::At(rat(5, 9)));
        assert!(rep.ricci_x.is_none());
        for a in 0..11 {
            for b in 0..11 {
                if a != b {
                    assert!(rep.ricci[a][b].is_zero());
                }
            }
        }
    }

    #[test]
    fn z_metric_ricci_two_ways() {
        let m = z_metric();
        let a = ricci_reductive(&m).unwrap();
        let b = ricci_left_invariant(&m).unwrap();
        assert_eq!(a, b);
        let mut want = vec![c(rat(5, 2)); 3];
        want.extend(vec![c(rat(29, 18)); 3]);
        want.extend(vec![c(rat(5, 3)); 8]);
        assert_eq!(a.ricci_diagonal(), want);
        let rx = a.ricci_x.clone().unwrap();
        assert_eq!(rx[4][4], QuadScalar::from_rational(rat(29, 54)));
        assert_eq!(rx[9][9], QuadScalar::from_rational(rat(5, 6)));
        assert_eq!(einstein_locus(&a), EinsteinLocus::Never);
    }

    #[test]
    fn bi_invariant_is_einstein() {
        let rep = ricci_reductive(&bi_invariant_metric(Carrier::FullG2, int(1))).unwrap();
        assert_eq!(einstein_locus(&rep), EinsteinLocus::Always);
        // Ric = -B/4 = g_bi for the bi-invariant metric
        assert!(rep.ricci_diagonal().iter().all(|v| *v == c(int(1))));
        let half = ricci_reductive(&bi_invariant_metric(Carrier::FullG2, rat(1, 2))).unwrap();
        assert!(half.ricci_diagonal().iter().all(|v| *v == c(int(2))));
    }

    #[test]
    fn mean_curvature_vector_vanishes() {
        for r in sample_points().into_iter().chain([rat(2, 3), rat(5, 9)]) {
            assert!(z_vector(&gr_metric(), &r).unwrap().is_zero());
        }
        assert!(z_vector(&z_metric(), &int(1)).unwrap().is_zero());
    }
}
