//! Curvature of an invariant metric at one fixed value of `r`.
//!
//! The engine works in a basis `Y_a = s_a X_{i_a}` of the carrier: either
//! the X-basis itself (`s = 1`, Gram matrix `G` = metric) or the
//! orthonormal frame (`s_a = g_aa^{-1/2}`, `G = I`, diagonal metrics only).
//! Sums over an orthonormal basis are contractions with `G^{-1}`, so the
//! X-basis needs no square roots and works for every rational `r`.

use std::collections::BTreeMap;

use super::{Carrier, InvariantMetric};
use crate::error::{Error, Result};
use crate::g2::{self, G2Vector};
use crate::linalg::{inverse, Matrix};
use crate::par;
use crate::scalar::{quad_sqrt, rat, QuadScalar, Rational};

pub type Vector = Vec<QuadScalar>;
type Sparse = Vec<(usize, QuadScalar)>;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Frame {
    XBasis,
    Orthonormal,
}

pub struct Engine {
    carrier: Carrier,
    frame: Frame,
    n: usize,
    nh: usize,
    m_idx: Vec<usize>,
    scale: Vec<QuadScalar>,
    inv_scale: Vec<QuadScalar>,
    g: Matrix<QuadScalar>,
    ginv: Matrix<QuadScalar>,
    ginv_nz: Vec<(usize, usize, QuadScalar)>,
    // [a*n+b]: [Y_a, Y_b]_m in Y coordinates
    cm: Vec<Sparse>,
    // [a*n+b]: [Y_a, Y_b]_h in X_k coordinates, k over the isotropy
    ch: Vec<Sparse>,
    // [k*n+b]: [X_k, Y_b]_m in Y coordinates
    bm: Vec<Sparse>,
    // [a*n+b][d] = g([Y_a, Y_b]_m, Y_d)
    low: Vec<Vector>,
    // [a*n+b]: g(U(Y_a, Y_b), Y_f), sparse in f
    ulow: Vec<Sparse>,
    // [a*n+b]: U(Y_a, Y_b) in Y coordinates
    uup: Vec<Vector>,
    // [k*n+b][d] = g([X_k, Y_b]_m, Y_d)
    blow: Vec<Vector>,
}

fn q(x: Rational) -> QuadScalar {
    QuadScalar::from_rational(x)
}

fn sparse(v: &[QuadScalar]) -> Sparse {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

fn axpy(acc: &mut [QuadScalar], k: &QuadScalar, x: &[(usize, QuadScalar)]) {
    for (i, v) in x {
        acc[*i] += &(k * v);
    }
}

impl Engine {
    pub fn new(metric: &InvariantMetric, r: &Rational, frame: Frame) -> Result<Self> {
        let sc = g2::structure_constants()?;
        let carrier = metric.carrier;
        let m_idx: Vec<usize> = carrier.indices().collect();
        let h_idx: Vec<usize> = carrier.isotropy().collect();
        let (n, nh) = (m_idx.len(), h_idx.len());
        let gx = metric.evaluate(r);
        metric.check_positive_definite(r)?;

        let (scale, g) = match frame {
            Frame::XBasis => (vec![QuadScalar::one(); n], gx),
            Frame::Orthonormal => {
                if !metric.is_diagonal() {
                    return Err(Error::NotDiagonal);
                }
                let mut s = Vec::with_capacity(n);
                for (a, row) in gx.iter().enumerate() {
                    let d = row[a]
                        .to_rational()
                        .map_err(|_| Error::NotRational(row[a].to_string()))?;
                    s.push(quad_sqrt(&d)?.inverse()?);
                }
                let mut id = vec![vec![QuadScalar::zero(); n]; n];
                for (a, row) in id.iter_mut().enumerate() {
                    row[a] = QuadScalar::one();
                }
                (s, id)
            }
        };
        let inv_scale = scale
            .iter()
            .map(QuadScalar::inverse)
            .collect::<Result<Vec<_>>>()?;
        let ginv = inverse(&g)?;
        let ginv_nz = (0..n)
            .flat_map(|p| (0..n).map(move |q| (p, q)))
            .filter(|&(p, q)| !ginv[p][q].is_zero())
            .map(|(p, q)| (p, q, ginv[p][q].clone()))
            .collect();

        let pos = |i: usize| m_idx.iter().position(|&x| x == i);
        let hpos = |i: usize| h_idx.iter().position(|&x| x == i);
        let mut cm = Vec::with_capacity(n * n);
        let mut ch = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let sab = &scale[a] * &scale[b];
                let mut m_part = Sparse::new();
                let mut h_part = Sparse::new();
                for (k, c) in sc.pair(m_idx[a], m_idx[b]) {
                    if let Some(e) = pos(*k) {
                        m_part.push((e, &(c * &sab) * &inv_scale[e]));
                    } else if let Some(kk) = hpos(*k) {
                        h_part.push((kk, c * &sab));
                    }
                }
                cm.push(m_part);
                ch.push(h_part);
            }
        }
        let mut bm = Vec::with_capacity(nh * n);
        for &hk in &h_idx {
            for b in 0..n {
                bm.push(
                    sc.pair(hk, m_idx[b])
                        .iter()
                        .filter_map(|(k, c)| pos(*k).map(|e| (e, &(c * &scale[b]) * &inv_scale[e])))
                        .collect(),
                );
            }
        }

        let lower = |v: &Sparse| -> Vector {
            let mut out = vec![QuadScalar::zero(); n];
            for (e, c) in v {
                axpy(&mut out, c, &sparse(&g[*e]));
            }
            out
        };
        let low: Vec<Vector> = cm.iter().map(lower).collect();
        let blow: Vec<Vector> = bm.iter().map(lower).collect();
        let half = q(rat(1, 2));
        let mut ulow = Vec::with_capacity(n * n);
        let mut uup = Vec::with_capacity(n * n);
        for a in 0..n {
            for c in 0..n {
                let v: Vector = (0..n)
                    .map(|f| &(&low[f * n + a][c] + &low[f * n + c][a]) * &half)
                    .collect();
                let mut up = vec![QuadScalar::zero(); n];
                for (f, x) in sparse(&v) {
                    for (p, row) in ginv.iter().enumerate() {
                        if !row[f].is_zero() {
                            up[p] += &(&row[f] * &x);
                        }
                    }
                }
                ulow.push(sparse(&v));
                uup.push(up);
            }
        }

        Ok(Engine {
            carrier,
            frame,
            n,
            nh,
            m_idx,
            scale,
            inv_scale,
            g,
            ginv,
            ginv_nz,
            cm,
            ch,
            bm,
            low,
            ulow,
            uup,
            blow,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    /// `s_a` with `Y_a = s_a X_{i_a}`.
    pub fn scale(&self, a: usize) -> &QuadScalar {
        &self.scale[a]
    }

    pub fn gram(&self) -> &Matrix<QuadScalar> {
        &self.g
    }

    pub fn basis_vector(&self, a: usize) -> Vector {
        let mut v = vec![QuadScalar::zero(); self.n];
        v[a] = QuadScalar::one();
        v
    }

    /// Engine coordinates of an element of g2 lying in the carrier.
    pub fn coords_of(&self, x: &G2Vector) -> Result<Vector> {
        if x.support().any(|i| !self.m_idx.contains(&i)) {
            return Err(Error::OutsideSubspace(self.carrier.name()));
        }
        Ok((0..self.n)
            .map(|a| &x.coords[self.m_idx[a]] * &self.inv_scale[a])
            .collect())
    }

    pub fn to_g2(&self, v: &[QuadScalar]) -> G2Vector {
        let mut out = G2Vector::zero();
        for (a, c) in v.iter().enumerate() {
            out.coords[self.m_idx[a]] = c * &self.scale[a];
        }
        out
    }

    pub fn inner(&self, x: &[QuadScalar], y: &[QuadScalar]) -> QuadScalar {
        let mut acc = QuadScalar::zero();
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let gab = &self.g[a][b];
                if !gab.is_zero() {
                    acc += &(&(xa * gab) * yb);
                }
            }
        }
        acc
    }

    fn pairs<'a>(
        &self,
        x: &'a [QuadScalar],
        y: &'a [QuadScalar],
    ) -> impl Iterator<Item = (usize, usize, QuadScalar)> + 'a {
        let n = self.n;
        (0..n).filter(move |&a| !x[a].is_zero()).flat_map(move |a| {
            (0..n)
                .filter(move |&b| !y[b].is_zero())
                .map(move |b| (a, b, &x[a] * &y[b]))
        })
    }

    pub fn bracket_m(&self, x: &[QuadScalar], y: &[QuadScalar]) -> Vector {
        let mut out = vec![QuadScalar::zero(); self.n];
        for (a, b, k) in self.pairs(x, y) {
            axpy(&mut out, &k, &self.cm[a * self.n + b]);
        }
        out
    }

    /// Isotropy part of `[x, y]` in `X_k` coordinates.
    pub fn bracket_h(&self, x: &[QuadScalar], y: &[QuadScalar]) -> Vector {
        let mut out = vec![QuadScalar::zero(); self.nh];
        for (a, b, k) in self.pairs(x, y) {
            axpy(&mut out, &k, &self.ch[a * self.n + b]);
        }
        out
    }

    /// `[h, y]_m` for `h` in isotropy coordinates.
    pub fn act_h(&self, h: &[QuadScalar], y: &[QuadScalar]) -> Vector {
        let mut out = vec![QuadScalar::zero(); self.n];
        for (k, hk) in h.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                axpy(&mut out, &(hk * yb), &self.bm[k * self.n + b]);
            }
        }
        out
    }

    /// The symmetric tensor `U` of the reductive decomposition.
    pub fn u(&self, x: &[QuadScalar], y: &[QuadScalar]) -> Vector {
        let mut out = vec![QuadScalar::zero(); self.n];
        for (a, b, k) in self.pairs(x, y) {
            for (f, v) in self.uup[a * self.n + b].iter().enumerate() {
                if !v.is_zero() {
                    out[f] += &(&k * v);
                }
            }
        }
        out
    }

    /// `g(R_{X,Y} X, Y)` from the six-term formula.
    pub fn sectional_numerator(&self, x: &[QuadScalar], y: &[QuadScalar]) -> QuadScalar {
        let xy = self.bracket_m(x, y);
        let yx: Vector = xy.iter().map(|v| -v).collect();
        let uxy = self.u(x, y);
        let h = self.bracket_h(x, y);
        let terms = [
            &self.inner(&xy, &xy) * &q(rat(-3, 4)),
            &self.inner(&self.bracket_m(x, &xy), y) * &q(rat(-1, 2)),
            &self.inner(&self.bracket_m(y, &yx), x) * &q(rat(-1, 2)),
            self.inner(&uxy, &uxy),
            -self.inner(&self.u(x, x), &self.u(y, y)),
            self.inner(y, &self.act_h(&h, x)),
        ];
        terms.iter().fold(QuadScalar::zero(), |acc, t| &acc + t)
    }

    /// Coefficients of `N(X, Y) = g(R_{X,Y} X, Y)` as a quartic in the
    /// coordinates `x_0..x_{n-1}` of `X` and `x_n..x_{2n-1}` of `Y`, keyed
    /// by sorted variable indices.
    pub fn quartic_coefficients(&self) -> BTreeMap<[u8; 4], QuadScalar> {
        let n = self.n;
        let c34 = q(rat(-3, 4));
        let c12 = q(rat(-1, 2));
        let dot = |s: &Sparse, d: &Vector| {
            s.iter()
                .fold(QuadScalar::zero(), |acc, (e, v)| &acc + &(v * &d[*e]))
        };
        let parts = par::map_range(n, |a| {
            let mut local: BTreeMap<[u8; 4], QuadScalar> = BTreeMap::new();
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let mut t = QuadScalar::zero();
                        let s1 = dot(&self.cm[a * n + c], &self.low[b * n + d]);
                        t += &(&s1 * &c34);
                        let mut s23 = QuadScalar::zero();
                        for (e, v) in &self.cm[b * n + c] {
                            s23 += &(v * &self.low[a * n + e][d]);
                        }
                        for (e, v) in &self.cm[d * n + a] {
                            s23 += &(v * &self.low[c * n + e][b]);
                        }
                        t += &(&s23 * &c12);
                        t += &dot(&self.ulow[a * n + c], &self.uup[b * n + d]);
                        t -= &dot(&self.ulow[a * n + b], &self.uup[c * n + d]);
                        for (k, v) in &self.ch[a * n + c] {
                            t += &(v * &self.blow[k * n + b][d]);
                        }
                        if !t.is_zero() {
                            let mut key = [a as u8, b as u8, (c + n) as u8, (d + n) as u8];
                            key.sort_unstable();
                            let slot = local.entry(key).or_insert_with(QuadScalar::zero);
                            *slot += &t;
                        }
                    }
                }
            }
            local
        });
        let mut out: BTreeMap<[u8; 4], QuadScalar> = BTreeMap::new();
        for part in parts {
            for (k, v) in part {
                let slot = out.entry(k).or_insert_with(QuadScalar::zero);
                *slot += &v;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// `Z = sum_i U(X_i, X_i)` over an orthonormal basis.
    pub fn z(&self) -> Vector {
        let mut out = vec![QuadScalar::zero(); self.n];
        for (p, qq, w) in &self.ginv_nz {
            for (f, v) in self.uup[p * self.n + qq].iter().enumerate() {
                if !v.is_zero() {
                    out[f] += &(w * v);
                }
            }
        }
        out
    }

    /// `Ric(v, v)` from the reductive-space formula.
    pub fn ricci_quadratic(&self, v: &[QuadScalar], z: &[QuadScalar]) -> QuadScalar {
        let n = self.n;
        let mut acc = QuadScalar::zero();
        let ad: Vec<Vector> = (0..n)
            .map(|p| self.bracket_m(v, &self.basis_vector(p)))
            .collect();
        for (p, qq, w) in &self.ginv_nz {
            let ep = self.basis_vector(*p);
            let eq = self.basis_vector(*qq);
            let t1 = self.inner(&ad[*p], &ad[*qq]);
            let t2 = self.inner(&self.bracket_m(v, &ad[*p]), &eq);
            let hp = self.bracket_h(v, &ep);
            // [v, h]_m = -[h, v]_m
            let t3 = -self.inner(&self.act_h(&hp, v), &eq);
            let sum = &(&t1 + &t2) + &(&t3 + &t3);
            acc += &(w * &sum);
        }
        let mut total = &acc * &q(rat(-1, 2));
        // 1/4 sum_{i,j} g([X_i, X_j]_m, v)^2 = 1/4 tr(Ginv M Ginv M^T)
        let gv: Vector = (0..n)
            .map(|e| {
                (0..n).fold(QuadScalar::zero(), |s, d| {
                    if v[d].is_zero() {
                        s
                    } else {
                        &s + &(&self.g[e][d] * &v[d])
                    }
                })
            })
            .collect();
        let m: Matrix<QuadScalar> = (0..n)
            .map(|p| {
                (0..n)
                    .map(|qq| {
                        self.cm[p * n + qq]
                            .iter()
                            .fold(QuadScalar::zero(), |s, (e, c)| &s + &(c * &gv[*e]))
                    })
                    .collect()
            })
            .collect();
        let mut quarter = QuadScalar::zero();
        for (p, p2, w1) in &self.ginv_nz {
            for (qq, q2, w2) in &self.ginv_nz {
                let (a, b) = (&m[*p][*qq], &m[*p2][*q2]);
                if !a.is_zero() && !b.is_zero() {
                    quarter += &(&(w1 * w2) * &(a * b));
                }
            }
        }
        total += &(&quarter * &q(rat(1, 4)));
        total -= &self.inner(&self.bracket_m(z, v), v);
        total
    }

    /// Full Ricci matrix by polarization of [`Engine::ricci_quadratic`].
    pub fn ricci_polarized(&self) -> Matrix<QuadScalar> {
        let n = self.n;
        let z = self.z();
        let diag = par::map_range(n, |a| self.ricci_quadratic(&self.basis_vector(a), &z));
        let upper: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        let off = par::map(&upper, |&(a, b)| {
            let mut v = self.basis_vector(a);
            v[b] = QuadScalar::one();
            let qsum = self.ricci_quadratic(&v, &z);
            &(&(&qsum - &diag[a]) - &diag[b]) * &q(rat(1, 2))
        });
        let mut out = vec![vec![QuadScalar::zero(); n]; n];
        for (a, d) in diag.into_iter().enumerate() {
            out[a][a] = d;
        }
        for ((a, b), v) in upper.into_iter().zip(off) {
            out[a][b] = v.clone();
            out[b][a] = v;
        }
        out
    }

    /// Ricci of a left-invariant metric from the structure constants of an
    /// orthonormal frame.
    pub fn ricci_structure_constants(&self) -> Result<Matrix<QuadScalar>> {
        if self.frame != Frame::Orthonormal {
            return Err(Error::NotDiagonal);
        }
        if self.nh != 0 {
            return Err(Error::OutsideSubspace("g2"));
        }
        let n = self.n;
        let mut c = vec![QuadScalar::zero(); n * n * n];
        for a in 0..n {
            for b in 0..n {
                for (e, v) in &self.cm[a * n + b] {
                    c[(a * n + b) * n + e] = v.clone();
                }
            }
        }
        let at = |i: usize, j: usize, k: usize| &c[(i * n + j) * n + k];
        let half = q(rat(1, 2));
        let rows = par::map_range(n, |j| {
            (0..n)
                .map(|h| {
                    let mut s = QuadScalar::zero();
                    for i in 0..n {
                        for k in 0..n {
                            let ciki = at(i, k, i);
                            let mut t = QuadScalar::zero();
                            if !ciki.is_zero() {
                                t += &(ciki * &(at(k, j, h) + at(k, h, j)));
                                t += &(ciki * at(j, h, k));
                            }
                            t += &(&(at(i, k, h) * at(i, k, j)) * &half);
                            let cijk = at(i, j, k);
                            if !cijk.is_zero() {
                                t -= &(cijk * at(k, h, i));
                                t -= &(cijk * at(i, h, k));
                            }
                            s += &t;
                        }
                    }
                    &s * &half
                })
                .collect::<Vec<_>>()
        });
        Ok(rows)
    }

    /// Inverse of the frame Gram matrix.
    pub fn ginv(&self) -> &Matrix<QuadScalar> {
        &self.ginv
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley_dickson::ZeroDivisorPair;
    use crate::homogeneous::{bi_invariant_metric, gr_metric, metric_from_origin, Origin};
    use crate::scalar::int;

    fn z_metric() -> InvariantMetric {
        metric_from_origin(&Origin::Pair(
            ZeroDivisorPair::parse("(e4+e13,e6+e15)").unwrap(),
        ))
        .unwrap()
    }

    #[test]
    fn u_vanishes_for_bi_invariant_metric() {
        let e = Engine::new(
            &bi_invariant_metric(Carrier::FullG2, rat(1, 2)),
            &int(1),
            Frame::XBasis,
        )
        .unwrap();
        for a in 0..e.dim() {
            for b in 0..e.dim() {
                let u = e.u(&e.basis_vector(a), &e.basis_vector(b));
                assert!(u.iter().all(QuadScalar::is_zero), "U({a},{b})");
            }
        }
    }

    #[test]
    fn u_of_z_metric_is_off_diagonal() {
        // blockwise multiples of g_bi: U(e_a, e_a) = 0 but U itself survives
        let e = Engine::new(&z_metric(), &int(1), Frame::XBasis).unwrap();
        let mut nonzero = false;
        for a in 0..e.dim() {
            let ea = e.basis_vector(a);
            assert!(e.u(&ea, &ea).iter().all(QuadScalar::is_zero), "U({a},{a})");
            for b in a + 1..e.dim() {
                nonzero |= e.u(&ea, &e.basis_vector(b)).iter().any(|v| !v.is_zero());
            }
        }
        assert!(nonzero);
    }

    #[test]
    fn u_is_symmetric_for_gr() {
        let e = Engine::new(&gr_metric(), &rat(2, 3), Frame::XBasis).unwrap();
        let x: Vector = (0..11).map(|i| q(int(i as i64 - 4))).collect();
        let y: Vector = (0..11).map(|i| q(rat(1, i as i64 + 1))).collect();
        assert_eq!(e.u(&x, &y), e.u(&y, &x));
        assert!(e.u(&x, &x).iter().any(|v| !v.is_zero()));
    }

    #[test]
    fn frames_agree_on_sectional_numerator() {
        let g = gr_metric();
        let r = rat(4, 9);
        let ex = Engine::new(&g, &r, Frame::XBasis).unwrap();
        let ey = Engine::new(&g, &r, Frame::Orthonormal).unwrap();
        let x = G2Vector::basis(3).add(&G2Vector::basis(8).scale(&q(int(2))));
        let y = G2Vector::basis(5).add(&G2Vector::basis(12));
        let nx = ex.sectional_numerator(&ex.coords_of(&x).unwrap(), &ex.coords_of(&y).unwrap());
        let ny = ey.sectional_numerator(&ey.coords_of(&x).unwrap(), &ey.coords_of(&y).unwrap());
        assert_eq!(nx, ny);
        assert!(ex.coords_of(&G2Vector::basis(0)).is_err());
        assert_eq!(ey.to_g2(&ey.coords_of(&x).unwrap()), x);
    }

    #[test]
    fn quartic_tensor_matches_direct_formula() {
        let e = Engine::new(&gr_metric(), &rat(1, 4), Frame::Orthonormal).unwrap();
        let coeffs = e.quartic_coefficients();
        let x: Vector = (0..11).map(|i| q(int((i * 7 % 5) as i64 - 2))).collect();
        let y: Vector = (0..11).map(|i| q(rat((i % 3) as i64 + 1, 2))).collect();
        let vars: Vec<&QuadScalar> = x.iter().chain(&y).collect();
        let from_poly = coeffs.iter().fold(QuadScalar::zero(), |acc, (m, c)| {
            let mono = m.iter().fold(c.clone(), |p, &i| &p * vars[i as usize]);
            &acc + &mono
        });
        assert_eq!(from_poly, e.sectional_numerator(&x, &y));
    }

    #[test]
    fn ginv_inverts_gram() {
        let e = Engine::new(&gr_metric(), &rat(2, 3), Frame::XBasis).unwrap();
        assert_eq!(e.ginv()[2][2], q(rat(3, 2)));
        assert_eq!(e.ginv()[10][10], q(int(6)));
    }

    #[test]
    fn orthonormal_frame_needs_diagonal_metric() {
        let mut m = gr_metric();
        let c = m.matrix[0][0].clone();
        m.matrix[0][1] = &c * &q(rat(1, 10));
        m.matrix[1][0] = m.matrix[0][1].clone();
        assert!(matches!(
            Engine::new(&m, &int(1), Frame::Orthonormal),
            Err(Error::NotDiagonal)
        ));
        assert!(Engine::new(&m, &int(1), Frame::XBasis).is_ok());
    }
}
