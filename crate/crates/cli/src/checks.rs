//! Exact assertions shared by the subcommands, `reproduce` and the
//! acceptance target.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use sedgeo_core::cayley_dickson::{
    alternativity_counterexample, annihilator_basis, annihilator_dim_bound, associator,
    cd_multiply, format_element, parse_element, parse_table, standard_zero_divisors, CdElement,
    ZeroDivisorPair,
};
use sedgeo_core::g2::{
    self, bi_form, bracket, is_derivation, joint_isotropy, G2Vector, SubspaceLabel,
};
use sedgeo_core::golden::{self, GoldenFile};
use sedgeo_core::homogeneous::{
    einstein_locus, gr_metric, killing_check, metric_from_origin, natural_reductive_scalings,
    plane_sweep, ricci_left_invariant, ricci_reductive, sectional_curvature_plane,
    sectional_polynomial, z_vector, CurvatureReport, EinsteinLocus, InvariantMetric, Origin,
    SAMPLE_R,
};
use sedgeo_core::scalar::{format_rational, int, rat, QuadScalar, RAffine, Rational};
use sedgeo_core::sos::{
    build_certificate, golden_sectional_polynomial, gram_expand, nonneg_interval_certify,
    psd_check_numeric, psd_exact, reexpand, sos_decomposition, CertLabel, GramCertificate,
    MonomialVector, PsdVerdict, QuarticForm,
};
use sedgeo_core::{Error, Result};

/// Verdict of one check with a short summary and exact details.
#[derive(Clone, Debug)]
pub struct Check {
    pub pass: bool,
    pub text: String,
    pub details: Value,
}

/// Accumulates named sub-assertions.
#[derive(Default)]
struct Ledger {
    failures: Vec<String>,
    text: String,
}

impl Ledger {
    fn assert(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        let _ = writeln!(self.text, "{} {what}", if ok { "ok  " } else { "FAIL" });
        if !ok {
            self.failures.push(what);
        }
    }

    fn finish(self, details: Value) -> Check {
        let mut details = details;
        if let Value::Object(m) = &mut details {
            m.insert("failures".into(), json!(self.failures));
        }
        Check {
            pass: self.failures.is_empty(),
            text: self.text,
            details,
        }
    }
}

pub const Z_ORIGIN: &str = "(e4+e13,e6+e15)";
pub const ZD_ORIGIN: &str = "e1+e10";

pub fn z_metric() -> Result<InvariantMetric> {
    metric_from_origin(&Origin::Pair(ZeroDivisorPair::parse(Z_ORIGIN)?))
}

pub fn zd_metric() -> Result<InvariantMetric> {
    metric_from_origin(&Origin::Element(parse_element(ZD_ORIGIN, 4)?))
}

fn q(r: Rational) -> QuadScalar {
    QuadScalar::from_rational(r)
}

fn diag_is(m: &[Vec<QuadScalar>], want: &[Rational]) -> bool {
    m.len() == want.len()
        && m.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, v)| {
                *v == if i == j {
                    q(want[i].clone())
                } else {
                    QuadScalar::zero()
                }
            })
        })
}

fn repeat(blocks: &[(Rational, usize)]) -> Vec<Rational> {
    blocks
        .iter()
        .flat_map(|(v, n)| std::iter::repeat_n(v.clone(), *n))
        .collect()
}

/// Golden zero-divisor table against the enumeration, as sets.
pub fn table_reproduction() -> Result<Check> {
    let golden = golden::load(GoldenFile::Table1)?;
    let table: BTreeSet<String> = parse_table(&golden.text)?
        .iter()
        .map(|p| p.to_string())
        .collect();
    let computed = standard_zero_divisors();
    let ours: BTreeSet<String> = computed.iter().map(|p| p.to_string()).collect();
    let missing: Vec<&String> = table.difference(&ours).collect();
    let extra: Vec<&String> = ours.difference(&table).collect();
    let matched = table.intersection(&ours).count();
    let mut l = Ledger::default();
    l.assert(
        missing.is_empty() && extra.is_empty() && matched == 84,
        format!("{matched}/84 matched"),
    );
    let valid = computed.iter().all(|p| {
        cd_multiply(&p.u, &p.v).is_ok_and(|x| x.is_zero())
            && p.u.norm_sq() == int(2)
            && p.v.norm_sq() == int(2)
    });
    l.assert(valid, "uv = 0 and |u|^2 = |v|^2 = 2 for every pair");
    for m in &missing {
        let _ = writeln!(l.text, "missing {m}");
    }
    for e in &extra {
        let _ = writeln!(l.text, "unexpected {e}");
    }
    Ok(l.finish(json!({
        "matched": matched,
        "expected": 84,
        "missing": missing,
        "unexpected": extra,
        "checksum_matches": golden.matches_embedded(),
    })))
}

fn random_element(level: u32, rng: &mut ChaCha8Rng) -> CdElement {
    let coords = (0..1usize << level)
        .map(|_| rat(rng.gen_range(-4..=4), rng.gen_range(1..=3)))
        .collect();
    CdElement::new(level, coords).expect("valid level")
}

/// Flexibility, power associativity, alternativity and annihilator sizes.
pub fn algebra_properties() -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut l = Ledger::default();
    let (mut flexible, mut power) = (true, true);
    for _ in 0..100 {
        let x = random_element(4, &mut rng);
        let y = random_element(4, &mut rng);
        flexible &= associator(&x, &y, &x)?.is_zero();
        let x2 = cd_multiply(&x, &x)?;
        power &= associator(&x, &x, &x)?.is_zero()
            && cd_multiply(&x2, &x2)? == cd_multiply(&cd_multiply(&x2, &x)?, &x)?;
    }
    l.assert(flexible, "flexible on 100 random sedenions");
    l.assert(power, "power associative on 100 random sedenions");
    let cx = alternativity_counterexample(4)?;
    let cx_text = cx
        .as_ref()
        .map(|(x, y)| format!("x = {}, y = {}", format_element(x), format_element(y)));
    l.assert(
        cx.as_ref()
            .is_some_and(|(x, y)| !associator(x, x, y).unwrap().is_zero()),
        format!(
            "alternativity fails at level 4: {}",
            cx_text.as_deref().unwrap_or("none")
        ),
    );
    let mut alternative = true;
    for _ in 0..100 {
        let x = random_element(3, &mut rng);
        let y = random_element(3, &mut rng);
        alternative &= associator(&x, &x, &y)?.is_zero() && associator(&y, &x, &x)?.is_zero();
    }
    l.assert(alternative, "alternative on 100 random octonion pairs");
    let bound = annihilator_dim_bound(4);
    let mut dims = BTreeSet::new();
    for p in standard_zero_divisors() {
        for u in [&p.u, &p.v] {
            dims.insert(annihilator_basis(u)?.len());
        }
    }
    let ok = dims.iter().all(|&d| (d == 0 || d == 4) && d <= bound);
    l.assert(
        ok,
        format!("dim ann(u) in {{0, 4}} and <= {bound} over the standard table: {dims:?}"),
    );
    Ok(l.finish(json!({
        "counterexample": cx_text,
        "annihilator_dims": dims,
        "bound": bound,
    })))
}

/// Derivations, orthonormality, closure and `[k0, m0] = 0`.
pub fn g2_certification() -> Result<Check> {
    let basis = g2::basis();
    let mut l = Ledger::default();
    let derivations = basis.iter().filter(|x| is_derivation(x)).count();
    l.assert(
        derivations == 14,
        format!("{derivations}/14 basis matrices are derivations"),
    );
    let ortho =
        (0..14).all(|i| (0..14).all(|j| bi_form(&basis[i], &basis[j]) == q(int((i == j) as i64))));
    l.assert(ortho, "basis is g_bi-orthonormal");
    let closed = g2::structure_constants().is_ok();
    l.assert(closed, "brackets close on the basis");
    let commute = (0..3).all(|i| (3..6).all(|j| bracket(&basis[i], &basis[j]).is_zero()));
    l.assert(commute, "[k0, m0] = 0");
    Ok(l.finish(json!({ "derivations": derivations })))
}

/// Pair metric at the origin and its naturally reductive shape.
pub fn origin_metric() -> Result<Check> {
    let m = z_metric()?;
    let mut l = Ledger::default();
    let want = repeat(&[(int(1), 3), (rat(1, 3), 3), (rat(1, 2), 8)]);
    let evaluated = m.evaluate(&int(1));
    l.assert(
        diag_is(&evaluated, &want),
        "metric = diag(1 x3, 1/3 x3, 1/2 x8)",
    );
    let s = natural_reductive_scalings(&m);
    let blocks = s
        .as_ref()
        .map(|b| b.iter().map(|v| v.to_string()).collect::<Vec<_>>());
    l.assert(
        s == Some([q(int(1)), q(rat(1, 3)), q(rat(1, 2))]),
        match &blocks {
            Some(b) => format!("naturally reductive with blocks ({})", b.join(", ")),
            None => "naturally reductive".into(),
        },
    );
    Ok(l.finish(json!({ "origin": Z_ORIGIN, "metric": m.to_text(), "blocks": blocks })))
}

fn ricci_x_text(r: &CurvatureReport) -> Vec<String> {
    r.ricci_x
        .iter()
        .flat_map(|m| (0..m.len()).map(move |i| m[i][i].to_string()))
        .collect()
}

/// Both Ricci pipelines on the pair metric.
pub fn ricci_z() -> Result<Check> {
    let m = z_metric()?;
    let a = ricci_reductive(&m)?;
    let b = ricci_left_invariant(&m)?;
    let want = repeat(&[(rat(5, 2), 3), (rat(29, 54), 3), (rat(5, 6), 8)]);
    let mut l = Ledger::default();
    l.assert(
        a.ricci_x.as_ref().is_some_and(|x| diag_is(x, &want)),
        "reductive pipeline: Ric = diag(5/2 x3, 29/54 x3, 5/6 x8) in the X basis",
    );
    l.assert(
        b.ricci_x.as_ref().is_some_and(|x| diag_is(x, &want)),
        "left-invariant pipeline: same diagonal",
    );
    l.assert(
        a.ricci == b.ricci && a.ricci_x == b.ricci_x,
        "pipelines agree entry by entry",
    );
    Ok(l.finish(json!({
        "ricci_x": ricci_x_text(&a),
        "scal": a.scalar.to_string(),
    })))
}

/// Orbit metric at `u0` and its isotropy.
pub fn zd_origin_metric() -> Result<Check> {
    let m = zd_metric()?;
    let mut l = Ledger::default();
    let want = repeat(&[
        (rat(1, 3), 2),
        (rat(2, 3), 1),
        (rat(1, 2), 4),
        (rat(1, 6), 4),
    ]);
    l.assert(
        diag_is(&m.evaluate(&int(1)), &want),
        "metric on m = diag(1/3, 1/3, 2/3, 1/2 x4, 1/6 x4)",
    );
    let u0 = parse_element(ZD_ORIGIN, 4)?;
    let iso = joint_isotropy(&[&u0])?;
    l.assert(
        iso.len() == 3 && iso.iter().all(|v| v.lies_in(SubspaceLabel::K0)),
        format!("isotropy = span{{X0, X1, X2}} (dimension {})", iso.len()),
    );
    Ok(l.finish(json!({ "origin": ZD_ORIGIN, "metric": m.to_text(), "isotropy_dim": iso.len() })))
}

fn affine(c: i64, cd: i64, r: i64, rd: i64) -> RAffine {
    RAffine::new(rat(c, cd), rat(r, rd))
}

/// Ricci, scalar curvature, Einstein locus and plane curvatures of `g_r`.
pub fn gr_curvature() -> Result<Check> {
    let g = gr_metric();
    let rep = ricci_reductive(&g)?;
    let n = rep.ricci.len();
    let mut l = Ledger::default();
    let ricci_ok = (0..n).all(|a| {
        (0..n).all(|b| {
            let want = match (a == b, a) {
                (false, _) => RAffine::zero(),
                (true, 2) => affine(0, 1, 15, 2),
                (true, _) => affine(5, 1, -3, 2),
            };
            rep.ricci[a][b] == want
        })
    });
    l.assert(
        ricci_ok,
        "Ric = 15r/2 on Y5 and 5 - 3r/2 elsewhere, off-diagonal 0",
    );
    l.assert(
        rep.scalar == affine(50, 1, -15, 2),
        format!("scal = {}", rep.scalar),
    );
    let locus = einstein_locus(&rep);
    let samples_ok = SAMPLE_R
        .iter()
        .all(|&(a, b)| !rep.is_einstein_at(&rat(a, b)));
    l.assert(
        locus == EinsteinLocus::At(rat(5, 9)) && rep.is_einstein_at(&rat(5, 9)) && samples_ok,
        format!("Einstein exactly at {locus}"),
    );
    let mut z_zero = true;
    for &(a, b) in &SAMPLE_R {
        z_zero &= z_vector(&g, &rat(a, b))?.is_zero();
    }
    l.assert(z_zero, "Z = 0 at every sampled r");
    let k34 = sectional_curvature_plane(3, 4, &g)?;
    l.assert(k34 == affine(1, 1, -9, 4), format!("kappa(pi_34) = {k34}"));
    let sweep = plane_sweep(&g, &rat(2, 3))?;
    let bad: Vec<String> = sweep
        .iter()
        .filter(|p| {
            let s = p.kappa.signum();
            if (p.i, p.j) == (3, 4) {
                s >= 0
            } else {
                s < 0
            }
        })
        .map(|p| format!("({}, {}) = {}", p.i, p.j, p.kappa))
        .collect();
    l.assert(
        bad.is_empty() && sweep.len() == 55,
        "g_{2/3}: kappa(pi_34) < 0 and kappa(pi_ij) >= 0 for the other 54 planes",
    );
    Ok(l.finish(json!({
        "ricci_diagonal": rep.ricci_diagonal().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "scal": rep.scalar.to_string(),
        "einstein": locus.to_string(),
        "kappa_34": k34.to_string(),
        "sign_violations": bad,
    })))
}

/// `ad(X5)` is skew for every `g_r`; `ad(X3)`, `ad(X4)` are not.
pub fn killing_criterion() -> Result<Check> {
    let g = gr_metric();
    let mut l = Ledger::default();
    let x5 = killing_check(&G2Vector::basis(5), &g)?;
    l.assert(x5, "ad(X5)|m is skew for all r");
    for i in [3, 4] {
        let k = killing_check(&G2Vector::basis(i), &g)?;
        l.assert(!k, format!("ad(X{i})|m is not skew"));
    }
    Ok(l.finish(json!({ "killing": [5] })))
}

/// Computed `F_r` against the golden polynomial.
pub fn polynomial_match(f: &QuarticForm) -> Result<Check> {
    let golden = golden_sectional_polynomial()?;
    let mut l = Ledger::default();
    let diff = golden.check_equal(f).err();
    l.assert(
        diff.is_none(),
        match &diff {
            None => format!("{} monomials matched", f.len()),
            Some(e) => e.to_string(),
        },
    );
    l.assert(f.len() == 285, format!("{} nonzero monomials", f.len()));
    l.assert(
        f.at(&rat(1, 7)).len() == 285,
        "285 monomials survive at generic r",
    );
    l.assert(f.has_cross_support(), "support i <= j <= 10 < k <= l <= 21");
    Ok(l.finish(json!({
        "monomials": f.len(),
        "golden_monomials": golden.len(),
        "first_difference": diff.map(|e| e.to_string()),
    })))
}

pub fn polynomial_golden_match() -> Result<Check> {
    polynomial_match(&sectional_polynomial(&gr_metric())?)
}

/// PSD test and Gram identity for one certificate.
pub fn verify_certificate(h: &GramCertificate, f: &QuarticForm) -> Result<Check> {
    let label = h.label;
    let mut l = Ledger::default();
    let verdict = psd_exact(&h.to_dense())?;
    let verdict_json = match &verdict {
        PsdVerdict::Psd { pivots } => json!({ "psd": true, "rank": pivots.len() }),
        PsdVerdict::NotPsd { witness, value } => json!({
            "psd": false,
            "value": format_rational(value),
            "witness": witness
                .iter()
                .enumerate()
                .filter(|(_, w)| **w != int(0))
                .map(|(i, w)| json!([i, format_rational(w)]))
                .collect::<Vec<_>>(),
        }),
    };
    l.assert(
        verdict.is_psd(),
        match verdict.rank() {
            Some(r) => format!("H_{label} is PSD (rank {r})"),
            None => format!("H_{label} is not PSD"),
        },
    );
    let target = f.at(&label.r());
    let diff = target.check_equal(&gram_expand(h)).err();
    l.assert(
        diff.is_none(),
        match &diff {
            None => format!(
                "x^T H x = F at r = {} ({} monomials)",
                format_rational(&label.r()),
                target.len()
            ),
            Some(e) => format!("Gram identity: {e}"),
        },
    );
    Ok(l.finish(json!({
        "certificate": label.name(),
        "nnz": h.nnz(),
        "verdict": verdict_json,
        "first_mismatch": diff.map(|e| e.to_string()),
    })))
}

/// Exact PSD, Gram identities, decompositions and the numeric shadow.
pub fn sos_verification() -> Result<Check> {
    let f = golden_sectional_polynomial()?;
    let mut l = Ledger::default();
    let mut per = Vec::new();
    for label in CertLabel::ALL {
        let h = build_certificate(label)?;
        let c = verify_certificate(&h, &f)?;
        l.assert(c.pass, format!("H_{label}: PSD and x^T H x = F"));
        let squares = sos_decomposition(&h);
        let reexpanded = squares
            .as_ref()
            .is_ok_and(|s| reexpand(s) == gram_expand(&h));
        l.assert(
            reexpanded,
            format!("H_{label}: weighted squares re-expand exactly"),
        );
        let lambda = psd_check_numeric(&h.to_dense());
        l.assert(
            lambda >= -1e-9,
            format!("H_{label}: smallest eigenvalue {lambda:.3e} >= -1e-9"),
        );
        per.push(json!({
            "certificate": label.name(),
            "squares": squares.map(|s| s.len()).ok(),
            "min_eigenvalue": lambda,
            "check": c.details,
        }));
    }
    Ok(l.finish(json!({ "certificates": per })))
}

/// Adds one to the first stored entry; returns the touched monomial.
pub fn perturb(h: &mut GramCertificate) -> [u8; 4] {
    let (i, j, v) = h
        .upper()
        .next()
        .map(|(i, j, v)| (i, j, v.clone()))
        .expect("nonempty");
    h.set(i, j, v + int(1));
    MonomialVector::standard().product(i, j)
}

/// End-to-end interval certificate plus a fault-injected copy.
pub fn interval_certificate() -> Result<Check> {
    let f = sectional_polynomial(&gr_metric())?;
    let h0 = build_certificate(CertLabel::R0)?;
    let h49 = build_certificate(CertLabel::R49)?;
    let mut l = Ledger::default();
    let cert = nonneg_interval_certify(&f, &h0, &h49);
    l.assert(cert.is_ok(), "F_r >= 0 for r in [0, 4/9]");
    let mut bad = h49.clone();
    let touched = perturb(&mut bad);
    let fault = nonneg_interval_certify(&f, &h0, &bad);
    let localized =
        matches!(&fault, Err(Error::IdentityMismatch { monomial, .. }) if *monomial == touched);
    l.assert(
        localized,
        format!(
            "perturbed certificate fails at monomial {touched:?}: {}",
            fault
                .as_ref()
                .err()
                .map(|e| e.to_string())
                .unwrap_or_else(|| "accepted".into())
        ),
    );
    Ok(l.finish(json!({
        "certificate": cert.as_ref().ok().map(|c| json!({
            "rank_r0": c.rank_r0,
            "rank_r49": c.rank_r49,
            "monomials_r0": c.monomials_r0,
            "monomials_r49": c.monomials_r49,
        })),
        "error": cert.err().map(|e| e.to_string()),
        "fault_injection": fault.err().map(|e| e.to_string()),
    })))
}
