use sedgeo_core::cayley_dickson::{format_table, parse_table, standard_zero_divisors};
use sedgeo_core::golden::{self, GoldenFile};
use sedgeo_core::homogeneous::{gr_metric, sectional_polynomial};
use sedgeo_core::scalar::rat;
use sedgeo_core::sos::{
    build_certificate, golden_sectional_polynomial, gram_expand, nonneg_interval_certify, CertLabel,
};

#[test]
fn table_matches_golden() {
    let text = golden::load(GoldenFile::Table1).unwrap().text;
    assert_eq!(format_table(&standard_zero_divisors()), text);
    assert_eq!(parse_table(&text).unwrap(), standard_zero_divisors());
}

#[test]
fn computed_quartic_matches_golden() {
    let f = sectional_polynomial(&gr_metric()).unwrap();
    assert_eq!(f.len(), 285);
    assert!(f.has_cross_support());
    let g = golden_sectional_polynomial().unwrap();
    g.check_equal(&f).unwrap();
    assert_eq!(f.to_text(), golden::load(GoldenFile::FrPoly).unwrap().text);
}

#[test]
fn certificates_expand_to_endpoints() {
    let f = golden_sectional_polynomial().unwrap();
    for label in CertLabel::ALL {
        let h = build_certificate(label).unwrap();
        f.at(&label.r()).check_equal(&gram_expand(&h)).unwrap();
    }
    let c = nonneg_interval_certify(
        &f,
        &build_certificate(CertLabel::R0).unwrap(),
        &build_certificate(CertLabel::R49).unwrap(),
    )
    .unwrap();
    assert!(c.rank_r0 > 0 && c.rank_r49 > 0);
}

#[test]
fn certificates_do_not_fit_other_values() {
    let f = golden_sectional_polynomial().unwrap();
    let h0 = build_certificate(CertLabel::R0).unwrap();
    assert!(f.at(&rat(1, 9)).check_equal(&gram_expand(&h0)).is_err());
}
