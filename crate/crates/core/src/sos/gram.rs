use num_traits::{Signed, Zero};

use super::certificate::{CertLabel, GramCertificate};
use super::monomials::{MonomialVector, LEN};
use super::psd::{psd_exact, PsdVerdict};
use super::quartic::{QuarticForm, RationalQuartic};
use crate::error::{Error, Result};
use crate::scalar::{int, Rational};

/// `x^T H x` as a quartic in `x_0 .. x_21`.
pub fn gram_expand(h: &GramCertificate) -> RationalQuartic {
    let mv = MonomialVector::standard();
    let mut f = RationalQuartic::new();
    let two = int(2);
    for (i, j, v) in h.upper() {
        let c = if i == j { v.clone() } else { v * &two };
        f.add_term(mv.product(i, j), &c);
    }
    f
}

/// `weight * (sum_i c_i m_i)^2` over the monomial vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightedSquare {
    pub weight: Rational,
    pub terms: Vec<(usize, Rational)>,
}

impl WeightedSquare {
    pub fn to_text(&self) -> String {
        let mv = MonomialVector::standard();
        let body: Vec<String> = self
            .terms
            .iter()
            .map(|(i, c)| format!("({c})*{}", mv.label(*i)))
            .collect();
        format!("{} * ({})^2", self.weight, body.join(" + "))
    }
}

/// Weighted squares from the LDL^T pivots of `H`.
pub fn sos_decomposition(h: &GramCertificate) -> Result<Vec<WeightedSquare>> {
    match psd_exact(&h.to_dense())? {
        PsdVerdict::NotPsd { .. } => Err(Error::NotPsd),
        PsdVerdict::Psd { pivots } => Ok(pivots
            .into_iter()
            .map(|p| WeightedSquare {
                weight: p.d,
                terms: p
                    .l
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect(),
            })
            .collect()),
    }
}

/// Expands `sum weight * (linear form)^2` back into a quartic.
pub fn reexpand(squares: &[WeightedSquare]) -> RationalQuartic {
    let mv = MonomialVector::standard();
    let mut f = RationalQuartic::new();
    for s in squares {
        for (a, (i, ci)) in s.terms.iter().enumerate() {
            for (j, cj) in &s.terms[a..] {
                let mut c = &s.weight * ci * cj;
                if i != j {
                    c *= int(2);
                }
                f.add_term(mv.product(*i, *j), &c);
            }
        }
    }
    f
}

/// Outcome of the interval certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalCertificate {
    pub monomials_r0: usize,
    pub monomials_r49: usize,
    pub rank_r0: usize,
    pub rank_r49: usize,
}

/// Certifies `F_r >= 0` on `[0, 4/9]`: the endpoint forms equal
/// `x^T H x` for PSD `H`, and `F_r` is affine in `r`, so every
/// intermediate form is a convex combination of nonnegative ones.
pub fn nonneg_interval_certify(
    f: &QuarticForm,
    h0: &GramCertificate,
    h49: &GramCertificate,
) -> Result<IntervalCertificate> {
    let mut ranks = Vec::new();
    let mut sizes = Vec::new();
    for (h, want) in [(h0, CertLabel::R0), (h49, CertLabel::R49)] {
        if h.label != want {
            return Err(Error::Golden(format!(
                "expected the {want} certificate, got {}",
                h.label
            )));
        }
        let target = f.at(&want.r());
        target.check_equal(&gram_expand(h))?;
        match psd_exact(&h.to_dense())? {
            PsdVerdict::Psd { pivots } => ranks.push(pivots.len()),
            PsdVerdict::NotPsd { .. } => return Err(Error::NotPsd),
        }
        sizes.push(target.len());
    }
    Ok(IntervalCertificate {
        monomials_r0: sizes[0],
        monomials_r49: sizes[1],
        rank_r0: ranks[0],
        rank_r49: ranks[1],
    })
}

/// Every expanded monomial keeps the cross shape `i <= j <= 10 < k <= l`.
pub fn support_guard(h: &GramCertificate) -> bool {
    gram_expand(h).has_cross_support()
}

/// Smallest diagonal entry sign check used for quick rejection.
pub fn has_negative_diagonal(h: &GramCertificate) -> bool {
    (0..LEN).any(|i| h.get(i, i).is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::sos::build_certificate;

    #[test]
    fn zero_matrix_expands_to_zero() {
        assert!(gram_expand(&GramCertificate::zero(CertLabel::R0)).is_empty());
    }

    #[test]
    fn identity_decomposes_into_unit_squares() {
        let mut id = GramCertificate::zero(CertLabel::R0);
        for i in 0..LEN {
            id.set(i, i, int(1));
        }
        let sq = sos_decomposition(&id).unwrap();
        assert_eq!(sq.len(), LEN);
        assert!(sq.iter().all(|s| s.weight == int(1) && s.terms.len() == 1));
        assert_eq!(reexpand(&sq), gram_expand(&id));
    }

    #[test]
    fn certificates_are_psd_and_decompose() {
        for label in CertLabel::ALL {
            let h = build_certificate(label).unwrap();
            assert!(!has_negative_diagonal(&h));
            let sq = sos_decomposition(&h).unwrap();
            assert!(sq.iter().all(|s| s.weight.is_positive()));
            assert_eq!(reexpand(&sq), gram_expand(&h));
            assert!(support_guard(&h));
        }
    }

    #[test]
    fn expansion_sizes() {
        assert_eq!(
            gram_expand(&build_certificate(CertLabel::R0).unwrap()).len(),
            247
        );
        assert_eq!(
            gram_expand(&build_certificate(CertLabel::R49).unwrap()).len(),
            282
        );
    }

    #[test]
    fn not_psd_is_reported() {
        let mut h = GramCertificate::zero(CertLabel::R0);
        h.set(0, 0, int(1));
        h.set(1, 1, rat(-1, 2));
        assert_eq!(sos_decomposition(&h), Err(Error::NotPsd));
    }

    #[test]
    fn zero_form_with_zero_certificates() {
        let c = nonneg_interval_certify(
            &QuarticForm::new(),
            &GramCertificate::zero(CertLabel::R0),
            &GramCertificate::zero(CertLabel::R49),
        )
        .unwrap();
        assert_eq!(c.rank_r0, 0);
        assert!(nonneg_interval_certify(
            &QuarticForm::new(),
            &GramCertificate::zero(CertLabel::R49),
            &GramCertificate::zero(CertLabel::R49),
        )
        .is_err());
    }
}
