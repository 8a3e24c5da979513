//! Quartic forms, Gram certificates and exact sum-of-squares checks.

mod certificate;
mod gram;
mod monomials;
mod numeric;
mod psd;
mod quartic;

pub use certificate::{build_certificate, parse_index_sets, CertLabel, GramCertificate, IndexSet};
pub use gram::{
    gram_expand, has_negative_diagonal, nonneg_interval_certify, reexpand, sos_decomposition,
    support_guard, IntervalCertificate, WeightedSquare,
};
pub use monomials::{MonomialVector, LEN};
pub use numeric::psd_check_numeric;
pub use psd::{check_symmetric, psd_exact, quadratic_value, reconstruct, Pivot, PsdVerdict};
pub use quartic::{
    is_cross_pattern, sort_monomial, Monomial, QuarticForm, RationalQuartic, NVARS, SPLIT,
};

use crate::error::Result;
use crate::golden::{self, GoldenFile};

/// The curvature quartic as recorded in the golden data.
pub fn golden_sectional_polynomial() -> Result<QuarticForm> {
    QuarticForm::parse(&golden::load(GoldenFile::FrPoly)?.text)
}
