//! Floating-point shadow of the exact PSD verdict. Never used as proof.

use nalgebra::DMatrix;
use num_traits::ToPrimitive;

use crate::linalg::Matrix;
use crate::scalar::Rational;

/// Smallest eigenvalue of a symmetric rational matrix, in `f64`.
pub fn psd_check_numeric(m: &Matrix<Rational>) -> f64 {
    let n = m.len();
    if n == 0 {
        return 0.0;
    }
    let a = DMatrix::from_fn(n, n, |i, j| m[i][j].to_f64().unwrap_or(f64::NAN));
    a.symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::sos::{build_certificate, CertLabel};

    #[test]
    fn small_cases() {
        let id: Matrix<Rational> = (0..3)
            .map(|i| (0..3).map(|j| int((i == j) as i64)).collect())
            .collect();
        assert!((psd_check_numeric(&id) - 1.0).abs() < 1e-9);
        let d = vec![vec![int(1), int(0)], vec![int(0), int(-1)]];
        assert!((psd_check_numeric(&d) + 1.0).abs() < 1e-9);
    }

    #[test]
    fn certificates_have_no_negative_eigenvalues() {
        for label in CertLabel::ALL {
            let h = build_certificate(label).unwrap();
            assert!(psd_check_numeric(&h.to_dense()) >= -1e-9);
        }
    }
}
