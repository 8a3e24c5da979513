use std::fmt;

use num_traits::Zero;

use super::{cd_multiply, parse_pair, CdElement};
use crate::error::{Error, Result};
use crate::linalg::{kernel, Matrix};
use crate::par;
use crate::scalar::{int, Rational};

/// A normalized pair `(u, v)` with `uv = 0` and `|u|^2 = |v|^2 = 2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ZeroDivisorPair {
    pub u: CdElement,
    pub v: CdElement,
}

impl ZeroDivisorPair {
    pub fn new(u: CdElement, v: CdElement) -> Result<Self> {
        if !is_zero_divisor_pair(&u, &v)? {
            return Err(Error::InvalidOrigin(format!(
                "({},{})",
                super::format_element(&u),
                super::format_element(&v)
            )));
        }
        Ok(ZeroDivisorPair { u, v })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let (u, v) = parse_pair(s, 4)?;
        Self::new(u, v)
    }
}

impl fmt::Display for ZeroDivisorPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{})",
            super::format_element(&self.u),
            super::format_element(&self.v)
        )
    }
}

/// Matrix of `L_u(x) = ux` in the canonical basis (column `j` is `u e_j`).
pub fn left_multiplication_matrix(u: &CdElement) -> Matrix<Rational> {
    let n = u.dim();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for j in 0..n {
        let col = cd_multiply(u, &CdElement::basis(u.level(), j)).expect("same level");
        for (i, c) in col.coords().iter().enumerate() {
            m[i][j] = c.clone();
        }
    }
    m
}

/// Exact basis of `ann u = ker L_u`.
pub fn annihilator_basis(u: &CdElement) -> Result<Vec<CdElement>> {
    if u.is_zero() {
        return Err(Error::ZeroInput);
    }
    let m = left_multiplication_matrix(u);
    kernel(&m, u.dim())
        .into_iter()
        .map(|v| CdElement::new_capped(u.level(), v, u.level()))
        .collect()
}

pub fn is_zero_divisor_pair(u: &CdElement, v: &CdElement) -> Result<bool> {
    let p = cd_multiply(u, v)?;
    Ok(p.is_zero() && u.norm_sq() == int(2) && v.norm_sq() == int(2))
}

/// Whether `(a, b)` with octonions `a, b` is a sedenion zero divisor,
/// decided from the annihilator of the embedded element.
pub fn characterization_check(a: &CdElement, b: &CdElement) -> Result<bool> {
    for x in [a, b] {
        if x.level() != 3 {
            return Err(Error::LevelMismatch {
                left: x.level(),
                right: 3,
            });
        }
    }
    let s = CdElement::join(a, b)?;
    if s.is_zero() {
        return Ok(false);
    }
    Ok(!annihilator_basis(&s)?.is_empty())
}

/// Octonion-side criterion: both imaginary, equal nonzero norms,
/// orthogonal.
pub fn octonion_pair_criterion(a: &CdElement, b: &CdElement) -> Result<bool> {
    let ab = a.inner(b)?;
    Ok(a.is_imaginary()
        && b.is_imaginary()
        && a.norm_sq() == b.norm_sq()
        && !a.norm_sq().is_zero()
        && ab.is_zero())
}

/// The 84 standard zero divisors `(e_i + e_j, e_k +- e_l)` with
/// `1 <= i <= 6`, `9 <= j <= 15`, `i < k <= 7`, `9 <= l <= 15`; the sign is
/// decided by the product vanishing.
pub fn standard_zero_divisors() -> Vec<ZeroDivisorPair> {
    let heads: Vec<(usize, usize)> = (1..=6)
        .flat_map(|i| (9..=15).map(move |j| (i, j)))
        .collect();
    par::map(&heads, |&(i, j)| {
        let u = CdElement::two_term(4, i, 1, j);
        let mut found = Vec::new();
        for k in i + 1..=7 {
            for l in 9..=15 {
                for s in [1, -1] {
                    let v = CdElement::two_term(4, k, s, l);
                    if cd_multiply(&u, &v).expect("level 4").is_zero() {
                        found.push(ZeroDivisorPair { u: u.clone(), v });
                    }
                }
            }
        }
        found
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Parses the golden table format: one `(e4+e13,e6+e15)` pair per line.
/// Blank lines and `#` comments are skipped; pairs are not validated.
pub fn parse_table(text: &str) -> Result<Vec<ZeroDivisorPair>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let (u, v) = parse_pair(t, 4).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse {
                pos,
                msg: format!("line {}: {msg}", lineno + 1),
            },
            other => other,
        })?;
        out.push(ZeroDivisorPair { u, v });
    }
    Ok(out)
}

pub fn format_table(pairs: &[ZeroDivisorPair]) -> String {
    pairs.iter().map(|p| format!("{p}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley_dickson::parse_element;
    use crate::scalar::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn octonions_have_trivial_annihilators() {
        assert!(annihilator_basis(&CdElement::basis(3, 1))
            .unwrap()
            .is_empty());
        assert_eq!(
            annihilator_basis(&CdElement::zero(4)),
            Err(Error::ZeroInput)
        );
    }

    #[test]
    fn annihilator_of_u0_is_four_dimensional() {
        let u = parse_element("e1+e10", 4).unwrap();
        let ann = annihilator_basis(&u).unwrap();
        assert_eq!(ann.len(), 4);
        for z in &ann {
            assert!(cd_multiply(&u, z).unwrap().is_zero());
        }
    }

    #[test]
    fn standard_list_has_84_valid_pairs() {
        let zd = standard_zero_divisors();
        assert_eq!(zd.len(), 84);
        assert_eq!(zd[0].to_string(), "(e1+e10,e4-e15)");
        for p in &zd {
            assert!(is_zero_divisor_pair(&p.u, &p.v).unwrap());
            assert!(p.u.is_imaginary() && p.v.is_imaginary());
            // annihilation is symmetric
            assert!(cd_multiply(&p.v, &p.u).unwrap().is_zero());
        }
    }

    #[test]
    fn characterization_examples() {
        let e = |i| CdElement::basis(3, i);
        assert!(characterization_check(&e(1), &e(2)).unwrap());
        assert!(!characterization_check(&e(1), &e(1)).unwrap());
        assert!(!characterization_check(&e(0), &e(2)).unwrap());
        assert!(characterization_check(&e(1), &CdElement::basis(4, 2)).is_err());
    }

    #[test]
    fn characterization_agrees_with_criterion() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut positives = 0;
        for _ in 0..300 {
            // small supports make the criterion hold often enough to matter
            let pick = |rng: &mut ChaCha8Rng| {
                let mut c = vec![Rational::zero(); 8];
                for _ in 0..2 {
                    c[rng.gen_range(0..8)] = int(rng.gen_range(-1..=1));
                }
                CdElement::new(3, c).unwrap()
            };
            let a = pick(&mut rng);
            let b = pick(&mut rng);
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let lhs = characterization_check(&a, &b).unwrap();
            let rhs = octonion_pair_criterion(&a, &b).unwrap();
            assert_eq!(lhs, rhs, "a = {a:?}, b = {b:?}");
            positives += lhs as usize;
        }
        assert!(positives > 10);
    }

    #[test]
    fn non_unit_norm_pairs_are_rejected() {
        let u = CdElement::two_term(4, 1, 1, 10).scale(&rat(1, 2));
        let v = CdElement::two_term(4, 4, -1, 15);
        assert!(!is_zero_divisor_pair(&u, &v).unwrap());
        assert!(ZeroDivisorPair::new(u, v).is_err());
    }

    #[test]
    fn table_text_round_trip() {
        let zd = standard_zero_divisors();
        let text = format_table(&zd);
        assert_eq!(parse_table(&text).unwrap(), zd);
        assert!(matches!(
            parse_table("(e1+e10,e4-e15)\n(e1+e10 e4)\n"),
            Err(Error::Parse { .. })
        ));
    }
}
