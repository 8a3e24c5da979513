use std::collections::BTreeMap;
use std::fmt::{self, Display};
use std::ops::Add;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{RAffine, Rational};

/// Number of variables `x_0 .. x_21`.
pub const NVARS: usize = 22;
/// Variables `x_0 .. x_10` belong to the first plane vector.
pub const SPLIT: u8 = 10;

/// Sorted exponent pattern `i <= j <= k <= l` of a quartic monomial.
pub type Monomial = [u8; 4];

pub fn sort_monomial(mut m: Monomial) -> Monomial {
    m.sort_unstable();
    m
}

/// Whether `x_i x_j x_k x_l` has the shape `i <= j <= 10 < k <= l`.
pub fn is_cross_pattern(m: &Monomial) -> bool {
    m[1] <= SPLIT && m[2] > SPLIT
}

/// Homogeneous quartic in `x_0 .. x_21` stored sparsely; zero coefficients
/// are never kept.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QuarticForm<T = RAffine> {
    coeffs: BTreeMap<Monomial, T>,
}

/// Quartic with plain rational coefficients (a symbolic form at fixed r).
pub type RationalQuartic = QuarticForm<Rational>;

impl<T> QuarticForm<T>
where
    T: Clone + Zero + PartialEq + Display,
    for<'a> &'a T: Add<&'a T, Output = T>,
{
    pub fn new() -> Self {
        QuarticForm {
            coeffs: BTreeMap::new(),
        }
    }

    /// Adds `c` to the coefficient of the (unsorted) monomial `m`.
    pub fn add_term(&mut self, m: Monomial, c: &T) {
        if c.is_zero() {
            return;
        }
        let key = sort_monomial(m);
        assert!(
            (key[3] as usize) < NVARS,
            "variable index {} out of range",
            key[3]
        );
        let sum = match self.coeffs.get(&key) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.coeffs.remove(&key);
        } else {
            self.coeffs.insert(key, sum);
        }
    }

    pub fn get(&self, m: &Monomial) -> Option<&T> {
        self.coeffs.get(&sort_monomial(*m))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.coeffs.iter()
    }

    /// First monomial (in sorted order) where the two forms differ.
    pub fn first_difference(&self, other: &Self) -> Option<(Monomial, Option<T>, Option<T>)> {
        let mut keys: Vec<&Monomial> = self.coeffs.keys().chain(other.coeffs.keys()).collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter().find_map(|k| {
            let (a, b) = (self.coeffs.get(k), other.coeffs.get(k));
            (a != b).then(|| (*k, a.cloned(), b.cloned()))
        })
    }

    /// `Ok` when equal, otherwise `IdentityMismatch` at the first differing
    /// monomial; `expected` is `self`.
    pub fn check_equal(&self, found: &Self) -> Result<()> {
        match self.first_difference(found) {
            None => Ok(()),
            Some((m, a, b)) => {
                let show = |v: Option<T>| v.map_or_else(|| "0".to_string(), |v| v.to_string());
                Err(Error::IdentityMismatch {
                    monomial: m,
                    expected: show(a),
                    found: show(b),
                })
            }
        }
    }

    /// Every monomial has the cross shape `i <= j <= 10 < k <= l`.
    pub fn has_cross_support(&self) -> bool {
        self.coeffs.keys().all(is_cross_pattern)
    }

    /// Text document, one `i j k l: coefficient` line per monomial.
    pub fn to_text(&self) -> String {
        self.coeffs
            .iter()
            .map(|(m, c)| format!("{} {} {} {}: {c}\n", m[0], m[1], m[2], m[3]))
            .collect()
    }

    pub fn map<U, F>(&self, f: F) -> QuarticForm<U>
    where
        U: Clone + Zero + PartialEq + Display,
        for<'a> &'a U: Add<&'a U, Output = U>,
        F: Fn(&T) -> U,
    {
        let mut out = QuarticForm::new();
        for (m, c) in &self.coeffs {
            out.add_term(*m, &f(c));
        }
        out
    }
}

impl QuarticForm<RAffine> {
    /// Specializes the symbolic form at a rational `r`.
    pub fn at(&self, r: &Rational) -> RationalQuartic {
        self.map(|c| c.eval(r))
    }

    /// Parses the text document written by [`QuarticForm::to_text`].
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = QuarticForm::new();
        for (n, line) in text.lines().enumerate() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let at_line = |msg: String| Error::Parse {
                pos: 0,
                msg: format!("line {}: {msg}", n + 1),
            };
            let (lhs, rhs) = t
                .split_once(':')
                .ok_or_else(|| at_line("expected `i j k l: coefficient`".into()))?;
            let idx: Vec<u8> = lhs
                .split_whitespace()
                .map(|s| s.parse::<u8>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| at_line(format!("bad index: {e}")))?;
            let m: Monomial = idx
                .try_into()
                .map_err(|_| at_line("expected four indices".into()))?;
            if m.iter().any(|&i| i as usize >= NVARS) {
                return Err(at_line(format!("index out of range in {m:?}")));
            }
            if sort_monomial(m) != m {
                return Err(at_line(format!("indices {m:?} are not sorted")));
            }
            let c = RAffine::parse(rhs).map_err(|e| at_line(e.to_string()))?;
            if out.get(&m).is_some() {
                return Err(at_line(format!("duplicate monomial {m:?}")));
            }
            out.add_term(m, &c);
        }
        Ok(out)
    }
}

impl<T: Display> Display for QuarticForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (m, c) in &self.coeffs {
            writeln!(f, "{} {} {} {}: {c}", m[0], m[1], m[2], m[3])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn terms_merge_and_cancel() {
        let mut f = RationalQuartic::new();
        f.add_term([12, 0, 12, 0], &int(2));
        f.add_term([0, 0, 12, 12], &int(-2));
        assert!(f.is_empty());
        f.add_term([3, 1, 15, 11], &rat(1, 2));
        assert_eq!(f.get(&[1, 3, 11, 15]), Some(&rat(1, 2)));
        assert!(f.has_cross_support());
        f.add_term([0, 1, 2, 12], &int(1));
        assert!(!f.has_cross_support());
    }

    #[test]
    fn text_round_trip() {
        let mut f = QuarticForm::new();
        f.add_term([0, 0, 12, 12], &RAffine::new(int(1), rat(-9, 4)));
        f.add_term([2, 2, 11, 11], &RAffine::new(int(0), rat(3, 4)));
        let text = f.to_text();
        assert_eq!(
            text,
            "0 0 12 12: (1) + (-9/4) r\n2 2 11 11: (0) + (3/4) r\n"
        );
        assert_eq!(QuarticForm::parse(&text).unwrap(), f);
        assert!(QuarticForm::parse("0 12 0 12: (1) + (0) r").is_err());
        assert!(QuarticForm::parse("0 0 12: (1) + (0) r").is_err());
        assert!(QuarticForm::parse("0 0 12 30: (1) + (0) r").is_err());
    }

    #[test]
    fn first_difference_is_reported() {
        let mut f = RationalQuartic::new();
        f.add_term([0, 0, 11, 11], &int(1));
        let mut g = f.clone();
        g.add_term([0, 1, 11, 12], &int(3));
        assert_eq!(
            f.check_equal(&g),
            Err(Error::IdentityMismatch {
                monomial: [0, 1, 11, 12],
                expected: "0".into(),
                found: "3".into()
            })
        );
        assert!(f.check_equal(&f.clone()).is_ok());
    }

    #[test]
    fn specialization_drops_vanishing_terms() {
        let mut f = QuarticForm::new();
        f.add_term([0, 0, 12, 12], &RAffine::new(int(1), rat(-9, 4)));
        f.add_term([0, 0, 13, 13], &RAffine::new(int(0), rat(3, 4)));
        assert_eq!(f.at(&rat(4, 9)).len(), 1);
        assert_eq!(f.at(&int(0)).len(), 1);
        assert_eq!(f.at(&int(1)).len(), 2);
    }
}
