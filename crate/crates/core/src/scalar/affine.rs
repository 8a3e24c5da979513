use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::{format_rational, parse_rational, Field, QuadScalar, Rational};
use crate::error::{Error, Result};

/// `const_part + r_part * r` for the formal metric parameter `r`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Affine<T> {
    pub const_part: T,
    pub r_part: T,
}

/// Affine value with rational coefficients.
pub type RAffine = Affine<Rational>;

impl<T: Field> Affine<T> {
    pub fn new(const_part: T, r_part: T) -> Self {
        Affine { const_part, r_part }
    }

    pub fn constant(c: T) -> Self {
        Affine {
            const_part: c,
            r_part: T::zero(),
        }
    }

    /// The value `r` itself.
    pub fn r() -> Self {
        Affine {
            const_part: T::zero(),
            r_part: T::one(),
        }
    }

    pub fn zero() -> Self {
        Self::constant(T::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.const_part.is_zero() && self.r_part.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.r_part.is_zero()
    }

    pub fn eval(&self, r: &T) -> T {
        self.const_part.clone() + self.r_part.clone() * r.clone()
    }

    pub fn scale(&self, k: &T) -> Self {
        Affine {
            const_part: self.const_part.clone() * k.clone(),
            r_part: self.r_part.clone() * k.clone(),
        }
    }

    /// Exact product; fails when both factors depend on `r`.
    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if !self.r_part.is_zero() && !o.r_part.is_zero() {
            return Err(Error::DegreeOverflow);
        }
        Ok(Affine {
            const_part: self.const_part.clone() * o.const_part.clone(),
            r_part: self.const_part.clone() * o.r_part.clone()
                + self.r_part.clone() * o.const_part.clone(),
        })
    }
}

impl Affine<Rational> {
    /// Reconstructs `alpha + beta r` from exact values at two sample points
    /// and certifies affinity with every further sample.
    pub fn interpolate(samples: &[(Rational, Rational)]) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::NonAffineInR("fewer than two samples".into()));
        }
        let (r0, v0) = &samples[0];
        let (r1, v1) = &samples[1];
        let dr = r1 - r0;
        if dr.is_zero() {
            return Err(Error::NonAffineInR("repeated sample point".into()));
        }
        let beta = (v1 - v0) / dr;
        let alpha = v0 - &beta * r0;
        let fit = Affine::new(alpha, beta);
        for (r, v) in &samples[2..] {
            if &fit.eval(r) != v {
                let list: Vec<_> = samples
                    .iter()
                    .map(|(r, v)| format!("{}->{}", format_rational(r), format_rational(v)))
                    .collect();
                return Err(Error::NonAffineInR(list.join(", ")));
            }
        }
        Ok(fit)
    }

    pub fn to_quad(&self) -> Affine<QuadScalar> {
        Affine {
            const_part: QuadScalar::from_rational(self.const_part.clone()),
            r_part: QuadScalar::from_rational(self.r_part.clone()),
        }
    }

    /// Parses the `(a) + (b) r` text form.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        let err = |m: &str| Error::parse(0, format!("{m}: {t:?}"));
        let body = t
            .strip_suffix('r')
            .ok_or_else(|| err("missing trailing r"))?;
        let (lhs, rhs) = body
            .split_once(") + (")
            .ok_or_else(|| err("expected `(a) + (b) r`"))?;
        let a = lhs
            .trim()
            .strip_prefix('(')
            .ok_or_else(|| err("missing '('"))?;
        let b = rhs
            .trim()
            .strip_suffix(')')
            .ok_or_else(|| err("missing ')'"))?;
        Ok(Affine::new(parse_rational(a)?, parse_rational(b)?))
    }
}

impl Affine<QuadScalar> {
    /// Demotes to rational coefficients when both parts are rational.
    pub fn to_rational(&self) -> Result<RAffine> {
        Ok(Affine::new(
            self.const_part.to_rational()?,
            self.r_part.to_rational()?,
        ))
    }
}

/// Evaluates `alpha + beta r` exactly.
pub fn raffine_eval(p: &RAffine, r: &Rational) -> Rational {
    p.eval(r)
}

impl fmt::Display for Affine<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) + ({}) r",
            format_rational(&self.const_part),
            format_rational(&self.r_part)
        )
    }
}

impl fmt::Display for Affine<QuadScalar> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({}) r", self.const_part, self.r_part)
    }
}

impl<T: Field> Add for &Affine<T> {
    type Output = Affine<T>;
    fn add(self, o: &Affine<T>) -> Affine<T> {
        Affine {
            const_part: self.const_part.clone() + o.const_part.clone(),
            r_part: self.r_part.clone() + o.r_part.clone(),
        }
    }
}

impl<T: Field> Sub for &Affine<T> {
    type Output = Affine<T>;
    fn sub(self, o: &Affine<T>) -> Affine<T> {
        Affine {
            const_part: self.const_part.clone() - o.const_part.clone(),
            r_part: self.r_part.clone() - o.r_part.clone(),
        }
    }
}

impl<T: Field> Neg for &Affine<T> {
    type Output = Affine<T>;
    fn neg(self) -> Affine<T> {
        Affine {
            const_part: -self.const_part.clone(),
            r_part: -self.r_part.clone(),
        }
    }
}

impl<T: Field> Add for Affine<T> {
    type Output = Affine<T>;
    fn add(self, o: Affine<T>) -> Affine<T> {
        &self + &o
    }
}

impl<T: Field> Sub for Affine<T> {
    type Output = Affine<T>;
    fn sub(self, o: Affine<T>) -> Affine<T> {
        &self - &o
    }
}

impl<T: Field> Zero for Affine<T> {
    fn zero() -> Self {
        Affine::constant(T::zero())
    }
    fn is_zero(&self) -> bool {
        self.const_part.is_zero() && self.r_part.is_zero()
    }
}

impl<T: Field> Mul<&T> for &Affine<T> {
    type Output = Affine<T>;
    fn mul(self, k: &T) -> Affine<T> {
        self.scale(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn eval_examples() {
        let kappa = RAffine::new(int(1), rat(-9, 4));
        assert_eq!(raffine_eval(&kappa, &rat(4, 9)), int(0));
        let scal = RAffine::new(int(50), rat(-15, 2));
        assert_eq!(raffine_eval(&scal, &rat(20, 3)), int(0));
        let c = RAffine::constant(rat(7, 3));
        for r in [rat(0, 1), rat(1, 4), rat(-5, 2)] {
            assert_eq!(raffine_eval(&c, &r), rat(7, 3));
        }
    }

    #[test]
    fn degree_overflow_is_rejected() {
        let x = RAffine::new(int(1), int(2));
        let y = RAffine::new(int(3), int(-1));
        assert_eq!(x.try_mul(&y), Err(Error::DegreeOverflow));
        let k = RAffine::constant(rat(1, 2));
        assert_eq!(x.try_mul(&k).unwrap(), RAffine::new(rat(1, 2), int(1)));
    }

    #[test]
    fn interpolation_certifies_with_third_sample() {
        let f = |r: &Rational| int(5) - rat(3, 2) * r;
        let pts: Vec<_> = [rat(1, 4), int(1), rat(4, 9)]
            .into_iter()
            .map(|r| (r.clone(), f(&r)))
            .collect();
        assert_eq!(
            RAffine::interpolate(&pts).unwrap(),
            RAffine::new(int(5), rat(-3, 2))
        );
        let bad: Vec<_> = [rat(1, 4), int(1), rat(4, 9)]
            .into_iter()
            .map(|r| (r.clone(), &r * &r))
            .collect();
        assert!(matches!(
            RAffine::interpolate(&bad),
            Err(Error::NonAffineInR(_))
        ));
    }

    #[test]
    fn text_form() {
        let x = RAffine::new(rat(1, 2), rat(-9, 4));
        assert_eq!(x.to_string(), "(1/2) + (-9/4) r");
        assert_eq!(RAffine::parse("(1/2) + (-9/4) r").unwrap(), x);
        assert!(RAffine::parse("1/2 + r").is_err());
    }
}
