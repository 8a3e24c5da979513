use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{format_rational, int, parse_rational, Field, Rational};
use crate::error::{Error, Result};

/// Element `a + b*sqrt2 + c*sqrt3 + d*sqrt6` of Q(sqrt2, sqrt3).
///
/// `{1, sqrt2, sqrt3, sqrt6}` is a Q-basis of the field, so the four
/// coordinates are a canonical form and derived equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadScalar {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl QuadScalar {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        QuadScalar { a, b, c, d }
    }

    pub fn from_rational(a: Rational) -> Self {
        QuadScalar {
            a,
            ..Default::default()
        }
    }

    /// `q * sqrt3`
    pub fn sqrt3_times(q: Rational) -> Self {
        QuadScalar {
            c: q,
            ..Default::default()
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(int(1))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn to_rational(&self) -> Result<Rational> {
        if self.is_rational() {
            Ok(self.a.clone())
        } else {
            Err(Error::NotRational(self.to_string()))
        }
    }

    /// Coordinates in the order (1, sqrt2, sqrt3, sqrt6).
    pub fn coords(&self) -> [&Rational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn scale(&self, q: &Rational) -> Self {
        QuadScalar {
            a: &self.a * q,
            b: &self.b * q,
            c: &self.c * q,
            d: &self.d * q,
        }
    }

    /// Galois conjugate sending sqrt3 to -sqrt3.
    fn conj3(&self) -> Self {
        QuadScalar {
            a: self.a.clone(),
            b: self.b.clone(),
            c: -&self.c,
            d: -&self.d,
        }
    }

    /// Galois conjugate sending sqrt2 to -sqrt2.
    fn conj2(&self) -> Self {
        QuadScalar {
            a: self.a.clone(),
            b: -&self.b,
            c: self.c.clone(),
            d: -&self.d,
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // x * conj3(x) lies in Q(sqrt2); multiplying by its sqrt2-conjugate
        // lands in Q.
        let c3 = self.conj3();
        let n = self * &c3;
        let n2 = n.conj2();
        let norm = (&n * &n2).to_rational()?;
        Ok((&c3 * &n2).scale(&norm.recip()))
    }

    /// Exact sign of the real number represented.
    pub fn signum(&self) -> i8 {
        let p = (&self.a, &self.b);
        let q = (&self.c, &self.d);
        let sp = sign_q2(p.0, p.1);
        let sq = sign_q2(q.0, q.1);
        if sq == 0 {
            return sp;
        }
        if sp == 0 || sp == sq {
            return if sp == 0 { sq } else { sp };
        }
        // opposite signs: compare p^2 with 3 q^2
        let p2 = (p.0 * p.0 + int(2) * p.1 * p.1, int(2) * p.0 * p.1);
        let q2 = (q.0 * q.0 + int(2) * q.1 * q.1, int(2) * q.0 * q.1);
        let diff = sign_q2(&(&p2.0 - int(3) * &q2.0), &(&p2.1 - int(3) * &q2.1));
        sp * diff
    }

    pub fn to_f64(&self) -> f64 {
        let f = |q: &Rational| q.to_f64().unwrap_or(f64::NAN);
        f(&self.a)
            + f(&self.b) * std::f64::consts::SQRT_2
            + f(&self.c) * 3f64.sqrt()
            + f(&self.d) * 6f64.sqrt()
    }

    /// Serialized form: the coordinate 4-tuple `(a, b, c, d)`.
    pub fn to_tuple_string(&self) -> String {
        format!(
            "({}, {}, {}, {})",
            format_rational(&self.a),
            format_rational(&self.b),
            format_rational(&self.c),
            format_rational(&self.d)
        )
    }

    pub fn parse_tuple(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| Error::parse(0, "expected parenthesised 4-tuple"))?;
        let parts: Vec<_> = inner.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::parse(0, "expected exactly four coordinates"));
        }
        Ok(QuadScalar {
            a: parse_rational(parts[0])?,
            b: parse_rational(parts[1])?,
            c: parse_rational(parts[2])?,
            d: parse_rational(parts[3])?,
        })
    }
}

/// Sign of `s + t*sqrt2`.
fn sign_q2(s: &Rational, t: &Rational) -> i8 {
    let ss = rsign(s);
    let st = rsign(t);
    if st == 0 || ss == st {
        return if ss == 0 { st } else { ss };
    }
    if ss == 0 {
        return st;
    }
    ss * rsign(&(s * s - int(2) * t * t))
}

fn rsign(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Positive square root of a rational inside Q(sqrt2, sqrt3).
///
/// Succeeds exactly when `q = t^2 * s` with `t` rational and
/// `s` one of 1, 2, 3, 6.
pub fn quad_sqrt(q: &Rational) -> Result<QuadScalar> {
    if q.is_zero() {
        return Ok(QuadScalar::zero());
    }
    if q.is_negative() {
        return Err(Error::NotRepresentable(format_rational(q)));
    }
    for s in [1i64, 2, 3, 6] {
        let t2 = q / int(s);
        let (n, d) = (t2.numer(), t2.denom());
        let (rn, rd) = (n.sqrt(), d.sqrt());
        if &(&rn * &rn) == n && &(&rd * &rd) == d {
            let t = Rational::new(rn, rd);
            let z = Rational::zero();
            return Ok(match s {
                1 => QuadScalar::new(t, z.clone(), z.clone(), z),
                2 => QuadScalar::new(z.clone(), t, z.clone(), z),
                3 => QuadScalar::new(z.clone(), z.clone(), t, z),
                _ => QuadScalar::new(z.clone(), z.clone(), z, t),
            });
        }
    }
    Err(Error::NotRepresentable(format_rational(q)))
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (q, unit) in [
            (&self.a, ""),
            (&self.b, "*sqrt2"),
            (&self.c, "*sqrt3"),
            (&self.d, "*sqrt6"),
        ] {
            if q.is_zero() {
                continue;
            }
            let s = format_rational(&q.abs());
            if first {
                if q.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if q.is_negative() { '-' } else { '+' })?;
            }
            write!(f, "{s}{unit}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quad({self})")
    }
}

impl<'a> Add<&'a QuadScalar> for &'a QuadScalar {
    type Output = QuadScalar;
    fn add(self, o: &QuadScalar) -> QuadScalar {
        QuadScalar {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            c: &self.c + &o.c,
            d: &self.d + &o.d,
        }
    }
}

impl<'a> Sub<&'a QuadScalar> for &'a QuadScalar {
    type Output = QuadScalar;
    fn sub(self, o: &QuadScalar) -> QuadScalar {
        QuadScalar {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
            c: &self.c - &o.c,
            d: &self.d - &o.d,
        }
    }
}

impl<'a> Mul<&'a QuadScalar> for &'a QuadScalar {
    type Output = QuadScalar;
    fn mul(self, o: &QuadScalar) -> QuadScalar {
        // fast paths: most products in the pipelines involve a rational factor
        if o.is_rational() {
            return self.scale(&o.a);
        }
        if self.is_rational() {
            return o.scale(&self.a);
        }
        let (a1, b1, c1, d1) = (&self.a, &self.b, &self.c, &self.d);
        let (a2, b2, c2, d2) = (&o.a, &o.b, &o.c, &o.d);
        QuadScalar {
            a: a1 * a2 + int(2) * b1 * b2 + int(3) * c1 * c2 + int(6) * d1 * d2,
            b: a1 * b2 + b1 * a2 + int(3) * (c1 * d2 + d1 * c2),
            c: a1 * c2 + c1 * a2 + int(2) * (b1 * d2 + d1 * b2),
            d: a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        }
    }
}

impl Neg for &QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QuadScalar {
            type Output = QuadScalar;
            fn $m(self, o: QuadScalar) -> QuadScalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $m(self, o: &QuadScalar) -> QuadScalar {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        -&self
    }
}

impl AddAssign<&QuadScalar> for QuadScalar {
    fn add_assign(&mut self, o: &QuadScalar) {
        self.a += &o.a;
        self.b += &o.b;
        self.c += &o.c;
        self.d += &o.d;
    }
}

impl SubAssign<&QuadScalar> for QuadScalar {
    fn sub_assign(&mut self, o: &QuadScalar) {
        self.a -= &o.a;
        self.b -= &o.b;
        self.c -= &o.c;
        self.d -= &o.d;
    }
}

impl From<Rational> for QuadScalar {
    fn from(q: Rational) -> Self {
        QuadScalar::from_rational(q)
    }
}

impl Zero for QuadScalar {
    fn zero() -> Self {
        QuadScalar::zero()
    }
    fn is_zero(&self) -> bool {
        QuadScalar::is_zero(self)
    }
}

impl One for QuadScalar {
    fn one() -> Self {
        QuadScalar::one()
    }
}

impl Field for QuadScalar {
    fn try_inv(&self) -> Result<Self> {
        self.inverse()
    }
    fn sign(&self) -> i8 {
        self.signum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use proptest::prelude::*;

    fn q(a: i64, b: i64, c: i64, d: i64) -> QuadScalar {
        QuadScalar::new(int(a), int(b), int(c), int(d))
    }

    fn arb_quad() -> impl Strategy<Value = QuadScalar> {
        let r = (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d));
        (r.clone(), r.clone(), r.clone(), r).prop_map(|(a, b, c, d)| QuadScalar::new(a, b, c, d))
    }

    #[test]
    fn quad_sqrt_examples() {
        assert_eq!(
            quad_sqrt(&rat(1, 3)).unwrap(),
            QuadScalar::sqrt3_times(rat(1, 3))
        );
        assert_eq!(
            quad_sqrt(&rat(4, 9)).unwrap(),
            QuadScalar::from_rational(rat(2, 3))
        );
        let s = quad_sqrt(&rat(1, 6)).unwrap();
        assert_eq!(s, QuadScalar::new(int(0), int(0), int(0), rat(1, 6)));
        assert_eq!(&s * &s, QuadScalar::from_rational(rat(1, 6)));
        assert!(matches!(
            quad_sqrt(&rat(5, 1)),
            Err(Error::NotRepresentable(_))
        ));
        assert!(quad_sqrt(&rat(-1, 4)).is_err());
    }

    #[test]
    fn unit_products() {
        let r2 = q(0, 1, 0, 0);
        let r3 = q(0, 0, 1, 0);
        let r6 = q(0, 0, 0, 1);
        assert_eq!(&r2 * &r3, r6);
        assert_eq!(&r2 * &r6, q(0, 0, 2, 0));
        assert_eq!(&r3 * &r6, q(0, 3, 0, 0));
        assert_eq!(&r6 * &r6, q(6, 0, 0, 0));
    }

    #[test]
    fn signum_close_cases() {
        // sqrt2 + sqrt3 - sqrt6 - 0.5 ~ 0.196
        let x = QuadScalar::new(rat(-1, 2), int(1), int(1), int(-1));
        assert_eq!(x.signum(), 1);
        assert_eq!((-&x).signum(), -1);
        // 7 - 4 sqrt3 ~ 0.0718
        assert_eq!(q(7, 0, -4, 0).signum(), 1);
        assert_eq!(q(-7, 0, 4, 0).signum(), -1);
        assert_eq!(QuadScalar::zero().signum(), 0);
        // 5 - 2 sqrt6 ~ 0.101
        assert_eq!(q(5, 0, 0, -2).signum(), 1);
    }

    #[test]
    fn tuple_round_trip() {
        let x = QuadScalar::new(rat(1, 2), int(0), rat(-1, 6), int(3));
        assert_eq!(x.to_tuple_string(), "(1/2, 0, -1/6, 3)");
        assert_eq!(QuadScalar::parse_tuple(&x.to_tuple_string()).unwrap(), x);
    }

    proptest! {
        #[test]
        fn associativity(x in arb_quad(), y in arb_quad(), z in arb_quad()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        }

        #[test]
        fn distributivity(x in arb_quad(), y in arb_quad(), z in arb_quad()) {
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        }

        #[test]
        fn inverse_is_exact(x in arb_quad()) {
            prop_assume!(!x.is_zero());
            prop_assert_eq!(&x * &x.inverse().unwrap(), QuadScalar::one());
        }

        #[test]
        fn signum_matches_float(x in arb_quad()) {
            let f = x.to_f64();
            prop_assume!(f.abs() > 1e-9);
            prop_assert_eq!(x.signum(), if f > 0.0 { 1 } else { -1 });
        }

        #[test]
        fn sqrt_squares_back(n in 1i64..50, d in 1i64..50, s in prop::sample::select(vec![1i64, 2, 3, 6])) {
            let q = rat(n * n * s, d * d);
            let r = quad_sqrt(&q).unwrap();
            prop_assert_eq!(&r * &r, QuadScalar::from_rational(q));
            prop_assert_eq!(r.signum(), 1);
        }
    }
}
