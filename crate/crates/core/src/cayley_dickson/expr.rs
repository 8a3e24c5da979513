//! Element expressions in basis notation: `e4+e13`, `e6 - e15`,
//! `2e3 - 1/2*e7`. Whitespace is ignored; error positions refer to the
//! original input.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::CdElement;
use crate::error::{Error, Result};
use crate::scalar::{format_rational, Rational};

struct Cursor {
    chars: Vec<(usize, char)>,
    at: usize,
    end: usize,
}

impl Cursor {
    fn new(s: &str) -> Self {
        let chars: Vec<_> = s
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        Cursor {
            end: s.len(),
            chars,
            at: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.end, |&(p, _)| p)
    }

    fn bump(&mut self) {
        self.at += 1;
    }

    fn digits(&mut self) -> Option<String> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        (!s.is_empty()).then_some(s)
    }
}

/// Parses a signed sum of basis terms into `(index, coefficient)` pairs,
/// merging repeated indices.
pub fn parse_terms(s: &str) -> Result<Vec<(usize, Rational)>> {
    let mut cur = Cursor::new(s);
    let mut terms: Vec<(usize, Rational)> = Vec::new();
    if cur.peek().is_none() {
        return Err(Error::parse(cur.pos(), "empty expression"));
    }
    let mut first = true;
    while cur.peek().is_some() {
        let mut sign = BigInt::one();
        match cur.peek() {
            Some('+') => cur.bump(),
            Some('-') => {
                sign = -sign;
                cur.bump();
            }
            _ if !first => return Err(Error::parse(cur.pos(), "expected '+' or '-'")),
            _ => {}
        }
        first = false;

        let mut coef = Rational::from_integer(sign);
        let coef_pos = cur.pos();
        if let Some(n) = cur.digits() {
            let n: BigInt = n.parse().expect("digits");
            let mut q = Rational::from_integer(n);
            if cur.peek() == Some('/') {
                cur.bump();
                let dpos = cur.pos();
                let d = cur
                    .digits()
                    .ok_or_else(|| Error::parse(dpos, "expected denominator"))?;
                let d: BigInt = d.parse().expect("digits");
                if d.is_zero() {
                    return Err(Error::parse(dpos, "zero denominator"));
                }
                q /= Rational::from_integer(d);
            }
            coef *= q;
            if cur.peek() == Some('*') {
                cur.bump();
            }
        }
        if cur.peek() != Some('e') {
            return Err(Error::parse(
                if cur.peek().is_none() {
                    coef_pos
                } else {
                    cur.pos()
                },
                "expected basis element 'e<k>'",
            ));
        }
        cur.bump();
        let ipos = cur.pos();
        let idx = cur
            .digits()
            .ok_or_else(|| Error::parse(ipos, "expected basis index"))?;
        let idx: usize = idx
            .parse()
            .map_err(|_| Error::parse(ipos, "basis index out of range"))?;
        match terms.iter_mut().find(|(i, _)| *i == idx) {
            Some((_, c)) => *c += coef,
            None => terms.push((idx, coef)),
        }
    }
    terms.retain(|(_, c)| !c.is_zero());
    Ok(terms)
}

/// Parses an expression into an element of `A_level`.
pub fn parse_element(s: &str, level: u32) -> Result<CdElement> {
    let terms = parse_terms(s)?;
    let mut x = CdElement::zero(level);
    let dim = x.dim();
    for (i, c) in terms {
        if i >= dim {
            let pos = s.find(&format!("e{i}")).unwrap_or(0);
            return Err(Error::parse(
                pos,
                format!("e{i} does not exist at level {level} (dimension {dim})"),
            ));
        }
        x = x.add(&CdElement::basis(level, i).scale(&c))?;
    }
    Ok(x)
}

/// Parses `(u, v)`; the parentheses are optional.
pub fn parse_pair(s: &str, level: u32) -> Result<(CdElement, CdElement)> {
    let trimmed = s.trim();
    let offset = s.len() - s.trim_start().len();
    let (inner, shift) = match trimmed.strip_prefix('(') {
        Some(rest) => (
            rest.strip_suffix(')')
                .ok_or_else(|| Error::parse(offset + trimmed.len(), "missing ')'"))?,
            offset + 1,
        ),
        None => (trimmed, offset),
    };
    let comma = inner
        .find(',')
        .ok_or_else(|| Error::parse(shift, "expected ',' between pair components"))?;
    let shifted = |e: Error| match e {
        Error::Parse { pos, msg } => Error::Parse {
            pos: pos + shift,
            msg,
        },
        other => other,
    };
    let u = parse_element(&inner[..comma], level).map_err(shifted)?;
    let v = parse_element(&inner[comma + 1..], level).map_err(|e| match e {
        Error::Parse { pos, msg } => Error::Parse {
            pos: pos + shift + comma + 1,
            msg,
        },
        other => other,
    })?;
    Ok((u, v))
}

/// Formats in the notation accepted by [`parse_element`], e.g. `e4-e15`.
pub fn format_element(x: &CdElement) -> String {
    let mut out = String::new();
    for (i, c) in x.sparse() {
        let neg = c.is_negative();
        if neg {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let a = c.abs();
        if !a.is_one() {
            out.push_str(&format_rational(&a));
            out.push('*');
        }
        out.push_str(&format!("e{i}"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn parses_sum_notation() {
        let x = parse_element("e4+e13", 4).unwrap();
        assert_eq!(x, CdElement::two_term(4, 4, 1, 13));
        let y = parse_element(" e6 - e15 ", 4).unwrap();
        assert_eq!(y, CdElement::two_term(4, 6, -1, 15));
        let z = parse_element("2e3 - 1/2*e7 + e3", 3).unwrap();
        assert_eq!(z.coord(3), &int(3));
        assert_eq!(z.coord(7), &rat(-1, 2));
    }

    #[test]
    fn format_round_trip() {
        for s in ["e1+e10", "e4-e15", "-e2+3*e5", "1/2*e0-e7"] {
            let x = parse_element(s, 4).unwrap();
            assert_eq!(format_element(&x), s);
        }
        assert_eq!(format_element(&CdElement::zero(3)), "0");
    }

    #[test]
    fn pairs() {
        let (u, v) = parse_pair("(e4+e13,e6+e15)", 4).unwrap();
        assert_eq!(u, CdElement::two_term(4, 4, 1, 13));
        assert_eq!(v, CdElement::two_term(4, 6, 1, 15));
        let err = parse_pair("(e4+e13,e6+x15)", 4).unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                pos: 11,
                msg: "expected basis element 'e<k>'".into()
            }
        );
    }

    #[test]
    fn error_positions() {
        match parse_element("e1+f2", 4) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("{other:?}"),
        }
        match parse_element("e1 + e", 4) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_element("e16", 4), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_element("", 4),
            Err(Error::Parse { pos: 0, .. })
        ));
        assert!(matches!(
            parse_element("1/0e1", 4),
            Err(Error::Parse { pos: 2, .. })
        ));
    }
}
