use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::monomials::LEN;
use crate::error::{Error, Result};
use crate::golden::{self, GoldenFile};
use crate::linalg::Matrix;
use crate::scalar::{format_rational, parse_rational, rat, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CertLabel {
    R0,
    R49,
}

impl CertLabel {
    pub const ALL: [CertLabel; 2] = [CertLabel::R0, CertLabel::R49];

    /// The value of `r` the certificate is for.
    pub fn r(self) -> Rational {
        match self {
            CertLabel::R0 => Rational::zero(),
            CertLabel::R49 => rat(4, 9),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CertLabel::R0 => "R0",
            CertLabel::R49 => "R49",
        }
    }

    /// Accepts `0`, `4/9` or the label names.
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "0" | "R0" => Ok(CertLabel::R0),
            "4/9" | "R49" => Ok(CertLabel::R49),
            other => Err(Error::parse(
                0,
                format!("unknown certificate {other:?}; expected 0 or 4/9"),
            )),
        }
    }

    pub fn golden_file(self) -> GoldenFile {
        match self {
            CertLabel::R0 => GoldenFile::CertR0,
            CertLabel::R49 => GoldenFile::CertR49,
        }
    }

    /// Expected number of index pairs for each value.
    pub fn set_sizes(self) -> &'static [((i64, i64), usize)] {
        match self {
            CertLabel::R0 => &[
                ((-2, 1), 4),
                ((-1, 1), 17),
                ((-1, 2), 128),
                ((1, 2), 160),
                ((1, 1), 18),
                ((2, 1), 8),
            ],
            CertLabel::R49 => &[
                ((-1, 1), 8),
                ((-1, 2), 128),
                ((-1, 3), 10),
                ((1, 3), 20),
                ((1, 2), 160),
                ((1, 1), 12),
            ],
        }
    }
}

impl fmt::Display for CertLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One line of certificate data: every listed pair carries `value`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IndexSet {
    pub value: Rational,
    pub pairs: Vec<(usize, usize)>,
}

/// Sparse symmetric 143x143 Gram matrix over the monomial vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GramCertificate {
    pub label: CertLabel,
    entries: BTreeMap<(usize, usize), Rational>,
}

fn parse_pair(tok: &str) -> Option<(usize, usize)> {
    let inner = tok.strip_prefix('(')?.strip_suffix(')')?;
    let (a, b) = inner.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

/// Parses `LABEL value: (i,j) (i,j) ...` lines.
pub fn parse_index_sets(text: &str) -> Result<Vec<(CertLabel, IndexSet)>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let err = |m: String| Error::Parse {
            pos: 0,
            msg: format!("line {}: {m}", n + 1),
        };
        let (head, body) = t
            .split_once(':')
            .ok_or_else(|| err("expected `label value: pairs`".into()))?;
        let (label, value) = head
            .trim()
            .split_once(' ')
            .ok_or_else(|| err("expected label and value".into()))?;
        let label = CertLabel::parse(label).map_err(|e| err(e.to_string()))?;
        let value = parse_rational(value).map_err(|e| err(e.to_string()))?;
        let pairs = body
            .split_whitespace()
            .map(|tok| parse_pair(tok).ok_or_else(|| err(format!("bad index pair {tok:?}"))))
            .collect::<Result<Vec<_>>>()?;
        out.push((label, IndexSet { value, pairs }));
    }
    Ok(out)
}

impl GramCertificate {
    pub fn zero(label: CertLabel) -> Self {
        GramCertificate {
            label,
            entries: BTreeMap::new(),
        }
    }

    /// Materializes the matrix from index sets; `(i, i)` sets a diagonal
    /// entry and `(i, j)` sets both `(i, j)` and `(j, i)`.
    pub fn from_sets(label: CertLabel, sets: &[IndexSet]) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for s in sets {
            for &(i, j) in &s.pairs {
                if i >= LEN || j >= LEN {
                    return Err(Error::Golden(format!("index ({i},{j}) outside 0..{LEN}")));
                }
                let key = (i.min(j), i.max(j));
                if entries.insert(key, s.value.clone()).is_some() {
                    return Err(Error::Golden(format!("pair ({i},{j}) listed twice")));
                }
            }
        }
        entries.retain(|_, v: &mut Rational| !v.is_zero());
        Ok(GramCertificate { label, entries })
    }

    /// Parses certificate text and asserts the per-value set sizes.
    pub fn from_text(label: CertLabel, text: &str) -> Result<Self> {
        let sets: Vec<IndexSet> = parse_index_sets(text)?
            .into_iter()
            .map(|(l, s)| {
                if l == label {
                    Ok(s)
                } else {
                    Err(Error::Golden(format!(
                        "{l} data in the {label} certificate"
                    )))
                }
            })
            .collect::<Result<_>>()?;
        let sizes = label.set_sizes();
        if sets.len() != sizes.len() {
            return Err(Error::Golden(format!(
                "{label}: {} index sets, expected {}",
                sets.len(),
                sizes.len()
            )));
        }
        for &((n, d), count) in sizes {
            let v = rat(n, d);
            let found: usize = sets
                .iter()
                .filter(|s| s.value == v)
                .map(|s| s.pairs.len())
                .sum();
            if found != count {
                return Err(Error::Golden(format!(
                    "{label}: value {} has {found} pairs, expected {count}",
                    format_rational(&v)
                )));
            }
        }
        Self::from_sets(label, &sets)
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries
            .get(&(i.min(j), i.max(j)))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Stored entries `(i, j, value)` with `i <= j`.
    pub fn upper(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    /// Number of nonzero entries of the full symmetric matrix.
    pub fn nnz(&self) -> usize {
        self.entries
            .keys()
            .map(|(i, j)| if i == j { 1 } else { 2 })
            .sum()
    }

    pub fn to_dense(&self) -> Matrix<Rational> {
        let mut m = vec![vec![Rational::zero(); LEN]; LEN];
        for (&(i, j), v) in &self.entries {
            m[i][j] = v.clone();
            m[j][i] = v.clone();
        }
        m
    }

    /// Overwrites one symmetric entry.
    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        let key = (i.min(j), i.max(j));
        if v.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, v);
        }
    }
}

/// Loads a certificate from the golden data.
pub fn build_certificate(label: CertLabel) -> Result<GramCertificate> {
    let g = golden::load(label.golden_file())?;
    GramCertificate::from_text(label, &g.text)
}
