use std::sync::OnceLock;

use super::quartic::{Monomial, NVARS, SPLIT};

/// Length of the reduced monomial vector.
pub const LEN: usize = 143;

/// The degree-2 monomials indexing the Gram certificates: the 121 cross
/// products `x_i x_j` (`i <= 10 < j`, block-ordered by `i`) followed by
/// the 22 squares.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialVector {
    entries: Vec<(u8, u8)>,
}

impl MonomialVector {
    fn build() -> Self {
        let split = SPLIT + 1;
        let mut entries = Vec::with_capacity(LEN);
        for i in 0..split {
            for j in split..NVARS as u8 {
                entries.push((i, j));
            }
        }
        entries.extend((0..NVARS as u8).map(|i| (i, i)));
        debug_assert_eq!(entries.len(), LEN);
        MonomialVector { entries }
    }

    pub fn standard() -> &'static MonomialVector {
        static MV: OnceLock<MonomialVector> = OnceLock::new();
        MV.get_or_init(Self::build)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> (u8, u8) {
        self.entries[i]
    }

    pub fn entries(&self) -> &[(u8, u8)] {
        &self.entries
    }

    pub fn index_of(&self, m: (u8, u8)) -> Option<usize> {
        let (a, b) = if m.0 <= m.1 { m } else { (m.1, m.0) };
        self.entries.iter().position(|&e| e == (a, b))
    }

    /// The quartic monomial `m_i * m_j`.
    pub fn product(&self, i: usize, j: usize) -> Monomial {
        let (a, b) = self.entries[i];
        let (c, d) = self.entries[j];
        let mut m = [a, b, c, d];
        m.sort_unstable();
        m
    }

    pub fn label(&self, i: usize) -> String {
        let (a, b) = self.entries[i];
        if a == b {
            format!("x{a}^2")
        } else {
            format!("x{a}*x{b}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout() {
        let mv = MonomialVector::standard();
        assert_eq!(mv.len(), LEN);
        assert_eq!(mv.get(0), (0, 11));
        assert_eq!(mv.get(10), (0, 21));
        assert_eq!(mv.get(11), (1, 11));
        assert_eq!(mv.get(120), (10, 21));
        assert_eq!(mv.get(121), (0, 0));
        assert_eq!(mv.get(142), (21, 21));
        assert_eq!(mv.index_of((13, 2)), Some(2 * 11 + 2));
        assert_eq!(mv.index_of((0, 1)), None);
        assert_eq!(mv.product(0, 121), [0, 0, 0, 11]);
        assert_eq!(mv.label(3), "x0*x14");
        assert_eq!(mv.label(122), "x1^2");
    }
}
