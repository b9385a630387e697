use crate::linalg::{q, qfrac, Matrix, Q};
use crate::quiver::Quiver;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("letter {letter} out of range 1..={rank}")]
    LetterOutOfRange { letter: usize, rank: usize },
    #[error("unknown vertex {0:?} in word")]
    UnknownLetter(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exponent {
    Two,
    Three,
    Infinite,
}

/// Coxeter system of a quiver graph: `m_ij` is 2, 3 or infinity for 0, 1 or at least 2 arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterSystem {
    rank: usize,
    m: Vec<Vec<Exponent>>,
    form: Matrix,
}

impl CoxeterSystem {
    pub fn new(m: Vec<Vec<Exponent>>) -> CoxeterSystem {
        let rank = m.len();
        let mut form = Matrix::identity(rank);
        for i in 0..rank {
            for j in 0..rank {
                if i != j {
                    form[(i, j)] = match m[i][j] {
                        Exponent::Two => Q::zero(),
                        Exponent::Three => qfrac(-1, 2),
                        Exponent::Infinite => q(-1),
                    };
                }
            }
        }
        CoxeterSystem { rank, m, form }
    }

    pub fn from_quiver(quiver: &Quiver) -> CoxeterSystem {
        let n = quiver.vertex_count();
        let mut count = vec![vec![0usize; n]; n];
        for a in 0..quiver.arrow_count() {
            let (s, t) = (quiver.source(a), quiver.target(a));
            if s != t {
                count[s][t] += 1;
                count[t][s] += 1;
            }
        }
        let m = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match count[i][j] {
                        0 => Exponent::Two,
                        1 => Exponent::Three,
                        _ => Exponent::Infinite,
                    })
                    .collect()
            })
            .collect();
        CoxeterSystem::new(m)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn exponent(&self, i: usize, j: usize) -> Exponent {
        self.m[i][j]
    }

    fn check(&self, word: &[usize]) -> Result<(), CoxeterError> {
        match word.iter().find(|&&l| l == 0 || l > self.rank) {
            Some(&letter) => Err(CoxeterError::LetterOutOfRange { letter, rank: self.rank }),
            None => Ok(()),
        }
    }

    /// Matrix of the simple reflection `s_i` (0-based) in the basis of simple roots.
    fn reflection(&self, i: usize) -> Matrix {
        let mut s = Matrix::identity(self.rank);
        for j in 0..self.rank {
            let v = &s[(i, j)] - q(2) * &self.form[(i, j)];
            s[(i, j)] = v;
        }
        s
    }

    fn apply(&self, i: usize, v: &[Q]) -> Vec<Q> {
        let mut b = Q::zero();
        for j in 0..self.rank {
            b += &self.form[(i, j)] * &v[j];
        }
        let mut out = v.to_vec();
        out[i] -= q(2) * b;
        out
    }

    /// Matrix of the product `s_{w_1} ... s_{w_k}`; letters are 1-based.
    pub fn element(&self, word: &[usize]) -> Result<Matrix, CoxeterError> {
        self.check(word)?;
        let mut m = Matrix::identity(self.rank);
        for &l in word {
            m = m.mul(&self.reflection(l - 1));
        }
        Ok(m)
    }

    pub fn is_reduced(&self, word: &[usize]) -> Result<bool, CoxeterError> {
        self.check(word)?;
        for k in 0..word.len() {
            let mut v = vec![Q::zero(); self.rank];
            v[word[k] - 1] = q(1);
            for &l in word[..k].iter().rev() {
                v = self.apply(l - 1, &v);
            }
            if v.iter().any(Signed::is_negative) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Length of the group element, by stripping right descents.
    pub fn length(&self, word: &[usize]) -> Result<usize, CoxeterError> {
        let mut m = self.element(word)?;
        let mut len = 0;
        loop {
            let descent = (0..self.rank).find(|&s| m.column(s).iter().any(Signed::is_negative));
            match descent {
                None => return Ok(len),
                Some(s) => {
                    m = m.mul(&self.reflection(s));
                    len += 1;
                }
            }
        }
    }

    pub fn equal_elements(&self, w1: &[usize], w2: &[usize]) -> Result<bool, CoxeterError> {
        Ok(self.element(w1)? == self.element(w2)?)
    }
}

/// Parses a word of vertex ids of `quiver` into 1-based letters (vertex order of the quiver).
/// Ids may be separated by commas or spaces; without separators each character is one letter.
pub fn parse_word(quiver: &Quiver, text: &str) -> Result<Vec<usize>, CoxeterError> {
    let tokens: Vec<String> = if text.contains(',') || text.contains(' ') {
        text.split([',', ' ']).filter(|s| !s.is_empty()).map(str::to_string).collect()
    } else {
        text.chars().map(|c| c.to_string()).collect()
    };
    tokens
        .iter()
        .map(|t| quiver.vertex_index(t).map(|i| i + 1).ok_or_else(|| CoxeterError::UnknownLetter(t.clone())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> CoxeterSystem {
        let q = Quiver::from_arrows(&["1", "2", "3"], &[("a", "1", "2"), ("b", "3", "2"), ("b'", "3", "2")]).unwrap();
        CoxeterSystem::from_quiver(&q)
    }

    #[test]
    fn exponents_from_graph() {
        let s = example();
        assert_eq!(s.exponent(0, 1), Exponent::Three);
        assert_eq!(s.exponent(1, 2), Exponent::Infinite);
        assert_eq!(s.exponent(0, 2), Exponent::Two);
    }

    #[test]
    fn reducedness() {
        let s = example();
        assert!(s.is_reduced(&[]).unwrap());
        assert!(!s.is_reduced(&[1, 1]).unwrap());
        assert!(s.is_reduced(&[2, 3, 2, 1, 3, 2]).unwrap());
        assert_eq!(s.length(&[2, 3, 2, 1, 3, 2]).unwrap(), 6);
        assert!(matches!(s.is_reduced(&[4]), Err(CoxeterError::LetterOutOfRange { .. })));
    }

    #[test]
    fn element_equality() {
        let s = example();
        assert!(s.equal_elements(&[2, 1, 3], &[2, 3, 1]).unwrap());
        assert!(!s.equal_elements(&[1, 2], &[2, 1]).unwrap());
        assert!(s.equal_elements(&[1, 2, 1], &[2, 1, 2]).unwrap());
        assert!(s.equal_elements(&[3, 2, 3], &[3, 2, 3]).unwrap());
    }
}
