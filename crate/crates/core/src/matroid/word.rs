use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::Error;

/// A word in the reflection alphabet `1..=N` (positions in the reflection
/// order). Increasing words denote subsets.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(SmallVec<[u16; 8]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn from_letters<I: IntoIterator<Item = u16>>(letters: I) -> Self {
        Word(letters.into_iter().collect())
    }

    pub fn letters(&self) -> &[u16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<u16> {
        self.0.last().copied()
    }

    pub fn is_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }

    pub fn push(&mut self, letter: u16) {
        self.0.push(letter);
    }

    pub fn pushed(&self, letter: u16) -> Word {
        let mut w = self.clone();
        w.0.push(letter);
        w
    }

    pub fn prefix(&self, k: usize) -> Word {
        Word(self.0[..k].iter().copied().collect())
    }

    pub fn contains(&self, letter: u16) -> bool {
        self.0.contains(&letter)
    }

    pub fn without(&self, index: usize) -> Word {
        let mut w = self.clone();
        w.0.remove(index);
        w
    }

    pub fn require_increasing(&self) -> Result<(), Error> {
        if self.is_increasing() {
            Ok(())
        } else {
            Err(Error::NotIncreasing(self.0.to_vec()))
        }
    }
}

impl From<&[u16]> for Word {
    fn from(letters: &[u16]) -> Self {
        Word(letters.iter().copied().collect())
    }
}

impl<const K: usize> From<[u16; K]> for Word {
    fn from(letters: [u16; K]) -> Self {
        Word(letters.into_iter().collect())
    }
}

/// Letters run together when all are single digits (`146`), otherwise
/// separated by dots (`3.12.17`); the empty word prints as `()`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("()");
        }
        let sep = if self.0.iter().all(|&x| x < 10) { "" } else { "." };
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || Error::InvalidOrder(format!("cannot parse word {s:?}"));
        if s == "()" || s.is_empty() {
            return Ok(Word::empty());
        }
        let letters: Option<Vec<u16>> = if s.contains(['.', ' ', ',']) {
            s.split(['.', ' ', ','])
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().ok())
                .collect()
        } else {
            s.chars().map(|c| c.to_digit(10).map(|d| d as u16)).collect()
        };
        letters.map(Word::from_letters).ok_or_else(bad)
    }
}

/// Sorts an index sequence, returning the increasing word and the sign of
/// the sorting permutation, or `None` when a letter repeats.
pub fn normalize_word(seq: &[u16]) -> Option<(Word, i32)> {
    let mut v: SmallVec<[u16; 8]> = seq.iter().copied().collect();
    let mut sign = 1;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    Some((Word(v), sign))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        assert_eq!(normalize_word(&[2, 1]), Some((Word::from([1, 2]), -1)));
        assert_eq!(normalize_word(&[1, 1]), None);
        assert_eq!(normalize_word(&[3, 1, 2]), Some((Word::from([1, 2, 3]), 1)));
        assert_eq!(normalize_word(&[]), Some((Word::empty(), 1)));
        assert_eq!(normalize_word(&[5, 2, 5]), None);
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(Word::from([1, 4, 6]).to_string(), "146");
        assert_eq!(Word::from([3, 12, 17]).to_string(), "3.12.17");
        assert_eq!(Word::empty().to_string(), "()");
        for w in [Word::from([1, 4, 6]), Word::from([3, 12, 17]), Word::empty()] {
            assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
        }
        assert_eq!("2 4 6".parse::<Word>().unwrap(), Word::from([2, 4, 6]));
    }
}
