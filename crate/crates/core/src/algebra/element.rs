use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matroid::Word;
use crate::scalar::Scalar;

/// An element of the algebra in the broken-circuit basis: basis words with
/// nonzero coefficients. Tagged with the id of the algebra it belongs to.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseElement {
    pub(crate) ambient: u64,
    pub(crate) terms: BTreeMap<Word, Scalar>,
}

impl SparseElement {
    pub(crate) fn zero_in(ambient: u64) -> Self {
        Self {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    pub fn ambient(&self) -> u64 {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &Word) -> Scalar {
        self.terms.get(word).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The common length of all words, if there is one (`None` for zero).
    pub fn degree(&self) -> Option<usize> {
        let mut lens = self.terms.keys().map(Word::len);
        let first = lens.next()?;
        lens.all(|l| l == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// Degree-`p` component.
    pub fn component(&self, p: usize) -> SparseElement {
        Self {
            ambient: self.ambient,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == p)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub(crate) fn add_term(&mut self, word: Word, coeff: &Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check(&self, other: &SparseElement) -> Result<()> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    pub fn add(&self, other: &SparseElement) -> Result<SparseElement> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SparseElement) -> Result<SparseElement> {
        self.add(&other.neg())
    }

    pub(crate) fn add_assign(&mut self, other: &SparseElement) {
        debug_assert_eq!(self.ambient, other.ambient);
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c);
        }
    }

    pub fn neg(&self) -> SparseElement {
        Self {
            ambient: self.ambient,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> SparseElement {
        if s.is_zero() {
            return Self::zero_in(self.ambient);
        }
        Self {
            ambient: self.ambient,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect(),
        }
    }

    /// One `word: coeff` line per term.
    pub fn to_lines(&self) -> Vec<String> {
        self.terms.iter().map(|(w, c)| format!("{w}: {c}")).collect()
    }
}

/// `146: 1, 246: -1`; zero prints as `0`.
impl fmt::Display for SparseElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&self.to_lines().join(", "))
    }
}

impl fmt::Debug for SparseElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseElement({self})")
    }
}

struct Term<'a>(&'a Word, &'a Scalar);

impl Serialize for Term<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Term", 2)?;
        st.serialize_field("word", self.0.letters())?;
        st.serialize_field("coeff", self.1)?;
        st.end()
    }
}

/// JSON array of `{word, coeff}` pairs, words as letter arrays and
/// coefficients in canonical text form.
impl Serialize for SparseElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (w, c) in &self.terms {
            seq.serialize_element(&Term(w, c))?;
        }
        seq.end()
    }
}
