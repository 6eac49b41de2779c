//! The Orlik-Solomon algebra in the broken-circuit basis.

mod average;
mod element;
mod forms;

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use dashmap::DashMap;
use num_traits::One;
use smallvec::SmallVec;

pub use average::Normalization;
pub use element::SparseElement;
pub use forms::FormPoint;

use crate::coxeter::{GroupElement, RootSystem};
use crate::error::{Error, Result};
use crate::matroid::{normalize_word, Arrangement, BasisGraph, ReflectionOrder, Trace, Word};
use crate::scalar::Scalar;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Integer expansion of a monomial in the basis.
type Expansion = Arc<[(Word, i64)]>;

/// Ambient data for elements: root system, reflection order, basis graph,
/// and a memo of rewritten monomials.
pub struct Algebra {
    id: u64,
    arr: Arrangement,
    gamma: BasisGraph,
    memo: DashMap<Word, Expansion>,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Algebra")
            .field("type", &self.gamma.type_name())
            .field("nodes", &self.gamma.node_count())
            .finish()
    }
}

impl Algebra {
    pub fn new(rs: Arc<RootSystem>, order: ReflectionOrder, guard: u128) -> Result<Self> {
        let arr = Arrangement::new(rs, order);
        let gamma = BasisGraph::build(&arr, guard)?;
        Ok(Self::assemble(arr, gamma))
    }

    /// Uses a previously built graph, which must match the type and order.
    pub fn with_graph(rs: Arc<RootSystem>, order: ReflectionOrder, gamma: BasisGraph) -> Result<Self> {
        if gamma.type_name() != rs.coxeter_type().to_string()
            || gamma.order() != order.as_permutation().as_slice()
        {
            return Err(Error::Cache("graph was built for a different type or order".into()));
        }
        Ok(Self::assemble(Arrangement::new(rs, order), gamma))
    }

    fn assemble(arr: Arrangement, gamma: BasisGraph) -> Self {
        Self {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            arr,
            gamma,
            memo: DashMap::new(),
        }
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        self.arr.root_system()
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arr
    }

    pub fn order(&self) -> &ReflectionOrder {
        self.arr.order()
    }

    pub fn graph(&self) -> &BasisGraph {
        &self.gamma
    }

    /// Number of letters `N`.
    pub fn num_letters(&self) -> usize {
        self.arr.len()
    }

    pub fn zero(&self) -> SparseElement {
        SparseElement::zero_in(self.id)
    }

    pub fn one(&self) -> SparseElement {
        self.basis_element(Word::empty())
    }

    fn basis_element(&self, word: Word) -> SparseElement {
        let mut x = self.zero();
        x.add_term(word, &Scalar::one());
        x
    }

    /// A basis word as an element; errors if the word is not a basis word.
    pub fn basis_monomial(&self, word: &Word) -> Result<SparseElement> {
        self.check_letters(word.letters())?;
        if self.gamma.contains(word)? {
            Ok(self.basis_element(word.clone()))
        } else {
            Err(Error::Verification(format!("{word} is not a basis word")))
        }
    }

    /// `a_{i_1} ... a_{i_p}` for any letter sequence, expanded in the basis.
    pub fn monomial(&self, seq: &[u16]) -> Result<SparseElement> {
        self.check_letters(seq)?;
        let mut x = self.zero();
        if let Some((w, sign)) = normalize_word(seq) {
            self.accumulate(&mut x, &w, &Scalar::from(sign as i64));
        }
        Ok(x)
    }

    /// Generator `a_r` for a letter `r`.
    pub fn generator(&self, letter: u16) -> Result<SparseElement> {
        self.monomial(&[letter])
    }

    /// Sum `c_k a_{T_k}` of arbitrary letter sequences.
    pub fn element_from_terms(&self, terms: &[(Vec<u16>, Scalar)]) -> Result<SparseElement> {
        let mut x = self.zero();
        for (seq, c) in terms {
            x.add_assign(&self.monomial(seq)?.scale(c));
        }
        Ok(x)
    }

    fn check_letters(&self, seq: &[u16]) -> Result<()> {
        let n = self.num_letters();
        match seq.iter().find(|&&x| x == 0 || x as usize > n) {
            Some(&x) => Err(Error::ReflectionOutOfRange {
                index: x as usize,
                count: n,
            }),
            None => Ok(()),
        }
    }

    fn check(&self, x: &SparseElement) -> Result<()> {
        if x.ambient == self.id {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    /// Adds `coeff * a_word` to `x`, expanding the increasing `word`.
    fn accumulate(&self, x: &mut SparseElement, word: &Word, coeff: &Scalar) {
        for (w, c) in self.expand(word).iter() {
            x.add_term(w.clone(), &(coeff * &Scalar::from(*c)));
        }
    }

    /// Expansion of `a_T` for an increasing word `T`.
    pub fn to_nbc(&self, word: &Word) -> Result<SparseElement> {
        word.require_increasing()?;
        self.check_letters(word.letters())?;
        let mut x = self.zero();
        self.accumulate(&mut x, word, &Scalar::one());
        Ok(x)
    }

    /// Rewrites with the circuit relations, memoized per word. Each
    /// rewrite replaces a letter by a larger one, so words only grow
    /// lexicographically and the recursion terminates.
    fn expand(&self, word: &Word) -> Expansion {
        if let Some(e) = self.memo.get(word) {
            return e.clone();
        }
        let out: Expansion = match self.gamma.trace(word.letters()) {
            Trace::Accepted(_) => Arc::from(vec![(word.clone(), 1)]),
            Trace::Rejected(_) if !self.arr.is_independent(word.letters()) => Arc::from(vec![]),
            Trace::Rejected(k) => self.rewrite(word, k),
        };
        self.memo.insert(word.clone(), out.clone());
        out
    }

    /// One circuit relation applied to the first prefix `T_k = t_0..t_k`
    /// that is not a basis word.
    fn rewrite(&self, word: &Word, k: usize) -> Expansion {
        let t = word.letters();
        let prefix = word.prefix(k + 1);
        // circuit C = B u with u = max(C) > t_k and B inside the prefix
        let (broken, u): (SmallVec<[u16; 8]>, u16) = match self.arr.circuit_extension(&prefix) {
            Some(u) => (prefix.letters().into(), u),
            None => {
                let f = self.arr.flat_of(prefix.letters());
                let u = self.arr.flat_max(f);
                debug_assert!(u > t[k]);
                let b = (0..=k)
                    .filter(|&i| {
                        let rest = prefix.without(i);
                        !self.arr.flat_contains(self.arr.flat_of(rest.letters()), u)
                    })
                    .map(|i| t[i])
                    .collect();
                (b, u)
            }
        };
        let others: SmallVec<[u16; 8]> = t.iter().copied().filter(|x| !broken.contains(x)).collect();
        // a_T = eps a_B a_rest and a_B = (-1)^(q+1) sum_j (-1)^j a_{(B - b_j) u},
        // with q = |B| and j counted from 0
        let mut arranged: SmallVec<[u16; 8]> = broken.clone();
        arranged.extend_from_slice(&others);
        let (_, eps) = normalize_word(&arranged).expect("distinct letters");
        let q = broken.len();
        let sign0 = eps * if q % 2 == 1 { 1 } else { -1 };
        let mut acc: std::collections::BTreeMap<Word, i64> = Default::default();
        for j in 0..q {
            let mut seq: SmallVec<[u16; 8]> = SmallVec::new();
            seq.extend(broken.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &x)| x));
            seq.push(u);
            seq.extend_from_slice(&others);
            let Some((w, s)) = normalize_word(&seq) else {
                continue;
            };
            let c = sign0 * s * if j % 2 == 0 { 1 } else { -1 };
            for (v, d) in self.expand(&w).iter() {
                let e = acc.entry(v.clone()).or_insert(0);
                *e = e.checked_add(c as i64 * d).expect("coefficient overflow");
            }
        }
        acc.into_iter().filter(|(_, c)| *c != 0).collect::<Vec<_>>().into()
    }

    /// Right action: `a_T . w = a_{w^-1 T w}`, re-expanded in the basis.
    pub fn act(&self, x: &SparseElement, w: &GroupElement) -> Result<SparseElement> {
        self.check(x)?;
        let perm = self.arr.letter_action(w);
        Ok(self.act_with(x, &perm))
    }

    /// The action for a precomputed letter permutation.
    pub(crate) fn act_with(&self, x: &SparseElement, perm: &[u16]) -> SparseElement {
        let mut out = self.zero();
        let mut seq: SmallVec<[u16; 8]> = SmallVec::new();
        for (word, c) in x.terms() {
            seq.clear();
            seq.extend(word.letters().iter().map(|&l| perm[l as usize]));
            let (w, s) = normalize_word(&seq).expect("permutation keeps letters distinct");
            if s > 0 {
                self.accumulate(&mut out, &w, c);
            } else {
                self.accumulate(&mut out, &w, &-c);
            }
        }
        out
    }

    pub fn product(&self, x: &SparseElement, y: &SparseElement) -> Result<SparseElement> {
        self.check(x)?;
        self.check(y)?;
        let mut out = self.zero();
        for (a, c) in x.terms() {
            for (b, d) in y.terms() {
                let mut seq: SmallVec<[u16; 8]> = a.letters().into();
                seq.extend_from_slice(b.letters());
                if let Some((w, s)) = normalize_word(&seq) {
                    self.accumulate(&mut out, &w, &(&(c * d) * &Scalar::from(s as i64)));
                }
            }
        }
        Ok(out)
    }

    /// Applies the rewriting to every key; the identity on valid elements.
    pub fn renormalize(&self, x: &SparseElement) -> Result<SparseElement> {
        self.check(x)?;
        let mut out = self.zero();
        for (w, c) in x.terms() {
            self.accumulate(&mut out, w, c);
        }
        Ok(out)
    }

    /// `a_T` for a generator subset, as the product of the simple generators
    /// in label order.
    pub fn simple_monomial(&self, subset: &[usize]) -> Result<SparseElement> {
        let rank = self.root_system().rank();
        if let Some(&i) = subset.iter().find(|&&i| i >= rank) {
            return Err(Error::GeneratorOutOfRange { index: i + 1, rank });
        }
        self.monomial(&self.arr.simple_letters(subset))
    }

    /// Size of the rewrite memo.
    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub(crate) fn scalar_of(n: u128) -> Scalar {
        Scalar::from(i64::try_from(n).expect("group order fits in i64"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::DEFAULT_GUARD;

    fn alg(t: &str, order: &str) -> Algebra {
        let rs = Arc::new(RootSystem::new(t.parse().unwrap()));
        let order = ReflectionOrder::parse(&rs, order).unwrap();
        Algebra::new(rs, order, DEFAULT_GUARD).unwrap()
    }

    #[test]
    fn a3_rewrites() {
        let a = alg("A3", "reference-a3");
        assert!(a.to_nbc(&Word::from([1, 2, 4])).unwrap().is_zero());
        assert_eq!(a.to_nbc(&Word::from([1, 2, 6])).unwrap().to_string(), "146: 1, 246: -1");
        assert_eq!(a.to_nbc(&Word::from([2, 4, 6])).unwrap().to_string(), "246: 1");
        assert!(a.to_nbc(&Word::from([2, 1])).is_err());
    }

    #[test]
    fn a2_product_and_action() {
        let a = alg("A2", "default");
        let p = a.product(&a.generator(1).unwrap(), &a.generator(2).unwrap()).unwrap();
        assert_eq!(p.to_string(), "13: 1, 23: -1");
        let x = a.to_nbc(&Word::from([2, 3])).unwrap();
        let s1 = a.root_system().simple_reflection(0).clone();
        assert_eq!(a.act(&x, &s1).unwrap(), x.neg());
        let g = a.generator(2).unwrap();
        assert!(a.product(&g, &g).unwrap().is_zero());
        assert_eq!(a.product(&a.one(), &p).unwrap(), p);
    }

    #[test]
    fn ambient_checks() {
        let a = alg("A2", "default");
        let b = alg("A2", "default");
        assert!(matches!(a.act(&b.one(), &a.root_system().identity()), Err(Error::AmbientMismatch)));
        assert!(a.one().add(&b.one()).is_err());
        assert!(a.monomial(&[4]).is_err());
    }
}
