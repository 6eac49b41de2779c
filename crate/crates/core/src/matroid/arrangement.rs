use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use parking_lot::RwLock;
use smallvec::SmallVec;

use super::word::Word;
use crate::coxeter::{GroupElement, RootSystem};
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::scalar::Scalar;

/// A linear order on the reflections: `positions[k]` is the positive root
/// placed at position `k + 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ReflectionOrder {
    positions: Vec<usize>,
}

impl ReflectionOrder {
    /// The root-system construction order.
    pub fn standard(rs: &RootSystem) -> Self {
        Self {
            positions: (0..rs.num_positive()).collect(),
        }
    }

    /// Construction order with the simple reflections moved to the end (in
    /// generator order). Makes every `a_I`, `I` a set of simple
    /// reflections, a basis monomial.
    pub fn simples_last(rs: &RootSystem) -> Self {
        let simple = rs.simple_roots();
        let mut positions: Vec<usize> = (0..rs.num_positive())
            .filter(|r| !simple.contains(r))
            .collect();
        positions.extend_from_slice(simple);
        Self { positions }
    }

    /// From a permutation of `1..=N` listing root indices (1-based) by position.
    pub fn explicit(rs: &RootSystem, perm: &[usize]) -> Result<Self> {
        let n = rs.num_positive();
        let mut seen = vec![false; n];
        for &p in perm {
            if p == 0 || p > n || std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::InvalidOrder(format!(
                    "{perm:?} is not a permutation of 1..={n}"
                )));
            }
        }
        if perm.len() != n {
            return Err(Error::InvalidOrder(format!(
                "expected {n} entries, got {}",
                perm.len()
            )));
        }
        Ok(Self {
            positions: perm.iter().map(|p| p - 1).collect(),
        })
    }

    /// `s12 < s23 < s34 < s13 < s24 < s14` in type `A3`.
    pub fn reference_a3(rs: &RootSystem) -> Result<Self> {
        if rs.coxeter_type().to_string() != "A3" {
            return Err(Error::InvalidOrder("reference-a3 needs type A3".into()));
        }
        let wanted: [[i64; 3]; 6] = [
            [1, 0, 0],
            [0, 1, 0],
            [0, 0, 1],
            [1, 1, 0],
            [0, 1, 1],
            [1, 1, 1],
        ];
        let positions = wanted
            .iter()
            .map(|c| {
                let c: Vec<Scalar> = c.iter().map(|&x| Scalar::from_integer(x)).collect();
                (0..rs.num_positive())
                    .find(|&r| rs.coords(r) == Some(&c[..]))
                    .expect("A3 root")
            })
            .collect();
        Ok(Self { positions })
    }

    /// Resolves `default`, `simples-last`, `reference-a3`, or a comma separated
    /// permutation of `1..=N`.
    pub fn parse(rs: &RootSystem, text: &str) -> Result<Self> {
        match text.trim() {
            "default" | "standard" => Ok(Self::standard(rs)),
            "simples-last" => Ok(Self::simples_last(rs)),
            "reference-a3" | "paper-a3" => Self::reference_a3(rs),
            list => {
                let perm: Vec<usize> = list
                    .split([',', ' '])
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse())
                    .collect::<Result<_, _>>()
                    .map_err(|_| Error::InvalidOrder(format!("cannot parse order {list:?}")))?;
                Self::explicit(rs, &perm)
            }
        }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Positive root at a 1-based position.
    pub fn root_at(&self, letter: u16) -> usize {
        self.positions[letter as usize - 1]
    }

    /// 1-based root indices by position.
    pub fn as_permutation(&self) -> Vec<usize> {
        self.positions.iter().map(|p| p + 1).collect()
    }
}

impl fmt::Display for ReflectionOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.as_permutation().iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// A set of reflection positions `1..=N`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ReflSet(SmallVec<[u64; 2]>);

impl ReflSet {
    pub fn with_capacity(n: usize) -> Self {
        ReflSet(SmallVec::from_elem(0, n / 64 + 1))
    }

    pub fn insert(&mut self, letter: u16) {
        self.0[letter as usize / 64] |= 1 << (letter % 64);
    }

    pub fn contains(&self, letter: u16) -> bool {
        self.0[letter as usize / 64] >> (letter % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn max(&self) -> Option<u16> {
        self.0
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| (i * 64 + 63 - w.leading_zeros() as usize) as u16)
    }

    pub fn iter(&self) -> impl Iterator<Item = u16> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| (i * 64 + b) as u16)
        })
    }
}

pub type FlatId = u32;

#[derive(Clone, Debug)]
pub struct Flat {
    pub set: ReflSet,
    pub rank: u16,
    /// Largest letter in the flat; 0 for the bottom flat.
    pub max: u16,
    /// An independent spanning set.
    pub basis: SmallVec<[u16; 8]>,
}

#[derive(Default)]
struct FlatTable {
    flats: Vec<Flat>,
    by_set: HashMap<ReflSet, FlatId>,
    joins: HashMap<(FlatId, u16), FlatId>,
}

/// The reflection arrangement with a fixed order: the matroid on letters
/// `1..=N`, with rank queries answered through a memoized lattice of flats.
pub struct Arrangement {
    rs: Arc<RootSystem>,
    order: ReflectionOrder,
    /// 1-based letter of each positive root.
    letter_of: Vec<u16>,
    table: RwLock<FlatTable>,
}

impl fmt::Debug for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Arrangement")
            .field("type", &self.rs.coxeter_type().to_string())
            .field("order", &self.order.to_string())
            .finish()
    }
}

pub const BOTTOM: FlatId = 0;

impl Arrangement {
    pub fn new(rs: Arc<RootSystem>, order: ReflectionOrder) -> Self {
        let mut letter_of = vec![0u16; rs.num_positive()];
        for (k, &r) in order.positions.iter().enumerate() {
            letter_of[r] = k as u16 + 1;
        }
        let bottom = Flat {
            set: ReflSet::with_capacity(rs.num_positive() + 1),
            rank: 0,
            max: 0,
            basis: SmallVec::new(),
        };
        let mut table = FlatTable::default();
        table.by_set.insert(bottom.set.clone(), BOTTOM);
        table.flats.push(bottom);
        Self {
            rs,
            order,
            letter_of,
            table: RwLock::new(table),
        }
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn order(&self) -> &ReflectionOrder {
        &self.order
    }

    /// `N`.
    pub fn len(&self) -> usize {
        self.letter_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letter_of.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn root_of(&self, letter: u16) -> usize {
        self.order.root_at(letter)
    }

    pub fn letter_of(&self, root: usize) -> u16 {
        self.letter_of[self.rs.positive_of(root)]
    }

    /// Letters of the simple reflections of a generator subset.
    pub fn simple_letters(&self, subset: &[usize]) -> Vec<u16> {
        subset
            .iter()
            .map(|&i| self.letter_of(self.rs.simple_root(i)))
            .collect()
    }

    /// Letter permutation `r -> w^-1 r w` (index 0 unused).
    pub fn letter_action(&self, w: &GroupElement) -> Vec<u16> {
        let roots = self.rs.reflection_action(w);
        let mut out = vec![0u16; self.len() + 1];
        for letter in 1..=self.len() as u16 {
            out[letter as usize] = self.letter_of[roots[self.root_of(letter)]];
        }
        out
    }

    pub fn flat(&self, id: FlatId) -> Flat {
        self.table.read().flats[id as usize].clone()
    }

    pub fn flat_rank(&self, id: FlatId) -> usize {
        self.table.read().flats[id as usize].rank as usize
    }

    pub fn flat_max(&self, id: FlatId) -> u16 {
        self.table.read().flats[id as usize].max
    }

    pub fn flat_contains(&self, id: FlatId, letter: u16) -> bool {
        self.table.read().flats[id as usize].set.contains(letter)
    }

    pub fn num_flats_seen(&self) -> usize {
        self.table.read().flats.len()
    }

    /// Closure of `flat + letter`.
    pub fn join(&self, flat: FlatId, letter: u16) -> FlatId {
        let (basis, contained) = {
            let t = self.table.read();
            if let Some(&g) = t.joins.get(&(flat, letter)) {
                return g;
            }
            let f = &t.flats[flat as usize];
            (f.basis.clone(), f.set.contains(letter))
        };
        if contained {
            self.table.write().joins.insert((flat, letter), flat);
            return flat;
        }
        let mut basis = basis;
        basis.push(letter);
        let set = self.closure_of_basis(&basis);
        let max = set.max().unwrap_or(0);
        let mut t = self.table.write();
        let id = match t.by_set.get(&set) {
            Some(&id) => id,
            None => {
                let id = t.flats.len() as FlatId;
                t.by_set.insert(set.clone(), id);
                t.flats.push(Flat {
                    set,
                    rank: basis.len() as u16,
                    max,
                    basis,
                });
                id
            }
        };
        t.joins.insert((flat, letter), id);
        id
    }

    /// All letters whose roots lie in the span of an independent set.
    fn closure_of_basis(&self, basis: &[u16]) -> ReflSet {
        let mut set = ReflSet::with_capacity(self.len() + 1);
        let blocks = self.rs.blocks();
        for (fi, block) in blocks.iter().enumerate() {
            let mine: Vec<usize> = basis
                .iter()
                .map(|&x| self.root_of(x))
                .filter(|&r| self.rs.factor_of(r) == fi)
                .collect();
            if mine.is_empty() {
                continue;
            }
            if block.factor.is_dihedral() {
                if mine.len() >= 2 {
                    block.positive.clone().for_each(|r| set.insert(self.letter_of[r]));
                } else {
                    set.insert(self.letter_of[mine[0]]);
                }
                continue;
            }
            let mut span = Echelon::new();
            for &r in &mine {
                span.insert(self.rs.coords(r).unwrap());
            }
            for r in block.positive.clone() {
                if mine.contains(&r) || span.contains(self.rs.coords(r).unwrap()) {
                    set.insert(self.letter_of[r]);
                }
            }
        }
        set
    }

    /// Flat spanned by the letters of a word.
    pub fn flat_of(&self, letters: &[u16]) -> FlatId {
        letters.iter().fold(BOTTOM, |f, &x| self.join(f, x))
    }

    /// Rank of the span of the roots of the given letters.
    pub fn rank_of(&self, letters: &[u16]) -> usize {
        self.flat_rank(self.flat_of(letters))
    }

    pub fn is_independent(&self, letters: &[u16]) -> bool {
        self.rank_of(letters) == letters.len()
    }

    /// Whether `letters` is minimally dependent.
    pub fn is_circuit(&self, letters: &[u16]) -> bool {
        if letters.is_empty() || self.is_independent(letters) {
            return false;
        }
        (0..letters.len()).all(|i| {
            let rest: SmallVec<[u16; 8]> = letters
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &x)| x)
                .collect();
            self.is_independent(&rest)
        })
    }

    /// Largest `u > max(T)` making `T u` a circuit, for independent `T`.
    pub fn circuit_extension(&self, word: &Word) -> Option<u16> {
        let t = word.letters();
        let start = word.last().unwrap_or(0);
        let flat = self.flat_of(t);
        (start + 1..=self.len() as u16).rev().find(|&u| {
            self.flat_contains(flat, u)
                && (0..t.len()).all(|i| {
                    let rest = word.without(i);
                    !self.flat_contains(self.flat_of(rest.letters()), u)
                })
        })
    }

    /// For a basis word `prefix` with last letter below `m`: whether
    /// `prefix m` is again a basis word, i.e. independent with no `u > m`
    /// in the closure.
    pub fn can_extend(&self, prefix: &Word, m: u16) -> bool {
        let f = self.flat_of(prefix.letters());
        if self.flat_contains(f, m) {
            return false;
        }
        self.flat_max(self.join(f, m)) == m
    }
}
