use std::collections::{HashSet, VecDeque};

use super::element::GroupElement;
use super::roots::RootSystem;
use crate::error::{Error, Result};

/// Default refusal threshold for anything that enumerates the whole group.
pub const DEFAULT_GUARD: u128 = 1_000_000;

pub fn check_guard(order: u128, guard: u128) -> Result<()> {
    if order > guard {
        Err(Error::GroupTooLarge { order, guard })
    } else {
        Ok(())
    }
}

/// The chain `W_0 < W_1 < ... < W_l` with `W_j = <s_1, ..., s_j>`, and for
/// each step the minimal length left coset representatives `D_j` of
/// `W_{j-1}` in `W_j`.
#[derive(Clone, Debug)]
pub struct ParabolicChain {
    /// `levels[j - 1] = D_j`.
    levels: Vec<Vec<GroupElement>>,
}

impl ParabolicChain {
    /// Computes each `D_j` by breadth-first search on left multiplication,
    /// keeping elements `x` with `x(a_s) > 0` for all `s` in `I_{j-1}`.
    /// Never enumerates `W_j` itself.
    pub fn new(rs: &RootSystem) -> Self {
        let levels = (1..=rs.rank())
            .map(|j| {
                let below: Vec<usize> = (0..j - 1).collect();
                let is_minimal = |x: &GroupElement| below.iter().all(|&s| rs.right_ascent(x, s));
                let id = rs.identity();
                let mut seen: HashSet<GroupElement> = HashSet::from([id.clone()]);
                let mut reps = vec![id];
                let mut queue = VecDeque::from([0usize]);
                while let Some(k) = queue.pop_front() {
                    for s in 0..j {
                        let y = rs.simple_reflection(s) * &reps[k];
                        if y.length() > reps[k].length() && is_minimal(&y) && seen.insert(y.clone()) {
                            queue.push_back(reps.len());
                            reps.push(y);
                        }
                    }
                }
                reps
            })
            .collect();
        Self { levels }
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// `D_j` for `j` in `1..=l`.
    pub fn coset_reps(&self, j: usize) -> &[GroupElement] {
        &self.levels[j - 1]
    }

    pub fn levels(&self) -> &[Vec<GroupElement>] {
        &self.levels
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    /// `sum |D_j|`: the number of group-element images the chained
    /// averaging evaluates.
    pub fn total_reps(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn group_order(&self) -> u128 {
        self.levels.iter().map(|d| d.len() as u128).product()
    }

    /// Streams every group element once, as `x_l ... x_1` with `x_j` in `D_j`.
    pub fn elements<'a>(&'a self, rs: &RootSystem, guard: u128) -> Result<GroupElements<'a>> {
        check_guard(self.group_order(), guard)?;
        Ok(GroupElements::new(self, rs.identity()))
    }

    /// The factors `(x_l, ..., x_1)` of `w`, as indices into each `D_j`.
    pub fn factorize(&self, rs: &RootSystem, w: &GroupElement) -> Option<Vec<usize>> {
        // peel x_l first: x_l is the minimal representative of w W_{l-1}
        let mut rest = w.clone();
        let mut out = vec![0; self.len()];
        for j in (1..=self.len()).rev() {
            let below: Vec<usize> = (0..j - 1).collect();
            // reduce rest to its minimal coset representative
            let mut x = rest.clone();
            while let Some(&s) = below.iter().find(|&&s| !rs.right_ascent(&x, s)) {
                x = &x * rs.simple_reflection(s);
            }
            let k = self.levels[j - 1].iter().position(|d| *d == x)?;
            out[self.len() - j] = k;
            rest = &x.inverse() * &rest;
        }
        rest.is_identity().then_some(out)
    }
}

/// Iterator over the group in mixed-radix order of the chain factors.
pub struct GroupElements<'a> {
    chain: &'a ParabolicChain,
    digits: Vec<usize>,
    /// `prefix[k]` = product of the top `k` chosen factors.
    prefix: Vec<GroupElement>,
    done: bool,
}

impl<'a> GroupElements<'a> {
    fn new(chain: &'a ParabolicChain, id: GroupElement) -> Self {
        let l = chain.len();
        let mut it = Self {
            chain,
            digits: vec![0; l],
            prefix: vec![id; l + 1],
            done: false,
        };
        it.rebuild(0);
        it
    }

    /// Digit `k` selects from `D_{l-k}`.
    fn rebuild(&mut self, from: usize) {
        let l = self.chain.len();
        for k in from..l {
            let x = &self.chain.levels[l - 1 - k][self.digits[k]];
            self.prefix[k + 1] = &self.prefix[k] * x;
        }
    }
}

impl Iterator for GroupElements<'_> {
    type Item = GroupElement;

    fn next(&mut self) -> Option<GroupElement> {
        if self.done {
            return None;
        }
        let l = self.chain.len();
        let out = self.prefix[l].clone();
        // advance the last digit (x_1) fastest
        let mut k = l;
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.digits[k] += 1;
            if self.digits[k] < self.chain.levels[l - 1 - k].len() {
                self.rebuild(k);
                break;
            }
            self.digits[k] = 0;
        }
        Some(out)
    }
}
