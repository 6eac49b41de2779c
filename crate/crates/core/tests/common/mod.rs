//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use num_traits::{One, Zero};
use oscox::coxeter::{GroupElement, RootSystem};
use oscox::linalg;
use oscox::matroid::{ReflectionOrder, Word};
use oscox::Scalar;

pub fn rs(t: &str) -> Arc<RootSystem> {
    Arc::new(RootSystem::new(t.parse().unwrap()))
}

/// Group closure from the simple reflections by breadth-first search.
pub fn group_elements(rs: &RootSystem) -> Vec<GroupElement> {
    let id = rs.identity();
    let mut seen = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut queue = VecDeque::from([0]);
    while let Some(k) = queue.pop_front() {
        for s in rs.simple_reflections() {
            let y = &out[k] * s;
            if seen.insert(y.clone()) {
                queue.push_back(out.len());
                out.push(y);
            }
        }
    }
    out
}

/// Rank from coordinates by elimination; dihedral factors by `min(k, 2)`.
pub fn naive_rank(rs: &RootSystem, order: &ReflectionOrder, letters: &[u16]) -> usize {
    let mut total = 0;
    for (fi, block) in rs.blocks().iter().enumerate() {
        let roots: Vec<usize> = letters
            .iter()
            .map(|&x| order.root_at(x))
            .filter(|&r| rs.factor_of(r) == fi)
            .collect();
        total += if block.factor.is_dihedral() {
            roots.len().min(2)
        } else {
            let vs: Vec<Vec<Scalar>> = roots.iter().map(|&r| rs.coords(r).unwrap().to_vec()).collect();
            linalg::rank(&vs)
        };
    }
    total
}

fn subsets(n: u16, max_len: usize) -> Vec<Vec<u16>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &frontier {
            let start = s.last().map_or(1, |&x: &u16| x + 1);
            for x in start..=n {
                let mut t: Vec<u16> = s.clone();
                t.push(x);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// All circuits, by testing every subset of size at most `rank + 1`.
pub fn naive_circuits(rs: &RootSystem, order: &ReflectionOrder) -> Vec<Vec<u16>> {
    let n = rs.num_positive() as u16;
    subsets(n, rs.rank() + 1)
        .into_iter()
        .filter(|s| {
            !s.is_empty()
                && naive_rank(rs, order, s) < s.len()
                && (0..s.len()).all(|i| {
                    let mut t = s.clone();
                    t.remove(i);
                    naive_rank(rs, order, &t) == t.len()
                })
        })
        .collect()
}

/// Increasing words containing no circuit minus its largest letter.
pub fn naive_nbc(rs: &RootSystem, order: &ReflectionOrder) -> Vec<Word> {
    let broken: Vec<Vec<u16>> = naive_circuits(rs, order)
        .into_iter()
        .map(|mut c| {
            c.pop();
            c
        })
        .collect();
    let n = rs.num_positive() as u16;
    let mut out: Vec<Word> = subsets(n, rs.rank())
        .into_iter()
        .filter(|s| !broken.iter().any(|b| b.iter().all(|x| s.contains(x))))
        .map(Word::from_letters)
        .collect();
    out.sort();
    out
}

fn pairing(rs: &RootSystem, u: &[Scalar], v: &[Scalar]) -> Scalar {
    let g = rs.gram().unwrap();
    let mut s = Scalar::zero();
    for (i, ui) in u.iter().enumerate() {
        for (j, vj) in v.iter().enumerate() {
            s += &(&(ui * &g[i][j]) * vj);
        }
    }
    s
}

fn det(mut m: Vec<Vec<Scalar>>) -> Scalar {
    let n = m.len();
    let mut d = Scalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Scalar::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d = &d * &m[c][c];
        let inv = m[c][c].inv().unwrap();
        for r in c + 1..n {
            let f = &m[r][c] * &inv;
            for k in c..n {
                let t = &f * &m[c][k];
                m[r][k] -= &t;
            }
        }
    }
    d
}

/// `dlog f_{t_1} ^ ... ^ dlog f_{t_p}` at `x` on `dirs`, for an arbitrary
/// letter sequence.
pub fn dlog_eval(
    rs: &RootSystem,
    order: &ReflectionOrder,
    letters: &[u16],
    x: &[Scalar],
    dirs: &[Vec<Scalar>],
) -> Scalar {
    let roots: Vec<&[Scalar]> = letters.iter().map(|&t| rs.coords(order.root_at(t)).unwrap()).collect();
    let m: Vec<Vec<Scalar>> = roots
        .iter()
        .map(|b| dirs.iter().map(|v| pairing(rs, b, v)).collect())
        .collect();
    let denom = roots.iter().fold(Scalar::one(), |acc, b| &acc * &pairing(rs, b, x));
    &det(m) * &denom.inv().unwrap()
}

fn proportional_or_zero(u: &[Scalar], v: &[Scalar]) -> bool {
    (0..u.len()).all(|i| (0..u.len()).all(|j| &u[i] * &v[j] == &u[j] * &v[i]))
}

/// Projection test written out directly on coordinates. Dihedral types
/// have no coordinates; there every involution passes.
pub fn oracle_special(rs: &RootSystem, t: &GroupElement) -> bool {
    if !rs.has_coordinates() {
        return true;
    }
    let half = Scalar::from_ratio(1, 2).unwrap();
    let plus: Vec<usize> = (0..rs.num_roots()).filter(|&b| t.apply(b) == b).collect();
    let minus: Vec<usize> = (0..rs.num_roots()).filter(|&b| t.apply(b) == rs.negate(b)).collect();
    (0..rs.num_roots()).all(|a| {
        let va = rs.coords(a).unwrap();
        let ta = rs.coords(t.apply(a)).unwrap();
        let p: Vec<Scalar> = va.iter().zip(ta).map(|(x, y)| &(x + y) * &half).collect();
        let m: Vec<Scalar> = va.iter().zip(ta).map(|(x, y)| &(x - y) * &half).collect();
        let zero = |v: &[Scalar]| v.iter().all(Zero::is_zero);
        let ok_plus = zero(&p) || plus.iter().any(|&b| proportional_or_zero(&p, rs.coords(b).unwrap()));
        let ok_minus = zero(&m) || minus.iter().any(|&b| proportional_or_zero(&m, rs.coords(b).unwrap()));
        ok_plus || ok_minus
    })
}

/// Number of conjugacy classes of special involutions, by brute force.
pub fn oracle_special_class_count(rs: &RootSystem) -> usize {
    let all = group_elements(rs);
    let mut seen: HashSet<GroupElement> = HashSet::new();
    let mut count = 0;
    for t in all.iter().filter(|w| w.is_involution()) {
        if seen.contains(t) {
            continue;
        }
        for w in &all {
            seen.insert(w.conjugate(t));
        }
        if oracle_special(rs, t) {
            count += 1;
        }
    }
    count
}
