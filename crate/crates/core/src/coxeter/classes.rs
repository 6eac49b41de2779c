//! Involutions, brute-force conjugacy, and shapes.

use std::collections::HashMap;

use serde::Serialize;

use super::chain::ParabolicChain;
use super::element::GroupElement;
use super::roots::RootSystem;
use crate::error::{Error, Result};
use crate::linalg::{proportional, Echelon};
use crate::scalar::Scalar;

/// Bases of the `+1` and `-1` eigenspaces of an involution.
#[derive(Clone, Debug)]
pub struct Eigenspaces {
    pub plus: Vec<Vec<Scalar>>,
    pub minus: Vec<Vec<Scalar>>,
}

fn half_sum(a: &[Scalar], b: &[Scalar], sign: i64) -> Vec<Scalar> {
    let half = RootSystem::half();
    let s = Scalar::from_integer(sign);
    a.iter().zip(b).map(|(x, y)| &(x + &(&s * y)) * &half).collect()
}

pub fn eigenspace_decomposition(rs: &RootSystem, t: &GroupElement) -> Result<Eigenspaces> {
    if !t.is_involution() {
        return Err(Error::NotAnInvolution);
    }
    rs.require_coordinates()?;
    let (mut plus, mut minus) = (Echelon::new(), Echelon::new());
    for &s in rs.simple_roots() {
        let v = rs.coords(s).unwrap();
        let tv = rs.coords(t.apply(s)).unwrap();
        plus.insert(&half_sum(v, tv, 1));
        minus.insert(&half_sum(v, tv, -1));
    }
    Ok(Eigenspaces {
        plus: plus.rows().map(<[Scalar]>::to_vec).collect(),
        minus: minus.rows().map(<[Scalar]>::to_vec).collect(),
    })
}

/// Whether every root has a projection onto an eigenspace of `t` that is
/// proportional to a root lying in that eigenspace (zero counts).
///
/// Roots of dihedral factors always pass: every involution of a dihedral
/// group is special (its `-1` eigenspace is either everything or the line
/// of a root).
pub fn is_special_involution(rs: &RootSystem, t: &GroupElement) -> Result<bool> {
    if !t.is_involution() {
        return Err(Error::NotAnInvolution);
    }
    let n = rs.num_positive();
    let fixed: Vec<usize> = (0..n).filter(|&b| t.apply(b) == b).collect();
    let negated: Vec<usize> = (0..n).filter(|&b| t.apply(b) == rs.negate(b)).collect();
    let passes = |candidates: &[usize], p: &[Scalar]| {
        candidates
            .iter()
            .any(|&b| proportional(p, rs.coords(b).unwrap()))
            || p.iter().all(num_traits::Zero::is_zero)
    };
    for a in 0..n {
        if rs.factor_is_dihedral(a) {
            continue;
        }
        let v = rs.coords(a).unwrap();
        let tv = rs.coords(t.apply(a)).unwrap();
        let linear = |bs: &[usize]| -> Vec<usize> {
            bs.iter().copied().filter(|&b| !rs.factor_is_dihedral(b)).collect()
        };
        if !(passes(&linear(&fixed), &half_sum(v, tv, 1))
            || passes(&linear(&negated), &half_sum(v, tv, -1)))
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Brute-force conjugacy classes of the whole group.
#[derive(Clone, Debug)]
pub struct Conjugacy {
    pub elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
}

impl Conjugacy {
    pub fn new(rs: &RootSystem, chain: &ParabolicChain, guard: u128) -> Result<Self> {
        let elements: Vec<GroupElement> = chain.elements(rs, guard)?.collect();
        let index: HashMap<GroupElement, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let mut class_of = vec![usize::MAX; elements.len()];
        let mut classes = Vec::new();
        for start in 0..elements.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let c = classes.len();
            class_of[start] = c;
            let mut members = vec![start];
            let mut k = 0;
            while k < members.len() {
                let w = &elements[members[k]];
                for s in rs.simple_reflections() {
                    let img = index[&s.conjugate(w)];
                    if class_of[img] == usize::MAX {
                        class_of[img] = c;
                        members.push(img);
                    }
                }
                k += 1;
            }
            members.sort_unstable();
            classes.push(members);
        }
        Ok(Self {
            elements,
            index,
            class_of,
            classes,
        })
    }

    pub fn class_of(&self, w: &GroupElement) -> usize {
        self.class_of[self.index[w]]
    }

    pub fn are_conjugate(&self, a: &GroupElement, b: &GroupElement) -> bool {
        self.class_of(a) == self.class_of(b)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// A `W`-conjugacy class of subsets of the simple generators.
#[derive(Clone, Debug, Serialize)]
pub struct Shape {
    /// Fixed representative: the first member by size, then lexicographically.
    pub representative: Vec<usize>,
    pub members: Vec<Vec<usize>>,
}

impl Shape {
    pub fn size(&self) -> usize {
        self.representative.len()
    }
}

fn subset_of_mask(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

fn subset_key(s: &[usize]) -> (usize, Vec<usize>) {
    (s.len(), s.to_vec())
}

/// Partition of all subsets `I` of `S` by `J = w I w^-1`, searched over
/// every `w` in the group.
pub fn shapes(rs: &RootSystem, conj: &Conjugacy) -> Vec<Shape> {
    let l = rs.rank();
    let count = 1usize << l;
    let mut parent: Vec<usize> = (0..count).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for w in &conj.elements {
        // w s w^-1 is simple iff w(a_s) = +-a_t
        let image: Vec<Option<usize>> = (0..l)
            .map(|s| rs.simple_index_of(w.apply(rs.simple_root(s))))
            .collect();
        for mask in 1..count {
            let mut target = 0u64;
            let ok = subset_of_mask(mask as u64).into_iter().all(|s| match image[s] {
                Some(t) => {
                    target |= 1 << t;
                    true
                }
                None => false,
            });
            if ok {
                let (a, b) = (find(&mut parent, mask), find(&mut parent, target as usize));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
    for mask in 0..count {
        let root = find(&mut parent, mask);
        groups.entry(root).or_default().push(subset_of_mask(mask as u64));
    }
    let mut out: Vec<Shape> = groups
        .into_values()
        .map(|mut members| {
            members.sort_by_key(|m| subset_key(m));
            Shape {
                representative: members[0].clone(),
                members,
            }
        })
        .collect();
    out.sort_by_key(|s| subset_key(&s.representative));
    out
}

/// A conjugacy class of involutions, generated as the class of `w_I`.
#[derive(Clone, Debug, Serialize)]
pub struct InvolutionClass {
    /// A subset satisfying the `(-1)`-condition whose `w_I` lies in the class.
    pub subset: Vec<usize>,
    pub size: usize,
    pub special: bool,
}

/// Classes of involutions obtained from the `w_I` for `(-1)`-subsets `I`,
/// cross-checked against direct enumeration of all involutions.
pub fn involution_classes(rs: &RootSystem, conj: &Conjugacy) -> Result<Vec<InvolutionClass>> {
    let l = rs.rank();
    let mut found: Vec<(usize, Vec<usize>)> = Vec::new();
    for mask in 0..(1u64 << l) {
        let subset = subset_of_mask(mask);
        if !rs.minus_one_condition(&subset) {
            continue;
        }
        let c = conj.class_of(&rs.longest_element(&subset));
        match found.iter_mut().find(|(k, _)| *k == c) {
            Some((_, s)) if subset_key(&subset) < subset_key(s) => *s = subset,
            Some(_) => {}
            None => found.push((c, subset)),
        }
    }
    let mut direct: Vec<usize> = conj
        .elements
        .iter()
        .filter(|w| w.is_involution())
        .map(|w| conj.class_of(w))
        .collect();
    direct.sort_unstable();
    direct.dedup();
    let mut from_subsets: Vec<usize> = found.iter().map(|(c, _)| *c).collect();
    from_subsets.sort_unstable();
    if direct != from_subsets {
        return Err(Error::Verification(
            "involution classes from (-1)-subsets differ from direct enumeration".into(),
        ));
    }
    found.sort_by_key(|(_, s)| subset_key(s));
    found
        .into_iter()
        .map(|(c, subset)| {
            let rep = &conj.elements[conj.classes[c][0]];
            Ok(InvolutionClass {
                size: conj.classes[c].len(),
                special: is_special_involution(rs, rep)?,
                subset,
            })
        })
        .collect()
}
