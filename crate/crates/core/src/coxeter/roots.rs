use std::collections::{HashMap, VecDeque};
use std::ops::Range;

use num_traits::Zero;

use super::element::GroupElement;
use super::types::{CoxeterType, Factor};
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Placement of one irreducible factor inside a product root system.
#[derive(Clone, Debug)]
pub struct FactorBlock {
    pub factor: Factor,
    /// 0-based generator indices of this factor.
    pub generators: Range<usize>,
    /// Positive root indices of this factor.
    pub positive: Range<usize>,
}

/// All roots of a finite Coxeter type in simple-root coordinates, together
/// with the simple reflections as permutations of the roots.
///
/// Dihedral factors `I2(m)` are modelled combinatorially: their roots carry
/// no coordinates, only the permutation action and the matroid structure.
#[derive(Clone, Debug)]
pub struct RootSystem {
    ty: CoxeterType,
    rank: usize,
    n_pos: usize,
    blocks: Vec<FactorBlock>,
    /// Per root (`2N` entries); `None` for roots of dihedral factors.
    coords: Vec<Option<Vec<Scalar>>>,
    simple: Vec<usize>,
    simple_reflections: Vec<GroupElement>,
    reflections: Vec<GroupElement>,
    root_factor: Vec<usize>,
    gram: Option<Vec<Vec<Scalar>>>,
    cartan: Option<Vec<Vec<Scalar>>>,
}

/// Symmetric W-invariant bilinear form on the simple roots of a factor.
pub(crate) fn gram_matrix(factor: Factor) -> Option<Vec<Vec<Scalar>>> {
    if factor.is_dihedral() {
        return None;
    }
    let l = factor.rank();
    let two = Scalar::from_integer(2);
    let mut g = vec![vec![Scalar::zero(); l]; l];
    for i in 0..l {
        g[i][i] = two.clone();
    }
    match factor {
        Factor::B(n) => g[n - 1][n - 1] = Scalar::from_integer(1),
        Factor::F4 => {
            g[2][2] = Scalar::from_integer(1);
            g[3][3] = Scalar::from_integer(1);
        }
        _ => {}
    }
    for i in 0..l {
        for j in 0..l {
            if i == j {
                continue;
            }
            g[i][j] = match (factor, factor.coxeter_entry(i, j)) {
                (_, 2) => Scalar::zero(),
                (Factor::F4, 3) if i.min(j) == 2 => Scalar::from_ratio(-1, 2).unwrap(),
                (_, 3) | (_, 4) => Scalar::from_integer(-1),
                (_, 5) => -Scalar::golden_ratio(),
                (f, m) => unreachable!("bond {m} in {f}"),
            };
        }
    }
    Some(g)
}

/// `c[i][j] = 2 (a_i, a_j) / (a_i, a_i)`, so that `s_i(a_j) = a_j - c[i][j] a_i`.
fn cartan_from_gram(g: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let two = Scalar::from_integer(2);
    g.iter()
        .enumerate()
        .map(|(i, row)| row.iter().map(|x| &(&two * x) / &g[i][i]).collect())
        .collect()
}

struct LocalRoots {
    /// `2n` roots, positives first; `None` for the dihedral model.
    coords: Option<Vec<Vec<Scalar>>>,
    n_pos: usize,
    simple: Vec<usize>,
    simple_perms: Vec<Vec<u16>>,
}

fn is_positive(v: &[Scalar]) -> bool {
    v.iter().all(|x| x.signum() >= 0) && v.iter().any(|x| !x.is_zero())
}

fn linear_roots(factor: Factor) -> LocalRoots {
    let l = factor.rank();
    let cartan = cartan_from_gram(&gram_matrix(factor).expect("linear factor"));
    let reflect = |i: usize, v: &[Scalar]| -> Vec<Scalar> {
        let pairing: Scalar = (0..l).map(|j| &cartan[i][j] * &v[j]).sum();
        let mut out = v.to_vec();
        out[i] -= &pairing;
        out
    };
    let mut positives: Vec<Vec<Scalar>> = Vec::new();
    let mut index: HashMap<Vec<Scalar>, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for i in 0..l {
        let mut e = vec![Scalar::zero(); l];
        e[i] = Scalar::from_integer(1);
        index.insert(e.clone(), positives.len());
        positives.push(e);
        queue.push_back(i);
    }
    while let Some(k) = queue.pop_front() {
        for i in 0..l {
            let img = reflect(i, &positives[k]);
            if is_positive(&img) && !index.contains_key(&img) {
                index.insert(img.clone(), positives.len());
                queue.push_back(positives.len());
                positives.push(img);
            }
        }
    }
    let n = positives.len();
    debug_assert_eq!(n, factor.num_reflections());
    let mut all = positives.clone();
    for v in &positives {
        let neg: Vec<Scalar> = v.iter().map(|x| -x).collect();
        index.insert(neg.clone(), all.len());
        all.push(neg);
    }
    let simple_perms = (0..l)
        .map(|i| {
            all.iter()
                .map(|v| index[&reflect(i, v)] as u16)
                .collect::<Vec<u16>>()
        })
        .collect();
    LocalRoots {
        coords: Some(all),
        n_pos: n,
        simple: (0..l).collect(),
        simple_perms,
    }
}

/// Roots of `I2(m)` at angles `k pi / m`, `k = 0..2m`; the simple roots are
/// at angles `0` and `(m-1) pi / m`.
fn dihedral_roots(m: usize) -> LocalRoots {
    let two_m = 2 * m;
    let reflect_in = |j: usize| -> Vec<u16> {
        (0..two_m)
            .map(|k| ((2 * j + m + two_m - k) % two_m) as u16)
            .collect()
    };
    LocalRoots {
        coords: None,
        n_pos: m,
        simple: vec![0, m - 1],
        simple_perms: vec![reflect_in(0), reflect_in(m - 1)],
    }
}

impl RootSystem {
    pub fn new(ty: CoxeterType) -> Self {
        let locals: Vec<LocalRoots> = ty
            .factors()
            .iter()
            .map(|&f| match f {
                Factor::I2(m) => dihedral_roots(m),
                f => linear_roots(f),
            })
            .collect();
        let rank = ty.rank();
        let n_pos: usize = locals.iter().map(|r| r.n_pos).sum();
        let n_roots = 2 * n_pos;

        let mut blocks = Vec::new();
        let mut coords = vec![None; n_roots];
        let mut simple = Vec::new();
        let mut simple_reflections = Vec::new();
        let mut root_factor = vec![0; n_pos];
        let (mut gen_off, mut pos_off) = (0, 0);
        for (fi, (&factor, local)) in ty.factors().iter().zip(&locals).enumerate() {
            let lr = factor.rank();
            let nf = local.n_pos;
            let to_global = |k: usize| -> usize {
                if k < nf {
                    pos_off + k
                } else {
                    n_pos + pos_off + (k - nf)
                }
            };
            if let Some(local_coords) = &local.coords {
                for (k, v) in local_coords.iter().enumerate() {
                    let mut g = vec![Scalar::zero(); rank];
                    g[gen_off..gen_off + lr].clone_from_slice(v);
                    coords[to_global(k)] = Some(g);
                }
            }
            for &s in &local.simple {
                simple.push(to_global(s));
            }
            for perm in &local.simple_perms {
                let mut global: Vec<u16> = (0..n_roots as u16).collect();
                for (k, &img) in perm.iter().enumerate() {
                    global[to_global(k)] = to_global(img as usize) as u16;
                }
                simple_reflections.push(GroupElement::from_perm(global));
            }
            root_factor[pos_off..pos_off + nf].fill(fi);
            blocks.push(FactorBlock {
                factor,
                generators: gen_off..gen_off + lr,
                positive: pos_off..pos_off + nf,
            });
            gen_off += lr;
            pos_off += nf;
        }

        let gram = if ty.has_dihedral_factor() {
            None
        } else {
            let mut g = vec![vec![Scalar::zero(); rank]; rank];
            for b in &blocks {
                let local = gram_matrix(b.factor).expect("linear factor");
                let o = b.generators.start;
                for (i, row) in local.iter().enumerate() {
                    for (j, x) in row.iter().enumerate() {
                        g[o + i][o + j] = x.clone();
                    }
                }
            }
            Some(g)
        };
        let cartan = gram.as_deref().map(cartan_from_gram);

        let mut rs = RootSystem {
            ty,
            rank,
            n_pos,
            blocks,
            coords,
            simple,
            simple_reflections,
            reflections: Vec::new(),
            root_factor,
            gram,
            cartan,
        };
        rs.reflections = rs.compute_reflections();
        rs
    }

    /// Reflection of each positive root, as `w s_i w^-1` with `w(a_i) = root`.
    fn compute_reflections(&self) -> Vec<GroupElement> {
        let id = GroupElement::identity(self.num_roots());
        let mut witness: Vec<Option<(GroupElement, usize)>> = vec![None; self.n_pos];
        let mut queue = VecDeque::new();
        for (i, &r) in self.simple.iter().enumerate() {
            witness[r] = Some((id.clone(), i));
            queue.push_back(r);
        }
        while let Some(r) = queue.pop_front() {
            let (w, i) = witness[r].clone().unwrap();
            for s in &self.simple_reflections {
                let img = s.apply(r);
                if img < self.n_pos && witness[img].is_none() {
                    witness[img] = Some((s * &w, i));
                    queue.push_back(img);
                }
            }
        }
        witness
            .into_iter()
            .map(|entry| {
                let (w, i) = entry.expect("every positive root is W-conjugate to a simple root");
                w.conjugate(&self.simple_reflections[i])
            })
            .collect()
    }

    pub fn coxeter_type(&self) -> &CoxeterType {
        &self.ty
    }

    /// Rank `l`: the number of simple generators.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `N`, the number of positive roots and of reflections.
    pub fn num_positive(&self) -> usize {
        self.n_pos
    }

    pub fn num_roots(&self) -> usize {
        2 * self.n_pos
    }

    pub fn blocks(&self) -> &[FactorBlock] {
        &self.blocks
    }

    /// Index of the irreducible factor owning a root.
    pub fn factor_of(&self, root: usize) -> usize {
        self.root_factor[root % self.n_pos]
    }

    pub fn factor_is_dihedral(&self, root: usize) -> bool {
        self.blocks[self.factor_of(root)].factor.is_dihedral()
    }

    pub fn is_positive(&self, root: usize) -> bool {
        root < self.n_pos
    }

    pub fn negate(&self, root: usize) -> usize {
        (root + self.n_pos) % (2 * self.n_pos)
    }

    /// The positive root in `{root, -root}`.
    pub fn positive_of(&self, root: usize) -> usize {
        root % self.n_pos
    }

    pub fn coords(&self, root: usize) -> Option<&[Scalar]> {
        self.coords[root].as_deref()
    }

    /// Whether every factor carries explicit coordinates.
    pub fn has_coordinates(&self) -> bool {
        self.gram.is_some()
    }

    pub fn gram(&self) -> Option<&[Vec<Scalar>]> {
        self.gram.as_deref()
    }

    pub fn cartan(&self) -> Option<&[Vec<Scalar>]> {
        self.cartan.as_deref()
    }

    /// Root index of the simple root of generator `i` (0-based).
    pub fn simple_root(&self, i: usize) -> usize {
        self.simple[i]
    }

    pub fn simple_roots(&self) -> &[usize] {
        &self.simple
    }

    pub fn simple_reflection(&self, i: usize) -> &GroupElement {
        &self.simple_reflections[i]
    }

    pub fn simple_reflections(&self) -> &[GroupElement] {
        &self.simple_reflections
    }

    /// The reflection through the hyperplane of positive root `r` (0-based).
    pub fn reflection(&self, r: usize) -> &GroupElement {
        &self.reflections[r]
    }

    /// Generator index whose simple root is `root` (up to sign), if any.
    pub fn simple_index_of(&self, root: usize) -> Option<usize> {
        let r = self.positive_of(root);
        self.simple.iter().position(|&s| s == r)
    }

    pub fn group_order(&self) -> u128 {
        self.ty.group_order()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.num_roots())
    }

    /// Product `s_{i_1} ... s_{i_k}` of simple reflections, with generators
    /// labelled `1..=l`.
    pub fn element_from_word(&self, word: &[usize]) -> Result<GroupElement> {
        let mut w = self.identity();
        for &i in word {
            if i == 0 || i > self.rank {
                return Err(Error::GeneratorOutOfRange {
                    index: i,
                    rank: self.rank,
                });
            }
            w = &w * &self.simple_reflections[i - 1];
        }
        Ok(w)
    }

    /// Positive root index of `w^-1(beta_r)`: the reflection `w^-1 r w`.
    pub fn conjugate_reflection(&self, r: usize, w: &GroupElement) -> usize {
        let inv = w.inverse();
        self.positive_of(inv.apply(r))
    }

    /// For every positive root `r`, the positive root of `w^-1 r w`.
    pub fn reflection_action(&self, w: &GroupElement) -> Vec<usize> {
        let inv = w.inverse();
        (0..self.n_pos)
            .map(|r| self.positive_of(inv.apply(r)))
            .collect()
    }

    pub fn length(&self, w: &GroupElement) -> usize {
        w.length()
    }

    /// Whether `w(a_i) > 0`, i.e. `l(w s_i) > l(w)`.
    pub fn right_ascent(&self, w: &GroupElement, i: usize) -> bool {
        w.apply(self.simple[i]) < self.n_pos
    }

    /// Longest element of the standard parabolic subgroup `W_I`, by greedy
    /// right multiplication with ascents.
    pub fn longest_element(&self, subset: &[usize]) -> GroupElement {
        let mut w = self.identity();
        while let Some(&i) = subset.iter().find(|&&i| self.right_ascent(&w, i)) {
            w = &w * &self.simple_reflections[i];
        }
        w
    }

    /// All roots (both signs) of the parabolic root subsystem `Phi_I`.
    pub fn parabolic_roots(&self, subset: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.num_roots()];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &i in subset {
            for r in [self.simple[i], self.negate(self.simple[i])] {
                if !seen[r] {
                    seen[r] = true;
                    queue.push_back(r);
                }
            }
        }
        while let Some(r) = queue.pop_front() {
            for &i in subset {
                let img = self.simple_reflections[i].apply(r);
                if !seen[img] {
                    seen[img] = true;
                    queue.push_back(img);
                }
            }
        }
        (0..self.num_roots()).filter(|&r| seen[r]).collect()
    }

    /// Positive roots of `Phi_I`, i.e. the reflections of `W_I`.
    pub fn parabolic_reflections(&self, subset: &[usize]) -> Vec<usize> {
        self.parabolic_roots(subset)
            .into_iter()
            .filter(|&r| r < self.n_pos)
            .collect()
    }

    /// Whether `w_I` acts as `-1` on `V_I`.
    pub fn minus_one_condition(&self, subset: &[usize]) -> bool {
        let w = self.longest_element(subset);
        self.parabolic_reflections(subset)
            .into_iter()
            .all(|r| w.apply(r) == self.negate(r))
    }

    /// Matrix of `w` on `V` in simple-root coordinates (columns are the
    /// images of the simple roots).
    pub fn matrix(&self, w: &GroupElement) -> Result<Vec<Vec<Scalar>>> {
        self.require_coordinates()?;
        let l = self.rank;
        let mut m = vec![vec![Scalar::zero(); l]; l];
        for j in 0..l {
            let img = self.coords(w.apply(self.simple[j])).expect("coordinates");
            for i in 0..l {
                m[i][j] = img[i].clone();
            }
        }
        Ok(m)
    }

    pub(crate) fn require_coordinates(&self) -> Result<()> {
        match self.blocks.iter().find(|b| b.factor.is_dihedral()) {
            Some(b) => Err(Error::NoCoordinates(b.factor.to_string())),
            None => Ok(()),
        }
    }

    pub fn half() -> Scalar {
        Scalar::Rational(Rational::new(1, 2).unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(t: &str) -> RootSystem {
        RootSystem::new(t.parse().unwrap())
    }

    #[test]
    fn closure_sizes() {
        // closure enumeration stabilizes at |Phi+|
        for (t, n) in [("A2", 3), ("B3", 9), ("H3", 15), ("F4", 24), ("E6", 36), ("E8", 120)] {
            let r = rs(t);
            assert_eq!(r.num_positive(), n, "{t}");
            assert_eq!(r.num_roots(), 2 * n);
        }
    }

    #[test]
    fn h3_uses_sqrt5() {
        let r = rs("H3");
        assert!((0..r.num_roots()).any(|k| r.coords(k).unwrap().iter().any(|x| !x.is_rational())));
        for k in 0..r.num_positive() {
            assert!(r.coords(k).unwrap().iter().all(|x| x.signum() >= 0));
        }
    }

    #[test]
    fn simple_reflection_properties() {
        for t in ["A3", "B3", "H3", "I2(5)", "B2xA1", "D4"] {
            let r = rs(t);
            for (i, s) in r.simple_reflections().iter().enumerate() {
                assert!(s.is_involution());
                assert_eq!(s.length(), 1);
                assert_eq!(s.apply(r.simple_root(i)), r.negate(r.simple_root(i)));
                for k in 0..r.num_roots() {
                    assert_eq!(s.apply(r.negate(k)), r.negate(s.apply(k)));
                }
            }
        }
    }

    #[test]
    fn words_and_braids() {
        let r = rs("A2");
        assert!(r.element_from_word(&[]).unwrap().is_identity());
        assert!(r.element_from_word(&[1, 1]).unwrap().is_identity());
        assert_eq!(
            r.element_from_word(&[1, 2, 1]).unwrap(),
            r.element_from_word(&[2, 1, 2]).unwrap()
        );
        assert!(matches!(
            r.element_from_word(&[3]),
            Err(Error::GeneratorOutOfRange { .. })
        ));
        let i5 = rs("I2(5)");
        let braid = |a: usize, b: usize| -> Vec<usize> { (0..5).map(|k| if k % 2 == 0 { a } else { b }).collect() };
        assert_eq!(
            i5.element_from_word(&braid(1, 2)).unwrap(),
            i5.element_from_word(&braid(2, 1)).unwrap()
        );
    }

    #[test]
    fn conjugating_reflections_in_a2() {
        let r = rs("A2");
        // r1 = s1, r2 = s2, r3 = s1 s2 s1
        let s1 = r.element_from_word(&[1]).unwrap();
        assert_eq!(r.conjugate_reflection(1, &s1), 2);
        assert_eq!(r.conjugate_reflection(1, &r.identity()), 1);
        for k in 0..3 {
            assert_eq!(r.conjugate_reflection(k, r.reflection(k)), k);
        }
        assert_eq!(r.reflection(2), &r.element_from_word(&[1, 2, 1]).unwrap());
    }

    #[test]
    fn longest_elements() {
        let a1 = rs("A1");
        assert_eq!(a1.longest_element(&[0]), *a1.simple_reflection(0));
        assert_eq!(a1.longest_element(&[0]).length(), 1);
        let a2 = rs("A2");
        assert_eq!(a2.longest_element(&[0, 1]).length(), 3);
        let b2 = rs("B2");
        let w = b2.longest_element(&[0, 1]);
        assert!((0..b2.num_roots()).all(|k| w.apply(k) == b2.negate(k)));
    }

    #[test]
    fn minus_one() {
        let a2 = rs("A2");
        assert!(a2.minus_one_condition(&[]));
        assert!(!a2.minus_one_condition(&[0, 1]));
        assert!(rs("B2").minus_one_condition(&[0, 1]));
        assert!(rs("I2(6)").minus_one_condition(&[0, 1]));
        assert!(!rs("I2(7)").minus_one_condition(&[0, 1]));
    }

    #[test]
    fn reflections_match_coordinates() {
        let r = rs("B3");
        let g = r.gram().unwrap();
        for k in 0..r.num_positive() {
            let beta = r.coords(k).unwrap();
            let refl = r.reflection(k);
            let bb = crate::linalg::dot(beta, &crate::linalg::mat_vec(g, beta));
            for j in 0..r.num_roots() {
                let gamma = r.coords(j).unwrap();
                let bg = crate::linalg::dot(beta, &crate::linalg::mat_vec(g, gamma));
                let c = &(&Scalar::from_integer(2) * &bg) / &bb;
                let expect: Vec<Scalar> = gamma.iter().zip(beta).map(|(x, y)| x - &(&c * y)).collect();
                assert_eq!(r.coords(refl.apply(j)).unwrap(), expect.as_slice());
            }
        }
    }
}
