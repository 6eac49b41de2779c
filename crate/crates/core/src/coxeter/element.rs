use std::fmt;
use std::ops::Mul;

/// A group element, stored as the permutation it induces on the `2N` roots.
///
/// Root indices are 0-based: `0..N` are the positive roots and `i + N` is
/// the negative of root `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    perm: Box<[u16]>,
}

impl GroupElement {
    pub fn identity(num_roots: usize) -> Self {
        Self {
            perm: (0..num_roots as u16).collect(),
        }
    }

    pub(crate) fn from_perm(perm: Vec<u16>) -> Self {
        Self {
            perm: perm.into_boxed_slice(),
        }
    }

    pub fn perm(&self) -> &[u16] {
        &self.perm
    }

    /// Image of a root index.
    #[inline]
    pub fn apply(&self, root: usize) -> usize {
        self.perm[root] as usize
    }

    pub fn num_roots(&self) -> usize {
        self.perm.len()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u16; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p as usize] = i as u16;
        }
        Self::from_perm(inv)
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self) -> usize {
        let n = self.perm.len() / 2;
        self.perm[..n].iter().filter(|&&p| p as usize >= n).count()
    }

    pub fn is_involution(&self) -> bool {
        self.perm
            .iter()
            .enumerate()
            .all(|(i, &p)| self.perm[p as usize] as usize == i)
    }

    /// `self * other * self^-1`.
    pub fn conjugate(&self, other: &GroupElement) -> GroupElement {
        &(self * other) * &self.inverse()
    }
}

impl Mul for &GroupElement {
    type Output = GroupElement;

    /// Composition: `(a * b)(x) = a(b(x))`.
    fn mul(self, rhs: &GroupElement) -> GroupElement {
        GroupElement::from_perm(rhs.perm.iter().map(|&i| self.perm[i as usize]).collect())
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement{:?}", self.perm)
    }
}
