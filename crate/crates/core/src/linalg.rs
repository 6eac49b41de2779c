//! Exact Gaussian elimination over [`Scalar`].

use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// Row echelon basis of a subspace, grown one vector at a time.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    /// Rows normalized to 1 at their pivot column.
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        self.rows.iter().map(|(_, r)| r.as_slice())
    }

    /// Remainder of `v` after elimination against the stored rows.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&c * r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("pivot is nonzero");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        // keep existing rows reduced at the new pivot
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x -= &(&c * r);
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

pub fn rank(vectors: &[Vec<Scalar>]) -> usize {
    let mut e = Echelon::new();
    vectors.iter().filter(|v| e.insert(v)).count()
}

pub fn determinant(mut m: Vec<Vec<Scalar>>) -> Scalar {
    let n = m.len();
    let mut det = Scalar::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        let inv = p.inv().expect("pivot is nonzero");
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for c in col..n {
                let t = &f * &m[col][c];
                m[r][c] -= &t;
            }
        }
    }
    det
}

/// Whether `u` is a scalar multiple of `v` (zero counts as a multiple).
pub fn proportional(u: &[Scalar], v: &[Scalar]) -> bool {
    if u.iter().all(Zero::is_zero) {
        return true;
    }
    if v.iter().all(Zero::is_zero) {
        return false;
    }
    let n = u.len();
    (0..n).all(|i| (i + 1..n).all(|j| &u[i] * &v[j] == &u[j] * &v[i]))
}

pub fn dot(u: &[Scalar], v: &[Scalar]) -> Scalar {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

pub fn mat_vec(m: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
    m.iter().map(|row| dot(row, v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::from_integer(x)).collect()
    }

    #[test]
    fn rank_of_a3_triangle() {
        // e1-e2, e2-e3, e1-e3 in simple-root coordinates
        assert_eq!(rank(&[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[1, 1, 0])]), 2);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn determinant_sign() {
        assert_eq!(determinant(vec![v(&[0, 1]), v(&[1, 0])]), Scalar::from_integer(-1));
        assert_eq!(
            determinant(vec![v(&[2, 1, 0]), v(&[1, 2, 1]), v(&[0, 1, 2])]),
            Scalar::from_integer(4)
        );
        assert!(determinant(vec![v(&[1, 2]), v(&[2, 4])]).is_zero());
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(&v(&[1, 1, 0])));
        assert!(e.insert(&v(&[0, 1, 1])));
        assert!(!e.insert(&v(&[1, 2, 1])));
        assert!(e.contains(&v(&[1, 0, -1])));
        assert!(!e.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn proportionality() {
        assert!(proportional(&v(&[2, 4]), &v(&[1, 2])));
        assert!(proportional(&v(&[0, 0]), &v(&[1, 2])));
        assert!(!proportional(&v(&[1, 0]), &v(&[1, 2])));
    }
}
