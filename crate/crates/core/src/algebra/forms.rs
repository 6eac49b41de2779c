use num_traits::{One, Zero};
use rand::Rng;

use super::{Algebra, SparseElement};
use crate::coxeter::RootSystem;
use crate::error::{Error, Result};
use crate::linalg::{determinant, dot, mat_vec};
use crate::scalar::Scalar;

/// A point of `V` off the arrangement together with `p` tangent vectors,
/// both in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormPoint {
    pub point: Vec<Scalar>,
    pub directions: Vec<Vec<Scalar>>,
}

/// Linear form `v -> (beta, v)` of every positive root, as coefficient rows.
fn root_forms(rs: &RootSystem) -> Result<Vec<Vec<Scalar>>> {
    rs.require_coordinates()?;
    let gram = rs.gram().expect("coordinates imply a form");
    Ok((0..rs.num_positive())
        .map(|r| mat_vec(gram, rs.coords(r).unwrap()))
        .collect())
}

impl FormPoint {
    /// Checks that the point avoids every hyperplane; `letter_of` maps a
    /// root to the letter reported in the error.
    fn validate(&self, rs: &RootSystem, forms: &[Vec<Scalar>], letter_of: impl Fn(usize) -> u16) -> Result<()> {
        let l = rs.rank();
        if self.point.len() != l || self.directions.iter().any(|v| v.len() != l) {
            return Err(Error::Verification(format!("form point must have {l} coordinates")));
        }
        match forms.iter().position(|f| dot(f, &self.point).is_zero()) {
            Some(r) => Err(Error::PointOnHyperplane(letter_of(r))),
            None => Ok(()),
        }
    }

    /// Random point and directions with integer coordinates in
    /// `-range..=range`, redrawn until the point is off every hyperplane.
    pub fn sample<R: Rng + ?Sized>(rs: &RootSystem, degree: usize, range: i64, rng: &mut R) -> Result<Self> {
        let forms = root_forms(rs)?;
        let l = rs.rank();
        let draw = |rng: &mut R| -> Vec<Scalar> {
            (0..l).map(|_| Scalar::from(rng.gen_range(-range..=range))).collect()
        };
        let point = loop {
            let x = draw(rng);
            if forms.iter().all(|f| !dot(f, &x).is_zero()) {
                break x;
            }
        };
        let directions = (0..degree).map(|_| draw(rng)).collect();
        Ok(Self { point, directions })
    }
}

impl Algebra {
    /// Evaluates `x` as the differential form with `a_r -> dlog (beta_r, -)`
    /// at `pt`: `sum_T c_T det[(beta_{t_i}, v_j)] / prod_i (beta_{t_i}, x)`.
    pub fn form_eval(&self, x: &SparseElement, pt: &FormPoint) -> Result<Scalar> {
        self.check(x)?;
        let rs = self.root_system();
        let forms = root_forms(rs)?;
        pt.validate(rs, &forms, |r| self.arr.letter_of(r))?;
        if x.is_zero() {
            return Ok(Scalar::zero());
        }
        let p = pt.directions.len();
        if x.degree() != Some(p) {
            return Err(Error::Inhomogeneous(p));
        }
        let mut total = Scalar::zero();
        for (word, c) in x.terms() {
            let rows: Vec<&Vec<Scalar>> = word
                .letters()
                .iter()
                .map(|&t| &forms[self.arr.root_of(t)])
                .collect();
            let m: Vec<Vec<Scalar>> = rows
                .iter()
                .map(|f| pt.directions.iter().map(|v| dot(f, v)).collect())
                .collect();
            let denom = rows
                .iter()
                .fold(Scalar::one(), |acc, f| &acc * &dot(f, &pt.point));
            total += &(c * &determinant(m).checked_div(&denom)?);
        }
        Ok(total)
    }
}
