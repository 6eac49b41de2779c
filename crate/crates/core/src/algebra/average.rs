use rayon::prelude::*;

use super::{Algebra, SparseElement};
use crate::coxeter::{GroupElement, ParabolicChain};
use crate::error::Result;
use crate::scalar::Scalar;

/// Whether an average carries the `1/|W|` factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Normalization {
    #[default]
    Averaged,
    Sum,
}

impl Algebra {
    /// `sum_w x.w` over the given elements, split across the current
    /// thread pool. The sum is exact, so the schedule does not matter.
    pub fn orbit_sum<'a, I>(&self, x: &SparseElement, elements: I) -> Result<SparseElement>
    where
        I: IntoParallelIterator<Item = &'a GroupElement>,
    {
        self.check(x)?;
        Ok(elements
            .into_par_iter()
            .fold(
                || self.zero(),
                |mut acc, w| {
                    acc.add_assign(&self.act_with(x, &self.arr.letter_action(w)));
                    acc
                },
            )
            .reduce(
                || self.zero(),
                |mut a, b| {
                    a.add_assign(&b);
                    a
                },
            ))
    }

    fn normalize(&self, sum: SparseElement, mode: Normalization) -> SparseElement {
        match mode {
            Normalization::Sum => sum,
            Normalization::Averaged => {
                let order = Self::scalar_of(self.root_system().group_order());
                sum.scale(&Scalar::from(1).checked_div(&order).expect("nonzero order"))
            }
        }
    }

    /// Average over every group element, enumerated explicitly.
    pub fn average_bruteforce(
        &self,
        x: &SparseElement,
        chain: &ParabolicChain,
        guard: u128,
        mode: Normalization,
    ) -> Result<SparseElement> {
        self.check(x)?;
        let rs = self.root_system();
        let mut sum = self.zero();
        let mut batch = Vec::with_capacity(4096);
        let mut elements = chain.elements(rs, guard)?;
        loop {
            batch.clear();
            batch.extend(elements.by_ref().take(4096));
            if batch.is_empty() {
                break;
            }
            sum.add_assign(&self.orbit_sum(x, &batch)?);
        }
        Ok(self.normalize(sum, mode))
    }

    /// Average through the coset factorization `w = x_l ... x_1`: sums over
    /// `D_l` first, then `D_{l-1}`, down to `D_1`, expanding into the basis
    /// after every stage.
    pub fn average_chain(
        &self,
        x: &SparseElement,
        chain: &ParabolicChain,
        mode: Normalization,
    ) -> Result<SparseElement> {
        self.check(x)?;
        let mut q = x.clone();
        for j in (1..=chain.len()).rev() {
            q = self.orbit_sum(&q, chain.coset_reps(j))?;
            log::info!(
                "averaging stage {j}: {} coset representatives, {} terms",
                chain.coset_reps(j).len(),
                q.len()
            );
            if q.is_zero() {
                break;
            }
        }
        Ok(self.normalize(q, mode))
    }
}
