//! Whole-type checks: the top-degree invariant, the basis of invariants
//! built from special involutions, invariant dimensions from traces, and
//! the per-shape decomposition audit.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;
use std::time::Instant;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Algebra, Normalization, SparseElement};
use crate::coxeter::{
    check_guard, involution_classes, is_special_involution, shapes, Conjugacy, CoxeterType,
    GroupElement, ParabolicChain, RootSystem, Shape,
};
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::matroid::{ReflectionOrder, Word};
use crate::scalar::Scalar;

/// Largest group order for the full pipeline unless overridden.
pub const FULL_VERIFY_GUARD: u128 = 1152;
/// Largest group order for the top-degree check unless overridden.
pub const TOP_DEGREE_GUARD: u128 = 10_000;

/// Outcome of comparing the `(-1)`-condition on `S` with `Av(a_S) != 0`.
#[derive(Clone, Debug, Serialize)]
pub struct TopDegree {
    #[serde(rename = "type")]
    pub type_name: String,
    pub minus_one: bool,
    pub av_nonzero: bool,
    /// Whether `w_S` itself passes the special-involution test. For types
    /// where `w_S` is a reflection this is true even though the
    /// `(-1)`-condition fails.
    pub w_s_special: bool,
    pub coset_sizes: Vec<usize>,
    pub support_size: usize,
    pub pass: bool,
    /// Wall time; left out of serialized output so reports are reproducible.
    #[serde(skip)]
    pub seconds: f64,
}

/// Chain-averages `a_S` with the simples-last order. Never enumerates the
/// group, but the basis graph build is bounded by `guard`.
pub fn top_degree_check(rs: &Arc<RootSystem>, guard: u128) -> Result<TopDegree> {
    let start = Instant::now();
    check_guard(rs.group_order(), guard)?;
    let alg = Algebra::new(rs.clone(), ReflectionOrder::simples_last(rs), u128::MAX)?;
    let chain = ParabolicChain::new(rs);
    let all: Vec<usize> = (0..rs.rank()).collect();
    let av = alg.average_chain(&alg.simple_monomial(&all)?, &chain, Normalization::Averaged)?;
    let minus_one = rs.minus_one_condition(&all);
    let w_s = rs.longest_element(&all);
    Ok(TopDegree {
        type_name: rs.coxeter_type().to_string(),
        minus_one,
        av_nonzero: !av.is_zero(),
        w_s_special: is_special_involution(rs, &w_s)?,
        coset_sizes: chain.sizes(),
        support_size: av.len(),
        pass: minus_one != av.is_zero(),
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// One shape with its flags.
#[derive(Clone, Debug, Serialize)]
pub struct ShapeRecord {
    /// Representative subset, 0-based generator indices.
    pub representative: Vec<usize>,
    pub members: Vec<Vec<usize>>,
    pub minus_one: bool,
    /// Whether `w_I` is a special involution of `W`.
    pub special: bool,
    /// Letters of the reflections fixing the flat `X_I`.
    pub flat: Vec<u16>,
    /// Conjugacy class index of `w_I`.
    pub class: usize,
    /// Whether both flags agree on every member.
    pub flags_constant: bool,
}

impl ShapeRecord {
    pub fn size(&self) -> usize {
        self.representative.len()
    }

    pub fn is_special_class(&self) -> bool {
        self.minus_one && self.special
    }
}

/// A basis element of the invariants.
#[derive(Clone, Debug)]
pub struct BasisElement {
    pub shape: Vec<usize>,
    pub element: SparseElement,
}

/// Fixed-subspace dimension of the normalizer on one flat component.
#[derive(Clone, Debug, Serialize)]
pub struct ShapeAudit {
    pub representative: Vec<usize>,
    pub normalizer_order: usize,
    pub component_dim: usize,
    pub fixed_dim: usize,
}

/// Brute-force context for one type: the group, its classes and shapes,
/// and the algebra with the simples-last order.
pub struct Verifier {
    rs: Arc<RootSystem>,
    chain: ParabolicChain,
    conj: Conjugacy,
    alg: Arc<Algebra>,
}

/// Coefficient of `word` in `a_word . w`, summed over `words`.
fn trace(alg: &Algebra, words: &[Word], w: &GroupElement) -> Result<Scalar> {
    let mut t = Scalar::zero();
    for word in words {
        let img = alg.act(&alg.basis_monomial(word)?, w)?;
        t += &img.coefficient(word);
    }
    Ok(t)
}

/// `sum / n` as a non-negative integer, or a consistency error.
fn exact_quotient(sum: &Scalar, n: usize, what: &str) -> Result<usize> {
    let q = sum.checked_div(&Scalar::from(n as i64))?;
    q.as_rational()
        .and_then(|r| r.to_integer())
        .and_then(|z| usize::try_from(z).ok())
        .ok_or_else(|| Error::Verification(format!("{what}: average {q} is not a non-negative integer")))
}

impl Verifier {
    pub fn new(rs: Arc<RootSystem>, guard: u128) -> Result<Self> {
        check_guard(rs.group_order(), guard)?;
        let chain = ParabolicChain::new(&rs);
        let conj = Conjugacy::new(&rs, &chain, guard)?;
        let alg = Arc::new(Algebra::new(rs.clone(), ReflectionOrder::simples_last(&rs), guard)?);
        Ok(Self {
            rs,
            chain,
            conj,
            alg,
        })
    }

    pub fn from_type(ty: &CoxeterType, guard: u128) -> Result<Self> {
        Self::new(Arc::new(RootSystem::new(ty.clone())), guard)
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn chain(&self) -> &ParabolicChain {
        &self.chain
    }

    pub fn conjugacy(&self) -> &Conjugacy {
        &self.conj
    }

    fn flat_letters(&self, subset: &[usize]) -> Vec<u16> {
        let arr = self.alg.arrangement();
        let mut v: Vec<u16> = self
            .rs
            .parabolic_reflections(subset)
            .into_iter()
            .map(|r| arr.letter_of(r))
            .collect();
        v.sort_unstable();
        v
    }

    fn record(&self, shape: &Shape) -> Result<ShapeRecord> {
        let flags = |s: &[usize]| -> Result<(bool, bool)> {
            let w = self.rs.longest_element(s);
            Ok((self.rs.minus_one_condition(s), is_special_involution(&self.rs, &w)?))
        };
        let rep = &shape.representative;
        let (minus_one, special) = flags(rep)?;
        let mut flags_constant = true;
        for m in &shape.members {
            flags_constant &= flags(m)? == (minus_one, special);
        }
        Ok(ShapeRecord {
            representative: rep.clone(),
            members: shape.members.clone(),
            minus_one,
            special,
            flat: self.flat_letters(rep),
            class: self.conj.class_of(&self.rs.longest_element(rep)),
            flags_constant,
        })
    }

    /// All shapes, smallest representatives first.
    pub fn shape_records(&self) -> Result<Vec<ShapeRecord>> {
        shapes(&self.rs, &self.conj).iter().map(|s| self.record(s)).collect()
    }

    /// Shapes satisfying the `(-1)`-condition whose `w_I` is special.
    pub fn special_classes(&self) -> Result<Vec<ShapeRecord>> {
        Ok(self
            .shape_records()?
            .into_iter()
            .filter(ShapeRecord::is_special_class)
            .collect())
    }

    /// `Av(a_I)` for the representative of every special shape.
    pub fn invariant_basis(&self) -> Result<Vec<BasisElement>> {
        self.special_classes()?
            .into_iter()
            .map(|rec| self.invariant_element(&rec.representative))
            .collect()
    }

    /// `Av(a_I)` for any generator subset.
    pub fn invariant_element(&self, subset: &[usize]) -> Result<BasisElement> {
        let a = self.alg.simple_monomial(subset)?;
        Ok(BasisElement {
            shape: subset.to_vec(),
            element: self.alg.average_chain(&a, &self.chain, Normalization::Averaged)?,
        })
    }

    /// `dim A^p(W)^W` by averaging the character over conjugacy classes.
    pub fn invariant_dimension(&self, p: usize) -> Result<usize> {
        let words: Vec<Word> = self.alg.graph().enumerate(Some(p)).collect();
        let traces: Vec<Scalar> = self
            .conj
            .classes
            .par_iter()
            .map(|c| {
                let t = trace(&self.alg, &words, &self.conj.elements[c[0]])?;
                Ok(&t * &Scalar::from(c.len() as i64))
            })
            .collect::<Result<_>>()?;
        let sum: Scalar = traces.iter().sum();
        exact_quotient(&sum, self.conj.order(), &format!("degree {p}"))
    }

    pub fn invariant_dimensions(&self) -> Result<Vec<usize>> {
        (0..=self.rs.rank()).map(|p| self.invariant_dimension(p)).collect()
    }

    /// Elements `n` with `n R_I n^-1 = R_I`.
    pub fn normalizer(&self, subset: &[usize]) -> Vec<&GroupElement> {
        let refl: HashSet<usize> = self.rs.parabolic_reflections(subset).into_iter().collect();
        self.conj
            .elements
            .iter()
            .filter(|n| refl.iter().all(|&r| refl.contains(&self.rs.positive_of(n.apply(r)))))
            .collect()
    }

    /// Basis words of degree `|I|` spanning the flat `X_I`.
    pub fn flat_component(&self, subset: &[usize]) -> Vec<Word> {
        let arr = self.alg.arrangement();
        let target = arr.flat_of(&arr.simple_letters(subset));
        self.alg
            .graph()
            .enumerate(Some(subset.len()))
            .filter(|w| arr.flat_of(w.letters()) == target)
            .collect()
    }

    /// Dimension of the normalizer-fixed part of the flat component.
    pub fn audit_shape(&self, subset: &[usize]) -> Result<ShapeAudit> {
        let words = self.flat_component(subset);
        let norm = self.normalizer(subset);
        let traces: Vec<Scalar> = norm
            .par_iter()
            .map(|n| trace(&self.alg, &words, n))
            .collect::<Result<_>>()?;
        let sum: Scalar = traces.iter().sum();
        Ok(ShapeAudit {
            representative: subset.to_vec(),
            normalizer_order: norm.len(),
            component_dim: words.len(),
            fixed_dim: exact_quotient(&sum, norm.len(), &format!("shape {subset:?}"))?,
        })
    }

    pub fn decomposition_audit(&self) -> Result<Vec<ShapeAudit>> {
        shapes(&self.rs, &self.conj)
            .iter()
            .map(|s| self.audit_shape(&s.representative))
            .collect()
    }
}

/// Exact rank of a family of elements over the coefficient field.
pub fn element_rank(elements: &[&SparseElement]) -> usize {
    let mut index: BTreeMap<&Word, usize> = BTreeMap::new();
    for x in elements {
        for (w, _) in x.terms() {
            let k = index.len();
            index.entry(w).or_insert(k);
        }
    }
    let mut span = Echelon::new();
    for x in elements {
        let mut v = vec![Scalar::zero(); index.len()];
        for (w, c) in x.terms() {
            v[index[w]] = c.clone();
        }
        span.insert(&v);
    }
    span.dim()
}

#[derive(Clone, Debug, Serialize)]
pub struct ShapeSummary {
    pub rep: Vec<usize>,
    pub size: usize,
    pub minus_one: bool,
    pub special: bool,
    pub fixed_dim: usize,
    pub normalizer_order: usize,
    pub component_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisSummary {
    pub shape: Vec<usize>,
    pub degree: usize,
    pub support_size: usize,
    pub nonzero: bool,
}

/// Full verification outcome. Everything except `timings` is a
/// deterministic function of the type.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    #[serde(rename = "type")]
    pub type_name: String,
    pub group_order: u128,
    /// Number of special involution classes.
    pub m: usize,
    /// `dim A^p(W)^W` for `p = 0..=l`.
    pub degrees: Vec<usize>,
    pub shapes: Vec<ShapeSummary>,
    pub basis: Vec<BasisSummary>,
    #[serde(skip)]
    pub basis_elements: Vec<BasisElement>,
    pub top_degree: TopDegree,
    pub checks: BTreeMap<String, bool>,
    pub pass: bool,
    pub timings: BTreeMap<String, f64>,
}

impl InvariantReport {
    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, &ok)| !ok)
            .map(|(k, _)| k.as_str())
            .collect()
    }
}

/// Runs every check for a type of order at most `guard`.
pub fn verify(ty: &CoxeterType, guard: u128) -> Result<InvariantReport> {
    let mut timings = BTreeMap::new();
    let mut clock = Instant::now();
    let mut lap = |name: &str, timings: &mut BTreeMap<String, f64>| {
        timings.insert(name.to_string(), clock.elapsed().as_secs_f64());
        clock = Instant::now();
    };

    let v = Verifier::from_type(ty, guard)?;
    let rs = v.root_system().clone();
    let l = rs.rank();
    lap("setup", &mut timings);

    let records = v.shape_records()?;
    let special: Vec<&ShapeRecord> = records.iter().filter(|r| r.is_special_class()).collect();
    let m = special.len();
    let involutions = involution_classes(&rs, v.conjugacy())?;
    lap("shapes", &mut timings);

    let degrees = v.invariant_dimensions()?;
    lap("dimensions", &mut timings);

    let basis: Vec<BasisElement> = special
        .iter()
        .map(|r| v.invariant_element(&r.representative))
        .collect::<Result<_>>()?;
    let elements: Vec<&SparseElement> = basis.iter().map(|b| &b.element).collect();
    let rank = element_rank(&elements);
    let invariant = basis.iter().all(|b| {
        rs.simple_reflections()
            .iter()
            .all(|s| v.algebra().act(&b.element, s).is_ok_and(|y| y == b.element))
    });
    lap("basis", &mut timings);

    let audits: Vec<ShapeAudit> = records
        .iter()
        .map(|r| v.audit_shape(&r.representative))
        .collect::<Result<_>>()?;
    lap("audit", &mut timings);

    let top = top_degree_check(&rs, u128::MAX)?;
    lap("top_degree", &mut timings);

    let total: usize = degrees.iter().sum();
    let mut per_degree = vec![0usize; l + 1];
    for b in &basis {
        per_degree[b.shape.len()] += 1;
    }
    let audit_sum: usize = audits.iter().map(|a| a.fixed_dim).sum();
    let mut checks = BTreeMap::new();
    let mut check = |name: &str, ok: bool| {
        checks.insert(name.to_string(), ok);
    };
    check("flags_constant_on_shapes", records.iter().all(|r| r.flags_constant));
    check(
        "special_involution_classes",
        involutions.iter().filter(|c| c.special).count() == m,
    );
    check("dimension_total_equals_m", total == m);
    check("basis_size_equals_m", basis.len() == m);
    check("basis_nonzero", basis.iter().all(|b| !b.element.is_zero()));
    check("basis_full_rank", rank == m);
    check("basis_invariant", invariant);
    check("basis_degrees_match", per_degree == degrees);
    check("fixed_dims_zero_or_one", audits.iter().all(|a| a.fixed_dim <= 1));
    check(
        "fixed_dims_match_flags",
        records
            .iter()
            .zip(&audits)
            .all(|(r, a)| (a.fixed_dim == 1) == r.is_special_class()),
    );
    check("fixed_dims_sum", audit_sum == total);
    check("top_degree_matches_condition", top.pass);
    check("top_degree_dimension", degrees[l] == usize::from(top.av_nonzero));
    let pass = checks.values().all(|&ok| ok);

    Ok(InvariantReport {
        type_name: ty.to_string(),
        group_order: rs.group_order(),
        m,
        degrees,
        shapes: records
            .iter()
            .zip(&audits)
            .map(|(r, a)| ShapeSummary {
                rep: r.representative.clone(),
                size: r.size(),
                minus_one: r.minus_one,
                special: r.special,
                fixed_dim: a.fixed_dim,
                normalizer_order: a.normalizer_order,
                component_dim: a.component_dim,
            })
            .collect(),
        basis: basis
            .iter()
            .map(|b| BasisSummary {
                shape: b.shape.clone(),
                degree: b.shape.len(),
                support_size: b.element.len(),
                nonzero: !b.element.is_zero(),
            })
            .collect(),
        basis_elements: basis,
        top_degree: top,
        checks,
        pass,
        timings,
    })
}
