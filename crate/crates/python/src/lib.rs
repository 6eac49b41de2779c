//! Python module `oscox`: root systems, the broken-circuit basis, rewriting,
//! averaging, and the verification reports.

use std::sync::Arc;

use oscox_core::algebra::{Algebra, Normalization, SparseElement};
use oscox_core::coxeter::{CoxeterType, ParabolicChain, RootSystem, DEFAULT_GUARD};
use oscox_core::matroid::{ReflectionOrder, Word};
use oscox_core::verify::{self, Verifier, FULL_VERIFY_GUARD, TOP_DEGREE_GUARD};
use oscox_core::Scalar;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyTypeError};
use pyo3::prelude::*;
use pyo3::types::PyModule;

create_exception!(oscox, OscoxError, PyException);

fn err(e: oscox_core::Error) -> PyErr {
    OscoxError::new_err(e.to_string())
}

fn parse_type(s: &str) -> PyResult<CoxeterType> {
    s.parse().map_err(err)
}

fn guard(allow_large: bool, default: u128) -> u128 {
    if allow_large {
        u128::MAX
    } else {
        default
    }
}

fn mode(normalization: &str) -> PyResult<Normalization> {
    match normalization {
        "averaged" => Ok(Normalization::Averaged),
        "sum" => Ok(Normalization::Sum),
        other => Err(OscoxError::new_err(format!("unknown normalization {other:?}"))),
    }
}

fn to_py_json<'py>(py: Python<'py>, v: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| OscoxError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Root system of a finite Coxeter type such as `"B3"`, `"I2(5)"` or `"A2xA1"`.
#[pyclass(name = "RootSystem", module = "oscox", frozen)]
struct PyRootSystem {
    rs: Arc<RootSystem>,
}

#[pymethods]
impl PyRootSystem {
    #[new]
    fn new(ty: &str) -> PyResult<Self> {
        Ok(Self {
            rs: Arc::new(RootSystem::new(parse_type(ty)?)),
        })
    }

    #[getter]
    fn type_name(&self) -> String {
        self.rs.coxeter_type().to_string()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.rs.rank()
    }

    #[getter]
    fn num_positive(&self) -> usize {
        self.rs.num_positive()
    }

    #[getter]
    fn group_order(&self) -> u128 {
        self.rs.group_order()
    }

    /// Coordinates of each positive root in the simple-root basis, as exact
    /// strings; `None` for roots of dihedral factors.
    fn roots(&self) -> Vec<Option<Vec<String>>> {
        (0..self.rs.num_positive())
            .map(|r| self.rs.coords(r).map(|c| c.iter().map(ToString::to_string).collect()))
            .collect()
    }

    /// Whether `w_J` acts as `-1` on the span of the simple roots in `subset`
    /// (1-based generator labels).
    fn minus_one_condition(&self, subset: Vec<usize>) -> PyResult<bool> {
        Ok(self.rs.minus_one_condition(&zero_based(&subset, self.rs.rank())?))
    }

    fn __repr__(&self) -> String {
        format!("RootSystem('{}')", self.rs.coxeter_type())
    }
}

fn zero_based(subset: &[usize], rank: usize) -> PyResult<Vec<usize>> {
    subset
        .iter()
        .map(|&i| {
            if (1..=rank).contains(&i) {
                Ok(i - 1)
            } else {
                Err(err(oscox_core::Error::GeneratorOutOfRange { index: i, rank }))
            }
        })
        .collect()
}

/// Orlik-Solomon algebra of a Coxeter arrangement, with its broken-circuit
/// basis graph built for the chosen reflection order.
#[pyclass(name = "Algebra", module = "oscox", frozen)]
struct PyAlgebra {
    alg: Arc<Algebra>,
}

/// Element of an `Algebra`, stored in the broken-circuit basis.
#[pyclass(name = "Element", module = "oscox", frozen)]
struct PyElement {
    alg: Arc<Algebra>,
    x: SparseElement,
}

impl PyAlgebra {
    fn wrap(&self, x: SparseElement) -> PyElement {
        PyElement {
            alg: self.alg.clone(),
            x,
        }
    }

    fn own<'a>(&self, e: &'a PyElement) -> PyResult<&'a SparseElement> {
        if e.x.ambient() == self.alg.id() {
            Ok(&e.x)
        } else {
            Err(err(oscox_core::Error::AmbientMismatch))
        }
    }
}

#[pymethods]
impl PyAlgebra {
    /// `order` is `"default"`, `"simples-last"`, `"reference-a3"` or a list that
    /// permutes `1..N`.
    #[new]
    #[pyo3(signature = (ty, order = None, allow_large = false))]
    fn new(ty: &str, order: Option<&Bound<'_, PyAny>>, allow_large: bool) -> PyResult<Self> {
        let rs = Arc::new(RootSystem::new(parse_type(ty)?));
        let order = match order {
            None => ReflectionOrder::standard(&rs),
            Some(o) => match o.extract::<String>() {
                Ok(name) => ReflectionOrder::parse(&rs, &name).map_err(err)?,
                Err(_) => {
                    let perm: Vec<usize> = o
                        .extract()
                        .map_err(|_| PyTypeError::new_err("order must be a string or a list of ints"))?;
                    ReflectionOrder::explicit(&rs, &perm).map_err(err)?
                }
            },
        };
        let alg = Algebra::new(rs, order, guard(allow_large, DEFAULT_GUARD)).map_err(err)?;
        Ok(Self { alg: Arc::new(alg) })
    }

    #[getter]
    fn type_name(&self) -> String {
        self.alg.root_system().coxeter_type().to_string()
    }

    #[getter]
    fn num_letters(&self) -> usize {
        self.alg.num_letters()
    }

    /// The reflection order as a permutation of `1..N`.
    #[getter]
    fn order(&self) -> Vec<usize> {
        self.alg.order().as_permutation()
    }

    #[getter]
    fn node_count(&self) -> usize {
        self.alg.graph().node_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.alg.graph().edge_count()
    }

    fn path_count(&self) -> u128 {
        self.alg.graph().path_count()
    }

    fn degree_counts(&self) -> Vec<u128> {
        self.alg.graph().degree_counts()
    }

    /// Whether an increasing word is a basis word.
    fn contains(&self, word: Vec<u16>) -> PyResult<bool> {
        self.alg.graph().contains(&Word::from(word.as_slice())).map_err(err)
    }

    /// Basis words in lexicographic order, optionally of one degree.
    #[pyo3(signature = (degree = None))]
    fn basis_words(&self, degree: Option<usize>) -> Vec<Vec<u16>> {
        self.alg.graph().enumerate(degree).map(|w| w.letters().to_vec()).collect()
    }

    fn to_dot(&self) -> String {
        self.alg.graph().to_dot()
    }

    fn zero(&self) -> PyElement {
        self.wrap(self.alg.zero())
    }

    fn one(&self) -> PyElement {
        self.wrap(self.alg.one())
    }

    /// `a_r` for a letter `r`.
    fn generator(&self, letter: u16) -> PyResult<PyElement> {
        Ok(self.wrap(self.alg.generator(letter).map_err(err)?))
    }

    /// Product `a_{t_1} ... a_{t_k}` of letters in any order.
    fn monomial(&self, letters: Vec<u16>) -> PyResult<PyElement> {
        Ok(self.wrap(self.alg.monomial(&letters).map_err(err)?))
    }

    /// Expansion of `a_T` for an increasing word into the basis.
    fn to_nbc(&self, word: Vec<u16>) -> PyResult<PyElement> {
        Ok(self.wrap(self.alg.to_nbc(&Word::from(word.as_slice())).map_err(err)?))
    }

    /// Linear combination from `(letters, coefficient)` pairs; coefficients
    /// are ints or exact strings such as `"3/2"` or `"1+2*sqrt5"`.
    fn element(&self, terms: Vec<(Vec<u16>, Bound<'_, PyAny>)>) -> PyResult<PyElement> {
        let terms = terms
            .into_iter()
            .map(|(w, c)| Ok((w, scalar(&c)?)))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(self.wrap(self.alg.element_from_terms(&terms).map_err(err)?))
    }

    /// `a_S` for a subset of simple generators (1-based labels).
    fn simple_monomial(&self, subset: Vec<usize>) -> PyResult<PyElement> {
        let s = zero_based(&subset, self.alg.root_system().rank())?;
        Ok(self.wrap(self.alg.simple_monomial(&s).map_err(err)?))
    }

    /// `x . w` for `w = s_{i_1} ... s_{i_k}` given by 1-based generator labels.
    fn act(&self, x: &PyElement, word: Vec<usize>) -> PyResult<PyElement> {
        let w = self.alg.root_system().element_from_word(&word).map_err(err)?;
        Ok(self.wrap(self.alg.act(self.own(x)?, &w).map_err(err)?))
    }

    fn product(&self, x: &PyElement, y: &PyElement) -> PyResult<PyElement> {
        Ok(self.wrap(self.alg.product(self.own(x)?, self.own(y)?).map_err(err)?))
    }

    /// Group average through coset representatives. `normalization` is
    /// `"averaged"` (divide by |W|) or `"sum"`. Releases the GIL.
    #[pyo3(signature = (x, normalization = "averaged"))]
    fn average(&self, py: Python<'_>, x: &PyElement, normalization: &str) -> PyResult<PyElement> {
        let m = mode(normalization)?;
        let x = self.own(x)?.clone();
        let alg = self.alg.clone();
        let out = py
            .detach(move || {
                let chain = ParabolicChain::new(alg.root_system());
                alg.average_chain(&x, &chain, m)
            })
            .map_err(err)?;
        Ok(self.wrap(out))
    }

    /// Average by enumerating every group element.
    #[pyo3(signature = (x, normalization = "averaged", allow_large = false))]
    fn average_bruteforce(
        &self,
        py: Python<'_>,
        x: &PyElement,
        normalization: &str,
        allow_large: bool,
    ) -> PyResult<PyElement> {
        let m = mode(normalization)?;
        let x = self.own(x)?.clone();
        let alg = self.alg.clone();
        let g = guard(allow_large, DEFAULT_GUARD);
        let out = py
            .detach(move || {
                let chain = ParabolicChain::new(alg.root_system());
                alg.average_bruteforce(&x, &chain, g, m)
            })
            .map_err(err)?;
        Ok(self.wrap(out))
    }

    fn __repr__(&self) -> String {
        format!("Algebra('{}', nodes={})", self.type_name(), self.node_count())
    }
}

fn scalar(c: &Bound<'_, PyAny>) -> PyResult<Scalar> {
    if let Ok(n) = c.extract::<i64>() {
        return Ok(Scalar::from_integer(n));
    }
    let s: String = c
        .extract()
        .map_err(|_| PyTypeError::new_err("coefficient must be an int or a string"))?;
    s.parse::<Scalar>().map_err(|e| err(e.into()))
}

impl PyElement {
    fn same(&self, other: &PyElement) -> PyResult<()> {
        if self.x.ambient() == other.x.ambient() {
            Ok(())
        } else {
            Err(err(oscox_core::Error::AmbientMismatch))
        }
    }

    fn wrap(&self, x: SparseElement) -> PyElement {
        PyElement {
            alg: self.alg.clone(),
            x,
        }
    }
}

#[pymethods]
impl PyElement {
    /// `(word, coefficient)` pairs in lexicographic word order.
    fn terms(&self) -> Vec<(Vec<u16>, String)> {
        self.x
            .terms()
            .map(|(w, c)| (w.letters().to_vec(), c.to_string()))
            .collect()
    }

    fn coefficient(&self, word: Vec<u16>) -> String {
        self.x.coefficient(&Word::from(word.as_slice())).to_string()
    }

    /// Common degree of all terms; `None` for zero or mixed degrees.
    #[getter]
    fn degree(&self) -> Option<usize> {
        self.x.degree()
    }

    fn is_zero(&self) -> bool {
        self.x.is_zero()
    }

    /// `self . w` for a word in the 1-based simple generators.
    fn act(&self, word: Vec<usize>) -> PyResult<PyElement> {
        let w = self.alg.root_system().element_from_word(&word).map_err(err)?;
        Ok(self.wrap(self.alg.act(&self.x, &w).map_err(err)?))
    }

    fn scale(&self, c: &Bound<'_, PyAny>) -> PyResult<PyElement> {
        Ok(self.wrap(self.x.scale(&scalar(c)?)))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.x).expect("serializable")
    }

    fn __len__(&self) -> usize {
        self.x.len()
    }

    fn __bool__(&self) -> bool {
        !self.x.is_zero()
    }

    fn __add__(&self, other: &PyElement) -> PyResult<PyElement> {
        Ok(self.wrap(self.x.add(&other.x).map_err(err)?))
    }

    fn __sub__(&self, other: &PyElement) -> PyResult<PyElement> {
        Ok(self.wrap(self.x.sub(&other.x).map_err(err)?))
    }

    fn __mul__(&self, other: &PyElement) -> PyResult<PyElement> {
        self.same(other)?;
        Ok(self.wrap(self.alg.product(&self.x, &other.x).map_err(err)?))
    }

    fn __neg__(&self) -> PyElement {
        self.wrap(self.x.neg())
    }

    fn __eq__(&self, other: &PyElement) -> bool {
        self.x == other.x
    }

    fn __str__(&self) -> String {
        self.x.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element({})", self.x)
    }
}

/// Top-degree check: compares `Av(a_S) != 0` with the `(-1)`-condition.
#[pyfunction]
#[pyo3(signature = (ty, allow_large = false))]
fn top_degree_check<'py>(py: Python<'py>, ty: &str, allow_large: bool) -> PyResult<Bound<'py, PyAny>> {
    let rs = Arc::new(RootSystem::new(parse_type(ty)?));
    let g = guard(allow_large, TOP_DEGREE_GUARD);
    let t = py.detach(move || verify::top_degree_check(&rs, g)).map_err(err)?;
    to_py_json(py, &t)
}

/// Full verification report as a dict.
#[pyfunction]
#[pyo3(signature = (ty, allow_large = false))]
fn verify_type<'py>(py: Python<'py>, ty: &str, allow_large: bool) -> PyResult<Bound<'py, PyAny>> {
    let t = parse_type(ty)?;
    let g = guard(allow_large, FULL_VERIFY_GUARD);
    let rep = py.detach(move || verify::verify(&t, g)).map_err(err)?;
    to_py_json(py, &rep)
}

/// Invariant basis: a list of `(shape, Element)` pairs, shapes as 1-based
/// generator subsets.
#[pyfunction]
fn invariant_basis(py: Python<'_>, ty: &str) -> PyResult<Vec<(Vec<usize>, PyElement)>> {
    let t = parse_type(ty)?;
    let (alg, basis) = py
        .detach(move || {
            let v = Verifier::from_type(&t, FULL_VERIFY_GUARD)?;
            let basis = v.invariant_basis()?;
            Ok::<_, oscox_core::Error>((v.algebra().clone(), basis))
        })
        .map_err(err)?;
    Ok(basis
        .into_iter()
        .map(|b| {
            let shape = b.shape.iter().map(|i| i + 1).collect();
            (shape, PyElement { alg: alg.clone(), x: b.element })
        })
        .collect())
}

/// `dim A^p(W)^W` for `p = 0..=rank`.
#[pyfunction]
fn invariant_dimensions(py: Python<'_>, ty: &str) -> PyResult<Vec<usize>> {
    let t = parse_type(ty)?;
    py.detach(move || Verifier::from_type(&t, FULL_VERIFY_GUARD)?.invariant_dimensions())
        .map_err(err)
}

#[pymodule]
#[pyo3(name = "oscox")]
fn oscox_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRootSystem>()?;
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyElement>()?;
    m.add_function(wrap_pyfunction!(top_degree_check, m)?)?;
    m.add_function(wrap_pyfunction!(verify_type, m)?)?;
    m.add_function(wrap_pyfunction!(invariant_basis, m)?)?;
    m.add_function(wrap_pyfunction!(invariant_dimensions, m)?)?;
    m.add("OscoxError", m.py().get_type::<OscoxError>())?;
    Ok(())
}
