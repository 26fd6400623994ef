//! Python bindings: `import freelie`.

use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use freelie::algebra::{self, parse_expr, Bidegree, LieElement};
use freelie::theta::{self, KernelCertificate};
use freelie::words::{self, LyndonWord, Word};
use freelie::{dims, families, oracle, zlinalg, Error};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for freelie::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

fn word(s: &str) -> PyResult<Word> {
    s.parse::<Word>().py()
}

fn lyndon(s: &str) -> PyResult<LyndonWord> {
    LyndonWord::new(word(s)?).py()
}

fn json_loads<'py>(py: Python<'py>, s: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (s,))
}

/// An element of L(a,b) in the Lyndon basis.
#[pyclass(name = "LieElement", module = "freelie", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyLieElement {
    inner: LieElement,
}

#[pymethods]
impl PyLieElement {
    /// Normal form of a bracket expression such as `"[a,b,b,a] - [a,b,a,b]"`.
    #[new]
    fn new(expr: &str) -> PyResult<Self> {
        let inner = algebra::normalize(&parse_expr(expr).py()?).py()?;
        Ok(PyLieElement { inner })
    }

    #[staticmethod]
    fn basis(w: &str) -> PyResult<Self> {
        Ok(PyLieElement { inner: LieElement::basis(lyndon(w)?) })
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        let inner = serde_json::from_str(s).map_err(|e| py_err(e.into()))?;
        Ok(PyLieElement { inner })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(|e| py_err(e.into()))
    }

    #[getter]
    fn bidegree(&self) -> Option<(usize, usize)> {
        self.inner.bidegree().map(|b| (b.a, b.b))
    }

    /// `[(coefficient, lyndon_word), ...]` in increasing word order.
    #[getter]
    fn terms(&self) -> Vec<(BigInt, String)> {
        self.inner.iter().map(|(w, c)| (c.clone(), w.to_string())).collect()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn coeff(&self, w: &str) -> PyResult<BigInt> {
        Ok(self.inner.coeff(&lyndon(w)?))
    }

    fn bracket(&self, other: &PyLieElement) -> PyResult<Self> {
        Ok(PyLieElement { inner: algebra::bracket(&self.inner, &other.inner).py()? })
    }

    /// The bracket expression `Σ c [w]` as text.
    fn to_expr(&self) -> String {
        self.inner.to_expr().to_string()
    }

    /// Expansion in the free associative ring, as `{word: coefficient}`.
    fn to_assoc<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (w, c) in self.inner.to_assoc().py()?.iter() {
            d.set_item(w.to_string(), c.clone())?;
        }
        Ok(d)
    }

    fn __add__(&self, other: &PyLieElement) -> PyResult<Self> {
        Ok(PyLieElement { inner: self.inner.checked_add(&other.inner).py()? })
    }

    fn __sub__(&self, other: &PyLieElement) -> PyResult<Self> {
        Ok(PyLieElement { inner: self.inner.checked_sub(&other.inner).py()? })
    }

    fn __neg__(&self) -> Self {
        PyLieElement { inner: self.inner.neg() }
    }

    fn __mul__(&self, c: BigInt) -> Self {
        PyLieElement { inner: self.inner.scale(&c) }
    }

    fn __rmul__(&self, c: BigInt) -> Self {
        self.__mul__(c)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("LieElement({})", self.inner)
    }
}

/// A pair `(A, B)` with `[A,a] + [B,b] = 0` claimed.
#[pyclass(name = "Certificate", module = "freelie", from_py_object)]
#[derive(Clone)]
struct PyCertificate {
    inner: KernelCertificate,
}

#[pymethods]
impl PyCertificate {
    #[new]
    #[pyo3(signature = (k, l, a, b, source = "user"))]
    fn new(k: usize, l: usize, a: &PyLieElement, b: &PyLieElement, source: &str) -> PyResult<Self> {
        let source = source.parse().py()?;
        let inner = KernelCertificate::new(Bidegree::new(k, l), a.inner.clone(), b.inner.clone(), source);
        Ok(PyCertificate { inner })
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Ok(PyCertificate { inner: KernelCertificate::from_json(s).py()? })
    }

    fn to_json(&self) -> PyResult<String> {
        self.inner.to_json().py()
    }

    fn to_latex(&self) -> String {
        self.inner.to_latex()
    }

    #[getter]
    fn bidegree(&self) -> (usize, usize) {
        (self.inner.bidegree.a, self.inner.bidegree.b)
    }

    #[getter]
    fn a(&self) -> PyLieElement {
        PyLieElement { inner: self.inner.a.clone() }
    }

    #[getter]
    fn b(&self) -> PyLieElement {
        PyLieElement { inner: self.inner.b.clone() }
    }

    #[getter]
    fn source(&self) -> String {
        self.inner.source.to_string()
    }

    #[getter]
    fn verified(&self) -> bool {
        self.inner.verified
    }

    /// `[A,a] + [B,b]` in normal form.
    fn theta_image(&self) -> PyResult<PyLieElement> {
        Ok(PyLieElement { inner: self.inner.theta_image().py()? })
    }

    /// Recomputes the verified flag by exact normalization.
    fn verify(&mut self) -> PyResult<bool> {
        theta::verify_certificate(&mut self.inner).py()
    }

    /// Random matrix evaluation; returns the report as a dict.
    #[pyo3(signature = (trials = oracle::DEFAULT_TRIALS, dim = oracle::DEFAULT_DIM, seed = 0, modulus = None))]
    fn oracle<'py>(
        &self,
        py: Python<'py>,
        trials: usize,
        dim: usize,
        seed: u64,
        modulus: Option<u64>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let rep = oracle::oracle_check(&self.inner, trials, dim, seed, modulus).py()?;
        json_loads(py, &serde_json::to_string(&rep).map_err(|e| py_err(e.into()))?)
    }

    /// Membership of the certificate in the computed kernel lattice.
    fn membership<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let rep = theta::lattice_membership(&self.inner).py()?;
        let d = PyDict::new(py);
        d.set_item("member", rep.member)?;
        d.set_item("kernel_rank", rep.kernel_rank)?;
        d.set_item("coordinates", rep.coordinates.clone())?;
        d.set_item("index", rep.index.clone())?;
        d.set_item("generates", rep.generates())?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!("Certificate({} in {}, verified={})", self.inner.source, self.inner.bidegree, self.inner.verified)
    }
}

#[pyfunction]
fn is_lyndon(w: &str) -> PyResult<bool> {
    words::is_lyndon(&word(w)?).py()
}

#[pyfunction]
fn lyndon_words(k: usize, l: usize) -> PyResult<Vec<String>> {
    Ok(words::lyndon_words(k, l).py()?.iter().map(|w| w.to_string()).collect())
}

#[pyfunction]
fn standard_factorization(w: &str) -> PyResult<(String, String)> {
    let (u, v) = words::standard_factorization(&lyndon(w)?).py()?;
    Ok((u.to_string(), v.to_string()))
}

#[pyfunction]
fn lyndon_bracket(w: &str) -> PyResult<String> {
    Ok(words::lyndon_bracket(&lyndon(w)?).to_string())
}

#[pyfunction]
fn normalize(expr: &str) -> PyResult<PyLieElement> {
    PyLieElement::new(expr)
}

#[pyfunction]
fn engel(n: usize) -> PyResult<PyLieElement> {
    Ok(PyLieElement { inner: algebra::engel(n).py()? })
}

#[pyfunction]
fn dim_l(n: i64) -> PyResult<u64> {
    dims::dim_l(n).py()
}

#[pyfunction]
fn dim_l_bigraded(k: u64, l: u64) -> PyResult<u64> {
    dims::dim_l_bigraded(k, l).py()
}

#[pyfunction]
fn dim_i(n: i64) -> PyResult<u64> {
    dims::dim_i(n).py()
}

#[pyfunction]
fn dim_i_bigraded(k: i64, l: i64) -> i64 {
    dims::dim_i_bigraded(k, l)
}

/// `{"domain_a", "domain_b", "codomain", "matrix"}` for Θ_{k,l}.
#[pyfunction]
fn theta_matrix<'py>(py: Python<'py>, k: usize, l: usize) -> PyResult<Bound<'py, PyDict>> {
    let t = theta::theta_matrix(k, l).py()?;
    let names = |ws: &[LyndonWord]| ws.iter().map(|w| w.to_string()).collect::<Vec<_>>();
    let d = PyDict::new(py);
    d.set_item("domain_a", names(&t.domain_a))?;
    d.set_item("domain_b", names(&t.domain_b))?;
    d.set_item("codomain", names(&t.codomain))?;
    d.set_item("matrix", t.matrix.to_rows())?;
    Ok(d)
}

/// Canonical (Hermite) basis of the kernel lattice of Θ_{k,l}.
#[pyfunction]
fn kernel(k: usize, l: usize) -> PyResult<Vec<Vec<BigInt>>> {
    let (_, lattice) = theta::kernel_lattice(k, l).py()?;
    Ok(lattice.basis().to_vec())
}

#[pyfunction]
fn kernel_certificates(k: usize, l: usize) -> PyResult<Vec<PyCertificate>> {
    Ok(theta::kernel_certificates(k, l).py()?.into_iter().map(|inner| PyCertificate { inner }).collect())
}

/// Rank and cokernel invariant factors of Θ_{k,l}.
#[pyfunction]
fn check_surjective<'py>(py: Python<'py>, k: usize, l: usize) -> PyResult<Bound<'py, PyDict>> {
    let rep = theta::check_surjective(k, l).py()?;
    let d = PyDict::new(py);
    d.set_item("rank", rep.rank)?;
    d.set_item("codomain_dim", rep.codomain_dim)?;
    d.set_item("invariant_factors", rep.invariant_factors.clone())?;
    d.set_item("surjective", rep.surjective)?;
    Ok(d)
}

/// Whether two sets of certificates in one bidegree span the same lattice.
#[pyfunction]
fn lattice_equal(x: Vec<PyCertificate>, y: Vec<PyCertificate>) -> PyResult<bool> {
    let bd = match x.first().or(y.first()) {
        Some(c) => c.inner.bidegree,
        None => return Ok(true),
    };
    let unwrap = |v: Vec<PyCertificate>| v.into_iter().map(|c| c.inner).collect::<Vec<_>>();
    let lx = theta::certificate_lattice(bd, &unwrap(x)).py()?;
    let ly = theta::certificate_lattice(bd, &unwrap(y)).py()?;
    zlinalg::lattice_equal(&lx, &ly).py()
}

#[pyfunction]
fn alpha(i: usize, j: usize) -> BigInt {
    families::alpha(i, j)
}

#[pyfunction]
fn qbad_certificate(n: usize) -> PyResult<PyCertificate> {
    Ok(PyCertificate { inner: families::qbad_certificate(n).py()? })
}

#[pyfunction]
fn i2_certificate(m: usize) -> PyResult<PyCertificate> {
    Ok(PyCertificate { inner: families::i2_certificate(m).py()? })
}

#[pyfunction]
fn i33n_certificate(n: usize) -> PyResult<PyCertificate> {
    Ok(PyCertificate { inner: families::i33n_certificate(n).py()? })
}

#[pymodule]
#[pyo3(name = "freelie")]
fn freelie_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLieElement>()?;
    m.add_class::<PyCertificate>()?;
    m.add_function(wrap_pyfunction!(is_lyndon, m)?)?;
    m.add_function(wrap_pyfunction!(lyndon_words, m)?)?;
    m.add_function(wrap_pyfunction!(standard_factorization, m)?)?;
    m.add_function(wrap_pyfunction!(lyndon_bracket, m)?)?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(engel, m)?)?;
    m.add_function(wrap_pyfunction!(dim_l, m)?)?;
    m.add_function(wrap_pyfunction!(dim_l_bigraded, m)?)?;
    m.add_function(wrap_pyfunction!(dim_i, m)?)?;
    m.add_function(wrap_pyfunction!(dim_i_bigraded, m)?)?;
    m.add_function(wrap_pyfunction!(theta_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(kernel, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_certificates, m)?)?;
    m.add_function(wrap_pyfunction!(check_surjective, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_equal, m)?)?;
    m.add_function(wrap_pyfunction!(alpha, m)?)?;
    m.add_function(wrap_pyfunction!(qbad_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(i2_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(i33n_certificate, m)?)?;
    Ok(())
}
