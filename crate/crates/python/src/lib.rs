//! Python bindings: evaluation, word products, exact counts and the identity suite.

use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use mzv_core::combinatorics::{stuffle_count as core_stuffle_count, tau_factorizations};
use mzv_core::identities::{parse_rational, run_suite as core_run_suite, GfFamily, GfParams, SuiteConfig};
use mzv_core::numerics::{
    euler_sum_eval, multiple_polylog_eval, q_word_value_exact, Ball as CoreBall, ComplexBall, Prec,
    SignedComposition,
};
use mzv_core::word_algebra::{
    dual_composition, qshuffle as core_qshuffle, shuffle as core_shuffle, stuffle as core_stuffle,
    Composition as CoreComposition, Word,
};
use mzv_core::Error;
use num_bigint::BigInt;
use num_rational::BigRational;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Divergent(_) | Error::Pole(_) | Error::PrecisionLoss(_) => PyArithmeticError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn rational(text: &str) -> PyResult<BigRational> {
    parse_rational(text).ok_or_else(|| PyValueError::new_err(format!("bad rational '{text}'")))
}

fn fraction<'py>(py: Python<'py>, r: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((r.to_string(),))
}

fn prec(digits: u32) -> PyResult<Prec> {
    Prec::digits(digits).check().map_err(py_err)
}

/// A real number enclosed as midpoint ± radius.
#[pyclass(name = "Ball", frozen)]
struct Ball {
    inner: CoreBall,
    digits: u32,
}

#[pymethods]
impl Ball {
    /// Exact midpoint as a `fractions.Fraction`.
    #[getter]
    fn mid<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.mid_rational())
    }

    #[getter]
    fn rad(&self) -> f64 {
        self.inner.rad()
    }

    fn contains(&self, other: &Ball) -> bool {
        self.inner.contains(&other.inner)
    }

    fn overlaps(&self, other: &Ball) -> bool {
        self.inner.overlaps(&other.inner)
    }

    fn __float__(&self) -> f64 {
        self.inner.mid_f64()
    }

    fn __str__(&self) -> String {
        format!("{:.*}", self.digits as usize, self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Ball({:.20})", self.inner)
    }
}

fn wrap(inner: CoreBall, digits: u32) -> Ball {
    Ball { inner, digits }
}

/// A composition `(s_1, ..., s_k)` of positive integers.
#[pyclass(name = "Composition", frozen, eq, hash)]
#[derive(PartialEq, Hash)]
struct Composition {
    inner: CoreComposition,
}

#[pymethods]
impl Composition {
    #[new]
    fn new(parts: Vec<u32>) -> PyResult<Self> {
        Ok(Self { inner: CoreComposition::new(parts).map_err(py_err)? })
    }

    #[getter]
    fn parts(&self) -> Vec<u32> {
        self.inner.parts().to_vec()
    }

    #[getter]
    fn weight(&self) -> u32 {
        self.inner.weight()
    }

    #[getter]
    fn depth(&self) -> usize {
        self.inner.depth()
    }

    fn is_admissible(&self) -> bool {
        self.inner.is_admissible()
    }

    fn dual(&self) -> PyResult<Composition> {
        Ok(Composition { inner: dual_composition(&self.inner).map_err(py_err)? })
    }

    /// `ζ(s)` at `prec` decimal digits.
    #[pyo3(signature = (prec=40))]
    fn zeta(&self, prec: u32) -> PyResult<Ball> {
        let v = euler_sum_eval(&SignedComposition::from_composition(&self.inner), self::prec(prec)?).map_err(py_err)?;
        Ok(wrap(v, prec))
    }

    /// The stuffle product as a list of `(parts, multiplicity)`.
    fn stuffle(&self, other: &Composition) -> Vec<(Vec<u32>, u64)> {
        core_stuffle(&self.inner, &other.inner)
            .iter()
            .map(|(c, m)| (c.parts().to_vec(), m))
            .collect()
    }

    fn __len__(&self) -> usize {
        self.inner.depth()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Composition({:?})", self.inner.parts())
    }
}

/// `ζ_x(s; σ)`; negative entries of `s` mark alternating arguments.
#[pyfunction]
#[pyo3(signature = (s, x="1", prec=40))]
fn zeta(s: Vec<i64>, x: &str, prec: u32) -> PyResult<Ball> {
    let arg = SignedComposition::from_signed(&s, rational(x)?).map_err(py_err)?;
    Ok(wrap(euler_sum_eval(&arg, self::prec(prec)?).map_err(py_err)?, prec))
}

/// `Li_s(z_1, ..., z_k)` for Python complex or real arguments, returned as
/// `(re, im)` balls. The arguments are converted exactly from their floats.
#[pyfunction]
#[pyo3(signature = (s, z, prec=40))]
fn polylog(s: Vec<u32>, z: Vec<num_complex_like::C>, prec: u32) -> PyResult<(Ball, Ball)> {
    let p = self::prec(prec)?;
    let zs: Vec<ComplexBall> = z
        .iter()
        .map(|c| Ok(ComplexBall::from_rationals(&f64_exact(c.re)?, &f64_exact(c.im)?, p.bits)))
        .collect::<PyResult<Vec<_>>>()?;
    let v = multiple_polylog_eval(&s, &zs, p).map_err(py_err)?;
    Ok((wrap(v.re, prec), wrap(v.im, prec)))
}

fn f64_exact(x: f64) -> PyResult<BigRational> {
    BigRational::from_float(x).ok_or_else(|| PyValueError::new_err("non-finite argument"))
}

mod num_complex_like {
    use pyo3::prelude::*;
    use pyo3::types::PyComplex;

    /// Accepts `complex`, `float` or `int`.
    pub struct C {
        pub re: f64,
        pub im: f64,
    }

    impl<'a, 'py> FromPyObject<'a, 'py> for C {
        type Error = PyErr;
        fn extract(ob: Borrowed<'a, 'py, PyAny>) -> PyResult<Self> {
            if let Ok(c) = ob.cast::<PyComplex>() {
                return Ok(C { re: c.real(), im: c.imag() });
            }
            Ok(C { re: ob.extract::<f64>()?, im: 0.0 })
        }
    }
}

fn word(text: &str) -> PyResult<Word> {
    text.parse().map_err(py_err)
}

/// Shuffle product of two words, as `{word: coefficient}` text pairs.
#[pyfunction]
fn shuffle(u: &str, v: &str) -> PyResult<Vec<(String, String)>> {
    let p = core_shuffle(&word(u)?, &word(v)?);
    Ok(p.terms().map(|(w, c)| (w.to_string(), c.to_string())).collect())
}

/// q-shuffle product of two words; shifted letters are written `b[1]`.
#[pyfunction]
fn qshuffle(u: &str, v: &str) -> PyResult<Vec<(String, String)>> {
    let p = core_qshuffle(&word(u)?, &word(v)?);
    Ok(p.terms().map(|(w, c)| (w.to_string(), c.to_string())).collect())
}

/// Exact value of the Jackson q-integral of a word of monomial forms.
#[pyfunction]
fn q_value<'py>(py: Python<'py>, w: &str, x: &str, q: &str) -> PyResult<Bound<'py, PyAny>> {
    let v = q_word_value_exact(&word(w)?, &rational(x)?, &rational(q)?).map_err(py_err)?;
    fraction(py, &v)
}

#[pyfunction]
fn stuffle_count(m: u64, n: u64) -> BigInt {
    core_stuffle_count(m, n)
}

/// Unordered factorizations of `m` into `k` distinct factors.
#[pyfunction]
fn tau(m: u64, k: u32) -> BigInt {
    tau_factorizations(m, k)
}

/// Runs a suite configuration (the built-in one by default) and returns one
/// dict per check.
#[pyfunction]
#[pyo3(signature = (config=None, jobs=1))]
fn run_suite<'py>(py: Python<'py>, config: Option<&str>, jobs: usize) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let cfg = match config {
        Some(text) => SuiteConfig::parse(text).map_err(py_err)?,
        None => SuiteConfig::default_suite(),
    };
    let report = py.detach(|| core_run_suite(&cfg, jobs)).map_err(py_err)?;
    report
        .results
        .iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("name", &r.name)?;
            d.set_item("params", r.params.clone())?;
            d.set_item("lhs", r.lhs.to_string())?;
            d.set_item("rhs", r.rhs.to_string())?;
            d.set_item("residual", r.residual)?;
            d.set_item("tolerance", r.tolerance)?;
            d.set_item("pass", r.pass)?;
            Ok(d)
        })
        .collect()
}

/// One generating-function check; returns `(pass, residual)`.
#[pyfunction]
#[pyo3(signature = (family, prec=40))]
fn check_gf(family: &str, prec: u32) -> PyResult<(bool, f64)> {
    let f: GfFamily = family.parse().map_err(py_err)?;
    let r = mzv_core::identities::check_generating_function(f, &GfParams::defaults(f), self::prec(prec)?)
        .map_err(py_err)?;
    Ok((r.pass, r.residual))
}

#[pymodule]
pub fn mzv(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Ball>()?;
    m.add_class::<Composition>()?;
    m.add_function(wrap_pyfunction!(zeta, m)?)?;
    m.add_function(wrap_pyfunction!(polylog, m)?)?;
    m.add_function(wrap_pyfunction!(shuffle, m)?)?;
    m.add_function(wrap_pyfunction!(qshuffle, m)?)?;
    m.add_function(wrap_pyfunction!(q_value, m)?)?;
    m.add_function(wrap_pyfunction!(stuffle_count, m)?)?;
    m.add_function(wrap_pyfunction!(tau, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(check_gf, m)?)?;
    Ok(())
}
