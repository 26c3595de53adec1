//! Python bindings for the `hessloci` library.
//!
//! Forms are parsed from text. Structured results come back as plain
//! dicts and lists built from the library's JSON reports.

use hessloci::claims::{registry, run_claims};
use hessloci::families::{closed_forms_check, gen_waring_normal};
use hessloci::graded::{hessian_derivative_certificates, hilbert_function, ideal_membership, socle_check};
use hessloci::reconstruct::{reconstruct_g, tensor_of, validate_relations, ThirdTensor};
use hessloci::strata::{enumerate_stratum, estimate_stratum_dimension, Mode, Stratum};
use hessloci::{DForm, Field, LinearSpace, MultiPoly, ProjPoint, Scalar};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde::Serialize;
use serde_json::Value;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_field(text: &str) -> PyResult<Field> {
    let t = text.trim().to_ascii_lowercase();
    if t == "q" {
        return Ok(Field::Rational);
    }
    match t.strip_prefix("fp:").map(str::parse::<u64>) {
        Some(Ok(p)) => Field::prime(p).map_err(err),
        _ => Err(err(format!("field must be `q` or `fp:<prime>`, got `{text}`"))),
    }
}

fn infer_nvars(text: &str) -> usize {
    let mut max = None;
    let mut rest = text;
    while let Some(i) = rest.find('x') {
        rest = &rest[i + 1..];
        let digits: String = rest.chars().take_while(char::is_ascii_digit).collect();
        if let Ok(v) = digits.parse::<usize>() {
            max = Some(max.map_or(v, |m: usize| m.max(v)));
        }
    }
    max.map_or(1, |m| m + 1)
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.into_any()
            } else if let Some(u) = n.as_u64() {
                u.into_pyobject(py)?.into_any()
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any()
            }
        }
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(a) => {
            let list = PyList::empty(py);
            for x in a {
                list.append(to_py(py, x)?)?;
            }
            list.into_any()
        }
        Value::Object(m) => {
            let d = PyDict::new(py);
            for (k, x) in m {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_any()
        }
    })
}

fn report<'py>(py: Python<'py>, r: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &serde_json::to_value(r).map_err(err)?)
}

fn scalars(values: &[String], field: Field) -> PyResult<Vec<Scalar>> {
    values.iter().map(|t| field.parse_scalar(t.trim()).map_err(err)).collect()
}

fn parse_stratum(text: &str) -> PyResult<Stratum> {
    match text.trim() {
        "sing" => Ok(Stratum::HessianSingular),
        t => t
            .parse()
            .map(Stratum::Rank)
            .map_err(|_| err(format!("stratum must be `sing` or a rank bound, got `{text}`"))),
    }
}

/// A homogeneous form of degree at least 3 together with its Hessian data.
#[pyclass(name = "Form", frozen)]
struct PyForm {
    inner: DForm,
}

impl PyForm {
    fn point(&self, text: &str) -> PyResult<ProjPoint> {
        let p = ProjPoint::parse(text, self.inner.field()).map_err(err)?;
        if p.len() != self.inner.nvars() {
            return Err(err(format!("point {text} needs {} coordinates", self.inner.nvars())));
        }
        Ok(p)
    }

    fn poly(&self, text: &str) -> PyResult<MultiPoly> {
        hessloci::parse_poly(text, self.inner.nvars(), self.inner.field()).map_err(err)
    }
}

#[pymethods]
impl PyForm {
    /// Parse `text` in `x0..x{n}`; `nvars` defaults to one past the largest index.
    #[new]
    #[pyo3(signature = (text, nvars=None, field="q"))]
    fn new(text: &str, nvars: Option<usize>, field: &str) -> PyResult<Self> {
        let field = parse_field(field)?;
        let nvars = nvars.unwrap_or_else(|| infer_nvars(text));
        Ok(PyForm { inner: DForm::parse(text, nvars, field).map_err(err)? })
    }

    #[getter]
    fn nvars(&self) -> usize {
        self.inner.nvars()
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.inner.degree()
    }

    #[getter]
    fn field(&self) -> String {
        match self.inner.field() {
            Field::Rational => "q".into(),
            f => format!("fp:{}", f.characteristic()),
        }
    }

    fn __str__(&self) -> String {
        self.inner.poly().to_text()
    }

    fn __repr__(&self) -> String {
        format!("Form('{}', nvars={})", self.inner.poly().to_text(), self.inner.nvars())
    }

    /// Hessian matrix entries as polynomial strings.
    fn hessian(&self) -> Vec<Vec<String>> {
        self.inner.hessian().to_rows().iter().map(|r| r.iter().map(MultiPoly::to_text).collect()).collect()
    }

    /// The Hessian polynomial `det H_f`.
    fn hessian_poly(&self) -> String {
        self.inner.hessian_poly().to_text()
    }

    /// Rank of the Hessian matrix at a point such as `"[1:0:2]"`.
    fn rank_at(&self, point: &str) -> PyResult<usize> {
        self.inner.rank_at(&self.point(point)?).map_err(err)
    }

    fn in_dk(&self, point: &str, k: usize) -> PyResult<bool> {
        self.inner.in_dk(&self.point(point)?, k).map_err(err)
    }

    /// Basis points of the projectivized kernel at `point`.
    fn kernel(&self, point: &str) -> PyResult<Vec<String>> {
        let k = self.inner.iota(&self.point(point)?).map_err(err)?;
        Ok(k.basis().iter().map(ProjPoint::to_text).collect())
    }

    /// Whether the linear space cut out by `forms` lies in `D_k`.
    fn space_in_dk<'py>(&self, py: Python<'py>, forms: Vec<String>, k: usize) -> PyResult<Bound<'py, PyAny>> {
        let cut = forms.iter().map(|t| self.poly(t)).collect::<PyResult<Vec<_>>>()?;
        let s = LinearSpace::from_forms(self.inner.field(), self.inner.nvars(), cut).map_err(err)?;
        report(py, &self.inner.verify_space_in_dk(&s, k).map_err(err)?)
    }

    fn is_smooth(&self) -> PyResult<bool> {
        self.inner.is_smooth().map_err(err)
    }

    /// Hilbert function of the Jacobian ring.
    fn hilbert(&self) -> Vec<usize> {
        hilbert_function(&self.inner)
    }

    fn socle<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        report(py, &socle_check(&self.inner).map_err(err)?)
    }

    /// Certificates that every second partial of `h_f` lies in the Jacobian ideal.
    fn derivative_certificates<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        report(py, &hessian_derivative_certificates(&self.inner).map_err(err)?)
    }

    /// Membership certificate for `target` in the Jacobian ideal, re-verified.
    fn membership<'py>(&self, py: Python<'py>, target: &str) -> PyResult<Bound<'py, PyAny>> {
        let cert = ideal_membership(&self.inner, &self.poly(target)?).map_err(err)?;
        if !cert.verify(&self.inner).map_err(err)? {
            return Err(err("membership certificate failed to verify"));
        }
        report(py, &cert)
    }

    /// Points of a stratum over `F_p`; `trials` switches to seeded sampling.
    #[pyo3(signature = (stratum, prime, trials=None, seed=0))]
    fn strata<'py>(
        &self,
        py: Python<'py>,
        stratum: &str,
        prime: u64,
        trials: Option<u64>,
        seed: u64,
    ) -> PyResult<Bound<'py, PyAny>> {
        let mode = trials.map_or(Mode::Full, |trials| Mode::Sampled { trials });
        let r = py.detach(|| enumerate_stratum(&self.inner, prime, parse_stratum(stratum)?, mode, seed).map_err(err))?;
        report(py, &r)
    }

    /// Dimension estimate of a stratum from two primes.
    #[pyo3(signature = (stratum, primes=(13, 31), seed=0))]
    fn stratum_dimension<'py>(
        &self,
        py: Python<'py>,
        stratum: &str,
        primes: (u64, u64),
        seed: u64,
    ) -> PyResult<Bound<'py, PyAny>> {
        let s = parse_stratum(stratum)?;
        let r = py.detach(|| estimate_stratum_dimension(&self.inner, s, [primes.0, primes.1], seed).map_err(err))?;
        report(py, &r)
    }

    /// The symmetric third-derivative tensor of a cubic as JSON text.
    fn tensor(&self) -> PyResult<String> {
        Ok(tensor_of(self.inner.poly()).map_err(err)?.to_json().to_string())
    }
}

/// `sum x_i^3 + (sum a_i x_i)^3` for the given coefficients.
#[pyfunction]
#[pyo3(signature = (a, field="q"))]
fn waring_normal(a: Vec<String>, field: &str) -> PyResult<PyForm> {
    let field = parse_field(field)?;
    let w = gen_waring_normal(field, &scalars(&a, field)?).map_err(err)?;
    Ok(PyForm { inner: w.dform().map_err(err)? })
}

/// Closed-form Hessian and vertex checks for the Waring normal form.
#[pyfunction]
#[pyo3(signature = (a, field="q"))]
fn closed_forms<'py>(py: Python<'py>, a: Vec<String>, field: &str) -> PyResult<Bound<'py, PyAny>> {
    let field = parse_field(field)?;
    let w = gen_waring_normal(field, &scalars(&a, field)?).map_err(err)?;
    report(py, &closed_forms_check(&w).map_err(err)?)
}

/// Recover a cubic from its tensor (JSON text) and normal vector `a`.
#[pyfunction]
fn reconstruct<'py>(py: Python<'py>, tensor: &str, a: Vec<String>) -> PyResult<Bound<'py, PyAny>> {
    let v: Value = serde_json::from_str(tensor).map_err(err)?;
    let t = ThirdTensor::from_json(&v).map_err(err)?;
    let av = scalars(&a, t.field())?;
    let rel = validate_relations(&t, &av).map_err(err)?;
    if !rel.passed() {
        return Err(err(format!("tensor relations fail: {}", serde_json::to_string(&rel).map_err(err)?)));
    }
    report(py, &reconstruct_g(&t, &av).map_err(err)?)
}

/// Identifiers and one-line descriptions of the built-in checks.
#[pyfunction]
fn check_ids() -> Vec<(String, String)> {
    registry().iter().map(|c| (c.id.to_string(), c.claim.to_string())).collect()
}

/// Run built-in checks (all when `ids` is empty) and return the report.
#[pyfunction]
#[pyo3(signature = (ids=Vec::new(), seed=0))]
fn run_checks<'py>(py: Python<'py>, ids: Vec<String>, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let r = py.detach(|| run_claims(&ids, seed).map_err(err))?;
    report(py, &r)
}

#[pymodule]
#[pyo3(name = "hessloci")]
fn hessloci_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyForm>()?;
    m.add_function(wrap_pyfunction!(waring_normal, m)?)?;
    m.add_function(wrap_pyfunction!(closed_forms, m)?)?;
    m.add_function(wrap_pyfunction!(reconstruct, m)?)?;
    m.add_function(wrap_pyfunction!(check_ids, m)?)?;
    m.add_function(wrap_pyfunction!(run_checks, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn helpers() {
        assert_eq!(infer_nvars("x0^3 + x12*x1^2"), 13);
        assert_eq!(parse_stratum("sing").unwrap(), Stratum::HessianSingular);
        assert_eq!(parse_stratum("2").unwrap(), Stratum::Rank(2));
    }
}
