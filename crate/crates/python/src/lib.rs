//! Python bindings: fields, point counting, zeta functions and the trace solver.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use zeta_core::field::{self, ExtensionField};
use zeta_core::variety::DEFAULT_BUDGET;
use zeta_core::zeta::{self, DEFAULT_TOLERANCE};
use zeta_core::{curves, solver, IntPoly, PointCountSeries};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn poly(coeffs: Vec<BigInt>) -> IntPoly {
    IntPoly::new(coeffs)
}

/// `F_{p^k}` with the lexicographically smallest monic irreducible modulus.
/// Elements are coefficient lists `[c_0, ..., c_{k-1}]`, low degree first.
#[pyclass(name = "FiniteField", module = "zeta_finite", frozen)]
struct PyFiniteField {
    inner: ExtensionField,
}

impl PyFiniteField {
    fn element(&self, c: Vec<i64>) -> PyResult<field::FieldElement> {
        self.inner.element(&c).map_err(err)
    }
}

#[pymethods]
impl PyFiniteField {
    #[new]
    #[pyo3(signature = (p, k=1))]
    fn new(p: u64, k: usize) -> PyResult<Self> {
        Ok(PyFiniteField {
            inner: field::make_extension(p, k).map_err(err)?,
        })
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn modulus(&self) -> Vec<u64> {
        self.inner.modulus().to_vec()
    }

    #[getter]
    fn order(&self) -> BigInt {
        self.inner.cardinality().into()
    }

    fn elements(&self) -> Vec<Vec<u64>> {
        field::enumerate_elements(&self.inner)
            .map(|e| e.coeffs().to_vec())
            .collect()
    }

    fn add(&self, a: Vec<i64>, b: Vec<i64>) -> PyResult<Vec<u64>> {
        let r = self.element(a)?.add(&self.element(b)?).map_err(err)?;
        Ok(r.coeffs().to_vec())
    }

    fn mul(&self, a: Vec<i64>, b: Vec<i64>) -> PyResult<Vec<u64>> {
        let r = self.element(a)?.mul(&self.element(b)?).map_err(err)?;
        Ok(r.coeffs().to_vec())
    }

    fn neg(&self, a: Vec<i64>) -> PyResult<Vec<u64>> {
        Ok(self.element(a)?.neg().coeffs().to_vec())
    }

    fn inv(&self, a: Vec<i64>) -> PyResult<Vec<u64>> {
        Ok(self.element(a)?.inv().map_err(err)?.coeffs().to_vec())
    }

    fn __repr__(&self) -> String {
        format!("FiniteField(p={}, k={})", self.inner.p(), self.inner.degree())
    }
}

#[pyclass(name = "VarietySpec", module = "zeta_finite", frozen)]
struct PyVarietySpec {
    inner: zeta_core::VarietySpec,
}

#[pymethods]
impl PyVarietySpec {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyVarietySpec {
            inner: zeta_core::VarietySpec::from_json(text).map_err(err)?,
        })
    }

    /// Projective closure of `y^2 = x^3 + a x + b` over `F_p`.
    #[staticmethod]
    fn weierstrass(p: u64, a: u64, b: u64) -> PyResult<Self> {
        Ok(PyVarietySpec {
            inner: curves::WeierstrassCurve::new(p, a, b).map_err(err)?.to_spec(),
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label.clone()
    }

    #[getter]
    fn q(&self) -> BigInt {
        self.inner.q().into()
    }

    #[pyo3(signature = (n, budget=DEFAULT_BUDGET))]
    fn count(&self, py: Python<'_>, n: u32, budget: u64) -> PyResult<BigInt> {
        let spec = &self.inner;
        py.detach(|| zeta_core::count_points(spec, n, budget))
            .map(BigInt::from)
            .map_err(err)
    }

    #[pyo3(signature = (terms, budget=DEFAULT_BUDGET))]
    fn count_series(&self, py: Python<'_>, terms: u32, budget: u64) -> PyResult<Vec<BigInt>> {
        let spec = &self.inner;
        let s = py
            .detach(|| zeta_core::count_series(spec, terms, budget))
            .map_err(err)?;
        Ok(s.counts.into_iter().map(BigInt::from).collect())
    }
}

#[pyclass(name = "ZetaFunction", module = "zeta_finite", frozen, eq)]
#[derive(PartialEq)]
struct PyZetaFunction {
    inner: zeta_core::ZetaFunction,
}

#[pymethods]
impl PyZetaFunction {
    #[new]
    fn new(q: BigInt, numerator: Vec<BigInt>, denominator: Vec<BigInt>) -> PyResult<Self> {
        Ok(PyZetaFunction {
            inner: zeta_core::ZetaFunction::new(q, poly(numerator), poly(denominator))
                .map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyZetaFunction {
            inner: zeta_core::ZetaFunction::from_json(text).map_err(err)?,
        })
    }

    #[getter]
    fn q(&self) -> BigInt {
        self.inner.q().clone()
    }

    #[getter]
    fn numerator(&self) -> Vec<BigInt> {
        self.inner.numerator().coeffs().to_vec()
    }

    #[getter]
    fn denominator(&self) -> Vec<BigInt> {
        self.inner.denominator().coeffs().to_vec()
    }

    /// `N_1, ..., N_terms`.
    fn counts(&self, terms: usize) -> PyResult<Vec<BigInt>> {
        let s = zeta_core::counts_from_zeta(&self.inner, terms).map_err(err)?;
        Ok(s.counts.into_iter().map(BigInt::from).collect())
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("ZetaFunction({})", self.inner.to_json())
    }
}

fn series(q: BigInt, counts: Vec<BigInt>) -> PyResult<PointCountSeries> {
    let conv = |v: BigInt| v.to_biguint().ok_or_else(|| err("counts must be nonnegative"));
    Ok(PointCountSeries {
        q: conv(q)?,
        counts: counts.into_iter().map(conv).collect::<PyResult<_>>()?,
    })
}

/// Fits a zeta function with the given numerator and denominator degrees.
#[pyfunction]
fn zeta_from_counts(
    q: BigInt,
    counts: Vec<BigInt>,
    num_degree: usize,
    den_degree: usize,
) -> PyResult<PyZetaFunction> {
    let split = zeta::DegreeSplit {
        num: num_degree,
        den: den_degree,
    };
    Ok(PyZetaFunction {
        inner: zeta_core::zeta_from_counts(&series(q, counts)?, split).map_err(err)?,
    })
}

/// Fits a zeta function using Betti numbers and the functional equation.
#[pyfunction]
fn zeta_from_profile(q: BigInt, counts: Vec<BigInt>, betti: Vec<usize>) -> PyResult<PyZetaFunction> {
    let profile = zeta_core::CohomologyProfile::new(betti.len() / 2, betti).map_err(err)?;
    Ok(PyZetaFunction {
        inner: zeta_core::zeta_from_counts_with_profile(&series(q, counts)?, &profile)
            .map_err(err)?,
    })
}

#[pyclass(name = "WeilFactorization", module = "zeta_finite", frozen)]
struct PyWeilFactorization {
    inner: zeta_core::WeilFactorization,
}

#[pymethods]
impl PyWeilFactorization {
    #[getter]
    fn factors(&self) -> Vec<Vec<BigInt>> {
        self.inner
            .factors()
            .iter()
            .map(|p| p.coeffs().to_vec())
            .collect()
    }

    fn functional_equation_holds(&self) -> bool {
        zeta_core::check_functional_equation(&self.inner).is_ok()
    }

    #[pyo3(signature = (tolerance=DEFAULT_TOLERANCE))]
    fn riemann_hypothesis_holds(&self, tolerance: f64) -> bool {
        zeta_core::check_riemann_hypothesis(&self.inner, tolerance).passes()
    }

    /// `traces[i][n-1] = Tr(phi^n | H^i)` as `"num/den"` strings.
    fn traces(&self, terms: usize) -> Vec<Vec<String>> {
        let t = zeta_core::traces_from_factorization(&self.inner, terms);
        (0..=2 * t.dimension())
            .map(|i| (1..=terms).map(|n| zeta::format_rational(t.trace(i, n))).collect())
            .collect()
    }
}

#[pyfunction]
#[pyo3(signature = (z, betti, tolerance=DEFAULT_TOLERANCE))]
fn factor_by_weights(
    z: &PyZetaFunction,
    betti: Vec<usize>,
    tolerance: f64,
) -> PyResult<PyWeilFactorization> {
    let profile = zeta_core::CohomologyProfile::new(betti.len() / 2, betti).map_err(err)?;
    Ok(PyWeilFactorization {
        inner: zeta_core::factor_by_weights(&z.inner, &profile, tolerance).map_err(err)?,
    })
}

#[pyclass(name = "ForcedReport", module = "zeta_finite", frozen)]
struct PyForcedReport {
    inner: solver::ForcedReport,
}

#[pymethods]
impl PyForcedReport {
    #[getter]
    fn forced(&self) -> Vec<usize> {
        self.inner.forced.iter().copied().collect()
    }

    #[getter]
    fn residual(&self) -> Vec<String> {
        self.inner.residual.iter().map(|r| r.to_string()).collect()
    }

    fn all_forced(&self) -> bool {
        self.inner.all_forced()
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }
}

/// Forced trace equalities in dimension `d` for the chosen constraint families.
#[pyfunction]
#[pyo3(signature = (d, albanese=true, hard_lefschetz=true, trivial=true))]
fn solve_forced(d: usize, albanese: bool, hard_lefschetz: bool, trivial: bool) -> PyResult<PyForcedReport> {
    let flags = solver::SolverFlags {
        albanese,
        hard_lefschetz,
        trivial,
    };
    let system = solver::build_constraint_system(d, flags).map_err(err)?;
    Ok(PyForcedReport {
        inner: solver::solve_forced(&system).map_err(err)?,
    })
}

type Pair = (u64, (u64, u64), (u64, u64), Vec<BigInt>);

/// `(p, (a, b), (a', b'), [N_1, N_2])` for non-isomorphic equal-count curves.
#[pyfunction]
fn find_pairs(py: Python<'_>, lo: u64, hi: u64) -> PyResult<Vec<Pair>> {
    let pairs = py.detach(|| curves::find_pairs(lo..=hi)).map_err(err)?;
    Ok(pairs
        .into_iter()
        .map(|r| {
            (
                r.q,
                (r.first.a, r.first.b),
                (r.second.a, r.second.b),
                r.counts.into_iter().map(BigInt::from).collect(),
            )
        })
        .collect())
}

#[pymodule]
fn zeta_finite(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFiniteField>()?;
    m.add_class::<PyVarietySpec>()?;
    m.add_class::<PyZetaFunction>()?;
    m.add_class::<PyWeilFactorization>()?;
    m.add_class::<PyForcedReport>()?;
    m.add_function(wrap_pyfunction!(zeta_from_counts, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_from_profile, m)?)?;
    m.add_function(wrap_pyfunction!(factor_by_weights, m)?)?;
    m.add_function(wrap_pyfunction!(solve_forced, m)?)?;
    m.add_function(wrap_pyfunction!(find_pairs, m)?)?;
    Ok(())
}
