//! Zeta functions, their Weil factorizations, and per-degree Frobenius traces.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::json;
use crate::linalg::{self, Solution};
use crate::poly::{format_poly, IntPoly, QPoly};
use crate::roots::roots_with_multiplicity;
use crate::variety::PointCountSeries;

/// Default relative tolerance for numeric root moduli.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ZetaError {
    #[error("insufficient counts: {0}")]
    InsufficientCounts(String),
    #[error("no rational function fits the counts: {0}")]
    NoRationalFit(String),
    #[error("the rational fit has non-integral coefficients")]
    NonIntegralCoefficients,
    #[error("count N_{0} is not an integer")]
    NonIntegralCount(usize),
    #[error("count N_{0} is negative")]
    NegativeCount(usize),
    #[error("invalid zeta function: {0}")]
    InvalidZeta(String),
    #[error("invalid cohomology profile: {0}")]
    InvalidProfile(String),
    #[error("zeta degrees ({num}, {den}) do not match the profile ({exp_num}, {exp_den})")]
    ProfileMismatch {
        num: usize,
        den: usize,
        exp_num: usize,
        exp_den: usize,
    },
    #[error("weight separation failed: {0}")]
    WeightSeparationFailed(String),
    #[error("rounded factors do not reproduce the zeta function: {0}")]
    RoundingMismatch(String),
    #[error("functional equation fails in degrees {degrees:?}")]
    DualityViolation { degrees: Vec<usize> },
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn degree_of(p: &IntPoly) -> usize {
    p.degree().unwrap_or(0)
}

/// A zeta function `num(t) / den(t)` with integer coefficients, constant
/// terms 1 and coprime numerator and denominator. This normal form is unique,
/// so structural equality is equality of rational functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaFunction {
    q: BigInt,
    num: IntPoly,
    den: IntPoly,
}

impl ZetaFunction {
    pub fn new(q: BigInt, num: IntPoly, den: IntPoly) -> Result<Self, ZetaError> {
        if q < BigInt::from(2) {
            return Err(ZetaError::InvalidZeta(format!("q = {q} is not a field size")));
        }
        if num.coeff(0) != BigInt::one() || den.coeff(0) != BigInt::one() {
            return Err(ZetaError::InvalidZeta("constant terms must be 1".into()));
        }
        let g = QPoly::from_int(&num).gcd(&QPoly::from_int(&den));
        if g.degree() != Some(0) {
            return Err(ZetaError::InvalidZeta(
                "numerator and denominator share a factor".into(),
            ));
        }
        Ok(ZetaFunction { q, num, den })
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(ZetaJson::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, ZetaError> {
        let raw: ZetaJson =
            serde_json::from_str(text).map_err(|e| ZetaError::InvalidZeta(e.to_string()))?;
        ZetaFunction::new(raw.q, IntPoly::new(raw.num), IntPoly::new(raw.den))
    }
}

impl fmt::Display for ZetaFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})/({})",
            format_poly(&self.num, "t"),
            format_poly(&self.den, "t")
        )
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ZetaJson {
    #[serde(with = "json::bigint")]
    q: BigInt,
    #[serde(with = "json::bigint_vec")]
    num: Vec<BigInt>,
    #[serde(with = "json::bigint_vec")]
    den: Vec<BigInt>,
}

impl From<&ZetaFunction> for ZetaJson {
    fn from(z: &ZetaFunction) -> Self {
        ZetaJson {
            q: z.q.clone(),
            num: z.num.coeffs().to_vec(),
            den: z.den.coeffs().to_vec(),
        }
    }
}

/// Betti numbers `b_0, ..., b_{2d}` of a smooth projective variety.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyProfile {
    d: usize,
    betti: Vec<usize>,
}

impl CohomologyProfile {
    pub fn new(d: usize, betti: Vec<usize>) -> Result<Self, ZetaError> {
        if betti.len() != 2 * d + 1 {
            return Err(ZetaError::InvalidProfile(format!(
                "dimension {d} needs {} Betti numbers, got {}",
                2 * d + 1,
                betti.len()
            )));
        }
        if betti[0] == 0 {
            return Err(ZetaError::InvalidProfile("b_0 must be positive".into()));
        }
        if let Some(i) = (0..=d).find(|&i| betti[i] != betti[2 * d - i]) {
            return Err(ZetaError::InvalidProfile(format!(
                "b_{i} = {} differs from b_{} = {}",
                betti[i],
                2 * d - i,
                betti[2 * d - i]
            )));
        }
        Ok(CohomologyProfile { d, betti })
    }

    pub fn from_json(text: &str) -> Result<Self, ZetaError> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            d: usize,
            betti: Vec<usize>,
        }
        let raw: Raw =
            serde_json::from_str(text).map_err(|e| ZetaError::InvalidProfile(e.to_string()))?;
        Self::new(raw.d, raw.betti)
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn betti(&self) -> &[usize] {
        &self.betti
    }

    /// `(deg num, deg den) = (sum of odd b_i, sum of even b_i)`.
    pub fn split(&self) -> DegreeSplit {
        let sum = |parity: usize| -> usize {
            self.betti
                .iter()
                .enumerate()
                .filter(|(i, _)| i % 2 == parity)
                .map(|(_, b)| b)
                .sum()
        };
        DegreeSplit {
            num: sum(1),
            den: sum(0),
        }
    }
}

/// Numerator and denominator degrees of a zeta function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeSplit {
    pub num: usize,
    pub den: usize,
}

impl DegreeSplit {
    pub fn total(&self) -> usize {
        self.num + self.den
    }
}

/// Coefficients `z_0 = 1, z_1, ..., z_m` of `exp(sum N_n t^n / n)`, from
/// `n z_n = sum_{k=1}^{n} N_k z_{n-k}`.
pub fn zeta_series(counts: &[BigUint]) -> Vec<BigRational> {
    let mut z = vec![BigRational::one()];
    for n in 1..=counts.len() {
        let acc = (1..=n).fold(BigRational::zero(), |acc, k| {
            acc + rat(BigInt::from(counts[k - 1].clone())) * &z[n - k]
        });
        z.push(acc / rat(n as i64));
    }
    z
}

/// A homogeneous linear condition `sum c_j x_j = rhs` on the unknown vector
/// `(p_1, ..., p_en, q_1, ..., q_ed)`.
struct ExtraRow {
    coeffs: Vec<BigRational>,
    rhs: BigRational,
}

fn fit(
    series: &PointCountSeries,
    split: DegreeSplit,
    extra: &[ExtraRow],
) -> Result<ZetaFunction, ZetaError> {
    let (en, ed) = (split.num, split.den);
    let unknowns = en + ed;
    let z = zeta_series(&series.counts);
    let m = series.counts.len();
    let mut a = Vec::with_capacity(m + extra.len());
    let mut b = Vec::with_capacity(m + extra.len());
    // [t^j] (Q Z - P) = 0 for j = 1..m.
    for j in 1..=m {
        let mut row = vec![BigRational::zero(); unknowns];
        if j <= en {
            row[j - 1] = rat(-1);
        }
        for i in 1..=ed.min(j) {
            row[en + i - 1] = z[j - i].clone();
        }
        a.push(row);
        b.push(-z[j].clone());
    }
    for r in extra {
        a.push(r.coeffs.clone());
        b.push(r.rhs.clone());
    }
    let x = match linalg::solve(&a, &b, unknowns) {
        Solution::Unique(x) => x,
        Solution::Underdetermined(free) => {
            return Err(ZetaError::InsufficientCounts(format!(
                "{m} counts leave {free} coefficient(s) undetermined"
            )))
        }
        Solution::Inconsistent => {
            return Err(ZetaError::NoRationalFit(format!(
                "no rational function with degrees ({en}, {ed}) matches {m} counts"
            )))
        }
    };
    let mut num = vec![BigRational::one()];
    num.extend_from_slice(&x[..en]);
    let mut den = vec![BigRational::one()];
    den.extend_from_slice(&x[en..]);
    let num = QPoly::new(num).to_int().ok_or(ZetaError::NonIntegralCoefficients)?;
    let den = QPoly::new(den).to_int().ok_or(ZetaError::NonIntegralCoefficients)?;
    let q = BigInt::from(series.q.clone());
    ZetaFunction::new(q, num, den).map_err(|e| ZetaError::NoRationalFit(e.to_string()))
}

/// Fits `num/den` with the given degrees to the counts by exact Pade
/// approximation of `exp(sum N_n t^n / n)`. Needs at least `num + den` counts;
/// any further counts are checked against the fit.
pub fn zeta_from_counts(
    series: &PointCountSeries,
    split: DegreeSplit,
) -> Result<ZetaFunction, ZetaError> {
    if series.counts.len() < split.total() {
        return Err(ZetaError::InsufficientCounts(format!(
            "degree split ({}, {}) needs {} counts, got {}",
            split.num,
            split.den,
            split.total(),
            series.counts.len()
        )));
    }
    fit(series, split, &[])
}

/// Conditions making a polynomial of degree `e` invariant under the duality
/// `alpha -> q^d / alpha` on its inverse roots: `r_{e-j} = sign * q^{d(e-2j)/2} r_j`.
fn duality_rows(
    q: &BigInt,
    d: usize,
    e: usize,
    sign: i64,
    offset: usize,
    unknowns: usize,
) -> Vec<ExtraRow> {
    let mut rows = Vec::new();
    // r_0 = 1 is not an unknown; the coefficient r_j lives at offset + j - 1.
    for j in 0..=e / 2 {
        let mut coeffs = vec![BigRational::zero(); unknowns];
        let mut rhs = BigRational::zero();
        if 2 * j == e {
            if sign == 1 || j == 0 {
                continue;
            }
            coeffs[offset + j - 1] = rat(1);
        } else {
            let scale = rat(q.pow((d * (e - 2 * j) / 2) as u32) * sign);
            coeffs[offset + e - j - 1] = rat(1);
            if j == 0 {
                rhs = scale;
            } else {
                coeffs[offset + j - 1] = -scale;
            }
        }
        rows.push(ExtraRow { coeffs, rhs });
    }
    rows
}

/// Like [`zeta_from_counts`] with the degrees taken from a profile, adding the
/// linear conditions that hold for smooth projective varieties: Poincare
/// duality on numerator and denominator and, when `b_0 = 1`, the eigenvalue
/// 1 on `H^0`. These often pin the zeta function with far fewer counts (a
/// single count for an elliptic curve or a projective space).
pub fn zeta_from_counts_with_profile(
    series: &PointCountSeries,
    profile: &CohomologyProfile,
) -> Result<ZetaFunction, ZetaError> {
    let split = profile.split();
    let d = profile.d;
    let unknowns = split.total();
    if (d * split.num) % 2 == 1 || (d * split.den) % 2 == 1 {
        return Err(ZetaError::InvalidProfile(
            "odd d with odd total Betti number in a parity class".into(),
        ));
    }
    let q = BigInt::from(series.q.clone());
    let num_sign = if split.num.is_multiple_of(2) { 1 } else { -1 };
    let parity = if split.den.is_multiple_of(2) { 1 } else { -1 };
    // The sign of the middle-degree determinant is only known for odd d.
    let middle_even = d.is_multiple_of(2) && profile.betti[d] > 0;
    let den_signs: &[i64] = if middle_even { &[1, -1] } else { &[1] };

    let mut base = duality_rows(&q, d, split.num, num_sign, 0, unknowns);
    if profile.betti[0] == 1 {
        let mut coeffs = vec![BigRational::zero(); unknowns];
        for c in coeffs[split.num..].iter_mut() {
            *c = rat(1);
        }
        base.push(ExtraRow {
            coeffs,
            rhs: rat(-1),
        });
    }

    let mut fits = Vec::new();
    let mut errors = Vec::new();
    for &s in den_signs {
        let mut rows = duality_rows(&q, d, split.den, parity * s, split.num, unknowns);
        rows.extend(base.iter().map(|r| ExtraRow {
            coeffs: r.coeffs.clone(),
            rhs: r.rhs.clone(),
        }));
        match fit(series, split, &rows) {
            Ok(z) => fits.push(z),
            Err(e) => errors.push(e),
        }
    }
    fits.dedup();
    match fits.len() {
        1 => Ok(fits.pop().unwrap()),
        0 => Err(errors
            .iter()
            .find(|e| matches!(e, ZetaError::InsufficientCounts(_)))
            .unwrap_or(&errors[0])
            .clone()),
        _ => Err(ZetaError::InsufficientCounts(
            "both functional-equation signs fit; supply more counts".into(),
        )),
    }
}

/// Coefficients of `t R'(t) / R(t)` for `t^1..t^terms`, by power-series division.
fn log_derivative(r: &IntPoly, terms: usize) -> Vec<BigRational> {
    let r = QPoly::from_int(r);
    let dr = r.derivative();
    // inv = 1 / R mod t^terms
    let mut inv = vec![BigRational::one()];
    for n in 1..terms {
        let s = (1..=n.min(degree_of_q(&r))).fold(BigRational::zero(), |acc, k| {
            acc + r.coeff(k) * &inv[n - k]
        });
        inv.push(-s);
    }
    (1..=terms)
        .map(|n| {
            // [t^{n-1}] R' * inv
            (0..n).fold(BigRational::zero(), |acc, k| {
                acc + dr.coeff(k) * &inv[n - 1 - k]
            })
        })
        .collect()
}

fn degree_of_q(p: &QPoly) -> usize {
    p.degree().unwrap_or(0)
}

/// Reads `N_1..N_B` off `t (d/dt) log z`.
pub fn counts_from_zeta(z: &ZetaFunction, terms: usize) -> Result<PointCountSeries, ZetaError> {
    let from_num = log_derivative(&z.num, terms);
    let from_den = log_derivative(&z.den, terms);
    let mut counts = Vec::with_capacity(terms);
    for (i, (a, b)) in from_num.iter().zip(&from_den).enumerate() {
        let n = a - b;
        if !n.is_integer() {
            return Err(ZetaError::NonIntegralCount(i + 1));
        }
        let n = n.to_integer();
        if n.is_negative() {
            return Err(ZetaError::NegativeCount(i + 1));
        }
        counts.push(n.to_biguint().expect("nonnegative"));
    }
    let q = z
        .q
        .to_biguint()
        .ok_or_else(|| ZetaError::InvalidZeta("negative q".into()))?;
    Ok(PointCountSeries { q, counts })
}

/// Reciprocal characteristic polynomials `P_0..P_{2d}` of Frobenius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilFactorization {
    q: BigInt,
    d: usize,
    factors: Vec<IntPoly>,
}

impl WeilFactorization {
    pub fn new(q: BigInt, factors: Vec<IntPoly>) -> Result<Self, ZetaError> {
        if factors.len().is_multiple_of(2) {
            return Err(ZetaError::InvalidZeta(
                "need an odd number 2d + 1 of factors".into(),
            ));
        }
        if let Some(i) = factors.iter().position(|p| p.coeff(0) != BigInt::one()) {
            return Err(ZetaError::InvalidZeta(format!("P_{i}(0) != 1")));
        }
        let d = factors.len() / 2;
        Ok(WeilFactorization { q, d, factors })
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn factors(&self) -> &[IntPoly] {
        &self.factors
    }

    pub fn betti(&self) -> Vec<usize> {
        self.factors.iter().map(degree_of).collect()
    }

    /// `prod P_i^{(-1)^{i+1}}`.
    pub fn zeta(&self) -> Result<ZetaFunction, ZetaError> {
        let (num, den) = self.products();
        ZetaFunction::new(self.q.clone(), num, den)
    }

    fn products(&self) -> (IntPoly, IntPoly) {
        let mut num = IntPoly::one();
        let mut den = IntPoly::one();
        for (i, p) in self.factors.iter().enumerate() {
            if i % 2 == 1 {
                num = &num * p;
            } else {
                den = &den * p;
            }
        }
        (num, den)
    }

    pub fn to_json(&self) -> Value {
        let factors: Vec<Value> = self
            .factors
            .iter()
            .map(|p| Value::Array(p.coeffs().iter().map(json::bigint_to_value).collect()))
            .collect();
        json!({ "q": json::bigint_to_value(&self.q), "d": self.d, "factors": factors })
    }
}

/// Splits `z` into weight pieces `P_i` by the moduli of its roots, then
/// verifies the integer factors exactly against `z`.
pub fn factor_by_weights(
    z: &ZetaFunction,
    profile: &CohomologyProfile,
    tolerance: f64,
) -> Result<WeilFactorization, ZetaError> {
    let split = profile.split();
    let (dn, dd) = (degree_of(&z.num), degree_of(&z.den));
    if dn != split.num || dd != split.den {
        return Err(ZetaError::ProfileMismatch {
            num: dn,
            den: dd,
            exp_num: split.num,
            exp_den: split.den,
        });
    }
    let q = z
        .q
        .to_f64()
        .ok_or_else(|| ZetaError::WeightSeparationFailed("q too large".into()))?;
    let d = profile.d;
    let mut classes: Vec<Vec<num_complex::Complex64>> = vec![Vec::new(); 2 * d + 1];
    for (poly, parity) in [(&z.num, 1usize), (&z.den, 0usize)] {
        for (root, mult) in roots_with_multiplicity(poly) {
            let modulus = root.norm();
            let hits: Vec<usize> = (0..=2 * d)
                .filter(|i| i % 2 == parity)
                .filter(|&i| (modulus * q.powf(i as f64 / 2.0) - 1.0).abs() <= tolerance)
                .collect();
            match hits.as_slice() {
                [i] => classes[*i].extend(std::iter::repeat_n(root, mult)),
                [] => {
                    return Err(ZetaError::WeightSeparationFailed(format!(
                        "root of modulus {modulus:e} matches no weight"
                    )))
                }
                _ => {
                    return Err(ZetaError::WeightSeparationFailed(format!(
                        "root of modulus {modulus:e} matches several weights"
                    )))
                }
            }
        }
    }
    for (i, class) in classes.iter().enumerate() {
        if class.len() != profile.betti[i] {
            return Err(ZetaError::WeightSeparationFailed(format!(
                "found {} roots of weight {i}, expected b_{i} = {}",
                class.len(),
                profile.betti[i]
            )));
        }
    }
    let factors: Vec<IntPoly> = classes
        .iter()
        .map(|roots| {
            // prod (1 - t / r)
            let mut c = vec![num_complex::Complex64::new(1.0, 0.0)];
            for r in roots {
                let inv = r.inv();
                let mut next = c.clone();
                next.push(num_complex::Complex64::new(0.0, 0.0));
                for k in 1..next.len() {
                    next[k] -= c[k - 1] * inv;
                }
                c = next;
            }
            IntPoly::new(
                c.iter()
                    .map(|v| BigInt::from(v.re.round() as i128))
                    .collect(),
            )
        })
        .collect();
    let w = WeilFactorization::new(z.q.clone(), factors)
        .map_err(|e| ZetaError::RoundingMismatch(e.to_string()))?;
    let (num, den) = w.products();
    if num != z.num || den != z.den {
        return Err(ZetaError::RoundingMismatch(
            "product of rounded factors differs from the input".into(),
        ));
    }
    Ok(w)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityCheck {
    pub degree: usize,
    pub dual_degree: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub checks: Vec<DualityCheck>,
}

/// Checks `P_{2d-i}(t) = P_i(q^{d-i} t)` exactly for every `i < d`.
pub fn duality_report(w: &WeilFactorization) -> DualityReport {
    let d = w.d;
    let checks = (0..d)
        .map(|i| {
            let scaled = w.factors[i].scale_var(&w.q.pow((d - i) as u32));
            DualityCheck {
                degree: i,
                dual_degree: 2 * d - i,
                holds: scaled == w.factors[2 * d - i],
            }
        })
        .collect();
    DualityReport { checks }
}

/// [`duality_report`], failing with the offending degrees.
pub fn check_functional_equation(w: &WeilFactorization) -> Result<DualityReport, ZetaError> {
    let report = duality_report(w);
    let degrees: Vec<usize> = report
        .checks
        .iter()
        .filter(|c| !c.holds)
        .map(|c| c.degree)
        .collect();
    if degrees.is_empty() {
        Ok(report)
    } else {
        Err(ZetaError::DualityViolation { degrees })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RhViolation {
    pub degree: usize,
    pub modulus: f64,
    pub expected: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RhReport {
    pub tolerance: f64,
    pub roots_checked: usize,
    pub violations: Vec<RhViolation>,
}

impl RhReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Advisory numeric check that every root of `P_i` has modulus `q^{-i/2}`.
pub fn check_riemann_hypothesis(w: &WeilFactorization, tolerance: f64) -> RhReport {
    let q = w.q.to_f64().unwrap_or(f64::INFINITY);
    let mut roots_checked = 0;
    let mut violations = Vec::new();
    for (i, p) in w.factors.iter().enumerate() {
        let expected = q.powf(-(i as f64) / 2.0);
        for (root, mult) in roots_with_multiplicity(p) {
            roots_checked += mult;
            let modulus = root.norm();
            if (modulus / expected - 1.0).abs() > tolerance {
                violations.push(RhViolation {
                    degree: i,
                    modulus,
                    expected,
                });
            }
        }
    }
    RhReport {
        tolerance,
        roots_checked,
        violations,
    }
}

/// Power sums of the inverse roots of `1 + c_1 t + ... + c_b t^b`
/// (Newton: `s_n = -n c_n - sum_{k<n} c_k s_{n-k}`).
pub fn power_sums(p: &IntPoly, terms: usize) -> Vec<BigInt> {
    let mut s: Vec<BigInt> = Vec::with_capacity(terms);
    for n in 1..=terms {
        let mut v = -p.coeff(n) * BigInt::from(n);
        for k in 1..n {
            v -= p.coeff(k) * &s[n - k - 1];
        }
        s.push(v);
    }
    s
}

/// `Tr(phi^n | H^i)` for `i = 0..2d` and `n = 1..B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceVector {
    q: BigInt,
    d: usize,
    traces: Vec<Vec<BigRational>>,
}

impl TraceVector {
    pub fn new(q: BigInt, traces: Vec<Vec<BigRational>>) -> Result<Self, ZetaError> {
        if traces.len().is_multiple_of(2) || traces.windows(2).any(|w| w[0].len() != w[1].len()) {
            return Err(ZetaError::InvalidZeta(
                "traces need 2d + 1 rows of equal length".into(),
            ));
        }
        let d = traces.len() / 2;
        Ok(TraceVector { q, d, traces })
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> usize {
        self.traces[0].len()
    }

    /// `Tr(phi^n | H^i)`, `n >= 1`.
    pub fn trace(&self, i: usize, n: usize) -> &BigRational {
        &self.traces[i][n - 1]
    }

    /// Lefschetz: `N_n = sum_i (-1)^i Tr(phi^n | H^i)`.
    pub fn lefschetz_counts(&self) -> Vec<BigRational> {
        (1..=self.terms())
            .map(|n| {
                self.traces
                    .iter()
                    .enumerate()
                    .fold(BigRational::zero(), |acc, (i, row)| {
                        if i % 2 == 0 {
                            acc + &row[n - 1]
                        } else {
                            acc - &row[n - 1]
                        }
                    })
            })
            .collect()
    }

    /// Traces of the Tate twist `(j)`: eigenvalues of `phi^n` scale by `q^{-nj}`.
    pub fn tate_twist(&self, j: i32) -> TraceVector {
        let q = rat(self.q.clone());
        let traces = self
            .traces
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(k, t)| {
                        let n = (k + 1) as i32;
                        t * q.pow(-n * j)
                    })
                    .collect()
            })
            .collect();
        TraceVector {
            q: self.q.clone(),
            d: self.d,
            traces,
        }
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .traces
            .iter()
            .map(|row| Value::Array(row.iter().map(|t| Value::String(format_rational(t))).collect()))
            .collect();
        json!({ "q": json::bigint_to_value(&self.q), "d": self.d, "traces": rows })
    }
}

/// `num/den` in lowest terms.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Per-degree traces of `phi^n` from the factors, via Newton's identities.
pub fn traces_from_factorization(w: &WeilFactorization, terms: usize) -> TraceVector {
    let traces = w
        .factors
        .iter()
        .map(|p| power_sums(p, terms).into_iter().map(rat).collect())
        .collect();
    TraceVector {
        q: w.q.clone(),
        d: w.d,
        traces,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn series(q: u64, counts: &[u64]) -> PointCountSeries {
        PointCountSeries {
            q: BigUint::from(q),
            counts: counts.iter().map(|&c| BigUint::from(c)).collect(),
        }
    }

    fn elliptic_zeta() -> ZetaFunction {
        ZetaFunction::new(5.into(), ip(&[1, 3, 5]), ip(&[1, -6, 5])).unwrap()
    }

    #[test]
    fn line_and_plane() {
        for q in [2u64, 3, 5, 7] {
            let z = zeta_from_counts(
                &series(q, &[q + 1, q * q + 1]),
                DegreeSplit { num: 0, den: 2 },
            )
            .unwrap();
            let expected = &ip(&[1, -1]) * &ip(&[1, -(q as i64)]);
            assert_eq!(z.denominator(), &expected);
            assert_eq!(z.numerator(), &ip(&[1]));
        }
        let z = zeta_from_counts(&series(2, &[7, 21, 73]), DegreeSplit { num: 0, den: 3 }).unwrap();
        assert_eq!(z.denominator(), &(&(&ip(&[1, -1]) * &ip(&[1, -2])) * &ip(&[1, -4])));
    }

    #[test]
    fn elliptic_fit_from_two_counts() {
        // a = q + 1 - N_1 = -3 gives 1 + 3t + 5t^2; N_2 = 25 + 1 - (9 - 10) = 27.
        let profile = CohomologyProfile::new(1, vec![1, 2, 1]).unwrap();
        let z = zeta_from_counts_with_profile(&series(5, &[9, 27]), &profile).unwrap();
        assert_eq!(z, elliptic_zeta());
        // N_1 alone pins a genus-one zeta.
        let z = zeta_from_counts_with_profile(&series(5, &[9]), &profile).unwrap();
        assert_eq!(z, elliptic_zeta());
        // The bare split needs four counts.
        assert!(matches!(
            zeta_from_counts(&series(5, &[9, 27]), DegreeSplit { num: 2, den: 2 }),
            Err(ZetaError::InsufficientCounts(_))
        ));
        let four = counts_from_zeta(&elliptic_zeta(), 4).unwrap();
        assert_eq!(zeta_from_counts(&four, DegreeSplit { num: 2, den: 2 }).unwrap(), elliptic_zeta());
    }

    #[test]
    fn inconsistent_counts() {
        let profile = CohomologyProfile::new(1, vec![1, 2, 1]).unwrap();
        // N_1 = 6 forces a = 0, then N_2 should be 36.
        assert!(matches!(
            zeta_from_counts_with_profile(&series(5, &[6, 26]), &profile),
            Err(ZetaError::NoRationalFit(_))
        ));
        assert!(matches!(
            zeta_from_counts(&series(5, &[6, 26, 1]), DegreeSplit { num: 0, den: 2 }),
            Err(ZetaError::NoRationalFit(_))
        ));
    }

    #[test]
    fn non_integral_fit_is_reported() {
        // exp(sum t^n/n * N_n) with N = [1, 2]: z = 1 + t + 3/2 t^2, and a
        // degree (0, 2) fit is 1/(1 - t - t^2/2).
        assert_eq!(
            zeta_from_counts(&series(2, &[1, 2]), DegreeSplit { num: 0, den: 2 }),
            Err(ZetaError::NonIntegralCoefficients)
        );
    }

    #[test]
    fn even_dimension_signs() {
        // P^1 x P^1 over F_3: (1-t)(1-3t)^2(1-9t), b = [1, 0, 2, 0, 1].
        let den = &(&ip(&[1, -1]) * &(&ip(&[1, -3]) * &ip(&[1, -3]))) * &ip(&[1, -9]);
        let z = ZetaFunction::new(3.into(), ip(&[1]), den).unwrap();
        let s = counts_from_zeta(&z, 3).unwrap();
        let profile = CohomologyProfile::new(2, vec![1, 0, 2, 0, 1]).unwrap();
        assert_eq!(zeta_from_counts_with_profile(&s, &profile).unwrap(), z);
        // Non-split quadric: eigenvalues 3 and -3 on H^2.
        let den = &(&ip(&[1, -1]) * &ip(&[1, 0, -9])) * &ip(&[1, -9]);
        let z = ZetaFunction::new(3.into(), ip(&[1]), den).unwrap();
        let s = counts_from_zeta(&z, 3).unwrap();
        assert_eq!(zeta_from_counts_with_profile(&s, &profile).unwrap(), z);
    }

    #[test]
    fn counts_from_known_zetas() {
        let line = ZetaFunction::new(3.into(), ip(&[1]), &ip(&[1, -1]) * &ip(&[1, -3])).unwrap();
        assert_eq!(counts_from_zeta(&line, 2).unwrap(), series(3, &[4, 10]));
        assert_eq!(counts_from_zeta(&elliptic_zeta(), 2).unwrap(), series(5, &[9, 27]));
        let point = ZetaFunction::new(2.into(), ip(&[1]), ip(&[1, -1])).unwrap();
        assert_eq!(counts_from_zeta(&point, 3).unwrap(), series(2, &[1, 1, 1]));
        let bad = ZetaFunction::new(2.into(), ip(&[1, -5]), ip(&[1])).unwrap();
        assert_eq!(counts_from_zeta(&bad, 1), Err(ZetaError::NegativeCount(1)));
    }

    #[test]
    fn zeta_invariants() {
        assert!(ZetaFunction::new(5.into(), ip(&[2]), ip(&[1])).is_err());
        assert!(ZetaFunction::new(5.into(), ip(&[1, -1]), ip(&[1, -1])).is_err());
        let z = elliptic_zeta();
        assert_eq!(ZetaFunction::from_json(&z.to_json().to_string()).unwrap(), z);
        assert_eq!(
            z.to_json().to_string(),
            r#"{"den":[1,-6,5],"num":[1,3,5],"q":5}"#
        );
        assert_eq!(z.to_string(), "(1 + 3t + 5t^2)/(1 - 6t + 5t^2)");
    }

    #[test]
    fn profile_validation() {
        assert!(CohomologyProfile::new(1, vec![1, 2]).is_err());
        assert!(CohomologyProfile::new(1, vec![1, 2, 2]).is_err());
        let p = CohomologyProfile::new(3, vec![1, 0, 1, 2, 1, 0, 1]).unwrap();
        assert_eq!(p.split(), DegreeSplit { num: 2, den: 4 });
    }

    #[test]
    fn elliptic_factorization_and_checks() {
        let profile = CohomologyProfile::new(1, vec![1, 2, 1]).unwrap();
        let w = factor_by_weights(&elliptic_zeta(), &profile, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(w.factors(), &[ip(&[1, -1]), ip(&[1, 3, 5]), ip(&[1, -5])]);
        assert!(check_functional_equation(&w).is_ok());
        assert!(check_riemann_hypothesis(&w, DEFAULT_TOLERANCE).passes());
        assert_eq!(w.zeta().unwrap(), elliptic_zeta());
    }

    #[test]
    fn plane_and_point_factorizations() {
        let den = &(&ip(&[1, -1]) * &ip(&[1, -2])) * &ip(&[1, -4]);
        let z = ZetaFunction::new(2.into(), ip(&[1]), den).unwrap();
        let profile = CohomologyProfile::new(2, vec![1, 0, 1, 0, 1]).unwrap();
        let w = factor_by_weights(&z, &profile, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(
            w.factors(),
            &[ip(&[1, -1]), ip(&[1]), ip(&[1, -2]), ip(&[1]), ip(&[1, -4])]
        );
        assert_eq!(check_functional_equation(&w).unwrap().checks.len(), 2);

        let point = ZetaFunction::new(7.into(), ip(&[1]), ip(&[1, -1])).unwrap();
        let w = factor_by_weights(&point, &CohomologyProfile::new(0, vec![1]).unwrap(), DEFAULT_TOLERANCE)
            .unwrap();
        assert_eq!(w.factors(), &[ip(&[1, -1])]);
    }

    #[test]
    fn factorization_failures() {
        let profile = CohomologyProfile::new(1, vec![1, 2, 1]).unwrap();
        // Inverse roots 2 and 3 of the numerator do not have modulus sqrt(5).
        let z = ZetaFunction::new(5.into(), ip(&[1, -5, 6]), ip(&[1, -6, 5])).unwrap();
        assert!(matches!(
            factor_by_weights(&z, &profile, DEFAULT_TOLERANCE),
            Err(ZetaError::WeightSeparationFailed(_))
        ));
        let wrong_degrees = CohomologyProfile::new(1, vec![1, 0, 1]).unwrap();
        assert!(matches!(
            factor_by_weights(&elliptic_zeta(), &wrong_degrees, DEFAULT_TOLERANCE),
            Err(ZetaError::ProfileMismatch { .. })
        ));
    }

    #[test]
    fn corrupted_top_factor() {
        let w = WeilFactorization::new(
            2.into(),
            vec![ip(&[1, -1]), ip(&[1]), ip(&[1, -2]), ip(&[1]), ip(&[1, -3])],
        )
        .unwrap();
        assert_eq!(
            check_functional_equation(&w),
            Err(ZetaError::DualityViolation { degrees: vec![0] })
        );
    }

    #[test]
    fn riemann_hypothesis_violation() {
        let w = WeilFactorization::new(5.into(), vec![ip(&[1, -1]), ip(&[1, -6, 5]), ip(&[1, -5])])
            .unwrap();
        let report = check_riemann_hypothesis(&w, DEFAULT_TOLERANCE);
        assert!(!report.passes());
        assert!(report.violations.iter().all(|v| v.degree == 1));
        assert_eq!(report.violations.len(), 2);
        let one = WeilFactorization::new(5.into(), vec![ip(&[1, -1])]).unwrap();
        assert!(check_riemann_hypothesis(&one, DEFAULT_TOLERANCE).passes());
    }

    #[test]
    fn traces() {
        let w = WeilFactorization::new(5.into(), vec![ip(&[1, -1]), ip(&[1, 3, 5]), ip(&[1, -5])])
            .unwrap();
        let t = traces_from_factorization(&w, 4);
        assert_eq!(t.trace(1, 1), &rat(-3));
        for n in 1..=4 {
            assert_eq!(t.trace(0, n), &rat(1));
            assert_eq!(t.trace(2, n), &rat(5i64.pow(n as u32)));
        }
        let counts = counts_from_zeta(&elliptic_zeta(), 4).unwrap();
        let lefschetz: Vec<BigRational> = counts
            .counts
            .iter()
            .map(|c| rat(BigInt::from(c.clone())))
            .collect();
        assert_eq!(t.lefschetz_counts(), lefschetz);
        // Twisting H^2 by (1) gives trace 1 for every power.
        let tw = t.tate_twist(1);
        assert!((1..=4).all(|n| tw.trace(2, n) == &rat(1)));
    }
}
