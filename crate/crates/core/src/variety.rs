//! Varieties given by polynomial equations, counted by exhaustive enumeration.

use std::ops::Range;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::field::{make_extension, ExtensionField, FieldError, TabulatedField};
use crate::json;

/// Default cap on the number of ambient points enumerated by one count.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("malformed variety spec: {0}")]
    MalformedSpec(String),
    #[error("enumeration needs {required} ambient points, budget is {budget}")]
    BudgetExceeded { required: BigUint, budget: u64 },
    #[error("n = {n}: {source}")]
    AtPower {
        n: u32,
        #[source]
        source: Box<CountError>,
    },
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl CountError {
    /// The underlying error with any `AtPower` annotation stripped.
    pub fn root(&self) -> &CountError {
        match self {
            CountError::AtPower { source, .. } => source.root(),
            other => other,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", content = "dim", rename_all = "lowercase")]
pub enum Ambient {
    Affine(usize),
    Projective(usize),
}

impl Ambient {
    /// Number of coordinates (the exponent-vector length).
    pub fn coords(&self) -> usize {
        match *self {
            Ambient::Affine(m) => m,
            Ambient::Projective(m) => m + 1,
        }
    }

    /// Ambient point count over a field with `size` elements.
    pub fn size_over(&self, size: &BigUint) -> BigUint {
        match *self {
            Ambient::Affine(m) => size.pow(m as u32),
            Ambient::Projective(m) => (0..=m).map(|j| size.pow(j as u32)).sum(),
        }
    }
}

/// A monomial: coefficient over `F_q` (length `k` residue vector) and exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Vec<u64>,
    pub exponents: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietySpec {
    pub label: String,
    pub field: ExtensionField,
    pub ambient: Ambient,
    pub equations: Vec<Vec<Term>>,
}

impl VarietySpec {
    /// Builds and validates a spec. Coefficients are given over `F_p`
    /// (`coeff.len() == k`) and reduced on entry.
    pub fn new(
        label: impl Into<String>,
        p: u64,
        k: usize,
        ambient: Ambient,
        equations: Vec<Vec<(Vec<i64>, Vec<u32>)>>,
    ) -> Result<Self, CountError> {
        let field = make_extension(p, k)?;
        let coords = ambient.coords();
        let mut eqs = Vec::with_capacity(equations.len());
        for (ei, eq) in equations.into_iter().enumerate() {
            let mut terms = Vec::with_capacity(eq.len());
            let mut degree = None;
            for (coeff, exponents) in eq {
                if coeff.len() != k {
                    return Err(CountError::MalformedSpec(format!(
                        "equation {ei}: coefficient has {} entries, field degree is {k}",
                        coeff.len()
                    )));
                }
                if exponents.len() != coords {
                    return Err(CountError::MalformedSpec(format!(
                        "equation {ei}: exponent vector has length {}, expected {coords}",
                        exponents.len()
                    )));
                }
                let coeff: Vec<u64> = coeff.iter().map(|&c| field.base().reduce(c)).collect();
                if coeff.iter().all(|&c| c == 0) {
                    return Err(CountError::MalformedSpec(format!(
                        "equation {ei}: coefficient reduces to zero mod {p}"
                    )));
                }
                let total: u64 = exponents.iter().map(|&e| e as u64).sum();
                if matches!(ambient, Ambient::Projective(_)) {
                    match degree {
                        None => degree = Some(total),
                        Some(d) if d != total => {
                            return Err(CountError::MalformedSpec(format!(
                                "equation {ei} is not homogeneous (degrees {d} and {total})"
                            )))
                        }
                        _ => {}
                    }
                }
                terms.push(Term { coeff, exponents });
            }
            eqs.push(terms);
        }
        Ok(VarietySpec {
            label: label.into(),
            field,
            ambient,
            equations: eqs,
        })
    }

    /// Parses the JSON spec format.
    pub fn from_json(text: &str) -> Result<Self, CountError> {
        let raw: RawSpec = serde_json::from_str(text)
            .map_err(|e| CountError::MalformedSpec(e.to_string()))?;
        raw.into_spec()
    }

    pub fn to_json(&self) -> String {
        let k = self.field.degree();
        let equations: Vec<Value> = self
            .equations
            .iter()
            .map(|eq| {
                Value::Array(
                    eq.iter()
                        .map(|t| {
                            let c = if k == 1 {
                                Value::from(t.coeff[0])
                            } else {
                                Value::from(t.coeff.clone())
                            };
                            Value::Array(vec![c, Value::from(t.exponents.clone())])
                        })
                        .collect(),
                )
            })
            .collect();
        let value = serde_json::json!({
            "label": self.label,
            "p": self.field.p(),
            "k": k,
            "ambient": self.ambient,
            "equations": equations,
        });
        serde_json::to_string_pretty(&value).expect("serializable")
    }

    pub fn q(&self) -> BigUint {
        self.field.cardinality()
    }

    /// Number of ambient points over `F_{q^n}`.
    pub fn ambient_size(&self, n: u32) -> BigUint {
        self.ambient.size_over(&self.q().pow(n))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    label: String,
    p: u64,
    k: usize,
    ambient: RawAmbient,
    equations: Vec<Vec<(Value, Vec<u32>)>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAmbient {
    #[serde(rename = "type")]
    kind: String,
    dim: usize,
}

impl RawSpec {
    fn into_spec(self) -> Result<VarietySpec, CountError> {
        let ambient = match self.ambient.kind.as_str() {
            "affine" => Ambient::Affine(self.ambient.dim),
            "projective" => Ambient::Projective(self.ambient.dim),
            other => {
                return Err(CountError::MalformedSpec(format!(
                    "unknown ambient type {other:?}"
                )))
            }
        };
        if self.k == 0 {
            return Err(CountError::MalformedSpec("k must be at least 1".into()));
        }
        let p = self.p;
        let scalar = |v: &Value| -> Result<i64, CountError> {
            let n = json::number_to_bigint(v)
                .ok_or_else(|| CountError::MalformedSpec(format!("bad coefficient {v}")))?;
            let r = ((n % p) + p) % p;
            Ok(r.to_i64().expect("residue below p"))
        };
        let mut equations = Vec::with_capacity(self.equations.len());
        for eq in &self.equations {
            let mut terms = Vec::with_capacity(eq.len());
            for (coeff, exps) in eq {
                let c = match coeff {
                    Value::Array(items) if self.k > 1 => {
                        items.iter().map(scalar).collect::<Result<Vec<_>, _>>()?
                    }
                    Value::Number(_) if self.k == 1 => vec![scalar(coeff)?],
                    _ => {
                        return Err(CountError::MalformedSpec(format!(
                            "coefficient {coeff} does not match k = {}",
                            self.k
                        )))
                    }
                };
                terms.push((c, exps.clone()));
            }
            equations.push(terms);
        }
        VarietySpec::new(self.label, p, self.k, ambient, equations)
    }
}

/// `N_1, ..., N_B` for a variety over `F_q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCountSeries {
    #[serde(with = "json::biguint")]
    pub q: BigUint,
    #[serde(with = "json::biguint_vec")]
    pub counts: Vec<BigUint>,
}

/// Field arithmetic used by the counting loop.
trait CountingArith: Sync {
    type E: Clone + Send + Sync;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn pow(&self, a: &Self::E, e: u32) -> Self::E;
    fn element(&self, idx: u64) -> Self::E;
    fn embed_prime(&self, c: u64) -> Self::E;
    fn order(&self) -> u64;
}

impl CountingArith for TabulatedField {
    type E = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        TabulatedField::add(self, *a, *b)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        TabulatedField::mul(self, *a, *b)
    }
    fn pow(&self, a: &u32, e: u32) -> u32 {
        TabulatedField::pow(self, *a, e)
    }
    fn element(&self, idx: u64) -> u32 {
        self.from_index(idx)
    }
    fn embed_prime(&self, c: u64) -> u32 {
        TabulatedField::embed_prime(self, c)
    }
    fn order(&self) -> u64 {
        TabulatedField::order(self)
    }
}

/// Fallback for fields too large to tabulate.
struct DirectArith {
    field: ExtensionField,
    order: u64,
}

impl CountingArith for DirectArith {
    type E = Vec<u64>;
    fn zero(&self) -> Vec<u64> {
        vec![0; self.field.degree()]
    }
    fn one(&self) -> Vec<u64> {
        self.embed_prime(1)
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        self.field.add_raw(a, b)
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        self.field.mul_raw(a, b)
    }
    fn pow(&self, a: &Vec<u64>, mut e: u32) -> Vec<u64> {
        let mut r = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }
    fn element(&self, idx: u64) -> Vec<u64> {
        self.field.coeffs_at(idx)
    }
    fn embed_prime(&self, c: u64) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = c % self.field.p();
        v
    }
    fn order(&self) -> u64 {
        self.order
    }
}

struct CompiledTerm<E> {
    coeff: E,
    exponents: Vec<u32>,
}

/// A spec specialised to `F_{q^n}`, ready for enumeration over index ranges.
struct Counter<A: CountingArith> {
    arith: A,
    ambient: Ambient,
    equations: Vec<Vec<CompiledTerm<A::E>>>,
}

impl<A: CountingArith> Counter<A> {
    fn new(spec: &VarietySpec, arith: A) -> Self {
        let k = spec.field.degree();
        // Embed F_q into F_{q^n} by sending x to a root of the F_q modulus.
        let root = if k == 1 {
            None
        } else if arith.order() == spec.field.order_u64().unwrap_or(0) {
            Some(arith.element(spec.field.index_of(spec.field.generator().coeffs())))
        } else {
            let modulus: Vec<A::E> = spec
                .field
                .modulus()
                .iter()
                .map(|&c| arith.embed_prime(c))
                .collect();
            let root = (0..arith.order())
                .map(|i| arith.element(i))
                .find(|x| {
                    let v = modulus
                        .iter()
                        .rev()
                        .fold(arith.zero(), |acc, c| arith.add(&arith.mul(&acc, x), c));
                    arith.is_zero(&v)
                })
                .expect("F_q embeds in F_{q^n}");
            Some(root)
        };
        let embed = |coeff: &[u64]| -> A::E {
            match &root {
                None => arith.embed_prime(coeff[0]),
                Some(r) => coeff
                    .iter()
                    .rev()
                    .fold(arith.zero(), |acc, &c| {
                        arith.add(&arith.mul(&acc, r), &arith.embed_prime(c))
                    }),
            }
        };
        let equations = spec
            .equations
            .iter()
            .map(|eq| {
                eq.iter()
                    .map(|t| CompiledTerm {
                        coeff: embed(&t.coeff),
                        exponents: t.exponents.clone(),
                    })
                    .collect()
            })
            .collect();
        Counter {
            arith,
            ambient: spec.ambient,
            equations,
        }
    }

    fn satisfies(&self, point: &[A::E]) -> bool {
        let a = &self.arith;
        self.equations.iter().all(|eq| {
            let value = eq.iter().fold(a.zero(), |acc, t| {
                let mono = t
                    .exponents
                    .iter()
                    .zip(point)
                    .filter(|(&e, _)| e > 0)
                    .fold(t.coeff.clone(), |m, (&e, x)| a.mul(&m, &a.pow(x, e)));
                a.add(&acc, &mono)
            });
            a.is_zero(&value)
        })
    }

    /// Counts solutions among the points with enumeration indices in `range`.
    ///
    /// Affine points are indexed as base-`Q` numbers with the first coordinate
    /// most significant. Projective points are listed block by block: block `j`
    /// holds the normalized representatives `(0, ..., 0, 1, x_{j+1}, ..., x_m)`.
    fn count_range(&self, range: Range<u64>) -> u64 {
        let q = self.arith.order();
        match self.ambient {
            Ambient::Affine(m) => self.count_block(&[], m, range),
            Ambient::Projective(m) => {
                let mut total = 0;
                let mut offset = 0u64;
                for j in 0..=m {
                    let free = m - j;
                    let block = q.pow(free as u32);
                    let lo = range.start.max(offset);
                    let hi = range.end.min(offset + block);
                    if lo < hi {
                        let mut prefix = vec![self.arith.zero(); j];
                        prefix.push(self.arith.one());
                        total += self.count_block(&prefix, free, lo - offset..hi - offset);
                    }
                    offset += block;
                }
                total
            }
        }
    }

    fn count_block(&self, prefix: &[A::E], free: usize, range: Range<u64>) -> u64 {
        if range.is_empty() {
            return 0;
        }
        let q = self.arith.order();
        let mut digits = vec![0u64; free];
        let mut rest = range.start;
        for d in digits.iter_mut().rev() {
            *d = rest % q;
            rest /= q;
        }
        let mut point: Vec<A::E> = prefix.to_vec();
        point.extend(digits.iter().map(|&d| self.arith.element(d)));
        let mut hits = 0;
        for _ in range {
            if self.satisfies(&point) {
                hits += 1;
            }
            for pos in (0..free).rev() {
                digits[pos] += 1;
                if digits[pos] < q {
                    point[prefix.len() + pos] = self.arith.element(digits[pos]);
                    break;
                }
                digits[pos] = 0;
                point[prefix.len() + pos] = self.arith.zero();
            }
        }
        hits
    }
}

/// Enumeration plan for one `(spec, n)` pair, exposing the index domain so
/// callers can split it across workers.
pub struct PointEnumeration {
    total: u64,
    inner: EnumInner,
}

enum EnumInner {
    Table(Counter<TabulatedField>),
    Direct(Counter<DirectArith>),
}

impl PointEnumeration {
    pub fn new(spec: &VarietySpec, n: u32, budget: u64) -> Result<Self, CountError> {
        if n == 0 {
            return Err(CountError::MalformedSpec("n must be positive".into()));
        }
        let required = spec.ambient_size(n);
        if required > BigUint::from(budget) {
            return Err(CountError::BudgetExceeded { required, budget });
        }
        let total = required.to_u64().expect("within budget");
        let ext = make_extension(spec.field.p(), spec.field.degree() * n as usize)?;
        let inner = match TabulatedField::new(&ext) {
            Some(t) => EnumInner::Table(Counter::new(spec, t)),
            None => {
                let order = ext.order_u64().expect("field within budget");
                EnumInner::Direct(Counter::new(spec, DirectArith { field: ext, order }))
            }
        };
        Ok(PointEnumeration { total, inner })
    }

    /// Size of the enumeration domain.
    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn count_range(&self, range: Range<u64>) -> u64 {
        let range = range.start.min(self.total)..range.end.min(self.total);
        match &self.inner {
            EnumInner::Table(c) => c.count_range(range),
            EnumInner::Direct(c) => c.count_range(range),
        }
    }

    /// Counts over `parts` contiguous chunks and sums the partial counts.
    pub fn count_partitioned(&self, parts: u64) -> u64 {
        let parts = parts.max(1);
        let chunk = self.total.div_ceil(parts).max(1);
        (0..parts)
            .into_par_iter()
            .map(|i| self.count_range(i * chunk..(i + 1) * chunk))
            .sum()
    }
}

const MIN_CHUNK: u64 = 1 << 14;

/// `#V(F_{q^n})`.
pub fn count_points(spec: &VarietySpec, n: u32, budget: u64) -> Result<BigUint, CountError> {
    let plan = PointEnumeration::new(spec, n, budget)?;
    let parts = (plan.len() / MIN_CHUNK).clamp(1, 4 * rayon::current_num_threads() as u64);
    Ok(BigUint::from(plan.count_partitioned(parts)))
}

/// `N_1, ..., N_B`.
pub fn count_series(
    spec: &VarietySpec,
    terms: u32,
    budget: u64,
) -> Result<PointCountSeries, CountError> {
    let counts = (1..=terms)
        .map(|n| {
            count_points(spec, n, budget).map_err(|e| CountError::AtPower {
                n,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PointCountSeries {
        q: spec.q(),
        counts,
    })
}

impl PointCountSeries {
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// First `n` (1-based) where two series differ, comparing common terms.
    pub fn first_divergence(&self, other: &PointCountSeries) -> Option<usize> {
        self.counts
            .iter()
            .zip(&other.counts)
            .position(|(a, b)| a != b)
            .map(|i| i + 1)
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        let s: PointCountSeries = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if s.q.is_zero() {
            return Err("q must be positive".into());
        }
        Ok(s)
    }
}
