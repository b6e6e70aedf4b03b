//! Prime fields and their extensions `F_{p^k}`.
//!
//! Residues are stored as `u64` values below `p < 2^31`, so every product of two
//! residues fits in 64 bits and reduction never overflows. Quantities that grow
//! with the field (cardinalities, point counts) are arbitrary precision.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use thiserror::Error;

/// Largest supported characteristic (exclusive).
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} is outside the supported range p < 2^31")]
    PrimeTooLarge(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus is not a monic irreducible polynomial of degree {0}")]
    InvalidModulus(usize),
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("division by zero")]
    DivisionByZero,
    #[error("expected {expected} coefficients, got {got}")]
    WrongLength { expected: usize, got: usize },
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    'witness: for &a in &BASES {
        let mut x = 1u64;
        let (mut base, mut e) = (a % n, d);
        while e > 0 {
            if e & 1 == 1 {
                x = mul(x, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p >= MAX_PRIME {
            return Err(FieldError::PrimeTooLarge(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    pub fn reduce(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> Result<u64, FieldError> {
        if a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(a, self.p - 2))
    }
}

// Polynomials over F_p as little-endian coefficient vectors.

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_sub(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(&mut out);
    out
}

fn poly_mul(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a monic `m`.
fn poly_rem_monic(f: &PrimeField, a: &[u64], m: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (j, &c) in m.iter().enumerate() {
            r[shift + j] = f.sub(r[shift + j], f.mul(lead, c));
        }
        trim(&mut r);
    }
    r
}

/// Remainder for a general (not necessarily monic) nonzero divisor.
fn poly_rem(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let lead_inv = f.inv(*b.last().unwrap()).expect("nonzero leading coefficient");
    let monic: Vec<u64> = b.iter().map(|&c| f.mul(c, lead_inv)).collect();
    poly_rem_monic(f, a, &monic)
}

fn poly_gcd(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(f, &a, &b);
        a = b;
        b = r;
    }
    a
}

fn poly_powmod(f: &PrimeField, base: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = poly_rem_monic(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_rem_monic(f, &poly_mul(f, &result, &b), m);
        }
        b = poly_rem_monic(f, &poly_mul(f, &b, &b), m);
        e >>= 1;
    }
    result
}

/// Ben-Or test: a monic `m` of degree `k` is irreducible iff
/// `gcd(m, x^{p^i} - x) = 1` for every `i <= k/2`.
pub fn is_irreducible(field: &PrimeField, m: &[u64]) -> bool {
    let k = m.len().saturating_sub(1);
    if k == 0 || m[k] != 1 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let mut h = x.clone();
    for _ in 1..=k / 2 {
        h = poly_powmod(field, &h, field.p(), m);
        let g = poly_gcd(field, m, &poly_sub(field, &h, &x));
        if g.len() > 1 {
            return false;
        }
    }
    true
}

#[derive(Debug)]
struct FieldInner {
    base: PrimeField,
    k: usize,
    modulus: Vec<u64>,
}

/// `F_{p^k} = F_p[x] / (m(x))`. Cheap to clone; clones share the same modulus.
#[derive(Debug, Clone)]
pub struct ExtensionField {
    inner: Arc<FieldInner>,
}

impl PartialEq for ExtensionField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.base == other.inner.base && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for ExtensionField {}

/// Builds `F_{p^k}` with the lexicographically smallest monic irreducible modulus.
///
/// The modulus `x^k + c_{k-1} x^{k-1} + ... + c_0` is chosen by scanning the
/// coefficient vectors `(c_0, ..., c_{k-1})` in lexicographic order with `c_0`
/// most significant, the same order used by [`enumerate_elements`].
pub fn make_extension(p: u64, k: usize) -> Result<ExtensionField, FieldError> {
    let base = PrimeField::new(p)?;
    if k == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let mut tail = vec![0u64; k];
    loop {
        let mut m = tail.clone();
        m.push(1);
        if is_irreducible(&base, &m) {
            return Ok(ExtensionField::from_parts(base, m));
        }
        // An irreducible polynomial of every degree exists, so this terminates.
        let mut pos = k;
        loop {
            pos -= 1;
            tail[pos] += 1;
            if tail[pos] < p {
                break;
            }
            tail[pos] = 0;
        }
    }
}

impl ExtensionField {
    fn from_parts(base: PrimeField, modulus: Vec<u64>) -> Self {
        let k = modulus.len() - 1;
        ExtensionField {
            inner: Arc::new(FieldInner { base, k, modulus }),
        }
    }

    /// Uses a caller-supplied modulus (low-to-high, monic), checking irreducibility.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self, FieldError> {
        let base = PrimeField::new(p)?;
        let k = modulus.len().saturating_sub(1);
        if k == 0 || modulus.iter().any(|&c| c >= p) || !is_irreducible(&base, &modulus) {
            return Err(FieldError::InvalidModulus(k));
        }
        Ok(Self::from_parts(base, modulus))
    }

    pub fn base(&self) -> &PrimeField {
        &self.inner.base
    }

    pub fn p(&self) -> u64 {
        self.inner.base.p
    }

    pub fn degree(&self) -> usize {
        self.inner.k
    }

    /// Monic modulus, low-to-high, of length `k + 1`.
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn cardinality(&self) -> BigUint {
        BigUint::from(self.p()).pow(self.degree() as u32)
    }

    /// Cardinality as a `u64`, when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.p().checked_pow(self.degree() as u32)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: vec![0; self.degree()],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// The class of `x`, a root of the modulus (equal to a constant when `k = 1`).
    pub fn generator(&self) -> FieldElement {
        let mut coeffs = vec![0; self.degree()];
        if self.degree() == 1 {
            coeffs[0] = self.p() - self.modulus()[0] % self.p();
            coeffs[0] %= self.p();
        } else {
            coeffs[1] = 1;
        }
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    pub fn from_int(&self, v: i64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = self.base().reduce(v);
        e
    }

    /// Element with the given coefficients over `F_p` (reduced mod p).
    pub fn element(&self, coeffs: &[i64]) -> Result<FieldElement, FieldError> {
        if coeffs.len() != self.degree() {
            return Err(FieldError::WrongLength {
                expected: self.degree(),
                got: coeffs.len(),
            });
        }
        Ok(FieldElement {
            field: self.clone(),
            coeffs: coeffs.iter().map(|&c| self.base().reduce(c)).collect(),
        })
    }

    /// Position of an element in enumeration order.
    pub fn index_of(&self, coeffs: &[u64]) -> u64 {
        coeffs.iter().fold(0u64, |acc, &c| acc * self.p() + c)
    }

    /// Inverse of [`index_of`](Self::index_of); `index` must be below the cardinality.
    pub fn coeffs_at(&self, mut index: u64) -> Vec<u64> {
        let p = self.p();
        let mut out = vec![0u64; self.degree()];
        for slot in out.iter_mut().rev() {
            *slot = index % p;
            index /= p;
        }
        out
    }

    pub(crate) fn add_raw(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let f = self.base();
        a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
    }

    pub(crate) fn mul_raw(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let f = self.base();
        let k = self.degree();
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = f.add(prod[i + j], f.mul(x, y));
            }
        }
        let m = self.modulus();
        for top in (k..prod.len()).rev() {
            let lead = prod[top];
            if lead == 0 {
                continue;
            }
            let shift = top - k;
            for (j, &c) in m.iter().enumerate() {
                prod[shift + j] = f.sub(prod[shift + j], f.mul(lead, c));
            }
        }
        prod.truncate(k);
        prod
    }

    fn inv_raw(&self, a: &[u64]) -> Result<Vec<u64>, FieldError> {
        let f = self.base();
        let mut a_trim = a.to_vec();
        trim(&mut a_trim);
        if a_trim.is_empty() {
            return Err(FieldError::DivisionByZero);
        }
        // Extended Euclid on (m, a), tracking only the coefficient of a.
        let (mut r0, mut r1) = (self.modulus().to_vec(), a_trim);
        let (mut t0, mut t1) = (Vec::<u64>::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(f, &r0, &r1);
            let t2 = poly_sub(f, &t0, &poly_mul(f, &q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t2);
        }
        // r0 is a nonzero constant since the modulus is irreducible.
        let c = f.inv(r0[0])?;
        let mut out: Vec<u64> = t0.iter().map(|&x| f.mul(x, c)).collect();
        out.resize(self.degree(), 0);
        Ok(out)
    }
}

fn poly_divrem(f: &PrimeField, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = f.inv(b[db]).expect("nonzero divisor");
    let mut q = vec![0u64; r.len().saturating_sub(db).max(1)];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = f.mul(*r.last().unwrap(), lead_inv);
        q[shift] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[shift + j] = f.sub(r[shift + j], f.mul(c, bj));
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

impl fmt::Display for ExtensionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 1 {
            write!(f, "F_{}", self.p())
        } else {
            write!(
                f,
                "F_{}^{} mod {}",
                self.p(),
                self.degree(),
                format_fp_poly(self.modulus())
            )
        }
    }
}

fn format_fp_poly(c: &[u64]) -> String {
    let mut terms = Vec::new();
    for (i, &v) in c.iter().enumerate().rev() {
        if v == 0 {
            continue;
        }
        let coeff = if v == 1 && i > 0 {
            String::new()
        } else {
            v.to_string()
        };
        terms.push(match i {
            0 => coeff,
            1 => format!("{coeff}x"),
            _ => format!("{coeff}x^{i}"),
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// An element of an [`ExtensionField`], as a length-`k` residue vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: ExtensionField,
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn field(&self) -> &ExtensionField {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn same_field(&self, other: &Self) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::MixedFields)
        }
    }

    fn with(&self, coeffs: Vec<u64>) -> Self {
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.field.add_raw(&self.coeffs, &other.coeffs)))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.add(&other.neg())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul_raw(&self.coeffs, &other.coeffs)))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(&self) -> Self {
        let f = self.field.base();
        self.with(self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        Ok(self.with(self.field.inv_raw(&self.coeffs)?))
    }

    pub fn div(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, e: &BigUint) -> Self {
        let mut result = self.field.one();
        for i in (0..e.bits()).rev() {
            result = result.with(self.field.mul_raw(&result.coeffs, &result.coeffs));
            if e.bit(i) {
                result = result.with(self.field.mul_raw(&result.coeffs, &self.coeffs));
            }
        }
        result
    }

    /// The absolute Frobenius `a -> a^p`.
    pub fn frobenius(&self) -> Self {
        self.pow(&BigUint::from(self.field.p()))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_fp_poly(&self.coeffs))
    }
}

/// Iterator over all field elements in lexicographic coefficient order.
pub struct Elements {
    field: ExtensionField,
    next: Option<Vec<u64>>,
}

impl Iterator for Elements {
    type Item = FieldElement;

    fn next(&mut self) -> Option<FieldElement> {
        let current = self.next.take()?;
        let p = self.field.p();
        let mut succ = current.clone();
        let mut pos = succ.len();
        let mut carried_out = true;
        while pos > 0 {
            pos -= 1;
            succ[pos] += 1;
            if succ[pos] < p {
                carried_out = false;
                break;
            }
            succ[pos] = 0;
        }
        if !carried_out {
            self.next = Some(succ);
        }
        Some(FieldElement {
            field: self.field.clone(),
            coeffs: current,
        })
    }
}

pub fn enumerate_elements(field: &ExtensionField) -> Elements {
    Elements {
        field: field.clone(),
        next: Some(vec![0; field.degree()]),
    }
}

/// Largest field tabulated by [`TabulatedField`].
pub const TABLE_LIMIT: u64 = 1 << 22;

/// Zech-logarithm tables for a small field.
///
/// Elements are encoded as `0` for zero and `e + 1` for `g^e`, where `g` is the
/// first primitive element in enumeration order. Multiplication and addition are
/// single table lookups.
#[derive(Debug, Clone)]
pub struct TabulatedField {
    field: ExtensionField,
    order: u64,
    /// `g^e` as an enumeration index.
    exp: Vec<u32>,
    /// enumeration index -> encoded element.
    log: Vec<u32>,
    /// `zech[m]` = encoded `1 + g^m`.
    zech: Vec<u32>,
    /// `p^{k-1}`, the weight of the constant coefficient in the index.
    const_weight: u64,
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl TabulatedField {
    /// Returns `None` when the field has more than [`TABLE_LIMIT`] elements.
    pub fn new(field: &ExtensionField) -> Option<Self> {
        let order = field.order_u64().filter(|&q| q <= TABLE_LIMIT)?;
        let group = order - 1;
        let factors = prime_factors(group);
        let generator = (1..order)
            .map(|i| field.coeffs_at(i))
            .find(|c| {
                let e = FieldElement {
                    field: field.clone(),
                    coeffs: c.clone(),
                };
                factors
                    .iter()
                    .all(|&r| !e.pow(&BigUint::from(group / r)).is_one())
            })
            .expect("multiplicative group is cyclic");

        let mut exp = vec![0u32; group as usize];
        let mut log = vec![0u32; order as usize];
        let mut x = field.one().coeffs;
        for (e, slot) in exp.iter_mut().enumerate() {
            let idx = field.index_of(&x);
            *slot = idx as u32;
            log[idx as usize] = e as u32 + 1;
            x = field.mul_raw(&x, &generator);
        }
        let p = field.p();
        let const_weight = p.pow(field.degree() as u32 - 1);
        let zech = exp
            .iter()
            .map(|&idx| {
                let idx = idx as u64;
                let c0 = idx / const_weight;
                let shifted = if c0 == p - 1 {
                    idx - (p - 1) * const_weight
                } else {
                    idx + const_weight
                };
                log[shifted as usize]
            })
            .collect();
        Some(TabulatedField {
            field: field.clone(),
            order,
            exp,
            log,
            zech,
            const_weight,
        })
    }

    pub fn field(&self) -> &ExtensionField {
        &self.field
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    #[inline]
    pub fn zero(&self) -> u32 {
        0
    }

    #[inline]
    pub fn one(&self) -> u32 {
        1
    }

    #[inline]
    pub fn from_index(&self, idx: u64) -> u32 {
        self.log[idx as usize]
    }

    #[inline]
    pub fn to_index(&self, e: u32) -> u64 {
        if e == 0 {
            0
        } else {
            self.exp[e as usize - 1] as u64
        }
    }

    /// Image of an integer under `Z -> F_p -> F_{p^k}`.
    pub fn embed_prime(&self, c: u64) -> u32 {
        self.from_index((c % self.field.p()) * self.const_weight)
    }

    pub fn encode(&self, e: &FieldElement) -> u32 {
        self.from_index(self.field.index_of(e.coeffs()))
    }

    pub fn decode(&self, e: u32) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.field.coeffs_at(self.to_index(e)),
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let g = self.order - 1;
        (((a as u64 - 1) + (b as u64 - 1)) % g + 1) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let g = self.order - 1;
        let (i, j) = (a as u64 - 1, b as u64 - 1);
        let z = self.zech[((j + g - i) % g) as usize];
        if z == 0 {
            0
        } else {
            ((i + z as u64 - 1) % g + 1) as u32
        }
    }

    #[inline]
    pub fn pow(&self, a: u32, e: u32) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let g = self.order - 1;
        (((a as u64 - 1) * e as u64) % g + 1) as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 || self.field.p() == 2 {
            return a;
        }
        let g = self.order - 1;
        (((a as u64 - 1) + g / 2) % g + 1) as u32
    }

    /// Whether `a` is a square (zero counts as a square).
    #[inline]
    pub fn is_square(&self, a: u32) -> bool {
        a == 0 || self.field.p() == 2 || (a - 1).is_multiple_of(2)
    }
}
