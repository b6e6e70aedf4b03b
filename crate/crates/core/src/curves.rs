//! Short Weierstrass curves `y^2 = x^3 + a x + b` over `F_p` and a search for
//! non-isomorphic pairs with equal point counts.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::field::{is_prime, make_extension, TabulatedField};
use crate::poly::IntPoly;
use crate::variety::{Ambient, VarietySpec};
use crate::zeta::ZetaFunction;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("p = {0} must be a prime greater than 3")]
    UnsupportedPrime(u64),
    #[error("y^2 = x^3 + {a}x + {b} is singular over F_{p}")]
    Singular { p: u64, a: u64, b: u64 },
    #[error("N_2 = {n2} of y^2 = x^3 + {a}x + {b} over F_{p} disagrees with N_1 = {n1}")]
    InconsistentCounts { p: u64, a: u64, b: u64, n1: u64, n2: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct WeierstrassCurve {
    pub p: u64,
    pub a: u64,
    pub b: u64,
}

impl WeierstrassCurve {
    pub fn new(p: u64, a: u64, b: u64) -> Result<Self, CurveError> {
        if p <= 3 || !is_prime(p) {
            return Err(CurveError::UnsupportedPrime(p));
        }
        let (a, b) = (a % p, b % p);
        let disc = (4 * a % p * a % p * a + 27 * b % p * b) % p;
        if disc == 0 {
            return Err(CurveError::Singular { p, a, b });
        }
        Ok(WeierstrassCurve { p, a, b })
    }

    /// Smallest `(u^4 a, u^6 b)` over `u in F_p^*`: curves related by this
    /// substitution are isomorphic over `F_p`.
    pub fn canonical(&self) -> Self {
        let p = self.p;
        (1..p)
            .map(|u| {
                let u2 = u * u % p;
                let u4 = u2 * u2 % p;
                let u6 = u4 * u2 % p;
                WeierstrassCurve {
                    p,
                    a: u4 * self.a % p,
                    b: u6 * self.b % p,
                }
            })
            .min()
            .expect("p > 3")
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.p == other.p && self.canonical() == other.canonical()
    }

    /// `#E(F_{p^n})` including the point at infinity.
    pub fn count(&self, n: u32) -> u64 {
        let ext = make_extension(self.p, n as usize).expect("p is prime");
        let f = TabulatedField::new(&ext).expect("small field");
        let (a, b) = (f.embed_prime(self.a), f.embed_prime(self.b));
        let affine: u64 = (0..f.order())
            .map(|idx| {
                let x = f.from_index(idx);
                let rhs = f.add(f.add(f.pow(x, 3), f.mul(a, x)), b);
                if rhs == f.zero() {
                    1
                } else if f.is_square(rhs) {
                    2
                } else {
                    0
                }
            })
            .sum();
        affine + 1
    }

    /// `a_p = p + 1 - N_1`.
    pub fn frobenius_trace(&self) -> i64 {
        self.p as i64 + 1 - self.count(1) as i64
    }

    /// The genus-one zeta function `(1 - a_p t + p t^2) / ((1 - t)(1 - p t))`.
    pub fn zeta(&self) -> ZetaFunction {
        let p = self.p as i64;
        let num = IntPoly::from_i64(&[1, -self.frobenius_trace(), p]);
        let den = IntPoly::from_i64(&[1, -1 - p, p]);
        ZetaFunction::new(BigInt::from(p), num, den).expect("valid genus-one zeta")
    }

    /// Projective closure `y^2 z = x^3 + a x z^2 + b z^3`.
    pub fn to_spec(&self) -> VarietySpec {
        let mut terms = vec![(vec![1], vec![0, 2, 1]), (vec![-1], vec![3, 0, 0])];
        if self.a != 0 {
            terms.push((vec![-(self.a as i64)], vec![1, 0, 2]));
        }
        if self.b != 0 {
            terms.push((vec![-(self.b as i64)], vec![0, 0, 3]));
        }
        VarietySpec::new(
            format!("y^2 = x^3 + {}x + {} over F_{}", self.a, self.b, self.p),
            self.p,
            1,
            Ambient::Projective(2),
            vec![terms],
        )
        .expect("well-formed curve spec")
    }
}

/// Two non-isomorphic curves with equal `(N_1, N_2)`, hence equal zeta.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSearchResult {
    pub q: u64,
    pub first: WeierstrassCurve,
    pub second: WeierstrassCurve,
    pub counts: Vec<BigUint>,
    pub zeta: ZetaFunction,
}

/// Isomorphism classes of nonsingular curves over `F_p`, by canonical model.
pub fn curve_classes(p: u64) -> Result<Vec<WeierstrassCurve>, CurveError> {
    if p <= 3 || !is_prime(p) {
        return Err(CurveError::UnsupportedPrime(p));
    }
    let classes: BTreeSet<WeierstrassCurve> = (0..p)
        .flat_map(|a| (0..p).map(move |b| (a, b)))
        .filter_map(|(a, b)| WeierstrassCurve::new(p, a, b).ok())
        .map(|c| c.canonical())
        .collect();
    Ok(classes.into_iter().collect())
}

/// Equal-count pairs over one prime. Within each `(N_1, N_2)` bucket the
/// classes are sorted and consecutive classes are paired, so every class in
/// a bucket with two or more classes appears in some pair.
pub fn find_pairs_over(p: u64) -> Result<Vec<PairSearchResult>, CurveError> {
    let classes = curve_classes(p)?;
    let counted: Vec<(WeierstrassCurve, u64, u64)> = classes
        .par_iter()
        .map(|c| (*c, c.count(1), c.count(2)))
        .collect();
    let mut buckets: BTreeMap<(u64, u64), Vec<WeierstrassCurve>> = BTreeMap::new();
    for (c, n1, n2) in counted {
        // Genus one: N_2 = p^2 + 1 - (a_p^2 - 2p) follows from N_1.
        let ap = p as i64 + 1 - n1 as i64;
        let expected = (p * p + 1 + 2 * p) as i64 - ap * ap;
        if expected != n2 as i64 {
            return Err(CurveError::InconsistentCounts {
                p,
                a: c.a,
                b: c.b,
                n1,
                n2,
            });
        }
        buckets.entry((n1, n2)).or_default().push(c);
    }
    let mut out = Vec::new();
    for ((n1, n2), members) in buckets {
        for pair in members.windows(2) {
            out.push(PairSearchResult {
                q: p,
                first: pair[0],
                second: pair[1],
                counts: vec![BigUint::from(n1), BigUint::from(n2)],
                zeta: pair[0].zeta(),
            });
        }
    }
    out.sort_by_key(|r| (r.first, r.second));
    Ok(out)
}

/// Pairs for every prime `p > 3` in the range, in increasing `p`.
pub fn find_pairs(primes: RangeInclusive<u64>) -> Result<Vec<PairSearchResult>, CurveError> {
    let mut out = Vec::new();
    for p in primes.filter(|&p| p > 3 && is_prime(p)) {
        out.extend(find_pairs_over(p)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Affine count by trying every `(x, y)` pair.
    fn naive_count(p: u64, a: u64, b: u64) -> u64 {
        let mut n = 1;
        for x in 0..p {
            for y in 0..p {
                if (y * y) % p == (x * x % p * x + a * x + b) % p {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn counts_match_naive() {
        for p in [5, 7, 11] {
            for c in curve_classes(p).unwrap() {
                assert_eq!(c.count(1), naive_count(p, c.a, c.b));
            }
        }
    }

    #[test]
    fn singular_and_small_primes() {
        assert_eq!(
            WeierstrassCurve::new(5, 0, 0),
            Err(CurveError::Singular { p: 5, a: 0, b: 0 })
        );
        assert_eq!(WeierstrassCurve::new(3, 1, 1), Err(CurveError::UnsupportedPrime(3)));
        #[allow(clippy::reversed_empty_ranges)]
        let empty = 10..=4;
        assert!(find_pairs(empty).unwrap().is_empty());
        assert!(find_pairs(2..=3).unwrap().is_empty());
    }

    #[test]
    fn canonical_form_is_class_invariant() {
        let c = WeierstrassCurve::new(7, 3, 5).unwrap();
        for u in 1..7u64 {
            let t = WeierstrassCurve::new(7, u.pow(4) * 3, u.pow(6) * 5).unwrap();
            assert!(c.is_isomorphic(&t));
            assert_eq!(t.count(1), c.count(1));
        }
    }

    #[test]
    fn pairs_are_non_isomorphic_with_equal_counts() {
        let pairs = find_pairs_over(5).unwrap();
        assert!(!pairs.is_empty());
        for r in &pairs {
            assert!(!r.first.is_isomorphic(&r.second));
            assert_eq!(r.first.count(1), r.second.count(1));
            assert_eq!(r.first.zeta(), r.second.zeta());
        }
    }
}
