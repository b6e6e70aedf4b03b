use std::collections::HashSet;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zeta_core::field::{make_extension, ExtensionField, FieldElement};
use zeta_core::enumerate_elements;

const TRIPLES: usize = 10_000;

/// Every field with at most 81 elements.
fn small_fields() -> Vec<ExtensionField> {
    let mut out = Vec::new();
    for (p, max_k) in [(2, 6), (3, 4), (5, 2), (7, 2), (11, 1), (13, 1), (31, 1), (79, 1)] {
        for k in 1..=max_k {
            out.push(make_extension(p, k).unwrap());
        }
    }
    out
}

fn random(f: &ExtensionField, rng: &mut ChaCha8Rng) -> FieldElement {
    let coeffs: Vec<i64> = (0..f.degree()).map(|_| rng.gen_range(0..f.p() as i64)).collect();
    f.element(&coeffs).unwrap()
}

/// Schoolbook product reduced by long division, written independently of the
/// library's multiplication.
fn oracle_mul(f: &ExtensionField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let p = f.p();
    let k = f.degree();
    let m = f.modulus();
    let mut prod = vec![0u64; 2 * k - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for top in (k..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        for (j, mj) in m.iter().enumerate().take(k) {
            let idx = top - k + j;
            prod[idx] = (prod[idx] + p * p - c * mj % p) % p;
        }
        prod[top] = 0;
    }
    prod.truncate(k);
    prod
}

#[test]
fn ring_axioms_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for f in small_fields() {
        let one = f.one();
        let zero = f.zero();
        for _ in 0..TRIPLES {
            let (a, b, c) = (random(&f, &mut rng), random(&f, &mut rng), random(&f, &mut rng));
            let ab = a.add(&b).unwrap();
            assert_eq!(ab.add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
            assert_eq!(ab, b.add(&a).unwrap());
            let ab = a.mul(&b).unwrap();
            assert_eq!(ab.mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            assert_eq!(ab, b.mul(&a).unwrap());
            assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                ab.add(&a.mul(&c).unwrap()).unwrap()
            );
            assert_eq!(ab.coeffs(), oracle_mul(&f, a.coeffs(), b.coeffs()).as_slice());
            assert_eq!(a.add(&a.neg()).unwrap(), zero);
            assert_eq!(a.mul(&one).unwrap(), a);
            if !a.is_zero() {
                assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), one);
            }
        }
    }
}

#[test]
fn frobenius_is_additive_and_group_order_is_q_minus_one() {
    for f in small_fields().into_iter().filter(|f| f.order_u64().unwrap() <= 81) {
        let q = f.cardinality();
        let elements: Vec<FieldElement> = enumerate_elements(&f).collect();
        for a in &elements {
            if !a.is_zero() {
                assert!(a.pow(&(&q - 1u32)).is_one(), "{a} in F_{q}");
            }
            assert_eq!(a.pow(&q), *a);
        }
        let step = (elements.len() / 17).max(1);
        for a in elements.iter().step_by(step) {
            for b in &elements {
                let lhs = a.add(b).unwrap().frobenius();
                let rhs = a.frobenius().add(&b.frobenius()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn enumeration_is_complete_and_distinct() {
    for f in small_fields() {
        let seen: HashSet<Vec<u64>> = enumerate_elements(&f).map(|e| e.coeffs().to_vec()).collect();
        assert_eq!(BigUint::from(seen.len()), f.cardinality());
    }
    let f9 = make_extension(3, 2).unwrap();
    let all: Vec<FieldElement> = enumerate_elements(&f9).collect();
    assert!(all[0].is_zero());
    assert_eq!(all.last().unwrap().coeffs(), &[2, 2]);
}

#[test]
fn mixed_fields_and_zero_division() {
    let f4 = make_extension(2, 2).unwrap();
    let f8 = make_extension(2, 3).unwrap();
    assert!(f4.one().add(&f8.one()).is_err());
    assert!(f4.zero().inv().is_err());
    assert!(f4.one().div(&f4.zero()).is_err());
}
