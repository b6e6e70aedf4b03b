use num_bigint::BigUint;
use proptest::prelude::*;
use zeta_core::variety::{PointEnumeration, DEFAULT_BUDGET};
use zeta_core::{count_points, count_series, Ambient, CountError, VarietySpec};

fn space(p: u64, k: usize, ambient: Ambient) -> VarietySpec {
    VarietySpec::new("space", p, k, ambient, vec![]).unwrap()
}

fn elliptic() -> VarietySpec {
    VarietySpec::from_json(
        r#"{"label": "E", "p": 5, "k": 1, "ambient": {"type": "projective", "dim": 2},
            "equations": [[[1, [0, 2, 1]], [-1, [3, 0, 0]], [-1, [1, 0, 2]], [-1, [0, 0, 3]]]]}"#,
    )
    .unwrap()
}

/// Affine points of `y^2 = x^3 + x + 1` over `F_5[i] / (i^2 - 2)`, plus the
/// single point at infinity; an arithmetic independent of the library's.
fn elliptic_oracle_f25() -> u64 {
    type E = (u64, u64);
    let mul = |a: E, b: E| ((a.0 * b.0 + 2 * a.1 * b.1) % 5, (a.0 * b.1 + a.1 * b.0) % 5);
    let add = |a: E, b: E| ((a.0 + b.0) % 5, (a.1 + b.1) % 5);
    let elems: Vec<E> = (0..5).flat_map(|a| (0..5).map(move |b| (a, b))).collect();
    let mut n = 1;
    for &x in &elems {
        let rhs = add(add(mul(mul(x, x), x), x), (1, 0));
        n += elems.iter().filter(|&&y| mul(y, y) == rhs).count() as u64;
    }
    n
}

fn elliptic_oracle_f5() -> u64 {
    1 + (0..5u64)
        .flat_map(|x| (0..5u64).map(move |y| (x, y)))
        .filter(|&(x, y)| (y * y) % 5 == (x * x * x + x + 1) % 5)
        .count() as u64
}

#[test]
fn elliptic_counts_match_oracles() {
    let s = count_series(&elliptic(), 2, DEFAULT_BUDGET).unwrap();
    let expected = [elliptic_oracle_f5(), elliptic_oracle_f25()];
    assert_eq!(expected, [9, 27]);
    assert_eq!(s.counts, expected.map(BigUint::from).to_vec());
}

#[test]
fn small_examples() {
    let line = space(3, 1, Ambient::Projective(1));
    assert_eq!(count_points(&line, 2, DEFAULT_BUDGET).unwrap(), BigUint::from(10u32));
    let plane = space(2, 1, Ambient::Projective(2));
    let s = count_series(&plane, 3, DEFAULT_BUDGET).unwrap();
    assert_eq!(s.counts, [7u32, 21, 73].map(BigUint::from).to_vec());
    let line5 = space(5, 1, Ambient::Projective(1));
    let s = count_series(&line5, 2, DEFAULT_BUDGET).unwrap();
    assert_eq!(s.counts, [6u32, 26].map(BigUint::from).to_vec());
    let empty = VarietySpec::new("1 = 0", 7, 1, Ambient::Affine(2), vec![vec![(vec![1], vec![0, 0])]]).unwrap();
    assert_eq!(count_points(&empty, 1, DEFAULT_BUDGET).unwrap(), BigUint::from(0u32));
}

#[test]
fn budget_is_enforced() {
    let plane = space(101, 1, Ambient::Projective(2));
    match count_points(&plane, 1, 10) {
        Err(CountError::BudgetExceeded { required, budget }) => {
            assert_eq!(required, BigUint::from(101u32 * 101 + 101 + 1));
            assert_eq!(budget, 10);
        }
        other => panic!("expected budget error, got {other:?}"),
    }
    let err = count_series(&plane, 2, 20_000).unwrap_err();
    assert!(matches!(err, CountError::AtPower { n: 2, .. }));
}

#[test]
fn extension_base_fields() {
    // x^2 + y^2 + z^2 over F_9: a smooth conic, so q^n + 1 points.
    let conic = VarietySpec::new(
        "conic",
        3,
        2,
        Ambient::Projective(2),
        vec![vec![
            (vec![1, 0], vec![2, 0, 0]),
            (vec![1, 0], vec![0, 2, 0]),
            (vec![1, 0], vec![0, 0, 2]),
        ]],
    )
    .unwrap();
    let s = count_series(&conic, 2, DEFAULT_BUDGET).unwrap();
    assert_eq!(s.counts, [10u32, 82].map(BigUint::from).to_vec());
}

#[test]
fn partition_additivity() {
    let specs = [elliptic(), space(3, 1, Ambient::Projective(3)), space(3, 2, Ambient::Affine(2))];
    for spec in &specs {
        for n in 1..=2 {
            let plan = PointEnumeration::new(spec, n, DEFAULT_BUDGET).unwrap();
            let single = plan.count_range(0..plan.len());
            for parts in [1, 2, 4] {
                assert_eq!(plan.count_partitioned(parts), single);
            }
            // Uneven blocks too.
            let cut = plan.len() / 3;
            assert_eq!(plan.count_range(0..cut) + plan.count_range(cut..plan.len()), single);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn closed_forms(pk in prop::sample::select(vec![(2u64, 1usize), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2)]),
                    m in 1usize..=3, n in 1u32..=2) {
        let (p, k) = pk;
        let qn = BigUint::from(p).pow(k as u32 * n);
        prop_assume!(qn.pow(m as u32 + 1) <= BigUint::from(2_000_000u32));
        let proj = count_points(&space(p, k, Ambient::Projective(m)), n, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(proj, (qn.pow(m as u32 + 1) - 1u32) / (&qn - 1u32));
        let aff = count_points(&space(p, k, Ambient::Affine(m)), n, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(aff, qn.pow(m as u32));
    }

    #[test]
    fn product_rule(p in prop::sample::select(vec![2u64, 3, 5]), a in 0usize..=2, b in 0usize..=2, n in 1u32..=2) {
        let count = |m| count_points(&space(p, 1, Ambient::Affine(m)), n, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(count(a + b), count(a) * count(b));
    }
}
