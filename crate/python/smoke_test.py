"""Smoke test for the zeta_finite extension module."""

import json
from pathlib import Path

import zeta_finite as zf

ROOT = Path(__file__).resolve().parent.parent


def main():
    f9 = zf.FiniteField(3, 2)
    assert f9.order == 9
    assert len(f9.elements()) == 9
    for a in f9.elements():
        if any(a):
            assert f9.mul(a, f9.inv(a)) == [1, 0]
        assert f9.add(a, f9.neg(a)) == [0, 0]

    e = zf.VarietySpec.weierstrass(5, 1, 1)
    counts = e.count_series(2)
    assert counts == [9, 27], counts

    z = zf.zeta_from_profile(5, counts[:1], [1, 2, 1])
    assert z.numerator == [1, 3, 5]
    assert z.denominator == [1, -6, 5]
    assert z.counts(5) == [9, 27, 108, 675, 3069]
    assert z == zf.zeta_from_counts(5, [9, 27, 108, 675], 2, 2)
    json.loads(z.to_json())

    w = zf.factor_by_weights(z, [1, 2, 1])
    assert w.factors == [[1, -1], [1, 3, 5], [1, -5]]
    assert w.functional_equation_holds()
    assert w.riemann_hypothesis_holds()
    assert w.traces(2)[1] == ["-3/1", "-1/1"]

    p2 = zf.VarietySpec.from_json((ROOT / "fixtures" / "p2_f2.json").read_text())
    assert p2.count_series(3) == [7, 21, 73]

    r = zf.solve_forced(3)
    assert r.all_forced() and r.forced == [0, 1, 2, 3, 4, 5, 6]
    r = zf.solve_forced(3, albanese=False)
    assert not r.all_forced() and r.residual

    pairs = zf.find_pairs(5, 7)
    assert pairs and all(p[0] in (5, 7) for p in pairs)

    try:
        zf.FiniteField(4, 1)
    except ValueError:
        pass
    else:
        raise AssertionError("composite characteristic accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
