"""Smoke test for the `mzv` extension module.

Build and install first, for example:
    maturin build --release -m crates/python/Cargo.toml -o dist && pip install dist/mzv-*.whl
"""

import math
from fractions import Fraction

import mzv


def main():
    z21 = mzv.zeta([2, 1])
    z3 = mzv.zeta([3])
    assert z21.overlaps(z3), (z21, z3)
    assert abs(float(z3) - 1.2020569031595942) < 1e-15
    assert z3.rad < 1e-40
    assert isinstance(z3.mid, Fraction)

    # ζ(3,1) = π⁴/360
    z31 = mzv.Composition([3, 1])
    assert abs(float(z31.zeta()) - math.pi**4 / 360) < 1e-15
    assert z31.dual().parts == [3, 1]
    assert mzv.Composition([3, 1, 2]).dual().parts == [2, 3, 1]
    assert z31.weight == 4 and z31.depth == 2

    # alternating: ζ(1̄) = -ln 2
    assert abs(float(mzv.zeta([-1])) + math.log(2)) < 1e-15
    try:
        mzv.zeta([1, 1])
    except ArithmeticError as e:
        assert "divergent" in str(e)
    else:
        raise AssertionError("ζ(1,1) should diverge")

    re, im = mzv.polylog([1], [0.5])
    assert abs(float(re) - math.log(2)) < 1e-15 and abs(float(im)) < 1e-30

    assert dict(mzv.shuffle("a", "b")) == {"ab": "1", "ba": "1"}
    assert dict(mzv.qshuffle("a", "b")) == {"ab": "1", "ba[1]": "1"}
    assert mzv.q_value("a", "1", "1/2") * mzv.q_value("b", "1", "1/2") == Fraction(2, 3)
    assert mzv.Composition([2]).stuffle(mzv.Composition([3])) == [([2, 3], 1), ([3, 2], 1), ([5], 1)]
    assert mzv.stuffle_count(8, 8) == 265729
    assert mzv.tau(12, 2) == 3

    results = mzv.run_suite("sum_formula n=4\nq_expansions x=4/5 q=7/10", jobs=2)
    assert len(results) == 4 and all(r["pass"] for r in results), results
    assert mzv.check_gf("zfact", prec=30)[0]
    print("smoke test passed")


if __name__ == "__main__":
    main()
