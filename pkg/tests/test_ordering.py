import random
from fractions import Fraction

import pytest

from fsemcalc.gausspoly import GaussPolyFn
from fsemcalc.operators import Operator
from fsemcalc.ordering import (
    OrderRelation,
    check_absolute_extremum,
    check_directional_extremum,
    check_order_increasing,
    credit_necessity_suite,
    directional_extremum_summary,
    is_credit_point,
    nonneg_cone,
)
from fsemcalc.spaces import SchwartzSpace, SeqElement, SigmaRhoSpace, SSpace

SIGMA = SigmaRhoSpace(0.5)
S = SSpace()
SCH = SchwartzSpace(1)
GAUSS = GaussPolyFn.gaussian((Fraction(1),))
XGAUSS = GAUSS.monomial_mul((1,))


def test_cone_membership_examples():
    ks = nonneg_cone(SCH)
    assert ks.contains(GAUSS)
    assert not ks.contains(XGAUSS)  # negative for x < 0
    kseq = nonneg_cone(S)
    assert kseq.contains(SeqElement([1], tail=1))
    assert not kseq.contains(SeqElement([-1], tail=1))


def test_cone_rejects_complex_functions():
    k = nonneg_cone(SCH)
    assert not k.contains(GAUSS.scale(1j))


def test_cone_axioms_on_samples():
    rng = random.Random(2)
    for space in (SIGMA, SCH):
        c = nonneg_cone(space)
        assert c.contains(space.zero())
        for _ in range(40):
            x = space.random_element(rng)
            if isinstance(space, SchwartzSpace):
                x = x.mul(x)  # squares are nonnegative
            else:
                x = x.entrywise_map(abs)
            y = space.random_element(rng)
            y = y.mul(y) if isinstance(space, SchwartzSpace) else y.entrywise_map(abs)
            assert c.contains(x) and c.contains(y)
            assert c.contains(space.add(x, y))
            assert c.contains(space.scale(Fraction(3, 2), x))
            # pointedness: x and -x both in the cone only at the origin
            if not space.is_zero(x):
                assert not c.contains(space.scale(-1, x))


def test_order_relation_examples():
    rel = OrderRelation(nonneg_cone(SIGMA))
    assert rel.leq(SeqElement([1, 2]), SeqElement([2, 2]))
    x = SeqElement([1, 2])
    assert rel.leq(x, x) and not rel.lt(x, x)
    assert not rel.leq(SeqElement([2]), SeqElement([1]))


def test_order_is_partial_order_on_samples():
    rng = random.Random(3)
    rel = OrderRelation(nonneg_cone(SIGMA))
    for _ in range(60):
        x, y, z = (SIGMA.random_element(rng) for _ in range(3))
        assert rel.leq(x, x)
        if rel.leq(x, y) and rel.leq(y, x):
            assert x == y
        if rel.leq(x, y) and rel.leq(y, z):
            assert rel.leq(x, z)


def test_credit_point_examples():
    r3 = Operator("power", {"m": 3}, S, S)
    assert is_credit_point(r3, SeqElement.zero(), [SeqElement([], tail=1)]).passed
    p2 = Operator("power", {"m": 2}, SCH, SCH)
    assert is_credit_point(p2, GaussPolyFn.zero(1), [GAUSS, XGAUSS]).passed
    q2 = Operator("power", {"m": 2}, SIGMA, SIGMA)
    r = is_credit_point(q2, SeqElement([1]), [SeqElement([1])])
    assert not r.passed
    assert r.counterexample["seminorm"] > 0


def test_credit_point_rejects_zero_direction():
    q2 = Operator("power", {"m": 2}, SIGMA, SIGMA)
    with pytest.raises(ValueError):
        is_credit_point(q2, SeqElement([1]), [SeqElement.zero()])


def test_directional_extremum_examples():
    p2 = Operator("power", {"m": 2}, SCH, SCH)
    theta = GaussPolyFn.zero(1)
    ts = [Fraction(k, 7) for k in range(-7, 8) if k]
    assert check_directional_extremum(p2, theta, GAUSS, ts, "min").passed
    p3 = Operator("power", {"m": 3}, SCH, SCH)
    summary = directional_extremum_summary(p3, theta, GAUSS, [-1, 1])
    assert summary["verdict"] == "neither"
    r3 = Operator("power", {"m": 3}, S, S)
    summary = directional_extremum_summary(r3, SeqElement.zero(), SeqElement([], tail=1), [-1, 1])
    assert summary["verdict"] == "neither"


def test_absolute_extremum():
    rng = random.Random(5)
    p2 = Operator("power", {"m": 2}, SCH, SCH)
    samples = [SCH.random_element(rng) for _ in range(100)]
    assert check_absolute_extremum(p2, GaussPolyFn.zero(1), samples, "min").passed
    r2 = Operator("power", {"m": 2}, S, S)
    seqs = [S.random_element(rng) for _ in range(100)]
    assert check_absolute_extremum(r2, SeqElement.zero(), seqs, "min").passed
    # claimed min of the square at (1,...) fails: x = (0.5,...) maps below it
    q2 = Operator("power", {"m": 2}, SIGMA, SIGMA)
    r = check_absolute_extremum(q2, SeqElement([1]), [SeqElement([Fraction(1, 2)])], "min")
    assert not r.passed


def test_order_increasing():
    q2 = Operator("power", {"m": 2}, SIGMA, SIGMA)
    pairs = [(SeqElement([1]), SeqElement([2])), (SeqElement([0, 1]), SeqElement([1, 1]))]
    assert check_order_increasing(q2, pairs).passed
    # mixed signs break monotonicity of squaring
    r = check_order_increasing(q2, [(SeqElement([-2]), SeqElement([1]))])
    assert not r.passed
    ident = Operator("identity", {}, SIGMA, SIGMA)
    assert check_order_increasing(ident, pairs).passed


def test_order_increasing_rejects_unordered():
    q2 = Operator("power", {"m": 2}, SIGMA, SIGMA)
    with pytest.raises(ValueError):
        check_order_increasing(q2, [(SeqElement([2]), SeqElement([1]))])


def test_credit_necessity_suite_all_pass():
    reports = credit_necessity_suite(random.Random(42), budget=60)
    for r in reports:
        assert r.passed, (r.details.get("case"), r.counterexample)
    cases = {r.details.get("case") for r in reports}
    assert "cube@schwartz non-converse" in cases
    assert "square@sigma order increasing" in cases
