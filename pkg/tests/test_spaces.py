import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fsemcalc.gausspoly import GaussPolyFn
from fsemcalc.spaces import (
    SchwartzSpace,
    SeqElement,
    SigmaRhoSpace,
    SSpace,
    scaling_property_check,
    sigma_inclusion_check,
    space_from_json,
)

SIGMA = SigmaRhoSpace(0.5)
S = SSpace()
SCH = SchwartzSpace(1)

entries = st.lists(st.integers(-8, 8).map(lambda v: Fraction(v, 2)), max_size=5)


# -- SeqElement ---------------------------------------------------------------


def test_seq_element_trimming_and_entry():
    x = SeqElement([1, 2, 0, 0])
    assert x.prefix == (1, 2)
    assert x.entry(2) == 2 and x.entry(7) == 0
    w = SeqElement([1, 1], tail=1)
    assert w.prefix == ()  # fully constant
    assert w.entry(100) == 1


def test_seq_arithmetic():
    x, y = SeqElement([1, 2]), SeqElement([3], tail=1)
    assert x.add(y) == SeqElement([4, 3], tail=1)
    assert x.sub(x).is_zero()
    assert x.scale(2) == SeqElement([2, 4])
    assert y.power(2) == SeqElement([9], tail=1)
    assert SeqElement([2]).poly_apply([1, 3]) == SeqElement([2 + 12])


@settings(max_examples=60, deadline=None)
@given(entries, entries)
def test_seq_group_laws(a, b):
    x, y = SeqElement(a), SeqElement(b)
    assert x.add(y).sub(y) == x
    assert x.add(y) == y.add(x)


def test_seq_json_roundtrip():
    x = SeqElement([1.5, -2.0], tail=0.25)
    assert SeqElement.from_json(x.to_json()) == x


# -- sigma_rho ----------------------------------------------------------------


def test_sigma_seminorm_metric_sup_examples():
    x = SeqElement([4, 1])
    assert SIGMA.seminorm(1, x) == 2.0
    assert SIGMA.metric(x, SeqElement.zero()) == 3.0
    assert SIGMA.p_sup(x) == 4.0
    assert SIGMA.p_sup_prefix(x, 1) == 4.0
    assert all(SIGMA.seminorm(k, SeqElement.zero()) == 0.0 for k in range(1, 6))


def test_sigma_rejects_nonzero_tail():
    with pytest.raises(ValueError):
        SIGMA.seminorm(1, SeqElement([1], tail=2))
    with pytest.raises(ValueError):
        SIGMA.metric(SeqElement([1], tail=1), SeqElement.zero())


def test_rho_range_strict():
    with pytest.raises(ValueError):
        SigmaRhoSpace(1)
    with pytest.raises(ValueError):
        SigmaRhoSpace(0)
    with pytest.raises(ValueError):
        SigmaRhoSpace(1.2)


def test_sigma_not_homogeneous_exact_factor():
    x = SeqElement([3])
    lhs = SIGMA.seminorm(1, x.scale(2))
    assert abs(lhs - 2**0.5 * SIGMA.seminorm(1, x)) < 1e-15
    assert lhs != 2 * SIGMA.seminorm(1, x)


def test_sigma_metric_translation_invariant():
    rng = random.Random(2)
    for _ in range(50):
        x, y, z = (SIGMA.random_element(rng) for _ in range(3))
        assert SIGMA.metric(x.add(z), y.add(z)) == pytest.approx(SIGMA.metric(x, y), abs=1e-12)
    # exact on the rational fast path
    for _ in range(50):
        x, y, z = (SIGMA.random_element(rng, exact=True) for _ in range(3))
        assert SIGMA.metric(x.add(z), y.add(z)) == SIGMA.metric(x, y)


def test_sigma_inclusion_check():
    r = sigma_inclusion_check(SeqElement([0.5, 0.25]), 0.3, 0.7)
    assert r["passed"] and r["member_rho"] and r["member_gamma"]
    assert sigma_inclusion_check(SeqElement.zero(), 0.3, 0.7)["passed"]
    r = sigma_inclusion_check(SeqElement([2]), 0.3, 0.7)
    assert r["entries_above_one"] == [1] and r["member_gamma"]
    with pytest.raises(ValueError):
        sigma_inclusion_check(SeqElement.zero(), 0.7, 0.3)


# -- S ------------------------------------------------------------------------


def test_s_seminorm_examples():
    x = SeqElement([3], tail=1)
    assert S.seminorm(1, x) == 0.75
    assert S.seminorm(5, x) == 0.5


def test_s_fnorm_and_metric():
    x = SeqElement([3], tail=1)
    assert abs(S.fnorm(x) - 5 / 8) < 1e-15
    assert S.metric(x, x) == 0.0


def test_s_metric_translation_invariant():
    rng = random.Random(6)
    for _ in range(50):
        x, y, z = (S.random_element(rng) for _ in range(3))
        assert S.metric(x.add(z), y.add(z)) == pytest.approx(S.metric(x, y), abs=1e-12)
    for _ in range(50):
        x, y, z = (S.random_element(rng, exact=True) for _ in range(3))
        assert S.metric(x.add(z), y.add(z)) == S.metric(x, y)


def test_scaling_property_check():
    x = SeqElement([1])
    assert scaling_property_check(x, 0.5)["passed"]
    assert scaling_property_check(x, 2.0)["passed"]
    assert scaling_property_check(x, 1.0)["passed"]
    # spot values from the formulas
    ax = x.scale(0.5)
    assert S.seminorm(1, ax) == pytest.approx(1 / 3)
    assert S.seminorm(1, x.scale(2)) == pytest.approx(2 / 3)


# -- Schwartz -----------------------------------------------------------------


def test_schwartz_seminorm_values():
    g = GaussPolyFn.gaussian((Fraction(1),))
    assert SCH.seminorm(((0,), (0,)), g) == 1.0
    assert abs(SCH.seminorm(((0,), (1,)), g) - math.sqrt(2 / math.e)) < 1e-13
    assert abs(SCH.seminorm((0, 1), g) - math.sqrt(2 / math.e)) < 1e-13  # int shorthand


def test_schwartz_derivative_shift_identity():
    f = GaussPolyFn.gaussian((Fraction(1),)).monomial_mul((1,))
    lhs = SCH.seminorm(((1,), (0,)), f.diff((1,)))
    rhs = SCH.seminorm(((1,), (1,)), f)
    assert abs(lhs - rhs) < 1e-12 * (1 + rhs)


def test_schwartz_homogeneous():
    rng = random.Random(8)
    for _ in range(20):
        f = SCH.random_element(rng)
        s = rng.uniform(-3, 3)
        for sid in (((0,), (0,)), ((1,), (1,))):
            assert SCH.seminorm(sid, f.scale(s)) == pytest.approx(abs(s) * SCH.seminorm(sid, f), rel=1e-12)


def test_schwartz_enum_order():
    ids = SCH.enum_ids(6)
    assert ids[0] == ((0,), (0,))
    orders = [sum(a) + sum(b) for a, b in ids]
    assert orders == sorted(orders)


def test_space_from_json():
    assert space_from_json({"space": "sigma_rho", "rho": 0.5}).tag == "sigma_rho"
    assert space_from_json({"space": "s"}).tag == "s"
    assert space_from_json({"space": "schwartz", "n": 1}).tag == "schwartz"
    with pytest.raises(ValueError):
        space_from_json({"space": "banach"})
