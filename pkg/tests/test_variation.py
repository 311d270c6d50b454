from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fracvar import FractalSpec, SkewedTent, Tent, partition_sum, signed_partition_sum
from fracvar._limits import BudgetExceededError
from fracvar.variation import increments, variation_series


def test_linear_function_variation():
    # for g(t) = t, the level-n p-sum up to 1 is b^n (b^-n)^p
    for p in (1, 2, 3.5):
        assert partition_sum(lambda x: x, p, 1, 5, b=2) == pytest.approx(2 ** (5 * (1 - p)))


def test_callable_scalar_fallback():
    def g(x):
        return float(x) ** 2
    assert partition_sum(g, 1, 1, 4, b=3) == pytest.approx(1.0)


def test_grid_point_t_is_snapped():
    spec = FractalSpec(Tent(), 3, 0.5)
    a = partition_sum(spec, 2, Fraction(1, 3), 4)
    b = partition_sum(spec, 2, 1 / 3, 4)
    assert a == b


def test_extension_past_one():
    # the partition reaches one step past floor(t b^n); at t=1 that step is f(1)-f(1)=0
    spec = FractalSpec(Tent(), 2, 0.5)
    d = increments(spec, 1, 3)
    assert len(d) == 2**3 + 1 and d[-1] == 0


@given(st.integers(1, 9))
def test_signed_sum_vanishes_for_symmetric_tent(n):
    spec = FractalSpec(Tent(), 2, 2 ** (-1 / 3))
    assert abs(signed_partition_sum(spec, 3, 1, n)) <= 1e-12


@given(st.integers(1, 8), st.floats(0.2, 0.9))
def test_monotone_in_t(n, t):
    spec = FractalSpec(SkewedTent(3, 1), 3, 0.6)
    assert partition_sum(spec, 2, t / 2, n) <= partition_sum(spec, 2, t, n) + 1e-15


def test_signed_q1_telescopes():
    spec = FractalSpec(SkewedTent(3, 2), 3, 0.5)
    assert signed_partition_sum(spec, 1, 1, 6) == pytest.approx(0.0, abs=1e-14)


@pytest.mark.parametrize("p", [0.5, 0])
def test_p_below_one_rejected(p):
    with pytest.raises(ValueError):
        partition_sum(FractalSpec(Tent(), 2, 0.5), p, 1, 3)


@pytest.mark.parametrize("q", [2, 2.5, 0])
def test_signed_needs_odd_q(q):
    with pytest.raises(ValueError):
        signed_partition_sum(FractalSpec(Tent(), 2, 0.5), q, 1, 3)


def test_budget_error_names_operation(monkeypatch):
    monkeypatch.setenv("FRACVAR_BUDGET", "100")
    with pytest.raises(BudgetExceededError, match="n=7"):
        partition_sum(FractalSpec(Tent(), 2, 0.5), 2, 1, 7)


def test_series():
    spec = FractalSpec(Tent(), 2, 0.5)
    s = variation_series(spec, 2, 1, 2, 6)
    assert s.ns == [2, 3, 4, 5, 6]
    np.testing.assert_allclose(s.sums, [partition_sum(spec, 2, 1, n) for n in s.ns])
