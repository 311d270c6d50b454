from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fracvar import FractalSpec, Sine, SkewedTent, Tent, partition_sum
from fracvar._limits import ModeMismatchError, RegimeError
from fracvar.increments import (
    Mode,
    enumerated_marginal,
    enumerated_transitions,
    exact_partial_sum_distribution,
    expected_abs_power,
    iid_params,
    lambda_coeff,
    increment_law_value,
    markov_params,
    mc_estimate,
)


@pytest.mark.parametrize("b", range(2, 8))
def test_iid_law_is_exact(b):
    for ell in range(1, b):
        law = iid_params(b, ell)
        for m in (1, 2, 3):
            marg = enumerated_marginal(SkewedTent(b, ell), b, m)
            assert marg == {law.mu: 1 - law.p, law.nu: law.p} or (
                law.mu == law.nu and marg == {law.mu: 1})
        assert law.mean == 0


@pytest.mark.parametrize("b", [3, 5, 7])
def test_markov_law_is_exact(b):
    law = markov_params(b)
    states = (-1, 0, 1)
    for m in (2, 3, 4):
        freq = enumerated_transitions(Tent(), b, m)
        for i, x in enumerate(states):
            for j, y in enumerate(states):
                assert freq.get((x, y), Fraction(0)) == law.transition[i][j]


def test_markov_needs_odd_b():
    with pytest.raises(ValueError):
        markov_params(4)


def test_lambda_is_rational():
    c = lambda_coeff(SkewedTent(3, 1), 3, 2, 4)
    assert isinstance(c, Fraction)


CASES = [(Tent(), 2, 0.7), (Tent(), 3, -0.5), (SkewedTent(3, 1), 3, 0.6),
         (SkewedTent(5, 2), 5, -0.4), (Sine(0.5), 2, 0.8), (Tent(), 5, 0.3)]


@pytest.mark.parametrize("phi,b,alpha", CASES)
@pytest.mark.parametrize("p", [1, 2, 3, 4.5])
def test_increment_law_identity(phi, b, alpha, p):
    spec = FractalSpec(phi, b, alpha)
    for n in range(1, 7):
        direct = partition_sum(spec, p, 1, n)
        assert increment_law_value(spec, p, n) == pytest.approx(direct, rel=1e-9, abs=1e-15)


@pytest.mark.parametrize("phi,b,alpha", [(SkewedTent(3, 1), 3, 0.6), (Tent(), 3, 0.5),
                                         (Tent(), 2, 0.7)])
def test_modes_agree(phi, b, alpha):
    spec = FractalSpec(phi, b, alpha)
    generic = exact_partial_sum_distribution(spec, 6, Mode.GENERIC)
    auto = exact_partial_sum_distribution(spec, 6, "auto")
    assert auto.mode != Mode.GENERIC
    for p in (1, 2, 3):
        assert expected_abs_power(auto, p) == pytest.approx(expected_abs_power(generic, p),
                                                            rel=1e-12)
    assert auto.total_probability == pytest.approx(1.0)


def test_mode_mismatch():
    spec = FractalSpec(Sine(0.5), 2, 0.7)
    with pytest.raises(ModeMismatchError):
        exact_partial_sum_distribution(spec, 4, Mode.IID)


def test_mc_is_reproducible():
    spec = FractalSpec(SkewedTent(3, 1), 3, 3 ** (-1 / 3))
    a = mc_estimate(spec, 3, signed=True, samples=50_000, seed=3)
    b = mc_estimate(spec, 3, signed=True, samples=50_000, seed=3)
    c = mc_estimate(spec, 3, signed=True, samples=50_000, seed=4)
    assert a == b and a.estimate != c.estimate


@pytest.mark.parametrize("phi,b", [(Tent(), 3), (Sine(0.5), 2)])
def test_mc_agrees_with_enumeration(phi, b):
    spec = FractalSpec(phi, b, 0.6)
    exact = expected_abs_power(exact_partial_sum_distribution(spec, 8), 2)
    res = mc_estimate(spec, 2, depth=8, samples=200_000, seed=11)
    assert abs(res.estimate - exact) <= 5 * res.std_error


def test_mc_needs_rough_regime():
    with pytest.raises(RegimeError):
        mc_estimate(FractalSpec(Tent(), 2, 0.4), 2)


@given(st.integers(1, 6))
def test_distribution_values_bounded(n):
    spec = FractalSpec(SkewedTent(3, 2), 3, 0.5)
    dist = exact_partial_sum_distribution(spec, n, "auto")
    gamma = abs(spec.gamma)
    assert dist.max_abs() <= float(iid_params(3, 2).bound) * gamma / (1 - gamma) + 1e-12
    assert np.all(dist.probabilities >= 0)


@pytest.mark.parametrize("text,mode", [("GenericEnumeration", Mode.GENERIC),
                                       ("IIDTwoPoint", Mode.IID),
                                       ("MarkovTernary", Mode.MARKOV), ("iid", Mode.IID)])
def test_mode_names(text, mode):
    assert Mode(text) is mode
