import math

import pytest

from fracvar import FractalSpec, Sine, SkewedTent, Tent
from fracvar._limits import ModeMismatchError, RegimeError
from fracvar.analysis import (
    Regime,
    SignedKind,
    classify,
    convergence_report,
    hurst_sweep,
    signed_variation_limit,
    variation_slope,
)
from fracvar.base_functions import Degenerate


@pytest.mark.parametrize("alpha,regime", [(0.25, Regime.BOUNDED_VARIATION),
                                          (0.5, Regime.CRITICAL_VANISHING),
                                          (0.7, Regime.ROUGH), (-0.7, Regime.ROUGH)])
def test_classify(alpha, regime):
    assert classify(FractalSpec(Tent(), 2, alpha)).regime == regime


def test_classify_rough_details():
    rep = classify(FractalSpec(Tent(), 2, 2 ** (-1 / 3)))
    assert rep.q == pytest.approx(3.0)
    assert rep.hurst == pytest.approx(1 / 3)
    assert rep.sufficient_condition_holds
    assert not rep.degenerate_evidence.z_zero_candidate


def test_degenerate_candidate_flag():
    spec = FractalSpec(Degenerate(Sine(1.0), 0.7, 2), 2, 0.7)
    ev = classify(spec).degenerate_evidence
    assert ev.z_zero_candidate
    assert ev.decay_ratio < 0.2


def test_slope_recursion_b2_q2():
    # tent with b=2: Y = +-1, gamma = 1/sqrt 2, so E[Z^2] = gamma^2/(1-gamma^2) = 1
    spec = FractalSpec(Tent(), 2, 2 ** -0.5)
    assert variation_slope(spec, "recursion").slope == pytest.approx(1.0)


def test_slope_methods_agree():
    spec = FractalSpec(SkewedTent(3, 1), 3, 3 ** -0.5)
    rec = variation_slope(spec, "recursion").slope
    en = variation_slope(spec, "enumeration", depth=18)
    mc = variation_slope(spec, "mc", samples=200_000, seed=2)
    assert abs(en.slope - rec) <= en.error
    assert abs(mc.slope - rec) <= 5 * mc.error


def test_slope_recursion_needs_even_q():
    with pytest.raises(ModeMismatchError):
        variation_slope(FractalSpec(Tent(), 2, 2 ** (-1 / 3)), "recursion")


def test_slope_needs_rough():
    with pytest.raises(RegimeError):
        variation_slope(FractalSpec(Tent(), 2, 0.5))


def test_signed_limit_kinds():
    res = signed_variation_limit(FractalSpec(SkewedTent(3, 1), 3, 3 ** (-1 / 3)))
    assert res.kind == SignedKind.LIMIT and res.value == pytest.approx(27 / 256)
    res = signed_variation_limit(FractalSpec(Tent(), 2, 2 ** (-1 / 3)))
    assert res.kind == SignedKind.IDENTICALLY_ZERO
    res = signed_variation_limit(FractalSpec(SkewedTent(3, 1), 3, -(3 ** (-1 / 3))))
    assert res.kind == SignedKind.OSCILLATING_PAIR
    assert res.value_even_n == -res.value_odd_n


def test_signed_limit_needs_odd_q():
    with pytest.raises(RegimeError):
        signed_variation_limit(FractalSpec(SkewedTent(3, 1), 3, 3 ** -0.5))


def test_sweep_records_failures():
    rows = hurst_sweep(Tent(), 2, (0.3, 0.5), "recursion")
    by_h = {r.H: r for r in rows}
    assert by_h[0.5].failure is None and by_h[0.5].slope == pytest.approx(1.0)
    assert by_h[0.3].failure and math.isnan(by_h[0.3].slope)


@pytest.mark.parametrize("alpha,p", [(0.7, 3), (0.7, 1.2), (2 ** (-1 / 3), 3), (0.5, 2),
                                     (0.25, 1)])
def test_convergence_report(alpha, p):
    spec = FractalSpec(Tent(), 2, alpha)
    rep = convergence_report(spec, p, n_range=(4, 14))
    assert rep.agrees, (rep.observed, rep.predicted, rep.fitted_rate)
