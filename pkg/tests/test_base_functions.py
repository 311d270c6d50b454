import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fracvar.base_functions import (
    Degenerate,
    PiecewiseLinear,
    Sine,
    SkewedTent,
    Tent,
    check_admissible,
    check_sufficient_condition,
    parse_phi,
)

unit = st.floats(0, 1, allow_nan=False)


@given(unit)
def test_tent_is_distance_to_nearest_integer(t):
    assert Tent()(t) == pytest.approx(min(t, 1 - t), abs=1e-15)


@given(st.integers(2, 9), st.data())
def test_skewed_tent_peak_and_zeros(b, data):
    ell = data.draw(st.integers(1, b - 1))
    phi = SkewedTent(b, ell)
    assert phi(0.0) == 0 and phi(1.0) == 0
    assert float(phi(Fraction(ell, b))) == pytest.approx(0.5)
    assert phi.sup_norm == pytest.approx(0.5)


def test_skewed_tent_half_is_tent():
    ts = np.linspace(0, 1, 101)
    np.testing.assert_allclose(SkewedTent(4, 2)(ts), Tent()(ts), atol=1e-15)


@pytest.mark.parametrize("phi", [Tent(), Tent(5.0), SkewedTent(3, 1), Sine(0.5),
                                 PiecewiseLinear(((0, 0), (0.3, 1), (1, 0)))])
def test_admissible(phi):
    assert check_admissible(phi).ok


def test_endpoint_mismatch_is_rejected():
    # the map is extended periodically, so the mismatch shows up as a jump
    report = check_admissible(PiecewiseLinear(((0, 0), (1, 1))))
    assert not report.ok
    assert not report.vanishes_on_integers and not report.lipschitz_ok


@pytest.mark.parametrize("b,m", [(2, 3), (3, 4), (5, 2)])
@pytest.mark.parametrize("phi", [Tent(), SkewedTent(5, 2), Sine(1.0)])
def test_slopes_match_grid_differences(phi, b, m):
    if isinstance(phi, SkewedTent) and phi.b != b:
        phi = SkewedTent(b, 1)
    xs = np.arange(b**m + 1) / b**m
    expected = np.diff(np.asarray(phi(xs), dtype=float)) * b**m
    np.testing.assert_allclose(np.asarray(phi.slopes(b, m), dtype=float), expected,
                               atol=1e-9)


def test_degenerate_slopes_level_one_vanish():
    phi = Degenerate(Sine(1.0), 0.7, 2)
    np.testing.assert_allclose(phi.slopes(2, 1), 0.0, atol=1e-14)


def test_sufficient_condition_tent():
    assert check_sufficient_condition(Tent(), 2).holds
    assert check_sufficient_condition(SkewedTent(3, 1), 3).holds


@pytest.mark.parametrize("text,cls", [
    ("tent", Tent), ("tent:scale=5", Tent), ("skewed:l=1", SkewedTent),
    ("sine:amp=0.5", Sine), ("pwl:0/0;0.5/1;1/0", PiecewiseLinear),
])
def test_parse_phi(text, cls):
    assert isinstance(parse_phi(text, 3), cls)


def test_parse_phi_csv(tmp_path):
    path = tmp_path / "phi.csv"
    path.write_text("t,value\n0,0\n0.25,1\n1,0\n")
    phi = parse_phi(f"pwl:@{path}", 2)
    assert phi(0.25) == pytest.approx(1.0)
    assert phi.lipschitz_constant == pytest.approx(4.0)


def test_parse_phi_rejects_unknown():
    with pytest.raises(ValueError):
        parse_phi("wavelet", 2)


def test_sine_lipschitz():
    assert Sine(0.5).lipschitz_constant == pytest.approx(math.pi)
