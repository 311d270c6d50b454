"""Regime classification, variation slopes, signed limits and Hurst sweeps."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from ._limits import (
    DISTRIBUTION_BUDGET,
    FracvarError,
    ModeMismatchError,
    RegimeError,
    budget,
)
from .base_functions import SkewedTent, Tent, check_sufficient_condition
from .fractal import FractalSpec, q_exponent
from .increments import (
    IIDTwoPointLaw,
    Mode,
    exact_partial_sum_distribution,
    expected_abs_power,
    iid_params,
    law_for,
    mc_estimate,
)
from .moments import _power_bound, abs_moment_truncated, moments_recursive
from .variation import partition_sum

DEGENERACY_THRESHOLD = 1e-9
ODD_Q_TOLERANCE = 1e-9
ENUMERATION_ATOMS = 1 << 20
DEFAULT_H_GRID = tuple(round(0.05 * i, 2) for i in range(1, 20))


class Regime(str, Enum):
    BOUNDED_VARIATION = "BoundedVariation"
    CRITICAL_VANISHING = "CriticalVanishing"
    ROUGH = "Rough"


@dataclass(frozen=True)
class DegenerateEvidence:
    max_abs_Sn: float
    depth: int
    decay_ratio: float
    z_zero_candidate: bool


@dataclass(frozen=True)
class RegimeReport:
    regime: Regime
    q: Optional[float] = None
    hurst: Optional[float] = None
    degenerate_evidence: Optional[DegenerateEvidence] = None
    sufficient_condition_holds: Optional[bool] = None


def _max_depth(spec, mode, cap):
    limit = min(budget(DISTRIBUTION_BUDGET), cap)
    n = 0
    while True:
        nxt = n + 1
        need = {Mode.GENERIC: spec.b**nxt, Mode.IID: 2**nxt}.get(mode, 2 ** (nxt + 1) - 1)
        if need > limit:
            return n
        n = nxt


def degenerate_evidence(spec, depth=12):
    """Support-wide size of S_n, at ``depth`` and at half that depth.

    When Z = 0 a.s. the partial sums shrink like ``(|alpha| b)**-n``; the
    decay ratio compares that against 1, the behaviour for Z != 0.
    """
    law = law_for(spec.phi, spec.b)
    mode = Mode.GENERIC if law is None else (
        Mode.IID if isinstance(law, IIDTwoPointLaw) else Mode.MARKOV)
    depth = max(2, min(depth, _max_depth(spec, mode, budget(DISTRIBUTION_BUDGET))))
    top = exact_partial_sum_distribution(spec, depth, mode).max_abs()
    half = exact_partial_sum_distribution(spec, depth // 2, mode).max_abs()
    ratio = top / half if half > 0 else 0.0
    expected = (abs(spec.alpha) * spec.b) ** -(depth - depth // 2)
    candidate = top <= DEGENERACY_THRESHOLD or ratio <= math.sqrt(expected)
    return DegenerateEvidence(top, depth, ratio, candidate)


def classify(spec, evidence_depth=12):
    """Regime by |alpha| against 1/b, with evidence attached in the rough case."""
    x = abs(spec.alpha) * spec.b
    if abs(x - 1) <= 1e-12:
        return RegimeReport(Regime.CRITICAL_VANISHING)
    if x < 1:
        return RegimeReport(Regime.BOUNDED_VARIATION)
    q = q_exponent(spec)
    sufficient = None
    if spec.alpha > 0:
        sufficient = check_sufficient_condition(spec.phi, spec.b).holds
    return RegimeReport(Regime.ROUGH, q, 1 / q,
                        degenerate_evidence(spec, evidence_depth), sufficient)


@dataclass(frozen=True)
class SlopeResult:
    q: float
    slope: float
    method: str
    error: float
    depth: Optional[int] = None


def _integer(x, tol=ODD_Q_TOLERANCE):
    r = round(x)
    return r if abs(x - r) <= tol else None


def variation_slope(spec, method="enumeration", depth=None, samples=10**6, seed=0,
                    atoms=ENUMERATION_ATOMS):
    """Slope ``E|Z|**q`` of the q-th variation in the rough regime."""
    if abs(spec.alpha) * spec.b <= 1:
        raise RegimeError("variation slopes exist only for 1/b < |alpha| < 1")
    q = q_exponent(spec)
    law = law_for(spec.phi, spec.b)
    if method == "recursion":
        k = _integer(q)
        if k is None or k % 2:
            raise ModeMismatchError(f"recursion needs an even integer q, got q={q}")
        if not isinstance(law, IIDTwoPointLaw):
            raise ModeMismatchError("recursion needs an i.i.d. two-point increment law")
        table = moments_recursive(float(law.mu), float(law.nu), float(law.p), spec.gamma, k)
        return SlopeResult(q, float(table[k]), method, 0.0)
    if method == "enumeration":
        if law is not None:
            mode = Mode.IID if isinstance(law, IIDTwoPointLaw) else Mode.MARKOV
            if depth is None:
                depth = _max_depth(spec, mode, atoms)
            res = abs_moment_truncated(law, spec.gamma, q, depth)
            return SlopeResult(q, res.value, method, res.error_bound, depth)
        if depth is None:
            depth = _max_depth(spec, Mode.GENERIC, atoms)
        dist = exact_partial_sum_distribution(spec, depth, Mode.GENERIC)
        bound = _power_bound(spec.phi.lipschitz_constant, spec.gamma, q, depth)
        return SlopeResult(q, expected_abs_power(dist, q), method, bound, depth)
    if method in ("mc", "monte_carlo"):
        res = mc_estimate(spec, q, depth=depth, samples=samples, seed=seed)
        return SlopeResult(q, res.estimate, "monte_carlo", res.std_error, res.depth)
    raise ValueError(f"unknown method {method!r}")


class SignedKind(str, Enum):
    IDENTICALLY_ZERO = "IdenticallyZero"
    LIMIT = "Limit"
    OSCILLATING_PAIR = "OscillatingPair"


@dataclass(frozen=True)
class SignedLimitResult:
    q: int
    kind: SignedKind
    value: Optional[float] = None
    value_even_n: Optional[float] = None
    value_odd_n: Optional[float] = None


def _skew_parameter(spec):
    phi = spec.phi
    if isinstance(phi, SkewedTent) and phi.b == spec.b:
        return phi.ell, phi.scale
    if isinstance(phi, Tent) and spec.b % 2 == 0:
        return spec.b // 2, phi.scale
    raise ModeMismatchError(
        f"signed limits need a skewed tent map with b={spec.b}, got {phi.name}")


def signed_variation_limit(spec, q=None):
    """Limit of the signed q-th variation at t=1 for skewed tent maps."""
    ell, scale = _skew_parameter(spec)
    if abs(spec.alpha) * spec.b <= 1:
        raise RegimeError("signed limits need |alpha| > 1/b")
    q_spec = q_exponent(spec)
    k = _integer(q_spec)
    if k is None or k % 2 == 0:
        raise RegimeError(f"-log_|alpha| b = {q_spec!r} is not an odd integer")
    if q is not None and q != k:
        raise RegimeError(f"q={q} does not match the spec's exponent {k}")
    if 2 * ell == spec.b:
        return SignedLimitResult(k, SignedKind.IDENTICALLY_ZERO, 0.0)
    law = iid_params(spec.b, ell).scaled(scale)
    value = float(moments_recursive(float(law.mu), float(law.nu), float(law.p),
                                    spec.gamma, k)[k])
    if spec.alpha > 0:
        return SignedLimitResult(k, SignedKind.LIMIT, value)
    return SignedLimitResult(k, SignedKind.OSCILLATING_PAIR, value,
                             value_even_n=value, value_odd_n=-value)


@dataclass(frozen=True)
class SweepRow:
    H: float
    q: float
    slope: float
    error: float
    method: str
    b: int
    phi: str
    failure: Optional[str] = None


def hurst_sweep(phi, b, H_grid=DEFAULT_H_GRID, method="enumeration", **params):
    """Slope of the (1/H)-th variation over a grid of Hurst parameters.

    A failing row is recorded with its message and the sweep continues.
    """
    rows = []
    for H in sorted(H_grid):
        try:
            spec = FractalSpec.from_hurst(phi, b, H)
            res = variation_slope(spec, method, **params)
            rows.append(SweepRow(H, res.q, res.slope, res.error, res.method, b, phi.name))
        except (FracvarError, ValueError, ArithmeticError) as exc:
            q = 1 / H if H > 0 else math.inf
            rows.append(SweepRow(H, q, math.nan, math.nan, method, b, phi.name, str(exc)))
    return rows


@dataclass
class ConvergenceReport:
    p: float
    t: float
    rows: list = field(default_factory=list)
    theoretical_rate: float = 0.0
    fitted_rate: float = 0.0
    observed: str = ""
    predicted: str = ""

    @property
    def agrees(self):
        return self.observed in self.predicted.split("|")


def _predicted_limit(spec, p):
    x = abs(spec.alpha) * spec.b
    if abs(x - 1) <= 1e-12:
        return "vanishing" if p > 1 else "finite|diverging"
    if x < 1:
        return "finite" if p == 1 else "vanishing"
    q = q_exponent(spec)
    if abs(p - q) <= 1e-9 * q:
        return "finite"
    return "vanishing" if p > q else "diverging"


def convergence_report(spec, p, t=1.0, n_range=(2, 12), flat_rate=0.05):
    """Fit log V_{p,t,n} against n and compare with the predicted limit.

    The per-step log growth of the partition sums is ``log(|alpha|**p b)``
    up to the bounded expectation factor; a fitted rate within ``flat_rate``
    of zero is read as a finite limit.
    """
    n_min, n_max = n_range
    ns = list(range(n_min, n_max + 1))
    rate = math.log(abs(spec.alpha) ** p * spec.b)
    vals = [partition_sum(spec, p, t, n) for n in ns]
    report = ConvergenceReport(p, t, theoretical_rate=rate,
                               predicted=_predicted_limit(spec, p))
    report.rows = [(n, v, n * rate) for n, v in zip(ns, vals)]
    positive = [(n, v) for n, v in zip(ns, vals) if v > 0]
    if len(positive) < 2:
        report.fitted_rate = -math.inf
        report.observed = "vanishing"
        return report
    xs, ys = zip(*positive)
    slope = float(np.polyfit(xs, np.log(ys), 1)[0])
    report.fitted_rate = slope
    if slope < -flat_rate:
        report.observed = "vanishing"
    elif slope > flat_rate:
        report.observed = "diverging"
    else:
        report.observed = "finite"
    return report
