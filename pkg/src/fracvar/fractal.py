"""The fractal function f(t) = sum_m alpha**m phi(b**m t)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._limits import RegimeError
from ._summation import ArrayAccumulator
from .base_functions import BaseFunction

DEFAULT_TOL = 1e-12
_TWO64 = 2.0**64


@dataclass(frozen=True)
class FractalSpec:
    phi: BaseFunction
    b: int
    alpha: float

    def __post_init__(self):
        if int(self.b) != self.b or self.b < 2:
            raise ValueError(f"b must be an integer >= 2, got {self.b}")
        if self.alpha == 0 or not abs(self.alpha) < 1:
            raise ValueError(f"alpha must lie in (-1, 1) without 0, got {self.alpha}")
        object.__setattr__(self, "b", int(self.b))
        object.__setattr__(self, "alpha", float(self.alpha))

    @classmethod
    def from_hurst(cls, phi, b, hurst):
        """Parameterise by the Hurst exponent, ``alpha = b**-H``."""
        if not 0 < hurst < 1:
            raise ValueError(f"Hurst parameter must lie in (0, 1), got {hurst}")
        return cls(phi, b, float(b) ** -hurst)

    @property
    def hurst(self):
        return hurst(self)

    @property
    def q_exponent(self):
        return q_exponent(self)

    @property
    def gamma(self):
        """Ratio ``1/(alpha b)`` of the increment series."""
        return 1.0 / (self.alpha * self.b)

    def describe(self):
        return f"phi={self.phi.name} b={self.b} alpha={self.alpha!r}"


def q_exponent(spec):
    """Variation exponent ``q = -log_|alpha| b``; only for ``1/b < |alpha| < 1``."""
    a = abs(spec.alpha)
    if a * spec.b <= 1 + 1e-15:
        raise RegimeError(
            f"q_exponent needs 1/b < |alpha| < 1; got |alpha|={a}, b={spec.b}")
    return -math.log(spec.b) / math.log(a)


def hurst(spec):
    return -math.log(abs(spec.alpha)) / math.log(spec.b)


def n_terms(spec, tol):
    """Smallest N with ``sup|phi| |alpha|**N / (1 - |alpha|) <= tol``."""
    a = abs(spec.alpha)
    bound = spec.phi.sup_norm / (1 - a)
    if bound <= tol:
        return 0
    return max(0, math.ceil(math.log(tol / bound) / math.log(a)))


def eval_f(spec, t, tol=DEFAULT_TOL):
    """Evaluate f at ``t`` (scalar or array) to within ``tol``.

    Values beyond 1 are those at 1; negative arguments are rejected.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if isinstance(t, Fraction):
        return _eval_f_fraction(spec, t, tol)
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0):
        raise ValueError("f is defined on [0, inf)")
    x = np.minimum(arr, 1.0) % 1.0
    # b**m t mod 1 in 64-bit fixed point: uint64 wraparound is reduction
    # mod 2**64, so the orbit is exact for every t >= 2**-11
    r = np.floor(x * _TWO64).astype(np.uint64)
    b = np.uint64(spec.b)
    acc = ArrayAccumulator(x.shape)
    coeff = 1.0
    with np.errstate(over="ignore"):
        for _ in range(n_terms(spec, tol)):
            acc.add(coeff * spec.phi(r.astype(float) / _TWO64))
            r = r * b
            coeff *= spec.alpha
    out = acc.value
    return float(out) if np.ndim(t) == 0 else out


def _eval_f_fraction(spec, t, tol):
    if t < 0:
        raise ValueError("f is defined on [0, inf)")
    t = min(t, Fraction(1))
    p, q = t.numerator % t.denominator, t.denominator
    terms = []
    coeff = 1.0
    for _ in range(n_terms(spec, tol)):
        terms.append(coeff * float(spec.phi(p / q)))
        p = (p * spec.b) % q
        coeff *= spec.alpha
    return math.fsum(terms)


def badic_values(spec, n, k=None):
    """Exact values ``f(k b**-n)`` via the n-term truncation.

    ``k`` defaults to the full grid ``0..b**n``.  The arguments ``k b**m`` are
    reduced modulo ``b**n`` in integer arithmetic before dividing, so every
    base-map argument is the nearest float to an exact b-adic rational.
    """
    b = spec.b
    size = b**n
    if k is None:
        k = np.arange(size + 1, dtype=np.int64)
    else:
        k = np.asarray(k, dtype=np.int64)
        if np.any(k < 0) or np.any(k > size):
            raise ValueError(f"k must lie in 0..{size}")
    acc = ArrayAccumulator(k.shape)
    r = k % size if size > 1 else np.zeros_like(k)
    coeff = 1.0
    for _ in range(n):
        acc.add(coeff * spec.phi(r / size))
        r = (r * b) % size
        coeff *= spec.alpha
    return acc.value


def eval_f_badic(spec, k, n):
    """``f(k b**-n)`` with no truncation error."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if not 0 <= k <= spec.b**n:
        raise ValueError(f"k must lie in 0..{spec.b ** n}, got {k}")
    return float(badic_values(spec, n, np.array([k]))[0])
