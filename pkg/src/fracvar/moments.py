"""Moments of (non-symmetric) infinite Bernoulli convolutions.

For i.i.d. Y taking nu with probability p and mu otherwise, and
Z = sum_{m>=1} gamma**m Y_m with |gamma| < 1, conditioning on the first
step gives

    E[Z**k] = gamma**k / (1 - gamma**k)
              * sum_{j<k} C(k, j) (p nu**(k-j) + (1-p) mu**(k-j)) E[Z**j].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from ._limits import RegimeError
from .increments import IIDTwoPointLaw, law_distribution

DEFAULT_ORDER = 16


@dataclass(frozen=True)
class MomentTable:
    mu: float
    nu: float
    p: float
    gamma: float
    moments: tuple

    def __getitem__(self, k):
        return self.moments[k]

    def __len__(self):
        return len(self.moments)


def _pascal_rows(K):
    row = [1]
    yield row
    for _ in range(K):
        row = [1] + [a + b for a, b in zip(row, row[1:])] + [1]
        yield row


def moments_recursive(mu, nu, p, gamma, K=DEFAULT_ORDER):
    """``E[Z**k]`` for ``k = 0..K``.

    All-rational inputs (ints or Fractions) give exact Fractions; otherwise
    each step is a correctly rounded float sum.
    """
    if not -1 < gamma < 1 or gamma == 0:
        raise RegimeError(f"gamma must lie in (-1, 1) without 0, got {gamma}")
    if not 0 < p < 1:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    if K < 0:
        raise ValueError("K must be non-negative")
    exact = all(isinstance(x, Rational) for x in (mu, nu, p, gamma))
    if exact:
        mu, nu, p, gamma = map(Fraction, (mu, nu, p, gamma))
        one, total = Fraction(1), sum
    else:
        mu, nu, p, gamma = map(float, (mu, nu, p, gamma))
        one, total = 1.0, math.fsum
    # step moments E[Y**i]
    step = [p * nu**i + (one - p) * mu**i for i in range(K + 1)]
    out = [one]
    for k, row in enumerate(_pascal_rows(K)):
        if k == 0:
            continue
        gk = gamma**k
        acc = total(row[j] * step[k - j] * out[j] for j in range(k))
        out.append(gk / (one - gk) * acc)
    return MomentTable(mu, nu, p, gamma, tuple(out))


def odd_moment_sign(mu, nu, p, gamma, k):
    """Sign of the odd moment ``E[Z**k]`` for a centred law with mu < 0 < nu."""
    if not (mu < 0 < nu):
        raise ValueError(f"need mu < 0 < nu, got mu={mu}, nu={nu}")
    if abs(p * nu + (1 - p) * mu) > 1e-12:
        raise ValueError("the two-point law must be centred")
    if not 0 < gamma < 1:
        raise ValueError(f"gamma must lie in (0, 1), got {gamma}")
    if int(k) != k or k < 3 or k % 2 == 0:
        raise ValueError(f"k must be an odd integer >= 3, got {k}")
    s = nu + mu
    if isinstance(s, float) and abs(s) <= 1e-12 * max(abs(mu), abs(nu)):
        return 0
    return (s > 0) - (s < 0)


@dataclass(frozen=True)
class TruncatedMoment:
    value: float
    error_bound: float
    depth: int


def tail_bound(bound, gamma, depth):
    """Bound on ``|Z - S_N|`` when every step is at most ``bound`` in size."""
    g = abs(gamma)
    return bound * g ** (depth + 1) / (1 - g)


def abs_moment_truncated(law, gamma, q, depth):
    """``E|S_N|**q`` by exact enumeration with a rigorous bound on ``|E|Z|**q - E|S_N|**q|``."""
    if not 0 < abs(gamma) < 1:
        raise RegimeError(f"|gamma| must lie in (0, 1), got {gamma}")
    if q < 1:
        raise ValueError("the error bound needs q >= 1")
    dist = law_distribution(law, gamma, depth)
    vals = np.abs(dist.values)
    value = math.fsum((dist.probabilities * vals**q).tolist())
    return TruncatedMoment(value, _power_bound(law.bound, gamma, q, depth), depth)


def _power_bound(bound, gamma, q, depth):
    # | |x|^q - |y|^q | <= q max(|x|,|y|)^(q-1) |x - y|, with |S_N|, |Z| <= M
    g = abs(gamma)
    top = bound * g / (1 - g)
    return q * top ** (q - 1) * tail_bound(bound, gamma, depth)


def power_moment_truncated(law, gamma, k, depth):
    """Signed analogue of :func:`abs_moment_truncated` for integer k >= 1."""
    dist = law_distribution(law, gamma, depth)
    value = math.fsum((dist.probabilities * dist.values ** int(k)).tolist())
    return TruncatedMoment(value, _power_bound(law.bound, gamma, k, depth), depth)


def law_moments(law: IIDTwoPointLaw, gamma, K=DEFAULT_ORDER):
    return moments_recursive(law.mu, law.nu, law.p, gamma, K)
