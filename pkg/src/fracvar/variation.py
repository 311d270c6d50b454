"""Partition sums of |increment|**p (and signed sums) along b-adic grids."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._limits import VARIATION_BUDGET, check_budget
from ._summation import fsum
from .fractal import FractalSpec, badic_values


def _last_index(t, size):
    """``floor(t * size)``, snapping float t that sit on a grid point."""
    if isinstance(t, Fraction):
        return math.floor(t * size)
    x = t * size
    r = round(x)
    if abs(x - r) <= 1e-9 * max(1.0, abs(x)):
        return int(r)
    return math.floor(x)


def _grid_values(g, t, n, b):
    """Values of g at ``k b**-n`` for ``k = 0 .. floor(t b**n) + 1``."""
    if isinstance(g, FractalSpec):
        if b is not None and b != g.b:
            raise ValueError(f"partition base {b} differs from the fractal's b={g.b}")
        b = g.b
    if b is None or b < 2:
        raise ValueError("a partition base b >= 2 is required")
    if not 0 <= t <= 1:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    if n < 0:
        raise ValueError("n must be non-negative")
    size = b**n
    check_budget(f"partition sum at n={n}", size, VARIATION_BUDGET)
    last = _last_index(t, size)
    # f(min(s, 1)) extension: the index past the grid maps back to 1
    k = np.minimum(np.arange(last + 2, dtype=np.int64), size)
    if isinstance(g, FractalSpec):
        return badic_values(g, n, k)
    xs = k / size
    try:
        vals = np.asarray(g(xs), dtype=float)
        if vals.shape != xs.shape:
            raise ValueError
    except (TypeError, ValueError):
        vals = np.array([float(g(x)) for x in xs])
    return vals


def increments(g, t, n, b=None):
    """Increments ``g((k+1) b**-n) - g(k b**-n)`` for ``k <= floor(t b**n)``."""
    return np.diff(_grid_values(g, t, n, b))


def partition_sum(g, p, t, n, b=None):
    """Sum of ``|increment|**p`` over the b-adic grid of level n up to t.

    ``g`` is either a :class:`FractalSpec`, evaluated exactly on the grid, or
    any callable on [0, 1].
    """
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    d = np.abs(increments(g, t, n, b))
    return fsum(d**p)


def signed_partition_sum(g, q, t, n, b=None):
    """Sum of ``increment**q`` for odd integer q (q=1 allowed for diagnostics)."""
    if int(q) != q or q % 2 == 0 or q < 1:
        raise ValueError(f"q must be an odd positive integer, got {q}")
    d = increments(g, t, n, b)
    return fsum(d ** int(q))


@dataclass
class VariationSeries:
    p: float
    t: float
    b: int
    signed: bool
    values: list = field(default_factory=list)

    @property
    def ns(self):
        return [n for n, _ in self.values]

    @property
    def sums(self):
        return [v for _, v in self.values]


def variation_series(spec, p, t, n_min, n_max, signed=False):
    if n_min > n_max:
        raise ValueError(f"empty range: n_min={n_min} > n_max={n_max}")
    if signed and (int(p) != p or p % 2 == 0):
        raise ValueError("signed series need an odd integer exponent")
    for n in range(n_min, n_max + 1):
        check_budget(f"variation series at n={n}", spec.b**n, VARIATION_BUDGET)
    fn = signed_partition_sum if signed else partition_sum
    series = VariationSeries(p, t, spec.b, signed)
    for n in range(n_min, n_max + 1):
        series.values.append((n, fn(spec, p, t, n)))
    return series
