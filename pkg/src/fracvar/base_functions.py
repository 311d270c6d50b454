"""Base maps phi: period 1, Lipschitz, vanishing on the integers.

Every kind evaluates on floats, numpy arrays and (for the piecewise-linear
kinds) ``fractions.Fraction`` scalars, which the exact Markov/IID law tests
rely on.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np


def _frac(t):
    if isinstance(t, np.ndarray):
        return t - np.floor(t)
    return t - math.floor(t)


def _is_array(t):
    return isinstance(t, np.ndarray)


class BaseFunction:
    """Common interface of the base maps."""

    def __call__(self, t):
        raise NotImplementedError

    @property
    def lipschitz_constant(self) -> float:
        raise NotImplementedError

    @property
    def sup_norm(self) -> float:
        raise NotImplementedError

    @property
    def name(self) -> str:
        raise NotImplementedError

    def endpoint_values(self):
        """Values at 0 from the right and at 1 from the left."""
        return self(0.0), self(1.0)

    def slopes(self, b: int, m: int) -> np.ndarray:
        """Normalised increments ``b**m * (phi((k+1)/b**m) - phi(k/b**m))``.

        Returned for ``k = 0 .. b**m - 1``.
        """
        n = b**m
        grid = np.arange(n + 1, dtype=float) / n
        return np.diff(self(grid)) * n

    def slope_at(self, x, h):
        """Difference quotient ``(phi(x+h) - phi(x)) / h`` for arrays x."""
        return (self(x + h) - self(x)) / h


@dataclass(frozen=True)
class Tent(BaseFunction):
    """``scale * dist(t, Z)``; ``scale=-1`` gives the negated tent map."""

    scale: float = 1.0

    def __call__(self, t):
        x = _frac(t)
        if _is_array(x):
            return self.scale * np.minimum(x, 1 - x)
        val = min(x, 1 - x)
        return self.scale * val if self.scale != 1 else val

    @property
    def lipschitz_constant(self):
        return abs(self.scale)

    @property
    def sup_norm(self):
        return 0.5 * abs(self.scale)

    @property
    def name(self):
        return "tent" if self.scale == 1 else f"tent:scale={self.scale:g}"

    def slopes(self, b, m):
        n = b**m
        twice = 2 * np.arange(n, dtype=np.int64) + 1
        # the cell containing 1/2 (odd n only) has zero increment
        return self.scale * np.sign(n - twice).astype(float)


@dataclass(frozen=True)
class SkewedTent(BaseFunction):
    """Two linear pieces meeting at ``ell/b`` with peak value 1/2."""

    b: int
    ell: int
    scale: float = 1.0

    def __post_init__(self):
        if self.b < 2:
            raise ValueError("b must be at least 2")
        if not 1 <= self.ell <= self.b - 1:
            raise ValueError(f"ell must lie in 1..{self.b - 1}, got {self.ell}")

    @property
    def up_slope(self):
        return Fraction(self.b, 2 * self.ell)

    @property
    def down_slope(self):
        return Fraction(-self.b, 2 * (self.b - self.ell))

    def __call__(self, t):
        x = _frac(t)
        b, ell = self.b, self.ell
        if _is_array(x):
            up = x * (b / (2 * ell))
            down = (1 - x) * (b / (2 * (b - ell)))
            return self.scale * np.where(x * b <= ell, up, down)
        if x * b <= ell:
            val = x * b / (2 * ell)
        else:
            val = (1 - x) * b / (2 * (b - ell))
        return self.scale * val if self.scale != 1 else val

    @property
    def lipschitz_constant(self):
        b, ell = self.b, self.ell
        return abs(self.scale) * max(b / (2 * ell), b / (2 * (b - ell)))

    @property
    def sup_norm(self):
        return 0.5 * abs(self.scale)

    @property
    def name(self):
        s = f"skewed:l={self.ell}"
        return s if self.scale == 1 else f"{s};scale={self.scale:g}"

    def slopes(self, b, m):
        if b != self.b:
            return super().slopes(b, m)
        k = np.arange(b**m, dtype=np.int64)
        up = k < self.ell * b ** (m - 1)
        return self.scale * np.where(up, float(self.up_slope), float(self.down_slope))


@dataclass(frozen=True)
class Sine(BaseFunction):
    amplitude: float = 1.0

    def __call__(self, t):
        x = _frac(t)
        if _is_array(x):
            return self.amplitude * np.sin(2 * np.pi * x)
        return self.amplitude * math.sin(2 * math.pi * float(x))

    @property
    def lipschitz_constant(self):
        return 2 * math.pi * abs(self.amplitude)

    @property
    def sup_norm(self):
        return abs(self.amplitude)

    @property
    def name(self):
        return f"sine:amp={self.amplitude:g}"

    def slopes(self, b, m):
        n = b**m
        k = np.arange(n, dtype=float)
        # sin(x+h) - sin(x) = 2 cos(x + h/2) sin(h/2), free of cancellation
        mid = (2 * k + 1) / (2 * n)
        return self.amplitude * n * 2 * np.cos(2 * np.pi * mid) * math.sin(math.pi / n)

    def slope_at(self, x, h):
        return self.amplitude * 2 * np.cos(2 * np.pi * (x + h / 2)) * math.sin(math.pi * h) / h


@dataclass(frozen=True)
class Degenerate(BaseFunction):
    """``phi(t) = g(t) - alpha * g(b t)``; the resulting fractal equals g."""

    inner: BaseFunction
    alpha: float
    b: int

    def __call__(self, t):
        return self.inner(t) - self.alpha * self.inner(self.b * _frac(t))

    @property
    def lipschitz_constant(self):
        return self.inner.lipschitz_constant * (1 + abs(self.alpha) * self.b)

    @property
    def sup_norm(self):
        return self.inner.sup_norm * (1 + abs(self.alpha))

    @property
    def name(self):
        return f"degenerate:inner={self.inner.name}"

    def slopes(self, b, m):
        if b != self.b:
            return super().slopes(b, m)
        own = self.inner.slopes(b, m)
        if m == 1:
            shifted = np.zeros_like(own)  # g(1) - g(0) = 0
        else:
            shifted = np.tile(self.inner.slopes(b, m - 1), b)
        return own - self.alpha * b * shifted

    def slope_at(self, x, h):
        inner = self.inner
        return inner.slope_at(x, h) - self.alpha * self.b * inner.slope_at(
            (self.b * x) % 1.0, self.b * h)


@dataclass(frozen=True)
class PiecewiseLinear(BaseFunction):
    """Linear interpolation of ``(t, value)`` breakpoints spanning [0, 1]."""

    breakpoints: tuple
    label: Optional[str] = None

    def __post_init__(self):
        pts = tuple((float(t), float(v)) for t, v in self.breakpoints)
        if len(pts) < 2:
            raise ValueError("need at least two breakpoints")
        ts = [t for t, _ in pts]
        if ts[0] != 0.0 or ts[-1] != 1.0:
            raise ValueError("breakpoints must start at t=0 and end at t=1")
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("breakpoint abscissae must be strictly increasing")
        object.__setattr__(self, "breakpoints", pts)

    @property
    def _ts(self):
        return np.array([t for t, _ in self.breakpoints])

    @property
    def _vs(self):
        return np.array([v for _, v in self.breakpoints])

    def __call__(self, t):
        x = _frac(t)
        if _is_array(x):
            return np.interp(x, self._ts, self._vs)
        pts = self.breakpoints
        for (t0, v0), (t1, v1) in zip(pts, pts[1:]):
            if x <= t1:
                if isinstance(x, Fraction):
                    t0, v0, t1, v1 = map(Fraction, (t0, v0, t1, v1))
                return v0 + (v1 - v0) * (x - t0) / (t1 - t0)
        return pts[-1][1]

    def endpoint_values(self):
        return self.breakpoints[0][1], self.breakpoints[-1][1]

    @property
    def lipschitz_constant(self):
        return float(np.max(np.abs(np.diff(self._vs) / np.diff(self._ts))))

    @property
    def sup_norm(self):
        return float(np.max(np.abs(self._vs)))

    @property
    def name(self):
        if self.label:
            return self.label
        return "pwl:" + ";".join(f"{t:g}/{v:g}" for t, v in self.breakpoints)


def eval_phi(phi: BaseFunction, t):
    return phi(t)


@dataclass(frozen=True)
class AdmissibilityReport:
    periodic: bool
    vanishes_on_integers: bool
    lipschitz_ok: bool
    max_quotient: float

    @property
    def ok(self):
        return self.periodic and self.vanishes_on_integers and self.lipschitz_ok


def check_admissible(phi, sample_count=1000, tolerance=1e-12):
    """Sample the standing assumptions on a base map; failures are reported."""
    if sample_count < 2:
        raise ValueError("sample_count must be at least 2")
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    grid = np.arange(sample_count) / sample_count
    # second grid off the b-adic lattice
    offset = (grid + 0.5 * (math.sqrt(5) - 1) / sample_count) % 1.0
    ts = np.concatenate([grid, offset])
    periodic = bool(np.all(np.abs(phi(ts + 1.0) - phi(ts)) <= tolerance))

    ends = [phi(0.0), phi(1.0), *phi.endpoint_values()]
    vanishes = all(abs(float(v)) <= tolerance for v in ends)

    line = np.arange(-sample_count, 2 * sample_count + 1) / sample_count
    vals = phi(line)
    quotients = np.abs(np.diff(vals)) * sample_count
    # left limit at the integers, for maps whose stored endpoint disagrees
    left, right = phi.endpoint_values()
    jump = abs(float(left) - float(right)) * sample_count
    max_q = float(max(quotients.max(), jump))
    lipschitz_ok = max_q <= phi.lipschitz_constant * (1 + tolerance)
    return AdmissibilityReport(periodic, vanishes, lipschitz_ok, max_q)


@dataclass(frozen=True)
class SufficientCondition:
    holds: bool
    witness_k: Optional[int]


def check_sufficient_condition(phi, b, k_max=60):
    """Test ``phi(b**-k) >= 0`` for ``k <= k_max`` with at least one strict."""
    if b < 2 or k_max < 1:
        raise ValueError("need b >= 2 and k_max >= 1")
    witness = None
    for k in range(1, k_max + 1):
        v = float(phi(float(b) ** -k))
        if v < 0:
            return SufficientCondition(False, None)
        if v > 0 and witness is None:
            witness = k
    return SufficientCondition(witness is not None, witness)


def _kv(body):
    out = {}
    for part in filter(None, body.replace(";", ",").split(",")):
        key, _, val = part.partition("=")
        out[key.strip()] = val.strip()
    return out


def _read_breakpoints(path):
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    header = [c.strip().lower() for c in rows[0]]
    if header[:2] != ["t", "value"]:
        raise ValueError(f"{path}: expected header 't,value'")
    return tuple((float(t), float(v)) for t, v, *_ in rows[1:])


def parse_phi(text, b, alpha=None):
    """Build a base map from its command-line form.

    ``tent``, ``tent:scale=5``, ``skewed:l=1``, ``sine:amp=0.5``,
    ``degenerate:inner=sine:amp=1`` (uses the fractal's ``alpha`` and ``b``),
    ``pwl:@file.csv`` or inline ``pwl:0/0;0.5/1;1/0``.
    """
    kind, _, body = text.strip().partition(":")
    kind = kind.lower()
    if kind == "degenerate":
        if not body.startswith("inner="):
            raise ValueError("degenerate needs 'inner=<phi>'")
        if alpha is None:
            raise ValueError("degenerate base map needs alpha")
        return Degenerate(parse_phi(body[len("inner="):], b, alpha), alpha, b)
    if kind == "pwl":
        if body.startswith("@"):
            return PiecewiseLinear(_read_breakpoints(body[1:]), label=f"pwl:{body}")
        pts = tuple(tuple(float(x) for x in pair.split("/")) for pair in body.split(";"))
        return PiecewiseLinear(pts)
    opts = _kv(body)
    if kind == "tent":
        return Tent(float(opts.get("scale", 1.0)))
    if kind == "skewed":
        return SkewedTent(b, int(opts["l"]), float(opts.get("scale", 1.0)))
    if kind == "sine":
        return Sine(float(opts.get("amp", 1.0)))
    raise ValueError(f"unknown base function {text!r}")
