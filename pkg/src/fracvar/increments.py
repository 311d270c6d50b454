"""The increment process Y_m and the exact law of its weighted partial sums.

With U_1, U_2, ... i.i.d. uniform on {0, .., b-1}, R_m = sum U_i b**(i-1) and
Y_m = lambda_{m, R_m}, the partition sums of f are moments of

    S_n = sum_{m=1}^n (alpha b)**-m Y_m.

Three exact propagators are provided: brute enumeration of R_n (any base
map), the i.i.d. two-point law of the skewed tent map, and the three-state
Markov chain of the tent map with odd b.  Atoms are never merged.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

import numpy as np

from ._limits import (
    DISTRIBUTION_BUDGET,
    ModeMismatchError,
    RegimeError,
    check_budget,
)
from ._summation import fsum
from .base_functions import SkewedTent, Tent


class Mode(str, Enum):
    GENERIC = "generic"
    IID = "iid"
    MARKOV = "markov"

    @classmethod
    def _missing_(cls, value):
        aliases = {"genericenumeration": cls.GENERIC, "iidtwopoint": cls.IID,
                   "markovternary": cls.MARKOV}
        if isinstance(value, str):
            return aliases.get(value.lower())
        return None


@dataclass(frozen=True)
class LambdaTable:
    b: int
    m: int
    values: np.ndarray


def lambda_coeff(phi, b, m, k):
    """``(phi((k+1) b**-m) - phi(k b**-m)) * b**m``; exact for Fraction-capable maps."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if not 0 <= k < b**m:
        raise ValueError(f"k must lie in 0..{b ** m - 1}, got {k}")
    n = b**m
    return (phi(Fraction(k + 1, n)) - phi(Fraction(k, n))) * n


def lambda_table(phi, b, m):
    return LambdaTable(b, m, phi.slopes(b, m))


@dataclass(frozen=True)
class IIDTwoPointLaw:
    """Y = nu with probability p, else mu.

    ``b`` and ``ell`` are set when the law comes from a skewed tent map; the
    event {Y_m = nu} is then exactly {U_m < ell}.
    """

    mu: float
    nu: float
    p: float
    b: Optional[int] = None
    ell: Optional[int] = None

    @property
    def mean(self):
        return self.p * self.nu + (1 - self.p) * self.mu

    @property
    def bound(self):
        return max(abs(self.mu), abs(self.nu))

    def scaled(self, factor):
        if factor == 1:
            return self
        return IIDTwoPointLaw(self.mu * factor, self.nu * factor, self.p, self.b, self.ell)


@dataclass(frozen=True)
class MarkovTernaryLaw:
    """Markov chain on {-1, 0, +1} (index order), values multiplied by ``scale``."""

    initial: tuple
    transition: tuple
    b: Optional[int] = None
    scale: float = 1.0

    @property
    def bound(self):
        return abs(self.scale)

    def matrix(self):
        return np.array([[float(x) for x in row] for row in self.transition])


def iid_params(b, ell):
    """Two-point law of the skewed tent increments, as exact fractions."""
    if b < 2 or not 1 <= ell <= b - 1:
        raise ValueError(f"need b >= 2 and 1 <= ell <= b-1, got b={b}, ell={ell}")
    return IIDTwoPointLaw(
        mu=Fraction(-b, 2 * (b - ell)),
        nu=Fraction(b, 2 * ell),
        p=Fraction(ell, b),
        b=b,
        ell=ell,
    )


def markov_params(b):
    """Chain of the tent-map increments for odd b."""
    if b < 3 or b % 2 == 0:
        raise ValueError(f"the ternary chain needs odd b >= 3, got {b}")
    lo, mid, hi = Fraction(b - 1, 2 * b), Fraction(1, b), Fraction(b + 1, 2 * b)
    zero = Fraction(0)
    return MarkovTernaryLaw(
        initial=(lo, mid, lo),
        transition=((hi, zero, lo), (lo, mid, lo), (lo, zero, hi)),
        b=b,
    )


def law_for(phi, b):
    """The exact increment law of a built-in tent-type map, or None."""
    if isinstance(phi, SkewedTent) and phi.b == b:
        return iid_params(b, phi.ell).scaled(phi.scale)
    if isinstance(phi, Tent):
        if b % 2 == 0:
            return iid_params(b, b // 2).scaled(phi.scale)
        law = markov_params(b)
        return MarkovTernaryLaw(law.initial, law.transition, b, phi.scale)
    return None


@dataclass
class IncrementDistribution:
    """Exact law of a partial sum: one atom per path, never merged."""

    depth: int
    values: np.ndarray
    probabilities: np.ndarray
    states: np.ndarray
    mode: Mode

    def __len__(self):
        return self.values.size

    @property
    def total_probability(self):
        return fsum(self.probabilities)

    def max_abs(self):
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0

    def rows(self):
        return zip(self.values.tolist(), self.probabilities.tolist(), self.states.tolist())


def _atoms_needed(mode, b, n):
    if mode is Mode.GENERIC:
        return b**n
    if mode is Mode.IID:
        return 2**n
    return 2 ** (n + 1) - 1


def propagate_iid(law, coeffs):
    """Branch over {mu, nu} at every step with weights (1-p, p)."""
    mu, nu, p = float(law.mu), float(law.nu), float(law.p)
    values = np.zeros(1)
    probs = np.ones(1)
    states = np.zeros(1, dtype=np.int8)
    for c in coeffs:
        values = np.concatenate([values + c * mu, values + c * nu])
        probs = np.concatenate([probs * (1 - p), probs * p])
        states = np.concatenate([np.zeros(states.size, np.int8), np.ones(states.size, np.int8)])
    return values, probs, states


def propagate_markov(law, coeffs):
    """Propagate (state, partial sum, weight) triples along the chain."""
    P = law.matrix()
    init = np.array([float(x) for x in law.initial])
    if len(coeffs) == 0:
        return np.zeros(1), np.ones(1), np.zeros(1, dtype=np.int8)
    live = init > 0
    states = np.array([-1, 0, 1], dtype=np.int8)[live]
    probs = init[live]
    values = coeffs[0] * law.scale * states.astype(float)
    for c in coeffs[1:]:
        parts_v, parts_p, parts_s = [], [], []
        for target in (-1, 0, 1):
            w = P[states + 1, target + 1]
            keep = w > 0
            if not keep.any():
                continue
            parts_v.append(values[keep] + c * law.scale * target)
            parts_p.append(probs[keep] * w[keep])
            parts_s.append(np.full(keep.sum(), target, dtype=np.int8))
        values = np.concatenate(parts_v)
        probs = np.concatenate(parts_p)
        states = np.concatenate(parts_s)
    return values, probs, states


def propagate_generic(phi, b, coeffs):
    """Enumerate R_n over {0, .., b**n - 1}; index r of the result is R_n = r."""
    values = np.zeros(1)
    for m, c in enumerate(coeffs, start=1):
        # R_m mod b**(m-1) = R_{m-1}, so the previous level tiles
        values = np.tile(values, b) + c * phi.slopes(b, m)
    n = len(coeffs)
    probs = np.full(values.size, float(b) ** -n)
    return values, probs, np.arange(values.size, dtype=np.int64)


def _resolve_mode(spec, mode):
    law = law_for(spec.phi, spec.b)
    if mode in (None, "auto"):
        if law is None:
            return Mode.GENERIC, None
        return (Mode.IID if isinstance(law, IIDTwoPointLaw) else Mode.MARKOV), law
    mode = Mode(mode)
    if mode is Mode.IID and not isinstance(law, IIDTwoPointLaw):
        raise ModeMismatchError(f"{spec.phi.name} with b={spec.b} has no i.i.d. two-point law")
    if mode is Mode.MARKOV and not isinstance(law, MarkovTernaryLaw):
        raise ModeMismatchError(f"{spec.phi.name} with b={spec.b} has no ternary Markov law")
    return mode, law


def exact_partial_sum_distribution(spec, n, mode=Mode.GENERIC):
    """Exact law of ``S_n = sum_{m<=n} (alpha b)**-m Y_m``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    mode, law = _resolve_mode(spec, mode)
    check_budget(f"{mode.value} distribution at depth {n}",
                 _atoms_needed(mode, spec.b, n), DISTRIBUTION_BUDGET)
    coeffs = spec.gamma ** np.arange(1, n + 1)
    if mode is Mode.GENERIC:
        parts = propagate_generic(spec.phi, spec.b, coeffs)
    elif mode is Mode.IID:
        parts = propagate_iid(law, coeffs)
    else:
        parts = propagate_markov(law, coeffs)
    return IncrementDistribution(n, *parts, mode)


def law_distribution(law, gamma, depth):
    """Exact law of ``sum_{m<=depth} gamma**m Y_m`` for a two-point or ternary law."""
    if isinstance(law, IIDTwoPointLaw):
        mode = Mode.IID
        fn = propagate_iid
    else:
        mode = Mode.MARKOV
        fn = propagate_markov
    check_budget(f"{mode.value} distribution at depth {depth}",
                 _atoms_needed(mode, 2, depth), DISTRIBUTION_BUDGET)
    coeffs = float(gamma) ** np.arange(1, depth + 1)
    return IncrementDistribution(depth, *fn(law, coeffs), mode)


def expected_abs_power(dist, p):
    if p < 0:
        raise ValueError("p must be non-negative")
    return fsum(dist.probabilities * np.abs(dist.values) ** p)


def expected_power(dist, k):
    return fsum(dist.probabilities * dist.values ** int(k))


def increment_law_value(spec, p, n, mode=Mode.GENERIC):
    """Partition sum ``V_{p,1,n}(f)`` computed through the increment law."""
    if n == 0:
        return 0.0
    dist = exact_partial_sum_distribution(spec, n, mode)
    return (abs(spec.alpha) ** p * spec.b) ** n * expected_abs_power(dist, p)


# Monte Carlo

@dataclass(frozen=True)
class MCResult:
    estimate: float
    std_error: float
    samples: int
    depth: int


def default_depth(bound, gamma, resolution=1e-6):
    """Smallest N with ``bound * |gamma|**(N+1) / (1-|gamma|) <= resolution``."""
    g = abs(gamma)
    if not 0 < g < 1:
        raise RegimeError(f"|gamma| must lie in (0, 1), got {g}")
    if bound == 0:
        return 1
    n = math.log(resolution * (1 - g) / bound) / math.log(g) - 1
    return max(1, math.ceil(n))


def _iid_sampler(law):
    mu, nu, p = float(law.mu), float(law.nu), float(law.p)

    def draw(rng, size, depth):
        if law.b is not None:
            hit = rng.integers(0, law.b, size=(size, depth)) < law.ell
        else:
            hit = rng.random((size, depth)) < p
        return np.where(hit, nu, mu)

    return draw


def _markov_sampler(law):
    b = law.b
    centre = (b - 1) // 2

    def draw(rng, size, depth):
        u = rng.integers(0, b, size=(size, depth))
        y = np.empty((size, depth))
        prev = np.zeros(size)
        # Y_m compares R_m with (b**m - 1)/2 digit by digit from U_m down
        for m in range(depth):
            prev = np.where(u[:, m] < centre, 1.0, np.where(u[:, m] > centre, -1.0, prev))
            y[:, m] = prev
        return y * law.scale

    return draw


def _generic_sampler(phi, b):
    def draw(rng, size, depth):
        u = rng.integers(0, b, size=(size, depth))
        y = np.empty((size, depth))
        x = np.zeros(size)
        h = 1.0
        for m in range(depth):
            h /= b
            x = (x + u[:, m]) / b  # x = R_m b**-m
            y[:, m] = phi.slope_at(x, h)
        return y

    return draw


def _sampler_for(spec):
    law = law_for(spec.phi, spec.b)
    if isinstance(law, IIDTwoPointLaw):
        return _iid_sampler(law), law.bound
    if isinstance(law, MarkovTernaryLaw):
        return _markov_sampler(law), law.bound
    return _generic_sampler(spec.phi, spec.b), spec.phi.lipschitz_constant


def mc_from_sampler(draw, gamma, p, signed, depth, samples, seed, chunk_size=1 << 16):
    """Sample mean and standard error of ``|S|**p`` (or ``S**p`` when signed).

    Chunk c uses the c-th child of ``SeedSequence(seed)``; chunk moments are
    combined in index order, so the result is fixed by (seed, samples,
    chunk_size).
    """
    if samples < 2:
        raise ValueError("need at least two samples")
    coeffs = float(gamma) ** np.arange(1, depth + 1)
    n_chunks = -(-samples // chunk_size)
    seqs = np.random.SeedSequence(seed).spawn(n_chunks)
    s1, s2 = [], []
    for c, seq in enumerate(seqs):
        size = min(chunk_size, samples - c * chunk_size)
        rng = np.random.Generator(np.random.PCG64(seq))
        s = draw(rng, size, depth) @ coeffs
        v = s ** int(p) if signed else np.abs(s) ** p
        s1.append(fsum(v))
        s2.append(fsum(v * v))
    mean = math.fsum(s1) / samples
    var = (math.fsum(s2) - samples * mean * mean) / (samples - 1)
    return MCResult(mean, math.sqrt(max(var, 0.0) / samples), samples, depth)


def mc_estimate(spec, p, signed=False, depth=None, samples=10**6, seed=0,
                chunk_size=1 << 16, resolution=1e-6):
    """Monte Carlo estimate of ``E|Z|**p`` (or ``E[Z**p]`` when signed)."""
    if abs(spec.alpha) * spec.b <= 1:
        raise RegimeError(
            f"Monte Carlo needs |alpha| > 1/b; got alpha={spec.alpha}, b={spec.b}")
    if signed and (int(p) != p or p < 1):
        raise ValueError("signed moments need a positive integer exponent")
    draw, bound = _sampler_for(spec)
    if depth is None:
        depth = default_depth(bound, spec.gamma, resolution)
    return mc_from_sampler(draw, spec.gamma, p, signed, depth, samples, seed, chunk_size)


def mc_law_estimate(law, gamma, p, signed=False, depth=None, samples=10**6, seed=0,
                    chunk_size=1 << 16, resolution=1e-6):
    """Monte Carlo for a bare two-point or ternary law with ratio gamma."""
    if isinstance(law, IIDTwoPointLaw):
        draw = _iid_sampler(law)
    else:
        draw = _markov_sampler(law)
    if depth is None:
        depth = default_depth(law.bound, gamma, resolution)
    return mc_from_sampler(draw, gamma, p, signed, depth, samples, seed, chunk_size)


# Exact enumeration of the increment process over uniform R_m

def enumerate_increments(phi, b, m):
    """``[(Y_1, .., Y_m)]`` for every R_m in 0..b**m - 1, in exact arithmetic."""
    check_budget(f"increment enumeration at m={m}", b**m, DISTRIBUTION_BUDGET)
    tables = [[lambda_coeff(phi, b, j, k) for k in range(b**j)] for j in range(1, m + 1)]
    return [tuple(tables[j - 1][r % b**j] for j in range(1, m + 1)) for r in range(b**m)]


def enumerated_marginal(phi, b, m):
    """Law of Y_m under uniform R_m, as exact fractions."""
    counts = Counter(path[-1] for path in enumerate_increments(phi, b, m))
    return {y: Fraction(c, b**m) for y, c in counts.items()}


def enumerated_transitions(phi, b, m):
    """Conditional frequencies ``P[Y_m = y | Y_{m-1} = x]`` keyed by (x, y)."""
    if m < 2:
        raise ValueError("transitions need m >= 2")
    paths = enumerate_increments(phi, b, m)
    pairs = Counter((path[-2], path[-1]) for path in paths)
    prev = Counter(path[-2] for path in paths)
    return {(x, y): Fraction(c, prev[x]) for (x, y), c in pairs.items()}
