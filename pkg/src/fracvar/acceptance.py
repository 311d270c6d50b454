"""Exit checks for the package, shared by the test-suite and ``fracvar selftest``.

Each check returns one or more :class:`Check` results; tolerances are fixed
here and nowhere else.
"""

from __future__ import annotations

import io
import math
import time
from contextlib import redirect_stdout
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .analysis import DEFAULT_H_GRID, hurst_sweep, variation_slope
from .base_functions import Degenerate, Sine, SkewedTent, Tent
from .fractal import FractalSpec
from .increments import (
    Mode,
    enumerated_marginal,
    enumerated_transitions,
    exact_partial_sum_distribution,
    expected_power,
    iid_params,
    increment_law_value,
    markov_params,
    mc_estimate,
)
from .moments import moments_recursive
from .variation import partition_sum, signed_partition_sum

EXPECTED_E3_B3_L1 = Fraction(27, 256)
EXPECTED_E3_B6_L5 = Fraction(-875, 6912)


@dataclass(frozen=True)
class Check:
    criterion: str
    passed: bool
    detail: str

    def line(self):
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.criterion}: {self.detail}"


def _rel(a, b):
    return abs(a - b) / abs(b) if b else abs(a - b)


def closed_form_e3(b, ell):
    return Fraction(b**3 * (b - 2 * ell), 8 * (b * b - 1) * ell**2 * (b - ell) ** 2)


def skew_moments(b, ell, K, sign=1):
    law = iid_params(b, ell)
    gamma = sign * float(b) ** (-2 / 3)
    return moments_recursive(float(law.mu), float(law.nu), float(law.p), gamma, K)


def criterion_1():
    out = []
    for label, b, ell, target in (("1a", 3, 1, EXPECTED_E3_B3_L1), ("1b", 6, 5, EXPECTED_E3_B6_L5)):
        value = skew_moments(b, ell, 3)[3]
        err = _rel(value, float(target))
        out.append(Check(f"{label} E[Z^3] b={b} l={ell}", err <= 1e-12,
                         f"recursion={value!r} expected={target} rel.err={err:.3g} (tol 1e-12)"))
    best = math.inf
    for _ in range(50):
        t0 = time.perf_counter()
        skew_moments(3, 1, 3)
        best = min(best, time.perf_counter() - t0)
    out.append(Check("1c moment recursion runtime", best < 1e-3, f"{best * 1e3:.4f} ms (< 1 ms)"))
    return out


def criterion_2():
    worst = 0.0
    for b in range(2, 9):
        for ell in range(1, b):
            value = skew_moments(b, ell, 3)[3]
            exact = float(closed_form_e3(b, ell))
            err = _rel(value, exact) if exact else abs(value)
            worst = max(worst, err)
    return [Check("2 closed-form k=3 family, b<=8", worst <= 1e-12,
                  f"max rel.err={worst:.3g} (tol 1e-12)")]


def criterion_3():
    t0 = time.perf_counter()
    worst = 0.0
    count = 0
    for b in (2, 3):
        phis = (Tent(), SkewedTent(b, 1), Sine(0.5))
        for phi in phis:
            for a in (0.45, 0.7, -0.45, -0.7):
                if abs(a) * b <= 1:
                    continue
                spec = FractalSpec(phi, b, a)
                for p in (1, 2, 3, 4.5):
                    for n in range(1, 9):
                        direct = partition_sum(spec, p, 1, n)
                        via_law = increment_law_value(spec, p, n)
                        worst = max(worst, abs(via_law - direct) / max(1.0, abs(direct)))
                        count += 1
    elapsed = time.perf_counter() - t0
    return [Check("3 increment-law identity suite", worst <= 1e-9 and elapsed < 30,
                  f"{count} cases, max scaled err={worst:.3g} (tol 1e-9), {elapsed:.2f} s (< 30 s)")]


def criterion_4():
    spec = FractalSpec(SkewedTent(3, 1), 3, 3 ** (-1 / 3))
    v10 = signed_partition_sum(spec, 3, 1, 10)
    # depth-10 oracle: E[S_10^3] from the i.i.d. law, scale factor is exactly 1
    oracle = expected_power(exact_partial_sum_distribution(spec, 10, Mode.IID), 3)
    err = abs(v10 - float(EXPECTED_E3_B3_L1))
    same = abs(v10 - oracle) <= 1e-12
    return [Check("4 signed variation b=3 l=1 -> 27/256", err <= 5e-3 and same,
                  f"V3,10={v10!r}, |diff|={err:.3g} (tol 5e-3); law oracle={oracle!r}")]


def criterion_5():
    spec = FractalSpec(Tent(), 2, 2 ** (-1 / 3))
    worst = max(abs(signed_partition_sum(spec, 3, 1, n)) for n in range(1, 13))
    return [Check("5 symmetric vanishing b=2 tent", worst <= 1e-10,
                  f"max |V3,n| n<=12 = {worst:.3g} (tol 1e-10)")]


def criterion_6():
    spec = FractalSpec(SkewedTent(3, 1), 3, -(3 ** (-1 / 3)))
    vals = {n: signed_partition_sum(spec, 3, 1, n) for n in range(3, 11)}
    signs = [np.sign(vals[n]) for n in range(3, 9)]
    alternates = all(s != 0 for s in signs) and all(
        signs[i] == -signs[i + 1] for i in range(len(signs) - 1))
    limit = skew_moments(3, 1, 3, sign=-1)[3]
    err = abs((-1) ** 10 * vals[10] - limit)
    return [Check("6 oscillation b=3 l=1 alpha<0", alternates and err <= 5e-3,
                  f"signs n=3..8 {[int(s) for s in signs]}, (-1)^10 V3,10={vals[10]!r}"
                  f" vs recursion {limit!r}, |diff|={err:.3g} (tol 5e-3)")]


def criterion_7():
    ok = True
    for b in (3, 5):
        law = markov_params(b)
        states = (-1, 0, 1)
        marg = enumerated_marginal(Tent(), b, 1)
        ok &= all(marg.get(s, 0) == law.initial[i] for i, s in enumerate(states))
        for m in range(2, 7):
            freq = enumerated_transitions(Tent(), b, m)
            for i, x in enumerate(states):
                for j, y in enumerate(states):
                    ok &= freq.get((x, y), Fraction(0)) == law.transition[i][j]
    return [Check("7 Markov chain law, exact rationals", ok, "b in {3,5}, m <= 6")]


def criterion_8():
    takagi = FractalSpec(Tent(), 2, 0.5)
    v12, v6 = partition_sum(takagi, 2, 1, 12), partition_sum(takagi, 2, 1, 6)
    a = Check("8a Takagi V2,1,12 < 0.5 V2,1,6", v12 < 0.5 * v6, f"{v12:.6g} < {0.5 * v6:.6g}")

    bv = FractalSpec(Tent(), 2, 0.25)
    seq = [partition_sum(bv, 1, 1, n) for n in range(1, 13)]
    cap = bv.phi.lipschitz_constant / (1 - abs(bv.alpha) * bv.b)
    mono = all(x <= y + 1e-15 for x, y in zip(seq, seq[1:]))
    b_ = Check("8b bounded variation case", mono and seq[-1] <= cap,
               f"nondecreasing={mono}, V1,1,12={seq[-1]:.6g} <= C/(1-|alpha|b)={cap:.6g}")

    rough = FractalSpec(Tent(), 2, 2 ** (-1 / 3))
    slope = variation_slope(rough, "enumeration", depth=20).slope
    worst = max(_rel(partition_sum(rough, 3, 1, n), slope) for n in range(8, 13))
    c = Check("8c rough case V3,1,n within 2% of slope", worst <= 0.02,
              f"slope={slope:.6g}, max rel.dev n=8..12 = {worst:.3g} (tol 0.02)")
    return [a, b_, c]


def criterion_9():
    rough = FractalSpec(Tent(), 2, 2 ** (-1 / 3))
    full = partition_sum(rough, 3, 1, 10)
    worst = max(abs(partition_sum(rough, 3, t, 10) - t * full) / full
                for t in (0.25, 0.5, 0.75))
    return [Check("9 linearity in t", worst <= 0.05, f"max rel.dev={worst:.3g} (tol 0.05)")]


def criterion_10():
    alpha = 0.7
    spec = FractalSpec(Degenerate(Sine(1.0), alpha, 2), 2, alpha)
    top = exact_partial_sum_distribution(spec, 12).max_abs()
    q = spec.q_exponent
    seq = [partition_sum(spec, q, 1, n) for n in range(4, 11)]
    dec = all(y < x for x, y in zip(seq, seq[1:]))
    return [
        Check("10a degenerate max|S_12| <= 1e-9", top <= 1e-9, f"max|S_12|={top:.6g}"),
        Check("10b degenerate V_q,1,n decreasing n=4..10", dec,
              f"q={q:.6g}, V={[f'{v:.4g}' for v in seq]}"),
    ]


def criterion_11():
    out = []
    cases = (
        ("b=3 l=1", FractalSpec(SkewedTent(3, 1), 3, 3 ** (-1 / 3)), skew_moments(3, 1, 3)[3], None),
        ("b=6 l=5", FractalSpec(SkewedTent(6, 5), 6, 6 ** (-1 / 3)), skew_moments(6, 5, 3)[3], None),
    )
    for label, spec, exact, depth in cases:
        res = mc_estimate(spec, 3, signed=True, depth=depth, samples=10**6, seed=0)
        z = abs(res.estimate - exact) / res.std_error
        out.append(Check(f"11a MC E[Z^3] {label} vs recursion", z <= 4,
                         f"mc={res.estimate:.6g}+-{res.std_error:.2g}, exact={exact:.6g}, {z:.2f} se"))
    spec = cases[0][1]
    v10 = signed_partition_sum(spec, 3, 1, 10)
    res = mc_estimate(spec, 3, signed=True, depth=10, samples=10**6, seed=1)
    z = abs(res.estimate - v10) / res.std_error
    out.append(Check("11b MC depth-10 vs exact V3,10", z <= 4,
                     f"mc={res.estimate:.6g}+-{res.std_error:.2g}, V3,10={v10:.6g}, {z:.2f} se"))

    from .cli import run

    argv = ["slope", "--phi", "skewed:l=1", "--b", "3", "--alpha", "b^(-1/3)",
            "--method", "mc", "--samples", "200000", "--seed", "7"]
    outputs = []
    for _ in range(2):
        buf = io.StringIO()
        with redirect_stdout(buf):
            code = run(argv)
        outputs.append((code, buf.getvalue().encode()))
    same = outputs[0] == outputs[1] and outputs[0][0] == 0
    out.append(Check("11c fixed seed reproduces CSV bytes", same, f"{len(outputs[0][1])} bytes"))
    return out


def criterion_sweep():
    out = []
    panels = (("left 5*tent", Tent(5.0)), ("right sine/2", Sine(0.5)))
    for label, phi in panels:
        failures = []
        for b in (2, 3, 4, 5):
            rows = hurst_sweep(phi, b, DEFAULT_H_GRID, "enumeration", atoms=1 << 16)
            failures += [(b, r.H, r.failure) for r in rows
                         if r.failure or not (np.isfinite(r.slope) and r.slope > 0)]
        out.append(Check(f"12 sweep {label}, b=2..5", not failures,
                         f"{len(DEFAULT_H_GRID)} H values per b, failures={failures}"))
    return out


CRITERIA = (
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
    criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_sweep,
)


def run_all(stream=None):
    checks = []
    for crit in CRITERIA:
        for check in crit():
            checks.append(check)
            print(check.line(), file=stream, flush=True)
    return checks
