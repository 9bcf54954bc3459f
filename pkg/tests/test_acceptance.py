"""Acceptance gate: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py`` (the lines are printed in the
terminal summary) or directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from pvtsi.integrand import SingularIntegrand, build_transformed  # noqa: E402
from pvtsi.oracle import EXAMPLE_NAMES, example_library, hfp_closed_form, hfp_of_one  # noqa: E402
from pvtsi.quadrature import (  # noqa: E402
    RuleConfig,
    extrapolation_coeffs,
    hfp_estimate,
    max_level,
    richardson_ladder,
    t_hat_0,
    t_hat_mid,
    zeta_even,
)
from pvtsi.transforms import KINDS, PeriodizingTransform  # noqa: E402
from reference import fd_derivative, mp_psi_hat, mp_value  # noqa: E402

RESULTS: dict[int, tuple[bool, str, str]] = {}

P10 = PeriodizingTransform("rational", 10)


def rel(a, b):
    return abs(a - b) / abs(b)


def criterion_1():
    """Printed values reproduced by T^(1) at n=256, rational p=10."""
    worst = {}
    ok = True
    for name in EXAMPLE_NAMES:
        case = example_library(name)
        ti = build_transformed(case.integrand, P10)
        err = rel(hfp_estimate(ti, RuleConfig(case.m, 1, 256)).value, case.printed_value)
        tol = 1e-10 if case.m <= 2 else 1e-8
        ok &= err <= tol
        worst[name] = err
    return ok, ", ".join(f"{k}={v:.1e}" for k, v in worst.items())


def criterion_2():
    """Mean empirical order over n = 32..256 for poly_m1, rational p=5, s=0."""
    case = example_library("poly_m1")
    ti = build_transformed(case.integrand, PeriodizingTransform("rational", 5))
    ns = [32, 64, 128, 256]
    errs = np.array([rel(t_hat_0(ti, n).value, case.printed_value) for n in ns])
    orders = np.log2(errs[:-1] / errs[1:])
    return orders.mean() >= 3.5, f"orders {np.round(orders, 2).tolist()}, mean {orders.mean():.2f} (need >= 3.5)"


def criterion_3():
    """Transform invariance at n=512, s=1."""
    case = example_library("poly_m1")
    vals = {}
    for T in (P10, PeriodizingTransform("tangent", 10), PeriodizingTransform("tanh", c=1)):
        vals[T.label] = hfp_estimate(build_transformed(case.integrand, T), RuleConfig(1, 1, 512)).value
    spread = max(rel(a, b) for a, b in itertools.permutations(vals.values(), 2))
    return spread <= 1e-8, f"max pairwise relative difference {spread:.1e}"


def criterion_4():
    """Ladder vs closed-form midpoint rules, m=1..4, every level, six examples, n=8,16,32."""
    worst = 0.0
    worst_literal = 0.0
    for name in EXAMPLE_NAMES:
        case = example_library(name)
        for m in range(1, 5):
            ti = build_transformed(case.integrand_at(0.3, m), P10)
            for s in range(1, max_level(m) + 1):
                for n in (8, 16, 32):
                    mid = t_hat_mid(ti, s, n).value
                    worst = max(worst, rel(hfp_estimate(ti, RuleConfig(m, s, n)).value, mid))
                    worst_literal = max(worst_literal, rel(richardson_ladder(ti, s, n), mid))
    return worst <= 1e-13, (
        f"estimator ladder worst {worst:.1e}; literal sum of base rules worst {worst_literal:.1e} (informational)"
    )


def criterion_5():
    """zeta constants and exact extrapolation coefficients."""
    z = [
        abs(zeta_even(0) + 0.5),
        abs(zeta_even(2) - math.pi**2 / 6) / (math.pi**2 / 6),
        abs(zeta_even(4) - math.pi**4 / 90) / (math.pi**4 / 90),
    ]
    coeffs_ok = (
        extrapolation_coeffs(1) == (Fraction(-1), Fraction(2))
        and extrapolation_coeffs(2) == (Fraction(-2), Fraction(5), Fraction(-2))
        and extrapolation_coeffs(3) == (Fraction(-16, 7), Fraction(6), Fraction(-3), Fraction(2, 7))
        and all(isinstance(c, Fraction) for s in (1, 2, 3) for c in extrapolation_coeffs(s))
    )
    return max(z) <= 1e-15 and coeffs_ok, f"zeta errors {max(z):.1e}, coefficient sets exact: {coeffs_ok}"


def criterion_6():
    """Oracle against the g = 1 formulas and the six printed values."""
    rng = np.random.default_rng(2024)
    worst_one = 0.0
    for _ in range(50):
        t = rng.uniform(0.02, 0.98)
        m = int(rng.integers(1, 5))
        got = hfp_closed_form(SingularIntegrand(lambda x: 1.0 + 0.0 * x, t, m))
        want = hfp_of_one(m, t)
        worst_one = max(worst_one, abs(got - want) / max(abs(want), 1e-300))
    worst_printed = max(
        rel(hfp_closed_form(example_library(n).integrand), example_library(n).printed_value) for n in EXAMPLE_NAMES
    )
    ok = worst_one <= 1e-12 and worst_printed <= 1e-11
    return ok, f"g=1 identities worst {worst_one:.1e}; printed values worst {worst_printed:.1e}"


def criterion_7():
    """Transform jets vs extended-precision central differences, orders <= 4, 100 points per kind."""
    rng = np.random.default_rng(7)
    worst = 0.0
    for kind in KINDS:
        T = PeriodizingTransform(kind, 10.0, 1.0)
        f = mp_psi_hat(kind, 10.0, 1.0)
        for u in rng.uniform(0.01, 0.99, 100):
            J = T.psi_hat_jet(u, 4)
            worst = max(worst, rel(J.coeffs[0], mp_value(f, u)))
            for k in range(1, 5):
                worst = max(worst, rel(J.derivative(k), fd_derivative(f, u, k)))
    return worst <= 1e-6, f"worst relative mismatch {worst:.1e} over 5 kinds x 100 points x orders 0..4"


def criterion_8():
    """poly_m3 at double precision: the error curve bottoms out and stops improving."""
    case = example_library("poly_m3")
    ti = build_transformed(case.integrand, P10)
    ns = [2**k for k in range(1, 14)]
    errs = np.array([rel(hfp_estimate(ti, RuleConfig(3, 1, n)).value, case.printed_value) for n in ns])
    k = int(np.argmin(errs))
    ok = k <= len(ns) - 3 and errs[k] < 1e-8 and np.all(errs[k + 1 : k + 3] >= errs[k])
    return ok, f"minimum {errs[k]:.1e} at n={ns[k]}; next two doublings {errs[k + 1]:.1e}, {errs[k + 2]:.1e}"


CRITERIA = {
    1: ("exact-value reproduction", criterion_1),
    2: ("convergence order", criterion_2),
    3: ("transform invariance", criterion_3),
    4: ("ladder/midpoint identity", criterion_4),
    5: ("constants", criterion_5),
    6: ("oracle identities", criterion_6),
    7: ("jet engine", criterion_7),
    8: ("roundoff floor", criterion_8),
}


def format_line(i: int) -> str:
    ok, title, detail = RESULTS[i]
    return f"criterion {i} {'PASS' if ok else 'FAIL'} [{title}] {detail}"


@pytest.mark.parametrize("i", list(CRITERIA))
def test_criterion(i):
    title, check = CRITERIA[i]
    ok, detail = check()
    RESULTS[i] = (bool(ok), title, detail)
    print(format_line(i))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for i, (title, check) in CRITERIA.items():
        ok, detail = check()
        RESULTS[i] = (bool(ok), title, detail)
        failed += not ok
        print(format_line(i))
    sys.exit(1 if failed else 0)
