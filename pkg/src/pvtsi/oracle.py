"""Independent reference values for HFP integrals.

:func:`hfp_closed_form` splits off the Taylor polynomial of g at the pole,
whose finite part is known exactly, and integrates the smooth remainder
with ordinary adaptive quadrature.  It shares nothing with the
periodized rules beyond the jet engine, so agreement between the two is
a meaningful check.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate

from . import jets
from .errors import OracleError, ValidationError
from .integrand import SingularIntegrand

CANCELLATION_FRACTION = 0.1
ORACLE_TOL = 1e-13
QUAD_LIMIT = 500
ORACLE_ACCEPT = 1e-11


# -- Chebyshev polynomials -------------------------------------------------------


def chebyshev_eval(kind: str, k: int, z):
    """T_k(z), U_k(z) or U_k'(z) by the three-term recurrence.

    ``z`` may be a float, an array or a jet.
    """
    if k < 0:
        raise ValidationError(f"Chebyshev degree must be non-negative, got {k}")
    if kind == "T":
        prev, cur = 1.0, z
        if k == 0:
            return 1.0 + 0.0 * z
    elif kind in ("U", "dU", "U'"):
        prev, cur = 1.0, 2.0 * z
        dprev, dcur = 0.0, 2.0 + 0.0 * z
        if k == 0:
            return (1.0 + 0.0 * z) if kind == "U" else 0.0 * z
    else:
        raise ValidationError(f"unknown Chebyshev kind {kind!r}; use 'T', 'U' or 'dU'")
    for _ in range(k - 1):
        if kind != "T":
            # d/dz of U_{j+1} = 2 z U_j - U_{j-1}
            dprev, dcur = dcur, 2.0 * cur + 2.0 * z * dcur - dprev
        prev, cur = cur, 2.0 * z * cur - prev
    if kind in ("dU", "U'"):
        return dcur
    return cur


# -- closed-form decomposition ------------------------------------------------------


def _finite_part_terms(coeffs: np.ndarray, m: int, a: float, b: float, t: float) -> float:
    """Exact finite part of the Taylor polynomial sum_{i<m} c_i (x-t)^(i-m) over (a, b)."""
    total = coeffs[m - 1] * math.log(abs((b - t) / (a - t)))
    for i in range(m - 1):
        j = m - i - 1
        total += coeffs[i] / j * (1.0 / (a - t) ** j - 1.0 / (b - t) ** j)
    return total


def hfp_closed_form(
    src: SingularIntegrand,
    quad_order: int | None = None,
    *,
    tol: float = ORACLE_TOL,
    full_output: bool = False,
):
    """Finite-part integral of g/(x-t)^m on (a, b) via the Taylor split.

    ``quad_order`` is the jet order used for g at the pole (default: the
    jet cap); it must be at least m + 4.  Near t the remainder w is
    evaluated from the jet tail, elsewhere directly.  With ``full_output``
    the quadrature's own error estimate is returned alongside the value.
    """
    m, a, b, t = src.m, src.a, src.b, src.t
    K = jets.MAX_ORDER if quad_order is None else int(quad_order)
    if K < m + 4 or K > jets.MAX_ORDER:
        raise ValidationError(f"quad_order must lie in {m + 4}..{jets.MAX_ORDER}, got {K}")
    c = src.g_jet(K).coeffs
    if not np.all(np.isfinite(c)):
        raise OracleError(f"g has no finite Taylor expansion of order {K} at t={t}")

    radius = CANCELLATION_FRACTION * min(t - a, b - t)
    tail = c[m:]

    def w(x: float) -> float:
        d = x - t
        poly = np.polynomial.polynomial.polyval(d, c[:m])
        return float((src.g(x) - poly) / d**m)

    # near part: integrate the tail series term by term; odd powers cancel
    near = sum(2.0 * tail[j] * radius ** (j + 1) / (j + 1) for j in range(0, tail.size, 2))

    exact = _finite_part_terms(c, m, a, b, t)
    scale = max(1.0, abs(exact), abs(near))
    far = 0.0
    err = 0.0
    for lo, hi in ((a, t - radius), (t + radius, b)):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", integrate.IntegrationWarning)
            val, e = integrate.quad(w, lo, hi, epsabs=tol * scale, epsrel=tol, limit=QUAD_LIMIT)
        # quadpack also warns when the remainder is pure roundoff noise; only a
        # large error estimate means the integration really failed
        if not math.isfinite(val) or (caught and e > ORACLE_ACCEPT * scale):
            msg = caught[0].message if caught else "non-finite value"
            raise OracleError(f"adaptive integration of the regular part failed on ({lo}, {hi}): {msg}")
        far += val
        err += e

    value = float(near + far + exact)
    return (value, err) if full_output else value


def hfp_of_one(m: int, t: float, a: float = 0.0, b: float = 1.0) -> float:
    """Finite part of the integral of (x - t)^(-m) over (a, b)."""
    if m == 1:
        return math.log(abs((b - t) / (a - t)))
    j = m - 1
    return (1.0 / (a - t) ** j - 1.0 / (b - t) ** j) / j


# -- example library -----------------------------------------------------------------

CHEB_DEGREE = 4


def _cheb_g(x):
    return jets.sqrt(x * (1.0 - x)) * chebyshev_eval("U", CHEB_DEGREE, 2.0 * x - 1.0)


def _poly_g(x):
    return 1.0 + x - x * x


def _cheb_m1(t):
    return -0.5 * math.pi * chebyshev_eval("T", CHEB_DEGREE + 1, 2 * t - 1)


def _cheb_m2(t):
    return -math.pi * (CHEB_DEGREE + 1) * chebyshev_eval("U", CHEB_DEGREE, 2 * t - 1)


def _cheb_m3(t):
    return -math.pi * (CHEB_DEGREE + 1) * chebyshev_eval("dU", CHEB_DEGREE, 2 * t - 1)


def _poly_m1(t):
    return 0.5 - t + (1 + t - t * t) * math.log((1 - t) / t)


def _poly_m2(t):
    s = t * (1 - t)
    return -1 - (1 + t - t * t) / s + (1 - 2 * t) * math.log((1 - t) / t)


def _poly_m3(t):
    s = t * (1 - t)
    return (1 + t - t * t) * (1 - 2 * t) / (2 * s * s) - (1 - 2 * t) / s - math.log((1 - t) / t)


@dataclass(frozen=True)
class ExampleCase:
    name: str
    g: Callable
    m: int
    exact_value_at: Callable[[float], float]
    citation: str
    printed: str
    endpoint_exponent: float = 0.0
    t_printed: float = 0.3

    @property
    def integrand(self) -> SingularIntegrand:
        return self.integrand_at(self.t_printed)

    @property
    def printed_value(self) -> float:
        return float(self.printed)

    def integrand_at(self, t: float, m: int | None = None) -> SingularIntegrand:
        """The case's g with a pole at t; ``m`` swaps in another pole order."""
        return SingularIntegrand(
            self.g, t, self.m if m is None else m, endpoint_exponent=self.endpoint_exponent, name=self.name
        )


_LIBRARY = {
    "cheb_m1": ExampleCase(
        "cheb_m1", _cheb_g, 1, _cheb_m1, "sqrt(x(1-x)) U_4(2x-1), principal value",
        "1.38833262547440142794141136393888", endpoint_exponent=0.5,
    ),
    "cheb_m2": ExampleCase(
        "cheb_m2", _cheb_g, 2, _cheb_m2, "sqrt(x(1-x)) U_4(2x-1), hypersingular",
        "8.01734445196115234455666591412929", endpoint_exponent=0.5,
    ),
    "cheb_m3": ExampleCase(
        "cheb_m3", _cheb_g, 3, _cheb_m3, "sqrt(x(1-x)) U_4(2x-1), supersingular",
        "-86.4566298267911099224919459078519", endpoint_exponent=0.5,
    ),
    "poly_m1": ExampleCase(
        "poly_m1", _poly_g, 1, _poly_m1, "1 + x - x^2, principal value", "1.22523041106851637258923008288999"
    ),
    "poly_m2": ExampleCase(
        "poly_m2", _poly_g, 2, _poly_m2, "1 + x - x^2, hypersingular", "-6.42298561774988045927786175929650"
    ),
    "poly_m3": ExampleCase(
        "poly_m3", _poly_g, 3, _poly_m3, "1 + x - x^2, supersingular", "2.73546857952209343844408750481721"
    ),
}

EXAMPLE_NAMES = tuple(_LIBRARY)


def example_library(name: str) -> ExampleCase:
    try:
        return _LIBRARY[name]
    except KeyError:
        raise ValidationError(f"unknown example {name!r}; choose from {', '.join(EXAMPLE_NAMES)}") from None
