"""Corrected trapezoidal rules for the periodized HFP integral.

The base rule for pole order m with n panels, h = T/n, is::

    T0(n) = h * sum_{j=1}^{n-1} F(tau + j h) - C_m(h)

where C_m collects the zeta-weighted Taylor coefficients of G at tau.
Higher rules T^(s) come from s Richardson steps on n, 2n, ..., 2^s n that
remove h^1, h^-1, h^-3, ... in that order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ValidationError
from .integrand import TransformedIntegrand
from .jets import Jet

SUMMATION_MODES = ("pairwise", "compensated")
MAX_BERNOULLI_INDEX = 64
MAX_LADDER = 8


# -- constants ---------------------------------------------------------------


@lru_cache(maxsize=None)
def _bernoulli_table(n_max: int) -> tuple[Fraction, ...]:
    # sum_{j=0}^{n} C(n+1, j) B_j = 0
    B = [Fraction(1)]
    for n in range(1, n_max + 1):
        acc = sum(math.comb(n + 1, j) * B[j] for j in range(n))
        B.append(-acc / (n + 1))
    return tuple(B)


def bernoulli_even(k: int, exact: bool = False):
    """B_{2k}; a float unless ``exact`` asks for the Fraction."""
    if not 0 <= k <= MAX_BERNOULLI_INDEX // 2:
        raise ValidationError(f"B_(2k) is available for 0 <= 2k <= {MAX_BERNOULLI_INDEX}, got k={k}")
    value = _bernoulli_table(MAX_BERNOULLI_INDEX)[2 * k]
    return value if exact else float(value)


def zeta_even(j: int) -> float:
    """Riemann zeta at an even integer: zero at negative evens, closed form otherwise."""
    if int(j) != j or j % 2:
        raise ValidationError(f"zeta_even needs an even integer, got {j}")
    j = int(j)
    if not -MAX_BERNOULLI_INDEX <= j <= MAX_BERNOULLI_INDEX:
        raise ValidationError(f"zeta_even argument {j} is out of range")
    if j < 0:
        return 0.0
    k = j // 2
    # zeta(2k) = (-1)^(k+1) (2 pi)^(2k) B_2k / (2 (2k)!)
    ratio = (-1) ** (k + 1) * bernoulli_even(k, exact=True) * 2**j / (2 * math.factorial(j))
    return float(ratio) * math.pi**j


@dataclass(frozen=True)
class CorrectionTerm:
    derivative: int
    coefficient: float
    power: int


@lru_cache(maxsize=None)
def correction_terms(m: int) -> tuple[CorrectionTerm, ...]:
    """Terms 2 zeta(2r-2i) G^(d)(tau)/d! h^(2i-2r+1) subtracted from the trapezoidal sum.

    Even m = 2r uses d = 2i, odd m = 2r+1 uses d = 2i+1, i = 0..r; the
    vanishing of zeta at negative even integers truncates the sum there.
    """
    if m < 1:
        raise ValidationError(f"pole order must be positive, got {m}")
    r, odd = divmod(m, 2)
    return tuple(
        CorrectionTerm(2 * i + odd, 2.0 * zeta_even(2 * r - 2 * i), -2 * r + 2 * i + 1)
        for i in range(r + 1)
    )


def correction_sum(m: int, G_jet: Jet, h: float) -> float:
    """C_m(h) built from Taylor coefficients G^(d)(tau)/d! of the regular part."""
    if not h > 0:
        raise ValidationError(f"step h must be positive, got {h}")
    terms = correction_terms(m)
    if G_jet.order < terms[-1].derivative:
        raise ValidationError(f"G jet of order {G_jet.order} cannot supply derivative {terms[-1].derivative}")
    return sum(c.coefficient * G_jet.coeffs[c.derivative] * h**c.power for c in terms)


# -- summation ---------------------------------------------------------------


def node_sum(values: np.ndarray, summation: str = "pairwise") -> float:
    """Sum node values with a fixed, scheduling-independent order."""
    if summation == "pairwise":
        return float(np.sum(values))
    if summation == "compensated":
        return math.fsum(values)
    raise ValidationError(f"unknown summation mode {summation!r}; choose from {SUMMATION_MODES}")


def _interior_nodes(tau: float, h: float, n: int) -> np.ndarray:
    return tau + np.arange(1, n) * h


def _midpoint_nodes(tau: float, h: float, n: int) -> np.ndarray:
    return tau + (np.arange(1, n + 1) - 0.5) * h


# -- rules -------------------------------------------------------------------


@dataclass(frozen=True)
class RuleConfig:
    m: int
    s: int = 0
    n: int = 64
    summation: str = "pairwise"

    def __post_init__(self):
        if self.m < 1:
            raise ValidationError(f"pole order must be positive, got {self.m}")
        if not 0 <= self.s <= max_level(self.m):
            raise ValidationError(
                f"extrapolation level s={self.s} must lie in 0..{max_level(self.m)} for m={self.m}"
            )
        if self.n < 2:
            raise ValidationError(f"need at least n=2 panels, got {self.n}")
        if self.summation not in SUMMATION_MODES:
            raise ValidationError(f"unknown summation mode {self.summation!r}")


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    n: int
    h: float
    m: int
    s: int
    node_evals: int


def max_level(m: int) -> int:
    return (m + 2) // 2


def t_hat_0(ti: TransformedIntegrand, n: int, summation: str = "pairwise") -> QuadratureResult:
    """Base corrected trapezoidal rule with n panels."""
    if n < 2:
        raise ValidationError(f"need at least n=2 panels, got {n}")
    h = ti.period / n
    vals = ti.periodic_values(_interior_nodes(ti.tau, h, n))
    value = h * node_sum(vals, summation) - correction_sum(ti.m, ti.G_jet, h)
    return QuadratureResult(value, n, h, ti.m, 0, n - 1)


# (m, level) -> ((coef of h, midpoint sub-level), ...), ((derivative order, constant, power of h), ...)
# Midpoint sub-level l sums F(tau + (j - 1/2) h / 2^l) over j = 1..2^l n.
_PI2, _PI4 = math.pi**2, math.pi**4
MIDPOINT_RULES: dict[tuple[int, int], tuple[tuple, tuple]] = {
    (1, 1): (((Fraction(1), 0),), ()),
    (2, 1): (((Fraction(1), 0),), ((0, -_PI2, -1),)),
    (2, 2): (((Fraction(2), 0), (Fraction(-1, 2), 1)), ()),
    (3, 1): (((Fraction(1), 0),), ((1, -_PI2, -1),)),
    (3, 2): (((Fraction(2), 0), (Fraction(-1, 2), 1)), ()),
    (4, 1): (((Fraction(1), 0),), ((0, -_PI4 / 3, -3), (2, -_PI2 / 2, -1))),
    (4, 2): (((Fraction(2), 0), (Fraction(-1, 2), 1)), ((0, 2 * _PI4, -3),)),
    (4, 3): (((Fraction(16, 7), 0), (Fraction(-5, 7), 1), (Fraction(1, 28), 2)), ()),
}


def t_hat_mid(
    ti: TransformedIntegrand, level: int, n: int, summation: str = "pairwise"
) -> QuadratureResult:
    """Closed-form midpoint rules for m <= 4 and every extrapolation level.

    Constants multiply derivatives G^(d)(tau) themselves, not Taylor coefficients.
    """
    rule = MIDPOINT_RULES.get((ti.m, level))
    if rule is None:
        raise ValidationError(f"no closed-form midpoint rule for m={ti.m}, level={level}")
    if n < 1:
        raise ValidationError(f"need n >= 1, got {n}")
    sums, corrections = rule
    h = ti.period / n
    value = 0.0
    evals = 0
    for coef, sub in sums:
        hs = h / 2**sub
        vals = ti.periodic_values(_midpoint_nodes(ti.tau, hs, 2**sub * n))
        value += float(coef) * h * node_sum(vals, summation)
        evals += vals.size
    for d, const, power in corrections:
        value += const * ti.G_jet.derivative(d) * h**power
    return QuadratureResult(value, n, h, ti.m, level, evals)


@lru_cache(maxsize=None)
def extrapolation_exponents(s: int) -> tuple[int, ...]:
    """Powers of h removed by successive steps: 1, -1, -3, ..."""
    return tuple(1 if k == 0 else -(2 * k - 1) for k in range(s))


@lru_cache(maxsize=None)
def extrapolation_coeffs(s: int) -> tuple[Fraction, ...]:
    """Weights alpha_k with T^(s)(n) = sum_k alpha_k T0(2^k n); they sum to one."""
    if not 0 <= s <= MAX_LADDER:
        raise ValidationError(f"extrapolation level must lie in 0..{MAX_LADDER}, got {s}")
    coeffs = [Fraction(1)]
    for e in extrapolation_exponents(s):
        # T_new(n) = (T(2n) - 2^-e T(n)) / (1 - 2^-e)
        r = Fraction(2) ** (-e)
        shifted = [Fraction(0)] + coeffs
        padded = coeffs + [Fraction(0)]
        coeffs = [(b - r * a) / (1 - r) for a, b in zip(padded, shifted)]
    return tuple(coeffs)


def ladder_weights(s: int) -> tuple[tuple[Fraction, ...], dict[int, Fraction]]:
    """Per-node-class weights (in units of h) and per-power correction factors.

    Class 0 holds the n-panel interior nodes; class l >= 1 holds the
    midpoints of the 2^(l-1) n grid, which first appear at level l.
    """
    alpha = extrapolation_coeffs(s)
    node_w = tuple(
        sum((alpha[k] / 2**k for k in range(cls, s + 1)), Fraction(0)) for cls in range(s + 1)
    )
    return node_w, alpha


def hfp_estimate(ti: TransformedIntegrand, cfg: RuleConfig) -> QuadratureResult:
    """T^(s) with n base panels, evaluating each node of the finest grid once."""
    if cfg.m != ti.m:
        raise ValidationError(f"rule is for m={cfg.m} but the integrand has m={ti.m}")
    if cfg.s == 0:
        return t_hat_0(ti, cfg.n, cfg.summation)
    n, s = cfg.n, cfg.s
    h = ti.period / n
    node_w, alpha = ladder_weights(s)
    value = 0.0
    evals = 0
    for cls, w in enumerate(node_w):
        if w == 0:
            continue
        if cls == 0:
            nodes = _interior_nodes(ti.tau, h, n)
        else:
            sub = cls - 1
            nodes = _midpoint_nodes(ti.tau, h / 2**sub, 2**sub * n)
        vals = ti.periodic_values(nodes)
        value += float(w) * h * node_sum(vals, cfg.summation)
        evals += vals.size
    for term in correction_terms(ti.m):
        # sum_k alpha_k (h / 2^k)^P; exactly zero for the powers already removed
        factor = sum((a * Fraction(2) ** (-k * term.power) for k, a in enumerate(alpha)), Fraction(0))
        if factor:
            value -= float(factor) * term.coefficient * ti.G_jet.coeffs[term.derivative] * h**term.power
    return QuadratureResult(value, n, h, ti.m, s, evals)


def richardson_ladder(ti: TransformedIntegrand, s: int, n: int, summation: str = "pairwise") -> float:
    """Literal sum_k alpha_k T0(2^k n), one base rule per level."""
    alpha = extrapolation_coeffs(s)
    return sum(float(a) * t_hat_0(ti, 2**k * n, summation).value for k, a in enumerate(alpha))
