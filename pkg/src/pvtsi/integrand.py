"""Singular integrands f(x) = g(x)/(x - t)^m and their periodized transforms.

``g`` must be *generic*: written with arithmetic and the functions in
:mod:`pvtsi.jets`, so that the same callable accepts floats, numpy arrays
and :class:`~pvtsi.jets.Jet` objects.  Jets supply every derivative of g
at the pole that the correction terms need.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import jets
from .errors import EndpointEvaluationError, PoleEvaluationError, SolverError, ValidationError
from .jets import Jet
from .transforms import IntervalMap, PeriodizingTransform, predict_q, transform_jet, transform_tau

ENDPOINT_GUARD = 1e-15
BETA_COLLISION = 1e-14


@dataclass(frozen=True)
class SingularIntegrand:
    """f(x) = g(x) / (x - t)^m on (a, b) with a < t < b.

    ``endpoint_exponent`` is the exponent c of the algebraic endpoint
    behaviour g ~ (x - a)^c, (b - x)^c; it only feeds :func:`predict_q`.
    """

    g: Callable
    t: float
    m: int
    a: float = 0.0
    b: float = 1.0
    endpoint_exponent: float = 0.0
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise ValidationError(f"pole order m must be a positive integer, got {self.m}")
        object.__setattr__(self, "m", int(self.m))
        if not self.a < self.t < self.b:
            raise ValidationError(f"need a < t < b, got a={self.a}, t={self.t}, b={self.b}")
        if not self.endpoint_exponent > -1:
            raise ValidationError(
                f"endpoint exponent {self.endpoint_exponent} <= -1: g is not integrable at the ends"
            )

    def f(self, x):
        x = np.asarray(x, dtype=float)
        return self.g(x) / (x - self.t) ** self.m

    def g_jet(self, K: int) -> Jet:
        """Jet of g about the pole t."""
        out = self.g(jets.lift(self.t, K))
        if not isinstance(out, Jet):
            # g ignored its argument (a constant)
            out = jets.constant(float(out), self.t, K)
        return out


@dataclass(frozen=True)
class TransformedIntegrand:
    """F(xi) = f(psi(xi)) psi'(xi) on (alpha, beta), pole at tau."""

    source: SingularIntegrand
    transform: PeriodizingTransform
    interval: IntervalMap
    tau: float
    G_jet: Jet

    @property
    def m(self) -> int:
        return self.source.m

    @property
    def period(self) -> float:
        return self.interval.period

    @property
    def q(self) -> float:
        return predict_q(self.transform.smoothness, self.source.endpoint_exponent)

    def psi(self, xi):
        return self.transform.psi(xi, self.interval)

    def psi_prime(self, xi):
        return self.transform.psi_prime(xi, self.interval)

    def F_values(self, xi) -> np.ndarray:
        """Vectorized F on points of (alpha, beta); no guards."""
        xi = np.asarray(xi, dtype=float)
        x = self.psi(xi)
        dpsi = self.psi_prime(xi)
        src = self.source
        with np.errstate(all="ignore"):
            val = src.g(x) * dpsi / (x - src.t) ** src.m
        # psi' underflows to 0 next to the endpoints while g may blow up there
        return np.where(dpsi == 0.0, 0.0, val)

    def periodic_values(self, xi) -> np.ndarray:
        """Vectorized periodic extension on points of (tau, tau + period)."""
        xi = np.asarray(xi, dtype=float)
        M = self.interval
        hit = np.abs(xi - M.beta) <= BETA_COLLISION * M.period
        if np.any(hit) and not self.q >= 1:
            raise EndpointEvaluationError("periodic extension is undefined at beta when q < 1")
        wrapped = np.where(xi > M.beta, xi - M.period, xi)
        vals = self.F_values(np.where(hit, 0.5 * (M.alpha + M.beta), wrapped))
        return np.where(hit, 0.0, vals)


def build_transformed(
    src: SingularIntegrand,
    T: PeriodizingTransform,
    M: IntervalMap | None = None,
    order: int | None = None,
) -> TransformedIntegrand:
    """Periodize ``src`` with ``T`` and precompute tau and the jet of G."""
    if M is None:
        M = IntervalMap(src.a, src.b)
    elif (M.a, M.b) != (src.a, src.b):
        raise ValidationError(f"interval map targets ({M.a}, {M.b}) but integrand lives on ({src.a}, {src.b})")
    tau = transform_tau(T, M, src.t)
    K = min(src.m + 2, jets.MAX_ORDER - 1) if order is None else order
    return TransformedIntegrand(src, T, M, tau, _G_jet(src, T, M, tau, K))


def _G_jet(src: SingularIntegrand, T: PeriodizingTransform, M: IntervalMap, tau: float, K: int) -> Jet:
    if K + 1 > jets.MAX_ORDER:
        raise ValidationError(f"G jet order {K} needs a psi jet beyond the cap {jets.MAX_ORDER}")
    P = transform_jet(T, M, tau, K + 1)
    if not P.coeffs[1] > 0:
        # t sits so close to an end that psi' underflows at tau
        raise SolverError(f"psi'(tau) = {P.coeffs[1]} is not positive; move t away from the endpoints")
    k = np.arange(1, K + 2)
    # difference quotient psi[xi, tau] has Taylor coefficients P_{k+1}
    Q = Jet(tau, P.coeffs[1:])
    dpsi = Jet(tau, k * P.coeffs[1:])
    inner = Jet(tau, np.concatenate(([src.t], P.coeffs[1 : K + 1])))
    g_of_psi = jets.compose(src.g_jet(K), inner)
    return g_of_psi * dpsi / jets.power(Q, src.m)


def G_jet_at_tau(ti: TransformedIntegrand, K: int) -> Jet:
    """Jet of G(xi) = (xi - tau)^m F(xi) about tau, to order K."""
    if K <= ti.G_jet.order:
        return ti.G_jet.truncate(K)
    return _G_jet(ti.source, ti.transform, ti.interval, ti.tau, K)


def F_eval(ti: TransformedIntegrand, xi: float) -> float:
    """F(xi) for a single point of (alpha, beta), refusing the pole and endpoints."""
    M = ti.interval
    if not M.alpha < xi < M.beta:
        raise EndpointEvaluationError(f"xi={xi} is not inside ({M.alpha}, {M.beta})")
    if min(xi - M.alpha, M.beta - xi) < ENDPOINT_GUARD * M.period:
        raise EndpointEvaluationError(f"xi={xi} is too close to an endpoint")
    if xi == ti.tau:
        raise PoleEvaluationError(f"F has a pole of order {ti.m} at tau={ti.tau}")
    return float(ti.F_values(xi))


def periodic_F_eval(ti: TransformedIntegrand, xi: float) -> float:
    """Periodic extension of F on (tau, tau + period)."""
    M = ti.interval
    if not ti.tau < xi < ti.tau + M.period:
        raise ValidationError(f"xi={xi} is outside ({ti.tau}, {ti.tau + M.period})")
    if abs(xi - M.beta) <= BETA_COLLISION * M.period:
        if ti.q >= 1:
            return 0.0
        raise EndpointEvaluationError("periodic extension is undefined at beta when q < 1")
    if xi > M.beta:
        return F_eval(ti, xi - M.period)
    return F_eval(ti, xi)

