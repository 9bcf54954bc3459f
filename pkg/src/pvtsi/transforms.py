"""Periodizing variable transformations psi: [alpha, beta] -> [a, b].

Every map is built from a normalized ``psi_hat: [0, 1] -> [0, 1]`` with
``psi_hat(0) = 0``, ``psi_hat(1) = 1``, ``psi_hat(1 - u) = 1 - psi_hat(u)``
and ``r`` derivatives vanishing at both ends, and then lifted affinely::

    psi(xi) = a + (b - a) * psi_hat((xi - alpha) / (beta - alpha))

Kinds (CLI names in parentheses):

* ``rational`` -- u^p / (u^p + (1-u)^p)
* ``tangent``  -- sin^p(pi u/2) / (sin^p(pi u/2) + cos^p(pi u/2))
* ``tanh``     -- (1 + tanh(c (1/(1-u) - 1/u))) / 2, all derivatives vanish
* ``korobov``  -- normalized integral of [u(1-u)]^(p-1)
* ``sinp``     -- normalized integral of sin^(p-1)(pi u)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from . import jets
from .errors import (
    NonintegrableEndpointError,
    SolverError,
    ValidationError,
)
from .jets import Jet

KINDS = ("rational", "tangent", "tanh", "korobov", "sinp")

TAU_TOL = 1e-14
NEWTON_MAX_ITER = 100


@dataclass(frozen=True)
class IntervalMap:
    """Target interval (a, b) and parameter interval (alpha, beta)."""

    a: float = 0.0
    b: float = 1.0
    alpha: float = 0.0
    beta: float = 1.0

    def __post_init__(self):
        if not self.a < self.b:
            raise ValidationError(f"need a < b, got a={self.a}, b={self.b}")
        if not self.alpha < self.beta:
            raise ValidationError(f"need alpha < beta, got {self.alpha}, {self.beta}")

    @property
    def period(self) -> float:
        return self.beta - self.alpha

    @property
    def width(self) -> float:
        return self.b - self.a


@dataclass(frozen=True)
class PeriodizingTransform:
    kind: str = "rational"
    p: float = 10.0
    c: float = 1.0

    def __post_init__(self):
        kind = self.kind
        if kind not in KINDS:
            raise ValidationError(f"unknown transform kind {kind!r}; choose from {KINDS}")
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "c", float(self.c))
        if kind == "tanh":
            if not self.c > 0:
                raise ValidationError(f"tanh transform needs c > 0, got {self.c}")
        elif not self.p > 1:
            raise ValidationError(f"{kind} transform needs p > 1, got {self.p}")

    @property
    def smoothness(self) -> float:
        """Number r of derivatives of psi_hat vanishing at 0 and 1."""
        if self.kind == "tanh":
            return math.inf
        return int(math.ceil(self.p)) - 1

    @property
    def label(self) -> str:
        if self.kind == "tanh":
            return f"tanh(c={self.c:g})"
        return f"{self.kind}(p={self.p:g})"

    # -- normalized map on floats / arrays ------------------------------

    def psi_hat(self, u):
        u = np.asarray(u, dtype=float)
        v = 1.0 - u
        p = self.p
        with np.errstate(over="ignore", under="ignore", divide="ignore", invalid="ignore"):
            if self.kind == "rational":
                up, vp = u**p, v**p
                out = up / (up + vp)
            elif self.kind == "tangent":
                sp = np.sin(0.5 * np.pi * u) ** p
                cp = np.sin(0.5 * np.pi * v) ** p
                out = sp / (sp + cp)
            elif self.kind == "tanh":
                z = self.c * (1.0 / v - 1.0 / u)
                out = special.expit(2.0 * z)
            elif self.kind == "korobov":
                out = np.where(
                    u <= 0.5, special.betainc(p, p, u), special.betaincc(p, p, v)
                )
            else:
                w = np.minimum(u, v)
                half = _sinp_half(w, p)
                out = np.where(u <= 0.5, half, 1.0 - half)
        out = np.where(u <= 0.0, 0.0, np.where(v <= 0.0, 1.0, out))
        return out[()] if out.ndim == 0 else out

    def psi_hat_prime(self, u):
        u = np.asarray(u, dtype=float)
        v = 1.0 - u
        p = self.p
        with np.errstate(over="ignore", under="ignore", divide="ignore", invalid="ignore"):
            if self.kind == "rational":
                up, vp = u**p, v**p
                out = p * u ** (p - 1) * v ** (p - 1) / (up + vp) ** 2
            elif self.kind == "tangent":
                s = np.sin(0.5 * np.pi * u)
                cc = np.sin(0.5 * np.pi * v)
                out = 0.5 * np.pi * p * s ** (p - 1) * cc ** (p - 1) / (s**p + cc**p) ** 2
            elif self.kind == "tanh":
                z = self.c * (1.0 / v - 1.0 / u)
                dz = self.c * (1.0 / v**2 + 1.0 / u**2)
                out = 2.0 * special.expit(2.0 * z) * special.expit(-2.0 * z) * dz
            elif self.kind == "korobov":
                out = (u * v) ** (p - 1) / special.beta(p, p)
            else:
                w = np.minimum(u, v)
                out = np.pi * np.sin(np.pi * w) ** (p - 1) / special.beta(0.5 * p, 0.5)
        out = np.where((u <= 0.0) | (v <= 0.0), 0.0, np.nan_to_num(out, nan=0.0, posinf=0.0))
        return out[()] if out.ndim == 0 else out

    def psi_hat_jet(self, u0: float, K: int) -> Jet:
        """Jet of psi_hat in the normalized variable u about ``u0``."""
        if not 0.0 < u0 < 1.0:
            raise ValidationError(f"jet point must lie in (0, 1), got {u0}")
        p = self.p
        if self.kind in ("korobov", "sinp"):
            value = float(self.psi_hat(u0))
            if K == 0:
                return jets.constant(value, u0, 0)
            du = jets.lift(u0, K - 1)
            if self.kind == "korobov":
                deriv = jets.power(du * (1.0 - du), p - 1) / special.beta(p, p)
            else:
                deriv = math.pi * jets.power(jets.sin(math.pi * du), p - 1) / special.beta(0.5 * p, 0.5)
            return jets.antiderivative(deriv, value)
        if u0 > 0.5:
            # mirror psi_hat(u) = 1 - psi_hat(1 - u) so the tiny derivatives near
            # u = 1 come from the side where they carry full relative precision
            mirrored = self._direct_jet(1.0 - u0, K).coeffs
            coeffs = -mirrored * (-1.0) ** np.arange(K + 1)
            coeffs[0] = 1.0 - mirrored[0]
            return Jet(u0, coeffs)
        return self._direct_jet(u0, K)

    def _direct_jet(self, u0: float, K: int) -> Jet:
        p = self.p
        u = jets.lift(u0, K)
        v = 1.0 - u
        if self.kind == "rational":
            up, vp = jets.power(u, p), jets.power(v, p)
            return up / (up + vp)
        if self.kind == "tangent":
            sp = jets.power(jets.sin(0.5 * math.pi * u), p)
            cp = jets.power(jets.cos(0.5 * math.pi * u), p)
            return sp / (sp + cp)
        # logistic form of (1 + tanh z)/2; z <= 0 on this half, so nothing cancels
        e = jets.exp(2.0 * self.c * (1.0 / v - 1.0 / u))
        return e / (1.0 + e)

    # -- affinely lifted map ---------------------------------------------

    def psi(self, xi, M: IntervalMap):
        return M.a + M.width * self.psi_hat((np.asarray(xi, dtype=float) - M.alpha) / M.period)

    def psi_prime(self, xi, M: IntervalMap):
        u = (np.asarray(xi, dtype=float) - M.alpha) / M.period
        return (M.width / M.period) * self.psi_hat_prime(u)


def _sinp_half(w, p):
    """psi_hat for the sin^(p-1) kind on 0 <= w <= 1/2."""
    # int_0^{pi w} sin^(p-1) = B(sin^2(pi w); p/2, 1/2) / 2; switch to the
    # complementary argument near w = 1/2 where 1 - sin^2 would cancel
    s2 = np.sin(np.pi * w) ** 2
    c2 = np.cos(np.pi * w) ** 2
    low = 0.5 * special.betainc(0.5 * p, 0.5, s2)
    high = 0.5 * (1.0 - special.betainc(0.5, 0.5 * p, c2))
    return np.where(s2 <= 0.5, low, high)


def make_transform(kind: str, p: float | None = None, c: float | None = None) -> PeriodizingTransform:
    """Build a transform from its CLI name, filling in the default shape parameter."""
    return PeriodizingTransform(kind, 10.0 if p is None else p, 1.0 if c is None else c)


def transform_jet(T: PeriodizingTransform, M: IntervalMap, xi0: float, K: int) -> Jet:
    """Jet of psi about ``xi0``; coefficient 1 is psi'(xi0) > 0."""
    if not M.alpha < xi0 < M.beta:
        raise ValidationError(f"xi0={xi0} is outside the open interval ({M.alpha}, {M.beta})")
    u0 = (xi0 - M.alpha) / M.period
    hat = T.psi_hat_jet(u0, K)
    scale = M.width / M.period ** np.arange(K + 1)
    coeffs = hat.coeffs * scale
    coeffs[0] = M.a + M.width * hat.coeffs[0]
    return Jet(xi0, coeffs)


def transform_smoothness(T: PeriodizingTransform) -> float:
    return T.smoothness


def _tau_hat_closed_form(T: PeriodizingTransform, th: float) -> float:
    if T.kind == "rational":
        x, y = th ** (1.0 / T.p), (1.0 - th) ** (1.0 / T.p)
        return x / (x + y)
    if T.kind == "tangent":
        lam = (th / (1.0 - th)) ** (1.0 / T.p)
        return 2.0 / math.pi * math.atan(lam)
    lam = math.log(th / (1.0 - th)) / (2.0 * T.c)
    root = math.sqrt(lam * lam + 4.0)
    if lam > 0:
        return (root + lam - 2.0) / (2.0 * lam)
    return 2.0 / (root - lam + 2.0)


def _newton_bisect(T: PeriodizingTransform, th: float, u: float) -> float:
    """Safeguarded Newton for psi_hat(u) = th on [0, 1]."""
    lo, hi = 0.0, 1.0
    for _ in range(NEWTON_MAX_ITER):
        f = float(T.psi_hat(u)) - th
        if abs(f) <= TAU_TOL:
            return u
        if f < 0:
            lo = u
        else:
            hi = u
        d = float(T.psi_hat_prime(u))
        step = u - f / d if d > 0 else math.nan
        u = step if lo < step < hi else 0.5 * (lo + hi)
        if hi - lo <= 4 * np.spacing(u):
            break
    f = float(T.psi_hat(u)) - th
    if abs(f) <= TAU_TOL:
        return u
    raise SolverError(f"could not solve psi_hat(u) = {th} for {T.label}; residual {f:.3e}")


def transform_tau(T: PeriodizingTransform, M: IntervalMap, t: float) -> float:
    """Solve psi(tau) = t for tau in (alpha, beta)."""
    if not M.a < t < M.b:
        raise ValidationError(f"t={t} is outside the open interval ({M.a}, {M.b})")
    th = (t - M.a) / M.width
    if T.kind in ("rational", "tangent", "tanh"):
        uh = _tau_hat_closed_form(T, th)
        if abs(float(T.psi_hat(uh)) - th) > TAU_TOL:
            uh = _newton_bisect(T, th, uh)
    else:
        uh = _newton_bisect(T, th, th)
    if not 0.0 < uh < 1.0:
        raise SolverError(f"tau for t={t} collapsed onto an endpoint under {T.label}")
    return M.alpha + M.period * uh


def predict_q(r: float, c: float = 0.0) -> float:
    """Order q of the vanishing of F at the endpoints.

    ``r`` is the transform smoothness, ``c`` the exponent of the algebraic
    endpoint behaviour g ~ (x - a)^c.  A result below 1 means the periodic
    extension is not even continuous at beta.
    """
    if not c > -1:
        raise NonintegrableEndpointError(
            f"endpoint exponent c={c} <= -1 is not integrable; the transformed singularity is worse"
        )
    if math.isinf(r):
        return math.inf
    if c == 0 or (c > 0 and float(c).is_integer()):
        return r
    return math.ceil(c * (r + 1) + r)

