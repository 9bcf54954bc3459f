"""Truncated Taylor-series ("jet") arithmetic.

A :class:`Jet` of order ``K`` about ``center`` stores the normalized Taylor
coefficients ``c_k = u^(k)(center) / k!`` for ``k = 0..K``.  Arithmetic
propagates all of them at once, so any function written with ``+ - * /``,
``**`` and the elementary functions exported here can be differentiated to
order ``K`` by calling it on :func:`lift` ``(x0, K)``.

The module-level elementary functions (:func:`exp`, :func:`sqrt`, ...) also
accept plain floats and numpy arrays, in which case they defer to numpy.
That lets one user callable serve both the quadrature nodes and the jets.
"""

from __future__ import annotations

import math
from numbers import Real

import numpy as np

from .errors import JetDivisionError, JetDomainError, JetMismatchError

MAX_ORDER = 16

ELEMENTARY_KINDS = ("exp", "log", "sin", "cos", "tan", "tanh", "sqrt", "pow")


class Jet:
    """Truncated Taylor expansion of a scalar function about ``center``."""

    __slots__ = ("center", "coeffs")
    # keep numpy scalars from broadcasting over a Jet; defer to our reflected ops
    __array_ufunc__ = None

    def __init__(self, center: float, coeffs):
        c = np.array(coeffs, dtype=float).ravel()
        if c.size == 0:
            raise ValueError("a jet needs at least one coefficient")
        if c.size - 1 > MAX_ORDER:
            raise ValueError(f"jet order {c.size - 1} exceeds the cap {MAX_ORDER}")
        self.center = float(center)
        self.coeffs = c

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @property
    def value(self) -> float:
        return float(self.coeffs[0])

    def derivative(self, k: int) -> float:
        """Return the k-th derivative ``k! * c_k``."""
        return float(self.coeffs[k]) * math.factorial(k)

    def derivatives(self) -> np.ndarray:
        fact = np.array([math.factorial(k) for k in range(self.order + 1)], dtype=float)
        return self.coeffs * fact

    def truncate(self, order: int) -> Jet:
        if order > self.order:
            raise JetMismatchError(f"cannot raise jet order {self.order} to {order}")
        return Jet(self.center, self.coeffs[: order + 1])

    def __repr__(self) -> str:
        return f"Jet(center={self.center!r}, coeffs={self.coeffs.tolist()!r})"

    def __len__(self) -> int:
        return self.coeffs.size

    def __getitem__(self, k):
        return self.coeffs[k]

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> Jet | None:
        if isinstance(other, Jet):
            _check_compatible(self, other)
            return other
        if isinstance(other, (Real, np.floating, np.integer)):
            return constant(float(other), self.center, self.order)
        return None

    def __neg__(self) -> Jet:
        return Jet(self.center, -self.coeffs)

    def __pos__(self) -> Jet:
        return self

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Jet(self.center, self.coeffs + o.coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Jet(self.center, self.coeffs - o.coeffs)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Jet(self.center, o.coeffs - self.coeffs)

    def __mul__(self, other):
        if isinstance(other, (Real, np.floating, np.integer)):
            return Jet(self.center, self.coeffs * float(other))
        if isinstance(other, Jet):
            return mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (Real, np.floating, np.integer)):
            if other == 0:
                raise JetDivisionError("division of a jet by zero")
            return Jet(self.center, self.coeffs / float(other))
        if isinstance(other, Jet):
            return div(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return div(o, self)

    def __pow__(self, exponent):
        if isinstance(exponent, Jet):
            return exp(exponent * log(self))
        if not isinstance(exponent, (Real, np.floating, np.integer)):
            return NotImplemented
        return power(self, float(exponent))

    def __rpow__(self, base):
        if not isinstance(base, (Real, np.floating, np.integer)):
            return NotImplemented
        if base <= 0:
            raise JetDomainError("real base of a jet exponent must be positive")
        return exp(self * math.log(base))


def _check_compatible(u: Jet, v: Jet) -> None:
    if u.center != v.center:
        raise JetMismatchError(f"jet centers differ: {u.center!r} vs {v.center!r}")
    if u.order != v.order:
        raise JetMismatchError(f"jet orders differ: {u.order} vs {v.order}")


def _check_order(K: int) -> None:
    if K < 0:
        raise ValueError("jet order must be non-negative")
    if K > MAX_ORDER:
        raise ValueError(f"jet order {K} exceeds the cap {MAX_ORDER}")


def lift(x0: float, K: int) -> Jet:
    """Jet of the identity function at ``x0``: ``(x0, 1, 0, ..., 0)``."""
    _check_order(K)
    c = np.zeros(K + 1)
    c[0] = x0
    if K >= 1:
        c[1] = 1.0
    return Jet(x0, c)


jet_lift_variable = lift


def constant(value: float, center: float, K: int) -> Jet:
    _check_order(K)
    c = np.zeros(K + 1)
    c[0] = value
    return Jet(center, c)


def mul(u: Jet, v: Jet) -> Jet:
    """Cauchy product truncated at the common order."""
    _check_compatible(u, v)
    K = u.order
    return Jet(u.center, np.convolve(u.coeffs, v.coeffs)[: K + 1])


def div(u: Jet, v: Jet) -> Jet:
    """Power-series quotient ``u / v``; requires ``v_0 != 0``."""
    _check_compatible(u, v)
    v0 = v.coeffs[0]
    if v0 == 0.0:
        raise JetDivisionError("jet division by a series with zero constant term")
    a, b = u.coeffs, v.coeffs
    w = np.zeros_like(a)
    for k in range(a.size):
        w[k] = (a[k] - np.dot(b[1 : k + 1], w[:k][::-1])) / v0
    return Jet(u.center, w)


def _scaled(u: Jet) -> np.ndarray:
    # k * u_k, used by every first-order ODE recurrence below
    return np.arange(u.coeffs.size) * u.coeffs


def _exp(u: Jet) -> Jet:
    a = u.coeffs
    du = _scaled(u)
    w = np.zeros_like(a)
    w[0] = math.exp(a[0])
    for k in range(1, a.size):
        w[k] = np.dot(du[1 : k + 1], w[:k][::-1]) / k
    return Jet(u.center, w)


def _log(u: Jet) -> Jet:
    a = u.coeffs
    if not a[0] > 0:
        raise JetDomainError(f"log of a jet with constant term {a[0]!r}")
    w = np.zeros_like(a)
    w[0] = math.log(a[0])
    dw = np.zeros_like(a)
    for k in range(1, a.size):
        # u * w' = u'  =>  k w_k u_0 = k u_k - sum_{j=1}^{k-1} j w_j u_{k-j}
        s = np.dot(dw[1:k], a[k - 1 : 0 : -1]) if k > 1 else 0.0
        w[k] = (k * a[k] - s) / (k * a[0])
        dw[k] = k * w[k]
    return Jet(u.center, w)


def _sincos(u: Jet) -> tuple[Jet, Jet]:
    a = u.coeffs
    du = _scaled(u)
    s = np.zeros_like(a)
    c = np.zeros_like(a)
    s[0], c[0] = math.sin(a[0]), math.cos(a[0])
    for k in range(1, a.size):
        s[k] = np.dot(du[1 : k + 1], c[:k][::-1]) / k
        c[k] = -np.dot(du[1 : k + 1], s[:k][::-1]) / k
    return Jet(u.center, s), Jet(u.center, c)


def _tan_like(u: Jet, sign: float, f0: float) -> Jet:
    # w' = (1 + sign * w^2) u'
    a = u.coeffs
    du = _scaled(u)
    w = np.zeros_like(a)
    v = np.zeros_like(a)
    w[0] = f0
    v[0] = 1.0 + sign * f0 * f0
    for k in range(1, a.size):
        w[k] = np.dot(du[1 : k + 1], v[:k][::-1]) / k
        v[k] = sign * np.dot(w[: k + 1], w[k::-1])
    return Jet(u.center, w)


def _sqrt(u: Jet) -> Jet:
    a = u.coeffs
    if not a[0] > 0:
        raise JetDomainError(f"sqrt of a jet with constant term {a[0]!r}")
    w = np.zeros_like(a)
    w[0] = math.sqrt(a[0])
    for k in range(1, a.size):
        s = np.dot(w[1:k], w[k - 1 : 0 : -1]) if k > 1 else 0.0
        w[k] = (a[k] - s) / (2.0 * w[0])
    return Jet(u.center, w)


def _int_power(u: Jet, n: int) -> Jet:
    if n < 0:
        if u.coeffs[0] == 0.0:
            raise JetDivisionError("negative power of a jet with zero constant term")
        return div(constant(1.0, u.center, u.order), _int_power(u, -n))
    result = constant(1.0, u.center, u.order)
    base = u
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result


def _jet_power(u: Jet, e: float) -> Jet:
    if float(e).is_integer():
        return _int_power(u, int(e))
    if not u.coeffs[0] > 0:
        raise JetDomainError(f"non-integer power of a jet with constant term {u.coeffs[0]!r}")
    return _exp(e * _log(u))


def elementary(kind: str, u: Jet, exponent: float | None = None) -> Jet:
    """Apply one of :data:`ELEMENTARY_KINDS` to a jet."""
    if kind == "exp":
        return _exp(u)
    if kind == "log":
        return _log(u)
    if kind == "sin":
        return _sincos(u)[0]
    if kind == "cos":
        return _sincos(u)[1]
    if kind == "tan":
        return _tan_like(u, 1.0, math.tan(u.coeffs[0]))
    if kind == "tanh":
        return _tan_like(u, -1.0, math.tanh(u.coeffs[0]))
    if kind == "sqrt":
        return _sqrt(u)
    if kind == "pow":
        if exponent is None:
            raise ValueError("pow needs an exponent")
        return _jet_power(u, exponent)
    raise ValueError(f"unknown elementary kind {kind!r}")


jet_elementary = elementary


def compose(outer: Jet, inner: Jet) -> Jet:
    """Taylor coefficients of ``outer o inner``.

    ``outer`` is expanded about ``inner``'s constant term; the result is
    expanded about ``inner.center``.
    """
    if outer.order != inner.order:
        raise JetMismatchError(f"jet orders differ: {outer.order} vs {inner.order}")
    if outer.center != inner.coeffs[0]:
        raise JetMismatchError(
            f"outer jet is centered at {outer.center!r} but inner value is {inner.coeffs[0]!r}"
        )
    d = inner.coeffs.copy()
    d[0] = 0.0
    shift = Jet(inner.center, d)
    acc = constant(outer.coeffs[-1], inner.center, inner.order)
    for c in outer.coeffs[-2::-1]:
        acc = mul(acc, shift) + float(c)
    return acc


jet_compose = compose


def antiderivative(du: Jet, value: float) -> Jet:
    """Jet (one order higher) whose derivative is ``du`` and value is ``value``."""
    k = np.arange(1, du.coeffs.size + 1)
    return Jet(du.center, np.concatenate(([value], du.coeffs / k)))


# -- scalar/array/jet dispatch -----------------------------------------------


def exp(x):
    return _exp(x) if isinstance(x, Jet) else np.exp(x)


def log(x):
    return _log(x) if isinstance(x, Jet) else np.log(x)


def sin(x):
    return elementary("sin", x) if isinstance(x, Jet) else np.sin(x)


def cos(x):
    return elementary("cos", x) if isinstance(x, Jet) else np.cos(x)


def tan(x):
    return elementary("tan", x) if isinstance(x, Jet) else np.tan(x)


def tanh(x):
    return elementary("tanh", x) if isinstance(x, Jet) else np.tanh(x)


def sqrt(x):
    return _sqrt(x) if isinstance(x, Jet) else np.sqrt(x)


def power(x, e: float):
    return _jet_power(x, float(e)) if isinstance(x, Jet) else np.power(x, e)
