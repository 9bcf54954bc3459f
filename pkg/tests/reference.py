"""Extended-precision references shared by the test modules."""

import mpmath


def mp_psi_hat(kind, p=10.0, c=1.0):
    """Normalized transform written directly in mpmath, independent of pvtsi."""
    p = mpmath.mpf(p)
    c = mpmath.mpf(c)

    def rational(u):
        return u**p / (u**p + (1 - u) ** p)

    def tangent(u):
        s, co = mpmath.sin(mpmath.pi * u / 2), mpmath.cos(mpmath.pi * u / 2)
        return s**p / (s**p + co**p)

    def tanh(u):
        return (1 + mpmath.tanh(c * (1 / (1 - u) - 1 / u))) / 2

    def korobov(u):
        return mpmath.betainc(p, p, 0, u, regularized=True)

    def sinp(u):
        # half of the regularized incomplete beta in sin^2; mirrored past u = 1/2
        if u > mpmath.mpf(1) / 2:
            return 1 - sinp(1 - u)
        return mpmath.betainc(p / 2, mpmath.mpf(1) / 2, 0, mpmath.sin(mpmath.pi * u) ** 2, regularized=True) / 2

    return {"rational": rational, "tangent": tangent, "tanh": tanh, "korobov": korobov, "sinp": sinp}[kind]


def fd_derivative(f, x0, k, dps=40, h="1e-10"):
    """k-th central difference of f at x0, carried out in ``dps``-digit arithmetic."""
    with mpmath.workdps(dps):
        return float(mpmath.diff(f, mpmath.mpf(x0), k, method="step", h=mpmath.mpf(h)))


def mp_value(f, x0, dps=40):
    with mpmath.workdps(dps):
        return float(f(mpmath.mpf(x0)))
