import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pvtsi import jets
from pvtsi.errors import JetDivisionError, JetDomainError, JetMismatchError
from pvtsi.jets import Jet


def test_lift():
    assert np.array_equal(jets.lift(3, 2).coeffs, [3, 1, 0])
    assert np.array_equal(jets.lift(0, 0).coeffs, [0])
    assert np.array_equal(jets.lift(0.5, 4).coeffs, [0.5, 1, 0, 0, 0])


def test_mul_examples():
    assert np.allclose(jets.mul(Jet(0, [1, 1, 0]), Jet(0, [1, -1, 0])).coeffs, [1, 0, -1])
    x = jets.lift(2.0, 3)
    assert np.allclose((x * (x * x)).coeffs, [8, 12, 6, 1])
    u = Jet(0.4, [1.5, -2.0, 0.25])
    assert np.array_equal((u * jets.constant(1.0, 0.4, 2)).coeffs, u.coeffs)


def test_div_examples():
    u = Jet(0, [2.0, 3.0, -1.0, 0.5])
    assert np.allclose((u / u).coeffs, [1, 0, 0, 0])
    one = jets.constant(1.0, 0, 3)
    assert np.allclose((one / (1 - jets.lift(0, 3))).coeffs, [1, 1, 1, 1])
    assert np.allclose(jets.div(Jet(0, [1, 0, -1]), Jet(0, [1, -1, 0])).coeffs, [1, 1, 0])


def test_div_by_zero_constant_term():
    with pytest.raises(JetDivisionError):
        jets.constant(1.0, 0, 2) / jets.lift(0.0, 2)


def test_elementary_examples():
    e = jets.exp(jets.lift(0.0, 3))
    assert np.allclose(e.coeffs, [1, 1, 0.5, 1 / 6])
    assert np.allclose(jets.sqrt(jets.constant(4.0, 1.0, 3)).coeffs, [2, 0, 0, 0])
    pw = jets.power(jets.lift(0.3, 1), 0.2)
    assert pw.coeffs[0] == pytest.approx(0.3**0.2)
    assert pw.coeffs[1] == pytest.approx(0.2 * 0.3**-0.8)
    assert np.round(pw.coeffs, 5).tolist() == [0.786, 0.524]


def test_domain_errors():
    with pytest.raises(JetDomainError):
        jets.log(jets.lift(-1.0, 2))
    with pytest.raises(JetDomainError):
        jets.sqrt(jets.lift(0.0, 2))
    with pytest.raises(JetDomainError):
        jets.power(jets.lift(-0.5, 2), 0.5)


def test_mismatch():
    with pytest.raises(JetMismatchError):
        jets.lift(0.0, 2) + jets.lift(1.0, 2)
    with pytest.raises(JetMismatchError):
        jets.lift(0.0, 2) * jets.lift(0.0, 3)
    with pytest.raises(ValueError):
        jets.lift(0.0, jets.MAX_ORDER + 1)


def test_compose_examples():
    outer = Jet(1.0, [1, 2, 1])
    assert np.allclose(jets.compose(outer, Jet(0.0, [1, 3, 0])).coeffs, [1, 6, 9])
    inner = Jet(0.2, [0.7, 2.0, -1.0, 0.3])
    assert np.allclose(jets.compose(jets.lift(0.7, 3), inner).coeffs, inner.coeffs)
    outer = Jet(0.7, [1.0, -2.0, 0.5, 4.0])
    assert np.allclose(jets.compose(outer, jets.lift(0.7, 3)).coeffs, outer.coeffs)


def test_integer_power_matches_repeated_product():
    x = jets.lift(1.3, 5)
    assert np.allclose((x**5).coeffs, (x * x * x * x * x).coeffs, rtol=1e-15)
    assert np.allclose((x**-2).coeffs, (1 / (x * x)).coeffs, rtol=1e-14)


def test_generic_functions_accept_arrays():
    x = np.array([0.2, 0.5])
    assert np.allclose(jets.exp(x), np.exp(x))
    assert np.allclose(jets.power(x, 1.5), x**1.5)


# -- derivative checks against central differences --------------------------------

FUNCS = {
    "exp": (mpmath.exp, (-2.0, 2.0)),
    "log": (mpmath.log, (0.2, 3.0)),
    "sin": (mpmath.sin, (-3.0, 3.0)),
    "cos": (mpmath.cos, (-3.0, 3.0)),
    "tan": (mpmath.tan, (-1.2, 1.2)),
    "tanh": (mpmath.tanh, (-2.0, 2.0)),
    "sqrt": (mpmath.sqrt, (0.2, 3.0)),
    "pow": (lambda x: x ** mpmath.mpf(2.7), (0.2, 3.0)),
}


def fd_derivative(f, x0, k):
    # central differences carried out in 40-digit arithmetic
    with mpmath.workdps(40):
        return float(mpmath.diff(f, mpmath.mpf(x0), k, method="step", h=mpmath.mpf("1e-8")))


@pytest.mark.parametrize("kind", list(FUNCS))
def test_elementary_matches_finite_differences(kind):
    f, (lo, hi) = FUNCS[kind]
    rng = np.random.default_rng(7)
    for x0 in rng.uniform(lo, hi, 20):
        J = jets.elementary(kind, jets.lift(x0, 4), 2.7 if kind == "pow" else None)
        for k in range(1, 5):
            fd = fd_derivative(f, x0, k)
            assert J.derivative(k) == pytest.approx(fd, rel=1e-6, abs=1e-6)


coef = st.floats(-3, 3, allow_nan=False)


@st.composite
def series(draw, lead_min=0.5):
    K = 5
    c = [draw(st.floats(lead_min, 3))] + [draw(coef) for _ in range(K)]
    return Jet(0.1, c)


@settings(max_examples=60, deadline=None)
@given(series(), series())
def test_div_inverts_mul(u, v):
    back = jets.div(jets.mul(u, v), v)
    scale = np.max(np.abs(u.coeffs))
    assert np.allclose(back.coeffs, u.coeffs, rtol=1e-13, atol=1e-13 * scale * 10**u.order)


@settings(max_examples=60, deadline=None)
@given(series(), st.lists(coef, min_size=5, max_size=5), st.lists(coef, min_size=5, max_size=5))
def test_compose_associative(h, gc, fc):
    # (f o g) o h == f o (g o h), with each outer jet centered where it is evaluated
    g = Jet(h.coeffs[0], [0.4] + gc)
    f = Jet(0.4, [1.0] + fc)
    left = jets.compose(jets.compose(f, g), h)
    right = jets.compose(f, jets.compose(g, h))
    assert np.allclose(left.coeffs, right.coeffs, rtol=1e-12, atol=1e-12 * np.max(np.abs(right.coeffs)))
