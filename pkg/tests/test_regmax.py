import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from lckpot import jets
from lckpot.regmax import (
    CubicSplineProfile,
    RegMaxKernel,
    SmoothBumpProfile,
    compose_regmax,
    regmax_jet,
    regmax_value,
)
from lckpot.sampling import ball

P = CubicSplineProfile()
finite = st.floats(-50, 50, allow_nan=False)
eps_st = st.floats(1e-3, 10.0)


def test_profile_is_convolution_of_abs_with_density():
    for t in np.linspace(-0.7, 0.7, 15):
        ref, _ = quad(lambda s: abs(t - s) * P.density(s), -0.5, 0.5, points=sorted({-0.25, 0.0, 0.25, float(t)}), epsabs=1e-15, limit=200)
        assert P.m(t) == pytest.approx(ref, abs=1e-13)


def test_density_is_probability():
    mass, _ = quad(P.density, -0.5, 0.5, points=[0.0])
    assert mass == pytest.approx(1.0, abs=1e-14)
    assert P.m0 == pytest.approx(7 / 60)


def test_profile_c2_at_band_edge():
    for f in (P.m, P.dm, P.d2m):
        a, b = f(0.5 - 1e-12), f(0.5 + 1e-12)
        assert abs(a - b) < 1e-9
    assert P.d2m(0.5) == 0.0
    assert P.m(0.5) == 0.5 and P.dm(0.5) == 1.0


def test_profile_convex_and_bounded():
    t = np.linspace(-1, 1, 2001)
    assert np.all(P.d2m(t) >= 0)
    assert np.all(np.abs(P.dm(t)) <= 1)
    assert np.all(P.m(t) >= np.abs(t))


def test_smooth_profile_matches_structure():
    S = SmoothBumpProfile()
    for t in (0.0, 0.2, -0.3, 0.6):
        assert S.m(t) >= abs(t) - 1e-12
    assert S.m(0.6) == pytest.approx(0.6, abs=1e-12)
    assert abs(S.dm(0.1) - (S.m(0.1 + 1e-5) - S.m(0.1 - 1e-5)) / 2e-5) < 1e-6


def test_band_identity_is_exact():
    rng = np.random.default_rng(0)
    x = rng.uniform(-5, 5, 10000)
    y = x + rng.choice([-1, 1], 10000) * (0.3 + rng.exponential(1, 10000))
    assert np.all(regmax_value(x, y, 0.3) == np.maximum(x, y))


def test_max_excess_on_diagonal():
    K = RegMaxKernel(0.4)
    assert regmax_value(1.0, 1.0, 0.4) - 1.0 == pytest.approx(K.max_excess)
    assert K.band == 0.2


def test_second_partial_on_diagonal_matches_oracle():
    eps = 0.3
    J = regmax_jet(0.7, 0.7, eps)
    assert J.hessian[0, 0] == pytest.approx(P.d2m(0.0) / (2 * eps))
    # extended precision keeps stencil roundoff below the truncation error
    x, h = np.longdouble(0.7), np.longdouble(1e-5)
    fd = (regmax_value(x + h, x, eps) - 2 * regmax_value(x, x, eps) + regmax_value(x - h, x, eps)) / h**2
    assert abs(fd - J.hessian[0, 0]) < 1e-6


@settings(max_examples=200, deadline=None)
@given(x=finite, y=finite, eps=eps_st)
def test_symmetry_and_bounds(x, y, eps):
    v = regmax_value(x, y, eps)
    assert v == regmax_value(y, x, eps)
    assert max(x, y) <= v <= max(x, y) + eps * P.m0 / 2 + 1e-12


@settings(max_examples=200, deadline=None)
@given(x=finite, d=st.floats(-2, 2), eps=eps_st)
def test_convex_monotone(x, d, eps):
    J = regmax_jet(x, x + d * eps, eps)
    assert J.d1 >= 0 and J.d2 >= 0 and J.d1 + J.d2 == 1.0
    assert np.linalg.eigvalsh(J.hessian).min() >= -1e-12


@settings(max_examples=200, deadline=None)
@given(x=finite, d=st.floats(-2, 2), c=finite, t=st.floats(0.1, 10), eps=eps_st)
def test_additivity_and_scaling(x, d, c, t, eps):
    y = x + d * eps
    v = regmax_value(x, y, eps)
    assert abs(regmax_value(x + c, y + c, eps) - v - c) <= 1e-12 * (1 + abs(v) + abs(c))
    assert abs(regmax_value(t * x, t * y, t * eps) - t * v) <= 1e-12 * (1 + t * abs(v))


def test_invalid_eps():
    for bad in (0.0, -1.0, np.nan):
        with pytest.raises(ValueError):
            RegMaxKernel(bad)


def test_composed_field_picks_branches():
    phi = jets.norm_sq()
    psi = jets.constant(1.0)
    g = compose_regmax(phi, psi, 0.1)
    Z = ball(2, 2.0, 2000).sample()
    d = phi(Z) - psi(Z)
    far = np.abs(d) >= 0.1
    np.testing.assert_array_equal(g(Z)[far], np.maximum(phi(Z), psi(Z))[far])
