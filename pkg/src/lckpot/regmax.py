"""Regularized maximum of two real numbers and of two scalar fields.

The construction is

    max_eps(x, y) = (x + y)/2 + M_eps(x - y)/2,    M_eps(t) = eps * M1(t/eps),

where ``M1`` is ``|t|`` convolved with an even probability density supported
in ``[-1/2, 1/2]``. Then ``M1 = |t|`` for ``|t| >= 1/2`` and the regularized
maximum coincides with ``max`` once ``|x - y| >= eps/2``; in that region the
code returns ``max(x, y)`` itself, so the identity is exact in floating
point. ``M1'' = 2 * density``, which makes the kernel convex.

The default density is the cubic B-spline on ``[-1/2, 1/2]``, for which
``M1`` is a piecewise quintic with a closed form (``C^4``).
:class:`SmoothBumpProfile` gives a ``C^inf`` kernel through quadrature.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy import integrate

from .jets import ScalarField, compose_2d

__all__ = [
    "CubicSplineProfile",
    "SmoothBumpProfile",
    "RegMaxKernel",
    "RegMaxJet",
    "regmax_value",
    "regmax_jet",
    "compose_regmax",
]


class CubicSplineProfile:
    """``|t|`` smoothed by the cubic B-spline density on ``[-1/2, 1/2]``.

    With ``s = |t|`` the density is ``8/3 - 64 s^2 + 128 s^3`` on
    ``[0, 1/4]`` and ``(128/3) w^3``, ``w = 1/2 - s``, on ``[1/4, 1/2]``.
    Integrating ``M1'' = 2 * density`` twice with ``M1 = |t|`` beyond 1/2:

        M1 = 7/60 + (8/3) s^2 - (32/3) s^4 + (64/5) s^5     on [0, 1/4]
        M1 = s + (64/15) w^5                                on [1/4, 1/2]
    """

    name = "cubic-spline"

    def m(self, t):
        """``M1(t)``; equal to ``|t|`` for ``|t| >= 1/2``."""
        s = np.abs(t)
        w = np.maximum(0.5 - s, 0.0)
        inner = 7 / 60 + s**2 * (8 / 3 + s**2 * (-32 / 3 + s * (64 / 5)))
        outer = s + (64 / 15) * w**5
        return np.where(s < 0.25, inner, outer)

    def dm(self, t):
        s = np.abs(t)
        w = np.maximum(0.5 - s, 0.0)
        inner = s * (16 / 3 + s**2 * (-128 / 3 + 64 * s))
        outer = 1 - (64 / 3) * w**4
        return np.sign(t) * np.where(s < 0.25, inner, outer)

    def d2m(self, t):
        s = np.abs(t)
        w = np.maximum(0.5 - s, 0.0)
        inner = 16 / 3 + s**2 * (-128 + 256 * s)
        outer = (256 / 3) * w**3
        return np.where(s < 0.25, inner, outer)

    def density(self, t):
        return 0.5 * np.where(np.abs(t) < 0.5, self.d2m(t), 0.0)

    m0 = 7 / 60


class SmoothBumpProfile:
    """``|t|`` smoothed by the ``C^inf`` bump ``exp(-1/(1 - 4t^2))``.

    ``M1`` and ``M1'`` are computed by adaptive quadrature, so this profile
    is much slower than :class:`CubicSplineProfile` and only accurate to
    quadrature tolerance (about 1e-12).
    """

    name = "smooth-bump"

    def __init__(self):
        self._norm = integrate.quad(self._bump, -0.5, 0.5, epsabs=1e-14, epsrel=1e-13)[0]

    @staticmethod
    def _bump(s):
        s = np.asarray(s, dtype=float)
        out = np.zeros_like(s)
        inside = np.abs(s) < 0.5
        out[inside] = np.exp(-1.0 / (1.0 - 4.0 * s[inside] ** 2))
        return out if out.ndim else float(out)

    def density(self, s):
        return self._bump(s) / self._norm

    def _one_m(self, t: float) -> float:
        t = abs(t)
        f = lambda s: abs(t - s) * self.density(s)  # noqa: E731
        pts = [t] if t < 0.5 else None
        return integrate.quad(f, -0.5, 0.5, points=pts, epsabs=1e-14, epsrel=1e-13, limit=200)[0]

    def _one_dm(self, t: float) -> float:
        s = abs(t)
        inner = integrate.quad(self.density, 0.0, s, epsabs=1e-14, epsrel=1e-13)[0]
        return float(np.sign(t)) * 2 * inner

    def m(self, t):
        return np.vectorize(self._one_m, otypes=[float])(t)

    def dm(self, t):
        return np.vectorize(self._one_dm, otypes=[float])(t)

    def d2m(self, t):
        return 2 * self.density(t)

    @cached_property
    def m0(self) -> float:
        return self._one_m(0.0)


_DEFAULT_PROFILE = CubicSplineProfile()


@dataclass(frozen=True)
class RegMaxKernel:
    """A regularized maximum ``max_eps`` with a fixed smoothing profile."""

    epsilon: float
    profile: object = field(default=_DEFAULT_PROFILE, compare=False)

    def __post_init__(self):
        if not np.isfinite(self.epsilon) or self.epsilon <= 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon!r}")

    @property
    def band(self) -> float:
        """Half-width of the smoothing band; ``max_eps = max`` beyond it."""
        return 0.5 * self.epsilon

    @property
    def max_excess(self) -> float:
        """``sup (max_eps - max) = eps * M1(0) / 2``, attained on the diagonal."""
        return 0.5 * self.epsilon * self.profile.m0

    def __call__(self, x, y, order: int = 2):
        """Value and partials ``(v, d1, d2, d11, d12, d22)``."""
        x = np.asarray(x)
        y = np.asarray(y)
        eps = self.epsilon
        u = x - y
        with np.errstate(invalid="ignore"):
            inside = np.abs(u) < 0.5 * eps
        if not inside.any():
            v = np.maximum(x, y)
            if order == 0:
                return v, None, None, None, None, None
            d1 = (x > y).astype(float)
            zero = np.zeros_like(d1)
            return v, d1, 1.0 - d1, zero, zero, zero.copy()

        t = np.where(inside, u / eps, 0.0)
        prof = self.profile
        v = np.where(inside, 0.5 * (x + y) + 0.5 * eps * prof.m(t), np.maximum(x, y))
        if order == 0:
            return v, None, None, None, None, None
        d1 = np.where(inside, 0.5 * (1.0 + prof.dm(t)), (x > y).astype(float))
        c = np.where(inside, 0.5 * prof.d2m(t) / eps, 0.0)
        return v, d1, 1.0 - d1, c, -c, c.copy()


@dataclass(frozen=True)
class RegMaxJet:
    value: np.ndarray
    d1: np.ndarray
    d2: np.ndarray
    hessian: np.ndarray  # (..., 2, 2)


def _kernel(eps, profile) -> RegMaxKernel:
    return RegMaxKernel(float(eps), profile if profile is not None else _DEFAULT_PROFILE)


def regmax_value(x, y, eps: float, profile=None):
    """Regularized maximum of ``x`` and ``y`` (array-friendly)."""
    v = _kernel(eps, profile)(x, y, order=0)[0]
    return v[()] if np.ndim(v) == 0 else v


def regmax_jet(x, y, eps: float, profile=None) -> RegMaxJet:
    """Value, first partials and the 2x2 second-derivative matrix."""
    v, d1, d2, d11, d12, d22 = _kernel(eps, profile)(x, y)
    H = np.stack([np.stack([d11, d12], -1), np.stack([d12, d22], -1)], -2)
    return RegMaxJet(v, d1, d2, H)


def compose_regmax(phi: ScalarField, psi: ScalarField, eps: float, profile=None) -> ScalarField:
    """The field ``max_eps(phi, psi)`` with jets by the chain rule."""
    K = _kernel(eps, profile)
    return compose_2d(phi, psi, K, name=f"max_{eps:g}")
