"""Lee-form data and the twisted pluri-Laplacian.

Convention. On the cover the Lee form is represented by an exponent field
``rho`` whose monodromy is ``rho(gamma z) = rho(z) + log chi(gamma)``. The
twisted differential is taken in conjugated form,

    d_theta(eta) = exp(-rho) d(exp(rho) eta),

so that

    d_theta d^c_theta(phi) = exp(-rho) dd^c(exp(rho) phi).

With ``rho = log|z|^2`` on a Hopf cover this makes ``phi = 1`` the
potential of the flat form ``|z|^-2 * Id``. In complex coordinates the
form is the Hermitian matrix ``exp(-rho) d^2(exp(rho) phi)/dz dzbar``,
which expands to

    H_phi + phi (H_rho + drho drho^*) + drho dphi^* + dphi drho^*.

The expansion is what :func:`twisted_hessian` evaluates; it avoids forming
``exp(rho)`` and is exactly ``H_phi`` when ``rho = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .forms import HermitianForm
from .jets import ScalarField, as_points, exp
from .sampling import Sampler

__all__ = [
    "LeeData",
    "AutomorphicField",
    "AutomorphyReport",
    "twisted_hessian",
    "twisted_hessian_batch",
    "lift_to_cover",
    "check_automorphy",
    "check_lee",
    "lck_form_field",
]


@dataclass(frozen=True)
class LeeData:
    """Cover-level exponent ``rho`` with ``rho(gamma z) = rho(z) + monodromy_shift``.

    ``exp_rho`` optionally gives ``exp(rho)`` as an explicit field (e.g.
    ``|z|^2``) so lifts avoid the roundoff of ``exp(log(.))``.
    """

    rho: ScalarField
    monodromy_shift: float
    exp_rho: ScalarField | None = None

    @property
    def chi(self) -> float:
        return float(np.exp(self.monodromy_shift))

    def weight_field(self) -> ScalarField:
        return self.exp_rho if self.exp_rho is not None else exp(self.rho)


@dataclass(frozen=True)
class AutomorphicField:
    """Cover field with ``f(gamma z) = chi(gamma)**weight * f(z)``."""

    field: ScalarField
    weight: float

    def __call__(self, p):
        return self.field(p)


@dataclass(frozen=True)
class AutomorphyReport:
    max_deviation: float
    worst_point: np.ndarray | None
    points_checked: int
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tol

    def to_dict(self) -> dict:
        from .reports import point_to_json

        return {
            "max_deviation": self.max_deviation,
            "worst_point": point_to_json(self.worst_point),
            "points_checked": self.points_checked,
            "tol": self.tol,
            "pass": self.passed,
        }


def twisted_hessian_batch(phi: ScalarField, lee: LeeData | None, Z: np.ndarray) -> np.ndarray:
    """Twisted complex Hessians at a batch of points, shape ``(N, n, n)``."""
    F = phi.jet(Z)
    if lee is None:
        return F.hess_mixed
    R = lee.rho.jet(Z)
    gr, gf = R.grad_z, F.grad_z
    v = F.value[:, None, None]
    outer = lambda a, b: a[:, :, None] * np.conj(b)[:, None, :]  # noqa: E731
    return (
        F.hess_mixed
        + v * (R.hess_mixed + outer(gr, gr))
        + (outer(gr, gf) + outer(gf, gr))
    )


def twisted_hessian(phi: ScalarField, lee: LeeData | None, p) -> HermitianForm:
    """``exp(-rho) * d^2(exp(rho) phi) / dz dzbar`` at ``p`` (point or batch).

    ``lee=None`` is the untwisted complex Hessian.
    """
    Z, single = as_points(p)
    H = twisted_hessian_batch(phi, lee, Z)
    return HermitianForm(H[0] if single else H)


def lift_to_cover(phi: ScalarField, lee: LeeData) -> AutomorphicField:
    """The automorphic potential ``exp(rho) * phi`` (weight 1)."""
    return AutomorphicField(lee.weight_field() * phi, 1.0)


def lck_form_field(phi: ScalarField, lee: LeeData | None) -> Callable[[object], HermitianForm]:
    """The map ``p -> d_theta d^c_theta(phi)(p)``."""

    def form(p) -> HermitianForm:
        return twisted_hessian(phi, lee, p)

    form.__doc__ = f"twisted pluri-Laplacian of {phi.name}"
    return form


def _points(model, samples) -> np.ndarray:
    if isinstance(samples, Sampler):
        return samples.sample()
    if isinstance(samples, (int, np.integer)):
        if samples < 1:
            raise ValueError("samples must be >= 1")
        return model.annulus(int(samples)).sample()
    return np.atleast_2d(np.asarray(samples, dtype=complex))


def check_automorphy(f: AutomorphicField, model, samples=1000, tol: float = 1e-10) -> AutomorphyReport:
    """Max over samples of ``|f(lam z) - chi**w f(z)| / (1 + |f(z)|)``.

    ``model`` needs ``lam``, ``chi`` and ``annulus(count)``; ``samples`` is
    a count, a :class:`Sampler`, or explicit points.
    """
    Z = _points(model, samples)
    a = f.field(model.lam * Z)
    b = f.field(Z)
    dev = np.abs(a - model.chi**f.weight * b) / (1 + np.abs(b))
    i = int(np.argmax(dev))
    return AutomorphyReport(float(dev[i]), Z[i], len(Z), tol)


def check_lee(lee: LeeData, model, samples=1000, tol: float = 1e-10) -> AutomorphyReport:
    """Check ``rho(lam z) - rho(z) - monodromy_shift = 0`` on samples."""
    Z = _points(model, samples)
    dev = np.abs(lee.rho(model.lam * Z) - lee.rho(Z) - lee.monodromy_shift)
    i = int(np.argmax(dev))
    return AutomorphyReport(float(dev[i]), Z[i], len(Z), tol)
