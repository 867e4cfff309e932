"""Positivity verdicts for Hermitian-form fields and level sets."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import null_space

from .forms import HermitianForm, NumericError
from .jets import ScalarField, as_points
from .reports import number, point_to_json
from .sampling import Sampler, as_point_array
from .twisted import LeeData, twisted_hessian_batch

__all__ = [
    "HermitianForm",
    "NumericError",
    "CriticalPointError",
    "PshReport",
    "LeviReport",
    "RegularValueReport",
    "min_eigenvalue",
    "check_psh",
    "levi_check",
    "verify_regular_value",
]

DEFAULT_TOL = 1e-9
DEFAULT_GRAD_FLOOR = 1e-6


class CriticalPointError(ValueError):
    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


def min_eigenvalue(H) -> float | np.ndarray:
    """Smallest eigenvalue of a Hermitian matrix or a batch of them.

    The input is symmetrized first. Non-finite entries raise
    :class:`NumericError`.
    """
    if not isinstance(H, HermitianForm):
        H = HermitianForm(np.asarray(H, dtype=complex))
    return H.min_eigenvalue()


@dataclass
class PshReport:
    """Summary of a plurisubharmonicity sweep.

    ``failures`` counts points whose smallest eigenvalue is below ``-tol``;
    the verdict is ``"strict"`` when every eigenvalue is at least
    ``strict_margin``, ``"psd"`` when none fails, ``"fail"`` otherwise.
    Sampling can miss the true infimum; the report certifies sampled
    points only.
    """

    points_checked: int
    failures: int
    min_eigenvalue_overall: float
    worst_point: np.ndarray | None
    strict_margin: float
    tol: float = DEFAULT_TOL
    twisted: bool = False
    min_eigenvalues: np.ndarray | None = field(default=None, repr=False)
    points: np.ndarray | None = field(default=None, repr=False)

    @property
    def psd(self) -> bool:
        return self.failures == 0

    @property
    def strict(self) -> bool:
        return self.points_checked > 0 and self.min_eigenvalue_overall >= self.strict_margin

    @property
    def verdict(self) -> str:
        if self.strict:
            return "strict"
        return "psd" if self.psd else "fail"

    def merge(self, other: "PshReport") -> "PshReport":
        """Combine reports of disjoint batches (associative)."""
        if self.min_eigenvalue_overall <= other.min_eigenvalue_overall:
            m, w = self.min_eigenvalue_overall, self.worst_point
        else:
            m, w = other.min_eigenvalue_overall, other.worst_point
        cat = lambda a, b: None if a is None or b is None else np.concatenate([a, b])  # noqa: E731
        return PshReport(
            self.points_checked + other.points_checked,
            self.failures + other.failures,
            m,
            w,
            self.strict_margin,
            self.tol,
            self.twisted,
            cat(self.min_eigenvalues, other.min_eigenvalues),
            cat(self.points, other.points),
        )

    def to_dict(self) -> dict:
        return {
            "points_checked": self.points_checked,
            "failures": self.failures,
            "min_eigenvalue_overall": number(self.min_eigenvalue_overall),
            "worst_point": point_to_json(self.worst_point),
            "strict_margin": self.strict_margin,
            "tol": self.tol,
            "twisted": self.twisted,
            "verdict": self.verdict,
        }


def check_psh(
    phi: ScalarField,
    lee: LeeData | None,
    sampler,
    tol: float = DEFAULT_TOL,
    strict_margin: float | None = None,
    batch_size: int = 8192,
) -> PshReport:
    """Sweep the smallest eigenvalue of the (twisted) complex Hessian.

    Uses the plain complex Hessian when ``lee`` is ``None`` and the twisted
    one otherwise. ``strict_margin`` defaults to ``tol``.
    """
    Z = as_point_array(sampler)
    if len(Z) == 0:
        raise ValueError("check_psh needs at least one sample point")
    margin = tol if strict_margin is None else strict_margin
    report = None
    for i in range(0, len(Z), batch_size):
        chunk = Z[i : i + batch_size]
        ev = min_eigenvalue(HermitianForm(twisted_hessian_batch(phi, lee, chunk)))
        k = int(np.argmin(ev))
        part = PshReport(
            len(chunk), int(np.sum(ev < -tol)), float(ev[k]), chunk[k], margin, tol, lee is not None, ev, chunk
        )
        report = part if report is None else report.merge(part)
    return report


@dataclass(frozen=True)
class LeviReport:
    """Levi form of the level set of ``phi`` through ``point``."""

    point: np.ndarray
    complex_tangent_basis: np.ndarray  # (n, n-1), orthonormal columns
    levi_matrix: np.ndarray
    min_eigenvalue: float
    tol: float = DEFAULT_TOL

    @property
    def strictly_pseudoconvex(self) -> bool:
        return self.min_eigenvalue > self.tol

    def to_dict(self) -> dict:
        L = np.asarray(self.levi_matrix)
        return {
            "point": point_to_json(self.point),
            "levi_matrix": [point_to_json(row) for row in L],
            "min_eigenvalue": number(self.min_eigenvalue),
            "strictly_pseudoconvex": self.strictly_pseudoconvex,
            "tol": self.tol,
        }


def levi_check(phi: ScalarField, p, tol: float = DEFAULT_TOL) -> LeviReport:
    """Restrict the complex Hessian of ``phi`` to the complex tangent space.

    The complex tangent space at ``p`` of ``{phi = phi(p)}`` is the kernel of
    ``v -> sum_j dphi/dz_j v_j``. Raises :class:`CriticalPointError` when
    ``|dphi(p)| <= tol``.
    """
    Z, _ = as_points(p)
    J = phi.jet(Z)[0]
    g = J.grad_z
    if np.linalg.norm(g) <= tol:
        raise CriticalPointError(f"p={Z[0]} is a critical point of {phi.name}", Z[0])
    V = null_space(g[None, :])
    # v -> sum_jk H_jk v_j conj(v_k) in the basis V
    L = V.T @ J.hess_mixed @ np.conj(V)
    L = 0.5 * (L + L.conj().T)
    lmin = float(np.linalg.eigvalsh(L)[0]) if L.size else float("inf")
    return LeviReport(Z[0], V, L, lmin, tol)


@dataclass(frozen=True)
class RegularValueReport:
    level: float
    band: float
    grad_floor: float
    points_in_band: int
    min_grad_in_band: float
    worst_point: np.ndarray | None
    level_set_nonempty: bool
    points_checked: int

    @property
    def passed(self) -> bool:
        return self.points_in_band == 0 or self.min_grad_in_band >= self.grad_floor

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "band": self.band,
            "grad_floor": self.grad_floor,
            "points_in_band": self.points_in_band,
            "min_grad_in_band": number(self.min_grad_in_band),
            "worst_point": point_to_json(self.worst_point),
            "level_set_nonempty": self.level_set_nonempty,
            "points_checked": self.points_checked,
            "pass": self.passed,
        }


def verify_regular_value(
    phi: ScalarField,
    c: float,
    sampler,
    grad_floor: float = DEFAULT_GRAD_FLOOR,
    band: float = 0.1,
) -> RegularValueReport:
    """Check ``|grad phi| >= grad_floor`` on sampled points with ``|phi - c| < band``.

    The level set is reported non-empty when a sample lies in the band or
    the samples take values on both sides of ``c``.
    """
    if band <= 0:
        raise ValueError("band must be positive")
    Z = as_point_array(sampler)
    J = phi.jet(Z)
    # real gradient norm = 2 |d phi / dz|
    gnorm = 2 * np.linalg.norm(J.grad_z, axis=1)
    near = np.abs(J.value - c) < band
    if near.any():
        idx = np.flatnonzero(near)
        k = idx[int(np.argmin(gnorm[idx]))]
        mg, wp = float(gnorm[k]), Z[k]
    else:
        mg, wp = float("inf"), None
    nonempty = bool(near.any() or (np.any(J.value < c) and np.any(J.value > c)))
    return RegularValueReport(float(c), band, grad_floor, int(near.sum()), mg, wp, nonempty, len(Z))
