"""Gluing two potentials across the hypersurface where they meet.

Both potentials are fields on the whole model, so the glued potential is a
global regularized maximum; the claims about which branch it equals on
which region are checked on samples. The gluing surface ``{phi = psi}`` is
located by bisection along lines through seed points, each line following
the gradient of ``phi - psi`` at its seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .jets import ScalarField, as_points
from .positivity import PshReport, check_psh
from .regmax import compose_regmax
from .reports import number, point_to_json
from .sampling import as_point_array
from .twisted import LeeData

__all__ = [
    "GlueSpec",
    "GlueHypothesisReport",
    "GlueReport",
    "GlueContractError",
    "outward_normal",
    "lie_derivative",
    "locate_surface",
    "check_glue_hypotheses",
    "glue",
    "verify_glue",
]


class GlueContractError(ValueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class GlueSpec:
    """Inputs of a gluing.

    ``phi`` is kept where it exceeds ``psi`` (outside ``D``), ``psi`` where
    it exceeds ``phi`` (inside ``D``). ``sampler`` supplies seed points for
    locating the surface and the sample set on which ``D_+``
    (``phi - psi >= eps``), ``D_-`` (``psi - phi >= eps``) and the band in
    between are told apart, which keeps the three regions disjoint.
    """

    phi: ScalarField
    psi: ScalarField
    lee: LeeData | None
    eps: float
    sampler: object
    margin_floor: float = 1e-4
    grad_floor: float = 1e-6
    line_half_length: float = 0.5
    surface_seeds: int = 2000
    profile: object = field(default=None, compare=False)

    def __post_init__(self):
        if self.eps <= 0:
            raise ValueError("eps must be positive")

    def regions(self):
        """Sample points split into ``(D_plus, D_minus, band)``."""
        Z = as_point_array(self.sampler)
        d = self.phi(Z) - self.psi(Z)
        return Z[d >= self.eps], Z[-d >= self.eps], Z[np.abs(d) < self.eps]


def outward_normal(phi: ScalarField, p, grad_floor: float = 1e-6) -> np.ndarray:
    """Unit gradient of ``phi``, pointing out of its sublevel sets.

    Real vectors of R^{2n} are identified with C^n via ``x + i y``, so the
    gradient is ``2 conj(dphi/dz)``. Raises ``ValueError`` at critical
    points.
    """
    Z, single = as_points(p)
    g = np.conj(phi.jet(Z).grad_z)
    norm = np.linalg.norm(g, axis=1)
    if np.any(2 * norm <= grad_floor):
        i = int(np.argmin(norm))
        raise ValueError(f"{phi.name} has a critical point near z={Z[i]}; no normal direction")
    X = g / norm[:, None]
    return X[0] if single else X


def lie_derivative(f: ScalarField, p, X) -> np.ndarray:
    """Directional derivative of ``f`` along the real vector ``X`` (complex form)."""
    Z, single = as_points(p)
    X = np.atleast_2d(X)
    out = 2 * np.real(np.sum(f.jet(Z).grad_z * X, axis=1))
    return out[0] if single else out


def locate_surface(
    d: ScalarField,
    seeds,
    half_length: float = 0.5,
    n_grid: int = 41,
    iterations: int = 80,
    grad_floor: float = 1e-12,
) -> np.ndarray:
    """Points on ``{d = 0}`` found by bisection along lines through seeds.

    Each line runs through a seed in the direction of the gradient of ``d``
    there, over ``[-half_length, half_length]``; the sign change closest to
    the seed is refined by bisection. Seeds without a sign change (or at a
    critical point of ``d``) contribute nothing.
    """
    Z = as_point_array(seeds)
    if len(Z) == 0:
        return Z
    g = np.conj(d.jet(Z).grad_z)
    norm = np.linalg.norm(g, axis=1)
    ok = 2 * norm > grad_floor
    Z, v = Z[ok], g[ok] / norm[ok, None]
    if len(Z) == 0:
        return Z
    t = np.linspace(-half_length, half_length, n_grid)
    P = Z[:, None, :] + t[None, :, None] * v[:, None, :]
    flat = P.reshape(-1, Z.shape[1])
    inside = d.domain(flat)
    vals = np.full(len(flat), np.nan)
    vals[inside] = d(flat[inside])
    vals = vals.reshape(len(Z), n_grid)
    s = np.sign(vals)
    change = (s[:, :-1] * s[:, 1:] <= 0) & np.isfinite(vals[:, :-1]) & np.isfinite(vals[:, 1:])
    mid = np.abs(0.5 * (t[:-1] + t[1:]))
    score = np.where(change, mid, np.inf)
    k = np.argmin(score, axis=1)
    found = np.isfinite(score[np.arange(len(Z)), k])
    Z, v, k = Z[found], v[found], k[found]
    if len(Z) == 0:
        return Z
    lo, hi = t[k].copy(), t[k + 1].copy()
    f_lo = d(Z + lo[:, None] * v)
    for _ in range(iterations):
        m = 0.5 * (lo + hi)
        f_m = d(Z + m[:, None] * v)
        left = np.sign(f_m) == np.sign(f_lo)
        lo = np.where(left, m, lo)
        f_lo = np.where(left, f_m, f_lo)
        hi = np.where(left, hi, m)
    return Z + (0.5 * (lo + hi))[:, None] * v


@dataclass
class GlueHypothesisReport:
    surface_points: int
    max_abs_difference: float
    min_margin: float
    worst_point: np.ndarray | None
    margin_floor: float
    empty_boundary: bool
    degenerate: bool
    points: np.ndarray | None = field(default=None, repr=False)

    @property
    def passed(self) -> bool:
        if self.degenerate:
            return False
        if self.empty_boundary:
            return True
        return self.min_margin >= self.margin_floor

    def to_dict(self) -> dict:
        return {
            "surface_points": self.surface_points,
            "max_abs_difference": number(self.max_abs_difference),
            "min_margin": number(self.min_margin),
            "worst_point": point_to_json(self.worst_point),
            "margin_floor": self.margin_floor,
            "empty_boundary": self.empty_boundary,
            "degenerate": self.degenerate,
            "pass": self.passed,
        }


def check_glue_hypotheses(spec: GlueSpec) -> GlueHypothesisReport:
    """Locate ``{phi = psi}`` and compare normal derivatives there.

    The margin at a surface point is ``Lie_X phi - Lie_X psi`` with ``X``
    the outward normal of the sublevel sets of ``phi``. A ``phi - psi``
    that vanishes identically on the samples is reported as degenerate; one
    of constant sign as an empty boundary (the gluing is a single branch).
    """
    Z = as_point_array(spec.sampler)
    d = spec.phi - spec.psi
    dv = d(Z)
    scale = 1.0 + np.max(np.abs(spec.phi(Z)))
    if np.max(np.abs(dv)) <= 1e-12 * scale:
        return GlueHypothesisReport(0, 0.0, float("nan"), None, spec.margin_floor, False, True)
    seeds = Z[: spec.surface_seeds] if len(Z) > spec.surface_seeds else Z
    S = locate_surface(d, seeds, spec.line_half_length)
    if len(S) == 0:
        empty = bool(np.all(dv > 0) or np.all(dv < 0))
        return GlueHypothesisReport(0, float("nan"), float("nan"), None, spec.margin_floor, empty, not empty)
    diff = np.abs(d(S))
    gphi = np.conj(spec.phi.jet(S).grad_z)
    gn = np.linalg.norm(gphi, axis=1)
    margin = np.full(len(S), -np.inf)
    ok = 2 * gn > spec.grad_floor
    X = gphi[ok] / gn[ok, None]
    margin[ok] = lie_derivative(spec.phi, S[ok], X) - lie_derivative(spec.psi, S[ok], X)
    i = int(np.argmin(margin))
    return GlueHypothesisReport(
        len(S), float(diff.max()), float(margin[i]), S[i], spec.margin_floor, False, False, S
    )


def glue(spec: GlueSpec, override: bool = False) -> ScalarField:
    """The glued potential ``max_eps(phi, psi)``.

    Raises :class:`GlueContractError` when the hypotheses fail, unless
    ``override`` is set.
    """
    if not override:
        rep = check_glue_hypotheses(spec)
        if not rep.passed:
            why = "degenerate surface" if rep.degenerate else f"min margin {rep.min_margin:.3g}"
            raise GlueContractError(f"gluing hypotheses fail ({why})", rep)
    return compose_regmax(spec.phi, spec.psi, spec.eps, spec.profile)


@dataclass
class GlueReport:
    fidelity_plus: float
    fidelity_minus: float
    points_plus: int
    points_minus: int
    glued: PshReport
    phi_report: PshReport
    psi_report: PshReport
    strict_failures_in_psi_region: int
    strict_failures_total: int
    fidelity_tol: float = 1e-12

    @property
    def expected_strict(self) -> bool:
        return self.phi_report.strict and self.psi_report.strict

    @property
    def verdict(self) -> str:
        return self.glued.verdict

    @property
    def passed(self) -> bool:
        fidelity = max(self.fidelity_plus, self.fidelity_minus) <= self.fidelity_tol
        inputs_psd = self.phi_report.psd and self.psi_report.psd
        shape_ok = self.glued.psd if inputs_psd else True
        strict_ok = self.glued.strict if self.expected_strict else True
        return fidelity and shape_ok and strict_ok

    def to_dict(self) -> dict:
        return {
            "fidelity_plus": number(self.fidelity_plus),
            "fidelity_minus": number(self.fidelity_minus),
            "points_plus": self.points_plus,
            "points_minus": self.points_minus,
            "glued": self.glued.to_dict(),
            "phi": self.phi_report.to_dict(),
            "psi": self.psi_report.to_dict(),
            "expected_strict": self.expected_strict,
            "verdict": self.verdict,
            "strict_failures_in_psi_region": self.strict_failures_in_psi_region,
            "strict_failures_total": self.strict_failures_total,
            "pass": self.passed,
        }


def _jet_deviation(f: ScalarField, g: ScalarField, Z) -> float:
    if len(Z) == 0:
        return 0.0
    A, B = f.jet(Z), g.jet(Z)
    return float(
        max(
            np.max(np.abs(A.value - B.value)),
            np.max(np.abs(A.grad_z - B.grad_z)),
            np.max(np.abs(A.hess_mixed - B.hess_mixed)),
            np.max(np.abs(A.hess_holo - B.hess_holo)),
        )
    )


def verify_glue(g: ScalarField, spec: GlueSpec, tol: float = 1e-9, strict_margin: float | None = None) -> GlueReport:
    """Check region fidelity and (twisted) plurisubharmonicity of ``g``.

    On ``D_+`` the full jet of ``g`` must equal that of ``phi``, on ``D_-``
    that of ``psi``. The glued potential must be psd wherever both inputs
    are, and strict when both inputs are strict; with a merely psd input a
    psd verdict is the expected outcome.
    """
    Dp, Dm, _ = spec.regions()
    Z = as_point_array(spec.sampler)
    rg = check_psh(g, spec.lee, Z, tol, strict_margin)
    rphi = check_psh(spec.phi, spec.lee, Z, tol, strict_margin)
    rpsi = check_psh(spec.psi, spec.lee, Z, tol, strict_margin)
    weak = rg.min_eigenvalues < rg.strict_margin
    in_psi = (spec.psi(rg.points) - spec.phi(rg.points)) > -spec.eps
    return GlueReport(
        _jet_deviation(g, spec.phi, Dp),
        _jet_deviation(g, spec.psi, Dm),
        len(Dp),
        len(Dm),
        rg,
        rphi,
        rpsi,
        int(np.sum(weak & in_psi)),
        int(np.sum(weak)),
    )
