"""Hopf manifold testbed and the constructions built on it.

The model is ``C^n \\ {0}`` modulo ``z -> lam z`` with weight exponent
``rho = log|z|^2`` and character value ``chi = lam^2``. Quotient-level
potentials are dilation-invariant (weight 0); their lifts ``|z|^2 * phi`` are
weight-1 automorphic Kahler potentials on the cover.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from itertools import combinations_with_replacement
from typing import Sequence

import numpy as np

from . import jets
from .gluing import GlueSpec, check_glue_hypotheses, glue, locate_surface
from .holo import HoloPoly, monomial
from .jets import ScalarField
from .positivity import check_psh, verify_regular_value
from .reports import number, point_to_json
from .sampling import Sampler, annulus, as_point_array
from .twisted import AutomorphicField, LeeData, check_automorphy

__all__ = [
    "HopfModel",
    "MonomialSection",
    "PreconditionError",
    "WeightMismatchError",
    "PipelineError",
    "SignWitnesses",
    "PositivizeParams",
    "PositivizeResult",
    "standard_potential",
    "vuletescu_potential",
    "find_sign_change",
    "neglog_transform",
    "degree2_sections",
    "section_potential",
    "section_cover_field",
    "partition_positive",
    "positivize",
]


class PreconditionError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class WeightMismatchError(PreconditionError):
    pass


class PipelineError(RuntimeError):
    """A positivization stage failed; ``stage`` names it."""

    def __init__(self, stage: str, message: str, witness=None, record=None):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage
        self.witness = witness
        self.record = record


@dataclass(frozen=True)
class HopfModel:
    n: int = 2
    lam: float = 2.0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("Hopf model needs n >= 2")
        if not self.lam > 1:
            raise ValueError("lam must exceed 1")

    @property
    def chi(self) -> float:
        return self.lam**2

    @property
    def lck_rank(self) -> int:
        return 1

    @property
    def rho(self) -> ScalarField:
        return jets.log(jets.norm_sq())

    @property
    def lee(self) -> LeeData:
        return LeeData(self.rho, float(np.log(self.chi)), exp_rho=jets.norm_sq())

    def annulus(self, count: int = 10_000, seed: int = 0) -> Sampler:
        return annulus(self.n, self.lam, count, seed)

    def describe(self) -> dict:
        return {"n": self.n, "lambda": self.lam, "chi": self.chi, "lck_rank": self.lck_rank}


@dataclass(frozen=True)
class MonomialSection:
    """The holomorphic section ``coefficient * z^alpha`` of a power of ``L``."""

    alpha: tuple
    coefficient: complex = 1.0

    @property
    def degree(self) -> int:
        return sum(self.alpha)

    def poly(self) -> HoloPoly:
        return monomial(self.alpha, self.coefficient)


# ---------------------------------------------------------------------------
# potentials


def standard_potential(model: HopfModel) -> ScalarField:
    """The quotient potential ``1`` (cover potential ``|z|^2``)."""
    return jets.constant(1.0)


def vuletescu_potential(model: HopfModel, Q: HoloPoly, A: float) -> ScalarField:
    """``1 + A Re(Q)/|z|^2`` for a quadratic form ``Q``.

    Its lift ``|z|^2 + A Re Q`` differs from the standard one by a
    pluriharmonic term, so the twisted Hessian does not depend on ``A``,
    while for large ``|A|`` the potential takes negative values.
    """
    if Q.n != model.n:
        raise WeightMismatchError(f"Q has {Q.n} variables, model has n={model.n}")
    if Q.is_zero():
        return standard_potential(model)
    if not Q.is_homogeneous(2):
        lifted = AutomorphicField(jets.re(Q), 1.0)
        rep = check_automorphy(lifted, model, 256)
        raise WeightMismatchError(
            f"Q={Q!r} is not homogeneous of degree 2; Re Q is not weight 1 "
            f"(automorphy deviation {rep.max_deviation:.3g})",
            rep.worst_point,
        )
    return jets.constant(1.0) + float(A) * (jets.re(Q) / jets.norm_sq())


@dataclass(frozen=True)
class SignWitnesses:
    negative_point: np.ndarray | None
    negative_value: float | None
    positive_point: np.ndarray | None
    positive_value: float | None

    def to_dict(self) -> dict:
        return {
            "negative_point": point_to_json(self.negative_point),
            "negative_value": None if self.negative_value is None else number(self.negative_value),
            "positive_point": point_to_json(self.positive_point),
            "positive_value": None if self.positive_value is None else number(self.positive_value),
        }


def find_sign_change(phi: ScalarField, sampler) -> SignWitnesses:
    """The most negative and most positive sampled values, if any."""
    Z = as_point_array(sampler)
    v = phi(Z)
    i, j = int(np.argmin(v)), int(np.argmax(v))
    neg = (Z[i], float(v[i])) if v[i] < 0 else (None, None)
    pos = (Z[j], float(v[j])) if v[j] > 0 else (None, None)
    return SignWitnesses(neg[0], neg[1], pos[0], pos[1])


def neglog_transform(phi_tilde, sampler) -> ScalarField:
    """``psi = -log(-phi_tilde)`` for a negative automorphic potential.

    For ``phi_tilde`` of weight ``w`` the result satisfies
    ``psi(gamma z) = psi(z) - w log chi``, so its complex Hessian is
    dilation-invariant. Raises :class:`PreconditionError` if
    ``phi_tilde >= 0`` at a sampled point.
    """
    f = phi_tilde.field if isinstance(phi_tilde, AutomorphicField) else phi_tilde
    Z = as_point_array(sampler)
    v = f(Z)
    if np.any(v >= 0):
        i = int(np.argmax(v))
        raise PreconditionError(f"{f.name} is not negative: value {v[i]:.3g} at z={Z[i]}", Z[i])
    return -jets.log(-f)


# ---------------------------------------------------------------------------
# section potentials and partitions


def degree2_sections(n: int) -> list[MonomialSection]:
    """All monomials of degree 2 in ``n`` variables."""
    out = []
    for j, k in combinations_with_replacement(range(n), 2):
        alpha = [0] * n
        alpha[j] += 1
        alpha[k] += 1
        out.append(MonomialSection(tuple(alpha)))
    return out


def _common_zero(sections: Sequence[MonomialSection], n: int):
    # monomials have a common zero off the origin iff some axis e_k kills them all
    for k in range(n):
        pure = any(
            s.coefficient != 0 and s.alpha[k] == s.degree and s.degree > 0 for s in sections
        ) or any(s.coefficient != 0 and s.degree == 0 for s in sections)
        if not pure:
            e = np.zeros(n, dtype=complex)
            e[k] = 1
            return e
    return None


def _check_sections(model: HopfModel, sections: Sequence[MonomialSection]) -> None:
    if not sections:
        raise PreconditionError("need at least one section")
    for s in sections:
        if len(s.alpha) != model.n:
            raise PreconditionError(f"section {s} has wrong number of variables")
        if s.degree != 2:
            raise WeightMismatchError(f"section z^{s.alpha} has degree {s.degree}; weight-1 sections need degree 2")
    w = _common_zero(sections, model.n)
    if w is not None:
        raise PreconditionError(f"sections have a common zero at z={w}", w)


def section_cover_field(model: HopfModel, sections: Sequence[MonomialSection]) -> ScalarField:
    """``sqrt(sum |f_i|^2)`` on the cover: positive, weight 1, psh."""
    _check_sections(model, sections)
    total = None
    for s in sections:
        term = jets.abs_sq(s.poly())
        total = term if total is None else total + term
    return jets.sqrt(total)


def section_potential(model: HopfModel, sections: Sequence[MonomialSection] | None = None) -> ScalarField:
    """Quotient potential ``sqrt(sum |f_i|^2) / |z|^2`` of degree-2 sections.

    A smooth replacement for ``sum |f_i|``: same weight, positive,
    and twisted-psh because its lift is the norm of a holomorphic map.
    """
    if sections is None:
        sections = degree2_sections(model.n)
    return section_cover_field(model, sections) / jets.norm_sq()


def partition_positive(
    a: Sequence[ScalarField], A: ScalarField, sampler, floor: float = 1e-12
) -> list[ScalarField]:
    """Positive ``b_i`` with ``sum a_i b_i = A``, namely ``b_i = A / sum a_j``.

    Raises :class:`PreconditionError` with a witness point if ``sum a_j``
    drops below ``floor`` on the samples.
    """
    if not a:
        raise PreconditionError("need at least one function")
    B = a[0]
    for f in a[1:]:
        B = B + f
    Z = as_point_array(sampler)
    vb = B(Z)
    if np.any(vb < floor):
        i = int(np.argmin(vb))
        raise PreconditionError(f"sum of the a_i is {vb[i]:.3g} < {floor:g} at z={Z[i]}", Z[i])
    b = A / B
    return [b for _ in a]


# ---------------------------------------------------------------------------
# positivization


@dataclass(frozen=True)
class PositivizeParams:
    """Pinned pipeline constants.

    ``c``: regular level of ``phi`` bounding the region that gets replaced;
    ``eps_scale``: factor on the section potential; ``eps_band``: width of
    the regularized maximum; ``delta``: weight of the strictifying ``phi``
    term, halved on failure down to ``delta_floor``.
    """

    c: float = 0.5
    eps_scale: float = 0.1
    eps_band: float = 0.02
    delta: float = 1e-2
    delta_floor: float = 1e-6
    grad_floor: float = 1e-6
    level_band: float = 0.05
    positivity_floor: float = 1e-3
    strict_floor: float = 1e-6
    tol: float = 1e-9

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class PositivizeResult:
    field: ScalarField
    glued: ScalarField | None
    section: ScalarField | None
    delta: float | None
    stages: list = field(default_factory=list)
    short_circuit: bool = False

    def to_dict(self) -> dict:
        return {"delta": self.delta, "short_circuit": self.short_circuit, "stages": self.stages}


def positivize(
    phi: ScalarField,
    model: HopfModel,
    params: PositivizeParams | None = None,
    sampler: Sampler | None = None,
    sections: Sequence[MonomialSection] | None = None,
) -> PositivizeResult:
    """Turn a sign-indefinite twisted-psh potential into a positive one.

    Stages: positive witness; strict twisted plurisubharmonicity; regular
    level ``c``; section potential ``s psi`` with ``{s psi = phi}`` inside
    ``{0 < phi < c}``; gluing hypotheses; ``max_eps(phi, s psi)``; then
    ``(glued + delta phi) / (1 + delta)``, which keeps ``phi`` unchanged
    wherever ``phi - s psi >= eps`` and is strictly twisted-psh. Any failure
    raises :class:`PipelineError` naming the stage.
    """
    p = params or PositivizeParams()
    S = sampler or model.annulus()
    Z = S.sample()
    lee = model.lee
    stages: list[dict] = []

    def fail(stage, msg, witness=None):
        stages.append({"stage": stage, "pass": False, "message": msg, "witness": point_to_json(witness)})
        raise PipelineError(stage, msg, witness, stages)

    signs = find_sign_change(phi, Z)
    stages.append({"stage": "sign", "pass": signs.positive_point is not None, **signs.to_dict()})
    if signs.positive_point is None:
        stages.pop()
        fail("positive-witness", f"{phi.name} has no positive sampled value", signs.negative_point)

    rep = check_psh(phi, lee, Z, p.tol)
    if not rep.strict:
        fail("twisted-psh", f"input is not strictly twisted-psh (min eigenvalue {rep.min_eigenvalue_overall:.3g})", rep.worst_point)
    stages.append({"stage": "twisted-psh", "pass": True, "report": rep.to_dict()})

    if signs.negative_point is None:
        stages.append({"stage": "already-positive", "pass": True, "min_value": number(np.min(phi(Z)))})
        return PositivizeResult(phi, None, None, None, stages, short_circuit=True)

    reg = verify_regular_value(phi, p.c, Z, p.grad_floor, p.level_band)
    if not (reg.passed and reg.level_set_nonempty and p.c > 0):
        fail("regular-value", f"c={p.c} is not a usable regular value", reg.worst_point)
    stages.append({"stage": "regular-value", "pass": True, "report": reg.to_dict()})

    try:
        psi = p.eps_scale * section_potential(model, sections)
    except PreconditionError as exc:
        fail("section", str(exc), exc.witness)
    surface = locate_surface(phi - psi, Z[:2000], half_length=0.5)
    if len(surface):
        pv = phi(surface)
        inside = (pv > 0) & (pv < p.c)
    else:
        inside = np.array([True])
    if len(surface) == 0 or not inside.all():
        w = None if len(surface) == 0 else surface[int(np.argmin(inside))]
        fail("section", "surface {s psi = phi} is not inside {0 < phi < c}", w)
    stages.append(
        {
            "stage": "section",
            "pass": True,
            "surface_points": len(surface),
            "phi_range_on_surface": [number(pv.min()), number(pv.max())],
        }
    )

    spec = GlueSpec(phi, psi, lee, p.eps_band, Z)
    hyp = check_glue_hypotheses(spec)
    if not hyp.passed:
        fail("glue-hypotheses", f"normal-derivative margin {hyp.min_margin:.3g}", hyp.worst_point)
    stages.append({"stage": "glue-hypotheses", "pass": True, "report": hyp.to_dict()})

    glued = glue(spec, override=True)
    gv = glued(Z)
    if np.min(gv) <= 0:
        fail("glue", f"glued potential not positive ({np.min(gv):.3g})", Z[int(np.argmin(gv))])
    stages.append({"stage": "glue", "pass": True, "min_value": number(np.min(gv))})

    delta = p.delta
    while True:
        out = (glued + delta * phi) / (1.0 + delta)
        vals = out(Z)
        rep = check_psh(out, lee, Z, p.tol, strict_margin=p.strict_floor)
        if rep.strict and np.min(vals) >= p.positivity_floor:
            break
        delta *= 0.5
        if delta < p.delta_floor:
            fail("strictify", "no delta above the floor gives a positive strict potential", rep.worst_point)
    stages.append(
        {
            "stage": "strictify",
            "pass": True,
            "delta": delta,
            "min_value": number(np.min(vals)),
            "report": rep.to_dict(),
        }
    )
    return PositivizeResult(out, glued, psi, delta, stages)
