"""Randomized families of (twisted) plurisubharmonic test fields."""

from __future__ import annotations

import numpy as np

from . import jets
from .holo import HoloPoly
from .jets import ScalarField

__all__ = ["random_linear", "random_poly", "random_psh_ball", "random_twisted_psh", "matched_pair"]


def _cplx(rng, size):
    return rng.normal(size=size) + 1j * rng.normal(size=size)


def random_linear(rng: np.random.Generator, n: int) -> HoloPoly:
    c = _cplx(rng, n)
    return HoloPoly(n, {tuple(int(j == k) for j in range(n)): c[k] for k in range(n)})


def random_poly(rng: np.random.Generator, n: int, degree: int, homogeneous: bool = False) -> HoloPoly:
    terms = {}
    for alpha in np.ndindex(*([degree + 1] * n)):
        d = sum(alpha)
        if d > degree or (homogeneous and d != degree):
            continue
        terms[tuple(alpha)] = complex(_cplx(rng, 1)[0]) / (1 + d)
    return HoloPoly(n, terms)


def random_psh_ball(rng: np.random.Generator, n: int, radius: float = 1.0, strict: float = 0.0) -> ScalarField:
    """Positive combination of psh building blocks on the ball of ``radius``.

    Blocks: ``|L|^2`` for linear ``L``, ``|P|^2`` for polynomials ``P``, a
    pluriharmonic ``Re Q``, and ``-log(R^2 - |z|^2)`` with ``R > radius``
    (``-log(-u)`` of the negative psh ``u = |z|^2 - R^2``). ``strict`` adds
    ``strict * |z|^2`` so the complex Hessian is at least ``strict``.
    """
    f: ScalarField = jets.re(random_poly(rng, n, 3))
    for _ in range(rng.integers(1, 3)):
        f = f + float(rng.uniform(0.1, 1.0)) * jets.abs_sq(random_linear(rng, n))
    f = f + float(rng.uniform(0.05, 0.5)) * jets.abs_sq(random_poly(rng, n, 2))
    if rng.random() < 0.5:
        R2 = (radius + float(rng.uniform(0.5, 2.0))) ** 2
        f = f + float(rng.uniform(0.1, 1.0)) * (-jets.log(R2 - jets.norm_sq()))
    if strict:
        f = f + strict * jets.norm_sq()
    return f


def random_twisted_psh(rng: np.random.Generator, n: int, strict: float = 0.0) -> ScalarField:
    """Quotient potential on a Hopf model whose lift is psh of weight 1.

    The lift is ``c |z|^2 + sum a_i |L_i|^2 + b |F| + Re Q`` with ``F`` a map
    of degree-2 monomials and ``Q`` quadratic; ``c >= strict``.
    """
    c = strict + float(rng.uniform(0.0, 0.5))
    lift: ScalarField = c * jets.norm_sq() + jets.re(random_poly(rng, n, 2, homogeneous=True))
    for _ in range(rng.integers(1, 3)):
        lift = lift + float(rng.uniform(0.1, 1.0)) * jets.abs_sq(random_linear(rng, n))
    if rng.random() < 0.5:
        F = None
        for j in range(n):
            alpha = tuple(2 * int(k == j) for k in range(n))
            t = jets.abs_sq(HoloPoly(n, {alpha: complex(_cplx(rng, 1)[0])}))
            F = t if F is None else F + t
        lift = lift + float(rng.uniform(0.1, 1.0)) * jets.sqrt(F)
    return lift / jets.norm_sq()


def matched_pair(phi: ScalarField, psi: ScalarField, Z: np.ndarray, twisted: bool) -> ScalarField:
    """Adjust ``psi`` so that ``phi - psi`` changes sign on ``Z``.

    Untwisted fields are shifted by a constant; twisted ones are scaled by a
    positive factor, which preserves twisted plurisubharmonicity.
    """
    a, b = np.median(phi(Z)), np.median(psi(Z))
    if twisted:
        return float(a / b) * psi if a > 0 and b > 0 else psi
    return psi + float(a - b)
