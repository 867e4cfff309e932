"""Deterministic low-discrepancy point sets in C^n.

Points come from a scrambled Halton sequence (``scipy.stats.qmc``) seeded
per run, mapped to balls, shells and boxes. Samplers are cheap immutable
descriptions; ``sample()`` always returns the same array for the same
parameters, and ``batches()`` splits it into disjoint chunks.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np
from scipy.stats import norm, qmc

__all__ = ["Sampler", "ball", "shell", "annulus", "box", "as_point_array"]


def _unit_cube(dim: int, count: int, seed: int) -> np.ndarray:
    engine = qmc.Halton(d=dim, scramble=True, seed=seed)
    return engine.random(count)


def _directions(U: np.ndarray, n: int) -> np.ndarray:
    g = norm.ppf(np.clip(U, 1e-12, 1 - 1e-12))
    z = g[:, :n] + 1j * g[:, n : 2 * n]
    return z / np.linalg.norm(z, axis=1, keepdims=True)


@dataclass(frozen=True)
class Sampler:
    """A reproducible finite point set in C^n.

    ``kind`` is one of ``"ball"``, ``"shell"`` (radii log-uniform in
    ``[r_min, r_max)``) or ``"box"`` (each real coordinate uniform in
    ``[-half_width, half_width]``). ``extra`` points (e.g. known critical
    points) are appended after the sequence.
    """

    kind: str
    n: int
    count: int
    seed: int = 0
    r_min: float = 0.0
    r_max: float = 1.0
    center: tuple = ()
    extra: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if self.kind not in ("ball", "shell", "box"):
            raise ValueError(f"unknown sampler kind {self.kind!r}")
        if self.n < 1 or self.count < 0:
            raise ValueError("need n >= 1 and count >= 0")

    def sample(self) -> np.ndarray:
        n = self.n
        if self.count:
            U = _unit_cube(2 * n + 1, self.count, self.seed)
            if self.kind == "box":
                w = self.r_max
                Z = (2 * U[:, :n] - 1) * w + 1j * (2 * U[:, n : 2 * n] - 1) * w
            else:
                d = _directions(U, n)
                v = U[:, 2 * n]
                if self.kind == "ball":
                    r = self.r_max * v ** (1.0 / (2 * n))
                else:
                    r = self.r_min * (self.r_max / self.r_min) ** v
                Z = d * r[:, None]
        else:
            Z = np.zeros((0, n), dtype=complex)
        if self.center:
            Z = Z + np.asarray(self.center, dtype=complex)[None, :]
        if self.extra:
            Z = np.vstack([Z, np.asarray(self.extra, dtype=complex).reshape(-1, n)])
        return Z

    def batches(self, size: int = 4096):
        Z = self.sample()
        for i in range(0, len(Z), size):
            yield Z[i : i + size]

    def with_count(self, count: int) -> "Sampler":
        return replace(self, count=int(count))

    def with_seed(self, seed: int) -> "Sampler":
        return replace(self, seed=int(seed))

    def with_extra(self, points) -> "Sampler":
        pts = tuple(tuple(complex(c) for c in p) for p in np.atleast_2d(points))
        return replace(self, extra=self.extra + pts)

    def describe(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "count": self.count,
            "seed": self.seed,
            "r_min": self.r_min,
            "r_max": self.r_max,
            "extra_points": len(self.extra),
        }


def ball(n: int, radius: float = 1.0, count: int = 10_000, seed: int = 0, center=()) -> Sampler:
    return Sampler("ball", n, count, seed, 0.0, float(radius), tuple(center))


def shell(n: int, r_min: float, r_max: float, count: int = 10_000, seed: int = 0) -> Sampler:
    if not 0 < r_min < r_max:
        raise ValueError("need 0 < r_min < r_max")
    return Sampler("shell", n, count, seed, float(r_min), float(r_max))


def annulus(n: int, lam: float, count: int = 10_000, seed: int = 0) -> Sampler:
    """Fundamental domain ``1 <= |z| < lam`` of the dilation ``z -> lam z``."""
    return shell(n, 1.0, lam, count, seed)


def box(n: int, half_width: float = 1.0, count: int = 10_000, seed: int = 0) -> Sampler:
    return Sampler("box", n, count, seed, 0.0, float(half_width))


def as_point_array(points) -> np.ndarray:
    """Accept a :class:`Sampler` or an array of points."""
    if isinstance(points, Sampler):
        return points.sample()
    Z = np.asarray(points, dtype=complex)
    return np.atleast_2d(Z)
