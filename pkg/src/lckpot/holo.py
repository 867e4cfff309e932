"""Holomorphic polynomials on C^n with exact first and second derivatives."""

from __future__ import annotations

from numbers import Number
from typing import Mapping

import numpy as np

__all__ = ["HoloPoly", "coordinate", "monomial"]


def _key(alpha) -> tuple[int, ...]:
    alpha = tuple(int(a) for a in alpha)
    if any(a < 0 for a in alpha):
        raise ValueError(f"negative exponent in multi-index {alpha}")
    return alpha


class HoloPoly:
    """A polynomial ``sum_a c_a z^a`` in ``n`` complex variables.

    Terms are stored as a mapping from multi-indices to complex
    coefficients; zero coefficients are dropped. Evaluation is vectorized
    over a batch of points of shape ``(N, n)``.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[tuple[int, ...], complex] | None = None):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.n = int(n)
        clean: dict[tuple[int, ...], complex] = {}
        for alpha, c in (terms or {}).items():
            alpha = _key(alpha)
            if len(alpha) != self.n:
                raise ValueError(f"multi-index {alpha} has wrong length for n={n}")
            c = complex(c)
            if c != 0:
                clean[alpha] = clean.get(alpha, 0) + c
        self.terms = {a: c for a, c in clean.items() if c != 0}

    @classmethod
    def constant(cls, n: int, c: complex) -> "HoloPoly":
        return cls(n, {(0,) * n: c})

    # --- structure -------------------------------------------------------

    @property
    def degree(self) -> int:
        return max((sum(a) for a in self.terms), default=0)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {sum(a) for a in self.terms}
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return degree is None or degs.pop() == degree

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for alpha, c in sorted(self.terms.items()):
            mono = "*".join(
                f"z{j + 1}" if a == 1 else f"z{j + 1}^{a}"
                for j, a in enumerate(alpha)
                if a
            )
            coef = f"{c.real:g}" if c.imag == 0 else f"({c.real:g}{c.imag:+g}i)"
            if not mono:
                parts.append(coef)
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{coef}*{mono}")
        return " + ".join(parts)

    # --- algebra ---------------------------------------------------------

    def _coerce(self, other) -> "HoloPoly":
        if isinstance(other, HoloPoly):
            if other.n != self.n:
                raise ValueError("dimension mismatch between polynomials")
            return other
        if isinstance(other, Number):
            return HoloPoly.constant(self.n, complex(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for a, c in other.terms.items():
            terms[a] = terms.get(a, 0) + c
        return HoloPoly(self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        return HoloPoly(self.n, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict[tuple[int, ...], complex] = {}
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                k = tuple(x + y for x, y in zip(a, b))
                terms[k] = terms.get(k, 0) + c * d
        return HoloPoly(self.n, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if int(k) != k or k < 0:
            raise ValueError("holomorphic polynomials only take non-negative integer powers")
        out = HoloPoly.constant(self.n, 1)
        for _ in range(int(k)):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, HoloPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    # --- evaluation ------------------------------------------------------

    def _check(self, Z: np.ndarray) -> None:
        if Z.shape[-1] != self.n:
            raise ValueError(f"polynomial in {self.n} variables evaluated at points of dimension {Z.shape[-1]}")

    @staticmethod
    def _mono(Z: np.ndarray, alpha) -> np.ndarray:
        out = np.ones(Z.shape[0], dtype=Z.dtype)
        for j, a in enumerate(alpha):
            if a:
                out = out * Z[:, j] ** a
        return out

    def value(self, Z: np.ndarray) -> np.ndarray:
        self._check(Z)
        out = np.zeros(Z.shape[0], dtype=Z.dtype)
        for alpha, c in self.terms.items():
            out = out + c * self._mono(Z, alpha)
        return out

    def grad(self, Z: np.ndarray) -> np.ndarray:
        """Holomorphic gradient, shape ``(N, n)``."""
        self._check(Z)
        out = np.zeros(Z.shape, dtype=Z.dtype)
        for alpha, c in self.terms.items():
            for j, a in enumerate(alpha):
                if a:
                    beta = list(alpha)
                    beta[j] -= 1
                    out[:, j] += c * a * self._mono(Z, beta)
        return out

    def hess(self, Z: np.ndarray) -> np.ndarray:
        """Holomorphic Hessian ``d^2 Q / dz_j dz_k``, shape ``(N, n, n)``."""
        self._check(Z)
        N, n = Z.shape
        out = np.zeros((N, n, n), dtype=Z.dtype)
        for alpha, c in self.terms.items():
            for j in range(n):
                for k in range(j, n):
                    beta = list(alpha)
                    if j == k:
                        f = beta[j] * (beta[j] - 1)
                        if f == 0:
                            continue
                        beta[j] -= 2
                    else:
                        f = beta[j] * beta[k]
                        if f == 0:
                            continue
                        beta[j] -= 1
                        beta[k] -= 1
                    term = c * f * self._mono(Z, beta)
                    out[:, j, k] += term
                    if j != k:
                        out[:, k, j] += term
        return out


def coordinate(n: int, j: int) -> HoloPoly:
    """The coordinate function ``z_j`` (0-based ``j``)."""
    if not 0 <= j < n:
        raise ValueError(f"coordinate index {j} out of range for n={n}")
    alpha = [0] * n
    alpha[j] = 1
    return HoloPoly(n, {tuple(alpha): 1})


def monomial(alpha, coefficient: complex = 1.0) -> HoloPoly:
    alpha = _key(alpha)
    return HoloPoly(len(alpha), {alpha: coefficient})
