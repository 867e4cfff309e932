"""Pointwise real (1,1)-forms as Hermitian matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["HermitianForm", "NumericError"]


class NumericError(ArithmeticError):
    pass


@dataclass(frozen=True)
class HermitianForm:
    """``sum_jk H[j, k] dz_j ^ dzbar_k`` against the coordinate frame.

    ``matrix`` has shape ``(n, n)`` or a batch ``(N, n, n)``. Entries are
    ``d^2 f / dz_j dzbar_k`` for a potential ``f``; the form is positive
    exactly when the matrix is positive definite.
    """

    matrix: np.ndarray

    @property
    def n(self) -> int:
        return self.matrix.shape[-1]

    def hermitian_defect(self) -> float:
        M = self.matrix
        return float(np.max(np.abs(M - np.conj(np.swapaxes(M, -1, -2))), initial=0.0))

    def symmetrized(self) -> np.ndarray:
        M = np.asarray(self.matrix)
        if not np.all(np.isfinite(M)):
            raise NumericError("Hermitian form has non-finite entries")
        return 0.5 * (M + np.conj(np.swapaxes(M, -1, -2)))

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.symmetrized())

    def min_eigenvalue(self):
        ev = self.eigenvalues()[..., 0]
        return float(ev) if ev.ndim == 0 else ev

    def __add__(self, other):
        return HermitianForm(self.matrix + other.matrix)

    def __sub__(self, other):
        return HermitianForm(self.matrix - other.matrix)

    def __mul__(self, c):
        c = np.asarray(c)
        return HermitianForm(self.matrix * (c[..., None, None] if c.ndim else c))

    __rmul__ = __mul__

    def __getitem__(self, idx) -> "HermitianForm":
        return HermitianForm(self.matrix[idx])
