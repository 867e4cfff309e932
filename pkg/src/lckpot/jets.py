"""Real scalar fields on open subsets of C^n with exact second-order jets.

Derivatives are Wirtinger derivatives. For a real field ``f`` a jet stores

* ``value``       f
* ``grad_z``      df/dz_j                      (df/dzbar_j is its conjugate)
* ``hess_mixed``  d^2 f / dz_j dzbar_k         (Hermitian, the complex Hessian)
* ``hess_holo``   d^2 f / dz_j dz_k            (symmetric)

Everything is vectorized: points come in batches of shape ``(N, n)`` and the
jet arrays carry a leading batch axis. Fields form an immutable expression
tree; jets are propagated through it by the sum, product and chain rules.
The same tree evaluated with ``order=0`` gives plain values, which is what
the finite-difference oracle in this module consumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from numbers import Number
from typing import Callable, Sequence

import numpy as np

from .holo import HoloPoly

__all__ = [
    "DomainError",
    "Jet2",
    "ScalarField",
    "Smooth1D",
    "as_points",
    "eval_jet2",
    "finite_diff_jet2",
    "constant",
    "norm_sq",
    "re",
    "im",
    "abs_sq",
    "abs_holo",
    "exp",
    "log",
    "sqrt",
    "power",
    "reciprocal",
    "compose_1d",
    "compose_2d",
]


class DomainError(ValueError):
    """A field was evaluated outside the set where it is smooth."""

    def __init__(self, message: str, field: str | None = None, point=None):
        super().__init__(message)
        self.field = field
        self.point = None if point is None else np.asarray(point)


def as_points(p) -> tuple[np.ndarray, bool]:
    """Coerce ``p`` to a complex batch of shape ``(N, n)``.

    Returns the batch and a flag telling whether a single point was given.
    Extended-precision input stays in extended precision.
    """
    Z = np.asarray(p)
    single = Z.ndim == 1
    if Z.ndim not in (1, 2):
        raise ValueError(f"points must be 1-d or 2-d, got shape {Z.shape}")
    if Z.dtype not in (np.clongdouble, np.complex128):
        if Z.dtype == np.longdouble:
            Z = Z.astype(np.clongdouble)
        else:
            Z = Z.astype(np.complex128)
    Z = np.atleast_2d(Z)
    if Z.shape[1] < 1:
        raise ValueError("points need at least one coordinate")
    return Z, single


@dataclass(frozen=True)
class Jet2:
    """Value and Wirtinger derivatives up to order two (batched or single)."""

    value: np.ndarray
    grad_z: np.ndarray | None = None
    hess_mixed: np.ndarray | None = None
    hess_holo: np.ndarray | None = None

    @property
    def grad_zbar(self) -> np.ndarray:
        return np.conj(self.grad_z)

    @property
    def real_gradient(self) -> np.ndarray:
        """Gradient in real coordinates ``(x_1..x_n, y_1..y_n)``."""
        g = self.grad_z
        return np.concatenate([2 * g.real, -2 * g.imag], axis=-1)

    @property
    def real_hessian(self) -> np.ndarray:
        """Hessian in real coordinates ``(x_1..x_n, y_1..y_n)``."""
        H, S = self.hess_mixed, self.hess_holo
        xx = 2 * (H.real + S.real)
        yy = 2 * (H.real - S.real)
        xy = 2 * (H.imag - S.imag)
        top = np.concatenate([xx, xy], axis=-1)
        bottom = np.concatenate([np.swapaxes(xy, -1, -2), yy], axis=-1)
        return np.concatenate([top, bottom], axis=-2)

    def __getitem__(self, idx) -> "Jet2":
        pick = lambda a: None if a is None else a[idx]  # noqa: E731
        return Jet2(pick(self.value), pick(self.grad_z), pick(self.hess_mixed), pick(self.hess_holo))

    def __len__(self) -> int:
        return len(self.value)


def _outer(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a[:, :, None] * b[:, None, :]


def _herm_outer(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``a b^* + b a^*``, Hermitian by construction."""
    return _outer(a, np.conj(b)) + _outer(b, np.conj(a))


def _sym_outer(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return _outer(a, b) + _outer(b, a)


def _real_dtype(Z: np.ndarray):
    return np.longdouble if Z.dtype == np.clongdouble else np.float64


# ---------------------------------------------------------------------------
# one-variable outer functions


@dataclass(frozen=True)
class Smooth1D:
    """A smooth real function of one real variable with two derivatives.

    ``domain`` returns a boolean mask of arguments where the function is
    smooth; ``None`` means everywhere.
    """

    name: str
    f: Callable[[np.ndarray], np.ndarray]
    df: Callable[[np.ndarray], np.ndarray]
    d2f: Callable[[np.ndarray], np.ndarray]
    domain: Callable[[np.ndarray], np.ndarray] | None = None
    domain_desc: str = ""


EXP = Smooth1D("exp", np.exp, np.exp, np.exp)
LOG = Smooth1D("log", np.log, lambda x: 1 / x, lambda x: -1 / x**2, lambda x: x > 0, "positive argument")
SQRT = Smooth1D(
    "sqrt",
    np.sqrt,
    lambda x: 0.5 / np.sqrt(x),
    lambda x: -0.25 / (x * np.sqrt(x)),
    lambda x: x > 0,
    "positive argument (sqrt is not smooth at 0)",
)
RECIPROCAL = Smooth1D(
    "reciprocal",
    lambda x: 1 / x,
    lambda x: -1 / x**2,
    lambda x: 2 / x**3,
    lambda x: x != 0,
    "non-zero argument",
)


def _power_fn(p: float) -> Smooth1D:
    if float(p).is_integer() and p >= 0:
        k = int(p)
        return Smooth1D(
            f"pow{k}",
            lambda x: x**k,
            (lambda x: k * x ** (k - 1)) if k >= 1 else (lambda x: np.zeros_like(x)),
            (lambda x: k * (k - 1) * x ** (k - 2)) if k >= 2 else (lambda x: np.zeros_like(x)),
        )
    if float(p).is_integer():
        k = int(p)
        return Smooth1D(
            f"pow{k}",
            lambda x: x**k,
            lambda x: k * x ** (k - 1),
            lambda x: k * (k - 1) * x ** (k - 2),
            lambda x: x != 0,
            "non-zero argument",
        )
    return Smooth1D(
        f"pow{p:g}",
        lambda x: x**p,
        lambda x: p * x ** (p - 1),
        lambda x: p * (p - 1) * x ** (p - 2),
        lambda x: x > 0,
        "positive argument",
    )


# ---------------------------------------------------------------------------
# expression tree


class ScalarField:
    """Base class of the immutable field expression tree."""

    name: str = "field"

    def _jet(self, Z: np.ndarray, order: int, check: bool) -> Jet2:
        raise NotImplementedError

    # public evaluation

    def jet(self, p) -> Jet2:
        Z, single = as_points(p)
        J = self._jet(Z, 2, True)
        return J[0] if single else J

    def values(self, p) -> np.ndarray:
        Z, single = as_points(p)
        v = self._jet(Z, 0, True).value
        return v[0] if single else v

    __call__ = values

    def domain(self, p) -> np.ndarray:
        """Boolean mask of points at which the field is smooth."""
        Z, single = as_points(p)
        with np.errstate(all="ignore"):
            v = self._jet(Z, 0, False).value
        mask = np.isfinite(v)
        return bool(mask[0]) if single else mask

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"

    # algebra

    def __add__(self, other):
        other = _as_field(other)
        if other is NotImplemented:
            return other
        return LinearCombination([(1.0, self), (1.0, other)])

    __radd__ = __add__

    def __neg__(self):
        return LinearCombination([(-1.0, self)])

    def __sub__(self, other):
        other = _as_field(other)
        if other is NotImplemented:
            return other
        return LinearCombination([(1.0, self), (-1.0, other)])

    def __rsub__(self, other):
        other = _as_field(other)
        if other is NotImplemented:
            return other
        return LinearCombination([(1.0, other), (-1.0, self)])

    def __mul__(self, other):
        if isinstance(other, Number) and not isinstance(other, complex):
            return LinearCombination([(float(other), self)])
        other = _as_field(other)
        if other is NotImplemented:
            return other
        return Product(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number) and not isinstance(other, complex):
            return LinearCombination([(1.0 / float(other), self)])
        other = _as_field(other)
        if other is NotImplemented:
            return other
        return Product(self, Compose1D(other, RECIPROCAL))

    def __rtruediv__(self, other):
        other = _as_field(other)
        if other is NotImplemented:
            return other
        return Product(other, Compose1D(self, RECIPROCAL))

    def __pow__(self, p):
        return power(self, p)


def _as_field(x):
    if isinstance(x, ScalarField):
        return x
    if isinstance(x, Number) and not isinstance(x, complex):
        return Constant(float(x))
    return NotImplemented


class Constant(ScalarField):
    def __init__(self, c: float):
        self.c = float(c)
        self.name = f"{self.c:g}"

    def _jet(self, Z, order, check):
        N, n = Z.shape
        v = np.full(N, self.c, dtype=_real_dtype(Z))
        if order == 0:
            return Jet2(v)
        zc = np.zeros((N, n), dtype=Z.dtype)
        zm = np.zeros((N, n, n), dtype=Z.dtype)
        return Jet2(v, zc, zm, zm.copy())


class NormSq(ScalarField):
    """``|z|^2 = sum_j |z_j|^2``."""

    name = "|z|^2"

    def _jet(self, Z, order, check):
        v = np.sum(Z.real**2 + Z.imag**2, axis=1)
        if order == 0:
            return Jet2(v)
        N, n = Z.shape
        H = np.broadcast_to(np.eye(n, dtype=Z.dtype), (N, n, n)).copy()
        return Jet2(v, np.conj(Z), H, np.zeros((N, n, n), dtype=Z.dtype))


class ReHolo(ScalarField):
    """Real part of a holomorphic polynomial; pluriharmonic."""

    def __init__(self, Q: HoloPoly, imaginary: bool = False):
        self.Q = Q
        self.imaginary = imaginary
        self.name = f"{'Im' if imaginary else 'Re'}({Q!r})"

    def _jet(self, Z, order, check):
        q = self.Q.value(Z)
        v = q.imag if self.imaginary else q.real
        if order == 0:
            return Jet2(v)
        # Re Q = (Q + Qbar)/2, Im Q = (Q - Qbar)/(2i)
        scale = 0.5 / 1j if self.imaginary else 0.5
        N, n = Z.shape
        return Jet2(
            v,
            scale * self.Q.grad(Z),
            np.zeros((N, n, n), dtype=Z.dtype),
            scale * self.Q.hess(Z),
        )


class AbsSqHolo(ScalarField):
    """``|Q|^2`` for a holomorphic polynomial ``Q``; plurisubharmonic."""

    def __init__(self, Q: HoloPoly):
        self.Q = Q
        self.name = f"|{Q!r}|^2"

    def _jet(self, Z, order, check):
        q = self.Q.value(Z)
        v = q.real**2 + q.imag**2
        if order == 0:
            return Jet2(v)
        dq = self.Q.grad(Z)
        qbar = np.conj(q)[:, None]
        return Jet2(
            v,
            dq * qbar,
            _outer(dq, np.conj(dq)),
            self.Q.hess(Z) * qbar[:, :, None],
        )


class LinearCombination(ScalarField):
    def __init__(self, terms: Sequence[tuple[float, ScalarField]]):
        flat: list[tuple[float, ScalarField]] = []
        for c, f in terms:
            if isinstance(f, LinearCombination):
                flat.extend((c * c2, f2) for c2, f2 in f.terms)
            else:
                flat.append((float(c), f))
        self.terms = tuple(flat)
        parts = []
        for c, f in self.terms:
            parts.append(f.name if c == 1 else f"{c:g}*({f.name})")
        self.name = " + ".join(parts) if parts else "0"

    def _jet(self, Z, order, check):
        N, n = Z.shape
        v = np.zeros(N, dtype=_real_dtype(Z))
        if order == 0:
            for c, f in self.terms:
                v = v + c * f._jet(Z, 0, check).value
            return Jet2(v)
        g = np.zeros((N, n), dtype=Z.dtype)
        H = np.zeros((N, n, n), dtype=Z.dtype)
        S = np.zeros((N, n, n), dtype=Z.dtype)
        for c, f in self.terms:
            J = f._jet(Z, 2, check)
            v = v + c * J.value
            g = g + c * J.grad_z
            H = H + c * J.hess_mixed
            S = S + c * J.hess_holo
        return Jet2(v, g, H, S)


class Product(ScalarField):
    def __init__(self, f: ScalarField, g: ScalarField):
        self.f, self.g = f, g
        self.name = f"({f.name})*({g.name})"

    def _jet(self, Z, order, check):
        A = self.f._jet(Z, order, check)
        B = self.g._jet(Z, order, check)
        v = A.value * B.value
        if order == 0:
            return Jet2(v)
        a, b = A.value[:, None], B.value[:, None]
        a3, b3 = a[:, :, None], b[:, :, None]
        return Jet2(
            v,
            A.grad_z * b + a * B.grad_z,
            A.hess_mixed * b3 + a3 * B.hess_mixed + _herm_outer(A.grad_z, B.grad_z),
            A.hess_holo * b3 + a3 * B.hess_holo + _sym_outer(A.grad_z, B.grad_z),
        )


class Compose1D(ScalarField):
    """``h(f)`` for a smooth one-variable ``h``."""

    def __init__(self, f: ScalarField, fn: Smooth1D):
        self.f, self.fn = f, fn
        self.name = f"{fn.name}({f.name})"

    def _jet(self, Z, order, check):
        A = self.f._jet(Z, order, check)
        x = A.value
        if self.fn.domain is not None:
            with np.errstate(invalid="ignore"):
                ok = self.fn.domain(x)
            bad = ~ok & np.isfinite(x)
            if check and bad.any():
                i = int(np.flatnonzero(bad)[0])
                raise DomainError(
                    f"{self.fn.name} needs a {self.fn.domain_desc or 'valid argument'}, "
                    f"but sub-field '{self.f.name}' has value {float(x[i])!r} at z={Z[i]}",
                    field=self.f.name,
                    point=Z[i],
                )
            if not check:
                x = np.where(ok, x, np.nan)
        with np.errstate(all="ignore") if not check else _nullctx():
            v = self.fn.f(x)
            if order == 0:
                return Jet2(v)
            d1 = self.fn.df(x)
            d2 = self.fn.d2f(x)
        g = A.grad_z
        c1, c2 = d1[:, None], d2[:, None, None]
        return Jet2(
            v,
            c1 * g,
            c1[:, :, None] * A.hess_mixed + c2 * _outer(g, np.conj(g)),
            c1[:, :, None] * A.hess_holo + c2 * _outer(g, g),
        )


class Compose2D(ScalarField):
    """``K(f, g)`` for a smooth two-variable kernel.

    ``kernel(x, y, order)`` must return ``(value, d1, d2, d11, d12, d22)``;
    the derivative entries may be ``None`` when ``order == 0``.
    """

    def __init__(self, f: ScalarField, g: ScalarField, kernel, name: str):
        self.f, self.g, self.kernel = f, g, kernel
        self.name = f"{name}({f.name}, {g.name})"

    def _jet(self, Z, order, check):
        A = self.f._jet(Z, order, check)
        B = self.g._jet(Z, order, check)
        v, k1, k2, k11, k12, k22 = self.kernel(A.value, B.value, order)
        if order == 0:
            return Jet2(v)
        ga, gb = A.grad_z, B.grad_z
        e = lambda c: c[:, None, None]  # noqa: E731
        grad = k1[:, None] * ga + k2[:, None] * gb
        H = (
            e(k1) * A.hess_mixed
            + e(k2) * B.hess_mixed
            + e(k11) * _outer(ga, np.conj(ga))
            + e(k12) * _herm_outer(ga, gb)
            + e(k22) * _outer(gb, np.conj(gb))
        )
        S = (
            e(k1) * A.hess_holo
            + e(k2) * B.hess_holo
            + e(k11) * _outer(ga, ga)
            + e(k12) * _sym_outer(ga, gb)
            + e(k22) * _outer(gb, gb)
        )
        return Jet2(v, grad, H, S)


class _nullctx:
    def __enter__(self):
        return None

    def __exit__(self, *exc):
        return False


# ---------------------------------------------------------------------------
# constructors


def constant(c: float) -> ScalarField:
    return Constant(c)


def norm_sq() -> ScalarField:
    return NormSq()


def re(Q: HoloPoly) -> ScalarField:
    return ReHolo(Q)


def im(Q: HoloPoly) -> ScalarField:
    return ReHolo(Q, imaginary=True)


def abs_sq(Q: HoloPoly) -> ScalarField:
    return AbsSqHolo(Q)


def abs_holo(Q: HoloPoly) -> ScalarField:
    """``|Q|``; its domain excludes the zero set of ``Q``."""
    out = Compose1D(AbsSqHolo(Q), SQRT)
    out.name = f"|{Q!r}|"
    return out


def compose_1d(f: ScalarField, fn: Smooth1D) -> ScalarField:
    return Compose1D(f, fn)


def compose_2d(f: ScalarField, g: ScalarField, kernel, name: str = "K") -> ScalarField:
    return Compose2D(f, g, kernel, name)


def exp(f: ScalarField) -> ScalarField:
    return Compose1D(f, EXP)


def log(f: ScalarField) -> ScalarField:
    return Compose1D(f, LOG)


def sqrt(f: ScalarField) -> ScalarField:
    return Compose1D(f, SQRT)


def reciprocal(f: ScalarField) -> ScalarField:
    return Compose1D(f, RECIPROCAL)


def power(f: ScalarField, p: float) -> ScalarField:
    if p == 1:
        return f
    return Compose1D(f, _power_fn(float(p)))


# ---------------------------------------------------------------------------
# evaluation entry points


def eval_jet2(f: ScalarField, p) -> Jet2:
    """Exact jet of ``f`` at a point or batch of points."""
    return f.jet(p)


def finite_diff_jet2(f, p, h: float, dtype=np.longdouble) -> Jet2:
    """Central-difference approximation of the jet of ``f`` at ``p``.

    ``f`` is anything mapping a complex batch ``(N, n)`` to real values
    (a :class:`ScalarField` is used through its value-only path). The
    stencil is evaluated in ``dtype``; extended precision keeps the
    roundoff of the second differences, of size ``eps / h**2``, well below
    the ``O(h**2)`` truncation error for the step sizes used in testing.

    Raises :class:`DomainError` if any stencil point is outside the domain.
    """
    if h <= 0:
        raise ValueError("step h must be positive")
    Z0, single = as_points(p)
    N, n = Z0.shape
    cdtype = np.clongdouble if dtype == np.longdouble else np.complex128
    Z = Z0.astype(cdtype)
    hh = np.asarray(h, dtype=dtype)
    m = 2 * n
    # real direction a -> complex displacement
    E = np.zeros((m, n), dtype=cdtype)
    for j in range(n):
        E[j, j] = 1
        E[n + j, j] = 1j

    offsets = [np.zeros(n, dtype=cdtype)]
    for a in range(m):
        offsets += [hh * E[a], -hh * E[a]]
    for a, b in combinations(range(m), 2):
        for sa in (1, -1):
            for sb in (1, -1):
                offsets.append(hh * (sa * E[a] + sb * E[b]))
    offsets = np.array(offsets)
    S = len(offsets)
    pts = (Z[:, None, :] + offsets[None, :, :]).reshape(N * S, n)

    if isinstance(f, ScalarField):
        ok = f.domain(pts)
        if not np.all(ok):
            i = int(np.flatnonzero(~ok)[0])
            raise DomainError(
                f"finite-difference stencil leaves the domain of '{f.name}' near z={Z0[i // S]}",
                field=f.name,
                point=Z0[i // S],
            )
        vals = f.values(pts)
    else:
        vals = np.asarray(f(pts))
    vals = np.asarray(vals, dtype=dtype).reshape(N, S)

    f0 = vals[:, 0]
    fp = vals[:, 1 : 1 + 2 * m : 2]
    fm = vals[:, 2 : 2 + 2 * m : 2]
    grad_r = (fp - fm) / (2 * hh)
    hess_r = np.zeros((N, m, m), dtype=dtype)
    idx = np.arange(m)
    hess_r[:, idx, idx] = (fp - 2 * f0[:, None] + fm) / hh**2
    k = 1 + 2 * m
    for a, b in combinations(range(m), 2):
        fpp, fpm, fmp, fmm = (vals[:, k + i] for i in range(4))
        k += 4
        hess_r[:, a, b] = hess_r[:, b, a] = (fpp - fpm - fmp + fmm) / (4 * hh**2)

    # real -> Wirtinger
    fx, fy = grad_r[:, :n], grad_r[:, n:]
    Hxx, Hyy = hess_r[:, :n, :n], hess_r[:, n:, n:]
    Hxy = hess_r[:, :n, n:]
    Hyx = np.swapaxes(Hxy, 1, 2)
    g = 0.5 * (fx - 1j * fy)
    Hm = 0.25 * (Hxx + Hyy + 1j * (Hxy - Hyx))
    Sh = 0.25 * (Hxx - Hyy - 1j * (Hxy + Hyx))
    J = Jet2(
        f0.astype(np.float64),
        g.astype(np.complex128),
        Hm.astype(np.complex128),
        Sh.astype(np.complex128),
    )
    return J[0] if single else J
