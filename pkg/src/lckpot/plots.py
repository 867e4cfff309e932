"""Static SVG heatmaps of 2-d slices through a field."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .forms import HermitianForm  # noqa: E402
from .positivity import min_eigenvalue  # noqa: E402
from .twisted import twisted_hessian_batch  # noqa: E402

__all__ = ["slice_grid", "heatmap_svg"]


def slice_grid(n: int, extent: float, resolution: int = 81, inner: float = 0.25):
    """Points ``(x, y, 0, ..., 0)`` with ``x = Re z1``, ``y = Re z2``.

    Points with ``|z| < inner`` are masked out because Hopf-model fields are
    singular at the origin.
    """
    t = np.linspace(-extent, extent, resolution)
    X, Y = np.meshgrid(t, t)
    Z = np.zeros((X.size, n), dtype=complex)
    Z[:, 0] = X.ravel()
    if n > 1:
        Z[:, 1] = Y.ravel()
    else:
        Z[:, 0] = X.ravel() + 1j * Y.ravel()
    mask = np.linalg.norm(Z, axis=1) >= inner
    return X, Y, Z, mask


def heatmap_svg(path, panels, n: int, extent: float, resolution: int = 81) -> Path:
    """Write potential-sign and min-eigenvalue maps for each ``(label, field, lee)``."""
    X, Y, Z, mask = slice_grid(n, extent, resolution)
    plt.rcParams["svg.hashsalt"] = "lckpot"
    fig, axes = plt.subplots(len(panels), 2, figsize=(8, 3.6 * len(panels)), squeeze=False)
    for row, (label, f, lee) in zip(axes, panels):
        ok = mask & f.domain(Z)
        val = np.full(len(Z), np.nan)
        ev = np.full(len(Z), np.nan)
        val[ok] = f(Z[ok])
        ev[ok] = min_eigenvalue(HermitianForm(twisted_hessian_batch(f, lee, Z[ok])))
        im = row[0].pcolormesh(X, Y, np.sign(val).reshape(X.shape), cmap="coolwarm", vmin=-1, vmax=1, shading="auto")
        row[0].set_title(f"{label}: sign of potential")
        fig.colorbar(im, ax=row[0])
        im = row[1].pcolormesh(X, Y, ev.reshape(X.shape), cmap="viridis", shading="auto")
        row[1].set_title(f"{label}: min eigenvalue")
        fig.colorbar(im, ax=row[1])
        for ax in row:
            ax.set_xlabel("Re z1")
            ax.set_ylabel("Re z2" if n > 1 else "Im z1")
            ax.set_aspect("equal")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path
