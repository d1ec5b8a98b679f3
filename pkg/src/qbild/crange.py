"""Polygonal enclosures of the complex numerical range by an angle sweep.

For each ``theta`` the top eigenpair of ``(e^{-i theta} A + e^{i theta} A*) / 2``
gives the support value of ``W_C(A)`` in direction ``theta`` and a boundary
point ``x* A x``.  Boundary points span the inner polygon; the support lines
cut out the outer one.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .geometry import RegionPair, halfplane_polygon, hull
from .linalg import jacobi_eigh

DEFAULT_M = 720


def _check_grid(m: int) -> None:
    if int(m) != m or m < 8:
        raise ConfigError(f"sweep grid m >= 8 required, got {m}")


@dataclass(frozen=True, eq=False)
class SweepResult:
    regions: RegionPair
    m: int
    thetas: np.ndarray
    lambdas: np.ndarray
    points: np.ndarray

    @property
    def inner(self):
        return self.regions.inner

    @property
    def outer(self):
        return self.regions.outer

    @property
    def support_values(self):
        return list(zip(self.thetas.tolist(), self.lambdas.tolist(), self.points.tolist()))

    def gap(self) -> float:
        return self.regions.gap()

    def csv_rows(self):
        """Rows ``theta, lambda_max, re, im``."""
        return [(t, lam, z.real, z.imag) for t, lam, z in zip(self.thetas, self.lambdas, self.points)]


def grid(m: int) -> np.ndarray:
    return 2.0 * np.pi * np.arange(m) / m


def support_eigs(A, thetas):
    """Top eigenvalues and unit eigenvectors of the rotated Hermitian parts."""
    A = np.asarray(A, dtype=complex)
    rot = np.exp(-1j * np.asarray(thetas))[:, None, None]
    Hs = 0.5 * (rot * A[None] + np.conj(rot) * A.conj().T[None])
    vals, vecs = jacobi_eigh(Hs)
    return vals[:, 0], vecs[:, :, 0]


def sweep(A, m: int = DEFAULT_M) -> SweepResult:
    _check_grid(m)
    A = np.asarray(A, dtype=complex)
    thetas = grid(m)
    lam, x = support_eigs(A, thetas)
    points = np.einsum("bi,ij,bj->b", x.conj(), A, x)
    inner = hull(points)
    outer = halfplane_polygon(thetas, lam)
    return SweepResult(RegionPair(inner, outer), m, thetas, lam, points)


def combine(a: SweepResult, b: SweepResult) -> SweepResult:
    """Enclosures of ``conv{W_a, W_b}`` from two sweeps on the same grid.

    The support function of the hull is the pointwise maximum, so the outer
    polygon uses ``max(lambda_a, lambda_b)`` per angle.
    """
    if a.m != b.m:
        raise ValueError("sweeps must share the angle grid")
    take_a = a.lambdas >= b.lambdas
    lam = np.where(take_a, a.lambdas, b.lambdas)
    pts = np.where(take_a, a.points, b.points)
    inner = hull(np.concatenate([a.inner.vertices, b.inner.vertices]))
    outer = halfplane_polygon(a.thetas, lam)
    return SweepResult(RegionPair(inner, outer), a.m, a.thetas, lam, pts)


def cradius(A, m: int = DEFAULT_M) -> tuple[float, float]:
    """Lower/upper enclosure of the numerical radius ``w_C(A)``."""
    s = sweep(A, m)
    return float(np.max(np.abs(s.inner.vertices))), float(np.max(np.abs(s.outer.vertices)))


def default_symmetry_tol(A) -> float:
    A = np.asarray(A, dtype=complex)
    return 1e-9 * (1.0 + float(np.max(np.abs(A))) if A.size else 1.0)


def conj_symmetric(A, m: int = DEFAULT_M, tol: float | None = None) -> bool:
    """Whether ``W_C(A) = W_C(A*)``, judged by support values on the grid.

    ``h_{A*}(theta) = h_A(-theta)`` and ``-theta_k`` is ``theta_{m-k}``, so one
    sweep suffices.
    """
    _check_grid(m)
    if tol is None:
        tol = default_symmetry_tol(A)
    lam, _ = support_eigs(A, grid(m))
    mirrored = lam[(-np.arange(m)) % m]
    return bool(np.max(np.abs(lam - mirrored)) <= tol)
