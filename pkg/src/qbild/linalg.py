"""Small dense complex linear algebra.

The eigensolver is a cyclic complex Jacobi method.  It runs on stacks of
matrices at once, which is how the angle sweep uses it: every rotation
``(p, q)`` is applied to the whole stack in one vectorized step.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import NotHermitian
from .quat import QMatrix, as_qmatrix

JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 40


def inf_norm(M) -> float:
    M = np.asarray(M)
    if M.size == 0:
        return 0.0
    return float(np.max(np.sum(np.abs(M), axis=-1)))


def is_hermitian(M, rtol: float = 1e-12) -> bool:
    M = np.asarray(M, dtype=complex)
    return inf_norm(M - M.conj().T) <= rtol * (1.0 + inf_norm(M))


def _jacobi_stack(A: np.ndarray, tol: float, max_sweeps: int):
    """Diagonalize a ``(B, n, n)`` stack of Hermitian matrices in place."""
    B, n, _ = A.shape
    V = np.broadcast_to(np.eye(n, dtype=complex), (B, n, n)).copy()
    if n == 1:
        return A, V, 0
    fro = np.sqrt(np.sum(np.abs(A) ** 2, axis=(1, 2)))
    offmask = ~np.eye(n, dtype=bool)
    sweeps = 0
    for sweeps in range(max_sweeps + 1):
        off = np.sqrt(np.sum(np.abs(A[:, offmask]) ** 2, axis=1))
        if np.all(off <= tol * fro) or sweeps == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[:, p, q]
                mag = np.abs(apq)
                # entries this small cannot move an eigenvalue; rotating on them overflows
                live = mag > 1e-30 * fro
                safe = np.where(live, mag, 1.0)
                phase = np.where(live, apq / safe, 1.0)
                theta = (A[:, q, q].real - A[:, p, p].real) / (2.0 * safe)
                sgn = np.where(theta >= 0.0, 1.0, -1.0)
                t = np.where(live, sgn / (np.abs(theta) + np.hypot(theta, 1.0)), 0.0)
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                pc = phase.conj()
                R = np.empty((B, 2, 2), dtype=complex)
                R[:, 0, 0] = c
                R[:, 0, 1] = s
                R[:, 1, 0] = -s * pc
                R[:, 1, 1] = c * pc
                idx = [p, q]
                A[:, :, idx] = A[:, :, idx] @ R
                A[:, idx, :] = np.conj(np.swapaxes(R, 1, 2)) @ A[:, idx, :]
                A[:, p, q] = 0.0
                A[:, q, p] = 0.0
                A[:, p, p] = A[:, p, p].real
                A[:, q, q] = A[:, q, q].real
                V[:, :, idx] = V[:, :, idx] @ R
    return A, V, sweeps


def jacobi_eigh(M, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Eigen-decomposition of one Hermitian matrix or a stack of them.

    Returns eigenvalues sorted descending (stable, so ties keep the Jacobi
    output order) and the matching orthonormal eigenvectors as columns.
    No Hermitian check is done here; see :func:`hermitian_eig`.
    """
    M = np.asarray(M, dtype=complex)
    single = M.ndim == 2
    A = M.reshape((-1,) + M.shape[-2:]).copy()
    A = 0.5 * (A + np.conj(np.swapaxes(A, 1, 2)))
    A, V, _ = _jacobi_stack(A, tol, max_sweeps)
    vals = np.real(np.diagonal(A, axis1=1, axis2=2)).copy()
    order = np.argsort(-vals, axis=1, kind="stable")
    vals = np.take_along_axis(vals, order, axis=1)
    V = np.take_along_axis(V, order[:, None, :], axis=2)
    if single:
        return vals[0], V[0]
    return vals.reshape(M.shape[:-1]), V.reshape(M.shape)


def hermitian_eig(M):
    """Eigenpairs of a Hermitian matrix, eigenvalues descending.

    Raises
    ------
    NotHermitian
        If ``||M - M*||_inf > 1e-12 (1 + ||M||_inf)``.
    """
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("expected a square matrix")
    if not is_hermitian(M):
        raise NotHermitian("matrix is not Hermitian within tolerance")
    return jacobi_eigh(M)


@dataclass(frozen=True)
class CanonicalForm:
    """``U* A U = H + i diag(S)`` with ``H`` Hermitian and ``S`` real, descending."""

    H: np.ndarray
    S: np.ndarray
    U: np.ndarray
    original: np.ndarray

    @property
    def n(self) -> int:
        return len(self.S)

    def matrix(self) -> np.ndarray:
        """The unitarily equivalent matrix ``H + i diag(S)``."""
        return self.H + 1j * np.diag(self.S)

    def adjoint(self) -> "CanonicalForm":
        """Canonical form of ``A*`` (``S`` negated and reversed)."""
        r = slice(None, None, -1)
        return CanonicalForm(
            H=self.H[r, r].copy(),
            S=-self.S[r].copy(),
            U=self.U[:, r].copy(),
            original=self.original.conj().T.copy(),
        )

    def residuals(self) -> dict:
        n = self.n
        U = self.U
        return {
            "unitarity": inf_norm(U.conj().T @ U - np.eye(n)),
            "reconstruction": inf_norm(U.conj().T @ self.original @ U - self.matrix()),
            "hermitian": inf_norm(self.H - self.H.conj().T),
        }


def canonical_form(A) -> CanonicalForm:
    """Reduce ``A`` to ``H + S i`` with ``S`` real diagonal by a complex unitary."""
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("expected a square matrix")
    Ah = A.conj().T
    herm = 0.5 * (A + Ah)
    skew = 0.5 * (A - Ah)
    S, U = jacobi_eigh(-1j * skew)
    H = U.conj().T @ herm @ U
    H = 0.5 * (H + H.conj().T)
    return CanonicalForm(H=H, S=S, U=U, original=A.copy())


def complexify(A) -> np.ndarray:
    """The ``2n x 2n`` complex matrix ``[[A1, A2], [-conj A2, conj A1]]`` of ``A1 + A2 j``."""
    A1, A2 = as_qmatrix(A).split()
    return np.block([[A1, A2], [-A2.conj(), A1.conj()]])


class Definiteness(enum.Enum):
    POSITIVE_DEFINITE = "PositiveDefinite"
    POSITIVE_SEMIDEFINITE = "PositiveSemiDefinite"
    NEGATIVE_DEFINITE = "NegativeDefinite"
    NEGATIVE_SEMIDEFINITE = "NegativeSemiDefinite"
    INDEFINITE = "Indefinite"
    ZERO = "Zero"

    @property
    def is_definite(self) -> bool:
        return self in (
            Definiteness.POSITIVE_DEFINITE,
            Definiteness.POSITIVE_SEMIDEFINITE,
            Definiteness.NEGATIVE_DEFINITE,
            Definiteness.NEGATIVE_SEMIDEFINITE,
        )

    @property
    def is_negative(self) -> bool:
        return self in (Definiteness.NEGATIVE_DEFINITE, Definiteness.NEGATIVE_SEMIDEFINITE)


def default_eps_def(S) -> float:
    S = np.asarray(S, dtype=float)
    return 1e-9 * (1.0 + (float(np.max(np.abs(S))) if S.size else 0.0))


def classify(S, eps_def: float | None = None) -> Definiteness:
    """Sign class of the real diagonal ``S``; entries within ``eps_def`` count as zero."""
    S = np.asarray(S, dtype=float)
    if eps_def is None:
        eps_def = default_eps_def(S)
    pos = S > eps_def
    neg = S < -eps_def
    if not pos.any() and not neg.any():
        return Definiteness.ZERO
    if pos.any() and neg.any():
        return Definiteness.INDEFINITE
    if pos.all():
        return Definiteness.POSITIVE_DEFINITE
    if neg.all():
        return Definiteness.NEGATIVE_DEFINITE
    return Definiteness.POSITIVE_SEMIDEFINITE if pos.any() else Definiteness.NEGATIVE_SEMIDEFINITE


__all__ = [
    "CanonicalForm",
    "Definiteness",
    "QMatrix",
    "canonical_form",
    "classify",
    "complexify",
    "hermitian_eig",
    "is_hermitian",
    "jacobi_eigh",
]
