"""Quaternion scalars, vectors and matrices.

Scalars are small immutable value objects; vectors and matrices wrap float
arrays whose last axis holds the ``(w, x, y, z)`` coefficients of
``w + x i + y j + z k``.  The array helpers (``qmul_arrays`` and friends)
broadcast over leading axes and are what the Monte-Carlo sampler uses.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotComplex, NotUnit

SIMILARITY_TOL = 1e-10
UNIT_TOL = 1e-10

_CONJ = np.array([1.0, -1.0, -1.0, -1.0])


def qmul_arrays(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Hamilton product of quaternion arrays, broadcasting leading axes."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    aw, ax, ay, az = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    bw, bx, by, bz = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack(
        [
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ],
        axis=-1,
    )


def qconj_arrays(a: np.ndarray) -> np.ndarray:
    return np.asarray(a, dtype=float) * _CONJ


def class_rep_arrays(a: np.ndarray) -> np.ndarray:
    """Upper half-plane representatives ``Re q + |Im q| i`` of a quaternion array."""
    a = np.asarray(a, dtype=float)
    return a[..., 0] + 1j * np.sqrt(a[..., 1] ** 2 + a[..., 2] ** 2 + a[..., 3] ** 2)


def complex_to_qarray(c) -> np.ndarray:
    c = np.asarray(c, dtype=complex)
    out = np.zeros(c.shape + (4,))
    out[..., 0] = c.real
    out[..., 1] = c.imag
    return out


@dataclass(frozen=True)
class Quaternion:
    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @classmethod
    def from_complex(cls, c: complex) -> "Quaternion":
        c = complex(c)
        return cls(c.real, c.imag, 0.0, 0.0)

    @classmethod
    def from_array(cls, a) -> "Quaternion":
        w, x, y, z = (float(t) for t in a)
        return cls(w, x, y, z)

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    @property
    def re(self) -> float:
        return self.w

    @property
    def im(self) -> "Quaternion":
        return Quaternion(0.0, self.x, self.y, self.z)

    @property
    def imnorm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def __abs__(self) -> float:
        return math.sqrt(self.w**2 + self.x**2 + self.y**2 + self.z**2)

    def norm2(self) -> float:
        return self.w**2 + self.x**2 + self.y**2 + self.z**2

    def is_complex(self, tol: float = 0.0) -> bool:
        return abs(self.y) <= tol and abs(self.z) <= tol

    def to_complex(self) -> complex:
        return complex(self.w, self.x)

    def __add__(self, other):
        other = _coerce(other)
        return Quaternion(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return Quaternion(self.w - other.w, self.x - other.x, self.y - other.y, self.z - other.z)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        return qmul(self, _coerce(other))

    def __rmul__(self, other):
        return qmul(_coerce(other), self)

    def __truediv__(self, s: float):
        return Quaternion(self.w / s, self.x / s, self.y / s, self.z / s)

    def isclose(self, other, tol: float = 1e-12) -> bool:
        other = _coerce(other)
        return abs(self - other) <= tol


def _coerce(v) -> Quaternion:
    if isinstance(v, Quaternion):
        return v
    if isinstance(v, (int, float, complex, np.number)):
        return Quaternion.from_complex(complex(v))
    raise TypeError(f"cannot interpret {type(v).__name__} as a quaternion")


ONE = Quaternion(1.0, 0.0, 0.0, 0.0)
I = Quaternion(0.0, 1.0, 0.0, 0.0)
J = Quaternion(0.0, 0.0, 1.0, 0.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def qmul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product ``a b``."""
    return Quaternion(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )


@dataclass(frozen=True)
class SimilarityClass:
    """The class ``[q]``, determined by ``Re q`` and ``|Im q|``."""

    re: float
    imnorm: float

    def __post_init__(self):
        if self.imnorm < 0:
            raise ValueError("imnorm must be nonnegative")

    @classmethod
    def of(cls, q: Quaternion) -> "SimilarityClass":
        return cls(q.re, q.imnorm)

    @property
    def rep(self) -> complex:
        return complex(self.re, self.imnorm)


def similar(a: Quaternion, b: Quaternion, tol: float = SIMILARITY_TOL) -> bool:
    return abs(a.re - b.re) <= tol and abs(a.imnorm - b.imnorm) <= tol


def class_rep(q: Quaternion) -> complex:
    """Complex representative of ``[q]`` in the closed upper half-plane."""
    return complex(q.re, q.imnorm)


def project(q: Quaternion, subfield: str):
    """Projection onto ``R`` (real part) or ``C`` (real + i parts)."""
    if subfield == "R":
        return q.w
    if subfield == "C":
        return complex(q.w, q.x)
    raise ValueError(f"subfield must be 'R' or 'C', got {subfield!r}")


class QVector:
    """Quaternionic column vector backed by an ``(n, 4)`` array."""

    def __init__(self, data):
        if isinstance(data, QVector):
            arr = data.data.copy()
        elif isinstance(data, (list, tuple)) and data and isinstance(data[0], Quaternion):
            arr = np.array([q.as_array() for q in data])
        else:
            arr = np.array(data, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 4 or arr.shape[0] < 1:
            raise ValueError(f"expected shape (n, 4) with n >= 1, got {arr.shape}")
        arr.setflags(write=False)
        self.data = arr

    @classmethod
    def from_complex(cls, c) -> "QVector":
        return cls(complex_to_qarray(np.atleast_1d(c)))

    @classmethod
    def from_pair(cls, x, y) -> "QVector":
        """Build ``x + y j`` from two complex vectors."""
        x = np.asarray(x, dtype=complex)
        y = np.asarray(y, dtype=complex)
        return cls(np.stack([x.real, x.imag, y.real, y.imag], axis=-1))

    def __len__(self) -> int:
        return self.data.shape[0]

    def __getitem__(self, k: int) -> Quaternion:
        return Quaternion.from_array(self.data[k])

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.data**2)))

    def unit(self) -> "QVector":
        nrm = self.norm()
        if nrm == 0.0:
            raise ZeroDivisionError("the zero vector has no direction")
        return QVector(self.data / nrm)

    def split(self):
        """Complex parts ``(x, y)`` with ``v = x + y j``."""
        d = self.data
        return d[:, 0] + 1j * d[:, 1], d[:, 2] + 1j * d[:, 3]


class QMatrix:
    """Square quaternionic matrix backed by an ``(n, n, 4)`` array."""

    def __init__(self, data):
        if isinstance(data, QMatrix):
            arr = data.data.copy()
        else:
            arr = np.array(data, dtype=float)
        if arr.ndim != 3 or arr.shape[0] != arr.shape[1] or arr.shape[2] != 4:
            raise ValueError(f"expected shape (n, n, 4), got {arr.shape}")
        arr.setflags(write=False)
        self.data = arr

    @classmethod
    def from_complex(cls, c) -> "QMatrix":
        c = np.atleast_2d(np.asarray(c, dtype=complex))
        return cls(complex_to_qarray(c))

    @classmethod
    def from_entries(cls, rows) -> "QMatrix":
        return cls(np.array([[_coerce(q).as_array() for q in row] for row in rows]))

    @property
    def n(self) -> int:
        return self.data.shape[0]

    def __getitem__(self, idx) -> Quaternion:
        return Quaternion.from_array(self.data[idx])

    def __eq__(self, other) -> bool:
        return isinstance(other, QMatrix) and np.array_equal(self.data, other.data)

    def conj_transpose(self) -> "QMatrix":
        return QMatrix(np.swapaxes(self.data, 0, 1) * _CONJ)

    def left_mul(self, q: Quaternion) -> "QMatrix":
        """Entrywise ``q a_rs``."""
        return QMatrix(qmul_arrays(q.as_array(), self.data))

    def is_complex(self, tol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.data[..., 2:]) <= tol))

    def to_complex(self, tol: float = 0.0) -> np.ndarray:
        if not self.is_complex(tol):
            raise NotComplex("matrix has nonzero j/k components")
        return self.data[..., 0] + 1j * self.data[..., 1]

    def split(self):
        """Complex parts ``(A1, A2)`` with ``A = A1 + A2 j``."""
        d = self.data
        return d[..., 0] + 1j * d[..., 1], d[..., 2] + 1j * d[..., 3]


def as_qmatrix(A) -> QMatrix:
    if isinstance(A, QMatrix):
        return A
    return QMatrix.from_complex(A)


def qform_arrays(A: np.ndarray, V: np.ndarray) -> np.ndarray:
    """``v* A v`` for a stack of vectors ``V`` of shape ``(..., n, 4)``.

    No normalization check; ``A`` has shape ``(n, n, 4)``.
    """
    AV = qmul_arrays(A, V[..., None, :, :]).sum(axis=-2)
    return qmul_arrays(qconj_arrays(V), AV).sum(axis=-2)


def qform(A, v, tol: float = UNIT_TOL) -> Quaternion:
    """The quadratic form ``v* A v`` for a unit quaternionic vector ``v``."""
    A = as_qmatrix(A)
    v = v if isinstance(v, QVector) else QVector(v)
    if len(v) != A.n:
        raise ValueError("dimension mismatch")
    if abs(v.norm() - 1.0) > tol:
        raise NotUnit(f"|v| = {v.norm()!r} is not 1 within {tol}")
    return Quaternion.from_array(qform_arrays(A.data, v.data))


def random_unit_vectors(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform samples from the unit sphere of ``H^n`` as a ``(count, n, 4)`` array."""
    g = rng.standard_normal((count, n, 4))
    g /= np.sqrt(np.sum(g**2, axis=(1, 2)))[:, None, None]
    return g
