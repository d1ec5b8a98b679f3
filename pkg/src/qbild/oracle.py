"""Monte-Carlo sampling of the quaternionic numerical range.

Unit vectors are drawn uniformly on the sphere of ``H^n`` and mapped through
``q* A q`` and then to the class representative ``Re + |Im| i``.  Chunks use
their own spawned seed streams and are reduced in chunk order, so results do
not depend on the thread count (``QBILD_THREADS``).

Uniform samples approach corners and the real axis slowly, so the sampler
can also keep the best sample per support direction and polish it by
projected gradient ascent.  Polished points are genuine range points.
"""
from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .errors import NotUnit
from .geometry import ConvexRegion, contains_many, distance_many, hausdorff, hull, inscribed_ring
from .quat import I, QMatrix, Quaternion, as_qmatrix, class_rep_arrays, qform_arrays, random_unit_vectors

CHUNK = 65536


def thread_count() -> int:
    env = os.environ.get("QBILD_THREADS")
    if env:
        return max(1, int(env))
    return min(4, os.cpu_count() or 1)


@dataclass(frozen=True, eq=False)
class SampleCloud:
    """Class representatives of sampled ``q* A q``; all have ``Im >= 0``."""

    reps: np.ndarray
    N: int
    seed: int
    n_polished: int = 0
    # best stacked vector per support direction, used as polish starts
    extremes: np.ndarray | None = None
    directions: np.ndarray | None = None

    def hull(self) -> ConvexRegion:
        return hull(self.reps)


def _chunk(Aq: np.ndarray, cnt: int, ss: np.random.SeedSequence, dirs: np.ndarray):
    n = Aq.shape[0]
    V = random_unit_vectors(n, cnt, np.random.default_rng(ss))
    reps = class_rep_arrays(qform_arrays(Aq, V))
    if len(dirs) == 0:
        return reps, None, None
    score = (reps[:, None] * np.conj(dirs)[None, :]).real
    best = np.argmax(score, axis=0)
    return reps, V[best], score[best, np.arange(len(dirs))]


def sample_range(A, N: int, seed: int = 0, directions: int = 0, chunk: int = CHUNK) -> SampleCloud:
    """Sample ``N`` points of ``W_H(A)`` as class representatives.

    Parameters
    ----------
    A : QMatrix or array_like
    N : int
        Sample count, at least 1.
    seed : int
    directions : int
        If positive, also keep the best sample for this many evenly spaced
        support directions (polish starts for :func:`polish_cloud`).
    """
    if N < 1:
        raise ValueError("N >= 1 required")
    Aq = as_qmatrix(A).data
    dirs = np.exp(2j * np.pi * np.arange(directions) / directions) if directions > 0 else np.zeros(0, complex)
    nchunks = -(-N // chunk)
    streams = np.random.SeedSequence(seed).spawn(nchunks)
    sizes = [min(chunk, N - k * chunk) for k in range(nchunks)]
    jobs = list(zip(sizes, streams))
    workers = min(thread_count(), nchunks)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda job: _chunk(Aq, job[0], job[1], dirs), jobs))
    else:
        parts = [_chunk(Aq, c, s, dirs) for c, s in jobs]
    reps = np.concatenate([p[0] for p in parts])
    extremes = None
    if directions > 0:
        scores = np.stack([p[2] for p in parts])
        pick = np.argmax(scores, axis=0)  # first chunk wins ties
        extremes = np.stack([parts[c][1][k] for k, c in enumerate(pick)])
    return SampleCloud(reps, N, seed, 0, extremes, dirs if directions > 0 else None)


# --------------------------------------------------------------------------
# local polish


def qform_matrices(A) -> np.ndarray:
    """Symmetric ``M_c`` with ``(q* A q)_c = z^T M_c z`` for ``z = q.ravel()``.

    Built by polarization from evaluations on basis vectors; shape
    ``(4, 4n, 4n)``.
    """
    Aq = as_qmatrix(A).data
    n = Aq.shape[0]
    d = 4 * n
    E = np.eye(d)
    pair = (E[:, None, :] + E[None, :, :]).reshape(d * d, n, 4)
    f_pair = qform_arrays(Aq, pair).reshape(d, d, 4)
    f_diag = qform_arrays(Aq, E.reshape(d, n, 4))
    M = 0.5 * (f_pair - f_diag[:, None, :] - f_diag[None, :, :])
    return np.moveaxis(M, -1, 0)


def _forms(M, Z):
    MZ = np.einsum("cij,bj->bci", M, Z)
    f = np.einsum("bi,bci->bc", Z, MZ)
    return f, MZ


def _ascend(objective, Z: np.ndarray, steps: int) -> np.ndarray:
    """Projected gradient ascent on the unit sphere with per-start step control."""
    Z = Z / np.linalg.norm(Z, axis=1, keepdims=True)
    val, grad = objective(Z)
    alpha = np.full(len(Z), 0.1)
    for _ in range(steps):
        g = grad - np.einsum("bi,bi->b", grad, Z)[:, None] * Z
        cand = Z + alpha[:, None] * g
        cand /= np.linalg.norm(cand, axis=1, keepdims=True)
        cval, cgrad = objective(cand)
        up = cval >= val
        Z = np.where(up[:, None], cand, Z)
        val = np.where(up, cval, val)
        grad = np.where(up[:, None], cgrad, grad)
        alpha = np.where(up, alpha * 1.5, alpha * 0.5)
        alpha = np.clip(alpha, 1e-12, 10.0)
    return Z


def _support_objective(M, dirs):
    c, s = dirs.real, dirs.imag

    def obj(Z):
        f, MZ = _forms(M, Z)
        im = np.sqrt(np.sum(f[:, 1:] ** 2, axis=1))
        safe = np.maximum(im, 1e-300)
        val = c * f[:, 0] + s * im
        grad = 2.0 * (c[:, None] * MZ[:, 0] + (s / safe)[:, None] * np.einsum("bc,bci->bi", f[:, 1:], MZ[:, 1:]))
        return val, grad

    return obj


def _modulus_objective(M):
    def obj(Z):
        f, MZ = _forms(M, Z)
        return np.sum(f**2, axis=1), 4.0 * np.einsum("bc,bci->bi", f, MZ)

    return obj


def polish_cloud(A, cloud: SampleCloud, steps: int = 200) -> SampleCloud:
    """Append polished support-direction maximizers to a cloud."""
    if cloud.extremes is None or len(cloud.extremes) == 0:
        return cloud
    M = qform_matrices(A)
    Z0 = cloud.extremes.reshape(len(cloud.extremes), -1)
    Z = _ascend(_support_objective(M, cloud.directions), Z0, steps)
    f, _ = _forms(M, Z)
    reps = f[:, 0] + 1j * np.sqrt(np.sum(f[:, 1:] ** 2, axis=1))
    return SampleCloud(
        np.concatenate([cloud.reps, reps]), cloud.N, cloud.seed, len(reps), cloud.extremes, cloud.directions
    )


def radius_estimate(A, N: int = 100_000, seed: int = 0, steps: int = 200, keep: int = 8) -> float:
    """Lower estimate of ``max |q* A q|`` by sampling then local ascent.

    The ``keep`` largest samples are polished by ``steps`` iterations of
    projected gradient ascent on ``|q* A q|^2``.
    """
    Aq = as_qmatrix(A).data
    n = Aq.shape[0]
    rng_best = []
    nchunks = -(-N // CHUNK)
    for k, ss in enumerate(np.random.SeedSequence(seed).spawn(nchunks)):
        cnt = min(CHUNK, N - k * CHUNK)
        V = random_unit_vectors(n, cnt, np.random.default_rng(ss))
        mod = np.abs(class_rep_arrays(qform_arrays(Aq, V)))
        top = np.argsort(-mod, kind="stable")[:keep]
        rng_best.extend((float(mod[t]), V[t]) for t in top)
    rng_best.sort(key=lambda t: -t[0])
    Z0 = np.stack([v.ravel() for _, v in rng_best[:keep]])
    M = qform_matrices(A)
    Z = _ascend(_modulus_objective(M), Z0, steps)
    f, _ = _forms(M, Z)
    return float(max(np.sqrt(np.max(np.sum(f**2, axis=1))), rng_best[0][0]))


# --------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    n_samples: int
    n_polished: int
    seed: int
    tol: float
    violations: int
    max_excess: float
    coverage: float
    passed: bool
    coverage_bound: float | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["schema"] = 1
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ValidationReport":
        d = {k: v for k, v in d.items() if k != "schema"}
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def check_cloud(cloud: SampleCloud, outer: ConvexRegion, inner: ConvexRegion, tol: float = 1e-6,
                coverage_bound: float | None = None) -> ValidationReport:
    """Containment of the cloud in ``outer`` and coverage of ``inner`` by the cloud's hull."""
    reps = cloud.reps
    ring = inscribed_ring(outer)
    if len(ring) >= 3:
        # anything strictly inside the ring is inside the outer region
        reps = reps[distance_many(ring, reps) > -1e-9]
    dist = distance_many(outer, reps) if len(reps) else np.zeros(1) - 1.0
    bad = int(np.count_nonzero(dist > tol))
    cov = hausdorff(cloud.hull(), inner)
    passed = bad == 0 and (coverage_bound is None or cov <= coverage_bound)
    return ValidationReport(
        n_samples=cloud.N,
        n_polished=cloud.n_polished,
        seed=cloud.seed,
        tol=tol,
        violations=bad,
        max_excess=float(max(0.0, dist.max())),
        coverage=float(cov),
        passed=bool(passed),
        coverage_bound=coverage_bound,
    )


def validate(A, bild, N: int = 100_000, seed: int = 0, tol: float = 1e-6, directions: int = 64,
             steps: int = 200, coverage_bound: float | None = None) -> ValidationReport:
    """Check a computed bild against an independent sample of ``W_H(A)``.

    Fails when any sample lies outside ``bild.upper_outer`` by more than
    ``tol`` (or, if given, when coverage exceeds ``coverage_bound``).
    """
    cloud = sample_range(A, N, seed, directions)
    if directions > 0:
        cloud = polish_cloud(A, cloud, steps)
    return check_cloud(cloud, bild.upper_outer, bild.upper, tol, coverage_bound)


# --------------------------------------------------------------------------
# demonstrations


@dataclass
class RadiusDemo:
    h: tuple
    omega_A: float
    omega_A_est: float
    omega_iA_est: float
    gap: float
    ih_complex: bool

    def to_dict(self) -> dict:
        d = asdict(self)
        d["schema"] = 1
        return d


def radius_norm_demo(h: Quaternion, N: int = 100_000, seed: int = 0) -> RadiusDemo:
    """Compare ``w(A)`` and ``w(iA)`` for ``A = [[1, h], [0, 1]]``, ``|h| = 1``.

    ``w(A) = 3/2`` since the range is the ball of radius 1/2 about 1; ``w(iA)``
    drops strictly below that unless ``ih`` is complex.
    """
    if abs(abs(h) - 1.0) > 1e-10:
        raise NotUnit(f"|h| = {abs(h)!r} is not 1")
    A = QMatrix.from_entries([[1, h], [0, 1]])
    iA = A.left_mul(I)
    est_a = radius_estimate(A, N, seed)
    est_ia = radius_estimate(iA, N, seed + 1)
    ih = I * h
    return RadiusDemo(
        h=(h.w, h.x, h.y, h.z),
        omega_A=1.5,
        omega_A_est=est_a,
        omega_iA_est=est_ia,
        gap=1.5 - est_ia,
        ih_complex=ih.is_complex(1e-12),
    )


@dataclass
class ConjectureDemo:
    conjectured: list
    square: list
    witness: complex
    witness_excess: float
    witness_to_one: float
    cloud_outside_square: int
    equivalent_hausdorff: float
    triangles_failing: int
    triangles_tested: int
    n_samples: int

    def to_dict(self) -> dict:
        d = asdict(self)
        d["witness"] = [self.witness.real, self.witness.imag]
        d["conjectured"] = [[z.real, z.imag] for z in self.conjectured]
        d["square"] = [[z.real, z.imag] for z in self.square]
        d["schema"] = 1
        return d


def conjecture_demo(N: int = 100_000, seed: int = 0, directions: int = 64, t_grid: int = 41) -> ConjectureDemo:
    """Sampled upper bild of ``diag(-1-i, -1-i, 1+i, 1+i)`` against the naive triangle.

    The naive guess ``conv{-1+i, 1+i, 0}`` (the upper halves of the complex
    ranges of ``A`` and ``A*`` plus nothing else) misses the real points near
    ``+-1`` that the sample finds.
    """
    A = np.diag([-1 - 1j, -1 - 1j, 1 + 1j, 1 + 1j])
    At = np.diag([-1 + 1j, -1 + 1j, 1 + 1j, 1 + 1j])
    tri = hull([-1 + 1j, 1 + 1j, 0.0])
    sq = hull([-1 + 1j, 1 + 1j, -1.0, 1.0])
    cloud = polish_cloud(A, sample_range(A, N, seed, directions))
    dist = distance_many(tri, cloud.reps)
    k = int(np.argmax(dist))
    witness = complex(cloud.reps[k])
    outside_sq = int(np.count_nonzero(~contains_many(sq, cloud.reps, 1e-6)))
    cloud_t = polish_cloud(At, sample_range(At, N, seed + 1, directions))
    eq = hausdorff(cloud.hull(), cloud_t.hull())
    fails = 0
    ts = np.linspace(-2.0, 2.0, t_grid)
    for t in ts:
        trig = hull([-1 + 1j, 1 + 1j, t])
        if np.any(distance_many(trig, cloud.reps) > 1e-6):
            fails += 1
    return ConjectureDemo(
        conjectured=[complex(z) for z in tri.vertices],
        square=[complex(z) for z in sq.vertices],
        witness=witness,
        witness_excess=float(dist[k]),
        witness_to_one=float(np.min(np.abs(cloud.reps - 1.0))),
        cloud_outside_square=outside_sq,
        equivalent_hausdorff=float(eq),
        triangles_failing=fails,
        triangles_tested=len(ts),
        n_samples=N,
    )
