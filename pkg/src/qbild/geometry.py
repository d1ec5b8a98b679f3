"""Planar convex regions stored as counterclockwise complex vertex lists.

Degenerate regions are first class: an empty region has no vertices, a
point one, a segment two.  Tolerances are relative to the coordinate scale
of the input, ``1e-12 * scale``; nothing here attempts exact predicates.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyRegion

REL_TOL = 1e-12


def _scale(pts: np.ndarray) -> float:
    if pts.size == 0:
        return 1.0
    return max(1.0, float(np.max(np.abs(pts))))


def _cross(o: complex, a: complex, b: complex) -> float:
    return (a.real - o.real) * (b.imag - o.imag) - (a.imag - o.imag) * (b.real - o.real)


@dataclass(frozen=True, eq=False)
class ConvexRegion:
    """Convex polygon (or point, segment, empty set) in the complex plane."""

    vertices: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))

    def __post_init__(self):
        v = np.array(self.vertices, dtype=complex).reshape(-1)
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @property
    def kind(self) -> str:
        return ("empty", "point", "segment")[len(self.vertices)] if len(self.vertices) < 3 else "polygon"

    @property
    def is_empty(self) -> bool:
        return len(self.vertices) == 0

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other) -> bool:
        return isinstance(other, ConvexRegion) and np.array_equal(self.vertices, other.vertices)

    def __repr__(self) -> str:
        pts = ", ".join(f"{z.real:.6g}{z.imag:+.6g}i" for z in self.vertices[:6])
        more = ", ..." if len(self.vertices) > 6 else ""
        return f"ConvexRegion({self.kind}: [{pts}{more}])"

    def mirror(self) -> "ConvexRegion":
        """Reflection across the real axis."""
        return hull(np.conj(self.vertices))

    def shift(self, c: complex) -> "ConvexRegion":
        return ConvexRegion(self.vertices + c)

    def scale_about(self, center: complex, factor: float) -> "ConvexRegion":
        return hull(center + factor * (self.vertices - center))

    def centroid(self) -> complex:
        if self.is_empty:
            raise EmptyRegion("empty region has no centroid")
        return complex(np.mean(self.vertices))

    def area(self) -> float:
        v = self.vertices
        if len(v) < 3:
            return 0.0
        w = np.roll(v, -1)
        return 0.5 * float(np.sum(v.real * w.imag - w.real * v.imag))


@dataclass(frozen=True, eq=False)
class RegionPair:
    """Inner and outer polygonal enclosures of one convex set."""

    inner: ConvexRegion
    outer: ConvexRegion

    def gap(self) -> float:
        return hausdorff(self.inner, self.outer)

    def inner_in_outer(self, tol: float = 1e-12) -> bool:
        return all(contains(self.outer, z, tol) for z in self.inner.vertices)


def hull(points) -> ConvexRegion:
    """Convex hull by Andrew's monotone chain, vertices counterclockwise.

    The chain itself uses exact orientation signs on exactly sorted input;
    near-duplicate and nearly collinear vertices are pruned afterwards.
    """
    pts = np.asarray(points, dtype=complex).reshape(-1)
    pts = pts[np.isfinite(pts)]
    if pts.size == 0:
        return ConvexRegion()
    scale = _scale(pts)
    if len(pts) > 64:
        pts = _discard_interior(pts)
    pts = np.unique(pts).tolist()  # sorts by real part, then imaginary part
    if len(pts) == 1:
        return ConvexRegion(pts)

    def chain(seq):
        out: list[complex] = []
        for p in seq:
            while len(out) >= 2 and _cross(out[-2], out[-1], p) <= 0.0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    verts = _prune(lower[:-1] + upper[:-1], REL_TOL * scale, REL_TOL * scale * scale)
    return ConvexRegion(verts)


def _discard_interior(pts: np.ndarray) -> np.ndarray:
    """Drop points strictly inside the polygon of the extreme points in 8 directions."""
    dirs = np.exp(-0.25j * np.pi * np.arange(8))
    ext = pts[np.argmax((pts[:, None] * dirs[None, :]).real, axis=0)]
    ring = [z for k, z in enumerate(ext) if k == 0 or z != ext[k - 1]]
    if len(ring) > 1 and ring[-1] == ring[0]:
        ring.pop()
    if len(ring) < 3:
        return pts
    a = np.array(ring)
    d = np.roll(a, -1) - a
    rel = pts[:, None] - a[None, :]
    cr = d.real[None, :] * rel.imag - d.imag[None, :] * rel.real
    # the ring is ccw; keep anything not strictly inside with a safety margin
    margin = 1e-9 * np.abs(d)[None, :] * max(1.0, float(np.max(np.abs(pts))))
    inside = np.all(cr > margin, axis=1)
    return pts[~inside]


def _prune(verts: list, eps_pt: float, eps_cross: float) -> list:
    """Drop near-duplicate and nearly collinear vertices of a ccw cycle."""

    def bad(a, b, c):
        if abs(b - a) <= eps_pt:
            return True
        if _cross(a, b, c) > eps_cross:
            return False
        # collinear: drop b only if it lies between a and c, not at a turn-back
        u, w = b - a, c - b
        return u.real * w.real + u.imag * w.imag >= 0.0

    out: list[complex] = []
    for p in verts:
        if out and abs(p - out[-1]) <= eps_pt:
            continue
        while len(out) >= 2 and bad(out[-2], out[-1], p):
            out.pop()
        out.append(p)
    # close the cycle: the seam vertices may still be redundant
    changed = True
    while changed and len(out) >= 3:
        changed = False
        if bad(out[-2], out[-1], out[0]):
            out.pop()
            changed = True
        elif bad(out[-1], out[0], out[1]):
            out.pop(0)
            changed = True
    if len(out) == 2 and abs(out[1] - out[0]) <= eps_pt:
        out = out[:1]
    return out


def hull_of(*regions, points=()) -> ConvexRegion:
    parts = [r.vertices for r in regions if r is not None and not r.is_empty]
    parts.append(np.asarray(points, dtype=complex).reshape(-1))
    return hull(np.concatenate(parts) if parts else [])


def clip_upper(r: ConvexRegion) -> ConvexRegion:
    """Intersection with the closed upper half-plane ``Im z >= 0``.

    Vertices within ``1e-12 * scale`` of the axis are snapped onto it, so a
    region lying on the real line survives the clip.  Axis crossings are
    placed exactly on the axis by linear interpolation.
    """
    v = np.array(r.vertices, dtype=complex)
    if v.size == 0:
        return ConvexRegion()
    eps = REL_TOL * _scale(v)
    near = np.abs(v.imag) <= eps
    v[near] = v[near].real
    if len(v) == 1:
        return ConvexRegion(v) if v[0].imag >= 0 else ConvexRegion()
    out: list[complex] = []
    m = len(v)
    edges = m if m > 2 else 1
    for k in range(edges):
        a, b = v[k], v[(k + 1) % m]
        a_in, b_in = a.imag >= 0, b.imag >= 0
        if a_in:
            out.append(a)
        if a_in != b_in:
            t = a.imag / (a.imag - b.imag)
            out.append(complex(a.real + t * (b.real - a.real), 0.0))
    if m == 2 and v[1].imag >= 0:
        out.append(v[1])
    return hull(out)


def _segment_distance(z: complex, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    d = b - a
    dd = np.abs(d) ** 2
    t = np.where(dd > 0, ((z - a) * np.conj(d)).real / np.where(dd > 0, dd, 1.0), 0.0)
    t = np.clip(t, 0.0, 1.0)
    return np.abs(z - (a + t * d))


def signed_distance(r: ConvexRegion, z: complex) -> float:
    """Distance from ``z`` to ``r``; negative inside a polygon's interior."""
    v = r.vertices
    if v.size == 0:
        raise EmptyRegion("distance to an empty region")
    z = complex(z)
    if len(v) == 1:
        return abs(z - v[0])
    if len(v) == 2:
        return float(_segment_distance(z, v[:1], v[1:])[0])
    a = v
    b = np.roll(v, -1)
    edge = b - a
    # outward side of a ccw polygon is where the cross product is negative
    cr = edge.real * (z - a).imag - edge.imag * (z - a).real
    dist = _segment_distance(z, a, b)
    if np.all(cr >= 0):
        return -float(np.min(dist))
    return float(np.min(dist))


def contains(r: ConvexRegion, z: complex, tol: float = 1e-12) -> bool:
    """True iff the signed distance from ``z`` to ``r`` is at most ``tol``."""
    if r.is_empty:
        return False
    return signed_distance(r, z) <= tol


def contains_many(r: ConvexRegion, zs, tol: float = 1e-12) -> np.ndarray:
    """Vectorized :func:`contains` for an array of points."""
    zs = np.asarray(zs, dtype=complex).reshape(-1)
    if r.is_empty:
        return np.zeros(zs.shape, dtype=bool)
    return distance_many(r, zs) <= tol


def distance_many(r: ConvexRegion, zs, block: int = 8192) -> np.ndarray:
    """Signed distances of many points; same conventions as :func:`signed_distance`."""
    zs = np.asarray(zs, dtype=complex).reshape(-1)
    v = r.vertices
    if v.size == 0:
        raise EmptyRegion("distance to an empty region")
    if len(zs) > block:
        return np.concatenate([distance_many(r, zs[k : k + block], block) for k in range(0, len(zs), block)])
    if len(v) == 1:
        return np.abs(zs - v[0])
    a = v if len(v) > 2 else v[:1]
    b = np.roll(v, -1) if len(v) > 2 else v[1:]
    d = b - a
    dd = np.abs(d) ** 2
    rel = zs[:, None] - a[None, :]
    t = np.clip((rel * np.conj(d)[None, :]).real / np.where(dd > 0, dd, 1.0)[None, :], 0.0, 1.0)
    dist = np.min(np.abs(rel - t * d[None, :]), axis=1)
    if len(v) == 2:
        return dist
    cr = d.real[None, :] * rel.imag - d.imag[None, :] * rel.real
    inside = np.all(cr >= 0, axis=1)
    return np.where(inside, -dist, dist)


def inscribed_ring(r: ConvexRegion, k: int = 32) -> ConvexRegion:
    """Polygon on the extreme vertices of ``r`` in ``k`` directions; a subset of ``r``."""
    if len(r.vertices) < 3:
        return r
    dirs = np.exp(-2j * np.pi * np.arange(k) / k)
    idx = np.unique(np.argmax((r.vertices[:, None] * dirs[None, :]).real, axis=0))
    return ConvexRegion(r.vertices[idx])


def directed_hausdorff(a: ConvexRegion, b: ConvexRegion) -> float:
    """``max over a of dist(., b)``; attained at a vertex of ``a`` since ``b`` is convex."""
    if a.is_empty or b.is_empty:
        raise EmptyRegion("Hausdorff distance needs nonempty regions")
    return float(np.max(np.maximum(distance_many(b, a.vertices), 0.0)))


def hausdorff(a: ConvexRegion, b: ConvexRegion) -> float:
    return max(directed_hausdorff(a, b), directed_hausdorff(b, a))


def support(r: ConvexRegion, theta: float) -> float:
    """Support function ``max Re(exp(-i theta) v)`` over the vertices."""
    if r.is_empty:
        raise EmptyRegion("support of an empty region")
    return float(np.max((np.exp(-1j * theta) * r.vertices).real))


def halfplane_polygon(thetas, h) -> ConvexRegion:
    """Intersection of ``Re(exp(-i theta_k) z) <= h_k`` for sorted, evenly spread angles.

    Consecutive support lines meet at the polygon's vertices; this needs every
    angular gap to be below ``pi`` and every line to support a common convex set.
    """
    thetas = np.asarray(thetas, dtype=float)
    h = np.asarray(h, dtype=float)
    c0, s0 = np.cos(thetas), np.sin(thetas)
    c1, s1 = np.roll(c0, -1), np.roll(s0, -1)
    h1 = np.roll(h, -1)
    det = c0 * s1 - s0 * c1
    u = (h * s1 - s0 * h1) / det
    w = (c0 * h1 - h * c1) / det
    return hull(u + 1j * w)


def segment(a: complex, b: complex) -> ConvexRegion:
    return hull([a, b])


def disk_polygon(center: complex, radius: float, m: int = 720) -> ConvexRegion:
    t = 2 * np.pi * np.arange(m) / m
    return hull(center + radius * np.exp(1j * t))
