"""The upper bild ``B+(A) = W_H(A) ∩ C+`` of a complex matrix.

The general recipe is the hull of the upper halves of ``W_C(A)`` and
``W_C(A*)`` plus the two real extremes ``v_min, v_max`` of the bild.  Cheaper
special cases (Hermitian, conjugation-symmetric, 2x2, definite ``S``) are
tried first.  Every result carries two polygons: ``upper`` is the hull of
attained points (inner) and ``upper_outer`` is built from support lines.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

import numpy as np

from .band import BandOptions, BandResult, BandStatus, FeasiblePoint, band, complex_pairs, from_pairs
from .crange import DEFAULT_M, SweepResult, conj_symmetric, cradius, sweep
from .errors import NotComplex
from .geometry import ConvexRegion, clip_upper, contains, distance_many, hausdorff, hull, hull_of
from .linalg import CanonicalForm, Definiteness, canonical_form, classify, hermitian_eig
from .quat import QMatrix, Quaternion, class_rep

SCHEMA = 1


class BildPath(enum.Enum):
    GENERAL = "General"
    DEFINITE = "Definite"
    CONJ_SYMMETRIC = "ConjSymmetric"
    TWO_BY_TWO_INDEFINITE = "TwoByTwoIndefinite"
    TWO_BY_TWO_POSDEF = "TwoByTwoPosDef"
    TWO_BY_TWO_POSSEMI = "TwoByTwoPosSemi"
    HERMITIAN = "Hermitian"
    SCALAR = "Scalar"


@dataclass(frozen=True)
class BildOptions:
    m: int = DEFAULT_M
    band: BandOptions = field(default_factory=BandOptions)
    eps_def: float | None = None
    symmetry_tol: float | None = None


@dataclass(frozen=True, eq=False)
class BildResult:
    """Inner/outer polygons of ``B+(A)`` with the real band and provenance of the path taken."""

    upper: ConvexRegion
    upper_outer: ConvexRegion
    v_band: BandResult
    definiteness: Definiteness
    path: BildPath
    m: int
    generators: tuple = ()
    diagnostics: dict = field(default_factory=dict)

    @property
    def unverified(self) -> bool:
        """Band optimizer did not certify its extremes; an oracle check is due."""
        return self.v_band.status is BandStatus.MAX_ITERATIONS

    def gap(self) -> float:
        return hausdorff(self.upper, self.upper_outer)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "path": self.path.value,
            "definiteness": self.definiteness.value,
            "m": self.m,
            "unverified": self.unverified,
            "band": self.v_band.to_dict(),
            "inner": complex_pairs(self.upper.vertices),
            "outer": complex_pairs(self.upper_outer.vertices),
            "generators": [complex_pairs(g.vertices) for g in self.generators],
            "diagnostics": dict(self.diagnostics),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BildResult":
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported bild schema {d.get('schema')!r}")
        return cls(
            upper=ConvexRegion(from_pairs(d["inner"])),
            upper_outer=ConvexRegion(from_pairs(d["outer"])),
            v_band=BandResult.from_dict(d["band"]),
            definiteness=Definiteness(d["definiteness"]),
            path=BildPath(d["path"]),
            m=int(d["m"]),
            generators=tuple(ConvexRegion(from_pairs(g)) for g in d.get("generators", [])),
            diagnostics=dict(d.get("diagnostics", {})),
        )


def _complex_input(A) -> np.ndarray:
    if isinstance(A, QMatrix):
        return A.to_complex()
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("expected a square matrix")
    return A


def _anchors(res: BandResult) -> list:
    if res.status is BandStatus.EMPTY or res.v_min is None:
        return []
    return [complex(res.v_min), complex(res.v_max)]


def _closed_band(v: float, x, y, S, H) -> BandResult:
    w = FeasiblePoint(np.asarray(x, dtype=complex), np.asarray(y, dtype=complex))
    status = BandStatus.SOLVED if w.is_feasible(S) else BandStatus.MAX_ITERATIONS
    return BandResult(float(v), float(v), status, w, w, 0, 0.0, {"closed_form": True, "value_check": w.value(H) - v})


def _finish(inner, outer, res, cls_, path, m, generators, extra=None) -> BildResult:
    diag = {
        "m": m,
        "starts": res.starts_used,
        "kkt_residual": None if res.kkt_residual != res.kkt_residual else res.kkt_residual,
        "gap": hausdorff(inner, outer),
    }
    diag.update(extra or {})
    return BildResult(inner, outer, res, cls_, path, m, tuple(generators), diag)


def _upper_pair(s: SweepResult):
    return clip_upper(s.inner), clip_upper(s.outer)


def _anchor_excess(anchors, region: ConvexRegion) -> float:
    """How far the real anchors stick out of ``region`` (0 when inside)."""
    if not anchors or region.is_empty:
        return 0.0
    return float(max(0.0, np.max(distance_many(region, anchors))))


def two_by_two(cf: CanonicalForm, m: int = DEFAULT_M, band_opts: BandOptions | None = None,
               eps_def: float | None = None) -> BildResult:
    """Closed-form shortcuts for ``n = 2``, ``S != 0``.

    Indefinite ``S``: the real anchors are redundant and the bild is the hull
    of the two complex ranges.  Positive definite ``S = diag(l1, l2)``: the
    band is the single value ``(h11 l2 + h22 l1) / (l1 + l2)``.  Positive
    semi-definite (``l2 = 0``): the band is ``{h22}``.  Negative cases go
    through ``A*``.
    """
    if cf.n != 2:
        raise ValueError("two_by_two needs a 2x2 matrix")
    cls_ = classify(cf.S, eps_def)
    if cls_ is Definiteness.ZERO:
        raise ValueError("two_by_two needs S != 0")
    A = cf.original
    if cls_ is Definiteness.INDEFINITE:
        sa, sb = sweep(A, m), sweep(A.conj().T, m)
        (ia, oa), (ib, ob) = _upper_pair(sa), _upper_pair(sb)
        res = band(cf, band_opts)
        anchors = _anchors(res)
        bare = hull_of(oa, ob)
        inner = hull_of(ia, ib, points=anchors)
        outer = hull_of(oa, ob, points=anchors)
        return _finish(inner, outer, res, cls_, BildPath.TWO_BY_TWO_INDEFINITE, m, (ia, ib),
                       {"anchor_excess": _anchor_excess(anchors, bare)})

    pos = cf if not cls_.is_negative else cf.adjoint()
    H, S = pos.H, pos.S
    l1, l2 = float(S[0]), float(S[1])
    h11, h22 = float(H[0, 0].real), float(H[1, 1].real)
    if cls_ in (Definiteness.POSITIVE_DEFINITE, Definiteness.NEGATIVE_DEFINITE):
        v = (h11 * l2 + h22 * l1) / (l1 + l2)
        a = np.sqrt(l2 / (l1 + l2))
        b = np.sqrt(l1 / (l1 + l2))
        res = _closed_band(v, [a, 0.0], [0.0, b], S, H)
        path = BildPath.TWO_BY_TWO_POSDEF
    else:
        v = h22
        r = np.sqrt(0.5)
        res = _closed_band(v, [0.0, r], [0.0, r], S, H)
        path = BildPath.TWO_BY_TWO_POSSEMI
    if pos is not cf:
        # the adjoint's canonical form lists coordinates in reverse order and
        # negates S, which leaves all three constraints and f unchanged
        w = res.witness_min
        back = FeasiblePoint(w.x[::-1].copy(), w.y[::-1].copy())
        res = replace(res, witness_min=back, witness_max=back)
    s = sweep(pos.original, m)
    i0, o0 = _upper_pair(s)
    inner = hull_of(i0, points=[v])
    outer = hull_of(o0, points=[v])
    return _finish(inner, outer, res, cls_, path, m, (i0,))


def upper_bild(A, opts: BildOptions | None = None, force_path: BildPath | None = None) -> BildResult:
    """Inner and outer polygons of ``B+(A)`` for a complex square matrix.

    Parameters
    ----------
    A : array_like or QMatrix
        Complex ``n x n`` matrix.  A ``QMatrix`` with ``j, k`` parts raises
        ``NotComplex``.
    opts : BildOptions, optional
    force_path : BildPath, optional
        Skip dispatch and use this path; ``General`` is always valid and is
        what the shortcut paths are checked against.
    """
    opts = opts or BildOptions()
    A = _complex_input(A)
    cf = canonical_form(A)
    cls_ = classify(cf.S, opts.eps_def)
    m = opts.m
    n = cf.n

    path = force_path
    if path is None:
        if n == 1:
            path = BildPath.SCALAR
        elif cls_ is Definiteness.ZERO:
            path = BildPath.HERMITIAN
        elif conj_symmetric(A, m, opts.symmetry_tol):
            path = BildPath.CONJ_SYMMETRIC
        elif n == 2:
            path = None
        elif cls_.is_definite:
            path = BildPath.DEFINITE
        else:
            path = BildPath.GENERAL
    if path is None or path in (BildPath.TWO_BY_TWO_INDEFINITE, BildPath.TWO_BY_TWO_POSDEF, BildPath.TWO_BY_TWO_POSSEMI):
        return two_by_two(cf, m, opts.band, opts.eps_def)

    if path is BildPath.SCALAR:
        rep = class_rep(Quaternion.from_complex(A[0, 0]))
        res = band(cf, opts.band)
        pt = ConvexRegion([rep])
        return _finish(pt, pt, res, cls_, path, m, ())

    if path is BildPath.HERMITIAN:
        vals, vecs = hermitian_eig(cf.H)
        lo, hi = float(vals[-1]), float(vals[0])
        zero = np.zeros(n, dtype=complex)
        wmin = FeasiblePoint(vecs[:, -1].copy(), zero)
        wmax = FeasiblePoint(vecs[:, 0].copy(), zero)
        res = BandResult(lo, hi, BandStatus.SOLVED, wmin, wmax, 0, 0.0, {"closed_form": True})
        seg = hull([lo, hi])
        return _finish(seg, seg, res, cls_, path, m, ())

    res = band(cf, opts.band)
    anchors = _anchors(res)

    if path is BildPath.CONJ_SYMMETRIC:
        s = sweep(A, m)
        i0, o0 = _upper_pair(s)
        inner = hull_of(i0, points=anchors)
        outer = hull_of(o0, points=anchors)
        return _finish(inner, outer, res, cls_, path, m, (i0,), {"anchor_excess": _anchor_excess(anchors, o0)})

    if path is BildPath.DEFINITE:
        s = sweep(A.conj().T if cls_.is_negative else A, m)
        i0, o0 = _upper_pair(s)
        inner = hull_of(i0, points=anchors)
        outer = hull_of(o0, points=anchors)
        return _finish(inner, outer, res, cls_, path, m, (i0,))

    sa, sb = sweep(A, m), sweep(A.conj().T, m)
    (ia, oa), (ib, ob) = _upper_pair(sa), _upper_pair(sb)
    inner = hull_of(ia, ib, points=anchors)
    outer = hull_of(oa, ob, points=anchors)
    return _finish(inner, outer, res, cls_, BildPath.GENERAL, m, (ia, ib))


def _as_quaternion(q) -> Quaternion:
    return q if isinstance(q, Quaternion) else Quaternion.from_complex(complex(q))


def member(A, q, tol: float = 1e-9, opts: BildOptions | None = None) -> bool:
    """Whether the quaternion ``q`` lies in ``W_H(A)``, up to ``tol``.

    ``A`` may be a matrix or an already computed :class:`BildResult`.  The
    test is against the outer polygon, so polygonization never produces a
    false negative; use :func:`strictly_inside` for the opposite guarantee.
    """
    b = A if isinstance(A, BildResult) else upper_bild(A, opts)
    return contains(b.upper_outer, class_rep(_as_quaternion(q)), tol)


def strictly_inside(A, q, tol: float = 1e-9, opts: BildOptions | None = None) -> bool:
    """Membership against the inner polygon shrunk by ``tol``; no false positives."""
    b = A if isinstance(A, BildResult) else upper_bild(A, opts)
    return contains(b.upper, class_rep(_as_quaternion(q)), -tol)


def qradius(A, m: int = DEFAULT_M) -> tuple[float, float]:
    """Enclosure ``(lo, hi)`` of the quaternionic numerical radius of a complex matrix.

    For complex matrices it coincides with the complex numerical radius, so
    this is the sweep enclosure of ``w_C(A)``.
    """
    if isinstance(A, QMatrix) and not A.is_complex():
        raise NotComplex("quaternionic radius is only reduced to w_C for complex matrices")
    return cradius(_complex_input(A), m)


def full_bild(b: BildResult) -> tuple[ConvexRegion, ConvexRegion]:
    """``B(A)`` as the upper polygon and its mirror; their union need not be convex."""
    return b.upper, b.upper.mirror()
