"""Extreme real values of the bild of a complex matrix.

In canonical coordinates ``A = H + S i`` a pair of complex vectors ``(x, y)``
with ``|x|^2 + |y|^2 = 1`` gives a real value ``x*Hx + y*Hy`` of the
quaternionic numerical range exactly when

    x*Sy = 0            (two real constraints)
    x*Sx - y*Sy = 0     (one real constraint).

The band ``[v_min, v_max]`` is the range of that objective over the
constraint set.  Everything is a real quadratic form in the stacked vector
``z = (Re x, Im x, Re y, Im y)``, so the optimizer works with four symmetric
``4n x 4n`` matrices on the unit sphere of ``R^{4n}``.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import Infeasible, RetriesExhausted
from .linalg import CanonicalForm, Definiteness, classify, jacobi_eigh
from .quat import QMatrix, class_rep_arrays, qform_arrays, random_unit_vectors

log = logging.getLogger(__name__)

FEAS_TOL = 1e-8
UNIT_TOL = 1e-10


class BandStatus(enum.Enum):
    SOLVED = "Solved"
    EMPTY = "Empty"
    MAX_ITERATIONS = "MaxIterations"


@dataclass(frozen=True, eq=False)
class FeasiblePoint:
    """A pair ``(x, y)`` in canonical coordinates."""

    x: np.ndarray
    y: np.ndarray

    def residuals(self, S) -> dict:
        S = np.asarray(S, dtype=float)
        c = np.vdot(self.x, S * self.y)
        return {
            "unit": abs(np.vdot(self.x, self.x).real + np.vdot(self.y, self.y).real - 1.0),
            "d0": max(abs(c.real), abs(c.imag)),
            "d1": abs(np.vdot(self.x, S * self.x).real - np.vdot(self.y, S * self.y).real),
        }

    def is_feasible(self, S, tol: float = FEAS_TOL, unit_tol: float = UNIT_TOL) -> bool:
        r = self.residuals(S)
        return r["unit"] <= unit_tol and r["d0"] <= tol and r["d1"] <= tol

    def value(self, H) -> float:
        return float((np.vdot(self.x, H @ self.x) + np.vdot(self.y, H @ self.y)).real)

    def in_original(self, cf: CanonicalForm) -> "FeasiblePoint":
        """The same point for the original matrix: ``(U x, U y)``."""
        return FeasiblePoint(cf.U @ self.x, cf.U @ self.y)

    def to_stacked(self) -> np.ndarray:
        return np.concatenate([self.x.real, self.x.imag, self.y.real, self.y.imag])

    @classmethod
    def from_stacked(cls, z) -> "FeasiblePoint":
        z = np.asarray(z, dtype=float)
        n = len(z) // 4
        return cls(z[:n] + 1j * z[n : 2 * n], z[2 * n : 3 * n] + 1j * z[3 * n :])

    def to_dict(self) -> dict:
        return {"x": complex_pairs(self.x), "y": complex_pairs(self.y)}

    @classmethod
    def from_dict(cls, d: dict) -> "FeasiblePoint":
        return cls(from_pairs(d["x"]), from_pairs(d["y"]))


def complex_pairs(v) -> list:
    """``[[re, im], ...]`` for JSON output."""
    return [[float(z.real), float(z.imag)] for z in np.asarray(v, dtype=complex).reshape(-1)]


def from_pairs(rows) -> np.ndarray:
    a = np.asarray(rows, dtype=float).reshape(-1, 2)
    return a[:, 0] + 1j * a[:, 1]


@dataclass(frozen=True)
class BandOptions:
    starts: int = 64
    seed: int = 42
    mu0: float = 10.0
    mu_factor: float = 10.0
    outer_max: int = 8
    inner_max: int = 100
    grad_tol: float = 1e-9
    ctol: float = 1e-8
    levenberg: float = 1e-6
    feas_tol: float = FEAS_TOL
    kkt_tol: float = 1e-7
    crossing_pairs: int = 256


@dataclass(frozen=True, eq=False)
class BandResult:
    v_min: float | None
    v_max: float | None
    status: BandStatus
    witness_min: FeasiblePoint | None = None
    witness_max: FeasiblePoint | None = None
    starts_used: int = 0
    kkt_residual: float = float("nan")
    diagnostics: dict = field(default_factory=dict)

    @property
    def solved(self) -> bool:
        return self.status is BandStatus.SOLVED

    def interval(self):
        return (self.v_min, self.v_max)

    def to_dict(self) -> dict:
        kkt = self.kkt_residual
        return {
            "v_min": self.v_min,
            "v_max": self.v_max,
            "status": self.status.value,
            "witness_min": self.witness_min.to_dict() if self.witness_min is not None else None,
            "witness_max": self.witness_max.to_dict() if self.witness_max is not None else None,
            "starts_used": self.starts_used,
            "kkt_residual": None if kkt != kkt else kkt,
            "diagnostics": dict(self.diagnostics),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BandResult":
        def wit(k):
            return FeasiblePoint.from_dict(d[k]) if d.get(k) is not None else None

        kkt = d.get("kkt_residual")
        return cls(
            v_min=d["v_min"],
            v_max=d["v_max"],
            status=BandStatus(d["status"]),
            witness_min=wit("witness_min"),
            witness_max=wit("witness_max"),
            starts_used=int(d.get("starts_used", 0)),
            kkt_residual=float("nan") if kkt is None else float(kkt),
            diagnostics=dict(d.get("diagnostics", {})),
        )


# --------------------------------------------------------------------------
# quadratic forms


def _gre(M: np.ndarray) -> np.ndarray:
    P, Q = M.real, M.imag
    return np.block([[P, -Q], [Q, P]])


def _gim(M: np.ndarray) -> np.ndarray:
    P, Q = M.real, M.imag
    return np.block([[Q, P], [-P, Q]])


def band_forms(H, S) -> np.ndarray:
    """Symmetric matrices of ``f, Re x*Sy, Im x*Sy, x*Sx - y*Sy`` in ``z``.

    Returns an array of shape ``(4, 4n, 4n)``.
    """
    H = np.asarray(H, dtype=complex)
    Sm = np.diag(np.asarray(S, dtype=float)).astype(complex)
    n = H.shape[0]
    Z = np.zeros((2 * n, 2 * n))
    gh = _gre(H)
    gs = _gre(Sm)
    f = np.block([[gh, Z], [Z, gh]])
    re = np.block([[Z, gs], [Z, Z]])
    im = np.block([[Z, _gim(Sm)], [Z, Z]])
    d1 = np.block([[gs, Z], [Z, -gs]])
    Qs = np.stack([f, re, im, d1])
    return 0.5 * (Qs + np.swapaxes(Qs, 1, 2))


def _quad(Q: np.ndarray, Z: np.ndarray) -> np.ndarray:
    """``z^T Q_k z`` for each row of ``Z``; returns shape ``(B, K)``."""
    return np.einsum("bi,kij,bj->bk", Z, Q, Z)


# --------------------------------------------------------------------------
# feasible points


def feasible_samples(S, count: int, rng: np.random.Generator, max_retries: int = 1000) -> np.ndarray:
    """``count`` feasible stacked vectors, shape ``(count, 4n)``.

    Draw ``x, y``; remove from ``y`` its component along ``Sx`` (which zeroes
    ``x*Sy``); then split the unit mass between ``x`` and ``y`` so that
    ``x*Sx = y*Sy``, resampling whenever that balance has no real root.

    When that route rarely succeeds (for 2x2 indefinite ``S`` it never does:
    there ``y*Sy = -x*Sx`` after the orthogonalization) the remaining points
    are built from ``S``-isotropic vectors instead, see :func:`_isotropic_pair`.
    """
    S = np.asarray(S, dtype=float)
    n = len(S)
    if n == 1 and classify(S) is not Definiteness.ZERO:
        raise Infeasible("n = 1 with nonzero S: x*Sy = 0 and x*Sx = y*Sy force x = y = 0")
    out = np.empty((count, 4 * n))
    filled = 0
    low = 0
    for _ in range(max_retries):
        if filled == count:
            break
        k = count - filled
        x = rng.standard_normal((k, n)) + 1j * rng.standard_normal((k, n))
        y = rng.standard_normal((k, n)) + 1j * rng.standard_normal((k, n))
        sx = S * x
        sxn = np.sum(np.abs(sx) ** 2, axis=1)
        proj = np.where(sxn > 0, np.einsum("bi,bi->b", sx.conj(), y) / np.where(sxn > 0, sxn, 1.0), 0.0)
        y = y - proj[:, None] * sx
        xn = np.linalg.norm(x, axis=1)
        yn = np.linalg.norm(y, axis=1)
        good = (xn > 1e-8) & (yn > 1e-8)
        xh = x / np.where(good, xn, 1.0)[:, None]
        yh = y / np.where(good, yn, 1.0)[:, None]
        p = np.einsum("bi,bi->b", xh.conj(), S * xh).real
        r = np.einsum("bi,bi->b", yh.conj(), S * yh).real
        both_zero = (np.abs(p) <= 1e-14) & (np.abs(r) <= 1e-14)
        denom = p + r
        same_sign = (p * r >= 0) & (np.abs(denom) > 1e-12)
        a2 = np.where(same_sign, r / np.where(same_sign, denom, 1.0), rng.uniform(size=k))
        ok = good & (same_sign | both_zero)
        a2 = np.clip(a2[ok], 0.0, 1.0)
        xs = np.sqrt(a2)[:, None] * xh[ok]
        ys = np.sqrt(1.0 - a2)[:, None] * yh[ok]
        z = np.concatenate([xs.real, xs.imag, ys.real, ys.imag], axis=1)
        take = min(len(z), count - filled)
        out[filled : filled + take] = z[:take]
        filled += take
        low = low + 1 if take < 0.05 * k else 0
        if low >= 20:
            while filled < count:
                z1 = _isotropic_pair(S, rng)
                if z1 is not None:
                    out[filled] = z1
                    filled += 1
                elif max_retries <= 0:
                    break
                else:
                    max_retries -= 1
            break
    if filled < count:
        raise RetriesExhausted(f"only {filled} of {count} feasible points after {max_retries} rounds")
    return out


def _isotropic(S, P, rng, tries: int = 50):
    """Unit ``v`` in the range of projector ``P`` with ``v*Sv = 0``, or None.

    A random ``a`` in the range is paired with the extreme eigenvector of the
    compressed form whose sign is opposite to ``a*Sa``; drawing both at random
    fails when ``S`` is badly unbalanced (``S = diag(1, -1e-5)``).
    """
    n = len(S)
    w, V = jacobi_eigh(P)
    B = V[:, w > 0.5]
    if B.shape[1] == 0:
        return None
    lam, E = jacobi_eigh(B.conj().T @ (S[:, None] * B))
    if lam[0] < 0.0 or lam[-1] > 0.0:
        return None
    top, bottom = B @ E[:, 0], B @ E[:, -1]
    smax = float(np.max(np.abs(S)))
    for _ in range(tries):
        a = P @ (rng.standard_normal(n) + 1j * rng.standard_normal(n))
        na = np.linalg.norm(a)
        if na < 1e-8:
            continue
        a = a / na
        pa = np.vdot(a, S * a).real
        b = bottom if pa >= 0 else top
        pb = np.vdot(b, S * b).real
        if pa * pb > 0:
            continue
        c = np.vdot(a, S * b)
        # phase that kills the cross term, then balance the two diagonal terms
        ph = 1j * np.exp(-1j * np.angle(c))
        if abs(pb) <= 1e-15 * smax:
            # b is already isotropic to rounding
            v = b
        else:
            t = np.sqrt(-pa / pb)
            v = a + t * ph * b
        nv = np.linalg.norm(v)
        if nv > 1e-8:
            return v / nv
    return None


def _isotropic_pair(S, rng):
    """Stacked feasible point with ``x*Sx = y*Sy = 0`` and ``y`` orthogonal to ``Sx``."""
    n = len(S)
    eye = np.eye(n)
    x = _isotropic(S, eye, rng)
    if x is None:
        return None
    sx = S * x
    ns = np.vdot(sx, sx).real
    P = eye - np.outer(sx, sx.conj()) / ns if ns > 0 else eye
    y = _isotropic(S, P, rng)
    if y is None:
        # x is itself in (Sx)^perp and isotropic
        y = x
    a2 = rng.uniform()
    x = np.sqrt(a2) * x
    y = np.sqrt(1.0 - a2) * y
    return np.concatenate([x.real, x.imag, y.real, y.imag])


def feasible_sample(S, rng: np.random.Generator, max_retries: int = 1000) -> FeasiblePoint:
    return FeasiblePoint.from_stacked(feasible_samples(S, 1, rng, max_retries)[0])


# --------------------------------------------------------------------------
# optimizer


def _normalize(Z: np.ndarray) -> np.ndarray:
    return Z / np.linalg.norm(Z, axis=1, keepdims=True)


def _al_value(Q, sigma, lam, mu, Z):
    r = _quad(Q, Z)
    return sigma * r[:, 0] + np.sum(lam * r[:, 1:], axis=1) + 0.5 * mu * np.sum(r[:, 1:] ** 2, axis=1)


def _al_newton(Q, sigma, Z, lam, mu, opts: BandOptions):
    """Minimize the augmented Lagrangian over the unit sphere for every start.

    Modified Newton on the tangent space with an Armijo backtracking line
    search and a normalization retraction.
    """
    B, d = Z.shape
    eye = np.eye(d)
    active = np.ones(B, dtype=bool)
    for _ in range(opts.inner_max):
        if not active.any():
            break
        idx = np.flatnonzero(active)
        z = Z[idx]
        QZ = np.einsum("kij,bj->bki", Q, z)
        r = np.einsum("bi,bki->bk", z, QZ)
        wts = np.concatenate([np.full((len(idx), 1), sigma), lam[idx] + mu * r[:, 1:]], axis=1)
        egrad = 2.0 * np.einsum("bk,bki->bi", wts, QZ)
        radial = np.einsum("bi,bi->b", z, egrad)
        grad = egrad - radial[:, None] * z
        gnorm = np.linalg.norm(grad, axis=1)
        done = gnorm <= opts.grad_tol
        active[idx[done]] = False
        if done.all():
            break
        keep = ~done
        idx, z, QZ, wts, grad, radial = idx[keep], z[keep], QZ[keep], wts[keep], grad[keep], radial[keep]
        gq = 2.0 * QZ[:, 1:, :]
        ehess = 2.0 * np.einsum("bk,kij->bij", wts, Q) + mu * np.einsum("bki,bkj->bij", gq, gq)
        P = eye[None] - z[:, :, None] * z[:, None, :]
        rhess = P @ ehess @ P - radial[:, None, None] * P
        ev = np.linalg.eigvalsh(rhess + 1e3 * (z[:, :, None] * z[:, None, :]))
        scale = np.maximum(1.0, np.abs(ev).max(axis=1))
        shift = np.maximum(0.0, -ev[:, 0]) + opts.levenberg * scale
        M = rhess + shift[:, None, None] * P + z[:, :, None] * z[:, None, :]
        step = -np.linalg.solve(M, grad[:, :, None])[:, :, 0]
        slope = np.einsum("bi,bi->b", grad, step)
        f0 = _al_value(Q, sigma, lam[idx], mu, z)
        # predicted decrease below rounding: nothing left to gain
        flat = -slope <= 1e-15 * (1.0 + np.abs(f0))
        if flat.any():
            active[idx[flat]] = False
            keep = ~flat
            if not keep.any():
                break
            idx, z, step, slope, f0 = idx[keep], z[keep], step[keep], slope[keep], f0[keep]
        alpha = np.ones(len(idx))
        pending = np.ones(len(idx), dtype=bool)
        znew = z.copy()
        for _ls in range(30):
            cand = _normalize(z[pending] + alpha[pending, None] * step[pending])
            fc = _al_value(Q, sigma, lam[idx[pending]], mu, cand)
            ok = fc <= f0[pending] + 1e-4 * alpha[pending] * slope[pending]
            pidx = np.flatnonzero(pending)
            znew[pidx[ok]] = cand[ok]
            pending[pidx[ok]] = False
            alpha[pidx[~ok]] *= 0.5
            if not pending.any():
                break
        # a start whose line search fails has stalled at rounding level
        active[idx[pending]] = False
        Z[idx] = znew
    return Z


def _constraint_jac(Q, Z):
    """Tangent gradients of the three constraints, shape ``(B, 3, d)``."""
    G = 2.0 * np.einsum("kij,bj->bki", Q[1:], Z)
    return G - np.einsum("bki,bi->bk", G, Z)[:, :, None] * Z[:, None, :]


def _repair(Q, Z, iters: int = 60, tol: float = 1e-15):
    """Gauss-Newton projection onto the constraint set, staying on the sphere."""
    Z = Z.copy()
    for _ in range(iters):
        r = _quad(Q[1:], Z)
        if np.max(np.abs(r)) <= tol:
            break
        Jt = _constraint_jac(Q, Z)
        step = np.empty_like(Z)
        for b in range(len(Z)):
            step[b] = -np.linalg.lstsq(Jt[b], r[b], rcond=1e-12)[0]
        Z = _normalize(Z + step)
    return Z


def kkt_residuals(Q, Z, sigma: float = 1.0) -> np.ndarray:
    """Norm of the tangent Lagrangian gradient with least-squares multipliers."""
    g = 2.0 * np.einsum("ij,bj->bi", Q[0], Z)
    g = sigma * (g - np.einsum("bi,bi->b", g, Z)[:, None] * Z)
    Jt = _constraint_jac(Q, Z)
    out = np.empty(len(Z))
    for b in range(len(Z)):
        nu = np.linalg.lstsq(Jt[b].T, -g[b], rcond=1e-10)[0]
        out[b] = np.linalg.norm(g[b] + Jt[b].T @ nu)
    return out


def _kkt_polish(Q, sigma: float, z: np.ndarray, iters: int = 20):
    """Newton's method on the full first-order system from a nearby point.

    Unknowns are ``z``, the three constraint multipliers and the sphere
    multiplier.  The Jacobian is singular along the symmetry orbits of the
    problem, so each step is a minimum-norm least-squares solve.
    """
    d = len(z)
    gz = 2.0 * np.einsum("kij,j->ki", Q[1:], z)
    g0 = 2.0 * sigma * (Q[0] @ z)
    A = np.column_stack([gz.T, z])
    sol = np.linalg.lstsq(A, -g0, rcond=1e-12)[0]
    nu, kap = sol[:3], sol[3]

    def resid(z, nu, kap):
        gz = 2.0 * np.einsum("kij,j->ki", Q[1:], z)
        return np.concatenate([2.0 * sigma * (Q[0] @ z) + gz.T @ nu + kap * z, np.einsum("i,kij,j->k", z, Q[1:], z), [0.5 * (z @ z - 1.0)]])

    r = resid(z, nu, kap)
    for _ in range(iters):
        if np.linalg.norm(r) <= 1e-15:
            break
        L = 2.0 * (sigma * Q[0] + np.einsum("k,kij->ij", nu, Q[1:])) + kap * np.eye(d)
        gz = 2.0 * np.einsum("kij,j->ki", Q[1:], z)
        J = np.zeros((d + 4, d + 4))
        J[:d, :d] = L
        J[:d, d : d + 3] = gz.T
        J[:d, d + 3] = z
        J[d : d + 3, :d] = gz
        J[d + 3, :d] = z
        step = np.linalg.lstsq(J, -r, rcond=1e-12)[0]
        zn, nun, kapn = z + step[:d], nu + step[d : d + 3], kap + step[d + 3]
        rn = resid(zn, nun, kapn)
        if np.linalg.norm(rn) >= np.linalg.norm(r):
            break
        z, nu, kap, r = zn, nun, kapn, rn
    return z / np.linalg.norm(z)


def _optimize(Q, sigma: float, Z0: np.ndarray, opts: BandOptions):
    """Multi-start augmented Lagrangian; returns final points (unrepaired)."""
    Z = _normalize(Z0.copy())
    lam = np.zeros((len(Z), 3))
    mu = opts.mu0
    for _ in range(opts.outer_max):
        Z = _al_newton(Q, sigma, Z, lam, mu, opts)
        r = _quad(Q[1:], Z)
        lam = lam + mu * r
        if np.max(np.abs(r)) <= opts.ctol:
            break
        mu *= opts.mu_factor
    return Z


def _scaled(Q: np.ndarray) -> np.ndarray:
    """Objective and constraints rescaled to unit spectral size."""
    out = Q.copy()
    s0 = np.max(np.abs(np.linalg.eigvalsh(Q[0])))
    s1 = max(np.max(np.abs(np.linalg.eigvalsh(Q[k]))) for k in (1, 2, 3))
    if s0 > 0:
        out[0] /= s0
    if s1 > 0:
        out[1:] /= s1
    return out


def _pick(Q, sigma, Z, S, feas_tol):
    r = _quad(Q, Z)
    pts = [FeasiblePoint.from_stacked(z) for z in Z]
    feas = np.array([p.is_feasible(S, feas_tol) for p in pts])
    if feas.any():
        cand = np.flatnonzero(feas)
        b = cand[np.argmin(sigma * r[cand, 0])]
        return int(b), True
    viol = np.max(np.abs(r[:, 1:]), axis=1)
    return int(np.argmin(viol)), False


def _crossing_points(cf: CanonicalForm, count: int, rng: np.random.Generator):
    """Real points of segments ``[z1* A z1, z2* A* z2]`` with ``z1* S z2 = 0``.

    Returns the real crossing values and their stacked ``(x, y)`` witnesses.
    """
    n = cf.n
    S = cf.S
    A = cf.matrix()
    z1 = rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))
    z2 = rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))
    s1 = S * z1
    nn = np.sum(np.abs(s1) ** 2, axis=1)
    proj = np.where(nn > 0, np.einsum("bi,bi->b", s1.conj(), z2) / np.where(nn > 0, nn, 1.0), 0.0)
    z2 = z2 - proj[:, None] * s1
    z1 /= np.linalg.norm(z1, axis=1, keepdims=True)
    n2 = np.linalg.norm(z2, axis=1, keepdims=True)
    ok = n2[:, 0] > 1e-8
    z1, z2 = z1[ok], z2[ok] / n2[ok]
    w1 = np.einsum("bi,ij,bj->b", z1.conj(), A, z1)
    w2 = np.einsum("bi,ij,bj->b", z2.conj(), A.conj().T, z2)
    crosses = (w1.imag * w2.imag <= 0) & (np.abs(w1.imag - w2.imag) > 0)
    w1, w2, z1, z2 = w1[crosses], w2[crosses], z1[crosses], z2[crosses]
    alpha = w2.imag / (w2.imag - w1.imag)
    values = alpha * w1.real + (1 - alpha) * w2.real
    x = np.sqrt(alpha)[:, None] * z1
    y = np.sqrt(1 - alpha)[:, None] * z2
    Z = np.concatenate([x.real, x.imag, y.real, y.imag], axis=1)
    return values, Z


def band(cf: CanonicalForm, opts: BandOptions | None = None) -> BandResult:
    """Compute ``v_min`` and ``v_max`` by multi-start augmented Lagrangian.

    Parameters
    ----------
    cf : CanonicalForm
        Canonical form of the matrix.
    opts : BandOptions, optional
        Starts, seed, penalty schedule and tolerances.

    Returns
    -------
    BandResult
        ``status`` is ``Solved`` when both witnesses are feasible within
        ``feas_tol`` and satisfy first-order conditions within ``kkt_tol``;
        ``MaxIterations`` otherwise (values are still the best found);
        ``Empty`` when the constraint set is provably empty.
    """
    opts = opts or BandOptions()
    S = np.asarray(cf.S, dtype=float)
    n = cf.n
    if n == 1:
        if classify(S) is Definiteness.ZERO:
            v = float(cf.H[0, 0].real)
            w = FeasiblePoint(np.ones(1, dtype=complex), np.zeros(1, dtype=complex))
            return BandResult(v, v, BandStatus.SOLVED, w, w, 0, 0.0)
        return BandResult(None, None, BandStatus.EMPTY, diagnostics={"reason": "n = 1 with S != 0"})

    Q = band_forms(cf.H, S)
    Qs = _scaled(Q)
    seeds = np.random.SeedSequence(opts.seed).spawn(opts.starts + 1)
    Z0 = np.stack([feasible_samples(S, 1, np.random.default_rng(s))[0] for s in seeds[:-1]])
    cross_vals, cross_Z = _crossing_points(cf, opts.crossing_pairs, np.random.default_rng(seeds[-1]))

    results = {}
    for sigma, key in ((1.0, "min"), (-1.0, "max")):
        Zr = _repair(Q, _optimize(Qs, sigma, Z0, opts))
        b, feas = _pick(Q, sigma, Zr, S, opts.feas_tol)
        best = float(_quad(Q[:1], Zr[b : b + 1])[0, 0])
        excess = 0.0
        # real crossings of these segments are feasible; none may beat the optimizer
        if len(cross_vals):
            j = int(np.argmin(sigma * cross_vals))
            excess = float(sigma * (best - cross_vals[j]))
            if excess > 1e-9:
                log.info("segment crossing beats optimizer by %.3g; restarting from it", excess)
                Zx = _optimize(Qs, sigma, cross_Z[j : j + 1], opts)
                Zr = np.concatenate([Zr, _repair(Q, Zx)])
                b, feas = _pick(Q, sigma, Zr, S, opts.feas_tol)
                best = float(_quad(Q[:1], Zr[b : b + 1])[0, 0])
        kkt = float(kkt_residuals(Q, Zr[b : b + 1], sigma)[0])
        zp = _kkt_polish(Q, sigma, Zr[b])
        kp = float(kkt_residuals(Q, zp[None], sigma)[0])
        vp = float(_quad(Q[:1], zp[None])[0, 0])
        wp = FeasiblePoint.from_stacked(zp)
        # keep the polished point only if it is at least as good on every count
        if kp < kkt and wp.is_feasible(S, opts.feas_tol) and sigma * (vp - best) <= 1e-12 * (1.0 + abs(best)):
            Zr = Zr.copy()
            Zr[b] = zp
            best, kkt, feas = vp, kp, True
        results[key] = (best, FeasiblePoint.from_stacked(Zr[b]), feas, kkt, excess)

    (vmin, wmin, fmin, kmin, emin), (vmax, wmax, fmax, kmax, emax) = results["min"], results["max"]
    kkt = max(kmin, kmax)
    ok = fmin and fmax and kkt <= opts.kkt_tol
    status = BandStatus.SOLVED if ok else BandStatus.MAX_ITERATIONS
    if vmin > vmax:
        vmin = vmax = 0.5 * (vmin + vmax)
    diag = {
        "kkt_min": kmin,
        "kkt_max": kmax,
        "feasible": bool(fmin and fmax),
        "crossing_excess_min": emin,
        "crossing_excess_max": emax,
        "crossing_points": int(len(cross_vals)),
    }
    return BandResult(vmin, vmax, status, wmin, wmax, opts.starts, kkt, diag)


# --------------------------------------------------------------------------
# independent estimator


def band_oracle(cf: CanonicalForm, N: int, eps_real: float = 1e-3, seed: int = 0, chunk: int = 65536):
    """Monte-Carlo inner estimate of ``(v_min, v_max)``.

    Two arms: objective values at ``N`` random feasible points, and real
    parts of raw quaternionic samples ``q* A q`` whose class representative
    lies within ``eps_real`` of the real axis.
    """
    if N < 1:
        raise ValueError("N >= 1 required")
    S = np.asarray(cf.S, dtype=float)
    n = cf.n
    if n == 1 and classify(S) is not Definiteness.ZERO:
        raise Infeasible("n = 1 with nonzero S")
    Q = band_forms(cf.H, S)
    ss = np.random.SeedSequence(seed)
    arm_feas, arm_raw = ss.spawn(2)
    lo, hi = np.inf, -np.inf
    nchunks = -(-N // chunk)
    for k, s in enumerate(arm_feas.spawn(nchunks)):
        cnt = min(chunk, N - k * chunk)
        Z = feasible_samples(S, cnt, np.random.default_rng(s))
        vals = _quad(Q[:1], Z)[:, 0]
        lo, hi = min(lo, vals.min()), max(hi, vals.max())
    Aq = QMatrix.from_complex(cf.matrix()).data
    for k, s in enumerate(arm_raw.spawn(nchunks)):
        cnt = min(chunk, N - k * chunk)
        V = random_unit_vectors(n, cnt, np.random.default_rng(s))
        reps = class_rep_arrays(qform_arrays(Aq, V))
        near = reps[reps.imag <= eps_real].real
        if near.size:
            lo, hi = min(lo, near.min()), max(hi, near.max())
    return float(lo), float(hi)
