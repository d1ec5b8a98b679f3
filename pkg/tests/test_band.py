import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbild import (
    BandOptions,
    BandResult,
    BandStatus,
    Infeasible,
    QMatrix,
    QVector,
    band,
    band_oracle,
    canonical_form,
    feasible_sample,
    qform,
)
from qbild.band import band_forms, feasible_samples

from conftest import complex_matrices, random_complex, seeds

JORDAN_SHIFT = np.array([[1j, 0, 1], [0, 1j, 0], [0, 0, 1j]])
FAST = BandOptions(starts=16)


def test_disk_shift_band_value():
    res = band(canonical_form(JORDAN_SHIFT))
    assert res.solved
    r = 1 / np.sqrt(15)
    assert res.v_min == pytest.approx(-r, abs=1e-9)
    assert res.v_max == pytest.approx(r, abs=1e-9)


def test_disk_shift_witness_beats_quarter():
    # independent route: evaluate q* A q directly for the reported witness
    cf = canonical_form(JORDAN_SHIFT)
    w = band(cf).witness_max.in_original(cf)
    q = qform(QMatrix.from_complex(JORDAN_SHIFT), QVector.from_pair(w.x, w.y).unit())
    assert abs(q.im) <= 1e-8
    assert q.re > 0.25 + 5e-3


def test_triangle_band():
    res = band(canonical_form(np.diag([1 + 1j, 1 + 1j, -1j])))
    assert res.solved
    assert res.v_min == pytest.approx(0.5, abs=1e-7)
    assert res.v_max == pytest.approx(1.0, abs=1e-7)


def test_hermitian_band_is_spectrum():
    H = np.array([[2, 1j, 0], [-1j, 0, 1], [0, 1, -1]])
    ev = np.linalg.eigvalsh(H)
    res = band(canonical_form(H), FAST)
    assert res.v_min == pytest.approx(ev[0], abs=1e-8)
    assert res.v_max == pytest.approx(ev[-1], abs=1e-8)


def test_scalar_cases():
    assert band(canonical_form(np.array([[2.0 + 0j]]))).interval() == (2.0, 2.0)
    res = band(canonical_form(np.array([[1j]])))
    assert res.status is BandStatus.EMPTY and res.v_min is None


def test_infeasible_one_by_one():
    with pytest.raises(Infeasible):
        feasible_samples(np.array([1.0]), 3, np.random.default_rng(0))
    with pytest.raises(Infeasible):
        band_oracle(canonical_form(np.array([[1j]])), 10)


@given(st.lists(st.floats(-3, 3), min_size=2, max_size=5), seeds)
def test_feasible_samples_satisfy_constraints(S, seed):
    S = np.sort(np.asarray(S))[::-1]
    Z = feasible_samples(S, 20, np.random.default_rng(seed))
    for z in Z:
        from qbild import FeasiblePoint
        assert FeasiblePoint.from_stacked(z).is_feasible(S, 1e-10)


def test_two_by_two_indefinite_sampler():
    p = feasible_sample(np.array([2.0, -0.5]), np.random.default_rng(3))
    r = p.residuals(np.array([2.0, -0.5]))
    assert r["unit"] <= 1e-12 and r["d0"] <= 1e-12 and r["d1"] <= 1e-12


@settings(max_examples=8)
@given(seeds)
def test_witnesses_feasible_and_attain(seed):
    rng = np.random.default_rng(seed)
    A = random_complex(rng, int(rng.integers(2, 5)))
    cf = canonical_form(A)
    res = band(cf, FAST)
    assert res.status is BandStatus.SOLVED
    for w, v in ((res.witness_min, res.v_min), (res.witness_max, res.v_max)):
        assert w.is_feasible(cf.S)
        assert w.value(cf.H) == pytest.approx(v, abs=1e-12 * (1 + abs(v)))
        # feasible in canonical coordinates means the form is real in the original ones
        wo = w.in_original(cf)
        q = qform(QMatrix.from_complex(A), QVector.from_pair(wo.x, wo.y).unit())
        assert abs(q.im) <= 1e-7 * (1 + np.abs(A).max())
        assert q.re == pytest.approx(v, abs=1e-7 * (1 + np.abs(A).max()))


@settings(max_examples=6)
@given(seeds)
def test_oracle_never_beats_optimizer(seed):
    rng = np.random.default_rng(seed)
    A = random_complex(rng, int(rng.integers(2, 4)))
    cf = canonical_form(A)
    res = band(cf, FAST)
    lo, hi = band_oracle(cf, 20_000, eps_real=1e-4, seed=seed % 1000)
    scale = 1 + np.abs(A).max()
    # the raw arm accepts classes up to eps_real off the axis
    slack = 1e-6 + 10 * np.sqrt(1e-4) * scale
    assert lo >= res.v_min - slack and hi <= res.v_max + slack
    assert res.v_min <= res.v_max


@settings(max_examples=5)
@given(seeds, st.floats(-2, 2), st.floats(0.2, 3))
def test_affine_real_covariance(seed, c, t):
    rng = np.random.default_rng(seed)
    A = random_complex(rng, 3)
    base = band(canonical_form(A), FAST)
    moved = band(canonical_form(t * A + c * np.eye(3)), FAST)
    assert moved.v_min == pytest.approx(t * base.v_min + c, abs=1e-7)
    assert moved.v_max == pytest.approx(t * base.v_max + c, abs=1e-7)


@settings(max_examples=5)
@given(seeds)
def test_adjoint_and_unitary_invariance(seed):
    rng = np.random.default_rng(seed)
    A = random_complex(rng, 3)
    U, _ = np.linalg.qr(random_complex(rng, 3))
    base = band(canonical_form(A), FAST)
    for B in (A.conj().T, U @ A @ U.conj().T):
        other = band(canonical_form(B), FAST)
        assert other.v_min == pytest.approx(base.v_min, abs=1e-7)
        assert other.v_max == pytest.approx(base.v_max, abs=1e-7)


def test_real_crossings_do_not_beat_optimizer():
    rng = np.random.default_rng(11)
    for _ in range(3):
        res = band(canonical_form(random_complex(rng, 4)), FAST)
        assert res.diagnostics["crossing_excess_min"] <= 1e-9
        assert res.diagnostics["crossing_excess_max"] <= 1e-9


def test_band_forms_shapes():
    cf = canonical_form(JORDAN_SHIFT)
    Q = band_forms(cf.H, cf.S)
    assert Q.shape == (4, 12, 12)
    assert np.allclose(Q, np.swapaxes(Q, 1, 2))


def test_result_round_trip():
    res = band(canonical_form(np.diag([1 + 1j, 2 + 2j])), FAST)
    back = BandResult.from_dict(res.to_dict())
    assert back.interval() == res.interval() and back.status is res.status
    assert np.array_equal(back.witness_max.x, res.witness_max.x)


def test_deterministic_for_seed():
    a = band(canonical_form(JORDAN_SHIFT), FAST)
    b = band(canonical_form(JORDAN_SHIFT), FAST)
    assert a.interval() == b.interval()
