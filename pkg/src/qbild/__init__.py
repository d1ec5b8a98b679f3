"""Quaternionic numerical ranges of complex matrices.

The upper bild ``B+(A)``, the part of ``W_H(A)`` in the closed upper
half-plane, is assembled from angle sweeps of complex numerical ranges and
a constrained optimization for its real extremes, then checked against
Monte-Carlo samples of ``W_H(A)``.
"""
from .band import BandOptions, BandResult, BandStatus, FeasiblePoint, band, band_oracle, feasible_sample
from .bild import BildOptions, BildPath, BildResult, full_bild, member, qradius, two_by_two, upper_bild
from .config import RunConfig
from .crange import SweepResult, combine, conj_symmetric, cradius, sweep
from .errors import (
    ConfigError,
    EmptyRegion,
    Infeasible,
    NotComplex,
    NotHermitian,
    NotUnit,
    ParseError,
    QBildError,
    RetriesExhausted,
)
from .geometry import ConvexRegion, RegionPair, clip_upper, contains, hausdorff, hull
from .linalg import CanonicalForm, Definiteness, canonical_form, classify, complexify, hermitian_eig
from .oracle import SampleCloud, ValidationReport, conjecture_demo, radius_norm_demo, sample_range, validate
from .quat import I, J, K, ONE, QMatrix, Quaternion, QVector, class_rep, project, qform, qmul, similar

__version__ = "0.1.0"
