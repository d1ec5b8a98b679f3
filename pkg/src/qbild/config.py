"""Run configuration shared by the command line and the scripts."""
from __future__ import annotations

from dataclasses import dataclass, field

from .band import BandOptions
from .bild import BildOptions
from .errors import ConfigError


@dataclass(frozen=True)
class RunConfig:
    m: int = 720
    starts: int = 64
    samples: int = 100_000
    seed: int = 42
    tol: float = 1e-6
    # per-fixture bound on the oracle's coverage distance; None reports only
    coverage_bound: float | None = None
    band: BandOptions = field(default_factory=BandOptions)

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 8:
            raise ConfigError(f"sweep grid m >= 8 required, got {self.m}")
        if self.starts < 1:
            raise ConfigError(f"starts must be positive, got {self.starts}")
        if self.samples < 1:
            raise ConfigError(f"samples must be positive, got {self.samples}")
        if self.seed < 0:
            raise ConfigError(f"seed must be nonnegative, got {self.seed}")
        if not self.tol > 0:
            raise ConfigError(f"tol must be positive, got {self.tol}")

    def band_options(self) -> BandOptions:
        return BandOptions(**{**self.band.__dict__, "starts": self.starts, "seed": self.seed})

    def bild_options(self) -> BildOptions:
        return BildOptions(m=self.m, band=self.band_options())
