"""Truncation policy: one record governing every finite window.

Every truncated sum in the package draws its bounds from an explicit
policy value, and reports echo the policy, so any number in any report
can be reproduced from the report alone.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .errors import ConfigError

WINDOW_ENTRY_BOUND = "entry-bound"
WINDOW_DELTA_BALL = "delta-ball"


@dataclass(frozen=True)
class TruncationPolicy:
    entry_bound: int = 5          # B: entry-norm window bound
    conj_bound: int = 6           # window for bounded conjugator searches
    stab_bound: int = 32          # stabilizer lattice search bound
    delta_cutoff: float = 20.0    # D: point-pair cutoff
    norm_cutoff: float = 12.0     # X: class-norm cutoff
    quad_tol: float = 1e-10       # quadrature tolerance
    coset_cap: int = 4096         # max index before "index overflow"
    window: str = WINDOW_DELTA_BALL
    threads: int = 1
    min_terms: int = 0            # for auto-chosen delta cutoffs

    def __post_init__(self):
        if self.entry_bound < 1 or self.conj_bound < 1 or self.stab_bound < 1:
            raise ConfigError("window bounds must be >= 1")
        if self.quad_tol <= 0:
            raise ConfigError("quadrature tolerance must be positive")
        if self.window not in (WINDOW_ENTRY_BOUND, WINDOW_DELTA_BALL):
            raise ConfigError(f"unknown window mode {self.window!r}")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")

    def replace(self, **kw):
        data = asdict(self)
        data.update(kw)
        return TruncationPolicy(**data)

    def as_dict(self):
        return asdict(self)
