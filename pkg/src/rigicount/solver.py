"""Exact realisation counts from pinned systems, with a cross-prime quorum.

A single run picks a prime and a seed, builds the pinned system, computes the
ideal degree and divides by the slice multiplicity (4).  Genericity of the
random specialization is only statistical, so runs are repeated over
independent (prime, seed) pairs until `quorum` of them agree; every
degeneracy (zero-dimensionality failure, degree not divisible by four)
triggers a resample instead of a guess.
"""

from __future__ import annotations

import enum
import logging
import random
from dataclasses import dataclass
from typing import Optional

from . import matroid
from .graphs import Graph
from .groebner import NotZeroDimensional, groebner_basis, quotient_dimension
from .systems import DegenerateSample, build_planar_system, build_spherical_system

log = logging.getLogger(__name__)

DEFAULT_PRIMES = (1073741789, 1073741827, 1073741909, 1073741651, 1073741717)

SLICE_MULTIPLICITY = 4


class Mode(enum.Enum):
    PLANE = "plane"
    SPHERE = "sphere"

    @classmethod
    def parse(cls, text: str) -> "Mode":
        return cls(text.lower())


class SolverError(Exception):
    pass


class QuorumError(SolverError):
    """No value reached the agreement quorum over the configured primes."""


class ResampleBudgetExceeded(SolverError):
    """Every attempt for one (prime, seed) run hit a degeneracy."""


@dataclass(frozen=True)
class SolverConfig:
    primes: tuple[int, ...] = DEFAULT_PRIMES
    seed: int = 0
    quorum: int = 2
    max_resamples: int = 8

    def __post_init__(self):
        if len(self.primes) < 3:
            raise ValueError("need at least three primes")
        if len(set(self.primes)) != len(self.primes):
            raise ValueError("primes must be distinct")
        for p in self.primes:
            if p <= (1 << 20) or p % 2 == 0:
                raise ValueError(f"prime {p} must be odd and larger than 2^20")
        if self.quorum < 1 or self.quorum > len(self.primes):
            raise ValueError("quorum out of range")
        if self.max_resamples < 1:
            raise ValueError("max_resamples must be positive")


def _run_seed(base_seed: int, prime_index: int, attempt: int) -> int:
    return (base_seed * 1000003 + prime_index) * 1000003 + attempt


def pinned_degree(g: Graph, mode: Mode, prime: int, seed: int) -> int:
    """Degree of one pinned system; raises DegenerateSample / NotZeroDimensional."""
    rng = random.Random(seed)
    if mode is Mode.PLANE:
        system = build_planar_system(g, prime, rng)
    else:
        system = build_spherical_system(g, prime, rng)
    basis = groebner_basis(system.equations, system.ring)
    return quotient_dimension(basis, system.ring)


def _single_run(g: Graph, mode: Mode, prime: int, prime_index: int, cfg: SolverConfig) -> int:
    for attempt in range(cfg.max_resamples):
        seed = _run_seed(cfg.seed, prime_index, attempt)
        try:
            degree = pinned_degree(g, mode, prime, seed)
        except (DegenerateSample, NotZeroDimensional):
            continue
        if degree == 0 or degree % SLICE_MULTIPLICITY:
            continue  # unlucky specialization
        return degree // SLICE_MULTIPLICITY
    raise ResampleBudgetExceeded(
        f"no clean run for prime {prime} after {cfg.max_resamples} resamples"
    )


def direct_count(g: Graph, mode: Mode = Mode.PLANE, cfg: Optional[SolverConfig] = None) -> int:
    """Realisation count of any rigid graph straight from the pinned system.

    Independent of the recursive engine, which makes it a whole-engine
    cross-check oracle.
    """
    cfg = cfg or SolverConfig()
    if not matroid.is_rigid(g):
        raise ValueError("input graph is not rigid; the count is infinite")
    if g.n == 2:
        # the pinned slice degenerates for a single bar: the y-reflection fixes
        # it pointwise, so the orbit meets the slice twice, not four times
        return 1
    tally: dict[int, int] = {}
    for prime_index, prime in enumerate(cfg.primes):
        value = _single_run(g, mode, prime, prime_index, cfg)
        tally[value] = tally.get(value, 0) + 1
        if tally[value] >= cfg.quorum:
            if len(tally) > 1:
                log.warning("cross-prime disagreement resolved by quorum: %s", tally)
            return value
        if len(tally) > 1:
            log.warning("cross-prime disagreement so far: %s", tally)
    raise QuorumError(f"no value reached quorum {cfg.quorum}: {tally}")


def base_count(g: Graph, mode: Mode, cfg: Optional[SolverConfig] = None) -> int:
    """Base-case counter for minimally rigid graphs (mockable in tests)."""
    if not matroid.is_minimally_rigid(g):
        raise ValueError("base counter expects a minimally rigid graph")
    return direct_count(g, mode, cfg)
