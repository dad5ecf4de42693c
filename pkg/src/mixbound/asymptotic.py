"""Leading-order rate curves R(delta) for a fixed distribution of alphabet sizes.

The o(1) / o(n) terms are dropped: every curve here is the leading-order
expression only. Rates below zero are clamped to 0 and marked exhausted.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import (
    DeltaOutOfRange,
    EntropyArgOutOfRange,
    InvalidDistribution,
    MixboundError,
)
from .johnson import johnson_radius
from .space import entropy

__all__ = [
    "AlphabetDistribution",
    "make_distribution",
    "entropy",
    "gv_sp_asymptotic",
    "eb_asymptotic",
    "lp_asymptotic",
    "singleton_asymptotic",
    "CurveKind",
    "RateCurve",
    "curve",
    "evaluate",
    "default_grid",
]


@dataclass(frozen=True)
class AlphabetDistribution:
    """Alphabet sizes with their asymptotic coordinate fractions (exact)."""

    entries: tuple[tuple[int, Fraction], ...]

    @property
    def q_a(self) -> Fraction:
        return sum((f * q for q, f in self.entries), Fraction(0))

    @property
    def log_q_g(self) -> float:
        return sum(float(f) * math.log(q) for q, f in self.entries)

    @property
    def q_g(self) -> float:
        return math.exp(self.log_q_g)

    @property
    def q_mg(self) -> float:
        return math.exp(sum(float(f) * math.log(q - 1) for q, f in self.entries)) + 1

    @property
    def q_mh(self) -> Fraction:
        return 1 / sum((f / (q - 1) for q, f in self.entries), Fraction(0)) + 1

    def smallest_first_integral(self, fraction, weight) -> float:
        """Sum of f * weight(q) over the smallest alphabets covering ``fraction`` of coordinates."""
        left = float(fraction)
        acc = 0.0
        for q, f in self.entries:
            if left <= 0:
                break
            take = min(float(f), left)
            acc += take * weight(q)
            left -= take
        return acc


def make_distribution(entries) -> AlphabetDistribution:
    """Build from (q, fraction) pairs or a {q: fraction} mapping; fractions must sum to 1."""
    if isinstance(entries, dict):
        entries = entries.items()
    merged: dict[int, Fraction] = {}
    for q, f in entries:
        q = int(q)
        f = Fraction(f) if not isinstance(f, float) else Fraction(str(f))
        if q < 2:
            raise InvalidDistribution(f"alphabet size {q} < 2")
        if not 0 < f <= 1:
            raise InvalidDistribution(f"fraction {f} for q={q} outside (0, 1]")
        merged[q] = merged.get(q, Fraction(0)) + f
    if not merged:
        raise InvalidDistribution("empty distribution")
    total = sum(merged.values())
    if total != 1:
        raise InvalidDistribution(f"fractions sum to {total}, not 1")
    return AlphabetDistribution(tuple(sorted(merged.items())))


def _clamp(rate: float) -> float:
    return min(1.0, max(0.0, rate))


def gv_sp_asymptotic(dist: AlphabetDistribution, delta: float) -> tuple[float, float]:
    q_a = float(dist.q_a)
    if not 0 <= delta <= 1 - 1 / q_a + 1e-15:
        raise DeltaOutOfRange(f"delta={delta} outside [0, 1 - 1/q_a]")
    delta = min(delta, 1 - 1 / q_a)
    lg = dist.log_q_g
    q_mg = dist.q_mg
    gv = 1 - math.log(q_a) / lg * entropy(q_a, delta)
    sp = 1 - math.log(q_mg) / lg * entropy(q_mg, delta / 2)
    return _clamp(gv), _clamp(sp)


def eb_asymptotic(dist: AlphabetDistribution, delta: float) -> float:
    q_a = float(dist.q_a)
    if not 0 <= delta < 1 - 1 / q_a:
        raise DeltaOutOfRange(f"delta={delta} outside [0, 1 - 1/q_a)")
    q_mg = dist.q_mg
    j = johnson_radius(q_a, delta)
    if j > 1 - 1 / q_mg:
        raise EntropyArgOutOfRange(
            f"J_q_a({delta}) = {j:.6g} exceeds 1 - 1/q_mg = {1 - 1 / q_mg:.6g}"
        )
    return _clamp(1 - math.log(q_mg) / dist.log_q_g * entropy(q_mg, j))


def lp_check_delta(dist: AlphabetDistribution, delta: float) -> float:
    """Weighted partial mean: (1/q_a) * sum of q over the smallest delta-fraction of coordinates."""
    if not 0 <= delta <= 1:
        raise DeltaOutOfRange(f"delta={delta} outside [0, 1]")
    return dist.smallest_first_integral(delta, float) / float(dist.q_a)


def lp_radius(dist: AlphabetDistribution, delta: float) -> Optional[float]:
    """rho / n of the first LP bound, or None past the zero of the radius."""
    q = float(dist.q_a)
    dc = lp_check_delta(dist, delta)
    if dc >= (q - 1) / q:
        return None
    rho = ((q - 1) - (q - 2) * dc - 2 * math.sqrt((q - 1) * dc * (1 - dc))) / q
    return max(rho, 0.0)


def lp_asymptotic(dist: AlphabetDistribution, delta: float) -> float:
    """First linear-programming rate bound; 0 once the radius is exhausted."""
    q_a = float(dist.q_a)
    rho = lp_radius(dist, delta)
    if rho is None:
        return 0.0
    rho = min(rho, 1 - 1 / q_a)
    return _clamp(math.log(q_a) / dist.log_q_g * entropy(q_a, rho))


def singleton_asymptotic(dist: AlphabetDistribution, delta: float) -> float:
    if not 0 <= delta <= 1:
        raise DeltaOutOfRange(f"delta={delta} outside [0, 1]")
    num = dist.smallest_first_integral(1 - delta, math.log)
    return _clamp(num / dist.log_q_g)


class CurveKind(enum.Enum):
    GV = "gv"
    SP = "sp"
    EB = "eb"
    LP = "lp"
    SINGLETON = "singleton"


@dataclass(frozen=True)
class RateCurve:
    """Samples of one bound; ``rate`` is None where the bound is inapplicable."""

    kind: CurveKind
    samples: tuple[tuple[float, Optional[float]], ...]

    def present(self):
        return [(x, y) for x, y in self.samples if y is not None]


def evaluate(dist: AlphabetDistribution, kind: CurveKind, delta: float) -> Optional[float]:
    try:
        if kind is CurveKind.GV:
            return gv_sp_asymptotic(dist, delta)[0]
        if kind is CurveKind.SP:
            return gv_sp_asymptotic(dist, delta)[1]
        if kind is CurveKind.EB:
            return eb_asymptotic(dist, delta)
        if kind is CurveKind.LP:
            return lp_asymptotic(dist, delta)
        return singleton_asymptotic(dist, delta)
    except MixboundError:
        return None


def default_grid(step: float = 0.005) -> list[float]:
    m = round(1 / step)
    return [i / m for i in range(m + 1)]


def curve(dist: AlphabetDistribution, kind, delta_grid: Iterable[float], executor=None) -> RateCurve:
    kind = CurveKind(kind)
    grid: Sequence[float] = list(delta_grid)
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise MixboundError("delta grid must be strictly increasing")
    if executor is None:
        rates = [evaluate(dist, kind, x) for x in grid]
    else:
        rates = list(executor.map(lambda x: evaluate(dist, kind, x), grid))
    return RateCurve(kind, tuple(zip(grid, rates)))
