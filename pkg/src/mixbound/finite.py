"""Finite-length lower and upper bounds on A(n, d) for a concrete profile."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .errors import DOutOfRange, NotApplicable, RadiusOutOfRange
from .johnson import below_johnson, johnson_denominator
from .space import AlphabetProfile, ball_size, means, sphere_sizes

Exact = Union[int, Fraction]


class BoundKind(enum.Enum):
    GV_LOWER = "GV_lower"
    SPHERE_PACKING_UPPER = "SpherePacking_upper"
    SINGLETON_UPPER = "Singleton_upper"
    ELIAS_BASSALYGO_UPPER = "EliasBassalygo_upper"

    @property
    def is_lower(self) -> bool:
        return self is BoundKind.GV_LOWER


@dataclass(frozen=True)
class BoundResult:
    kind: BoundKind
    value: Optional[Exact]
    applicable: bool = True
    witness_params: dict = field(default_factory=dict)

    @property
    def floor(self) -> Optional[int]:
        """Integer presentation: floor for uppers, ceil for lowers."""
        if self.value is None:
            return None
        if self.kind.is_lower:
            return math.ceil(self.value)
        return math.floor(self.value)


def _check_d(profile: AlphabetProfile, d: int):
    if not 1 <= d <= profile.n:
        raise DOutOfRange(f"d={d} outside [1, {profile.n}]")


def gv_lower(profile: AlphabetProfile, d: int) -> int:
    _check_d(profile, d)
    vol = ball_size(sphere_sizes(profile), d - 1)
    return -(-profile.order // vol)


def sphere_packing_upper(profile: AlphabetProfile, d: int) -> int:
    _check_d(profile, d)
    t = (d - 1) // 2
    return profile.order // ball_size(sphere_sizes(profile), t)


def singleton_upper(profile: AlphabetProfile, d: int) -> int:
    _check_d(profile, d)
    return math.prod(profile.sizes[: profile.n - d + 1])


def pigeonhole_transfer(profile: AlphabetProfile, d: int, r: int, a_r_upper) -> Fraction:
    """Lift an upper bound on codes inside S_r(0) to the whole space: |Q| / s_r * A_r."""
    if not 0 <= r <= profile.n:
        raise RadiusOutOfRange(f"radius {r} outside [0, {profile.n}]")
    s_r = sphere_sizes(profile)[r]
    return Fraction(profile.order, s_r) * Fraction(a_r_upper)


def elias_bassalygo_upper(profile: AlphabetProfile, d: int) -> BoundResult:
    """Sharpest Elias-Bassalygo value over every admissible radius.

    Each r >= 1 below the Johnson radius of d/n gives a valid bound; the
    minimum is returned together with the r that attains it (smallest r on
    ties). ``applicable`` is False when no such r exists.
    """
    _check_d(profile, d)
    n = profile.n
    q_a = means(profile).q_a
    if not d < (1 - 1 / q_a) * n:
        raise NotApplicable(f"d={d} is not below (1 - 1/q_a) n = {float((1 - 1 / q_a) * n):.6g}")
    s = sphere_sizes(profile).s
    best = None
    best_r = None
    for r in range(1, n + 1):
        if not below_johnson(q_a, r, d, n):
            continue
        den = johnson_denominator(q_a, r, d, n)
        if den <= 0:
            continue
        value = Fraction(profile.order, s[r]) * (q_a - 1) * n * d / den
        if best is None or value < best:
            best, best_r = value, r
    if best is None:
        return BoundResult(BoundKind.ELIAS_BASSALYGO_UPPER, None, False)
    return BoundResult(BoundKind.ELIAS_BASSALYGO_UPPER, best, True, {"r": best_r})


def finite_bounds(profile: AlphabetProfile, d: int) -> list[BoundResult]:
    """All finite bounds for (profile, d); inapplicable ones carry applicable=False."""
    out = [
        BoundResult(BoundKind.GV_LOWER, gv_lower(profile, d)),
        BoundResult(BoundKind.SPHERE_PACKING_UPPER, sphere_packing_upper(profile, d)),
        BoundResult(BoundKind.SINGLETON_UPPER, singleton_upper(profile, d)),
    ]
    try:
        out.append(elias_bassalygo_upper(profile, d))
    except NotApplicable:
        out.append(BoundResult(BoundKind.ELIAS_BASSALYGO_UPPER, None, False))
    return out


def best_upper(results) -> Optional[Exact]:
    vals = [b.value for b in results if b.applicable and not b.kind.is_lower]
    return min(vals) if vals else None
