"""The mixed-alphabet space Z/q_1 x ... x Z/q_n and exact Hamming sphere sizes.

Sizes are Python integers throughout; they overflow 64 bits already for
modest n. The arithmetic mean and the harmonic-type mean are kept as
``Fraction``; the two geometric means are irrational in general and are
carried as floats.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import (
    ArgOutOfRange,
    AlphabetTooSmall,
    EmptyProfile,
    InternalInexactDivision,
    RadiusOutOfApplicableRange,
    RadiusOutOfRange,
)

#: relative tolerance used when an irrational mean enters a comparison
IRRATIONAL_RTOL = 1e-12


@dataclass(frozen=True)
class AlphabetProfile:
    """Sorted alphabet sizes q_1 <= ... <= q_n with cached power sums.

    ``power_sums[m - 1]`` holds ``sum((q - 1) ** m)`` for m = 1..n.
    """

    sizes: tuple[int, ...]
    power_sums: tuple[int, ...] = field(repr=False, compare=False)

    @property
    def n(self) -> int:
        return len(self.sizes)

    @property
    def order(self) -> int:
        """|Q|, the number of points of the space."""
        return math.prod(self.sizes)

    def sub_profile(self, indices) -> "AlphabetProfile":
        return make_profile([self.sizes[i] for i in indices])

    def __len__(self):
        return len(self.sizes)


def make_profile(sizes: Sequence[int]) -> AlphabetProfile:
    sizes = [int(q) for q in sizes]
    if not sizes:
        raise EmptyProfile("a profile needs at least one coordinate")
    bad = [q for q in sizes if q < 2]
    if bad:
        raise AlphabetTooSmall(f"alphabet sizes must be >= 2, got {bad}")
    sizes.sort()
    n = len(sizes)
    sums = []
    powers = [1] * n
    for _ in range(n):
        powers = [p * (q - 1) for p, q in zip(powers, sizes)]
        sums.append(sum(powers))
    return AlphabetProfile(tuple(sizes), tuple(sums))


@dataclass(frozen=True)
class MeansSummary:
    q_a: Fraction
    q_g: float
    q_mg: float
    q_mh: Fraction


def means(profile: AlphabetProfile) -> MeansSummary:
    n = profile.n
    q_a = Fraction(sum(profile.sizes), n)
    q_g = math.exp(sum(math.log(q) for q in profile.sizes) / n)
    q_mg = math.exp(sum(math.log(q - 1) for q in profile.sizes) / n) + 1
    q_mh = Fraction(n) / sum(Fraction(1, q - 1) for q in profile.sizes) + 1
    return MeansSummary(q_a, q_g, q_mg, q_mh)


@dataclass(frozen=True)
class SphereSizeTable:
    profile: AlphabetProfile
    s: tuple[int, ...]

    def __getitem__(self, r):
        return self.s[r]

    def __len__(self):
        return len(self.s)


def sphere_sizes(profile: AlphabetProfile) -> SphereSizeTable:
    """Sphere sizes s_0..s_n by the power-sum (Newton-type) recursion.

    s_r = (1/r) * sum_{k<r} (-1)^k s_{r-1-k} P_{k+1}, with P_m the cached
    power sums. O(n^2) big-integer products.
    """
    n = profile.n
    P = profile.power_sums
    s = [1]
    for r in range(1, n + 1):
        acc = 0
        for k in range(r):
            term = s[r - 1 - k] * P[k]
            acc += -term if k & 1 else term
        q, rem = divmod(acc, r)
        if rem:
            raise InternalInexactDivision(f"s_{r}: {acc} not divisible by {r}")
        s.append(q)
    return SphereSizeTable(profile, tuple(s))


def sphere_sizes_poly_oracle(profile: AlphabetProfile) -> SphereSizeTable:
    """Coefficients of prod_i (1 + (q_i - 1) x), i.e. elementary symmetric sums."""
    coeffs = [1]
    for q in profile.sizes:
        a = q - 1
        nxt = coeffs + [0]
        for j in range(len(coeffs)):
            nxt[j + 1] += a * coeffs[j]
        coeffs = nxt
    return SphereSizeTable(profile, tuple(coeffs))


def ball_size(table: SphereSizeTable, r: int) -> int:
    n = table.profile.n
    if not 0 <= r <= n:
        raise RadiusOutOfRange(f"radius {r} outside [0, {n}]")
    return sum(table.s[: r + 1])


def entropy(q: float, x: float) -> float:
    """q-ary entropy H_q(x), with 0 log 0 = 0."""
    if not q > 1:
        raise ArgOutOfRange(f"entropy base must exceed 1, got {q}")
    if not 0 <= x <= 1:
        raise ArgOutOfRange(f"entropy argument must lie in [0, 1], got {x}")
    h = 0.0
    if x > 0:
        h += x * math.log(q - 1) - x * math.log(x)
    if x < 1:
        h -= (1 - x) * math.log1p(-x)
    return h / math.log(q)


class BallBracket(NamedTuple):
    """Natural-log bracket on a ball size.

    ``lower_in_range`` is False when r/n exceeds 1 - 1/q_mg; the lower value
    is still reported but lies outside the increasing branch of H_{q_mg}.
    """

    log_lower: float
    log_upper: float
    lower_in_range: bool

    @property
    def lower(self) -> float:
        return _safe_exp(self.log_lower)

    @property
    def upper(self) -> float:
        return _safe_exp(self.log_upper)


def _safe_exp(v: float) -> float:
    try:
        return math.exp(v)
    except OverflowError:
        return math.inf


def ball_entropy_bounds(profile: AlphabetProfile, r: int) -> BallBracket:
    n = profile.n
    m = means(profile)
    # r <= (1 - 1/q_a) n, exact
    if r < 0 or r * m.q_a > (m.q_a - 1) * n:
        raise RadiusOutOfApplicableRange(
            f"radius {r} outside [0, (1 - 1/q_a) n] = [0, {float((1 - 1 / m.q_a) * n):.6g}]"
        )
    x = r / n
    qa = float(m.q_a)
    log_upper = n * math.log(qa) * entropy(qa, x)
    log_lower = n * math.log(m.q_mg) * entropy(m.q_mg, x) - math.log(n + 1)
    in_range = x <= 1 - 1 / m.q_mg
    return BallBracket(log_lower, log_upper, in_range)


class ConjectureReport(NamedTuple):
    values: list[tuple[int, float]]
    monotone: bool


def conjecture_report(table: SphereSizeTable) -> ConjectureReport:
    """(s_r / C(n, r))^(1/r) for r = 1..n, and whether it is non-increasing.

    Monotonicity is decided exactly: a_r^(1/r) >= a_{r+1}^(1/(r+1)) iff
    a_r^(r+1) >= a_{r+1}^r for the rationals a_r = s_r / C(n, r). Nothing
    here is ever asserted; the sequence is only reported.
    """
    n = table.profile.n
    ratios = [Fraction(table.s[r], math.comb(n, r)) for r in range(1, n + 1)]
    values = [
        (r, math.exp((math.log(a.numerator) - math.log(a.denominator)) / r)) for r, a in zip(range(1, n + 1), ratios)
    ]
    monotone = all(
        ratios[i] ** (i + 2) >= ratios[i + 1] ** (i + 1) for i in range(n - 1)
    )
    return ConjectureReport(values, monotone)
