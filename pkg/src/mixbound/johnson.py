"""Johnson radius, the ball/constant-weight code bound and the list-size bound."""
from __future__ import annotations

import math
from fractions import Fraction

from .errors import DeltaOutOfRange, PreconditionViolated
from .space import AlphabetProfile, means


def johnson_radius(q, delta) -> float:
    """J_q(delta) = (1 - 1/q) (1 - sqrt(1 - delta / (1 - 1/q)))."""
    p = 1 - 1 / q
    if not 0 <= delta < p:
        raise DeltaOutOfRange(f"delta must lie in [0, 1 - 1/q) = [0, {float(p):.6g}), got {delta}")
    p = float(p)
    return p * (1 - math.sqrt(1 - float(delta) / p))


def below_johnson(q: Fraction, r: int, d: int, n: int) -> bool:
    """Exact test of r < J_q(d/n) * n for rational q and integers r, d, n.

    Requires d/n < 1 - 1/q. Squares the defining inequality, which is valid
    once r < (1 - 1/q) n makes the right-hand side positive.
    """
    p = 1 - 1 / Fraction(q)
    delta = Fraction(d, n)
    if not 0 <= delta < p:
        raise DeltaOutOfRange(f"d/n = {delta} outside [0, 1 - 1/q)")
    if r < 0:
        return False
    if r >= n * p:
        return False
    return 1 - delta / p < (1 - Fraction(r) / (n * p)) ** 2


def johnson_denominator(q_a: Fraction, r: int, d: int, n: int) -> Fraction:
    return q_a * r * r - (q_a - 1) * (2 * r - d) * n


def constant_weight_bound(profile: AlphabetProfile, r: int, d: int) -> Fraction:
    """Upper bound on the largest distance-d code inside the radius-r ball.

    Returns (q_a - 1) n d / (q_a r^2 - (q_a - 1)(2r - d) n) exactly; raises
    PreconditionViolated when the denominator is not positive, or when
    r > (1 - 1/q_a) n. Past that radius the denominator grows with r again
    and the bound breaks: (2,), r = 1, d = 1 would give 1 for a 2-point ball.
    """
    n = profile.n
    q_a = means(profile).q_a
    if r < 0 or r * q_a > (q_a - 1) * n:
        raise PreconditionViolated(f"r={r} exceeds (1 - 1/q_a) n = {float((1 - 1 / q_a) * n):.6g}")
    den = johnson_denominator(q_a, r, d, n)
    if den <= 0:
        raise PreconditionViolated(
            f"q_a r^2 <= (q_a - 1)(2r - d) n for r={r}, d={d}, n={n}"
        )
    return (q_a - 1) * n * d / den


def list_size_bound(profile: AlphabetProfile, d: int, rho: int) -> int:
    """ceil((q_a - 1) d n), valid for every center and every distance-d code."""
    n = profile.n
    q_a = means(profile).q_a
    if not (0 < d and d < (1 - 1 / q_a) * n):
        raise PreconditionViolated(f"need 0 < d < (1 - 1/q_a) n, got d={d}")
    if rho < 0 or not below_johnson(q_a, rho, d, n):
        raise PreconditionViolated(f"rho={rho} is not below the Johnson radius for d={d}")
    return math.ceil((q_a - 1) * d * n)
