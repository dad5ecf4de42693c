"""Brute-force ground truth: enumeration, exact maximum codes, list sizes.

Maximum codes are maximum cliques of the compatibility graph (points joined
when their distance is at least d), found by a bitset branch-and-bound with
greedy colouring bounds. Over the whole space a code may be translated to
contain 0, so the search runs on the points of weight >= d and adds 0 back.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .errors import RadiusOutOfRange, SpaceTooLarge
from .fourier import coordinate_table, index_encode, weights
from .space import AlphabetProfile

ENUMERATION_CAP = 10**5
EXACT_CAP = 2000
DEFAULT_BUDGET = 60.0


class Ambient(enum.Enum):
    SPACE = "space"
    SPHERE = "sphere"
    BALL = "ball"


@dataclass(frozen=True)
class CodeSet:
    profile: AlphabetProfile
    elements: tuple[tuple[int, ...], ...]
    exact: bool = True

    def __len__(self):
        return len(self.elements)

    @property
    def indices(self) -> list[int]:
        return [index_encode(self.profile, x) for x in self.elements]

    @property
    def min_distance(self) -> int:
        """Minimum pairwise distance; n + 1 for codes with fewer than two words."""
        if len(self.elements) < 2:
            return self.profile.n + 1
        D = kernels.pairwise_hamming(np.array(self.elements))
        np.fill_diagonal(D, self.profile.n + 1)
        return int(D.min())


def _check_cap(profile: AlphabetProfile, cap: int):
    if profile.order > cap:
        raise SpaceTooLarge(f"|Q| = {profile.order} exceeds the enumeration cap {cap}")


def enumerate_sphere(profile: AlphabetProfile, r: int, restrict_support=None, cap: int = ENUMERATION_CAP):
    """All x of weight exactly r, optionally with supp(x) inside ``restrict_support`` (0-based)."""
    if not 0 <= r <= profile.n:
        raise RadiusOutOfRange(f"radius {r} outside [0, {profile.n}]")
    _check_cap(profile, cap)
    C = coordinate_table(profile.sizes)
    mask = weights(profile.sizes) == r
    if restrict_support is not None:
        outside = [i for i in range(profile.n) if i not in set(restrict_support)]
        if outside:
            mask &= ~np.any(C[:, outside] != 0, axis=1)
    return [tuple(int(v) for v in row) for row in C[mask]]


def restricted_sphere_size(profile: AlphabetProfile, r: int, support) -> int:
    """s_r(I) counted straight from the definition supp(x) within I."""
    return len(enumerate_sphere(profile, r, support))


def enumerated_sphere_sizes(profile: AlphabetProfile, cap: int = ENUMERATION_CAP) -> list[int]:
    _check_cap(profile, cap)
    return np.bincount(weights(profile.sizes), minlength=profile.n + 1).tolist()


def _ambient_points(profile, ambient: Ambient, r: Optional[int], cap: int) -> np.ndarray:
    _check_cap(profile, cap)
    C = coordinate_table(profile.sizes)
    w = weights(profile.sizes)
    if ambient is Ambient.SPACE:
        return np.asarray(C)
    if r is None or not 0 <= r <= profile.n:
        raise RadiusOutOfRange(f"ambient {ambient.value} needs 0 <= r <= n, got {r}")
    if ambient is Ambient.SPHERE:
        return np.asarray(C[w == r])
    return np.asarray(C[w <= r])


GREEDY_SHUFFLES = 6


def _lexicographic_greedy(points: np.ndarray, d: int) -> list[int]:
    # row-at-a-time variant for ambient sets too large for a distance matrix
    chosen: list[int] = []
    rows = np.empty((0, points.shape[1]), dtype=points.dtype)
    for i in range(len(points)):
        if len(chosen) == 0 or ((rows != points[i]).sum(axis=1) >= d).all():
            chosen.append(i)
            rows = points[chosen]
    return chosen


def greedy_code(
    compat: np.ndarray, kern=None, shuffles: int = GREEDY_SHUFFLES, seed: int = 0, target: Optional[int] = None
) -> list[int]:
    """Best greedy clique of the compatibility matrix over several scan orders.

    Orders: natural (lexicographic), reversed, fewest conflicts first, and
    ``shuffles`` seeded random permutations. Stops at the first clique of
    size ``target``.
    """
    kern = kern or kernels
    N = len(compat)
    conflicts = N - np.count_nonzero(compat, axis=1)
    orders = [np.arange(N), np.arange(N)[::-1], np.lexsort((np.arange(N), conflicts))]
    rng = np.random.default_rng(seed)
    orders += [rng.permutation(N) for _ in range(shuffles)]
    best: list[int] = []
    for order in orders:
        found = kern.greedy_clique(compat, order)
        if len(found) > len(best):
            best = found
            if target is not None and len(best) >= target:
                break
    return best


def anticode_partition_bound(points: np.ndarray, d: int) -> int:
    """Number of parts when ``points`` are grouped by n-d+1 fixed coordinates.

    Each part leaves only d-1 coordinates free, so any two of its points are
    closer than d and a code meets it at most once. The first and the last
    n-d+1 coordinates are both tried.
    """
    n = points.shape[1]
    k = n - d + 1
    if k <= 0:
        return 1
    best = len(points)
    radix = np.cumprod([1] + [int(points[:, i].max()) + 1 for i in range(n)])
    for cols in (range(0, k), range(n - k, n)):
        keys = sum(points[:, i].astype(np.int64) * int(radix[i]) for i in cols)
        best = min(best, len(np.unique(keys)))
    return best


def _packing_bound(profile, d: int, w: np.ndarray) -> int:
    # balls of radius floor((d-1)/2) around codewords are disjoint
    t = (d - 1) // 2
    return profile.order // int(np.count_nonzero(w <= t))


def max_code(
    profile: AlphabetProfile,
    d: int,
    ambient="space",
    r: Optional[int] = None,
    *,
    cap: int = EXACT_CAP,
    greedy_cap: int = ENUMERATION_CAP,
    budget_seconds: float = DEFAULT_BUDGET,
    backend=None,
) -> CodeSet:
    """Largest code with minimum distance >= d inside the chosen ambient set.

    ``exact`` on the result is False when the ambient set exceeds ``cap``
    (greedy witness only) or the branch-and-bound ran out of budget; the
    size is then only a lower bound on the optimum. The search stops early
    when the incumbent meets a clique-partition certificate.
    """
    ambient = Ambient(ambient)
    pts = _ambient_points(profile, ambient, r, greedy_cap)
    as_code = lambda rows, exact: CodeSet(profile, tuple(map(tuple, np.asarray(rows).tolist())), exact)
    if d <= 1 or len(pts) <= 1:
        return as_code(pts, True)
    kern = backend or kernels
    if len(pts) > cap:
        return as_code(pts[_lexicographic_greedy(pts, d)], False)

    w = weights(profile.sizes)
    if ambient is Ambient.SPACE:
        # translate so that 0 is a codeword
        mask = w >= d
        anchor = pts[:1]
        certificate = min(anticode_partition_bound(pts, d), _packing_bound(profile, d, w))
    else:
        mask = (w == r) if ambient is Ambient.SPHERE else (w <= r)
        anchor = pts[:0]
        certificate = anticode_partition_bound(pts, d)
    search = np.asarray(coordinate_table(profile.sizes))[mask]
    if len(search) == 0:
        return as_code(anchor, True)

    compat = kern.distance_at_least(search, d)
    limit = certificate - len(anchor)
    incumbent = greedy_code(compat, kern, target=limit)
    if len(incumbent) >= limit:
        best, exact = np.array(incumbent, dtype=np.int64), True
    else:
        deg = np.count_nonzero(compat, axis=1)
        order = np.lexsort((np.arange(len(search)), -deg))
        found, exact, _ = kern.max_clique(
            compat[np.ix_(order, order)], len(incumbent), budget_seconds, limit
        )
        best = order[np.array(found, dtype=np.int64)] if found else np.array(incumbent, dtype=np.int64)
    rows = np.concatenate([anchor, search[np.sort(best)]]) if len(best) else anchor
    return as_code(rows, exact)


def list_size_measure(profile: AlphabetProfile, code, rho: int, cap: int = ENUMERATION_CAP) -> int:
    """max over every center x in Q of |C intersect B_rho(x)|."""
    _check_cap(profile, cap)
    elements = getattr(code, "elements", code)
    if len(elements) == 0:
        return 0
    C = np.asarray(coordinate_table(profile.sizes))
    words = np.array(elements)
    best = 0
    for start in range(0, len(C), 4096):
        block = C[start : start + 4096]
        dist = (block[:, None, :] != words[None, :, :]).sum(axis=2)
        best = max(best, int((dist <= rho).sum(axis=1).max()))
    return best


def all_profiles(max_order: int, max_q: Optional[int] = None, max_n: Optional[int] = None):
    """Every sorted profile with prod q_i <= max_order (and the optional caps)."""
    top = max_order if max_q is None else min(max_q, max_order)

    def rec(prefix, lo, prod):
        if prefix and (max_n is None or len(prefix) <= max_n):
            yield tuple(prefix)
        if max_n is not None and len(prefix) >= max_n:
            return
        for q in range(lo, top + 1):
            if prod * q > max_order:
                break
            yield from rec(prefix + [q], q, prod * q)

    yield from rec([], 2, 1)
