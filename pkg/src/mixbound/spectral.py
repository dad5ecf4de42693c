"""Perron eigenvalue of Hamming-graph minors, the ball-eigenvalue lower bound,
and the eigenvalue certificate on code sizes."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import kernels
from .errors import EmptySubset, NoConvergence, RadiusInapplicable, RadiusOutOfRange, SpaceTooLarge
from .fourier import FunctionOnQ, _radix, index_encode
from .space import AlphabetProfile, ball_size, means, sphere_sizes

SUBSET_CAP = 10**5
DENSE_CHECK_CAP = 4096


@dataclass(frozen=True, eq=False)
class SubsetSpectrum:
    """Perron data of the adjacency minor on a subset.

    ``lam`` is the Rayleigh quotient of the returned eigenfunction, a lower
    bound on the true value; ``lam_upper`` is the Collatz-Wielandt upper bound
    from the same vector. ``lam_lower`` also folds in the Collatz-Wielandt
    lower bound.
    """

    profile: AlphabetProfile
    elements: np.ndarray
    lam: float
    lam_lower: float
    lam_upper: float
    eigenfunction: np.ndarray
    iterations: int
    symmetric: bool

    def as_function(self) -> FunctionOnQ:
        v = np.zeros(self.profile.order)
        for row, val in zip(self.elements, self.eigenfunction):
            v[index_encode(self.profile, tuple(row))] = val
        return FunctionOnQ(self.profile, v)

    def residual(self) -> float:
        ip, ix = subset_adjacency(self.profile, self.elements)
        f = self.eigenfunction
        return float(np.max(np.abs(kernels.csr_matvec(ip, ix, f) - self.lam * f), initial=0.0))


def ball_elements(profile: AlphabetProfile, r: int, cap: int = SUBSET_CAP) -> np.ndarray:
    """Coordinates of B_r(0), generated support by support (the space need not be enumerable)."""
    if not 0 <= r <= profile.n:
        raise RadiusOutOfRange(f"radius {r} outside [0, {profile.n}]")
    size = ball_size(sphere_sizes(profile), r)
    if size > cap:
        raise SpaceTooLarge(f"|B_{r}| = {size} exceeds the cap {cap}")
    n = profile.n
    rows = []
    for k in range(r + 1):
        for support in itertools.combinations(range(n), k):
            for vals in itertools.product(*(range(1, profile.sizes[i]) for i in support)):
                row = [0] * n
                for i, v in zip(support, vals):
                    row[i] = v
                rows.append(row)
    return np.array(rows, dtype=np.int64).reshape(-1, n)


def _codes(profile, coords: np.ndarray) -> np.ndarray:
    if profile.order >= 2**62:
        raise SpaceTooLarge("space too large for 64-bit point codes")
    return coords @ np.array(_radix(profile.sizes), dtype=np.int64)


def subset_adjacency(profile: AlphabetProfile, elements: np.ndarray):
    """CSR (indptr, indices) of the Hamming graph restricted to ``elements``."""
    codes = _codes(profile, elements)
    order = np.argsort(codes, kind="stable")
    sorted_codes = codes[order]
    radix = _radix(profile.sizes)
    nbr_lists = []
    for i, q in enumerate(profile.sizes):
        col = elements[:, i]
        for shift in range(1, q):
            nb = codes + (np.mod(col + shift, q) - col) * radix[i]
            pos = np.searchsorted(sorted_codes, nb)
            pos = np.minimum(pos, len(codes) - 1)
            hit = sorted_codes[pos] == nb
            nbr_lists.append(np.where(hit, order[pos], -1))
    nbrs = np.stack(nbr_lists, axis=1) if nbr_lists else np.empty((len(codes), 0), dtype=np.int64)
    mask = nbrs >= 0
    indptr = np.concatenate([[0], np.cumsum(mask.sum(axis=1))]).astype(np.int64)
    indices = nbrs[mask].astype(np.int64)
    return indptr, indices


def _negation_map(profile, elements: np.ndarray) -> Optional[np.ndarray]:
    codes = _codes(profile, elements)
    neg = _codes(profile, np.mod(-elements, np.array(profile.sizes)))
    order = np.argsort(codes, kind="stable")
    pos = np.minimum(np.searchsorted(codes[order], neg), len(codes) - 1)
    if not np.all(codes[order][pos] == neg):
        return None
    return order[pos]


def lambda_exact(
    profile: AlphabetProfile,
    B,
    *,
    tol: float = 1e-12,
    residual_tol: float = 1e-11,
    max_iter: int = 100_000,
    cap: int = SUBSET_CAP,
) -> SubsetSpectrum:
    """Perron eigenvalue of the adjacency minor on B by shifted power iteration.

    Iterates (A + cI) with c the largest degree inside B, starting from the
    all-ones vector. The shift makes the Perron root strictly dominant in
    modulus, which plain iteration on A lacks for bipartite minors.
    """
    elements = np.array([tuple(x) for x in B] if not isinstance(B, np.ndarray) else B, dtype=np.int64)
    if elements.size == 0:
        raise EmptySubset("lambda of an empty subset")
    elements = elements.reshape(len(elements), profile.n)
    if len(elements) > cap:
        raise SpaceTooLarge(f"|B| = {len(elements)} exceeds the cap {cap}")
    indptr, indices = subset_adjacency(profile, elements)
    deg = np.diff(indptr)
    c = float(deg.max())
    N = len(elements)
    neg = _negation_map(profile, elements)
    if c == 0:
        return SubsetSpectrum(profile, elements, 0.0, 0.0, 0.0, np.full(N, 1 / math.sqrt(N)), 0, neg is not None)

    x = np.full(N, 1 / math.sqrt(N))
    prev = None
    for it in range(1, max_iter + 1):
        y = kernels.csr_matvec(indptr, indices, x, c)
        lam = float(x @ y) - c
        # a settled Rayleigh quotient only pins the vector to ~sqrt(tol); also
        # wait for the eigen-residual itself
        settled = prev is not None and abs(lam - prev) < tol * max(1.0, abs(lam))
        if settled and np.max(np.abs(y - (lam + c) * x)) < residual_tol:
            x = y / np.linalg.norm(y)
            break
        x = y / np.linalg.norm(y)
        prev = lam
    else:
        raise NoConvergence(f"power iteration did not settle in {max_iter} steps")

    if neg is not None:
        x = (x + x[neg]) / 2
        x /= np.linalg.norm(x)
    Ax = kernels.csr_matvec(indptr, indices, x)
    lam = float(x @ Ax)
    pos = x > 1e-300
    ratios = Ax[pos] / x[pos]
    cw_low = float(ratios.min()) if pos.all() else 0.0
    cw_up = float(ratios.max()) if pos.any() else c
    if not pos.all():
        # zero entries: the max-ratio bound only covers the positive part
        cw_up = max(cw_up, c)
    return SubsetSpectrum(profile, elements, lam, max(lam, cw_low), cw_up, x, it, neg is not None)


def lambda_ball(profile: AlphabetProfile, r: int, **kw) -> SubsetSpectrum:
    return lambda_exact(profile, ball_elements(profile, r), **kw)


def annulus_width(n: int) -> int:
    return math.isqrt(n)


def lambda_ball_lower_bound(profile: AlphabetProfile, r: int) -> float:
    """Closed-form lower bound on the Perron eigenvalue of B_r(0).

    With M = floor(sqrt(n)), averages over k = r-M+2 .. r-1 the quantity
    k sqrt(s_k/s_{k-1}) + n(q_a-1) - k - (k+1) s_{k+1}/s_k + (k+1) sqrt(s_{k+1}/s_k)
    and divides by M. Needs sqrt(n) < r <= n and M >= 3 (nonempty sum).
    """
    n = profile.n
    M = annulus_width(n)
    if not (r * r > n and r <= n):
        raise RadiusInapplicable(f"need sqrt(n) < r <= n, got r={r}, n={n}")
    if M < 3:
        raise RadiusInapplicable(f"floor(sqrt({n})) = {M} < 3 leaves the sum empty")
    s = sphere_sizes(profile).s
    degree = n * (means(profile).q_a - 1)
    total = 0.0
    for k in range(r - M + 2, r):
        up = Fraction(s[k + 1], s[k])
        down = Fraction(s[k], s[k - 1])
        total += float(k * math.sqrt(down) + degree - k - (k + 1) * up + (k + 1) * math.sqrt(up))
    return total / M


def ball_eigenvalue_leading_order(profile: AlphabetProfile, r: int) -> float:
    """2 sqrt((q_a-1) r (n-r)) + (q_a-2) r."""
    q_a = float(means(profile).q_a)
    n = profile.n
    return 2 * math.sqrt((q_a - 1) * r * (n - r)) + (q_a - 2) * r


def ball_test_function(profile: AlphabetProfile, r: int, elements=None):
    """The annulus test function 1/sqrt(s_wt(x)) on r-M < wt(x) <= r, and its Rayleigh quotient.

    ``elements`` may pass in an already generated B_r(0).
    """
    n = profile.n
    M = annulus_width(n)
    elements = ball_elements(profile, r) if elements is None else elements
    w = np.count_nonzero(elements, axis=1)
    s = sphere_sizes(profile).s
    f = np.where(w > r - M, 1 / np.sqrt(np.array([float(s[k]) for k in w])), 0.0)
    indptr, indices = subset_adjacency(profile, elements)
    rq = float(f @ kernels.csr_matvec(indptr, indices, f)) / float(f @ f)
    return elements, f, rq


def ev_threshold(profile: AlphabetProfile, d: int) -> Fraction:
    """(n+1)(q_a-1) - sum of the d smallest alphabet sizes."""
    n = profile.n
    return (n + 1) * (means(profile).q_a - 1) - sum(profile.sizes[:d])


def bound_by_ev_certificate(
    profile: AlphabetProfile, d: int, r: int, lam=None, cap: int = SUBSET_CAP
) -> Optional[int]:
    """n |B_r(0)| if the ball's eigenvalue clears the threshold, else None.

    Also None when the d smallest alphabets sum past n(q_a-1), where the
    argument behind the certificate breaks down.

    ``lam`` must be a lower bound on the ball's Perron eigenvalue (exact
    values qualify). Without it: r = n uses the exact degree n(q_a-1),
    enumerable balls use the certified lower end of power iteration, and
    larger balls fall back to the closed-form lower bound.
    """
    n = profile.n
    if not 0 <= r <= n:
        raise RadiusOutOfRange(f"radius {r} outside [0, {n}]")
    if sum(profile.sizes[:d]) > n * (means(profile).q_a - 1):
        # the weight >= d characters are bounded through a coefficient that
        # must be non-negative; (2,2,2), d=2, B={0} would otherwise give 3 < 4
        return None
    if lam is None:
        if r == n:
            lam = n * (means(profile).q_a - 1)
        else:
            try:
                lam = lambda_ball(profile, r, cap=cap).lam_lower
            except SpaceTooLarge:
                try:
                    lam = lambda_ball_lower_bound(profile, r)
                except RadiusInapplicable:
                    return None
    if lam >= ev_threshold(profile, d):
        return n * ball_size(sphere_sizes(profile), r)
    return None
