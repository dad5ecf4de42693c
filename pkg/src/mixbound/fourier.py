"""Fourier analysis on Q = Z/q_1 x ... x Z/q_n by direct summation.

Points and characters share one dense indexing: the mixed-radix code of a
coordinate vector, little-endian in coordinate order. Character ``t`` is
y -> prod_i exp(2 pi i t_i y_i / q_i) (generator 1 of every cyclic factor),
so the identification x <-> x-hat is the identity on indices.

Two inner products are used on purpose and never unified:

* on Q, normalized:  <f, h> = (1/|Q|) sum_x f(x) conj(h(x))
* on characters, unnormalized: <F, H> = sum_chi F(chi) conj(H(chi))

All transforms are O(|Q|^2) dense matrix products; there is no FFT.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptyCode, IndexOutOfRange, MixboundError, ProfileMismatch
from .space import AlphabetProfile, means

#: |Q| up to which the base absolute tolerance applies unscaled
TOL_REFERENCE_SIZE = 1296
BASE_ATOL = 1e-10


def default_atol(profile: AlphabetProfile) -> float:
    return BASE_ATOL * max(1.0, profile.order / TOL_REFERENCE_SIZE)


def _radix(sizes):
    out = [1]
    for q in sizes[:-1]:
        out.append(out[-1] * q)
    return out


def index_encode(profile: AlphabetProfile, coords: Sequence[int]) -> int:
    if len(coords) != profile.n:
        raise ProfileMismatch(f"expected {profile.n} coordinates, got {len(coords)}")
    idx = 0
    for x, q, w in zip(coords, profile.sizes, _radix(profile.sizes)):
        if not 0 <= x < q:
            raise IndexOutOfRange(f"residue {x} outside [0, {q})")
        idx += x * w
    return idx


def index_decode(profile: AlphabetProfile, i: int) -> tuple[int, ...]:
    if not 0 <= i < profile.order:
        raise IndexOutOfRange(f"index {i} outside [0, {profile.order})")
    out = []
    for q in profile.sizes:
        i, x = divmod(i, q)
        out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class GroupElement:
    profile: AlphabetProfile
    coords: tuple[int, ...]

    def __post_init__(self):
        index_encode(self.profile, self.coords)

    @property
    def weight(self) -> int:
        return sum(1 for x in self.coords if x)

    @property
    def index(self) -> int:
        return index_encode(self.profile, self.coords)


@dataclass(frozen=True)
class CharacterIndex:
    """Character x-hat for x = coords, i.e. y -> prod exp(2 pi i t_i y_i / q_i)."""

    profile: AlphabetProfile
    coords: tuple[int, ...]

    def __post_init__(self):
        index_encode(self.profile, self.coords)

    @property
    def weight(self) -> int:
        return sum(1 for t in self.coords if t)

    @property
    def index(self) -> int:
        return index_encode(self.profile, self.coords)


def character_eval(chi: CharacterIndex, x: GroupElement) -> complex:
    if chi.profile.sizes != x.profile.sizes:
        raise ProfileMismatch("character and element live on different spaces")
    phase = sum((t * y % q) / q for t, y, q in zip(chi.coords, x.coords, chi.profile.sizes))
    return complex(np.exp(2j * np.pi * phase))


# ---------------------------------------------------------------------------
# cached index tables


@lru_cache(maxsize=16)
def coordinate_table(sizes: tuple[int, ...]) -> np.ndarray:
    """(|Q|, n) array of residues, row i = index_decode(i)."""
    N = math.prod(sizes)
    idx = np.arange(N)
    cols = []
    for q in sizes:
        idx, x = np.divmod(idx, q)
        cols.append(x)
    out = np.stack(cols, axis=1).astype(np.int64)
    out.flags.writeable = False
    return out


def _encode_rows(coords: np.ndarray, sizes) -> np.ndarray:
    return coords @ np.array(_radix(sizes), dtype=np.int64)


@lru_cache(maxsize=16)
def character_matrix(sizes: tuple[int, ...]) -> np.ndarray:
    """X[t, x] = chi_t(x); symmetric because t-hat(x) = x-hat(t)."""
    C = coordinate_table(sizes)
    phase = np.zeros((len(C), len(C)))
    for i, q in enumerate(sizes):
        phase += np.mod(np.outer(C[:, i], C[:, i]), q) / q
    X = np.exp(2j * np.pi * phase)
    X.flags.writeable = False
    return X


@lru_cache(maxsize=16)
def negation_table(sizes: tuple[int, ...]) -> np.ndarray:
    C = coordinate_table(sizes)
    out = _encode_rows(np.mod(-C, np.array(sizes)), sizes)
    out.flags.writeable = False
    return out


@lru_cache(maxsize=16)
def difference_table(sizes: tuple[int, ...]) -> np.ndarray:
    """D[x, y] = index(x - y)."""
    C = coordinate_table(sizes)
    radix = np.array(_radix(sizes), dtype=np.int64)
    D = np.zeros((len(C), len(C)), dtype=np.int64)
    for i, q in enumerate(sizes):
        D += np.mod(C[:, i][:, None] - C[:, i][None, :], q) * radix[i]
    D.flags.writeable = False
    return D


@lru_cache(maxsize=16)
def weights(sizes: tuple[int, ...]) -> np.ndarray:
    out = np.count_nonzero(coordinate_table(sizes), axis=1)
    out.flags.writeable = False
    return out


# ---------------------------------------------------------------------------
# functions on Q (or on its character group, same indexing)


@dataclass(frozen=True, eq=False)
class FunctionOnQ:
    profile: AlphabetProfile
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (self.profile.order,):
            raise ProfileMismatch(f"expected {self.profile.order} values, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise MixboundError("function values must be finite")
        v = v.copy()
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def sizes(self):
        return self.profile.sizes

    def __add__(self, other):
        _same(self, other)
        return FunctionOnQ(self.profile, self.values + other.values)

    def __mul__(self, other):
        if isinstance(other, FunctionOnQ):
            _same(self, other)
            return FunctionOnQ(self.profile, self.values * other.values)
        return FunctionOnQ(self.profile, self.values * other)

    __rmul__ = __mul__

    def reflected(self) -> "FunctionOnQ":
        """x -> f(-x) (equivalently chi -> F(chi^-1) on the character side)."""
        return FunctionOnQ(self.profile, self.values[negation_table(self.sizes)])

    def conj(self) -> "FunctionOnQ":
        return FunctionOnQ(self.profile, self.values.conj())

    def is_even(self, atol=None) -> bool:
        atol = default_atol(self.profile) if atol is None else atol
        return bool(np.allclose(self.values, self.reflected().values, rtol=0, atol=atol))

    def is_real(self, atol=None) -> bool:
        atol = default_atol(self.profile) if atol is None else atol
        return bool(np.max(np.abs(self.values.imag), initial=0.0) <= atol)


def _same(f: FunctionOnQ, h: FunctionOnQ):
    if f.profile.sizes != h.profile.sizes:
        raise ProfileMismatch("functions live on different spaces")


def function(profile: AlphabetProfile, values) -> FunctionOnQ:
    return FunctionOnQ(profile, np.asarray(values, dtype=complex))


def indicator(profile: AlphabetProfile, points: Iterable) -> FunctionOnQ:
    """1_S for S given as indices or coordinate tuples."""
    v = np.zeros(profile.order)
    for p in points:
        v[p if isinstance(p, (int, np.integer)) else index_encode(profile, p)] = 1.0
    return FunctionOnQ(profile, v)


def delta_at_zero(profile: AlphabetProfile) -> FunctionOnQ:
    return indicator(profile, [0])


def expectation(f: FunctionOnQ) -> complex:
    return complex(f.values.mean())


def expectation_dual(F: FunctionOnQ) -> complex:
    return complex(F.values.sum() / F.profile.order)


def inner(f: FunctionOnQ, h: FunctionOnQ) -> complex:
    _same(f, h)
    return complex(np.vdot(h.values, f.values) / f.profile.order)


def inner_dual(F: FunctionOnQ, H: FunctionOnQ) -> complex:
    _same(F, H)
    return complex(np.vdot(H.values, F.values))


def fourier_transform(f: FunctionOnQ) -> FunctionOnQ:
    """f-hat(chi) = (1/|Q|) sum_x f(x) conj(chi(x))."""
    X = character_matrix(f.sizes)
    return FunctionOnQ(f.profile, X.conj() @ f.values / f.profile.order)


def inverse_transform(F: FunctionOnQ) -> FunctionOnQ:
    """f = sum_chi F(chi) chi."""
    X = character_matrix(F.sizes)
    return FunctionOnQ(F.profile, X.T @ F.values)


def convolve(f: FunctionOnQ, h: FunctionOnQ) -> FunctionOnQ:
    """(f * h)(x) = (1/|Q|) sum_y f(y) h(x - y)."""
    _same(f, h)
    D = difference_table(f.sizes)
    return FunctionOnQ(f.profile, h.values[D] @ f.values / f.profile.order)


def convolve_dual(F: FunctionOnQ, H: FunctionOnQ) -> FunctionOnQ:
    """(F * H)(chi) = sum_psi F(psi) H(chi psi^-1), unnormalized."""
    _same(F, H)
    D = difference_table(F.sizes)
    return FunctionOnQ(F.profile, H.values[D] @ F.values)


def dual_function_transform(f: FunctionOnQ, atol=None) -> FunctionOnQ:
    """f'(g) = sum_chi f-check(chi) chi(g), where f-check(g-hat) = f(g).

    The result is cross-checked against |Q| f-hat(g-hat^-1) and a mismatch
    beyond ``atol`` raises ArithmeticError.
    """
    atol = default_atol(f.profile) if atol is None else atol
    X = character_matrix(f.sizes)
    direct = X.T @ f.values
    via_hat = f.profile.order * fourier_transform(f).values[negation_table(f.sizes)]
    err = float(np.max(np.abs(direct - via_hat)))
    if err > atol * max(1.0, float(np.max(np.abs(direct), initial=0.0))):
        raise ArithmeticError(f"dual-function identity off by {err:.3g}")
    return FunctionOnQ(f.profile, direct)


def L_function(profile: AlphabetProfile) -> FunctionOnQ:
    """|Q| on weight-1 points, 0 elsewhere; f * L is the Hamming-graph adjacency."""
    w = weights(profile.sizes)
    return FunctionOnQ(profile, np.where(w == 1, float(profile.order), 0.0))


def L_hat_closed_form(profile: AlphabetProfile) -> np.ndarray:
    """n(q_a - 1) - sum of q_i over the coordinates where the character is nontrivial."""
    C = coordinate_table(profile.sizes)
    q = np.array(profile.sizes)
    degree = float(profile.n * (means(profile).q_a - 1))
    return degree - ((C != 0) * q).sum(axis=1).astype(float)


def adjacency_apply(f: FunctionOnQ) -> FunctionOnQ:
    """(A f)(x) = sum of f over Hamming neighbours of x, by explicit neighbour walk."""
    sizes = f.sizes
    C = coordinate_table(sizes)
    radix = np.array(_radix(sizes), dtype=np.int64)
    idx = np.arange(len(C))
    out = np.zeros(len(C), dtype=complex)
    for i, q in enumerate(sizes):
        for shift in range(1, q):
            nb = idx + (np.mod(C[:, i] + shift, q) - C[:, i]) * radix[i]
            out += f.values[nb]
    return FunctionOnQ(f.profile, out)


def phi_of_code(profile: AlphabetProfile, code) -> FunctionOnQ:
    """phi(x) = sum_y sqrt((1_C * 1_{-C})(y)) y-hat(x) for a nonempty code C.

    ``code`` is an iterable of indices or coordinate tuples, or a CodeSet.
    """
    points = getattr(code, "elements", code)
    one_c = indicator(profile, points)
    if not np.any(one_c.values):
        raise EmptyCode("phi needs a nonempty code")
    auto = convolve(one_c, one_c.reflected()).values.real
    auto = np.clip(auto, 0.0, None)
    X = character_matrix(profile.sizes)
    return FunctionOnQ(profile, X.T @ np.sqrt(auto))


def autocorrelation(profile: AlphabetProfile, code) -> FunctionOnQ:
    points = getattr(code, "elements", code)
    one_c = indicator(profile, points)
    return convolve(one_c, one_c.reflected())
