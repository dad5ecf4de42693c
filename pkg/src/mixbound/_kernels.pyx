# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops: bitset max-clique branch-and-bound, pairwise Hamming
distances and a CSR mat-vec. Same contracts as ``_kernels_py``."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy
from posix.time cimport clock_gettime, timespec, CLOCK_MONOTONIC

cnp.import_array()

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

BACKEND = "compiled"


cdef inline double _now() noexcept nogil:
    cdef timespec ts
    clock_gettime(CLOCK_MONOTONIC, &ts)
    return ts.tv_sec + 1e-9 * ts.tv_nsec


cdef struct Search:
    int N
    int W
    uint64_t* adj
    int* R
    int* best_R
    int best
    int upper
    long long nodes
    double deadline
    int timed_out


cdef int _popcount(uint64_t* P, int W) noexcept nogil:
    cdef int c = 0, w
    for w in range(W):
        c += __builtin_popcountll(P[w])
    return c


cdef int _expand(Search* s, uint64_t* P, int size_R) noexcept nogil:
    cdef int W = s.W
    cdef int cnt = _popcount(P, W)
    cdef int* order
    cdef int* color
    cdef uint64_t* U
    cdef uint64_t* Q
    cdef uint64_t* newP
    cdef int k, idx, w, j, b, v, i, empty
    cdef uint64_t* row

    s.nodes += 1
    if (s.nodes & 1023) == 0 and s.deadline > 0 and _now() > s.deadline:
        s.timed_out = 1
        return 0

    order = <int*> malloc(cnt * sizeof(int))
    color = <int*> malloc(cnt * sizeof(int))
    U = <uint64_t*> malloc(3 * W * sizeof(uint64_t))
    Q = U + W
    newP = Q + W

    # greedy sequential colouring; classes are independent in the clique graph
    memcpy(U, P, W * sizeof(uint64_t))
    k = 0
    idx = 0
    while idx < cnt:
        k += 1
        memcpy(Q, U, W * sizeof(uint64_t))
        for w in range(W):
            while Q[w]:
                b = __builtin_ctzll(Q[w])
                v = w * 64 + b
                Q[w] &= Q[w] - 1
                U[w] &= ~((<uint64_t> 1) << b)
                row = s.adj + <long long> v * W
                for j in range(w, W):
                    Q[j] &= ~row[j]
                order[idx] = v
                color[idx] = k
                idx += 1

    for i in range(cnt - 1, -1, -1):
        if size_R + color[i] <= s.best or s.best >= s.upper:
            break
        v = order[i]
        s.R[size_R] = v
        row = s.adj + <long long> v * W
        empty = 1
        for w in range(W):
            newP[w] = P[w] & row[w]
            if newP[w]:
                empty = 0
        if empty:
            if size_R + 1 > s.best:
                s.best = size_R + 1
                memcpy(s.best_R, s.R, (size_R + 1) * sizeof(int))
        else:
            _expand(s, newP, size_R + 1)
            if s.timed_out:
                break
        P[v >> 6] &= ~((<uint64_t> 1) << (v & 63))

    free(order)
    free(color)
    free(U)
    return 0


def max_clique(adjacency, int lower=0, double budget_seconds=0.0, int upper=-1):
    """Maximum clique of a dense 0/1 symmetric adjacency matrix.

    Only cliques strictly larger than ``lower`` are searched for, and the
    search stops once one of size ``upper`` (a known bound, -1 for none) is
    found. Returns (vertices, exact, nodes); ``vertices`` is empty when
    nothing beats ``lower``; ``exact`` is False when the time budget ran out.
    """
    cdef const cnp.uint8_t[:, :] A = np.ascontiguousarray(adjacency, dtype=np.uint8)
    cdef int N = A.shape[0]
    cdef int W = (N + 63) // 64 if N > 0 else 1
    cdef int i, j
    cdef Search s
    cdef uint64_t* P
    if N == 0:
        return [], True, 0
    s.N = N
    s.W = W
    s.adj = <uint64_t*> malloc(<long long> N * W * sizeof(uint64_t))
    s.R = <int*> malloc((N + 1) * sizeof(int))
    s.best_R = <int*> malloc((N + 1) * sizeof(int))
    P = <uint64_t*> malloc(W * sizeof(uint64_t))
    try:
        for i in range(N * W):
            s.adj[i] = 0
        for i in range(N):
            for j in range(N):
                if A[i, j] and i != j:
                    s.adj[<long long> i * W + (j >> 6)] |= (<uint64_t> 1) << (j & 63)
        for i in range(W):
            P[i] = 0
        for i in range(N):
            P[i >> 6] |= (<uint64_t> 1) << (i & 63)
        s.best = lower
        s.upper = upper if upper >= 0 else N + 1
        s.nodes = 0
        s.timed_out = 0
        s.deadline = _now() + budget_seconds if budget_seconds > 0 else 0.0
        with nogil:
            _expand(&s, P, 0)
        found = [s.best_R[i] for i in range(s.best)] if s.best > lower else []
        return found, not s.timed_out, s.nodes
    finally:
        free(s.adj)
        free(s.R)
        free(s.best_R)
        free(P)


def greedy_clique(adjacency, order):
    """Greedy clique: scan ``order`` and keep each vertex adjacent to all kept so far."""
    cdef const cnp.uint8_t[:, :] A = np.ascontiguousarray(adjacency, dtype=np.uint8)
    cdef const cnp.int64_t[:] o = np.ascontiguousarray(order, dtype=np.int64)
    cdef Py_ssize_t N = A.shape[0], m = o.shape[0], i, j, k = 0
    cdef cnp.uint8_t[:] alive = np.ones(N, dtype=np.uint8)
    out = np.empty(m, dtype=np.int64)
    cdef cnp.int64_t[:] kept = out
    with nogil:
        for i in range(m):
            if alive[o[i]]:
                kept[k] = o[i]
                k += 1
                for j in range(N):
                    if not A[o[i], j]:
                        alive[j] = 0
    return out[:k].tolist()


def distance_at_least(coords, int d):
    """0/1 matrix (uint8) marking row pairs at Hamming distance >= d."""
    cdef const cnp.int32_t[:, :] C = np.ascontiguousarray(coords, dtype=np.int32)
    cdef Py_ssize_t N = C.shape[0], n = C.shape[1], a, b, i
    cdef int dist
    cdef cnp.uint8_t hit
    out = np.zeros((N, N), dtype=np.uint8)
    cdef cnp.uint8_t[:, :] M = out
    with nogil:
        for a in range(N):
            for b in range(a + 1, N):
                dist = 0
                for i in range(n):
                    if C[a, i] != C[b, i]:
                        dist += 1
                        if dist >= d:
                            break
                hit = dist >= d
                M[a, b] = hit
                M[b, a] = hit
    return out


def pairwise_hamming(coords):
    """Hamming distance matrix (int32) between the rows of an integer array."""
    cdef const cnp.int64_t[:, :] C = np.ascontiguousarray(coords, dtype=np.int64)
    cdef Py_ssize_t N = C.shape[0], n = C.shape[1], a, b, i
    cdef int d
    out = np.zeros((N, N), dtype=np.int32)
    cdef cnp.int32_t[:, :] D = out
    with nogil:
        for a in range(N):
            for b in range(a + 1, N):
                d = 0
                for i in range(n):
                    if C[a, i] != C[b, i]:
                        d += 1
                D[a, b] = d
                D[b, a] = d
    return out


def csr_matvec(indptr, indices, x, double shift=0.0):
    """y = A x + shift * x for a 0/1 matrix A in CSR form (no data array)."""
    cdef const cnp.int64_t[:] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const cnp.int64_t[:] ix = np.ascontiguousarray(indices, dtype=np.int64)
    cdef const double[:] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t N = xv.shape[0], r, k
    cdef double acc
    out = np.empty(N, dtype=np.float64)
    cdef double[:] y = out
    with nogil:
        for r in range(N):
            acc = shift * xv[r]
            for k in range(ip[r], ip[r + 1]):
                acc += xv[ix[k]]
            y[r] = acc
    return out
