"""Pure-Python fallback for the compiled kernels (same algorithms, same results).

Bitsets are Python ints; the clique search mirrors the compiled one node for
node, so both backends return the same witness.
"""
import sys
import time

import numpy as np

BACKEND = "python"


def max_clique(adjacency, lower=0, budget_seconds=0.0, upper=-1):
    A = np.asarray(adjacency, dtype=bool)
    N = A.shape[0]
    if N == 0:
        return [], True, 0
    adj = []
    for i in range(N):
        row = A[i].copy()
        row[i] = False
        adj.append(int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little"))

    if upper < 0:
        upper = N + 1
    state = {"best": lower, "best_R": [], "nodes": 0, "timed_out": False}
    deadline = time.monotonic() + budget_seconds if budget_seconds > 0 else 0.0
    R = []

    def expand(P):
        state["nodes"] += 1
        if state["nodes"] & 1023 == 0 and deadline and time.monotonic() > deadline:
            state["timed_out"] = True
            return
        order, color = [], []
        U = P
        k = 0
        while U:
            k += 1
            Q = U
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                Q ^= low
                U ^= low
                Q &= ~adj[v]
                order.append(v)
                color.append(k)
        for i in range(len(order) - 1, -1, -1):
            if len(R) + color[i] <= state["best"] or state["best"] >= upper:
                break
            v = order[i]
            R.append(v)
            newP = P & adj[v]
            if not newP:
                if len(R) > state["best"]:
                    state["best"] = len(R)
                    state["best_R"] = list(R)
            else:
                expand(newP)
            R.pop()
            if state["timed_out"]:
                break
            P &= ~(1 << v)

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, N + 1000))
    try:
        expand((1 << N) - 1)
    finally:
        sys.setrecursionlimit(old)
    found = state["best_R"] if state["best"] > lower else []
    return found, not state["timed_out"], state["nodes"]


def greedy_clique(adjacency, order):
    A = np.asarray(adjacency, dtype=bool)
    alive = np.ones(A.shape[0], dtype=bool)
    kept = []
    for v in np.asarray(order, dtype=np.int64):
        if alive[v]:
            kept.append(int(v))
            alive &= A[v]
    return kept


def distance_at_least(coords, d):
    return (pairwise_hamming(coords) >= d).astype(np.uint8)


def pairwise_hamming(coords):
    C = np.asarray(coords, dtype=np.int64)
    return (C[:, None, :] != C[None, :, :]).sum(axis=2).astype(np.int32)


def csr_matvec(indptr, indices, x, shift=0.0):
    x = np.asarray(x, dtype=np.float64)
    indptr = np.asarray(indptr, dtype=np.int64)
    gathered = x[np.asarray(indices, dtype=np.int64)]
    sums = np.add.reduceat(np.append(gathered, 0.0), indptr[:-1]) if len(x) else gathered
    sums = np.where(np.diff(indptr) > 0, sums, 0.0)
    return sums + shift * x
