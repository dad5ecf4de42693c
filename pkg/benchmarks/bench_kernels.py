"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]
"""
import argparse
import itertools
import time

import numpy as np

from mixbound import kernels
from mixbound import spectral
from mixbound.space import make_profile


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def cases(quick):
    pts = np.array(list(itertools.product(*(range(q) for q in (2, 2, 3, 3, 4, 5)))))
    if quick:
        pts = pts[:400]
    compat = kernels.distance_at_least(pts, 3)
    hamming7 = kernels.distance_at_least(np.array(list(itertools.product(range(2), repeat=7))), 3)
    p = make_profile((2, 3, 5, 7) * (2 if quick else 3))
    ball = spectral.ball_elements(p, 3 if quick else 4)
    indptr, indices = spectral.subset_adjacency(p, ball)
    x = np.random.default_rng(0).random(len(ball))
    order = np.random.default_rng(1).permutation(len(compat))
    return [
        (f"pairwise_hamming ({len(pts)} points)", lambda k: k.pairwise_hamming(pts)),
        (f"distance_at_least ({len(pts)} points, d=3)", lambda k: k.distance_at_least(pts, 3)),
        (f"greedy_clique ({len(compat)} vertices)", lambda k: k.greedy_clique(compat, order)),
        ("max_clique (binary n=7, d=3, exact)", lambda k: k.max_clique(hamming7)),
        (f"max_clique ({len(compat)} vertices, 0.5 s budget)", lambda k: k.max_clique(compat, 0, 0.5)),
        (f"csr_matvec x100 (ball of {len(ball)})", lambda k: [k.csr_matvec(indptr, indices, x, 1.0) for _ in range(100)]),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller inputs")
    args = ap.parse_args(argv)

    backends = kernels.backends()
    names = [b.BACKEND for b in backends]
    print(f"{'kernel':<48}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) == 2 else ""))
    for label, fn in cases(args.quick):
        times = [best_of(lambda: fn(b), args.repeat) for b in backends]
        row = f"{label:<48}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[1] / times[0]:>11.1f}x"
        print(row)
    if len(names) == 1:
        print("compiled backend unavailable; only the fallback was timed")


if __name__ == "__main__":
    main()
