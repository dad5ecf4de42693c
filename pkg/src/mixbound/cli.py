"""Command-line front end: sphere tables, finite bounds, rate curves, verification."""
from __future__ import annotations

import argparse
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import spectral
from .asymptotic import CurveKind, curve, default_grid, make_distribution
from .errors import MixboundError, SpaceTooLarge
from .finite import finite_bounds
from .oracle import DEFAULT_BUDGET, EXACT_CAP, max_code
from .space import AlphabetProfile, ball_size, make_profile, sphere_sizes

EXIT_OK, EXIT_INVALID, EXIT_FAILED, EXIT_CAP = 0, 1, 2, 3
CSV_COLUMNS = ("delta", "gv", "sp", "eb", "lp", "singleton")
FOURIER_MAX = 4096


class UsageError(MixboundError):
    pass


@dataclass(frozen=True)
class ProfileSpec:
    """Either an explicit alphabet list or a distribution plus a length n."""

    alphabets: Optional[tuple[int, ...]] = None
    dist: Optional[tuple[tuple[int, Fraction], ...]] = None
    n: Optional[int] = None

    @classmethod
    def parse(cls, alphabets: Optional[str] = None, dist: Optional[str] = None, n: Optional[int] = None):
        if (alphabets is None) == (dist is None):
            raise UsageError("give exactly one of --alphabets or --dist")
        if alphabets is not None:
            return cls(alphabets=parse_alphabets(alphabets))
        return cls(dist=parse_dist(dist), n=n)

    def format(self) -> str:
        if self.alphabets is not None:
            return "--alphabets " + ",".join(map(str, self.alphabets))
        body = ",".join(f"{q}:{f}" for q, f in self.dist)
        return f"--dist {body}" + (f" --n {self.n}" if self.n is not None else "")

    def counts(self) -> dict[int, int]:
        """Per-alphabet coordinate counts: largest-remainder rounding of n * fraction."""
        if self.n is None or self.n < 1:
            raise UsageError("--dist needs --n >= 1 to build a finite profile")
        exact = [(q, f * self.n) for q, f in self.dist]
        base = {q: int(x) for q, x in exact}
        left = self.n - sum(base.values())
        # largest remainder first; ties go to the smaller alphabet
        by_rem = sorted(exact, key=lambda e: (-(e[1] - int(e[1])), e[0]))
        for q, _ in by_rem[:left]:
            base[q] += 1
        return base

    def profile(self) -> AlphabetProfile:
        if self.alphabets is not None:
            return make_profile(self.alphabets)
        sizes = [q for q, c in sorted(self.counts().items()) for _ in range(c)]
        return make_profile(sizes)

    def distribution(self):
        if self.dist is not None:
            return make_distribution(self.dist)
        counts: dict[int, int] = {}
        for q in self.alphabets:
            counts[q] = counts.get(q, 0) + 1
        return make_distribution({q: Fraction(c, len(self.alphabets)) for q, c in counts.items()})


def parse_alphabets(text: str) -> tuple[int, ...]:
    try:
        sizes = tuple(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise UsageError(f"bad alphabet list {text!r}") from None
    if not sizes:
        raise UsageError("empty alphabet list")
    return sizes


def parse_dist(text: str) -> tuple[tuple[int, Fraction], ...]:
    out = []
    for item in text.replace(" ", "").split(","):
        if not item:
            continue
        q, sep, f = item.partition(":")
        if not sep:
            raise UsageError(f"distribution entry {item!r} is not q:fraction")
        try:
            out.append((int(q), Fraction(f)))  # "0.25" parses to 1/4 exactly
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad distribution entry {item!r}") from None
    make_distribution(out)
    return tuple(out)


def _fmt(x) -> str:
    return "" if x is None else "%.9g" % x


# ---------------------------------------------------------------- commands


def cmd_sphere(args, out) -> int:
    profile = ProfileSpec.parse(args.alphabets, args.dist, args.n).profile()
    table = sphere_sizes(profile)
    print(f"# profile {','.join(map(str, profile.sizes))}", file=out)
    print("r,s_r,ball_r", file=out)
    radii = [args.r] if args.r is not None else range(profile.n + 1)
    for r in radii:
        print(f"{r},{table[r]},{ball_size(table, r)}", file=out)
    return EXIT_OK


def cmd_bounds(args, out) -> int:
    profile = ProfileSpec.parse(args.alphabets, args.dist, args.n).profile()
    if args.d is None:
        raise UsageError("bounds needs --d")
    d = args.d
    results = finite_bounds(profile, d)
    names = {
        "GV_lower": "GV",
        "SpherePacking_upper": "SP",
        "Singleton_upper": "Singleton",
        "EliasBassalygo_upper": "EB",
    }
    lower = None
    uppers = []
    print(f"# profile {','.join(map(str, profile.sizes))}  d={d}", file=out)
    for b in results:
        label = names[b.kind.value]
        if not b.applicable:
            print(f"{label} n/a", file=out)
            continue
        extra = f" (r={b.witness_params['r']})" if b.witness_params else ""
        print(f"{label} {b.floor}{extra}", file=out)
        if b.kind.is_lower:
            lower = b.floor
        else:
            uppers.append(b.floor)
    if args.r is not None:
        cert = spectral.bound_by_ev_certificate(profile, d, args.r)
        print(f"EV-certificate(r={args.r}) {'n/a' if cert is None else cert}", file=out)
        if cert is not None:
            uppers.append(cert)
    ok = lower <= min(uppers)
    limit = args.max_space if args.max_space is not None else EXACT_CAP
    if profile.order <= limit:
        code = max_code(profile, d, cap=limit, budget_seconds=args.budget_seconds)
        tag = "exact" if code.exact else "lower bound, budget exhausted"
        print(f"oracle {len(code)} ({tag})", file=out)
        ok = ok and lower <= len(code) <= min(uppers)
    print("sandwich " + ("ok" if ok else "VIOLATED"), file=out)
    return EXIT_OK if ok else EXIT_FAILED


def write_curves(dist, kinds, grid, threads: int = 1) -> str:
    executor = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        cols = {k: dict(curve(dist, k, grid, executor).samples) for k in kinds}
    finally:
        if executor is not None:
            executor.shutdown()
    buf = io.StringIO(newline="")
    buf.write(",".join(CSV_COLUMNS) + "\n")
    for x in grid:
        row = [_fmt(x)] + [_fmt(cols[k][x]) if k in cols else "" for k in CurveKind]
        buf.write(",".join(row) + "\n")
    return buf.getvalue()


GNUPLOT = """set datafile separator ','
set key autotitle columnhead
set xlabel 'delta'
set ylabel 'rate'
set yrange [0:1]
plot for [c=2:6] '{csv}' using 1:c with lines
"""


def cmd_curve(args, out) -> int:
    spec = ProfileSpec.parse(args.alphabets, args.dist, args.n)
    dist = spec.distribution()
    kinds = [CurveKind(k) for k in args.kinds.split(",")] if args.kinds else list(CurveKind)
    if not 0 < args.grid_step <= 1:
        raise UsageError("--grid-step must lie in (0, 1]")
    text = write_curves(dist, kinds, default_grid(args.grid_step), args.threads)
    if args.out in (None, "-"):
        out.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        if args.gnuplot:
            with open(args.out + ".gp", "w", encoding="utf-8", newline="\n") as fh:
                fh.write(GNUPLOT.format(csv=args.out))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    from . import verify

    suites = list(verify.SUITES) if args.suite == "all" else [args.suite]
    kw = {"budget_seconds": args.budget_seconds if args.budget_seconds is not None else 0.02}
    if args.max_space is not None:
        if "bounds" in suites and args.max_space > EXACT_CAP:
            raise SpaceTooLarge(f"--max-space {args.max_space} exceeds the exact-search cap {EXACT_CAP}")
        if "fourier" in suites and args.max_space > FOURIER_MAX:
            raise SpaceTooLarge(f"--max-space {args.max_space} exceeds the dense Fourier cap {FOURIER_MAX}")
        kw["max_space"] = args.max_space
    if args.threads > 1:
        with ThreadPoolExecutor(args.threads) as ex:
            results = list(ex.map(lambda s: verify.run(s, **kw), suites))
    else:
        results = [verify.run(s, **kw) for s in suites]
    passed = all(r.passed for r in results if r.suite != "conjecture")
    json.dump({"passed": passed, "suites": [r.as_dict() for r in results]}, out, indent=2)
    out.write("\n")
    return EXIT_OK if passed else EXIT_FAILED


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for failed verification here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mixbound", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def profile_flags(p):
        p.add_argument("--alphabets", help="comma list of alphabet sizes, e.g. 2,3,5,7")
        p.add_argument("--dist", help="q:fraction comma list, e.g. 2:0.25,3:0.75")
        p.add_argument("--n", type=int, help="length used to instantiate --dist")

    p = sub.add_parser("sphere", help="sphere and ball sizes")
    profile_flags(p)
    p.add_argument("--r", type=int)
    p.set_defaults(func=cmd_sphere)

    p = sub.add_parser("bounds", help="finite bounds on A(n,d), with the oracle on small spaces")
    profile_flags(p)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, help="also try the eigenvalue certificate on B_r(0)")
    p.add_argument("--max-space", type=int, help=f"largest |Q| handed to the oracle (default {EXACT_CAP})")
    p.add_argument("--budget-seconds", type=float, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("curve", help="asymptotic rate curves as CSV")
    profile_flags(p)
    p.add_argument("--kinds", help="subset of gv,sp,eb,lp,singleton (default all)")
    p.add_argument("--grid-step", type=float, default=0.005)
    p.add_argument("--out", help="CSV path (default stdout)")
    p.add_argument("--gnuplot", action="store_true", help="write OUT.gp next to the CSV")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("verify", help="run invariant suites, JSON summary on stdout")
    p.add_argument("--suite", default="all", choices=["all", "sphere", "fourier", "spectral", "bounds", "conjecture"])
    p.add_argument("--max-space", type=int)
    p.add_argument("--budget-seconds", type=float)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except SpaceTooLarge as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
