"""Time the compiled matching search against the pure-Python fallback.

    python3 benchmarks/bench_kernel.py [--repeat N] [--point i j k ...]

Both backends run the same searches; the script fails if their results differ.
"""

from __future__ import annotations

import argparse
import sys
import time

from dp3castles import kernel
from dp3castles.castle import build_castle
from dp3castles.matchings import _face_edge_counts, indexed

DEFAULT_POINTS = [(0, 1, 1), (-1, 3, 1), (1, 1, 2), (2, 1, 2), (1, 2, 2), (2, 2, 2)]


def _timed(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_point(p, repeat):
    c = build_castle(*p)
    g = indexed(c)
    counts = _face_edge_counts(c)
    vecs = [-n for e in g.edges for n in counts.get(e, [0] * 6)]
    rows = []
    for mode, name, dim, v in (
        (kernel.MODE_COUNT, "count", 0, ()),
        (kernel.MODE_TALLY, "tally", 6, vecs),
    ):
        results = {}
        times = {}
        for backend in ("python", "cython"):
            times[backend], results[backend] = _timed(
                lambda b=backend: kernel.search(
                    len(g.vertices), g.off, g.nbr_v, g.nbr_e, v, dim, mode, 0, b
                ),
                repeat,
            )
        if results["python"] != results["cython"]:
            raise SystemExit(f"backends disagree at {p} ({name})")
        rows.append((p, name, results["python"][0], times["python"], times["cython"]))
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--point", type=int, nargs=3, action="append", metavar=("I", "J", "K"))
    args = ap.parse_args(argv)
    try:
        from dp3castles import _kernel  # noqa: F401
    except ImportError:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1
    points = [tuple(p) for p in args.point] if args.point else DEFAULT_POINTS
    print(f"{'point':>12} {'mode':>6} {'matchings':>10} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for p in points:
        for pt, name, n, tp, tc in bench_point(p, args.repeat):
            print(f"{str(pt):>12} {name:>6} {n:>10} {tp:>10.4f} {tc:>10.4f} {tp / tc:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
