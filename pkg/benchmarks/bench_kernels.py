"""Time the numba and numpy kernel backends on intersection graphs.

    python3 benchmarks/bench_kernels.py [--repeat N] [--json out.json]

The first numba call per kernel includes compilation (or a cache load) and
is reported separately as ``warmup``.  Results from both backends are
compared before any timing is printed.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time

from modlat import kernels
from modlat.enumeration import enumerate_submodules
from modlat.modules import ExplicitSpec, semisimple

CASES = [
    ("3S/F2", semisimple(("S", 3, 2))),
    ("2S+T+U/F2", semisimple(("S", 2, 2), ("T", 1, 2), ("U", 1, 2))),
    ("3S/F3", semisimple(("S", 3, 3))),
    ("2S/F4+T/F3", semisimple(("S", 2, 4), ("T", 1, 3))),
    ("Z/64+Z/64", ExplicitSpec.of([64, 64])),
]


def _time(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return statistics.median(times), out


def bench(repeat: int) -> list[dict]:
    rows = []
    for name, spec in CASES:
        L = enumerate_submodules(spec)
        proper = [i for i in range(len(L)) if i not in (L.bottom, L.top)]
        masks = L.masks[proper]
        for backend in kernels.BACKENDS:
            t0 = time.perf_counter()
            adj = kernels.adjacency(masks, backend)
            warm = time.perf_counter() - t0
            t_adj, adj = _time(lambda: kernels.adjacency(masks, backend), repeat)
            row = {"case": name, "backend": backend, "vertices": len(proper), "adjacency": t_adj, "warmup": warm}
            if len(proper) <= 40:
                # the library seeds colouring with the clique size, so the benchmark does too
                omega = len(kernels.max_clique(adj, backend))
                for kernel, call in (
                    ("clique", lambda: kernels.max_clique(adj, backend)),
                    ("chromatic", lambda: kernels.chromatic(adj, omega, backend)[0]),
                    ("dominating", lambda: kernels.dominating(adj, backend)),
                ):
                    call()
                    row[kernel], row[kernel + "_result"] = _time(call, repeat)
            rows.append(row)
    return rows


def check_agreement(rows):
    by_case = {}
    for r in rows:
        by_case.setdefault(r["case"], []).append(r)
    for case, (a, b) in by_case.items():
        for k in ("clique_result", "chromatic_result", "dominating_result"):
            if k in a and (len(a[k]) if isinstance(a[k], list) else a[k]) != (
                len(b[k]) if isinstance(b[k], list) else b[k]
            ):
                raise SystemExit(f"backends disagree on {case} {k}: {a[k]} vs {b[k]}")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", help="also write raw rows here")
    args = ap.parse_args(argv)
    if not kernels.numba_available():
        print("numba is not installed; only the numpy backend can run", file=sys.stderr)
        return 1
    rows = bench(args.repeat)
    check_agreement(rows)
    cols = ("adjacency", "clique", "chromatic", "dominating")
    print(f"{'case':<12} {'backend':<7} {'n':>4} " + " ".join(f"{c:>11}" for c in cols) + f" {'warmup':>9}")
    for r in rows:
        cells = " ".join(f"{r[c] * 1e3:>9.3f}ms" if c in r else f"{'-':>11}" for c in cols)
        print(f"{r['case']:<12} {r['backend']:<7} {r['vertices']:>4} {cells} {r['warmup'] * 1e3:>7.1f}ms")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([{k: v for k, v in r.items() if not k.endswith("_result")} for r in rows], fh, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
