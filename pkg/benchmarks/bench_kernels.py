"""Compare the compiled and pure-Python colouring search on fixed instances.

    python benchmarks/bench_kernels.py [--repeat 1] [--json]

Both backends must agree on the value, the witness and the node count; the
script exits 1 if they do not.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time

from dibchrom import kernels
from dibchrom.digraph import generate
from dibchrom.exact import exact_dc, exact_dib

INSTANCES = [
    ("tournament n=11", "tournament", {"n": 11}, exact_dib),
    ("tournament n=13", "tournament", {"n": 13}, exact_dib),
    ("random n=14 p=0.3", "random", {"n": 14, "p": 0.3}, exact_dib),
    ("random n=16 p=0.25", "random", {"n": 16, "p": 0.25}, exact_dib),
    ("random n=18 p=0.4 (dc)", "random", {"n": 18, "p": 0.4}, exact_dc),
    ("orientation K6,7", "orientation-knm", {"n": 6, "m": 7}, exact_dib),
    ("random bipartite 7x7 delta 2", "random-bipartite", {"n": 7, "m": 7, "delta": 2, "simple": False},
     exact_dib),
]


def best_time(fn, repeat: int):
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=1)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    logging.getLogger("dibchrom.exact").setLevel(logging.ERROR)
    if kernels.BACKEND != "cython":
        print("compiled extension not available; build it with 'pip install -e . --no-build-isolation'",
              file=sys.stderr)
        return 2

    rows, mismatches = [], 0
    for label, family, params, solver in INSTANCES:
        d = generate(family, seed=args.seed, **params)
        t_c, r_c = best_time(lambda: solver(d, backend="cython"), args.repeat)
        t_p, r_p = best_time(lambda: solver(d, backend="python"), args.repeat)
        agree = r_c == r_p
        mismatches += not agree
        rows.append({"instance": label, "value": r_c.value, "nodes": r_c.nodes_expanded,
                     "cython_s": t_c, "python_s": t_p, "speedup": t_p / t_c if t_c else None,
                     "agree": agree})

    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print(f"{'instance':32} {'value':>5} {'nodes':>9} {'cython s':>10} {'python s':>10} {'speedup':>8}")
        for r in rows:
            flag = "" if r["agree"] else "  MISMATCH"
            print(f"{r['instance']:32} {r['value']:>5} {r['nodes']:>9} {r['cython_s']:>10.4f} "
                  f"{r['python_s']:>10.4f} {r['speedup']:>7.1f}x{flag}")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
