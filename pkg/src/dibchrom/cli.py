"""Command-line interface: ``dibchrom <subcommand> ...``.

Exit status is 0 on success, 1 when a verification or check fails, and 2
for usage errors and malformed input files.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .coloring import verify
from .constructions import (
    ConstructionError,
    PartitionNotFound,
    biclique_coloring,
    cross_pair_coloring,
    cross_pair_value,
    find_one_directional_biclique,
    greedy_coloring,
    partition_coloring,
    theorem7_construct,
    theorem8_construct,
    theorem9_construct,
    theorem13_inequality,
    theorem14_threshold,
)
from .dgf import FormatError, format_coloring, format_dgf, read_coloring, read_dgf, write_coloring
from .digraph import FAMILIES, HARD_ENUMERATION_CAP, bipartition_of, enumerate_all, generate
from .exact import HypothesisError, SearchLimitExceeded, bounds, exact_dc, exact_dib
from .harness import CHECKS, CheckSpec, enumerate_segments, family_segments, run_check
from .reduction import reduce_to_b_coloring

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

CONSTRUCTIONS = ("theorem-7", "theorem-8", "theorem-9", "theorem-10",
                 "theorem-12", "theorem-13", "theorem-14")


class UsageError(Exception):
    pass


def _emit_json(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n")


def _parse_value(text: str):
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    if text.lower() in ("true", "false"):
        return text.lower() == "true"
    return text


def _key_values(pairs: list[str]) -> dict:
    out = {}
    for item in pairs:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise UsageError(f"expected key=value, got {item!r}")
        out[key.replace("-", "_")] = _parse_value(value)
    return out


# -- subcommands ------------------------------------------------------------------


def cmd_verify(args) -> int:
    d = read_dgf(args.file)
    c = read_coloring(args.coloring, d.n)
    report = verify(d, c)
    if args.json:
        _emit_json({"k": c.k, "describe": report.describe(), **report.to_dict()})
    else:
        print(report.describe())
    return EXIT_OK if report.is_b_coloring else EXIT_FAIL


def cmd_reduce(args) -> int:
    d = read_dgf(args.file)
    c = read_coloring(args.coloring, d.n)
    try:
        trace = reduce_to_b_coloring(d, c)
    except ValueError as e:
        raise UsageError(str(e)) from None
    final = trace.final
    if args.output:
        write_coloring(args.output, final)
    if args.json:
        _emit_json({
            "initial_k": c.k,
            "final_k": final.k,
            "steps": [{"eliminated_color": s.eliminated_color, "side": s.side,
                       "buckets": {str(j): sorted(v + 1 for v in vs) for j, vs in sorted(s.buckets.items())},
                       "resulting_k": s.resulting_k} for s in trace.steps],
            "final": list(final.colors),
        })
    else:
        for i, step in enumerate(trace.steps, start=1):
            print(step.describe(i))
        sys.stdout.write(format_coloring(final))
    return EXIT_OK


def _solve(args, name: str, solver) -> int:
    d = read_dgf(args.file)
    try:
        res = solver(d, node_limit=args.node_limit, backend=args.backend)
    except SearchLimitExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL
    witness = args.witness or str(Path(args.file).with_suffix(f".{name}.col"))
    if witness != "-":
        write_coloring(witness, res.witness)
    if args.json:
        out = {"quantity": name, "witness_file": None if witness == "-" else witness,
               **res.to_dict(timing=args.timing)}
        _emit_json(out)
    else:
        print(f"{name} = {res.value}")
        if witness != "-":
            print(f"witness: {witness}")
        else:
            sys.stdout.write(format_coloring(res.witness))
        print(f"nodes expanded: {res.nodes_expanded}")
        if args.timing:
            print(f"elapsed: {res.elapsed:.3f} s ({res.backend})")
    return EXIT_OK


def cmd_dc(args) -> int:
    return _solve(args, "dc", exact_dc)


def cmd_dib(args) -> int:
    items = args.items
    if len(items) == 2 and items[0] == "exact":
        args.file = items[1]
    elif len(items) == 1:
        args.file = items[0]
    else:
        raise UsageError("usage: dib [exact] FILE")
    return _solve(args, "dib", exact_dib)


def cmd_bounds(args) -> int:
    d = read_dgf(args.file)
    rep = bounds(d, with_dc=not args.no_dc)
    if args.json:
        _emit_json({**rep.to_dict(), "best_lower": rep.best_lower, "best_upper": rep.best_upper,
                    "consistent": rep.consistent()})
    else:
        for name, v in rep.lower.items():
            print(f"lower {name}: {v}")
        for name, v in rep.upper.items():
            print(f"upper {name}: {v}")
        print(f"{rep.best_lower} <= dib <= {rep.best_upper}")
    return EXIT_OK if rep.consistent() else EXIT_FAIL


def _default_cross_pair(d, bp):
    """First pair (y1, y2) of the larger side for which the inequality holds."""
    if bp.n > bp.m:
        bp = bp.swapped()
    for y1 in sorted(bp.B):
        for y2 in sorted(bp.B):
            if y1 != y2 and theorem13_inequality(cross_pair_value(d, y1, y2), bp.m, bp.delta_A):
                return y1, y2
    raise HypothesisError("no pair of B-vertices satisfies the cross-pair inequality")


def _construct(args, d):
    theorem = args.theorem
    if theorem == "theorem-7":
        return theorem7_construct(d)
    if theorem == "theorem-8":
        return theorem8_construct(d)
    if theorem == "theorem-9":
        return theorem9_construct(d)
    bp = bipartition_of(d)
    if bp is None:
        raise HypothesisError("digraph is not bipartite")
    bp = bp.smaller_first()
    if theorem == "theorem-10":
        return partition_coloring(d, bp, attempts=args.attempts, seed=args.seed)
    if theorem == "theorem-12":
        return greedy_coloring(d, bp)
    if theorem == "theorem-13":
        if (args.y1 is None) != (args.y2 is None):
            raise UsageError("give both --y1 and --y2 or neither")
        y1, y2 = (args.y1 - 1, args.y2 - 1) if args.y1 is not None else _default_cross_pair(d, bp)
        return cross_pair_coloring(d, bp, y1, y2, attempts=args.attempts, seed=args.seed)
    r = args.r
    if r is None:
        r = 1
        while theorem14_threshold(r + 1) <= bp.n:
            r += 1
    bic = find_one_directional_biclique(d, bp, r)
    if bic is None:
        raise ConstructionError(f"no one-directional biclique with r = {r}")
    return biclique_coloring(d, bp, bic)


def _witness_text(w) -> str:
    if w is None:
        return ""
    if hasattr(w, "vertices"):
        kind = "odd-source" if w.odd_sources else "odd-sink"
        return f"bad path ({kind}): {' '.join(str(v + 1) for v in w.vertices)}\n"
    if hasattr(w, "left"):
        arrow = "->" if w.forward else "<-"
        return (f"biclique: {' '.join(str(v + 1) for v in w.left)} {arrow} "
                f"{' '.join(str(v + 1) for v in w.right)}\n")
    if isinstance(w, dict) and "parts" in w:
        head = f"common set: {' '.join(str(v + 1) for v in w['C'])}\n"
        return head + _witness_text(w["parts"])
    if isinstance(w, list) and w and isinstance(w[0], tuple) and len(w[0]) == 3 and all(
            isinstance(x, int) for x in w[0]):
        return "".join(f"stage colours={a} coloured={b} budget={c}\n" for a, b, c in w)
    if isinstance(w, list):
        return "".join(f"part {i}: {' '.join(str(v + 1) for v in part)}\n"
                       for i, part in enumerate(w, start=1))
    return f"{w}\n"


def cmd_construct(args) -> int:
    d = read_dgf(args.file)
    try:
        res = _construct(args, d)
    except (ConstructionError, PartitionNotFound) as e:
        print(f"construction failed: {e}", file=sys.stderr)
        return EXIT_FAIL
    if args.output:
        write_coloring(args.output, res.coloring)
    if args.emit_witness:
        Path(args.emit_witness).write_text(_witness_text(res.witness), encoding="utf-8")
    if args.json:
        _emit_json({"theorem": args.theorem, "method": res.method, "k": res.k,
                    "coloring": list(res.coloring.colors), "notes": res.notes,
                    "describe": res.report.describe(), **res.report.to_dict()})
    else:
        print(f"method: {res.method}")
        print(f"k = {res.k}")
        print(res.report.describe())
        for note in res.notes:
            print(f"note: {note}")
        if not args.output:
            sys.stdout.write(format_coloring(res.coloring))
    return EXIT_OK if res.report.is_b_coloring else EXIT_FAIL


def cmd_generate(args) -> int:
    params = _key_values(args.param)
    try:
        d = generate(args.family, seed=args.seed, **params)
    except (KeyError, TypeError) as e:
        raise UsageError(f"bad parameters for {args.family}: {e}") from None
    except ValueError as e:
        raise UsageError(str(e)) from None
    text = format_dgf(d, [f"{args.family} {' '.join(args.param)} seed={args.seed}".rstrip()])
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    if args.json:
        _emit_json({"family": args.family, "seed": args.seed, "n": d.n,
                    "arcs": [[u + 1, v + 1] for u, v in d.arc_list()]})
    elif not args.output:
        sys.stdout.write(text)
    return EXIT_OK


def _parse_sizes(text: str, family: str) -> list[dict]:
    names = [p for p in FAMILIES[family] if p in ("n", "m", "part")]
    sizes = []
    for item in text.split(","):
        values = [int(x) for x in item.split("x")]
        if len(values) != len(names):
            raise UsageError(f"size {item!r} must give {'x'.join(names)} for {family}")
        sizes.append(dict(zip(names, values)))
    return sizes


def cmd_check(args) -> int:
    segments = ()
    if args.enumerate is not None:
        segments += enumerate_segments(args.enumerate)
    if args.family:
        if args.family not in FAMILIES:
            raise UsageError(f"unknown family {args.family!r}")
        if not args.sizes:
            raise UsageError("--family needs --sizes")
        sizes = _parse_sizes(args.sizes, args.family)
        extra = _key_values(args.param)
        segments += family_segments(args.family, [{**s, **extra} for s in sizes], args.trials)
    spec = CheckSpec(args.theorem, segments, args.mode, args.seed)
    try:
        spec.resolved_mode()
    except ValueError as e:
        raise UsageError(str(e)) from None
    report = run_check(spec, workers=args.workers, artifact_dir=args.artifacts)
    if args.json:
        sys.stdout.write(json.dumps(report.to_dict(timing=args.timing), sort_keys=True,
                                    indent=2, ensure_ascii=False) + "\n")
    else:
        print(report.headline())
        if report.skipped:
            print(f"skipped {report.skipped} instances outside the hypothesis")
        for v in report.violations:
            print(f"violation {v['key']}: {v['detail']}")
        if report.violations and args.artifacts:
            print(f"artifacts: {args.artifacts}")
        for key, count in report.summary.items():
            print(f"  {key}: {count}")
        if report.notable:
            print(f"notable instances: {len(report.notable)}")
        if args.timing:
            print(f"elapsed: {report.wall_time:.3f} s")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_enumerate(args) -> int:
    cap = HARD_ENUMERATION_CAP if args.allow_5 else 4
    if args.n > cap:
        raise UsageError(f"n = {args.n} exceeds the enumeration cap {cap}"
                         + ("" if args.allow_5 else " (use --allow-5 for n = 5)"))

    def keep(d) -> bool:
        if args.bipartite and bipartition_of(d) is None:
            return False
        if args.connected and not d.is_weakly_connected():
            return False
        return d.min_degree() >= args.min_degree

    out_dir = Path(args.output) if args.output else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    count = 0
    for d in enumerate_all(args.n, keep, cap=cap):
        count += 1
        if out_dir:
            (out_dir / f"n{args.n}-{count:07d}.dgf").write_text(format_dgf(d), encoding="utf-8")
    if args.json:
        _emit_json({"n": args.n, "count": count})
    else:
        print(f"{count} digraphs on {args.n} vertices")
    return EXIT_OK


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for all randomness (default 0)")

    parser = argparse.ArgumentParser(prog="dibchrom", description="Acyclic b-colourings of digraphs.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="audit a colouring")
    p.add_argument("file")
    p.add_argument("--coloring", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reduce", parents=[common], help="collapse an acyclic colouring to a b-colouring")
    p.add_argument("file")
    p.add_argument("--coloring", required=True)
    p.add_argument("-o", "--output", help="write the final colouring here")
    p.set_defaults(func=cmd_reduce)

    for name, func, helptext in (("dc", cmd_dc, "exact dichromatic number"),
                                 ("dib", cmd_dib, "exact dib-chromatic number")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        if name == "dib":
            p.add_argument("items", nargs="+", metavar="[exact] FILE")
        else:
            p.add_argument("file")
        p.add_argument("-o", "--witness", help="witness colouring path ('-' prints it instead)")
        p.add_argument("--node-limit", type=int, default=0, help="abort after this many search nodes per k")
        p.add_argument("--backend", choices=("cython", "python"), default=None)
        p.add_argument("--timing", action="store_true", help="report elapsed time (not reproducible)")
        p.set_defaults(func=func)

    p = sub.add_parser("bounds", parents=[common], help="lower and upper bounds on dib")
    p.add_argument("file")
    p.add_argument("--no-dc", action="store_true", help="skip the exact dichromatic lower bound")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("construct", parents=[common], help="build a b-colouring by a named construction")
    p.add_argument("theorem", choices=CONSTRUCTIONS)
    p.add_argument("file")
    p.add_argument("--attempts", type=int, default=None, help="random partition attempts")
    p.add_argument("--y1", type=int, help="cross-pair vertex y1 (1-based)")
    p.add_argument("--y2", type=int, help="cross-pair vertex y2 (1-based)")
    p.add_argument("--r", type=int, help="biclique size (default: largest allowed by the threshold)")
    p.add_argument("-o", "--output", help="write the colouring here")
    p.add_argument("--emit-witness", metavar="PATH", help="write the bad path / biclique / partition")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("generate", parents=[common], help="generate a digraph from a family")
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("param", nargs="*", help="family parameters as key=value")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("check", parents=[common], help="run a claim over a corpus")
    p.add_argument("theorem", choices=sorted(CHECKS))
    p.add_argument("--enumerate", type=int, metavar="N", help="all digraphs on 1..N vertices")
    p.add_argument("--family", help="generator family for a custom corpus")
    p.add_argument("--sizes", help="comma-separated sizes, e.g. 3x5,4x6 (n x m) or 4,5 (n)")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--param", action="append", default=[], help="extra family parameter key=value")
    p.add_argument("--mode", choices=("assert", "explore"))
    p.add_argument("--workers", type=int, default=None, help="worker processes (default: DIB_WORKERS or CPU count)")
    p.add_argument("--artifacts", default="check-artifacts", help="directory for violation artifacts")
    p.add_argument("--timing", action="store_true", help="report wall time (not reproducible)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("enumerate", parents=[common], help="enumerate all digraphs on n vertices")
    p.add_argument("n", type=int)
    p.add_argument("--bipartite", action="store_true")
    p.add_argument("--connected", action="store_true")
    p.add_argument("--min-degree", type=int, default=0)
    p.add_argument("--allow-5", action="store_true", help="lift the cap from 4 to 5 vertices")
    p.add_argument("-o", "--output", help="write each digraph as a dgf file into this directory")
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except FormatError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, HypothesisError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
