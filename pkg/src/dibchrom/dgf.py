"""Text formats: ``dgf`` digraphs and vertex colourings.

dgf::

    c optional comment
    p dib <n> <arc-count>
    a <u> <v>          (1-based, meaning u -> v)

Colouring files hold one ``<vertex> <colour>`` line per vertex, both 1-based.
"""
from __future__ import annotations

from pathlib import Path

from .coloring import Coloring
from .digraph import Digraph

__all__ = ["FormatError", "parse_dgf", "read_dgf", "format_dgf", "write_dgf",
           "parse_coloring", "read_coloring", "format_coloring", "write_coloring"]


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.message, self.line, self.path = message, line, path
        where = [str(path)] if path is not None else []
        if line is not None:
            where.append(f"line {line}")
        super().__init__(": ".join(where + [message]))

    def at(self, path: str | Path) -> FormatError:
        return FormatError(self.message, self.line, str(path))


def parse_dgf(text: str) -> Digraph:
    n = expected = None
    arcs: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if n is not None:
                raise FormatError("second header", lineno)
            if len(fields) != 4 or fields[1] != "dib":
                raise FormatError("header must be 'p dib <n> <arc-count>'", lineno)
            n, expected = _ints(fields[2:], lineno)
            if n < 0 or expected < 0:
                raise FormatError("negative count in header", lineno)
        elif fields[0] == "a":
            if n is None:
                raise FormatError("arc before header", lineno)
            if len(fields) != 3:
                raise FormatError("arc line must be 'a <u> <v>'", lineno)
            u, v = _ints(fields[1:], lineno)
            for x in (u, v):
                if not 1 <= x <= n:
                    raise FormatError(f"endpoint {x} out of range 1..{n}", lineno)
            if u == v:
                raise FormatError(f"loop at vertex {u}", lineno)
            if (u - 1, v - 1) in arcs:
                raise FormatError(f"duplicate arc {u} {v}", lineno)
            arcs.add((u - 1, v - 1))
        else:
            raise FormatError(f"unrecognised line {line!r}", lineno)
    if n is None:
        raise FormatError("missing 'p dib' header")
    if len(arcs) != expected:
        raise FormatError(f"header announces {expected} arcs, found {len(arcs)}")
    return Digraph(n, frozenset(arcs))


def _ints(fields: list[str], lineno: int) -> list[int]:
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise FormatError(f"expected integers, got {' '.join(fields)!r}", lineno) from None


def format_dgf(d: Digraph, comments: list[str] | None = None) -> str:
    lines = [f"c {c}" for c in comments or []]
    lines.append(f"p dib {d.n} {len(d.arcs)}")
    lines += [f"a {u + 1} {v + 1}" for u, v in d.arc_list()]
    return "\n".join(lines) + "\n"


def read_dgf(path: str | Path) -> Digraph:
    try:
        return parse_dgf(Path(path).read_text(encoding="utf-8"))
    except FormatError as e:
        raise e.at(path) from None


def write_dgf(path: str | Path, d: Digraph, comments: list[str] | None = None) -> None:
    Path(path).write_text(format_dgf(d, comments), encoding="utf-8", newline="\n")


def parse_coloring(text: str, n: int) -> Coloring:
    colour: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise FormatError("expected '<vertex> <colour>'", lineno)
        v, c = _ints(fields, lineno)
        if not 1 <= v <= n:
            raise FormatError(f"vertex {v} out of range 1..{n}", lineno)
        if c < 1:
            raise FormatError(f"colour {c} must be positive", lineno)
        if v - 1 in colour:
            raise FormatError(f"vertex {v} coloured twice", lineno)
        colour[v - 1] = c
    missing = [v + 1 for v in range(n) if v not in colour]
    if missing:
        raise FormatError(f"vertices {missing} have no colour")
    try:
        return Coloring([colour[v] for v in range(n)])
    except ValueError as e:
        raise FormatError(str(e)) from None


def format_coloring(c: Coloring) -> str:
    return "".join(f"{v + 1} {col}\n" for v, col in enumerate(c.colors))


def read_coloring(path: str | Path, n: int) -> Coloring:
    try:
        return parse_coloring(Path(path).read_text(encoding="utf-8"), n)
    except FormatError as e:
        raise e.at(path) from None


def write_coloring(path: str | Path, c: Coloring) -> None:
    Path(path).write_text(format_coloring(c), encoding="utf-8", newline="\n")
