"""DIMACS-style edge files and plain edge lists.

Format::

    c comment
    p edge <n> <m>
    e <u> <v> [<weight>]

Labels are 1-based in the file and 0-based in memory. A file without a
``p`` line is read as whitespace-separated ``u v [w]`` lines with arbitrary
labels, remapped to ``0..n-1`` in sorted label order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import TextIO

from .graph import Graph, GraphError, build_graph


class InstanceFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass
class Instance:
    n: int
    edges: list[tuple[int, int]]
    weights: list[float] | None = None
    labels: list[str] = field(default_factory=list)
    comments: list[str] = field(default_factory=list)

    def graph(self, dedupe: bool = False) -> Graph:
        try:
            return build_graph(self.edges, self.n, dedupe=dedupe)
        except GraphError as exc:
            raise InstanceFormatError(str(exc)) from None

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v + 1)


def parse_instance(text: str, weighted: bool | None = None) -> Instance:
    lines = text.splitlines()
    first = next((line.split()[0] for line in lines if line.split() and line.split()[0] != "c"), None)
    if first in ("p", "e") or any(line.split()[:1] == ["p"] for line in lines):
        return _parse_dimacs(lines, weighted)
    return _parse_edge_list(lines, weighted)


def _parse_dimacs(lines: list[str], weighted: bool | None) -> Instance:
    n = m = None
    edges = []
    weights: list[float] = []
    comments = []
    for no, raw in enumerate(lines, 1):
        tok = raw.split()
        if not tok:
            continue
        kind = tok[0]
        if kind == "c":
            comments.append(raw[1:].strip())
        elif kind == "p":
            if n is not None:
                raise InstanceFormatError("second problem line", no)
            if len(tok) != 4:
                raise InstanceFormatError("expected 'p edge <n> <m>'", no)
            try:
                n, m = int(tok[2]), int(tok[3])
            except ValueError:
                raise InstanceFormatError("non-integer size in problem line", no) from None
            if n < 0 or m < 0:
                raise InstanceFormatError("negative size in problem line", no)
        elif kind in ("e", "a"):
            if n is None:
                raise InstanceFormatError("edge line before problem line", no)
            want = {False: (3,), True: (4,), None: (3, 4)}[weighted]
            if len(tok) not in want:
                raise InstanceFormatError(f"malformed edge line {raw.strip()!r}", no)
            try:
                u, v = int(tok[1]), int(tok[2])
                if len(tok) == 4:
                    weights.append(float(tok[3]))
            except ValueError:
                raise InstanceFormatError(f"malformed edge line {raw.strip()!r}", no) from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise InstanceFormatError(f"vertex label outside 1..{n}", no)
            edges.append((u - 1, v - 1))
        else:
            raise InstanceFormatError(f"unknown line type {kind!r}", no)
    if n is None:
        raise InstanceFormatError("missing problem line")
    if len(edges) != m:
        raise InstanceFormatError(f"problem line declares {m} edges, found {len(edges)}")
    if weights and len(weights) != len(edges):
        raise InstanceFormatError("some edge lines carry a weight and some do not")
    return Instance(n, edges, weights or None, comments=comments)


def _parse_edge_list(lines: list[str], weighted: bool | None) -> Instance:
    raw_edges = []
    weights: list[float] = []
    comments = []
    for no, raw in enumerate(lines, 1):
        s = raw.strip()
        if not s:
            continue
        if s.startswith(("#", "%", "c ")):
            comments.append(s[1:].strip())
            continue
        tok = s.split()
        want = {False: (2,), True: (3,), None: (2, 3)}[weighted]
        if len(tok) not in want:
            raise InstanceFormatError(f"malformed edge line {s!r}", no)
        if len(tok) == 3:
            try:
                weights.append(float(tok[2]))
            except ValueError:
                raise InstanceFormatError(f"bad weight {tok[2]!r}", no) from None
        raw_edges.append((tok[0], tok[1]))
    if weights and len(weights) != len(raw_edges):
        raise InstanceFormatError("some edge lines carry a weight and some do not")
    labels = sorted({x for e in raw_edges for x in e}, key=_label_key)
    index = {x: i for i, x in enumerate(labels)}
    edges = [(index[a], index[b]) for a, b in raw_edges]
    return Instance(len(labels), edges, weights or None, labels, comments)


def _label_key(x: str):
    try:
        return (0, int(x), "")
    except ValueError:
        return (1, 0, x)


def read_instance(path: str | Path, weighted: bool | None = None) -> Instance:
    return parse_instance(Path(path).read_text(), weighted)


def format_instance(g: Graph, comments: list[str] = (), weights: list[float] | None = None) -> str:
    out = [f"c {c}" for c in comments]
    out.append(f"p edge {g.n} {g.m}")
    if weights is None:
        out.extend(f"e {u + 1} {v + 1}" for u, v in g.edges)
    else:
        out.extend(f"e {u + 1} {v + 1} {_fmt_weight(w)}" for (u, v), w in zip(g.edges, weights))
    return "\n".join(out) + "\n"


def _fmt_weight(w: float) -> str:
    return str(int(w)) if float(w).is_integer() else repr(float(w))


def write_instance(g: Graph, path: str | Path, comments: list[str] = (), weights: list[float] | None = None) -> None:
    Path(path).write_text(format_instance(g, comments, weights))


def write_metadata(path: str | Path, meta: dict) -> None:
    Path(path).write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")


def dump_machine(record: dict, stream: TextIO) -> None:
    stream.write(json.dumps(record, sort_keys=True, separators=(",", ":")) + "\n")
