"""Exponential exact solvers for small graphs, used to check the heuristics."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterator

from .graph import Graph
from .treepath import PathPartition, SpanningTree

MAX_ORACLE_N = 16
MAX_ENUM_TREES_N = 8
MAX_PERMUTATION_N = 8


class OracleLimitError(ValueError):
    pass


@dataclass
class OracleResult:
    exact_ppn: int
    exact_hcn: int
    witness: PathPartition


def _adj_masks(g: Graph) -> list[int]:
    masks = []
    for v in range(g.n):
        m = 0
        for w in g.adj[v]:
            m |= 1 << w
        masks.append(m)
    return masks


def exact_ppn(g: Graph) -> tuple[int, PathPartition]:
    """Minimum path partition by subset DP.

    ``best[S][v]`` is the fewest paths covering ``S`` with the last path
    ending at ``v``; appending ``w`` costs a new path unless ``v ~ w``.
    """
    n = g.n
    if n > MAX_ORACLE_N:
        raise OracleLimitError(f"exact oracle limited to n <= {MAX_ORACLE_N}, got {n}")
    if n == 0:
        return 0, PathPartition([], 0)
    adj = _adj_masks(g)
    full = (1 << n) - 1
    inf = n + 1
    best = [[inf] * n for _ in range(1 << n)]
    back = [[-1] * n for _ in range(1 << n)]
    for v in range(n):
        best[1 << v][v] = 1
    # masks in increasing numeric order visit every subset before its supersets
    for mask in range(1, full + 1):
        row = best[mask]
        for v in range(n):
            cost = row[v]
            if cost == inf:
                continue
            av = adj[v]
            rest = full & ~mask
            while rest:
                low = rest & -rest
                w = low.bit_length() - 1
                rest ^= low
                c = cost if av >> w & 1 else cost + 1
                nxt = mask | low
                if c < best[nxt][w]:
                    best[nxt][w] = c
                    back[nxt][w] = v
    end = min(range(n), key=lambda v: best[full][v])
    count = best[full][end]
    order = []
    mask, v = full, end
    while v != -1:
        order.append(v)
        prev = back[mask][v]
        mask ^= 1 << v
        v = prev
    order.reverse()
    paths = [[order[0]]]
    for a, b in zip(order, order[1:]):
        if adj[a] >> b & 1:
            paths[-1].append(b)
        else:
            paths.append([b])
    assert len(paths) == count
    return count, PathPartition(paths, n)


def is_hamiltonian(g: Graph) -> bool:
    """Hamiltonian cycle test by subset DP over paths starting at vertex 0."""
    n = g.n
    if n > MAX_ORACLE_N:
        raise OracleLimitError(f"exact oracle limited to n <= {MAX_ORACLE_N}, got {n}")
    if n < 3:
        return False
    adj = _adj_masks(g)
    full = (1 << n) - 1
    # ends[S]: bitmask of vertices v such that a path 0 -> v covers exactly S
    ends = [0] * (1 << n)
    ends[1] = 1
    for mask in range(1, full + 1, 2):
        e = ends[mask]
        while e:
            low = e & -e
            v = low.bit_length() - 1
            e ^= low
            ext = adj[v] & ~mask
            while ext:
                lw = ext & -ext
                ext ^= lw
                ends[mask | lw] |= lw
    return bool(ends[full] & adj[0])


def exact_hcn(g: Graph) -> int:
    if g.n < 3:
        raise OracleLimitError("Hamiltonian completion is defined here for n >= 3")
    if is_hamiltonian(g):
        return 0
    return exact_ppn(g)[0]


def exact_solve(g: Graph) -> OracleResult:
    ppn, witness = exact_ppn(g)
    hcn = exact_hcn(g) if g.n >= 3 else ppn
    return OracleResult(ppn, hcn, witness)


def ppn_by_permutations(g: Graph) -> int:
    """Brute force: every path partition is some vertex order cut at non-edges."""
    n = g.n
    if n > MAX_PERMUTATION_N:
        raise OracleLimitError(f"permutation oracle limited to n <= {MAX_PERMUTATION_N}")
    if n == 0:
        return 0
    best = n
    for order in permutations(range(n)):
        breaks = 1 + sum(1 for a, b in zip(order, order[1:]) if not g.has_edge(a, b))
        if breaks < best:
            best = breaks
    return best


def enumerate_spanning_trees(g: Graph) -> Iterator[SpanningTree]:
    """Yield every spanning tree once by include/exclude backtracking over edges."""
    n = g.n
    if n > MAX_ENUM_TREES_N:
        raise OracleLimitError(f"spanning tree enumeration limited to n <= {MAX_ENUM_TREES_N}")
    if n == 0:
        return
    edges = g.edges
    m = len(edges)
    need = n - 1
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    chosen: list[tuple[int, int]] = []

    def rec(i):
        if len(chosen) == need:
            yield SpanningTree(n, list(chosen))
            return
        if m - i < need - len(chosen):
            return
        u, v = edges[i]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            chosen.append(edges[i])
            yield from rec(i + 1)
            chosen.pop()
            parent[ru] = ru
        yield from rec(i + 1)

    yield from rec(0)
