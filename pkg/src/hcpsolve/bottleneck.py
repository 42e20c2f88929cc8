"""Cover a weighted graph by at most k vertex-disjoint paths while minimising
the largest edge weight used, by binary search over weight thresholds."""

from __future__ import annotations

import math
import random
from bisect import bisect_left
from dataclasses import dataclass, replace
from typing import Callable

from .graph import Graph, GraphError, build_graph
from .oracle import exact_hcn, exact_ppn
from .search import SolverParams, hamiltonian_completion_edges, solve_disconnected
from .treepath import PathPartition


class InfeasibleError(ValueError):
    pass


@dataclass
class WeightedGraph:
    graph: Graph
    weights: dict[tuple[int, int], float]

    def __post_init__(self):
        if set(self.weights) != set(self.graph.edges):
            raise GraphError("weights must be given for exactly the edges of the graph")
        if not all(math.isfinite(w) for w in self.weights.values()):
            raise GraphError("edge weights must be finite")

    @classmethod
    def from_edges(cls, n: int, edges: list[tuple[int, int, float]], dedupe: bool = False) -> "WeightedGraph":
        weights: dict[tuple[int, int], float] = {}
        for u, v, w in edges:
            key = (u, v) if u < v else (v, u)
            if key in weights and dedupe:
                continue
            weights[key] = float(w)
        g = build_graph([(u, v) for u, v, _ in edges], n, dedupe=dedupe)
        return cls(g, weights)

    @property
    def n(self) -> int:
        return self.graph.n

    def weight(self, u: int, v: int) -> float:
        return self.weights[(u, v) if u < v else (v, u)]


@dataclass
class BottleneckResult:
    threshold: float | None
    paths: list[list[int]]
    certificate_edges: list[tuple[int, int]]
    # true when the inner solver was heuristic, so ``threshold`` is only an upper bound
    upper_bound: bool
    evaluations: int = 0


# inner solver: threshold graph -> (added edge count, witness partition, added edges)
InnerSolver = Callable[[Graph], tuple[int, PathPartition, list[tuple[int, int]]]]


def threshold_subgraph(wg: WeightedGraph, w: float) -> Graph:
    """Same vertices, keeping only edges of weight at most ``w``."""
    return build_graph([e for e, x in wg.weights.items() if x <= w], wg.n)


def exact_inner(g: Graph) -> tuple[int, PathPartition, list[tuple[int, int]]]:
    count, part = exact_ppn(g)
    if g.n < 3:
        return count, part, []
    hcn = exact_hcn(g)
    if hcn == 0:
        return 0, part, []
    return hcn, part, hamiltonian_completion_edges(g, part)


def heuristic_inner(params: SolverParams) -> InnerSolver:
    def solve(g: Graph):
        if g.n < 3:
            part = PathPartition([list(range(g.n))] if g.n == 2 and g.m else [[v] for v in range(g.n)], g.n)
            return len(part), part, []
        sol = solve_disconnected(g, params)
        return sol.hcn_estimate, sol.partition, sol.added_edges

    return solve


def _max_path_weight(wg: WeightedGraph, paths) -> float | None:
    ws = [wg.weight(a, b) for p in paths for a, b in zip(p, p[1:])]
    return max(ws) if ws else None


def solve_bottleneck(
    wg: WeightedGraph,
    k: int,
    params: SolverParams | None = None,
    inner: InnerSolver | str = "heuristic",
) -> BottleneckResult:
    """Smallest weight ``w`` such that the threshold graph is covered by at most ``k`` paths.

    Candidates are the distinct edge weights. A witness accepted at some
    ``w`` stays valid for every larger threshold, so after an acceptance the
    upper end of the search drops to the witness's own largest edge weight.
    """
    params = params or SolverParams()
    if k < 1:
        raise InfeasibleError("k must be at least 1")
    upper_bound = inner != "exact"
    weights = sorted(set(wg.weights.values()))
    if not weights:
        if k < wg.n:
            raise InfeasibleError(f"an edgeless graph needs {wg.n} paths")
        return BottleneckResult(None, [[v] for v in range(wg.n)], [], False)

    budget = params.time_limit / max(1, math.ceil(math.log2(len(weights))) if len(weights) > 1 else 1)
    seeds = random.Random(f"{params.seed}/bottleneck")

    def make_inner(i: int) -> InnerSolver:
        if inner == "exact":
            return exact_inner
        if inner == "heuristic":
            return heuristic_inner(replace(params, time_limit=budget, seed=seeds.randrange(2**63) ^ i))
        return inner

    def feasible(i: int):
        added, part, cert = make_inner(i)(threshold_subgraph(wg, weights[i]))
        return added <= k, part, cert

    evaluations = 0
    lo, hi = 0, len(weights) - 1
    evaluations += 1
    ok, part, cert = feasible(hi)
    if not ok:
        raise InfeasibleError(f"no cover by {k} paths exists even using every edge (found {len(part)})")
    best = (part, cert)
    hi = _witness_index(wg, weights, part.paths, hi)
    while lo < hi:
        mid = (lo + hi) // 2
        evaluations += 1
        ok, part, cert = feasible(mid)
        if ok:
            best = (part, cert)
            hi = _witness_index(wg, weights, part.paths, mid)
        else:
            lo = mid + 1
    part, cert = best
    return BottleneckResult(weights[hi], [list(p) for p in part.paths], list(cert), upper_bound, evaluations)


def _witness_index(wg, weights, paths, fallback: int) -> int:
    top = _max_path_weight(wg, paths)
    if top is None:
        return 0
    return min(fallback, bisect_left(weights, top))


def brute_force_bottleneck(wg: WeightedGraph, k: int) -> float | None:
    """Exact optimum by DP over vertex subsets, independent of any HCP solver.

    ``path_cost[S]`` is the least possible largest edge weight of a single
    path through exactly ``S``; covers then combine subsets. Returns the
    smallest distinct edge weight when no edge is needed at all.
    """
    n = wg.n
    if n > 12:
        raise ValueError("brute force limited to n <= 12")
    inf = math.inf
    size = 1 << n
    # end[S][v]: min bottleneck of a path covering S ending at v
    end = [[inf] * n for _ in range(size)]
    for v in range(n):
        end[1 << v][v] = -inf
    adj = wg.graph.adj
    for mask in range(1, size):
        row = end[mask]
        for v in range(n):
            c = row[v]
            if c == inf:
                continue
            for w in adj[v]:
                if mask >> w & 1:
                    continue
                nxt = mask | (1 << w)
                val = max(c, wg.weight(v, w))
                if val < end[nxt][w]:
                    end[nxt][w] = val
    path_cost = [min(row) for row in end]
    # cover[S]: min bottleneck covering S with at most j paths after j rounds
    cover = [inf] * size
    cover[0] = -inf
    best = inf
    for _ in range(k):
        nxt = [inf] * size
        for mask in range(1, size):
            low = mask & -mask
            # the path holding the lowest vertex of mask
            sub = mask
            b = inf
            while sub:
                if sub & low:
                    rest = mask ^ sub
                    val = max(path_cost[sub], cover[rest])
                    if val < b:
                        b = val
                sub = (sub - 1) & mask
            nxt[mask] = b
        cover = [min(a, b) for a, b in zip(cover, nxt)]
        best = min(best, cover[size - 1])
    if best == inf:
        return None
    weights = sorted(set(wg.weights.values()))
    if best == -inf:
        return weights[0] if weights else None
    return best
