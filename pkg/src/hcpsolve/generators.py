"""Benchmark instance families: random, circulant, grid, preferential
attachment, star plus random edges, and perfect c-ary trees."""

from __future__ import annotations

import heapq
import math
import random
from dataclasses import dataclass, field

from .graph import Graph, build_graph, is_connected

MAX_GENERATED_NODES = 10_000_000


@dataclass(frozen=True)
class GenSpec:
    kind: str
    params: dict = field(default_factory=dict)
    seed: int | None = None

    def build(self) -> Graph:
        fn = GENERATORS[self.kind]
        if self.kind in SEEDED:
            return fn(**self.params, seed=self.seed or 0)
        return fn(**self.params)

    @property
    def name(self) -> str:
        vals = "_".join(str(v) for v in self.params.values())
        return f"{self.kind}_{vals}" + (f"_s{self.seed}" if self.kind in SEEDED else "")


def erdos_renyi(n: int, p: float, seed: int = 0) -> Graph:
    """G(n, p). Below p = 0.01 pairs are skipped geometrically instead of tested one by one."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    rng = random.Random(seed)
    edges = []
    if p == 0.0:
        return build_graph(edges, n)
    if p == 1.0:
        return build_graph(((u, v) for u in range(n) for v in range(u + 1, n)), n)
    if p < 0.01:
        # walk the pairs (v, w), w < v, in row-major order with geometric jumps
        log_q = math.log1p(-p)
        total = n * (n - 1) // 2
        v, w = 1, -1
        while v < n:
            r = rng.random()
            skip = math.log1p(-r) / log_q
            if skip >= total:
                break
            w += 1 + int(skip)
            while w >= v and v < n:
                w -= v
                v += 1
            if v < n:
                edges.append((w, v))
    else:
        rand = rng.random
        for u in range(n):
            for v in range(u + 1, n):
                if rand() < p:
                    edges.append((u, v))
    return build_graph(edges, n)


def erdos_renyi_avg_degree(n: int, avg_degree: float, seed: int = 0) -> Graph:
    return erdos_renyi(n, min(1.0, avg_degree / max(n - 1, 1)), seed)


def circulant(n: int, k: int) -> Graph:
    """Vertex i joined to i+1, ..., i+k (mod n); Hamiltonian by construction."""
    if k < 1 or n <= 2 * k:
        raise ValueError(f"circulant needs k >= 1 and n > 2k, got n={n}, k={k}")
    return build_graph(((i, (i + d) % n) for i in range(n) for d in range(1, k + 1)), n)


def grid(rows: int, cols: int) -> Graph:
    """rows x cols lattice; vertex ``r * cols + c``."""
    if rows < 1 or cols < 1:
        raise ValueError("grid dimensions must be positive")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return build_graph(edges, rows * cols)


def grid_known_hcn(rows: int, cols: int) -> int:
    if rows < 2 or cols < 2:
        raise ValueError("closed form only for grids with both sides >= 2")
    return 0 if rows % 2 == 0 or cols % 2 == 0 else 1


def preferential_attachment(n: int, out_degree: int, seed: int = 0) -> Graph:
    """Barabási-Albert growth from a clique on ``out_degree + 1`` vertices.

    Each new vertex picks ``out_degree`` distinct existing vertices with
    probability proportional to degree (duplicates are redrawn).
    """
    if out_degree < 1 or n <= out_degree:
        raise ValueError(f"need n > out_degree >= 1, got n={n}, out_degree={out_degree}")
    rng = random.Random(seed)
    m0 = out_degree + 1
    edges = [(u, v) for u in range(m0) for v in range(u + 1, m0)]
    # each vertex appears once per incident edge
    stubs = [v for e in edges for v in e]
    if not stubs:
        stubs = [0]
    for v in range(m0, n):
        targets: set[int] = set()
        while len(targets) < out_degree:
            targets.add(stubs[rng.randrange(len(stubs))])
        for t in sorted(targets):
            edges.append((t, v))
            stubs.append(t)
            stubs.append(v)
    return build_graph(edges, n)


def star_plus_random(n: int, seed: int = 0) -> Graph:
    """Star K(1, n) with centre 0 plus ``n`` distinct random leaf-leaf edges."""
    if n < 2 or n * (n - 1) // 2 < n:
        raise ValueError(f"cannot place {n} distinct extra edges among {n} leaves")
    rng = random.Random(seed)
    edges = [(0, i) for i in range(1, n + 1)]
    extra: set[tuple[int, int]] = set()
    while len(extra) < n:
        a, b = rng.sample(range(1, n + 1), 2)
        extra.add((min(a, b), max(a, b)))
    edges.extend(sorted(extra))
    return build_graph(edges, n + 1)


def structured_tree(levels: int, children: int) -> Graph:
    """Perfect ``children``-ary tree with ``levels`` levels, numbered breadth first."""
    if levels < 1 or children < 1:
        raise ValueError("levels and children must be positive")
    if children == 1:
        total = levels
    else:
        total = (children**levels - 1) // (children - 1)
    if total > MAX_GENERATED_NODES:
        raise ValueError(f"tree would have {total} nodes (limit {MAX_GENERATED_NODES})")
    internal = total - children ** (levels - 1)
    edges = [(p, p * children + i) for p in range(internal) for i in range(1, children + 1)]
    return build_graph(edges, total)


GENERATORS = {
    "er": erdos_renyi,
    "er-degree": erdos_renyi_avg_degree,
    "circulant": circulant,
    "grid": grid,
    "pa": preferential_attachment,
    "star": star_plus_random,
    "tree": structured_tree,
}
SEEDED = {"er", "er-degree", "pa", "star"}


def benchmark_suite(max_edges: int | None = 2_000_000) -> list[GenSpec]:
    """Parameter sweep covering the six benchmark families.

    ``max_edges`` drops random-graph instances whose expected edge count is
    larger (the densest sweeps reach tens of millions of edges).
    """
    specs = []
    seed = 1
    for e in range(8, 14):
        n = 2**e
        d = 1
        while d <= n:
            expected = min(d, n - 1) * n / 2
            if max_edges is None or expected <= max_edges:
                specs.append(GenSpec("er-degree", {"n": n, "avg_degree": d}, seed))
            seed += 1
            d *= 2
    for n in (500, 1000, 5000, 10000, 30000):
        for k in (3, 5, 10):
            specs.append(GenSpec("circulant", {"n": n, "k": k}))
    for rows, cols in ((15, 20), (17, 19), (2, 5000), (50, 50), (99, 101), (100, 100)):
        specs.append(GenSpec("grid", {"rows": rows, "cols": cols}))
    for n in (300, 1000, 1500, 3000):
        for out in (3, 4, 8):
            specs.append(GenSpec("pa", {"n": n, "out_degree": out}, seed))
            seed += 1
    for n in (1000, 2000, 4000):
        specs.append(GenSpec("star", {"n": n}, seed))
        seed += 1
    specs.append(GenSpec("tree", {"levels": 7, "children": 3}))
    specs.append(GenSpec("tree", {"levels": 10, "children": 2}))
    return specs


def tree_from_prufer(seq: list[int], n: int) -> Graph:
    """Labelled tree on ``n >= 2`` vertices encoded by a Prüfer sequence of length n-2."""
    if n < 2 or len(seq) != n - 2:
        raise ValueError("Prüfer sequence must have length n - 2")
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [i for i in range(n) if degree[i] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return build_graph(edges, n)


def random_tree(n: int, seed: int | random.Random = 0) -> Graph:
    """Uniform random labelled tree."""
    if n == 1:
        return build_graph([], 1)
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    return tree_from_prufer([rng.randrange(n) for _ in range(n - 2)], n)


def random_connected_graph(n: int, p: float, rng: random.Random, tries: int = 1000) -> Graph:
    """G(n, p) conditioned on connectivity by rejection."""
    for _ in range(tries):
        g = erdos_renyi(n, p, rng.randrange(2**63))
        if is_connected(g):
            return g
    raise ValueError(f"no connected G({n}, {p}) found in {tries} tries")
