"""Path partitions and the exact linear-time minimum path partition of a tree."""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from .graph import Graph


class NotATreeError(ValueError):
    pass


class PathPartition:
    """Vertex-disjoint paths covering ``0..n-1``.

    ``path_of[v]`` is the index of the path holding ``v`` and
    ``position[v]`` its index within that path.
    """

    __slots__ = ("paths", "path_of", "position")

    def __init__(self, paths: Iterable[Sequence[int]], n: int | None = None):
        self.paths: list[list[int]] = [list(p) for p in paths]
        if n is None:
            n = sum(len(p) for p in self.paths)
        self.path_of = [-1] * n
        self.position = [-1] * n
        for i, p in enumerate(self.paths):
            if not p:
                raise ValueError("empty path in partition")
            for j, v in enumerate(p):
                if not 0 <= v < n or self.path_of[v] != -1:
                    raise ValueError(f"vertex {v} repeated or out of range")
                self.path_of[v] = i
                self.position[v] = j
        if n and min(self.path_of) == -1:
            raise ValueError("partition does not cover every vertex")

    @property
    def n(self) -> int:
        return len(self.path_of)

    def __len__(self) -> int:
        return len(self.paths)

    @property
    def path_count(self) -> int:
        return len(self.paths)

    def endpoints(self) -> list[tuple[int, int]]:
        return [(p[0], p[-1]) for p in self.paths]

    def edges(self) -> list[tuple[int, int]]:
        """Consecutive pairs along every path, canonical ``(min, max)`` orientation."""
        out = []
        for p in self.paths:
            for a, b in zip(p, p[1:]):
                out.append((a, b) if a < b else (b, a))
        return out

    def is_valid_for(self, g: Graph) -> bool:
        if self.n != g.n:
            return False
        return all(g.has_edge(a, b) for p in self.paths for a, b in zip(p, p[1:]))

    def __repr__(self) -> str:
        return f"PathPartition({self.paths!r})"


class SpanningTree:
    """Active edge set of a host graph forming a spanning tree.

    The minimum path partition is computed lazily and cached, since the
    local search asks for it once per perturbation.
    """

    __slots__ = ("n", "edges", "_partition")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], check: bool = False):
        self.n = n
        self.edges = [(u, v) if u < v else (v, u) for u, v in edges]
        self._partition: PathPartition | None = None
        if check:
            _tree_order(n, tree_adjacency(n, self.edges))

    def adjacency(self) -> list[list[int]]:
        return tree_adjacency(self.n, self.edges)

    def partition(self) -> PathPartition:
        if self._partition is None:
            self._partition = tree_min_path_partition(self)
        return self._partition

    def is_spanning_tree_of(self, g: Graph) -> bool:
        if self.n != g.n or len(self.edges) != max(self.n - 1, 0):
            return False
        if not all(g.has_edge(u, v) for u, v in self.edges):
            return False
        try:
            _tree_order(self.n, self.adjacency())
        except NotATreeError:
            return False
        return True


def tree_adjacency(n: int, edges: Iterable[tuple[int, int]]) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


def _tree_order(n: int, adj: Sequence[Sequence[int]]) -> tuple[list[int], list[int]]:
    """BFS order and parent array from root 0; raises if ``adj`` is not a tree."""
    if n == 0:
        raise NotATreeError("empty graph")
    if sum(len(a) for a in adj) != 2 * (n - 1):
        raise NotATreeError("a tree on n vertices has exactly n-1 edges")
    parent = [-1] * n
    parent[0] = 0
    order = [0]
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if parent[w] == -1:
                parent[w] = v
                order.append(w)
                queue.append(w)
    if len(order) != n:
        raise NotATreeError("graph is not connected")
    parent[0] = -1
    return order, parent


def _as_tree_adjacency(t: SpanningTree | Graph) -> tuple[int, Sequence[Sequence[int]]]:
    if isinstance(t, SpanningTree):
        return t.n, t.adjacency()
    return t.n, t.adj


def _links_to_paths(n: int, link: list[list[int]]) -> list[list[int]]:
    """Walk the degree-<=2 acyclic link graph into paths, smallest endpoint first."""
    seen = [False] * n
    paths = []
    for s in range(n):
        if seen[s] or len(link[s]) == 2:
            continue
        path = [s]
        seen[s] = True
        prev, cur = -1, s
        while True:
            nxt = -1
            for w in link[cur]:
                if w != prev:
                    nxt = w
                    break
            if nxt == -1:
                break
            path.append(nxt)
            seen[nxt] = True
            prev, cur = cur, nxt
        paths.append(path)
    return paths


def tree_min_path_partition(
    t: SpanningTree | Graph, root: int = 0, stats: dict | None = None
) -> PathPartition:
    """Minimum path partition of a tree in O(n).

    Bottom-up greedy: a vertex with ``k`` children whose paths still end at
    the child links to ``min(k, 2)`` of them (lowest index first) and stays
    open to its parent only when ``k <= 1``.
    """
    n, adj = _as_tree_adjacency(t)
    if root != 0:
        # relabel nothing: BFS from the requested root instead
        order, parent = _tree_order_from(n, adj, root)
    else:
        order, parent = _tree_order(n, adj)
    link: list[list[int]] = [[] for _ in range(n)]
    pending: list[list[int]] = [[] for _ in range(n)]
    ops = 0
    for v in reversed(order):
        waiting = pending[v]
        k = len(waiting)
        ops += 1 + k
        if k >= 3:
            waiting = sorted(waiting)[:2]
        for c in waiting:
            link[v].append(c)
            link[c].append(v)
        if k <= 1 and parent[v] != -1:
            pending[parent[v]].append(v)
    if stats is not None:
        stats["ops"] = stats.get("ops", 0) + ops
    return PathPartition(_links_to_paths(n, link), n)


def _tree_order_from(n, adj, root):
    if not 0 <= root < n:
        raise ValueError(f"root {root} out of range")
    # reuse the root-0 checks, then BFS from the requested root
    _tree_order(n, adj)
    parent = [-2] * n
    parent[root] = -1
    order = [root]
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if parent[w] == -2:
                parent[w] = v
                order.append(w)
                queue.append(w)
    return order, parent


def ppn_of_tree(t: SpanningTree | Graph) -> int:
    if isinstance(t, SpanningTree):
        return t.partition().path_count
    return tree_min_path_partition(t).path_count
