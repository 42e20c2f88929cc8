"""Simple undirected graphs on dense integer vertices, plus a disjoint-set forest."""

from __future__ import annotations

from bisect import bisect_left
from collections import deque
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised for malformed edge lists (out-of-range endpoint, self-loop, duplicate)."""


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is a sorted tuple of neighbours. ``edges`` lists every edge
    once as ``(u, v)`` with ``u < v``, in ascending order.
    """

    __slots__ = ("n", "adj", "edges", "_nbrsets")

    def __init__(self, n: int, adj: Sequence[Sequence[int]]):
        self.n = n
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        self._nbrsets = [frozenset(a) for a in self.adj]
        self.edges: list[tuple[int, int]] = [
            (u, v) for u in range(n) for v in self.adj[u] if u < v
        ]

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbrsets[u]

    def has_edge_sorted(self, u: int, v: int) -> bool:
        """Edge query by binary search over the sorted neighbour list."""
        a = self.adj[u]
        i = bisect_left(a, v)
        return i < len(a) and a[i] == v

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._nbrsets[v]

    def subgraph(self, vertices: Sequence[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled to ``0..len(vertices)-1``.

        Returns the subgraph and the list mapping new labels to old ones.
        """
        old = list(vertices)
        new_of = {v: i for i, v in enumerate(old)}
        adj = [[new_of[w] for w in self.adj[v] if w in new_of] for v in old]
        return Graph(len(old), adj), old

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(edge_list: Iterable[tuple[int, int]], n: int, dedupe: bool = False) -> Graph:
    """Build a :class:`Graph` from vertex pairs.

    Self-loops and out-of-range endpoints always raise :class:`GraphError`.
    Duplicate edges raise too, unless ``dedupe`` is set, in which case
    repeats (in either orientation) are dropped.
    """
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edge_list:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if v in adj[u]:
            if dedupe:
                continue
            raise GraphError(f"duplicate edge ({u}, {v})")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, adj)


class UnionFind:
    """Disjoint-set forest with path halving and union by size."""

    __slots__ = ("parent", "size")

    def __init__(self, n: int):
        if n < 0:
            raise ValueError("size must be non-negative")
        self.parent = list(range(n))
        self.size = [1] * n

    def make_set(self) -> int:
        """Append a fresh singleton and return its index."""
        self.parent.append(len(self.parent))
        self.size.append(1)
        return len(self.parent) - 1

    def find(self, x: int) -> int:
        if not 0 <= x < len(self.parent):
            raise IndexError(f"element {x} out of range")
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of ``a`` and ``b``; False if they were already joined."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True

    def connected(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)

    def __len__(self) -> int:
        return len(self.parent)


def components(g: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by smallest vertex."""
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comp.sort()
        out.append(comp)
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def bipartition(g: Graph) -> tuple[list[int], list[int]] | None:
    """Two-colouring of a connected graph, or None if it has an odd cycle."""
    colour = [-1] * g.n
    for s in range(g.n):
        if colour[s] != -1:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.adj[v]:
                if colour[w] == -1:
                    colour[w] = 1 - colour[v]
                    queue.append(w)
                elif colour[w] == colour[v]:
                    return None
    return [v for v in range(g.n) if colour[v] == 0], [v for v in range(g.n) if colour[v] == 1]


def has_articulation_point(g: Graph) -> bool:
    """True if removing some single vertex disconnects a connected graph."""
    n = g.n
    if n < 3:
        return False
    disc = [-1] * n
    low = [0] * n
    timer = 0
    root = 0
    disc[root] = low[root] = timer
    timer += 1
    root_children = 0
    # iterative DFS: (vertex, parent, next neighbour index)
    stack = [(root, -1, 0)]
    while stack:
        v, parent, i = stack[-1]
        nbrs = g.adj[v]
        if i < len(nbrs):
            stack[-1] = (v, parent, i + 1)
            w = nbrs[i]
            if disc[w] == -1:
                disc[w] = low[w] = timer
                timer += 1
                if v == root:
                    root_children += 1
                stack.append((w, v, 0))
            elif w != parent:
                low[v] = min(low[v], disc[w])
        else:
            stack.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[v])
                if parent != root and low[v] >= disc[parent]:
                    return True
    return root_children > 1
