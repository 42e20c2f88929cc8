"""Multi-start local search over spanning trees for Hamiltonian completion.

The search state is a spanning tree. Its exact minimum path partition
(:func:`tree_min_path_partition`) is an upper bound on the graph's path
partition number, and perturbing the tree never makes that bound worse.
"""

from __future__ import annotations

import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Sequence

from .graph import Graph, UnionFind, bipartition, components, has_articulation_point
from .tour import TourProvider, build_initial_tour, tour_to_path_partition
from .treepath import PathPartition, SpanningTree, tree_min_path_partition


class DisconnectedGraphError(ValueError):
    pass


@dataclass(frozen=True)
class SolverParams:
    preferred_ratio: float = 25.0
    max_initial_trees: int = 10
    max_bad_perturbations: int = 3000
    time_limit: float = 1000.0
    seed: int = 0
    tour_provider: TourProvider | None = None
    # how a cycle edge is dropped when a cycle is joined: "random" or "first"
    cycle_edge_choice: str = "random"
    # stop once the estimate meets a proven lower bound
    certify: bool = True
    # try rotations on a lone non-closable Hamiltonian path before settling for 1
    endpoint_rotations: bool = True
    parallel: int = 1

    def __post_init__(self):
        if not self.preferred_ratio > 0:
            raise ValueError("preferred_ratio must be positive")
        if self.max_initial_trees < 1:
            raise ValueError("max_initial_trees must be at least 1")
        if self.max_bad_perturbations < 0:
            raise ValueError("max_bad_perturbations must be non-negative")
        if self.cycle_edge_choice not in ("random", "first"):
            raise ValueError("cycle_edge_choice must be 'random' or 'first'")

    @property
    def label(self) -> str:
        ratio = int(self.preferred_ratio) if float(self.preferred_ratio).is_integer() else self.preferred_ratio
        return f"MSLS_{ratio}_{self.max_initial_trees}_{self.max_bad_perturbations}"


@dataclass
class HcpSolution:
    hcn_estimate: int
    added_edges: list[tuple[int, int]]
    partition: PathPartition
    elapsed: float = 0.0
    restarts_used: int = 0
    perturbations_used: int = 0
    interrupted: bool = False
    certified: bool = False
    first_found: float = 0.0

    def hamiltonian_cycle(self) -> list[int]:
        """Vertex order of the cycle obtained by linking the paths end to start."""
        return [v for p in self.partition.paths for v in p]


def restart_rng(seed: int, restart: int) -> random.Random:
    return random.Random(f"{seed}/{restart}")


# --- rotation moves ----------------------------------------------------------


def _rotation_choices(g: Graph, path: Sequence[int], index_of) -> list[int]:
    k = len(path)
    if k < 4:
        return []
    out = []
    for w in g.adj[path[-1]]:
        j = index_of(w)
        # 0-based j with 1 <= j <= k-3, i.e. neither the first vertex nor the predecessor
        if j is not None and 1 <= j <= k - 3:
            out.append(j)
    return out


def apply_rotation_move(g: Graph, path: Sequence[int], rng: random.Random) -> list[int]:
    """Pósa rotation at the last vertex.

    With ``path = v1..vk`` and an edge ``(vi, vk)`` for some ``1 < i < k-1``,
    return ``v1..vi, vk, v(k-1), .., v(i+1)``. The ``i`` is drawn uniformly
    among valid choices; the path comes back unchanged when none exists.
    """
    where = {v: i for i, v in enumerate(path)}
    choices = _rotation_choices(g, path, where.get)
    path = list(path)
    if not choices:
        return path
    j = choices[rng.randrange(len(choices))] if len(choices) > 1 else choices[0]
    path[j + 1 :] = path[:j:-1]
    return path


def _rotate_all(g: Graph, paths: list[list[int]], rng: random.Random) -> list[list[int]]:
    n = g.n
    owner = [0] * n
    pos = [0] * n
    for pi, p in enumerate(paths):
        for j, v in enumerate(p):
            owner[v] = pi
            pos[v] = j
    out = []
    for pi, p in enumerate(paths):
        if len(p) >= 4:
            choices = _rotation_choices(g, p, lambda w: pos[w] if owner[w] == pi else None)
            if choices:
                j = choices[rng.randrange(len(choices))] if len(choices) > 1 else choices[0]
                p = p[: j + 1] + p[:j:-1]
        out.append(p)
    return out


# --- partition -> spanning tree ------------------------------------------------


def add_edges(
    g: Graph, partition: PathPartition | Sequence[Sequence[int]], preferred_ratio: float, rng: random.Random
) -> SpanningTree:
    """Complete the path edges to a spanning tree of ``g``.

    Edges touching a path endpoint are preferred: each draw takes a random
    preferred edge with probability ``ratio / (ratio + 1)``, otherwise a
    random normal edge, falling back to whichever category is non-empty.
    Draws that would close a cycle are discarded.
    """
    paths = partition.paths if isinstance(partition, PathPartition) else [list(p) for p in partition]
    n = g.n
    owner = [0] * n
    pos = [0] * n
    is_end = [False] * n
    uf = UnionFind(n)
    parent = uf.parent
    tree_edges = []
    for pi, p in enumerate(paths):
        head = p[0]
        for j, v in enumerate(p):
            owner[v] = pi
            pos[v] = j
            parent[v] = head
        uf.size[head] = len(p)
        is_end[p[0]] = is_end[p[-1]] = True
        for a, b in zip(p, p[1:]):
            tree_edges.append((a, b) if a < b else (b, a))

    need = len(paths) - 1
    if need == 0:
        return SpanningTree(n, tree_edges)
    preferred = []
    normal = []
    for e in g.edges:
        u, v = e
        if owner[u] == owner[v] and abs(pos[u] - pos[v]) == 1:
            continue
        if is_end[u] or is_end[v]:
            preferred.append(e)
        else:
            normal.append(e)

    p_pref = preferred_ratio / (preferred_ratio + 1.0)
    rand = rng.random
    while need:
        if preferred and (not normal or rand() < p_pref):
            bucket = preferred
        elif normal:
            bucket = normal
        else:
            raise DisconnectedGraphError("graph is disconnected; no spanning tree exists")
        i = int(rand() * len(bucket))
        e = bucket[i]
        bucket[i] = bucket[-1]
        bucket.pop()
        if uf.union(e[0], e[1]):
            tree_edges.append(e)
            need -= 1
    return SpanningTree(n, tree_edges)


def make_tree(
    g: Graph, partition: PathPartition | Sequence[Sequence[int]], params: SolverParams, rng: random.Random
) -> SpanningTree:
    """Rotate every path where possible, then complete to a spanning tree."""
    paths = partition.paths if isinstance(partition, PathPartition) else [list(p) for p in partition]
    return add_edges(g, _rotate_all(g, paths, rng), params.preferred_ratio, rng)


# --- perturbation ------------------------------------------------------------


def join_structures(
    g: Graph, paths: Sequence[Sequence[int]], rng: random.Random, choice: str = "random", trace=None
) -> list[list[int]]:
    """Close closable paths into cycles, merge structures along graph edges,
    then reopen leftover cycles; returns the new (never larger) path list.

    ``trace``, if given, is called after every join with the current
    numbers of open paths and cycles.
    """
    n = g.n
    nb: list[list[int]] = [[] for _ in range(n)]
    sid = [0] * n
    k = len(paths)
    uf_parent = list(range(k))
    is_cycle = [False] * k
    ends = [(0, 0)] * k
    for s, p in enumerate(paths):
        for v in p:
            sid[v] = s
        for a, b in zip(p, p[1:]):
            nb[a].append(b)
            nb[b].append(a)
        a, b = p[0], p[-1]
        ends[s] = (a, b)
        if len(p) >= 3 and g.has_edge(a, b):
            nb[a].append(b)
            nb[b].append(a)
            is_cycle[s] = True

    def find(s):
        while uf_parent[s] != s:
            uf_parent[s] = uf_parent[uf_parent[s]]
            s = uf_parent[s]
        return s

    def other(s, x):
        a, b = ends[s]
        return b if a == x else a

    def pick(nbrs):
        if choice == "first":
            return nbrs[0]
        return nbrs[0] if rng.random() < 0.5 else nbrs[1]

    def cut(x, y):
        nb[x].remove(y)
        nb[y].remove(x)

    n_paths = k - sum(is_cycle)
    n_cycles = k - n_paths
    for u, v in g.edges:
        su = find(sid[u])
        sv = find(sid[v])
        if su == sv:
            continue
        cu, cv = is_cycle[su], is_cycle[sv]
        if not cu and not cv:
            if len(nb[u]) > 1 or len(nb[v]) > 1:
                continue
            new_ends = (other(su, u), other(sv, v))
            n_paths -= 1
        elif cu and cv:
            x = pick(nb[u])
            y = pick(nb[v])
            cut(u, x)
            cut(v, y)
            new_ends = (x, y)
            n_cycles -= 2
            n_paths += 1
        else:
            if cu:
                u, v, su, sv = v, u, sv, su
            # u on the path, v on the cycle
            if len(nb[u]) > 1:
                continue
            x = pick(nb[v])
            cut(v, x)
            new_ends = (other(su, u), x)
            n_cycles -= 1
        nb[u].append(v)
        nb[v].append(u)
        uf_parent[sv] = su
        is_cycle[su] = False
        ends[su] = new_ends
        if trace is not None:
            trace(n_paths, n_cycles)

    # reopen the cycles nobody joined
    for s, p in enumerate(paths):
        if find(s) == s and is_cycle[s]:
            cyc = _walk_cycle(nb, p[0])
            i = 0 if choice == "first" else rng.randrange(len(cyc))
            cut(cyc[i], cyc[(i + 1) % len(cyc)])
    return _walk_paths(nb)


def _walk_cycle(nb, start):
    cyc = [start]
    prev, cur = start, nb[start][0]
    while cur != start:
        cyc.append(cur)
        a, b = nb[cur]
        prev, cur = cur, (b if a == prev else a)
    return cyc


def _walk_paths(nb) -> list[list[int]]:
    n = len(nb)
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s] or len(nb[s]) == 2:
            continue
        path = [s]
        seen[s] = True
        prev, cur = -1, s
        while True:
            nxt = -1
            for w in nb[cur]:
                if w != prev:
                    nxt = w
                    break
            if nxt == -1:
                break
            path.append(nxt)
            seen[nxt] = True
            prev, cur = cur, nxt
        out.append(path)
    return out


def perturb(g: Graph, t: SpanningTree, params: SolverParams, rng: random.Random) -> SpanningTree:
    """One perturbation: tree partition, structure joins, rotations, completion.

    The returned tree's path partition number is at most that of ``t``.
    """
    paths = t.partition().paths
    joined = join_structures(g, paths, rng, params.cycle_edge_choice)
    return make_tree(g, joined, params, rng)


# --- estimates and lower bounds ----------------------------------------------


def estimate_hcn_from_partition(g: Graph, partition: PathPartition) -> int:
    k = partition.path_count
    if k > 1:
        return k
    p = partition.paths[0]
    return 0 if len(p) >= 3 and g.has_edge(p[0], p[-1]) else 1


def ppn_lower_bound(g: Graph) -> int:
    """Cheap lower bound on the path partition number of a connected graph.

    Every degree-1 vertex ends a path, and in a bipartite graph each path
    covers at most one more vertex of the larger side than of the smaller.
    """
    if g.n == 0:
        return 0
    leaves = sum(1 for v in range(g.n) if g.degree(v) == 1)
    bound = max(1, math.ceil(leaves / 2))
    parts = bipartition(g)
    if parts is not None:
        bound = max(bound, abs(len(parts[0]) - len(parts[1])))
    return bound


def hcn_lower_bound(g: Graph) -> int:
    """Lower bound on the Hamiltonian completion number (connected g, n >= 3)."""
    ppn_lb = ppn_lower_bound(g)
    if ppn_lb >= 2:
        return ppn_lb
    if any(g.degree(v) < 2 for v in range(g.n)):
        return 1
    parts = bipartition(g)
    if parts is not None and len(parts[0]) != len(parts[1]):
        return 1
    if has_articulation_point(g):
        return 1
    return 0


def _probe_rotations(g: Graph, path: list[int], rng: random.Random, attempts: int) -> list[int] | None:
    """Rotate a Hamiltonian path, alternating ends, until its endpoints are adjacent.

    Returns the closable path, or None after ``attempts`` rotations.
    """
    path = list(path)
    has = g.has_edge
    for t in range(attempts):
        if has(path[0], path[-1]):
            return path
        if t % 2:
            path.reverse()
        k = len(path)
        # rotating at position j makes path[j + 1] the new end
        choices = [j for j in (path.index(w) for w in g.adj[path[-1]]) if 1 <= j <= k - 3]
        if not choices:
            continue
        for j in choices:
            if has(path[0], path[j + 1]):
                path[j + 1 :] = path[:j:-1]
                return path
        j = choices[rng.randrange(len(choices))]
        path[j + 1 :] = path[:j:-1]
    return path if has(path[0], path[-1]) else None


def hamiltonian_completion_edges(g: Graph, partition: PathPartition) -> list[tuple[int, int]]:
    """Edges linking each path's end to the next path's start, cyclically."""
    paths = partition.paths
    k = len(paths)
    if k == 1:
        p = paths[0]
        if len(p) >= 3 and g.has_edge(p[0], p[-1]):
            return []
        return [(min(p[-1], p[0]), max(p[-1], p[0]))]
    out = []
    for i in range(k):
        a = paths[i][-1]
        b = paths[(i + 1) % k][0]
        out.append((a, b) if a < b else (b, a))
    return out


def merge_adjacent_paths(g: Graph, paths: Sequence[Sequence[int]]) -> list[list[int]]:
    """Concatenate paths whose endpoints are adjacent in ``g`` until none are."""
    paths = [list(p) for p in paths]
    changed = True
    while changed and len(paths) > 1:
        changed = False
        end_at = {}
        for i, p in enumerate(paths):
            end_at.setdefault(p[0], i)
            end_at.setdefault(p[-1], i)
        for i, p in enumerate(paths):
            for side in (0, -1):
                x = p[side]
                for w in g.adj[x]:
                    j = end_at.get(w)
                    if j is None or j == i:
                        continue
                    q = paths[j]
                    a = p if side == -1 else p[::-1]
                    b = q if q[0] == w else q[::-1]
                    merged = a + b
                    paths = [r for t, r in enumerate(paths) if t not in (i, j)] + [merged]
                    changed = True
                    break
                if changed:
                    break
            if changed:
                break
    return paths


# --- the multi-start loop ----------------------------------------------------


@dataclass
class _RestartResult:
    estimate: int
    paths: list[list[int]]
    perturbations: int
    interrupted: bool
    found_at: float


def _initial_tree(g: Graph, params: SolverParams, rng: random.Random) -> SpanningTree:
    tour = build_initial_tour(g, params.tour_provider, rng)
    return make_tree(g, tour_to_path_partition(g, tour), params, rng)


def _run_restart(
    g: Graph, params: SolverParams, restart: int, deadline: float, start: float, lower: int, objective: str
) -> _RestartResult:
    rng = restart_rng(params.seed, restart)
    tree = _initial_tree(g, params, rng)
    best = _RestartResult(math.inf, [], 0, False, 0.0)

    def consider(part: PathPartition) -> None:
        k = part.path_count
        if objective == "ppn":
            est, paths = k, part.paths
        else:
            est = estimate_hcn_from_partition(g, part)
            paths = part.paths
            if est == 1 and k == 1 and params.endpoint_rotations and best.estimate > 0:
                closed = _probe_rotations(g, paths[0], rng, g.n)
                if closed is not None:
                    est, paths = 0, [closed]
        if est < best.estimate:
            best.estimate = est
            best.paths = [list(p) for p in paths]
            best.found_at = time.perf_counter() - start

    part = tree.partition()
    consider(part)
    bad = 0
    count = part.path_count
    while bad <= params.max_bad_perturbations and best.estimate > lower:
        if time.perf_counter() >= deadline:
            best.interrupted = True
            break
        tree = perturb(g, tree, params, rng)
        best.perturbations += 1
        part = tree.partition()
        if part.path_count == count:
            bad += 1
        count = part.path_count
        consider(part)
    return best


def _search(g: Graph, params: SolverParams, objective: str, deadline: float, start: float) -> HcpSolution:
    lower = (hcn_lower_bound(g) if objective == "hcn" else ppn_lower_bound(g)) if params.certify else 0

    if g.m == g.n - 1:
        # the graph is its own unique spanning tree, so its tree partition is exact
        part = tree_min_path_partition(g)
        est = part.path_count if objective == "ppn" else estimate_hcn_from_partition(g, part)
        return _finish(g, part.paths, est, 0, 0, False, True, start, time.perf_counter() - start, objective)

    if params.parallel > 1 and params.max_initial_trees > 1:
        results = _parallel_restarts(g, params, objective, deadline, lower)
    else:
        results = []
        for r in range(params.max_initial_trees):
            if r and time.perf_counter() >= deadline:
                results[-1].interrupted = True
                break
            res = _run_restart(g, params, r, deadline, start, lower, objective)
            results.append(res)
            if res.estimate <= lower or res.interrupted:
                break

    best = None
    perturbations = 0
    for res in results:
        perturbations += res.perturbations
        if best is None or res.estimate < best.estimate:
            best = res
        if res.estimate <= lower:
            break
    assert best is not None
    certified = best.estimate <= lower
    interrupted = any(r.interrupted for r in results) and not certified
    return _finish(
        g, best.paths, best.estimate, len(results), perturbations, interrupted, certified, start, best.found_at,
        objective,
    )


def _finish(g, paths, estimate, restarts, perturbations, interrupted, certified, start, found_at, objective="hcn"):
    if len(paths) > 1:
        merged = merge_adjacent_paths(g, paths)
        if len(merged) < len(paths):
            paths = merged
            if objective == "ppn" or len(paths) > 1:
                estimate = len(paths)
            else:
                estimate = estimate_hcn_from_partition(g, PathPartition(paths, g.n))
    part = PathPartition(paths, g.n)
    added = hamiltonian_completion_edges(g, part) if g.n >= 3 else []
    return HcpSolution(
        hcn_estimate=int(estimate),
        added_edges=added,
        partition=part,
        elapsed=time.perf_counter() - start,
        restarts_used=restarts,
        perturbations_used=perturbations,
        interrupted=interrupted,
        certified=certified,
        first_found=found_at,
    )


def _restart_worker(args):
    g, params, r, budget, lower, objective = args
    start = time.perf_counter()
    return _run_restart(g, params, r, start + budget, start, lower, objective)


def _parallel_restarts(g, params, objective, deadline, lower) -> list[_RestartResult]:
    budget = max(deadline - time.perf_counter(), 0.0)
    jobs = [(g, replace(params, parallel=1), r, budget, lower, objective) for r in range(params.max_initial_trees)]
    out = []
    with ProcessPoolExecutor(max_workers=params.parallel) as pool:
        futures = [pool.submit(_restart_worker, job) for job in jobs]
        for fut in futures:
            res = fut.result()
            out.append(res)
            if res.estimate <= lower:
                for rest in futures:
                    rest.cancel()
                break
    return out


def estimate_hcn(g: Graph, params: SolverParams | None = None) -> HcpSolution:
    """Estimate the Hamiltonian completion number of a connected graph.

    Runs up to ``max_initial_trees`` restarts; each perturbs its spanning
    tree until more than ``max_bad_perturbations`` perturbations have left
    the path count unchanged. Returns the best partition seen, the estimate
    it certifies and the edges that realise it.
    """
    params = params or SolverParams()
    if g.n < 3:
        raise ValueError("Hamiltonian completion needs at least 3 vertices")
    if len(components(g)) > 1:
        raise DisconnectedGraphError("graph is disconnected; use solve_disconnected")
    start = time.perf_counter()
    return _search(g, params, "hcn", start + params.time_limit, start)


def min_path_partition(g: Graph, params: SolverParams | None = None, deadline: float | None = None) -> HcpSolution:
    """Heuristic minimum path partition of a connected graph (any n >= 1).

    Same search as :func:`estimate_hcn`, but scored by path count alone, so
    ``hcn_estimate`` of the result holds the path count.
    """
    params = params or SolverParams()
    start = time.perf_counter()
    if deadline is None:
        deadline = start + params.time_limit
    if g.n <= 2:
        path = list(range(g.n))
        return _finish(g, [path], 1, 0, 0, False, True, start, 0.0, "ppn")
    return _search(g, params, "ppn", deadline, start)


def solve_disconnected(g: Graph, params: SolverParams | None = None) -> HcpSolution:
    """Solve per component and link the union of the component partitions.

    A connected graph is handed straight to :func:`estimate_hcn`.
    """
    params = params or SolverParams()
    if g.n < 3:
        raise ValueError("Hamiltonian completion needs at least 3 vertices")
    comps = components(g)
    if len(comps) == 1:
        return estimate_hcn(g, params)
    start = time.perf_counter()
    deadline = start + params.time_limit
    paths = []
    restarts = perturbations = 0
    interrupted = False
    certified = True
    found_at = 0.0
    for ci, comp in enumerate(comps):
        sub, old = g.subgraph(comp)
        sub_params = replace(params, seed=_component_seed(params.seed, ci))
        sol = min_path_partition(sub, sub_params, deadline)
        paths.extend([old[v] for v in p] for p in sol.partition.paths)
        restarts += sol.restarts_used
        perturbations += sol.perturbations_used
        interrupted |= sol.interrupted
        certified &= sol.certified
        found_at = time.perf_counter() - start
    part = PathPartition(paths, g.n)
    return HcpSolution(
        hcn_estimate=len(paths),
        added_edges=hamiltonian_completion_edges(g, part),
        partition=part,
        elapsed=time.perf_counter() - start,
        restarts_used=restarts,
        perturbations_used=perturbations,
        interrupted=interrupted,
        certified=certified,
        first_found=found_at,
    )


def _component_seed(seed: int, index: int) -> int:
    return random.Random(f"{seed}/component/{index}").randrange(2**63)


def check_completion(g: Graph, solution: HcpSolution) -> bool:
    """Constructively confirm that ``added_edges`` make ``g`` Hamiltonian.

    Walks the linked-paths cycle and checks that every step is an edge of
    ``g`` or one of the added edges, visiting each vertex exactly once.
    """
    n = g.n
    added = set(solution.added_edges)
    if len(added) != len(solution.added_edges) or len(added) != solution.hcn_estimate:
        return False
    if any(g.has_edge(u, v) or u == v for u, v in added):
        return False
    cycle = solution.hamiltonian_cycle()
    if sorted(cycle) != list(range(n)) or n < 3:
        return False
    for i in range(n):
        a, b = cycle[i], cycle[(i + 1) % n]
        if not (g.has_edge(a, b) or (min(a, b), max(a, b)) in added):
            return False
    return True
