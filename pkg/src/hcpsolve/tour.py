"""Initial tours of the implicit complete 0/1-weighted graph.

A pair of vertices costs 0 when it is an edge of ``g`` and 1 otherwise.
The complete graph is never built; weights are looked up on demand.
"""

from __future__ import annotations

import logging
import random
import subprocess
import tempfile
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Protocol, Sequence

from .graph import Graph
from .treepath import PathPartition

log = logging.getLogger(__name__)

# settings the reference integration used for the weak step-1 run
LKH_STEP1_PARAMETERS = {
    "MOVE_TYPE": "5",
    "PATCHING_C": "3",
    "PATCHING_A": "2",
    "RUNS": "1",
    "CANDIDATE_SET_TYPE": "POPMUSIC",
    "MAX_TRIALS": "2",
}

FULL_MATRIX_LIMIT = 2000


@dataclass
class Tour:
    order: list[int]
    zero_edge_flags: list[bool]

    @classmethod
    def from_order(cls, g: Graph, order: Sequence[int]) -> "Tour":
        order = list(order)
        n = len(order)
        flags = [g.has_edge(order[i], order[(i + 1) % n]) for i in range(n)]
        return cls(order, flags)

    @property
    def weight(self) -> int:
        return self.zero_edge_flags.count(False)

    def is_valid_for(self, g: Graph) -> bool:
        if sorted(self.order) != list(range(g.n)):
            return False
        return self.zero_edge_flags == Tour.from_order(g, self.order).zero_edge_flags


class TourProvider(Protocol):
    def tour(self, g: Graph, rng: random.Random) -> Tour: ...


def greedy_order(g: Graph, rng: random.Random) -> list[int]:
    """Walk along unvisited neighbours, jumping to a random vertex when stuck.

    Among unvisited neighbours the one with the fewest unvisited neighbours
    of its own is taken (ties to the lower index).
    """
    n = g.n
    adj = g.adj
    residual = [len(a) for a in adj]
    visited = [False] * n
    # unvisited pool with O(1) removal
    pool = list(range(n))
    slot = list(range(n))

    def take(v):
        visited[v] = True
        i = slot[v]
        last = pool[-1]
        pool[i] = last
        slot[last] = i
        pool.pop()
        for w in adj[v]:
            residual[w] -= 1

    cur = rng.randrange(n)
    take(cur)
    order = [cur]
    while pool:
        best = -1
        best_key = None
        for w in adj[cur]:
            if not visited[w]:
                key = (residual[w], w)
                if best_key is None or key < best_key:
                    best, best_key = w, key
        if best == -1:
            best = pool[rng.randrange(len(pool))]
        take(best)
        order.append(best)
        cur = best
    return order


def two_opt(g: Graph, order: list[int], max_sweeps: int = 30) -> list[int]:
    """2-opt restricted to moves that strictly cut the number of cost-1 tour edges.

    Candidate moves pair a cost-1 tour edge with a graph neighbour of one
    of its endpoints, so every move creates at least one cost-0 edge.
    """
    n = len(order)
    if n < 4:
        return order
    order = list(order)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    has = g.has_edge

    def apply(i, j):
        # remove (order[i], order[i+1]) and (order[j], order[j+1]); reverse between
        if i > j:
            i, j = j, i
        lo, hi = i + 1, j
        order[lo : hi + 1] = order[lo : hi + 1][::-1]
        for k in range(lo, hi + 1):
            pos[order[k]] = k

    for _ in range(max_sweeps):
        improved = False
        for i in range(n):
            a = order[i]
            b = order[(i + 1) % n]
            if has(a, b):
                continue
            done = False
            for c in g.adj[a]:
                # option A: new edges (a, c) and (b, succ c)
                j = pos[c]
                d = order[(j + 1) % n]
                if j != i and d != a and has(b, d) >= has(c, d):
                    apply(i, j)
                    done = True
                    break
            if not done:
                for c in g.adj[b]:
                    # option B: new edges (a, pred c) and (b, c)
                    j = (pos[c] - 1) % n
                    p = order[j]
                    if j != i and p != b and has(a, p) >= has(p, c):
                        apply(i, j)
                        done = True
                        break
            if done:
                improved = True
        if not improved:
            break
    return order


@dataclass
class InternalTourProvider:
    max_sweeps: int = 30

    def tour(self, g: Graph, rng: random.Random) -> Tour:
        order = greedy_order(g, rng)
        order = two_opt(g, order, self.max_sweeps)
        return Tour.from_order(g, order)


def write_tsplib(g: Graph, path: Path, name: str = "hcp") -> None:
    """Write the 0/1 reduction as a TSPLIB problem.

    Small instances get an explicit full matrix; larger ones use the HCP
    edge-list form, which the solver reduces to the same 0/1 weights.
    """
    lines = [f"NAME : {name}", "COMMENT : 0 if edge of the graph, 1 otherwise"]
    if g.n <= FULL_MATRIX_LIMIT:
        lines += [
            "TYPE : TSP",
            f"DIMENSION : {g.n}",
            "EDGE_WEIGHT_TYPE : EXPLICIT",
            "EDGE_WEIGHT_FORMAT : FULL_MATRIX",
            "EDGE_WEIGHT_SECTION",
        ]
        for u in range(g.n):
            row = ["1"] * g.n
            row[u] = "0"
            for v in g.adj[u]:
                row[v] = "0"
            lines.append(" ".join(row))
    else:
        lines += [
            "TYPE : HCP",
            f"DIMENSION : {g.n}",
            "EDGE_DATA_FORMAT : EDGE_LIST",
            "EDGE_DATA_SECTION",
        ]
        lines += [f"{u + 1} {v + 1}" for u, v in g.edges]
        lines.append("-1")
    lines.append("EOF")
    path.write_text("\n".join(lines) + "\n")


def parse_tour_section(text: str, n: int) -> list[int]:
    """Extract a 1-based TOUR_SECTION (terminated by -1) as 0-based vertices."""
    tokens = text.split()
    try:
        start = tokens.index("TOUR_SECTION") + 1
    except ValueError:
        raise ValueError("no TOUR_SECTION in solver output") from None
    order = []
    for tok in tokens[start:]:
        v = int(tok)
        if v == -1:
            break
        order.append(v - 1)
    if sorted(order) != list(range(n)):
        raise ValueError("solver tour is not a permutation of the vertices")
    return order


@dataclass
class ExternalTourProvider:
    """Runs an external TSP solver binary as ``command <parameter file>``.

    The tour is read from the file named by ``OUTPUT_TOUR_FILE`` or, if the
    solver did not write one, from a TOUR_SECTION on its stdout. Any failure
    falls back to the internal provider with a warning. Invocations through
    one provider instance run one at a time.
    """

    command: str
    parameters: dict[str, str] = field(default_factory=lambda: dict(LKH_STEP1_PARAMETERS))
    timeout: float | None = None
    fallback: InternalTourProvider = field(default_factory=InternalTourProvider)
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False, repr=False, compare=False)

    def __getstate__(self):
        state = dict(self.__dict__)
        del state["_lock"]
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._lock = threading.Lock()

    def tour(self, g: Graph, rng: random.Random) -> Tour:
        try:
            with self._lock:
                order = self._run(g, rng)
            return Tour.from_order(g, order)
        except (OSError, ValueError, subprocess.SubprocessError) as exc:
            log.warning("external tour solver failed (%s); using internal provider", exc)
            return self.fallback.tour(g, rng)

    def _run(self, g: Graph, rng: random.Random) -> list[int]:
        with tempfile.TemporaryDirectory(prefix="hcp-tour-") as tmp:
            tmp = Path(tmp)
            problem = tmp / "problem.tsp"
            tour_file = tmp / "out.tour"
            par = tmp / "run.par"
            write_tsplib(g, problem)
            params = {
                "PROBLEM_FILE": str(problem),
                "OUTPUT_TOUR_FILE": str(tour_file),
                "SEED": str(rng.randrange(1, 2**31 - 1)),
                **self.parameters,
            }
            par.write_text("".join(f"{k} = {v}\n" for k, v in params.items()))
            proc = subprocess.run(
                [self.command, str(par)],
                capture_output=True,
                text=True,
                timeout=self.timeout,
            )
            if proc.returncode != 0:
                raise subprocess.SubprocessError(f"exit status {proc.returncode}")
            if tour_file.exists():
                return parse_tour_section(tour_file.read_text(), g.n)
            return parse_tour_section(proc.stdout, g.n)


def build_initial_tour(g: Graph, provider: TourProvider | None, rng: random.Random) -> Tour:
    if g.n < 3:
        raise ValueError("a tour needs at least 3 vertices")
    if provider is None:
        provider = InternalTourProvider()
    return provider.tour(g, rng)


def tour_to_path_partition(g: Graph, tour: Tour) -> PathPartition:
    """Cut the cyclic tour at every cost-1 pair.

    A cost-0 tour is cut once, between its last and first vertex, giving a
    single Hamiltonian path whose endpoints are adjacent.
    """
    order, flags = tour.order, tour.zero_edge_flags
    n = len(order)
    breaks = [i for i in range(n) if not flags[i]]
    if not breaks:
        return PathPartition([order], n)
    start = (breaks[0] + 1) % n
    paths = []
    cur = []
    for step in range(n):
        i = (start + step) % n
        cur.append(order[i])
        if not flags[i]:
            paths.append(cur)
            cur = []
    return PathPartition(paths, n)
