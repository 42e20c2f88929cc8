"""Randomised cross-checks of the solver against the exact oracles."""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace

from .graph import UnionFind
from .generators import random_connected_graph, random_tree
from .oracle import enumerate_spanning_trees, exact_hcn, exact_ppn, is_hamiltonian
from .search import SolverParams, check_completion, estimate_hcn, perturb, restart_rng
from .treepath import SpanningTree, ppn_of_tree


@dataclass
class SuiteReport:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list[str] = field(default_factory=list)

    def record(self, ok: bool, detail: str = "") -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.failures) < 10:
                self.failures.append(detail)

    @property
    def total(self) -> int:
        return self.passed + self.failed

    def line(self) -> str:
        status = "PASS" if self.failed == 0 else "FAIL"
        return f"{status} {self.name}: {self.passed}/{self.total}"


def random_spanning_tree(g, rng: random.Random) -> SpanningTree:
    """Kruskal over a shuffled edge order."""
    edges = list(g.edges)
    rng.shuffle(edges)
    uf = UnionFind(g.n)
    return SpanningTree(g.n, [e for e in edges if uf.union(*e)])


def tree_optimality(count: int, max_n: int, rng: random.Random, solver_params: SolverParams | None = None) -> SuiteReport:
    report = SuiteReport("tree optimality")
    for _ in range(count):
        n = rng.randint(3, max_n)
        t = random_tree(n, rng)
        exact = exact_ppn(t)[0]
        got = ppn_of_tree(t)
        ok = got == exact
        if ok and solver_params is not None:
            sol = estimate_hcn(t, solver_params)
            ok = sol.hcn_estimate == exact_hcn(t) and check_completion(t, sol)
        report.record(ok, f"tree {t.edges}: got {got}, exact {exact}")
    return report


def upper_bound(count: int, max_n: int, rng: random.Random, params: SolverParams) -> tuple[SuiteReport, int]:
    """Solver never beats the exact answer; also returns how often it matched."""
    report = SuiteReport("upper bound")
    equal = 0
    for i in range(count):
        n = rng.randint(3, max_n)
        p = rng.choice((0.2, 0.4, 0.6))
        g = random_connected_graph(n, p, rng)
        exact = exact_hcn(g)
        sol = estimate_hcn(g, replace(params, seed=params.seed + i))
        ok = sol.hcn_estimate >= exact and check_completion(g, sol)
        equal += sol.hcn_estimate == exact
        report.record(ok, f"{g.edges}: estimate {sol.hcn_estimate} < exact {exact}")
    return report, equal


def hcn_ppn_consistency(count: int, max_n: int, rng: random.Random) -> SuiteReport:
    report = SuiteReport("hcn/ppn consistency")
    for _ in range(count):
        n = rng.randint(3, max_n)
        g = random_connected_graph(n, rng.choice((0.3, 0.5, 0.7)), rng)
        ppn, _ = exact_ppn(g)
        hcn = exact_hcn(g)
        ham = is_hamiltonian(g)
        ok = (hcn == 0 and ppn == 1) if ham else (hcn == ppn and hcn >= 1)
        report.record(ok, f"{g.edges}: ppn {ppn}, hcn {hcn}, hamiltonian {ham}")
    return report


def spanning_tree_bound(count: int, max_n: int, rng: random.Random) -> SuiteReport:
    report = SuiteReport("spanning tree bound")
    for _ in range(count):
        n = rng.randint(3, min(max_n, 8))
        g = random_connected_graph(n, rng.choice((0.3, 0.5, 0.7)), rng)
        exact = exact_ppn(g)[0]
        values = [ppn_of_tree(t) for t in enumerate_spanning_trees(g)]
        ok = min(values) == exact and all(v >= exact for v in values)
        report.record(ok, f"{g.edges}: min tree ppn {min(values)}, exact {exact}")
    return report


def monotonicity(count: int, max_n: int, rng: random.Random, params: SolverParams | None = None) -> SuiteReport:
    params = params or SolverParams()
    report = SuiteReport("perturbation monotonicity")
    for i in range(count):
        n = rng.randint(3, max_n)
        g = random_connected_graph(n, rng.choice((0.15, 0.3, 0.5)), rng)
        t = random_spanning_tree(g, rng)
        before = ppn_of_tree(t)
        after_tree = perturb(g, t, params, restart_rng(rng.randrange(2**31), i))
        after = ppn_of_tree(after_tree)
        ok = after <= before and after_tree.is_spanning_tree_of(g)
        report.record(ok, f"{g.edges}: {before} -> {after}")
    return report
