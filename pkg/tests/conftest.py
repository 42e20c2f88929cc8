import random

import pytest

from hcpsolve.graph import build_graph


def tree_ppn_dp(n, edges):
    """Independent tree DP: a[v] = min paths in subtree with v an open path end
    (v has <= 1 linked child), b[v] = min paths with v used as an interior point."""
    if n == 0:
        return 0
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    order, parent = [0], [-1] * n
    seen = [False] * n
    seen[0] = True
    for v in order:
        for w in adj[v]:
            if not seen[w]:
                seen[w] = True
                parent[w] = v
                order.append(w)
    inf = float("inf")
    end = [0] * n  # v ends a path (possibly alone)
    mid = [0] * n  # v links two children
    for v in reversed(order):
        kids = [c for c in adj[v] if c != parent[v]]
        best_c = [min(end[c], mid[c]) for c in kids]
        base = sum(best_c)
        # linking child c saves one path when c was an end: end[c] - 1 instead of best_c
        gains = sorted(best_c[i] - (end[c] - 1) for i, c in enumerate(kids))
        gains.reverse()
        end[v] = base + 1 - max(0, gains[0] if gains else 0)
        mid[v] = base + 1 - gains[0] - gains[1] if len(gains) >= 2 else inf
    return min(end[0], mid[0])


@pytest.fixture
def rng():
    return random.Random(12345)


def path_graph(n):
    return build_graph([(i, i + 1) for i in range(n - 1)], n)


def cycle_graph(n):
    return build_graph([(i, (i + 1) % n) for i in range(n)], n)


def complete_graph(n):
    return build_graph([(u, v) for u in range(n) for v in range(u + 1, n)], n)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
