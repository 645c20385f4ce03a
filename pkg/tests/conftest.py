import itertools
import sys

from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def all_subsets(elements):
    elements = sorted(elements)
    for r in range(len(elements) + 1):
        yield from itertools.combinations(elements, r)


def components(num_vertices, edges):
    """Connected components by breadth-first search (independent of the library's union-find)."""
    adj = {v: [] for v in range(num_vertices)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen, count = set(), 0
    for s in range(num_vertices):
        if s in seen:
            continue
        count += 1
        queue = [s]
        seen.add(s)
        while queue:
            u = queue.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
    return count


def forest(num_vertices, edges):
    return all(u != v for u, v in edges) and components(num_vertices, edges) == num_vertices - len(edges)


def brute_rank(indep, S):
    return max(len(T) for T in all_subsets(S) if indep(T))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance")
        for line in lines:
            terminalreporter.write_line(line)
