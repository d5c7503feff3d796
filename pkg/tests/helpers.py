from hmnet.graph import Graph

N1 = [(0, 1), (0, 2), (0, 3), (0, 4), (4, 6), (4, 5), (4, 7)]
N2 = [(0, 1), (0, 2), (0, 4), (2, 3), (4, 5), (4, 6), (6, 7)]


def star(leaves):
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def simple_invariants(g):
    """Raise AssertionError unless ``g`` is a consistent simple graph."""
    for u, nb in enumerate(g.adj):
        assert u not in nb
        for v in nb:
            assert u in g.adj[v]
    assert g.m * 2 == sum(len(a) for a in g.adj)
    assert g.edges == sorted(g.edges)
    assert all(u < v and v in g.adj[u] for u, v in g.edges)


# verdict lines collected by the acceptance suite, echoed in the terminal summary
VERDICTS: list[str] = []


def verdict(number, title, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}"
    if detail:
        line += f" ({detail})"
    VERDICTS.append(line)
    print(line)
    return ok
