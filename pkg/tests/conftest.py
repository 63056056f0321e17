"""Shared builders and independent oracles for the test suite.

The oracles deliberately reimplement things the library computes, with the
dumbest possible method (exhaustive enumeration, plain BFS), so agreements
are meaningful.
"""

from __future__ import annotations

import itertools

from gbtc.graph_core import Graph


def star(n: int) -> Graph:
    verts = ("c",) + tuple(f"l{i}" for i in range(1, n + 1))
    edges = tuple(("c", f"l{i}") for i in range(1, n + 1))
    return Graph(verts, edges)


def hgraph() -> Graph:
    return Graph(
        ("c1", "c2", "l1", "l2", "l3", "l4"),
        (("c1", "l1"), ("c1", "l2"), ("c1", "c2"), ("c2", "l3"), ("c2", "l4")),
    )


def theta() -> Graph:
    return Graph(("u", "v"), (("u", "v"), ("u", "v"), ("u", "v")))


def spider() -> Graph:
    return Graph(
        ("a", "b", "a1", "a2", "a3", "b1", "b2", "b3"),
        (
            ("a", "a1"),
            ("a", "a2"),
            ("a", "a3"),
            ("a", "b"),
            ("b", "b1"),
            ("b", "b2"),
            ("b", "b3"),
        ),
    )


def path_graph(n: int) -> Graph:
    verts = tuple(f"p{i}" for i in range(n))
    edges = tuple((f"p{i}", f"p{i+1}") for i in range(n - 1))
    return Graph(verts, edges)


def cycle_graph(n: int) -> Graph:
    verts = tuple(f"z{i}" for i in range(n))
    edges = tuple((f"z{i}", f"z{(i+1) % n}") for i in range(n))
    return Graph(verts, edges)


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------


def oracle_valence(g: Graph, v: str) -> int:
    """Half-edge count by brute-force incidence enumeration."""
    count = 0
    for e in g.edges:
        count += sum(1 for x in e if x == v)
    return count


def oracle_components(g: Graph, removed: frozenset[str] = frozenset()) -> list[set[str]]:
    verts = [v for v in g.vertices if v not in removed]
    comps: list[set[str]] = []
    left = set(verts)
    while left:
        start = next(v for v in verts if v in left)
        comp = {start}
        frontier = [start]
        while frontier:
            x = frontier.pop()
            for u, w in g.edges:
                if u in removed or w in removed:
                    continue
                for a, b in ((u, w), (w, u)):
                    if a == x and b not in comp:
                        comp.add(b)
                        frontier.append(b)
        comps.append(comp)
        left -= comp
    return comps


def oracle_separating(g: Graph, v: str) -> bool:
    return len(oracle_components(g, frozenset((v,)))) > 1


def oracle_classify(g: Graph) -> tuple[int, int, int]:
    """(n0, n1, n2) recomputed from scratch on any subdivision-free level."""
    n0 = n1 = n2 = 0
    for v in g.vertices:
        d = oracle_valence(g, v)
        if d >= 4:
            n0 += 1
        elif d == 3:
            if oracle_separating(g, v):
                n1 += 1
            else:
                n2 += 1
    return (n0, n1, n2)


def oracle_compositions(total: int, parts: int) -> set[tuple[int, ...]]:
    """All nonnegative integer vectors of given length and sum, by filtering
    the full product."""
    if parts == 0:
        return {()} if total == 0 else set()
    out = set()
    for tup in itertools.product(range(total + 1), repeat=parts):
        if sum(tup) == total:
            out.add(tup)
    return out


def oracle_betti1(g: Graph) -> int:
    return g.n_edges - g.n_vertices + len(oracle_components(g))
