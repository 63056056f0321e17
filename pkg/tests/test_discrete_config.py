"""Discretized configuration complexes and exact rational homology."""

from __future__ import annotations

import pytest
import sympy

from conftest import hgraph, path_graph, star, theta
from gbtc.corpus import load_bundled
from gbtc.discrete_config import (
    CellBudgetError,
    betti,
    build_complex,
    nonvanishing_check,
    sufficient_subdivision,
    _chains,
    _rank_of_columns,
)
from gbtc.graph_core import Graph, HypothesisError, normalize


def model(g: Graph, k: int):
    return build_complex(sufficient_subdivision(normalize(g), k), k)


# -- subdivision criterion -------------------------------------------------------


def chain_lengths(g: Graph) -> list[int]:
    return [len(path) for path, _ in _chains(g)]


def test_sufficient_subdivision_star3_k2():
    sg = sufficient_subdivision(normalize(star(3)), 2)
    # every arm is a chain from the center to a leaf with at least 3 edges
    assert all(length >= 3 for length in chain_lengths(sg))
    assert sg.n_edges >= 9


def test_sufficient_subdivision_theta_k2():
    sg = sufficient_subdivision(normalize(theta()), 2)
    assert all(length >= 3 for length in chain_lengths(sg))


def test_sufficient_subdivision_k1_unchanged():
    for g in (star(3), theta(), hgraph()):
        ng = normalize(g)
        assert sufficient_subdivision(ng, 1) is ng


def test_sufficient_subdivision_cycle():
    # embedded cycles need at least k+1 edges; a bare cycle is one closed chain
    cyc = Graph(tuple("abc"), (("a", "b"), ("b", "c"), ("c", "a")))
    sg = sufficient_subdivision(cyc, 4)
    assert sg.n_edges >= 5
    assert len(_chains(sg)) == 1


def test_sufficient_subdivision_requires_connected():
    g = Graph(("a", "b", "c", "d"), (("a", "b"), ("c", "d")))
    with pytest.raises(HypothesisError):
        sufficient_subdivision(g, 2)


# -- complex construction ---------------------------------------------------------


def test_interval_configurations_contractible():
    for k in (1, 2, 3):
        c = model(path_graph(2), k)
        assert betti(c).trimmed() == (1,)


def test_star3_two_particles_is_circle():
    c = model(star(3), 2)
    assert betti(c).betti[:2] == (1, 1)
    assert all(b == 0 for b in betti(c).betti[2:])


def test_star4_two_particles():
    assert betti(model(star(4), 2)).trimmed() == (1, 3)


def test_dimension_at_most_k():
    for g, k in ((star(3), 2), (theta(), 2), (star(4), 3)):
        c = model(g, k)
        assert c.dimension <= k


def test_zero_dim_complex_counts_points():
    # one particle: the complex is the subdivided graph itself
    c = model(star(3), 1)
    assert betti(c).trimmed() == (1,)
    assert len(c.cells[0]) == c.graph.n_vertices


def test_budget_guard():
    with pytest.raises(CellBudgetError):
        build_complex(sufficient_subdivision(normalize(theta()), 4), 4, budget=100)


def test_boundary_squares_to_zero_spot():
    # build_complex verifies this internally; re-check one instance by hand
    c = model(theta(), 2)
    for d in range(2, c.dimension + 1):
        for col in c.boundaries[d]:
            acc = {}
            for row, v in col.items():
                for row2, v2 in c.boundaries[d - 1][row].items():
                    acc[row2] = acc.get(row2, 0) + v * v2
            assert not any(acc.values())


# -- exact ranks vs an independent solver ------------------------------------------


def sympy_betti(c) -> tuple[int, ...]:
    counts = c.cell_counts()
    ranks = [0] * (c.dimension + 2)
    for d in range(1, c.dimension + 1):
        mat = sympy.zeros(counts[d - 1], counts[d])
        for j, col in enumerate(c.boundaries[d]):
            for i, v in col.items():
                mat[i, j] = v
        ranks[d] = mat.rank()
    return tuple(
        counts[d] - ranks[d] - ranks[d + 1] for d in range(c.dimension + 1)
    )


def test_betti_matches_sympy_on_small_complexes():
    cases = [(star(3), 2), (path_graph(2), 2), (theta(), 2), (star(4), 2)]
    for g, k in cases:
        c = model(g, k)
        assert betti(c).betti == sympy_betti(c)


def test_rank_of_columns_against_sympy_random():
    import random

    rng = random.Random(3)
    for _ in range(40):
        rows = rng.randrange(1, 8)
        cols = rng.randrange(1, 8)
        dense = [[rng.choice((-2, -1, -1, 0, 0, 0, 1, 1, 2)) for _ in range(cols)] for _ in range(rows)]
        columns = [
            {i: dense[i][j] for i in range(rows) if dense[i][j]} for j in range(cols)
        ]
        rank, _ = _rank_of_columns(columns)
        assert rank == sympy.Matrix(dense).rank()


# -- golden values and nonvanishing -------------------------------------------------


def test_star_golden_values():
    golden = {3: 1, 4: 3, 5: 6}
    for n, b1 in golden.items():
        c = model(star(n), 2)
        assert betti(c).betti[1] == b1 == (n - 1) * (n - 2) // 2


def test_beta0_is_one_on_connected_inputs():
    for g, k in ((star(3), 2), (theta(), 2), (hgraph(), 2), (star(4), 3)):
        assert betti(model(g, k)).betti[0] == 1


def test_nonvanishing_star3_k2():
    rep = nonvanishing_check(star(3), 2)
    assert rep.status == "verified"
    assert rep.degree == 1 and rep.nonzero is True
    assert rep.betti.betti[1] == 1


def test_nonvanishing_theta_k2():
    rep = nonvanishing_check(theta(), 2)
    assert rep.degree == 1 and rep.nonzero is True


def test_nonvanishing_tree_k1():
    rep = nonvanishing_check(star(4), 1)
    assert rep.degree == 0 and rep.nonzero is True


def test_nonvanishing_budget_exceeded_is_reported():
    rep = nonvanishing_check(theta(), 4, budget=50)
    assert rep.status == "budget-exceeded"
    assert rep.nonzero is None and rep.betti is None


def test_betti_stable_under_extra_subdivision():
    def subdivide_all(g: Graph) -> Graph:
        verts = list(g.vertices)
        edges = []
        for i, (u, w) in enumerate(g.edges):
            m = f"mid{i}"
            verts.append(m)
            edges += [(u, m), (m, w)]
        return Graph(tuple(verts), tuple(edges))

    cases = [(star(3), 2), (star(3), 3), (theta(), 2), (hgraph(), 2), (load_bundled("random10"), 2)]
    for g, k in cases:
        sg = sufficient_subdivision(normalize(g), k)
        base = betti(build_complex(sg, k)).trimmed()
        again = betti(build_complex(subdivide_all(sg), k)).trimmed()
        assert base == again, (g.vertices[:3], k)


def test_sinkfree_star_values_differ_from_leaf_identified_models():
    # the two-particle leaf-identified model has rank n-1; the sink-free star
    # homology is the triangular number, and the suite asserts the sink-free
    # values so the two families cannot be conflated
    from gbtc.local_graphs import EquivRelation, build_lambda, pi1_rank

    for n in (3, 5):
        sinkfree = betti(model(star(n), 2)).betti[1]
        lam_rank = pi1_rank(build_lambda(EquivRelation.indiscrete(n), 2))
        assert sinkfree == (n - 1) * (n - 2) // 2
        assert lam_rank == n - 1
        assert sinkfree != lam_rank
