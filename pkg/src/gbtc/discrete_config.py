"""Discretized model of sink-free unordered configuration spaces.

A cell of the k-particle complex on a subdivided graph is a set of k closed
cells of the graph (vertices and closed edges) with pairwise disjoint
closures; its dimension is the number of edges.  On a sufficiently
subdivided graph this complex carries the homotopy type of the configuration
space, so rational Betti numbers can be computed by exact integer
elimination on the cubical boundary matrices.

The subdivision criterion used here is deliberately generous: every chain
between branch points or leaf tips and every embedded cycle gets at least
k+1 edges.  Exactness is non-negotiable: ranks are computed fraction-free
over the integers, never in floating point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from .graph_core import (
    Graph,
    HypothesisError,
    classify,
    is_connected,
    is_normalized,
    normalize,
    _fresh_id,
)

DEFAULT_CELL_BUDGET = 5_000_000


class CellBudgetError(RuntimeError):
    """The complex would exceed the configured cell budget."""


def _chains(g: Graph) -> list[tuple[list[int], bool]]:
    """Maximal chains through bivalent vertices, as (edge index list, closed).

    Endpoints of open chains have valence != 2; a closed chain starts and
    ends at the same such vertex or is a pure cycle of bivalent vertices.
    """
    val = {v: 0 for v in g.vertices}
    for u, w in g.edges:
        val[u] += 1
        val[w] += 1
    at: dict[str, list[int]] = {v: [] for v in g.vertices}
    for ei, (u, w) in enumerate(g.edges):
        at[u].append(ei)
        at[w].append(ei)

    used = [False] * g.n_edges
    chains: list[tuple[list[int], bool]] = []

    def walk(start: str, first_edge: int) -> tuple[list[int], str]:
        path = [first_edge]
        used[first_edge] = True
        u, w = g.edges[first_edge]
        cur = w if u == start else u
        while val[cur] == 2:
            unused = [ei for ei in at[cur] if not used[ei]]
            if not unused:
                break  # a pure cycle just closed up
            nxt = unused[0]
            used[nxt] = True
            path.append(nxt)
            u, w = g.edges[nxt]
            cur = w if u == cur else u
        return path, cur

    interest = [v for v in g.vertices if val[v] != 2]
    for v in interest:
        for ei in at[v]:
            if not used[ei]:
                path, end = walk(v, ei)
                chains.append((path, end == v))
    # leftover edges form pure cycles of bivalent vertices
    for ei in range(g.n_edges):
        if not used[ei]:
            start = g.edges[ei][0]
            path, end = walk(start, ei)
            chains.append((path, True))
    return chains


def sufficient_subdivision(g: Graph, k: int) -> Graph:
    """Subdivide so every chain between branch points or leaves and every
    embedded cycle has at least k+1 edges.  One particle needs no separation,
    so k <= 1 returns the graph unchanged."""
    if not is_connected(g):
        raise HypothesisError("connected graph required")
    if not is_normalized(g):
        raise ValueError("graph must be normalized first")
    if k <= 1:
        return g

    need = k + 1
    pieces = [1] * g.n_edges
    for path, _closed in _chains(g):
        if len(path) >= need:
            continue
        q, r = divmod(need, len(path))
        for i, ei in enumerate(path):
            pieces[ei] = q + (1 if i < r else 0)

    if all(p == 1 for p in pieces):
        return g
    used = set(g.vertices)
    verts = list(g.vertices)
    edges: list[tuple[str, str]] = []
    for ei, (u, w) in enumerate(g.edges):
        p = pieces[ei]
        if p == 1:
            edges.append((u, w))
            continue
        stops = [u] + [_fresh_id(used, f"{u}-{w}") for _ in range(p - 1)] + [w]
        verts.extend(stops[1:-1])
        edges.extend(zip(stops, stops[1:]))
    return Graph(tuple(verts), tuple(edges), g.sinks)


Cell = tuple[tuple[int, ...], tuple[int, ...]]  # (edge indices, vertex indices)


@dataclass
class CubicalComplex:
    """Cells of the k-particle model, graded by dimension, with integer
    boundary columns.  Boundary of boundary vanishing is checked at build."""

    graph: Graph
    k: int
    cells: list[list[Cell]]
    boundaries: list[list[dict[int, int]]]  # boundaries[d][j]: column of cell j in dim d

    @property
    def dimension(self) -> int:
        return len(self.cells) - 1

    def cell_counts(self) -> list[int]:
        return [len(layer) for layer in self.cells]


def _enumerate_cells(g: Graph, k: int, budget: int) -> list[list[Cell]]:
    nv, ne = g.n_vertices, g.n_edges
    vid = {v: i for i, v in enumerate(g.vertices)}
    closures = [frozenset((vid[u], vid[w])) for u, w in g.edges]

    layers: list[list[Cell]] = []
    total = 0
    for d in range(0, min(k, ne) + 1):
        layer: list[Cell] = []

        # pairwise closure-disjoint edge d-sets, depth-first in index order
        def extend(chosen: tuple[int, ...], blocked: frozenset[int], start: int):
            if len(chosen) == d:
                avail = [i for i in range(nv) if i not in blocked]
                if len(avail) < k - d:
                    return
                for verts in itertools.combinations(avail, k - d):
                    layer.append((chosen, verts))
                if total + len(layer) > budget:
                    raise CellBudgetError(
                        f"cell budget exceeded: more than {budget} cells for k={k}"
                    )
                return
            for ei in range(start, ne):
                cl = closures[ei]
                if cl & blocked:
                    continue
                extend(chosen + (ei,), blocked | cl, ei + 1)

        extend((), frozenset(), 0)
        total += len(layer)
        if not layer and d > 0:
            break
        layers.append(layer)
    return layers


def build_complex(g: Graph, k: int, budget: int = DEFAULT_CELL_BUDGET) -> CubicalComplex:
    """Enumerate all cells and boundary maps; verifies boundary-of-boundary.

    Expects a graph produced by :func:`sufficient_subdivision`.
    """
    if k < 1:
        raise ValueError("particle count k must be at least 1")
    if not is_normalized(g):
        raise ValueError("graph must be normalized first")
    vid = {v: i for i, v in enumerate(g.vertices)}
    ends = [(vid[u], vid[w]) for u, w in g.edges]

    layers = _enumerate_cells(g, k, budget)
    index: list[dict[Cell, int]] = [
        {cell: i for i, cell in enumerate(layer)} for layer in layers
    ]

    boundaries: list[list[dict[int, int]]] = [[] for _ in layers]
    for d in range(1, len(layers)):
        idx = index[d - 1]
        cols = []
        for edges_t, verts_t in layers[d]:
            col: dict[int, int] = {}
            sign = 1
            for i, ei in enumerate(edges_t):
                rest = edges_t[:i] + edges_t[i + 1 :]
                tail, head = ends[ei]
                for endpoint, s in ((head, sign), (tail, -sign)):
                    face = (rest, tuple(sorted(verts_t + (endpoint,))))
                    row = idx[face]
                    col[row] = col.get(row, 0) + s
                    if col[row] == 0:
                        del col[row]
                sign = -sign
            cols.append(col)
        boundaries[d] = cols

    _check_boundary_squares_to_zero(boundaries)
    return CubicalComplex(g, k, layers, boundaries)


def _check_boundary_squares_to_zero(boundaries: list[list[dict[int, int]]]) -> None:
    for d in range(2, len(boundaries)):
        lower = boundaries[d - 1]
        for col in boundaries[d]:
            acc: dict[int, int] = {}
            for row, c in col.items():
                for row2, c2 in lower[row].items():
                    acc[row2] = acc.get(row2, 0) + c * c2
            if any(acc.values()):
                raise AssertionError("boundary of boundary is nonzero")


def _rank_of_columns(
    columns: list[dict[int, int]], skip: set[int] | None = None
) -> tuple[int, set[int]]:
    """Rank of an integer matrix given by columns, with the set of pivot rows.

    Column reduction against the minimal-row pivot, fraction-free: combining
    a*col - b*pivot keeps everything integral; columns are divided by their
    content when registered so pivots stay small.
    """
    pivots: dict[int, dict[int, int]] = {}
    for j, col0 in enumerate(columns):
        if skip is not None and j in skip:
            continue
        col = dict(col0)
        while col:
            r = min(col)
            piv = pivots.get(r)
            if piv is None:
                g = 0
                for v in col.values():
                    g = gcd(g, v)
                if g > 1:
                    for rr in col:
                        col[rr] //= g
                if col[r] < 0:
                    for rr in col:
                        col[rr] = -col[rr]
                pivots[r] = col
                break
            a = piv[r]
            b = col.pop(r)
            if a == 1:
                for rr, vv in piv.items():
                    if rr == r:
                        continue
                    nv = col.get(rr, 0) - b * vv
                    if nv:
                        col[rr] = nv
                    elif rr in col:
                        del col[rr]
            else:
                for rr in col:
                    col[rr] *= a
                for rr, vv in piv.items():
                    if rr == r:
                        continue
                    nv = col.get(rr, 0) - b * vv
                    if nv:
                        col[rr] = nv
                    elif rr in col:
                        del col[rr]
    return len(pivots), set(pivots)


def _skeleton_components(c: CubicalComplex) -> int:
    n0 = len(c.cells[0])
    parent = list(range(n0))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    if c.dimension >= 1:
        for col in c.boundaries[1]:
            rows = list(col)
            for a, b in zip(rows, rows[1:]):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[rb] = ra
    return len({find(i) for i in range(n0)})


@dataclass(frozen=True)
class BettiVector:
    betti: tuple[int, ...]

    def __getitem__(self, d: int) -> int:
        return self.betti[d] if 0 <= d < len(self.betti) else 0

    def trimmed(self) -> tuple[int, ...]:
        b = list(self.betti)
        while len(b) > 1 and b[-1] == 0:
            b.pop()
        return tuple(b)


def betti(c: CubicalComplex) -> BettiVector:
    """Exact rational Betti numbers.

    Ranks of the boundary matrices are computed top dimension first so the
    pivot rows of each reduction mark columns of the next matrix down as
    dependent (safe to skip).  The rank of the 1-boundary is the number of
    0-cells minus the number of skeleton components.
    """
    dim = c.dimension
    n = c.cell_counts()
    ranks = [0] * (dim + 2)
    if dim >= 1:
        ranks[1] = n[0] - _skeleton_components(c)
    cleared: set[int] = set()
    for d in range(dim, 1, -1):
        # pivot rows of the reduction one dimension up index dependent
        # columns here, so they are skipped without affecting the rank
        ranks[d], cleared = _rank_of_columns(c.boundaries[d], cleared or None)
    out = []
    for d in range(dim + 1):
        b = n[d] - ranks[d] - ranks[d + 1]
        if b < 0:
            raise AssertionError("negative Betti number: elimination bug")
        out.append(b)
    return BettiVector(tuple(out))


@dataclass(frozen=True)
class NonvanishingReport:
    k: int
    m: int
    degree: int
    betti: BettiVector | None
    nonzero: bool | None
    status: str  # "verified" or "budget-exceeded"
    cell_counts: tuple[int, ...] = ()

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "m": self.m,
            "degree": self.degree,
            "betti": list(self.betti.betti) if self.betti else None,
            "nonzero": self.nonzero,
            "status": self.status,
            "cell_counts": list(self.cell_counts),
        }


def nonvanishing_check(
    g: Graph, k: int, budget: int = DEFAULT_CELL_BUDGET
) -> NonvanishingReport:
    """Is rational homology nonzero in degree min(floor(k/2), m)?

    Reports the full Betti vector of the k-particle complex on a sufficient
    subdivision of g; an exceeded cell budget yields an unverified report
    instead of an answer.
    """
    if not is_connected(g):
        raise HypothesisError("connected graph required")
    cls = classify(g)
    degree = min(k // 2, cls.m)
    ng = normalize(g)
    sg = sufficient_subdivision(ng, k)
    try:
        complex_ = build_complex(sg, k, budget)
    except CellBudgetError:
        return NonvanishingReport(k, cls.m, degree, None, None, "budget-exceeded")
    bv = betti(complex_)
    return NonvanishingReport(
        k,
        cls.m,
        degree,
        bv,
        bv[degree] != 0,
        "verified",
        tuple(complex_.cell_counts()),
    )
