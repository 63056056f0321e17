"""Local graphs: star-with-identifications models of configuration spaces.

An equivalence relation pi on the edge set at a vertex determines a local
graph: a central vertex joined to one sink per block, with parallel edges
indexed by the block members.  The k-particle model is the finite graph
whose vertices are compositions of k and of k-1 into the blocks (with one
particle at the center in the k-1 case) and whose edges move one particle
between the center and a sink along a chosen member edge.  Its fundamental
group is free; bases come from deterministic spanning trees, and combining
particle counts is a label-preserving graph map whose induced homomorphism
on loops is computed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .graph_core import (
    Graph,
    HypothesisError,
    components_without,
    is_connected,
    is_normalized,
    is_separating,
    valence,
)
from .free_groups import (
    FreeHom,
    FreeWord,
    commutator,
    concat,
    generator,
    identity,
    reduce_word,
)


@dataclass(frozen=True)
class EquivRelation:
    """An equivalence relation on the finite ground set {0..n-1}.

    Blocks are disjoint, nonempty, cover the ground set, and are kept sorted
    by smallest member.
    """

    ground: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for b in self.blocks:
            if not b:
                raise ValueError("blocks must be nonempty")
            if seen.intersection(b):
                raise ValueError("blocks must be disjoint")
            seen.update(b)
        if seen != set(self.ground):
            raise ValueError("blocks must cover the ground set")

    @classmethod
    def from_blocks(cls, blocks) -> "EquivRelation":
        blocks = tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0]))
        ground = tuple(sorted(x for b in blocks for x in b))
        return cls(ground, blocks)

    @classmethod
    def discrete(cls, n: int) -> "EquivRelation":
        return cls.from_blocks([(i,) for i in range(n)])

    @classmethod
    def indiscrete(cls, n: int) -> "EquivRelation":
        return cls.from_blocks([tuple(range(n))])

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)

    def block_of(self, x: int) -> int:
        for i, b in enumerate(self.blocks):
            if x in b:
                return i
        raise ValueError(f"{x} is not in the ground set")


def local_quotient(g: Graph, v: str) -> EquivRelation:
    """The relation on the edges at v induced by components of g minus v.

    Requires a normalized connected sinkless graph and an essential v.  When
    v separates and the first two edges in the file order land in the same
    block, the order is silently adjusted so that the first two edges lie in
    different components; ground positions refer to the adjusted order.
    """
    if g.sinks:
        raise HypothesisError("local relations are formed on sinkless graphs")
    if not is_connected(g):
        raise HypothesisError("connected graph required")
    if not is_normalized(g):
        raise HypothesisError("graph must be normalized first")
    blocks = components_without(g, v)
    d = valence(g, v)
    order = list(range(d))
    if len(blocks) > 1 and is_separating(g, v):
        block_of = {}
        for bi, b in enumerate(blocks):
            for x in b:
                block_of[x] = bi
        if block_of[order[0]] == block_of[order[1]]:
            swap = next(p for p in order if block_of[p] != block_of[order[0]])
            order.remove(swap)
            order.insert(1, swap)
    pos = {old: new for new, old in enumerate(order)}
    return EquivRelation.from_blocks([tuple(pos[x] for x in b) for b in blocks])


def compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    """All nonnegative integer vectors of the given length summing to total,
    in ascending lexicographic order."""
    if parts == 0:
        return [()] if total == 0 else []
    if parts == 1:
        return [(total,)]
    out = []
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return out


@dataclass(frozen=True)
class LambdaGraph:
    """The k-particle model graph of a local relation.

    Vertices are compositions of k-1 (one particle at the center) followed by
    compositions of k (all particles at sinks), each in ascending lexicographic
    order.  Edges are (upper vertex, lower vertex, ground label): moving one
    particle between the center and the labeled edge's sink.
    """

    pi: EquivRelation
    k: int
    vertices: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int, int], ...]

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)


def build_lambda(pi: EquivRelation, k: int) -> LambdaGraph:
    if k <= 0:
        raise ValueError("particle count k must be at least 1")
    b = pi.n_blocks
    lower = compositions(k - 1, b)
    upper = compositions(k, b)
    vertices = tuple(lower + upper)
    index = {c: i for i, c in enumerate(lower)}
    index.update({c: len(lower) + i for i, c in enumerate(upper)})
    edges = []
    for comp in lower:
        li = index[comp]
        for j in pi.ground:
            blk = pi.block_of(j)
            up = list(comp)
            up[blk] += 1
            edges.append((index[tuple(up)], li, j))
    return LambdaGraph(pi, k, vertices, tuple(edges))


def expected_counts(pi: EquivRelation, k: int) -> tuple[int, int]:
    """Closed-form vertex and edge counts of the k-particle model."""
    b = pi.n_blocks
    n_vertices = comb(k + b - 1, b - 1) + comb(k - 2 + b, b - 1)
    n_edges = len(pi.ground) * comb(k - 2 + b, b - 1)
    return n_vertices, n_edges


def _lambda_components(lam: LambdaGraph) -> int:
    parent = list(range(lam.n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, l, _ in lam.edges:
        ru, rl = find(u), find(l)
        if ru != rl:
            parent[rl] = ru
    return len({find(i) for i in range(lam.n_vertices)})


def pi1_rank(lam: LambdaGraph) -> int:
    """Free rank of the fundamental group: edges - vertices + components."""
    return lam.n_edges - lam.n_vertices + _lambda_components(lam)


@dataclass(frozen=True)
class FreeBasis:
    """Spanning-tree basis of the loops of a particle model graph.

    One generator per non-tree edge; a loop's word is read off by recording
    the signed generator of each non-tree edge it crosses (tree edges
    contribute nothing).  Positive direction of an edge is lower -> upper,
    the move sending the center particle to the sink.
    """

    lam: LambdaGraph
    basepoint: int
    parent: tuple[tuple[int, int] | None, ...]  # per vertex: (parent vertex, edge idx)
    tree_edges: frozenset[int]
    gens: tuple[int, ...]  # non-tree edge indices, ascending

    @property
    def rank(self) -> int:
        return len(self.gens)


def free_basis(lam: LambdaGraph, basepoint: int = 0) -> FreeBasis:
    """Breadth-first spanning tree from the basepoint, edges visited in
    (ground label, edge index) order."""
    if not 0 <= basepoint < lam.n_vertices:
        raise ValueError("basepoint is not a vertex of the model")
    adj: dict[int, list[tuple[tuple[int, int], int, int]]] = {
        i: [] for i in range(lam.n_vertices)
    }
    for ei, (u, l, j) in enumerate(lam.edges):
        adj[u].append(((j, ei), ei, l))
        adj[l].append(((j, ei), ei, u))
    for lst in adj.values():
        lst.sort()

    parent: list[tuple[int, int] | None] = [None] * lam.n_vertices
    tree: set[int] = set()
    seen = {basepoint}
    queue = [basepoint]
    while queue:
        x = queue.pop(0)
        for _, ei, other in adj[x]:
            if other not in seen:
                seen.add(other)
                parent[other] = (x, ei)
                tree.add(ei)
                queue.append(other)
    gens = tuple(ei for ei in range(lam.n_edges) if ei not in tree)
    return FreeBasis(lam, basepoint, tuple(parent), frozenset(tree), gens)


def tree_path(basis: FreeBasis, v: int) -> list[tuple[int, int]]:
    """Edge path from the basepoint to v through the tree, as
    (edge index, direction) with direction +1 for lower -> upper."""
    path = []
    while v != basis.basepoint:
        here = basis.parent[v]
        if here is None:
            raise ValueError("vertex is not in the spanning tree component")
        p, ei = here
        upper, lower, _ = basis.lam.edges[ei]
        path.append((ei, 1 if (lower == p and upper == v) else -1))
        v = p
    path.reverse()
    return path


def word_of_path(basis: FreeBasis, path) -> FreeWord:
    """The element of the free basis determined by a closed edge path."""
    gen_pos = {ei: i + 1 for i, ei in enumerate(basis.gens)}
    letters = []
    for ei, direction in path:
        i = gen_pos.get(ei)
        if i is not None:
            letters.append(i * direction)
    return reduce_word(basis.rank, letters)


def generator_loop(basis: FreeBasis, gen_edge: int) -> list[tuple[int, int]]:
    """The defining loop of a basis generator: tree path to the lower end,
    across the edge, tree path back from the upper end."""
    upper, lower, _ = basis.lam.edges[gen_edge]
    fwd = tree_path(basis, lower)
    back = [(ei, -d) for ei, d in reversed(tree_path(basis, upper))]
    return fwd + [(gen_edge, 1)] + back


@dataclass(frozen=True)
class SinkStabilization:
    """The particle-adding graph map between consecutive models and the
    homomorphism it induces on spanning-tree bases."""

    source: LambdaGraph
    target: LambdaGraph
    block: int
    hom: FreeHom


def sink_stabilization(lam: LambdaGraph, block: int) -> SinkStabilization:
    """Add one particle at the sink of the designated block.

    Vertices map by incrementing the block's coordinate; edges map label by
    label.  The induced homomorphism rewrites each basis loop of the source
    in the target's basis.
    """
    if not 0 <= block < lam.pi.n_blocks:
        raise ValueError(f"unknown block {block}")
    target = build_lambda(lam.pi, lam.k + 1)
    src_basis = free_basis(lam)
    tgt_basis = free_basis(target)

    tgt_index: dict[tuple[tuple[int, ...], int], int] = {}
    for ei, (u, l, j) in enumerate(target.edges):
        tgt_index[(target.vertices[l], j)] = ei

    def edge_image(ei: int) -> int:
        _, l, j = lam.edges[ei]
        low = list(lam.vertices[l])
        low[block] += 1
        return tgt_index[(tuple(low), j)]

    images = []
    for ge in src_basis.gens:
        path = generator_loop(src_basis, ge)
        image_path = [(edge_image(ei), d) for ei, d in path]
        images.append(word_of_path(tgt_basis, image_path))
    hom = FreeHom(src_basis.rank, tgt_basis.rank, tuple(images))
    return SinkStabilization(lam, target, block, hom)


def stabilization_vertex_image(stab: SinkStabilization, comp: tuple[int, ...]) -> tuple[int, ...]:
    up = list(comp)
    up[stab.block] += 1
    return tuple(up)


# ---------------------------------------------------------------------------
# The specific subgroups whose disjointness is machine-checked.
# ---------------------------------------------------------------------------


def star_commutator_subgroups(n: int, a: int) -> list[FreeWord]:
    """In the rank n-1 loop basis of the two-particle model of the n-edge
    star with all leaves identified, the cyclic subgroup generated by the
    commutator of consecutive generators starting at position 1+a."""
    if a not in (0, 1):
        raise ValueError("a must be 0 or 1")
    if n < 3 + a:
        raise ValueError(f"n={n} is too small for offset a={a}")
    rank = n - 1
    return [commutator(generator(rank, 1 + a), generator(rank, 2 + a))]


def star_projection_hom(n: int) -> FreeHom:
    """Kill every loop generator beyond the first two; the commutator of the
    first two survives, the shifted commutator dies."""
    if n < 4:
        raise ValueError("need at least four star edges")
    rank = n - 1
    images = [generator(2, 1), generator(2, 2)] + [identity(2)] * (rank - 2)
    return FreeHom(rank, 2, tuple(images))


def trivalent_product_subgroups(a: int) -> list[FreeWord]:
    """In the rank-3 basis of the three-particle model at a separating
    trivalent vertex (relation identifying the last two edges), the cyclic
    subgroup generated by the product of generator 1+a with generator 3."""
    if a not in (0, 1):
        raise ValueError("a must be 0 or 1")
    return [concat(generator(3, 1 + a), generator(3, 3))]


def trivalent_collapse_hom(a: int) -> FreeHom:
    """A rank-3 -> rank-1 homomorphism injective on the a-side product
    subgroup and trivial on the other one."""
    if a not in (0, 1):
        raise ValueError("a must be 0 or 1")
    t = generator(1, 1)
    t2 = concat(t, t)
    ti = FreeWord(1, (-1,))
    if a == 0:
        # g1 g3 -> t, g2 g3 -> 1
        return FreeHom(3, 1, (t2, t, ti))
    # g2 g3 -> t, g1 g3 -> 1
    return FreeHom(3, 1, (t, t2, ti))


def gamma_loop_words(n: int) -> list[FreeWord]:
    """The consecutive-edge loops of the two-particle model of the leaf-
    identified n-star, written in the deterministic spanning-tree basis.

    The i-th loop sends one particle from the sink to the center along edge
    i-1 and back along edge i (0-based labels); there are n-1 of them and
    they form an alternative free basis.
    """
    if n < 2:
        raise ValueError("need at least two star edges")
    lam = build_lambda(EquivRelation.indiscrete(n), 2)
    basis = free_basis(lam)
    edge_by_label = {j: ei for ei, (_, _, j) in enumerate(lam.edges)}
    words = []
    for i in range(1, n):
        path = [(edge_by_label[i - 1], -1), (edge_by_label[i], 1)]
        words.append(word_of_path(basis, path))
    return words


def gamma_to_tree_hom(n: int) -> FreeHom:
    """Change of basis from the consecutive-edge loops to the spanning-tree
    basis; an automorphism of the free group of rank n-1."""
    return FreeHom(n - 1, n - 1, tuple(gamma_loop_words(n)))
