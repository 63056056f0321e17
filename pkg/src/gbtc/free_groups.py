"""Exact algebra of finitely generated subgroups of finite-rank free groups.

Words are freely reduced sequences of signed generator indices: +i is the
i-th generator (1-based), -i its inverse.  A subgroup is represented by its
folded core automaton in the Stallings style: a basepointed graph with arcs
labeled by generators, deterministic in both directions, in which every
non-basepoint state lies on some reduced subgroup word.  Membership is path
tracing, rank is arcs - states + 1, and intersections of conjugates are read
off the fiber product of two cores: the two subgroups have disjoint
conjugates exactly when every component of the product graph is a forest.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass


@dataclass(frozen=True)
class FreeWord:
    """A freely reduced word in a fixed rank context."""

    rank: int
    letters: tuple[int, ...]

    def __post_init__(self):
        for x in self.letters:
            if x == 0 or abs(x) > self.rank:
                raise ValueError(f"generator index {x} out of range for rank {self.rank}")
        for a, b in zip(self.letters, self.letters[1:]):
            if a == -b:
                raise ValueError("word is not freely reduced")

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def is_identity(self) -> bool:
        return not self.letters


def _reduce_letters(letters) -> tuple[int, ...]:
    stack: list[int] = []
    for x in letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def reduce_word(rank: int, letters) -> FreeWord:
    """Freely reduce a raw letter sequence."""
    for x in letters:
        if x == 0 or abs(x) > rank:
            raise ValueError(f"generator index {x} out of range for rank {rank}")
    return FreeWord(rank, _reduce_letters(letters))


def identity(rank: int) -> FreeWord:
    return FreeWord(rank, ())


def generator(rank: int, i: int) -> FreeWord:
    return FreeWord(rank, (i,))


def concat(*words: FreeWord) -> FreeWord:
    if not words:
        raise ValueError("need at least one word")
    rank = words[0].rank
    letters: list[int] = []
    for w in words:
        if w.rank != rank:
            raise ValueError("rank context mismatch")
        letters.extend(w.letters)
    return FreeWord(rank, _reduce_letters(letters))


def inverse(w: FreeWord) -> FreeWord:
    return FreeWord(w.rank, tuple(-x for x in reversed(w.letters)))


def commutator(u: FreeWord, v: FreeWord) -> FreeWord:
    return concat(u, v, inverse(u), inverse(v))


def parse_word(rank: int, text: str) -> FreeWord:
    """Parse the textual syntax: generators g1..gN, inverses g1^-1, powers
    g1^3, commutator sugar [g1,g2]; tokens separated by whitespace."""

    def simple(tok: str) -> list[int]:
        base, _, pow_s = tok.partition("^")
        if not base.startswith("g"):
            raise ValueError(f"bad token {tok!r}")
        try:
            i = int(base[1:])
            p = int(pow_s) if pow_s else 1
        except ValueError as exc:
            raise ValueError(f"bad token {tok!r}") from exc
        if not 1 <= i <= rank:
            raise ValueError(f"generator index {i} out of range for rank {rank}")
        return [i] * p if p >= 0 else [-i] * (-p)

    letters: list[int] = []
    for tok in text.split():
        if tok == "1":
            continue
        if tok.startswith("[") and tok.endswith("]"):
            try:
                left, right = tok[1:-1].split(",")
            except ValueError as exc:
                raise ValueError(f"bad commutator token {tok!r}") from exc
            u, v = simple(left), simple(right)
            letters += u + v + [-x for x in reversed(u)] + [-x for x in reversed(v)]
        else:
            letters += simple(tok)
    return reduce_word(rank, letters)


def word_str(w: FreeWord) -> str:
    if not w.letters:
        return "1"
    parts = []
    i = 0
    while i < len(w.letters):
        x = w.letters[i]
        j = i
        while j < len(w.letters) and w.letters[j] == x:
            j += 1
        run = j - i
        power = run if x > 0 else -run
        parts.append(f"g{abs(x)}" if power == 1 else f"g{abs(x)}^{power}")
        i = j
    return " ".join(parts)


@dataclass(frozen=True)
class FreeHom:
    """A homomorphism of free groups given by images of the generators."""

    domain_rank: int
    codomain_rank: int
    images: tuple[FreeWord, ...]

    def __post_init__(self):
        if len(self.images) != self.domain_rank:
            raise ValueError("need one image word per domain generator")
        for w in self.images:
            if w.rank != self.codomain_rank:
                raise ValueError("image word lives in the wrong rank context")


def identity_hom(rank: int) -> FreeHom:
    return FreeHom(rank, rank, tuple(generator(rank, i + 1) for i in range(rank)))


def apply_hom(f: FreeHom, w: FreeWord) -> FreeWord:
    if w.rank != f.domain_rank:
        raise ValueError("word is not in the domain context")
    stack: list[int] = []
    for x in w.letters:
        img = f.images[abs(x) - 1].letters
        seq = img if x > 0 else tuple(-y for y in reversed(img))
        for y in seq:
            if stack and stack[-1] == -y:
                stack.pop()
            else:
                stack.append(y)
    return FreeWord(f.codomain_rank, tuple(stack))


def compose_hom(g: FreeHom, f: FreeHom) -> FreeHom:
    """g after f."""
    if f.codomain_rank != g.domain_rank:
        raise ValueError("rank context mismatch in composition")
    return FreeHom(f.domain_rank, g.codomain_rank, tuple(apply_hom(g, w) for w in f.images))


def _label_key(l: int) -> tuple[int, int]:
    return (abs(l), 0 if l > 0 else 1)


class FoldedAutomaton:
    """Folded core automaton of a finitely generated subgroup.

    States are 0..n_states-1 with basepoint 0; arcs carry positive labels,
    and a letter -l traverses the l-arc backwards.  States are numbered
    canonically (breadth-first from the basepoint in label order), so two
    runs of the construction produce identical objects.
    """

    def __init__(self, rank: int, n_states: int, arcs: tuple[tuple[int, int, int], ...]):
        self.rank = rank
        self.n_states = n_states
        self.arcs = arcs
        trans: dict[tuple[int, int], int] = {}
        for s, l, t in arcs:
            if (s, l) in trans or (t, -l) in trans:
                raise ValueError("automaton is not folded")
            trans[(s, l)] = t
            trans[(t, -l)] = s
        self._trans = trans

    def step(self, state: int, letter: int) -> int | None:
        return self._trans.get((state, letter))

    def transition_table(self) -> list[list[int]]:
        """Dense table: table[state][letter + rank] -> state or -1."""
        width = 2 * self.rank + 1
        tab = [[-1] * width for _ in range(self.n_states)]
        for (s, l), t in self._trans.items():
            tab[s][l + self.rank] = t
        return tab

    def __eq__(self, other):
        return (
            isinstance(other, FoldedAutomaton)
            and self.rank == other.rank
            and self.n_states == other.n_states
            and self.arcs == other.arcs
        )

    def __hash__(self):
        return hash((self.rank, self.n_states, self.arcs))

    def __repr__(self):
        return f"FoldedAutomaton(rank={self.rank}, states={self.n_states}, arcs={len(self.arcs)})"


def stallings_core(rank: int, gens) -> FoldedAutomaton:
    """Fold the bouquet of generator loops and prune to the core.

    The result recognizes exactly the reduced words of the subgroup generated
    by ``gens``; an empty or all-identity generating set yields the
    basepoint-only automaton of the trivial subgroup.
    """
    gens = list(gens)
    for w in gens:
        if w.rank != rank:
            raise ValueError("generator word in the wrong rank context")

    arcs0: list[tuple[int, int, int]] = []
    n = 1
    for w in gens:
        if not w.letters:
            continue
        cur = 0
        for i, x in enumerate(w.letters):
            nxt = 0 if i == len(w.letters) - 1 else n
            if nxt == n:
                n += 1
            if x > 0:
                arcs0.append((cur, x, nxt))
            else:
                arcs0.append((nxt, -x, cur))
            cur = nxt

    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    out: list[dict[int, int]] = [dict() for _ in range(n)]
    inc: list[dict[int, int]] = [dict() for _ in range(n)]
    pending: deque[tuple[int, int]] = deque()

    def union(a: int, b: int) -> None:
        pending.append((a, b))
        while pending:
            x, y = pending.popleft()
            x, y = find(x), find(y)
            if x == y:
                continue
            if len(out[x]) + len(inc[x]) < len(out[y]) + len(inc[y]):
                x, y = y, x
            parent[y] = x
            for l, t in out[y].items():
                t0 = out[x].get(l)
                if t0 is None:
                    out[x][l] = t
                else:
                    pending.append((t0, t))
            for l, s in inc[y].items():
                s0 = inc[x].get(l)
                if s0 is None:
                    inc[x][l] = s
                else:
                    pending.append((s0, s))
            out[y] = {}
            inc[y] = {}

    for s, l, t in arcs0:
        s, t = find(s), find(t)
        t0 = out[s].get(l)
        if t0 is not None:
            union(t0, t)
            continue
        s0 = inc[t].get(l)
        if s0 is not None:
            union(s0, s)
            continue
        out[s][l] = t
        inc[t][l] = s

    # canonicalize slots and prune hanging trees off the core
    reps = sorted({find(i) for i in range(n)})
    bp = find(0)
    slots: dict[int, dict[int, int]] = {r: {} for r in reps}
    for r in reps:
        for l, t in out[r].items():
            slots[r][l] = find(t)
        for l, s in inc[r].items():
            slots[r][-l] = find(s)

    live = set(reps)
    queue = deque(r for r in reps if r != bp and len(slots[r]) <= 1)
    while queue:
        r = queue.popleft()
        if r not in live or r == bp or len(slots[r]) > 1:
            continue
        live.discard(r)
        for l, t in list(slots[r].items()):
            del slots[t][-l]
            if t != bp and len(slots[t]) <= 1:
                queue.append(t)
        slots[r] = {}

    # canonical breadth-first renumbering from the basepoint
    order = {bp: 0}
    bfs = deque((bp,))
    while bfs:
        s = bfs.popleft()
        for l in sorted(slots[s], key=_label_key):
            t = slots[s][l]
            if t not in order:
                order[t] = len(order)
                bfs.append(t)
    arcs = sorted(
        (order[s], l, order[t])
        for s in live
        for l, t in slots[s].items()
        if l > 0
    )
    return FoldedAutomaton(rank, len(order), tuple(arcs))


def contains(a: FoldedAutomaton, w: FreeWord) -> bool:
    """Membership by path tracing; the identity is always contained."""
    if w.rank != a.rank:
        raise ValueError("rank context mismatch")
    cur = 0
    for x in w.letters:
        nxt = a.step(cur, x)
        if nxt is None:
            return False
        cur = nxt
    return cur == 0


def subgroup_rank(a: FoldedAutomaton) -> int:
    return len(a.arcs) - a.n_states + 1


def subgroup_elements_up_to(a: FoldedAutomaton, max_len: int) -> list[tuple[int, ...]]:
    """All nontrivial reduced subgroup words of length <= max_len.

    These are the non-backtracking closed walks at the basepoint, enumerated
    in canonical label order.
    """
    found: list[tuple[int, ...]] = []
    labels = sorted((l for l in range(-a.rank, a.rank + 1) if l != 0), key=_label_key)
    stack: list[tuple[int, int, tuple[int, ...]]] = [(0, 0, ())]
    while stack:
        state, last, word = stack.pop()
        for l in reversed(labels):
            if last and l == -last:
                continue
            t = a.step(state, l)
            if t is None:
                continue
            w = word + (l,)
            if t == 0:
                found.append(w)
            if len(w) < max_len:
                stack.append((t, l, w))
    found.sort(key=lambda w: (len(w), tuple(_label_key(x) for x in w)))
    return found


def restriction_injective(f: FreeHom, subgroup_gens) -> bool:
    """Is f injective on the subgroup generated by the given words?

    Decided by rank comparison: a surjection between free groups of equal
    finite rank is an isomorphism, so the restriction is injective exactly
    when the image subgroup has the same rank as the source subgroup.
    """
    gens = list(subgroup_gens)
    r_source = subgroup_rank(stallings_core(f.domain_rank, gens))
    images = [apply_hom(f, w) for w in gens]
    r_image = subgroup_rank(stallings_core(f.codomain_rank, images))
    return r_image == r_source


def maps_onto_full_group(f: FreeHom) -> bool:
    """Do the generator images generate the whole codomain free group?"""
    core = stallings_core(f.codomain_rank, f.images)
    return core.n_states == 1 and len(core.arcs) == f.codomain_rank


def is_isomorphism(f: FreeHom) -> bool:
    if f.domain_rank != f.codomain_rank:
        return False
    gens = [generator(f.domain_rank, i + 1) for i in range(f.domain_rank)]
    return restriction_injective(f, gens) and maps_onto_full_group(f)


@dataclass(frozen=True)
class PullbackGraph:
    """Fiber product of two core automata, as an undirected multigraph.

    Nodes are state pairs; for each matching pair of arcs there is one edge.
    Components containing a cycle witness a nontrivial intersection of
    conjugates of the two subgroups.
    """

    nodes: tuple[tuple[int, int], ...]
    edges: tuple[tuple[tuple[int, int], tuple[int, int], int], ...]


def pullback(a: FoldedAutomaton, b: FoldedAutomaton) -> PullbackGraph:
    if a.rank != b.rank:
        raise ValueError("rank context mismatch")
    nodes = tuple((i, j) for i in range(a.n_states) for j in range(b.n_states))
    by_label: dict[int, list[tuple[int, int]]] = {}
    for s, l, t in b.arcs:
        by_label.setdefault(l, []).append((s, t))
    edges = []
    for s, l, t in a.arcs:
        for u, v in by_label.get(l, ()):
            edges.append(((s, u), (t, v), l))
    return PullbackGraph(nodes, tuple(edges))


def is_forest(p: PullbackGraph) -> bool:
    parent = {v: v for v in p.nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y, _ in p.edges:
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        parent[ry] = rx
    return True


def disjoint_conjugates(h0, h1, rank: int) -> bool:
    """Do the subgroups generated by h0 and h1 have disjoint conjugates?

    True iff every conjugate of the first meets the second trivially, decided
    by acyclicity of the fiber product of the two core automata.  A trivial
    side makes the condition vacuous.
    """
    a = stallings_core(rank, h0)
    b = stallings_core(rank, h1)
    return is_forest(pullback(a, b))


@dataclass(frozen=True)
class ConjugacySearch:
    """Outcome of the exhaustive conjugator search.

    ``violation`` holds a witness pair (g, h) with h a nontrivial element of
    the first subgroup and g h g^-1 in the second; None means no violation
    exists with |h| and |g| up to the searched length (not a proof of
    disjointness).
    """

    max_len: int
    violation: tuple[FreeWord, FreeWord] | None

    @property
    def found_violation(self) -> bool:
        return self.violation is not None


def disjoint_conjugates_bruteforce(h0, h1, rank: int, max_len: int) -> ConjugacySearch:
    """Independent oracle: search all conjugators g and subgroup elements h
    up to the given word length for g h g^-1 landing in the second subgroup."""
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    a = stallings_core(rank, h0)
    b = stallings_core(rank, h1)
    tab = b.transition_table()
    offset = rank
    letters = sorted((l for l in range(-rank, rank + 1) if l != 0), key=_label_key)

    def member(word: tuple[int, ...]) -> bool:
        cur = 0
        for x in word:
            cur = tab[cur][x + offset]
            if cur < 0:
                return False
        return cur == 0

    for h in subgroup_elements_up_to(a, max_len):
        # depth-first over reduced conjugators, outermost letter first
        stack: list[tuple[tuple[int, ...], tuple[int, ...]]] = [((), h)]
        while stack:
            g, m = stack.pop()
            if m and member(m):
                return ConjugacySearch(
                    max_len, (FreeWord(rank, g), FreeWord(rank, h))
                )
            if len(g) >= max_len:
                continue
            first = g[0] if g else 0
            for x in reversed(letters):
                if first and x == -first:
                    continue
                # conjugating a reduced word by one letter only cancels at the ends
                if m and m[0] == -x:
                    lm = m[1:]
                    m2 = lm[:-1] if lm and lm[-1] == x else lm + (-x,)
                else:
                    m2 = ((x,) + m[:-1]) if m and m[-1] == x else (x,) + m + (-x,)
                stack.append(((x,) + g, m2))
    return ConjugacySearch(max_len, None)
