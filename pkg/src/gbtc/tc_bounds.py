"""Lower and stable bounds on the sequential topological complexity of
unordered particle configurations on a graph.

With n0 vertices of valence >= 4, n1 separating trivalent and n2
non-separating trivalent vertices (m = n0 + n1 + n2 >= 2), any admissible
choice 0 <= ci <= ni with k >= 2(c0 + c2) + 3 c1 certifies

    TC_r >= (r - 2) * min(floor(k/2), m) + 2 (c0 + c1) + c2      (r >= 2),

and TC_r <= r * m holds for k >= 2 m.  When n2 = 0 the two meet: TC_r equals
r * m for all k >= 2 m + n1.  The engine maximizes the certified bound over
the (at most) (n0+1)(n1+1)(n2+1) admissible triples by exhaustive search,
which is immune to coefficient-weighting mistakes at these sizes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .graph_core import Graph, HypothesisError, VertexClassification, classify, is_connected


@dataclass(frozen=True)
class BoundQuery:
    graph: Graph
    r: int
    k: int

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("the motion-planning order r must be at least 1")
        if self.k < 0:
            raise ValueError("the particle count k must be nonnegative")


@dataclass(frozen=True)
class BoundReport:
    classification: VertexClassification
    r: int
    k: int | None = None
    choice: tuple[int, int, int] | None = None
    lower: int | None = None
    upper: int | None = None
    stable_value: int | None = None
    k0: int | None = None
    caveats: tuple[str, ...] = ()
    homology_status: str = "assumed"

    def __post_init__(self):
        if self.lower is not None and self.upper is not None and self.lower > self.upper:
            raise ValueError("lower bound exceeds upper bound")
        if self.choice is not None:
            c0, c1, c2 = self.choice
            cls = self.classification
            if not (0 <= c0 <= cls.n0 and 0 <= c1 <= cls.n1 and 0 <= c2 <= cls.n2):
                raise ValueError("choice exceeds the classification counts")
            if self.k is not None and self.k < 2 * (c0 + c2) + 3 * c1:
                raise ValueError("choice is not admissible at this k")

    def as_dict(self) -> dict:
        return {
            "classification": self.classification.as_dict(),
            "r": self.r,
            "k": self.k,
            "choice": list(self.choice) if self.choice is not None else None,
            "lower": self.lower,
            "upper": self.upper,
            "stable_value": self.stable_value,
            "k0": self.k0,
            "caveats": list(self.caveats),
            "homology_status": self.homology_status,
        }


def _require_bound_hypotheses(g: Graph, cls: VertexClassification) -> None:
    if cls.m < 2:
        raise HypothesisError("connected graph with m >= 2 required (at least two essential vertices)")


def _classified(g: Graph) -> VertexClassification:
    if not is_connected(g):
        raise HypothesisError("connected graph required")
    return classify(g)


def admissible_choices(cls: VertexClassification, k: int):
    for c0 in range(cls.n0 + 1):
        for c1 in range(cls.n1 + 1):
            for c2 in range(cls.n2 + 1):
                if 2 * (c0 + c2) + 3 * c1 <= k:
                    yield (c0, c1, c2)


def bound_value(r: int, k: int, m: int, choice: tuple[int, int, int]) -> int:
    c0, c1, c2 = choice
    return (r - 2) * min(k // 2, m) + 2 * (c0 + c1) + c2


def greedy_choice(cls: VertexClassification, k: int) -> tuple[int, int, int]:
    """Maximal ci under the k constraint, filling c0 first, then c1, then c2
    (their value per admissibility cost decreases in that order)."""
    c0 = min(cls.n0, k // 2)
    rem = k - 2 * c0
    c1 = min(cls.n1, rem // 3)
    rem -= 3 * c1
    c2 = min(cls.n2, rem // 2)
    return (c0, c1, c2)


def lower_bound(q: BoundQuery, homology_verified: bool | None = None) -> BoundReport:
    """Best certified lower bound at (r, k), maximized over admissible
    choices; ties break to the lexicographically largest triple."""
    cls = _classified(q.graph)
    if q.r < 2:
        raise HypothesisError("the lower bound requires r >= 2")
    _require_bound_hypotheses(q.graph, cls)

    best = max(
        admissible_choices(cls, q.k),
        key=lambda c: (bound_value(q.r, q.k, cls.m, c), c),
    )
    lower = bound_value(q.r, q.k, cls.m, best)
    upper = q.r * cls.m
    caveats = []
    if q.k < 2 * cls.m:
        caveats.append(
            f"upper bound reported outside its asserted range (k >= {2 * cls.m} needed)"
        )
    status = "assumed"
    if homology_verified is True:
        status = "verified"
    elif homology_verified is False:
        status = "unverified at desk scale"
    return BoundReport(
        classification=cls,
        r=q.r,
        k=q.k,
        choice=best,
        lower=lower,
        upper=upper,
        caveats=tuple(caveats),
        homology_status=status,
    )


def upper_bound(q: BoundQuery) -> int:
    """r * m; asserted for k >= 2m, still reported (with a caveat at the
    reporting layer) below that range."""
    cls = _classified(q.graph)
    return q.r * cls.m


def stable_report(g: Graph, r: int) -> BoundReport:
    """Stable value r * m and stable range start k0 = 2m + (number of
    trivalent vertices), available exactly when there are no non-separating
    trivalent vertices."""
    if r < 1:
        raise HypothesisError("the motion-planning order r must be at least 1")
    cls = _classified(g)
    _require_bound_hypotheses(g, cls)
    if cls.n2 > 0:
        return BoundReport(
            classification=cls,
            r=r,
            caveats=(
                "graph has non-separating trivalent vertices: no stable value is "
                "established (open already for the two-vertex graph with three "
                "parallel edges)",
            ),
        )
    k0 = 2 * cls.m + cls.trivalent_total
    return BoundReport(
        classification=cls,
        r=r,
        stable_value=r * cls.m,
        k0=k0,
    )


class ChainCheck(NamedTuple):
    ok: bool
    steps: tuple[str, ...]

    def __bool__(self) -> bool:  # noqa: D105
        return self.ok


def proof_chain_check(g: Graph, r: int) -> ChainCheck:
    """Re-run the stable-value arithmetic with every ci maximal.

    At k = 2 c0 + 3 c1 (c2 = 0 forced), the certified bound collapses to
    (r - 2) m + 2 m = r m and meets the upper bound; the check recomputes
    each step and confirms the chain closes.  Graphs with non-separating
    trivalent vertices fail the hypotheses and return not-ok.
    """
    cls = _classified(g)
    if cls.m < 2:
        return ChainCheck(False, ("hypothesis failed: m >= 2 required",))
    if cls.n2 > 0:
        return ChainCheck(False, ("hypothesis failed: no non-separating trivalent vertices allowed",))
    if r < 2:
        return ChainCheck(False, ("hypothesis failed: r >= 2 required",))

    c0, c1, c2 = cls.n0, cls.n1, 0
    m = cls.m
    k_star = 2 * (c0 + c2) + 3 * c1
    steps = []
    line1 = (r - 2) * min(k_star // 2, m) + 2 * (c0 + c1) + c2
    line2 = (r - 2) * min(m + c1 // 2, m) + 2 * m
    line3 = r * m
    steps.append(f"k* = 2(c0+c2) + 3 c1 = {k_star}")
    steps.append(f"(r-2) min(floor(k*/2), m) + 2(c0+c1) + c2 = {line1}")
    steps.append(f"(r-2) min(m + floor(c1/2), m) + 2m = {line2}")
    steps.append(f"r m = {line3}")
    ok = line1 == line2 == line3
    report = lower_bound(BoundQuery(g, r, k_star))
    ok = ok and report.lower == line3 and report.upper == line3
    ok = ok and k_star == 2 * m + cls.trivalent_total
    steps.append(f"engine lower = {report.lower}, upper = {report.upper}")
    return ChainCheck(ok, tuple(steps))
