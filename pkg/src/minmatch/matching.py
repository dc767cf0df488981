"""Matchings, maximality, and the certified size bound in integer sixths.

The bound for a connected subcubic graph is

    lambda(G) = (4n - m)/6 + (2I + K - n1)/6

with I = 1 iff G is cubic and K = 1 iff G is K2.  All comparisons are done
on lambda_times_6 = 4n - m + 2I + K - n1, so there is no floating point and
no rounding anywhere.  K33 is the single exception: its minimum maximal
matching has size 3, which exceeds floor(lambda), and certificates check it
against 5n/12 + 1/2 instead.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import Disconnected, EdgeNotInGraph, EmptyGraph, NotAMatching
from .graph import DegreeCensus, Edge, Graph, edge, is_k33

Matching = frozenset[Edge]


def as_matching(edges) -> Matching:
    return frozenset(edge(u, v) for u, v in edges)


def is_matching(g: Graph, M) -> bool:
    """True iff the edges exist in g and are pairwise vertex-disjoint."""
    covered: set[int] = set()
    for u, v in M:
        if not g.has_edge(u, v):
            raise EdgeNotInGraph(f"edge {edge(u, v)} not in graph")
        if u in covered or v in covered:
            return False
        covered.add(u)
        covered.add(v)
    return True

def covered_vertices(M) -> set[int]:
    out: set[int] = set()
    for u, v in M:
        out.add(u)
        out.add(v)
    return out


def maximality_status(g: Graph, M) -> int:
    """One-pass check: 0 = maximal matching, 1 = not a matching in g,
    2 = matching but extensible.  Fast path for the solver's per-step
    validation; the public predicates wrap it."""
    adj = g._adj
    covered: set[int] = set()
    for u, v in M:
        if u in covered or v in covered:
            return 1
        nbrs = adj.get(u)
        if nbrs is None or v not in nbrs:
            return 1
        covered.add(u)
        covered.add(v)
    for v, nbrs in adj.items():
        if v not in covered and not nbrs <= covered:
            return 2
    return 0


def is_maximal(g: Graph, M) -> bool:
    """True iff M is a matching and every edge of g has a covered endpoint."""
    if not is_matching(g, M):
        raise NotAMatching("edge set is not a matching")
    covered = covered_vertices(M)
    for v, nbrs in g._adj.items():
        if v not in covered and not nbrs <= covered:
            return False
    return True


@dataclass(frozen=True)
class BoundReport:
    """The certified bound, held exactly as lambda_times_6 / 6."""

    census: DegreeCensus
    cubic: int  # the indicator I
    k2: int     # the indicator K
    lambda_times_6: int

    @property
    def floor_lambda(self) -> int:
        return self.lambda_times_6 // 6


def bound_report(g: Graph) -> BoundReport:
    """Bound quantities for a connected graph; rejects disconnected input.

    The solver dispatches per component explicitly, so I and K always refer
    to one connected graph here.
    """
    if g.n == 0:
        raise EmptyGraph("bound undefined for the empty graph")
    if not g.is_connected():
        raise Disconnected("bound defined per connected graph")
    census = g.degree_census()
    cubic = 1 if g.is_cubic() else 0
    k2 = 1 if (census.n == 2 and census.m == 1) else 0
    lam6 = 4 * census.n - census.m + 2 * cubic + k2 - census.n1
    return BoundReport(census=census, cubic=cubic, k2=k2, lambda_times_6=lam6)


def lambda_times_6(g: Graph) -> int:
    """Bound numerator for any subcubic graph, summed over components.

    Each K2 component contributes its own K = 1 and each cubic component
    its own I = 1; this matches the per-component reading used when a
    reduction disconnects the graph.
    """
    census = g.degree_census()
    cubic = len(g.cubic_components())
    k2 = sum(
        1 for comp in g.connected_components()
        if len(comp) == 2 and g.has_edge(*sorted(comp))
    )
    return 4 * census.n - census.m + 2 * cubic + k2 - census.n1


def gamma_lower_bound(g: Graph) -> int:
    """ceil(m / 5): one matching edge dominates at most 5 edges at degree 3.

    For cubic graphs m = 3n/2, so this is exactly ceil(3n/10).
    """
    return -(-g.m // 5)


def matching_within_bound(g: Graph, M, report: BoundReport | None = None) -> bool:
    """Size check a certificate uses: special-cased for K33."""
    if is_k33(g):
        # 6|M| <= 6*(5n/12 + 1/2) = 18, and no maximal matching of K33 is
        # smaller than 3, so this pins |M| = 3.
        return len(M) == 3
    if report is None:
        report = bound_report(g)
    return 6 * len(M) <= report.lambda_times_6
