"""Simple undirected graphs with maximum degree 3.

Vertex identities are plain ints and stay stable across deletions, so a
reduction trace can always name vertices of the original input.  The degree
cap is enforced at mutation time; every graph reachable through this API is
simple and subcubic by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Iterator

from .errors import (
    DegreeOverflow,
    DuplicateEdge,
    InternalInvariantViolation,
    MissingEdge,
    SelfLoop,
    UnknownVertex,
)

MAX_DEGREE = 3

Edge = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    """Normalised (min, max) form used everywhere an edge is stored."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class DegreeCensus:
    n: int
    m: int
    n1: int
    n2: int
    n3: int

    @property
    def n0(self) -> int:
        return self.n - self.n1 - self.n2 - self.n3


class Graph:
    """Mutable subcubic graph: adjacency sets plus degree-indexed buckets.

    The buckets (vertices of degree 0, 1 and 2; degree 3 is implicit) make
    the solver's rule dispatch cheap on large graphs.
    """

    __slots__ = ("_adj", "_m", "_buckets")

    def __init__(self) -> None:
        self._adj: dict[int, set[int]] = {}
        self._m = 0
        self._buckets: tuple[set[int], set[int], set[int]] = (set(), set(), set())

    # -- construction ---------------------------------------------------------

    @classmethod
    def from_edges(cls, edges: Iterable[Edge], vertices: Iterable[int] = ()) -> "Graph":
        g = cls()
        for v in vertices:
            g.add_vertex(v)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    def copy(self) -> "Graph":
        g = Graph()
        g._adj = {v: set(nbrs) for v, nbrs in self._adj.items()}
        g._m = self._m
        g._buckets = tuple(set(b) for b in self._buckets)  # type: ignore[assignment]
        return g

    def subgraph(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph on the given vertex set (copied)."""
        keep = set(vertices)
        missing = keep - self._adj.keys()
        if missing:
            raise UnknownVertex(f"vertices not in graph: {sorted(missing)}")
        g = Graph()
        for v in keep:
            g.add_vertex(v)
        for v in keep:
            for w in self._adj[v]:
                if w in keep and v < w:
                    g.add_edge(v, w)
        return g

    # -- basic accessors ------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return self._m

    def __contains__(self, v: int) -> bool:
        return v in self._adj

    def vertices(self) -> list[int]:
        return sorted(self._adj)

    def iter_vertices(self) -> Iterator[int]:
        """Unordered iteration; use vertices() when order matters."""
        return iter(self._adj)

    def edges(self) -> list[Edge]:
        out = []
        for v, nbrs in self._adj.items():
            for w in nbrs:
                if v < w:
                    out.append((v, w))
        out.sort()
        return out

    def neighbors(self, v: int) -> set[int]:
        try:
            return self._adj[v]
        except KeyError:
            raise UnknownVertex(f"vertex {v} not in graph") from None

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    def degree_bucket(self, d: int) -> set[int]:
        """Vertices of degree d, for d in {0, 1, 2} (live view, do not mutate)."""
        return self._buckets[d]

    def min_degree(self) -> int:
        for d in (0, 1, 2):
            if self._buckets[d]:
                return d
        return MAX_DEGREE if self._adj else 0

    def is_cubic(self) -> bool:
        return bool(self._adj) and not (
            self._buckets[0] or self._buckets[1] or self._buckets[2]
        )

    # -- mutation -------------------------------------------------------------

    def _bucket_move(self, v: int, old: int, new: int) -> None:
        if old < MAX_DEGREE:
            self._buckets[old].discard(v)
        if new < MAX_DEGREE:
            self._buckets[new].add(v)

    def add_vertex(self, v: int) -> None:
        if v not in self._adj:
            self._adj[v] = set()
            self._buckets[0].add(v)

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise SelfLoop(f"self-loop at {u}")
        self.add_vertex(u)
        self.add_vertex(v)
        if v in self._adj[u]:
            raise DuplicateEdge(f"edge {edge(u, v)} already present")
        du, dv = len(self._adj[u]), len(self._adj[v])
        if du >= MAX_DEGREE or dv >= MAX_DEGREE:
            raise DegreeOverflow(f"edge {edge(u, v)} would exceed degree {MAX_DEGREE}")
        self._adj[u].add(v)
        self._adj[v].add(u)
        self._bucket_move(u, du, du + 1)
        self._bucket_move(v, dv, dv + 1)
        self._m += 1

    def remove_edge(self, u: int, v: int) -> None:
        if not self.has_edge(u, v):
            raise MissingEdge(f"edge {edge(u, v)} not present")
        du, dv = len(self._adj[u]), len(self._adj[v])
        self._adj[u].discard(v)
        self._adj[v].discard(u)
        self._bucket_move(u, du, du - 1)
        self._bucket_move(v, dv, dv - 1)
        self._m -= 1

    def remove_vertices(self, vs: Iterable[int]) -> None:
        """Delete the vertices and all incident edges (in place)."""
        vset = set(vs)
        missing = vset - self._adj.keys()
        if missing:
            raise UnknownVertex(f"vertices not in graph: {sorted(missing)}")
        for v in vset:
            for w in self._adj[v]:
                if w not in vset:
                    dw = len(self._adj[w])
                    self._adj[w].discard(v)
                    self._bucket_move(w, dw, dw - 1)
                    self._m -= 1
                elif v < w:
                    self._m -= 1
            dv = len(self._adj[v])
            if dv < MAX_DEGREE:
                self._buckets[dv].discard(v)
            del self._adj[v]

    def remove_vertices_with_undo(self, vs: Iterable[int]) -> dict[int, frozenset[int]]:
        """As remove_vertices, returning the data restore_vertices needs."""
        vset = set(vs)
        saved = {}
        for v in vset:
            if v not in self._adj:
                raise UnknownVertex(f"vertex {v} not in graph")
            saved[v] = frozenset(self._adj[v])
        self.remove_vertices(vset)
        return saved

    def restore_vertices(self, saved: dict[int, frozenset[int]]) -> None:
        """Inverse of remove_vertices_with_undo (edges added back verbatim)."""
        for v in saved:
            self.add_vertex(v)
        for v, nbrs in saved.items():
            for w in nbrs:
                if not self.has_edge(v, w):
                    self.add_edge(v, w)

    # -- analysis -------------------------------------------------------------

    def _reachable(self, start: int) -> set[int]:
        # frontier BFS with bulk set ops; much faster than per-edge loops
        adj = self._adj
        seen = {start}
        frontier = adj[start] - seen
        while frontier:
            seen |= frontier
            step = set().union(*(adj[v] for v in frontier))
            frontier = step - seen
        return seen

    def connected_components(self) -> list[set[int]]:
        """Maximal connected vertex sets, ordered by smallest contained id."""
        seen: set[int] = set()
        comps = []
        for start in self._adj:
            if start in seen:
                continue
            comp = self._reachable(start)
            seen |= comp
            comps.append(comp)
        comps.sort(key=min)
        return comps

    def is_connected(self) -> bool:
        if not self._adj:
            return False
        return len(self._reachable(next(iter(self._adj)))) == len(self._adj)

    def component_of(self, v: int) -> set[int]:
        if v not in self._adj:
            raise UnknownVertex(f"vertex {v} not in graph")
        return self._reachable(v)

    def find_bridges(self) -> set[Edge]:
        """All edges whose removal disconnects their component.

        Two-pass iterative lowlink DFS, O(n + m); no recursion so arbitrarily
        deep graphs are fine.
        """
        adj = self._adj
        preorder: dict[int, int] = {}
        parent: dict[int, int | None] = {}
        bridges: set[Edge] = set()
        counter = 0
        for root in adj:
            if root in preorder:
                continue
            parent[root] = None
            stack = [root]
            order = []
            while stack:
                v = stack.pop()
                if v in preorder:
                    continue
                preorder[v] = counter
                counter += 1
                order.append(v)
                for w in adj[v]:
                    if w not in preorder:
                        parent[w] = v  # the final writer becomes the tree parent
                        stack.append(w)
            # low[v] = smallest preorder reachable from v's subtree via one
            # non-tree edge; initialise with direct neighbours (the parent
            # skipped once, which is sound in a simple graph), then fold
            # children into parents in reverse preorder
            low = {}
            for v in order:
                pv = parent[v]
                best = preorder[v]
                for w in adj[v]:
                    if w != pv:
                        pw = preorder[w]
                        if pw < best:
                            best = pw
                low[v] = best
            for v in reversed(order):
                p = parent[v]
                if p is None:
                    continue
                lv = low[v]
                if lv > preorder[p]:
                    bridges.add(edge(p, v))
                if lv < low[p]:
                    low[p] = lv
        return bridges

    def cubic_components(self) -> list[set[int]]:
        """Components in which every vertex has degree exactly 3."""
        return [
            comp
            for comp in self.connected_components()
            if all(len(self._adj[v]) == MAX_DEGREE for v in comp)
        ]

    def has_cubic_component_touching(self, vertices: Iterable[int]) -> bool:
        """True iff some component containing one of `vertices` is cubic.

        Early-exits as soon as a vertex of degree < 3 is reachable, which is
        the common case; worst case one traversal per seed component.
        """
        seen: set[int] = set()
        for s in vertices:
            if s in seen or s not in self._adj:
                continue
            comp = {s}
            stack = [s]
            cubic = True
            while stack:
                v = stack.pop()
                if len(self._adj[v]) != MAX_DEGREE:
                    cubic = False
                    break
                for w in self._adj[v]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            if cubic and not stack:
                return True
            # mark whatever we explored; enough to avoid rescanning from
            # another seed in the same component
            seen |= comp
        return False

    def degree_census(self) -> DegreeCensus:
        return DegreeCensus(
            n=self.n,
            m=self._m,
            n1=len(self._buckets[1]),
            n2=len(self._buckets[2]),
            n3=self.n - sum(len(b) for b in self._buckets),
        )

    def validate(self) -> None:
        """Debug check: symmetry, degree cap, counter and bucket consistency."""
        m2 = 0
        for v, nbrs in self._adj.items():
            if len(nbrs) > MAX_DEGREE:
                raise InternalInvariantViolation(f"degree of {v} exceeds {MAX_DEGREE}")
            if v in nbrs:
                raise InternalInvariantViolation(f"self-loop at {v}")
            for w in nbrs:
                if w not in self._adj or v not in self._adj[w]:
                    raise InternalInvariantViolation(f"asymmetric edge {v}-{w}")
            m2 += len(nbrs)
            d = len(nbrs)
            for b in range(MAX_DEGREE):
                if (v in self._buckets[b]) != (d == b):
                    raise InternalInvariantViolation(f"bucket {b} wrong for {v}")
        if m2 != 2 * self._m:
            raise InternalInvariantViolation(f"edge counter {self._m} != {m2 // 2}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# -- fixed-pattern isomorphism ------------------------------------------------

def _pattern_edges(name: str) -> tuple[int, list[Edge]]:
    if name == "K2":
        return 2, [(0, 1)]
    if name == "K4":
        return 4, [(i, j) for i in range(4) for j in range(i + 1, 4)]
    if name == "K33":
        return 6, [(i, j) for i in range(3) for j in range(3, 6)]
    if name == "K33_MINUS":
        return 6, [(i, j) for i in range(3) for j in range(3, 6) if (i, j) != (0, 3)]
    raise ValueError(f"unknown pattern {name!r}")


def is_isomorphic_small(g: Graph, pattern: str) -> bool:
    """Isomorphism against one of the fixed patterns K2/K4/K33/K33_MINUS.

    Degree-census filter first, then exhaustive mapping search; the patterns
    have at most 6 vertices so brute force is cheap.
    """
    pn, pedges = _pattern_edges(pattern)
    if g.n != pn or g.m != len(pedges):
        return False
    pat = Graph.from_edges(pedges, vertices=range(pn))
    cg, cp = g.degree_census(), pat.degree_census()
    if (cg.n1, cg.n2, cg.n3) != (cp.n1, cp.n2, cp.n3):
        return False
    gv = g.vertices()
    pedge_set = set(pedges)
    for perm in permutations(range(pn)):
        ok = True
        for i in range(pn):
            for j in range(i + 1, pn):
                if (edge(perm[i], perm[j]) in pedge_set) != g.has_edge(gv[i], gv[j]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def is_k33(g: Graph) -> bool:
    """Fast path for the one exceptional graph of the main bound."""
    return g.n == 6 and g.m == 9 and g.is_cubic() and is_isomorphic_small(g, "K33")
