"""Constructive solver: maximal matchings within the certified size bound.

Each call on a connected subcubic graph returns a SolveCertificate whose
matching satisfies 6|M| <= lambda_times_6 (the 6-vertex exceptional graph
gets |M| = 3 instead).  The solver repeatedly picks the first applicable
rule, reduces, recurses, and extends the sub-solution through the step's
recipe, validating maximality, growth budget, and the bound after every
extension.  Rule priority: small-graph base case, then pendants, bridges,
adjacent degree-2 pairs, degree-2 vertices with degree-3 neighbours, and
finally the cubic case.

Validation failures raise InternalInvariantViolation: the construction
guarantees they cannot happen, so one firing is always an implementation
bug, never an input problem.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass

from . import reductions as R
from .errors import (
    Disconnected,
    EmptyGraph,
    InternalInvariantViolation,
    InvalidConstraint,
    PreconditionViolated,
)
from .graph import Edge, Graph, edge, is_k33
from .matching import (
    BoundReport,
    Matching,
    bound_report,
    is_matching,
    is_maximal,
    matching_within_bound,
    maximality_status,
)
from .oracle import gamma_exact, gamma_exact_avoiding
from .reductions import (
    ExtensionBranch,
    ExtensionRecipe,
    ReductionStep,
    choose_crossing_pair,
    select_noncubic_edge,
)

__all__ = [
    "PendantConstraint",
    "SolveCertificate",
    "solve",
    "solve_avoiding",
    "solve_all",
    "select_rule",
    "apply_step",
    "extend_solution",
    "solve_bridge_case",
    "replay",
    "select_noncubic_edge",
    "choose_crossing_pair",
]

BASE_SIZE = 9


@dataclass(frozen=True)
class PendantConstraint:
    vertex: int
    forbidden_edge: Edge


@dataclass
class SolveCertificate:
    matching: Matching
    trace: list[ReductionStep]
    bound: BoundReport
    valid: bool
    k33_special: bool
    elapsed_ms: float


def _lambda6_connected(g: Graph) -> int:
    # connected by context; skips the component scan of the public helper
    c = g.degree_census()
    cubic = 1 if g.is_cubic() else 0
    k2 = 1 if (c.n == 2 and c.m == 1) else 0
    return 4 * c.n - c.m + 2 * cubic + k2 - c.n1


def _check_constraint(g: Graph, c: PendantConstraint) -> None:
    if c.vertex not in g:
        raise InvalidConstraint(f"vertex {c.vertex} not in graph")
    if g.degree(c.vertex) != 1:
        raise InvalidConstraint(f"vertex {c.vertex} has degree {g.degree(c.vertex)}, not 1")
    (nbr,) = g.neighbors(c.vertex)
    if edge(*c.forbidden_edge) != edge(c.vertex, nbr):
        raise InvalidConstraint("forbidden edge is not the pendant edge")
    if g.n == 2:
        raise InvalidConstraint("a single-edge graph has no avoiding maximal matching")


def select_rule(g: Graph, constraint: PendantConstraint | None = None) -> ReductionStep:
    """First applicable reduction in priority order (callers handle n <= 9)."""
    if constraint is not None:
        _check_constraint(g, constraint)
        return R.degree1_step(g, constraint.vertex, anchored=True)
    pendants = g.degree_bucket(1)
    if pendants:
        return R.degree1_step(g, min(pendants))
    bridges = g.find_bridges()
    if bridges:
        return ReductionStep(
            rule=R.RULE_BRIDGE,
            case=None,
            deleted=frozenset(),
            added_edges=frozenset(),
            extension=None,
            budget=None,
            meta={"bridge": min(bridges)},
        )
    deg2 = g.degree_bucket(2)
    if deg2:
        if any(g.degree(w) == 2 for v in deg2 for w in g.neighbors(v)):
            return R.adjacent_deg2_step(g)
        return R.deg2_step(g)
    return R.cubic_step(g)


def apply_step(g: Graph, step: ReductionStep) -> Graph:
    """Reduced graph for a linear step (copy); checked subcubic and, when the
    step adds edges, free of cubic components."""
    out = g.copy()
    if step.rule == R.RULE_BRIDGE:
        return out
    out.remove_vertices(step.deleted)
    for e in sorted(step.added_edges):
        out.add_edge(*e)
    if step.added_edges:
        touch = [v for e in step.added_edges for v in e]
        if out.has_cubic_component_touching(touch):
            raise InternalInvariantViolation(
                f"{step.rule}/{step.case} produced a cubic component"
            )
    return out


def extend_solution(g: Graph, step: ReductionStep, sub: Matching) -> Matching:
    """Apply the step's recipe to a maximal matching of the reduced graph and
    validate the result against g."""
    if step.extension is None:
        raise PreconditionViolated(f"{step.rule} steps carry no extension recipe")
    M = step.extension.apply(frozenset(sub))
    _validate_extension(g, step, sub, M)
    return M


def _validate_extension(g: Graph, step: ReductionStep, sub, M) -> None:
    if maximality_status(g, M) != 0:
        raise InternalInvariantViolation(
            f"extension of {step.rule}/{step.case} is not a maximal matching"
        )
    if step.budget is not None and len(M) - len(sub) > step.budget:
        raise InternalInvariantViolation(
            f"{step.rule}/{step.case} grew by {len(M) - len(sub)} > {step.budget}"
        )


# -- recursive engine -----------------------------------------------------------

def _solve_graph(g: Graph, steps: list[ReductionStep]) -> Matching:
    """Solve a possibly disconnected graph, components in sorted order."""
    if g.n == 0:
        return frozenset()
    if g.is_connected():
        return _solve_connected(g, None, steps, internal=True)
    out: set[Edge] = set()
    for comp in g.connected_components():
        out |= _solve_connected(g.subgraph(comp), None, steps, internal=True)
    return frozenset(out)


def _solve_connected(
    g: Graph,
    constraint: PendantConstraint | None,
    steps: list[ReductionStep],
    internal: bool,
) -> Matching:
    if g.n <= BASE_SIZE:
        return _solve_base(g, constraint, steps, internal)
    step = select_rule(g, constraint)
    if step.rule == R.RULE_BRIDGE:
        return _bridge_matching(g, step.meta["bridge"], steps)
    steps.append(step)
    saved = g.remove_vertices_with_undo(step.deleted)
    added = sorted(step.added_edges)
    for e in added:
        g.add_edge(*e)
    if added and g.has_cubic_component_touching([v for e in added for v in e]):
        raise InternalInvariantViolation(
            f"{step.rule}/{step.case} produced a cubic component"
        )
    sub = _solve_graph(g, steps)
    for e in reversed(added):
        g.remove_edge(*e)
    g.restore_vertices(saved)
    M = step.extension.apply(sub)
    _validate_extension(g, step, sub, M)
    lam6 = _lambda6_connected(g)
    if 6 * len(M) > lam6:
        raise InternalInvariantViolation(
            f"{step.rule}/{step.case}: 6*{len(M)} exceeds bound {lam6}"
        )
    if constraint is not None and edge(*constraint.forbidden_edge) in M:
        raise InternalInvariantViolation("avoidance constraint violated by extension")
    return M


def _solve_base(
    g: Graph,
    constraint: PendantConstraint | None,
    steps: list[ReductionStep],
    internal: bool,
) -> Matching:
    verts = frozenset(g.iter_vertices())
    if constraint is not None:
        _check_constraint(g, constraint)
        res = gamma_exact_avoiding(g, constraint.forbidden_edge)
        M = res.witness
        rule = R.RULE_BASE_SMALL
        special = False
        meta = {"oracle_nodes": res.nodes_explored, "avoided": edge(*constraint.forbidden_edge)}
    else:
        special = is_k33(g)
        res = gamma_exact(g)
        M = res.witness
        rule = R.RULE_K33 if special else R.RULE_BASE_SMALL
        meta = {"oracle_nodes": res.nodes_explored}
    if special:
        if internal:
            raise InternalInvariantViolation(
                "a reduction produced the exceptional 6-vertex component"
            )
        if len(M) != 3:
            raise InternalInvariantViolation("exceptional case must give 3 edges")
    else:
        lam6 = _lambda6_connected(g)
        if 6 * len(M) > lam6:
            raise InternalInvariantViolation(
                f"small-graph optimum {len(M)} exceeds bound {lam6}/6 on n={g.n}"
            )
    steps.append(
        ReductionStep(
            rule=rule,
            case=None,
            deleted=verts,
            added_edges=frozenset(),
            extension=ExtensionRecipe((ExtensionBranch((), (), tuple(sorted(M))),)),
            budget=None,
            meta=meta,
        )
    )
    return M


def _bridge_matching(g: Graph, bridge: Edge, steps: list[ReductionStep]) -> Matching:
    """Split at a bridge, solve the pieces, and keep the smallest candidate.

    Candidates: for each side i, a pendant-avoiding matching of that side
    plus the bridge endpoint of the other side, united with a plain matching
    of the other side; and, when both sides have 4n_i - m_i divisible by 6,
    plain matchings of both sides minus their endpoints plus the bridge edge.
    """
    u0, u1 = bridge
    g.remove_edge(u0, u1)
    side0 = frozenset(g.component_of(u0))
    side1 = frozenset(g.component_of(u1))
    g.add_edge(u0, u1)
    if side1 == side0:
        raise PreconditionViolated(f"{bridge} is not a bridge")
    lam6 = _lambda6_connected(g)

    candidates = []
    for name, own, other, u_other in (
        ("gamma0", side0, side1, u1),
        ("gamma1", side1, side0, u0),
    ):
        sub_steps: list[ReductionStep] = []
        h_verts = frozenset(own | {u_other})
        H = g.subgraph(h_verts)
        mh = _solve_connected(H, PendantConstraint(u_other, bridge), sub_steps, internal=True)
        mo = _solve_connected(g.subgraph(other), None, sub_steps, internal=True)
        candidates.append((name, mh | mo, (h_verts, other), sub_steps))
    n0, m0 = len(side0), g.subgraph(side0).m
    n1, m1 = len(side1), g.subgraph(side1).m
    if (4 * n0 - m0) % 6 == 0 and (4 * n1 - m1) % 6 == 0:
        sub_steps = []
        f0 = frozenset(side0 - {u0})
        f1 = frozenset(side1 - {u1})
        mf0 = _solve_graph(g.subgraph(f0), sub_steps)
        mf1 = _solve_graph(g.subgraph(f1), sub_steps)
        candidates.append(("forest", mf0 | mf1 | {bridge}, (f0, f1), sub_steps))

    best = None
    for name, cand, parts, sub_steps in candidates:
        if maximality_status(g, cand) != 0:
            raise InternalInvariantViolation(f"bridge candidate {name} not maximal")
        if 6 * len(cand) > lam6:
            continue
        if best is None or len(cand) < len(best[1]):
            best = (name, cand, parts, sub_steps)
    if best is None:
        raise InternalInvariantViolation("no bridge candidate meets the bound")
    name, M, parts, sub_steps = best
    steps.append(
        ReductionStep(
            rule=R.RULE_BRIDGE,
            case=name,
            deleted=frozenset(),
            added_edges=frozenset(),
            extension=None,
            budget=None,
            meta={"bridge": bridge, "candidate": name, "subproblems": parts},
        )
    )
    steps.extend(sub_steps)
    return M


# -- public API ------------------------------------------------------------------

def _prepare(g: Graph) -> Graph:
    if g.n == 0:
        raise EmptyGraph("cannot solve the empty graph")
    if not g.is_connected():
        raise Disconnected("solve requires a connected graph; see solve_all")
    g.validate()
    limit = 3 * g.n + 1000
    if sys.getrecursionlimit() < limit:
        sys.setrecursionlimit(limit)
    return g.copy()


def solve(g: Graph) -> SolveCertificate:
    """Maximal matching of a connected subcubic graph within the bound."""
    t0 = time.perf_counter()
    work = _prepare(g)
    steps: list[ReductionStep] = []
    M = _solve_connected(work, None, steps, internal=False)
    return _certify(g, M, steps, t0)


def solve_avoiding(g: Graph, constraint: PendantConstraint) -> SolveCertificate:
    """As solve, but the returned matching excludes the designated pendant edge."""
    t0 = time.perf_counter()
    work = _prepare(g)
    _check_constraint(work, constraint)
    steps: list[ReductionStep] = []
    M = _solve_connected(work, constraint, steps, internal=False)
    if edge(*constraint.forbidden_edge) in M:
        raise InternalInvariantViolation("avoiding solve returned the forbidden edge")
    return _certify(g, M, steps, t0)


def solve_all(g: Graph) -> list[SolveCertificate]:
    """Per-component certificates for a possibly disconnected graph."""
    if g.n == 0:
        raise EmptyGraph("cannot solve the empty graph")
    return [solve(g.subgraph(comp)) for comp in g.connected_components()]


def _certify(g: Graph, M: Matching, steps, t0) -> SolveCertificate:
    report = bound_report(g)
    valid = is_matching(g, M) and is_maximal(g, M) and matching_within_bound(g, M, report)
    return SolveCertificate(
        matching=M,
        trace=steps,
        bound=report,
        valid=valid,
        k33_special=is_k33(g),
        elapsed_ms=(time.perf_counter() - t0) * 1000.0,
    )


def solve_bridge_case(g: Graph, bridge: Edge) -> Matching:
    """Public entry for the bridge split on its own (used by tests)."""
    bridge = edge(*bridge)
    if bridge not in g.find_bridges():
        raise PreconditionViolated(f"{bridge} is not a bridge of the graph")
    if g.min_degree() < 2:
        raise PreconditionViolated("pendant reductions must be exhausted first")
    work = g.copy()
    steps: list[ReductionStep] = []
    return _bridge_matching(work, bridge, steps)


# -- trace replay ----------------------------------------------------------------

def replay(g: Graph, cert: SolveCertificate) -> Matching:
    """Re-derive the certified matching from the recorded trace alone.

    Exercises that steps carry everything needed to rebuild the answer:
    deletions, added edges, extension recipes, and bridge split bookkeeping.
    """
    it = iter(cert.trace)
    M = _replay_graph(g.copy(), it)
    leftover = next(it, None)
    if leftover is not None:
        raise InternalInvariantViolation("trace has unconsumed steps")
    return M


def _replay_graph(g: Graph, it) -> Matching:
    if g.n == 0:
        return frozenset()
    comps = g.connected_components()
    if len(comps) == 1:
        return _replay_connected(g, it)
    out: set[Edge] = set()
    for comp in comps:
        out |= _replay_connected(g.subgraph(comp), it)
    return frozenset(out)


def _replay_connected(g: Graph, it) -> Matching:
    step = next(it)
    if step.rule in (R.RULE_BASE_SMALL, R.RULE_K33):
        if step.deleted != frozenset(g.iter_vertices()):
            raise InternalInvariantViolation("base step covers the wrong vertex set")
        return step.extension.apply(frozenset())
    if step.rule == R.RULE_BRIDGE:
        parts = [_replay_graph(g.subgraph(verts), it) for verts in step.meta["subproblems"]]
        M: set[Edge] = set()
        for p in parts:
            M |= p
        if step.meta["candidate"] == "forest":
            M.add(step.meta["bridge"])
        return frozenset(M)
    g.remove_vertices(step.deleted)
    for e in sorted(step.added_edges):
        g.add_edge(*e)
    sub = _replay_graph(g, it)
    return step.extension.apply(sub)
