"""Satellite-dismantling search.

A graph admits a witness exactly when it can be reduced to a square by
repeatedly deleting satellite vertices through intermediates that stay
incomplete, triangle-free and clique-unseparated, such that every step admits
a dominating vertex compatible with all later links (the per-step feasibility
condition checked by ``check_dagger``).  The witness is then reconstructed by
replaying the removals as conings.

``relative_search`` runs the gate sequence and the backtracking enumeration
for one graph with required witness edges; ``global_search`` adds the
graph-of-cylinders gate and divide-and-conquer over uncrossed cuts.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from . import jsj
from .dl import (
    CommutingGraph,
    DLReport,
    Lambda,
    commuting_graph,
    precondition_failures,
    verify_fidl,
)
from .graphs import (
    Graph,
    NotBipartiteError,
    bipartition,
    bit_list,
    bits,
    has_separating_clique,
    induced_cycles,
    iter_bits,
    n_chords,
)
from .squares import CfsStatus, cfs_status, diagonal_graph, is_strongly_cfs


class BudgetExceeded(Exception):
    """Raised internally when a search deadline or size budget is hit."""


@dataclass
class Budget:
    """Soft wall-clock deadline shared by the search loops."""

    deadline: float | None = None  # absolute time.monotonic() value

    @classmethod
    def from_seconds(cls, seconds: float | None) -> "Budget":
        return cls(None if seconds is None else time.monotonic() + seconds)

    def check(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded


# ------------------------------------------------------------- data carriers


@dataclass(frozen=True)
class DismantlingStep:
    """One coning layer: x joined to exactly ``cone`` (its link at removal
    time); ``candidates`` are the vertices of the lower stratum whose links
    contain the cone set; ``chosen`` is the dominating vertex once fixed."""

    x: int
    cone: int
    candidates: int
    chosen: int | None = None

    def to_json_dict(self, g: Graph) -> dict:
        return {
            "x": g.names[self.x],
            "N": [g.names[v] for v in iter_bits(self.cone)],
            "V": [g.names[v] for v in iter_bits(self.candidates)],
            "v": None if self.chosen is None else g.names[self.chosen],
        }


@dataclass(frozen=True)
class DismantlingSequence:
    """Removal order recorded in coning order: steps[i] describes the vertex
    that rebuilds stratum i+1 from stratum i; the base is a square."""

    host: Graph
    base: int  # mask of the terminal square
    steps: tuple[DismantlingStep, ...]

    def stratum(self, i: int) -> int:
        """Vertex mask of the graph at coning stage i (base is stage 0)."""
        m = self.base
        for step in self.steps[:i]:
            m |= 1 << step.x
        return m

    def removal_order(self) -> list[int]:
        return [step.x for step in reversed(self.steps)]

    def with_choices(self, chosen: Sequence[int]) -> "DismantlingSequence":
        steps = tuple(
            DismantlingStep(s.x, s.cone, s.candidates, c)
            for s, c in zip(self.steps, chosen)
        )
        return DismantlingSequence(self.host, self.base, steps)

    def to_json_dict(self) -> dict:
        return {
            "base": [self.host.names[v] for v in iter_bits(self.base)],
            "steps": [s.to_json_dict(self.host) for s in self.steps],
        }


@dataclass(frozen=True)
class RequiredPair:
    """An unordered vertex pair demanded as a witness edge."""

    p: int
    q: int

    def __post_init__(self):
        if self.p == self.q:
            raise ValueError("required pair must have distinct vertices")

    @property
    def key(self) -> tuple[int, int]:
        return (self.p, self.q) if self.p < self.q else (self.q, self.p)


@dataclass(frozen=True)
class Refusal:
    kind: str
    detail: dict


@dataclass(frozen=True)
class Verdict:
    """Outcome of a search engine.

    ``decision`` is one of "yes", "no", "refused", "budget_exceeded".
    Yes carries the verified witness, its commuting graph, the dismantling
    certificate (when produced by the dismantling engine) and the
    verification transcript.  No carries a structured reason with a concrete
    witness.  ``stage`` names the pipeline stage that decided.
    """

    decision: str
    stage: str
    reason: str | None = None
    detail: dict = field(default_factory=dict)
    lam: Lambda | None = None
    delta: CommutingGraph | None = None
    sequence: DismantlingSequence | None = None
    report: DLReport | None = None
    timings_ms: dict = field(default_factory=dict)

    @property
    def is_yes(self) -> bool:
        return self.decision == "yes"

    def to_json_dict(self, include_timings: bool = True) -> dict:
        out: dict = {"decision": self.decision, "stage": self.stage}
        if self.reason is not None:
            out["reason"] = self.reason
        if self.detail:
            out["detail"] = self.detail
        if self.lam is not None:
            out["lambda"] = self.lam.to_json_dict()
        if self.delta is not None:
            out["delta"] = self.delta.to_json_dict()
        if self.sequence is not None:
            out["sequence"] = self.sequence.to_json_dict()["steps"]
            out["base_square"] = self.sequence.to_json_dict()["base"]
        if self.report is not None:
            out["report"] = self.report.to_json_dict()
        if include_timings:
            out["timings_ms"] = self.timings_ms
        return out

    def to_json(self, include_timings: bool = True, **kwargs) -> str:
        return json.dumps(self.to_json_dict(include_timings), **kwargs)


# ----------------------------------------------------------------- gate: cycles


def forbidden_cycle_check(g: Graph) -> dict | None:
    """None when no obstruction exists, else a witness dict.

    Obstructions: an odd cycle (graph not bipartite); an induced cycle longer
    than 6 without a 2-chord (induced cycles cannot have 1-chords); an
    induced 6-cycle that is not the rim of a wheel subgraph (alternating
    hub neighbors joined by an edge).
    """
    try:
        bipartition(g)
    except NotBipartiteError as err:
        return {"kind": "odd_cycle", "cycle": [g.names[v] for v in err.odd_walk]}
    for cyc in induced_cycles(g):
        k = len(cyc)
        if k == 6:
            evens = bits(cyc[0::2])
            odds = bits(cyc[1::2])
            hub_x = [v for v in range(g.n) if evens & ~g.adj[v] == 0]
            hub_y = [v for v in range(g.n) if odds & ~g.adj[v] == 0]
            if not any(g.has_edge(x, y) for x in hub_x for y in hub_y):
                return {
                    "kind": "hexagon_not_wheel_rim",
                    "cycle": [g.names[v] for v in cyc],
                }
        elif k > 6:
            if not n_chords(g, cyc, 2):
                return {
                    "kind": "long_cycle_without_2_chord",
                    "cycle": [g.names[v] for v in cyc],
                }
    return None


# ------------------------------------------------- dismantling enumeration


@dataclass
class DismantleStats:
    """Counters exposed for order-dependence experiments."""

    states_expanded: int = 0
    removals_tried: int = 0
    dead_states: int = 0
    sequences_yielded: int = 0


def _is_square_mask(g: Graph, mask: int) -> bool:
    if mask.bit_count() != 4:
        return False
    return all((g.adj[v] & mask).bit_count() == 2 for v in iter_bits(mask)) and g.is_connected_mask(mask)


def _state_admissible(g: Graph, mask: int, require_cfs: bool) -> bool:
    sub = g.subgraph(mask)
    if has_separating_clique(sub):
        return False
    if require_cfs and not is_strongly_cfs(g, mask):
        return False
    return True


def enumerate_dismantlings(
    g: Graph,
    strongly_cfs_prune: bool = True,
    stats: DismantleStats | None = None,
    budget: Budget | None = None,
) -> Iterator[DismantlingSequence]:
    """Backtrack over satellite removal orders reaching a square.

    Candidates at each state are satellites of the current induced subgraph
    whose removal leaves a graph without separating cliques (and, by default,
    strongly CFS: sound because the guaranteed sequence passes through graphs
    that themselves admit witnesses).  Vertex subsets with no completion are
    memoized as dead, so distinct orders through a dead state are pruned.
    Triangle-freeness and incompleteness hold automatically above the base;
    the four-vertex terminal state must be a square.
    """
    if stats is None:
        stats = DismantleStats()
    dead: set[int] = set()
    feasible_cache: dict[int, bool] = {}

    def admissible(mask: int) -> bool:
        got = feasible_cache.get(mask)
        if got is None:
            got = _state_admissible(g, mask, strongly_cfs_prune)
            feasible_cache[mask] = got
        return got

    def descend(mask: int, removed: list[tuple[int, int]]) -> Iterator[DismantlingSequence]:
        if budget is not None:
            budget.check()
        if mask in dead:
            return
        if mask.bit_count() == 4:
            if _is_square_mask(g, mask):
                stats.sequences_yielded += 1
                yield _build_sequence(g, mask, removed)
            else:
                dead.add(mask)
            return
        stats.states_expanded += 1
        produced = False
        order = sorted(iter_bits(mask), key=lambda v: ((g.adj[v] & mask).bit_count(), v))
        for x in order:
            lx = g.adj[x] & mask
            rest = mask & ~(1 << x)
            if not any(
                lx & ~(g.adj[w] & mask) == 0 for w in iter_bits(mask) if w != x
            ):
                continue
            stats.removals_tried += 1
            if rest in dead:
                continue
            if not admissible(rest):
                dead.add(rest)
                continue
            for seq in descend(rest, removed + [(x, lx)]):
                produced = True
                yield seq
        if not produced:
            dead.add(mask)
            stats.dead_states += 1

    yield from descend(g.full_mask, [])


def _build_sequence(g: Graph, base: int, removed: list[tuple[int, int]]) -> DismantlingSequence:
    """Steps in coning order; candidate sets computed on the lower stratum."""
    steps: list[DismantlingStep] = []
    stratum = base
    for x, cone in reversed(removed):
        cand = bits(
            v for v in iter_bits(stratum) if cone & ~(g.adj[v] & stratum) == 0
        )
        steps.append(DismantlingStep(x, cone, cand))
        stratum |= 1 << x
    return DismantlingSequence(g, base, tuple(steps))


def _dagger_search(
    g: Graph,
    required: Sequence[RequiredPair],
    strongly_cfs_prune: bool,
    stats: DismantleStats,
    budget: Budget | None,
) -> DismantlingSequence | None:
    """First dismantling sequence satisfying the step condition, or None.

    Same backtracking as ``enumerate_dismantlings`` but with the feasibility
    of each created step checked immediately: the feasible set of a step is
    determined entirely by the removals made before it, so an empty set (or a
    broken required-pair pin) kills the whole branch.  The structural
    dead-state memo is not sound here (feasibility depends on removal
    history), so only state admissibility is cached.
    """
    feasible_cache: dict[int, bool] = {}
    pin_of: dict[int, list[int]] = {}
    for pair in required:
        pin_of.setdefault(pair.p, []).append(pair.q)
        pin_of.setdefault(pair.q, []).append(pair.p)

    def admissible(mask: int) -> bool:
        got = feasible_cache.get(mask)
        if got is None:
            got = _state_admissible(g, mask, strongly_cfs_prune)
            feasible_cache[mask] = got
        return got

    # removed records: (x, cone_at_removal, feasible_set, pinned_or_None)
    def descend(mask: int, removed: list[tuple[int, int, int, int | None]]):
        if budget is not None:
            budget.check()
        if mask.bit_count() == 4:
            return removed if _is_square_mask(g, mask) else None
        stats.states_expanded += 1
        order = sorted(iter_bits(mask), key=lambda v: ((g.adj[v] & mask).bit_count(), v))
        for x in order:
            lx = g.adj[x] & mask
            rest = mask & ~(1 << x)
            if not any(
                lx & ~(g.adj[w] & mask) == 0 for w in iter_bits(mask) if w != x
            ):
                continue
            stats.removals_tried += 1
            if not admissible(rest):
                continue
            cand = bits(
                v for v in iter_bits(rest) if lx & ~(g.adj[v] & rest) == 0
            )
            feas = cand
            for (y, cone, _f, _p) in removed:
                # earlier removals sit in higher strata; their cones constrain
                # this step when they contain x and meet the remaining graph
                if cone >> x & 1 and cone & rest:
                    feas &= cone
            if feas == 0:
                continue
            pinned: int | None = None
            partners = [w for w in pin_of.get(x, ()) if rest >> w & 1]
            if partners:
                # x is the later-added endpoint of these required pairs; a
                # single removal realizes a single witness edge, so two
                # distinct live partners make this order infeasible
                if len(set(partners)) > 1:
                    continue
                partner = partners[0]
                if not feas >> partner & 1:
                    continue
                feas = 1 << partner
                pinned = partner
            got = descend(rest, removed + [(x, lx, feas, pinned)])
            if got is not None:
                return got
        return None

    removed = descend(g.full_mask, [])
    if removed is None:
        return None
    steps = []
    base = g.full_mask
    for x, *_ in removed:
        base &= ~(1 << x)
    stratum = base
    for x, cone, feas, pinned in reversed(removed):
        cand = bits(v for v in iter_bits(stratum) if cone & ~(g.adj[v] & stratum) == 0)
        chosen = pinned if pinned is not None else (feas & -feas).bit_length() - 1
        steps.append(DismantlingStep(x, cone, cand, chosen))
        stratum |= 1 << x
    stats.sequences_yielded += 1
    return DismantlingSequence(g, base, tuple(steps))


# -------------------------------------------------------------- condition (†)


@dataclass(frozen=True)
class DaggerFailure:
    index: int
    feasible: int
    conflict: tuple[int, int] | None = None  # clashing forced choices

    def to_json_dict(self, g: Graph) -> dict:
        out = {"index": self.index, "feasible": [g.names[v] for v in iter_bits(self.feasible)]}
        if self.conflict:
            out["conflict"] = [g.names[v] for v in self.conflict]
        return out


def check_dagger(
    seq: DismantlingSequence, required: Sequence[RequiredPair] = ()
) -> DismantlingSequence | DaggerFailure:
    """Per-step feasibility: for step i the dominating vertex must lie in the
    candidate set intersected with every later cone set that contains x_{i+1}
    and meets stratum i.

    The quantifier has no coupling across steps, so per-step intersection is
    exact.  Required pairs whose later vertex is x_{i+1} pin the choice to the
    earlier vertex; pairs inside the base square are its diagonals and hold
    automatically.  Unconstrained steps take the lowest-index feasible vertex.
    """
    g = seq.host
    n = len(seq.steps)
    strata = [seq.stratum(i) for i in range(n + 1)]
    feasible: list[int] = []
    for i, step in enumerate(seq.steps):
        f = step.candidates
        for j in range(i + 1, n):
            later = seq.steps[j]
            if later.cone >> step.x & 1 and later.cone & strata[i]:
                f &= later.cone
        if f == 0:
            return DaggerFailure(i, 0)
        feasible.append(f)
    forced: dict[int, int] = {}
    stage = {}
    for i, step in enumerate(seq.steps):
        stage[step.x] = i
    for pair in required:
        ip = stage.get(pair.p, -1)
        iq = stage.get(pair.q, -1)
        if ip < 0 and iq < 0:
            continue  # both in the base square: they are its diagonals
        later, earlier = (pair.q, pair.p) if iq > ip else (pair.p, pair.q)
        i = max(ip, iq)
        if i in forced and forced[i] != earlier:
            return DaggerFailure(i, feasible[i], (forced[i], earlier))
        if not feasible[i] >> earlier & 1:
            return DaggerFailure(i, feasible[i] & 1 << earlier)
        forced[i] = earlier
    chosen = [
        forced.get(i, (f & -f).bit_length() - 1) for i, f in enumerate(feasible)
    ]
    return seq.with_choices(chosen)


def reconstruct_lambda(seq: DismantlingSequence) -> Lambda:
    """Base-square diagonals plus one edge per step from the chosen dominator
    to the new vertex; colors follow the canonical bipartition."""
    g = seq.host
    base = bit_list(seq.base)
    edges = []
    for u in base:
        for w in base:
            if u < w and not g.has_edge(u, w):
                edges.append((u, w))
    for step in seq.steps:
        if step.chosen is None:
            raise ValueError("sequence has no chosen dominators; run check_dagger")
        edges.append(tuple(sorted((step.chosen, step.x))))
    col = bipartition(g)
    red = [e for e in edges if col.red >> e[0] & 1]
    blue = [e for e in edges if not col.red >> e[0] & 1]
    return Lambda.make(g, red, blue)


# ---------------------------------------------------------------- the engines


def _refusal(g: Graph, fails: list[str], timings: dict) -> Verdict:
    return Verdict("refused", "precondition", reason="PreconditionFailed",
                   detail={"failures": fails}, timings_ms=timings)


def _toc(timings: dict, key: str, t0: float) -> float:
    now = time.perf_counter()
    timings[key] = round((now - t0) * 1000, 3)
    return now


def relative_search(
    g: Graph,
    required: Sequence[RequiredPair | tuple[int, int]] = (),
    strongly_cfs_prune: bool = True,
    budget: Budget | None = None,
    stats: DismantleStats | None = None,
) -> Verdict:
    """Find a witness containing every required pair, or decide none exists.

    Gates in order: strongly-CFS, forbidden cycles, required pairs acyclic
    and class-consistent; then enumerate dismantling sequences and return the
    first one whose chosen dominators satisfy the step condition, with the
    rebuilt witness re-verified before returning.
    """
    timings: dict = {}
    t0 = time.perf_counter()
    req = _normalize_required(g, required)
    fails = precondition_failures(g)
    t0 = _toc(timings, "preconditions", t0)
    if fails:
        return _refusal(g, fails, timings)

    try:
        cfs = cfs_status(g)
        t0 = _toc(timings, "cfs", t0)
        if cfs.status is not CfsStatus.STRONGLY_CFS:
            return Verdict("no", "cfs", reason="NotStronglyCFS",
                           detail={"status": cfs.status.value, "diagnostic": cfs.diagnostic},
                           timings_ms=timings)
        obstruction = forbidden_cycle_check(g)
        t0 = _toc(timings, "cycles", t0)
        if obstruction is not None:
            return Verdict("no", "cycles", reason="ForbiddenCycle",
                           detail=obstruction, timings_ms=timings)
        bad = _required_pair_obstruction(g, req)
        t0 = _toc(timings, "required_pairs", t0)
        if bad is not None:
            return Verdict(bad.decision, bad.stage, reason=bad.reason,
                           detail=bad.detail, timings_ms=timings)
        if stats is None:
            stats = DismantleStats()
        outcome = _dagger_search(g, req, strongly_cfs_prune, stats, budget)
        if outcome is not None:
            recheck = check_dagger(outcome, req)
            if isinstance(recheck, DaggerFailure):
                raise AssertionError(
                    "internal consistency: fused search produced an infeasible sequence"
                )
            lam = reconstruct_lambda(outcome)
            report = verify_fidl(g, lam)
            if not report.passed:
                raise AssertionError(
                    "internal consistency: reconstructed witness failed verification: "
                    + report.to_json()
                )
            _toc(timings, "dismantle", t0)
            return Verdict("yes", "dismantle", lam=lam, delta=commuting_graph(g, lam),
                           sequence=outcome, report=report, timings_ms=timings)
        _toc(timings, "dismantle", t0)
        any_sequence = next(
            enumerate_dismantlings(g, strongly_cfs_prune, None, budget), None
        )
        if any_sequence is None:
            return Verdict("no", "dismantle", reason="NoDismantling", timings_ms=timings)
        return Verdict("no", "dagger", reason="NoDaggerSequence", timings_ms=timings)
    except BudgetExceeded:
        return Verdict("budget_exceeded", "dismantle", reason="BudgetExceeded",
                       timings_ms=timings)


def _normalize_required(
    g: Graph, required: Sequence[RequiredPair | tuple[int, int]]
) -> list[RequiredPair]:
    seen: set[tuple[int, int]] = set()
    out: list[RequiredPair] = []
    for item in required:
        pair = item if isinstance(item, RequiredPair) else RequiredPair(*item)
        if g.has_edge(pair.p, pair.q):
            raise ValueError(
                f"required pair {g.names[pair.p]}-{g.names[pair.q]} is an edge of the graph"
            )
        if pair.key not in seen:
            seen.add(pair.key)
            out.append(RequiredPair(*pair.key))
    return out


def _required_pair_obstruction(g: Graph, req: list[RequiredPair]) -> Verdict | None:
    if not req:
        return None
    col = bipartition(g)  # bipartite: the cycle gate already passed
    for pair in req:
        if not col.same_class(pair.p, pair.q):
            return Verdict(
                "no", "required_pairs", reason="RequiredPairMixedClasses",
                detail={"pair": [g.names[pair.p], g.names[pair.q]]},
            )
    adj: dict[int, set[int]] = {}
    for pair in req:
        adj.setdefault(pair.p, set()).add(pair.q)
        adj.setdefault(pair.q, set()).add(pair.p)
    cycle = _pair_graph_cycle(adj)
    if cycle is not None:
        return Verdict(
            "no", "required_pairs", reason="RequiredPairCycle",
            detail={"cycle": [g.names[v] for v in cycle]},
        )
    return None


def _pair_graph_cycle(adj: dict[int, set[int]]) -> list[int] | None:
    visited: set[int] = set()

    def dfs(v: int, par: int | None, path: list[int]) -> list[int] | None:
        visited.add(v)
        path.append(v)
        for w in adj[v]:
            if w == par:
                continue
            if w in path:
                return path[path.index(w):]
            if w not in visited:
                got = dfs(w, v, path)
                if got is not None:
                    return got
        path.pop()
        return None

    for root in adj:
        if root not in visited:
            got = dfs(root, None, [])
            if got is not None:
                return got
    return None


def global_search(
    g: Graph,
    strongly_cfs_prune: bool = True,
    budget: Budget | None = None,
    use_splitting: bool = True,
) -> Verdict:
    """Decide witness existence for a whole graph.

    Pipeline: preconditions; square base case; strongly-CFS and forbidden
    cycle gates; crossed-cut (hanging) gate; then divide and conquer over
    uncrossed cuts, solving each piece relative to the cut pairs it contains
    and assembling the partial witnesses.  Splitting is an optimization: any
    degenerate piece falls back to whole-graph relative search.
    """
    timings: dict = {}
    t0 = time.perf_counter()
    fails = precondition_failures(g)
    t0 = _toc(timings, "preconditions", t0)
    if fails:
        return _refusal(g, fails, timings)
    if g.n == 4:
        # the only valid four-vertex input is the square: solved by its diagonals
        verdict = relative_search(g, (), strongly_cfs_prune, budget)
        verdict.timings_ms.update(timings)
        return verdict

    cfs = cfs_status(g)
    t0 = _toc(timings, "cfs", t0)
    if cfs.status is not CfsStatus.STRONGLY_CFS:
        return Verdict("no", "cfs", reason="NotStronglyCFS",
                       detail={"status": cfs.status.value, "diagnostic": cfs.diagnostic},
                       timings_ms=timings)
    obstruction = forbidden_cycle_check(g)
    t0 = _toc(timings, "cycles", t0)
    if obstruction is not None:
        return Verdict("no", "cycles", reason="ForbiddenCycle", detail=obstruction,
                       timings_ms=timings)
    goc = jsj.graph_of_cylinders(g)
    t0 = _toc(timings, "jsj", t0)
    if goc.hanging:
        k1, k2 = goc.crossing_witness  # type: ignore[misc]
        return Verdict("no", "jsj", reason="CrossingCuts",
                       detail={"cuts": [k1.names(g), k2.names(g)]},
                       timings_ms=timings)
    try:
        verdict = _solve_with_splitting(g, goc.cuts, strongly_cfs_prune, budget,
                                        use_splitting)
    except BudgetExceeded:
        return Verdict("budget_exceeded", "dismantle", reason="BudgetExceeded",
                       timings_ms=timings)
    _toc(timings, "search", t0)
    verdict.timings_ms.update(timings)
    if verdict.is_yes:
        report = verdict.report or verify_fidl(g, verdict.lam)
        if not report.passed:
            raise AssertionError(
                "internal consistency: assembled witness failed verification: "
                + report.to_json()
            )
    return verdict


def _solve_with_splitting(
    g: Graph,
    cuts: tuple[jsj.Cut, ...] | None,
    strongly_cfs_prune: bool,
    budget: Budget | None,
    use_splitting: bool,
    required: tuple[tuple[int, int], ...] = (),
) -> Verdict:
    """Recursive split/solve/assemble; falls back to relative search whenever
    splitting is not clearly profitable or a piece degenerates."""
    if cuts is None:
        cuts = tuple(jsj.find_cuts(g))
    split = _pick_split(g, cuts, required) if use_splitting else None
    if split is None:
        return relative_search(g, required, strongly_cfs_prune, budget)
    cut, parts = split
    solved: list[tuple[Graph, Lambda]] = []
    for part in parts:
        part_required = tuple(
            (part.vertex_id(g.names[p]), part.vertex_id(g.names[q]))
            for p, q in required
            if part.try_vertex_id(g.names[p]) is not None
            and part.try_vertex_id(g.names[q]) is not None
        )
        a, b = cut.pair
        part_required += ((part.vertex_id(g.names[a]), part.vertex_id(g.names[b])),)
        sub = _solve_with_splitting(part, None, strongly_cfs_prune, budget,
                                    use_splitting, part_required)
        if sub.decision == "budget_exceeded":
            return sub
        if not sub.is_yes:
            pid = ",".join(sorted(part.names))
            return Verdict("no", "split", reason="RigidPartFailed",
                           detail={"part": pid, "sub_reason": sub.reason or sub.decision,
                                   "sub_detail": sub.detail})
        solved.append((part, sub.lam))
    lam = jsj.assemble_lambdas(g, cut, solved)
    report = verify_fidl(g, lam)
    if not report.passed:
        raise AssertionError(
            "internal consistency: assembly produced a non-verifying witness: "
            + report.to_json()
        )
    detail = {
        "assembled_at": [g.names[v] for v in cut.vertices],
        "parts": [",".join(sorted(part.names)) for part, _ in solved],
    }
    return Verdict("yes", "assemble", detail=detail, lam=lam,
                   delta=commuting_graph(g, lam), report=report)


def _pick_split(
    g: Graph, cuts: Sequence[jsj.Cut], required: tuple[tuple[int, int], ...]
) -> tuple[jsj.Cut, list[Graph]] | None:
    """An uncrossed cut giving a usable decomposition, or None.

    Usable means: every part passes the search preconditions (degenerate
    pieces like bare 2-paths force the whole-graph fallback) and no required
    pair is torn across parts.
    """
    if not cuts:
        return None
    req_names = [(g.names[p], g.names[q]) for p, q in required]
    for cut in jsj.uncrossed_cuts(g, cuts):
        parts = jsj.split_at_cut(g, cut)
        if len(parts) < 2:
            continue
        ok = all(not precondition_failures(part) for part in parts)
        if ok:
            for p_name, q_name in req_names:
                if not any(
                    part.try_vertex_id(p_name) is not None
                    and part.try_vertex_id(q_name) is not None
                    for part in parts
                ):
                    ok = False
                    break
        if ok:
            return cut, parts
    return None
