"""Brute-force ground truth: enumerate every admissible witness and test it.

For a bipartite host the tree conditions are equivalent to picking one
spanning tree of the complement inside each color class, so the oracle
enumerates all tree pairs and checks the two join conditions directly.  Its
value is simplicity; the only shortcut is the bipartiteness reduction.  The
expected enumeration size is pre-computed with the matrix-tree theorem so
explosive instances fail fast as budget refusals instead of hanging.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .dl import (
    CombinedHulls,
    HullOracle,
    Lambda,
    check_r3,
    check_r4,
    commuting_graph,
    induced_squares,
    precondition_failures,
    verify_fidl,
)
from .dismantle import Budget, BudgetExceeded, Verdict, _toc
from .graphs import (
    Graph,
    NotBipartiteError,
    bipartition,
    bit_list,
    bits,
    induced_cycles,
    iter_bits,
)


@dataclass(frozen=True)
class OracleLimits:
    max_tree_pairs: int = 2_000_000
    seconds: float | None = None


def spanning_tree_count(n: int, edges: list[tuple[int, int]]) -> int:
    """Number of spanning trees, by the matrix-tree theorem.

    Exact integer arithmetic (fraction-free elimination would also do; with
    the small sizes here Fractions are plenty).
    """
    if n == 0:
        return 0
    if n == 1:
        return 1
    lap = [[Fraction(0)] * n for _ in range(n)]
    for u, w in edges:
        lap[u][u] += 1
        lap[w][w] += 1
        lap[u][w] -= 1
        lap[w][u] -= 1
    m = [row[:-1] for row in lap[:-1]]
    det = Fraction(1)
    size = n - 1
    for col in range(size):
        pivot = next((r for r in range(col, size) if m[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, size):
            factor = m[r][col] * inv
            if factor:
                for c in range(col, size):
                    m[r][c] -= factor * m[col][c]
    assert det.denominator == 1
    return abs(int(det))


def spanning_trees(n: int, edges: list[tuple[int, int]]) -> Iterator[frozenset[tuple[int, int]]]:
    """All spanning trees by recursive edge contraction/deletion.

    Vertices are merged with a union-find map; parallel edges after
    contraction stay distinct because they remember their original pair.
    Deletion branches are pruned when the deleted edge is a bridge.
    """
    if n == 0:
        return
    if n == 1:
        yield frozenset()
        return

    def rec(live: list[tuple[tuple[int, int], int, int]], nverts: int, chosen: list[tuple[int, int]]):
        if nverts == 1:
            yield frozenset(chosen)
            return
        if not live:
            return
        (orig, u, w) = live[0]
        # contract u-w: relabel w to u, drop self-loops
        contracted = []
        for o, a, b in live[1:]:
            a2 = u if a == w else a
            b2 = u if b == w else b
            if a2 != b2:
                contracted.append((o, a2, b2))
        yield from rec(contracted, nverts - 1, chosen + [orig])
        # delete u-w: only if the remainder still connects
        rest = live[1:]
        if _connected(rest, nverts):
            yield from rec(rest, nverts, chosen)

    live = [((u, w), u, w) for u, w in edges]
    # normalize vertex labels to 0..n-1 just in case
    yield from rec(live, n, [])


def _connected(live: list[tuple[tuple[int, int], int, int]], nverts: int) -> bool:
    if nverts <= 1:
        return True
    parent = {}

    def find(x):
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    verts = set()
    for _o, a, b in live:
        verts.add(a)
        verts.add(b)
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    if len(verts) < nverts:
        return False
    roots = {find(v) for v in verts}
    return len(roots) == 1


def _class_complement_edges(g: Graph, cls: int) -> tuple[list[int], list[tuple[int, int]]]:
    """Complement edges inside one bipartition class, relabelled 0..m-1.

    The class is independent in the host, so this is the complete graph on
    the class; kept general anyway.
    """
    verts = bit_list(cls)
    pos = {v: i for i, v in enumerate(verts)}
    edges = [
        (pos[u], pos[w])
        for u, w in itertools.combinations(verts, 2)
        if not g.has_edge(u, w)
    ]
    return verts, edges


def _lambda_candidates(
    g: Graph, limits: OracleLimits
) -> tuple[int, "Iterator[tuple[list, list, CombinedHulls]]"] | Verdict:
    """Budget gate plus a generator of (red_edges, blue_edges, hulls) triples.

    The hull provider reuses one prebuilt per-tree oracle per side so its
    memoized answers survive across pairings.
    """
    try:
        col = bipartition(g)
    except NotBipartiteError as err:
        return Verdict("no", "oracle", reason="NotBipartite",
                       detail={"odd_walk": [g.names[v] for v in err.odd_walk]})
    red_verts, red_edges = _class_complement_edges(g, col.red)
    blue_verts, blue_edges = _class_complement_edges(g, col.blue)
    n_red = spanning_tree_count(len(red_verts), red_edges)
    n_blue = spanning_tree_count(len(blue_verts), blue_edges)
    total = n_red * n_blue
    if total == 0:
        return Verdict("no", "oracle", reason="NoFidlLambda",
                       detail={"why": "a color class admits no spanning tree"})
    if total > limits.max_tree_pairs:
        return Verdict("budget_exceeded", "oracle", reason="BudgetExceeded",
                       detail={"tree_pairs": total, "cap": limits.max_tree_pairs})

    def gen() -> Iterator[tuple[list, list, CombinedHulls]]:
        blue_pool = []
        for t in spanning_trees(len(blue_verts), blue_edges):
            blue = [(blue_verts[a], blue_verts[b]) for a, b in t]
            blue_pool.append((blue, HullOracle.from_edges(g.n, blue)))
        for rt in spanning_trees(len(red_verts), red_edges):
            red = [(red_verts[a], red_verts[b]) for a, b in rt]
            red_hulls = HullOracle.from_edges(g.n, red)
            for blue, blue_hulls in blue_pool:
                yield red, blue, CombinedHulls(red_hulls, blue_hulls, col.red, col.blue)

    return total, gen()


def naive_search(g: Graph, limits: OracleLimits = OracleLimits()) -> Verdict:
    """Enumerate and test all two-tree witnesses; first pass wins.

    Budget exhaustion is its own outcome, never conflated with a refutation.
    """
    timings: dict = {}
    t0 = time.perf_counter()
    fails = precondition_failures(g)
    t0 = _toc(timings, "preconditions", t0)
    if fails:
        return Verdict("refused", "precondition", reason="PreconditionFailed",
                       detail={"failures": fails}, timings_ms=timings)
    setup = _lambda_candidates(g, limits)
    if isinstance(setup, Verdict):
        setup.timings_ms.update(timings)
        return setup
    total, candidates = setup
    squares = induced_squares(g)
    cycles = [list(c) for c in induced_cycles(g)]
    budget = Budget.from_seconds(limits.seconds)
    tested = 0
    try:
        for red, blue, hulls in candidates:
            budget.check()
            tested += 1
            if (
                check_r3(g, None, squares, hulls).passed
                and check_r4(g, None, cycles, hulls).passed
            ):
                lam = Lambda.make(g, red, blue)
                report = verify_fidl(g, lam)
                assert report.passed
                _toc(timings, "oracle", t0)
                return Verdict("yes", "oracle", lam=lam, delta=commuting_graph(g, lam),
                               report=report, timings_ms=timings,
                               detail={"tested": tested, "tree_pairs": total})
    except BudgetExceeded:
        return Verdict("budget_exceeded", "oracle", reason="BudgetExceeded",
                       detail={"tested": tested, "tree_pairs": total}, timings_ms=timings)
    _toc(timings, "oracle", t0)
    return Verdict("no", "oracle", reason="NoFidlLambda",
                   detail={"tested": tested, "tree_pairs": total}, timings_ms=timings)


def count_all_fidl(
    g: Graph, limits: OracleLimits = OracleLimits()
) -> tuple[int, list[Lambda]] | Verdict:
    """All passing witnesses, canonicalized (sorted edges, classes anchored so
    the class containing vertex 0 comes first)."""
    fails = precondition_failures(g)
    if fails:
        return Verdict("refused", "precondition", reason="PreconditionFailed",
                       detail={"failures": fails})
    setup = _lambda_candidates(g, limits)
    if isinstance(setup, Verdict):
        if setup.reason in ("NotBipartite", "NoFidlLambda"):
            return 0, []
        return setup
    _total, candidates = setup
    squares = induced_squares(g)
    cycles = [list(c) for c in induced_cycles(g)]
    budget = Budget.from_seconds(limits.seconds)
    found: list[Lambda] = []
    try:
        for red, blue, hulls in candidates:
            budget.check()
            if (
                check_r3(g, None, squares, hulls).passed
                and check_r4(g, None, cycles, hulls).passed
            ):
                found.append(canonical_lambda(Lambda.make(g, red, blue)))
    except BudgetExceeded:
        return Verdict("budget_exceeded", "oracle", reason="BudgetExceeded")
    found.sort(key=lambda lam: (lam.red_edges, lam.blue_edges))
    return len(found), found


def canonical_lambda(lam: Lambda) -> Lambda:
    """Anchor the class containing vertex 0 as red."""
    if lam.blue_support & 1:
        return lam.swapped()
    return lam
