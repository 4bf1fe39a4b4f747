"""Definition-literal re-implementation of hulls and the two join conditions.

Used only by the test suite to cross-validate the production checker.  No
shortcuts: hulls are geodesic closures computed to a fixpoint, the square
condition scans all vertex 4-tuples, and the cycle condition enumerates ALL
cycles up to a length cap (not only induced ones; the production checker may
restrict to induced cycles because a chord splits any violating cycle into
shorter violating cycles, so a minimal counterexample is induced).
"""

from __future__ import annotations

import itertools

from visualraag.dl import Lambda
from visualraag.graphs import Graph


def forest_geodesic(adj: dict[int, set[int]], a: int, b: int) -> list[int] | None:
    """Unique path between a and b in a forest, or None across components."""
    if a == b:
        return [a]
    parent = {a: None}
    frontier = [a]
    while frontier:
        nxt = []
        for v in frontier:
            for w in adj.get(v, ()):
                if w not in parent:
                    parent[w] = v
                    nxt.append(w)
        frontier = nxt
    if b not in parent:
        return None
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    return list(reversed(path))


def literal_hull(lam: Lambda, s: set[int]) -> set[int]:
    """Geodesic closure of s inside the witness forest, to a fixpoint."""
    adj: dict[int, set[int]] = {}
    for u, w in lam.edges:
        adj.setdefault(u, set()).add(w)
        adj.setdefault(w, set()).add(u)
    current = set(s)
    changed = True
    while changed:
        changed = False
        for a, b in itertools.combinations(sorted(current), 2):
            path = forest_geodesic(adj, a, b)
            if path is None:
                continue
            for v in path:
                if v not in current:
                    current.add(v)
                    changed = True
    return current


def literal_squares(g: Graph) -> list[tuple[int, int, int, int]]:
    """All induced squares as (a, b, c, d) with diagonals {a,b} and {c,d}."""
    out = []
    for a, b in itertools.combinations(range(g.n), 2):
        if g.has_edge(a, b):
            continue
        for c, d in itertools.combinations(range(g.n), 2):
            if {c, d} & {a, b} or g.has_edge(c, d):
                continue
            if min(c, d) < min(a, b):
                continue
            if all(g.has_edge(x, y) for x in (a, b) for y in (c, d)):
                if min(a, b) < min(c, d):
                    out.append((a, b, c, d))
    return out


def literal_r3(g: Graph, lam: Lambda) -> bool:
    for a, b, c, d in literal_squares(g):
        h1 = literal_hull(lam, {a, b})
        h2 = literal_hull(lam, {c, d})
        for x in h1:
            for y in h2:
                if not g.has_edge(x, y):
                    return False
    return True


def all_cycles_up_to(g: Graph, cap: int) -> list[list[int]]:
    """Every cycle (induced or not) with at most ``cap`` vertices, once up to
    rotation and reflection."""
    out = []

    def extend(path: list[int]):
        last = path[-1]
        for w in range(path[0] + 1, g.n):
            if w in path or not g.has_edge(last, w):
                continue
            nxt = path + [w]
            if len(nxt) >= 3 and g.has_edge(w, path[0]) and nxt[1] < nxt[-1]:
                out.append(list(nxt))
            if len(nxt) < cap:
                extend(nxt)

    for s in range(g.n):
        for u in range(s + 1, g.n):
            if g.has_edge(s, u):
                extend([s, u])
    return out


def literal_r4(g: Graph, lam: Lambda, cap: int = 12) -> bool:
    for cyc in all_cycles_up_to(g, cap):
        hull = literal_hull(lam, set(cyc))
        closed = cyc + [cyc[0]]
        for i in range(len(cyc)):
            a, b = closed[i], closed[i + 1]
            ok = False
            for a2 in hull:
                for b2 in hull:
                    if a2 in (a, b) or b2 in (a, b) or a2 == b2:
                        continue
                    if g.has_edge(a, a2) or g.has_edge(b, b2):
                        continue
                    if g.has_edge(a, b2) and g.has_edge(b, a2) and g.has_edge(a2, b2):
                        ok = True
                        break
                if ok:
                    break
            if not ok:
                return False
    return True
