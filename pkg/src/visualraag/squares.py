"""Diagonal graph and the component-of-full-support tests.

The diagonal graph has one vertex per unordered pair {a,b} that is the
diagonal of some induced square, and an edge between {a,b} and {c,d} when
{a,b}*{c,d} spans an induced square.  A graph is CFS when some component of
its diagonal graph has full support (all non-cone vertices); strongly CFS
additionally requires the diagonal graph to be connected.  Both tests gate
the search pipeline.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass

from .graphs import Graph, bit_list, bits, iter_bits


@dataclass(frozen=True)
class DiagonalGraph:
    """Diagonal graph of a host graph.

    ``diagonals[i]`` is the i-th diagonal as a sorted host-vertex pair;
    ``graph`` is the abstract graph on those indices (names "{a,b}" built from
    host display names).  ``host`` keeps the reference for support queries.
    """

    host: Graph
    diagonals: tuple[tuple[int, int], ...]
    graph: Graph

    def index_of(self, a: int, b: int) -> int | None:
        pair = (a, b) if a < b else (b, a)
        try:
            return self.diagonals.index(pair)
        except ValueError:
            return None

    def support_mask(self, diag_indices) -> int:
        m = 0
        for i in diag_indices:
            a, b = self.diagonals[i]
            m |= 1 << a | 1 << b
        return m

    def to_json_dict(self) -> dict:
        names = self.host.names
        return {
            "diagonals": [[names[a], names[b]] for a, b in self.diagonals],
            "edges": [[i, j] for i, j in self.graph.edges()],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_json_dict(), **kwargs)

    def to_dot(self) -> str:
        lines = ["graph diagonals {"]
        for i, (a, b) in enumerate(self.diagonals):
            lines.append(f'  d{i} [label="{{{self.host.names[a]},{self.host.names[b]}}}"];')
        for i, j in self.graph.edges():
            lines.append(f"  d{i} -- d{j};")
        lines.append("}")
        return "\n".join(lines)


def _is_induced_square_pair(g: Graph, a: int, b: int, c: int, d: int) -> bool:
    """Do the non-adjacent pairs {a,b}, {c,d} span an induced square?"""
    cross = g.adj[a] & g.adj[b]
    return bool(cross >> c & 1 and cross >> d & 1)


def support(dset) -> set[int]:
    """Union of the vertex pairs of a collection of diagonals."""
    out: set[int] = set()
    for a, b in dset:
        out.add(a)
        out.add(b)
    return out


def diagonal_graph(g: Graph, active: int | None = None) -> DiagonalGraph:
    """Exact diagonal graph of g (restricted to ``active`` when given)."""
    if active is None:
        active = g.full_mask
    verts = bit_list(active)
    diags: list[tuple[int, int]] = []
    for a, b in itertools.combinations(verts, 2):
        if g.adj[a] >> b & 1:
            continue
        common = g.adj[a] & g.adj[b] & active
        if any(~g.adj[c] & common & ~(1 << c) for c in iter_bits(common)):
            diags.append((a, b))
    index = {p: i for i, p in enumerate(diags)}
    adj = [0] * len(diags)
    for (a, b), (c, d) in itertools.combinations(diags, 2):
        if len({a, b, c, d}) < 4:
            continue
        if _is_induced_square_pair(g, a, b, c, d):
            i, j = index[(a, b)], index[(c, d)]
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    names = [f"{{{g.names[a]},{g.names[b]}}}" for a, b in diags]
    return DiagonalGraph(g, tuple(diags), Graph(names, adj))


class CfsStatus(enum.Enum):
    NOT_CFS = "NotCFS"
    CFS = "CFS"
    STRONGLY_CFS = "StronglyCFS"


@dataclass(frozen=True)
class CfsReport:
    status: CfsStatus
    diagonal: DiagonalGraph
    witness_component: tuple[int, ...]  # diagonal indices of the full-support component
    diagnostic: str = ""

    def __bool__(self) -> bool:
        return self.status is not CfsStatus.NOT_CFS


def cfs_status(g: Graph, active: int | None = None) -> CfsReport:
    """Classify as NotCFS / CFS / StronglyCFS with the witnessing component.

    Cone vertices (adjacent to everything else) are excluded from the support
    requirement; in connected triangle-free inputs with at least 3 vertices
    they only occur in stars, which therefore report NotCFS with a diagnostic.
    """
    if active is None:
        active = g.full_mask
    nverts = active.bit_count()
    cone = bits(
        v for v in iter_bits(active) if (g.adj[v] & active) == active & ~(1 << v)
    ) if nverts > 1 else 0
    target = active & ~cone
    dg = diagonal_graph(g, active)
    if not dg.diagonals:
        diagnostic = "diagonal graph is empty"
        if cone:
            diagnostic += "; graph has cone vertices (star-like)"
        return CfsReport(CfsStatus.NOT_CFS, dg, (), diagnostic)
    comps = dg.graph.components(dg.graph.full_mask)
    witness: tuple[int, ...] = ()
    for comp in comps:
        idxs = bit_list(comp)
        if dg.support_mask(idxs) | cone == target | cone:
            witness = tuple(idxs)
            break
    if not witness:
        return CfsReport(CfsStatus.NOT_CFS, dg, (), "no component has full support")
    if len(comps) == 1:
        return CfsReport(CfsStatus.STRONGLY_CFS, dg, witness)
    return CfsReport(CfsStatus.CFS, dg, witness, "diagonal graph is disconnected")


def is_strongly_cfs(g: Graph, active: int | None = None) -> bool:
    return cfs_status(g, active).status is CfsStatus.STRONGLY_CFS
