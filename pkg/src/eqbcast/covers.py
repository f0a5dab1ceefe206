"""Covering structures: verification, exact minimization, basic constructions.

Six kinds of vertex sets are supported: dominating, total dominating,
vertex cover, total vertex cover, weakly connected dominating, and the
witness for the monotone variant (edges incident to S span a 2-connected
subgraph).  All are upward closed, which both the verifier and the
branch-and-bound solver rely on.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .caps import get_cap
from .errors import CapExceededError, ConnectivityError
from .graph import (
    Graph,
    VertexSet,
    components,
    connectivity_report,
    edge_incident_subgraph,
    spanning_tree,
)

__all__ = [
    "CoverKind",
    "CoverCertificate",
    "verify_cover",
    "minimum_cover_exact",
    "wcds_from_dominating",
    "tree_vertex_cover",
    "certificate_to_json",
    "certificate_from_json",
]


class CoverKind(Enum):
    DOMINATING = "dominating"
    TOTAL_DOMINATING = "total_dominating"
    VERTEX_COVER = "vertex_cover"
    TOTAL_VERTEX_COVER = "total_vertex_cover"
    WEAKLY_CONNECTED_DOMINATING = "weakly_connected_dominating"
    TVC_DOWN_WITNESS = "tvc_down_witness"


@dataclass(frozen=True)
class CoverCertificate:
    """A vertex set together with the cover kind it claims, checked on build."""

    graph: Graph
    set: VertexSet
    kind: CoverKind
    size: int = -1

    def __post_init__(self):
        object.__setattr__(self, "set", self.graph.vertex_set(self.set))
        if self.size == -1:
            object.__setattr__(self, "size", len(self.set))
        if self.size != len(self.set):
            raise ValueError("certificate size disagrees with the set")
        if not verify_cover(self.graph, self.set, self.kind):
            raise ValueError(f"set is not a valid {self.kind.value}")


def verify_cover(g: Graph, s: Iterable[int], kind: CoverKind) -> bool:
    s = g.vertex_set(s)
    if kind is CoverKind.DOMINATING:
        return all(v in s or any(w in s for w in g.adj[v]) for v in range(g.n))
    if kind is CoverKind.TOTAL_DOMINATING:
        return all(any(w in s for w in g.adj[v]) for v in range(g.n))
    if kind is CoverKind.VERTEX_COVER:
        return all(u in s or v in s for u, v in g.edges)
    if kind is CoverKind.TOTAL_VERTEX_COVER:
        return verify_cover(g, s, CoverKind.VERTEX_COVER) and verify_cover(
            g, s, CoverKind.TOTAL_DOMINATING
        )
    if kind is CoverKind.WEAKLY_CONNECTED_DOMINATING:
        gs = edge_incident_subgraph(g, s)
        return len(components(gs)) == 1
    if kind is CoverKind.TVC_DOWN_WITNESS:
        gs = edge_incident_subgraph(g, s)
        return connectivity_report(gs).two_connected
    raise ValueError(f"unknown kind {kind}")


# ---------------------------------------------------------------------------
# exact minimization


class _BitGraph:
    """Bitmask adjacency used by the branch-and-bound search."""

    def __init__(self, g: Graph):
        self.g = g
        self.n = g.n
        self.full = (1 << g.n) - 1
        self.nbr = [0] * g.n
        for u, v in g.edges:
            self.nbr[u] |= 1 << v
            self.nbr[v] |= 1 << u
        self.cnbr = [self.nbr[v] | (1 << v) for v in range(g.n)]
        self.edge_masks = [(1 << u) | (1 << v) for u, v in set(g.edges)]

    def feasible(self, kind: CoverKind, mask: int) -> bool:
        if kind is CoverKind.DOMINATING:
            return all(c & mask for c in self.cnbr)
        if kind is CoverKind.TOTAL_DOMINATING:
            return all(a & mask for a in self.nbr)
        if kind is CoverKind.VERTEX_COVER:
            return all(e & mask for e in self.edge_masks)
        if kind is CoverKind.TOTAL_VERTEX_COVER:
            return all(e & mask for e in self.edge_masks) and all(a & mask for a in self.nbr)
        if kind is CoverKind.WEAKLY_CONNECTED_DOMINATING:
            return self._gs_connected(mask)
        if kind is CoverKind.TVC_DOWN_WITNESS:
            members = [v for v in range(self.n) if (mask >> v) & 1]
            return verify_cover(self.g, members, kind)
        raise ValueError(kind)

    def _gs_connected(self, mask: int) -> bool:
        if self.n == 1:
            return True
        reach = 1
        frontier = 1
        while frontier:
            nxt = 0
            f = frontier
            while f:
                v = (f & -f).bit_length() - 1
                f &= f - 1
                if (mask >> v) & 1:
                    nxt |= self.nbr[v]
                else:
                    nxt |= self.nbr[v] & mask
            frontier = nxt & ~reach
            reach |= nxt
        return reach == self.full


def _greedy_cover(bg: _BitGraph, kind: CoverKind) -> int:
    """Any feasible set, used only as an upper bound for the search."""
    mask = 0
    order = sorted(range(bg.n), key=lambda v: -bin(bg.nbr[v]).count("1"))
    for v in order:
        if bg.feasible(kind, mask):
            return mask
        mask |= 1 << v
    return bg.full


def _lower_bound(bg: _BitGraph, kind: CoverKind, included: int, excluded: int) -> int:
    """Admissible count of extra vertices any completion still needs."""
    inf = bg.n + 1
    best = 0
    if kind in (CoverKind.VERTEX_COVER, CoverKind.TOTAL_VERTEX_COVER):
        busy = 0
        count = 0
        for em in bg.edge_masks:
            if em & included:
                continue
            free = em & ~excluded
            if not free:
                return inf
            if not (free & busy):
                count += 1
                busy |= free
        best = max(best, count)
    if kind is not CoverKind.VERTEX_COVER:
        dom = bg.nbr if kind in (CoverKind.TOTAL_DOMINATING, CoverKind.TOTAL_VERTEX_COVER) else bg.cnbr
        busy = 0
        count = 0
        for v in range(bg.n):
            if dom[v] & included:
                continue
            cand = dom[v] & ~excluded
            if not cand:
                return inf
            if not (cand & busy):
                count += 1
                busy |= cand
        best = max(best, count)
    return best


def minimum_cover_exact(g: Graph, kind: CoverKind, cap: int | None = None) -> CoverCertificate:
    """Minimum cover of the given kind, lexicographically smallest optimum.

    Branch and bound over include/exclude decisions in vertex order, with a
    greedy incumbent bound and disjoint-constraint lower bounds.  Exploring
    the include branch first makes the first minimum-size set found the
    lexicographically smallest one.
    """
    if cap is None:
        cap = get_cap("exact_cover_vc" if kind is CoverKind.VERTEX_COVER else "exact_cover")
    if g.n > cap:
        raise CapExceededError(f"exact {kind.value} needs n <= {cap}, got {g.n}")
    if kind in (CoverKind.TOTAL_DOMINATING, CoverKind.TOTAL_VERTEX_COVER):
        if any(g.degree(v) == 0 for v in range(g.n)):
            raise ValueError(f"{kind.value} is infeasible: graph has an isolated vertex")
    if kind is CoverKind.WEAKLY_CONNECTED_DOMINATING and len(components(g)) != 1:
        raise ConnectivityError("weakly connected dominating sets need a connected graph")
    if kind is CoverKind.TVC_DOWN_WITNESS and not connectivity_report(g).two_connected:
        raise ConnectivityError("the monotone witness needs a 2-connected graph")

    bg = _BitGraph(g)
    bound = bin(_greedy_cover(bg, kind)).count("1")
    best: int | None = None
    best_size = bound

    def rec(i: int, included: int, excluded: int, size: int):
        nonlocal best, best_size
        undecided = bg.full & ~included & ~excluded
        if not bg.feasible(kind, included | undecided):
            return
        lb = _lower_bound(bg, kind, included, excluded)
        if best is not None and size + lb >= best_size:
            return
        if best is None and size + lb > bound:
            return
        if bg.feasible(kind, included):
            if best is None or size < best_size:
                best = included
                best_size = size
            return
        if i >= bg.n:
            return
        bit = 1 << i
        rec(i + 1, included | bit, excluded, size + 1)
        rec(i + 1, included, excluded | bit, size)

    rec(0, 0, 0, 0)
    if best is None:
        raise ValueError(f"no {kind.value} exists for this graph")
    members = [v for v in range(g.n) if (best >> v) & 1]
    return CoverCertificate(g, g.vertex_set(members), kind)


# ---------------------------------------------------------------------------
# constructions


def wcds_from_dominating(g: Graph, d: Iterable[int]) -> CoverCertificate:
    """Weakly connected dominating set of size <= 2|D| - 1 from a dominating D.

    The subgraph of edges incident to D has at most |D| components; a
    minimum set of connector edges (one per BFS tree edge over the
    component graph) is rejoined by taking the smaller-index endpoint of
    each connector.
    """
    d = g.vertex_set(d)
    if g.n < 2:
        raise ValueError("needs at least two vertices")
    if len(components(g)) != 1:
        raise ConnectivityError("graph must be connected")
    if not verify_cover(g, d, CoverKind.DOMINATING):
        raise ValueError("D is not a dominating set")
    gs = edge_incident_subgraph(g, d)
    comps = components(gs)
    comp_of = [-1] * g.n
    for idx, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = idx
    # BFS over the component graph, keeping the lexicographically first
    # connector edge for every newly reached component
    connector: dict[int, tuple[int, int]] = {}
    cross: dict[int, list[tuple[int, int]]] = {}
    by_pair: dict[tuple[int, int], tuple[int, int]] = {}
    for u, v in g.edges:
        a, b = comp_of[u], comp_of[v]
        if a != b:
            key = (min(a, b), max(a, b))
            if key not in by_pair:
                by_pair[key] = (u, v)
    adj: dict[int, set[int]] = {i: set() for i in range(len(comps))}
    for a, b in by_pair:
        adj[a].add(b)
        adj[b].add(a)
    seen = {0}
    queue = [0]
    extra = set()
    while queue:
        a = queue.pop(0)
        for b in sorted(adj[a]):
            if b not in seen:
                seen.add(b)
                queue.append(b)
                u, v = by_pair[(min(a, b), max(a, b))]
                extra.add(min(u, v))
    result = g.vertex_set(set(d) | extra)
    cert = CoverCertificate(g, result, CoverKind.WEAKLY_CONNECTED_DOMINATING)
    assert cert.size <= 2 * len(d) - 1, "connector construction exceeded 2|D|-1"
    return cert


def tree_vertex_cover(t: Graph) -> CoverCertificate:
    """Minimum vertex cover of a tree by the standard include/exclude DP."""
    if t.m != t.n - 1 or len(components(t)) != 1:
        raise ValueError("input is not a tree")
    if t.n == 1:
        return CoverCertificate(t, t.vertex_set(()), CoverKind.VERTEX_COVER)
    st = spanning_tree(t)  # also yields a parent order
    parent = [-1] * t.n
    order = []
    seen = [False] * t.n
    seen[0] = True
    queue = [0]
    while queue:
        u = queue.pop(0)
        order.append(u)
        for w in t.adj[u]:
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                queue.append(w)
    # dp[v][0] = min cover size in subtree excluding v, dp[v][1] = including
    dp = [[0, 1] for _ in range(t.n)]
    for u in reversed(order):
        for w in t.adj[u]:
            if parent[w] == u:
                dp[u][0] += dp[w][1]
                dp[u][1] += min(dp[w])
    chosen = set()
    stack = [(0, dp[0][1] <= dp[0][0])]
    while stack:
        u, take = stack.pop()
        if take:
            chosen.add(u)
        for w in t.adj[u]:
            if parent[w] == u:
                if not take:
                    stack.append((w, True))
                else:
                    stack.append((w, dp[w][1] <= dp[w][0]))
    return CoverCertificate(t, t.vertex_set(chosen), CoverKind.VERTEX_COVER)


# ---------------------------------------------------------------------------
# serialization


def certificate_to_json(cert: CoverCertificate) -> str:
    return json.dumps({"kind": cert.kind.value, "set": sorted(cert.set), "size": cert.size})


def certificate_from_json(text: str, g: Graph) -> CoverCertificate:
    data = json.loads(text)
    return CoverCertificate(g, g.vertex_set(data["set"]), CoverKind(data["kind"]), data["size"])
