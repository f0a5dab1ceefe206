"""Graph representation, structure algorithms and generators.

Vertices are dense 0-based indices.  Graphs are immutable; multigraphs
(parallel edges, never self-loops) arise only from ``contract_partition``.
"""

from __future__ import annotations

import heapq
import json
import math
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import ConnectivityError

__all__ = [
    "Graph",
    "VertexSet",
    "EarDecomposition",
    "ConnectivityReport",
    "boundary",
    "connectivity_report",
    "open_ear_decomposition",
    "verify_ear_decomposition",
    "sparse_2connected_spanning",
    "edge_incident_subgraph",
    "contract_partition",
    "spanning_tree",
    "perfect_matching",
    "girth",
    "components",
    "generate",
    "FAMILIES",
    "cycle",
    "path",
    "complete",
    "complete_bipartite",
    "hypercube",
    "grid",
    "triangular_grid",
    "king_grid",
    "random_regular",
    "random_tree",
    "petersen",
    "grid_index",
    "read_graph",
    "write_graph",
    "graph_to_json",
    "graph_from_json",
    "to_dot",
]


class VertexSet(frozenset):
    """A frozenset of vertex indices that remembers the n of its graph."""

    parent_n: int

    def __new__(cls, members: Iterable[int], parent_n: int):
        members = frozenset(members)
        for v in members:
            if not (0 <= v < parent_n):
                raise ValueError(f"vertex {v} out of range for n={parent_n}")
        obj = super().__new__(cls, members)
        obj.parent_n = parent_n
        return obj

    def to_sorted_list(self) -> list[int]:
        return sorted(self)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph (or multigraph when ``multigraph=True``).

    ``edges`` is kept as a sorted tuple of (u, v) pairs with u < v, so two
    graphs with the same labelled edge set compare equal.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    multigraph: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        normalized = []
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range")
            normalized.append((u, v) if u < v else (v, u))
        normalized.sort()
        if not self.multigraph:
            for a, b in zip(normalized, normalized[1:]):
                if a == b:
                    raise ValueError(f"duplicate edge {a} in a simple graph")
        object.__setattr__(self, "edges", tuple(normalized))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], multigraph: bool = False) -> "Graph":
        return cls(n, tuple((e[0], e[1]) for e in edges), multigraph)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        """Neighbor lists (parallel edges collapsed), each sorted."""
        nbrs = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(tuple(sorted(s)) for s in nbrs)

    @cached_property
    def _adj_ids(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Neighbor lists as (neighbor, edge_id), keeping parallel edges."""
        nbrs = [[] for _ in range(self.n)]
        for eid, (u, v) in enumerate(self.edges):
            nbrs[u].append((v, eid))
            nbrs[v].append((u, eid))
        return tuple(tuple(l) for l in nbrs)

    def degree(self, v: int) -> int:
        return len(self._adj_ids[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def vertex_set(self, members: Iterable[int]) -> VertexSet:
        return VertexSet(members, self.n)

    def vertices(self) -> range:
        return range(self.n)


@dataclass(frozen=True)
class EarDecomposition:
    """An initial cycle plus open ears, each as a vertex sequence.

    An ear ``(a, x1, ..., xk, b)`` has endpoints a != b already present and
    new interior vertices; a single edge ``(a, b)`` is an ear with no
    interior.
    """

    initial_cycle: tuple[int, ...]
    ears: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class ConnectivityReport:
    connected: bool
    two_edge_connected: bool
    two_connected: bool
    cut_vertices: VertexSet


def boundary(g: Graph, s: Iterable[int]) -> VertexSet:
    """Vertices incident to the cut E(S, V-S); rejects trivial cuts."""
    s = g.vertex_set(s)
    if not s or len(s) == g.n:
        raise ValueError("boundary is undefined for S empty or S = V")
    out = set()
    for u, v in g.edges:
        if (u in s) != (v in s):
            out.add(u)
            out.add(v)
    return g.vertex_set(out)


def components(g: Graph) -> list[VertexSet]:
    """Connected components, ordered by smallest contained vertex."""
    seen = [False] * g.n
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        stack = [start]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(g.vertex_set(comp))
    return comps


def _dfs_forest(g: Graph):
    """Iterative DFS over all components.

    Returns (parent, parent_eid, order, preorder list). Tree edges follow
    increasing edge-id adjacency, so the forest is deterministic.
    """
    n = g.n
    parent = [-1] * n
    parent_eid = [-1] * n
    order = [-1] * n
    pre = []
    counter = 0
    adj = g._adj_ids
    for root in range(n):
        if order[root] != -1:
            continue
        order[root] = counter
        counter += 1
        pre.append(root)
        stack = [(root, iter(adj[root]))]
        while stack:
            u, it = stack[-1]
            advanced = False
            for w, eid in it:
                if order[w] == -1:
                    parent[w] = u
                    parent_eid[w] = eid
                    order[w] = counter
                    counter += 1
                    pre.append(w)
                    stack.append((w, iter(adj[w])))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
    return parent, parent_eid, order, pre


def _cut_vertices_and_bridges(g: Graph) -> tuple[set[int], set[int]]:
    """Articulation vertices and bridge edge-ids (per component), iteratively."""
    n = g.n
    parent, parent_eid, order, pre = _dfs_forest(g)
    low = order[:]
    child_count = [0] * n
    cut = set()
    bridges = set()
    # process vertices in reverse preorder so children are finished first
    for u in reversed(pre):
        for w, eid in g._adj_ids[u]:
            if parent[w] == u and parent_eid[w] == eid:
                child_count[u] += 1
                low[u] = min(low[u], low[w])
                if low[w] > order[u]:
                    bridges.add(eid)
                if parent[u] != -1 and low[w] >= order[u]:
                    cut.add(u)
            elif eid != parent_eid[u]:
                low[u] = min(low[u], order[w])
    for u in range(n):
        if parent[u] == -1 and child_count[u] >= 2:
            cut.add(u)
    return cut, bridges


def connectivity_report(g: Graph) -> ConnectivityReport:
    connected = len(components(g)) == 1
    cut, bridges = _cut_vertices_and_bridges(g)
    two_edge = connected and not bridges
    if g.n >= 3:
        two_conn = connected and not cut
    elif g.n == 2:
        # a pair of parallel edges counts as 2-connected (post-contraction)
        two_conn = len(g.edges) >= 2
    else:
        two_conn = False
    return ConnectivityReport(connected, two_edge, two_conn, g.vertex_set(cut))


def open_ear_decomposition(g: Graph) -> EarDecomposition:
    """Chain decomposition of a 2-connected graph into a cycle plus open ears.

    DFS from vertex 0; every non-tree edge, processed at its ancestor
    endpoint in preorder, starts a chain that follows parent links until it
    meets an already-chained vertex.  The first chain is the initial cycle;
    in a 2-connected graph every other chain is an open ear and together
    they use every edge exactly once.
    """
    rep = connectivity_report(g)
    if not rep.two_connected:
        raise ConnectivityError("open ear decomposition needs a 2-connected graph")
    parent, parent_eid, order, pre = _dfs_forest(g)
    back_at = [[] for _ in range(g.n)]  # ancestor -> [(descendant, eid)]
    for u in range(g.n):
        for w, eid in g._adj_ids[u]:
            if parent_eid[w] == eid and parent[w] == u:
                continue  # tree edge, stored at child
            if parent_eid[u] == eid and parent[u] == w:
                continue
            # non-tree edge: record once, at the endpoint with smaller order
            if order[u] < order[w]:
                back_at[u].append((w, eid))
    visited = [False] * g.n
    visited[pre[0]] = True
    chains: list[list[int]] = []
    for u in pre:
        for w, _eid in back_at[u]:
            chain = [u]
            x = w
            while not visited[x]:
                visited[x] = True
                chain.append(x)
                x = parent[x]
            chain.append(x)
            chains.append(chain)
    if not chains:
        raise ConnectivityError("graph has no ear decomposition")
    first = chains[0]
    if first[0] != first[-1]:
        raise ConnectivityError("decomposition did not start with a cycle")
    initial_cycle = tuple(first[:-1])
    ears = []
    for chain in chains[1:]:
        if chain[0] == chain[-1]:
            raise ConnectivityError("closed ear found: graph is not 2-connected")
        ears.append(tuple(chain))
    ed = EarDecomposition(initial_cycle, tuple(ears))
    verify_ear_decomposition(g, ed)
    return ed


def _ear_edge_multiset(ed: EarDecomposition) -> list[tuple[int, int]]:
    cyc = ed.initial_cycle
    pairs = []
    for i in range(len(cyc)):
        u, v = cyc[i], cyc[(i + 1) % len(cyc)]
        pairs.append((u, v) if u < v else (v, u))
    for ear in ed.ears:
        for u, v in zip(ear, ear[1:]):
            pairs.append((u, v) if u < v else (v, u))
    return pairs


def verify_ear_decomposition(g: Graph, ed: EarDecomposition) -> None:
    """Raise ValueError unless ``ed`` is a valid open ear decomposition of g."""
    if len(ed.initial_cycle) < 2 or len(set(ed.initial_cycle)) != len(ed.initial_cycle):
        raise ValueError("initial cycle must be a sequence of distinct vertices")
    if len(ed.initial_cycle) == 2 and not g.multigraph:
        raise ValueError("2-cycles exist only in multigraphs")
    present = set(ed.initial_cycle)
    for ear in ed.ears:
        if len(ear) < 2:
            raise ValueError("ear too short")
        if ear[0] == ear[-1]:
            raise ValueError("ear is not open")
        if ear[0] not in present or ear[-1] not in present:
            raise ValueError("ear endpoints must already be present")
        interior = ear[1:-1]
        if len(set(interior)) != len(interior) or any(v in present for v in interior):
            raise ValueError("ear interior must be new distinct vertices")
        present.update(interior)
    if present != set(range(g.n)):
        raise ValueError("decomposition does not span the graph")
    if sorted(_ear_edge_multiset(ed)) != list(g.edges):
        raise ValueError("decomposition does not use each edge exactly once")


def sparse_2connected_spanning(g: Graph) -> Graph:
    """2-connected spanning subgraph from the ear decomposition.

    Ears consisting of a single edge are dropped, so the result has at most
    2n-3 edges for simple inputs (2n-2 when a 2-vertex multigraph cycle
    starts the decomposition).
    """
    ed = open_ear_decomposition(g)
    kept = EarDecomposition(ed.initial_cycle, tuple(e for e in ed.ears if len(e) >= 3))
    edges = _ear_edge_multiset(kept)
    h = Graph(g.n, tuple(edges), g.multigraph)
    limit = 2 * g.n - 2 if g.multigraph else 2 * g.n - 3
    assert h.m <= limit, "ear-based subgraph exceeded its edge bound"
    assert connectivity_report(h).two_connected, "ear-based subgraph lost 2-connectivity"
    return h


def edge_incident_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    """Spanning subgraph keeping exactly the edges with an endpoint in S."""
    s = g.vertex_set(s)
    edges = tuple(e for e in g.edges if e[0] in s or e[1] in s)
    return Graph(g.n, edges, g.multigraph)


def contract_partition(g: Graph, parts: Sequence[Iterable[int]]) -> Graph:
    """Contract each part to a single vertex, keeping parallel edges.

    Parts become vertices 0..len(parts)-1 in the given order; self-loops
    (edges inside a part) are dropped.
    """
    part_of = [-1] * g.n
    for idx, part in enumerate(parts):
        for v in part:
            if not (0 <= v < g.n):
                raise ValueError(f"vertex {v} out of range")
            if part_of[v] != -1:
                raise ValueError(f"vertex {v} appears in two parts")
            part_of[v] = idx
    if any(p == -1 for p in part_of):
        raise ValueError("parts do not cover all vertices")
    edges = []
    for u, v in g.edges:
        a, b = part_of[u], part_of[v]
        if a != b:
            edges.append((a, b))
    return Graph(len(parts), tuple(edges), multigraph=True)


def spanning_tree(g: Graph) -> Graph:
    """BFS spanning tree (deterministic: vertices visited in index order)."""
    if len(components(g)) != 1:
        raise ConnectivityError("spanning tree needs a connected graph")
    seen = [False] * g.n
    seen[0] = True
    queue = [0]
    edges = []
    while queue:
        u = queue.pop(0)
        for w in g.adj[u]:
            if not seen[w]:
                seen[w] = True
                edges.append((u, w))
                queue.append(w)
    return Graph(g.n, tuple(edges))


def perfect_matching(g: Graph) -> frozenset[tuple[int, int]] | None:
    """A perfect matching found by backtracking, or None.

    Desk-scale search; bridgeless cubic inputs always admit one.
    """
    if g.n % 2 == 1:
        return None
    matched = [False] * g.n
    chosen: list[tuple[int, int]] = []

    def rec() -> bool:
        try:
            u = matched.index(False)
        except ValueError:
            return True
        matched[u] = True
        for w in g.adj[u]:
            if not matched[w]:
                matched[w] = True
                chosen.append((u, w))
                if rec():
                    return True
                chosen.pop()
                matched[w] = False
        matched[u] = False
        return False

    if rec():
        return frozenset((min(u, w), max(u, w)) for u, w in chosen)
    return None


def girth(g: Graph) -> int | float:
    """Length of a shortest cycle (2 for parallel edges), inf for forests."""
    best = math.inf
    adj = g._adj_ids
    for root in range(g.n):
        dist = [-1] * g.n
        via = [-1] * g.n
        dist[root] = 0
        queue = [root]
        while queue:
            u = queue.pop(0)
            if dist[u] * 2 >= best:
                break
            for w, eid in adj[u]:
                if dist[w] == -1:
                    dist[w] = dist[u] + 1
                    via[w] = eid
                    queue.append(w)
                elif eid != via[u]:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


# ---------------------------------------------------------------------------
# generators


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def complete(n: int) -> Graph:
    return Graph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b}: vertices 0..a-1 on the small side, a..a+b-1 on the other."""
    if a < 1 or b < 1:
        raise ValueError("both sides need at least one vertex")
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def hypercube(d: int) -> Graph:
    """Q_d: vertices are 0..2^d-1, coordinate i is bit i-1."""
    if d < 1:
        raise ValueError("hypercube needs d >= 1")
    n = 1 << d
    edges = [(x, x ^ (1 << b)) for x in range(n) for b in range(d) if x < x ^ (1 << b)]
    return Graph(n, tuple(edges))


def grid_index(i: int, j: int, n: int) -> int:
    """Vertex index of grid coordinate (i, j), 1-based, i = column, j = row."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"coordinate ({i},{j}) outside [1,{n}]^2")
    return (j - 1) * n + (i - 1)


def _grid_edges(n: int, diagonals: str) -> list[tuple[int, int]]:
    edges = []
    for j in range(1, n + 1):
        for i in range(1, n + 1):
            v = grid_index(i, j, n)
            if i < n:
                edges.append((v, grid_index(i + 1, j, n)))
            if j < n:
                edges.append((v, grid_index(i, j + 1, n)))
            if i < n and j < n and diagonals in ("main", "both"):
                edges.append((v, grid_index(i + 1, j + 1, n)))
            if i < n and j < n and diagonals == "both":
                edges.append((grid_index(i + 1, j, n), grid_index(i, j + 1, n)))
    return edges


def grid(n: int) -> Graph:
    """n x n square grid."""
    if n < 2:
        raise ValueError("grid needs n >= 2")
    return Graph(n * n, tuple(_grid_edges(n, "none")))


def triangular_grid(n: int) -> Graph:
    """n x n square grid plus one (down-right) diagonal per cell."""
    if n < 2:
        raise ValueError("grid needs n >= 2")
    return Graph(n * n, tuple(_grid_edges(n, "main")))


def king_grid(n: int) -> Graph:
    """Strong product of two paths: square grid plus both diagonals."""
    if n < 2:
        raise ValueError("grid needs n >= 2")
    return Graph(n * n, tuple(_grid_edges(n, "both")))


def random_regular(n: int, d: int, seed: int) -> Graph:
    """Random d-regular simple graph via the pairing model with rejection."""
    if n * d % 2 != 0 or d >= n or d < 1:
        raise ValueError("need d < n and n*d even")
    rng = random.Random(seed)
    for _ in range(10000):
        points = [v for v in range(n) for _ in range(d)]
        rng.shuffle(points)
        pairs = [(points[2 * i], points[2 * i + 1]) for i in range(len(points) // 2)]
        if any(u == v for u, v in pairs):
            continue
        norm = {(min(u, v), max(u, v)) for u, v in pairs}
        if len(norm) != len(pairs):
            continue
        return Graph(n, tuple(norm))
    raise RuntimeError("pairing model failed to produce a simple graph")


def random_tree(n: int, seed: int) -> Graph:
    """Uniform random labelled tree from a random Pruefer sequence."""
    if n < 1:
        raise ValueError("tree needs n >= 1")
    if n == 1:
        return Graph(1, ())
    if n == 2:
        return Graph(2, ((0, 1),))
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u = heapq.heappop(leaves)
    w = heapq.heappop(leaves)
    edges.append((u, w))
    return Graph(n, tuple(edges))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, tuple(outer + spokes + inner))


FAMILIES = {
    "cycle": (cycle, 1),
    "path": (path, 1),
    "complete": (complete, 1),
    "complete_bipartite": (complete_bipartite, 2),
    "hypercube": (hypercube, 1),
    "grid": (grid, 1),
    "triangular_grid": (triangular_grid, 1),
    "king_grid": (king_grid, 1),
    "random_regular": (random_regular, 2),
    "random_tree": (random_tree, 1),
    "petersen": (petersen, 0),
}

_SEEDED = {"random_regular", "random_tree"}


def generate(family: str, *params: int, seed: int | None = None) -> Graph:
    """Build a named graph family; random families require an explicit seed."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; options: {sorted(FAMILIES)}")
    fn, arity = FAMILIES[family]
    if len(params) != arity:
        raise ValueError(f"{family} takes {arity} parameter(s), got {len(params)}")
    if family in _SEEDED:
        if seed is None:
            raise ValueError(f"{family} requires a seed")
        return fn(*params, seed)
    return fn(*params)


# ---------------------------------------------------------------------------
# serialization


def write_graph(g: Graph, path_: str) -> None:
    """Text format: header ``n m``, then one ``u v`` line per edge."""
    with open(path_, "w") as fh:
        fh.write(f"{g.n} {g.m}\n")
        for u, v in g.edges:
            fh.write(f"{u} {v}\n")


def read_graph(path_: str) -> Graph:
    with open(path_) as fh:
        lines = [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty graph file")
    n, m = map(int, lines[0].split())
    edges = [tuple(map(int, ln.split())) for ln in lines[1 : m + 1]]
    if len(edges) != m:
        raise ValueError(f"expected {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def graph_to_json(g: Graph) -> str:
    return json.dumps({"n": g.n, "edges": [list(e) for e in g.edges]})


def graph_from_json(text: str) -> Graph:
    data = json.loads(text)
    return Graph.from_edges(data["n"], data["edges"])


def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        lines.append(f"  {v};")
    for u, v in g.edges:
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines)
