"""Graph representation, block decomposition and k-polygonal cactus validation."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable


class GraphError(ValueError):
    """Raised for malformed graph input."""


class CactusError(ValueError):
    """Raised when a graph is not a k-polygonal cactus (or not a chemical one)."""


Edge = tuple[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on the dense vertex ids ``0..vertex_count-1``."""

    vertex_count: int
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        if self.vertex_count < 0:
            raise GraphError("vertex_count must be nonnegative")
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.vertex_count):
                raise GraphError(f"edge ({u}, {v}) out of range or not normalized")

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], vertex_count: int | None = None) -> Graph:
        seen: set[Edge] = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            e = _norm(u, v)
            if e in seen:
                raise GraphError(f"duplicate edge {e}")
            seen.add(e)
        if vertex_count is None:
            vertex_count = 1 + max((v for _, v in seen), default=-1)
        return cls(vertex_count, frozenset(seen))

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in sorted(self.edges):
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    def is_connected(self) -> bool:
        if self.vertex_count == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            for w in self.adjacency[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.vertex_count

    def relabel(self, perm: list[int] | tuple[int, ...]) -> Graph:
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph(self.vertex_count, frozenset(_norm(perm[u], perm[v]) for u, v in self.edges))


def parse_graph(text: str) -> Graph:
    """Parse an edge-list document.

    Lines are ``u v`` pairs of nonnegative integers. An optional first
    non-comment line ``vertices N`` fixes the vertex count; lines starting
    with ``#`` and blank lines are ignored.
    """
    declared: int | None = None
    pairs: list[Edge] = []
    first = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if first and parts[0] == "vertices":
            if len(parts) != 2 or not parts[1].isdigit():
                raise GraphError(f"line {lineno}: malformed vertices header {raw!r}")
            declared = int(parts[1])
            first = False
            continue
        first = False
        if len(parts) != 2 or not (parts[0].isdigit() and parts[1].isdigit()):
            raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
        u, v = int(parts[0]), int(parts[1])
        if declared is not None and max(u, v) >= declared:
            raise GraphError(f"line {lineno}: vertex id {max(u, v)} >= declared count {declared}")
        pairs.append((u, v))
    return Graph.from_edges(pairs, declared)


def format_graph(g: Graph) -> str:
    """Canonical edge-list text: header line, then sorted ``u v`` with ``u < v``."""
    lines = [f"vertices {g.vertex_count}"]
    lines.extend(f"{u} {v}" for u, v in sorted(g.edges))
    return "\n".join(lines) + "\n"


def blocks(g: Graph) -> tuple[list[frozenset[Edge]], frozenset[int]]:
    """Biconnected decomposition of a connected graph.

    Returns the list of blocks (each an edge set) and the set of cut
    vertices. Iterative Hopcroft-Tarjan, so long chains do not hit the
    recursion limit.
    """
    if not g.is_connected():
        raise GraphError("graph is not connected")
    if g.vertex_count <= 1:
        return [], frozenset()
    adj = g.adjacency
    disc = [-1] * g.vertex_count
    low = [0] * g.vertex_count
    out: list[frozenset[Edge]] = []
    edge_stack: list[Edge] = []
    root = 0
    disc[root] = low[root] = 0
    counter = 1
    stack: list[tuple[int, int, int]] = [(root, -1, 0)]  # vertex, parent, next neighbour index
    while stack:
        v, parent, i = stack[-1]
        if i < len(adj[v]):
            stack[-1] = (v, parent, i + 1)
            w = adj[v][i]
            if w == parent:
                continue
            if disc[w] == -1:
                disc[w] = low[w] = counter
                counter += 1
                edge_stack.append(_norm(v, w))
                stack.append((w, v, 0))
            elif disc[w] < disc[v]:
                low[v] = min(low[v], disc[w])
                edge_stack.append(_norm(v, w))
            continue
        stack.pop()
        if parent == -1:
            continue
        low[parent] = min(low[parent], low[v])
        if low[v] >= disc[parent]:
            tree_edge = _norm(parent, v)
            comp: set[Edge] = set()
            while True:
                e = edge_stack.pop()
                comp.add(e)
                if e == tree_edge:
                    break
            out.append(frozenset(comp))
    membership: Counter[int] = Counter()
    for b in out:
        for x in {x for e in b for x in e}:
            membership[x] += 1
    cuts = frozenset(x for x, c in membership.items() if c >= 2)
    return out, cuts


def _cycle_order(block: frozenset[Edge]) -> tuple[int, ...] | None:
    """Cyclic vertex order of a block that is a simple cycle, else None.

    Orientation: lowest id first, then its lower-id neighbour.
    """
    nbrs: dict[int, list[int]] = {}
    for u, v in block:
        nbrs.setdefault(u, []).append(v)
        nbrs.setdefault(v, []).append(u)
    if len(block) < 3 or len(nbrs) != len(block) or any(len(x) != 2 for x in nbrs.values()):
        return None
    start = min(nbrs)
    order = [start]
    prev, cur = start, min(nbrs[start])
    while cur != start:
        order.append(cur)
        a, b = nbrs[cur]
        prev, cur = cur, (b if a == prev else a)
    if len(order) != len(nbrs):
        return None
    return tuple(order)


@dataclass(frozen=True)
class PolygonalCactus:
    """A validated member of the class of k-polygonal cacti with n polygons."""

    graph: Graph
    k: int
    n: int
    polygons: tuple[tuple[int, ...], ...]
    cut_vertices: frozenset[int]

    @property
    def degrees(self) -> tuple[int, ...]:
        return self.graph.degrees

    @property
    def max_degree(self) -> int:
        return max(self.graph.degrees, default=0)

    @cached_property
    def vertex_polygons(self) -> tuple[tuple[int, ...], ...]:
        """For each vertex, the indices of the polygons containing it."""
        vp: list[list[int]] = [[] for _ in range(self.graph.vertex_count)]
        for i, poly in enumerate(self.polygons):
            for v in poly:
                vp[v].append(i)
        return tuple(tuple(x) for x in vp)


def validate_cactus(g: Graph, k: int) -> PolygonalCactus:
    """Check that ``g`` is a k-polygonal cactus and return its structure."""
    if k < 3:
        raise CactusError(f"k must be >= 3, got {k}")
    if g.vertex_count == 0 or not g.is_connected():
        raise CactusError("graph is not connected")
    bl, cuts = blocks(g)
    polygons: list[tuple[int, ...]] = []
    for b in bl:
        if len(b) == 1:
            raise CactusError(f"block {sorted(b)[0]} is a cut edge")
        order = _cycle_order(b)
        if order is None or len(order) != k:
            raise CactusError(f"block with {len(b)} edges is not a cycle of length {k}")
        polygons.append(order)
    if not polygons:
        raise CactusError("graph has no polygons")
    polygons.sort()
    n = len(polygons)
    # Always true for a block decomposition into k-cycles; kept as a cheap tripwire.
    assert g.vertex_count == n * k - n + 1 and len(g.edges) == n * k
    return PolygonalCactus(g, k, n, tuple(polygons), cuts)


def cactus_from_polygons(polygons: Iterable[Iterable[int]], k: int) -> PolygonalCactus:
    """Build and validate a cactus from cyclic vertex lists."""
    edges = []
    for poly in polygons:
        p = list(poly)
        edges.extend((p[i], p[(i + 1) % len(p)]) for i in range(len(p)))
    return validate_cactus(Graph.from_edges(edges), k)


def is_chemical(c: PolygonalCactus) -> bool:
    return c.max_degree <= 4


@dataclass(frozen=True)
class PolygonTree:
    """Tree of polygons of a chemical cactus.

    ``attachments[i]`` lists the cyclic positions (indices into
    ``c.polygons[i]``) holding cut vertices.
    """

    n: int
    adjacencies: tuple[tuple[int, int], ...]
    attachments: tuple[tuple[int, ...], ...]

    def degree(self, node: int) -> int:
        return len(self.attachments[node])

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.attachments)


def polygon_tree(c: PolygonalCactus) -> PolygonTree:
    if not is_chemical(c):
        raise CactusError("polygon tree is defined only for chemical cacti")
    adjacencies = []
    for v in sorted(c.cut_vertices):
        a, b = c.vertex_polygons[v]
        adjacencies.append((a, b))
    attachments = tuple(
        tuple(i for i, v in enumerate(poly) if v in c.cut_vertices) for poly in c.polygons
    )
    return PolygonTree(c.n, tuple(sorted(adjacencies)), attachments)
