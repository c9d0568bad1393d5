"""Edge-coloured simple graphs and the constructions the analysis needs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .groups import FiniteGroup


class Arc(NamedTuple):
    tail: int
    head: int


class ColouredGraph:
    """A finite simple graph with a colour id on every edge.

    Instances are immutable by convention; derived structures (adjacency,
    the flattened colour matrix) are cached on first use.
    """

    __slots__ = ("vertex_count", "_colour", "colour_names", "vertex_names",
                 "_matrix", "_adj")

    def __init__(self, vertex_count: int, edge_colours, colour_names=None,
                 vertex_names=None):
        if vertex_count < 1:
            raise ValueError("a graph needs at least one vertex")
        self.vertex_count = vertex_count
        colour: dict[tuple[int, int], int] = {}
        for (u, v), cid in dict(edge_colours).items():
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"edge ({u},{v}) outside the vertex range")
            if cid < 0:
                raise ValueError("colour ids must be non-negative")
            key = (u, v) if u < v else (v, u)
            if key in colour and colour[key] != cid:
                raise ValueError(f"edge {key} given two colours")
            colour[key] = cid
        self._colour = colour
        self.colour_names = dict(colour_names or {})
        if vertex_names is not None:
            vertex_names = list(vertex_names)
            if len(vertex_names) != vertex_count:
                raise ValueError("one name per vertex, please")
        self.vertex_names = vertex_names
        self._matrix = None
        self._adj = None

    @property
    def edge_count(self) -> int:
        return len(self._colour)

    def edges(self) -> list[tuple[int, int]]:
        return sorted(self._colour)

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._colour

    def edge_colour(self, u: int, v: int) -> int:
        return self._colour[(u, v) if u < v else (v, u)]

    def colours_used(self) -> list[int]:
        return sorted(set(self._colour.values()))

    def neighbours(self, v: int) -> tuple[int, ...]:
        if self._adj is None:
            adj = [[] for _ in range(self.vertex_count)]
            for (a, b) in sorted(self._colour):
                adj[a].append(b)
                adj[b].append(a)
            self._adj = tuple(tuple(sorted(nb)) for nb in adj)
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self.neighbours(v))

    def colour_matrix(self) -> list[int]:
        """Flattened n*n matrix: colour id for edges, -1 elsewhere."""
        if self._matrix is None:
            n = self.vertex_count
            m = [-1] * (n * n)
            for (u, v), cid in self._colour.items():
                m[u * n + v] = cid
                m[v * n + u] = cid
            self._matrix = m
        return self._matrix

    def vertex_label(self, v: int) -> str:
        if self.vertex_names is not None:
            return self.vertex_names[v]
        return str(v)

    def colour_label(self, cid: int) -> str:
        return self.colour_names.get(cid, f"c{cid}")

    def __repr__(self) -> str:
        return (f"<ColouredGraph |V|={self.vertex_count} "
                f"|E|={self.edge_count} colours={len(set(self._colour.values()))}>")


@dataclass(frozen=True)
class CayleyColouredGraph:
    """A Cayley graph with its natural inverse-pair colouring.

    ``connection`` holds element indices, sorted; the underlying graph joins
    g to g*c and colours the edge by min(index(c), index(c^-1)).
    """

    group: FiniteGroup
    connection: tuple[int, ...]
    graph: ColouredGraph

    def colour_classes(self) -> dict[int, tuple[int, ...]]:
        """colour id -> the {c, c^-1} pair it stands for."""
        out: dict[int, tuple[int, ...]] = {}
        for c in self.connection:
            cid = min(c, self.group.inverse[c])
            out.setdefault(cid, tuple(sorted({c, self.group.inverse[c]})))
        return out


def cayley_graph(g: FiniteGroup, connection) -> CayleyColouredGraph:
    """Cay(G, C) with the natural colouring; C must omit the identity and be
    inverse-closed (no silent closing: add inverses explicitly)."""
    conn = sorted(set(connection))
    for c in conn:
        if not 0 <= c < g.order:
            raise ValueError(f"connection element {c} outside the group")
        if c == g.identity:
            raise ValueError("identity in the connection set")
    missing = [c for c in conn if g.inverse[c] not in conn]
    if missing:
        names = ", ".join(g.elements[c] for c in missing)
        raise ValueError(
            f"connection set is not inverse-closed (missing inverses of "
            f"{names}); add them explicitly")
    edge_colours = {}
    colour_names = {}
    for c in conn:
        cinv = g.inverse[c]
        cid = min(c, cinv)
        if cid == c:
            if c == cinv:
                colour_names[cid] = "{%s}" % g.elements[c]
            else:
                colour_names[cid] = "{%s,%s}" % (g.elements[c], g.elements[cinv])
        for i in range(g.order):
            j = g.table[i][c]
            key = (i, j) if i < j else (j, i)
            edge_colours[key] = cid
    graph = ColouredGraph(g.order, edge_colours, colour_names,
                          vertex_names=list(g.elements))
    return CayleyColouredGraph(g, tuple(conn), graph)


def complete_colour_graph(g: FiniteGroup) -> CayleyColouredGraph:
    """Cay(G, G minus the identity): the complete graph, naturally coloured."""
    if g.order < 2:
        raise ValueError("the trivial group has no complete colour graph")
    return cayley_graph(g, [i for i in range(g.order) if i != g.identity])


def complete_bipartite(n: int, m: int) -> ColouredGraph:
    """K_{n,m} on one colour; vertices a0..a(n-1) then b0..b(m-1)."""
    if n < 1 or m < 1:
        raise ValueError("both parts must be non-empty")
    edge_colours = {(i, n + j): 0 for i in range(n) for j in range(m)}
    names = [f"a{i}" for i in range(n)] + [f"b{j}" for j in range(m)]
    return ColouredGraph(n + m, edge_colours, {0: "plain"}, vertex_names=names)


def subdivision(g: ColouredGraph):
    """One new vertex on every edge; colours are dropped (single colour 0).

    Returns (graph, provenance) where provenance[v] is ("vertex", original)
    for kept vertices and ("edge", (u, w)) for midpoints.
    """
    n = g.vertex_count
    edges = g.edges()
    provenance: list[tuple] = [("vertex", v) for v in range(n)]
    names = [g.vertex_label(v) for v in range(n)]
    edge_colours = {}
    for rank, (u, w) in enumerate(edges):
        mid = n + rank
        provenance.append(("edge", (u, w)))
        names.append(f"{g.vertex_label(u)}|{g.vertex_label(w)}")
        edge_colours[(u, mid)] = 0
        edge_colours[(w, mid)] = 0
    return (ColouredGraph(n + len(edges), edge_colours, {0: "plain"},
                          vertex_names=names), provenance)


def line_graph(g: ColouredGraph):
    """Vertices are the edges of g, adjacent when they share an endpoint.

    Returns (graph, provenance) with provenance[v] the edge (u, w) of g that
    vertex v stands for.  Single colour 0.
    """
    edges = g.edges()
    if not edges:
        raise ValueError("line graph of an edgeless graph is empty")
    by_vertex: dict[int, list[int]] = {}
    for rank, (u, w) in enumerate(edges):
        by_vertex.setdefault(u, []).append(rank)
        by_vertex.setdefault(w, []).append(rank)
    edge_colours = {}
    for ranks in by_vertex.values():
        for a in range(len(ranks)):
            for b in range(a + 1, len(ranks)):
                edge_colours[(ranks[a], ranks[b])] = 0
    names = [f"{g.vertex_label(u)}-{g.vertex_label(w)}" for u, w in edges]
    return (ColouredGraph(len(edges), edge_colours, {0: "plain"},
                          vertex_names=names), list(edges))


def is_connected(g: ColouredGraph) -> bool:
    n = g.vertex_count
    seen = [False] * n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        u = stack.pop()
        for v in g.neighbours(u):
            if not seen[v]:
                seen[v] = True
                count += 1
                stack.append(v)
    return count == n


def arcs(g: ColouredGraph) -> list[Arc]:
    """Both orientations of every edge, in lexicographic order."""
    out = []
    for (u, v) in g.edges():
        out.append(Arc(u, v))
        out.append(Arc(v, u))
    out.sort()
    return out
