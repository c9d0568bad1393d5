"""Labelling arcs by group elements under an arc-regular action.

When a group acts arc-regularly on a graph, fixing one base arc names every
arc by the unique element carrying the base there.  The line graph of the
subdivision then has one vertex per arc, and the action transported along
the labels is left multiplication, which exhibits that line graph as a
Cayley graph.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalInconsistencyError
from .graphs import (Arc, CayleyColouredGraph, ColouredGraph, arcs,
                     cayley_graph, line_graph, subdivision)
from .groups import FiniteGroup, Permutation


@dataclass(frozen=True)
class ArcLabeling:
    """A bijection between arcs of ``graph`` and elements of ``group``."""

    graph: ColouredGraph
    group: FiniteGroup
    base_arc: Arc
    arc_to_elem: dict
    elem_to_arc: list

    def label(self, a: Arc) -> int:
        return self.arc_to_elem[a]


def arc_labeling(graph: ColouredGraph, group: FiniteGroup,
                 base_arc: Arc | None = None) -> ArcLabeling:
    """Label every arc by the group element that moves ``base_arc`` onto it.

    Verifies the whole package: the realization consists of graph
    automorphisms, the orbit map g -> g(base_arc) is a bijection onto the
    arcs (this is arc-regularity), and the labelling is equivariant, so
    label(g(a)) = g * label(a) for every g and every arc a.
    """
    if group.realization is None:
        raise ValueError("group needs a permutation realization")
    if group.realization[0].degree != graph.vertex_count:
        raise ValueError("realization degree does not match the graph")
    all_arcs = arcs(graph)
    if not all_arcs:
        raise ValueError("graph has no arcs to label")
    edge_set = set(graph.edges())
    for i, p in enumerate(group.realization):
        imgs = p.images
        for (u, w) in edge_set:
            a, b = imgs[u], imgs[w]
            if ((a, b) if a < b else (b, a)) not in edge_set:
                raise ValueError(
                    f"element {group.elements[i]} is not a graph automorphism")
    if base_arc is None:
        base_arc = all_arcs[0]
    else:
        base_arc = Arc(*base_arc)
        if (min(base_arc), max(base_arc)) not in edge_set:
            raise ValueError(f"{base_arc} is not an arc of the graph")
    if group.order != len(all_arcs):
        raise ValueError(
            f"not arc-regular: |G| = {group.order}, {len(all_arcs)} arcs")
    elem_to_arc = []
    arc_to_elem: dict[Arc, int] = {}
    for i, p in enumerate(group.realization):
        a = Arc(p.images[base_arc.tail], p.images[base_arc.head])
        if a in arc_to_elem:
            raise ValueError("not arc-regular: two elements give one arc")
        arc_to_elem[a] = i
        elem_to_arc.append(a)
    # orbit size |G| = arc count and no collisions, so this is a bijection
    table = group.table
    for gi, p in enumerate(group.realization):
        imgs = p.images
        row = table[gi]
        for hi, a in enumerate(elem_to_arc):
            if arc_to_elem[Arc(imgs[a.tail], imgs[a.head])] != row[hi]:
                raise InternalInconsistencyError(
                    "labelling is not equivariant")
    return ArcLabeling(graph, group, base_arc, arc_to_elem, elem_to_arc)


def cayley_form(labeling: ArcLabeling
                ) -> tuple[CayleyColouredGraph, list, ColouredGraph]:
    """Present the line graph of the subdivision as a coloured Cayley graph.

    Vertices of the line graph are edges of the subdivision; each such edge
    joins an original vertex x to the midpoint of some edge {x, w}, which is
    the arc (x, w).  Reading arcs through the labelling identifies the line
    graph's vertices with group elements; adjacency then matches Cay(G, C)
    where C is the set of labels adjacent to the base arc's vertex.  The
    match is verified edge for edge.

    Returns the Cayley graph, the element index of every line-graph vertex,
    and the bare line graph.
    """
    sub, provenance = subdivision(labeling.graph)
    lg, s_edges = line_graph(sub)
    n = labeling.graph.vertex_count

    elem_of_vertex = []
    for (a, b) in s_edges:
        x, mid = (a, b) if a < n else (b, a)
        kind, payload = provenance[mid]
        if kind != "edge" or x >= n or mid < n:
            raise InternalInconsistencyError(
                "subdivision edge does not join a vertex to a midpoint")
        u, w = payload
        other = w if x == u else u
        elem_of_vertex.append(labeling.arc_to_elem[Arc(x, other)])

    vertex_of_elem = [-1] * labeling.group.order
    for v, e in enumerate(elem_of_vertex):
        vertex_of_elem[e] = v
    base_vertex = vertex_of_elem[labeling.group.identity]

    connection = sorted(elem_of_vertex[u]
                        for u in lg.neighbours(base_vertex))
    cg = cayley_graph(labeling.group, connection)

    lg_edges = {tuple(sorted((elem_of_vertex[u], elem_of_vertex[w])))
                for (u, w) in lg.edges()}
    cay_edges = set(cg.graph.edges())
    if lg_edges != cay_edges:
        raise InternalInconsistencyError(
            "line graph of the subdivision is not the expected Cayley graph")
    return cg, elem_of_vertex, lg


def induced_vertex_map(h: Permutation, labeling: ArcLabeling) -> Permutation:
    """Transport an automorphism of the base graph to the element indices.

    The image of element i is the label of h applied to the arc labelled i.
    Group elements themselves transport to the rows of the multiplication
    table; overgroup elements transport to new permutations.
    """
    if h.degree != labeling.graph.vertex_count:
        raise ValueError("degree does not match the labelled graph")
    imgs = h.images
    out = []
    for a in labeling.elem_to_arc:
        key = Arc(imgs[a.tail], imgs[a.head])
        if key not in labeling.arc_to_elem:
            raise ValueError("map does not permute the arcs of the graph")
        out.append(labeling.arc_to_elem[key])
    return Permutation(out)
