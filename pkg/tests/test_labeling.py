"""Arc labellings: the bridge from an arc-regular action to a Cayley graph."""

import pytest

from ccakit.graphs import Arc, arcs, cayley_graph, is_connected
from ccakit.labeling import arc_labeling, cayley_form, induced_vertex_map
from ccakit.engine import is_affine, is_colour_preserving
from ccakit.groups import closure
from ccakit.perm import Permutation


def hexagon():
    from ccakit.groups import cyclic
    return cayley_graph(cyclic(6), [1, 5]).graph


def dihedral_action():
    rot = Permutation.from_cycles(6, [(0, 1, 2, 3, 4, 5)])
    flip = Permutation((0, 5, 4, 3, 2, 1))
    return closure([rot, flip], names=["r", "s"])


def test_arc_labeling_bijective_and_equivariant():
    g = hexagon()
    grp = dihedral_action()
    lab = arc_labeling(g, grp)
    assert lab.base_arc == arcs(g)[0]
    assert lab.label(lab.base_arc) == grp.identity
    assert len(lab.arc_to_elem) == grp.order == 12
    # equivariance at one sampled pair
    p = grp.realization[5]
    for arc, elem in lab.arc_to_elem.items():
        moved = Arc(p.images[arc.tail], p.images[arc.head])
        assert lab.arc_to_elem[moved] == grp.table[5][elem]


def test_arc_labeling_rejects_wrong_size():
    g = hexagon()
    rot_only = closure([Permutation.from_cycles(6, [(0, 1, 2, 3, 4, 5)])])
    with pytest.raises(ValueError):
        arc_labeling(g, rot_only)


def test_arc_labeling_respects_chosen_base():
    g = hexagon()
    grp = dihedral_action()
    lab = arc_labeling(g, grp, base_arc=Arc(2, 3))
    assert lab.label(Arc(2, 3)) == grp.identity


def test_cayley_form_of_hexagon():
    g = hexagon()
    grp = dihedral_action()
    cg, elem_of_vertex, lg = cayley_form(arc_labeling(g, grp))
    # L(S(hexagon)) is a 12-cycle, so the Cayley form has degree 2
    assert cg.graph.vertex_count == 12
    assert cg.graph.edge_count == 12
    assert len(cg.connection) == 2
    assert is_connected(cg.graph)
    assert sorted(elem_of_vertex) == list(range(12))
    assert lg.vertex_count == 12


def test_induced_map_of_group_element_is_translation():
    g = hexagon()
    grp = dihedral_action()
    lab = arc_labeling(g, grp)
    cg, _, _ = cayley_form(lab)
    for i in (1, 5, 7):
        induced = induced_vertex_map(grp.realization[i], lab)
        assert is_colour_preserving(cg.graph, induced)
        ok, decomp = is_affine(cg, induced)
        assert ok
        assert decomp.automorphism.is_identity()
        assert decomp.translation == i


def test_induced_map_rejects_non_automorphism():
    g = hexagon()
    lab = arc_labeling(g, dihedral_action())
    with pytest.raises(ValueError, match="permute the arcs"):
        induced_vertex_map(Permutation((1, 0, 2, 3, 4, 5)), lab)
