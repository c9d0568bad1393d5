"""Search, affinity, CCA verdicts, pair recognition, and the lift harness,
cross-checked against the naive oracles in bruteforce.py."""

import pytest

from ccakit.engine import (VerdictKind, arc_lift_harness,
                           colour_preserving_automorphisms, is_affine,
                           is_arc_regular, is_cca_graph, is_cca_group,
                           is_colour_preserving, is_complete_colour_pair,
                           local_action, replay_witness)
from ccakit.graphs import ColouredGraph, cayley_graph, complete_colour_graph
from ccakit.groups import (closure, cyclic, dihedral, direct_product,
                           left_regular, quaternion)
from ccakit.perm import Permutation

from bruteforce import (brute_affine_maps, brute_colour_automorphisms,
                        edge_dict)


def dih_closure(g):
    """Left translations plus inversion, as a permutation group."""
    gens = [Permutation(tuple(row)) for row in g.table]
    gens.append(Permutation(tuple(g.inverse)))
    return closure(gens)


def test_is_colour_preserving():
    cg = cayley_graph(cyclic(6), [1, 5])
    rot = Permutation((1, 2, 3, 4, 5, 0))
    assert is_colour_preserving(cg.graph, rot)
    assert not is_colour_preserving(cg.graph, Permutation((1, 0, 2, 3, 4, 5)))
    with pytest.raises(ValueError):
        is_colour_preserving(cg.graph, Permutation((0, 1)))


def test_automorphism_group_of_six_cycle():
    cg = cayley_graph(cyclic(6), [1, 5])
    aut = colour_preserving_automorphisms(cg.graph)
    assert aut.order == 12
    assert aut.element_set() == brute_colour_automorphisms(6, edge_dict(cg.graph))
    # the generators regenerate exactly the element list
    assert len(aut.generators) <= 3


def test_complete_colour_graph_c3_gives_symmetric_group():
    kg = complete_colour_graph(cyclic(3))
    aut = colour_preserving_automorphisms(kg.graph)
    assert aut.order == 6  # single colour class: all of Sym(3)
    assert aut.element_set() == frozenset(
        p.images for p in dih_closure(cyclic(3)).realization)


def test_complete_colour_graph_q8_matches_reflection_span():
    """The colour group of K_Q8 is exactly the translations extended by the
    three axis swaps (element order: 1, -1, i, -i, j, -j, k, -k)."""
    q = quaternion()
    kg = complete_colour_graph(q)
    aut = colour_preserving_automorphisms(kg.graph)
    gens = [Permutation(tuple(row)) for row in q.table]
    gens += [Permutation.from_cycles(8, [pair])
             for pair in ((2, 3), (4, 5), (6, 7))]
    span = closure(gens)
    assert aut.element_set() == frozenset(p.images for p in span.realization)
    assert aut.order == 64  # 8 translations times the C2^3 of sign flips


def test_disconnected_graph_refused():
    cg = cayley_graph(cyclic(6), [2, 4])
    with pytest.raises(ValueError, match="connected"):
        colour_preserving_automorphisms(cg.graph)


@pytest.mark.parametrize("g", [cyclic(6), dihedral(4), quaternion()],
                         ids=lambda g: g.name or "?")
def test_affinity_matches_bruteforce(g):
    kg = complete_colour_graph(g)
    affine = brute_affine_maps(g.table)
    aut = colour_preserving_automorphisms(kg.graph)
    for p in aut.elements:
        verdict, decomp = is_affine(kg, p)
        assert verdict == (p.images in affine)
        if verdict:
            lam = g.table[decomp.translation]
            rebuilt = tuple(lam[decomp.automorphism.images[i]]
                            for i in range(g.order))
            assert rebuilt == p.images


def test_is_cca_graph_six_cycle():
    v = is_cca_graph(cayley_graph(cyclic(6), [1, 5]))
    assert v.kind is VerdictKind.CCA
    assert v.witness is None
    assert all(c.passed for c in v.checks)


def test_is_cca_graph_q8_complete():
    v = is_cca_graph(complete_colour_graph(quaternion()))
    assert v.kind is VerdictKind.NON_CCA
    assert v.witness is not None
    assert replay_witness(v)


def test_is_cca_group_small():
    assert is_cca_group(cyclic(1)).kind is VerdictKind.CCA
    assert is_cca_group(cyclic(7)).kind is VerdictKind.CCA
    assert is_cca_group(dihedral(3)).kind is VerdictKind.CCA
    v = is_cca_group(quaternion())
    assert v.kind is VerdictKind.NON_CCA
    assert replay_witness(v)
    assert "connection" in v.data


def test_is_cca_group_c3xd3_finds_paper_counterexample():
    v = is_cca_group(direct_product(cyclic(3), dihedral(3)))
    assert v.kind is VerdictKind.NON_CCA
    assert replay_witness(v)
    conn = v.data["connection"]
    g = direct_product(cyclic(3), dihedral(3))
    assert g.generates(conn)
    assert sorted(g.inv(c) for c in conn) == sorted(conn)


def test_is_cca_group_cap_truncation():
    v = is_cca_group(dihedral(6), cap=3)
    assert v.kind is VerdictKind.UNKNOWN_CAP
    assert any(c.name == "enumeration-complete" and not c.passed
               for c in v.checks)
    with pytest.raises(ValueError):
        is_cca_group(dihedral(6), cap=0)


def test_pair_yes_cyclic_dihedral():
    for n in (3, 5):
        g = cyclic(n)
        v = is_complete_colour_pair(left_regular(g), dih_closure(g))
        assert v.kind is VerdictKind.PAIR_YES
        assert replay_witness(v)
        by_name = {c.name: c.passed for c in v.checks}
        assert by_name["abelian-inversion-shape"]


def test_pair_no_klein_four():
    g = direct_product(cyclic(2), cyclic(2))
    v = is_complete_colour_pair(left_regular(g), left_regular(g))
    assert v.kind is VerdictKind.PAIR_NO
    by_name = {c.name: c.passed for c in v.checks}
    # inside the colour group, but no shape matches an exponent-2 group
    assert by_name["b-within-colour-group"]
    assert not by_name["abelian-inversion-shape"]
    assert not by_name["dicyclic-reflection-shape"]
    assert not by_name["quaternion-reflections-shape"]


def test_pair_c4_satisfies_two_shapes():
    # C4 is abelian and also Dic(C2, y); both shapes must be recorded
    g = cyclic(4)
    v = is_complete_colour_pair(left_regular(g), dih_closure(g))
    assert v.kind is VerdictKind.PAIR_YES
    by_name = {c.name: c.passed for c in v.checks}
    assert by_name["abelian-inversion-shape"]
    assert by_name["dicyclic-reflection-shape"]


def test_pair_yes_quaternion_reflections():
    q = quaternion()
    gens = [Permutation(tuple(row)) for row in q.table]
    gens += [Permutation.from_cycles(8, [pair])
             for pair in ((2, 3), (4, 5), (6, 7))]
    v = is_complete_colour_pair(left_regular(q), closure(gens))
    assert v.kind is VerdictKind.PAIR_YES
    by_name = {c.name: c.passed for c in v.checks}
    assert by_name["quaternion-reflections-shape"]
    assert not by_name["abelian-inversion-shape"]


def test_pair_no_when_b_too_big():
    # all of Sym(4) is not inside the colour group of K_C4
    g = cyclic(4)
    sym4 = closure([Permutation.from_cycles(4, [(0, 1)]),
                    Permutation.from_cycles(4, [(0, 1, 2, 3)])])
    v = is_complete_colour_pair(left_regular(g), sym4)
    assert v.kind is VerdictKind.PAIR_NO
    by_name = {c.name: c.passed for c in v.checks}
    assert not by_name["b-within-colour-group"]


def test_pair_rejects_degenerate_inputs():
    with pytest.raises(ValueError, match=">= 3"):
        is_complete_colour_pair(left_regular(cyclic(2)),
                                left_regular(cyclic(2)))
    with pytest.raises(ValueError, match="realization"):
        is_complete_colour_pair(cyclic(4), left_regular(cyclic(4)))


def test_is_arc_regular():
    hexagon = cayley_graph(cyclic(6), [1, 5]).graph
    rot = Permutation.from_cycles(6, [(0, 1, 2, 3, 4, 5)])
    flip = Permutation((0, 5, 4, 3, 2, 1))
    assert is_arc_regular(hexagon, closure([rot, flip]))  # order 12 = arcs
    assert not is_arc_regular(hexagon, closure([rot]))  # too small
    with pytest.raises(ValueError, match="automorphism"):
        is_arc_regular(hexagon, closure([Permutation((1, 0, 2, 3, 4, 5))]))


def test_local_action_sizes():
    hexagon = cayley_graph(cyclic(6), [1, 5]).graph
    rot = Permutation.from_cycles(6, [(0, 1, 2, 3, 4, 5)])
    flip = Permutation((0, 5, 4, 3, 2, 1))
    assert local_action(closure([rot]), hexagon, 0).order == 1
    assert local_action(closure([rot, flip]), hexagon, 0).order == 2


def test_harness_reports_failed_hypotheses():
    hexagon = cayley_graph(cyclic(6), [1, 5]).graph
    rot = Permutation.from_cycles(6, [(0, 1, 2, 3, 4, 5)])
    rot_only = closure([rot])
    v = arc_lift_harness(hexagon, rot_only, rot_only)
    assert v.kind is VerdictKind.HYPOTHESES_FAIL
    assert any(c.name == "arc-regular" and not c.passed for c in v.checks)

    # arc-regular holds for the dihedral action, but the local pairs are
    # degenerate (|local G| = 2 < 3), which must surface as a failed check,
    # not an exception
    full = closure([rot, Permutation((0, 5, 4, 3, 2, 1))])
    v = arc_lift_harness(hexagon, full, full)
    assert v.kind is VerdictKind.HYPOTHESES_FAIL
    assert any(c.name == "local-pairs" and not c.passed for c in v.checks)


def test_replay_witness_rejects_tampering():
    v = is_cca_group(quaternion())
    assert v.kind is VerdictKind.NON_CCA
    imgs = list(v.witness.images)
    imgs[0], imgs[1] = imgs[1], imgs[0]
    v.witness = Permutation(imgs)
    assert not replay_witness(v)


def test_replay_witness_needs_witness():
    v = is_cca_graph(cayley_graph(cyclic(6), [1, 5]))
    with pytest.raises(ValueError, match="no witness"):
        replay_witness(v)
