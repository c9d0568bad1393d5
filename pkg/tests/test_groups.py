"""Constructors, recognizers, and isomorphism machinery.

Order profiles and involution counts are checked against values computed by
naive loops over the multiplication table, never against the methods under
test.
"""

import pytest

from ccakit.errors import CapExceededError
from ccakit.groups import (FiniteGroup, are_isomorphic, automorphisms,
                           closure, cyclic, dihedral, direct_product,
                           extend_homomorphism, generalized_dicyclic,
                           generalized_dihedral, inverse_classes,
                           is_q8_times_c2n, left_regular,
                           minimal_generating_sequence, q8_c2n_isomorphism,
                           quaternion, recognize_dicyclic, wreath_c2)
from ccakit.perm import Permutation


def naive_element_order(table, i):
    k, acc = 1, i
    while acc != 0:
        acc = table[acc][i]
        k += 1
    return k


def naive_profile(g):
    prof = {}
    for i in range(g.order):
        k = naive_element_order(g.table, i)
        prof[k] = prof.get(k, 0) + 1
    return prof


CORPUS = [
    cyclic(1), cyclic(2), cyclic(5), cyclic(6), cyclic(8),
    dihedral(3), dihedral(4), dihedral(5),
    quaternion(),
    generalized_dihedral(cyclic(4)),
    generalized_dicyclic(cyclic(6), 3),
    direct_product(cyclic(2), cyclic(2)),
    direct_product(cyclic(3), dihedral(3)),
    direct_product(quaternion(), cyclic(2)),
]


@pytest.mark.parametrize("g", CORPUS, ids=lambda g: g.name or "?")
def test_tables_are_groups(g):
    g.validate()


@pytest.mark.parametrize("g", CORPUS, ids=lambda g: g.name or "?")
def test_order_profile_matches_naive(g):
    assert g.order_profile() == naive_profile(g)


def test_dihedral_5_census():
    # 1 identity, 4 rotations of order 5, 5 reflections
    assert dihedral(5).order_profile() == {1: 1, 2: 5, 5: 4}


def test_generalized_dihedral_c4():
    g = generalized_dihedral(cyclic(4))
    assert g.order == 8
    assert len(g.involutions()) == 5
    assert are_isomorphic(g, dihedral(4)) is not None
    with pytest.raises(ValueError):
        generalized_dihedral(dihedral(3))


def test_generalized_dicyclic_c6():
    g = generalized_dicyclic(cyclic(6), 3)  # y = r^3
    assert g.order == 12
    assert len(g.involutions()) == 1
    with pytest.raises(ValueError):
        generalized_dicyclic(cyclic(6), 2)  # r^2 is not an involution
    with pytest.raises(ValueError):
        generalized_dicyclic(cyclic(5), 0)


def test_quaternion_table():
    q = quaternion()
    i, j = q.generators["i"], q.generators["j"]
    minus_one = q.mult(i, i)
    assert q.element_name(minus_one) == "-1"
    assert q.mult(j, j) == minus_one
    k = q.mult(i, j)
    assert q.element_name(k) == "k"
    assert q.mult(j, i) == q.inv(k)
    assert q.order_profile() == {1: 1, 2: 1, 4: 6}


def test_direct_product_census():
    g = direct_product(dihedral(3), dihedral(3))
    assert g.order == 36
    assert len(g.involutions()) == 15


def test_wreath_order():
    w = wreath_c2(dihedral(3))
    assert w.order == 72
    assert naive_profile(w) == w.order_profile()


def test_closure_of_left_regular_recovers_order():
    for g in CORPUS:
        reg = left_regular(g)
        gens = [reg.realization[i] for i in reg.generators.values()]
        if not gens:  # trivial group
            continue
        assert closure(gens).order == g.order


def test_closure_cap_is_loud():
    r = Permutation.from_cycles(30, [tuple(range(30))])
    with pytest.raises(CapExceededError, match="exceeds cap 10"):
        closure([r], cap=10)


def test_closure_names_and_identity_position():
    r = Permutation.from_cycles(3, [(0, 1, 2)])
    g = closure([r], names=["r"])
    assert g.elements[0] == "e"
    assert g.elements[1] == "r"
    assert g.elements[2] == "r^2"


def test_extend_homomorphism():
    c6 = cyclic(6)
    inv = extend_homomorphism(c6, [1], [5], c6)
    assert inv is not None
    assert inv[2] == 4
    d3 = dihedral(3)
    # r must land on an order-3 element; s on an involution
    assert extend_homomorphism(
        d3, [d3.generators["r"], d3.generators["s"]],
        [d3.generators["s"], d3.generators["r"]], d3) is None


def test_are_isomorphic():
    assert are_isomorphic(cyclic(6), direct_product(cyclic(3), cyclic(2)))
    assert are_isomorphic(cyclic(6), dihedral(3)) is None
    assert are_isomorphic(quaternion(), dihedral(4)) is None
    iso = are_isomorphic(quaternion(), generalized_dicyclic(cyclic(4), 2))
    assert iso is not None
    for a in range(8):
        for b in range(8):
            assert iso.apply(quaternion().table[a][b]) == \
                iso.target.table[iso.apply(a)][iso.apply(b)]


def test_automorphism_counts():
    assert len(automorphisms(cyclic(6))) == 2
    assert len(automorphisms(direct_product(cyclic(2), cyclic(2)))) == 6
    assert len(automorphisms(quaternion())) == 24
    assert automorphisms(quaternion(), limit=10) is None


def test_recognize_dicyclic_matches_isomorphism_search():
    """recognize_dicyclic agrees with brute isomorphism search against all
    Dic(A, y) built from the complete list of abelian groups up to order 8."""
    abelians = [cyclic(2), cyclic(4), direct_product(cyclic(2), cyclic(2)),
                cyclic(6), cyclic(8), direct_product(cyclic(4), cyclic(2)),
                direct_product(cyclic(2),
                               direct_product(cyclic(2), cyclic(2)))]
    candidates: dict[int, list] = {}
    for a in abelians:
        for y in a.involutions():
            d = generalized_dicyclic(a, y)
            candidates.setdefault(d.order, []).append(d)
    corpus = CORPUS + [cyclic(4), cyclic(12), dihedral(6), dihedral(8),
                       direct_product(cyclic(4), cyclic(2))]
    for g in corpus:
        found = bool(recognize_dicyclic(g))
        expected = any(are_isomorphic(g, d) is not None
                       for d in candidates.get(g.order, []))
        assert found == expected, g.name


def test_c4_is_dicyclic():
    # C4 = Dic(C2, y): the edge case that makes two pair shapes overlap
    assert recognize_dicyclic(cyclic(4))


def test_q8_c2n_recognition():
    assert is_q8_times_c2n(quaternion())
    g16 = direct_product(quaternion(), cyclic(2))
    iso = q8_c2n_isomorphism(g16)
    assert iso is not None
    assert iso.target.order == 16
    assert not is_q8_times_c2n(dihedral(4))
    assert not is_q8_times_c2n(generalized_dicyclic(cyclic(8), 4))
    assert not is_q8_times_c2n(direct_product(quaternion(), cyclic(4)))


def test_inverse_classes():
    assert inverse_classes(cyclic(7)) == [(1, 6), (2, 5), (3, 4)]
    assert len(inverse_classes(dihedral(3))) == 4
    assert len(inverse_classes(direct_product(cyclic(3), dihedral(3)))) == 10


def test_minimal_generating_sequence():
    assert len(minimal_generating_sequence(cyclic(6))) == 1
    assert len(minimal_generating_sequence(
        direct_product(cyclic(2), cyclic(2)))) == 2
    g = cyclic(1)
    assert minimal_generating_sequence(g) == []


def test_subgroup_and_generates():
    d4 = dihedral(4)
    rot = d4.subgroup_closure([d4.generators["r"]])
    assert len(rot) == 4
    assert not d4.generates([d4.generators["r"]])
    assert d4.generates([d4.generators["r"], d4.generators["s"]])
    sub = d4.subgroup(sorted(rot))
    assert sub.order == 4
    assert are_isomorphic(sub, cyclic(4))
