"""Finite quaternion groups: constructors, subgroups, automorphisms."""

import random

import pytest

from quatrefl.exactarith import Quaternion
from quatrefl.groups import (
    automorphism_group,
    build_group,
    build_group_by_closure,
    commutator_subgroup,
    element_order_census,
    group_contains,
    normal_subgroups,
)
from quatrefl.numutil import euler_phi
from quatrefl.refsystems import _dicyclic_element


def test_constructor_orders():
    assert build_group("T").order == 24
    assert build_group("O").order == 48
    assert build_group("I").order == 120
    for n in range(2, 13):
        assert build_group("dicyclic", n).order == 4 * n
    for n in range(1, 9):
        assert build_group("cyclic", n).order == n


def test_constructor_argument_errors():
    with pytest.raises(ValueError):
        build_group("dicyclic", 1)
    with pytest.raises(ValueError):
        build_group("cyclic", 0)
    with pytest.raises(ValueError):
        build_group("X")
    with pytest.raises(ValueError):
        build_group("T", 3)


def test_q8_element_set():
    Q8 = build_group("dicyclic", 2)
    m = Q8.conductor
    expected = set()
    for axis in "1ijk":
        q = Quaternion.unit(m, axis)
        expected.update((q, -q))
    assert set(Q8.elements) == expected


def test_identity_at_index_zero_and_tables():
    for K in (build_group("T"), build_group("dicyclic", 5), build_group("cyclic", 6)):
        assert K.elements[0] == Quaternion.one(K.conductor)
        for x in range(K.order):
            assert K.cayley[x][K.inv[x]] == 0
            assert K.cayley[K.inv[x]][x] == 0


def test_associativity_spot_check():
    rng = random.Random(3)
    for K in (build_group("O"), build_group("dicyclic", 7)):
        for _ in range(200):
            a, b, c = (rng.randrange(K.order) for _ in range(3))
            assert K.cayley[K.cayley[a][b]][c] == K.cayley[a][K.cayley[b][c]]


def test_cayley_matches_quaternion_products():
    for K in (build_group("T"), build_group("dicyclic", 3)):
        for a in range(K.order):
            for b in range(K.order):
                assert K.elements[K.cayley[a][b]] == K.elements[a] * K.elements[b]


def test_symbolic_vs_closure_construction():
    for tag, ns in (("dicyclic", (2, 3, 4, 5, 6)), ("cyclic", (1, 2, 5, 8))):
        for n in ns:
            fast = build_group(tag, n)
            slow = build_group_by_closure(tag, n)
            assert fast.elements == slow.elements
            assert fast.cayley == slow.cayley
            assert fast.inv == slow.inv


def test_element_order_census():
    assert element_order_census(build_group("T")) == {1: 1, 2: 1, 3: 8, 4: 6, 6: 8}
    censO = element_order_census(build_group("O"))
    assert sum(censO.values()) == 48 and censO[8] == 12
    assert element_order_census(build_group("cyclic", 1)) == {1: 1}


def test_polyhedral_inclusions():
    T, O, I = build_group("T"), build_group("O"), build_group("I")
    assert group_contains(O, T)
    assert group_contains(I, T)
    assert not group_contains(T, O)


def test_normal_subgroup_orders():
    assert [s.order for s in normal_subgroups(build_group("T"))] == [1, 2, 8, 24]
    assert [s.order for s in normal_subgroups(build_group("I"))] == [1, 2, 120]
    assert [s.order for s in normal_subgroups(build_group("O"))] == [1, 2, 8, 24, 48]


def test_d6_normal_subgroups():
    D6 = build_group("dicyclic", 6)
    subs = normal_subgroups(D6)
    cyclic_orders = sorted(s.order for s in subs if s.name.startswith("C") or s.name == "1")
    assert cyclic_orders == [1, 2, 3, 4, 6, 12]  # C_r for each r | 12
    nonabelian12 = [s for s in subs if s.order == 12 and s.name == "D3"]
    assert len(nonabelian12) == 2
    assert any(s.order == 24 for s in subs)


def test_q8_normal_subgroups_include_j_and_k_axes():
    Q8 = build_group("dicyclic", 2)
    subs = normal_subgroups(Q8)
    assert [s.order for s in subs] == [1, 2, 4, 4, 4, 8]
    order4 = [set(s.members) for s in subs if s.order == 4]
    for axis in "ijk":
        q = Quaternion.unit(Q8.conductor, axis)
        axis_set = {Q8.index[Quaternion.one(Q8.conductor)], Q8.index[-Quaternion.one(Q8.conductor)],
                    Q8.index[q], Q8.index[-q]}
        assert axis_set in order4


def test_normality_direct_check():
    for K in (build_group("T"), build_group("dicyclic", 6)):
        for s in normal_subgroups(K):
            members = set(s.members)
            for g in range(K.order):
                assert {K.conj(g, x) for x in members} == members


def test_commutator_subgroups():
    assert commutator_subgroup(build_group("T")).name == "Q8"
    for n in (3, 5, 8):
        assert commutator_subgroup(build_group("cyclic", n)).order == 1
    for n in (2, 3, 6):
        D = build_group("dicyclic", n)
        comm = commutator_subgroup(D)
        assert comm.order == n
        # the commutator subgroup is the even rotation part <w^2>
        w2 = _dicyclic_element(D, 2, 0)
        assert set(comm.members) == set(D.subgroup_closure([w2]))


def test_automorphism_counts():
    assert len(automorphism_group(build_group("dicyclic", 2))) == 24
    for n in (3, 4, 5, 6, 8):
        assert len(automorphism_group(build_group("cyclic", n))) == euler_phi(n)


def test_automorphisms_preserve_structure():
    K = build_group("dicyclic", 3)
    autos = automorphism_group(K)
    assert tuple(range(K.order)) in {a.image for a in autos}
    rng = random.Random(5)
    for a in autos:
        assert a(0) == 0
        for _ in range(30):
            x, y = rng.randrange(K.order), rng.randrange(K.order)
            assert a(K.cayley[x][y]) == K.cayley[a(x)][a(y)]
        for x in range(K.order):
            assert K.element_orders[a(x)] == K.element_orders[x]


def test_rotation_twist_automorphism_swaps_half_subgroups():
    # w -> w, j -> w*j extends to an automorphism exchanging the two
    # nonabelian order-2n normal subgroups (n even)
    for n in (4, 6):
        D = build_group("dicyclic", n)
        image = [0] * D.order
        for e in range(2 * n):
            image[_dicyclic_element(D, e, 0)] = _dicyclic_element(D, e, 0)
            image[_dicyclic_element(D, e, 1)] = _dicyclic_element(D, e + 1, 1)
        image = tuple(image)
        assert image in {a.image for a in automorphism_group(D)}
        first = frozenset(D.subgroup_closure(
            [_dicyclic_element(D, 2, 0), _dicyclic_element(D, 0, 1)]))
        second = frozenset(D.subgroup_closure(
            [_dicyclic_element(D, 2, 0), _dicyclic_element(D, 1, 1)]))
        assert frozenset(image[x] for x in first) == second


def test_group_json_shape():
    K = build_group("dicyclic", 2)
    data = K.to_json()
    assert data["order"] == 8 and len(data["elements"]) == 8
    assert len(data["cayley"]) == 8 and all(len(row) == 8 for row in data["cayley"])


def test_automorphism_bound_error():
    import pytest as _pytest

    with _pytest.raises(ValueError, match="bound"):
        from quatrefl.groups import automorphism_group as ag
        ag(build_group("I"), bound=100)
