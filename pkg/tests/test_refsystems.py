"""Reflection systems: closure, orbits, equivalence, enumeration."""

import random
from fractions import Fraction

import pytest

from quatrefl.exactarith import FieldScalar, Quaternion
from quatrefl.groups import Subgroup, build_group, normal_subgroups
from quatrefl.refsystems import (
    DicyclicIndex,
    NonGeneratingSeedError,
    ReflectionSystem,
    _dicyclic_element,
    close_system,
    close_under_circ,
    copy_count,
    dicyclic_system,
    enumerate_systems,
    equivalence_class_subsets,
    omega_count_formula,
    omega_set,
    orbit_partition,
    power_lemma_check,
    subgroup_copy_count,
    system_from_automorphism,
    system_orbit,
    systems_equivalent,
)


def T_group():
    return build_group("T")


def t_index(axis_or_zeta):
    T = T_group()
    if axis_or_zeta == "zeta":
        return T.index[Quaternion.from_rationals(4, (Fraction(1, 2),) * 4)]
    return T.index[Quaternion.unit(4, axis_or_zeta)]


def test_close_system_sizes_in_t():
    T = T_group()
    L12 = close_system(T, (0, t_index("i"), t_index("zeta")))
    assert L12.size == 12
    L24 = close_system(T, (0, t_index("i"), t_index("j"), t_index("zeta")))
    assert L24.size == 24


def test_close_system_cyclic_is_whole_group():
    for n in (3, 5, 7):
        C = build_group("cyclic", n)
        gen = next(x for x in range(n) if C.element_orders[x] == n)
        assert close_system(C, (0, gen)).size == n


def test_close_system_requires_identity_and_generation():
    T = T_group()
    with pytest.raises(ValueError):
        close_system(T, (t_index("i"),))
    with pytest.raises(NonGeneratingSeedError) as exc:
        close_system(T, (0, t_index("i")))
    assert len(exc.value.generated) == 4  # the <i> subgroup


def test_closure_idempotence_and_basic_closures():
    for K in (T_group(), build_group("O"), build_group("dicyclic", 6)):
        for L in enumerate_systems(K):
            members = frozenset(L.members)
            assert close_under_circ(K, members) == members
            for x in L.members:
                assert K.inv[x] in members
                assert K.cayley[x][x] in members


def test_orbit_contains_seed_and_partitions():
    T = T_group()
    for L in enumerate_systems(T):
        assert 0 in system_orbit(L, 0)
        parts = orbit_partition(L)
        assert sum(len(p) for p in parts) == L.size
        outside = [x for x in range(T.order) if x not in L.member_set()]
        if outside:
            with pytest.raises(ValueError):
                system_orbit(L, outside[0])


def test_octahedral_l20_orbit_partition():
    O = build_group("O")
    L20 = next(L for L in enumerate_systems(O) if L.size == 20)
    assert [len(p) for p in orbit_partition(L20)] == [2, 6, 12]


def test_equivalence_with_witness():
    T = T_group()
    L12 = close_system(T, (0, t_index("i"), t_index("zeta")))
    translated = sorted(T.cayley[t_index("i")][y] for y in L12.members)
    copy = ReflectionSystem(T, tuple(translated), (0,))
    eq, witness = systems_equivalent(L12, copy)
    assert eq and witness is not None
    x, side, phi = witness
    assert side in ("left", "right") and x in L12.member_set()
    L24 = close_system(T, (0, t_index("i"), t_index("j"), t_index("zeta")))
    assert systems_equivalent(L12, L24) == (False, None)


def test_copy_counts_tetrahedral():
    T = T_group()
    L12 = next(L for L in enumerate_systems(T) if L.size == 12)
    # six systems in the equivalence class; twelve two-sided translate copies
    assert copy_count(L12) == 6
    assert len(equivalence_class_subsets(L12)) == 6
    assert subgroup_copy_count(L12) == 12


def test_enumeration_t_and_q8():
    assert [L.size for L in enumerate_systems(T_group())] == [12, 24]
    assert [L.size for L in enumerate_systems(build_group("dicyclic", 2))] == [6, 8]


def test_enumeration_octahedral_sizes_and_copies():
    O = build_group("O")
    systems = enumerate_systems(O)
    assert [L.size for L in systems] == [14, 18, 20, 32, 48]
    assert [copy_count(L) for L in systems] == [7, 9, 10, 4, 1]


def test_omega_sets():
    assert [(i.a, i.b) for i in omega_set(6)] == [(1, 1), (1, 2), (1, 3), (1, 6), (2, 3)]
    for p in (3, 5, 7, 11, 13):
        assert [(i.a, i.b) for i in omega_set(p)] == [(1, 1), (1, p)]
    for n in range(2, 201):
        assert len(omega_set(n)) == omega_count_formula(n)


def test_omega_size_map_injective():
    for n in range(2, 201):
        sizes = [idx.size for idx in omega_set(n)]
        assert len(set(sizes)) == len(sizes)


def test_dicyclic_systems():
    L = dicyclic_system(DicyclicIndex(6, 2, 3))
    assert L.size == 10
    L = dicyclic_system(DicyclicIndex(2, 1, 2))
    Q8 = build_group("dicyclic", 2)
    m = Q8.conductor
    expected = set()
    for axis in "1ij":
        q = Quaternion.unit(m, axis)
        expected.update((Q8.index[q], Q8.index[-q]))
    assert L.member_set() == expected
    for n in (3, 4, 7):
        assert dicyclic_system(DicyclicIndex(n, 1, 1)).size == 4 * n


def test_dicyclic_system_shape():
    # L is exactly the predicted powers-of-w plus twisted part, of the
    # predicted size 2n/a + 2n/b
    for n in (4, 6, 9, 12):
        D = build_group("dicyclic", n)
        for idx in omega_set(n):
            L = dicyclic_system(DicyclicIndex(n, idx.a, idx.b))
            assert L.size == 2 * n // idx.a + 2 * n // idx.b
            expected = {_dicyclic_element(D, m * idx.a, 0) for m in range(2 * n // idx.a)}
            expected |= {_dicyclic_element(D, l * idx.b, 1) for l in range(2 * n // idx.b)}
            assert L.member_set() == expected


def test_dicyclic_enumeration_matches_omega():
    for n in range(2, 9):
        D = build_group("dicyclic", n)
        systems = enumerate_systems(D)
        assert sorted(L.size for L in systems) == sorted(i.size for i in omega_set(n))
        for idx in omega_set(n):
            Ld = dicyclic_system(DicyclicIndex(n, idx.a, idx.b))
            rep = next(L for L in systems if L.size == Ld.size)
            assert systems_equivalent(rep, Ld)[0]


def test_dicyclic_orbit_criteria_and_sizes():
    for n in range(2, 13):
        D = build_group("dicyclic", n)
        for idx in omega_set(n):
            L = dicyclic_system(DicyclicIndex(n, idx.a, idx.b))
            one, wa = 0, _dicyclic_element(D, idx.a, 0)
            jj, wbj = _dicyclic_element(D, 0, 1), _dicyclic_element(D, idx.b, 1)
            orb_one, orb_wa = system_orbit(L, one), system_orbit(L, wa)
            assert (orb_one == orb_wa) == ((n // idx.a) % 2 == 1)
            expected = 2 * n // idx.a if (n // idx.a) % 2 else n // idx.a
            assert len(orb_one) == len(orb_wa) == expected
            orb_j, orb_wbj = system_orbit(L, jj), system_orbit(L, wbj)
            assert (orb_j == orb_wbj) == ((n // idx.b) % 2 == 1)
            expected = 2 * n // idx.b if (n // idx.b) % 2 else n // idx.b
            assert len(orb_j) == len(orb_wbj) == expected


def test_translation_lemma():
    # {1, x} u xA generates xL, which is equivalent to L
    T = T_group()
    A = (t_index("i"), t_index("zeta"))
    L = close_system(T, (0,) + A)
    for x in list(L.members)[:6]:
        seed = {0, x} | {T.cayley[x][a] for a in A}
        xL = close_system(T, tuple(seed))
        assert xL.member_set() == {T.cayley[x][y] for y in L.members}
        assert systems_equivalent(L, xL)[0]


def test_octahedral_intersection_identity():
    O = build_group("O")
    m = O.conductor
    half = Fraction(1, 2)
    i_O = O.index[Quaternion.unit(m, "i")]
    zeta_O = O.index[Quaternion.from_rationals(m, (half,) * 4)]
    s = FieldScalar.sqrt2(m) * FieldScalar.from_rational(m, half)
    zero = FieldScalar.zero(m)
    u = O.index[Quaternion(zero, zero, s, -s)]
    h = O.index[Quaternion(s, s, zero, zero)]
    L18 = close_system(O, (0, h, zeta_O))
    L14 = close_system(O, (0, i_O, zeta_O, u))
    assert L18.size == 18 and L14.size == 14
    # L18 n L14 is the lifted 12-element tetrahedral system,
    # and L14 adds exactly the two antidiagonal sqrt2 elements
    T = T_group()
    L12_T = close_system(T, (0, t_index("i"), t_index("zeta")))
    lifted = {O.index[T.elements[x].lift(m)] for x in L12_T.members}
    assert L18.member_set() & L14.member_set() == lifted
    assert L14.member_set() == lifted | {u, O.inv[u]}


def _included_up_to_equivalence(small: ReflectionSystem, big: ReflectionSystem) -> bool:
    """Some copy of `small` is a subset of `big`'s representative."""
    K = small.parent
    from quatrefl.groups import automorphism_group

    target = big.member_set()
    if big.size == K.order:
        return True
    cay = K.cayley
    for phi in automorphism_group(K):
        S = [phi.image[t] for t in small.members]
        s0 = S[0]
        for t in target:
            for y in range(K.order):
                x = cay[cay[t][K.inv[y]]][K.inv[s0]]
                if all(cay[cay[x][s]][y] in target for s in S):
                    return True
    return False


def test_inclusion_poset_octahedral_and_icosahedral():
    O = build_group("O")
    sizes = {L.size: L for L in enumerate_systems(O)}
    assert _included_up_to_equivalence(sizes[14], sizes[20])
    assert _included_up_to_equivalence(sizes[18], sizes[20])
    assert _included_up_to_equivalence(sizes[20], sizes[32])
    assert not _included_up_to_equivalence(sizes[14], sizes[18])
    I = build_group("I")
    sizes = {L.size: L for L in enumerate_systems(I)}
    assert _included_up_to_equivalence(sizes[30], sizes[32])
    assert not _included_up_to_equivalence(sizes[20], sizes[32])
    assert not _included_up_to_equivalence(sizes[20], sizes[30])


def test_system_from_automorphism_identity_on_cyclic():
    for n in (5, 6):
        C = build_group("cyclic", n)
        H = Subgroup(C, (0,))
        gamma = {x: x for x in range(n)}
        members = system_from_automorphism(C, H, gamma)
        assert set(members) == {x for x in range(n) if C.inv[x] == x}


def test_system_from_automorphism_recovers_superset():
    from quatrefl.refgroups import induced_quotient_involution

    T = T_group()
    L12 = close_system(T, (0, t_index("i"), t_index("zeta")))
    C2 = next(s for s in normal_subgroups(T) if s.order == 2)
    gamma, rep, _ = induced_quotient_involution(T, L12.members, C2.members)
    members = system_from_automorphism(T, C2, gamma)
    assert set(L12.members) <= set(members)


def test_system_from_automorphism_conjugation_example():
    # conjugation by (i - j)/sqrt2 (an order-2 twist from outside T) cuts out
    # a 12-element system equivalent to the tetrahedral one
    T = T_group()
    m = 8
    s = FieldScalar.sqrt2(m) * FieldScalar.from_rational(m, Fraction(1, 2))
    zero = FieldScalar.zero(m)
    u = Quaternion(zero, s, -s, zero)
    assert u.is_unit()
    lifted = {q.lift(m): i for i, q in enumerate(T.elements)}
    gamma = {}
    for i, q in enumerate(T.elements):
        image = u * q.lift(m) * u.inverse()
        gamma[i] = lifted[image]
    H = Subgroup(T, (0,))
    members = system_from_automorphism(T, H, gamma)
    assert len(members) == 12
    L12 = close_system(T, (0, t_index("i"), t_index("zeta")))
    got = ReflectionSystem(T, tuple(sorted(members)), (0,))
    assert systems_equivalent(L12, got)[0]


def test_system_from_automorphism_rejects_non_involution():
    C5 = build_group("cyclic", 5)
    H = Subgroup(C5, (0,))
    g = next(x for x in range(5) if C5.element_orders[x] == 5)
    shift = {x: C5.cayley[x][g] for x in range(5)}  # translation, not an involution
    with pytest.raises(ValueError):
        system_from_automorphism(C5, H, shift)


def test_power_lemma_examples():
    T = T_group()
    assert power_lemma_check(T, t_index("i"), t_index("i"), 5)
    D6 = build_group("dicyclic", 6)
    j6 = _dicyclic_element(D6, 0, 1)
    wj6 = _dicyclic_element(D6, 1, 1)
    assert power_lemma_check(D6, j6, wj6, 3)
    assert power_lemma_check(T, t_index("i"), 0, 2)


def test_power_lemma_random_property():
    rng = random.Random(17)
    for K in (T_group(), build_group("dicyclic", 6)):
        for _ in range(60):
            x, y = rng.randrange(K.order), rng.randrange(K.order)
            assert power_lemma_check(K, x, y, rng.randrange(8))


def test_system_json():
    T = T_group()
    L = enumerate_systems(T)[0]
    data = L.to_json()
    assert data["size"] == 12 and len(data["members"]) == 12
    assert sum(len(o) for o in data["orbit_partition"]) == 12


def test_enumeration_bound_error():
    with pytest.raises(ValueError, match="bound"):
        enumerate_systems(build_group("I"), bound=100)
