import itertools

import pytest

from precut.avoidance import (
    AvoidanceSet,
    avoiding_instance,
    has_part,
    is_irreducible,
    quotient_or_sub_bimonoid,
)
from precut.errors import IrreducibilityNotVerified
from precut.instances import CHERRY, PARKING_SECOND, build_instance, build_preset, pattern_set
from precut.instances.perm import pair_from_word
from precut.species import check_intertwined, mu


def test_has_part_examples():
    inst = build_instance("perm_f")
    identity3 = pair_from_word((1, 2, 3))
    assert not has_part(inst, pattern_set((2, 1)), identity3)
    s = pair_from_word((3, 1, 2, 4))
    assert has_part(inst, pattern_set((2, 1, 3)), s)
    empty = AvoidanceSet("empty", lambda s: False)
    assert not has_part(inst, empty, s)


def test_has_part_matches_naive_scan():
    # size-restricted scan against the unrestricted one
    inst = build_instance("perm_m")
    sized = pattern_set((2, 1, 3))
    naive = AvoidanceSet("naive", sized.membership)
    for s in inst.elements((1, 2, 3, 4))[:200]:
        assert has_part(inst, sized, s) == has_part(inst, naive, s)


def test_avoiding_instance_counts():
    inst = avoiding_instance(build_instance("perm_m"), pattern_set((2, 1, 3)))
    assert len(inst.elements((1, 2, 3))) == 30  # 6 relabelings of 5 avoiding words


def test_empty_avoidance_changes_nothing():
    parent = build_instance("graphs")
    inst = avoiding_instance(parent, AvoidanceSet("empty", lambda s: False))
    for n in range(4):
        ground = tuple(range(1, n + 1))
        assert inst.elements(ground) == parent.elements(ground)


def test_cherry_avoiders_have_forest_hasse_diagrams():
    inst = avoiding_instance(build_instance("posets"), CHERRY)
    ground = (1, 2, 3, 4)
    for s in inst.elements(ground):
        for z in ground:
            below = [x for x in ground if s.lt(x, z)]
            covers = [
                x
                for x in below
                if not any(s.lt(x, y) and s.lt(y, z) for y in below)
            ]
            assert len(covers) <= 1


def test_avoiders_closed_under_restriction():
    parent = build_instance("perm_m")
    aset = pattern_set((2, 1, 3))
    inst = avoiding_instance(parent, aset)
    ground = (1, 2, 3, 4)
    for s in inst.elements(ground):
        for r in range(5):
            for sub in itertools.combinations(ground, r):
                assert not has_part(parent, aset, inst.restrict(s, frozenset(sub)))


def test_irreducibility_of_descent_coproduct():
    inst = build_instance("perm_m")
    assert is_irreducible(inst, 1, pattern_set((2, 1, 3)), 4).passed
    assert is_irreducible(inst, 1, pattern_set((1, 2)), 4).passed


def test_deconcatenation_is_not_irreducible():
    # splitting 213 itself after one position separates the pattern
    inst = build_instance("perm_f")
    r = is_irreducible(inst, 1, pattern_set((2, 1, 3)), 3)
    assert not r.passed
    assert r.witness["which"] == 1


def test_parking_second_total_irreducible():
    inst = build_instance("parking")
    assert is_irreducible(inst, 2, PARKING_SECOND, 3).passed


def test_quotient_or_sub_roles():
    inst = build_instance("perm_m")
    sub, roles = quotient_or_sub_bimonoid(inst, pattern_set((2, 1, 3)), 1, 3)
    assert roles["bimonoid_2"] == "sub-bimonoid of the parent"
    assert roles["bimonoid_1"] == "quotient bimonoid of the parent"
    assert len(sub.elements((1, 2, 3))) == 30


def test_quotient_requires_verified_irreducibility():
    with pytest.raises(IrreducibilityNotVerified):
        quotient_or_sub_bimonoid(build_instance("perm_f"), pattern_set((2, 1, 3)), 1, 3)


def test_avoiding_instances_stay_intertwined():
    assert check_intertwined(build_preset("213"), 3).passed
    assert check_intertwined(build_preset("nondecreasing-parking"), 3).passed


def test_quotient_multiplication_drops_non_avoiders():
    # q∘mu_parent = mu_quotient on avoiders, for the irreducible-side dual
    parent = build_instance("perm_m")
    aset = pattern_set((2, 1, 3))
    inst = avoiding_instance(parent, aset)
    u = pair_from_word((2, 1), ground=(1, 2))
    v = pair_from_word((1,), ground=(3,))
    parent_out = mu(parent, 2, u, v)
    quotient_out = mu(inst, 2, u, v)
    assert set(quotient_out) == {
        s for s in parent_out if not has_part(parent, aset, s)
    }
    assert len(parent_out) > len(quotient_out)


def test_mr_in_parking_elements_are_total_pairs():
    inst = build_preset("mr-in-parking")
    for n in range(4):
        ground = tuple(range(1, n + 1))
        els = inst.elements(ground)
        import math

        assert len(els) == math.factorial(n) ** 2
        for s in els:
            assert all(len(part) == i + 1 for i, part in enumerate(s.first))
            assert all(len(part) == i + 1 for i, part in enumerate(s.second))
