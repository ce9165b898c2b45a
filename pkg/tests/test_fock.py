import itertools
import json

import pytest

from precut.errors import NotIntertwined
from precut.fock import (
    canonical_form,
    check_isomorphism_by_change_of_basis,
    check_isomorphism_by_constants,
    coproduct_via_orbit_standard_splits,
    fock_tables,
    graded_dimensions,
    graded_dual,
    table_from_json,
    verify_hopf_axioms,
)
from precut.instances import build_instance, build_preset
from precut.instances.perm import pair_from_word, word_of


@pytest.fixture(scope="module")
def perm_f():
    return build_instance("perm_f")


@pytest.fixture(scope="module")
def table_f3(perm_f):
    return fock_tables(perm_f, 1, 2, 3)


def cid_of_word(inst, table, word):
    rep, _ = canonical_form(inst, pair_from_word(word))
    key = inst.serialize(rep)
    return next(c.cid for c in table.classes if c.key == key)


def test_canonical_form_constancy(perm_f):
    s = pair_from_word((2, 3, 1))
    rep, witness = canonical_form(perm_f, s)
    assert perm_f.relabel(s, witness) == rep
    for image in itertools.permutations((1, 2, 3)):
        mapping = dict(zip((1, 2, 3), image))
        rep2, _ = canonical_form(perm_f, perm_f.relabel(s, mapping))
        assert rep2 == rep


def test_canonical_form_counts(perm_f):
    keys = {perm_f.serialize(canonical_form(perm_f, s)[0]) for s in perm_f.elements((1, 2, 3))}
    assert len(keys) == 6


def test_perm_dims(table_f3):
    assert table_f3.dims() == [1, 1, 2, 6]


def test_coproduct_is_deconcatenation(perm_f, table_f3):
    c = cid_of_word(perm_f, table_f3, (2, 1, 3))
    names = {
        cl.cid: ("1" if cl.degree == 0 else "".join(map(str, word_of(cl.rep))))
        for cl in table_f3.classes
    }
    got = {(names[x], names[y]): v for (x, y), v in table_f3.coproduct[c].items()}
    assert got == {
        ("1", "213"): 1,
        ("1", "12"): 1,
        ("21", "1"): 1,
        ("213", "1"): 1,
    }


def test_product_is_shifted_shuffle(perm_f, table_f3):
    a = cid_of_word(perm_f, table_f3, (1,))
    out = table_f3.product[(a, a)]
    assert sorted(out.values()) == [1, 1]  # 12 and 21, coefficient 1 each


def test_hopf_axioms_pass(table_f3):
    assert verify_hopf_axioms(table_f3).passed


def test_corrupted_table_fails():
    inst = build_instance("colored", palette=1)
    table = fock_tables(inst, 1, 2, 3)
    assert verify_hopf_axioms(table).passed
    a = next(c.cid for c in table.classes if c.degree == 1)
    bad = dict(table.product)
    bumped = dict(bad[(a, a)])
    bumped[next(iter(bumped))] += 1
    bad[(a, a)] = bumped
    table.product = bad
    r = verify_hopf_axioms(table)
    assert not r.passed


def test_polynomial_hopf_structure():
    # one variable: binomial coproduct against unit product coefficients
    inst = build_instance("colored", palette=1)
    table = fock_tables(inst, 1, 2, 4)
    assert table.dims() == [1, 1, 1, 1, 1]
    by_degree = {c.degree: c.cid for c in table.classes}
    cop = table.coproduct[by_degree[4]]
    got = {
        (next(c.degree for c in table.classes if c.cid == x),
         next(c.degree for c in table.classes if c.cid == y)): v
        for (x, y), v in cop.items()
    }
    assert got == {(0, 4): 1, (1, 3): 4, (2, 2): 6, (3, 1): 4, (4, 0): 1}
    assert table.product[(by_degree[2], by_degree[2])] == {by_degree[4]: 1}


def test_orbit_standard_split_oracle_agrees(perm_f):
    table = fock_tables(perm_f, 1, 2, 4)
    for cls in table.classes:
        assert coproduct_via_orbit_standard_splits(perm_f, 1, cls) == table.coproduct[cls.cid]


@pytest.mark.parametrize(
    "name",
    [
        "graphs",
        "colored",
        "tensor",
        "posets",
        "preorders",
        "parking",
        "packed_words",
        "perm_m",
        "perm_m/213",
        "parking/nondecreasing-parking",
    ],
)
def test_orbit_standard_split_oracle_per_shipped_instance(name):
    inst = build_instance(name)
    table = fock_tables(inst, 1, 2, 3)
    for cls in table.classes:
        assert coproduct_via_orbit_standard_splits(inst, 1, cls) == table.coproduct[cls.cid]


def test_coproduct_representative_independent(perm_f, table_f3):
    # any labeled representative yields the same class coproduct
    from precut.species import delta

    registry_classes = {c.cid: c for c in table_f3.classes}
    for cls in table_f3.classes:
        if cls.degree != 3:
            continue
        for image in itertools.permutations((1, 2, 3)):
            s = perm_f.relabel(cls.rep, dict(zip((1, 2, 3), image)))
            acc = {}
            for r in range(4):
                for sub in itertools.combinations((1, 2, 3), r):
                    down = frozenset(sub)
                    d = delta(perm_f, 1, s, down, frozenset((1, 2, 3)) - down)
                    if d is None:
                        continue
                    left, _ = canonical_form(perm_f, d[0])
                    right, _ = canonical_form(perm_f, d[1])
                    key = (perm_f.serialize(left), perm_f.serialize(right))
                    acc[key] = acc.get(key, 0) + 1
            want = {
                (registry_classes[x].key, registry_classes[y].key): v
                for (x, y), v in table_f3.coproduct[cls.cid].items()
            }
            assert acc == want


def test_graded_dual_involution(table_f3):
    d = graded_dual(table_f3)
    dd = graded_dual(d)
    assert dd.product == table_f3.product
    assert dd.coproduct == {k: v for k, v in table_f3.coproduct.items()}
    assert verify_hopf_axioms(d).passed


def test_dual_of_deconcatenation_is_meet_side(perm_f, table_f3):
    # transposing the (delta1, mu2) table gives the (delta2, mu1) table
    other = fock_tables(perm_f, 2, 1, 3)
    d = graded_dual(table_f3)
    assert d.product == other.product
    assert {k: v for k, v in d.coproduct.items()} == other.coproduct


def test_isomorphism_by_constants_identity(table_f3):
    out = check_isomorphism_by_constants(table_f3, table_f3)
    assert out is not None
    assert all(k == v for k, v in out.items())


def test_isomorphism_finds_class_relabeling(table_f3):
    # a copy with renamed class ids is matched by the renaming itself
    from dataclasses import replace

    rename = {c.cid: "x" + c.cid for c in table_f3.classes}
    from precut.fock import StructureConstantTable

    copy = StructureConstantTable(
        table_f3.instance,
        table_f3.which_delta,
        table_f3.which_mu,
        table_f3.N,
        tuple(replace(c, cid=rename[c.cid]) for c in table_f3.classes),
        {
            (rename[a], rename[b]): {rename[c]: v for c, v in out.items()}
            for (a, b), out in table_f3.product.items()
        },
        {
            rename[a]: {(rename[x], rename[y]): v for (x, y), v in cop.items()}
            for a, cop in table_f3.coproduct.items()
        },
    )
    out = check_isomorphism_by_constants(table_f3, copy)
    assert out == rename


def test_isomorphism_dimension_mismatch(table_f3):
    colored = fock_tables(build_instance("colored", palette=1), 1, 2, 2)
    assert check_isomorphism_by_constants(table_f3, colored, 2) is None


def test_f_to_m_change_of_basis(perm_f, table_f3):
    m = build_instance("perm_m")
    tm = fock_tables(m, 1, 2, 3)
    assert check_isomorphism_by_constants(table_f3, tm) is None

    def inversions(c):
        if c.degree == 0:
            return 0
        w = word_of(c.rep)
        return sum(
            1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j]
        )

    trans = check_isomorphism_by_change_of_basis(
        table_f3, tm, order_key=lambda c: (inversions(c), c.key)
    )
    assert trans is not None
    for n, mat in trans.items():
        for i, row in enumerate(mat):
            assert row[i] == 1
            assert all(v in (0, 1) for v in row)
            assert all(v == 0 for v in row[:i])


def test_catalan_dimensions():
    inst = build_preset("213")
    assert graded_dimensions(inst, 4) == [1, 1, 2, 5, 14]


def test_divided_powers_dimensions():
    inst = build_preset("12")
    assert graded_dimensions(inst, 4) == [1, 1, 1, 1, 1]


def test_graph_class_dimensions():
    assert graded_dimensions(build_instance("graphs"), 4) == [1, 1, 2, 4, 11]


def test_fock_refuses_non_intertwined():
    with pytest.raises(NotIntertwined):
        fock_tables(build_instance("broken_dc"), 1, 2, 2)
    with pytest.raises(NotIntertwined):
        fock_tables(build_instance("cc"), 1, 2, 3)


def test_force_builds_anyway_and_axioms_fail():
    # negative-control escape hatch: the cc table exists under force and the
    # algebra-level verification pinpoints the compatibility failure
    table = fock_tables(build_instance("cc"), 1, 2, 3, verify="force")
    r = verify_hopf_axioms(table)
    assert not r.passed and r.stage == "Compatibility"


def test_table_json_roundtrip(table_f3, tmp_path):
    data = table_f3.to_json()
    loaded = table_from_json(json.loads(json.dumps(data)))
    assert loaded.to_json() == data


def test_table_cache_roundtrip(tmp_path, perm_f):
    fresh = fock_tables(perm_f, 1, 2, 2, cache_dir=str(tmp_path))
    cached = fock_tables(perm_f, 1, 2, 2, cache_dir=str(tmp_path))
    assert cached.to_json() == fresh.to_json()
    assert len(list(tmp_path.iterdir())) == 1
