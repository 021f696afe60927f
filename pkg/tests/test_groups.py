import json

import pytest

from lognorm.groups import (
    FiniteGroup,
    GroupError,
    Subgroup,
    all_subgroups,
    conjugacy_classes,
    conjugates_of_subgroup,
    cyclic_group,
    dicyclic_group,
    dihedral_group,
    direct_product,
    group_from_json,
    group_from_permutations,
    is_normal,
    metacyclic_group,
    quotient_map,
    small_groups,
    unit_group_mod,
)


def test_cyclic_group():
    G = cyclic_group(6)
    assert G.order == 6 and G.is_abelian()
    assert G.element_order(1) == 6
    assert G.exponent() == 6


def test_bad_tables_rejected():
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1], [0, 1]])  # rows not permutations
    with pytest.raises(GroupError):
        FiniteGroup([[1, 0], [1, 0]])  # no identity


def test_s3_structure():
    S3 = dihedral_group(3)
    cc = conjugacy_classes(S3)
    assert sorted(cc.sizes) == [1, 2, 3]
    assert not S3.is_abelian()
    assert len(all_subgroups(S3)) == 6
    t = next(g for g in range(6) if S3.element_order(g) == 2)
    H = Subgroup.generated(S3, [t])
    assert not is_normal(S3, H)
    assert len(conjugates_of_subgroup(S3, H)) == 3


def test_quaternion_and_a4():
    Q8 = dicyclic_group(2)
    assert sorted(conjugacy_classes(Q8).sizes) == [1, 1, 2, 2, 2]
    A4 = group_from_permutations([(1, 2, 0, 3), (1, 0, 3, 2)], name="A4")
    assert A4.order == 12
    assert sorted(conjugacy_classes(A4).sizes) == [1, 3, 4, 4]


def test_unit_group_mod():
    U8 = unit_group_mod(8)
    assert U8.order == 4 and U8.exponent() == 2
    U5 = unit_group_mod(5)
    assert U5.order == 4 and U5.exponent() == 4
    assert unit_group_mod(1).order == 1


def test_metacyclic_validation():
    with pytest.raises(GroupError):
        metacyclic_group(8, 2, 2)  # 2^2 != 1 mod 8
    SD16 = metacyclic_group(8, 2, 3)
    assert SD16.order == 16 and not SD16.is_abelian()


def test_quotient_map():
    V4 = direct_product(cyclic_group(2), cyclic_group(2))
    H = Subgroup.generated(V4, [1])
    Q, proj = quotient_map(V4, H)
    assert Q.order == 2
    assert proj[0] == proj[1] and proj[2] == proj[3]
    S3 = dihedral_group(3)
    t = next(g for g in range(6) if S3.element_order(g) == 2)
    with pytest.raises(GroupError):
        quotient_map(S3, Subgroup.generated(S3, [t]))


def test_all_subgroups_counts():
    V4 = direct_product(cyclic_group(2), cyclic_group(2))
    assert len(all_subgroups(V4)) == 5
    Q8 = dicyclic_group(2)
    assert len(all_subgroups(Q8)) == 6


def test_small_groups_catalogue():
    gs = small_groups(16)
    assert len(gs) == 42
    by_order = {}
    for G in gs:
        by_order.setdefault(G.order, []).append(G)
    expected = {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5,
                9: 2, 10: 2, 11: 1, 12: 5, 13: 1, 14: 2, 15: 1, 16: 14}
    assert {k: len(v) for k, v in by_order.items()} == expected
    # pairwise non-isomorphic, checked by a strong invariant fingerprint
    seen = set()
    for G in gs:
        cc = conjugacy_classes(G)
        fp = (
            G.order,
            G.is_abelian(),
            tuple(sorted(cc.sizes)),
            tuple(sorted(G.element_order(g) for g in range(G.order))),
            len({G.mul(g, g) for g in range(G.order)}),
            sum(
                1
                for z in range(G.order)
                if all(G.mul(z, g) == G.mul(g, z) for g in range(G.order))
            ),
            len(all_subgroups(G)),
        )
        assert fp not in seen, f"duplicate catalogue entry near {G.name}"
        seen.add(fp)


def test_group_from_json():
    V4 = direct_product(cyclic_group(2), cyclic_group(2))
    doc = {
        "order": 4,
        "table": V4.table,
        "D_inf": [0, 2],
        "D_ell": [0, 1],
        "name": "V4",
    }
    G, d_inf, d_ell = group_from_json(json.dumps(doc))
    assert G.order == 4 and d_inf.order == 2 and d_ell.order == 2
    assert d_inf != d_ell
    with pytest.raises(GroupError):
        group_from_json({"order": 3, "table": V4.table, "D_inf": [0], "D_ell": [0]})
