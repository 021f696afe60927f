import random

import pytest

from lognorm.chars import (
    CharacterError,
    character_table,
    cla_rank,
    gross_equality_criterion,
    herbrand_character,
    induced_trivial,
    inner_product,
    meet,
    multiplicities,
    naive_norm_character,
    naive_rank_galois,
    prime_part_of_regular,
    subfield_heredity_check,
)
from lognorm.groups import (
    GroupError,
    Subgroup,
    all_subgroups,
    cyclic_group,
    dicyclic_group,
    dihedral_group,
    direct_product,
    group_from_permutations,
    metacyclic_group,
    small_groups,
)


def V4():
    return direct_product(cyclic_group(2), cyclic_group(2))


def A4():
    return group_from_permutations([(1, 2, 0, 3), (1, 0, 3, 2)], name="A4")


def test_degrees_of_named_groups():
    cases = [
        (cyclic_group(6), [1] * 6),
        (dihedral_group(3), [1, 1, 2]),
        (dihedral_group(4), [1, 1, 1, 1, 2]),
        (dicyclic_group(2), [1, 1, 1, 1, 2]),
        (A4(), [1, 1, 1, 3]),
        (dihedral_group(8), [1, 1, 1, 1, 2, 2, 2]),
        (metacyclic_group(8, 2, 3), [1, 1, 1, 1, 2, 2, 2]),
    ]
    for G, want in cases:
        assert sorted(character_table(G).degrees) == want


def test_orthogonality_explicit():
    for G in [dihedral_group(4), A4(), cyclic_group(12)]:
        table = character_table(G)
        for i, chi in enumerate(table.irreducibles):
            for j, psi in enumerate(table.irreducibles):
                assert inner_product(chi, psi) == (1 if i == j else 0)


def test_induced_trivial_degree_is_index():
    S3 = dihedral_group(3)
    for H in all_subgroups(S3):
        chi = induced_trivial(S3, H)
        assert chi.degree() == H.index()


def test_induced_conjugation_invariance():
    rng = random.Random(7)
    groups = [dihedral_group(4), A4(), dicyclic_group(3)]
    for _ in range(30):
        G = rng.choice(groups)
        H = rng.choice(all_subgroups(G))
        g = rng.randrange(G.order)
        Hc = Subgroup(G, [G.conj(g, h) for h in H.elements])
        assert induced_trivial(G, H).values == induced_trivial(G, Hc).values


def test_regular_character_multiplicities():
    G = dihedral_group(3)
    table = character_table(G)
    reg = table.regular_character()
    assert multiplicities(reg, table).coeffs == tuple(table.degrees)


def test_meet_and_prime_part():
    G = V4()
    table = character_table(G)
    d_inf = Subgroup.generated(G, [2])
    d_ell = Subgroup.generated(G, [1])
    chi_inf = induced_trivial(G, d_inf, table)
    chi_ell = induced_trivial(G, d_ell, table)
    bar = prime_part_of_regular(table, chi_ell)
    assert bar.degree() == 2
    assert inner_product(bar, table.trivial()) == 0
    m = meet(chi_inf, chi_ell, table)
    assert multiplicities(m, table).coeffs[0] == 1


def test_naive_rank_spec_examples():
    C2 = cyclic_group(2)
    triv, full = Subgroup.trivial(C2), Subgroup.full(C2)
    assert naive_rank_galois(C2, triv, full) == 2  # real quadratic, inert
    assert naive_rank_galois(C2, full, triv) == 1  # imaginary quadratic, split
    C1 = cyclic_group(1)
    t1 = Subgroup.trivial(C1)
    assert naive_rank_galois(C1, t1, t1) == 1  # K = Q


def test_naive_rank_quartic_cm_example():
    G = V4()
    d_inf = Subgroup.generated(G, [2])
    d_ell = Subgroup.generated(G, [1])
    chi = naive_norm_character(G, d_inf, d_ell)
    table = character_table(G)
    coeffs = multiplicities(chi, table).coeffs
    assert chi.degree() == 2 and coeffs[0] == 1 and sum(coeffs) == 2


def test_rank_extremes():
    for G in [cyclic_group(4), dihedral_group(3), V4()]:
        for d_inf in [Subgroup.trivial(G)] + [
            H for H in all_subgroups(G) if H.order == 2
        ]:
            # D_ell trivial: totally split, rank 1
            assert naive_rank_galois(G, d_inf, Subgroup.trivial(G)) == 1
            # D_ell = G: single place, rank = [G : D_inf]
            assert naive_rank_galois(G, d_inf, Subgroup.full(G)) == G.order // d_inf.order


def test_d_inf_order_validated():
    G = cyclic_group(4)
    big = Subgroup.full(G)
    with pytest.raises(CharacterError):
        naive_rank_galois(G, big, Subgroup.trivial(G))


def test_cla_rank():
    assert cla_rank(0, 2, 0, 1) == 2
    for r, c in [(1, 0), (2, 0), (0, 1), (3, 2)]:
        assert cla_rank(r, c, 1, 0) == r + c
    assert cla_rank(0, 1, 0, 1) == 1
    with pytest.raises(CharacterError):
        cla_rank(1, 0, 0, 0)


def test_herbrand_character():
    C2 = cyclic_group(2)
    triv = Subgroup.trivial(C2)
    h = herbrand_character(C2, triv, triv)
    assert h.degree() == 3  # real quadratic, ell split: 1 + 2*sgn
    table = character_table(C2)
    assert multiplicities(h, table).coeffs == (1, 2)
    # D_ell = G: herbrand = chi_inf
    full = Subgroup.full(C2)
    assert herbrand_character(C2, triv, full).values == induced_trivial(C2, triv).values
    C1 = cyclic_group(1)
    assert herbrand_character(C1, Subgroup.trivial(C1), Subgroup.trivial(C1)).degree() == 1


def test_gross_equality_criterion():
    C2 = cyclic_group(2)
    triv, full = Subgroup.trivial(C2), Subgroup.full(C2)
    assert gross_equality_criterion(C2, triv, full)  # real, one ell-place
    assert not gross_equality_criterion(C2, triv, triv)  # meet = 1 + sgn
    G = V4()
    assert gross_equality_criterion(
        G, Subgroup.generated(G, [2]), Subgroup.generated(G, [1])
    )
    # real Galois: criterion iff D_ell = G
    for G in [cyclic_group(3), cyclic_group(4), V4(), dihedral_group(3)]:
        for H in all_subgroups(G):
            got = gross_equality_criterion(G, Subgroup.trivial(G), H)
            assert got == (H.order == G.order)


def test_subfield_heredity():
    G = V4()
    d_inf = Subgroup.generated(G, [2])
    d_ell = Subgroup.generated(G, [1])
    assert subfield_heredity_check(G, d_inf, d_ell, Subgroup.full(G))  # subfield Q
    assert subfield_heredity_check(G, d_inf, d_ell, Subgroup.trivial(G)) == \
        gross_equality_criterion(G, d_inf, d_ell)
    assert subfield_heredity_check(G, d_inf, d_ell, d_ell)  # the CM quadratic
    S3 = dihedral_group(3)
    t = next(g for g in range(6) if S3.element_order(g) == 2)
    with pytest.raises(GroupError):
        subfield_heredity_check(
            S3, Subgroup.trivial(S3), Subgroup.trivial(S3), Subgroup.generated(S3, [t])
        )


def test_two_path_agreement_small_groups():
    # the internal assertion in naive_norm_character runs both routes
    for G in small_groups(8):
        small = [H for H in all_subgroups(G) if H.order <= 2]
        for d_inf in small:
            for d_ell in all_subgroups(G):
                naive_norm_character(G, d_inf, d_ell)


def test_galois_orbit_constancy_abelian():
    # multiplicities of permutation characters are constant on Galois
    # orbits chi -> chi^k, gcd(k, exponent) = 1
    from math import gcd

    for G in [cyclic_group(5), cyclic_group(8), direct_product(cyclic_group(3), cyclic_group(3))]:
        table = character_table(G)
        e = G.exponent()
        rows = {chi.values: i for i, chi in enumerate(table.irreducibles)}
        for H in all_subgroups(G):
            chi = induced_trivial(G, H, table)
            mults = multiplicities(chi, table).coeffs
            for i, irr in enumerate(table.irreducibles):
                for k in range(2, e):
                    if gcd(k, e) != 1:
                        continue
                    powered = tuple(pow(v, k, table.p) for v in irr.values)
                    j = rows[powered]
                    assert mults[i] == mults[j]


def test_sum_of_degree_squares():
    for G in small_groups(16):
        table = character_table(G)
        assert sum(d * d for d in table.degrees) == G.order
        assert all(v < table.p for chi in table.irreducibles for v in chi.values)
