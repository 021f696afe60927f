"""
The Galois character of the naive cyclotomic norm group
=======================================================

For a Galois field K/Q with group G, the group of naive cyclotomic
norms E~_K (elements that are norms from every layer of the
cyclotomic Z_ell-tower) carries a G-module structure.  Its rank and
character are determined by pure character theory: the permutation
characters of the places at infinity and above ell.

This script walks through the computation for the classical quartic
CM example K = Q(i, sqrt(2)) at a prime ell that is inert in the real
quadratic subfield Q(sqrt(2)) and splits in K/Q(sqrt(2)).
"""

from lognorm import (
    Subgroup,
    character_table,
    cyclic_group,
    decomposition_data,
    direct_product,
    induced_trivial,
    meet,
    multiplicities,
    naive_norm_character,
    naive_rank_galois,
    prime_part_of_regular,
    biquadratic_spec,
)

# the abstract configuration: G = V4, complex conjugation generates
# D_inf, the decomposition group at ell is a different order-2 subgroup
G = direct_product(cyclic_group(2), cyclic_group(2))
d_inf = Subgroup.generated(G, [2])
d_ell = Subgroup.generated(G, [1])

table = character_table(G)
print("irreducibles of V4:", ", ".join(table.labels()))

# chi_inf = Ind_{D_inf}^G 1 counts the infinite places with
# multiplicity; chi_ell does the same for places above ell
chi_inf = induced_trivial(G, d_inf, table)
chi_ell = induced_trivial(G, d_ell, table)
print("chi_inf multiplicities:", multiplicities(chi_inf, table).coeffs)
print("chi_ell multiplicities:", multiplicities(chi_ell, table).coeffs)

# chi_ell_bar is the part of the regular character prime to chi_ell:
# the irreducibles that do NOT occur in chi_ell
chi_bar = prime_part_of_regular(table, chi_ell)
print("chi_ell_bar multiplicities:", multiplicities(chi_bar, table).coeffs)

# the character of Q_ell (x) E~_K is 1 + (chi_inf meet chi_ell_bar):
# one copy of the trivial character (from ell^Z) plus the common part
# of the archimedean character and the ell-prime part of the regular
chi_E = naive_norm_character(G, d_inf, d_ell)
print("chi_E multiplicities:", multiplicities(chi_E, table).coeffs)
print("rank e~ =", chi_E.degree())
assert chi_E.degree() == naive_rank_galois(G, d_inf, d_ell) == 2

# the same configuration realized concretely: ell = 5 is inert in
# Q(sqrt 2), splits in Q(i), so D_5 is the "wrong" involution
dd = decomposition_data(biquadratic_spec(2, -1), 5)
print()
print("Q(i, sqrt 2) at ell = 5: r =", dd.r, " c =", dd.c, " l =", dd.l)
print("rank from the concrete field:", naive_rank_galois(dd.group, dd.d_inf, dd.d_ell))

# sanity: the meet really is the componentwise minimum
m = meet(chi_inf, chi_bar, table)
print("meet(chi_inf, chi_ell_bar) multiplicities:", multiplicities(m, table).coeffs)
