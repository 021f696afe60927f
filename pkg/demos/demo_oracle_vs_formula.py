"""
Brute-force kernel oracle versus the character formula
======================================================

The rank of the naive cyclotomic norm group can be computed two ways:

  * the closed-form character formula (pure group theory, instant);
  * a brute-force oracle that builds explicit generators of the
    relevant S-unit group, evaluates every logarithmic valuation
    ell-adically, and measures the integer relation lattice of the
    resulting matrix.

The oracle knows nothing about the formula, so agreement on a corpus
of concrete fields is a genuine cross-check.  This script sweeps all
quadratic fields Q(sqrt d) with |d| <= 30 over six primes and prints
the comparison, then shows the raw oracle data for one field.
"""

from lognorm import (
    decomposition_data,
    naive_rank_galois,
    naive_rank_oracle,
    oracle_matrix,
    padic_matrix_rank,
    quadratic_spec,
    squarefree_radicands,
)

ELLS = [2, 3, 5, 7, 11, 13]

mismatches = 0
rows = 0
for d in squarefree_radicands(30):
    spec = quadratic_spec(d)
    line = []
    for ell in ELLS:
        dd = decomposition_data(spec, ell)
        formula = naive_rank_galois(dd.group, dd.d_inf, dd.d_ell)
        rank, ambiguous = naive_rank_oracle(spec, ell, 12)
        mark = "=" if (rank == formula and not ambiguous) else "!"
        if mark == "!":
            mismatches += 1
        line.append(f"l={ell}:{formula}{mark}{rank}")
        rows += 1
    print(f"d={d:4d}  " + "  ".join(line))

print()
print(f"{rows} comparisons, {mismatches} mismatches")

# under the hood: the valuation matrix for Q(sqrt 2) at ell = 5
# (inert at 5, so one generator row is an exact zero and the unit row
# lies in the kernel only through an integer relation)
spec = quadratic_spec(2)
M = oracle_matrix(spec, 5)
print()
print("oracle matrix for Q(sqrt 2), ell = 5  (rows = generators, cols = places):")
for row in M.entries:
    print("  ", [str(x) for x in row])
rank, amb = padic_matrix_rank(M)
print("Q_ell-rank of the matrix:", rank, " kernel dim:", M.shape[0] - rank)
print("oracle rank e~:", naive_rank_oracle(spec, 5, 12)[0])
