"""Character tables and the character calculus for naive cyclotomic norms.

Character values are cyclotomic integers represented by residues in a
prime field F_p with p = 1 mod exponent(G) and p > 2|G|^2, so every
integer quantity we care about (degrees, inner products, multiplicities)
is recognized exactly from its residue.  Permutation characters also
keep an integer-valued fast path.

The central operation is the two-route computation of the character of
the group of naive cyclotomic norms: the meet of the infinite-place
induced character with the part of the regular character prime to the
l-place induced character, cross-checked against the constituent-
deletion route.
"""

from __future__ import annotations

from math import gcd, isqrt

from sympy import isprime, nextprime
from sympy.ntheory import primitive_root
from sympy.ntheory.residue_ntheory import sqrt_mod

from .groups import (
    ConjugacyClasses,
    FiniteGroup,
    GroupError,
    Subgroup,
    conjugacy_classes,
    quotient_map,
)


class CharacterError(ValueError):
    pass


# ---------------------------------------------------------------------------
# F_p linear algebra helpers


def _nullspace_mod(A, p):
    """Basis of the right null space of A over F_p."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    M = [row[:] for row in A]
    pivot_col = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] % p), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p)
        M[r] = [x * inv % p for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(x - f * y) % p for x, y in zip(M[i], M[r])]
        pivot_col.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivot_col]
    basis = []
    for fc in free:
        v = [0] * cols
        v[fc] = 1
        for i, pc in enumerate(pivot_col):
            v[pc] = (-M[i][fc]) % p
        basis.append(v)
    return basis


def _solve_mod(A, b, p):
    """One solution x of A x = b over F_p (A assumed consistent)."""
    rows, cols = len(A), len(A[0])
    M = [A[i][:] + [b[i]] for i in range(rows)]
    pivot_col = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] % p), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p)
        M[r] = [x * inv % p for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(x - f * y) % p for x, y in zip(M[i], M[r])]
        pivot_col.append(c)
        r += 1
    x = [0] * cols
    for i, pc in enumerate(pivot_col):
        x[pc] = M[i][cols]
    return x


def _charpoly_mod(A, p):
    """Characteristic polynomial mod p via Hessenberg reduction."""
    n = len(A)
    H = [row[:] for row in A]
    for c in range(n - 2):
        piv = next((r for r in range(c + 1, n) if H[r][c] % p), None)
        if piv is None:
            continue
        if piv != c + 1:
            H[c + 1], H[piv] = H[piv], H[c + 1]
            for r in range(n):
                H[r][c + 1], H[r][piv] = H[r][piv], H[r][c + 1]
        inv = pow(H[c + 1][c], -1, p)
        for r in range(c + 2, n):
            if H[r][c]:
                f = H[r][c] * inv % p
                for j in range(n):
                    H[r][j] = (H[r][j] - f * H[c + 1][j]) % p
                for j in range(n):
                    H[j][c + 1] = (H[j][c + 1] + f * H[j][r]) % p
    # p_k(x) = charpoly of leading k x k block
    polys = [[1]]
    for k in range(1, n + 1):
        # p_k = (x - H[k-1][k-1]) p_{k-1} - sum_j H[j-1][k-1] (prod beta) p_{j-1}
        pk = [0] + polys[k - 1]
        pk = [(a - H[k - 1][k - 1] * b) % p for a, b in zip(pk, polys[k - 1] + [0])]
        beta = 1
        for j in range(k - 1, 0, -1):
            beta = beta * H[j][j - 1] % p
            term = H[j - 1][k - 1] * beta % p
            pk = [
                (a - term * b) % p
                for a, b in zip(pk, polys[j - 1] + [0] * (len(pk) - len(polys[j - 1])))
            ]
        polys.append(pk)
    return polys[n]  # coefficients, constant term first


def _poly_roots_mod(coeffs, p):
    """Roots in F_p of a polynomial given constant-first coefficients."""
    roots = []
    for x in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % p
        if acc == 0:
            roots.append(x)
    return roots


# ---------------------------------------------------------------------------
# data types


class ClassFunction:
    """A class function with values stored as residues in F_p.

    Integer-valued functions (permutation characters and their
    combinations) additionally carry exact integer values.
    """

    __slots__ = ("group", "classes", "p", "values", "int_values")

    def __init__(self, group, classes, p, values, int_values=None):
        self.group = group
        self.classes = classes
        self.p = p
        self.values = tuple(v % p for v in values)
        self.int_values = tuple(int_values) if int_values is not None else None

    def _check(self, other):
        if self.group is not other.group or self.p != other.p:
            raise CharacterError("class functions over mismatched groups")

    def __add__(self, other):
        self._check(other)
        iv = None
        if self.int_values is not None and other.int_values is not None:
            iv = [a + b for a, b in zip(self.int_values, other.int_values)]
        return ClassFunction(
            self.group,
            self.classes,
            self.p,
            [a + b for a, b in zip(self.values, other.values)],
            iv,
        )

    def __sub__(self, other):
        self._check(other)
        iv = None
        if self.int_values is not None and other.int_values is not None:
            iv = [a - b for a, b in zip(self.int_values, other.int_values)]
        return ClassFunction(
            self.group,
            self.classes,
            self.p,
            [a - b for a, b in zip(self.values, other.values)],
            iv,
        )

    def scale(self, c: int):
        iv = None
        if self.int_values is not None:
            iv = [c * a for a in self.int_values]
        return ClassFunction(
            self.group, self.classes, self.p, [c * a for a in self.values], iv
        )

    def degree(self) -> int:
        ident = self.classes.class_index[self.group.identity]
        if self.int_values is not None:
            return self.int_values[ident]
        return _recognize(self.values[ident], self.p)

    def __eq__(self, other):
        return (
            isinstance(other, ClassFunction)
            and self.group is other.group
            and self.values == other.values
        )

    def __hash__(self):
        return hash((id(self.group), self.values))

    def __repr__(self):
        if self.int_values is not None:
            return f"ClassFunction{self.int_values}"
        return f"ClassFunction(mod {self.p}){self.values}"


class CharacterTable:
    """Irreducible characters of a group, trivial character first."""

    def __init__(self, group, classes, p, zeta_order, rows):
        self.group = group
        self.classes = classes
        self.p = p
        self.zeta_order = zeta_order
        self.irreducibles = rows  # list of ClassFunction
        self.degrees = [chi.degree() for chi in rows]
        if sum(d * d for d in self.degrees) != group.order:
            raise CharacterError("sum of squared degrees != |G|")
        ident = classes.class_index[group.identity]
        if any(v != 1 for v in rows[0].values):
            raise CharacterError("first row must be the trivial character")
        for i, chi in enumerate(rows):
            for j, psi in enumerate(rows):
                ip = inner_product(chi, psi, classes=classes)
                if ip != (1 if i == j else 0):
                    raise CharacterError("rows are not orthonormal")
        del ident

    @property
    def k(self):
        return len(self.irreducibles)

    def labels(self):
        return [f"X{i}(d{d})" for i, d in enumerate(self.degrees)]

    def trivial(self):
        return self.irreducibles[0]

    def regular_character(self):
        chi = _zero_function(self)
        for d, irr in zip(self.degrees, self.irreducibles):
            chi = chi + irr.scale(d)
        ident = self.classes.class_index[self.group.identity]
        iv = [self.group.order if i == ident else 0 for i in range(self.classes.k)]
        return ClassFunction(self.group, self.classes, self.p, chi.values, iv)


class Multiplicities:
    """Non-negative multiplicities of a character in a fixed table."""

    def __init__(self, table: CharacterTable, coeffs):
        self.table = table
        self.coeffs = tuple(coeffs)
        if any(c < 0 for c in coeffs):
            raise CharacterError("negative multiplicity")

    def reconstruct(self) -> ClassFunction:
        chi = _zero_function(self.table)
        for c, irr in zip(self.coeffs, self.table.irreducibles):
            chi = chi + irr.scale(c)
        return chi

    def __eq__(self, other):
        return self.table is other.table and self.coeffs == other.coeffs

    def __repr__(self):
        return f"Multiplicities{self.coeffs}"


def _zero_function(table: CharacterTable) -> ClassFunction:
    return ClassFunction(
        table.group, table.classes, table.p, [0] * table.classes.k, [0] * table.classes.k
    )


def _recognize(residue, p):
    """Lift a residue to the integer it represents; error if implausible."""
    r = residue % p
    if r > p // 2:
        raise CharacterError(f"residue {r} mod {p} is not a small non-negative integer")
    return r


# ---------------------------------------------------------------------------
# table construction


def _dixon_prime(group: FiniteGroup):
    e = group.exponent()
    bound = 2 * group.order**2
    p = e + 1
    while p <= bound or not isprime(p) or (p - 1) % e:
        p += e
    return p, e


def _abelian_basis(G: FiniteGroup):
    """Cyclic decomposition: list of (generator, order) with product |G|."""
    if G.order == 1:
        return []
    g = max(range(G.order), key=G.element_order)
    m = G.element_order(g)
    C = Subgroup.generated(G, [g])
    Q, proj = quotient_map(G, C)
    qbasis = _abelian_basis(Q)
    basis = [(g, m)]
    for qgen, k in qbasis:
        h = next(x for x in range(G.order) if proj[x] == qgen)
        hk = G.power(h, k)
        # h^k lands in <g>; divide it out so the lift has exact order k
        t = next(t for t in range(m) if G.power(g, t) == hk)
        assert t % k == 0
        h = G.mul(h, G.inv(G.power(g, t // k)))
        assert G.element_order(h) == k and proj[h] == qgen
        basis.append((h, k))
    return basis


def _abelian_table(G, classes, p, e):
    basis = _abelian_basis(G)
    zeta = pow(primitive_root(p), (p - 1) // e, p)
    # exponent coordinates of every element in the chosen basis
    coords = {G.identity: ()}
    elems = [(G.identity, ())]
    for g, m in basis:
        new = []
        for x, cs in elems:
            y = x
            for j in range(m):
                new.append((G.mul(x, G.power(g, j)), cs + (j,)))
        elems = new
    coord_of = {x: cs for x, cs in elems}
    assert len(coord_of) == G.order
    orders = [m for _, m in basis]
    rows = []
    import itertools

    for char_exp in itertools.product(*[range(m) for m in orders]):
        vals = []
        for rep in classes.representatives:
            cs = coord_of[rep]
            a = sum(ce * c * (e // m) for ce, c, m in zip(char_exp, cs, orders)) % e
            vals.append(pow(zeta, a, p))
        rows.append(ClassFunction(G, classes, p, vals))
    return rows


def _dixon_table(G, classes, p, e):
    k = classes.k
    reps = classes.representatives
    members = [[] for _ in range(k)]
    for g in range(G.order):
        members[classes.class_index[g]].append(g)
    # class algebra structure constants: a[i][j][t], C_i C_j = sum a C_t
    mats = []
    for i in range(k):
        M = [[0] * k for _ in range(k)]
        for t in range(k):
            z = reps[t]
            for x in members[i]:
                j = classes.class_index[G.mul(G.inv(x), z)]
                M[j][t] += 1
        mats.append([[M[j][t] % p for t in range(k)] for j in range(k)])
    # split the class-function space into common eigenlines
    blocks = [[tuple(1 if i == j else 0 for j in range(k)) for i in range(k)]]
    for M in mats:
        if all(len(b) == 1 for b in blocks):
            break
        new_blocks = []
        for basis in blocks:
            if len(basis) == 1:
                new_blocks.append(basis)
                continue
            m = len(basis)
            imgs = [
                [sum(M[r][c] * v[c] for c in range(k)) % p for r in range(k)]
                for v in basis
            ]
            # restriction matrix R with img_j = sum R[i][j] basis_i
            A = [[basis[i][r] for i in range(m)] for r in range(k)]
            R = [[0] * m for _ in range(m)]
            for j, img in enumerate(imgs):
                sol = _solve_mod(A, img, p)
                for i in range(m):
                    R[i][j] = sol[i]
            split_dim = 0
            for lam in sorted(set(_poly_roots_mod(_charpoly_mod(R, p), p))):
                shifted = [
                    [(R[i][j] - (lam if i == j else 0)) % p for j in range(m)]
                    for i in range(m)
                ]
                sub = []
                for v in _nullspace_mod(shifted, p):
                    sub.append(
                        tuple(
                            sum(v[i] * basis[i][c] for i in range(m)) % p
                            for c in range(k)
                        )
                    )
                if sub:
                    new_blocks.append(sub)
                    split_dim += len(sub)
            if split_dim != m:
                raise CharacterError("class matrix failed to diagonalize")
        blocks = new_blocks
    if any(len(b) != 1 for b in blocks):
        raise CharacterError("class algebra did not split into eigenlines")
    rows = []
    n = G.order
    inv_class = classes.inverse_class
    for basis in blocks:
        v = basis[0]
        omega = []
        j0 = next(j for j in range(k) if v[j])
        inv_vj0 = pow(v[j0], -1, p)
        for M in mats:
            img = sum(M[j0][c] * v[c] for c in range(k)) % p
            omega.append(img * inv_vj0 % p)
        s = 0
        for i in range(k):
            s += omega[i] * omega[inv_class[i]] * pow(classes.sizes[i], -1, p)
        s %= p
        d2 = n * pow(s, -1, p) % p
        d = sqrt_mod(d2, p)
        if d is None:
            raise CharacterError("degree recovery failed")
        d = min(d, p - d)
        if d * d > n:
            raise CharacterError("implausible degree")
        vals = [d * omega[i] * pow(classes.sizes[i], -1, p) % p for i in range(k)]
        rows.append(ClassFunction(G, classes, p, vals))
    return rows


_TABLE_CACHE = {}


def character_table(G: FiniteGroup) -> CharacterTable:
    """Complete table of complex irreducible characters.

    Abelian groups go through the dual-group construction from a cyclic
    decomposition; nonabelian groups use Burnside/Dixon class-algebra
    splitting in F_p.
    """
    key = id(G)
    cached = _TABLE_CACHE.get(key)
    if cached is not None:
        return cached
    classes = conjugacy_classes(G)
    p, e = _dixon_prime(G)
    if G.is_abelian():
        rows = _abelian_table(G, classes, p, e)
    else:
        rows = _dixon_table(G, classes, p, e)
    if len(rows) != classes.k:
        raise CharacterError("wrong number of irreducibles")
    trivial = next(r for r in rows if all(v == 1 for v in r.values))
    rest = [r for r in rows if r is not trivial]
    rest.sort(key=lambda r: (r.degree(), r.values))
    table = CharacterTable(G, classes, p, e, [trivial] + rest)
    _TABLE_CACHE[key] = table
    return table


# ---------------------------------------------------------------------------
# the character calculus


def induced_trivial(G: FiniteGroup, H: Subgroup, table=None) -> ClassFunction:
    """Permutation character of G on the cosets G/H (induced trivial)."""
    if H.group is not G:
        raise CharacterError("H is not a subgroup of G")
    table = table or character_table(G)
    classes = table.classes
    hset = set(H.elements)
    vals = []
    for rep in classes.representatives:
        fixed = sum(
            1 for x in range(G.order) if G.mul(G.mul(G.inv(x), rep), x) in hset
        )
        assert fixed % H.order == 0
        vals.append(fixed // H.order)
    return ClassFunction(G, classes, table.p, vals, vals)


def inner_product(chi: ClassFunction, psi: ClassFunction, classes=None) -> int:
    """<chi, psi> = (1/|G|) sum chi(g) psi(g^-1), recognized as an integer."""
    chi._check(psi)
    classes = classes or chi.classes
    p = chi.p
    n = chi.group.order
    s = 0
    for i in range(classes.k):
        s += classes.sizes[i] * chi.values[i] * psi.values[classes.inverse_class[i]]
    s %= p
    s = s * pow(n, -1, p) % p
    return _recognize(s, p)


def multiplicities(chi: ClassFunction, table: CharacterTable) -> Multiplicities:
    coeffs = [inner_product(chi, irr) for irr in table.irreducibles]
    m = Multiplicities(table, coeffs)
    if m.reconstruct().values != chi.values:
        raise CharacterError("multiplicities do not reconstruct the character")
    return m


def prime_part_of_regular(table: CharacterTable, chi_ell: ClassFunction) -> ClassFunction:
    """Part of the regular character supported away from chi_ell."""
    out = _zero_function(table)
    for d, irr in zip(table.degrees, table.irreducibles):
        if inner_product(chi_ell, irr) == 0:
            out = out + irr.scale(d)
    return out


def meet(chi: ClassFunction, psi: ClassFunction, table: CharacterTable) -> ClassFunction:
    """Largest common sub-character: componentwise min of multiplicities."""
    a = multiplicities(chi, table).coeffs
    b = multiplicities(psi, table).coeffs
    out = _zero_function(table)
    for ai, bi, irr in zip(a, b, table.irreducibles):
        out = out + irr.scale(min(ai, bi))
    return out


def _validate_decomposition(G, d_inf, d_ell):
    if d_inf.group is not G or d_ell.group is not G:
        raise CharacterError("subgroups of the wrong group")
    if d_inf.order > 2:
        raise CharacterError("a decomposition group at infinity has order 1 or 2")


def naive_norm_character(G: FiniteGroup, d_inf: Subgroup, d_ell: Subgroup) -> ClassFunction:
    """Character of the group of naive cyclotomic norms, computed twice.

    Route 1: 1 + (chi_inf meet part-of-regular-prime-to-chi_ell).
    Route 2: delete from chi_inf every constituent of chi_ell, add 1.
    The two must agree; a mismatch is an internal error.
    """
    _validate_decomposition(G, d_inf, d_ell)
    table = character_table(G)
    chi_inf = induced_trivial(G, d_inf, table)
    chi_ell = induced_trivial(G, d_ell, table)
    route1 = table.trivial() + meet(chi_inf, prime_part_of_regular(table, chi_ell), table)
    m_inf = multiplicities(chi_inf, table).coeffs
    route2 = table.trivial()
    for mi, irr in zip(m_inf, table.irreducibles):
        if inner_product(chi_ell, irr) == 0:
            route2 = route2 + irr.scale(mi)
    if route1.values != route2.values:
        raise CharacterError("the two computation routes disagree")
    return route1


def naive_rank_galois(G: FiniteGroup, d_inf: Subgroup, d_ell: Subgroup) -> int:
    """Rank of the naive cyclotomic norm group in the Galois case."""
    rank = naive_norm_character(G, d_inf, d_ell).degree()
    rc = G.order // d_inf.order
    lk = G.order // d_ell.order
    assert 1 <= rank <= rc + lk - 1
    return rank


def cla_rank(r_K: int, c_K: int, r_k: int, c_k: int) -> int:
    """Closed-form rank under l-adic conjugation over a totally split subfield."""
    if min(r_K, c_K, r_k, c_k) < 0 or r_k + c_k < 1:
        raise CharacterError("invalid signature data")
    return (r_K + c_K) - (r_k + c_k - 1)


def herbrand_character(G: FiniteGroup, d_inf: Subgroup, d_ell: Subgroup) -> ClassFunction:
    """Character of the l-unit module: chi_inf + chi_ell - 1."""
    _validate_decomposition(G, d_inf, d_ell)
    table = character_table(G)
    chi_inf = induced_trivial(G, d_inf, table)
    chi_ell = induced_trivial(G, d_ell, table)
    return chi_inf + chi_ell - table.trivial()


def gross_equality_criterion(G: FiniteGroup, d_inf: Subgroup, d_ell: Subgroup) -> bool:
    """True iff chi_inf meet chi_ell is exactly the trivial character."""
    _validate_decomposition(G, d_inf, d_ell)
    table = character_table(G)
    chi_inf = induced_trivial(G, d_inf, table)
    chi_ell = induced_trivial(G, d_ell, table)
    m = multiplicities(meet(chi_inf, chi_ell, table), table).coeffs
    return m[0] == 1 and all(c == 0 for c in m[1:])


def subfield_heredity_check(
    G: FiniteGroup, d_inf: Subgroup, d_ell: Subgroup, H: Subgroup
) -> bool:
    """Equality criterion for the subfield fixed by a normal H.

    The subfield data are (G/H, D_inf H/H, D_ell H/H); non-normal H needs
    relative decomposition data we do not derive here.
    """
    _validate_decomposition(G, d_inf, d_ell)
    Q, proj = quotient_map(G, H)  # raises on non-normal H
    q_inf = Subgroup(Q, {proj[g] for g in d_inf.elements})
    q_ell = Subgroup(Q, {proj[g] for g in d_ell.elements})
    return gross_equality_criterion(Q, q_inf, q_ell)
