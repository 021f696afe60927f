"""Finite groups as Cayley tables.

Elements are integer indices 0..n-1; optional labels live in a side
table.  Orders are capped at 64, which covers every Galois group handled
by the concrete field layer, so associativity is always checked in full.
"""

from __future__ import annotations

import itertools
import json
from math import gcd

MAX_ORDER = 64


class GroupError(ValueError):
    pass


class FiniteGroup:
    def __init__(self, table, labels=None, name="G"):
        n = len(table)
        if n == 0:
            raise GroupError("empty table")
        if n > MAX_ORDER:
            raise GroupError(f"order {n} exceeds the cap {MAX_ORDER}")
        self.table = [list(row) for row in table]
        self.n = n
        self.labels = list(labels) if labels is not None else None
        self.name = name
        for row in self.table:
            if len(row) != n or sorted(row) != list(range(n)):
                raise GroupError("table rows must be permutations of 0..n-1")
        self.identity = None
        for e in range(n):
            if all(self.table[e][g] == g and self.table[g][e] == g for g in range(n)):
                self.identity = e
                break
        if self.identity is None:
            raise GroupError("no identity element")
        self.inverse = [None] * n
        for g in range(n):
            for h in range(n):
                if self.table[g][h] == self.identity:
                    self.inverse[g] = h
                    break
            if self.inverse[g] is None:
                raise GroupError("missing inverse")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        raise GroupError("table is not associative")

    @property
    def order(self):
        return self.n

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self.inverse[a]

    def conj(self, g, x):
        """g x g^-1"""
        return self.mul(self.mul(g, x), self.inv(g))

    def element_order(self, g):
        k, x = 1, g
        while x != self.identity:
            x = self.mul(x, g)
            k += 1
        return k

    def exponent(self):
        e = 1
        for g in range(self.n):
            o = self.element_order(g)
            e = e * o // gcd(e, o)
        return e

    def is_abelian(self):
        return all(
            self.table[a][b] == self.table[b][a]
            for a in range(self.n)
            for b in range(a)
        )

    def power(self, g, k):
        x = self.identity
        k %= self.element_order(g)
        for _ in range(k):
            x = self.mul(x, g)
        return x

    def label(self, g):
        return self.labels[g] if self.labels else g

    def __repr__(self):
        return f"<{self.name}: order {self.n}>"


class Subgroup:
    def __init__(self, group: FiniteGroup, elements):
        self.group = group
        self.elements = tuple(sorted(set(elements)))
        if group.identity not in self.elements:
            raise GroupError("subgroup must contain the identity")
        s = set(self.elements)
        for a in self.elements:
            if group.inv(a) not in s:
                raise GroupError("subgroup not closed under inverse")
            for b in self.elements:
                if group.mul(a, b) not in s:
                    raise GroupError("subgroup not closed under product")
        if group.order % len(self.elements) != 0:
            raise GroupError("Lagrange violated")  # unreachable for real subgroups

    @classmethod
    def generated(cls, group, gens):
        s = {group.identity}
        frontier = list(gens)
        while frontier:
            g = frontier.pop()
            if g in s:
                continue
            s.add(g)
            for h in list(s):
                for p in (group.mul(g, h), group.mul(h, g), group.inv(g)):
                    if p not in s:
                        frontier.append(p)
        return cls(group, s)

    @classmethod
    def trivial(cls, group):
        return cls(group, [group.identity])

    @classmethod
    def full(cls, group):
        return cls(group, range(group.order))

    @property
    def order(self):
        return len(self.elements)

    def index(self):
        return self.group.order // self.order

    def __contains__(self, g):
        return g in self.elements

    def __eq__(self, other):
        return self.group is other.group and self.elements == other.elements

    def __hash__(self):
        return hash((id(self.group), self.elements))

    def __repr__(self):
        return f"<subgroup of order {self.order}>"


class ConjugacyClasses:
    def __init__(self, group: FiniteGroup):
        n = group.order
        self.group = group
        self.class_index = [None] * n
        self.representatives = []
        self.sizes = []
        for g in range(n):
            if self.class_index[g] is not None:
                continue
            orbit = {group.conj(x, g) for x in range(n)}
            ci = len(self.representatives)
            for h in orbit:
                self.class_index[h] = ci
            self.representatives.append(min(orbit))
            self.sizes.append(len(orbit))
        self.k = len(self.representatives)
        # class of inverses, needed by inner products
        self.inverse_class = [
            self.class_index[group.inv(r)] for r in self.representatives
        ]
        assert sum(self.sizes) == n
        assert self.sizes[self.class_index[group.identity]] == 1


def conjugacy_classes(group: FiniteGroup) -> ConjugacyClasses:
    return ConjugacyClasses(group)


# ---------------------------------------------------------------------------
# constructors


def _from_elements(elems, mult, labels=None, name="G"):
    index = {e: i for i, e in enumerate(elems)}
    table = [[index[mult(a, b)] for b in elems] for a in elems]
    return FiniteGroup(table, labels=labels or [str(e) for e in elems], name=name)


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("n must be >= 1")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(table, labels=list(range(n)), name=f"C{n}")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    elems = list(itertools.product(range(G.order), range(H.order)))
    return _from_elements(
        elems,
        lambda a, b: (G.mul(a[0], b[0]), H.mul(a[1], b[1])),
        labels=[f"({G.label(a)},{H.label(b)})" for a, b in elems],
        name=f"{G.name}x{H.name}",
    )


def unit_group_mod(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("n must be >= 1")
    elems = [a for a in range(1, n + 1) if gcd(a, n) == 1] or [1]
    if n <= 2:
        elems = [1]
    return _from_elements(
        elems, lambda a, b: a * b % n if n > 1 else 1, labels=elems, name=f"(Z/{n})^*"
    )


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n (D3 is S3 on triangle vertices)."""
    elems = [(i, s) for s in (0, 1) for i in range(n)]

    def mult(a, b):
        i, s = a
        j, t = b
        return ((i + (j if s == 0 else -j)) % n, s ^ t)

    return _from_elements(elems, mult, name=f"D{n}")


def dicyclic_group(n: int) -> FiniteGroup:
    """Dicyclic group of order 4n; Dic2 is the quaternion group Q8."""
    elems = [(i, j) for j in (0, 1) for i in range(2 * n)]

    def mult(a, b):
        i, s = a
        j, t = b
        if s == 0:
            return ((i + j) % (2 * n), t)
        if t == 0:
            return ((i - j) % (2 * n), 1)
        return ((i - j + n) % (2 * n), 0)

    return _from_elements(elems, mult, name=f"Dic{n}")


def metacyclic_group(m: int, k: int, t: int) -> FiniteGroup:
    """C_m semidirect C_k with the generator of C_k acting by x -> x^t."""
    if pow(t, k, m) != 1 % m:
        raise GroupError("t^k must be 1 mod m")
    elems = [(i, j) for j in range(k) for i in range(m)]

    def mult(a, b):
        i, s = a
        j, u = b
        return ((i + j * pow(t, s, m)) % m, (s + u) % k)

    return _from_elements(elems, mult, name=f"C{m}:C{k}")


def group_from_permutations(gens, name="perm"):
    """Closure of permutation generators (tuples acting on 0..d-1)."""
    d = len(gens[0])
    ident = tuple(range(d))
    elems = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        g = frontier.pop()
        for h in gens:
            p = tuple(g[h[i]] for i in range(d))
            if p not in seen:
                seen.add(p)
                elems.append(p)
                frontier.append(p)
    elems.sort()

    def mult(a, b):
        return tuple(a[b[i]] for i in range(d))

    return _from_elements(elems, mult, name=name)


def _pauli_like_group():
    """(C2 x C2) : C4 with the C4 generator swapping the two factors."""
    elems = [((v1, v2), j) for j in range(4) for v1 in (0, 1) for v2 in (0, 1)]

    def act(j, v):
        return v if j % 2 == 0 else (v[1], v[0])

    def mult(a, b):
        v, j = a
        w, k = b
        u = act(j, w)
        return ((v[0] ^ u[0], v[1] ^ u[1]), (j + k) % 4)

    return _from_elements(elems, mult, name="(C2xC2):C4")


def _central_product_d4_c4():
    """D4 o C4: the central product, order 16."""
    G = direct_product(dihedral_group(4), cyclic_group(4))
    # r^2 in D4 is the rotation (2, 0), element index 2; pair it with 2 in C4
    r2 = 2 * 4 + 2
    Q, _ = quotient_map(G, Subgroup.generated(G, [r2]))
    Q.name = "D4oC4"
    return Q


def small_groups(max_order: int = 16):
    """One representative of every isomorphism class of order <= 16."""
    if max_order > 16:
        raise GroupError("catalogue stops at order 16")
    groups = [
        cyclic_group(1),
        cyclic_group(2),
        cyclic_group(3),
        cyclic_group(4),
        direct_product(cyclic_group(2), cyclic_group(2)),
        cyclic_group(5),
        cyclic_group(6),
        dihedral_group(3),
        cyclic_group(7),
        cyclic_group(8),
        direct_product(cyclic_group(4), cyclic_group(2)),
        direct_product(direct_product(cyclic_group(2), cyclic_group(2)), cyclic_group(2)),
        dihedral_group(4),
        dicyclic_group(2),  # Q8
        cyclic_group(9),
        direct_product(cyclic_group(3), cyclic_group(3)),
        cyclic_group(10),
        dihedral_group(5),
        cyclic_group(11),
        cyclic_group(12),
        direct_product(cyclic_group(6), cyclic_group(2)),
        dihedral_group(6),
        group_from_permutations([(1, 2, 0, 3), (1, 0, 3, 2)], name="A4"),
        dicyclic_group(3),
        cyclic_group(13),
        cyclic_group(14),
        dihedral_group(7),
        cyclic_group(15),
        cyclic_group(16),
        direct_product(cyclic_group(8), cyclic_group(2)),
        direct_product(cyclic_group(4), cyclic_group(4)),
        direct_product(cyclic_group(4), direct_product(cyclic_group(2), cyclic_group(2))),
        direct_product(
            direct_product(cyclic_group(2), cyclic_group(2)),
            direct_product(cyclic_group(2), cyclic_group(2)),
        ),
        dihedral_group(8),
        metacyclic_group(8, 2, 3),  # semidihedral SD16
        metacyclic_group(8, 2, 5),  # modular group M4(2)
        dicyclic_group(4),  # Q16
        metacyclic_group(4, 4, 3),  # C4 : C4
        direct_product(dihedral_group(4), cyclic_group(2)),
        direct_product(dicyclic_group(2), cyclic_group(2)),
        _pauli_like_group(),
        _central_product_d4_c4(),
    ]
    return [G for G in groups if G.order <= max_order]


# ---------------------------------------------------------------------------
# subgroup machinery


def conjugates_of_subgroup(G: FiniteGroup, H: Subgroup):
    out = set()
    for g in range(G.order):
        out.add(Subgroup(G, [G.conj(g, h) for h in H.elements]))
    return out


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    return len(conjugates_of_subgroup(G, H)) == 1


def quotient_map(G: FiniteGroup, H: Subgroup):
    """(G/H, projection list) for a normal subgroup H."""
    if not is_normal(G, H):
        raise GroupError("quotient by a non-normal subgroup")
    coset_of = [None] * G.order
    reps = []
    for g in range(G.order):
        if coset_of[g] is not None:
            continue
        ci = len(reps)
        reps.append(g)
        for h in H.elements:
            coset_of[G.mul(g, h)] = ci
    table = [
        [coset_of[G.mul(reps[a], reps[b])] for b in range(len(reps))]
        for a in range(len(reps))
    ]
    Q = FiniteGroup(table, name=f"{G.name}/H")
    return Q, coset_of


def all_subgroups(G: FiniteGroup):
    """Every subgroup, by closing cyclic seeds under element adjunction."""
    found = {Subgroup.trivial(G).elements: Subgroup.trivial(G)}
    frontier = [Subgroup.trivial(G)]
    while frontier:
        H = frontier.pop()
        for g in range(G.order):
            if g in H:
                continue
            K = Subgroup.generated(G, set(H.elements) | {g})
            if K.elements not in found:
                found[K.elements] = K
                frontier.append(K)
    return sorted(found.values(), key=lambda s: (s.order, s.elements))


# ---------------------------------------------------------------------------
# JSON interface for abstract decomposition data


def group_from_json(doc):
    """{"order": n, "table": [[...]], "D_inf": [...], "D_ell": [...]}"""
    if isinstance(doc, str):
        doc = json.loads(doc)
    n = doc["order"]
    table = doc["table"]
    if len(table) != n:
        raise GroupError("order does not match table size")
    G = FiniteGroup(table, name=doc.get("name", "abstract"))
    d_inf = Subgroup(G, doc["D_inf"])
    d_ell = Subgroup(G, doc["D_ell"])
    return G, d_inf, d_ell
