"""Concrete number fields and the brute-force kernel oracle.

Supported fields: the rationals, quadratic fields Q(sqrt(d)), biquadratic
fields Q(sqrt(d1), sqrt(d2)), cyclotomic fields Q(zeta_n) with l
unramified, and abstract Galois decomposition data loaded from JSON.

The oracle assembles generators of the l-unit group (fundamental units
plus principal-power generators of the l-places), evaluates every
logarithmic valuation at the places over l, and counts the integer
relations among the generators that land in the kernel.  Relations are
recovered from an l-adic relation lattice by LLL reduction; the working
precision is scaled so that the lattice's noise floor sits far above the
coefficient sizes of genuine relations, which keeps the accept/reject
margin astronomically wide.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from mpmath import mp, mpf, sqrt as mpsqrt, cbrt
from sympy import ZZ, factorint, isprime
from sympy.polys.matrices import DomainMatrix

from .groups import FiniteGroup, Subgroup, cyclic_group, direct_product, group_from_json, unit_group_mod
from .padic import (
    PadicError,
    PadicNumber,
    PadicMatrix,
    hensel_sqrt,
    iwasawa_log,
    val_ell,
)

CORPUS_CAP = 200
DEFAULT_PRECISION = 12
COEFF_BOUND = 10**5
GRAY_FACTOR = 100


class FieldError(ValueError):
    pass


class SpecParseError(FieldError):
    pass


class UnsupportedFieldError(FieldError):
    pass


class AmbiguityError(FieldError):
    pass


# ---------------------------------------------------------------------------
# field specifications


def squarefree_part(n: int):
    """(squarefree kernel s, cofactor c) with n = s * c^2, sign on s."""
    if n == 0:
        raise FieldError("zero radicand")
    s, c = (1 if n > 0 else -1), 1
    for p, e in factorint(abs(n)).items():
        if e % 2:
            s *= p
        c *= p ** (e // 2)
    return s, c


def is_squarefree(n: int) -> bool:
    return abs(n) > 0 and squarefree_part(n)[1] == 1


@dataclass(frozen=True)
class FieldSpec:
    kind: str  # rational | quadratic | biquadratic | cyclotomic | abstract
    d: int | None = None
    d1: int | None = None
    d2: int | None = None
    n: int | None = None
    abstract: tuple | None = None  # (G, D_inf, D_ell)

    def label(self) -> str:
        if self.kind == "rational":
            return "Q"
        if self.kind == "quadratic":
            return f"q:{self.d}"
        if self.kind == "biquadratic":
            return f"bq:{self.d1},{self.d2}"
        if self.kind == "cyclotomic":
            return f"cyc:{self.n}"
        return f"abs:order{self.abstract[0].order}"

    def degree(self) -> int:
        if self.kind == "rational":
            return 1
        if self.kind == "quadratic":
            return 2
        if self.kind == "biquadratic":
            return 4
        if self.kind == "cyclotomic":
            return sum(1 for a in range(1, self.n) if gcd(a, self.n) == 1)
        return self.abstract[0].order


def rational_spec() -> FieldSpec:
    return FieldSpec("rational")


def quadratic_spec(d: int) -> FieldSpec:
    if d == 1:
        return rational_spec()
    if not is_squarefree(d):
        raise SpecParseError(f"radicand {d} is not squarefree")
    return FieldSpec("quadratic", d=d)


def biquadratic_spec(d1: int, d2: int) -> FieldSpec:
    for d in (d1, d2):
        if d == 1 or not is_squarefree(d):
            raise SpecParseError(f"radicand {d} is not a valid quadratic radicand")
    if d1 == d2 or squarefree_part(d1 * d2)[0] == 1:
        raise SpecParseError("biquadratic radicands must be independent mod squares")
    return FieldSpec("biquadratic", d1=d1, d2=d2)


def cyclotomic_spec(n: int) -> FieldSpec:
    if n < 3:
        raise SpecParseError("cyclotomic index must be >= 3")
    return FieldSpec("cyclotomic", n=n)


def parse_spec(text: str) -> FieldSpec:
    s = text.strip()
    if s in ("Q", "q:1", "rational"):
        return rational_spec()
    try:
        if s.startswith("q:"):
            return quadratic_spec(int(s[2:]))
        if s.startswith("bq:"):
            a, b = s[3:].split(",")
            return biquadratic_spec(int(a), int(b))
        if s.startswith("cyc:"):
            return cyclotomic_spec(int(s[4:]))
        if s.startswith("abs:"):
            with open(s[4:]) as fh:
                doc = json.load(fh)
            G, d_inf, d_ell = group_from_json(doc)
            return FieldSpec("abstract", abstract=(G, d_inf, d_ell))
    except FieldError:
        raise
    except (ValueError, OSError, KeyError) as exc:
        raise SpecParseError(f"cannot parse field spec {text!r}: {exc}") from exc
    raise SpecParseError(f"unrecognized field spec {text!r}")


# ---------------------------------------------------------------------------
# quadratic field elements


@dataclass(frozen=True)
class QuadElement:
    """(a + b*sqrt(d)) with rational a, b; d fixed per element."""

    a: Fraction
    b: Fraction
    d: int

    @classmethod
    def make(cls, a, b, d):
        return cls(Fraction(a), Fraction(b), d)

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def conj(self):
        return QuadElement(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def mul(self, other: "QuadElement") -> "QuadElement":
        if self.d != other.d:
            raise FieldError("elements of different quadratic fields")
        return QuadElement(
            self.a * other.a + self.d * self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.d,
        )

    def pow(self, k: int) -> "QuadElement":
        r = QuadElement.make(1, 0, self.d)
        x = self
        if k < 0:
            n = self.norm()
            x = QuadElement(self.conj().a / n, self.conj().b / n, self.d)
            k = -k
        for _ in range(k):
            r = r.mul(x)
        return r

    def approx(self) -> mpf:
        return mpf(self.a.numerator) / self.a.denominator + (
            mpf(self.b.numerator) / self.b.denominator
        ) * mpsqrt(mpf(self.d))

    def __repr__(self):
        return f"({self.a} + {self.b}*sqrt({self.d}))"


def discriminant(d: int) -> int:
    return d if d % 4 == 1 else 4 * d


def kronecker_disc(D: int, p: int) -> int:
    """Kronecker symbol (D/p) for a fundamental discriminant D, p prime."""
    if D % p == 0:
        return 0
    if p == 2:
        return 1 if D % 8 == 1 else -1
    return 1 if pow(D % p, (p - 1) // 2, p) == 1 else -1


def splitting_type(d: int, ell: int) -> tuple[str, int, int]:
    """("split"|"inert"|"ramified", e, f) for ell in Q(sqrt(d))."""
    D = discriminant(d)
    s = kronecker_disc(D, ell)
    if s == 0:
        return "ramified", 2, 1
    if s == 1:
        return "split", 1, 1
    return "inert", 1, 2


# ---------------------------------------------------------------------------
# units, class numbers, l-place generators


def fundamental_unit(d: int) -> QuadElement:
    """The fundamental unit > 1 of the ring of integers of Q(sqrt(d)).

    The continued fraction of sqrt(d) yields the fundamental solution of
    x^2 - d y^2 = +-1 (the fundamental unit of Z[sqrt(d)]); for
    d = 1 mod 4 a cube root in the maximal order is then extracted when
    it exists, verified exactly.
    """
    if d <= 1 or not is_squarefree(d):
        raise FieldError("need a squarefree radicand > 1")
    a0 = isqrt(d)
    m, q, a = 0, 1, a0
    p_prev, p_cur = 1, a0
    q_prev, q_cur = 0, 1
    while p_cur * p_cur - d * q_cur * q_cur not in (1, -1):
        m = a * q - m
        q = (d - m * m) // q
        a = (a0 + m) // q
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
    u = QuadElement.make(p_cur, q_cur, d)
    if d % 4 != 1:
        return u
    # the maximal order Z[(1+sqrt(d))/2] may contain a cube root of u
    mp.prec = max(80, 3 * int(mp.log(u.approx(), 2)) + 80)
    c = cbrt(u.approx())
    n3 = 1 if u.norm() == 1 else -1
    x = int(mp.nint(c + n3 / c))
    y = int(mp.nint((c - n3 / c) / mpsqrt(mpf(d))))
    cand = QuadElement(Fraction(x, 2), Fraction(y, 2), d)
    if x % 2 == y % 2 and cand.norm() in (1, -1) and cand.pow(3) == u:
        return cand
    return u


def torsion_order(d: int) -> int:
    if d == -1:
        return 4
    if d == -3:
        return 6
    return 2


def _reduced_imaginary_forms(D: int):
    count = 0
    amax = isqrt(-D // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a:
                continue
            if a == c and b < 0:
                continue
            count += 1
    return count


def _rho_indefinite(form, D, sq):
    a, b, c = form
    t = 2 * abs(c)
    b2 = (-b) % t
    while not (sq - t < b2 < sq + 1):
        b2 += t
    while b2 > sq:
        b2 -= t
    c2 = (b2 * b2 - D) // (4 * c)
    return (c, b2, c2)


def _narrow_class_number_real(D: int) -> int:
    sq = isqrt(D)
    forms = set()
    for b in range(1, sq + 1):
        if (b - D) % 2:
            continue
        lo, hi = sq - b, sq + b
        for twoa in range(lo + 1, hi):
            if twoa == 0 or twoa % 2:
                continue
            for a in (twoa // 2, -twoa // 2):
                if (b * b - D) % (4 * a):
                    continue
                forms.add((a, b, (b * b - D) // (4 * a)))
    cycles = 0
    seen = set()
    for f in sorted(forms):
        if f in seen:
            continue
        cycles += 1
        g = f
        while g not in seen:
            seen.add(g)
            g = _rho_indefinite(g, D, sq)
            if g not in forms:
                raise FieldError("reduction left the reduced set")
    return cycles


def class_number(d: int) -> int:
    if d == 1 or not is_squarefree(d):
        raise FieldError("need a squarefree radicand != 1")
    D = discriminant(d)
    if d < 0:
        return _reduced_imaginary_forms(D)
    hplus = _narrow_class_number_real(D)
    if fundamental_unit(d).norm() == -1:
        return hplus
    assert hplus % 2 == 0
    return hplus // 2


def _norm_element_search(d: int, n: int):
    """Yield integral elements of Q(sqrt(d)) of norm +-n.

    Searches y in the provably sufficient window; for d = 1 mod 4 the
    half-integer basis doubles the target norm.
    """
    targets = [(1, n)] if d % 4 != 1 else [(1, n), (2, 4 * n)]
    if d > 0:
        eps = fundamental_unit(d).approx()
    for denom, t in targets:
        if d < 0:
            ymax = isqrt(t // -d) + 1
        else:
            ymax = int(mpsqrt(t * (eps + 2) / d)) + 2
        for y in range(ymax + 1):
            for s in (1, -1) if d > 0 else (1,):
                x2 = d * y * y + s * t
                if x2 < 0:
                    continue
                x = isqrt(x2)
                if x * x != x2:
                    continue
                if denom == 2 and x % 2 != y % 2:
                    continue
                yield QuadElement(Fraction(x, denom), Fraction(y, denom), d)


def _place_valuations(alpha: QuadElement, ell: int, root: PadicNumber):
    """Ordinary valuations of alpha at the two split places (root, -root)."""
    vals = []
    for sign in (1, -1):
        r = root if sign == 1 else -root
        emb = PadicNumber.from_rational(alpha.a, ell, root.prec) + PadicNumber.from_rational(alpha.b, ell, root.prec) * r
        vals.append(emb.min_valuation())
    return vals


def principal_power_generator(d: int, ell: int):
    """(h', alpha) with (alpha) = p^h', p a chosen place over ell.

    h' is the minimal divisor of the class number h for which the power
    is principal.  Inert: alpha = ell.  Split: the place fixed by the
    convention sqrt(d) -> +root, with val profile (h', 0).
    """
    kind, _, _ = splitting_type(d, ell)
    if kind == "inert":
        return 1, QuadElement.make(ell, 0, d)
    if kind == "ramified":
        for alpha in _norm_element_search(d, ell):
            return 1, alpha
        return 2, QuadElement.make(ell, 0, d)
    h = class_number(d)
    root = hensel_sqrt(d, ell, 24)
    for j in sorted(k for k in range(1, h + 1) if h % k == 0):
        for alpha in _norm_element_search(d, ell**j):
            v1, v2 = _place_valuations(alpha, ell, root)
            if v1 > 0 and v2 > 0:
                continue  # divisible by ell: not a clean place power
            if v2 == j and v1 == 0:
                alpha = alpha.conj()
                v1, v2 = v2, v1
            if v1 == j and v2 == 0:
                return j, alpha
    raise FieldError(f"no principal power generator found for d={d}, ell={ell}")


# ---------------------------------------------------------------------------
# decomposition data


@dataclass(frozen=True)
class DecompositionData:
    group: FiniteGroup
    d_inf: Subgroup
    d_ell: Subgroup
    r: int
    c: int
    l: int
    e: int | None
    f: int | None

    def check(self, degree: int):
        assert self.r + 2 * self.c == degree
        if self.e is not None:
            assert self.e * self.f * self.l == degree
        assert self.l == self.group.order // self.d_ell.order


def _biquadratic_radicands(d1: int, d2: int):
    d3, cof = squarefree_part(d1 * d2)
    return d3, cof


def decomposition_data(spec: FieldSpec, ell: int) -> DecompositionData:
    if not isprime(ell):
        raise FieldError(f"{ell} is not prime")
    if spec.kind == "rational":
        G = cyclic_group(1)
        t = Subgroup.trivial(G)
        data = DecompositionData(G, t, t, 1, 0, 1, 1, 1)
    elif spec.kind == "quadratic":
        d = spec.d
        G = cyclic_group(2)
        kind, e, f = splitting_type(d, ell)
        d_inf = Subgroup.full(G) if d < 0 else Subgroup.trivial(G)
        d_ell = Subgroup.trivial(G) if kind == "split" else Subgroup.full(G)
        r, c = (2, 0) if d > 0 else (0, 1)
        data = DecompositionData(G, d_inf, d_ell, r, c, G.order // d_ell.order, e, f)
    elif spec.kind == "cyclotomic":
        n = spec.n
        if gcd(n, ell) > 1:
            raise UnsupportedFieldError(
                f"ell = {ell} ramifies in the {n}-th cyclotomic field"
            )
        G = unit_group_mod(n)
        residues = list(G.labels)
        g_ell = residues.index(ell % n)
        g_conj = residues.index(n - 1)
        d_ell = Subgroup.generated(G, [g_ell])
        d_inf = Subgroup.generated(G, [g_conj])
        f = G.element_order(g_ell)
        data = DecompositionData(
            G, d_inf, d_ell, 0, G.order // 2, G.order // d_ell.order, 1, f
        )
    elif spec.kind == "biquadratic":
        d1, d2 = spec.d1, spec.d2
        d3, _ = _biquadratic_radicands(d1, d2)
        G = direct_product(cyclic_group(2), cyclic_group(2))
        # g = 2a + b acts by sqrt(d1) -> (-1)^a, sqrt(d2) -> (-1)^b
        chars = {1: lambda g: (-1) ** (g >> 1), 2: lambda g: (-1) ** (g & 1), 3: lambda g: (-1) ** ((g >> 1) + (g & 1))}
        rads = {1: d1, 2: d2, 3: d3}
        unram = [i for i in (1, 2, 3) if splitting_type(rads[i], ell)[0] != "ramified"]
        split = [i for i in unram if splitting_type(rads[i], ell)[0] == "split"]
        inertia = [g for g in range(4) if all(chars[i](g) == 1 for i in unram)]
        dec = [g for g in range(4) if all(chars[i](g) == 1 for i in split)]
        d_ell = Subgroup(G, dec)
        e = len(inertia)
        f = len(dec) // e
        a_inf = 1 if d1 < 0 else 0
        b_inf = 1 if d2 < 0 else 0
        d_inf = Subgroup.generated(G, [2 * a_inf + b_inf])
        r, c = (4, 0) if d1 > 0 and d2 > 0 else (0, 2)
        data = DecompositionData(G, d_inf, d_ell, r, c, 4 // len(dec), e, f)
    elif spec.kind == "abstract":
        G, d_inf, d_ell = spec.abstract
        if d_inf.order > 2:
            raise UnsupportedFieldError("infinite place of order > 2")
        r = G.order if d_inf.order == 1 else 0
        c = 0 if d_inf.order == 1 else G.order // 2
        data = DecompositionData(G, d_inf, d_ell, r, c, G.order // d_ell.order, None, None)
    else:
        raise UnsupportedFieldError(f"unknown spec kind {spec.kind}")
    data.check(spec.degree())
    return data


# ---------------------------------------------------------------------------
# logarithmic valuations


@dataclass(frozen=True)
class Place:
    p: int
    index: int  # 0, or 1 for the second split place
    e: int
    f: int


def places_above(d: int, p: int):
    kind, e, f = splitting_type(d, p)
    if kind == "split":
        return [Place(p, 0, 1, 1), Place(p, 1, 1, 1)]
    return [Place(p, 0, e, f)]


def log_valuation(x: QuadElement, place: Place, ell: int, N: int):
    """nu~ at one place: the ordinary valuation away from ell, minus the
    Iwasawa log of the local norm at a place over ell."""
    if x.is_zero():
        raise FieldError("valuation of zero")
    p = place.p
    if p != ell:
        vN = val_ell(x.norm(), p)
        if place.e == 2:
            return vN
        if place.f == 2:
            assert vN % 2 == 0
            return vN // 2
        root = hensel_sqrt(x.d, p, vN + 4)
        r = root if place.index == 0 else -root
        emb = (
            PadicNumber.from_rational(x.a, p, vN + 4)
            + PadicNumber.from_rational(x.b, p, vN + 4) * r
        )
        v = emb.min_valuation()
        assert v != math.inf
        return v
    kind, _, _ = splitting_type(x.d, ell)
    if kind == "split":
        # pad by the norm valuation so the embedding keeps N relative digits
        pad = N + 8 + max(0, val_ell(x.norm(), ell))
        root = hensel_sqrt(x.d, ell, pad)
        r = root if place.index == 0 else -root
        emb = (
            PadicNumber.from_rational(x.a, ell, pad)
            + PadicNumber.from_rational(x.b, ell, pad) * r
        )
        return -iwasawa_log(emb, ell, N)
    return -iwasawa_log(x.norm(), ell, N)


def product_formula_residual(x, ell: int, N: int) -> PadicNumber:
    """Sum of all logarithmic valuations weighted as degree-zero idele
    components; vanishes identically for nonzero field elements."""
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        if x == 0:
            raise FieldError("zero element")
        acc = PadicNumber.zero(ell, math.inf)
        for p in factorint(abs(x.numerator * x.denominator)).keys():
            if p == ell:
                continue
            acc = acc + val_ell(x, p) * iwasawa_log(p, ell, N)
        return (acc - iwasawa_log(x, ell, N)).reduce(N)
    if x.is_zero():
        raise FieldError("zero element")
    n = x.norm()
    acc = PadicNumber.zero(ell, math.inf)
    for p in factorint(abs(n.numerator * n.denominator)).keys():
        if p == ell:
            continue
        for place in places_above(x.d, p):
            acc = acc + place.f * log_valuation(x, place, ell, N) * iwasawa_log(
                p, ell, N
            )
    for place in places_above(x.d, ell):
        acc = acc + log_valuation(x, place, ell, N)
    return acc.reduce(N)


# ---------------------------------------------------------------------------
# the kernel oracle


def _lattice_precision(ell: int, N: int) -> int:
    # enough l-adic digits that lattice noise (~ l^(V/2)) towers over the
    # coefficient bound of genuine relations
    return max(2 * N, math.ceil(64 / math.log2(ell)) + 8)


def _log_embed(x: QuadElement, ell: int, sign: int, root: PadicNumber, V: int):
    """-Log_l of the split-place embedding of x, to O(l^V)."""
    r = root if sign == 1 else -root
    emb = (
        PadicNumber.from_rational(x.a, ell, V + 8)
        + PadicNumber.from_rational(x.b, ell, V + 8) * r
    )
    return -iwasawa_log(emb, ell, V)


def _relation_count(rows, ell: int, V: int):
    """(relations, ambiguous) for integer relations among the rows.

    rows: list of lists of PadicNumber, each entry known to O(l^V).
    Exact-zero rows are counted directly; the rest feed an l-adic
    relation lattice, LLL-reduced; reduced vectors below COEFF_BOUND are
    genuine relations, anything in the gray zone flags ambiguity.
    """
    exact = [r for r in rows if all(e.is_exact_zero() for e in r)]
    live = [r for r in rows if not all(e.is_exact_zero() for e in r)]
    count = len(exact)
    if not live:
        return count, False
    ambiguous = any(
        e.is_zero() and e.zero_prec < V for r in live for e in r
    )
    mod = ell**V
    m = len(live)
    A = [[e.residue(V) for e in r] for r in live]
    basis = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    for c in range(len(A[0])):
        imgs = [sum(b[k] * A[k][c] for k in range(m)) % mod for b in basis]
        vals = [val_ell(im, ell) if im else V for im in imgs]
        a = min(vals)
        if a >= V:
            continue
        p = vals.index(a)
        ua = imgs[p] // ell**a
        inv = pow(ua, -1, ell ** (V - a))
        new_basis = []
        for j in range(m):
            if j == p:
                continue
            coef = imgs[j] // ell**a * inv % ell ** (V - a)
            new_basis.append([basis[j][k] - coef * basis[p][k] for k in range(m)])
        new_basis.append([ell ** (V - a) * basis[p][k] for k in range(m)])
        basis = new_basis
    dm = DomainMatrix([[ZZ(x) for x in b] for b in basis], (m, m), ZZ)
    reduced = dm.lll().to_list()
    accepted = 0
    for v in reduced:
        norm = max(abs(int(x)) for x in v)
        if norm <= COEFF_BOUND:
            accepted += 1
        elif norm <= COEFF_BOUND * GRAY_FACTOR:
            ambiguous = True
    return count + accepted, ambiguous


def _quadratic_rows(d: int, ell: int, V: int):
    kind, _, _ = splitting_type(d, ell)
    hprime, alpha = principal_power_generator(d, ell)
    gens = []
    if d > 0:
        gens.append(fundamental_unit(d))
    gens.append(alpha)
    if kind == "split":
        gens.append(alpha.conj())
        root = hensel_sqrt(d, ell, V + 8)
        rows = [
            [_log_embed(g, ell, 1, root, V), _log_embed(g, ell, -1, root, V)]
            for g in gens
        ]
    else:
        rows = [[-iwasawa_log(g.norm(), ell, V)] for g in gens]
    return rows, len(gens)


def _biquadratic_rows(d1: int, d2: int, ell: int, V: int):
    d3, cof = _biquadratic_radicands(d1, d2)
    dd = decomposition_data(biquadratic_spec(d1, d2), ell)
    dec = set(dd.d_ell.elements)
    # K-places over ell <-> cosets of the decomposition group
    reps = []
    seen = set()
    for g in range(4):
        if g in seen:
            continue
        reps.append(g)
        seen |= {dd.group.mul(g, h) for h in dec}
    sgn = {
        1: lambda g: (-1) ** (g >> 1),
        2: lambda g: (-1) ** (g & 1),
        3: lambda g: (-1) ** ((g >> 1) + (g & 1)),
    }
    subgroup_h = {1: {0, 1}, 2: {0, 2}, 3: {0, 3}}  # kernels of the sign maps
    rads = {1: d1, 2: d2, 3: d3}
    # split subfields need consistent l-adic roots: R3 = R1*R2/cof when
    # all three split
    kinds = {i: splitting_type(rads[i], ell)[0] for i in (1, 2, 3)}
    roots = {}
    for i in (1, 2, 3):
        if kinds[i] == "split":
            roots[i] = hensel_sqrt(rads[i], ell, V + 8)
    if all(kinds[i] == "split" for i in (1, 2, 3)):
        roots[3] = roots[1] * roots[2] / PadicNumber.from_rational(cof, ell, V + 8)
    inertia_set = {
        g
        for g in range(4)
        if all(sgn[j](g) == 1 for j in (1, 2, 3) if kinds[j] != "ramified")
    }
    rows = []
    divisors = []
    ngens = 0
    for i in (1, 2, 3):
        d_i = rads[i]
        local_mult = len(dec & subgroup_h[i])
        if d_i > 0:
            eps = fundamental_unit(d_i)
            if kinds[i] == "split":
                row = [
                    local_mult * _log_embed(eps, ell, sgn[i](g), roots[i], V)
                    for g in reps
                ]
            else:
                row = [local_mult * -iwasawa_log(eps.norm(), ell, V) for g in reps]
            rows.append(row)
            ngens += 1
        hprime, alpha = principal_power_generator(d_i, ell)
        sub_alphas = [alpha]
        if kinds[i] == "split":
            sub_alphas.append(alpha.conj())
        for which, al in enumerate(sub_alphas):
            # divisor of al over the K-places: e(P/q) * h' at places over
            # its subfield place (selected by the sign of g on sqrt(d_i)
            # when that subfield is split), 0 elsewhere
            e_rel = len(inertia_set & subgroup_h[i])
            div = []
            for g in reps:
                if kinds[i] == "split":
                    over = (sgn[i](g) == 1) == (which == 0)
                else:
                    over = True
                div.append(e_rel * hprime if over else 0)
            cand = divisors + [div]
            M = DomainMatrix([[ZZ(x) for x in r] for r in cand], (len(cand), len(reps)), ZZ)
            if M.rank() < len(cand):
                continue
            divisors.append(div)
            if kinds[i] == "split":
                row = [
                    local_mult * _log_embed(al, ell, sgn[i](g), roots[i], V)
                    for g in reps
                ]
            else:
                row = [local_mult * -iwasawa_log(al.norm(), ell, V) for g in reps]
            rows.append(row)
            ngens += 1
    if len(divisors) != len(reps):
        raise FieldError("sub-field places do not span the divisor group")
    return rows, ngens


def naive_rank_oracle(spec: FieldSpec, ell: int, N: int = DEFAULT_PRECISION):
    """Brute-force rank of the naive cyclotomic norm group.

    Generators of the l-units (up to finite index) are evaluated under
    every logarithmic valuation at the places over l; the rank is the
    number of independent integer relations, i.e. the kernel dimension.
    """
    if not isprime(ell):
        raise FieldError(f"{ell} is not prime")
    if spec.kind == "rational":
        return 1, False
    V = _lattice_precision(ell, N)
    if spec.kind == "quadratic":
        rows, ngens = _quadratic_rows(spec.d, ell, V)
    elif spec.kind == "biquadratic":
        rows, ngens = _biquadratic_rows(spec.d1, spec.d2, ell, V)
    else:
        raise UnsupportedFieldError(f"no oracle for {spec.kind} fields")
    rank, ambiguous = _relation_count(rows, ell, V)
    dd = decomposition_data(spec, ell)
    if not (1 <= rank <= dd.r + dd.c + dd.l - 1):
        ambiguous = True
    return rank, ambiguous


def naive_rank_oracle_retry(spec: FieldSpec, ell: int, N: int = DEFAULT_PRECISION):
    """Oracle with one precision doubling on ambiguity; raises if the
    doubled run is still ambiguous."""
    rank, ambiguous = naive_rank_oracle(spec, ell, N)
    if ambiguous:
        rank, ambiguous = naive_rank_oracle(spec, ell, 2 * N)
        if ambiguous:
            raise AmbiguityError(
                f"oracle ambiguous for {spec.label()} at ell={ell} even at 2N={2*N}"
            )
    return rank


def oracle_matrix(spec: FieldSpec, ell: int, N: int = DEFAULT_PRECISION) -> PadicMatrix:
    """The matrix of logarithmic valuations fed to the oracle, exposed
    for rank-over-Q_l cross checks."""
    V = _lattice_precision(ell, N)
    if spec.kind == "quadratic":
        rows, _ = _quadratic_rows(spec.d, ell, V)
    elif spec.kind == "biquadratic":
        rows, _ = _biquadratic_rows(spec.d1, spec.d2, ell, V)
    else:
        raise UnsupportedFieldError(f"no oracle matrix for {spec.kind} fields")
    return PadicMatrix(rows)


def squarefree_radicands(dmax: int):
    """Corpus radicands: squarefree d with 2 <= |d| <= dmax, both signs."""
    if dmax > CORPUS_CAP:
        raise FieldError(f"corpus cap is {CORPUS_CAP}")
    out = [-1] if dmax >= 1 else []
    for a in range(2, dmax + 1):
        if is_squarefree(a):
            out.extend([a, -a])
    return sorted(out, key=lambda d: (abs(d), d < 0))
