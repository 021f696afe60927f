"""Exact l-adic arithmetic with tracked finite precision.

Numbers are stored as l^v * u with the unit part u known modulo l^N.
All operations follow the ultrametric precision bookkeeping: a result
never claims more digits than its inputs support.  Zero has a canonical
representation carrying the absolute precision to which it is known
(math.inf for an exact zero).
"""

from __future__ import annotations

import math
from fractions import Fraction

from sympy.ntheory.residue_ntheory import sqrt_mod


class PadicError(ArithmeticError):
    pass


class PrecisionError(PadicError):
    pass


def val_ell(x, ell: int) -> int:
    """Ordinary l-adic valuation of a nonzero rational."""
    x = Fraction(x)
    if x == 0:
        raise PadicError("valuation of zero is infinite")
    v = 0
    num, den = x.numerator, x.denominator
    while num % ell == 0:
        num //= ell
        v += 1
    while den % ell == 0:
        den //= ell
        v -= 1
    return v


class PadicNumber:
    """An element of Q_l known to finite precision.

    Nonzero: value = l^valuation * unit, with unit invertible mod l^prec.
    Zero: valuation is None; zero_prec is the absolute precision to which
    the value is known to vanish (math.inf when it is exactly zero).
    """

    __slots__ = ("prime", "valuation", "unit", "prec", "zero_prec")

    def __init__(self, prime, valuation, unit, prec, zero_prec=None):
        self.prime = prime
        self.valuation = valuation
        self.unit = unit
        self.prec = prec
        self.zero_prec = zero_prec
        if valuation is None:
            assert unit == 0
        else:
            assert prec >= 1 and 0 < unit < prime**prec and unit % prime != 0

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, ell, abs_prec=math.inf):
        return cls(ell, None, 0, 0, zero_prec=abs_prec)

    @classmethod
    def from_rational(cls, x, ell, prec):
        """x as an l-adic number with unit part known mod l^prec (exact input)."""
        x = Fraction(x)
        if prec < 1:
            raise PrecisionError("precision must be >= 1")
        if x == 0:
            return cls.zero(ell)
        v = val_ell(x, ell)
        u = x / Fraction(ell) ** v
        mod = ell**prec
        unit = u.numerator % mod * pow(u.denominator, -1, mod) % mod
        return cls(ell, v, unit, prec)

    # -- predicates --------------------------------------------------

    def is_zero(self):
        """Vanishes to its known precision (exactly zero iff zero_prec is inf)."""
        return self.valuation is None

    def is_exact_zero(self):
        return self.valuation is None and self.zero_prec == math.inf

    @property
    def abs_prec(self):
        """Absolute precision: the value is known modulo l^abs_prec."""
        if self.valuation is None:
            return self.zero_prec
        return self.valuation + self.prec

    def min_valuation(self):
        """A lower bound for the valuation (the valuation itself if nonzero)."""
        if self.valuation is None:
            return self.zero_prec
        return self.valuation

    # -- arithmetic --------------------------------------------------

    def _check(self, other):
        if self.prime != other.prime:
            raise PadicError("mixed primes")

    def __neg__(self):
        if self.is_zero():
            return self
        mod = self.prime**self.prec
        return PadicNumber(self.prime, self.valuation, (-self.unit) % mod, self.prec)

    def __add__(self, other):
        if not isinstance(other, PadicNumber):
            other = PadicNumber.from_rational(other, self.prime, max(self.prec, 1))
        self._check(other)
        if self.is_zero() and other.is_zero():
            return PadicNumber.zero(self.prime, min(self.zero_prec, other.zero_prec))
        if self.is_zero() or other.is_zero():
            z, x = (self, other) if self.is_zero() else (other, self)
            # x known mod l^abs_prec; the hidden part of z may perturb it
            ap = min(z.zero_prec, x.abs_prec)
            if x.valuation >= ap:
                return PadicNumber.zero(self.prime, ap)
            return PadicNumber(
                self.prime,
                x.valuation,
                x.unit % self.prime ** (ap - x.valuation),
                ap - x.valuation,
            )
        a, b = (self, other) if self.valuation <= other.valuation else (other, self)
        d = b.valuation - a.valuation
        m = min(a.prec, d + b.prec)
        if m < 1:
            raise PrecisionError("addition lost all precision")
        mod = self.prime**m
        s = (a.unit + b.unit * self.prime**d) % mod
        if s == 0:
            return PadicNumber.zero(self.prime, a.valuation + m)
        k = 0
        while s % self.prime == 0:
            s //= self.prime
            k += 1
        return PadicNumber(self.prime, a.valuation + k, s % self.prime ** (m - k), m - k)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, PadicNumber):
            other = PadicNumber.from_rational(other, self.prime, max(self.prec, 1))
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if not isinstance(other, PadicNumber):
            other = PadicNumber.from_rational(other, self.prime, max(self.prec, 20))
        self._check(other)
        if self.is_zero() or other.is_zero():
            ap = self.min_valuation() + other.min_valuation()
            return PadicNumber.zero(self.prime, ap)
        prec = min(self.prec, other.prec)
        mod = self.prime**prec
        return PadicNumber(
            self.prime,
            self.valuation + other.valuation,
            self.unit * other.unit % mod,
            prec,
        )

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise PadicError("division by zero")
        mod = self.prime**self.prec
        return PadicNumber(
            self.prime, -self.valuation, pow(self.unit, -1, mod), self.prec
        )

    def __truediv__(self, other):
        if not isinstance(other, PadicNumber):
            other = PadicNumber.from_rational(other, self.prime, max(self.prec, 20))
        return self * other.inverse()

    def __pow__(self, k: int):
        if k == 0:
            return PadicNumber.from_rational(1, self.prime, max(self.prec, 1))
        if k < 0:
            return self.inverse() ** (-k)
        r = self
        for _ in range(k - 1):
            r = r * self
        return r

    # -- precision management ---------------------------------------

    def reduce(self, abs_prec):
        """Truncate to a (lower) absolute precision."""
        if self.is_zero():
            return PadicNumber.zero(self.prime, min(self.zero_prec, abs_prec))
        if abs_prec >= self.abs_prec:
            return self
        if self.valuation >= abs_prec:
            return PadicNumber.zero(self.prime, abs_prec)
        prec = abs_prec - self.valuation
        return PadicNumber(
            self.prime, self.valuation, self.unit % self.prime**prec, prec
        )

    def residue(self, abs_prec: int) -> int:
        """The integer value mod l^abs_prec (requires valuation >= 0)."""
        if self.abs_prec < abs_prec:
            raise PrecisionError(
                f"known only mod l^{self.abs_prec}, asked mod l^{abs_prec}"
            )
        if self.is_zero():
            return 0
        if self.valuation < 0:
            raise PadicError("negative valuation has no integer residue")
        return self.unit * self.prime**self.valuation % self.prime**abs_prec

    def congruent(self, other, abs_prec=None) -> bool:
        """Equality modulo l^abs_prec (default: all shared precision)."""
        if not isinstance(other, PadicNumber):
            other = PadicNumber.from_rational(other, self.prime, max(self.prec, 20))
        d = self - other
        if abs_prec is None:
            return d.is_zero()
        return d.min_valuation() >= abs_prec

    def __repr__(self):
        if self.is_zero():
            if self.zero_prec == math.inf:
                return f"0 (exact, {self.prime}-adic)"
            return f"O({self.prime}^{self.zero_prec})"
        return (
            f"{self.prime}^{self.valuation}*{self.unit} "
            f"+ O({self.prime}^{self.abs_prec})"
        )


def teichmuller(u: PadicNumber, prec=None) -> PadicNumber:
    """The Teichmuller representative congruent to the unit u.

    For odd l it satisfies w^(l-1) = 1 and w = u mod l; for l = 2 it is
    the sign +-1 with w = u mod 4.
    """
    if u.is_zero() or u.valuation != 0:
        raise PadicError("Teichmuller lift needs a unit")
    ell = u.prime
    if prec is None:
        prec = u.prec
    if prec > u.prec:
        raise PrecisionError("input unit is too imprecise")
    mod = ell**prec
    if ell == 2:
        if prec >= 2 and u.unit % 4 == 3:
            return PadicNumber(2, 0, mod - 1, prec)
        return PadicNumber(2, 0, 1, prec)
    x = u.unit % mod
    for _ in range(prec + 1):
        y = pow(x, ell, mod)
        if y == x:
            break
        x = y
    return PadicNumber(ell, 0, x, prec)


def _series_guard(ell, prec):
    # room for the digits lost to divisions by k in log/exp series
    kmax = 2 * prec + 8
    return int(math.log(kmax, ell)) + 3


def iwasawa_log(x, ell: int, prec: int) -> PadicNumber:
    """The Iwasawa logarithm Log_l(x) to absolute precision O(l^prec).

    Defined by Log_l(l) = 0, Log_l(root of unity) = 0 and the usual
    series on principal units.  Accepts nonzero rationals, PadicNumbers
    and split PadicQuadElements.
    """
    if prec < 1:
        raise PrecisionError("precision must be >= 1")
    if isinstance(x, PadicQuadElement):
        x = x.embed()
    work = prec + _series_guard(ell, prec)
    if not isinstance(x, PadicNumber):
        xq = Fraction(x)
        if xq == 0:
            raise PadicError("log of zero")
        if abs(xq) == Fraction(ell) ** val_ell(xq, ell):
            return PadicNumber.zero(ell, math.inf)  # +-l^k: the branch kills it
        x = PadicNumber.from_rational(xq, ell, work)
    elif x.is_zero():
        raise PadicError("log of zero")
    if x.prec < prec:
        raise PrecisionError("input known to fewer digits than requested")
    u = PadicNumber(ell, 0, x.unit, x.prec)  # the Iwasawa branch drops l^v
    w = teichmuller(u)
    y = u / w
    if ell == 2:
        y = y * y  # y is 1 mod 4, y^2 is 1 mod 8: the series converges
    t = y - PadicNumber.from_rational(1, ell, y.prec)
    if t.is_zero():
        if t.is_exact_zero():
            return PadicNumber.zero(ell, math.inf)
        ap = t.zero_prec - (1 if ell == 2 else 0)
        return PadicNumber.zero(ell, min(ap, prec))
    acc = PadicNumber.zero(ell, math.inf)
    power = PadicNumber.from_rational(1, ell, t.prec)
    vt = t.valuation
    k = 0
    while True:
        k += 1
        if k * vt - math.log(k, ell) > prec + 1:
            break
        power = power * t
        term = power / PadicNumber.from_rational(k, ell, power.prec)
        if k % 2 == 0:
            term = -term
        acc = acc + term
    if ell == 2:
        acc = acc / PadicNumber.from_rational(2, 2, max(acc.prec, 4))
    return acc.reduce(prec)


def padic_exp(t: PadicNumber, prec: int) -> PadicNumber:
    """exp(t) for val(t) > 1/(l-1); used for log round-trip checks."""
    ell = t.prime
    need = 2 if ell == 2 else 1
    if t.is_zero():
        return PadicNumber.from_rational(1, ell, prec)
    if t.valuation < need:
        raise PadicError("exp does not converge at this valuation")
    acc = PadicNumber.from_rational(1, ell, t.prec)
    term = PadicNumber.from_rational(1, ell, t.prec)
    k = 0
    while True:
        k += 1
        if k * t.valuation - k / (ell - 1) > prec + 1:
            break
        term = term * t / PadicNumber.from_rational(k, ell, t.prec)
        acc = acc + term
    return acc.reduce(prec)


def hensel_sqrt(a: int, ell: int, prec: int):
    """A square root of a to O(l^prec), or None if a is a non-residue.

    Requires gcd(a, l) = 1; for l = 2 only a = 1 mod 8 is liftable.
    """
    if a % ell == 0:
        raise PadicError("hensel_sqrt needs a unit radicand")
    mod = ell**prec
    if ell == 2:
        if a % min(8, mod) != 1 % min(8, mod):
            return None
        r = 1
        k = 3
        while k < prec:
            if (r * r - a) % (2 ** (k + 1)):
                r += 2 ** (k - 1)
            k += 1
        r %= mod
        if (r * r - a) % mod:
            return None
        return PadicNumber(2, 0, r, prec)
    r0 = sqrt_mod(a % ell, ell)
    if r0 is None or (r0 * r0 - a) % ell:
        return None
    r = r0
    k = 1
    while k < prec:
        k = min(2 * k, prec)
        m = ell**k
        r = (r + a * pow(r, -1, m)) * pow(2, -1, m) % m
    assert (r * r - a) % mod == 0
    return PadicNumber(ell, 0, r % mod, prec)


class PadicQuadElement:
    """a + b*sqrt(d) in Q_l(sqrt(d)), with the root lifted when it exists.

    When split_flag is set, sqrt(d) lies in Q_l and the element is read
    through one of the two embeddings (root vs -root).
    """

    __slots__ = ("a", "b", "d", "root", "sign")

    def __init__(self, a: PadicNumber, b: PadicNumber, d: int, root=None, sign=1):
        self.a = a
        self.b = b
        self.d = d
        self.root = root
        self.sign = sign

    @classmethod
    def from_rationals(cls, a, b, d, ell, prec, split=False, sign=1):
        pa = PadicNumber.from_rational(a, ell, prec)
        pb = PadicNumber.from_rational(b, ell, prec)
        root = None
        if split:
            root = hensel_sqrt(d, ell, prec)
            if root is None:
                raise PadicError(f"{d} is not a square in Q_{ell}")
        return cls(pa, pb, d, root=root, sign=sign)

    @property
    def split_flag(self):
        return self.root is not None

    def embed(self) -> PadicNumber:
        if self.root is None:
            raise PadicError("element lives in a genuine quadratic extension")
        r = self.root if self.sign == 1 else -self.root
        return self.a + self.b * r

    def conjugate_embed(self) -> PadicNumber:
        if self.root is None:
            raise PadicError("element lives in a genuine quadratic extension")
        r = self.root if self.sign == 1 else -self.root
        return self.a - self.b * r

    def norm_form(self) -> PadicNumber:
        return self.a * self.a - self.b * self.b * self.d


def local_norm_quad(x: PadicQuadElement) -> PadicNumber:
    """Local norm to Q_l at one place over l of Q(sqrt(d)).

    Inert or ramified: the norm form a^2 - d b^2.  Split: the embedding
    selected by the place; the two split values multiply to the norm form.
    """
    if x.a.is_zero() and x.b.is_zero():
        raise PadicError("norm of zero")
    if x.split_flag:
        return x.embed()
    return x.norm_form()


class PadicMatrix:
    """A rows x cols matrix of PadicNumbers at a common working precision."""

    def __init__(self, entries, precision=None):
        if not entries or not entries[0]:
            raise PadicError("empty matrix")
        self.entries = [list(row) for row in entries]
        primes = {e.prime for row in self.entries for e in row}
        if len(primes) != 1:
            raise PadicError("mixed primes in matrix")
        self.prime = primes.pop()
        ap = min(e.abs_prec for row in self.entries for e in row)
        if precision is None:
            precision = ap
        self.precision = min(precision, ap)
        if self.precision == math.inf:
            self.precision = max(
                (e.abs_prec for row in self.entries for e in row if e.abs_prec != math.inf),
                default=20,
            )

    @property
    def shape(self):
        return len(self.entries), len(self.entries[0])


def padic_matrix_rank(M: PadicMatrix, guard: int = 2):
    """Rank over Q_l by elimination, pivoting on minimal valuation.

    Entries indistinguishable from 0 below the guarded precision are
    treated as zero; returns (rank, ambiguous) where ambiguous reports
    whether any such uncertain entry occurred.
    """
    rows, cols = M.shape
    thresh = M.precision - guard
    if thresh < 1:
        raise PrecisionError("guard exceeds working precision")
    A = [row[:] for row in M.entries]
    alive_r = list(range(rows))
    alive_c = list(range(cols))
    rank = 0
    while alive_r and alive_c:
        best = None
        for i in alive_r:
            for j in alive_c:
                e = A[i][j]
                if e.is_zero() or e.valuation >= thresh:
                    continue
                if best is None or e.valuation < A[best[0]][best[1]].valuation:
                    best = (i, j)
        if best is None:
            break
        pi, pj = best
        piv = A[pi][pj]
        for i in alive_r:
            if i == pi:
                continue
            if A[i][pj].is_zero():
                continue
            f = A[i][pj] / piv
            for j in alive_c:
                A[i][j] = A[i][j] - f * A[pi][j]
        alive_r.remove(pi)
        alive_c.remove(pj)
        rank += 1
    # A leftover entry is suspicious when it is detectably nonzero above
    # the threshold, or when cancellation ate its precision below it.  A
    # finite-precision zero still known past the threshold is accepted:
    # that is the inherent resolution of the working precision.
    ambiguous = False
    for i in alive_r:
        for j in alive_c:
            e = A[i][j]
            if e.is_zero():
                if e.zero_prec < thresh:
                    ambiguous = True
            elif e.valuation >= thresh:
                ambiguous = True
    return rank, ambiguous
