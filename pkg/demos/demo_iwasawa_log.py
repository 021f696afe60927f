"""
Exploring the Iwasawa logarithm and ell-adic precision
======================================================

The Iwasawa branch of the ell-adic logarithm extends log to all of
Q_ell^x by declaring Log(ell) = 0 and killing roots of unity.  This
script walks through its basic behaviour: values on principal units,
the homomorphism property, Teichmuller projection, and how exact
zeros differ from zeros known only to finite precision.
"""

from fractions import Fraction

from lognorm import PadicNumber, iwasawa_log, padic_exp, teichmuller

ell = 5
N = 12

# the branch conditions: ell itself and every root of unity map to an
# exact zero, not merely something small
for x in [ell, -1, Fraction(1, ell**3), -(ell**2)]:
    v = iwasawa_log(x, ell, N)
    print(f"Log_{ell}({x}) = {v}  (exact zero: {v.is_exact_zero()})")

# a principal unit 1 + 5 has the familiar alternating series
print()
print(f"Log_{ell}(6) =", iwasawa_log(6, ell, N))
acc = Fraction(0)
for k in range(1, 25):
    acc += Fraction((-1) ** (k + 1) * ell**k, k)
print("series     =", PadicNumber.from_rational(acc, ell, N))

# an arbitrary unit u decomposes as omega(u) * <u> with omega the
# Teichmuller lift; Log sees only the principal part <u>
u = PadicNumber.from_rational(3, ell, N)
w = teichmuller(u)
principal = u / w
print()
print("u       =", u)
print("omega(u) =", w, " (a 4th root of unity:", pow(w.unit, 4, ell**N) == 1, ")")
print("Log u   =", iwasawa_log(u, ell, N))
print("Log <u> =", iwasawa_log(principal, ell, N))

# the homomorphism property holds as an exact congruence mod ell^N
x, y = Fraction(7, 3), Fraction(22, 5)
lx, ly, lxy = (iwasawa_log(t, ell, N) for t in (x, y, x * y))
print()
print("Log(xy) - Log(x) - Log(y) =", lxy - lx - ly)

# exp inverts Log on a neighbourhood of 1 (precision drops slightly
# because exp converges more slowly than log)
t = iwasawa_log(1 + ell, ell, N)
back = padic_exp(t, N)
print()
print("exp(Log(1+5)) =", back)
print("agrees with 1+5 mod 5^10:", back.congruent(PadicNumber.from_rational(6, ell, N), 10))
