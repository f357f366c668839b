"""Exact scalar arithmetic: rationals, univariate rational polynomials,
binomial coefficients and Bernoulli numbers.

Every quantity in this package is either one of these or is built from
them; no floating point enters except in the dedicated numeric backend.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

# The universal exact scalar.  fractions.Fraction already guarantees the
# canonical form we need: lowest terms, positive denominator, no rounding.
Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def binomial(n: int, k: int) -> int:
    """Binomial coefficient C(n, k), extended to negative n.

    Returns 0 for k < 0 and for 0 <= n < k.  For n < 0 uses the
    polynomial extension C(n, k) = n(n-1)...(n-k+1)/k!.
    """
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k) if k <= n else 0
    num = 1
    for i in range(k):
        num *= n - i
    return num // math.factorial(k)


def binom_convolution(n: int, m: int) -> int:
    """Sum of C(n-a-1, b) * C(n-b-1, a) over a, b >= 0 with a + b = m.

    Requires n > m >= 0.  The closed form of this sum is C(2n-m-1, m),
    which is asserted as an invariant in the test suite.
    """
    if not n > m >= 0:
        raise ValueError(f"binom_convolution requires n > m >= 0, got n={n}, m={m}")
    return sum(binomial(n - a - 1, m - a) * binomial(n - m + a - 1, a) for a in range(m + 1))


_bernoulli_cache: list[Fraction] = [ONE]
_bernoulli_lock = threading.Lock()


def bernoulli(k: int) -> Fraction:
    """k-th Bernoulli number with the convention B_1 = -1/2.

    Computed by the defining recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0
    for m >= 1, solved for B_m.  Values are cached; the cache supports
    concurrent reads and serialized extension.
    """
    if k < 0:
        raise ValueError("bernoulli is defined for k >= 0")
    if k < len(_bernoulli_cache):
        return _bernoulli_cache[k]
    with _bernoulli_lock:
        while len(_bernoulli_cache) <= k:
            m = len(_bernoulli_cache)
            acc = sum(
                (binomial(m + 1, j) * b for j, b in enumerate(_bernoulli_cache)),
                ZERO,
            )
            _bernoulli_cache.append(-acc / (m + 1))
    return _bernoulli_cache[k]


class RatPoly:
    """Dense univariate polynomial over the rationals, lowest degree first.

    Canonical form: no trailing zero coefficient.  The zero polynomial has
    an empty coefficient list and degree -1.  Instances are immutable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, degree: int, coeff=ONE) -> "RatPoly":
        return cls([ZERO] * degree + [coeff])

    @property
    def degree(self) -> int:
        """Degree, with -1 as the sentinel for the zero polynomial."""
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, RatPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "RatPoly") -> "RatPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RatPoly(out)

    def __neg__(self) -> "RatPoly":
        return RatPoly([-c for c in self.coeffs])

    def __sub__(self, other: "RatPoly") -> "RatPoly":
        return self + (-other)

    def __mul__(self, other: "RatPoly") -> "RatPoly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RatPoly()
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not ca:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return RatPoly(out)

    def scale(self, c) -> "RatPoly":
        c = Fraction(c)
        return RatPoly([ci * c for ci in self.coeffs])

    def divmod(self, divisor: "RatPoly") -> tuple["RatPoly", "RatPoly"]:
        """Euclidean division; divisor must be nonzero."""
        if not divisor:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = divisor.degree
        lead = divisor.coeffs[-1]
        if len(rem) - 1 < dd:
            return RatPoly(), self
        quot = [ZERO] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if not c:
                continue
            q = c / lead
            quot[i - dd] = q
            for j, dc in enumerate(divisor.coeffs):
                rem[i - dd + j] -= q * dc
        return RatPoly(quot), RatPoly(rem)

    def div_exact(self, divisor: "RatPoly") -> "RatPoly":
        """Exact quotient; raises ValueError on a nonzero remainder."""
        q, r = self.divmod(divisor)
        if r:
            raise ValueError("inexact polynomial division")
        return q

    def __call__(self, t):
        """Evaluate by Horner at a value supporting + and *."""
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __repr__(self) -> str:
        return f"RatPoly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*x" if c != 1 else "x")
            else:
                parts.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return " + ".join(parts).replace("+ -", "- ")


def poly_xgcd(a: RatPoly, b: RatPoly) -> tuple[RatPoly, RatPoly, RatPoly]:
    """Extended Euclidean algorithm: returns (s, t, g) with s*a + t*b = g."""
    r0, r1 = a, b
    s0, s1 = RatPoly([ONE]), RatPoly()
    t0, t1 = RatPoly(), RatPoly([ONE])
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return s0, t0, r0


def series_inverse(coeffs: list[Fraction], prec: int) -> list[Fraction]:
    """First `prec` coefficients of 1/f for a power series f with f(0) != 0."""
    if not coeffs or not coeffs[0]:
        raise ZeroDivisionError("series has no inverse: zero constant term")
    inv0 = ONE / coeffs[0]
    out = [inv0]
    for d in range(1, prec):
        acc = ZERO
        for a in range(1, min(d, len(coeffs) - 1) + 1):
            acc += coeffs[a] * out[d - a]
        out.append(-inv0 * acc)
    return out
