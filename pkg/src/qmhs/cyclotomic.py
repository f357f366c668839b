"""Exact arithmetic in the cyclotomic field Q(zeta_n).

Elements are rational coefficient vectors reduced modulo the n-th
cyclotomic polynomial, so representation is unique and equality is
structural.  Division is total on nonzero elements because the modulus
is irreducible.
"""

from __future__ import annotations

import functools
from fractions import Fraction

from .exactnum import ONE, ZERO, RatPoly, poly_xgcd


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> RatPoly:
    """n-th cyclotomic polynomial, via (x^n - 1) / prod of proper divisors."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    if n == 1:
        return RatPoly([-ONE, ONE])
    num = RatPoly.monomial(n) - RatPoly([ONE])
    for d in range(1, n):
        if n % d == 0:
            num = num.div_exact(cyclotomic_polynomial(d))
    return num


class CycloField:
    """Context for Q(zeta_n): the modulus, its degree, and power tables.

    Immutable after construction; safe to share between threads.
    """

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be a positive integer")
        self.n = n
        self.phi = cyclotomic_polynomial(n)
        self.degree = self.phi.degree
        # Reduction rows: zeta^j as a coefficient vector for j = 0..2*degree-2,
        # enough to reduce any product of two reduced elements.
        d = self.degree
        rows = [[ZERO] * d for _ in range(2 * d - 1)]
        for j in range(d):
            rows[j][j] = ONE
        # phi is monic: x^d = -(phi - x^d)
        top = [-c for c in self.phi.coeffs[:d]]
        for j in range(d, 2 * d - 1):
            prev = rows[j - 1]
            shifted = [ZERO] + prev[: d - 1]
            carry = prev[d - 1]
            if carry:
                shifted = [shifted[i] + carry * top[i] for i in range(d)]
            rows[j] = shifted
        self._reduction = tuple(tuple(r) for r in rows)
        self.zero = CycloElem(self, (ZERO,) * d)
        one = [ZERO] * d
        one[0] = ONE
        self.one = CycloElem(self, tuple(one))
        # zeta^j reduced, for exponents mod n
        zpows = [self.one]
        zeta = self.element(RatPoly.monomial(1))
        for _ in range(1, n):
            zpows.append(zpows[-1] * zeta)
        self._zeta_pows = tuple(zpows)
        self.zeta = self._zeta_pows[1 % n]

    def element(self, poly: RatPoly) -> "CycloElem":
        """Image of a rational polynomial in zeta, reduced modulo phi."""
        _, rem = poly.divmod(self.phi)
        coeffs = list(rem.coeffs) + [ZERO] * (self.degree - len(rem.coeffs))
        return CycloElem(self, tuple(coeffs))

    def from_rational(self, q) -> "CycloElem":
        coeffs = [ZERO] * self.degree
        coeffs[0] = Fraction(q)
        return CycloElem(self, tuple(coeffs))

    def zeta_pow(self, j: int) -> "CycloElem":
        """zeta^j for any integer j (exponent taken mod n)."""
        return self._zeta_pows[j % self.n]

    def __eq__(self, other) -> bool:
        return isinstance(other, CycloField) and other.n == self.n

    def __hash__(self) -> int:
        return hash(("CycloField", self.n))

    def __repr__(self) -> str:
        return f"CycloField({self.n})"


@functools.lru_cache(maxsize=None)
def get_field(n: int) -> CycloField:
    return CycloField(n)


class CycloElem:
    """Element of Q(zeta_n) as a reduced coefficient vector of length
    equal to the field degree: coeffs[j] multiplies zeta^j."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CycloField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def _check(self, other: "CycloElem") -> None:
        if self.field.n != other.field.n:
            raise ValueError(
                f"mixed cyclotomic fields: n={self.field.n} vs n={other.field.n}"
            )

    def __add__(self, other: "CycloElem") -> "CycloElem":
        self._check(other)
        return CycloElem(
            self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: "CycloElem") -> "CycloElem":
        self._check(other)
        return CycloElem(
            self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> "CycloElem":
        return CycloElem(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other: "CycloElem") -> "CycloElem":
        self._check(other)
        d = self.field.degree
        raw = [ZERO] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    raw[i + j] += a * b
        red = self.field._reduction
        out = list(raw[:d])
        for j in range(d, 2 * d - 1):
            c = raw[j]
            if not c:
                continue
            row = red[j]
            for i in range(d):
                if row[i]:
                    out[i] += c * row[i]
        return CycloElem(self.field, tuple(out))

    def inverse(self) -> "CycloElem":
        """Multiplicative inverse via extended gcd with the modulus."""
        if not self:
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        rep = RatPoly(self.coeffs)
        s, _, g = poly_xgcd(rep, self.field.phi)
        # g is a nonzero constant since phi is irreducible and rep != 0
        return self.field.element(s.scale(ONE / g.coeffs[0]))

    def __truediv__(self, other: "CycloElem") -> "CycloElem":
        return self * other.inverse()

    def __pow__(self, e: int) -> "CycloElem":
        if e < 0:
            return self.inverse() ** (-e)
        acc = self.field.one
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CycloElem)
            and self.field.n == other.field.n
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field.n, self.coeffs))

    def is_rational(self) -> bool:
        """True iff the coefficients of zeta^j vanish for all j >= 1."""
        return not any(self.coeffs[1:])

    def rational_part(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"element is not rational: {self}")
        return self.coeffs[0]

    def complex_value(self) -> complex:
        """Floating rendering with zeta mapped to exp(2*pi*i/n).

        Phases come from cos/sin per exponent and the terms are summed
        with Neumaier compensation; the coefficients can be large with
        heavy cancellation, so Horner in a floating zeta loses digits.
        """
        import math

        n = self.field.n
        sr = cr = si = ci = 0.0
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            fc = float(c)
            theta = 2 * math.pi * j / n
            for real_side, term in ((True, fc * math.cos(theta)),
                                    (False, fc * math.sin(theta))):
                s = sr if real_side else si
                t = s + term
                comp = (s - t) + term if abs(s) >= abs(term) else (term - t) + s
                if real_side:
                    sr, cr = t, cr + comp
                else:
                    si, ci = t, ci + comp
        return complex(sr + cr, si + ci)

    def __repr__(self) -> str:
        return f"CycloElem(n={self.field.n}, {render_cyclo(self)!r})"

    def __str__(self) -> str:
        return render_cyclo(self)


def q_integer(m: int, field: CycloField) -> CycloElem:
    """The q-integer [m] = 1 + zeta + ... + zeta^(m-1) at q = zeta_n.

    [n] = 0; the value is invertible iff n does not divide m.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    acc = field.zero
    for j in range(m):
        acc = acc + field.zeta_pow(j)
    return acc


def render_cyclo(a: CycloElem, symbol: str = "z") -> str:
    """Exact string form: a polynomial in the root, highest degree first."""
    terms = []
    for j in range(a.field.degree - 1, -1, -1):
        c = a.coeffs[j]
        if not c:
            continue
        if j == 0:
            body = str(c)
        else:
            var = symbol if j == 1 else f"{symbol}^{j}"
            if c == 1:
                body = var
            elif c == -1:
                body = f"-{var}"
            else:
                body = f"{c}*{var}"
        terms.append(body)
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


def parse_cyclo(text: str, field: CycloField, symbol: str = "z") -> CycloElem:
    """Parse the output of render_cyclo back into a field element."""
    s = text.replace(" ", "")
    if s in ("0", ""):
        return field.zero
    s = s.replace("-", "+-")
    acc = field.zero
    for term in s.split("+"):
        if not term:
            continue
        if symbol in term:
            head, _, tail = term.partition(symbol)
            exp = int(tail[1:]) if tail.startswith("^") else 1
            if head in ("", "+"):
                coeff = ONE
            elif head == "-":
                coeff = -ONE
            else:
                coeff = Fraction(head.rstrip("*"))
        else:
            coeff, exp = Fraction(term), 0
        acc = acc + field.zeta_pow(exp) * field.from_rational(coeff)
    return acc
