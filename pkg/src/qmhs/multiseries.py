"""Truncated power series in three variables with a weighted degree cap.

The variables (x, y, z) — or (u, v, w), which share the same slots —
carry weights (1, 1, 2).  A series stores only monomials of weight at
most its cap, sparsely, and every operation truncates at the cap.
Coefficients live in an abstract field: the rationals or a cyclotomic
field, anything providing zero/one/from_rational and elements with
+, -, *, inversion and truth testing.
"""

from __future__ import annotations

from fractions import Fraction

from .exactnum import ONE, ZERO

WEIGHTS = (1, 1, 2)


class RationalField:
    """Field adapter for plain Fraction coefficients."""

    zero = ZERO
    one = ONE

    @staticmethod
    def from_rational(q):
        return Fraction(q)

    def __repr__(self):
        return "RationalField()"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")


RATIONALS = RationalField()


def monomial_weight(exps: tuple[int, int, int]) -> int:
    return exps[0] + exps[1] + 2 * exps[2]


def _inv(field, elem):
    """Field inverse, for Fraction or cyclotomic coefficients."""
    if hasattr(elem, "inverse"):
        return elem.inverse()
    return field.one / elem


class MultiSeries:
    """Immutable sparse series; `coeffs` maps exponent triples to nonzero
    field elements, all of weight <= cap."""

    __slots__ = ("field", "cap", "coeffs")

    def __init__(self, field, cap: int, coeffs: dict | None = None):
        if cap < 0:
            raise ValueError("cap must be non-negative")
        self.field = field
        self.cap = cap
        clean = {}
        if coeffs:
            for exps, c in coeffs.items():
                if c and monomial_weight(exps) <= cap:
                    clean[exps] = c
        self.coeffs = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def constant(cls, value, cap: int, field=RATIONALS) -> "MultiSeries":
        if isinstance(value, (int, Fraction)):
            value = field.from_rational(value)
        return cls(field, cap, {(0, 0, 0): value})

    @classmethod
    def variable(cls, name: str, cap: int, field=RATIONALS) -> "MultiSeries":
        slot = {"x": 0, "u": 0, "y": 1, "v": 1, "z": 2, "w": 2}[name]
        exps = tuple(1 if i == slot else 0 for i in range(3))
        return cls(field, cap, {exps: field.one})

    @classmethod
    def zero(cls, cap: int, field=RATIONALS) -> "MultiSeries":
        return cls(field, cap, {})

    # -- basic ring structure ------------------------------------------

    def _check(self, other: "MultiSeries") -> None:
        if self.cap != other.cap:
            raise ValueError(f"weight cap mismatch: {self.cap} vs {other.cap}")
        if self.field != other.field:
            raise ValueError("coefficient field mismatch")

    def __add__(self, other: "MultiSeries") -> "MultiSeries":
        self._check(other)
        out = dict(self.coeffs)
        for exps, c in other.coeffs.items():
            prev = out.get(exps)
            out[exps] = c if prev is None else prev + c
        return MultiSeries(self.field, self.cap, out)

    def __neg__(self) -> "MultiSeries":
        return MultiSeries(self.field, self.cap,
                           {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "MultiSeries") -> "MultiSeries":
        return self + (-other)

    def __mul__(self, other: "MultiSeries") -> "MultiSeries":
        self._check(other)
        cap = self.cap
        out: dict = {}
        for (a1, b1, c1), va in self.coeffs.items():
            w1 = a1 + b1 + 2 * c1
            for (a2, b2, c2), vb in other.coeffs.items():
                if w1 + a2 + b2 + 2 * c2 > cap:
                    continue
                e = (a1 + a2, b1 + b2, c1 + c2)
                prod = va * vb
                prev = out.get(e)
                out[e] = prod if prev is None else prev + prod
        return MultiSeries(self.field, cap, out)

    def scale(self, c) -> "MultiSeries":
        if isinstance(c, (int, Fraction)):
            c = self.field.from_rational(c)
        return MultiSeries(self.field, self.cap,
                           {e: v * c for e, v in self.coeffs.items()})

    def __pow__(self, e: int) -> "MultiSeries":
        if e < 0:
            raise ValueError("negative powers: use invert() first")
        acc = MultiSeries.constant(1, self.cap, self.field)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base if e > 1 else base
            e >>= 1
        return acc

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiSeries)
            and self.cap == other.cap
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.cap, tuple(sorted(self.coeffs.keys()))))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- structure helpers ---------------------------------------------

    def coefficient(self, ex: int, ey: int, ez: int):
        return self.coeffs.get((ex, ey, ez), self.field.zero)

    def constant_term(self):
        return self.coefficient(0, 0, 0)

    def valuation(self) -> int:
        """Smallest weight of a stored monomial; cap + 1 for the zero series."""
        if not self.coeffs:
            return self.cap + 1
        return min(monomial_weight(e) for e in self.coeffs)

    def truncate(self, new_cap: int) -> "MultiSeries":
        if new_cap > self.cap:
            raise ValueError("cannot raise the cap of a truncated series")
        return MultiSeries(self.field, new_cap, self.coeffs)

    def by_weight(self) -> dict[int, dict]:
        out: dict[int, dict] = {}
        for e, c in self.coeffs.items():
            out.setdefault(monomial_weight(e), {})[e] = c
        return out

    def invert(self) -> "MultiSeries":
        """Multiplicative inverse up to the cap; the constant term must be
        invertible.  Graded back-substitution on homogeneous layers."""
        c0 = self.constant_term()
        if not c0:
            raise ZeroDivisionError("series with zero constant term has no inverse")
        inv0 = _inv(self.field, c0)
        layers = self.by_weight()
        out: dict[int, dict] = {0: {(0, 0, 0): inv0}}
        for w in range(1, self.cap + 1):
            layer: dict = {}
            for j in range(1, w + 1):
                aj = layers.get(j)
                if not aj:
                    continue
                bj = out.get(w - j)
                if not bj:
                    continue
                for (a1, b1, c1), va in aj.items():
                    for (a2, b2, c2), vb in bj.items():
                        e = (a1 + a2, b1 + b2, c1 + c2)
                        prod = va * vb
                        prev = layer.get(e)
                        layer[e] = prod if prev is None else prev + prod
            out[w] = {e: -(inv0 * c) for e, c in layer.items() if c}
        merged: dict = {}
        for layer in out.values():
            merged.update(layer)
        return MultiSeries(self.field, self.cap, merged)

    def map_coefficients(self, fn, field=None) -> "MultiSeries":
        return MultiSeries(field or self.field, self.cap,
                           {e: fn(c) for e, c in self.coeffs.items()})

    def to_rational(self) -> "MultiSeries":
        """Extract Fraction coefficients from a cyclotomic-coefficient series;
        raises if any coefficient is not rational."""
        return self.map_coefficients(lambda c: c.rational_part(), RATIONALS)

    def __repr__(self) -> str:
        return f"MultiSeries(cap={self.cap}, {render_series(self)!r})"

    def __str__(self) -> str:
        return render_series(self)


def render_series(s: MultiSeries, names: str = "xyz") -> str:
    if not s.coeffs:
        return "0"
    parts = []
    for e in sorted(s.coeffs, key=lambda e: (monomial_weight(e), e)):
        mono = "*".join(
            f"{names[i]}^{e[i]}" if e[i] > 1 else names[i]
            for i in range(3)
            if e[i]
        )
        c = s.coeffs[e]
        parts.append(f"{c}" if not mono else f"{c}*{mono}")
    return " + ".join(parts)


def ms_substitute(f: MultiSeries, u_expr: MultiSeries, v_expr: MultiSeries,
                  w_expr: MultiSeries) -> "MultiSeries":
    """Composition f(u_expr, v_expr, w_expr).

    Each image must have zero constant term and valuation at least the
    weight of the variable it replaces, so that truncation at the shared
    cap is exact.
    """
    images = (u_expr, v_expr, w_expr)
    u_expr._check(v_expr)
    u_expr._check(w_expr)
    cap, field = u_expr.cap, u_expr.field
    for img, wt, name in zip(images, WEIGHTS, "uvw"):
        if img.constant_term():
            raise ValueError(
                f"substitution image for {name} has a nonzero constant term"
            )
        if img and img.valuation() < wt:
            raise ValueError(
                f"substitution image for {name} has valuation below weight {wt}"
            )
    one = MultiSeries.constant(1, cap, field)
    pow_cache: list[dict[int, MultiSeries]] = [{0: one}, {0: one}, {0: one}]

    def power(slot: int, e: int) -> MultiSeries:
        cache = pow_cache[slot]
        if e not in cache:
            cache[e] = power(slot, e - 1) * images[slot]
        return cache[e]

    total = MultiSeries.zero(cap, field)
    for (a, b, c), coeff in f.coeffs.items():
        term = power(0, a) * power(1, b) * power(2, c)
        total = total + term.scale(coeff)
    return total


def ms_divide_xy_minus_z(numerator: MultiSeries) -> MultiSeries:
    """Exact quotient of a series by (x*y - z).

    The numerator is viewed as a polynomial in z and divided synthetically;
    the remainder (the substitution z -> x*y) must vanish up to the cap.
    The quotient is returned with cap reduced by 2, the weight of the
    divisor, which is the precision actually determined.
    """
    cap, field = numerator.cap, numerator.field
    if cap < 2:
        raise ValueError("cap too small to divide by a weight-2 element")
    # slices[c] = coefficient of z^c, a series in x and y alone
    slices: dict[int, dict] = {}
    for (a, b, c), v in numerator.coeffs.items():
        slices.setdefault(c, {})[(a, b)] = v
    top = max(slices) if slices else 0
    quot_slices: dict[int, dict] = {}
    carry: dict = {}  # q_c while descending, as an (x,y)-map

    def xy_shift(d: dict) -> dict:
        return {(a + 1, b + 1): v for (a, b), v in d.items()}

    # numerator = (x*y - z) * q + rem:  matching z^c gives, for c >= 1,
    # q_{c-1} = x*y*q_c - f_c, and rem = f_0 - x*y*q_0.
    for c in range(top, 0, -1):
        f_c = slices.get(c, {})
        q_cm1 = xy_shift(carry)
        for e, v in f_c.items():
            prev = q_cm1.get(e)
            q_cm1[e] = -v if prev is None else prev - v
        quot_slices[c - 1] = {e: v for e, v in q_cm1.items() if v}
        carry = quot_slices[c - 1]
    rem = dict(slices.get(0, {}))
    for e, v in xy_shift(carry).items():
        prev = rem.get(e)
        rem[e] = -v if prev is None else prev - v
    for (a, b), v in rem.items():
        if v and a + b <= cap:
            raise ValueError(
                "series is not divisible by x*y - z "
                f"(remainder has nonzero x^{a}*y^{b} term)"
            )
    out: dict = {}
    for c, sl in quot_slices.items():
        for (a, b), v in sl.items():
            out[(a, b, c)] = v
    return MultiSeries(field, cap - 2, out)


def exp_half_y(cap: int, field=RATIONALS) -> MultiSeries:
    """exp(y/2) truncated at the cap."""
    from math import factorial

    coeffs = {
        (0, m, 0): field.from_rational(Fraction(1, 2**m * factorial(m)))
        for m in range(cap + 1)
    }
    return MultiSeries(field, cap, coeffs)


def x_over_sinh_half_x(cap: int, field=RATIONALS) -> MultiSeries:
    """x / sinh(x/2) = 2 * (sum_m (x/2)^(2m) / (2m+1)!)^(-1)."""
    from math import factorial

    body = {
        (2 * m, 0, 0): field.from_rational(Fraction(1, 4**m * factorial(2 * m + 1)))
        for m in range(cap // 2 + 1)
    }
    return MultiSeries(field, cap, body).invert().scale(2)


def cosh_half_sqrt(w_expr: MultiSeries) -> MultiSeries:
    """cosh(sqrt(w)/2) = sum_m w^m / (4^m (2m)!) for a series w with zero
    constant term; no square root is ever formed."""
    from math import factorial

    if w_expr.constant_term():
        raise ValueError("cosh_half_sqrt requires a zero constant term")
    cap, field = w_expr.cap, w_expr.field
    total = MultiSeries.zero(cap, field)
    wp = MultiSeries.constant(1, cap, field)
    m = 0
    while True:
        total = total + wp.scale(Fraction(1, 4**m * factorial(2 * m)))
        m += 1
        if w_expr.valuation() * m > cap:
            break
        wp = wp * w_expr
        if not wp:
            break
    return total
