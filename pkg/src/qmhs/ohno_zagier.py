"""Weight/depth/height generating functions at a root of unity and the
kernel that evaluates them in closed form.

Everything here is coefficient-exact: the brute-force generating function
assembles profile sums from the nested-sum engine, the kernel expands a
binomial double sum, and the two must agree monomial by monomial.  The
product and recurrence routes for the one-variable generating function
serve as mutual oracles, and the q-difference recursions of the truncated
polylogarithms are checked as polynomial identities.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .cyclotomic import CycloElem, CycloField, get_field
from .exactnum import ONE, ZERO
from .mhs import Index, IndexProfile, enumerate_indices, profile_sum
from .multiseries import RATIONALS, MultiSeries, ms_substitute, render_series
from .report import FAIL, PASS, VerificationReport, compare


def _binomial_row(a: int, cap: int, slot: int, field) -> MultiSeries:
    """(1 + v)^a truncated, where v is the variable in the given slot."""
    coeffs = {}
    for i in range(min(a, cap) + 1):
        e = tuple(i if s == slot else 0 for s in range(3))
        coeffs[e] = field.from_rational(comb(a, i))
    return MultiSeries(field, cap, coeffs)


def u_kernel(n: int, cap: int, field=RATIONALS) -> MultiSeries:
    """The closed-form generating series in (x, y, z) at level n.

    x/((1+x)^n - 1) times the double binomial sum over a, b >= 0 with
    a + b <= n - 1; the prefactor is expanded by exact series inversion.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    # (1+x)^n - 1 = x * g(x) with g = sum_{j=1..n} C(n, j) x^(j-1)
    g = MultiSeries(
        field,
        cap,
        {
            (j - 1, 0, 0): field.from_rational(comb(n, j))
            for j in range(1, min(n, cap + 1) + 1)
        },
    )
    pre = g.invert()
    xy_minus_z = MultiSeries(
        field, cap, {(1, 1, 0): field.one, (0, 0, 1): -field.one}
    )
    powers = [MultiSeries.constant(1, cap, field)]
    while 2 * len(powers) <= cap:
        powers.append(powers[-1] * xy_minus_z)
    total = MultiSeries.zero(cap, field)
    for a in range(n):
        for b in range(n - a):
            p = n - 1 - a - b
            if p >= len(powers):
                continue
            term = powers[p] * _binomial_row(a, cap, 0, field)
            term = term * _binomial_row(b, cap, 1, field)
            coeff = Fraction(comb(n - a - 1, b) * comb(n - b - 1, a), n - a - b)
            total = total + term.scale(coeff)
    return pre * total


def u_kernel_star(n: int, cap: int) -> MultiSeries:
    """Kernel for the non-strict sums: the inverse of the kernel at
    (x, -y, -z)."""
    return flip_yz(u_kernel(n, cap)).invert()


def flip_yz(s: MultiSeries) -> MultiSeries:
    """Substitute (x, y, z) -> (x, -y, -z) by sign-flipping coefficients."""
    return MultiSeries(
        s.field,
        s.cap,
        {e: (-c if (e[1] + e[2]) % 2 else c) for e, c in s.coeffs.items()},
    )


def f_bruteforce(n: int, cap: int, star: bool = False) -> MultiSeries:
    """Generating series of profile sums, assembled directly from the
    nested sums: coefficient of x^(k-r-s) y^(r-s) z^s is the rational
    profile sum of weight k, depth r, height s."""
    coeffs: dict = {}
    for k in range(0, cap + 1):
        for r in range(0, k + 1):
            for s in range(0, r + 1):
                if k < r + s or (r == 0 and k > 0):
                    continue
                ex, ey, ez = k - r - s, r - s, s
                if ex + ey + 2 * ez > cap:
                    continue
                value = profile_sum(IndexProfile(k, r, s), n, star)
                if value:
                    coeffs[(ex, ey, ez)] = value
    return MultiSeries(RATIONALS, cap, coeffs)


def verify_theorem_1_2(n: int, cap: int) -> VerificationReport:
    """Both generating-function identities at level n, coefficient-exactly:
    the strict series equals the kernel and the non-strict series equals
    the inverse of the sign-flipped kernel."""
    from .report import Stopwatch

    with Stopwatch() as sw:
        f_plain = f_bruteforce(n, cap, star=False)
        u_plain = u_kernel(n, cap)
        f_star = f_bruteforce(n, cap, star=True)
        u_star = u_kernel_star(n, cap)
        ok = f_plain == u_plain and f_star == u_star
    return VerificationReport(
        suite="thm-ohno-zagier",
        params={"n": n, "cap": cap},
        status=PASS if ok else FAIL,
        lhs=f"F={render_series(f_plain)} | F*={render_series(f_star)}",
        rhs=f"U={render_series(u_plain)} | U*={render_series(u_star)}",
        micros=sw.micros,
    )


def sum_formula_check(n: int, k: int, r: int) -> VerificationReport:
    """Weight-depth sum formula: the sum of modified values over all
    indices of weight k and depth r equals
    sum_{j=1..r} (1/n) C(n, j) zbar(k+1-j)."""
    if not (k >= r and n > r > 0):
        raise ValueError("requires k >= r and n > r > 0")
    from .mhs import zbar
    from .report import Stopwatch

    with Stopwatch() as sw:
        field = get_field(n)
        lhs = field.zero
        for ix in enumerate_indices(k, r):
            lhs = lhs + zbar(ix, n)
        lhs_q = lhs.rational_part()
        rhs_q = sum(
            (
                Fraction(comb(n, j), n) * zbar(Index((k + 1 - j,)), n).rational_part()
                for j in range(1, r + 1)
            ),
            Fraction(0),
        )
    rep = compare("sum-formula", {"n": n, "k": k, "r": r}, lhs_q, rhs_q)
    rep.micros = sw.micros
    return rep


# ---------------------------------------------------------------------------
# One-variable generating function at t = 1: product and recurrence routes.


def _quad_p(field: CycloField, x_val: CycloElem, cap: int, star: bool) -> MultiSeries:
    """P(X) = (1-u-X)(1+v-X) + w, or its starred companion
    (1-u-X)(1-v-X) - w, evaluated at a constant X from the field."""
    c = field.one - x_val
    u = MultiSeries.variable("u", cap, field)
    v = MultiSeries.variable("v", cap, field)
    w = MultiSeries.variable("w", cap, field)
    cc = MultiSeries.constant(1, cap, field).scale(c)
    if star:
        return (cc - u) * (cc - v) - w
    return (cc - u) * (cc + v) + w


def phi_product(n: int, cap: int, star: bool = False) -> MultiSeries:
    """Product route: for j = 1..n-1 multiply P(q^j) / ((1-q^j)(1-u-q^j)),
    inverted for the starred version."""
    field = get_field(n)
    total = MultiSeries.constant(1, cap, field)
    u = MultiSeries.variable("u", cap, field)
    for j in range(1, n):
        qj = field.zeta_pow(j)
        c = field.one - qj
        num = _quad_p(field, qj, cap, star)
        den = (MultiSeries.constant(1, cap, field).scale(c) - u).scale(c)
        factor = num * den.invert()
        if star:
            factor = factor.invert()
        total = total * factor
    return total


def phi_recurrence(n: int, cap: int) -> MultiSeries:
    """Recurrence route: solve (1-q)(1-q-u) c_1 = 1, iterate
    (1-q^(j+1))(1-u-q^(j+1)) c_(j+1) = P(q^j) c_j, and close with
    P(q^(n-1)) c_(n-1)."""
    if n < 2:
        raise ValueError("the recurrence route needs n >= 2")
    field = get_field(n)
    u = MultiSeries.variable("u", cap, field)

    def lin(j: int) -> MultiSeries:
        c = field.one - field.zeta_pow(j)
        return (MultiSeries.constant(1, cap, field).scale(c) - u).scale(c)

    c_j = lin(1).invert()
    for j in range(1, n - 1):
        c_j = _quad_p(field, field.zeta_pow(j), cap, star=False) * c_j * lin(j + 1).invert()
    return _quad_p(field, field.zeta_pow(n - 1), cap, star=False) * c_j


def transform_images(cap: int, field) -> tuple[MultiSeries, MultiSeries, MultiSeries]:
    """The change of variables u = x/(1+x), v = y - z/(1+x),
    w = z/(1+x)^2 as series in (x, y, z)."""
    one = MultiSeries.constant(1, cap, field)
    x = MultiSeries.variable("x", cap, field)
    y = MultiSeries.variable("y", cap, field)
    z = MultiSeries.variable("z", cap, field)
    inv1px = (one + x).invert()
    u = x * inv1px
    v = y - z * inv1px
    w = z * inv1px * inv1px
    return u, v, w


def verify_prop_3_3(n: int, cap: int) -> list[VerificationReport]:
    """Check that the product and recurrence routes agree and that the
    change of variables carries the product route onto the brute-force
    generating function with all-rational coefficients."""
    from .report import Stopwatch

    reports = []
    with Stopwatch() as sw:
        prod = phi_product(n, cap)
        rec = phi_recurrence(n, cap)
    rep = compare("phi-routes", {"n": n, "cap": cap}, prod, rec, render_series)
    rep.micros = sw.micros
    reports.append(rep)

    with Stopwatch() as sw:
        field = get_field(n)
        u, v, w = transform_images(cap, field)
        substituted = ms_substitute(prod, u, v, w).to_rational()
        target = f_bruteforce(n, cap, star=False)
    rep = compare(
        "phi-substitution", {"n": n, "cap": cap}, substituted, target, render_series
    )
    rep.micros = sw.micros
    reports.append(rep)
    return reports


# ---------------------------------------------------------------------------
# Truncated q-polylogarithms: polynomials in t of degree < n over Q(zeta_n).


class TPoly:
    """Dense polynomial in t with cyclotomic coefficients."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CycloField, coeffs):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, field: CycloField) -> "TPoly":
        return cls(field, ())

    @classmethod
    def one(cls, field: CycloField) -> "TPoly":
        return cls(field, (field.one,))

    @classmethod
    def monomial(cls, field: CycloField, degree: int, coeff=None) -> "TPoly":
        if coeff is None:
            coeff = field.one
        return cls(field, (field.zero,) * degree + (coeff,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def valuation(self) -> int:
        """Order of vanishing at t = 0; degree + 1 == len for zero."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, TPoly)
            and self.field.n == other.field.n
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field.n, self.coeffs))

    def __add__(self, other: "TPoly") -> "TPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return TPoly(self.field, out)

    def __neg__(self) -> "TPoly":
        return TPoly(self.field, (-c for c in self.coeffs))

    def __sub__(self, other: "TPoly") -> "TPoly":
        return self + (-other)

    def scale(self, c: CycloElem) -> "TPoly":
        return TPoly(self.field, (ci * c for ci in self.coeffs))

    def shift(self, by: int) -> "TPoly":
        """Multiply by t^by."""
        return TPoly(self.field, (self.field.zero,) * by + self.coeffs)

    def at_one(self) -> CycloElem:
        acc = self.field.zero
        for c in self.coeffs:
            acc = acc + c
        return acc

    def div_t_exact(self) -> "TPoly":
        if self.coeffs and self.coeffs[0]:
            raise ValueError("not divisible by t: nonzero constant term")
        return TPoly(self.field, self.coeffs[1:])

    def div_one_minus_t_exact(self) -> "TPoly":
        """Exact division by (1 - t); the value at t = 1 must vanish."""
        # synthetic division: if p = (1 - t) q then q_i = sum_{j<=i} p_j
        acc = self.field.zero
        out = []
        for c in self.coeffs:
            acc = acc + c
            out.append(acc)
        if out and out[-1]:
            raise ValueError("not divisible by 1 - t: nonzero remainder")
        return TPoly(self.field, out[:-1])


def dq(p: TPoly) -> TPoly:
    """q-difference operator: (p(t) - p(q t)) / t, with q = zeta_n."""
    field = p.field
    out = [
        c - c * field.zeta_pow(m)
        for m, c in enumerate(p.coeffs)
    ]
    shifted = TPoly(field, out)
    return shifted.div_t_exact()


def polylog(index: Index, n: int, star: bool = False) -> TPoly:
    """Truncated polylogarithm: the polynomial in t of degree < n whose
    t^(m1) coefficient sums 1 / prod (1 - q^(m_i))^(k_i) over chains
    below m1.  Strict chains by default, non-strict with star."""
    field = get_field(n)
    r = index.depth
    if r == 0:
        return TPoly.one(field)
    inv = [None] + [
        (field.one - field.zeta_pow(m)).inverse() for m in range(1, n)
    ]

    def w(k: int, m: int) -> CycloElem:
        return inv[m] ** k

    parts = index.parts
    # T[j] for j = 2..r+1 accumulate the sub-chain sums; T[r+1] = 1
    acc = [field.zero] * (r + 2)
    acc[r + 1] = field.one
    coeffs = [field.zero] * n
    for m in range(1, n):
        if star:
            for j in range(r, 1, -1):
                acc[j] = acc[j] + w(parts[j - 1], m) * acc[j + 1]
            upper = acc[2] if r >= 2 else field.one
            coeffs[m] = w(parts[0], m) * upper
        else:
            upper = acc[2] if r >= 2 else field.one
            coeffs[m] = w(parts[0], m) * upper
            for j in range(2, r + 1):
                acc[j] = acc[j] + w(parts[j - 1], m) * acc[j + 1]
    return TPoly(field, coeffs)


def verify_lemma_3_2(n: int, weight_cap: int) -> list[VerificationReport]:
    """Check the q-difference recursions for every index of weight up to
    the cap, strict and non-strict, as exact polynomial identities."""
    field = get_field(n)
    reports = []
    geom = TPoly(field, (field.one,) * (n - 1))  # (1 - t^(n-1)) / (1 - t)

    def render(p: TPoly) -> str:
        return " ; ".join(str(c) for c in p.coeffs) if p else "0"

    for k in range(1, weight_cap + 1):
        for r in range(1, k + 1):
            for ix in enumerate_indices(k, r):
                rest = Index(ix.parts[1:])
                # strict version
                lhs = dq(polylog(ix, n))
                if ix.parts[0] >= 2:
                    lowered = Index((ix.parts[0] - 1,) + ix.parts[1:])
                    rhs = polylog(lowered, n).div_t_exact()
                else:
                    lr = polylog(rest, n)
                    num = lr - TPoly.monomial(field, n - 1, lr.at_one())
                    rhs = num.div_one_minus_t_exact()
                rep = compare(
                    "polylog-dq",
                    {"n": n, "index": str(ix), "star": False},
                    lhs,
                    rhs,
                    render,
                )
                reports.append(rep)
                # non-strict version; note the non-strict middle case carries
                # t^n, not t^(n-1): the partial sums telescope one step further
                # because m_2 = m_1 is allowed
                lhs = dq(polylog(ix, n, star=True))
                if ix.parts[0] >= 2:
                    lowered = Index((ix.parts[0] - 1,) + ix.parts[1:])
                    rhs = polylog(lowered, n, star=True).div_t_exact()
                elif r >= 2:
                    lr = polylog(rest, n, star=True)
                    num = lr - TPoly.monomial(field, n, lr.at_one())
                    rhs = num.div_one_minus_t_exact().div_t_exact()
                else:
                    rhs = geom
                rep = compare(
                    "polylog-dq",
                    {"n": n, "index": str(ix), "star": True},
                    lhs,
                    rhs,
                    render,
                )
                reports.append(rep)
    return reports
