"""Finite multiple harmonic q-series at a primitive n-th root of unity.

The nested sums over strict (z) or non-strict (z_star) chains
n > m_1 > ... > m_r > 0 are evaluated by a single dynamic program over
an abstract value field: exact cyclotomic coefficients or floating
complex numbers, selected by the backend object.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import CycloElem, CycloField, get_field, q_integer


class Index:
    """A finite sequence of positive integers indexing a nested sum.

    weight = sum of the parts, depth = number of parts, height = number
    of parts that are at least 2.  The empty index is allowed and stands
    for the empty product (value 1).
    """

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"index parts must be positive integers: {parts}")
        self.parts = parts

    @classmethod
    def parse(cls, text: str) -> "Index":
        return cls(int(p) for p in text.split(",") if p.strip())

    @classmethod
    def repeat(cls, k: int, r: int) -> "Index":
        return cls((k,) * r)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def depth(self) -> int:
        return len(self.parts)

    @property
    def height(self) -> int:
        return sum(1 for p in self.parts if p >= 2)

    @property
    def admissible(self) -> bool:
        """First part at least 2 (the usual convergence convention)."""
        return bool(self.parts) and self.parts[0] >= 2

    def __iter__(self):
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __eq__(self, other) -> bool:
        return isinstance(other, Index) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __repr__(self) -> str:
        return f"Index{self.parts!r}"

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)


@dataclass(frozen=True)
class IndexProfile:
    """A (weight, depth, height) triple."""

    weight: int
    depth: int
    height: int

    def admits_indices(self) -> bool:
        k, r, s = self.weight, self.depth, self.height
        return r >= s >= 0 and k >= r + s and (r > 0 or k == 0)


def enumerate_indices(weight: int, depth: int, height: int | None = None,
                      admissible: bool = False):
    """All compositions of `weight` into `depth` positive parts, optionally
    filtered by height and by admissibility (first part >= 2).

    Deterministic order: first part descending, then recursively the same.
    |I(k, r)| = C(k-1, r-1).
    """
    out: list[Index] = []

    def rec(remaining: int, slots: int, prefix: tuple):
        if slots == 0:
            if remaining == 0:
                out.append(Index(prefix))
            return
        top = remaining - (slots - 1)
        for first in range(top, 0, -1):
            rec(remaining - first, slots - 1, prefix + (first,))

    if weight >= 0 and depth >= 0:
        rec(weight, depth, ())
    if height is not None:
        out = [ix for ix in out if ix.height == height]
    if admissible:
        out = [ix for ix in out if ix.admissible]
    return out


def enumerate_profile(profile: IndexProfile, admissible: bool = False):
    return enumerate_indices(profile.weight, profile.depth, profile.height,
                             admissible)


class ExactBackend:
    """Value field Q(zeta_n) with q = zeta_n.

    Precomputes the inverse q-integers once; weights q^((k-1)m) / [m]^k
    are cached per (k, m).  All cached values are immutable.
    """

    def __init__(self, n: int):
        self.n = n
        self.field = get_field(n)
        self.zero = self.field.zero
        self.one = self.field.one
        inv = [None]
        for m in range(1, n):
            qm = q_integer(m, self.field)
            if not qm:
                raise ZeroDivisionError(
                    f"q-integer [{m}] vanishes at a primitive {n}-th root of unity"
                )
            inv.append(qm.inverse())
        self._inv_qint = inv
        self._weights: dict[tuple[int, int], CycloElem] = {}

    def weight(self, k: int, m: int) -> CycloElem:
        """q^((k-1)m) / [m]^k as a field element, 0 < m < n."""
        key = (k, m)
        w = self._weights.get(key)
        if w is None:
            w = self.field.zeta_pow((k - 1) * m) * self._inv_qint[m] ** k
            self._weights[key] = w
        return w

    def accumulator(self):
        return _ExactAccumulator(self.zero)

    def mul(self, a, b):
        return a * b


class _ExactAccumulator:
    __slots__ = ("value",)

    def __init__(self, zero):
        self.value = zero

    def add(self, x):
        self.value = self.value + x


class NumericBackend:
    """Value field C with q = exp(2*pi*i/n) in double precision.

    Powers of q are taken directly from cos/sin of the reduced phase, not
    by repeated multiplication, so there is no cumulative phase drift.
    """

    def __init__(self, n: int):
        self.n = n
        self.zero = 0j
        self.one = 1 + 0j
        qpow = [
            complex(math.cos(2 * math.pi * j / n), math.sin(2 * math.pi * j / n))
            for j in range(n)
        ]
        self._qpow = qpow
        one_minus_q = 1 - qpow[1 % n]
        inv = [None]
        for m in range(1, n):
            qm = (1 - qpow[m]) / one_minus_q
            inv.append(1 / qm)
        self._inv_qint = inv
        self._weights: dict[tuple[int, int], complex] = {}

    def weight(self, k: int, m: int) -> complex:
        key = (k, m)
        w = self._weights.get(key)
        if w is None:
            w = self._qpow[((k - 1) * m) % self.n] * self._inv_qint[m] ** k
            self._weights[key] = w
        return w

    def accumulator(self):
        return _KahanAccumulator()

    def mul(self, a, b):
        v = a * b
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise OverflowError("non-finite value in numeric evaluation")
        return v


class _KahanAccumulator:
    """Neumaier compensated summation, separately on real and imaginary parts."""

    __slots__ = ("sr", "cr", "si", "ci")

    def __init__(self):
        self.sr = self.cr = self.si = self.ci = 0.0

    def add(self, x: complex):
        for attr_s, attr_c, v in (("sr", "cr", x.real), ("si", "ci", x.imag)):
            s = getattr(self, attr_s)
            t = s + v
            if abs(s) >= abs(v):
                setattr(self, attr_c, getattr(self, attr_c) + (s - t) + v)
            else:
                setattr(self, attr_c, getattr(self, attr_c) + (v - t) + s)
            setattr(self, attr_s, t)

    @property
    def value(self) -> complex:
        return complex(self.sr + self.cr, self.si + self.ci)


@functools.lru_cache(maxsize=64)
def exact_backend(n: int) -> ExactBackend:
    return ExactBackend(n)


def numeric_backend(n: int) -> NumericBackend:
    return NumericBackend(n)


def _evaluate(index: Index, n: int, backend, star: bool):
    """Shared DP over chains.

    Accumulators T_1..T_r start at 0, T_(r+1) is the constant 1.  For
    each m = 1..n-1 the update T_j += w_(k_j)(m) * T_(j+1) runs with j
    ascending for strict chains (reads the pre-update neighbor) and j
    descending for non-strict chains (reads the post-update neighbor).
    Cost is O(n * depth) field operations.
    """
    r = index.depth
    if r == 0:
        return backend.one
    if n < 1:
        raise ValueError("n must be a positive integer")
    acc = [backend.accumulator() for _ in range(r)]
    parts = index.parts
    js = range(r - 1, -1, -1) if star else range(r)
    for m in range(1, n):
        for j in js:
            w = backend.weight(parts[j], m)
            upper = backend.one if j == r - 1 else acc[j + 1].value
            acc[j].add(backend.mul(w, upper))
    return acc[0].value


def z(index: Index, n: int, backend=None):
    """Nested sum over strict chains n > m_1 > ... > m_r > 0 of
    prod q^((k_i - 1) m_i) / [m_i]^(k_i).  Exact backend by default."""
    if backend is None:
        backend = exact_backend(n)
    return _evaluate(index, n, backend, star=False)


def z_star(index: Index, n: int, backend=None):
    """Same with non-strict chains n > m_1 >= ... >= m_r > 0."""
    if backend is None:
        backend = exact_backend(n)
    return _evaluate(index, n, backend, star=True)


@functools.lru_cache(maxsize=None)
def _zbar_cached(parts: tuple, n: int, star: bool) -> CycloElem:
    index = Index(parts)
    backend = exact_backend(n)
    value = _evaluate(index, n, backend, star)
    if n == 1:
        # 1 - zeta_1 = 0; every nonempty sum is empty, so the modified
        # value is 0 (and 1 for the empty index), matching all closed forms.
        return value
    scale = (backend.field.one - backend.field.zeta).inverse() ** index.weight
    return value * scale


def zbar(index: Index, n: int) -> CycloElem:
    """Modified value (1 - zeta_n)^(-weight) * z(index; zeta_n)."""
    return _zbar_cached(index.parts, n, False)


def zbar_star(index: Index, n: int) -> CycloElem:
    """Modified value of the non-strict sum."""
    return _zbar_cached(index.parts, n, True)


def profile_sum(profile: IndexProfile, n: int, star: bool = False) -> Fraction:
    """Sum of modified values over all indices with the given profile,
    returned as an exact rational.

    Rationality of the sum is part of the contract; a non-rational result
    raises ValueError since it can only come from an implementation bug.
    """
    field = get_field(n)
    acc = field.zero
    for ix in enumerate_profile(profile):
        acc = acc + _zbar_cached(ix.parts, n, star)
    return acc.rational_part()


def brute_force(index: Index, n: int, backend=None, star: bool = False):
    """Direct enumeration of all chains; the independent oracle for the DP."""
    import itertools

    if backend is None:
        backend = exact_backend(n)
    r = index.depth
    if r == 0:
        return backend.one
    total = backend.accumulator()
    chains = (
        itertools.combinations_with_replacement(range(1, n), r)
        if star
        else itertools.combinations(range(1, n), r)
    )
    for chain in chains:
        ms = tuple(reversed(chain))  # descending: m_1 > ... > m_r
        term = backend.one
        for k, m in zip(index.parts, ms):
            term = backend.mul(term, backend.weight(k, m))
        total.add(term)
    return total.value
