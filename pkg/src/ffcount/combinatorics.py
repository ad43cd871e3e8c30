"""Cycle types of S_k and the counting identities built on them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from .field import FieldElement, FieldSpec
from .qsqrt import QSqrtNumber, sqrt_q

__all__ = [
    "CycleType",
    "CycleLimitError",
    "InexactDivisionError",
    "MAX_CYCLE_K",
    "cycle_types",
    "conjugacy_class_size",
    "p_cycles_count",
    "p_cycle_alternating_sum",
    "p_cycle_closed_form",
    "generating_C",
    "alternating_q_sum",
    "sqrt_q_sum",
    "binom_general",
    "falling_factorial",
    "power_sums_and_elementary",
    "newton_identity_holds",
    "exact_div",
]

MAX_CYCLE_K = 40


class CycleLimitError(ValueError):
    pass


class InexactDivisionError(ArithmeticError):
    """A division that must be exact left a remainder (an internal bug)."""


def exact_div(n: int, d: int) -> int:
    quo, rem = divmod(n, d)
    if rem:
        raise InexactDivisionError(f"{n} is not divisible by {d}")
    return quo


@dataclass(frozen=True)
class CycleType:
    """Conjugacy class of S_k: ``c[i-1]`` is the number of cycles of length i."""

    c: tuple[int, ...]

    def __post_init__(self):
        if any(x < 0 for x in self.c):
            raise ValueError("negative cycle multiplicity")
        if self.k < 1:
            raise ValueError("cycle type of an empty permutation")

    @classmethod
    def from_lengths(cls, lengths: Sequence[int]) -> "CycleType":
        k = sum(lengths)
        c = [0] * k
        for n in lengths:
            c[n - 1] += 1
        return cls(tuple(c))

    @property
    def k(self) -> int:
        return sum((i + 1) * ci for i, ci in enumerate(self.c))

    @property
    def length(self) -> int:
        """Number of cycles, l(tau), fixed points included."""
        return sum(self.c)

    @property
    def lengths(self) -> tuple[int, ...]:
        """Cycle lengths in non-increasing order."""
        out = []
        for i in range(len(self.c), 0, -1):
            out.extend([i] * self.c[i - 1])
        return tuple(out)

    @property
    def sign(self) -> int:
        return -1 if (self.k - self.length) % 2 else 1

    def all_divisible_by(self, p: int) -> bool:
        return all(ci == 0 for i, ci in enumerate(self.c, start=1) if i % p)


def _partitions(n: int, largest: int):
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _cycle_types_cached(k: int) -> tuple[CycleType, ...]:
    return tuple(CycleType.from_lengths(parts) for parts in _partitions(k, k))


def cycle_types(k: int, *, limit: int = MAX_CYCLE_K) -> list[CycleType]:
    """All cycle types of S_k, largest parts first (``[k]`` ... ``[1]*k``)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > limit:
        raise CycleLimitError(f"k = {k} exceeds the cycle-type limit {limit}")
    return list(_cycle_types_cached(k))


def conjugacy_class_size(t: CycleType) -> int:
    den = 1
    for i, ci in enumerate(t.c, start=1):
        den *= i**ci * factorial(ci)
    return exact_div(factorial(t.k), den)


def p_cycles_count(k: int, j: int, p: int) -> int:
    """Permutations of S_k with j cycles, every cycle length divisible by p."""
    return sum(
        conjugacy_class_size(t)
        for t in cycle_types(k)
        if t.length == j and t.all_divisible_by(p)
    )


def p_cycle_alternating_sum(k: int, p: int, q: int) -> int:
    """sum_j (-1)^(k-j) p(k, j) q^j."""
    _check_prime_power(q, p)
    return sum((-1) ** (k - j) * p_cycles_count(k, j, p) * q**j for j in range(1, k + 1))


def p_cycle_closed_form(k: int, p: int, q: int) -> int:
    """Closed form of :func:`p_cycle_alternating_sum`."""
    _check_prime_power(q, p)
    if k % p:
        return 0
    sign = (-1) ** (k + k // p)
    return sign * comb(q // p, k // p) * factorial(k)


def _check_prime_power(q: int, p: int) -> None:
    r = q
    while r > 1 and r % p == 0:
        r //= p
    if r != 1 or q < p:
        raise ValueError(f"q = {q} is not a power of p = {p}")


def generating_C(k: int, t: Sequence):
    """C_k(t_1, ..., t_k) over any commutative ring.

    The coefficient k!/(prod c_i!) * prod (1/i)^{c_i} is the integer C(tau),
    so the sum is evaluated as sum_tau C(tau) * prod t_i^{c_i} without
    leaving the ring of the inputs.
    """
    if len(t) < k:
        raise ValueError(f"need {k} values, got {len(t)}")
    total = None
    for tau in cycle_types(k):
        term = conjugacy_class_size(tau)
        for i, ci in enumerate(tau.c):
            if ci:
                term = term * t[i] ** ci
        total = term if total is None else total + term
    return total


def alternating_q_sum(k: int, q) -> object:
    """C_k(q, -q, ..., (-1)^(k-1) q); equals binom(q, k) * k!."""
    return generating_C(k, [(-1) ** i * q for i in range(k)])


def sqrt_q_sum(k: int, q: int) -> QSqrtNumber:
    """C_k(sqrt q, ..., sqrt q); equals (-1)^k binom(-sqrt q, k) * k!."""
    r = sqrt_q(q)
    return generating_C(k, [r] * k)


def falling_factorial(x, k: int):
    out = 1
    for i in range(k):
        out = (x - i) * out
    return out


def binom_general(x, k: int):
    """x(x-1)...(x-k+1)/k! for rational or Q[sqrt q] ``x``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    num = falling_factorial(x, k)
    if isinstance(num, QSqrtNumber):
        return num / factorial(k)
    return Fraction(num) / factorial(k)


def power_sums_and_elementary(values: Sequence[FieldElement], m: int, field: FieldSpec | None = None):
    """Power sums P_1..P_m and elementary symmetric Pi_1..Pi_m, computed directly.

    Returns two lists of field-element indices.  ``field`` is only needed when
    ``values`` is empty.
    """
    if field is None:
        if not values:
            raise ValueError("field required for an empty value list")
        field = values[0].field
    xs = [v.index if isinstance(v, FieldElement) else int(v) for v in values]
    P = []
    for j in range(1, m + 1):
        acc = 0
        for x in xs:
            acc = field.add(acc, field.pow(x, j))
        P.append(acc)
    # prod (1 + x_i t), truncated at degree m
    e = [1] + [0] * m
    for x in xs:
        for j in range(m, 0, -1):
            e[j] = field.add(e[j], field.mul(x, e[j - 1]))
    return P, e[1:]


def newton_identity_holds(P: Sequence[int], Pi: Sequence[int], field: FieldSpec) -> list[bool]:
    """Check P_j = sum_{i<j} (-1)^(i-1) Pi_i P_{j-i} + (-1)^(j-1) j Pi_j for each j."""
    out = []
    for j in range(1, len(P) + 1):
        rhs = field.scale((-1) ** (j - 1) * j, Pi[j - 1])
        for i in range(1, j):
            term = field.mul(Pi[i - 1], P[j - i - 1])
            rhs = field.add(rhs, term if i % 2 else field.neg(term))
        out.append(rhs == P[j - 1])
    return out
