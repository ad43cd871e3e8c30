"""Exact solution counts for weighted diagonal systems over a finite field.

A system is ``sum_j a_j * y_j**d_i = b_i`` for ``i = 1..m`` with the
unknowns ``y_j`` ranging over the whole field or an explicit subset.
The value-vector DP keeps one dense array over all targets in F_q^m, so a
single run yields the count for every ``b`` at once.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field as dc_field, replace
from math import factorial
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .combinatorics import power_sums_and_elementary
from .field import (
    ADD_TABLE_LIMIT,
    FieldElement,
    FieldSpec,
    as_index,
    as_indices,
    element_pow,
    frobenius_inverse,
)

__all__ = [
    "LimitExceededError",
    "WeightedDiagonalSystem",
    "SolutionCount",
    "DEFAULT_DP_LIMIT",
    "DEFAULT_ORACLE_LIMIT",
    "encode_vector",
    "decode_vector",
    "value_vectors",
    "normalize_exponents",
    "solution_distribution",
    "distributions_by_length",
    "count_points_dp",
    "bruteforce_distribution",
    "count_points_bruteforce",
    "count_slice_equal_coords",
    "HomogeneousCheck",
    "homogeneous_equivalence_check",
]

DEFAULT_DP_LIMIT = 10**8
DEFAULT_ORACLE_LIMIT = 10**8


class LimitExceededError(RuntimeError):
    """An exact computation would exceed its configured size guard."""


def encode_vector(q: int, vec: Sequence[int]) -> int:
    idx = 0
    for e in vec:
        idx = idx * q + e
    return idx


def decode_vector(q: int, m: int, idx: int) -> tuple[int, ...]:
    out = []
    for _ in range(m):
        idx, r = divmod(idx, q)
        out.append(r)
    return tuple(reversed(out))


@dataclass(frozen=True)
class WeightedDiagonalSystem:
    field: FieldSpec
    exponents: tuple[int, ...]
    weights: tuple[int, ...]
    targets: tuple[int, ...]
    domain: tuple[int, ...] | None = None
    # set by normalize_exponents when two equations contradict each other
    infeasible: bool = False

    def __post_init__(self):
        f = self.field
        exps = tuple(int(d) for d in self.exponents)
        if not exps:
            raise ValueError("at least one equation is required")
        if any(d < 1 for d in exps) or any(a >= b for a, b in zip(exps, exps[1:])):
            raise ValueError(f"exponents must be positive and strictly increasing, got {exps}")
        weights = tuple(int(a) for a in self.weights)
        if not weights:
            raise ValueError("at least one unknown is required")
        if any(a < 1 for a in weights):
            raise ValueError("weights must be positive integers")
        targets = as_indices(f, self.targets)
        if len(targets) != len(exps):
            raise ValueError(f"{len(exps)} exponents but {len(targets)} targets")
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "targets", targets)
        if self.domain is not None:
            dom = tuple(sorted(set(as_indices(f, self.domain))))
            if not dom:
                raise ValueError("empty domain")
            object.__setattr__(self, "domain", dom)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def m(self) -> int:
        return len(self.exponents)

    @property
    def l(self) -> int:
        return len(self.weights)

    @property
    def domain_elements(self) -> tuple[int, ...]:
        return tuple(range(self.q)) if self.domain is None else self.domain

    @property
    def domain_size(self) -> int:
        return self.q if self.domain is None else len(self.domain)

    @property
    def target_index(self) -> int:
        return encode_vector(self.q, self.targets)

    def with_targets(self, targets) -> "WeightedDiagonalSystem":
        return replace(self, targets=tuple(targets))


@dataclass(frozen=True)
class SolutionCount:
    count: int
    method: str
    q: int
    m: int
    l: int
    exponents: tuple[int, ...]
    targets: tuple[int, ...]
    extra: dict = dc_field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {
            "count": _json_int(self.count),
            "method": self.method,
            "q": self.q,
            "m": self.m,
            "l": self.l,
            "exponents": list(self.exponents),
            "targets": list(self.targets),
        }


def _json_int(n: int):
    return n if -(1 << 63) <= n < (1 << 63) else str(n)


def normalize_exponents(sys: WeightedDiagonalSystem) -> WeightedDiagonalSystem:
    """Strip powers of p from every exponent.

    ``x -> x**(p**r)`` is an additive bijection fixing the (prime-field)
    weights, so ``sum a_j y_j**(p^r t) = b`` iff ``sum a_j y_j**t = b'`` with
    ``b'**(p^r) = b``.  Equations that collapse to the same exponent are merged
    when their targets agree; otherwise the result is marked infeasible.
    """
    f = sys.field
    p, s = f.p, f.s
    merged: dict[int, int] = {}
    infeasible = sys.infeasible
    for d, b in zip(sys.exponents, sys.targets):
        r = 0
        while d % p == 0:
            d //= p
            r += 1
        b2 = frobenius_inverse(FieldElement(f, b), r % s).index
        if d in merged and merged[d] != b2:
            infeasible = True
        merged.setdefault(d, b2)
    exps = tuple(sorted(merged))
    return replace(
        sys,
        exponents=exps,
        targets=tuple(merged[d] for d in exps),
        infeasible=infeasible,
    )


def value_vectors(field: FieldSpec, exponents: Sequence[int], weight: int, elements: Iterable[int]) -> list[int]:
    """Encoded ``weight * (y**d_1, ..., y**d_m)`` for each element y."""
    q = field.q
    out = []
    for y in elements:
        idx = 0
        for d in exponents:
            idx = idx * q + field.scale(weight, field.pow(y, d))
        out.append(idx)
    return out


def _support(field, exponents, weight, elements) -> list[tuple[int, int]]:
    return sorted(Counter(value_vectors(field, exponents, weight, elements)).items())


def _check_dp(q: int, m: int, limit: int) -> None:
    if q > ADD_TABLE_LIMIT:
        raise LimitExceededError(f"DP needs q <= {ADD_TABLE_LIMIT}, got q = {q}")
    if q**m > limit:
        raise LimitExceededError(f"q^m = {q}^{m} exceeds the DP limit {limit}")


def solution_distribution(
    sys: WeightedDiagonalSystem, *, limit: int = DEFAULT_DP_LIMIT, backend: str | None = None
) -> np.ndarray:
    """Counts for every target vector: entry ``encode_vector(q, b)`` is N(b).

    The targets stored on ``sys`` are ignored.  Cost O(l * |domain| * q^m).
    """
    f, q, m = sys.field, sys.q, sys.m
    _check_dp(q, m, limit)
    dtype = kernels.count_dtype(sys.domain_size**sys.l)
    add = f.add_table
    dist = np.zeros(q**m, dtype=dtype)
    dist[0] = 1
    supports: dict[int, list] = {}
    for a in sys.weights:
        if a not in supports:
            supports[a] = _support(f, sys.exponents, a, sys.domain_elements)
        dist = kernels.convolve(dist, supports[a], add, q, m, backend=backend)
    return dist


def distributions_by_length(
    field: FieldSpec,
    exponents: Sequence[int],
    l_max: int,
    *,
    domain=None,
    limit: int = DEFAULT_DP_LIMIT,
    backend: str | None = None,
):
    """Yield ``(l, distribution)`` for the unweighted system with l = 1..l_max unknowns.

    Each step is one convolution of the previous distribution, so a sweep over
    l costs no more than its largest member.
    """
    exponents = tuple(exponents)
    q, m = field.q, len(exponents)
    _check_dp(q, m, limit)
    elements = tuple(range(q)) if domain is None else tuple(domain)
    dtype = kernels.count_dtype(len(elements) ** l_max)
    support = _support(field, exponents, 1, elements)
    dist = np.zeros(q**m, dtype=dtype)
    dist[0] = 1
    for l in range(1, l_max + 1):
        dist = kernels.convolve(dist, support, field.add_table, q, m, backend=backend)
        yield l, dist


def count_points_dp(sys: WeightedDiagonalSystem, *, limit: int = DEFAULT_DP_LIMIT, backend=None) -> SolutionCount:
    if sys.infeasible:
        count = 0
    else:
        count = int(solution_distribution(sys, limit=limit, backend=backend)[sys.target_index])
    return SolutionCount(count, "dp", sys.q, sys.m, sys.l, sys.exponents, sys.targets)


def bruteforce_distribution(sys: WeightedDiagonalSystem, *, limit: int = DEFAULT_ORACLE_LIMIT) -> Counter:
    """Tally of ``(sum_j a_j y_j**d_i)_i`` over every tuple in domain^l."""
    f = sys.field
    dom = sys.domain_elements
    if len(dom) ** sys.l > limit:
        raise LimitExceededError(f"|domain|^l = {len(dom)}^{sys.l} exceeds the oracle limit {limit}")
    elems = [FieldElement(f, y) for y in dom]
    powers = {y.index: [element_pow(y, d).index for d in sys.exponents] for y in elems}
    weights = [a % f.p for a in sys.weights]
    tally: Counter = Counter()
    for tup in itertools.product(dom, repeat=sys.l):
        sums = [0] * sys.m
        for a, y in zip(weights, tup):
            py = powers[y]
            for i in range(sys.m):
                sums[i] = f.add(sums[i], f.mul(a, py[i]))
        tally[tuple(sums)] += 1
    return tally


def count_points_bruteforce(sys: WeightedDiagonalSystem, *, limit: int = DEFAULT_ORACLE_LIMIT) -> SolutionCount:
    if sys.infeasible:
        count = 0
    else:
        count = bruteforce_distribution(sys, limit=limit)[sys.targets]
    return SolutionCount(count, "bruteforce", sys.q, sys.m, sys.l, sys.exponents, sys.targets)


def count_slice_equal_coords(sys: WeightedDiagonalSystem, *, limit: int = DEFAULT_DP_LIMIT) -> SolutionCount:
    """Solutions with X_1 = X_2, via the collapsed system with weights (2, 1, ..., 1)."""
    if any(a != 1 for a in sys.weights):
        raise ValueError("slice counting expects an unweighted system")
    if sys.l < 2:
        raise ValueError("need at least two unknowns")
    collapsed = replace(sys, weights=(2,) + (1,) * (sys.l - 2))
    res = count_points_dp(collapsed, limit=limit)
    return replace(res, method="dp-slice")


@dataclass(frozen=True)
class HomogeneousCheck:
    equal: bool
    power_sum_solutions: int
    elementary_solutions: int


def homogeneous_equivalence_check(field: FieldSpec, k: int, m: int, *, limit: int = DEFAULT_ORACLE_LIMIT) -> HomogeneousCheck:
    """Compare {P_1 = ... = P_m = 0} with {Pi_1 = ... = Pi_m = 0} on F_q^k by enumeration."""
    if factorial(k) % field.p == 0:
        raise ValueError(f"p = {field.p} divides k! = {k}!; the comparison needs p > k")
    if field.q**k > limit:
        raise LimitExceededError(f"q^k = {field.q}^{k} exceeds the oracle limit {limit}")
    power_zero = set()
    elem_zero = set()
    for tup in itertools.product(range(field.q), repeat=k):
        P, Pi = power_sums_and_elementary(tup, m, field)
        if not any(P):
            power_zero.add(tup)
        if not any(Pi):
            elem_zero.add(tup)
    return HomogeneousCheck(power_zero == elem_zero, len(power_zero), len(elem_zero))


def parse_targets(field: FieldSpec, values) -> tuple[int, ...]:
    return tuple(as_index(field, v) for v in values)
