"""N_m(k, b, D): k-subsets of D with prescribed power-sum moments.

Three independent routes:

* inclusion-exclusion over the cycle types of S_k, each term a weighted
  diagonal count (:func:`count_subsets_inclusion_exclusion`);
* a subset DP over the elements of D (:func:`moment_distribution_dp`);
* literal enumeration of k-subsets (:func:`count_subsets_enum`).
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

import numpy as np

from . import kernels
from .combinatorics import InexactDivisionError, conjugacy_class_size, cycle_types
from .diagonal import (
    DEFAULT_DP_LIMIT,
    DEFAULT_ORACLE_LIMIT,
    LimitExceededError,
    WeightedDiagonalSystem,
    _check_dp,
    decode_vector,
    encode_vector,
    solution_distribution,
    value_vectors,
)
from .field import FieldElement, FieldSpec, PolySpec, as_indices, element_pow

__all__ = [
    "MomentInstance",
    "MomentDistribution",
    "inclusion_exclusion_distribution",
    "count_subsets_inclusion_exclusion",
    "enumeration_distribution",
    "count_subsets_enum",
    "moment_distribution_dp",
    "count_subsets_dp",
    "ImageCount",
    "count_subsets_image",
    "image_ab_tallies",
    "METHODS",
]


@dataclass(frozen=True)
class MomentInstance:
    """One moment subset-sum query.

    ``domain=None`` means the whole field.  ``k > |D|`` is allowed and
    counts as zero.
    """

    field: FieldSpec
    k: int
    exponents: tuple[int, ...]
    targets: tuple[int, ...]
    domain: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        exps = tuple(int(d) for d in self.exponents)
        if not exps or any(d < 1 for d in exps) or any(a >= b for a, b in zip(exps, exps[1:])):
            raise ValueError(f"exponents must be positive and strictly increasing, got {exps}")
        targets = as_indices(self.field, self.targets)
        if len(targets) != len(exps):
            raise ValueError(f"{len(exps)} exponents but {len(targets)} targets")
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "targets", targets)
        if self.domain is not None:
            object.__setattr__(self, "domain", tuple(sorted(set(as_indices(self.field, self.domain)))))

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def m(self) -> int:
        return len(self.exponents)

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(range(self.q)) if self.domain is None else self.domain

    @property
    def target_index(self) -> int:
        return encode_vector(self.q, self.targets)


@dataclass(frozen=True)
class MomentDistribution:
    """N_m(k, b, D) for every b, as a dense array indexed by encoded b."""

    q: int
    m: int
    k: int
    domain_size: int
    counts: np.ndarray

    def __getitem__(self, b: Sequence[int]) -> int:
        return int(self.counts[encode_vector(self.q, b)])

    def total(self) -> int:
        return int(sum(int(x) for x in self.counts))

    def nonzero(self):
        for idx in np.flatnonzero(self.counts):
            yield decode_vector(self.q, self.m, int(idx)), int(self.counts[idx])

    def as_list(self) -> list[int]:
        return [int(x) for x in self.counts]


def _domain_key(domain):
    return None if domain is None else tuple(domain)


# --- inclusion-exclusion ------------------------------------------------------

@lru_cache(maxsize=4096)
def _collapsed_distribution(field, domain, exponents, lengths, limit):
    # X_tau: coordinates are equal inside each cycle of tau and unconstrained
    # across cycles, so it is the weighted system with one unknown per cycle.
    sys = WeightedDiagonalSystem(field, exponents, lengths, (0,) * len(exponents), domain)
    dist = solution_distribution(sys, limit=limit)
    dist.setflags(write=False)
    return dist


def inclusion_exclusion_distribution(
    field: FieldSpec,
    domain,
    k: int,
    exponents: Sequence[int],
    *,
    limit: int = DEFAULT_DP_LIMIT,
) -> MomentDistribution:
    """|X-bar| = sum_tau (-1)^(k - l(tau)) C(tau) |X_tau|, then N = |X-bar| / k!."""
    exponents = tuple(exponents)
    domain = _domain_key(domain)
    n = field.q if domain is None else len(domain)
    q, m = field.q, len(exponents)
    _check_dp(q, m, limit)
    if k > n:
        return MomentDistribution(q, m, k, n, np.zeros(q**m, dtype=object))
    total = np.zeros(q**m, dtype=object)
    for tau in cycle_types(k):
        dist = _collapsed_distribution(field, domain, exponents, tau.lengths, limit)
        total += (tau.sign * conjugacy_class_size(tau)) * dist.astype(object)
    kf = factorial(k)
    out = np.empty_like(total)
    for i, x in enumerate(total):
        quo, rem = divmod(int(x), kf)
        if rem:
            raise InexactDivisionError(f"k! = {kf} does not divide {x} at target {decode_vector(q, m, i)}")
        out[i] = quo
    return MomentDistribution(q, m, k, n, out)


def count_subsets_inclusion_exclusion(inst: MomentInstance, *, limit: int = DEFAULT_DP_LIMIT) -> int:
    dist = inclusion_exclusion_distribution(inst.field, inst.domain, inst.k, inst.exponents, limit=limit)
    return int(dist.counts[inst.target_index])


# --- enumeration ------------------------------------------------------------

def _moment_vectors(field: FieldSpec, exponents, elements):
    return {
        a: [element_pow(FieldElement(field, a), d).index for d in exponents] for a in elements
    }


def enumeration_distribution(
    field: FieldSpec, domain, k: int, exponents: Sequence[int], *, limit: int = DEFAULT_ORACLE_LIMIT
) -> MomentDistribution:
    """Tally the moment vector of every k-subset of D."""
    elements = tuple(range(field.q)) if domain is None else tuple(domain)
    n = len(elements)
    if comb(n, k) > limit:
        raise LimitExceededError(f"binom({n}, {k}) exceeds the enumeration limit {limit}")
    q, m = field.q, len(exponents)
    powers = _moment_vectors(field, exponents, elements)
    tally: Counter = Counter()
    for subset in itertools.combinations(elements, k):
        sums = [0] * m
        for a in subset:
            pa = powers[a]
            for i in range(m):
                sums[i] = field.add(sums[i], pa[i])
        tally[tuple(sums)] += 1
    counts = np.zeros(q**m, dtype=object)
    for b, c in tally.items():
        counts[encode_vector(q, b)] = c
    return MomentDistribution(q, m, k, n, counts)


def count_subsets_enum(inst: MomentInstance, *, limit: int = DEFAULT_ORACLE_LIMIT) -> int:
    dist = enumeration_distribution(inst.field, inst.domain, inst.k, inst.exponents, limit=limit)
    return int(dist.counts[inst.target_index])


# --- subset DP ----------------------------------------------------------------

def moment_distribution_dp(
    field: FieldSpec,
    domain,
    k: int,
    exponents: Sequence[int],
    *,
    limit: int = DEFAULT_DP_LIMIT,
    backend: str | None = None,
) -> MomentDistribution:
    """Process D one element at a time; state = (subset size, moment vector)."""
    exponents = tuple(exponents)
    elements = tuple(range(field.q)) if domain is None else tuple(domain)
    n = len(elements)
    q, m = field.q, len(exponents)
    _check_dp(q, m, limit)
    if k * q**m > limit:
        raise LimitExceededError(f"k * q^m = {k} * {q}^{m} exceeds the DP limit {limit}")
    if k > n:
        return MomentDistribution(q, m, k, n, np.zeros(q**m, dtype=object))
    dtype = kernels.count_dtype(max(comb(n, j) for j in range(k + 1)))
    add = field.add_table
    layers = [np.zeros(q**m, dtype=dtype) for _ in range(k + 1)]
    layers[0][0] = 1
    vecs = value_vectors(field, exponents, 1, elements)
    for used, v in enumerate(vecs, start=1):
        for j in range(min(k, used), 0, -1):
            kernels.shift_add(layers[j], layers[j - 1], v, 1, add, q, m, backend=backend)
    return MomentDistribution(q, m, k, n, layers[k])


def count_subsets_dp(inst: MomentInstance, *, limit: int = DEFAULT_DP_LIMIT) -> int:
    dist = moment_distribution_dp(inst.field, inst.domain, inst.k, inst.exponents, limit=limit)
    return int(dist.counts[inst.target_index])


METHODS = {
    "ie": count_subsets_inclusion_exclusion,
    "dist": count_subsets_dp,
    "brute": count_subsets_enum,
}


# --- image-set domains --------------------------------------------------------

@dataclass(frozen=True)
class ImageCount:
    count: int
    domain: tuple[int, ...]
    a_size: int | None = None
    b_size: int | None = None
    # sum over A of prod |f^-1(y_i)|; this is what |B| actually equals
    b_from_fibres: int | None = None

    @property
    def ab_equal(self) -> bool | None:
        if self.a_size is None:
            return None
        return self.a_size == self.b_size


def image_ab_tallies(f: PolySpec, field: FieldSpec, k: int, exponents: Sequence[int], *, limit: int = DEFAULT_ORACLE_LIMIT):
    """Tallies, by moment vector, of the sets A (in D^k) and B (in F_q^k).

    A: pairwise-distinct tuples of image values.  B: tuples of field elements
    with pairwise-distinct x and pairwise-distinct f(x); moments taken of f(x).
    The third tally weights each A-tuple by the product of its fibre sizes.
    """
    q = field.q
    if q**k > limit:
        raise LimitExceededError(f"q^k = {q}^{k} exceeds the oracle limit {limit}")
    fx = f.values(field)
    fibre = Counter(fx)
    image = sorted(fibre)
    powers = _moment_vectors(field, exponents, range(q))
    m = len(exponents)

    def moments(ys):
        sums = [0] * m
        for y in ys:
            for i in range(m):
                sums[i] = field.add(sums[i], powers[y][i])
        return tuple(sums)

    a_tally: Counter = Counter()
    weighted: Counter = Counter()
    for ys in itertools.permutations(image, k):
        b = moments(ys)
        a_tally[b] += 1
        w = 1
        for y in ys:
            w *= fibre[y]
        weighted[b] += w
    b_tally: Counter = Counter()
    for xs in itertools.product(range(q), repeat=k):
        ys = [fx[x] for x in xs]
        if len(set(xs)) == k and len(set(ys)) == k:
            b_tally[moments(ys)] += 1
    return a_tally, b_tally, weighted


def count_subsets_image(
    f: PolySpec,
    field: FieldSpec,
    k: int,
    exponents: Sequence[int],
    targets: Sequence[int],
    *,
    method: str = "ie",
    check_ab: bool = False,
    limit: int | None = None,
) -> ImageCount:
    """N_m(k, b, f(F_q)), computed over the materialised image set.

    With ``check_ab`` the sets A and B are enumerated as well.  ``|A| = k! N``
    and ``|B| = sum_A prod |f^-1(y_i)|`` are asserted; ``|A| == |B|`` only
    holds when f is injective on the relevant values and is reported through
    :attr:`ImageCount.ab_equal`.
    """
    domain = tuple(sorted(set(f.values(field))))
    inst = MomentInstance(field, k, tuple(exponents), tuple(targets), domain)
    kwargs = {} if limit is None else {"limit": limit}
    n = METHODS[method](inst, **kwargs)
    if not check_ab:
        return ImageCount(n, domain)
    a_tally, b_tally, weighted = image_ab_tallies(f, field, k, inst.exponents, **kwargs)
    b = inst.targets
    if a_tally[b] != n * factorial(k):
        raise AssertionError(f"|A| = {a_tally[b]} but k! N = {n * factorial(k)}")
    if b_tally[b] != weighted[b]:
        raise AssertionError(f"|B| = {b_tally[b]} but the fibre-weighted count is {weighted[b]}")
    return ImageCount(n, domain, a_tally[b], b_tally[b], weighted[b])
