"""Independent reference implementations and frozen expected values.

Nothing here imports the package's counting code: every oracle is a direct
transcription of a definition, slow but obviously correct.
"""

from __future__ import annotations

import itertools
from collections import Counter
from math import factorial

# partition numbers p(0..20), OEIS A000041
PARTITION_NUMBERS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176, 231, 297, 385, 490, 627]

# value-set sizes quoted for the polynomial families
IMAGE_T2_GF5 = 3  # 1 + (5-1)/gcd(2,4)
IMAGE_T3_MINUS_T2_GF3 = 2  # q - q/p

# hand-checked small counts
SSP_GF5_K2_SUM0 = 2  # {1,4}, {2,3}
SSP_GF5_K2_SUM0_SQ3 = 1  # {2,3}
DIAG_GF5_X2_EQ4 = 2  # x = 2, 3
DIAG_GF3_X2_Y2_EQ0 = 1  # (0, 0)
DIAG_GF2_LINEAR3_EQ1 = 4  # odd-weight vectors
SLICE_GF3_2X2_EQ2 = 2  # x^2 = 1

# worked bound values
BOUND_Q9_K5_M2_D3 = 54 * 9**6 * 243
BOUND_Q4_K3_M1_D2 = 27 * 5**4 * 8
SANDWICH_Q4_K2 = ((16, 9), (2, 1), (4, 1))  # lower, ratio, upper as fractions


def partition_number(n: int) -> int:
    """Euler's pentagonal-number recurrence."""
    p = [1] + [0] * n
    for i in range(1, n + 1):
        total, j = 0, 1
        while True:
            g1 = j * (3 * j - 1) // 2
            g2 = j * (3 * j + 1) // 2
            if g1 > i:
                break
            sign = 1 if j % 2 else -1
            total += sign * p[i - g1]
            if g2 <= i:
                total += sign * p[i - g2]
            j += 1
        p[i] = total
    return p[n]


def cycle_lengths(perm: tuple[int, ...]) -> tuple[int, ...]:
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if not seen[i]:
            n, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                n += 1
            out.append(n)
    return tuple(sorted(out, reverse=True))


def symmetric_group_types(k: int) -> Counter:
    """Cycle-type histogram of S_k by listing all k! permutations."""
    return Counter(cycle_lengths(p) for p in itertools.permutations(range(k)))


def p_cycles_bruteforce(k: int, j: int, p: int) -> int:
    return sum(
        1
        for perm in itertools.permutations(range(k))
        if len(c := cycle_lengths(perm)) == j and all(x % p == 0 for x in c)
    )


# --- a naive model of GF(p^s) ----------------------------------------------------

def poly_mul_mod(a, b, modulus, p):
    """Schoolbook product of coefficient lists (low to high) reduced by a monic modulus."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    s = len(modulus) - 1
    for deg in range(len(prod) - 1, s - 1, -1):
        c = prod[deg]
        if c:
            for i in range(s + 1):
                prod[deg - s + i] = (prod[deg - s + i] - c * modulus[i]) % p
    out = prod[:s] + [0] * (s - len(prod))
    return out[:s]


def to_coeffs(x: int, p: int, s: int) -> list[int]:
    return [(x // p**j) % p for j in range(s)]


def from_coeffs(c, p: int) -> int:
    return sum(ci * p**j for j, ci in enumerate(c))


class NaiveField:
    """GF(p^s) arithmetic on coefficient vectors, given the defining modulus."""

    def __init__(self, p: int, s: int, modulus):
        self.p, self.s, self.modulus, self.q = p, s, list(modulus), p**s

    def add(self, x: int, y: int) -> int:
        a, b = to_coeffs(x, self.p, self.s), to_coeffs(y, self.p, self.s)
        return from_coeffs([(u + v) % self.p for u, v in zip(a, b)], self.p)

    def mul(self, x: int, y: int) -> int:
        a, b = to_coeffs(x, self.p, self.s), to_coeffs(y, self.p, self.s)
        return from_coeffs(poly_mul_mod(a, b, self.modulus, self.p), self.p)

    def pow(self, x: int, e: int) -> int:
        out = 1
        for _ in range(e):
            out = self.mul(out, x)
        return out


def naive_ssp(nf: NaiveField, domain, k: int, exponents, targets) -> int:
    count = 0
    powers = {a: [nf.pow(a, d) for d in exponents] for a in domain}
    for subset in itertools.combinations(domain, k):
        sums = [0] * len(exponents)
        for a in subset:
            sums = [nf.add(s, v) for s, v in zip(sums, powers[a])]
        if tuple(sums) == tuple(targets):
            count += 1
    return count


def naive_diagonal(nf: NaiveField, exponents, weights, targets) -> int:
    count = 0
    for tup in itertools.product(range(nf.q), repeat=len(weights)):
        sums = [0] * len(exponents)
        for a, y in zip(weights, tup):
            for i, d in enumerate(exponents):
                term = 0
                for _ in range(a):
                    term = nf.add(term, nf.pow(y, d))
                sums[i] = nf.add(sums[i], term)
        if tuple(sums) == tuple(targets):
            count += 1
    return count


def rising_over_factorial_float(q: float, k: int) -> float:
    out = 1.0
    for i in range(k):
        out *= q**0.5 + i
    return out / factorial(k)
