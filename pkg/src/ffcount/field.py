"""Concrete model of GF(p^s).

Elements are stored as integers ``0 <= x < q``: the element
``c_0 + c_1 T + ... + c_{s-1} T^{s-1}`` (power basis of the modulus) has
index ``sum(c_j * p**j)``.  The canonical element order is the order of these
indices, which is lexicographic on ``(c_{s-1}, ..., c_0)``.  A prime-field
element ``c`` therefore has index ``c``.

Hot code works on the integer indices through the table methods of
:class:`FieldSpec`; :class:`FieldElement` is the user-facing wrapper.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "FieldSpec",
    "FieldElement",
    "PolySpec",
    "FieldSizeError",
    "make_field",
    "element_pow",
    "frobenius_inverse",
    "image_set",
    "dickson_eval",
    "is_prime",
    "is_irreducible",
    "field_from_order",
    "dickson_values",
    "dickson_table",
    "gcd_family_size",
    "MAX_FIELD_ORDER",
    "ADD_TABLE_LIMIT",
]

MAX_FIELD_ORDER = 1 << 16
ADD_TABLE_LIMIT = 2048


class FieldSizeError(ValueError):
    """Requested field is larger than the configured limit."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over GF(p), coefficient lists low -> high -----------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], f: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _poly_mulmod(a: list[int], b: list[int], f: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_mod(out, f, p)


def _poly_powmod(a: list[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(list(a), f, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial ``f`` (coefficients low -> high)."""
    s = len(f) - 1
    if s < 1:
        return False
    if s == 1:
        return True
    x = [0, 1]
    if _poly_sub(_poly_powmod(x, p**s, f, p), x, p):
        return False
    for r in _prime_factors(s):
        h = _poly_sub(_poly_powmod(x, p ** (s // r), f, p), x, p)
        if len(_poly_gcd(list(f), h, p)) != 1:
            return False
    return True


def _smallest_irreducible(p: int, s: int) -> tuple[int, ...]:
    for idx in range(p**s):
        low = [(idx // p**j) % p for j in range(s)]
        f = low + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# --- the field ---------------------------------------------------------------

class FieldSpec:
    """GF(p^s) with a fixed monic irreducible modulus.

    Instances are immutable; lookup tables are built lazily on first use.
    """

    def __init__(self, p: int, s: int, modulus: Sequence[int]):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if s < 1:
            raise ValueError("extension degree must be >= 1")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != s + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree s")
        if not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.s = s
        self.modulus = modulus
        self.q = p**s

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, s={self.s}, modulus={self.modulus})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    @property
    def _key(self):
        return (self.p, self.s, self.modulus)

    # coordinates

    def coeffs(self, x: int) -> tuple[int, ...]:
        p = self.p
        return tuple((x // p**j) % p for j in range(self.s))

    def from_coeffs(self, c: Sequence[int]) -> int:
        if len(c) > self.s:
            c = _poly_mod(list(c), self.modulus, self.p)
        return sum((int(v) % self.p) * self.p**j for j, v in enumerate(c))

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` in the prime subfield."""
        return n % self.p

    # element wrappers

    def __call__(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            return x
        if isinstance(x, (tuple, list)):
            return FieldElement(self, self.from_coeffs(x))
        x = int(x)
        if not 0 <= x < self.q:
            raise ValueError(f"element index {x} out of range for GF({self.q})")
        return FieldElement(self, x)

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, i) for i in range(self.q)]

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    # tables

    @cached_property
    def _digits(self) -> np.ndarray:
        idx = np.arange(self.q, dtype=np.int64)
        return np.stack([(idx // self.p**j) % self.p for j in range(self.s)], axis=1)

    @cached_property
    def _pow_p(self) -> np.ndarray:
        return self.p ** np.arange(self.s, dtype=np.int64)

    @cached_property
    def _exp_log(self) -> tuple[list[int], list[int]]:
        q, p = self.q, self.p
        if q == 2:
            return [1, 1], [0, 0]
        order = q - 1
        factors = _prime_factors(order)
        for g in range(2, q):
            gpoly = list(self.coeffs(g))
            # g is primitive iff g^((q-1)/r) != 1 for every prime r | q-1
            if all(_poly_powmod(gpoly, order // r, self.modulus, p) != [1] for r in factors):
                break
        else:  # pragma: no cover
            raise AssertionError("no primitive element")
        exp = [0] * (2 * order)
        log = [0] * q
        cur = [1]
        for i in range(order):
            x = self.from_coeffs(cur)
            exp[i] = x
            log[x] = i
            cur = _poly_mulmod(cur, gpoly, self.modulus, p)
        for i in range(order, 2 * order):
            exp[i] = exp[i - order]
        return exp, log

    @property
    def primitive_element(self) -> int:
        return self._exp_log[0][1]

    @cached_property
    def add_table(self) -> np.ndarray:
        """``add_table[a, b]`` is the index of ``a + b``; only for q <= ADD_TABLE_LIMIT."""
        if self.q > ADD_TABLE_LIMIT:
            raise FieldSizeError(f"addition table not built for q={self.q} > {ADD_TABLE_LIMIT}")
        d = self._digits
        summed = (d[:, None, :] + d[None, :, :]) % self.p
        return (summed @ self._pow_p).astype(np.int64)

    @cached_property
    def _neg_list(self) -> list[int]:
        d = (-self._digits) % self.p
        return (d @ self._pow_p).tolist()

    # scalar arithmetic on indices

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.s == 1:
            return (a + b) % p
        if p == 2:
            return a ^ b
        out, w = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * w
            a //= p
            b //= p
            w *= p
        return out

    def neg(self, a: int) -> int:
        if self.s == 1:
            return (-a) % self.p
        return self._neg_list[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.s == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        exp, log = self._exp_log
        return exp[log[a] + log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        if self.s == 1:
            return pow(a, self.p - 2, self.p)
        exp, log = self._exp_log
        return exp[(self.q - 1 - log[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        """Table-driven power; 0**0 == 1."""
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.s == 1:
            return pow(a, e, self.p)
        exp, log = self._exp_log
        return exp[log[a] * e % (self.q - 1)]

    def scale(self, n: int, a: int) -> int:
        """``n * a`` for an integer ``n`` (reduced mod p)."""
        return self.mul(n % self.p, a)

    def power_table(self, e: int) -> list[int]:
        return [self.pow(x, e) for x in range(self.q)]


@dataclass(frozen=True, slots=True)
class FieldElement:
    field: FieldSpec
    index: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.index)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements from different fields")
            return other.index
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.add(self.index, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.sub(self.index, o))

    def __rsub__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.sub(o, self.index))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.index))

    def __mul__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.mul(self.index, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.mul(self.index, self.field.inv(o)))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.index))

    def __pow__(self, e: int):
        if e < 0:
            return element_pow(self.inverse(), -e)
        return element_pow(self, e)

    def __bool__(self) -> bool:
        return self.index != 0

    def __int__(self) -> int:
        return self.index

    def __lt__(self, other: "FieldElement") -> bool:
        return self.index < other.index

    def __repr__(self) -> str:
        return f"GF({self.field.q})<{list(self.coeffs)}>"


def make_field(p: int, s: int = 1, *, limit: int = MAX_FIELD_ORDER) -> FieldSpec:
    """GF(p^s) with the smallest monic irreducible modulus (index order).

    ``make_field(5, 1)`` uses the modulus ``T``.
    """
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if s < 1:
        raise ValueError("extension degree must be >= 1")
    if p**s > limit:
        raise FieldSizeError(f"q = {p}^{s} exceeds the field size limit {limit}")
    return _make_field_cached(p, s)


_FIELD_CACHE: dict[tuple[int, int], FieldSpec] = {}


def _make_field_cached(p: int, s: int) -> FieldSpec:
    key = (p, s)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = FieldSpec(p, s, _smallest_irreducible(p, s))
    return _FIELD_CACHE[key]


def field_from_order(q: int, *, limit: int = MAX_FIELD_ORDER) -> FieldSpec:
    """Field of order ``q`` (a prime power)."""
    for p in _prime_factors(q):
        s, r = 0, q
        while r % p == 0:
            r //= p
            s += 1
        if r == 1:
            return make_field(p, s, limit=limit)
    raise ValueError(f"{q} is not a prime power")


def element_pow(x: FieldElement, e: int) -> FieldElement:
    """Square-and-multiply power; ``x**0 == 1`` for every x including 0."""
    if e < 0:
        raise ValueError("negative exponent")
    f = x.field
    result, base = 1, x.index
    while e:
        if e & 1:
            result = f.mul(result, base)
        base = f.mul(base, base)
        e >>= 1
    return FieldElement(f, result)


def frobenius_inverse(x: FieldElement, r: int) -> FieldElement:
    """The unique ``y`` with ``y**(p**r) == x``, i.e. ``x**(p**(s - r))``."""
    f = x.field
    if not 0 <= r < f.s:
        raise ValueError(f"r must satisfy 0 <= r < s = {f.s}")
    if r == 0:
        return x
    return element_pow(x, f.p ** (f.s - r))


@dataclass(frozen=True)
class PolySpec:
    """Dense polynomial over a field; ``coeffs[i]`` is the index of the T^i coefficient."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(v) for v in c))

    @classmethod
    def from_terms(cls, terms: dict[int, int]) -> "PolySpec":
        deg = max(terms) if terms else 0
        c = [0] * (deg + 1)
        for e, a in terms.items():
            c[e] = a
        return cls(tuple(c))

    @classmethod
    def monomial(cls, n: int) -> "PolySpec":
        return cls.from_terms({n: 1})

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def check_no_low_terms(self) -> None:
        """Shape used for image-set domains: degree >= 2, no constant or linear term."""
        if self.degree < 2 or any(self.coeffs[:2]):
            raise ValueError("expected f = a_n T^n + ... + a_2 T^2 with n >= 2")

    def evaluate(self, field: FieldSpec, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = field.add(field.mul(acc, x), c % field.q)
        return acc

    def values(self, field: FieldSpec) -> list[int]:
        return [self.evaluate(field, x) for x in range(field.q)]


def image_set(f: PolySpec, field: FieldSpec) -> tuple[FieldElement, ...]:
    """Value set of ``f`` over the whole field, in canonical order."""
    return tuple(FieldElement(field, v) for v in sorted(set(f.values(field))))


def dickson_eval(n: int, a: FieldElement, x: FieldElement) -> FieldElement:
    """D_n(x, a) by the recurrence D_0 = 2, D_1 = x, D_j = x D_{j-1} - a D_{j-2}."""
    f = x.field
    d0, d1 = f.from_int(2), x.index
    if n == 0:
        return FieldElement(f, d0)
    for _ in range(n - 1):
        d0, d1 = d1, f.sub(f.mul(x.index, d1), f.mul(a.index, d0))
    return FieldElement(f, d1)


def dickson_values(n: int, a: int, field: FieldSpec) -> list[int]:
    return [dickson_eval(n, FieldElement(field, a), FieldElement(field, x)).index for x in range(field.q)]


def dickson_table(n_max: int, a: int, field: FieldSpec):
    """Yield ``(n, [D_n(x, a) for x in field])`` for n = 0..n_max, sharing the recurrence."""
    f = field
    xs = list(range(f.q))
    prev = [f.from_int(2)] * f.q
    yield 0, prev
    if n_max < 1:
        return
    cur = xs
    yield 1, cur
    for n in range(2, n_max + 1):
        prev, cur = cur, [f.sub(f.mul(x, d1), f.mul(a, d0)) for x, d1, d0 in zip(xs, cur, prev)]
        yield n, cur


def as_index(field: FieldSpec, x) -> int:
    if isinstance(x, FieldElement):
        if x.field != field:
            raise ValueError("element from a different field")
        return x.index
    x = int(x)
    if not 0 <= x < field.q:
        raise ValueError(f"element index {x} out of range for GF({field.q})")
    return x


def as_indices(field: FieldSpec, xs: Iterable) -> tuple[int, ...]:
    return tuple(as_index(field, x) for x in xs)


def gcd_family_size(n: int, q: int) -> int:
    """Value-set size of T^n over GF(q)."""
    return 1 + (q - 1) // gcd(n, q - 1)
