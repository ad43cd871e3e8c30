"""Exact arithmetic in Q[sqrt(q)]."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from numbers import Rational

__all__ = ["QSqrtNumber", "sqrt_q", "sqrt_power"]


def _is_square(n: int) -> int | None:
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


class QSqrtNumber:
    """``a + b*sqrt(q)`` with rational ``a``, ``b`` and a positive integer ``q``.

    When ``q`` is a perfect square the value is folded into ``a`` so that
    ``b == 0``; equality is then structural.  Numbers with different radicands
    only mix when at least one of them is rational.
    """

    __slots__ = ("a", "b", "q")

    def __init__(self, a=0, b=0, q: int = 1):
        if q < 1:
            raise ValueError("radicand must be a positive integer")
        a, b = Fraction(a), Fraction(b)
        if b:
            r = _is_square(q)
            if r is not None:
                a, b = a + b * r, Fraction(0)
        self.a = a
        self.b = b
        self.q = int(q)

    # construction helpers

    @classmethod
    def coerce(cls, x, q: int) -> "QSqrtNumber":
        if isinstance(x, QSqrtNumber):
            return x
        if isinstance(x, (int, Rational)):
            return cls(x, 0, q)
        raise TypeError(f"cannot coerce {type(x).__name__} to QSqrtNumber")

    def _common(self, other) -> tuple["QSqrtNumber", "QSqrtNumber"] | None:
        if isinstance(other, (int, Rational)):
            return self, QSqrtNumber(other, 0, self.q)
        if not isinstance(other, QSqrtNumber):
            return None
        if self.q == other.q:
            return self, other
        if not other.b:
            return self, QSqrtNumber(other.a, 0, self.q)
        if not self.b:
            return QSqrtNumber(self.a, 0, other.q), other
        raise ValueError(f"incompatible radicands {self.q} and {other.q}")

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def conjugate(self) -> "QSqrtNumber":
        return QSqrtNumber(self.a, -self.b, self.q)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.q

    # ring operations

    def __add__(self, other):
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return QSqrtNumber(x.a + y.a, x.b + y.b, x.q)

    __radd__ = __add__

    def __neg__(self):
        return QSqrtNumber(-self.a, -self.b, self.q)

    def __sub__(self, other):
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return QSqrtNumber(x.a - y.a, x.b - y.b, x.q)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return QSqrtNumber(x.a * y.a + x.b * y.b * x.q, x.a * y.b + x.b * y.a, x.q)

    __rmul__ = __mul__

    def inverse(self) -> "QSqrtNumber":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q[sqrt(q)]")
        return QSqrtNumber(self.a / n, -self.b / n, self.q)

    def __truediv__(self, other):
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        if not y.b:
            if y.a == 0:
                raise ZeroDivisionError("division by zero in Q[sqrt(q)]")
            return QSqrtNumber(x.a / y.a, x.b / y.a, x.q)
        return x * y.inverse()

    def __rtruediv__(self, other):
        return QSqrtNumber.coerce(other, self.q) / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = QSqrtNumber(1, 0, self.q)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # order

    def sign(self) -> int:
        """Exact sign, decided without floating point."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: the larger of a^2 and b^2 q wins
        lhs, rhs = self.a * self.a, self.b * self.b * self.q
        if lhs > rhs:
            return sa
        if lhs < rhs:
            return sb
        return 0

    def _cmp(self, other) -> int:
        diff = self - other
        if diff is NotImplemented:
            raise TypeError("unorderable")
        return diff.sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        try:
            pair = self._common(other)
        except ValueError:
            return False
        if pair is None:
            return NotImplemented
        x, y = pair
        return x.a == y.a and x.b == y.b

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.q))

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __float__(self):
        return float(self.a) + float(self.b) * self.q**0.5

    def __repr__(self):
        if not self.b:
            return f"QSqrtNumber({self.a})"
        return f"QSqrtNumber({self.a} + {self.b}*sqrt({self.q}))"

    def to_json(self) -> dict[str, str]:
        return {
            "a_num": str(self.a.numerator),
            "a_den": str(self.a.denominator),
            "b_num": str(self.b.numerator),
            "b_den": str(self.b.denominator),
            "q": str(self.q),
        }

    @classmethod
    def from_json(cls, d: dict) -> "QSqrtNumber":
        return cls(
            Fraction(int(d["a_num"]), int(d["a_den"])),
            Fraction(int(d["b_num"]), int(d["b_den"])),
            int(d["q"]),
        )


def sqrt_q(q: int) -> QSqrtNumber:
    return QSqrtNumber(0, 1, q)


def sqrt_power(q: int, n: int) -> QSqrtNumber:
    """``sqrt(q)**n`` for any integer ``n``, without repeated multiplication."""
    half, odd = divmod(n, 2)
    base = Fraction(q) ** half
    if odd:
        return QSqrtNumber(0, base, q)
    return QSqrtNumber(base, 0, q)
