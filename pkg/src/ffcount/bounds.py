"""Exact evaluation of the counting estimates, error terms and existence tests.

Nothing here uses floating point.  Fractional powers are removed by raising
both sides of an inequality to a common power (``x <= q**(a/b)`` iff
``x**b <= q**a`` for positive x), and expressions with ``sqrt(q)`` are
decided by the exact sign test of :class:`~ffcount.qsqrt.QSqrtNumber`.
Decimal exponents are read as exact rationals: 0.9 = 9/10, 0.24 = 6/25,
0.02 = 1/50, 0.1 = 1/10.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction
from math import comb, factorial, isqrt, perm

from .qsqrt import QSqrtNumber, sqrt_power, sqrt_q

__all__ = [
    "BoundValue",
    "neg_sqrt_binom",
    "bound_main_estimate",
    "error_term_M",
    "error_term_M1",
    "nm_main_term",
    "brun_lower_bound",
    "brun_inequality_holds",
    "ExistencePredicates",
    "existence_predicates",
    "homogeneous_bounds",
    "SandwichResult",
    "sandwich_check",
    "auxiliary_remarks_check",
    "k_le_2q09",
    "k_le_q024",
    "dm_le_sqrt3_k002",
    "reference_predicates",
    "exact_predicate_parts",
    "CountReport",
    "CSV_HEADER",
    "qsqrt_text",
    "verify_instance",
    "sandwich_hypothesis",
]


@dataclass(frozen=True)
class BoundValue:
    value: QSqrtNumber
    formula: str
    inputs: dict = dc_field(default_factory=dict)
    # None when the formula has no hypothesis of its own
    in_hypothesis: bool | None = None

    def to_json(self) -> dict:
        return {
            "value": self.value.to_json(),
            "formula": self.formula,
            "inputs": dict(self.inputs),
            "in_hypothesis": self.in_hypothesis,
        }


def neg_sqrt_binom(q: int, k: int) -> QSqrtNumber:
    """(-1)^k binom(-sqrt q, k) = sqrt(q)(sqrt(q)+1)...(sqrt(q)+k-1) / k!."""
    r = isqrt(q)
    if r * r == q:
        return QSqrtNumber(Fraction(perm(r + k - 1, k), factorial(k)) if k else 1, 0, q)
    # sum over i of (rising-factorial coefficient) * sqrt(q)^i, split by parity
    coeffs = [1]  # coefficients of x^i in x(x+1)...(x+j-1)
    for j in range(k):
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] += c
            nxt[i] += j * c
        coeffs = nxt
    a = b = 0
    for i, c in enumerate(coeffs):
        if c:
            if i % 2:
                b += c * q ** (i // 2)
            else:
                a += c * q ** (i // 2)
    kf = factorial(k)
    return QSqrtNumber(Fraction(a, kf), Fraction(b, kf), q)


def bound_main_estimate(q: int, k: int, m: int, d_m: int) -> BoundValue:
    """27 * 2^(m-1) * (3 + d_m m)^(k+1) * q^(k/2); hypothesis m <= (k-1)/2."""
    coef = 27 * Fraction(2) ** (m - 1) * (3 + d_m * m) ** (k + 1)
    return BoundValue(
        sqrt_power(q, k) * coef,
        "diagonal-system estimate",
        {"q": q, "k": k, "m": m, "d_m": d_m},
        2 * m <= k - 1,
    )


def error_term_M1(q: int, k: int, m: int, d_m: int) -> int:
    return 27 * 2 ** (m - 1) * (3 + d_m * m) ** (k + 1) if m >= 1 else 0


def error_term_M(q: int, k: int, m: int, d_m: int) -> BoundValue:
    """M * (-1)^k binom(-sqrt q, k) with M = 81 * 2^(m-1) * (3 + d_m m)^(k+1)."""
    M = 81 * Fraction(2) ** (m - 1) * (3 + d_m * m) ** (k + 1)
    value = neg_sqrt_binom(q, k) * M
    if value.sign() <= 0:
        raise AssertionError(f"error term is not positive: {value!r}")
    return BoundValue(value, "moment subset-sum error term", {"q": q, "k": k, "m": m, "d_m": d_m})


def nm_main_term(q: int, k: int, m: int, p: int, b_is_zero: bool) -> Fraction:
    """binom(q,k)/q^m, plus the (-1)^(k+k/p) v(b) binom(q/p, k/p)/q^m term when p | k."""
    main = Fraction(comb(q, k))
    if k % p == 0:
        v = q**m - 1 if b_is_zero else -1
        main += (-1) ** (k + k // p) * v * comb(q // p, k // p)
    return main / Fraction(q) ** m


def brun_lower_bound(q: int, k: int, m: int, d_m: int) -> BoundValue:
    """q^(k-m) - A^(k+1) q^(k/2) - k^2/2 (q^(k-m-1) + A^k q^((k-1)/2)),  A = 3 d_m m."""
    A = 3 * d_m * m
    half_k2 = Fraction(k * k, 2)
    value = (
        QSqrtNumber(Fraction(q) ** (k - m), 0, q)
        - sqrt_power(q, k) * A ** (k + 1)
        - (QSqrtNumber(Fraction(q) ** (k - m - 1), 0, q) + sqrt_power(q, k - 1) * A**k) * half_k2
    )
    return BoundValue(value, "Brun sieve lower bound", {"q": q, "k": k, "m": m, "d_m": d_m}, 2 * m <= k - 2)


def brun_inequality_holds(q: int, k: int, m: int, d_m: int) -> bool:
    """q^((k-1)/2 - m) (q - k^2/2) > A^k (A q^(1/2) + k^2/2), the rearranged Brun condition."""
    A = 3 * d_m * m
    half_k2 = Fraction(k * k, 2)
    lhs = sqrt_power(q, k - 1 - 2 * m) * (q - half_k2)
    rhs = (sqrt_q(q) * A + half_k2) * A**k
    return lhs > rhs


# --- integerised comparisons -------------------------------------------------

def k_le_2q09(q: int, k: int) -> bool:
    """k <= 2 q^0.9 - sqrt(q) + 1, i.e. (k - 1 + sqrt q)^10 <= 2^10 q^9."""
    lhs = sqrt_q(q) + (k - 1)
    if lhs.sign() <= 0:
        return True
    return lhs**10 <= 2**10 * q**9


def k_le_q024(q: int, k: int) -> bool:
    """k <= q^(6/25), i.e. k^25 <= q^6."""
    return k <= 0 or k**25 <= q**6


def dm_le_sqrt3_k002(d_m: int, k: int) -> bool:
    """d_m <= (sqrt(3)/3) k^(1/50).

    Both sides are positive; raising to the 100th power gives
    d_m^100 <= 3^-50 k^2, i.e. 3^50 d_m^100 <= k^2.
    """
    return 3**50 * d_m**100 <= k * k


@dataclass(frozen=True)
class ExistencePredicates:
    """One flag per existence/estimate statement; None means not applicable."""

    prop_diagonal: bool | None
    moment_estimate_p_not_div_k: bool
    moment_estimate_p_div_k: bool
    large_k_existence: bool
    large_k_existence_p_div_k: bool
    brun_existence: bool
    image_brun_existence: bool | None

    def to_json(self) -> dict:
        return asdict(self)


def existence_predicates(
    q: int, p: int, s: int, k: int, m: int, d_m: int, n: int | None = None, *, b_is_zero: bool | None = None
) -> ExistencePredicates:
    """Evaluate every theorem hypothesis exactly.

    ``b_is_zero=None`` means the target is unknown: the large-k statement for
    p | k is then only credited through its b != 0 companion.
    """
    if q != p**s:
        raise ValueError(f"q = {q} is not {p}^{s}")
    k_big = k_le_2q09(q, k)

    # q > (7/2 m d_m)^((2k+2)/(k-2m)) iff 2^(2k+2) q^(k-2m) > (7 m d_m)^(2k+2)
    if k - 2 * m <= 0:
        prop = None
    else:
        prop = (
            k >= 5
            and 2 * m <= k - 1
            and 2 ** (2 * k + 2) * q ** (k - 2 * m) > (7 * m * d_m) ** (2 * k + 2)
        )

    est_42 = k % p != 0 and p >= 5 and 2 <= m and 20 * m <= k and k_big and q > 2**20
    est_43 = k % p == 0 and p >= 3 and 20 * m <= k and k_big and q >= 2**21

    d_ok = m <= d_m and dm_le_sqrt3_k002(d_m, k)
    b_case_45 = k % p != 0 or b_is_zero is True
    thm45 = p >= 3 and b_case_45 and d_ok and k_big and q > 2**20
    thm46 = p >= 3 and k % p == 0 and b_is_zero is not True and d_ok and k_big and q >= 2**21

    # m <= d_m <= (k-25)/50 and k <= q^0.24
    thm48 = m <= d_m and 50 * d_m <= k - 25 and k_le_q024(q, k)
    thm52 = None if n is None else (50 * m * n < k - 25 and k_le_q024(q, k))
    return ExistencePredicates(prop, est_42, est_43, thm45, thm46, thm48, thm52)


def homogeneous_bounds(q: int, k: int, m: int) -> tuple[BoundValue, BoundValue]:
    """Error bounds for the homogeneous power-sum system and for N_m(k, 0)."""
    first = sqrt_power(q, k - m + 1) * (27 * Fraction(2) ** (m - 1) * (m * m + 3) ** (k + 1))
    second = neg_sqrt_binom(q, k) * (Fraction(7 * m * m, 2) ** (k + 1)) * sqrt_power(q, -(m - 1))
    inputs = {"q": q, "k": k, "m": m}
    return (
        BoundValue(first, "homogeneous system estimate", inputs),
        BoundValue(second, "homogeneous moment estimate", inputs),
    )


# --- appendix remarks ----------------------------------------------------------

@dataclass(frozen=True)
class SandwichResult:
    lower: QSqrtNumber
    ratio: QSqrtNumber
    upper: QSqrtNumber
    passed: bool


def sandwich_hypothesis(q: int, k: int) -> bool:
    """k <= q - sqrt(q) + 1."""
    return (sqrt_q(q) + (k - q - 1)).sign() <= 0


def sandwich_check(q: int, k: int) -> SandwichResult:
    """(q/(sqrt q + k - 1))^k <= binom(q,k) / ((-1)^k binom(-sqrt q, k)) <= q^(k/2)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if not sandwich_hypothesis(q, k):
        raise ValueError(f"k = {k} > q - sqrt(q) + 1 for q = {q}")
    r = isqrt(q)
    num = perm(q, k)  # q (q-1) ... (q-k+1)
    upper = sqrt_power(q, k)
    if r * r == q:
        den = perm(r + k - 1, k)  # (r+k-1) ... r
        base = r + k - 1
        ratio = QSqrtNumber(Fraction(num, den), 0, q)
        lower = QSqrtNumber(Fraction(q**k, base**k), 0, q)
        # cross-multiplied comparisons avoid reducing huge fractions twice
        passed = q**k * den <= num * base**k and num * num <= q**k * den * den
        return SandwichResult(lower, ratio, upper, passed)
    den = neg_sqrt_binom(q, k) * factorial(k)
    ratio = QSqrtNumber(num, 0, q) / den
    lower = (QSqrtNumber(q, 0, q) / (sqrt_q(q) + (k - 1))) ** k
    return SandwichResult(lower, ratio, upper, lower <= ratio <= upper)


def auxiliary_remarks_check(
    q: int,
    p: int,
    k: int,
    m: int,
    *,
    d_m: int | None = None,
    sandwich_limit: int = 4000,
) -> dict[str, bool | None]:
    """Evaluate the appendix remarks on one instance; None = hypothesis not met.

    Keys: ``ratio_lower_chain`` (binomial ratio >= q^k/(sqrt q+k-1)^k >=
    q^(k/10)/2^k >= q^m), ``p_div_k_binomial`` (binom(q/p,k/p) <=
    binom(q,k)((k-1)/(q-1))^(2p-2) <= binom(q,k)(k/q)^(2p-2)),
    ``main_term_dominates`` (the p | k main term exceeds
    (-1)^k binom(-sqrt q, k), both values of v(b)), and the two
    ``error_pieces_*`` comparisons against M_1 (-1)^k binom(-sqrt q,k) k!.
    """
    out: dict[str, bool | None] = {}
    d_m = m if d_m is None else d_m
    k_big = k_le_2q09(q, k)

    if q >= 2**20 and 20 * m <= k and k_big:
        # q^k/(sqrt q + k - 1)^k >= q^(k/10)/2^k  iff  (2q)^10 >= q (sqrt q + k - 1)^10
        mid = QSqrtNumber(2 * q, 0, q) ** 10 >= (sqrt_q(q) + (k - 1)) ** 10 * q
        # q^(k/10)/2^k >= q^m  iff  q^k >= 2^(10k) q^(10m)
        tail = q**k >= 2 ** (10 * k) * q ** (10 * m)
        head = True
        if k <= sandwich_limit and sandwich_hypothesis(q, k):
            head = sandwich_check(q, k).passed
        out["ratio_lower_chain"] = head and mid and tail
    else:
        out["ratio_lower_chain"] = None

    if k % p == 0 and k > p:
        small = comb(q // p, k // p)
        big = comb(q, k)
        first = small <= big * Fraction(k - 1, q - 1) ** (2 * p - 2)
        second = big * Fraction(k - 1, q - 1) ** (2 * p - 2) <= big * Fraction(k, q) ** (2 * p - 2)
        out["p_div_k_binomial"] = first and second
    else:
        out["p_div_k_binomial"] = None

    if k % p == 0 and p >= 3 and k_big and q >= 2**21 and 20 * m <= k:
        rhs = neg_sqrt_binom(q, k)
        out["main_term_dominates"] = all(
            QSqrtNumber(nm_main_term(q, k, m, p, bz), 0, q) > rhs for bz in (True, False)
        )
    else:
        out["main_term_dominates"] = None

    fl = k // p
    applicable = (k < p and 2 * m <= k - fl - 1) or (k > p and 2 * m <= k - 2 * fl)
    if applicable and m >= 1:
        lhs = neg_sqrt_binom(q, k) * (error_term_M1(q, k, m, d_m) * factorial(k))
        piece1 = sqrt_power(q, 2 * m + 1) * (d_m**m * 2 ** (k + 2 * m))
        piece2 = QSqrtNumber(q ** (m + fl) * 2 ** (k + 2 * m + fl + 1), 0, q)
        out["error_pieces_small_j"] = lhs >= piece1
        out["error_pieces_p_cycles"] = lhs >= piece2
    else:
        out["error_pieces_small_j"] = None
        out["error_pieces_p_cycles"] = None
    return out


# --- high-precision reference -----------------------------------------------

REFERENCE_DIGITS = 200


def reference_predicates(q: int, k: int, m: int, d_m: int, n: int | None = None) -> dict[str, bool | None]:
    """The fractional-power conditions evaluated directly in 200-digit floats.

    Used only to cross-check the integerised forms.  Differences below
    10^-150 (relative) are treated as equality, so ties resolve the way the
    exact comparison operator does.
    """
    import mpmath

    with mpmath.workdps(REFERENCE_DIGITS):
        eps = mpmath.mpf(10) ** -150
        Q, K = mpmath.mpf(q), mpmath.mpf(k)

        def le(x, y):
            return x <= y or abs(x - y) <= eps * max(abs(x), abs(y), 1)

        def gt(x, y):
            return x > y and not abs(x - y) <= eps * max(abs(x), abs(y), 1)

        out: dict[str, bool | None] = {
            "k_le_2q09": le(K, 2 * Q ** mpmath.mpf("0.9") - mpmath.sqrt(Q) + 1),
            "k_le_q024": le(K, Q ** mpmath.mpf("0.24")),
            "dm_le_sqrt3_k002": le(mpmath.mpf(d_m), mpmath.sqrt(3) / 3 * K ** mpmath.mpf("0.02")),
            "brun_window": le(mpmath.mpf(d_m), (K - 25) / 50) and m <= d_m,
        }
        if k - 2 * m > 0:
            out["prop_diagonal_q"] = gt(Q, (mpmath.mpf(7) / 2 * m * d_m) ** ((2 * K + 2) / (k - 2 * m)))
        else:
            out["prop_diagonal_q"] = None
        out["image_window"] = None if n is None else mpmath.mpf(m * n) < (K - 25) / 50
    return out


def exact_predicate_parts(q: int, k: int, m: int, d_m: int, n: int | None = None) -> dict[str, bool | None]:
    """The same conditions as :func:`reference_predicates`, decided exactly."""
    return {
        "k_le_2q09": k_le_2q09(q, k),
        "k_le_q024": k_le_q024(q, k),
        "dm_le_sqrt3_k002": dm_le_sqrt3_k002(d_m, k),
        "brun_window": m <= d_m and 50 * d_m <= k - 25,
        "prop_diagonal_q": (
            None if k - 2 * m <= 0 else 2 ** (2 * k + 2) * q ** (k - 2 * m) > (7 * m * d_m) ** (2 * k + 2)
        ),
        "image_window": None if n is None else 50 * m * n < k - 25,
    }


# --- instance reports ---------------------------------------------------------

@dataclass(frozen=True)
class CountReport:
    instance_id: str
    q: int
    p: int
    s: int
    k: int
    m: int
    exponents: tuple[int, ...]
    b: tuple[tuple[int, ...], ...]  # coefficient vectors of the targets
    exact: int
    main_term: Fraction
    bound: QSqrtNumber
    residual: Fraction
    in_hypothesis: bool
    passed: bool
    method: str
    theorem: str
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "instance_id": self.instance_id,
            "q": self.q,
            "p": self.p,
            "s": self.s,
            "k": self.k,
            "m": self.m,
            "exponents": list(self.exponents),
            "b": [list(v) for v in self.b],
            "exact": _json_int(self.exact),
            "main_term": _fraction_text(self.main_term),
            "bound": self.bound.to_json(),
            "residual": _fraction_text(self.residual),
            "in_hypothesis": self.in_hypothesis,
            "pass": self.passed,
            "method": self.method,
            "theorem": self.theorem,
            "notes": list(self.notes),
        }

    def csv_row(self) -> list[str]:
        return [
            self.instance_id,
            str(self.q),
            str(self.p),
            str(self.s),
            str(self.k),
            str(self.m),
            " ".join(map(str, self.exponents)),
            " ".join(":".join(map(str, v)) for v in self.b),
            str(self.exact),
            _fraction_text(self.main_term),
            qsqrt_text(self.bound),
            _fraction_text(self.residual),
            str(self.in_hypothesis).lower(),
            str(self.passed).lower(),
        ]


CSV_HEADER = [
    "instance_id", "q", "p", "s", "k", "m", "exponents", "b",
    "exact", "main_term", "bound", "residual", "in_hypothesis", "pass",
]


def _json_int(n: int):
    return n if -(1 << 63) <= n < (1 << 63) else str(n)


def _fraction_text(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def qsqrt_text(x: QSqrtNumber) -> str:
    if not x.b:
        return _fraction_text(x.a)
    return f"{_fraction_text(x.a)}+{_fraction_text(x.b)}*sqrt({x.q})"


def _residual_pass(exact: int, main: Fraction, bound: QSqrtNumber) -> tuple[Fraction, bool]:
    residual = abs(Fraction(exact) - main)
    return residual, QSqrtNumber(residual, 0, bound.q) <= bound


def verify_instance(inst, *, instance_id: str = "", d_m: int | None = None, limit: int | None = None) -> CountReport:
    """Exact count versus the matching estimate.

    Diagonal systems are compared with q^(l-m) and the diagonal-system
    estimate; moment instances with :func:`nm_main_term` and
    :func:`error_term_M`.  The pass flag is always computed; ``in_hypothesis``
    says whether the estimate is actually guaranteed for this instance.
    """
    from .diagonal import DEFAULT_DP_LIMIT, WeightedDiagonalSystem, count_points_dp
    from .moments import MomentInstance, count_subsets_dp

    if not isinstance(inst, (WeightedDiagonalSystem, MomentInstance)):
        raise TypeError(f"cannot verify {type(inst).__name__}")
    limit = DEFAULT_DP_LIMIT if limit is None else limit
    f = inst.field
    q, p, s = f.q, f.p, f.s
    exps = inst.exponents
    dm = max(exps) if d_m is None else d_m
    b_vecs = tuple(f.coeffs(t) for t in inst.targets)
    notes: list[str] = []

    if isinstance(inst, WeightedDiagonalSystem):
        k, m = inst.l, inst.m
        exact = count_points_dp(inst, limit=limit).count
        main = Fraction(q) ** (k - m)
        bv = bound_main_estimate(q, k, m, dm)
        checks = {
            "m <= (k-1)/2": 2 * m <= k - 1,
            "d_1 >= 2": exps[0] >= 2,
            "p does not divide any d_i": all(d % p for d in exps),
            "unit weights": all(a == 1 for a in inst.weights),
            "full field": inst.domain is None,
        }
        theorem, method = "diagonal-estimate", "dp"
    else:
        k, m = inst.k, inst.m
        exact = count_subsets_dp(inst, limit=limit)
        b_zero = not any(inst.targets)
        main = nm_main_term(q, k, m, p, b_zero)
        bv = error_term_M(q, k, m, dm)
        preds = existence_predicates(q, p, s, k, m, dm)
        if k % p:
            checks = {"moment estimate hypotheses (p does not divide k)": preds.moment_estimate_p_not_div_k}
        else:
            checks = {"moment estimate hypotheses (p divides k)": preds.moment_estimate_p_div_k}
        checks["full field"] = inst.domain is None
        theorem, method = ("moment-estimate-p-div-k" if k % p == 0 else "moment-estimate"), "dist"

    in_hyp = all(checks.values())
    if not in_hyp:
        notes.append("out of hypothesis: " + ", ".join(name for name, ok in checks.items() if not ok))
    residual, passed = _residual_pass(exact, main, bv.value)
    return CountReport(
        instance_id, q, p, s, k, m, exps, b_vecs, exact, main, bv.value, residual,
        in_hyp, passed, method, theorem, tuple(notes),
    )
