"""Command-line front end: ``ffcount {count,ssp,identities,verify}``.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage error,
3 a size guard was hit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import comb, factorial

from . import __version__
from .bounds import CSV_HEADER, CountReport, neg_sqrt_binom, verify_instance
from .combinatorics import (
    CycleLimitError,
    alternating_q_sum,
    binom_general,
    newton_identity_holds,
    p_cycle_alternating_sum,
    p_cycle_closed_form,
    power_sums_and_elementary,
    sqrt_q_sum,
)
from .diagonal import (
    DEFAULT_DP_LIMIT,
    DEFAULT_ORACLE_LIMIT,
    LimitExceededError,
    WeightedDiagonalSystem,
    count_points_bruteforce,
    count_points_dp,
    normalize_exponents,
)
from .field import FieldSizeError, FieldSpec, PolySpec, make_field
from .moments import MomentInstance, count_subsets_dp, count_subsets_enum, count_subsets_inclusion_exclusion
from .qsqrt import sqrt_q

SCHEMA_VERSION = 1

EXIT_OK, EXIT_MATH, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


class UsageError(ValueError):
    pass


# --- argument parsing -----------------------------------------------------------

def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _element(field: FieldSpec, token: str) -> int:
    """An element given as its index or as a colon-separated coefficient vector."""
    token = token.strip()
    if ":" in token:
        coeffs = [int(c) for c in token.split(":")]
        if len(coeffs) != field.s or any(not 0 <= c < field.p for c in coeffs):
            raise UsageError(f"bad coefficient vector {token!r} for GF({field.q})")
        return field.from_coeffs(coeffs)
    n = int(token)
    if not 0 <= n < field.q:
        raise UsageError(f"element {n} out of range for GF({field.q})")
    return n


def _elements(field: FieldSpec, text: str) -> tuple[int, ...]:
    try:
        return tuple(_element(field, t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="write the report here instead of standard output")
    p.add_argument("--limit-dp", type=_positive, default=DEFAULT_DP_LIMIT, help="largest DP state count")
    p.add_argument("--limit-enum", type=_positive, default=DEFAULT_ORACLE_LIMIT, help="largest enumeration size")


def _add_field(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p", type=_positive, required=True, help="characteristic")
    p.add_argument("--s", type=_positive, default=1, help="extension degree")
    p.add_argument("--exps", type=_int_list, required=True, help="exponents d_1<...<d_m")
    p.add_argument("--b", required=True, help="targets: indices or coefficient vectors like 1:0")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ffcount", description="Exact counting over finite fields.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="solutions of a weighted diagonal system")
    _add_field(c)
    c.add_argument("--weights", type=_int_list, required=True, help="one positive weight per unknown")
    c.add_argument("--domain", help="restrict unknowns to these elements")
    c.add_argument("--method", choices=("dp", "brute", "all"), default="dp")
    _add_output(c)

    s = sub.add_parser("ssp", help="k-subsets with prescribed power-sum moments")
    _add_field(s)
    s.add_argument("--k", type=_positive, required=True)
    dom = s.add_mutually_exclusive_group()
    dom.add_argument("--domain", help="explicit evaluation set")
    dom.add_argument("--poly", help="use the value set of this polynomial (coefficients low to high)")
    s.add_argument("--method", choices=("ie", "dist", "brute", "all"), default="dist")
    _add_output(s)

    i = sub.add_parser("identities", help="check the combinatorial identities")
    i.add_argument("--k-max", type=_positive, default=10)
    i.add_argument("--q-max", type=int, default=60)
    i.add_argument("--sqrt-q", type=_int_list, default=[2, 3, 5, 7, 11, 13])
    i.add_argument("--primes", type=_int_list, default=[2, 3, 5])
    i.add_argument("--seed", type=int, default=0)
    _add_output(i)

    v = sub.add_parser("verify", help="compare exact counts with the estimates on a grid")
    v.add_argument("--grid", choices=("small", "default"), default="default")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--targets", type=_positive, default=2, help="random targets per instance")
    v.add_argument("--jobs", type=_positive, default=1)
    _add_output(v)
    return parser


# --- serialisation ------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, (str, float)):
        return x
    if isinstance(x, int):
        return x if -(1 << 63) <= x < (1 << 63) else str(x)
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return x.to_json()
    raise TypeError(f"cannot serialise {type(x).__name__}")


def _flat(x) -> str:
    if isinstance(x, bool):
        return str(x).lower()
    if x is None:
        return ""
    if isinstance(x, (list, tuple)):
        return " ".join(":".join(map(str, v)) if isinstance(v, (list, tuple)) else _flat(v) for v in x)
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


def render(command: str, config: dict, rows: list, summary: dict, fmt: str) -> str:
    if fmt == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "config_echo": config,
            "rows": [_jsonable(r) for r in rows],
            "summary": summary,
        }
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if rows and isinstance(rows[0], CountReport):
        w.writerow(CSV_HEADER)
        for r in rows:
            w.writerow(r.csv_row())
    elif rows:
        header = list(rows[0])
        w.writerow(header)
        for r in rows:
            w.writerow([_flat(r.get(h)) for h in header])
    buf.write(f"# schema_version={SCHEMA_VERSION} command={command} ")
    buf.write(" ".join(f"{k}={v}" for k, v in summary.items()) + "\n")
    return buf.getvalue()


def _summary(rows: list, passed, in_hyp=lambda r: True) -> dict:
    n_pass = sum(1 for r in rows if passed(r))
    return {
        "total": len(rows),
        "pass": n_pass,
        "fail": len(rows) - n_pass,
        "out_of_hypothesis": sum(1 for r in rows if not in_hyp(r)),
    }


def _config(args: argparse.Namespace) -> dict:
    skip = {"out", "jobs", "func"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


# --- commands -----------------------------------------------------------------

def _field_and_targets(args) -> tuple[FieldSpec, tuple[int, ...], tuple[int, ...]]:
    field = make_field(args.p, args.s)
    exps = tuple(args.exps)
    targets = _elements(field, args.b)
    if len(targets) != len(exps):
        raise UsageError(f"{len(exps)} exponents but {len(targets)} targets")
    return field, exps, targets


def cmd_count(args) -> tuple[list, dict, int]:
    field, exps, targets = _field_and_targets(args)
    domain = _elements(field, args.domain) if args.domain else None
    try:
        sys_ = WeightedDiagonalSystem(field, exps, tuple(args.weights), targets, domain)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    row = {
        "instance_id": "count-0",
        "q": field.q,
        "p": field.p,
        "s": field.s,
        "exponents": list(exps),
        "weights": list(sys_.weights),
        "b": [list(field.coeffs(t)) for t in targets],
        "domain_size": sys_.domain_size,
        "method": args.method,
    }
    counts = {}
    if args.method in ("dp", "all"):
        counts["dp"] = count_points_dp(normalize_exponents(sys_), limit=args.limit_dp).count
    if args.method in ("brute", "all"):
        counts["brute"] = count_points_bruteforce(sys_, limit=args.limit_enum).count
    row["count"] = next(iter(counts.values()))
    if args.method == "all":
        row.update({f"count_{k}": v for k, v in counts.items()})
    row["agreement"] = len(set(counts.values())) == 1
    summary = _summary([row], lambda r: r["agreement"])
    return [row], summary, EXIT_OK if row["agreement"] else EXIT_MATH


def cmd_ssp(args) -> tuple[list, dict, int]:
    field, exps, targets = _field_and_targets(args)
    domain = None
    if args.domain:
        domain = _elements(field, args.domain)
    elif args.poly:
        try:
            f = PolySpec(_elements(field, args.poly))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        domain = tuple(sorted(set(f.values(field))))
    try:
        inst = MomentInstance(field, args.k, exps, targets, domain)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    n = field.q if domain is None else len(domain)
    row = {
        "instance_id": "ssp-0",
        "q": field.q,
        "p": field.p,
        "s": field.s,
        "k": args.k,
        "m": len(exps),
        "exponents": list(exps),
        "b": [list(field.coeffs(t)) for t in targets],
        "domain_size": n,
        "method": args.method,
    }
    runners = {
        "ie": lambda: count_subsets_inclusion_exclusion(inst, limit=args.limit_dp),
        "dist": lambda: count_subsets_dp(inst, limit=args.limit_dp),
        "brute": lambda: count_subsets_enum(inst, limit=args.limit_enum),
    }
    chosen = list(runners) if args.method == "all" else [args.method]
    counts = {name: runners[name]() for name in chosen}
    row["count"] = counts[chosen[0]]
    if args.method == "all":
        row.update({f"count_{k}": v for k, v in counts.items()})
    row["agreement"] = len(set(counts.values())) == 1
    row["note"] = f"k = {args.k} exceeds |D| = {n}" if args.k > n else ""
    summary = _summary([row], lambda r: r["agreement"])
    return [row], summary, EXIT_OK if row["agreement"] else EXIT_MATH


def _identity_rows(args) -> list[dict]:
    if args.q_max < 0:
        raise UsageError("--q-max must be nonnegative")
    rows = []

    def add(name, params, lhs, rhs):
        rows.append({"identity": name, "params": params, "lhs": str(lhs), "rhs": str(rhs), "pass": lhs == rhs})

    for k in range(1, args.k_max + 1):
        for q in range(args.q_max + 1):
            add("alternating-q-sum", f"k={k} q={q}", alternating_q_sum(k, q), comb(q, k) * factorial(k))
    for q in args.sqrt_q:
        if q < 1:
            raise UsageError("--sqrt-q values must be positive")
        for k in range(1, args.k_max + 1):
            lhs = sqrt_q_sum(k, q)
            rhs = (-1) ** k * binom_general(-sqrt_q(q), k) * factorial(k)
            add("sqrt-q-sum", f"k={k} q={q}", lhs, rhs)
            add("rising-product", f"k={k} q={q}", rhs, neg_sqrt_binom(q, k) * factorial(k))
    for p in args.primes:
        try:
            make_field(p)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        for e in (1, 2, 3):
            q = p**e
            for k in range(1, args.k_max + 1):
                add("p-cycle-sum", f"k={k} p={p} q={q}", p_cycle_alternating_sum(k, p, q), p_cycle_closed_form(k, p, q))
    rng = random.Random(args.seed)
    for p, s in ((2, 2), (3, 1), (5, 1), (7, 1), (3, 2)):
        field = make_field(p, s)
        for trial in range(20):
            xs = [rng.randrange(field.q) for _ in range(rng.randint(1, 6))]
            P, Pi = power_sums_and_elementary(xs, 6, field)
            ok = all(newton_identity_holds(P, Pi, field))
            rows.append({
                "identity": "newton",
                "params": f"q={field.q} x={xs}",
                "lhs": str(P),
                "rhs": str(Pi),
                "pass": ok,
            })
    return rows


def cmd_identities(args) -> tuple[list, dict, int]:
    rows = _identity_rows(args)
    summary = _summary(rows, lambda r: r["pass"])
    return rows, summary, EXIT_OK if summary["fail"] == 0 else EXIT_MATH


# verify: instances are described by plain tuples so worker processes can
# rebuild them without pickling field objects.

GRIDS = {
    "small": {"diag_q": (3, 4, 5, 7), "diag_k": (3, 4, 5), "ssp_q": (3, 4, 5, 7), "ssp_k": (2, 3, 4)},
    "default": {
        "diag_q": (3, 4, 5, 7, 8, 9, 11, 13),
        "diag_k": (3, 4, 5, 6),
        "ssp_q": (3, 4, 5, 7, 8, 9, 11, 13),
        "ssp_k": (2, 3, 4, 5, 6),
    },
}


def _prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            s, r = 0, q
            while r % p == 0:
                r //= p
                s += 1
            return p, s
    raise ValueError(q)


def diagonal_exponents(p: int, m: int, start: int = 2) -> tuple[int, ...]:
    """The first m integers >= start that p does not divide."""
    out, d = [], start
    while len(out) < m:
        if d % p:
            out.append(d)
        d += 1
    return tuple(out)


def verify_jobs(grid: str, seed: int, per_instance: int) -> list[tuple]:
    g = GRIDS[grid]
    rng = random.Random(seed)
    jobs = []
    for q in g["diag_q"]:
        p, s = _prime_power(q)
        for k in g["diag_k"]:
            for m in (1, 2):
                if 2 * m > k - 1:
                    continue
                exps = diagonal_exponents(p, m)
                for t in range(per_instance):
                    b = tuple(rng.randrange(q) for _ in range(m))
                    jobs.append((f"diag-q{q:03d}-k{k}-m{m}-t{t}", "diag", p, s, k, exps, b))
    for q in g["ssp_q"]:
        p, s = _prime_power(q)
        for k in g["ssp_k"]:
            for m in (1, 2):
                exps = tuple(range(1, m + 1))
                targets = [(0,) * m] + [tuple(rng.randrange(q) for _ in range(m)) for _ in range(per_instance - 1)]
                for t, b in enumerate(targets):
                    jobs.append((f"ssp-q{q:03d}-k{k}-m{m}-t{t}", "ssp", p, s, k, exps, b))
    return jobs


def run_verify_job(job: tuple, limit: int = DEFAULT_DP_LIMIT) -> CountReport:
    iid, kind, p, s, k, exps, b = job
    field = make_field(p, s)
    if kind == "diag":
        inst = WeightedDiagonalSystem(field, exps, (1,) * k, b)
    else:
        inst = MomentInstance(field, k, exps, b)
    return verify_instance(inst, instance_id=iid, limit=limit)


def _run_job_with_limit(args):
    return run_verify_job(*args)


def cmd_verify(args) -> tuple[list, dict, int]:
    jobs = verify_jobs(args.grid, args.seed, args.targets)
    payload = [(j, args.limit_dp) for j in jobs]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_run_job_with_limit, payload, chunksize=8))
    else:
        rows = [_run_job_with_limit(x) for x in payload]
    rows.sort(key=lambda r: r.instance_id)
    summary = _summary(rows, lambda r: r.passed, lambda r: r.in_hypothesis)
    failed_in_hyp = any(r.in_hypothesis and not r.passed for r in rows)
    return rows, summary, EXIT_MATH if failed_in_hyp else EXIT_OK


COMMANDS = {"count": cmd_count, "ssp": cmd_ssp, "identities": cmd_identities, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        rows, summary, code = COMMANDS[args.command](args)
    except (LimitExceededError, FieldSizeError, CycleLimitError) as exc:
        print(f"ffcount: limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except ValueError as exc:
        print(f"ffcount: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(args.command, _config(args), rows, summary, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
