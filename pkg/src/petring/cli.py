"""Batch command-line front door.

Four subcommands: `basis` lists the pi classes, `mult` multiplies two of
them, `verify` runs a named verification suite, `table` dumps the full
multiplication table.  JSON output is canonical (sorted keys, fixed
separators, every integer a decimal string), so identical inputs produce
byte-identical bytes; wall-clock timing goes to stderr only.

Exit codes: 0 pass, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from math import comb, factorial
from typing import List, Optional, Sequence

from .cache import JsonCache, default_cache_dir
from .combinat import SubsetJ, all_subsets, connected_components, m_factor
from .errors import VerificationError
from .intpoly import IntPoly, HookPartition, elementary_symmetric, hook_monomial_symmetric, power_sum_prefix
from .ring import PetClass, StructureConstantError, mult, pi_to_polynomial, poincare_ranks
from .serialize import canonical_json_bytes
from . import quotient_oracle as oracle
from . import permfan

BASIS_N_RANGE = (2, 16)
TABLE_N_RANGE = (2, 6)
PRESENTATION_N_RANGE = (2, 6)
THEOREM_A_N_RANGE = (2, 5)
IDENTITIES_N_RANGE = (2, 5)

# a pi polynomial with this many terms or fewer is displayed expanded,
# otherwise as its product of elementary symmetric factors
EXPAND_DISPLAY_CAP = 8


class UsageError(ValueError):
    pass


def _check_range(n: int, lo_hi, what: str) -> None:
    lo, hi = lo_hi
    if not lo <= n <= hi:
        raise UsageError(f"{what} needs {lo} <= n <= {hi}, got {n}")


def _factored_str(J: SubsetJ) -> str:
    if len(J) == 0:
        return "1"
    parts = []
    for comp in J.components:
        k, m = len(comp), comp[-1]
        vars_part = "y1" if m == 1 else f"y1..y{m}"
        parts.append(f"e{k}({vars_part})")
    return "*".join(parts)


def _display_poly(J: SubsetJ, poly: IntPoly) -> str:
    if poly.num_terms() <= EXPAND_DISPLAY_CAP:
        return str(poly)
    return _factored_str(J)


def _emit(args, report: dict, human_lines: List[str]) -> None:
    if getattr(args, "json", False):
        data = canonical_json_bytes(report)
        if args.out:
            with open(args.out, "wb") as fh:
                fh.write(data)
        else:
            sys.stdout.buffer.write(data)
            sys.stdout.buffer.flush()
    else:
        text = "\n".join(human_lines) + "\n"
        if not report.get("pass", True):
            # failure details always land in machine-readable form
            text += canonical_json_bytes(report).decode("ascii")
        if args.out:
            with open(args.out, "w", encoding="ascii") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
            sys.stdout.flush()


def _cache_from(args) -> JsonCache:
    return JsonCache(default_cache_dir(getattr(args, "cache_dir", None)))


def cmd_basis(args) -> int:
    n = args.n
    _check_range(n, BASIS_N_RANGE, "basis")
    rows = []
    human = [f"pi basis for n={n}: {1 << (n - 1)} classes"]
    for J in all_subsets(n):
        poly = pi_to_polynomial(J)
        rows.append({
            "subset": J.to_json_obj(),
            "components": [list(c) for c in connected_components(J)],
            "m": m_factor(J),
            "degree": len(J),
            "polynomial": poly.to_json_obj(),
            "display": _display_poly(J, poly),
        })
        human.append(f"  {str(J):<{2 * n}}  m={m_factor(J)}  {_display_poly(J, poly)}")
    report = {
        "command": "basis",
        "parameters": {"n": n},
        "pass": True,
        "payload": {"classes": rows},
    }
    _emit(args, report, human)
    return 0


def cmd_mult(args) -> int:
    n = args.n
    _check_range(n, BASIS_N_RANGE, "mult")
    try:
        J = SubsetJ.parse(n, args.J)
        K = SubsetJ.parse(n, args.K)
    except ValueError as exc:
        raise UsageError(str(exc))
    product = mult(PetClass(n, {J: 1}), PetClass(n, {K: 1}))
    report = {
        "command": "mult",
        "parameters": {"n": n, "J": J.to_json_obj(), "K": K.to_json_obj()},
        "pass": True,
        "payload": {"product": product.to_json_obj(), "display": str(product)},
    }
    _emit(args, report, [str(product)])
    return 0


def cmd_table(args) -> int:
    n = args.n
    _check_range(n, TABLE_N_RANGE, "table")
    cache = _cache_from(args)
    from .cache import make_key
    key = make_key("mult-table-v1", n)
    entries = cache.get(key)
    if entries is None:
        subsets = all_subsets(n)
        entries = []
        for J in subsets:
            for K in subsets:
                product = mult(PetClass(n, {J: 1}), PetClass(n, {K: 1}))
                entries.append({
                    "J": J.to_json_obj(),
                    "K": K.to_json_obj(),
                    "product": product.to_json_obj(),
                })
        from .serialize import stringify_ints
        entries = stringify_ints(entries)
        cache.put(key, entries)
    report = {
        "command": "table",
        "parameters": {"n": n},
        "pass": True,
        "payload": {"entries": entries},
    }
    # the table is machine data; it is emitted as JSON regardless of --json
    data = canonical_json_bytes(report)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    return 0


def _verify_presentation(args, cache: JsonCache) -> dict:
    n = args.n
    _check_range(n, PRESENTATION_N_RANGE, "verify presentation")
    top = args.max_degree if args.max_degree is not None else n
    reports = oracle.presentation_reports(n, top, cache, jobs=args.jobs)
    basis_rows = []
    for d in range(min(top, n - 1) + 1):
        try:
            piece = oracle.graded_quotient(n, d, cache)
            piece.pi_basis_certified()
            basis_rows.append({"d": d, "pass": True})
        except VerificationError as exc:
            basis_rows.append({"d": d, "pass": False, "error": str(exc)})
    ok = all(r["pass"] for r in reports) and all(b["pass"] for b in basis_rows)
    return {
        "n": n,
        "max_degree": top,
        "degrees": reports,
        "pi_basis": basis_rows,
        "total_rank": sum(r["rank"] for r in reports if r["rank"] is not None),
        "expected_total": 1 << (n - 1),
        "pass": ok and sum(r["rank"] or 0 for r in reports) == 1 << (n - 1),
    }


def _verify_theorem_a(args, cache: JsonCache) -> dict:
    n = args.n
    _check_range(n, THEOREM_A_N_RANGE, "verify theorem-a")
    reports = permfan.theorem_a_reports(n, cache, jobs=args.jobs)
    peterson = list(poincare_ranks(n))
    ok = all(r["pass"] for r in reports)
    inv = [r["invariant_rank"] for r in reports]
    ok = ok and inv == peterson
    return {
        "n": n,
        "degrees": reports,
        "peterson_ranks": peterson,
        "invariant_total": sum(v for v in inv if v is not None),
        "expected_total": 1 << (n - 1),
        "pass": ok,
    }


def _quotient_lemma_checks(n: int, max_d: int, cache: JsonCache) -> List[dict]:
    checks: List[dict] = []

    def record(identity: str, ok: bool, **params):
        checks.append({"identity": identity, **params, "pass": ok})

    for i in range(1, n):
        for d in range(1, max_d + 1):
            lhs = power_sum_prefix(n, i, d + 1)
            rhs = power_sum_prefix(n, i, d) * IntPoly.variable(n, i + 1)
            record("power-sum-telescoping", oracle.verify_identity(lhs, rhs, n, cache),
                   i=i, d=d)
    for i in range(1, n):
        for k in range(0, i):
            for d in range(2, max_d + 1):
                lhs = hook_monomial_symmetric(n, i, HookPartition(d + 1, k))
                rhs = hook_monomial_symmetric(n, i, HookPartition(d, k)) * IntPoly.variable(n, i + 1)
                record("hook-lemma-high", oracle.verify_identity(lhs, rhs, n, cache),
                       i=i, k=k, d=d)
            lhs = hook_monomial_symmetric(n, i, HookPartition(2, k))
            rhs = (k + 1) * elementary_symmetric(n, i, k + 1) * IntPoly.variable(n, i + 1)
            record("hook-lemma-linear", oracle.verify_identity(lhs, rhs, n, cache),
                   i=i, k=k)
    for i in range(1, n):
        diff = IntPoly.variable(n, i) - IntPoly.variable(n, i + 1)
        for k in range(1, i + 1):
            record("extended-relation",
                   oracle.verify_identity(diff * elementary_symmetric(n, i, k),
                                          IntPoly.zero(n), cache=None, n=n),
                   i=i, k=k)
    for a in range(1, n):
        for b in range(a, n):
            k = b - a + 1
            prod = IntPoly.one(n)
            for j in range(a, b + 1):
                prod = prod * elementary_symmetric(n, j, 1)
            rhs = factorial(k) * elementary_symmetric(n, b, k)
            record("factorial-product", oracle.verify_identity(prod, rhs, n, cache),
                   a=a, b=b)
    return checks


def _random_polynomial(rng: random.Random, n: int) -> IntPoly:
    terms = {}
    for _ in range(rng.randint(1, 6)):
        mono = tuple(rng.randint(0, 2) for _ in range(n))
        terms[mono] = rng.randint(-9, 9)
    return IntPoly(n, terms)


def _random_trials(trials: int, seed: int) -> List[dict]:
    """Seeded instances of the pure polynomial identities (no quotient)."""
    rng = random.Random(seed)
    failures: List[dict] = []
    kinds = ("pascal", "hook-product-high", "hook-product-linear", "ring-laws")
    for t in range(trials):
        kind = kinds[t % len(kinds)]
        nn = rng.randint(2, 7)
        ok = True
        if kind == "pascal":
            b = rng.randint(2, nn)
            k = rng.randint(1, b)
            lhs = elementary_symmetric(nn, b, k)
            rhs = (elementary_symmetric(nn, b - 1, k) if k <= b - 1 else IntPoly.zero(nn)) \
                + elementary_symmetric(nn, b - 1, k - 1) * IntPoly.variable(nn, b)
            ok = lhs == rhs
        elif kind == "hook-product-high":
            i = rng.randint(2, nn)
            k = rng.randint(1, i - 1)
            d = rng.randint(2, 4)
            lhs = power_sum_prefix(nn, i, d) * elementary_symmetric(nn, i, k)
            rhs = hook_monomial_symmetric(nn, i, HookPartition(d + 1, k - 1)) \
                + hook_monomial_symmetric(nn, i, HookPartition(d, k))
            ok = lhs == rhs
        elif kind == "hook-product-linear":
            i = rng.randint(2, nn)
            k = rng.randint(1, i - 1)
            lhs = power_sum_prefix(nn, i, 1) * elementary_symmetric(nn, i, k)
            rhs = hook_monomial_symmetric(nn, i, HookPartition(2, k - 1)) \
                + (k + 1) * elementary_symmetric(nn, i, k + 1)
            ok = lhs == rhs
        else:
            p = _random_polynomial(rng, nn)
            q = _random_polynomial(rng, nn)
            r = _random_polynomial(rng, nn)
            ok = ((p + q) * r == p * r + q * r
                  and p * q == q * p
                  and (p * q) * r == p * (q * r))
        if not ok:
            failures.append({"trial": t, "kind": kind})
    return failures


def _verify_identities(args, cache: JsonCache) -> dict:
    n = args.n
    _check_range(n, IDENTITIES_N_RANGE, "verify identities")
    max_d = args.max_degree if args.max_degree is not None else 4
    checks = _quotient_lemma_checks(n, max_d, cache)
    failures = _random_trials(args.trials, args.seed)
    ok = all(c["pass"] for c in checks) and not failures
    return {
        "n": n,
        "max_degree": max_d,
        "seed": args.seed,
        "trials": args.trials,
        "quotient_checks": checks,
        "random_failures": failures,
        "pass": ok,
    }


def cmd_verify(args) -> int:
    cache = _cache_from(args)
    if args.which == "presentation":
        payload = _verify_presentation(args, cache)
    elif args.which == "theorem-a":
        payload = _verify_theorem_a(args, cache)
    else:
        payload = _verify_identities(args, cache)
    params = {"n": args.n, "which": args.which}
    if args.which == "identities":
        params.update(seed=args.seed, trials=args.trials,
                      max_degree=payload["max_degree"])
    if args.which == "presentation":
        params.update(max_degree=payload["max_degree"])
    report = {
        "command": "verify",
        "parameters": params,
        "pass": payload["pass"],
        "payload": payload,
    }
    human = [f"verify {args.which} (n={args.n})"]
    if args.which == "presentation":
        for r in payload["degrees"]:
            mark = "ok" if r["pass"] else "FAIL"
            human.append(f"  d={r['d']}: rank {r['rank']} expected {r['expected_rank']} {mark}")
        human.append(f"  pi basis certified: {all(b['pass'] for b in payload['pi_basis'])}")
        human.append(f"  total rank {payload['total_rank']} expected {payload['expected_total']}")
    elif args.which == "theorem-a":
        for r in payload["degrees"]:
            mark = "ok" if r["pass"] else "FAIL"
            human.append(f"  d={r['degree']}: betti {r['betti']} (A={r['eulerian_expected']}), "
                         f"invariant {r['invariant_rank']} expected {r['binom_expected']} {mark}")
        human.append(f"  invariant total {payload['invariant_total']} expected {payload['expected_total']}")
    else:
        bad = [c for c in payload["quotient_checks"] if not c["pass"]]
        human.append(f"  quotient lemma checks: {len(payload['quotient_checks'])}, failed {len(bad)}")
        human.append(f"  random trials: {payload['trials']}, failed {len(payload['random_failures'])}")
    human.append("PASS" if payload["pass"] else "FAIL")
    _emit(args, report, human)
    return 0 if payload["pass"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="petring",
        description="Exact computations in the pi-basis cohomology ring and its oracles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, cache=False, jobs=False, rand=False, max_degree=False):
        p.add_argument("--n", type=int, required=True, help="number of variables n")
        p.add_argument("--json", action="store_true", help="canonical JSON output")
        p.add_argument("--out", help="write output to this file instead of stdout")
        if cache:
            p.add_argument("--cache-dir", help="Smith-form cache directory "
                           "(default: $PETRING_CACHE_DIR or ./.petring_cache)")
        if jobs:
            p.add_argument("--jobs", type=int, default=1,
                           help="worker processes for per-degree pieces")
        if rand:
            p.add_argument("--trials", type=int, default=100,
                           help="randomized identity instances")
            p.add_argument("--seed", type=int, default=0, help="RNG seed")
        if max_degree:
            p.add_argument("--max-degree", type=int, default=None,
                           help="highest degree to check")

    p_basis = sub.add_parser("basis", help="list the pi classes")
    common(p_basis)
    p_basis.set_defaults(func=cmd_basis)

    p_mult = sub.add_parser("mult", help="multiply two pi classes")
    p_mult.add_argument("J", help="first subset, e.g. '{1,3}' or '{1}|{3}'")
    p_mult.add_argument("K", help="second subset")
    common(p_mult)
    p_mult.set_defaults(func=cmd_mult)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("which", choices=["presentation", "theorem-a", "identities"])
    common(p_verify, cache=True, jobs=True, rand=True, max_degree=True)
    p_verify.set_defaults(func=cmd_verify)

    p_table = sub.add_parser("table", help="full multiplication table as JSON")
    common(p_table, cache=True)
    p_table.set_defaults(func=cmd_table)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.monotonic()
    try:
        code = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (VerificationError, StructureConstantError) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    if not getattr(args, "json", False):
        print(f"elapsed: {time.monotonic() - started:.2f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
