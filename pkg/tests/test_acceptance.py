"""Acceptance gate: one test and one printed verdict line per criterion.

Everything here is exact integer arithmetic; there are no tolerances to
loosen.  Criterion names match the verification suites the CLI exposes.
"""

import json
import subprocess
import sys
from math import comb, factorial

from petring.combinat import all_subsets
from petring.quotient_oracle import (coords_in_pi_basis, graded_quotient,
                                     piece_report, subsets_of_size)
from petring.permfan import (betti_numbers, eulerian_by_descents,
                             graded_cohomology, invariant_ranks)
from petring.ring import (PetClass, mult, pi_interval, pi_to_polynomial,
                          poincare_ranks)
from petring.zlinalg import ZMatrix
from petring.cli import _quotient_lemma_checks, _random_trials


def verdict(k, name, ok):
    print(f"CRITERION {k} ({name}): {'PASS' if ok else 'FAIL'}")
    assert ok


def test_criterion_1_presentation_freeness_and_ranks(shared_cache):
    # torsion-free with rank C(n-1, d) in every degree, n = 2..6; the
    # degree-n piece vanishing forces all higher degrees to vanish too,
    # since the quotient is generated in degree one
    failures = []
    for n in range(2, 7):
        for d in range(n + 1):
            rep = piece_report(n, d, shared_cache)
            if not rep["pass"]:
                failures.append(rep)
        total = sum(comb(n - 1, d) for d in range(n))
        if total != 1 << (n - 1):
            failures.append({"n": n, "total": total})
    verdict(1, "presentation freeness and ranks, n=2..6", not failures)


def test_criterion_2_pi_basis_certification(shared_cache):
    ok = True
    for n in range(2, 6):
        for d in range(n):
            ok = ok and graded_quotient(n, d, shared_cache).pi_basis_certified()
    verdict(2, "pi classes are a lattice basis, n=2..5", ok)


def test_criterion_3_structure_constant_equivalence(shared_cache):
    mismatches = []
    for n in range(2, 6):
        subs = all_subsets(n)
        for j in subs:
            for k in subs:
                d = len(j) + len(k)
                engine = mult(PetClass(n, {j: 1}), PetClass(n, {k: 1}))
                piece = graded_quotient(n, d, shared_cache)
                if d <= n - 1:
                    got = coords_in_pi_basis(
                        pi_to_polynomial(j) * pi_to_polynomial(k), piece)
                    want = tuple(engine.coefficient(t)
                                 for t in subsets_of_size(n, d))
                    if got != want:
                        mismatches.append((n, str(j), str(k)))
                elif not (engine.is_zero() and piece.free_rank == 0):
                    mismatches.append((n, str(j), str(k)))
    verdict(3, "engine products match oracle coordinates, all pairs n=2..5",
            not mismatches)


def test_criterion_4_closed_form_spot_checks():
    ok = True
    for n in range(2, 7):
        for a in range(1, n):
            for b in range(a, n):
                for i in range(a, b):
                    lhs = mult(pi_interval(n, a, i), pi_interval(n, i + 1, b))
                    ok = ok and lhs == comb(b - a + 1, i - a + 1) * pi_interval(n, a, b)
                for i in range(a, b + 1):
                    lhs = mult(PetClass.basis(n, [i]), pi_interval(n, a, b))
                    rhs = (b - i + 1) * pi_interval(n, a - 1, b) \
                        + (i - a + 1) * pi_interval(n, a, b + 1)
                    ok = ok and lhs == rhs
        top = pi_interval(n, 1, n - 1)
        for i in range(1, n):
            ok = ok and mult(top, PetClass.basis(n, [i])).is_zero()
    verdict(4, "interval product closed forms, n<=6", ok)


def test_criterion_5_lemma_suite(shared_cache):
    failures = []
    for n in range(2, 6):
        checks = _quotient_lemma_checks(n, 4, shared_cache)
        failures.extend(c for c in checks if not c["pass"])
    failures.extend(_random_trials(100, seed=0))
    verdict(5, "lemma suite in the oracle plus 100 seeded polynomial trials",
            not failures)


def test_criterion_6_permutohedral_betti(shared_cache):
    ok = True
    for n in range(2, 6):
        betti = betti_numbers(n, shared_cache)  # raises on torsion or mismatch
        ok = ok and betti == eulerian_by_descents(n)
        ok = ok and sum(betti) == factorial(n)
    verdict(6, "toric Betti numbers are Eulerian, total n!, n=2..5", ok)


def test_criterion_7_invariant_ranks(shared_cache):
    ok = True
    for n in range(2, 5):
        ranks = invariant_ranks(n, shared_cache)
        ok = ok and ranks == poincare_ranks(n)
        ok = ok and sum(ranks) == 1 << (n - 1)
    # n=5 is a stretch target: run and report, but do not gate on it
    try:
        stretch = invariant_ranks(5, shared_cache) == poincare_ranks(5)
    except Exception:
        stretch = False
    print(f"  stretch n=5 invariant ranks: {'PASS' if stretch else 'not confirmed'}")
    verdict(7, "invariant ranks equal C(n-1,d), n=2..4 gated", ok)


def test_criterion_8_representation_sanity(shared_cache):
    ok = True
    for n in range(2, 5):
        for d in range(n):
            piece = graded_cohomology(n, d, shared_cache)
            mats = piece.simple_reflection_matrices()
            ident = ZMatrix.identity(piece.betti)
            for m in mats:
                ok = ok and m.dot(m) == ident
            for i in range(len(mats) - 1):
                ok = ok and mats[i].dot(mats[i + 1]).dot(mats[i]) == \
                    mats[i + 1].dot(mats[i]).dot(mats[i + 1])
            for i in range(len(mats)):
                for j in range(i + 2, len(mats)):
                    ok = ok and mats[i].dot(mats[j]) == mats[j].dot(mats[i])
    verdict(8, "action matrices satisfy the defining relations, n<=4", ok)


def test_criterion_9_determinism(cli_env):
    commands = [
        ["verify", "presentation", "--n", "4", "--json"],
        ["verify", "theorem-a", "--n", "3", "--json"],
        ["verify", "identities", "--n", "4", "--trials", "100", "--seed", "7",
         "--json"],
        ["table", "--n", "4"],
    ]
    ok = True
    for args in commands:
        runs = [
            subprocess.run([sys.executable, "-m", "petring.cli", *args],
                           capture_output=True, env=cli_env)
            for _ in range(2)
        ]
        ok = ok and runs[0].returncode == runs[1].returncode == 0
        ok = ok and runs[0].stdout == runs[1].stdout and runs[0].stdout
        ok = ok and json.loads(runs[0].stdout)["pass"] is True
    verdict(9, "verify commands emit byte-identical JSON", bool(ok))
