"""Assumption-free model of Z[y_1..y_n]/(I + I') by graded linear algebra.

The engine in ring.py is fast but rests on the structure-constant theory.
This module rebuilds the same quotient from nothing but the ideal generators:
in each degree d, span every product (generator x complementary monomial),
stack the coefficient rows, and read rank and torsion off the Smith form.
No Groebner bases, no normal-form cleverness; completeness per degree is
automatic because all of Z[y]_d is enumerated.  Whatever this module reports
is ground truth for the basis and product claims the engine encodes.

Conventions: relation vectors are matrix ROWS over the degree-d monomial
columns; the graded piece is the cokernel Z^{monomials} / rowspan.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .cache import JsonCache, make_key
from .combinat import SubsetJ, all_subsets
from .errors import VerificationError
from .intpoly import IntPoly, Monomial, elementary_symmetric
from .ring import PetClass, pi_to_polynomial
from .zlinalg import ZMatrix, ZQuotientStructure, smith_normal_form, solve_integer_system

CACHE_SCHEMA = "oracle-piece-v1"


@dataclass(frozen=True)
class IdealGenerators:
    """The defining relations: full and truncated elementary symmetrics.

    gens_I: e_k(y_1..y_n) for 1 <= k <= n.
    gens_Iprime: (y_i - y_{i+1}) e_k(y_1..y_i) for 1 <= i <= n-1 and
    1 <= k <= min(i, n-i).  The truncation min(i, n-i) is deliberate: the
    wider range 1 <= k <= i is a consequence the oracle must confirm, so it
    must never be fed in as an input.
    """

    n: int
    gens_I: Tuple[IntPoly, ...]
    gens_Iprime: Tuple[IntPoly, ...]

    def all_gens(self) -> Tuple[IntPoly, ...]:
        return self.gens_I + self.gens_Iprime

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "gens_I": [g.to_json_obj() for g in self.gens_I],
            "gens_Iprime": [g.to_json_obj() for g in self.gens_Iprime],
        }


def build_generators(n: int) -> IdealGenerators:
    if n < 2:
        raise ValueError("need n >= 2")
    gens_I = tuple(elementary_symmetric(n, n, k) for k in range(1, n + 1))
    prime: List[IntPoly] = []
    for i in range(1, n):
        diff = IntPoly.variable(n, i) - IntPoly.variable(n, i + 1)
        for k in range(1, min(i, n - i) + 1):
            prime.append(diff * elementary_symmetric(n, i, k))
    gens = IdealGenerators(n, gens_I, tuple(prime))
    expected = n + sum(min(i, n - i) for i in range(1, n))
    assert len(gens.all_gens()) == expected
    assert all(g.is_homogeneous() for g in gens.all_gens())
    return gens


@lru_cache(maxsize=None)
def monomials_of_degree(n: int, d: int) -> Tuple[Monomial, ...]:
    """All exponent tuples of total degree d, descending lex (grlex within d)."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1, d >= 0")
    out: List[Monomial] = []

    def rec(prefix: Tuple[int, ...], remaining: int, slots: int):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), d, n)
    return tuple(out)


def subsets_of_size(n: int, d: int) -> List[SubsetJ]:
    return [J for J in all_subsets(n) if len(J) == d]


def expected_rank(n: int, d: int) -> int:
    return comb(n - 1, d) if d <= n - 1 else 0


def _relation_matrix(gens: IdealGenerators, d: int) -> ZMatrix:
    n = gens.n
    monos = monomials_of_degree(n, d)
    index = {m: j for j, m in enumerate(monos)}
    rows: List[List[int]] = []
    for g in gens.all_gens():
        e = g.total_degree()
        if e > d:
            continue
        gterms = g.terms()
        for m in monomials_of_degree(n, d - e):
            row = [0] * len(monos)
            for mono, coeff in gterms:
                shifted = tuple(a + b for a, b in zip(mono, m))
                row[index[shifted]] += coeff
            rows.append(row)
    if not rows:
        return ZMatrix.zeros(0, len(monos))
    return ZMatrix(rows)


class GradedPiece:
    """Degree-d slice of the quotient, certified torsion-free of the right rank."""

    def __init__(self, n: int, degree: int, monomial_basis: Tuple[Monomial, ...],
                 relation_matrix: ZMatrix, structure: ZQuotientStructure):
        want = expected_rank(n, degree)
        if structure.torsion():
            raise VerificationError(
                f"graded piece (n={n}, d={degree}) has torsion "
                f"{structure.torsion()}; the presentation claims a free module"
            )
        if structure.free_rank != want:
            raise VerificationError(
                f"graded piece (n={n}, d={degree}) has rank {structure.free_rank}, "
                f"expected C({n - 1},{degree}) = {want}"
            )
        self.n = n
        self.degree = degree
        self.monomial_basis = monomial_basis
        self.relation_matrix = relation_matrix
        self.structure = structure
        self._index = {m: j for j, m in enumerate(monomial_basis)}
        self._proj_cols: Optional[np.ndarray] = None
        self._pi_subsets: Optional[List[SubsetJ]] = None
        self._pi_matrix_t: Optional[ZMatrix] = None
        if structure.right_transform is not None and structure.free_rank > 0:
            v = structure.right_transform.array
            # torsion-free, so quotient coordinates are the trailing
            # free_rank coordinates of vec . V
            self._proj_cols = v[:, structure.rank:]

    @property
    def free_rank(self) -> int:
        return self.structure.free_rank

    def report(self) -> dict:
        return {
            "n": self.n,
            "d": self.degree,
            "rank": self.structure.free_rank,
            "invariant_factors": list(self.structure.invariant_factors),
            "expected_rank": expected_rank(self.n, self.degree),
            "pass": True,
        }

    def vector_of(self, p: IntPoly) -> Tuple[int, ...]:
        if p.ambient_n != self.n:
            raise ValueError(f"polynomial has n={p.ambient_n}, piece has n={self.n}")
        if not p.is_zero() and (not p.is_homogeneous() or p.total_degree() != self.degree):
            raise ValueError(f"need a homogeneous polynomial of degree {self.degree}")
        vec = [0] * len(self.monomial_basis)
        for mono, coeff in p.terms():
            vec[self._index[mono]] = coeff
        return tuple(vec)

    def project(self, p: IntPoly) -> Tuple[int, ...]:
        """Quotient coordinates of p; the zero tuple iff p lies in the ideal."""
        if self.free_rank == 0:
            self.vector_of(p)  # still validate degree and ambient
            return ()
        if self._proj_cols is None:
            raise ValueError("piece was built without the right transform")
        vec = np.array(self.vector_of(p), dtype=object)
        return tuple(int(x) for x in vec @ self._proj_cols)

    def zero_in_quotient(self, p: IntPoly) -> bool:
        return all(c == 0 for c in self.project(p))

    def _pi_images(self) -> Tuple[List[SubsetJ], ZMatrix]:
        """Rows of pi-class coordinates; certified a lattice basis once."""
        if self._pi_matrix_t is None:
            subsets = subsets_of_size(self.n, self.degree)
            rows = [list(self.project(pi_to_polynomial(J))) for J in subsets]
            if len(rows) != self.free_rank:
                raise VerificationError(
                    f"(n={self.n}, d={self.degree}): {len(rows)} pi classes "
                    f"vs rank {self.free_rank}"
                )
            b = ZMatrix(rows) if rows else ZMatrix.zeros(0, 0)
            s = smith_normal_form(b, left=False, right=False)
            if s.invariant_factors != tuple([1] * self.free_rank):
                raise VerificationError(
                    f"pi classes not a basis at (n={self.n}, d={self.degree}): "
                    f"SNF {s.invariant_factors}"
                )
            self._pi_subsets = subsets
            self._pi_matrix_t = b.transpose()
        return self._pi_subsets, self._pi_matrix_t

    def pi_basis_certified(self) -> bool:
        self._pi_images()
        return True


def coords_in_pi_basis(p: IntPoly, piece: GradedPiece) -> Tuple[int, ...]:
    """Integer coordinates of p in the pi basis, indexed like subsets_of_size."""
    subsets, bt = piece._pi_images()
    target = piece.project(p)
    if piece.free_rank == 0:
        return ()
    x = solve_integer_system(bt, target)
    if x is None:
        raise VerificationError(
            f"no integral coordinates in the pi basis at "
            f"(n={piece.n}, d={piece.degree})"
        )
    return x


_PIECE_MEMO: Dict[Tuple[int, int, bool, str], GradedPiece] = {}


def clear_piece_memo() -> None:
    _PIECE_MEMO.clear()


def graded_quotient(n: int, d: int, cache: Optional[JsonCache] = None,
                    with_transform: Optional[bool] = None) -> GradedPiece:
    """Build (or recall) the degree-d piece; raises VerificationError on any
    torsion or rank deviation from C(n-1, d)."""
    if n < 2 or d < 0:
        raise ValueError("need n >= 2, d >= 0")
    if with_transform is None:
        # transforms are only consulted through projections, which expected-
        # zero pieces never need
        with_transform = expected_rank(n, d) > 0
    memo_key = (n, d, with_transform, str(cache.directory) if cache else "")
    hit = _PIECE_MEMO.get(memo_key)
    if hit is not None:
        return hit

    gens = build_generators(n)
    monos = monomials_of_degree(n, d)
    rel = _relation_matrix(gens, d)
    structure: Optional[ZQuotientStructure] = None
    key = None
    if cache is not None:
        key = make_key(CACHE_SCHEMA, n, d, with_transform, gens.to_json_obj())
        stored = cache.get(key)
        if stored is not None:
            candidate = ZQuotientStructure.from_json_obj(stored)
            if candidate.rows == rel.rows and candidate.cols == rel.cols:
                structure = candidate
    if structure is None:
        structure = smith_normal_form(rel, left=False, right=with_transform)
        if cache is not None and key is not None:
            cache.put(key, structure.to_json_obj())
    piece = GradedPiece(n, d, monos, rel, structure)
    _PIECE_MEMO[memo_key] = piece
    return piece


def piece_report(n: int, d: int, cache: Optional[JsonCache] = None,
                 with_transform: Optional[bool] = None) -> dict:
    """Like graded_quotient but never raises; failures land in the report."""
    try:
        return graded_quotient(n, d, cache, with_transform).report()
    except VerificationError as exc:
        return {
            "n": n,
            "d": d,
            "rank": None,
            "invariant_factors": None,
            "expected_rank": expected_rank(n, d),
            "pass": False,
            "error": str(exc),
        }


def verify_identity(p: IntPoly, q: IntPoly, n: int,
                    cache: Optional[JsonCache] = None) -> bool:
    """True iff p == q in the quotient, component by component."""
    if p.ambient_n != n or q.ambient_n != n:
        raise ValueError("ambient mismatch")
    diff = p - q
    for d, component in diff.homogeneous_components().items():
        piece = graded_quotient(n, d, cache)
        if not piece.zero_in_quotient(component):
            return False
    return True


def presentation_reports(n: int, max_degree: Optional[int] = None,
                         cache: Optional[JsonCache] = None,
                         jobs: int = 1) -> List[dict]:
    """Rank/torsion reports for d = 0..max_degree (default n).

    Degree n is enough to certify all higher degrees vanish: the quotient is
    generated in degree 1, so a zero piece kills everything above it.
    """
    top = n if max_degree is None else max_degree
    degrees = list(range(top + 1))
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        cache_dir = str(cache.directory) if cache else None
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_piece_report_worker, n, d, cache_dir)
                       for d in degrees]
            return [f.result() for f in futures]
    return [piece_report(n, d, cache) for d in degrees]


def _piece_report_worker(n: int, d: int, cache_dir: Optional[str]) -> dict:
    cache = JsonCache(cache_dir) if cache_dir else None
    return piece_report(n, d, cache)
