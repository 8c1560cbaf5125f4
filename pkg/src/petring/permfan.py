"""Integral cohomology of the braid-fan toric variety, with its S_n action.

Rays of the fan are the proper nonempty subsets of [n]; the cones are the
flags (chains) of such subsets.  Cohomology is presented Stanley-Reisner
style: ray variables, monomials supported on chains, modulo the n-1 linear
relations induced by the functionals e_i - e_{i+1}.  Non-chain monomials are
zero structurally, so each graded piece lives on chain-monomial coordinates
only and the relation matrices stay small.

S_n permutes rays by relabeling the ground set, hence permutes chain
monomials, hence acts on each graded quotient by integer matrices.  The
per-degree rank of the common fixed submodule of the simple transpositions
is computed exactly over Z.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from math import comb, factorial
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .cache import JsonCache, make_key
from .errors import VerificationError
from .intpoly import IntPoly
from .zlinalg import ZMatrix, ZQuotientStructure, smith_normal_form

CACHE_SCHEMA = "permfan-piece-v1"
N_MIN, N_MAX = 2, 6

Mask = int


def _check_n(n: int) -> None:
    if not N_MIN <= n <= N_MAX:
        raise ValueError(f"need {N_MIN} <= n <= {N_MAX}, got {n}")


def _mask_key(mask: Mask) -> Tuple[int, int]:
    return (bin(mask).count("1"), mask)


@dataclass(frozen=True, order=True)
class Ray:
    """A proper nonempty subset of [n], stored as a bitmask (bit i-1 <-> i)."""

    n: int
    mask: Mask

    def __post_init__(self):
        if not 0 < self.mask < (1 << self.n) - 1:
            raise ValueError("ray must be a proper nonempty subset")

    @property
    def members(self) -> Tuple[int, ...]:
        return tuple(i + 1 for i in range(self.n) if self.mask >> i & 1)

    def __str__(self):
        return "{" + ",".join(str(m) for m in self.members) + "}"


def enumerate_rays(n: int) -> List[Ray]:
    """All 2^n - 2 rays in bitmask order; mask m is ray variable m - 1."""
    _check_n(n)
    return [Ray(n, m) for m in range(1, (1 << n) - 1)]


def is_chain(support: Iterable) -> bool:
    """True iff the given subsets are totally ordered by inclusion."""
    masks = set()
    for s in support:
        if isinstance(s, Ray):
            masks.add(s.mask)
        elif isinstance(s, int):
            masks.add(s)
        else:
            m = 0
            for x in s:
                m |= 1 << (int(x) - 1)
            masks.add(m)
    ordered = sorted(masks, key=_mask_key)
    return all(a & b == a for a, b in zip(ordered, ordered[1:]))


@dataclass(frozen=True)
class ChainMonomial:
    """Multiset of rays (as masks) whose distinct subsets form a chain."""

    masks: Tuple[Mask, ...]  # sorted by (popcount, mask)

    @property
    def degree(self) -> int:
        return len(self.masks)

    def times_ray(self, mask: Mask) -> Optional["ChainMonomial"]:
        """Product with one more ray variable; None if the result is non-chain."""
        if any(not (m & mask == m or m & mask == mask) for m in self.masks):
            return None
        return ChainMonomial(tuple(sorted(self.masks + (mask,), key=_mask_key)))

    def relabeled(self, table: Sequence[Mask]) -> "ChainMonomial":
        return ChainMonomial(tuple(sorted((table[m] for m in self.masks), key=_mask_key)))

    def __str__(self):
        if not self.masks:
            return "1"
        return "*".join(
            "x{" + ",".join(str(i + 1) for i in range(m.bit_length()) if m >> i & 1) + "}"
            for m in self.masks
        )


@lru_cache(maxsize=None)
def chain_monomials(n: int, d: int) -> Tuple[ChainMonomial, ...]:
    """All degree-d chain monomials, lexicographic in (popcount, mask) order."""
    _check_n(n)
    if d < 0:
        raise ValueError("need d >= 0")
    rays = sorted(range(1, (1 << n) - 1), key=_mask_key)
    out: List[ChainMonomial] = []

    def rec(prefix: Tuple[Mask, ...], start: int, remaining: int):
        if remaining == 0:
            out.append(ChainMonomial(prefix))
            return
        for idx in range(start, len(rays)):
            m = rays[idx]
            if prefix:
                last = prefix[-1]
                if m != last and (last & m) != last:
                    continue  # neither a repeat nor a strict superset
            rec(prefix + (m,), idx, remaining - 1)

    rec((), 0, d)
    return tuple(out)


def count_maximal_chains(n: int) -> int:
    """Full flags of proper subsets; must equal n! (one per permutation)."""
    _check_n(n)

    def rec(mask: Mask) -> int:
        if bin(mask).count("1") == n - 1:
            return 1
        total = 0
        missing = [i for i in range(n) if not mask >> i & 1]
        for i in missing:
            bigger = mask | (1 << i)
            if bigger != (1 << n) - 1:
                total += rec(bigger)
        return total

    return sum(rec(1 << i) for i in range(n))


def linear_relations(n: int) -> List[IntPoly]:
    """theta_i = sum_{S∋i, S∌i+1} x_S - sum_{S∋i+1, S∌i} x_S, i = 1..n-1.

    These are the ray pairings with the functionals e_i - e_{i+1}, which
    span the character lattice of the quotient torus; no basis of the
    cocharacter lattice Z^n / Z(1..1) is ever chosen.
    """
    _check_n(n)
    nvars = (1 << n) - 2
    out = []
    for i in range(1, n):
        terms: Dict[Tuple[int, ...], int] = {}
        for mask in range(1, (1 << n) - 1):
            has_i = mask >> (i - 1) & 1
            has_j = mask >> i & 1
            if has_i == has_j:
                continue
            expo = [0] * nvars
            expo[mask - 1] = 1
            terms[tuple(expo)] = 1 if has_i else -1
        out.append(IntPoly(nvars, terms))
    return out


def eulerian_by_descents(n: int) -> Tuple[int, ...]:
    """A(n, d) for d = 0..n-1, counted directly over all n! permutations."""
    counts = [0] * n
    for w in permutations(range(1, n + 1)):
        counts[sum(1 for a, b in zip(w, w[1:]) if a > b)] += 1
    return tuple(counts)


def _theta_rows(n: int, d: int) -> Tuple[Tuple[ChainMonomial, ...], ZMatrix]:
    """Relation rows theta_i * (chain monomials of degree d-1), projected to
    chain support.  Non-chain lower monomials would only produce zero rows,
    so restricting to chain ones loses nothing."""
    monos = chain_monomials(n, d)
    index = {m: j for j, m in enumerate(monos)}
    rows: List[List[int]] = []
    if d > 0:
        lower = chain_monomials(n, d - 1)
        for i in range(1, n):
            for c in lower:
                row = [0] * len(monos)
                touched = False
                for mask in range(1, (1 << n) - 1):
                    has_i = mask >> (i - 1) & 1
                    has_j = mask >> i & 1
                    if has_i == has_j:
                        continue
                    prod = c.times_ray(mask)
                    if prod is None:
                        continue
                    row[index[prod]] += 1 if has_i else -1
                    touched = True
                if touched:
                    rows.append(row)
    matrix = ZMatrix(rows) if rows else ZMatrix.zeros(0, len(monos))
    return monos, matrix


def _w_table(n: int, w: Sequence[int]) -> List[Mask]:
    """Image mask table for the relabeling S -> w(S), indexed by mask."""
    size = 1 << n
    table = [0] * size
    for mask in range(size):
        img = 0
        for i in range(n):
            if mask >> i & 1:
                img |= 1 << (w[i] - 1)
        table[mask] = img
    return table


class TorusGradedPiece:
    """Degree-d slice of the toric cohomology with its S_n action."""

    def __init__(self, n: int, degree: int, chain_monomial_basis: Tuple[ChainMonomial, ...],
                 linear_relation_matrix: ZMatrix, structure: ZQuotientStructure):
        expected = eulerian_by_descents(n)[degree]
        if structure.torsion():
            raise VerificationError(
                f"toric piece (n={n}, d={degree}) has torsion {structure.torsion()}"
            )
        if structure.free_rank != expected:
            raise VerificationError(
                f"toric piece (n={n}, d={degree}) has rank {structure.free_rank}, "
                f"expected Eulerian A({n},{degree}) = {expected}"
            )
        if structure.right_transform is None or structure.right_inverse is None:
            raise VerificationError("toric piece needs both column transforms")
        self.n = n
        self.degree = degree
        self.chain_monomial_basis = chain_monomial_basis
        self.linear_relation_matrix = linear_relation_matrix
        self.structure = structure
        self._index = {m: j for j, m in enumerate(chain_monomial_basis)}
        r = structure.rank
        self._proj_cols = structure.right_transform.array[:, r:]
        self._sections = structure.right_inverse.array[r:, :]
        self._action_cache: Dict[Tuple[int, ...], ZMatrix] = {}

    @property
    def betti(self) -> int:
        return self.structure.free_rank

    def action_matrix(self, w: Sequence[int]) -> ZMatrix:
        """Matrix of w acting on the quotient basis (rows = images)."""
        w = tuple(w)
        if sorted(w) != list(range(1, self.n + 1)):
            raise ValueError(f"not a permutation of 1..{self.n}: {w}")
        hit = self._action_cache.get(w)
        if hit is not None:
            return hit
        table = _w_table(self.n, w)
        rank = self.betti
        ncols = len(self.chain_monomial_basis)
        rows: List[List[int]] = []
        for t in range(rank):
            section = self._sections[t]
            permuted = [0] * ncols
            for j in range(ncols):
                coeff = section[j]
                if coeff:
                    permuted[self._index[self.chain_monomial_basis[j].relabeled(table)]] += coeff
            vec = np.array(permuted, dtype=object) @ self._proj_cols
            rows.append([int(x) for x in vec])
        matrix = ZMatrix(rows) if rows else ZMatrix.zeros(0, 0)
        self._action_cache[w] = matrix
        return matrix

    def simple_reflection_matrices(self) -> List[ZMatrix]:
        out = []
        for i in range(1, self.n):
            w = list(range(1, self.n + 1))
            w[i - 1], w[i] = w[i], w[i - 1]
            out.append(self.action_matrix(w))
        return out

    def invariant_rank(self) -> int:
        """Rank of the common integer kernel of (s_i - id), i = 1..n-1."""
        rank = self.betti
        if rank == 0:
            return 0
        ident = ZMatrix.identity(rank).array
        blocks = [ZMatrix((m.array - ident).tolist())
                  for m in self.simple_reflection_matrices()]
        stacked = ZMatrix.hstack(blocks)
        s = smith_normal_form(stacked, left=False, right=False)
        return rank - s.rank


def sn_action_on_piece(piece: TorusGradedPiece, w: Sequence[int]) -> ZMatrix:
    return piece.action_matrix(w)


_PIECE_MEMO: Dict[Tuple[int, int, str], TorusGradedPiece] = {}


def clear_piece_memo() -> None:
    _PIECE_MEMO.clear()


def graded_cohomology(n: int, d: int, cache: Optional[JsonCache] = None) -> TorusGradedPiece:
    _check_n(n)
    if not 0 <= d <= n - 1:
        raise ValueError(f"need 0 <= d <= {n - 1}")
    memo_key = (n, d, str(cache.directory) if cache else "")
    hit = _PIECE_MEMO.get(memo_key)
    if hit is not None:
        return hit

    monos, rel = _theta_rows(n, d)
    structure: Optional[ZQuotientStructure] = None
    key = None
    if cache is not None:
        key = make_key(CACHE_SCHEMA, n, d, rel.content_hash())
        stored = cache.get(key)
        if stored is not None:
            candidate = ZQuotientStructure.from_json_obj(stored)
            if (candidate.rows == rel.rows and candidate.cols == rel.cols
                    and candidate.right_transform is not None
                    and candidate.right_inverse is not None):
                structure = candidate
    if structure is None:
        structure = smith_normal_form(rel, left=False, right=True, right_inverse=True)
        if cache is not None and key is not None:
            cache.put(key, structure.to_json_obj())
    piece = TorusGradedPiece(n, d, monos, rel, structure)
    _PIECE_MEMO[memo_key] = piece
    return piece


def betti_numbers(n: int, cache: Optional[JsonCache] = None) -> Tuple[int, ...]:
    """Per-degree ranks; construction already certifies them against A(n, d)."""
    return tuple(graded_cohomology(n, d, cache).betti for d in range(n))


def invariant_ranks(n: int, cache: Optional[JsonCache] = None) -> Tuple[int, ...]:
    """Per-degree invariant ranks; asserts C(n-1, d) each and 2^{n-1} total."""
    _check_n(n)
    out = []
    for d in range(n):
        got = graded_cohomology(n, d, cache).invariant_rank()
        want = comb(n - 1, d)
        if got != want:
            raise VerificationError(
                f"invariant rank at (n={n}, d={d}) is {got}, "
                f"expected C({n - 1},{d}) = {want}"
            )
        out.append(got)
    total = sum(out)
    if total != 1 << (n - 1):
        raise VerificationError(
            f"invariant ranks total {total}, expected 2^{n - 1} = {1 << (n - 1)}"
        )
    return tuple(out)


def degree_report(n: int, d: int, cache: Optional[JsonCache] = None,
                  with_invariants: bool = True) -> dict:
    """JSON-ready report for one degree; failures are reported, not raised."""
    base = {
        "n": n,
        "degree": d,
        "eulerian_expected": eulerian_by_descents(n)[d],
        "binom_expected": comb(n - 1, d),
    }
    try:
        piece = graded_cohomology(n, d, cache)
        inv = piece.invariant_rank() if with_invariants else None
        ok = inv == comb(n - 1, d) if with_invariants else True
        return {**base, "betti": piece.betti, "invariant_rank": inv, "pass": ok}
    except VerificationError as exc:
        return {**base, "betti": None, "invariant_rank": None,
                "pass": False, "error": str(exc)}


def theorem_a_reports(n: int, cache: Optional[JsonCache] = None,
                      jobs: int = 1) -> List[dict]:
    degrees = list(range(n))
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        cache_dir = str(cache.directory) if cache else None
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_degree_report_worker, n, d, cache_dir)
                       for d in degrees]
            return [f.result() for f in futures]
    return [degree_report(n, d, cache) for d in degrees]


def _degree_report_worker(n: int, d: int, cache_dir: Optional[str]) -> dict:
    cache = JsonCache(cache_dir) if cache_dir else None
    return degree_report(n, d, cache)
