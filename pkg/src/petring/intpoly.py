"""Exact sparse polynomial arithmetic over Z in a fixed number of variables.

Polynomials live in Z[y_1, ..., y_n] for an ambient n fixed at construction
and carried by every value; combining values from different ambient rings is
an error, never a silent promotion.  Terms map exponent tuples to Python
integers (arbitrary precision, so coefficients never overflow), and zero
coefficients are never stored.

The canonical term order is graded lexicographic, descending: higher total
degree first, then lexicographically larger exponent tuple first.  The order
matters only for deterministic printing and serialization; there is no
Groebner machinery here.

Besides generic arithmetic this module builds the specific symmetric
polynomials the rest of the package consumes: elementary symmetric
polynomials of a variable prefix, hook-shaped monomial symmetric polynomials
m_{(d,1^k)}, and prefix power sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Tuple

Monomial = Tuple[int, ...]


class AmbientMismatchError(ValueError):
    """Two polynomials from different ambient rings were combined."""


def _validate_monomial(mono, n) -> Monomial:
    m = tuple(int(e) for e in mono)
    if len(m) != n:
        raise ValueError(f"monomial {m!r} has {len(m)} exponents, ambient n is {n}")
    if any(e < 0 for e in m):
        raise ValueError(f"negative exponent in monomial {m!r}")
    return m


def _grlex_key(mono: Monomial):
    return (sum(mono), mono)


class IntPoly:
    """Sparse integer polynomial in y_1..y_n, immutable after construction."""

    __slots__ = ("ambient_n", "_terms")

    def __init__(self, ambient_n: int, terms: Mapping[Monomial, int] | None = None):
        n = int(ambient_n)
        if n < 1:
            raise ValueError(f"ambient_n must be positive, got {n}")
        clean: Dict[Monomial, int] = {}
        if terms:
            for mono, coeff in terms.items():
                c = int(coeff)
                if c == 0:
                    continue
                clean[_validate_monomial(mono, n)] = c
        object.__setattr__(self, "ambient_n", n)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "IntPoly":
        return cls(n, {})

    @classmethod
    def constant(cls, n: int, c: int) -> "IntPoly":
        return cls(n, {(0,) * n: int(c)})

    @classmethod
    def one(cls, n: int) -> "IntPoly":
        return cls.constant(n, 1)

    @classmethod
    def variable(cls, n: int, i: int) -> "IntPoly":
        """y_i, 1-indexed."""
        if not 1 <= i <= n:
            raise ValueError(f"variable index {i} out of range 1..{n}")
        exps = [0] * n
        exps[i - 1] = 1
        return cls(n, {tuple(exps): 1})

    # -- structure ---------------------------------------------------------

    def terms(self) -> List[Tuple[Monomial, int]]:
        """Terms in canonical (descending graded-lex) order."""
        return sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def coefficient(self, mono) -> int:
        return self._terms.get(_validate_monomial(mono, self.ambient_n), 0)

    def num_terms(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def total_degree(self) -> int:
        """Maximum term degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self._terms}
        return len(degs) <= 1

    def homogeneous_components(self) -> Dict[int, "IntPoly"]:
        """Split into degree -> homogeneous part; empty dict for zero."""
        parts: Dict[int, Dict[Monomial, int]] = {}
        for mono, coeff in self._terms.items():
            parts.setdefault(sum(mono), {})[mono] = coeff
        return {d: IntPoly(self.ambient_n, t) for d, t in sorted(parts.items())}

    # -- arithmetic --------------------------------------------------------

    def _check_ambient(self, other: "IntPoly"):
        if self.ambient_n != other.ambient_n:
            raise AmbientMismatchError(
                f"ambient mismatch: {self.ambient_n} vs {other.ambient_n}"
            )

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPoly.constant(self.ambient_n, other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        self._check_ambient(other)
        out = dict(self._terms)
        for mono, coeff in other._terms.items():
            c = out.get(mono, 0) + coeff
            if c:
                out[mono] = c
            else:
                out.pop(mono, None)
        return IntPoly(self.ambient_n, out)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(self.ambient_n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPoly.constant(self.ambient_n, other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return IntPoly.zero(self.ambient_n)
            return IntPoly(self.ambient_n, {m: c * other for m, c in self._terms.items()})
        if not isinstance(other, IntPoly):
            return NotImplemented
        self._check_ambient(other)
        out: Dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = out.get(m, 0) + c1 * c2
                if c:
                    out[m] = c
                else:
                    del out[m]
        return IntPoly(self.ambient_n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = IntPoly.one(self.ambient_n)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.ambient_n == other.ambient_n and self._terms == other._terms

    def __hash__(self):
        return hash((self.ambient_n, frozenset(self._terms.items())))

    def __bool__(self):
        return bool(self._terms)

    # -- rendering ---------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for mono, coeff in self.terms():
            factors = []
            for pos, e in enumerate(mono):
                if e == 1:
                    factors.append(f"y{pos + 1}")
                elif e > 1:
                    factors.append(f"y{pos + 1}^{e}")
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            if not pieces:
                pieces.append(body if coeff > 0 else "-" + body)
            else:
                pieces.append(("+ " if coeff > 0 else "- ") + body)
        return " ".join(pieces)

    def __repr__(self):
        return f"IntPoly(n={self.ambient_n}, {str(self)})"

    def to_json_obj(self) -> list:
        """Canonically ordered term list; coefficients as decimal strings."""
        return [
            {"exponents": list(mono), "coeff": str(coeff)}
            for mono, coeff in self.terms()
        ]

    @classmethod
    def from_json_obj(cls, n: int, obj: Iterable[Mapping]) -> "IntPoly":
        terms: Dict[Monomial, int] = {}
        for entry in obj:
            mono = tuple(int(e) for e in entry["exponents"])
            terms[mono] = terms.get(mono, 0) + int(entry["coeff"])
        return cls(n, terms)


# -- functional wrappers ----------------------------------------------------

def add(p: IntPoly, q: IntPoly) -> IntPoly:
    return p + q


def mul(p: IntPoly, q: IntPoly) -> IntPoly:
    return p * q


def scale(p: IntPoly, c: int) -> IntPoly:
    return p * int(c)


# -- the symmetric polynomials used by the ring engine ----------------------

@dataclass(frozen=True)
class HookPartition:
    """The partition (d, 1^k): one part d >= 1 followed by k parts equal 1."""

    d: int
    k: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"hook partition needs d >= 1, got d={self.d}")
        if self.k < 0:
            raise ValueError(f"hook partition needs k >= 0, got k={self.k}")


def elementary_symmetric(n: int, i: int, k: int) -> IntPoly:
    """e_k(y_1, ..., y_i) inside the ambient ring Z[y_1..y_n]; e_0 = 1."""
    if not 0 <= k <= i <= n:
        raise ValueError(f"need 0 <= k <= i <= n, got k={k}, i={i}, n={n}")
    if k == 0:
        return IntPoly.one(n)
    terms: Dict[Monomial, int] = {}
    for support in combinations(range(i), k):
        exps = [0] * n
        for pos in support:
            exps[pos] = 1
        terms[tuple(exps)] = 1
    return IntPoly(n, terms)


def hook_monomial_symmetric(n: int, i: int, hp: HookPartition) -> IntPoly:
    """m_{(d,1^k)}(y_1, ..., y_i): sum of the distinct permuted monomials.

    For d = 1 the partition is (1^{k+1}) and the result equals
    e_{k+1}(y_1..y_i).
    """
    if not hp.k + 1 <= i <= n:
        raise ValueError(
            f"hook partition (d={hp.d},1^{hp.k}) needs k+1 <= i <= n, got i={i}, n={n}"
        )
    if hp.d == 1:
        return elementary_symmetric(n, i, hp.k + 1)
    terms: Dict[Monomial, int] = {}
    for head in range(i):
        rest = [pos for pos in range(i) if pos != head]
        for ones in combinations(rest, hp.k):
            exps = [0] * n
            exps[head] = hp.d
            for pos in ones:
                exps[pos] = 1
            terms[tuple(exps)] = 1
    return IntPoly(n, terms)


def power_sum_prefix(n: int, i: int, d: int) -> IntPoly:
    """y_1^d + y_2^d + ... + y_i^d."""
    if not 1 <= i <= n:
        raise ValueError(f"need 1 <= i <= n, got i={i}, n={n}")
    if d < 1:
        raise ValueError(f"need d >= 1, got d={d}")
    terms: Dict[Monomial, int] = {}
    for pos in range(i):
        exps = [0] * n
        exps[pos] = d
        terms[tuple(exps)] = 1
    return IntPoly(n, terms)
