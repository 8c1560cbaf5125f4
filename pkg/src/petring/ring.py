"""The cohomology ring engine on the pi_J basis.

An element is a finitely supported integer combination of basis symbols pi_J,
J a subset of [n-1].  Products never touch polynomials: multiplying by a
degree-one generator pi_i expands through an explicit component-merge rule
whose coefficients are binomials, and a general product pi_J * pi_K folds the
generators of one factor and then divides every coefficient by m_K, exactly.

The merge rule for pi_i * pi_J:

  i not in J, J' = J + {i}:
    neither i-1 nor i+1 in J     ->  pi_J'                       (isolated)
    exactly one neighbor, in J_k ->  (|J_k| + 1) * pi_J'         (extension)
    both neighbors, J_k | J_{k+1}->  C(|J_k|+1, |J_k|)
                                     * C(|J_k|+1+|J_{k+1}|, |J_k|+1) * pi_J'

  i in J, inside component [a, b]:
    (b-i+1) * c_left * pi_{J+{a-1}}  +  (i-a+1) * c_right * pi_{J+{b+1}}
    where a term is dropped outright when its new index would be 0 or n
    (classes with indices outside [n-1] are zero), and the c factors are the
    merge binomials picked up when the grown interval lands adjacent to the
    neighboring component:
      c_left  = C(|J_{k-1}| + b-a+2, |J_{k-1}|)  if max J_{k-1} = a-2, else 1
      c_right = C(|J_{k+1}| + b-a+2, b-a+2)      if min J_{k+1} = b+2, else 1

Degrees above n-1 collapse to zero automatically: every merge that would
need index 0 or n produces no term.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial
from typing import Dict, Iterable, List, Mapping, Tuple

from .combinat import SubsetJ, all_subsets, m_factor
from .intpoly import IntPoly, elementary_symmetric


class StructureConstantError(ArithmeticError):
    """A coefficient failed the exact division by m_K.

    This would falsify the integral-basis theory; it must never fire on
    valid inputs and is always a hard error, never a silent rounding.
    """


class PetClass:
    """Integer combination of pi_J symbols; immutable."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[SubsetJ, int] | None = None):
        n = int(n)
        clean: Dict[SubsetJ, int] = {}
        if terms:
            for J, coeff in terms.items():
                if not isinstance(J, SubsetJ):
                    raise TypeError("PetClass keys must be SubsetJ")
                if J.n != n:
                    raise ValueError(f"subset has n={J.n}, class has n={n}")
                c = int(coeff)
                if c:
                    clean[J] = c
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("PetClass is immutable")

    @classmethod
    def zero(cls, n: int) -> "PetClass":
        return cls(n, {})

    @classmethod
    def unit(cls, n: int) -> "PetClass":
        return cls(n, {SubsetJ(n): 1})

    @classmethod
    def basis(cls, n: int, members: Iterable[int]) -> "PetClass":
        return cls(n, {SubsetJ(n, members): 1})

    def terms(self) -> List[Tuple[SubsetJ, int]]:
        """(subset, coefficient) pairs in canonical ascending order."""
        return sorted(self._terms.items(), key=lambda kv: kv[0].canonical_key())

    def coefficient(self, J: SubsetJ) -> int:
        return self._terms.get(J, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def support_degrees(self) -> Tuple[int, ...]:
        return tuple(sorted({len(J) for J in self._terms}))

    def is_homogeneous(self) -> bool:
        return len(self.support_degrees()) <= 1

    def degree_components(self) -> Dict[int, "PetClass"]:
        parts: Dict[int, Dict[SubsetJ, int]] = {}
        for J, c in self._terms.items():
            parts.setdefault(len(J), {})[J] = c
        return {d: PetClass(self.n, t) for d, t in sorted(parts.items())}

    def __add__(self, other):
        if not isinstance(other, PetClass):
            return NotImplemented
        if self.n != other.n:
            raise ValueError(f"rank mismatch: {self.n} vs {other.n}")
        out = dict(self._terms)
        for J, c in other._terms.items():
            v = out.get(J, 0) + c
            if v:
                out[J] = v
            else:
                del out[J]
        return PetClass(self.n, out)

    def __neg__(self):
        return PetClass(self.n, {J: -c for J, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, PetClass):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return PetClass(self.n, {J: c * other for J, c in self._terms.items()})
        if isinstance(other, PetClass):
            return mult(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, PetClass):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, frozenset((J.mask, c) for J, c in self._terms.items())))

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        if not self._terms:
            return "0"
        ordered = sorted(
            self._terms.items(), key=lambda kv: kv[0].canonical_key(), reverse=True
        )
        pieces = []
        for J, coeff in ordered:
            mag = abs(coeff)
            if len(J) == 0:
                body = str(mag)
            elif mag == 1:
                body = f"pi{J}"
            else:
                body = f"{mag}*pi{J}"
            if not pieces:
                pieces.append(body if coeff > 0 else "-" + body)
            else:
                pieces.append(("+ " if coeff > 0 else "- ") + body)
        return " ".join(pieces)

    def __repr__(self):
        return f"PetClass(n={self.n}, {self})"

    def to_json_obj(self) -> list:
        return [
            {"subset": J.to_json_obj(), "coeff": str(c), "degree": len(J)}
            for J, c in self.terms()
        ]

    @classmethod
    def from_json_obj(cls, n: int, obj: Iterable[Mapping]) -> "PetClass":
        terms: Dict[SubsetJ, int] = {}
        for entry in obj:
            J = SubsetJ(n, entry["subset"])
            terms[J] = terms.get(J, 0) + int(entry["coeff"])
        return cls(n, terms)


@dataclass(frozen=True)
class IntervalClass:
    """The symbol pi_[a,b] with the degenerate conventions built in.

    [a, a-1] (an empty interval) is the unit; any index outside 1..n-1
    makes the class zero.
    """

    a: int
    b: int

    def to_class(self, n: int) -> PetClass:
        if self.b < self.a:
            return PetClass.unit(n)
        if self.a < 1 or self.b > n - 1:
            return PetClass.zero(n)
        return PetClass.basis(n, range(self.a, self.b + 1))


def pi_interval(n: int, a: int, b: int) -> PetClass:
    return IntervalClass(a, b).to_class(n)


def pi_to_polynomial(J: SubsetJ) -> IntPoly:
    """Product over components of e_{|J_k|}(y_1..y_{max J_k}); pi_{} -> 1."""
    out = IntPoly.one(J.n)
    for comp in J.components:
        out = out * elementary_symmetric(J.n, comp[-1], len(comp))
    return out


def _merge_terms(J: SubsetJ, i: int) -> List[Tuple[SubsetJ, int]]:
    """Expansion of pi_i * pi_J as basis pairs, per the merge rule."""
    n = J.n
    comps = J.components
    if i not in J:
        Jp = J.with_member(i)
        left = i - 1 in J
        right = i + 1 in J
        if not left and not right:
            return [(Jp, 1)]
        if left and right:
            lk = next(len(c) for c in comps if c[-1] == i - 1)
            rk = next(len(c) for c in comps if c[0] == i + 1)
            coeff = comb(lk + 1, lk) * comb(lk + 1 + rk, lk + 1)
            return [(Jp, coeff)]
        k = next(len(c) for c in comps if (c[-1] == i - 1 if left else c[0] == i + 1))
        return [(Jp, k + 1)]

    idx = next(pos for pos, c in enumerate(comps) if c[0] <= i <= c[-1])
    a, b = comps[idx][0], comps[idx][-1]
    width = b - a + 2  # size of the grown interval on either side
    out: List[Tuple[SubsetJ, int]] = []
    if a > 1:  # index 0 never appears: that term is zero by convention
        c_left = 1
        if idx > 0 and comps[idx - 1][-1] == a - 2:
            prev = len(comps[idx - 1])
            c_left = comb(prev + width, prev)
        out.append((J.with_member(a - 1), (b - i + 1) * c_left))
    if b < n - 1:  # index n never appears either
        c_right = 1
        if idx + 1 < len(comps) and comps[idx + 1][0] == b + 2:
            nxt = len(comps[idx + 1])
            c_right = comb(nxt + width, width)
        out.append((J.with_member(b + 1), (i - a + 1) * c_right))
    return out


def mult_by_generator(c: PetClass, i: int) -> PetClass:
    """pi_i * c, extended linearly over the terms of c."""
    if not 1 <= i <= c.n - 1:
        raise ValueError(f"generator index {i} outside 1..{c.n - 1}")
    out: Dict[SubsetJ, int] = {}
    for J, coeff in c._terms.items():
        for J2, k in _merge_terms(J, i):
            v = out.get(J2, 0) + coeff * k
            if v:
                out[J2] = v
            else:
                del out[J2]
    return PetClass(c.n, out)


def _basis_mult(J: SubsetJ, K: SubsetJ) -> PetClass:
    # expand the factor with the smaller m-factor: fewer divisions and
    # smaller intermediates; ties expand the second factor
    if m_factor(K) <= m_factor(J):
        base, expand = J, K
    else:
        base, expand = K, J
    acc = PetClass(J.n, {base: 1})
    for i in expand.members:
        acc = mult_by_generator(acc, i)
    m = m_factor(expand)
    if m == 1:
        return acc
    out: Dict[SubsetJ, int] = {}
    for L, coeff in acc._terms.items():
        q, r = divmod(coeff, m)
        if r:
            raise StructureConstantError(
                f"non-integral structure constant: pi_{J} * pi_{K} produced "
                f"coefficient {coeff} at pi_{L}, not divisible by m = {m}"
            )
        out[L] = q
    return PetClass(J.n, out)


def mult(cJ: PetClass, cK: PetClass) -> PetClass:
    """Product of two classes, bilinear over basis products."""
    if cJ.n != cK.n:
        raise ValueError(f"rank mismatch: {cJ.n} vs {cK.n}")
    out = PetClass.zero(cJ.n)
    for J, a in cJ.terms():
        for K, b in cK.terms():
            out = out + _basis_mult(J, K) * (a * b)
    return out


def _times_variable(c: PetClass, i: int) -> PetClass:
    # y_i = pi_i - pi_{i-1} for i < n (pi_0 = 0), and y_n = -pi_{n-1}
    n = c.n
    if i == n:
        return -mult_by_generator(c, n - 1)
    out = mult_by_generator(c, i)
    if i > 1:
        out = out - mult_by_generator(c, i - 1)
    return out


def reduce_polynomial(p: IntPoly) -> PetClass:
    """Normal form of a polynomial in the pi basis.

    Substitutes y_i -> pi_i - pi_{i-1} and y_n -> -pi_{n-1}, then expands
    every generator product through mult_by_generator.  Two polynomials
    congruent modulo the defining ideals reduce to the same class.
    """
    n = p.ambient_n
    if n < 2:
        raise ValueError("the ring engine needs n >= 2")
    total = PetClass.zero(n)
    for mono, coeff in p.terms():
        acc = PetClass(n, {SubsetJ(n): coeff})
        for pos, e in enumerate(mono):
            for _ in range(e):
                acc = _times_variable(acc, pos + 1)
                if acc.is_zero():
                    break
            if acc.is_zero():
                break
        total = total + acc
    return total


def poincare_ranks(n: int) -> Tuple[int, ...]:
    """(C(n-1,0), ..., C(n-1,n-1)); sums to 2^{n-1}."""
    if n < 2:
        raise ValueError("need n >= 2")
    return tuple(comb(n - 1, d) for d in range(n))


def multiplication_table(n: int) -> Dict[Tuple[SubsetJ, SubsetJ], PetClass]:
    """All 2^{n-1} x 2^{n-1} basis products, keyed by ordered pairs."""
    subsets = all_subsets(n)
    table: Dict[Tuple[SubsetJ, SubsetJ], PetClass] = {}
    for J in subsets:
        for K in subsets:
            table[(J, K)] = _basis_mult(J, K)
    return table
