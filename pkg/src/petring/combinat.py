"""Subsets of [n-1], their connected components, and derived combinatorics.

A subset J of {1, ..., n-1} indexes one basis class of the ring engine.  Its
connected components J_1, ..., J_m are the maximal runs of consecutive
integers, ordered increasingly; they drive every structure-constant formula.
Subsets are stored as bitmasks of width n-1 (bit i-1 set iff i in J), so all
2^{n-1} of them enumerate quickly; n is capped at 16 at the type level.

The canonical order of basis indices is (popcount, numeric bitmask),
ascending; deterministic matrix layouts elsewhere rely on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Iterable, List, Tuple

N_CAP = 16


def _check_n(n: int) -> int:
    n = int(n)
    if not 2 <= n <= N_CAP:
        raise ValueError(f"n must be in 2..{N_CAP}, got {n}")
    return n


class SubsetJ:
    """Subset of [n-1] with its cached component decomposition."""

    __slots__ = ("n", "_mask", "_members", "_components")

    def __init__(self, n: int, members: Iterable[int] = ()):
        n = _check_n(n)
        mask = 0
        for x in members:
            x = int(x)
            if not 1 <= x <= n - 1:
                raise ValueError(f"member {x} outside 1..{n - 1}")
            mask |= 1 << (x - 1)
        self._init(n, mask)

    def _init(self, n: int, mask: int):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_mask", mask)
        members = tuple(i for i in range(1, n) if mask >> (i - 1) & 1)
        object.__setattr__(self, "_members", members)
        comps: List[Tuple[int, ...]] = []
        run: List[int] = []
        for x in members:
            if run and x == run[-1] + 1:
                run.append(x)
            else:
                if run:
                    comps.append(tuple(run))
                run = [x]
        if run:
            comps.append(tuple(run))
        object.__setattr__(self, "_components", tuple(comps))

    def __setattr__(self, name, value):
        raise AttributeError("SubsetJ is immutable")

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "SubsetJ":
        n = _check_n(n)
        if not 0 <= mask < 1 << (n - 1):
            raise ValueError(f"mask {mask} outside 0..{(1 << (n - 1)) - 1}")
        s = object.__new__(cls)
        s._init(n, mask)
        return s

    @property
    def mask(self) -> int:
        return self._mask

    @property
    def members(self) -> Tuple[int, ...]:
        return self._members

    @property
    def components(self) -> Tuple[Tuple[int, ...], ...]:
        return self._components

    def __len__(self) -> int:
        return len(self._members)

    def __contains__(self, x: int) -> bool:
        return 1 <= x <= self.n - 1 and self._mask >> (x - 1) & 1 == 1

    def __iter__(self):
        return iter(self._members)

    def with_member(self, x: int) -> "SubsetJ":
        if not 1 <= x <= self.n - 1:
            raise ValueError(f"member {x} outside 1..{self.n - 1}")
        return SubsetJ.from_mask(self.n, self._mask | 1 << (x - 1))

    def canonical_key(self) -> Tuple[int, int]:
        return (len(self._members), self._mask)

    def __eq__(self, other):
        if not isinstance(other, SubsetJ):
            return NotImplemented
        return self.n == other.n and self._mask == other._mask

    def __hash__(self):
        return hash((self.n, self._mask))

    def __str__(self):
        if not self._members:
            return "{}"
        return "|".join(
            "{" + ",".join(str(x) for x in comp) + "}" for comp in self._components
        )

    def __repr__(self):
        return f"SubsetJ(n={self.n}, {self})"

    def to_json_obj(self) -> list:
        return list(self._members)

    @classmethod
    def parse(cls, n: int, text: str) -> "SubsetJ":
        """Parse `{1,2}|{4}` or `{1,2,4}` (component split is irrelevant)."""
        s = text.strip().replace(" ", "")
        if not s:
            raise ValueError("empty subset literal")
        seen: List[int] = []
        for part in s.split("|"):
            if not (part.startswith("{") and part.endswith("}")):
                raise ValueError(f"malformed subset literal {text!r}")
            inner = part[1:-1]
            if not inner:
                continue
            for tok in inner.split(","):
                if not tok.lstrip("-").isdigit():
                    raise ValueError(f"malformed subset member {tok!r} in {text!r}")
                x = int(tok)
                if x in seen:
                    raise ValueError(f"duplicate member {x} in {text!r}")
                seen.append(x)
        return cls(n, seen)


def all_subsets(n: int) -> List[SubsetJ]:
    """All 2^{n-1} subsets in canonical (popcount, bitmask) order."""
    n = _check_n(n)
    masks = sorted(range(1 << (n - 1)), key=lambda m: (bin(m).count("1"), m))
    return [SubsetJ.from_mask(n, m) for m in masks]


def connected_components(J: SubsetJ) -> Tuple[Tuple[int, ...], ...]:
    return J.components


def m_factor(J: SubsetJ) -> int:
    """m_J = |J_1|! * |J_2|! * ... * |J_m|!; equals 1 for the empty subset."""
    out = 1
    for comp in J.components:
        out *= factorial(len(comp))
    return out


@dataclass(frozen=True)
class HessenbergFn:
    """Weakly increasing h: [n] -> [n] with h(j) >= j."""

    n: int
    values: Tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.n:
            raise ValueError("need exactly n values")
        prev = 0
        for j, v in enumerate(self.values, start=1):
            if v < j or v > self.n:
                raise ValueError(f"h({j}) = {v} violates j <= h(j) <= n")
            if v < prev:
                raise ValueError("values must be weakly increasing")
            prev = v

    def __call__(self, j: int) -> int:
        if not 1 <= j <= self.n:
            raise ValueError(f"argument {j} outside 1..{self.n}")
        return self.values[j - 1]


def hessenberg_from_subset(J: SubsetJ) -> HessenbergFn:
    """h_J(j) = j+1 for j in J, else j; h_[n-1] is the staircase j -> j+1."""
    values = tuple(j + 1 if j in J else j for j in range(1, J.n + 1))
    return HessenbergFn(J.n, values)


def dimension_of_pet_J(J: SubsetJ) -> int:
    """|J|, cross-checked against the Hessenberg box count sum(h(j) - j)."""
    dim = len(J)
    h = hessenberg_from_subset(J)
    boxes = sum(h(j) - j for j in range(1, J.n + 1))
    assert boxes == dim, f"box count {boxes} disagrees with |J| = {dim}"
    return dim


def longest_element_wJ(J: SubsetJ) -> Tuple[int, ...]:
    """One-line word of the involution reversing each extended block.

    Each component J_k = {a, ..., b} extends to the block {a, ..., b+1} of
    positions, which is reversed; everything else is fixed.
    """
    w = list(range(1, J.n + 1))
    for comp in J.components:
        a, b = comp[0], comp[-1] + 1
        w[a - 1:b] = reversed(w[a - 1:b])
    return tuple(w)
