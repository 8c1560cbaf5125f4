"""Exact multivariate integer polynomials and the symmetric-function helpers."""

import random

import pytest

from petring.intpoly import (AmbientMismatchError, HookPartition, IntPoly,
                             elementary_symmetric, hook_monomial_symmetric,
                             power_sum_prefix)


def test_zero_coefficients_are_dropped():
    p = IntPoly(3, {(1, 0, 0): 2, (0, 1, 0): 0})
    assert p.num_terms() == 1
    assert p.coefficient((0, 1, 0)) == 0


def test_construction_rejects_bad_monomials():
    with pytest.raises(ValueError):
        IntPoly(3, {(1, 0): 1})
    with pytest.raises(ValueError):
        IntPoly(3, {(1, -1, 0): 1})


def test_immutable():
    p = IntPoly.one(2)
    with pytest.raises(AttributeError):
        p.ambient_n = 5


def test_variable_indexing():
    y2 = IntPoly.variable(3, 2)
    assert y2.coefficient((0, 1, 0)) == 1
    with pytest.raises(ValueError):
        IntPoly.variable(3, 4)
    with pytest.raises(ValueError):
        IntPoly.variable(3, 0)


def test_arithmetic_basics():
    y1 = IntPoly.variable(2, 1)
    y2 = IntPoly.variable(2, 2)
    p = (y1 + y2) * (y1 - y2)
    assert p == y1 ** 2 - y2 ** 2
    assert 2 + y1 - 2 == y1
    assert -(-y1) == y1
    assert 3 * y1 == y1 * 3
    assert (y1 * 0).is_zero()
    assert bool(y1) and not bool(IntPoly.zero(2))


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatchError):
        IntPoly.variable(2, 1) + IntPoly.variable(3, 1)


def test_pow():
    y1 = IntPoly.variable(2, 1)
    assert y1 ** 0 == IntPoly.one(2)
    assert (y1 + 1) ** 2 == y1 ** 2 + 2 * y1 + 1
    with pytest.raises(ValueError):
        y1 ** -1


def test_terms_are_graded_lex_descending():
    y1, y2 = IntPoly.variable(2, 1), IntPoly.variable(2, 2)
    p = y2 + y1 ** 2 + y1 * y2 + 1
    assert [m for m, _ in p.terms()] == [(2, 0), (1, 1), (0, 1), (0, 0)]


def test_str_format():
    y1 = IntPoly.variable(3, 1)
    y2 = IntPoly.variable(3, 2)
    y3 = IntPoly.variable(3, 3)
    assert str(3 * y1 ** 2 * y2 - y3) == "3*y1^2*y2 - y3"
    assert str(IntPoly.zero(3)) == "0"
    assert str(-y1) == "-y1"
    assert str(IntPoly.constant(3, -7)) == "-7"
    assert str(y1 - 5) == "y1 - 5"


def test_total_degree_and_homogeneity():
    y1, y2 = IntPoly.variable(2, 1), IntPoly.variable(2, 2)
    assert IntPoly.zero(2).total_degree() == -1
    assert (y1 * y2 + y1 ** 2).is_homogeneous()
    mixed = y1 ** 2 + y2
    assert not mixed.is_homogeneous()
    parts = mixed.homogeneous_components()
    assert sorted(parts) == [1, 2]
    assert parts[1] == y2 and parts[2] == y1 ** 2


def test_json_round_trip():
    p = 3 * IntPoly.variable(3, 1) ** 2 - IntPoly.variable(3, 3) + 11
    obj = p.to_json_obj()
    assert all(isinstance(t["coeff"], str) for t in obj)
    assert IntPoly.from_json_obj(3, obj) == p


def test_elementary_symmetric_small():
    y1, y2, y3 = (IntPoly.variable(3, i) for i in (1, 2, 3))
    assert elementary_symmetric(3, 3, 0) == IntPoly.one(3)
    assert elementary_symmetric(3, 2, 1) == y1 + y2
    assert elementary_symmetric(3, 3, 2) == y1 * y2 + y1 * y3 + y2 * y3
    assert elementary_symmetric(3, 3, 3) == y1 * y2 * y3
    with pytest.raises(ValueError):
        elementary_symmetric(3, 4, 1)
    with pytest.raises(ValueError):
        elementary_symmetric(3, 2, 3)


def test_elementary_symmetric_term_counts():
    from math import comb
    for i in range(1, 6):
        for k in range(0, i + 1):
            assert elementary_symmetric(6, i, k).num_terms() == comb(i, k)


def test_pascal_recurrence():
    # e_k(y_1..y_b) = e_k(y_1..y_{b-1}) + e_{k-1}(y_1..y_{b-1}) y_b
    for n in (3, 5):
        for b in range(2, n + 1):
            for k in range(1, b + 1):
                tail = elementary_symmetric(n, b - 1, k) if k <= b - 1 else IntPoly.zero(n)
                rhs = tail + elementary_symmetric(n, b - 1, k - 1) * IntPoly.variable(n, b)
                assert elementary_symmetric(n, b, k) == rhs


def test_hook_partition_validation():
    with pytest.raises(ValueError):
        HookPartition(0, 1)
    with pytest.raises(ValueError):
        HookPartition(2, -1)


def test_hook_monomial_small():
    y1, y2 = IntPoly.variable(3, 1), IntPoly.variable(3, 2)
    # hook (2,1) on two variables: y1^2 y2 + y1 y2^2
    assert hook_monomial_symmetric(3, 2, HookPartition(2, 1)) == y1 ** 2 * y2 + y1 * y2 ** 2
    # one-row case is a pure power sum
    assert hook_monomial_symmetric(3, 2, HookPartition(3, 0)) == y1 ** 3 + y2 ** 3
    # all-ones hook is elementary
    assert hook_monomial_symmetric(3, 2, HookPartition(1, 1)) == elementary_symmetric(3, 2, 2)
    with pytest.raises(ValueError):
        hook_monomial_symmetric(3, 2, HookPartition(2, 2))


def test_power_sum_prefix():
    y1, y2 = IntPoly.variable(4, 1), IntPoly.variable(4, 2)
    assert power_sum_prefix(4, 2, 3) == y1 ** 3 + y2 ** 3
    assert power_sum_prefix(4, 1, 5) == y1 ** 5
    with pytest.raises(ValueError):
        power_sum_prefix(4, 0, 2)
    with pytest.raises(ValueError):
        power_sum_prefix(4, 2, 0)


def test_hook_product_identities_random():
    # p_d(y_1..y_i) e_k(y_1..y_i) expands into at most two hooks
    rng = random.Random(42)
    for _ in range(60):
        n = rng.randint(2, 7)
        i = rng.randint(2, n)
        k = rng.randint(1, i - 1)
        d = rng.randint(2, 4)
        lhs = power_sum_prefix(n, i, d) * elementary_symmetric(n, i, k)
        rhs = hook_monomial_symmetric(n, i, HookPartition(d + 1, k - 1)) \
            + hook_monomial_symmetric(n, i, HookPartition(d, k))
        assert lhs == rhs
        lin = power_sum_prefix(n, i, 1) * elementary_symmetric(n, i, k)
        lin_rhs = hook_monomial_symmetric(n, i, HookPartition(2, k - 1)) \
            + (k + 1) * elementary_symmetric(n, i, k + 1)
        assert lin == lin_rhs


def test_ring_laws_random():
    rng = random.Random(7)

    def rand_poly(n):
        return IntPoly(n, {tuple(rng.randint(0, 2) for _ in range(n)): rng.randint(-9, 9)
                           for _ in range(rng.randint(1, 5))})

    for _ in range(40):
        n = rng.randint(2, 5)
        p, q, r = rand_poly(n), rand_poly(n), rand_poly(n)
        assert p * q == q * p
        assert (p + q) * r == p * r + q * r
        assert (p * q) * r == p * (q * r)
