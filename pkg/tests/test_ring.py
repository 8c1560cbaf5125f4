"""The structure-constant engine on the pi basis."""

import random
from math import comb, factorial

import pytest

from petring.combinat import SubsetJ, all_subsets, m_factor
from petring.intpoly import IntPoly, elementary_symmetric
from petring.ring import (IntervalClass, PetClass, StructureConstantError,
                          mult, mult_by_generator, multiplication_table,
                          pi_interval, pi_to_polynomial, poincare_ranks,
                          reduce_polynomial)


def basis(n, members):
    return PetClass.basis(n, members)


def test_constructors_and_terms():
    c = PetClass(4, {SubsetJ(4, [1]): 2, SubsetJ(4, [1, 2]): -1, SubsetJ(4, [3]): 0})
    assert c.coefficient(SubsetJ(4, [1])) == 2
    assert c.coefficient(SubsetJ(4, [3])) == 0
    assert [str(j) for j, _ in c.terms()] == ["{1}", "{1,2}"]
    assert PetClass.zero(4).is_zero()
    assert PetClass.unit(4) == PetClass(4, {SubsetJ(4, []): 1})


def test_rank_mismatch_rejected():
    with pytest.raises(ValueError):
        PetClass(4, {SubsetJ(5, [1]): 1})
    with pytest.raises(ValueError):
        basis(4, [1]) + basis(5, [1])


def test_linear_algebra():
    a = basis(4, [1])
    b = basis(4, [2])
    assert a + b - a == b
    assert 3 * a - a - a - a == PetClass.zero(4)
    assert -(a - b) == b - a
    assert 2 * a == a * 2


def test_str_format():
    c = 6 * basis(4, [1, 2, 3]) - basis(4, [1, 3])
    assert str(c) == "6*pi{1,2,3} - pi{1}|{3}"
    assert str(PetClass.zero(3)) == "0"
    assert str(PetClass.unit(3)) == "1"
    assert str(-3 * PetClass.unit(3)) == "-3"
    assert str(basis(3, [1]) - 2 * PetClass.unit(3)) == "pi{1} - 2"


def test_json_round_trip():
    c = 6 * basis(4, [1, 2, 3]) - basis(4, [1, 3]) + 5 * PetClass.unit(4)
    obj = c.to_json_obj()
    assert all(set(t) == {"subset", "coeff", "degree"} for t in obj)
    assert PetClass.from_json_obj(4, obj) == c


def test_degree_components():
    c = basis(4, [1]) + basis(4, [1, 2]) + PetClass.unit(4)
    parts = c.degree_components()
    assert sorted(parts) == [0, 1, 2]
    assert parts[1] == basis(4, [1])
    assert not c.is_homogeneous()
    assert basis(4, [1, 3]).is_homogeneous()


def test_generator_isolated():
    # new index touching no existing component
    assert mult_by_generator(basis(5, [3]), 1) == basis(5, [1, 3])
    assert mult_by_generator(PetClass.unit(5), 2) == basis(5, [2])


def test_generator_extends_component():
    # growing a k-component multiplies by k+1
    assert mult_by_generator(basis(4, [1]), 2) == 2 * basis(4, [1, 2])
    assert mult_by_generator(basis(5, [1, 2]), 3) == 3 * basis(5, [1, 2, 3])
    assert mult_by_generator(basis(5, [3, 4]), 2) == 3 * basis(5, [2, 3, 4])


def test_generator_bridges_two_components():
    # filling the gap merges both sides with a double binomial
    got = mult_by_generator(basis(4, [1, 3]), 2)
    assert got == 6 * basis(4, [1, 2, 3])
    got = mult_by_generator(basis(6, [1, 3, 4]), 2)
    assert got == comb(2, 1) * comb(4, 2) * basis(6, [1, 2, 3, 4])


def test_generator_inside_component():
    # index already present: the component grows one step left and right
    assert mult_by_generator(basis(3, [1]), 1) == basis(3, [1, 2])
    got = mult_by_generator(basis(5, [2, 3]), 2)
    assert got == 2 * basis(5, [1, 2, 3]) + basis(5, [2, 3, 4])
    # left boundary drops the left term
    assert mult_by_generator(basis(4, [1]), 1) == basis(4, [1, 2])
    # right boundary drops the right term
    assert mult_by_generator(basis(4, [3]), 3) == basis(4, [2, 3])
    # top class dies entirely
    assert mult_by_generator(basis(3, [1, 2]), 1).is_zero()


def test_generator_inside_with_adjacent_merge():
    # growth lands next to a neighbor component: binomial from the merge
    got = mult_by_generator(basis(6, [1, 3]), 3)
    assert got == 3 * basis(6, [1, 2, 3]) + basis(6, [1, 3, 4])
    got = mult_by_generator(basis(5, [1, 3]), 3)
    assert got == 3 * basis(5, [1, 2, 3]) + basis(5, [1, 3, 4])


def test_generator_index_range():
    with pytest.raises(ValueError):
        mult_by_generator(basis(4, [1]), 4)
    with pytest.raises(ValueError):
        mult_by_generator(basis(4, [1]), 0)


def test_mult_contract_examples():
    assert mult(basis(4, [1]), basis(4, [2, 3])) == 3 * basis(4, [1, 2, 3])
    assert mult(basis(4, [1, 2, 3]), basis(4, [1])).is_zero()
    assert mult(basis(4, [1, 3]), basis(4, [2])) == 6 * basis(4, [1, 2, 3])
    assert mult(basis(2, [1]), basis(2, [1])).is_zero()
    assert mult(basis(3, [1]), basis(3, [2])) == 2 * basis(3, [1, 2])


def test_mult_is_bilinear():
    a = 2 * basis(4, [1]) - basis(4, [2])
    b = basis(4, [3]) + PetClass.unit(4)
    lhs = mult(a, b)
    rhs = (2 * mult(basis(4, [1]), basis(4, [3])) + 2 * basis(4, [1])
           - mult(basis(4, [2]), basis(4, [3])) - basis(4, [2]))
    assert lhs == rhs


def test_mult_commutative_random():
    rng = random.Random(11)
    for n in (3, 4, 5, 6):
        subs = all_subsets(n)
        for _ in range(40):
            j = rng.choice(subs)
            k = rng.choice(subs)
            assert mult(PetClass(n, {j: 1}), PetClass(n, {k: 1})) == \
                mult(PetClass(n, {k: 1}), PetClass(n, {j: 1})), (n, str(j), str(k))


def test_mult_associative_random():
    rng = random.Random(23)
    for n in (3, 4, 5):
        subs = all_subsets(n)
        for _ in range(25):
            a, b, c = (PetClass(n, {rng.choice(subs): 1}) for _ in range(3))
            assert mult(mult(a, b), c) == mult(a, mult(b, c))


def test_interval_product_formula():
    # pi_[a,i] * pi_[i+1,b] = C(b-a+1, i-a+1) pi_[a,b]
    for n in (3, 4, 5, 6):
        for a in range(1, n):
            for b in range(a, n):
                for i in range(a, b):
                    lhs = mult(pi_interval(n, a, i), pi_interval(n, i + 1, b))
                    assert lhs == comb(b - a + 1, i - a + 1) * pi_interval(n, a, b)


def test_generator_times_interval_formula():
    # pi_i * pi_[a,b] = (b-i+1) pi_[a-1,b] + (i-a+1) pi_[a,b+1] for a<=i<=b
    for n in (3, 4, 5, 6):
        for a in range(1, n):
            for b in range(a, n):
                for i in range(a, b + 1):
                    lhs = mult(basis(n, [i]), pi_interval(n, a, b))
                    rhs = (b - i + 1) * pi_interval(n, a - 1, b) \
                        + (i - a + 1) * pi_interval(n, a, b + 1)
                    assert lhs == rhs, (n, a, b, i)


def test_top_class_annihilates_generators():
    for n in (3, 4, 5, 6):
        top = pi_interval(n, 1, n - 1)
        for i in range(1, n):
            assert mult(top, basis(n, [i])).is_zero()


def test_factorial_chain_products():
    # pi_a pi_{a+1} ... pi_b = (b-a+1)! pi_[a,b]
    for n in (4, 5, 6):
        for a in range(1, n):
            for b in range(a, n):
                acc = PetClass.unit(n)
                for i in range(a, b + 1):
                    acc = mult(acc, basis(n, [i]))
                assert acc == factorial(b - a + 1) * pi_interval(n, a, b)


def test_interval_class_conventions():
    assert IntervalClass(2, 1).to_class(4) == PetClass.unit(4)
    assert pi_interval(4, 0, 2).is_zero()
    assert pi_interval(4, 2, 4).is_zero()
    assert pi_interval(4, 1, 3) == basis(4, [1, 2, 3])


def test_pi_to_polynomial():
    assert pi_to_polynomial(SubsetJ(2, [])) == IntPoly.one(2)
    assert pi_to_polynomial(SubsetJ(2, [1])) == IntPoly.variable(2, 1)
    got = pi_to_polynomial(SubsetJ(7, [2, 4, 5]))
    assert got == elementary_symmetric(7, 2, 1) * elementary_symmetric(7, 5, 2)


def test_reduce_polynomial_basics():
    y1 = IntPoly.variable(3, 1)
    assert reduce_polynomial(y1 * y1) == basis(3, [1, 2])
    assert reduce_polynomial(IntPoly.constant(3, 5)) == 5 * PetClass.unit(3)
    assert reduce_polynomial(IntPoly.zero(3)).is_zero()


def test_reduce_kills_defining_relations():
    for n in (2, 3, 4, 5):
        for k in range(1, n + 1):
            assert reduce_polynomial(elementary_symmetric(n, n, k)).is_zero()
        for i in range(1, n):
            diff = IntPoly.variable(n, i) - IntPoly.variable(n, i + 1)
            for k in range(1, i + 1):
                assert reduce_polynomial(diff * elementary_symmetric(n, i, k)).is_zero()


def test_reduce_round_trips_pi_polynomials():
    for n in (2, 3, 4, 5):
        for j in all_subsets(n):
            assert reduce_polynomial(pi_to_polynomial(j)) == PetClass(n, {j: 1})


def test_reduce_is_ring_map_random():
    rng = random.Random(31)
    for _ in range(20):
        n = rng.randint(2, 4)
        p = IntPoly(n, {tuple(rng.randint(0, 2) for _ in range(n)): rng.randint(-5, 5)
                        for _ in range(rng.randint(1, 4))})
        q = IntPoly(n, {tuple(rng.randint(0, 2) for _ in range(n)): rng.randint(-5, 5)
                        for _ in range(rng.randint(1, 4))})
        assert reduce_polynomial(p * q) == mult(reduce_polynomial(p), reduce_polynomial(q))
        assert reduce_polynomial(p + q) == reduce_polynomial(p) + reduce_polynomial(q)


def test_poincare_ranks():
    assert poincare_ranks(2) == (1, 1)
    assert poincare_ranks(4) == (1, 3, 3, 1)
    assert poincare_ranks(5) == (1, 4, 6, 4, 1)
    for n in range(2, 9):
        assert sum(poincare_ranks(n)) == 1 << (n - 1)


def test_multiplication_table():
    table = multiplication_table(3)
    assert len(table) == 16
    assert table[(SubsetJ(3, [1]), SubsetJ(3, [2]))] == 2 * basis(3, [1, 2])
    for (j, k), v in table.items():
        assert table[(k, j)] == v


def test_structure_constants_divide_exactly():
    # every coefficient that reaches the m_K division must clear it
    for n in (4, 5, 6):
        for j in all_subsets(n):
            for k in all_subsets(n):
                mult(PetClass(n, {j: 1}), PetClass(n, {k: 1}))  # must not raise
