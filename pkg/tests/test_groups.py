from math import gcd

import pytest
from hypothesis import given, settings

from ogs.errors import CapExceeded, DomainError
from ogs.groups import (
    Cyclic,
    Dihedral,
    Product,
    enumerate_element_orders,
    euler_phi,
    group_order,
    order_profile,
)

from conftest import corpus, group_exprs


def phi_scan(n):
    return sum(1 for i in range(1, n + 1) if gcd(i, n) == 1)


@pytest.mark.parametrize("n,expected", [(1, 1), (7, 6), (12, 4)])
def test_euler_phi_examples(n, expected):
    assert euler_phi(n) == expected


def test_euler_phi_matches_gcd_scan():
    for n in range(1, 400):
        assert euler_phi(n) == phi_scan(n)


def test_euler_phi_rejects_zero():
    with pytest.raises(ValueError):
        euler_phi(0)


@pytest.mark.parametrize("expr,expected", [
    (Cyclic(1), {1: 1}),
    (Dihedral(3), {1: 1, 2: 3, 3: 2}),
    (Product(Dihedral(3), Dihedral(3)), {1: 1, 2: 15, 3: 8, 6: 12}),
    (Product(Cyclic(2), Cyclic(2)), {1: 1, 2: 3}),
])
def test_order_profile_examples(expr, expected):
    assert order_profile(expr) == expected


def test_profile_keys_sorted():
    assert list(order_profile(Product(Dihedral(5), Cyclic(6)))) == sorted(order_profile(Product(Dihedral(5), Cyclic(6))))


@pytest.mark.parametrize("expr,expected", [
    (Cyclic(6), {1: 1, 2: 1, 3: 2, 6: 2}),
    (Dihedral(5), {1: 1, 2: 5, 5: 4}),
])
def test_enumeration_examples(expr, expected):
    assert enumerate_element_orders(expr, cap=100) == expected


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        enumerate_element_orders(Product(Dihedral(3), Dihedral(3)), cap=10)


def test_dihedral_even_n_merges_order_two():
    # D4: rotation a^2 has order 2 alongside the 4 reflections
    assert order_profile(Dihedral(4)) == {1: 1, 2: 5, 4: 2}


@pytest.mark.parametrize("bad", [lambda: Dihedral(2), lambda: Dihedral(1), lambda: Cyclic(0)])
def test_constructor_domain(bad):
    with pytest.raises(DomainError):
        bad()


def test_big_orders_do_not_overflow():
    p = 1_000_003
    prof = order_profile(Product(Dihedral(p), Dihedral(p)))
    assert sum(prof.values()) == 4 * p**2
    assert prof[2 * p] == 2 * p**2 - 2 * p


def test_profile_equals_enumeration_on_corpus():
    for expr in corpus(5000):
        assert order_profile(expr) == enumerate_element_orders(expr), expr


@settings(max_examples=200, deadline=None)
@given(group_exprs(max_order=5000))
def test_profile_equals_enumeration_random(expr):
    prof = order_profile(expr)
    assert prof == enumerate_element_orders(expr)
    assert sum(prof.values()) == group_order(expr)
    assert prof[1] == 1


@settings(max_examples=100, deadline=None)
@given(group_exprs(max_order=3000), group_exprs(max_order=3000))
def test_product_commutes(a, b):
    assert order_profile(Product(a, b)) == order_profile(Product(b, a))


@pytest.mark.parametrize("p,k", [(3, 1), (3, 3), (5, 2), (7, 2), (11, 1)])
def test_dihedral_prime_power_profile(p, k):
    q = p**k
    expected = {1: 1, 2: q}
    for i in range(1, k + 1):
        expected[p**i] = euler_phi(p**i)
    prof = order_profile(Dihedral(q))
    assert prof == expected
    assert sum(c for d, c in prof.items() if d not in (1, 2)) == q - 1


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 101])
def test_dpdp_census(p):
    assert order_profile(Product(Dihedral(p), Dihedral(p))) == {
        1: 1, 2: p * p + 2 * p, p: p * p - 1, 2 * p: 2 * p * p - 2 * p,
    }
