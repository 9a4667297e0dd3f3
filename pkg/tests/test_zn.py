from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclicweights.zn import (
    ZnError,
    check_order_lemmas,
    coset_image_under_multiplier,
    coset_of,
    cyclotomic_cosets,
    divisors,
    euler_phi,
    in_cyclic_subgroup,
    inverse_prime_half,
    mult_order,
    unit_group_facts,
)


def _elems(cs):
    return [list(c.elements) for c in cs]


def test_cosets_mod_9():
    assert _elems(cyclotomic_cosets(9, 2)) == [[0], [1, 2, 4, 5, 7, 8], [3, 6]]


def test_cosets_mod_15():
    assert _elems(cyclotomic_cosets(15, 2)) == [[0], [1, 2, 4, 8], [3, 6, 9, 12], [5, 10], [7, 11, 13, 14]]


def test_trivial_and_rejected():
    assert _elems(cyclotomic_cosets(1, 2)) == [[0]]
    with pytest.raises(ZnError):
        cyclotomic_cosets(4, 2)


def test_fourteen_cosets_of_8_mod_21():
    cs = cyclotomic_cosets(21, 8)
    assert len(cs) == 14
    assert coset_of(18, 21, 8).elements == (18,)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 7, 8, 9]), st.integers(1, 120))
def test_cosets_partition(q, n):
    if gcd(n, q) != 1:
        return
    cs = cyclotomic_cosets(n, q)
    flat = sorted(x for c in cs for x in c.elements)
    assert flat == list(range(n))
    assert [c.rep for c in cs] == sorted(c.rep for c in cs)
    for c in cs:
        assert c.rep == min(c.elements)
        assert c.rep * q**c.size % n == c.rep
        assert mult_order(q, n // gcd(n, c.rep)) % c.size == 0
        assert all(x * q % n in c for x in c.elements)


def test_mult_order():
    assert mult_order(2, 9) == 6
    assert mult_order(2, 7) == 3
    assert mult_order(1, 11) == 1
    with pytest.raises(ZnError):
        mult_order(3, 9)


def test_cyclic_subgroup_membership():
    assert in_cyclic_subgroup(-1, -2, 7)
    assert not in_cyclic_subgroup(-1, -2, 21)
    assert in_cyclic_subgroup(1, 5, 12)
    with pytest.raises(ZnError):
        in_cyclic_subgroup(2, 3, 4)


def test_phi_and_divisors():
    assert euler_phi(6) == 2
    assert divisors(6) == [1, 2, 3, 6]
    assert sum(euler_phi(6 // r) for r in divisors(6)) == 6


@given(st.integers(1, 2000))
def test_totient_sum(k):
    assert sum(euler_phi(k // d) for d in divisors(k)) == k


def test_coset_images():
    assert coset_image_under_multiplier(-1, coset_of(1, 7, 2)).elements == (3, 5, 6)
    assert coset_image_under_multiplier(2, coset_of(1, 15, 2)).elements == (1, 2, 4, 8)
    assert coset_image_under_multiplier(2, coset_of(1, 15, 4)).elements == (2, 8)
    with pytest.raises(ZnError):
        coset_image_under_multiplier(3, coset_of(1, 15, 2))


def test_inverse_prime_half():
    # q = 4: p^(e/2) = 2, inverse mod 15 is 8; with the sign, -2 -> 7
    assert inverse_prime_half(4, 15, 0) == 8
    assert inverse_prime_half(4, 15, 1) == 7
    with pytest.raises(ZnError):
        inverse_prime_half(8, 7, 0)


def test_unit_group_facts():
    f = unit_group_facts(7, 2)
    assert (f.m, f.m_neg, f.contains_minus_one_in_neg_q) == (3, 6, True)
    f = unit_group_facts(21, 2)
    assert (f.m, f.m_neg, f.contains_minus_one_in_neg_q) == (6, 6, False)
    assert unit_group_facts(15, 4).m_l0 == (4, 4)
    assert unit_group_facts(15, 2).m_l0 is None


def test_order_lemmas_over_a_range():
    applied = set()
    for q in (2, 3, 4, 5, 8, 9, 16):
        for n in range(2, 130):
            if gcd(n, q) != 1:
                continue
            for c in cyclotomic_cosets(n, q):
                applied.update(check_order_lemmas(c))
    assert {"neg_q_contains_minus_one", "neg_q_avoids_minus_one", "prime_half_l0_0", "prime_half_l0_1"} <= applied
