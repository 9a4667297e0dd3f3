"""Arithmetic in Z_n and its unit group: cyclotomic cosets, orders, totients."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .gf import PrimePower

__all__ = [
    "ZnError",
    "CyclotomicCoset",
    "UnitGroupFacts",
    "cyclotomic_cosets",
    "coset_of",
    "mult_order",
    "in_cyclic_subgroup",
    "cyclic_subgroup",
    "euler_phi",
    "divisors",
    "coset_image_under_multiplier",
    "unit_group_facts",
    "inverse_prime_half",
    "check_order_lemmas",
]


class ZnError(ValueError):
    pass


@dataclass(frozen=True)
class CyclotomicCoset:
    n: int
    q: int
    rep: int
    elements: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x % self.n in self.elements

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"


def _require_unit(a: int, n: int) -> int:
    a %= n
    if gcd(a, n) != 1:
        raise ZnError(f"{a} is not a unit modulo {n}")
    return a


@lru_cache(maxsize=4096)
def cyclotomic_cosets(n: int, q: int) -> tuple[CyclotomicCoset, ...]:
    """All q-cyclotomic cosets mod n, sorted by their smallest element."""
    if n < 1:
        raise ZnError("n must be >= 1")
    if gcd(n, q) != 1:
        raise ZnError(f"gcd(n={n}, q={q}) != 1: repeated-root codes are not supported")
    seen = [False] * n
    out = []
    for i in range(n):
        if seen[i]:
            continue
        elems = []
        j = i
        while not seen[j]:
            seen[j] = True
            elems.append(j)
            j = j * q % n
        out.append(CyclotomicCoset(n, q, i, tuple(sorted(elems))))
    return tuple(out)


def coset_of(i: int, n: int, q: int) -> CyclotomicCoset:
    i %= n
    for c in cyclotomic_cosets(n, q):
        if i in c.elements:
            return c
    raise AssertionError("cosets partition Z_n")


def mult_order(a: int, n: int) -> int:
    """Least k >= 1 with a^k = 1 mod n."""
    if n == 1:
        return 1
    a = _require_unit(a, n)
    k, x = 1, a
    while x != 1:
        x = x * a % n
        k += 1
    return k


def cyclic_subgroup(g: int, n: int) -> list[int]:
    """The powers g^0, g^1, ... of a unit g mod n, in that order."""
    if n == 1:
        return [0]
    g = _require_unit(g, n)
    out, x = [1], g
    while x != 1:
        out.append(x)
        x = x * g % n
    return out


def in_cyclic_subgroup(x: int, g: int, n: int) -> bool:
    if n == 1:
        return True
    x = _require_unit(x, n)
    return x in cyclic_subgroup(g, n)


def euler_phi(b: int) -> int:
    if b < 1:
        raise ZnError("phi is defined for b >= 1")
    result, m, d = b, b, 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


def divisors(k: int) -> list[int]:
    if k < 1:
        raise ZnError("divisors are defined for k >= 1")
    small, large = [], []
    d = 1
    while d * d <= k:
        if k % d == 0:
            small.append(d)
            if d * d != k:
                large.append(k // d)
        d += 1
    return small + large[::-1]


def coset_image_under_multiplier(a: int, coset: CyclotomicCoset) -> CyclotomicCoset:
    """Nonzeros of mu_a applied to the minimal ideal of ``coset``.

    mu_a sends the ideal with nonzeros Gamma to the one with nonzeros
    a^-1 * Gamma.
    """
    n = coset.n
    a = _require_unit(a, n)
    a_inv = pow(a, -1, n) if n > 1 else 0
    return coset_of(a_inv * coset.rep, n, coset.q)


def inverse_prime_half(q: int, n: int, l0: int) -> int:
    """(-1)^l0 * p^(-e/2) mod n, as a residue in 0..n-1 (e must be even)."""
    pp = PrimePower.from_order(q)
    if pp.e % 2:
        raise ZnError(f"q={q} is not an even power of its characteristic")
    if l0 not in (0, 1):
        raise ZnError("l0 must be 0 or 1")
    base = _require_unit((-1) ** l0 * pp.p ** (pp.e // 2), n)
    return pow(base, -1, n) if n > 1 else 0


@dataclass(frozen=True)
class UnitGroupFacts:
    n: int
    q: int
    m: int
    m_neg: int
    contains_minus_one_in_neg_q: bool
    m_l0: tuple[int, int] | None = None


def unit_group_facts(n: int, q: int) -> UnitGroupFacts:
    if gcd(n, q) != 1:
        raise ZnError(f"gcd(n={n}, q={q}) != 1")
    m = mult_order(q, n)
    m_neg = mult_order(-q, n)
    contains = in_cyclic_subgroup(-1, -q, n)
    m_l0 = None
    pp = PrimePower.from_order(q)
    if pp.e % 2 == 0:
        h = pp.p ** (pp.e // 2)
        m_l0 = (mult_order(h, n), mult_order(-h, n))
    return UnitGroupFacts(n, q, m, m_neg, contains, m_l0)


def check_order_lemmas(coset: CyclotomicCoset) -> list[str]:
    """Order facts behind the multiplier groups, checked for one coset.

    Returns the names of the checks that applied; raises AssertionError if
    any applicable one fails.
    """
    n, q, i = coset.n, coset.q, coset.rep
    facts = unit_group_facts(n, q)
    applied = []
    if (-i) % n not in coset:
        if facts.contains_minus_one_in_neg_q:
            assert facts.m % 2 == 1 and facts.m_neg == 2 * facts.m, facts
            applied.append("neg_q_contains_minus_one")
        else:
            assert facts.m_neg == facts.m, facts
            applied.append("neg_q_avoids_minus_one")
    if facts.m_l0 is not None:
        for l0 in (0, 1):
            if inverse_prime_half(q, n, l0) * i % n not in coset:
                assert facts.m_l0[l0] == 2 * facts.m, (facts, l0)
                applied.append(f"prime_half_l0_{l0}")
    return applied
