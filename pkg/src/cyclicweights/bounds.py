"""Closed-form orbit counts and weight-count bounds, in exact integers.

Each formula takes ``(q, n, representative, coset size, ...)`` and returns a
positive ``int``.  Every division that the algebra says is exact is checked;
a remainder raises :class:`BugTrap` instead of rounding.  Violated
hypotheses raise :class:`Inapplicable` with the failed condition spelled out.

:func:`bound_report` runs every method on a :class:`~cyclicweights.codes.CodeSpec`
and collects the results, marking the ones whose hypotheses fail.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .codes import CodeSpec
from .gf import PrimePower, is_prime
from .zn import (
    coset_of,
    divisors,
    euler_phi,
    in_cyclic_subgroup,
    inverse_prime_half,
    mult_order,
)

__all__ = [
    "METHODS",
    "MAX_COSETS",
    "BugTrap",
    "Inapplicable",
    "MethodResult",
    "BoundReport",
    "thm31_irreducible",
    "thm31_rsum",
    "rho_sigma_irreducible",
    "thm32_general",
    "thm32_subset_terms",
    "thm33_two_cosets",
    "cor33",
    "cor34",
    "thm34",
    "thm35",
    "thm36",
    "cz_published",
    "cz_corrected",
    "cz_corrected_subset_terms",
    "predicate_cor31",
    "predicate_cor32",
    "bound_report",
    "METHOD_GROUP",
    "group_for",
]

METHODS = (
    "thm31",
    "thm32",
    "thm33",
    "cor33",
    "cor34",
    "thm34",
    "thm35",
    "thm36_l0",
    "cz_published",
    "cz_corrected",
    "rho_sigma_irreducible",
)

# group whose orbit count each exact method computes (None: upper bound only)
METHOD_GROUP = {
    "thm31": "mu_q",
    "thm32": None,
    "thm33": "mu_q",
    "cor33": "mu_q",
    "cor34": "mu_q",
    "thm34": "mu_negq",
    "thm35": "mu_neg1_negq",
    "thm36_l0": "mu_pe2",  # mu_pe2_l1 when l0 = 1
    "cz_published": None,
    "cz_corrected": "rho_sigma",
    "rho_sigma_irreducible": "rho_sigma",
}

MAX_COSETS = 12


class BugTrap(ArithmeticError):
    """An exact division left a remainder: the implementation is wrong."""


class Inapplicable(ValueError):
    """A method's hypotheses do not hold for the given parameters."""


def _exact(num: int, den: int, what: str) -> int:
    if den == 0 or num % den:
        raise BugTrap(f"{what}: {num} is not divisible by {den}")
    return num // den


def _g(*xs: int) -> int:
    out = 0
    for x in xs:
        out = gcd(out, abs(x))
    return out


def _check_coset(q: int, n: int, i: int, k: int) -> None:
    if gcd(n, q) != 1:
        raise Inapplicable(f"gcd(n={n}, q={q}) != 1")
    size = coset_of(i, n, q).size
    if size != k:
        raise Inapplicable(f"coset of {i} mod {n} has size {size}, not {k}")
    _exact(i * (q**k - 1), n, "n | i(q^k - 1)")


def _irreducible_terms(q: int, n: int, i: int, k: int, r: int) -> int:
    """gcd(q^r - 1, (q^k-1)/(q-1), i(q^k-1)/n)."""
    A = _exact(q**k - 1, q - 1, "(q^k-1)/(q-1)")
    B = _exact(i * (q**k - 1), n, "i(q^k-1)/n")
    return _g(q**r - 1, A, B)


def thm31_irreducible(q: int, n: int, i: int, k: int) -> int:
    """Orbits of <mu_q, rho, sigma> on the nonzero words of an irreducible code.

    Evaluated as a totient-weighted divisor sum, then cross-checked against
    the plain sum over r = 0..m-1.
    """
    _check_coset(q, n, i, k)
    total = sum(euler_phi(k // r) * _irreducible_terms(q, n, i, k, r) for r in divisors(k))
    val = _exact(total, k, "thm31 divisor sum")
    if thm31_rsum(q, n, i, k) != val:
        raise BugTrap(f"thm31 divisor and r-sum forms disagree at {(q, n, i, k)}")
    return val


def thm31_rsum(q: int, n: int, i: int, k: int) -> int:
    m = mult_order(q, n)
    total = sum(_irreducible_terms(q, n, i, k, gcd(k, r)) for r in range(m))
    return _exact(total, m, "thm31 r-sum")


def rho_sigma_irreducible(q: int, n: int, i: int, k: int) -> int:
    """Orbits of <rho, sigma> alone: gcd((q^k-1)/(q-1), i(q^k-1)/n)."""
    _check_coset(q, n, i, k)
    return _g(_exact(q**k - 1, q - 1, "A"), _exact(i * (q**k - 1), n, "B"))


def _subsets(v: int):
    for u in range(1, v + 1):
        yield from itertools.combinations(range(v), u)


def _reps_sizes(spec: CodeSpec) -> tuple[list[int], list[int]]:
    objs = spec.coset_objects
    return [c.rep for c in objs], [c.size for c in objs]


def thm32_subset_terms(spec: CodeSpec) -> dict[tuple[int, ...], Fraction]:
    """Upper bound N_S for the words with support exactly on subset S of the cosets."""
    q, n = spec.q.q, spec.n
    reps, ks = _reps_sizes(spec)
    if len(reps) > MAX_COSETS:
        raise Inapplicable(f"{len(reps)} cosets exceed the subset limit {MAX_COSETS}")
    m = mult_order(q, n)
    I = q - 1
    out = {}
    for S in _subsets(len(reps)):
        total = 0
        for r in range(m):
            gs = [gcd(ks[j], r) for j in S]
            Is = [_exact(q ** ks[j] - 1, q**g - 1, "I_t") for j, g in zip(S, gs)]
            args = [n]
            for j, It in zip(S, Is):
                args.append(reps[j] * I * It // gcd(I, It))
            for a, b in itertools.combinations(range(len(S)), 2):
                ia, ib = reps[S[a]], reps[S[b]]
                args.append((ib - ia) * Is[a] * Is[b] // gcd(Is[a], Is[b]))
            prod = 1
            for g in gs:
                prod *= q**g - 1
            total += _g(*args) * _g(I, *Is) * prod
        out[S] = Fraction(total, m * n * (q - 1))
    return out


def thm32_general(spec: CodeSpec) -> int:
    """Sum of the per-subset bounds; the total must be an integer."""
    total = sum(thm32_subset_terms(spec).values(), Fraction(0))
    if total.denominator != 1:
        raise BugTrap(f"thm32 total {total} is not an integer for {spec}")
    return int(total)


def _s12(q: int, n: int, i1: int, k1: int, i2: int, k2: int) -> int:
    m = mult_order(q, n)
    total = 0
    for r in range(m):
        g1, g2 = gcd(k1, r), gcd(k2, r)
        a1, a2 = q**g1 - 1, q**g2 - 1
        inner = _g(
            a2,
            _exact((q**k1 - 1) * a2, (q - 1) * a1, "s12 second argument"),
            _exact(i1 * (q**k1 - 1) * a2, n * a1, "s12 third argument"),
            _exact(i2 * (q**k2 - 1), n, "s12 fourth argument"),
        )
        outer = _exact((i2 - i1) * (q**k1 - 1) * (q**k2 - 1), n * (q - 1), "s12 difference term")
        total += _g(a1 * inner, outer)
    return _exact(total, m, "s12 average")


def thm33_two_cosets(q: int, n: int, i1: int, k1: int, i2: int, k2: int) -> int:
    """Exact <mu_q, rho, sigma> orbit count of a two-coset code with k1 | k2."""
    _check_coset(q, n, i1, k1)
    _check_coset(q, n, i2, k2)
    if coset_of(i1, n, q) == coset_of(i2, n, q):
        raise Inapplicable("the two cosets coincide")
    if k2 % k1:
        raise Inapplicable(f"k1={k1} does not divide k2={k2}")
    return thm31_irreducible(q, n, i1, k1) + thm31_irreducible(q, n, i2, k2) + _s12(q, n, i1, k1, i2, k2)


def cor33(q: int, n: int, i1: int, i2: int, k: int) -> int:
    """Two-coset count when the first coset is a single point."""
    _check_coset(q, n, i1, 1)
    _check_coset(q, n, i2, k)
    if coset_of(i1, n, q) == coset_of(i2, n, q):
        raise Inapplicable("the two cosets coincide")
    total = 0
    for r in divisors(k):
        total += euler_phi(k // r) * (
            _irreducible_terms(q, n, i2, k, r) + _g(q**r - 1, _exact((i2 - i1) * (q**k - 1), n, "cor33 B"))
        )
    return 1 + _exact(total, k, "cor33 divisor sum")


def cor34(q: int, n: int, i1: int, i2: int, k: int) -> int:
    """Two-coset count when both cosets have size k."""
    _check_coset(q, n, i1, k)
    _check_coset(q, n, i2, k)
    if coset_of(i1, n, q) == coset_of(i2, n, q):
        raise Inapplicable("the two cosets coincide")
    A = _exact(q**k - 1, q - 1, "A")
    B1 = _exact(i1 * (q**k - 1), n, "B1")
    B2 = _exact(i2 * (q**k - 1), n, "B2")
    D = _exact((i2 - i1) * (q**k - 1) ** 2, n * (q - 1), "cor34 difference term")
    total = 0
    for r in divisors(k):
        a = q**r - 1
        total += euler_phi(k // r) * (_g(a, A, B1) + _g(a, A, B2) + _g(a * _g(a, A, B1, B2), D))
    return _exact(total, k, "cor34 divisor sum")


def _check_negation_pair(q: int, n: int, i: int, k: int) -> None:
    _check_coset(q, n, i, k)
    if (-i) % n in coset_of(i, n, q):
        raise Inapplicable(f"-{i} mod {n} lies in the coset of {i}")


def thm34(q: int, n: int, i: int, k: int) -> int:
    """Exact <mu_-q, rho, sigma> orbit count of the code with nonzeros Gamma u -Gamma.

    Needs -1 in <-q> mod n.
    """
    _check_negation_pair(q, n, i, k)
    if not in_cyclic_subgroup(-1, -q, n):
        raise Inapplicable(f"-1 is not in <-{q}> mod {n}")
    A = _exact(q**k - 1, q - 1, "A")
    B = _exact(i * (q**k - 1), n, "B")
    D = _exact(2 * i * (q**k - 1) ** 2, n * (q - 1), "thm34 difference term")
    total = 0
    for r in divisors(k):
        a = q**r - 1
        s = _g(a, A, B)
        total += euler_phi(k // r) * (2 * s + _g(a, 2 * A) + _g(a * s, D))
    return _exact(total, 2 * k, "thm34 divisor sum")


def thm35(q: int, n: int, i: int, k: int) -> int:
    """Exact <mu_-1, mu_-q, rho, sigma> orbit count of Gamma u -Gamma.

    Needs -1 outside <-q> mod n.
    """
    _check_negation_pair(q, n, i, k)
    if in_cyclic_subgroup(-1, -q, n):
        raise Inapplicable(f"-1 lies in <-{q}> mod {n}")
    m = mult_order(q, n)
    A = _exact(q**k - 1, q - 1, "A")
    B = _exact(i * (q**k - 1), n, "B")
    D = _exact(2 * i * (q**k - 1) ** 2, n * (q - 1), "thm35 difference term")
    total = 0
    for r in range(m):
        a = q ** gcd(k, r) - 1
        s = _g(a, A, B)
        mid = _g(q ** gcd(k, 2 * r) - 1, 2 * A, _exact(i * (q**r - 1) * (q**k - 1), n, "thm35 middle term"))
        total += 2 * s + mid + _g(a * s, D)
    return _exact(total, 2 * m, "thm35 r-sum")


def thm36(q: int, n: int, i: int, k: int, l0: int) -> int:
    """Exact <mu_a, rho, sigma> orbit count with a = (-1)^l0 p^(e/2), e even.

    The code has nonzeros Gamma u a'Gamma where a' = a^-1 mod n, taken as a
    residue in 0..n-1; gcd arguments use absolute values.
    """
    pp = PrimePower.from_order(q)
    if pp.e % 2:
        raise Inapplicable(f"q={q} is an odd power of {pp.p}")
    if l0 not in (0, 1):
        raise Inapplicable("l0 must be 0 or 1")
    _check_coset(q, n, i, k)
    a_inv = inverse_prime_half(q, n, l0)
    if a_inv * i % n in coset_of(i, n, q):
        raise Inapplicable(f"{a_inv}*{i} mod {n} lies in the coset of {i}")
    m = mult_order(q, n)
    A = _exact(q**k - 1, q - 1, "A")
    B = _exact(i * (q**k - 1), n, "B")
    D = _exact((a_inv - 1) * i * (q**k - 1) ** 2, n * (q - 1), "thm36 difference term")
    total = 0
    for r in range(m):
        a = q ** gcd(k, r) - 1
        s = _g(a, A, B)
        mid = _g(q ** gcd(k, 2 * r + 1) - 1, 2 * A, _exact((a_inv + q**r) * i * (q**k - 1), n, "thm36 middle term"))
        total += 2 * s + mid + _g(a * s, D)
    return _exact(total, 2 * m, "thm36 r-sum")


def cz_published(spec: CodeSpec) -> int:
    """The earlier per-subset <rho, sigma> formula, which is only an upper bound."""
    q, n = spec.q.q, spec.n
    reps, ks = _reps_sizes(spec)
    if len(reps) > MAX_COSETS:
        raise Inapplicable(f"{len(reps)} cosets exceed the subset limit {MAX_COSETS}")
    total = 0
    for S in _subsets(len(reps)):
        prod = 1
        for j in S:
            prod *= q ** ks[j] - 1
        term = Fraction(_g(n, *(reps[j] for j in S)) * prod, n * (q - 1))
        term *= _g(q - 1, *(n // gcd(n, reps[j]) for j in S))
        if term.denominator != 1:
            raise Inapplicable(f"subset {[reps[j] for j in S]} gives the non-integer term {term}")
        total += int(term)
    return total


def cz_corrected_subset_terms(spec: CodeSpec) -> dict[tuple[int, ...], int]:
    q, n = spec.q.q, spec.n
    reps, ks = _reps_sizes(spec)
    if len(reps) > MAX_COSETS:
        raise Inapplicable(f"{len(reps)} cosets exceed the subset limit {MAX_COSETS}")
    out = {}
    for S in _subsets(len(reps)):
        args = [n] + [reps[j] * (q - 1) for j in S]
        args += [reps[b] - reps[a] for a, b in itertools.combinations(S, 2)]
        prod = 1
        for j in S:
            prod *= q ** ks[j] - 1
        out[S] = _exact(_g(*args) * prod, n * (q - 1), "cz_corrected subset term")
    return out


def cz_corrected(spec: CodeSpec) -> int:
    """Exact <rho, sigma> orbit count of any code."""
    return sum(cz_corrected_subset_terms(spec).values())


# -- few-weight predicates -----------------------------------------------------


def predicate_cor31(q: int, n: int, i: int) -> tuple[bool, int | None]:
    """Sufficient condition for an irreducible code to have at most two weights.

    Returns ``(holds, N)`` with ``N = (q^2-1)/(3n)`` when it holds.
    """
    try:
        pp = PrimePower.from_order(q)
    except ValueError:
        return False, None
    if pp.p != 2 or pp.e <= 1 or gcd(q - 1, 3) != 1 or (q + 1) % 3:
        return False, None
    if (q * q - 1) % (3 * n):
        return False, None
    N = (q * q - 1) // (3 * n)
    if (q - 1) % N or gcd(i, (q + 1) // 3) != 1:
        return False, None
    return True, N


def predicate_cor32(q: int, n: int, i: int) -> tuple[bool, tuple[int, int] | None]:
    """Sufficient condition for an irreducible code to have at most three weights.

    Searches the odd primes k with 2k+1 prime; returns ``(holds, (k, N))``.
    """
    k = 3
    while q**k - 1 <= (2 * k + 1) * n * (q - 1):
        if is_prime(k) and is_prime(2 * k + 1) and (q, k) != (2, 3):
            p2 = 2 * k + 1
            if gcd(q - 1, k) == 1 and gcd(q - 1, p2) == 1 and pow(q, k, p2) == 1:
                if (q**k - 1) % (p2 * n) == 0:
                    N = (q**k - 1) // (p2 * n)
                    if (q - 1) % N == 0 and gcd(i, (q**k - 1) // (p2 * (q - 1))) == 1:
                        return True, (k, N)
        k += 2
    return False, None


# -- reports -------------------------------------------------------------------


@dataclass(frozen=True)
class MethodResult:
    value: int | None
    applicable: bool
    reason: str | None = None
    params: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"applicable": self.applicable, "value": self.value}
        if self.reason is not None:
            out["reason"] = self.reason
        if self.params:
            out["params"] = self.params
        return out


@dataclass(frozen=True)
class BoundReport:
    spec: CodeSpec
    entries: dict[str, MethodResult]

    def value(self, method: str) -> int | None:
        return self.entries[method].value

    def applicable(self) -> dict[str, int]:
        return {k: r.value for k, r in self.entries.items() if r.applicable}

    @property
    def best(self) -> tuple[str, int]:
        """Smallest applicable value; ties go to the earlier method in :data:`METHODS`."""
        app = self.applicable()
        if not app:
            raise Inapplicable(f"no method applies to {self.spec}")
        name = min(app, key=lambda k: (app[k], METHODS.index(k)))
        return name, app[name]

    def strongest_group(self) -> str:
        """Group name of the smallest exact orbit count among the applicable methods."""
        best = None
        for name in ("thm35", "thm34", "thm36_l0", "thm33", "cor33", "cor34", "thm31", "cz_corrected"):
            r = self.entries.get(name)
            if r is None or not r.applicable:
                continue
            if best is None or r.value < best[1]:
                best = (name, r.value)
        if best is None:
            return "mu_q"
        return group_for(best[0], self.entries[best[0]])

    def to_json(self) -> dict:
        name, val = self.best
        return {
            "spec": self.spec.to_json(),
            "methods": {k: self.entries[k].to_json() for k in METHODS},
            "best": {"method": name, "value": val},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def group_for(method: str, result: MethodResult) -> str:
    if method == "thm36_l0":
        return "mu_pe2_l1" if result.params.get("l0") == 1 else "mu_pe2"
    return METHOD_GROUP[method] or "mu_q"


def _run(fn, *args, **params) -> MethodResult:
    try:
        return MethodResult(fn(*args), True, None, params)
    except Inapplicable as exc:
        return MethodResult(None, False, str(exc))


def _na(reason: str) -> MethodResult:
    return MethodResult(None, False, reason)


def bound_report(spec: CodeSpec) -> BoundReport:
    q, n = spec.q.q, spec.n
    reps, ks = _reps_sizes(spec)
    v = len(reps)
    e: dict[str, MethodResult] = {}

    if v == 1:
        e["thm31"] = _run(thm31_irreducible, q, n, reps[0], ks[0])
        e["rho_sigma_irreducible"] = _run(rho_sigma_irreducible, q, n, reps[0], ks[0])
    else:
        e["thm31"] = e["rho_sigma_irreducible"] = _na("needs exactly one coset")

    e["thm32"] = _run(thm32_general, spec)

    if v == 2:
        (i1, i2), (k1, k2) = reps, ks
        if k2 % k1 == 0:
            e["thm33"] = _run(thm33_two_cosets, q, n, i1, k1, i2, k2, i1=i1, i2=i2)
        elif k1 % k2 == 0:
            e["thm33"] = _run(thm33_two_cosets, q, n, i2, k2, i1, k1, i1=i2, i2=i1)
        else:
            e["thm33"] = _na(f"neither coset size divides the other ({k1}, {k2})")
        if k1 == 1:
            e["cor33"] = _run(cor33, q, n, i1, i2, k2, i1=i1, i2=i2)
        elif k2 == 1:
            e["cor33"] = _run(cor33, q, n, i2, i1, k1, i1=i2, i2=i1)
        else:
            e["cor33"] = _na("neither coset has size 1")
        e["cor34"] = _run(cor34, q, n, i1, i2, k1) if k1 == k2 else _na(f"coset sizes differ ({k1}, {k2})")

        if coset_of(-i1, n, q).rep == i2:
            e["thm34"] = _run(thm34, q, n, i1, k1, i_t=i1)
            e["thm35"] = _run(thm35, q, n, i1, k1, i_t=i1)
        else:
            reason = f"the cosets of {i1} and {i2} are not negatives of each other"
            e["thm34"] = e["thm35"] = _na(reason)

        e["thm36_l0"] = _thm36_entry(q, n, reps, ks)
    else:
        for name in ("thm33", "cor33", "cor34", "thm34", "thm35", "thm36_l0"):
            e[name] = _na("needs exactly two cosets")

    e["cz_published"] = _run(cz_published, spec)
    e["cz_corrected"] = _run(cz_corrected, spec)
    return BoundReport(spec, {k: e[k] for k in METHODS})


def _thm36_entry(q: int, n: int, reps, ks) -> MethodResult:
    pp = PrimePower.from_order(q)
    if pp.e % 2:
        return _na(f"q={q} is an odd power of {pp.p}")
    for a, b in ((0, 1), (1, 0)):
        for l0 in (0, 1):
            a_inv = inverse_prime_half(q, n, l0)
            if coset_of(a_inv * reps[a], n, q).rep == reps[b]:
                return _run(thm36, q, n, reps[a], ks[a], l0, i_t=reps[a], l0=l0)
    return _na(f"neither coset is the image of the other under mu_(+-{pp.p}^{pp.e // 2})")
