"""Finite fields GF(p^N) backed by full log/antilog/Zech tables.

Elements are plain integers ``0 .. p^N - 1``.  The base-``p`` digits of an
element are its coefficients in the polynomial basis ``1, x, ..., x^(N-1)``
modulo the defining irreducible polynomial, so ``0`` is the additive zero and
``1`` the multiplicative one.  Multiplication goes through the log tables and
addition through the Zech table, which keeps both O(1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

__all__ = [
    "TABLE_CAP",
    "FieldError",
    "PrimePower",
    "FieldTable",
    "SubfieldEmbedding",
    "is_prime",
    "factorize",
    "find_irreducible",
    "build_field",
    "nth_root_of_unity",
    "subfield_embed",
    "poly_trim",
    "poly_mul",
    "poly_divmod",
    "poly_eval",
]

TABLE_CAP = 1 << 24


class FieldError(ValueError):
    """Raised for invalid field parameters or incompatible field operations."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class PrimePower:
    p: int
    e: int = 1

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError(f"{self.p} is not prime")
        if self.e < 1:
            raise FieldError(f"exponent must be positive, got {self.e}")

    @property
    def q(self) -> int:
        return self.p**self.e

    @classmethod
    def from_order(cls, q: int) -> PrimePower:
        """Split ``q`` into ``p^e``; raises if ``q`` is not a prime power."""
        if q < 2:
            raise FieldError(f"field order must be >= 2, got {q}")
        f = factorize(q)
        if len(f) != 1:
            raise FieldError(f"{q} is not a prime power")
        ((p, e),) = f.items()
        return cls(p, e)


# -- polynomials over GF(p), coefficient lists lowest degree first ----------


def _pp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pp_mod(a: list[int], f: list[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``f`` over GF(p)."""
    a = _pp_trim([c % p for c in a])
    df = len(f) - 1
    while len(a) - 1 >= df:
        c = a[-1]
        shift = len(a) - 1 - df
        for j in range(df + 1):
            a[shift + j] = (a[shift + j] - c * f[j]) % p
        _pp_trim(a)
    return a


def _pp_mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pp_mod(out, f, p)


def _pp_powmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _pp_mod(a, f, p)
    while e:
        if e & 1:
            result = _pp_mulmod(result, base, f, p)
        base = _pp_mulmod(base, base, f, p)
        e >>= 1
    return result


def _pp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _pp_trim([c % p for c in a])
    b = _pp_trim([c % p for c in b])
    while b:
        inv = pow(b[-1], p - 2, p)
        monic = [(c * inv) % p for c in b]
        a, b = b, _pp_mod(a, monic, p)
    return a


def _pp_is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's test for a monic ``f`` over GF(p)."""
    d = len(f) - 1
    if d == 1:
        return True
    x = [0, 1]
    if _pp_trim([c % p for c in _sub(_pp_powmod(x, p**d, f, p), x)]):
        return False
    for r in factorize(d):
        h = _sub(_pp_powmod(x, p ** (d // r), f, p), x)
        g = _pp_gcd(f, h, p)
        if len(g) > 1:
            return False
    return True


def _sub(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


def find_irreducible(pp: PrimePower | int, degree: int) -> tuple[int, ...]:
    """Smallest monic irreducible polynomial of ``degree`` over GF(p).

    Candidates are ranked by the integer ``sum(c_j * p**j)`` of their
    non-leading coefficients, so ``x^3 + x + 1`` beats ``x^3 + x^2 + 1``.
    Returns the coefficient tuple, lowest degree first, leading 1 included.
    """
    p = pp.p if isinstance(pp, PrimePower) else pp
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if degree < 1:
        raise FieldError("degree must be >= 1")
    for low in itertools.product(range(p), repeat=degree):
        f = list(reversed(low)) + [1]
        if _pp_is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


# -- the field table ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FieldTable:
    """GF(p^degree) with a distinguished primitive element ``theta``.

    ``exp`` has length ``2*(order-1)`` so that ``exp[log a + log b]`` needs no
    reduction.  ``log[0]`` is ``-1``.  ``zech[i]`` is ``log(1 + theta^i)`` or
    ``-1`` when that sum is zero.
    """

    p: int
    degree: int
    modulus: tuple[int, ...]
    theta: int
    exp: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)
    zech: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return self.p**self.degree

    @property
    def char(self) -> int:
        return self.p

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.degree})"

    # scalar arithmetic
    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[self.log[a] + self.log[b]])

    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        la = int(self.log[a])
        z = int(self.zech[(int(self.log[b]) - la) % (self.order - 1)])
        if z < 0:
            return 0
        return int(self.exp[la + z])

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        return self.mul(a, self.minus_one)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self.exp[(self.order - 1 - self.log[a]) % (self.order - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if k == 0 else 0
        return int(self.exp[(int(self.log[a]) * k) % (self.order - 1)])

    def theta_pow(self, k: int) -> int:
        return int(self.exp[k % (self.order - 1)])

    def element_order(self, a: int) -> int:
        if a == 0:
            raise FieldError("0 has no multiplicative order")
        from math import gcd

        return (self.order - 1) // gcd(int(self.log[a]), self.order - 1)

    @cached_property
    def minus_one(self) -> int:
        return 1 if self.p == 2 else self.theta_pow((self.order - 1) // 2)

    def from_int(self, c: int) -> int:
        """Image of the integer ``c`` under Z -> GF(p)."""
        return c % self.p

    def add_digits(self, a: int, b: int) -> int:
        """Digit-wise addition; independent of the Zech table."""
        if self.p == 2:
            return a ^ b
        out, scale = 0, 1
        while a or b:
            out += ((a % self.p + b % self.p) % self.p) * scale
            a //= self.p
            b //= self.p
            scale *= self.p
        return out

    # vectorised arithmetic on integer arrays
    def mul_array(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def add_array(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        scale = 1
        for _ in range(self.degree):
            out += ((a // scale + b // scale) % self.p) * scale
            scale *= self.p
        return out

    @cached_property
    def mul_table(self) -> np.ndarray:
        """Full ``order x order`` multiplication table (small fields only)."""
        if self.order > 1 << 12:
            raise FieldError("multiplication table only built for order <= 4096")
        r = np.arange(self.order)
        return self.mul_array(r[:, None], r[None, :]).astype(np.int64)

    def elements(self) -> range:
        return range(self.order)


def _primitive_search(p: int, f: list[int], N: int) -> list[int]:
    """Digits of the smallest element (by integer encoding) of order p^N - 1."""
    Q = p**N
    if Q == 2:
        return [1]
    primes = list(factorize(Q - 1))
    for c in range(2, Q):
        digits = _int_to_digits(c, p, N)
        if all(_pp_trim(_pp_powmod(digits, (Q - 1) // r, f, p)) != [1] for r in primes):
            return digits
    raise AssertionError("a primitive element always exists")


def _int_to_digits(c: int, p: int, N: int) -> list[int]:
    return [(c // p**j) % p for j in range(N)]


def _digits_to_int(d: list[int], p: int) -> int:
    out = 0
    for c in reversed(d):
        out = out * p + c
    return out


def _times_element(p: int, f: list[int], t: list[int]) -> list[int]:
    """The map ``a -> t*a`` on every element of GF(p)[x]/(f), as a lookup list."""
    N = len(f) - 1
    Q = p**N
    a = np.arange(Q, dtype=np.int64)
    digits = [(a // p**j) % p for j in range(N)]
    acc = [np.zeros(Q, dtype=np.int64) for _ in range(N)]
    for tj in t:
        if tj:
            for j in range(N):
                acc[j] = (acc[j] + tj * digits[j]) % p
        # digits <- digits * x mod f
        top = digits[-1]
        digits = [(-top * f[0]) % p] + [(digits[j - 1] - top * f[j]) % p for j in range(1, N)]
    out = np.zeros(Q, dtype=np.int64)
    for j in range(N):
        out += acc[j] * p**j
    return out.tolist()


def build_field(pp: PrimePower, m: int = 1) -> FieldTable:
    """Build GF(p^(e*m)) directly over GF(p).

    Deterministic: the modulus comes from :func:`find_irreducible` and theta is
    the smallest-encoded primitive element.
    """
    if m < 1:
        raise FieldError("extension degree must be >= 1")
    p, N = pp.p, pp.e * m
    Q = p**N
    if Q > TABLE_CAP:
        raise FieldError(f"GF({p}^{N}) has {Q} elements, above the table cap {TABLE_CAP}")
    f = list(find_irreducible(p, N))
    theta_digits = _primitive_search(p, f, N)
    theta = _digits_to_int(theta_digits, p)

    exp = np.empty(2 * (Q - 1), dtype=np.int64)
    log = np.full(Q, -1, dtype=np.int64)
    times_theta = _times_element(p, f, theta_digits)
    cur = 1
    for i in range(Q - 1):
        exp[i] = cur
        cur = times_theta[cur]
    exp[Q - 1 :] = exp[: Q - 1]
    log[exp[: Q - 1]] = np.arange(Q - 1)
    if len(np.unique(exp[: Q - 1])) != Q - 1:
        raise AssertionError("theta is not primitive")

    # zech[i] = log(1 + theta^i)
    tmp = FieldTable(p, N, tuple(f), theta, exp, log, np.zeros(0, dtype=np.int64))
    one_plus = tmp.add_array(np.ones(Q - 1, dtype=np.int64), exp[: Q - 1])
    zech = log[one_plus]
    table = FieldTable(p, N, tuple(f), theta, exp, log, zech)
    for arr in (exp, log, zech):
        arr.setflags(write=False)
    return table


def nth_root_of_unity(F: FieldTable, n: int) -> int:
    """``theta^((|F|-1)/n)``, a primitive ``n``-th root of unity."""
    if n < 1 or (F.order - 1) % n:
        raise FieldError(f"{n} does not divide |F*| = {F.order - 1}")
    return F.theta_pow((F.order - 1) // n)


@dataclass(frozen=True, eq=False)
class SubfieldEmbedding:
    """An injective field homomorphism ``small -> big``.

    ``image[a]`` is the element of ``big`` that the ``small`` element ``a``
    maps to; ``preimage`` inverts it.
    """

    small: FieldTable
    big: FieldTable
    image: np.ndarray = field(repr=False)
    preimage: dict[int, int] = field(repr=False)

    def to_small(self, b: int) -> int:
        try:
            return self.preimage[b]
        except KeyError:
            raise FieldError(f"element {b} of {self.big} is not in the subfield") from None

    def to_big(self, a: int) -> int:
        return int(self.image[a])

    def __contains__(self, b: int) -> bool:
        return b in self.preimage


def subfield_embed(F_big: FieldTable, q_sub: int) -> SubfieldEmbedding:
    """Embed the standalone GF(q_sub) into ``F_big``.

    The image of the small field's polynomial-basis generator is the smallest
    root (zero first, then by log) of the small modulus inside ``{0} u <theta^((|F|-1)/(q_sub-1))>``,
    and the rest follows by linearity, so encodings of GF(q_sub) agree
    across every big field it is embedded in.
    """
    pp = PrimePower.from_order(q_sub)
    if pp.p != F_big.p or F_big.degree % pp.e:
        raise FieldError(f"GF({q_sub}) is not a subfield of {F_big!r}")
    small = build_field(pp, 1)
    step = (F_big.order - 1) // (q_sub - 1)
    members = [0] + [F_big.theta_pow(step * j) for j in range(q_sub - 1)]

    f = small.modulus
    x_img = None
    for y in members:
        acc, power = 0, 1
        for c in f:
            acc = F_big.add(acc, F_big.mul(F_big.from_int(c), power))
            power = F_big.mul(power, y)
        if acc == 0:
            x_img = y
            break
    if x_img is None:
        raise AssertionError("small modulus must split in the big field")

    basis = [F_big.pow(x_img, j) for j in range(pp.e)]
    image = np.empty(q_sub, dtype=np.int64)
    for a in range(q_sub):
        acc = 0
        for j, d in enumerate(_int_to_digits(a, pp.p, pp.e)):
            acc = F_big.add(acc, F_big.mul(F_big.from_int(d), basis[j]))
        image[a] = acc
    preimage = {int(b): a for a, b in enumerate(image)}
    if len(preimage) != q_sub or set(preimage) != set(members):
        raise AssertionError("embedding is not a bijection onto the subfield")
    image.setflags(write=False)
    return SubfieldEmbedding(small, F_big, image, preimage)


# -- polynomials over a FieldTable (coefficient lists, lowest degree first) ---


def poly_trim(a: list[int]) -> list[int]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mul(F: FieldTable, a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return poly_trim(out)


def poly_divmod(F: FieldTable, a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = poly_trim(a)
    db = len(b) - 1
    inv_lead = F.inv(b[-1])
    quot = [0] * max(len(r) - db, 0)
    while len(r) - 1 >= db and r:
        c = F.mul(r[-1], inv_lead)
        shift = len(r) - 1 - db
        quot[shift] = c
        for j in range(db + 1):
            r[shift + j] = F.sub(r[shift + j], F.mul(c, b[j]))
        r = poly_trim(r)
    return poly_trim(quot), r


def poly_eval(F: FieldTable, a: list[int], x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc
