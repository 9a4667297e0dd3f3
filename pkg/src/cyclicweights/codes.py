"""Cyclic codes as sums of minimal ideals, and exhaustive weight enumeration.

A code is named by a set of cyclotomic cosets: the cosets are its nonzeros,
so the check polynomial is the product of the minimal polynomials of
``zeta^i`` over the chosen representatives and ``g = (x^n - 1)/h``.

Codewords are indexed by their last ``k`` coordinates (an information set of
the systematic generator matrix): word ``c`` has index
``sum(c[n - k + i] * q**i)``.  All enumeration helpers respect this indexing,
which is what lets the orbit code turn a coordinate action into a
permutation of indices.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import gcd, lcm

import numpy as np

from .gf import (
    FieldTable,
    PrimePower,
    SubfieldEmbedding,
    build_field,
    poly_divmod,
    poly_mul,
    poly_trim,
    subfield_embed,
)
from .zn import CyclotomicCoset, coset_of

__all__ = [
    "WEIGHT_CAP",
    "CodeError",
    "CapExceeded",
    "CodeSpec",
    "CyclicCode",
    "WeightDistribution",
    "enumeration_cap",
    "make_spec",
    "build_code",
    "primitive_idempotent",
    "all_codewords",
    "gfp_basis",
    "encode",
    "contains_words",
    "codeword_index",
    "weight_distribution",
    "num_nonzero_weights",
]

WEIGHT_CAP = 1 << 26


class CodeError(ValueError):
    pass


class CapExceeded(CodeError):
    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what} needs {size} codewords, above the cap {cap} (set CWB_CAP to override)")
        self.size = size
        self.cap = cap


def enumeration_cap(default: int) -> int:
    """``default`` unless the CWB_CAP environment variable overrides it."""
    env = os.environ.get("CWB_CAP")
    if env:
        try:
            return int(env)
        except ValueError:
            raise CodeError(f"CWB_CAP must be an integer, got {env!r}") from None
    return default


@dataclass(frozen=True)
class CodeSpec:
    q: PrimePower
    n: int
    cosets: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise CodeError("n must be >= 1")
        if gcd(self.n, self.q.q) != 1:
            raise CodeError(f"gcd(n={self.n}, q={self.q.q}) != 1: repeated-root codes are not supported")
        if not self.cosets:
            raise CodeError("a code needs at least one coset")
        if len(set(self.cosets)) != len(self.cosets):
            raise CodeError(f"duplicate cosets in {self.cosets}")
        for r in self.cosets:
            if not 0 <= r < self.n or coset_of(r, self.n, self.q.q).rep != r:
                raise CodeError(f"{r} is not the smallest element of its coset mod {self.n}")
        if list(self.cosets) != sorted(self.cosets):
            object.__setattr__(self, "cosets", tuple(sorted(self.cosets)))

    @property
    def coset_objects(self) -> list[CyclotomicCoset]:
        return [coset_of(r, self.n, self.q.q) for r in self.cosets]

    @property
    def dimension(self) -> int:
        return sum(c.size for c in self.coset_objects)

    def to_json(self) -> dict:
        return {"q": self.q.q, "n": self.n, "cosets": list(self.cosets)}

    def __str__(self) -> str:
        return f"q={self.q.q} n={self.n} cosets={{{','.join(map(str, self.cosets))}}}"


def make_spec(q: int | PrimePower, n: int, reps) -> CodeSpec:
    """Spec from any coset members; each is replaced by its coset's minimum.

    Two members of the same coset are rejected as duplicates.
    """
    pp = q if isinstance(q, PrimePower) else PrimePower.from_order(q)
    if gcd(n, pp.q) != 1:
        raise CodeError(f"gcd(n={n}, q={pp.q}) != 1: repeated-root codes are not supported")
    mins = [coset_of(int(r), n, pp.q).rep for r in reps]
    if len(set(mins)) != len(mins):
        raise CodeError(f"duplicate cosets in {list(reps)}")
    return CodeSpec(pp, n, tuple(sorted(mins)))


@lru_cache(maxsize=32)
def _field(p: int, degree: int) -> FieldTable:
    return build_field(PrimePower(p), degree)


@lru_cache(maxsize=64)
def _embedding(p: int, degree: int, q: int) -> SubfieldEmbedding:
    return subfield_embed(_field(p, degree), q)


@dataclass(frozen=True, eq=False)
class CyclicCode:
    spec: CodeSpec
    big: FieldTable  # GF(q^L) containing every zeta^i the code needs
    embedding: SubfieldEmbedding
    eta: int  # primitive root of unity in big of order n_eff
    n_eff: int
    generator_poly: tuple[int, ...]
    check_poly: tuple[int, ...]
    generator_matrix: np.ndarray = field(repr=False)
    systematic_matrix: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def q(self) -> int:
        return self.spec.q.q

    @property
    def k(self) -> int:
        return self.systematic_matrix.shape[0]

    @property
    def size(self) -> int:
        return self.q**self.k

    @property
    def small(self) -> FieldTable:
        return self.embedding.small

    @property
    def xi(self) -> int:
        """Distinguished generator of GF(q)^*."""
        return self.small.theta

    def zeta_pow(self, i: int) -> int:
        """zeta^i in ``big``, for exponents i the construction field supports."""
        i %= self.n
        step = self.n // self.n_eff
        if i % step:
            raise CodeError(f"zeta^{i} does not lie in {self.big!r}")
        return self.big.pow(self.eta, i // step)

    def contains(self, word) -> bool:
        """Membership via the remainder modulo g(x)."""
        w = poly_trim([int(c) for c in word])
        if len(word) != self.n:
            raise CodeError(f"word has length {len(word)}, expected {self.n}")
        _, r = poly_divmod(self.small, w, list(self.generator_poly))
        return not r

    @cached_property
    def add_table(self) -> np.ndarray:
        return _add_table(self.small)


def _add_table(F: FieldTable) -> np.ndarray:
    r = np.arange(F.order)
    return F.add_array(r[:, None], r[None, :]).astype(_symbol_dtype(F.order))


def _symbol_dtype(q: int):
    return np.uint8 if q <= 256 else np.uint16


def _minimal_poly(code_big: FieldTable, emb: SubfieldEmbedding, zeta_pow, coset: CyclotomicCoset) -> list[int]:
    F = code_big
    poly = [1]
    for j in coset.elements:
        poly = poly_mul(F, poly, [F.neg(zeta_pow(j)), 1])
    out = []
    for c in poly:
        if c not in emb:
            raise AssertionError(f"minimal polynomial coefficient {c} is not in GF({emb.small.order})")
        out.append(emb.to_small(c))
    return out


def build_code(spec: CodeSpec) -> CyclicCode:
    q, n, p = spec.q.q, spec.n, spec.q.p
    cosets = spec.coset_objects
    L = lcm(*(c.size for c in cosets))
    big = _field(p, spec.q.e * L)
    emb = _embedding(p, spec.q.e * L, q)
    small = emb.small
    n_eff = gcd(n, big.order - 1)
    eta = big.theta_pow((big.order - 1) // n_eff)

    step = n // n_eff

    def zeta_pow(i: int) -> int:
        i %= n
        assert i % step == 0, (i, n, n_eff)
        return big.pow(eta, i // step)

    h = [1]
    for c in cosets:
        h = poly_mul(small, h, _minimal_poly(big, emb, zeta_pow, c))
    xn1 = [small.neg(1)] + [0] * (n - 1) + [1]
    g, rem = poly_divmod(small, xn1, h)
    if rem:
        raise AssertionError("check polynomial does not divide x^n - 1")
    k = len(h) - 1
    if k != spec.dimension or len(g) - 1 != n - k:
        raise AssertionError("dimension mismatch")

    dtype = _symbol_dtype(q)
    G = np.zeros((k, n), dtype=dtype)
    for i in range(k):
        G[i, i : i + len(g)] = g
    # systematic rows: x^(n-k+i) - (x^(n-k+i) mod g)
    S = np.zeros((k, n), dtype=dtype)
    for i in range(k):
        mono = [0] * (n - k + i) + [1]
        _, r = poly_divmod(small, mono, g)
        for j, c in enumerate(r):
            S[i, j] = small.neg(c)
        S[i, n - k + i] = 1
    for a in (G, S):
        a.setflags(write=False)
    return CyclicCode(spec, big, emb, eta, n_eff, tuple(g), tuple(h), G, S)


def primitive_idempotent(n: int, q: int, coset: CyclotomicCoset | int, F: FieldTable | None = None) -> list[int]:
    """The idempotent generating the minimal ideal with nonzeros ``coset``.

    Coefficient j is (1/n) * sum over i in the coset of zeta^(-ij), mapped to
    GF(q).  ``F`` may be passed to pin the construction field; by default the
    smallest field holding the coset's roots is used.
    """
    if isinstance(coset, int):
        coset = coset_of(coset, n, q)
    pp = PrimePower.from_order(q)
    if F is None:
        F = _field(pp.p, pp.e * coset.size)
    # tables are deterministic, so the cached embedding matches any F of this size
    emb = _embedding(pp.p, F.degree, q)
    n_eff = gcd(n, F.order - 1)
    step = n // n_eff
    eta = F.theta_pow((F.order - 1) // n_eff)
    inv_n = F.inv(F.from_int(n))
    out = []
    for j in range(n):
        acc = 0
        for i in coset.elements:
            e = (-i * j) % n
            if e % step:
                raise CodeError(f"{F!r} does not contain the roots of coset {coset}")
            acc = F.add(acc, F.pow(eta, e // step))
        c = F.mul(inv_n, acc)
        if c not in emb:
            raise AssertionError(f"idempotent coefficient {c} is not in GF({q})")
        out.append(emb.to_small(c))
    return out


# -- enumeration ---------------------------------------------------------------


def gfp_basis(code: CyclicCode) -> np.ndarray:
    """GF(p)-basis of the code: beta_j * row_i at position i*e + j."""
    e, p = code.spec.q.e, code.spec.q.p
    small = code.small
    out = np.zeros((code.k * e, code.n), dtype=np.int64)
    for i in range(code.k):
        row = code.systematic_matrix[i].astype(np.int64)
        for j in range(e):
            out[i * e + j] = small.mul_array(row, np.full(code.n, p**j))
    return out


def _span(basis: np.ndarray, add: np.ndarray, mul: np.ndarray, p: int, dtype) -> np.ndarray:
    """All GF(p)-combinations of ``basis``; row index = base-p digits of the coefficients."""
    n = basis.shape[1]
    words = np.zeros((1, n), dtype=dtype)
    for v in basis:
        parts = [words]
        for d in range(1, p):
            dv = mul[d][v].astype(dtype)
            # in characteristic 2 symbol addition is XOR of the encodings
            parts.append(words ^ dv if p == 2 else add[words, dv[None, :]])
        words = np.concatenate(parts)
    return words


def all_codewords(code: CyclicCode, cap: int | None = None) -> np.ndarray:
    """Every codeword, as a ``(q^k, n)`` array ordered by codeword index."""
    cap = enumeration_cap(WEIGHT_CAP) if cap is None else cap
    if code.size > cap:
        raise CapExceeded("codeword enumeration", code.size, cap)
    return _span(gfp_basis(code), code.add_table, code.small.mul_table, code.spec.q.p, _symbol_dtype(code.q))


def encode(code: CyclicCode, messages) -> np.ndarray:
    """Codewords with the given information symbols (one message per row)."""
    msg = np.atleast_2d(np.asarray(messages, dtype=np.int64))
    if msg.shape[1] != code.k:
        raise CodeError(f"messages need {code.k} symbols, got {msg.shape[1]}")
    mul = code.small.mul_table
    add = code.add_table
    S = code.systematic_matrix.astype(np.int64)
    out = np.zeros((len(msg), code.n), dtype=_symbol_dtype(code.q))
    for i in range(code.k):
        term = mul[msg[:, i][:, None], S[i][None, :]].astype(out.dtype)
        out = out ^ term if code.spec.q.p == 2 else add[out, term]
    return out


def contains_words(code: CyclicCode, words) -> np.ndarray:
    """Membership of each row of ``words``: a codeword equals the re-encoding of its information set."""
    words = np.atleast_2d(np.asarray(words))
    if words.shape[1] != code.n:
        raise CodeError(f"words have length {words.shape[1]}, expected {code.n}")
    return np.all(encode(code, words[:, code.n - code.k :]) == words, axis=1)


def codeword_index(code: CyclicCode, words: np.ndarray) -> np.ndarray:
    """Index of each word (rows of ``words``), read off the information set."""
    words = np.atleast_2d(words)
    info = words[:, code.n - code.k :].astype(np.int64)
    weights = code.q ** np.arange(code.k, dtype=np.int64)
    return info @ weights


@dataclass(frozen=True)
class WeightDistribution:
    n: int
    counts: tuple[tuple[int, int], ...]  # sorted (weight, count) pairs with count > 0

    @classmethod
    def from_histogram(cls, hist) -> WeightDistribution:
        hist = [int(x) for x in hist]
        return cls(len(hist) - 1, tuple((w, c) for w, c in enumerate(hist) if c))

    @classmethod
    def from_dict(cls, n: int, d: dict) -> WeightDistribution:
        return cls(n, tuple(sorted((int(w), int(c)) for w, c in d.items() if int(c))))

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    @property
    def total(self) -> int:
        return sum(c for _, c in self.counts)

    @property
    def nonzero_weights(self) -> list[int]:
        return [w for w, _ in self.counts if w > 0]

    @property
    def min_distance(self) -> int | None:
        nz = self.nonzero_weights
        return nz[0] if nz else None

    def to_json(self) -> dict:
        return {"weights": {str(w): c for w, c in self.counts}}

    def to_csv(self) -> str:
        return "weight,count\n" + "".join(f"{w},{c}\n" for w, c in self.counts)

    def polynomial(self) -> str:
        terms = []
        for w, c in self.counts:
            if w == 0:
                terms.append(str(c))
            else:
                xs = "x" if w == 1 else f"x^{w}"
                terms.append(xs if c == 1 else f"{c}{xs}")
        return "+".join(terms)

    def __str__(self) -> str:
        return self.polynomial()


def weight_distribution(code: CyclicCode, threads: int = 1, cap: int | None = None) -> WeightDistribution:
    """Exact weight distribution by enumerating every codeword.

    The GF(p)-basis is split into a low half, whose span is tabulated once,
    and a high half; each high combination is added to the whole low table.
    Work items are high-half index ranges, so the histogram does not depend
    on ``threads``.
    """
    cap = enumeration_cap(WEIGHT_CAP) if cap is None else cap
    if code.size > cap:
        raise CapExceeded("weight enumeration", code.size, cap)
    p = code.spec.q.p
    basis = gfp_basis(code)
    add = code.add_table
    mul = code.small.mul_table
    dtype = _symbol_dtype(code.q)
    n_low = min(len(basis), 16 if p == 2 else max(1, int(16 / np.log2(p))))
    low = _span(basis[:n_low], add, mul, p, dtype)
    high = _span(basis[n_low:], add, mul, p, dtype)
    nbins = code.n + 1

    def work(rows: range) -> np.ndarray:
        hist = np.zeros(nbins, dtype=np.int64)
        for j in rows:
            words = low ^ high[j] if p == 2 else add[low, high[j][None, :]]
            w = np.count_nonzero(words, axis=1)
            hist += np.bincount(w, minlength=nbins)
        return hist

    threads = max(1, int(threads))
    chunks = [range(a, min(a + 16, len(high))) for a in range(0, len(high), 16)]
    if threads == 1 or len(chunks) == 1:
        parts = [work(c) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, chunks))
    hist = np.sum(parts, axis=0)
    dist = WeightDistribution.from_histogram(hist)
    if dist.total != code.size or dict(dist.counts).get(0) != 1:
        raise AssertionError(f"weight distribution of {code.spec} is inconsistent: {dist}")
    return dist


def num_nonzero_weights(dist: WeightDistribution) -> int:
    return len(dist.nonzero_weights)


def dist_json(dist: WeightDistribution) -> str:
    return json.dumps(dist.to_json(), sort_keys=True)
