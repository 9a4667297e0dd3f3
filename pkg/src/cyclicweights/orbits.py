"""Orbits of multiplier/shift/scalar groups on the nonzero codewords.

Every generator acts on coordinates, so it induces a permutation of codeword
indices.  Orbits are the connected components of the graph those
permutations span; Burnside counting walks the group elements
``mu_b rho^s sigma^t`` with ``b`` in the multiplier subgroup ``H``.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .codes import (
    CapExceeded,
    CyclicCode,
    all_codewords,
    contains_words,
    enumeration_cap,
    gfp_basis,
)
from .gf import PrimePower

__all__ = [
    "ORBIT_CAP",
    "GROUP_NAMES",
    "OrbitError",
    "ActionGenerator",
    "Orbit",
    "OrbitPartition",
    "apply_generator",
    "multiplier_subgroup",
    "group_order",
    "named_group",
    "parse_group",
    "orbit_count",
    "burnside_count",
    "same_weight_same_orbit",
]

ORBIT_CAP = 1 << 20
GROUP_NAMES = ("mu_q", "mu_negq", "mu_neg1_negq", "mu_pe2", "mu_pe2_l1", "rho_sigma")


class OrbitError(ValueError):
    pass


@dataclass(frozen=True)
class ActionGenerator:
    kind: str  # "rho", "sigma" or "mu"
    a: int = 1

    def __post_init__(self):
        if self.kind not in ("rho", "sigma", "mu"):
            raise OrbitError(f"unknown generator kind {self.kind!r}")

    @classmethod
    def rho(cls) -> ActionGenerator:
        return cls("rho")

    @classmethod
    def sigma(cls) -> ActionGenerator:
        return cls("sigma")

    @classmethod
    def mu(cls, a: int) -> ActionGenerator:
        return cls("mu", a)

    def __str__(self) -> str:
        return f"mu_{self.a}" if self.kind == "mu" else self.kind


def apply_generator(g: ActionGenerator, c, xi: int = 1, field=None) -> np.ndarray:
    """Image of the word ``c`` under ``g``.

    ``rho`` moves coordinate i to i+1, ``mu_a`` moves it to a*i, ``sigma``
    scales by ``xi`` (needs ``field`` unless xi is 1).
    """
    c = np.asarray(c)
    n = c.shape[-1]
    if g.kind == "rho":
        return np.roll(c, 1, axis=-1)
    if g.kind == "mu":
        a = g.a % n if n > 1 else 0
        if n > 1 and gcd(a, n) != 1:
            raise OrbitError(f"mu_{g.a} needs a unit modulo {n}")
        a_inv = pow(a, -1, n) if n > 1 else 0
        return c[..., (np.arange(n) * a_inv) % n]
    if xi == 1:
        return c.copy()
    if field is None:
        raise OrbitError("sigma with xi != 1 needs the field")
    return field.mul_table[xi][c].astype(c.dtype)


def multiplier_subgroup(multipliers, n: int) -> list[int]:
    """Closure of the given units under multiplication mod n, sorted."""
    if n == 1:
        return [0]
    elems = {1}
    gens = []
    for a in multipliers:
        a %= n
        if gcd(a, n) != 1:
            raise OrbitError(f"mu_{a} needs a unit modulo {n}")
        gens.append(a)
    frontier = [1]
    while frontier:
        nxt = []
        for x in frontier:
            for a in gens:
                y = x * a % n
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(elems)


def _split(gens) -> tuple[list[int], bool, bool]:
    mus = [g.a for g in gens if g.kind == "mu"]
    has_rho = any(g.kind == "rho" for g in gens)
    has_sigma = any(g.kind == "sigma" for g in gens)
    return mus, has_rho, has_sigma


def group_order(gens, n: int, q: int) -> int:
    """|H| * n^[rho present] * (q-1)^[sigma present].

    This is the order of the abstract group of triples (b, s, t); it acts on
    R_n faithfully for the groups used here.
    """
    mus, has_rho, has_sigma = _split(gens)
    return len(multiplier_subgroup(mus, n)) * (n if has_rho else 1) * ((q - 1) if has_sigma else 1)


def named_group(name: str, q: int, n: int) -> list[ActionGenerator]:
    """Generator list for one of :data:`GROUP_NAMES`."""
    rs = [ActionGenerator.rho(), ActionGenerator.sigma()]
    if name == "mu_q":
        return [ActionGenerator.mu(q)] + rs
    if name == "mu_negq":
        return [ActionGenerator.mu(-q)] + rs
    if name == "mu_neg1_negq":
        return [ActionGenerator.mu(-1), ActionGenerator.mu(-q)] + rs
    if name in ("mu_pe2", "mu_pe2_l1"):
        pp = PrimePower.from_order(q)
        if pp.e % 2:
            raise OrbitError(f"{name} needs q to be an even power of its characteristic, got q={q}")
        sign = -1 if name.endswith("l1") else 1
        return [ActionGenerator.mu(sign * pp.p ** (pp.e // 2))] + rs
    if name == "rho_sigma":
        return rs
    raise OrbitError(f"unknown group {name!r}; expected one of {', '.join(GROUP_NAMES)}")


def parse_group(text: str, q: int, n: int) -> list[ActionGenerator]:
    """A group name, or a comma list such as ``rho,sigma,mu_-2``."""
    text = text.strip()
    if text in GROUP_NAMES:
        return named_group(text, q, n)
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok in ("rho", "sigma"):
            out.append(ActionGenerator(tok))
        elif tok.startswith("mu_"):
            arg = tok[3:]
            if arg == "q":
                a = q
            elif arg == "-q":
                a = -q
            else:
                try:
                    a = int(arg)
                except ValueError:
                    raise OrbitError(f"bad multiplier {tok!r}") from None
            out.append(ActionGenerator.mu(a))
        else:
            raise OrbitError(f"unknown generator {tok!r}")
    if not out:
        raise OrbitError("empty generator list")
    return out


@dataclass(frozen=True)
class Orbit:
    weight: int
    size: int
    representative: tuple[int, ...]

    def rep_hex(self) -> str:
        return bytes(self.representative).hex() if max(self.representative, default=0) < 256 else ",".join(
            format(c, "x") for c in self.representative
        )


@dataclass(frozen=True)
class OrbitPartition:
    group: tuple[str, ...]
    group_order: int
    orbits: tuple[Orbit, ...]  # sorted by (weight, representative)

    @property
    def count(self) -> int:
        return len(self.orbits)

    @property
    def sizes(self) -> list[int]:
        return sorted(o.size for o in self.orbits)

    @property
    def weights(self) -> list[int]:
        return [o.weight for o in self.orbits]

    def to_json(self) -> dict:
        return {
            "group": list(self.group),
            "group_order": self.group_order,
            "orbit_count": self.count,
            "sizes": self.sizes,
            "orbits": [{"weight": o.weight, "size": o.size, "representative": o.rep_hex()} for o in self.orbits],
        }


class _CodeAction:
    """Codewords of one code plus memoised index permutations."""

    def __init__(self, code: CyclicCode, cap: int):
        if code.size > cap:
            raise CapExceeded("orbit enumeration", code.size, cap)
        self.code = code
        self.words = all_codewords(code, cap=cap)
        self.N = len(self.words)
        self.weights = np.count_nonzero(self.words, axis=1)
        # lexicographic position of every word, for picking orbit representatives
        self.lex_order = np.lexsort(_lex_keys(self.words, code.q)[::-1])
        self.lex_rank = np.empty(self.N, dtype=np.int64)
        self.lex_rank[self.lex_order] = np.arange(self.N)
        self._perms: dict = {}

    def perm(self, g: ActionGenerator) -> np.ndarray:
        """Index permutation induced by ``g``.

        The generators are linear, so checking the basis images is enough to
        know every image is a codeword; the index is then read off the
        information columns of the image alone.
        """
        code = self.code
        key = (g.kind, g.a % code.n if code.n > 1 else 0)
        if key not in self._perms:
            _check_preserves(code, g)
            n, k = code.n, code.k
            info = np.arange(n - k, n)
            if g.kind == "rho":
                cols = self.words[:, (info - 1) % n]
            elif g.kind == "mu":
                a_inv = pow(key[1], -1, n) if n > 1 else 0
                cols = self.words[:, (info * a_inv) % n]
            else:
                cols = apply_generator(g, self.words[:, info], code.xi, code.small)
            self._perms[key] = cols.astype(np.int64) @ (code.q ** np.arange(k, dtype=np.int64))
        return self._perms[key]


_actions: weakref.WeakKeyDictionary = weakref.WeakKeyDictionary()


def _action(code: CyclicCode, cap: int | None) -> _CodeAction:
    cap = enumeration_cap(ORBIT_CAP) if cap is None else cap
    if code.size > cap:
        raise CapExceeded("orbit enumeration", code.size, cap)
    act = _actions.get(code)
    if act is None:
        act = _CodeAction(code, cap)
        _actions[code] = act
    return act


def _lex_keys(words: np.ndarray, q: int) -> list[np.ndarray]:
    """Pack rows into uint64 chunks, most significant first, preserving lexicographic order."""
    bits = max(1, (q - 1).bit_length())
    per = 64 // bits
    n = words.shape[1]
    keys = []
    for a in range(0, n, per):
        chunk = words[:, a : a + per].astype(np.uint64)
        shifts = (bits * np.arange(chunk.shape[1] - 1, -1, -1)).astype(np.uint64)
        keys.append(np.bitwise_or.reduce(chunk << shifts[None, :], axis=1))
    return keys


def orbit_count(code: CyclicCode, gens, cap: int | None = None) -> OrbitPartition:
    """Exact orbit partition of the nonzero codewords under ``<gens>``.

    Every generator is checked to map the code onto itself before use.
    """
    gens = list(gens)
    act = _action(code, cap)
    N = act.N
    rows, cols = [], []
    for g in gens:
        p = act.perm(g)
        rows.append(np.arange(N))
        cols.append(p)
    if rows:
        r = np.concatenate(rows)
        c = np.concatenate(cols)
    else:
        r = c = np.arange(N)
    graph = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(N, N))
    _, labels = connected_components(graph, directed=True, connection="weak")

    # the zero word is a fixed point, so it is a component of its own
    lab = labels[1:]
    sizes = np.bincount(lab, minlength=labels.max() + 1)
    comps = np.flatnonzero(sizes)
    first = np.full(len(sizes), N, dtype=np.int64)
    np.minimum.at(first, lab, act.lex_rank[1:])
    rep_idx = act.lex_order[first[comps]]
    orbit_w = np.zeros(len(sizes), dtype=np.int64)
    orbit_w[comps] = act.weights[rep_idx]
    mixed = np.flatnonzero(act.weights[1:] != orbit_w[lab])
    if len(mixed):
        w = 1 + int(mixed[0])
        raise AssertionError(
            f"an orbit of {code.spec} mixes weights {int(act.weights[w])} and {int(orbit_w[labels[w]])}"
        )
    wmin, sizes, reps = orbit_w[comps], sizes[comps], act.words[rep_idx]
    orbits = [Orbit(int(w), int(z), tuple(r.tolist())) for w, z, r in zip(wmin, sizes, reps)]
    orbits.sort(key=lambda o: (o.weight, o.representative))
    if sum(o.size for o in orbits) != code.size - 1:
        raise AssertionError("orbits do not cover the nonzero codewords")
    return OrbitPartition(tuple(map(str, gens)), group_order(gens, code.n, code.q), tuple(orbits))


def _rank_mod_p(A: np.ndarray, p: int) -> np.ndarray:
    """Ranks over GF(p) of a stack of matrices ``A`` with shape (B, R, C)."""
    if p == 2 and A.shape[2] <= 62:
        return _rank_gf2(A)
    A = np.array(A, dtype=np.int64) % p
    B, R, C = A.shape
    rank = np.zeros(B, dtype=np.int64)
    rows = np.arange(R)
    inv = np.array([0] + [pow(x, -1, p) for x in range(1, p)], dtype=np.int64)
    for c in range(C):
        cand = (A[:, :, c] != 0) & (rows[None, :] >= rank[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        bi = np.flatnonzero(has)
        r0 = rank[bi]
        pr = np.argmax(cand[bi], axis=1)
        tmp = A[bi, r0].copy()
        A[bi, r0] = A[bi, pr]
        A[bi, pr] = tmp
        prow = A[bi, r0] * inv[A[bi, r0, c]][:, None] % p
        A[bi, r0] = prow
        factors = A[bi, :, c].copy()
        factors[np.arange(len(bi)), r0] = 0
        A[bi] = (A[bi] - factors[:, :, None] * prow[:, None, :]) % p
        rank[bi] += 1
    return rank


def _rank_gf2(A: np.ndarray) -> np.ndarray:
    """GF(2) ranks with each row packed into one integer."""
    B, R, C = A.shape
    rows_ = (np.asarray(A, dtype=np.int64) & 1) << np.arange(C, dtype=np.int64)
    M = rows_.sum(axis=2)
    rank = np.zeros(B, dtype=np.int64)
    ridx = np.arange(R)
    for c in range(C):
        bit = (M >> c) & 1
        cand = (bit == 1) & (ridx[None, :] >= rank[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        bi = np.flatnonzero(has)
        r0 = rank[bi]
        pr = np.argmax(cand[bi], axis=1)
        prow = M[bi, pr]
        M[bi, pr] = M[bi, r0]
        M[bi, r0] = prow
        hit = ((M[bi] >> c) & 1).astype(bool)
        hit[np.arange(len(bi)), r0] = False
        M[bi] ^= np.where(hit, prow[:, None], 0)
        rank[bi] += 1
    return rank


def _group_elements(gens, n: int, q: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Parallel arrays (b, s, t) listing every mu_b rho^s sigma^t once."""
    mus, has_rho, has_sigma = _split(gens)
    H = multiplier_subgroup(mus, n)
    shifts = range(n) if has_rho else [0]
    scalars = range(q - 1) if has_sigma else [0]
    grid = np.array([(b, s, t) for b in H for s in shifts for t in scalars], dtype=np.int64)
    return grid[:, 0], grid[:, 1], grid[:, 2]


def _fixed_counts_kernel(code: CyclicCode, gens) -> np.ndarray:
    """|Fix(g)| - 1 for every group element, from the kernel of g - 1.

    Each element is GF(p)-linear on the code; its matrix in the GF(p)-basis
    is read off the information set of the images of the basis words.
    """
    n, k, q = code.n, code.k, code.q
    p, e = code.spec.q.p, code.spec.q.e
    d = k * e
    b, s, t = _group_elements(gens, n, q)
    G = len(b)
    basis = gfp_basis(code)  # (d, n) symbols
    lam = np.array([code.small.pow(code.xi, x) for x in range(q - 1)], dtype=np.int64)[t]
    # image of word c under g has c[b^-1 i' - s] * lam at coordinate i'
    if n > 1:
        binv = np.array([pow(int(x), -1, n) for x in b], dtype=np.int64)
        src = (binv[:, None] * np.arange(n - k, n)[None, :] - s[:, None]) % n
    else:
        src = np.zeros((G, k), dtype=np.int64)
    info = code.small.mul_table[lam[:, None, None], basis[:, src].transpose(1, 0, 2)]  # (G, d, k)
    digits = (info[..., None] // (p ** np.arange(e))) % p  # (G, d, k, e)
    M = digits.reshape(G, d, d) - np.eye(d, dtype=np.int64)[None]
    ranks = _rank_mod_p(M, p)
    return p ** (d - ranks) - 1


def _fixed_counts_scan(code: CyclicCode, gens, cap: int | None) -> np.ndarray:
    """|Fix(g)| - 1 for every group element, by testing every codeword."""
    act = _action(code, cap)
    n = code.n
    b, s, t = _group_elements(gens, n, code.q)
    ident = np.arange(act.N)
    rho = act.perm(ActionGenerator.rho())
    sig = act.perm(ActionGenerator.sigma())
    out = np.empty(len(b), dtype=np.int64)
    cache: dict = {}
    for j, (bj, sj, tj) in enumerate(zip(b.tolist(), s.tolist(), t.tolist())):
        if ("r", sj) not in cache:
            cache[("r", sj)] = _power(rho, sj, ident)
        if ("s", tj) not in cache:
            cache[("s", tj)] = _power(sig, tj, ident)
        pmu = act.perm(ActionGenerator.mu(bj)) if n > 1 else ident
        g = pmu[cache[("r", sj)][cache[("s", tj)]]]
        out[j] = np.count_nonzero(g == ident) - 1
    return out


def _power(perm: np.ndarray, k: int, ident: np.ndarray) -> np.ndarray:
    out = ident
    for _ in range(k):
        out = perm[out]
    return out


def burnside_count(code: CyclicCode, gens, cap: int | None = None, method: str = "kernel") -> int:
    """(1/|G|) * sum over g of the nonzero codewords g fixes.

    Group elements are the triples mu_b rho^s sigma^t.  ``method="kernel"``
    counts fixed words as p^dim ker(g - 1) and needs no enumeration;
    ``method="scan"`` tests every codeword.  A non-integral average is an
    implementation bug and raises.
    """
    gens = list(gens)
    if method == "kernel":
        for g in gens:
            _check_preserves(code, g)
        fixed = _fixed_counts_kernel(code, gens)
    elif method == "scan":
        fixed = _fixed_counts_scan(code, gens, cap)
    else:
        raise OrbitError(f"unknown Burnside method {method!r}")
    order = group_order(gens, code.n, code.q)
    if len(fixed) != order:
        raise AssertionError("group order bookkeeping mismatch")
    val = Fraction(int(fixed.sum()), order)
    if val.denominator != 1:
        raise AssertionError(f"Burnside average {val} is not an integer for {code.spec} under {list(map(str, gens))}")
    return int(val)


def _check_preserves(code: CyclicCode, g: ActionGenerator) -> None:
    """Raise unless g maps every generator-matrix row back into the code."""
    image = apply_generator(g, code.systematic_matrix, code.xi, code.small)
    if not contains_words(code, image).all():
        raise OrbitError(f"{g} does not preserve the code {code.spec}")


def same_weight_same_orbit(code: CyclicCode, partition: OrbitPartition) -> bool:
    """True iff each nonzero weight is carried by exactly one orbit."""
    ws = partition.weights
    return len(set(ws)) == len(ws)
