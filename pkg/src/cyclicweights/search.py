"""Parameter sweeps: cheap closed-form bounds as a filter, brute force to confirm.

``run_search`` walks (q, n, coset subset) in a fixed order, keeps the codes
whose best bound is at most ``tau`` and, when asked, fills in the measured
number of weights and the orbit count.  ``audit_spec`` is the stricter
check used by the test-suite: every exact formula that applies is compared
with direct orbit enumeration and with Burnside counting.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from itertools import combinations
from math import gcd
from typing import Iterable, Iterator

from .bounds import METHOD_GROUP, METHODS, BugTrap, bound_report, group_for
from .codes import (
    WEIGHT_CAP,
    CodeSpec,
    build_code,
    enumeration_cap,
    make_spec,
    num_nonzero_weights,
    weight_distribution,
)
from .gf import FieldError, PrimePower
from .orbits import ORBIT_CAP, burnside_count, named_group, orbit_count
from .zn import cyclotomic_cosets

__all__ = [
    "SearchConfig",
    "SearchRecord",
    "SkipEvent",
    "MethodAudit",
    "SpecAudit",
    "candidate_specs",
    "evaluate_spec",
    "verify_record",
    "run_search",
    "audit_spec",
    "CSV_COLUMNS",
    "write_jsonl",
    "write_csv",
]

log = logging.getLogger(__name__)

CSV_COLUMNS = ("q", "n", "cosets", "dim", "best_bound", "method", "l", "tight")

# reason codes attached to skipped or unverified instances
SKIP_GCD = "gcd_not_one"
SKIP_BUGTRAP = "formula_bug_trap"
UNVERIFIED_CAP = "cap_exceeded"
UNVERIFIED_FIELD = "field_too_large"


@dataclass(frozen=True)
class SearchConfig:
    q_values: tuple[int, ...]
    n_values: tuple[int, ...]
    max_cosets: int = 1
    tau: float = math.inf
    verify: bool = False
    orbit_check: bool = False
    threads: int = 1
    cap: int | None = None

    def __post_init__(self):
        if self.max_cosets not in (1, 2):
            raise ValueError("max_cosets must be 1 or 2")
        if not self.tau >= 0:
            raise ValueError("tau must be a non-negative number")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        for q in self.q_values:
            PrimePower.from_order(q)
        if any(n < 1 for n in self.n_values):
            raise ValueError("n values must be >= 1")


@dataclass(frozen=True)
class SearchRecord:
    q: int
    n: int
    cosets: tuple[int, ...]
    dim: int
    bounds: dict[str, int | None]
    best_bound: int
    method: str
    notes: dict[str, str] = field(default_factory=dict)
    verified: bool = False
    unverified_reason: str | None = None
    l: int | None = None
    weights: dict[str, int] | None = None
    orbit_group: str | None = None
    orbit_count: int | None = None
    tight: bool | None = None

    @property
    def spec(self) -> CodeSpec:
        return make_spec(self.q, self.n, self.cosets)

    def to_json(self) -> dict:
        out = asdict(self)
        out["cosets"] = list(self.cosets)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def csv_row(self) -> list:
        return [
            self.q,
            self.n,
            " ".join(map(str, self.cosets)),
            self.dim,
            self.best_bound,
            self.method,
            "" if self.l is None else self.l,
            "" if self.tight is None else str(self.tight).lower(),
        ]


@dataclass(frozen=True)
class SkipEvent:
    q: int
    n: int
    cosets: tuple[int, ...]
    reason: str
    detail: str = ""


def candidate_specs(q: int, n: int, max_cosets: int) -> list[CodeSpec]:
    """Single cosets, plus pairs whose sizes divide one another, in rep order.

    Pairs outside the divisibility case are left out: only the subset-sum
    bound covers them, and it is not exact.
    """
    cs = cyclotomic_cosets(n, q)
    subsets = [(c.rep,) for c in cs]
    if max_cosets >= 2:
        for a, b in combinations(cs, 2):
            if a.size % b.size == 0 or b.size % a.size == 0:
                subsets.append((a.rep, b.rep))
    subsets.sort()
    return [make_spec(q, n, s) for s in subsets]


def evaluate_spec(spec: CodeSpec) -> SearchRecord:
    rep = bound_report(spec)
    method, best = rep.best
    bounds = {m: rep.entries[m].value for m in METHODS}
    notes = {m: r.reason for m, r in rep.entries.items() if not r.applicable}
    return SearchRecord(
        q=spec.q.q,
        n=spec.n,
        cosets=spec.cosets,
        dim=spec.dimension,
        bounds=bounds,
        best_bound=best,
        method=method,
        notes=notes,
        orbit_group=rep.strongest_group(),
    )


def verify_record(rec: SearchRecord, cap: int | None = None, orbit_check: bool = False) -> SearchRecord:
    """Fill the number of weights, the orbit count of the strongest group and tightness.

    With ``orbit_check`` the orbit count is also recomputed by Burnside.
    """
    spec = rec.spec
    wcap = enumeration_cap(WEIGHT_CAP) if cap is None else cap
    ocap = enumeration_cap(ORBIT_CAP) if cap is None else cap
    size = spec.q.q ** spec.dimension
    if size > min(wcap, ocap):
        return replace(rec, unverified_reason=f"{UNVERIFIED_CAP}: {size} > {min(wcap, ocap)}")
    try:
        code = build_code(spec)
    except FieldError as exc:
        return replace(rec, unverified_reason=f"{UNVERIFIED_FIELD}: {exc}")
    dist = weight_distribution(code, cap=wcap)
    ell = num_nonzero_weights(dist)
    group = rec.orbit_group or "mu_q"
    N = orbit_count(code, named_group(group, spec.q.q, spec.n), cap=ocap).count
    if ell > N or ell > rec.best_bound:
        raise AssertionError(f"{spec}: {ell} weights exceed a bound (orbits {N}, best {rec.best_bound})")
    if orbit_check:
        B = burnside_count(code, named_group(group, spec.q.q, spec.n))
        if B != N:
            raise AssertionError(f"{spec}: Burnside gives {B}, enumeration {N} under {group}")
    return replace(
        rec,
        verified=True,
        l=ell,
        weights={str(w): c for w, c in sorted(dist.as_dict().items())},
        orbit_count=N,
        tight=ell == N,
    )


def _process(spec: CodeSpec, cfg: SearchConfig) -> SearchRecord | SkipEvent | None:
    try:
        rec = evaluate_spec(spec)
    except BugTrap as exc:
        return SkipEvent(spec.q.q, spec.n, spec.cosets, SKIP_BUGTRAP, str(exc))
    if rec.best_bound > cfg.tau:
        return None
    if cfg.verify:
        rec = verify_record(rec, cfg.cap, cfg.orbit_check)
        if rec.unverified_reason:
            log.info("unverified q=%d n=%d cosets=%s: %s", rec.q, rec.n, rec.cosets, rec.unverified_reason)
    return rec


def run_search(cfg: SearchConfig, on_skip=None) -> Iterator[SearchRecord]:
    """Records with best bound <= tau, ordered by q, n, then coset reps.

    Skips are logged and, if given, passed to ``on_skip``.  The order does not
    depend on ``cfg.threads``.
    """

    def skip(ev: SkipEvent):
        level = logging.INFO if ev.reason == SKIP_GCD else logging.WARNING
        log.log(level, "skip q=%d n=%d cosets=%s: %s %s", ev.q, ev.n, ev.cosets, ev.reason, ev.detail)
        if on_skip is not None:
            on_skip(ev)

    pool = ThreadPoolExecutor(cfg.threads) if cfg.threads > 1 else None
    try:
        for q in sorted(set(cfg.q_values)):
            for n in sorted(set(cfg.n_values)):
                if gcd(n, q) != 1:
                    skip(SkipEvent(q, n, (), SKIP_GCD, f"gcd={gcd(n, q)}"))
                    continue
                specs = candidate_specs(q, n, cfg.max_cosets)
                if pool is None:
                    results = (_process(s, cfg) for s in specs)
                else:
                    results = pool.map(lambda s: _process(s, cfg), specs)
                for res in results:
                    if isinstance(res, SkipEvent):
                        skip(res)
                    elif res is not None:
                        yield res
    finally:
        if pool is not None:
            pool.shutdown()


def write_jsonl(records: Iterable[SearchRecord], fh) -> int:
    count = 0
    for rec in records:
        fh.write(rec.dumps() + "\n")
        fh.flush()
        count += 1
    return count


def write_csv(records: Iterable[SearchRecord], fh) -> int:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    count = 0
    for rec in records:
        w.writerow(rec.csv_row())
        fh.flush()
        count += 1
    return count


# -- auditing -------------------------------------------------------------------


@dataclass(frozen=True)
class MethodAudit:
    method: str
    group: str
    formula: int
    enumerated: int
    burnside: int

    @property
    def ok(self) -> bool:
        return self.formula == self.enumerated == self.burnside


@dataclass(frozen=True)
class SpecAudit:
    spec: CodeSpec
    l: int
    best_method: str
    best_bound: int
    methods: tuple[MethodAudit, ...]
    group_counts: dict[str, int]

    @property
    def ok(self) -> bool:
        return all(m.ok for m in self.methods) and self.l <= self.best_bound

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "l": self.l,
            "best": {"method": self.best_method, "value": self.best_bound},
            "methods": {
                m.method: {"group": m.group, "formula": m.formula, "enumerated": m.enumerated, "burnside": m.burnside}
                for m in self.methods
            },
            "ok": self.ok,
        }

    def summary(self) -> str:
        buf = io.StringIO()
        buf.write(f"{self.spec}: l={self.l}, best {self.best_method}={self.best_bound}\n")
        for m in self.methods:
            flag = "ok" if m.ok else "MISMATCH"
            buf.write(f"  {m.method:<22} {m.group:<13} formula={m.formula} enum={m.enumerated} burnside={m.burnside} {flag}\n")
        return buf.getvalue()


def audit_spec(spec: CodeSpec, threads: int = 1, cap: int | None = None) -> SpecAudit:
    """Compare every applicable exact formula with both orbit oracles."""
    rep = bound_report(spec)
    code = build_code(spec)
    dist = weight_distribution(code, threads=threads, cap=cap)
    counts: dict[str, tuple[int, int]] = {}
    audits = []
    for name in METHODS:
        r = rep.entries[name]
        if not r.applicable or METHOD_GROUP[name] is None:
            continue
        g = group_for(name, r)
        if g not in counts:
            gens = named_group(g, spec.q.q, spec.n)
            counts[g] = (orbit_count(code, gens, cap=cap).count, burnside_count(code, gens))
        audits.append(MethodAudit(name, g, r.value, *counts[g]))
    best_method, best = rep.best
    return SpecAudit(
        spec,
        num_nonzero_weights(dist),
        best_method,
        best,
        tuple(audits),
        {g: c[0] for g, c in sorted(counts.items())},
    )
