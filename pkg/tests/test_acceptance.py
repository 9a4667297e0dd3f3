"""Acceptance checks; each prints PASS/FAIL lines gathered in the terminal summary."""

import hashlib
import io
from collections import deque
from contextlib import redirect_stdout
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import gcd

import numpy as np
import pytest

from cyclicweights.bounds import (
    METHOD_GROUP,
    BoundReport,
    bound_report,
    cor33,
    cor34,
    cz_corrected_subset_terms,
    cz_published,
    group_for,
    predicate_cor31,
    predicate_cor32,
    rho_sigma_irreducible,
    thm31_irreducible,
    thm32_subset_terms,
    thm34,
    thm35,
    thm36,
)
from cyclicweights.cli import main
from cyclicweights.codes import CodeSpec, all_codewords, build_code, make_spec, num_nonzero_weights, weight_distribution
from cyclicweights.orbits import apply_generator, burnside_count, named_group, orbit_count
from cyclicweights.zn import coset_of, cyclotomic_cosets

SWEEP_Q = (2, 3, 4)
SWEEP_N = 63
SWEEP_LOG2_SIZE = 16

# every code named in the value and distribution checks
EXAMPLE_CODES = [
    (2, 9, (1,)),
    (8, 21, (7,)),
    (3, 22, (2,)),
    (2, 15, (0, 3)),
    (2, 15, (1, 3)),
    (2, 7, (1, 3)),
    (2, 21, (3, 9)),
    (4, 15, (1, 2)),
    (4, 15, (1, 7)),
]


# -- sweep ---------------------------------------------------------------------


@dataclass
class Instance:
    spec: CodeSpec
    report: BoundReport
    l: int
    groups: dict[str, list[str]]  # group name -> exact methods computing its count
    counts: dict[str, tuple[int, int]]  # group name -> (enumerated, burnside)


def _instance(spec: CodeSpec) -> Instance:
    q, n = spec.q.q, spec.n
    code = build_code(spec)
    rep = bound_report(spec)
    l = num_nonzero_weights(weight_distribution(code, threads=1))
    groups: dict[str, list[str]] = {"rho_sigma": []}
    for m, r in rep.entries.items():
        if r.applicable and METHOD_GROUP[m]:
            groups.setdefault(group_for(m, r), []).append(m)
    counts = {}
    for g in groups:
        gens = named_group(g, q, n)
        counts[g] = (orbit_count(code, gens).count, burnside_count(code, gens))
    return Instance(spec, rep, l, groups, counts)


def sweep_specs(q: int) -> list[CodeSpec]:
    """Single cosets and coset pairs with q^k <= 2^16 and one size dividing the other."""
    out = []
    for n in range(1, SWEEP_N + 1):
        if gcd(n, q) != 1:
            continue
        cs = cyclotomic_cosets(n, q)
        subs = [(c,) for c in cs]
        subs += [(a, b) for a, b in combinations(cs, 2) if a.size % b.size == 0 or b.size % a.size == 0]
        for sub in subs:
            if q ** sum(c.size for c in sub) <= 1 << SWEEP_LOG2_SIZE:
                out.append(make_spec(q, n, [c.rep for c in sub]))
    return out


@lru_cache(maxsize=None)
def sweep(part) -> list[Instance]:
    if part == "examples":
        return [_instance(make_spec(q, n, list(reps))) for q, n, reps in EXAMPLE_CODES]
    return [_instance(s) for s in sweep_specs(part)]


PARTS = ["examples", *SWEEP_Q]


# -- 1: bound values -----------------------------------------------------------


C1_CASES = [
    ("thm31(2,9,1,6)", lambda: thm31_irreducible(2, 9, 1, 6), 3),
    ("rho_sigma(2,9,1,6)", lambda: rho_sigma_irreducible(2, 9, 1, 6), 7),
    ("cz_published(2,9,{1})", lambda: cz_published(make_spec(2, 9, [1])), 7),
    ("cor33(2,15,0,3,4)", lambda: cor33(2, 15, 0, 3, 4), 5),
    ("cz_published(2,15,{0,3})", lambda: cz_published(make_spec(2, 15, [0, 3])), 7),
    ("cor34(2,15,1,3,4)", lambda: cor34(2, 15, 1, 3, 4), 8),
    ("cz_published(2,15,{1,3})", lambda: cz_published(make_spec(2, 15, [1, 3])), 19),
    ("cor34(2,7,1,3,3)", lambda: cor34(2, 7, 1, 3, 3), 5),
    ("thm34(2,7,1,3)", lambda: thm34(2, 7, 1, 3), 4),
    ("cor34(2,21,3,9,3)", lambda: cor34(2, 21, 3, 9, 3), 5),
    ("thm35(2,21,3,3)", lambda: thm35(2, 21, 3, 3), 4),
    ("thm36(4,15,1,2,l0=0)", lambda: thm36(4, 15, 1, 2, 0), 3),
    ("thm36(4,15,1,2,l0=1)", lambda: thm36(4, 15, 1, 2, 1), 6),
    ("cor34(4,15,1,2,2)", lambda: cor34(4, 15, 1, 2, 2), 5),
    ("cor34(4,15,1,7,2)", lambda: cor34(4, 15, 1, 7, 2), 11),
    ("thm31(8,21,7,2)", lambda: thm31_irreducible(8, 21, 7, 2), 2),
    ("thm31(3,22,2,5)", lambda: thm31_irreducible(3, 22, 2, 5), 3),
    (
        "mu_q orbits (3,22,{2})",
        lambda: orbit_count(build_code(make_spec(3, 22, [2])), named_group("mu_q", 3, 22)).count,
        3,
    ),
]


@pytest.mark.parametrize("label,fn,expected", C1_CASES, ids=[c[0] for c in C1_CASES])
def test_c1_bound_values(report_line, label, fn, expected):
    got = fn()
    ok = got == expected
    report_line("C1[bound values]", ok, f"{label} = {got}, expected {expected} (exact integer equality)")
    assert ok


# -- 2: weight distributions -----------------------------------------------------


C2_CASES = [
    (2, 9, [1], {0: 1, 2: 9, 4: 27, 6: 27}),
    (8, 21, [7], {0: 1, 14: 21, 21: 42}),
    (3, 22, [2], {0: 1, 12: 132, 18: 110}),
    (2, 15, [0, 3], {0: 1, 3: 5, 6: 10, 9: 10, 12: 5, 15: 1}),
    (2, 15, [1, 3], {0: 1, 4: 15, 6: 100, 8: 75, 10: 60, 12: 5}),
    (2, 7, [1, 3], {0: 1, 2: 21, 4: 35, 6: 7}),
    (2, 21, [3, 9], {0: 1, 6: 21, 12: 35, 18: 7}),
    (4, 15, [1, 2], {0: 1, 8: 45, 12: 210}),
    (4, 15, [1, 7], {0: 1, 6: 30, 9: 60, 12: 105, 15: 60}),
]


@pytest.mark.parametrize("q,n,reps,expected", C2_CASES)
def test_c2_weight_distributions(report_line, q, n, reps, expected):
    dist = weight_distribution(build_code(make_spec(q, n, reps)))
    got = dist.as_dict()
    ok = got == expected
    report_line("C2[weight distributions]", ok, f"({q},{n},{{{','.join(map(str, reps))}}}): {dist.polynomial()} (exact multiset equality)")
    assert ok


# -- 3: formulas equal orbit counts ----------------------------------------------


def _closure_count(code, gens) -> int:
    """Orbit count by breadth-first closure over codeword tuples."""
    seen, orbits = set(), 0
    for w in map(tuple, all_codewords(code).tolist()[1:]):
        if w in seen:
            continue
        orbits += 1
        seen.add(w)
        todo = deque([w])
        while todo:
            c = np.array(todo.popleft())
            for g in gens:
                img = tuple(apply_generator(g, c, code.xi, code.small).tolist())
                if img not in seen:
                    seen.add(img)
                    todo.append(img)
    return orbits


@pytest.mark.parametrize("part", PARTS)
def test_c3_formula_exactness(report_line, part):
    insts = sweep(part)
    bad, checked, groups = [], 0, 0
    for inst in insts:
        for g, ms in inst.groups.items():
            enum, burn = inst.counts[g]
            groups += 1
            if enum != burn:
                bad.append((str(inst.spec), g, "burnside", enum, burn))
            for m in ms:
                checked += 1
                if inst.report.value(m) != enum:
                    bad.append((str(inst.spec), m, inst.report.value(m), enum))
    if part == "examples":
        # the graph-based count is checked against an independent closure here
        for inst in insts:
            code = build_code(inst.spec)
            for g in inst.groups:
                gens = named_group(g, inst.spec.q.q, inst.spec.n)
                if _closure_count(code, gens) != inst.counts[g][0]:
                    bad.append((str(inst.spec), g, "closure"))
    ok = not bad and checked > 0
    report_line(
        f"C3[exactness {part}]",
        ok,
        f"{len(insts)} codes, {checked} formula values, {groups} burnside counts, {len(bad)} mismatches (exact equality)",
    )
    assert ok, bad[:10]


# -- 4: inequality chains --------------------------------------------------------


@pytest.mark.parametrize("part", PARTS)
def test_c4_inequality_chains(report_line, part):
    insts = sweep(part)
    bad = []
    strict = 0
    for inst in insts:
        spec, rep = inst.spec, inst.report
        q, n = spec.q.q, spec.n
        if inst.l > rep.best[1]:
            bad.append((str(spec), "l > best", inst.l, rep.best))
        if len(spec.cosets) == 1:
            k = len(coset_of(spec.cosets[0], n, q).elements)
            t, rs = rep.value("thm31"), rep.value("rho_sigma_irreducible")
            A = (q**k - 1) // (q - 1)
            B = spec.cosets[0] * (q**k - 1) // n
            cond = k > 1 and gcd(q - 1, gcd(A, B)) < gcd(A, B)
            strict += t < rs
            if t > rs or (t < rs) != cond:
                bad.append((str(spec), "strictness", t, rs, cond))
        t32, cz = thm32_subset_terms(spec), cz_corrected_subset_terms(spec)
        if set(t32) != set(cz) or any(t32[S] > cz[S] for S in t32):
            bad.append((str(spec), "subset terms"))
        if rep.value("cz_corrected") != inst.counts["rho_sigma"][0]:
            bad.append((str(spec), "cz_corrected", rep.value("cz_corrected"), inst.counts["rho_sigma"][0]))
    ok = not bad
    report_line(
        f"C4[chains {part}]",
        ok,
        f"{len(insts)} codes, {strict} strict thm31 < rho_sigma, {len(bad)} violations (exact integer comparisons)",
    )
    assert ok, bad[:10]


# -- 5: few-weight predicates ----------------------------------------------------

EXTRA_Q = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32)
EXTRA_N = 400


def _predicate_hits():
    """Single cosets where a predicate fires: the sweep, the example codes, and a wider q, n range."""
    hits = {}
    for part in PARTS:
        for inst in sweep(part):
            if len(inst.spec.cosets) == 1:
                hits[(inst.spec.q.q, inst.spec.n, inst.spec.cosets[0])] = (inst.spec, inst.l)
    for q in EXTRA_Q:
        for n in range(1, EXTRA_N + 1):
            if gcd(n, q) != 1:
                continue
            for c in cyclotomic_cosets(n, q):
                key = (q, n, c.rep)
                if key in hits or q**c.size > 1 << SWEEP_LOG2_SIZE:
                    continue
                if predicate_cor31(q, n, c.rep)[0] or predicate_cor32(q, n, c.rep)[0]:
                    spec = make_spec(q, n, [c.rep])
                    hits[key] = (spec, num_nonzero_weights(weight_distribution(build_code(spec))))
    return hits


def test_c5_few_weight_predicates(report_line):
    hits = _predicate_hits()
    fired = {"cor31": [], "cor32": []}
    bad = []
    for (q, n, i), (spec, l) in sorted(hits.items()):
        if predicate_cor31(q, n, i)[0]:
            fired["cor31"].append((q, n, i))
            if l > 2:
                bad.append(("cor31", q, n, i, l))
        if predicate_cor32(q, n, i)[0]:
            fired["cor32"].append((q, n, i))
            if l > 3:
                bad.append(("cor32", q, n, i, l))
    required = (8, 21, 7) in fired["cor31"] and (3, 22, 2) in fired["cor32"]
    ok = not bad and required
    report_line(
        "C5[predicates]",
        ok,
        f"cor31 fired {len(fired['cor31'])}x (l <= 2), cor32 fired {len(fired['cor32'])}x (l <= 3), "
        f"includes (8,21,7) and (3,22,2): {required}, {len(bad)} violations",
    )
    assert ok, bad[:10]


# -- 6: determinism --------------------------------------------------------------


def _example_suite_output(threads: int) -> bytes:
    buf = io.StringIO()
    t = ["--threads", str(threads), "--format", "json"]
    with redirect_stdout(buf):
        for q, n, reps in EXAMPLE_CODES:
            code = ["--q", str(q), "--n", str(n), "--cosets", ",".join(map(str, reps))]
            for cmd in (["bound"], ["weights"], ["orbits", "--burnside"], ["compare"]):
                assert main([*cmd, *code, *t]) == 0
        assert main(["search", "--q", "2,3,4", "--n", "3-21", "--max-cosets", "2", "--verify", "--cap", "65536", *t]) == 0
    return buf.getvalue().encode()


def test_c6_determinism(report_line):
    outs = [_example_suite_output(t) for t in (1, 4, 1)]
    digests = [hashlib.sha256(o).hexdigest()[:16] for o in outs]
    ok = len(set(outs)) == 1 and len(outs[0]) > 0
    report_line("C6[determinism]", ok, f"threads 1/4/1 sha256 {'/'.join(digests)}, {len(outs[0])} bytes (byte-identical)")
    assert ok
