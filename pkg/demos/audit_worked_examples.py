"""Audit the closed-form orbit counts on a handful of small cyclic codes.

For each code: the weight distribution, every applicable formula, and the
same orbit counts found by enumeration and by Burnside's lemma.
"""

from cyclicweights import audit_spec, build_code, make_spec, weight_distribution

CODES = [
    (2, 9, [1]),
    (8, 21, [7]),
    (3, 22, [2]),
    (2, 15, [0, 3]),
    (2, 15, [1, 3]),
    (2, 7, [1, 3]),
    (2, 21, [3, 9]),
    (4, 15, [1, 2]),
    (4, 15, [1, 7]),
]

for q, n, reps in CODES:
    spec = make_spec(q, n, reps)
    dist = weight_distribution(build_code(spec))
    audit = audit_spec(spec)
    print(f"{spec}  A(x) = {dist.polynomial()}")
    print(audit.summary())
