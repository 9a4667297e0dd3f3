"""Time the two orbit-count oracles as the code grows.

Enumeration builds the orbit graph over all codewords; Burnside only needs
one rank per group element, so it stays cheap long after enumeration stops.
"""

import time

from cyclicweights import CapExceeded, build_code, burnside_count, make_spec, named_group, orbit_count

for q, n, reps in [(2, 15, [1, 3]), (2, 21, [1, 3]), (2, 31, [1, 3]), (2, 31, [1, 3, 5]), (2, 63, [1, 3, 5]), (2, 63, [1, 3, 5, 7])]:
    spec = make_spec(q, n, reps)
    code = build_code(spec)
    gens = named_group("mu_q", q, n)
    t = time.perf_counter()
    burn = burnside_count(code, gens)
    tb = time.perf_counter() - t
    t = time.perf_counter()
    try:
        enum = orbit_count(code, gens).count
    except CapExceeded:
        enum = "cap"
    te = time.perf_counter() - t
    print(f"{str(spec):<28} |C|={code.size:<12} burnside={burn} ({tb:.3f}s)  enumeration={enum} ({te:.3f}s)")
