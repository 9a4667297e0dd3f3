"""Look for codes whose best orbit bound is at most 2, then confirm by enumeration.

A bound of 2 certifies at most two nonzero weights without enumerating.
"""

from cyclicweights import SearchConfig, run_search

cfg = SearchConfig(q_values=(4, 8, 9), n_values=tuple(range(3, 64)), max_cosets=2, tau=2, verify=True)
print(f"{'q':>3} {'n':>3} {'cosets':<10} {'k':>3} {'bound':>5} {'method':<22} {'l':>2}")
for rec in run_search(cfg):
    if rec.best_bound < 2:
        continue  # one-weight codes
    cosets = ",".join(map(str, rec.cosets))
    l = rec.l if rec.verified else "-"
    print(f"{rec.q:>3} {rec.n:>3} {cosets:<10} {rec.dim:>3} {rec.best_bound:>5} {rec.method:<22} {l:>2}")
