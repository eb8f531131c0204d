"""
Searching for new candidates
============================

Alternating polar updates make n random unitaries orthogonal. The complement
is then scanned for maximally entangled states.
"""

from umeb import OptimizerConfig, search_umeb
from umeb.verifier import SearchConfig

cfg = SearchConfig(optimizer=OptimizerConfig(restarts=50))
for d, n, seed in [(2, 3, 0), (3, 6, 11), (3, 5, 2)]:
    res = search_umeb(d, n, cfg, seed=seed)
    if not res.converged:
        print(d, n, "no orthogonal set after", res.rounds, "rounds")
        continue
    verdict = "extendable" if res.report.extendable() else "no maximally entangled state found"
    print(f"d={d} n={n}: {res.rounds} rounds, best value {res.report.best_value:.4f} -> {verdict}")

try:
    search_umeb(3, 8)
except ValueError as exc:
    print("rejected:", exc)
