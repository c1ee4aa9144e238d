"""Tangential approach need not be uniform when the zero set is large.

An offset parabola plus a thin bump on the flat boundary is solved for
shrinking bump sizes.  The quadratic growth constant at r = 1/8 drops toward
zero while free-boundary points keep showing up inside the cone
``x1 > |x2|/2``, so no single modulus bounds the approach across the family.

    python3 demos/nonuniform_approach.py
"""

from twophase.cli import DEFAULT_SWEEP, run_counterexample_sweep

rows = run_counterexample_sweep(DEFAULT_SWEEP, h=1 / 128)
print(f"{'delta':>8} {'eps':>6} {'c0(1/8)':>10} {'cone points':>12} {'data sup':>9}")
for r in rows:
    print(f"{r['delta']:>8g} {r['eps']:>6g} {r['c0']:>10.4g} {r['n_cone']:>12d} {r['data_sup']:>9.4g}")
