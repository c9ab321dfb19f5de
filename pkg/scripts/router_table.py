"""Tabulate reflection windows of a disordered giant atom at the router phases.

    python scripts/router_table.py

For each N the last point is moved along the total-reflection branch
|x - x_N| = |y - y_N|; the window centres should not move and should sit at
(N/2)(x^2 + y^2) cot(m pi / N), with widths 2 (x - x_N)^2.
"""

from chiralwg.regimes import DisorderedConfig, bec_lamb_shift_special, chiral_condition_special
from chiralwg.windows import find_router_windows

X, Y = 1.0, 2.0

print(f"{'N':>2} {'x_N':>5} {'y_N':>5} {'m':>2} {'center':>14} {'expected':>14} {'width':>10} {'2(x-x_N)^2':>10}")
for n in (2, 5, 6):
    for xn in (0.5, 1.5, 2.0):
        yn = chiral_condition_special(X, Y, xn).yi_plus
        wins = find_router_windows(DisorderedConfig(n, X, Y, n, xn, yn).to_config(), (-50, 50), resolution=8001)
        for m, w in enumerate(wins, start=1):
            expected = bec_lamb_shift_special(n, X, Y, m)
            print(f"{n:>2} {xn:>5.2f} {yn:>5.2f} {m:>2} {w.center:>14.9f} {expected:>14.9f} {w.width:>10.6f} {2 * (X - xn) ** 2:>10.6f}")
