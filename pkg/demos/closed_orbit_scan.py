"""Closed-orbit phenomenology across the index grid.

Rational k makes every bounded orbit of the barrier family close; an
irrational index never quite returns.  This script scans a small grid
of indices, five seeded wedge starts each, and prints the closure
table together with the best miss for the irrational probe.
"""

import numpy as np

from superint.model import ParamsTTW, PhasePoint, RationalIndex, make_ttw_h
from superint.orbits import find_closure, scan_k

## the grid: three rational indices and one irrational proxy
K_VALUES = [RationalIndex(1), RationalIndex(2), RationalIndex(3, 2),
            1.414213562]
PARAMS = ParamsTTW(1.0, 1.0, 1.0)

print("closure scan, horizon 50, tol 1e-4, 5 starts per index")
print("%-12s %-6s %-8s %-12s %s" % ("k", "start", "closed", "period",
                                    "distance"))
cells = scan_k(K_VALUES, PARAMS, n_starts=5, horizon=50.0, tol=1e-4)
for i, cell in enumerate(cells):
    print("%-12.6f %-6d %-8s %-12s %.3e"
          % (cell.k, i % 5, cell.closed,
             "%.6f" % cell.period if cell.period else "-", cell.distance))

## the pure oscillator closes after exactly pi
h = make_ttw_h(ParamsTTW(1.0, 0.0, 0.0), RationalIndex(1))
res = find_closure(h, PhasePoint.cartesian(1.0, 0.3, 0.2, -0.4),
                   dt=1e-4, horizon=5.0, tol=1e-4)
print("\noscillator period: %.7f (pi = 3.1415927)" % res.period)
