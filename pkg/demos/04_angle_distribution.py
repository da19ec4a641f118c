#!/usr/bin/env python3
"""Root angles against the limiting law, and the h(theta) counting rule.

Run:  python demos/04_angle_distribution.py      (about 10 s)
"""

import numpy as np

from faberlab.arcdist import (
    THETA_HI,
    THETA_LO,
    LimitLaw,
    arc_sample,
    ks_distance,
    moment_check,
    quad_A,
    raveh_zero_count,
)

c = 0.1
law = LimitLaw(c)
for ell in (30, 60, 90, 120):
    m = round(c * ell)
    s = arc_sample(12 * ell, m)
    print(f"ell={ell:3d} m={m:2d} roots={len(s):3d} KS={ks_distance(s, law):.4f}")

# histogram of the last sample next to the predicted counts
edges = np.linspace(THETA_LO, THETA_HI, 7)
counts, _ = np.histogram(s.thetas, bins=edges)
for a, b, n in zip(edges, edges[1:], counts):
    p = raveh_zero_count(12 * ell, m, a, b)
    print(f"[{a:.4f}, {b:.4f})  {n:3d} roots, predicted {p.value:6.2f} (range {p.lo}..{p.hi})")

# the law's moments agree with the power-sum constants
for n in range(4):
    lhs, rhs = moment_check(c, n)
    print(f"n={n}: integral {lhs:.6e}  constants {rhs:.6e}")
print("A_2 by quadrature:", quad_A(2))
