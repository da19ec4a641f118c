#!/usr/bin/env python3
"""Where are the roots?  Exact counts on [0, 1728], and the smallest bad m.

Run:  python demos/03_roots_on_the_arc.py
"""

from faberlab import faber_greedy, min_m_off_arc, root_report
from faberlab.realroots import conjectured_min_m, scan_arc

# weight 384 (ell = 32): m = 0..23 keep every root in [0, 1728]
for r in scan_arc(384):
    if r.m in (0, 22, 23, 24, 25, 31, 32):
        print(f"m={r.m:2d} degree={r.degree:2d} arc={r.arc:2d} neg={r.neg} "
              f"large={r.large} nonreal={r.nonreal} ({r.method})")

print()
print(" ell  m_min  table  every m >= m_min off?")
for ell in (32, 33, 40, 47, 64, 80):
    res = min_m_off_arc(12 * ell)
    print(f"{ell:4d}  {res.m_min:5d}  {conjectured_min_m(ell):5d}  {res.monotone}")

# ell = 33: m = 23 leaves the arc, m = 24 comes back
print(root_report(faber_greedy(396, 24)))
