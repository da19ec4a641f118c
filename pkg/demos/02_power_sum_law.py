#!/usr/bin/env python3
"""The power sums of Faber roots are linear in (k, m).

For n <= ell - m:  p_n = A_n k + B_n m + C_n(k').
Run:  python demos/02_power_sum_law.py
"""

from fractions import Fraction

import numpy as np

from faberlab import faber_greedy, linearity_constants, power_sums, verify_linearity
from faberlab.powersums import bound_violation, ratio_sequence

for n in range(1, 5):
    c = linearity_constants(n)
    print(f"n={n}: A={c.A}  B={c.B}  C(6)={c.C[6]}")

# one polynomial, checked against the law
F = faber_greedy(246, 3)
print("p_1..p_4 of F_{246,3}:", power_sums(F, 4))
print("law:                  ", [linearity_constants(n).power_sum(246, 3) for n in range(1, 5)])

# the whole grid for ell <= 15
bad = 0
for ell in range(1, 16):
    for kp in (0, 4, 6, 8, 10, 14):
        for m in range(ell):
            bad += len(verify_linearity(12 * ell + kp, m, ell - m).violations)
print("violations for ell <= 15:", bad)

# 12 A_n / (-B_n) decreases towards 3/pi
rs = ratio_sequence(20)
print("r_1 =", rs[0], " r_20 =", float(rs[-1]), " 3/pi =", 3 / np.pi)

# a negative power sum pushes a root off [0, 1728]
for m in (29, 30, 31):
    print(f"k=384, m={m}: first negative p_n at n =", bound_violation(384, m))
print("A_1/(-B_1) =", Fraction(linearity_constants(1).A, -linearity_constants(1).B))
