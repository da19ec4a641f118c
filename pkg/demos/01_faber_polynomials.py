#!/usr/bin/env python3
"""Build a few Faber polynomials and check the defining q-expansion.

Run:  python demos/01_faber_polynomials.py
"""

from faberlab import faber_family, faber_greedy, miller_form_qexp
from faberlab.faber import miller_prefix_ok

# weight 12: f = Delta * (j - 720) = q + O(q^2)
F = faber_greedy(12, 0)
print("F_{12,0} =", F)

# the whole weight-24 family shares one inverse series
for F in faber_family(24):
    print(f"F_{{24,{F.m}}} = {F}")

# weight 26 = 12*1 + 14, so E_14 enters the product
print("F_{26,0} =", faber_greedy(26, 0))

# the form itself: q^m, then zeros up to q^ell, then free coefficients
f = miller_form_qexp(60, 2, 8)
print("f_{60,2} coefficients from q^2:", f.coefficient_list(2, 9))

# each polynomial of weight 120 reproduces q^m + O(q^(ell+1))
print("weight 120 prefixes ok:", all(miller_prefix_ok(F) for F in faber_family(120)))

# coefficients grow fast
F = faber_greedy(1200, 0)
print(f"F_{{1200,0}} has degree {F.degree}; |e_100| has {len(str(abs(F.e(100))))} digits")
