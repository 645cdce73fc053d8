"""
Predicting extremes from a single residue
=========================================

For q = t (mod p) and r t = 1 (mod pq) the smallest and largest
coefficient depend only on p and t.  Here we tabulate the prediction for
p = 11 and compare it with the computed coefficients.
"""

from math import gcd

from ternpoly import classify_case, profile_stream
from ternpoly.modmath import mod_inverse, next_in_class, next_prime_in_progression

p = 11
print(" t    q      r   case  predicted  computed")
for t in range(1, p):
    if gcd(t, p) != 1:
        continue
    q = next_prime_in_progression(t, p, p * p)
    r = next_in_class(mod_inverse(t, p * q), p * q, q)
    pred = classify_case(p, t)
    got = profile_stream((p, q, r))
    print(f"{t:2d} {q:4d} {r:6d}   {pred.case_id:>4}  "
          f"[{pred.predicted_a_minus:2d},{pred.predicted_a_plus:2d}]    [{got.a_minus:2d},{got.a_plus:2d}]")

# the mirror family r t = -1 (mod pq) negates the coefficient set
t = 3
q = next_prime_in_progression(t, p, p * p)
r_mirror = next_in_class(-mod_inverse(t, p * q), p * q, q)
print("mirror t=3:", sorted(profile_stream((p, q, r_mirror)).coeff_set))
