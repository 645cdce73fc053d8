"""
Triples of every height
=======================

For an odd prime p every height from 1 to (p+1)/2 is reached.  The solver
picks t, then the smallest admissible q and r; we check each witness by
computing its coefficients.
"""

from ternpoly import solve_height, verify_witness

p = 13
for h in range(1, (p + 1) // 2 + 1):
    w = solve_height(p, h)
    rep = verify_witness(w)
    print(f"h={h}  t={w.t:2d}  (p,q,r)=({w.p}, {w.q}, {w.r})  verified={rep.ok}")

# asking for a prime r costs a slightly larger triple
w = solve_height(p, 4, prime_r=True)
print("prime r:", w.triple.as_tuple())
