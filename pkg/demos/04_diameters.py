"""
Which diameters occur
=====================

The diameter A+ - A- of a conforming triple is determined by t.  Listing the
reachable (d, t) pairs shows gaps: d = 4 never occurs for p >= 5 by this
construction.  Odd diameters need a suitable prime p.
"""

from ternpoly import achievable_diameters, find_p_for_odd_diameter, solve_diameter_for_p, verify_witness
from ternpoly.solvers import build_witness

for p in (5, 7, 11, 13, 17):
    ds = sorted(achievable_diameters(p))
    print(p, [d for d, _ in ds])

print("d=4 for p=7:", solve_diameter_for_p(7, 4))

for d in (9, 15, 21, 25):
    p, t = find_p_for_odd_diameter(d)
    rep = verify_witness(build_witness(p, t, "diameter", d))
    print(f"d={d}: p={p} t={t} triple={rep.witness.triple.as_tuple()} ok={rep.ok}")
