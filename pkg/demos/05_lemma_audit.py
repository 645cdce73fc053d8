"""
Auditing the counting lemmas
============================

The proofs rest on counts of multiples of q and r in short windows and on
bounds for partial sums of the counting function.  Each audit below checks
one statement on every instance it applies to and reports the first
counterexample, if any.
"""

from ternpoly import audit_lemma, check_L1
from ternpoly.audit import CONFORMING_LEMMAS, audit_triples, window_lemma_sweep

# window statements on one triple, then on everything of degree <= 5000
for lid in ("L5", "L6"):
    print(audit_lemma((3, 5, 7), lid).as_dict())
sweep = window_lemma_sweep(5000)
print("sweep:", sweep.triples, "triples", sweep.l5.passed, sweep.l6.passed)

# partial-sum bounds on the conforming audit triples for p = 5 (t > 1)
for t in audit_triples(5):
    if t.q % 5 == 1:
        continue
    print(t.as_tuple(), {lid: audit_lemma(t, lid).passed for lid in CONFORMING_LEMMAS})

print("L1 for n = 4..30:", all(check_L1(n) for n in range(4, 31)))
