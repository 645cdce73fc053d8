"""
Streaming a degree 5e7 polynomial
=================================

The streaming engine keeps a ring of p counts and a table of p+1 flags, so
memory does not grow with the degree.  We time a triple of degree above 5e7
and trace the allocations.
"""

import time
import tracemalloc

from ternpoly import profile_stream

profile_stream((3, 5, 7))  # compile outside the timed run

for triple in ((11, 127, 1601), (11, 127, 40009)):
    tracemalloc.start()
    t0 = time.perf_counter()
    prof = profile_stream(triple)
    dt = time.perf_counter() - t0
    peak = tracemalloc.get_traced_memory()[1]
    tracemalloc.stop()
    print(f"{triple}: degree {prof.degree}, height {prof.height}, {dt:.2f}s, traced peak {peak / 1024:.0f} KiB")
