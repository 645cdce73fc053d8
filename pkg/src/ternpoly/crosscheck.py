"""Exhaustive agreement sweep between the two representability tests.

For every pairwise coprime ``3 <= p < q < r`` with ``pqr`` below a bound,
and every ``0 <= n < pqr``, the kernel compares

* the residue test used by the engine, ``x_n q <= <n r*>_pq <= floor(n/r)``;
* the definition: ``n`` is representable iff ``delta_n = 0`` in
  ``n = x qr + y pr + z pq + delta pqr``, i.e. iff ``x qr + y pr + z pq <= n``.

Both sides run on incremental residues, so there is no division in the loop.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .modmath import mod_inverse


@numba.njit(cache=True, nogil=True)
def _compare(p, q, r, r_star, uq, cx, cy, cz, fail):
    """Walk ``n = 0 .. pqr-1``; returns the count and records the first mismatch."""
    pq = p * q
    res = 0  # n r* mod pq
    xq = 0  # (x_n mod p) * q
    quo = 0  # n // r
    rem = 0  # n mod r
    # the CRT coordinates as multiples: x qr, y pr, z pq
    xs, ys, zs = 0, 0, 0
    xw, yw, zw = p * q * r, p * q * r, p * q * r
    N = p * q * r
    for n in range(N):
        a = xq <= res and res <= quo
        b = xs + ys + zs <= n
        if a != b:
            if fail[0] == 0:
                fail[0], fail[1], fail[2], fail[3] = p, q, r, n
            return n
        res += r_star
        if res >= pq:
            res -= pq
        xq += uq
        if xq >= pq:
            xq -= pq
        rem += 1
        if rem == r:
            rem = 0
            quo += 1
        xs += cx
        if xs >= xw:
            xs -= xw
        ys += cy
        if ys >= yw:
            ys -= yw
        zs += cz
        if zs >= zw:
            zs -= zw
    return N


@dataclass(frozen=True)
class ChiSweep:
    max_product: int
    triples: int
    values_checked: int
    first_mismatch: tuple | None

    @property
    def passed(self) -> bool:
        return self.first_mismatch is None


def chi_delta_sweep(max_product: int) -> ChiSweep:
    fail = np.zeros(4, dtype=np.int64)
    triples = checked = 0
    p = 3
    while p * (p + 1) * (p + 2) <= max_product:
        q = p + 1
        while p * q * (q + 1) <= max_product:
            if np.gcd(p, q) == 1:
                pq = p * q
                for r in range(q + 1, max_product // pq + 1):
                    if np.gcd(r, pq) != 1:
                        continue
                    r_star = mod_inverse(r, pq)
                    uq = mod_inverse(q * r % p, p) * q
                    # steps for x qr, y pr, z pq as n -> n + 1, reduced mod pqr
                    cx = mod_inverse(q * r % p, p) * q * r
                    cy = mod_inverse(p * r % q, q) * p * r
                    cz = mod_inverse(p * q % r, r) * p * q
                    checked += _compare(p, q, r, r_star, uq, cx, cy, cz, fail)
                    triples += 1
                    if fail[0]:
                        break
            if fail[0]:
                break
            q += 1
        if fail[0]:
            break
        p += 1
    mismatch = tuple(int(v) for v in fail) if fail[0] else None
    return ChiSweep(max_product, triples, checked, mismatch)
