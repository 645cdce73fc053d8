"""Linear-time, constant-memory coefficient streaming.

A nonnegative integer ``n < pqr`` is *representable* when it is a
nonnegative combination of ``qr``, ``pr`` and ``pq``.  With ``r*`` the
inverse of ``r`` modulo ``pq`` and ``x_n`` the ``qr``-coordinate of ``n``,
``n`` is representable exactly when

    x_n * q  <=  <n r*>_pq  <=  floor(n / r).

The left inequality says that the residue ``<n r*>_pq`` is itself the value
``x_n q + y_n p`` (rather than that value minus ``pq``); without it the test
accepts non-representable numbers such as ``n = 7`` for ``{3, 5, 7}``.

Coefficients follow from a sliding window of width ``p``::

    a_m = sum_{m-p < n <= m} g(n),  g(n) = chi(n) - chi(n-q) - chi(n-r) + chi(n-q-r)

so ``a_m = a_{m-1} + g(m) - g(m-p)``.  The kernel keeps four cursors (one per
shift), each carrying ``<n r*>_pq``, ``x_n q``, ``floor(n/r)`` and ``n mod r``
as running values, plus a ring buffer of the last ``p`` values of ``g``.
Nothing else grows with the degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numba
import numpy as np

from .errors import EngineFault, OutOfDomainError
from .modmath import crt_decompose, mod_inverse
from .oracle import HeightProfile
from .triple import Triple

BLOCK = 1 << 16
KERNEL_LIMIT = 1 << 62

# state layout: m, ring index, a, amin, amax, then 4 cursors x (n, res, xq, quo, rem)
_S_M, _S_J, _S_A, _S_MIN, _S_MAX, _S_CUR = 0, 1, 2, 3, 4, 5
_STATE_LEN = _S_CUR + 4 * 5


@dataclass(frozen=True)
class ChiContext:
    triple: Triple
    r_star: int = field(init=False)
    qr_inv: int = field(init=False)

    def __post_init__(self):
        p, q, r = self.triple
        object.__setattr__(self, "r_star", mod_inverse(r, p * q))
        object.__setattr__(self, "qr_inv", mod_inverse(q * r, p))

    @classmethod
    def of(cls, triple) -> "ChiContext":
        if isinstance(triple, ChiContext):
            return triple
        return cls(Triple.of(triple))

    def f(self, n: int) -> int:
        """``x_n q + y_n p``, which is ``<n r*>_pq`` or that plus ``pq``."""
        p, q, _ = self.triple
        res = n * self.r_star % (p * q)
        xq = (n * self.qr_inv % p) * q
        return res if xq <= res else res + p * q


def chi(n: int, ctx) -> int:
    """1 if ``n`` is a nonnegative combination of qr, pr, pq (for ``n < pqr``)."""
    ctx = ChiContext.of(ctx)
    p, q, r = ctx.triple
    if n >= p * q * r:
        raise OutOfDomainError(f"chi is defined only below pqr = {p * q * r}, got {n}")
    if n < 0:
        return 0
    return int(ctx.f(n) <= n // r)


def chi_via_delta(n: int, triple) -> int:
    triple = Triple.of(triple)
    if not 0 <= n < triple.product:
        raise OutOfDomainError(f"n={n} outside [0, pqr)")
    return int(crt_decompose(n, triple).delta == 0)


def chi_via_delta_array(triple, lo: int, hi: int) -> np.ndarray:
    """``[delta_n == 0]`` on ``range(lo, hi)``, from the full CRT decomposition."""
    p, q, r = Triple.of(triple)
    if lo < 0 or hi > p * q * r:
        raise OutOfDomainError(f"range [{lo}, {hi}) outside [0, pqr)")
    n = np.arange(lo, hi, dtype=np.int64)
    x = n % p * mod_inverse(q * r % p, p) % p
    y = n % q * mod_inverse(p * r % q, q) % q
    z = n % r * mod_inverse(p * q % r, r) % r
    rest = n - x * (q * r) - y * (p * r) - z * (p * q)
    return (rest >= 0).astype(np.int8)


def chi_array(ctx, lo: int, hi: int) -> np.ndarray:
    """Vectorized ``chi`` on ``range(lo, hi)`` as an int8 array."""
    ctx = ChiContext.of(ctx)
    p, q, r = ctx.triple
    if hi > p * q * r:
        raise OutOfDomainError(f"chi is defined only below pqr = {p * q * r}, got range end {hi}")
    n = np.arange(lo, hi, dtype=np.int64)
    pq = p * q
    res = (n % pq) * ctx.r_star % pq
    xq = ((n % p) * ctx.qr_inv % p) * q
    return ((n >= 0) & (xq <= res) & (res <= n // r)).astype(np.int8)


@numba.njit(cache=True, nogil=True)
def _fill(p, q, r, r_star, uq, state, ring, seen, out, count):
    pq = p * q
    m = state[_S_M]
    j = state[_S_J]
    a = state[_S_A]
    amin = state[_S_MIN]
    amax = state[_S_MAX]
    c = _S_CUR
    n0, r0, x0, f0, e0 = state[c], state[c + 1], state[c + 2], state[c + 3], state[c + 4]
    c += 5
    n1, r1, x1, f1, e1 = state[c], state[c + 1], state[c + 2], state[c + 3], state[c + 4]
    c += 5
    n2, r2, x2, f2, e2 = state[c], state[c + 1], state[c + 2], state[c + 3], state[c + 4]
    c += 5
    n3, r3, x3, f3, e3 = state[c], state[c + 1], state[c + 2], state[c + 3], state[c + 4]
    w = p + 1
    for i in range(count):
        g = 0
        if n0 >= 0 and x0 <= r0 and r0 <= f0:
            g += 1
        if n1 >= 0 and x1 <= r1 and r1 <= f1:
            g -= 1
        if n2 >= 0 and x2 <= r2 and r2 <= f2:
            g -= 1
        if n3 >= 0 and x3 <= r3 and r3 <= f3:
            g += 1
        n0 += 1
        n1 += 1
        n2 += 1
        n3 += 1
        r0 += r_star
        r1 += r_star
        r2 += r_star
        r3 += r_star
        if r0 >= pq:
            r0 -= pq
        if r1 >= pq:
            r1 -= pq
        if r2 >= pq:
            r2 -= pq
        if r3 >= pq:
            r3 -= pq
        x0 += uq
        x1 += uq
        x2 += uq
        x3 += uq
        if x0 >= pq:
            x0 -= pq
        if x1 >= pq:
            x1 -= pq
        if x2 >= pq:
            x2 -= pq
        if x3 >= pq:
            x3 -= pq
        e0 += 1
        e1 += 1
        e2 += 1
        e3 += 1
        if e0 == r:
            e0 = 0
            f0 += 1
        if e1 == r:
            e1 = 0
            f1 += 1
        if e2 == r:
            e2 = 0
            f2 += 1
        if e3 == r:
            e3 = 0
            f3 += 1
        a += g - ring[j]
        ring[j] = g
        j += 1
        if j == p:
            j = 0
        if a > amax:
            amax = a
        if a < amin:
            amin = a
        seen[a % w] = 1
        out[i] = a
    state[_S_M] = m + count
    state[_S_J] = j
    state[_S_A] = a
    state[_S_MIN] = amin
    state[_S_MAX] = amax
    c = _S_CUR
    state[c], state[c + 1], state[c + 2], state[c + 3], state[c + 4] = n0, r0, x0, f0, e0
    c += 5
    state[c], state[c + 1], state[c + 2], state[c + 3], state[c + 4] = n1, r1, x1, f1, e1
    c += 5
    state[c], state[c + 1], state[c + 2], state[c + 3], state[c + 4] = n2, r2, x2, f2, e2
    c += 5
    state[c], state[c + 1], state[c + 2], state[c + 3], state[c + 4] = n3, r3, x3, f3, e3


class CoeffStream:
    """Cursor over ``a_0, a_1, ...`` producing fixed-size blocks.

    Memory is ``O(p + block)`` regardless of the degree.  The triple is put
    in ascending order first, so ``p`` (the window width and ring size) is
    the smallest parameter.
    """

    def __init__(self, triple, block: int = BLOCK):
        t = Triple.of(triple).sorted()
        if t.product >= KERNEL_LIMIT:
            raise OutOfDomainError(f"pqr = {t.product} exceeds the kernel's 64-bit bound 2**62")
        self.triple = t
        self.ctx = ChiContext(t)
        self.degree = t.degree
        p, q, r = t
        self._params = (p, q, r, self.ctx.r_star, self.ctx.qr_inv * q)
        state = np.zeros(_STATE_LEN, dtype=np.int64)
        state[_S_MIN] = np.iinfo(np.int64).max
        state[_S_MAX] = np.iinfo(np.int64).min
        for k, off in enumerate((0, q, r, q + r)):
            n = -off
            base = _S_CUR + 5 * k
            state[base] = n
            state[base + 1] = n % (p * q) * self.ctx.r_star % (p * q)
            state[base + 2] = (n % p * self.ctx.qr_inv % p) * q
            state[base + 3] = n // r
            state[base + 4] = n % r
        self._state = state
        self._ring = np.zeros(p, dtype=np.int64)
        # a value v is recorded at v mod (p+1); injective on any run of p+1 integers
        self._seen = np.zeros(p + 1, dtype=np.int8)
        self._out = np.empty(block, dtype=np.int64)

    @property
    def position(self) -> int:
        return int(self._state[_S_M])

    @property
    def done(self) -> bool:
        return self.position > self.degree

    def next_block(self) -> np.ndarray:
        """Next run of coefficients; the returned view is overwritten by the following call."""
        count = min(len(self._out), self.degree + 1 - self.position)
        if count <= 0:
            return self._out[:0]
        _fill(*self._params, self._state, self._ring, self._seen, self._out, count)
        return self._out[:count]

    def blocks(self) -> Iterator[tuple[int, np.ndarray]]:
        while not self.done:
            start = self.position
            yield start, self.next_block()

    def profile(self) -> HeightProfile:
        """Run to the end and summarize; checks contiguity of the values seen."""
        for _ in self.blocks():
            pass
        amin, amax = int(self._state[_S_MIN]), int(self._state[_S_MAX])
        p = self.triple.p
        if int(self._state[_S_A]) != 1:
            raise EngineFault(f"leading coefficient came out as {int(self._state[_S_A])}")
        if amax - amin > p:
            raise EngineFault(f"diameter {amax - amin} exceeds the smallest parameter {p}")
        missing = [v for v in range(amin, amax + 1) if not self._seen[v % (p + 1)]]
        if missing:
            raise EngineFault(f"coefficient values {missing} skipped inside [{amin}, {amax}]")
        return HeightProfile.from_extremes(amax, amin, self.degree)


def coeff_stream(triple, block: int = BLOCK) -> Iterator[tuple[int, int]]:
    """Yield ``(m, a_m)`` for ``m = 0 .. degree`` in order."""
    for start, values in CoeffStream(triple, block).blocks():
        for i, v in enumerate(values.tolist()):
            yield start + i, v


def coeff_array(triple) -> np.ndarray:
    """The whole coefficient vector via the streaming kernel (memory O(degree))."""
    s = CoeffStream(triple)
    out = np.empty(s.degree + 1, dtype=np.int64)
    for start, values in s.blocks():
        out[start : start + len(values)] = values
    return out


def profile_stream(triple) -> HeightProfile:
    return CoeffStream(triple).profile()
