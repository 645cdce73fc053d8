"""Modular arithmetic, CRT coordinates, primality and progression search.

Python integers are unbounded, so every function here is exact for any
input size.  The compiled streaming kernel in :mod:`ternpoly.engine` works
in signed 64-bit words and is safe while ``p*q*r < 2**62``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import NotInvertibleError, SearchCapExceeded
from .triple import Triple

#: Default number of progression members examined before giving up.
DEFAULT_SEARCH_CAP = 10**7

#: Miller-Rabin bases that are deterministic for every n < 2**64.
_MR_BASES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
WORD_LIMIT = 1 << 64


def lnr(n: int, m: int) -> int:
    """Least nonnegative residue of ``n`` modulo ``m``."""
    if m < 1:
        raise ValueError(f"invalid modulus {m}")
    return n % m


def mod_inverse(a: int, m: int) -> int:
    """Return ``x`` in ``[1, m)`` with ``a*x = 1 (mod m)``."""
    if m < 2:
        raise ValueError(f"invalid modulus {m}")
    if gcd(a, m) != 1:
        raise NotInvertibleError(f"{a} is not invertible modulo {m} (gcd {gcd(a, m)})")
    return pow(a, -1, m)


@dataclass(frozen=True)
class CrtDecomposition:
    """Coordinates of ``n = x*qr + y*pr + z*pq + delta*pqr``."""

    x: int
    y: int
    z: int
    delta: int

    def reconstruct(self, triple: Triple) -> int:
        p, q, r = triple
        return self.x * q * r + self.y * p * r + self.z * p * q + self.delta * p * q * r


def crt_decompose(n: int, triple: Triple) -> CrtDecomposition:
    p, q, r = Triple.of(triple)
    x = n * mod_inverse(q * r, p) % p
    y = n * mod_inverse(p * r, q) % q
    z = n * mod_inverse(p * q, r) % r
    rest = n - x * q * r - y * p * r - z * p * q
    delta, check = divmod(rest, p * q * r)
    assert check == 0
    return CrtDecomposition(x, y, z, delta)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for ``0 <= n < 2**64``."""
    if n < 0 or n >= WORD_LIMIT:
        raise ValueError(f"{n} is outside the supported range [0, 2**64)")
    if n < 2:
        return False
    for sp in _SMALL_PRIMES:
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime_in_progression(a: int, m: int, lower: int, cap: int = DEFAULT_SEARCH_CAP) -> int:
    """Smallest prime ``> lower`` congruent to ``a`` modulo ``m``.

    At most ``cap`` members of the progression are tested.
    """
    if m < 1:
        raise ValueError(f"invalid modulus {m}")
    if gcd(a, m) != 1:
        raise NotInvertibleError(f"progression {a} mod {m} contains at most one prime (gcd {gcd(a, m)})")
    n = lower + 1 + (a - lower - 1) % m
    for _ in range(cap):
        if is_prime(n):
            return n
        n += m
    raise SearchCapExceeded(f"no prime = {a} mod {m} above {lower} within {cap} candidates")


def next_in_class(a: int, m: int, lower: int) -> int:
    """Smallest integer ``> lower`` congruent to ``a`` modulo ``m``."""
    return lower + 1 + (a - lower - 1) % m


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, v in enumerate(sieve) if v]
