"""The parameter triple of a ternary inclusion-exclusion polynomial."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import InvalidTripleError


@dataclass(frozen=True)
class Triple:
    """Three pairwise coprime integers, each at least 3.

    Order is not significant for the polynomial; :meth:`sorted` gives the
    canonical ascending order used by the engines.
    """

    p: int
    q: int
    r: int

    def __post_init__(self):
        for name in ("p", "q", "r"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise InvalidTripleError(f"{name}={v!r} is not an integer")
            if v < 3:
                raise InvalidTripleError(f"{name}={v} must be >= 3")
        p, q, r = self.p, self.q, self.r
        for a, b in ((p, q), (q, r), (p, r)):
            if gcd(a, b) != 1:
                raise InvalidTripleError(f"{{{p},{q},{r}}} is not pairwise coprime: gcd({a},{b})={gcd(a, b)}")

    @classmethod
    def of(cls, p, q=None, r=None) -> "Triple":
        if isinstance(p, Triple):
            return p
        if q is None:
            p, q, r = p
        return cls(int(p), int(q), int(r))

    def sorted(self) -> "Triple":
        a, b, c = sorted((self.p, self.q, self.r))
        return Triple(a, b, c)

    @property
    def degree(self) -> int:
        return (self.p - 1) * (self.q - 1) * (self.r - 1)

    @property
    def product(self) -> int:
        return self.p * self.q * self.r

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.p, self.q, self.r)

    def __iter__(self):
        return iter((self.p, self.q, self.r))

    def __str__(self):
        return f"{{{self.p},{self.q},{self.r}}}"
