"""Ground-truth coefficients by exact polynomial arithmetic.

The polynomial is

    (x^pqr - 1)(x^p - 1)(x^q - 1)(x^r - 1)
    ---------------------------------------
    (x^pq - 1)(x^qr - 1)(x^rp - 1)(x - 1)

and it is computed here the slow, obvious way: expand the numerator densely,
then divide by each binomial ``x^k - 1`` in turn and insist that nothing is
left over.  Nothing in this module shares code with the streaming engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DegreeCapExceeded, EngineFault
from .triple import Triple

DEFAULT_DEGREE_CAP = 10**7

# every intermediate stays below this in absolute value, so int64 cumsums are exact
_SAFE = 1 << 62


@dataclass(frozen=True)
class CoeffVector:
    coefficients: np.ndarray
    degree: int

    def __post_init__(self):
        if len(self.coefficients) != self.degree + 1:
            raise ValueError("coefficient vector length must be degree + 1")

    def __len__(self):
        return len(self.coefficients)

    def __getitem__(self, m):
        return self.coefficients[m]

    def tolist(self) -> list[int]:
        return [int(c) for c in self.coefficients]


@dataclass(frozen=True)
class HeightProfile:
    """Extremes of the coefficient sequence.

    ``coeff_set`` is always the full integer interval ``[a_minus, a_plus]``;
    constructors check this rather than assume it.
    """

    a_plus: int
    a_minus: int
    height: int
    diameter: int
    coeff_set: frozenset
    degree: int | None = None

    @classmethod
    def from_extremes(cls, a_plus: int, a_minus: int, degree: int | None = None) -> "HeightProfile":
        a_plus, a_minus = int(a_plus), int(a_minus)
        return cls(
            a_plus=a_plus,
            a_minus=a_minus,
            height=max(a_plus, -a_minus),
            diameter=a_plus - a_minus,
            coeff_set=frozenset(range(a_minus, a_plus + 1)),
            degree=degree,
        )

    def as_dict(self) -> dict:
        return {
            "degree": self.degree,
            "a_plus": self.a_plus,
            "a_minus": self.a_minus,
            "height": self.height,
            "diameter": self.diameter,
            "coeff_set": sorted(self.coeff_set),
        }


def _mul_binomial(c: np.ndarray, k: int, sign: int = -1) -> np.ndarray:
    """Multiply by ``x^k + sign``."""
    out = np.zeros(len(c) + k, dtype=np.int64)
    out[k:] += c
    out[: len(c)] += sign * c
    return out


def _div_binomial(c: np.ndarray, k: int) -> np.ndarray:
    """Exact division by ``x^k - 1``; raises if the remainder is nonzero.

    From ``c = (x^k - 1) * Q`` we get ``Q_j = Q_{j-k} - c_j``, i.e. a negated
    running sum along each residue class mod ``k``.
    """
    n = len(c)
    if int(np.abs(c).sum()) >= _SAFE:
        raise EngineFault("intermediate coefficients too large for exact int64 division")
    rows = -(-n // k)
    padded = np.zeros(rows * k, dtype=np.int64)
    padded[:n] = c
    q = -np.cumsum(padded.reshape(rows, k), axis=0).reshape(-1)[:n]
    # q now satisfies c = x^k q - q over indices < n; it is a polynomial
    # quotient only if the top k entries vanish
    if n <= k or np.any(q[n - k :]):
        raise EngineFault(f"nonzero remainder dividing by x^{k} - 1")
    return q[: n - k]


def q_poly_coeffs(triple, cap: int = DEFAULT_DEGREE_CAP) -> CoeffVector:
    """All coefficients ``a_0 .. a_deg`` of the inclusion-exclusion polynomial."""
    t = Triple.of(triple).sorted()
    p, q, r = t
    deg = t.degree
    if deg > cap:
        raise DegreeCapExceeded(f"degree {deg} exceeds oracle cap {cap}")
    c = np.array([1], dtype=np.int64)
    for k in (p * q * r, p, q, r):
        c = _mul_binomial(c, k)
    for k in (p * q, q * r, r * p, 1):
        c = _div_binomial(c, k)
    if len(c) != deg + 1:
        raise EngineFault(f"quotient has degree {len(c) - 1}, expected {deg}")
    return CoeffVector(c, deg)


def profile_from_coeffs(coeffs) -> HeightProfile:
    """Height profile of an explicit coefficient sequence."""
    if isinstance(coeffs, CoeffVector):
        arr, degree = coeffs.coefficients, coeffs.degree
    else:
        arr = np.asarray(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs, dtype=np.int64)
        degree = len(arr) - 1
    if len(arr) == 0:
        raise ValueError("empty coefficient vector")
    values = set(int(v) for v in np.unique(arr))
    prof = HeightProfile.from_extremes(max(values), min(values), degree)
    if values != prof.coeff_set:
        raise EngineFault(f"coefficient set {sorted(values)} is not an integer interval")
    return prof


def is_self_reciprocal(coeffs: Iterable[int]) -> bool:
    arr = np.asarray(coeffs)
    return bool(np.array_equal(arr, arr[::-1]))
