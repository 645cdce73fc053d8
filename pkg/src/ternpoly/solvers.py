"""Constructing triples with a prescribed height or diameter.

Every witness is a conforming triple: pick ``t``, take ``q`` the least prime
``= t (mod p)`` above ``p**2`` and ``r`` the least integer above ``q`` with
``r*t = 1 (mod pq)``.  The case table in :mod:`ternpoly.theorem3` then fixes
the extremes, and :func:`verify_witness` recomputes them.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import gcd

from .engine import profile_stream
from .errors import SearchCapExceeded
from .modmath import DEFAULT_SEARCH_CAP, is_prime, mod_inverse, next_in_class, next_prime_in_progression
from .oracle import HeightProfile, profile_from_coeffs, q_poly_coeffs
from .theorem3 import CaseClassification, check_conforming, classify_case
from .triple import Triple

DEFAULT_ORACLE_CAP = 10**6


@dataclass(frozen=True)
class Witness:
    p: int
    t: int
    q: int
    r: int
    target_kind: str
    target_value: int
    classification: CaseClassification
    verified: bool | None = None
    note: str = ""

    @property
    def triple(self) -> Triple:
        return Triple(self.p, self.q, self.r)

    @property
    def degree(self) -> int:
        return self.triple.degree

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "t": self.t,
            "q": self.q,
            "r": self.r,
            "target_kind": self.target_kind,
            "target_value": self.target_value,
            "prediction": self.classification.as_dict(),
            "verified": self.verified,
            "note": self.note,
        }


def build_witness(
    p: int,
    t: int,
    target_kind: str,
    target_value: int,
    prime_r: bool = False,
    cap: int = DEFAULT_SEARCH_CAP,
    note: str = "",
) -> Witness:
    """Conforming ``(p, t, q, r)`` with minimal ``q`` and minimal (or minimal prime) ``r``."""
    q = next_prime_in_progression(t, p, p * p, cap=cap)
    pq = p * q
    r_class = mod_inverse(t, pq)
    if prime_r:
        r = next_prime_in_progression(r_class, pq, q, cap=cap)
    else:
        r = next_in_class(r_class, pq, q)
    cls = classify_case(p, t)
    return Witness(p, t, q, r, target_kind, target_value, cls, note=note)


def _check_height_target(p: int, h: int):
    if p < 3:
        raise ValueError(f"p={p} must be >= 3")
    if h < 1:
        raise ValueError(f"height h={h} must be >= 1")
    if h <= 2:
        return
    if gcd(h - 1, p) != 1:
        raise ValueError(f"gcd(h-1, p) = gcd({h - 1}, {p}) != 1")
    if p % 2:
        if h > (p + 1) // 2:
            raise ValueError(f"h={h} exceeds (p+1)/2 = {(p + 1) // 2}")
    else:
        l = p // 4
        if h % 2 or h > 2 * l:
            raise ValueError(f"for even p={p} only even h <= {2 * l} are covered, got {h}")


def solve_height(
    p: int,
    h: int,
    prime_r: bool = False,
    verify: bool = False,
    cap: int = DEFAULT_SEARCH_CAP,
    oracle_cap: int = DEFAULT_ORACLE_CAP,
) -> Witness:
    """A conforming triple whose height is ``h``.

    ``h = 2`` uses ``t = p-1`` (so ``s = p-1``, ``us = 1``): taking the inverse
    of ``h-1 = 1`` would give ``t = 1`` and a flat polynomial instead.
    """
    _check_height_target(p, h)
    note = ""
    if h == 1:
        t = 1
    elif h == 2:
        t = p - 1
        note = "h=2 uses t=p-1; the inverse of h-1 would give t=1 and height 1"
    else:
        t = mod_inverse(h - 1, p)
    w = build_witness(p, t, "height", h, prime_r=prime_r, cap=cap, note=note)
    assert w.classification.predicted_height == h, (w, h)
    if verify:
        report = verify_witness(w, oracle_cap=oracle_cap)
        w = report.witness
        if not report.ok:
            raise AssertionError(f"witness failed verification: {report.problems}")
    return w


def _pair_partner(a: int, p: int, lo: int, hi: int) -> int | None:
    """The ``b`` in ``[lo, hi]`` with ``a*b = +-1 (mod p)``, if any."""
    inv = mod_inverse(a, p)
    for b in (inv, p - inv):
        if lo <= b <= hi:
            return b
    return None


def sqrt_minus_one(p: int) -> int | None:
    """The ``u`` in ``[2, (p-1)/2]`` with ``u*u = -1 (mod p)``, for primes ``p = 1 (mod 4)``."""
    for u in range(2, (p - 1) // 2 + 1):
        if u * u % p == p - 1:
            return u
    return None


def diameter_rule(p: int, d: int) -> int | None:
    """The smallest ``t`` whose conforming triples have diameter ``d``, or None."""
    if not 2 <= d <= p:
        raise ValueError(f"diameter d={d} must lie in [2, p={p}]")
    half = (p - 1) // 2
    if d == 2:
        return 1
    if d == 3:
        return p - 1
    if d % 2:
        b = (d - 1) // 2
        u = sqrt_minus_one(p)
        if u is not None and b == u:
            return u
        for a in range(2, b + 1):
            if a * b % p in (1, p - 1):
                return a
        return None
    a = (d - 2) // 2
    if a < 2:
        return None
    for b in range(a + 1, half + 1):
        if a * b % p in (1, p - 1):
            return b
    return None


def solve_diameter_for_p(
    p: int, d: int, prime_r: bool = False, verify: bool = False, cap: int = DEFAULT_SEARCH_CAP
) -> Witness | None:
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise ValueError(f"p={p} must be an odd prime")
    t = diameter_rule(p, d)
    if t is None:
        return None
    w = build_witness(p, t, "diameter", d, prime_r=prime_r, cap=cap)
    assert w.classification.predicted_diameter == d, (w, d)
    if verify:
        report = verify_witness(w)
        w = report.witness
        if not report.ok:
            raise AssertionError(f"witness failed verification: {report.problems}")
    return w


def achievable_diameters(p: int) -> set[tuple[int, int]]:
    """``(d, t)`` pairs reachable for the odd prime ``p``."""
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise ValueError(f"p={p} must be an odd prime")
    half = (p - 1) // 2
    out = {(2, 1), (3, p - 1)}
    u = sqrt_minus_one(p) if p % 4 == 1 else None
    if u is not None:
        out.add((2 * u + 1, u))
    for a in range(2, half + 1):
        if a == u:
            continue
        b = _pair_partner(a, p, a + 1, half)
        if b is not None:
            out.add((2 * a + 2, b))
            out.add((2 * b + 1, a))
    return out


def find_p_for_odd_diameter(d: int, cap: int = DEFAULT_SEARCH_CAP) -> tuple[int, int]:
    """First odd prime ``p`` (and smallest ``t``) giving diameter ``d``."""
    if d < 3 or d % 2 == 0:
        raise ValueError(f"d={d} must be odd and >= 3")
    if d == 3:
        return 3, 2
    p = d - 1
    for _ in range(cap):
        p += 1
        if not is_prime(p):
            continue
        t = diameter_rule(p, d)
        if t is not None:
            return p, t
    raise SearchCapExceeded(f"no prime found for odd diameter {d} within {cap} candidates")


@dataclass(frozen=True)
class VerificationReport:
    witness: Witness
    ok: bool
    conforming: bool
    problems: tuple[str, ...]
    engine_profile: HeightProfile | None = None
    oracle_checked: bool = False

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "conforming": self.conforming,
            "problems": list(self.problems),
            "computed": self.engine_profile.as_dict() if self.engine_profile else None,
            "oracle_checked": self.oracle_checked,
        }


def verify_witness(w: Witness, oracle_cap: int = DEFAULT_ORACLE_CAP) -> VerificationReport:
    """Recompute the profile and compare it against the witness's prediction."""
    problems = []
    conf = check_conforming(w.p, w.t, w.q, w.r, strict=True)
    if not conf.conforming:
        problems.extend(conf.violations)
        return VerificationReport(replace(w, verified=False), False, False, tuple(problems))
    expected = classify_case(w.p, w.t)
    if conf.mirrored:
        expected = expected.mirror()
    if expected != w.classification:
        problems.append(f"stored prediction {w.classification.as_dict()} != {expected.as_dict()}")
    got = profile_stream(w.triple)
    if (got.a_minus, got.a_plus) != (expected.predicted_a_minus, expected.predicted_a_plus):
        problems.append(
            f"computed (A-, A+) = ({got.a_minus}, {got.a_plus}), predicted "
            f"({expected.predicted_a_minus}, {expected.predicted_a_plus})"
        )
    target = {"height": got.height, "diameter": got.diameter}.get(w.target_kind)
    if target != w.target_value:
        problems.append(f"computed {w.target_kind} {target} != target {w.target_value}")
    oracle_checked = False
    if w.degree <= oracle_cap:
        oracle_checked = True
        if profile_from_coeffs(q_poly_coeffs(w.triple, cap=oracle_cap)) != got:
            problems.append("oracle and engine profiles disagree")
    ok = not problems
    return VerificationReport(replace(w, verified=ok), ok, True, tuple(problems), got, oracle_checked)


def corollary7_even_diameters(p: int) -> list[int]:
    """Even diameters ``2h`` with ``3 <= h < sqrt(p)``."""
    return [2 * h for h in range(3, p) if h * h < p]


def corollary7_odd_diameters(p: int) -> list[int]:
    """Odd diameters ``p - 2k`` with ``1 <= k < sqrt(p)/2 - 1``."""
    return [p - 2 * k for k in range(1, p) if (2 * k + 2) ** 2 < p]
