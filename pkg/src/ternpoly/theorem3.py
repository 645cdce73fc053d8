"""Closed-form extremes for the conforming family.

Fix ``p >= 3`` and ``t`` coprime to ``p``.  A triple ``{p, q, r}`` conforms
when ``r > q > p**2``, ``q = t (mod p)`` and ``r*t = 1 (mod pq)``; its mirror
uses ``r'*t = -1 (mod pq)`` instead and has the negated coefficient set.
With ``s = t^-1 mod p``, ``ut = min(t, p-t)`` and ``us = min(s, p-s)``:

====  ==========================================  ===========  ==========
case  condition                                   min coeff    max coeff
====  ==========================================  ===========  ==========
i     t = s = 1                                   -1           1
ii    t > 1, us < ut                              -us-1        us+1
iii   t > 1, us >= ut, (ut,us) = (t,s)/(p-t,p-s)  -us          us+1
iv    t > 1, us >= ut, (ut,us) = (t,p-s)/(p-t,s)  -us-1        us
====  ==========================================  ===========  ==========
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import gcd

from .errors import NotConformingError, NotInvertibleError
from .modmath import mod_inverse


@dataclass(frozen=True)
class TernaryParams:
    p: int
    t: int
    s: int
    theta: int
    eta: int
    ut: int
    us: int


def derive_params(p: int, q: int) -> TernaryParams:
    """Write ``q = theta*p + t`` and ``s*t = eta*p + 1``."""
    if p < 3:
        raise ValueError(f"p={p} must be >= 3")
    if gcd(p, q) != 1:
        raise NotInvertibleError(f"gcd({p}, {q}) = {gcd(p, q)}")
    theta, t = divmod(q, p)
    s = mod_inverse(t, p)
    eta, one = divmod(s * t, p)
    assert one == 1
    return TernaryParams(p=p, t=t, s=s, theta=theta, eta=eta, ut=min(t, p - t), us=min(s, p - s))


class Conformance(str, enum.Enum):
    PLUS = "conforming"
    MINUS = "conforming-mirror"
    NONE = "not-conforming"


@dataclass(frozen=True)
class ConformanceReport:
    status: Conformance
    violations: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def conforming(self) -> bool:
        return self.status is not Conformance.NONE

    @property
    def mirrored(self) -> bool:
        return self.status is Conformance.MINUS


def check_conforming(p: int, t: int, q: int, r: int, strict: bool = True) -> ConformanceReport:
    """Test the conforming conditions clause by clause; never raises.

    With ``strict=False`` the requirement ``q > p**2`` becomes a warning.
    """
    bad, warn = [], []
    if p < 3:
        bad.append(f"p={p} < 3")
    if not 1 <= t <= p - 1:
        bad.append(f"t={t} not in [1, p-1]")
    if gcd(t, p) != 1:
        bad.append(f"gcd(t, p) = {gcd(t, p)} != 1")
    if not q > p * p:
        (bad if strict else warn).append(f"q={q} <= p^2={p * p}")
    if not r > q:
        bad.append(f"r={r} <= q={q}")
    if (q - t) % p:
        bad.append(f"q={q} = {q % p} (mod {p}), not t={t}")
    pq = p * q
    rt = r * t % pq if pq > 0 else None
    status = Conformance.NONE
    if rt == 1 % pq:
        status = Conformance.PLUS
    elif rt == pq - 1:
        status = Conformance.MINUS
    else:
        bad.append(f"r*t = {rt} (mod pq={pq}), not +1 or -1")
    if bad:
        status = Conformance.NONE
    return ConformanceReport(status, tuple(bad), tuple(warn))


@dataclass(frozen=True)
class CaseClassification:
    case_id: str
    predicted_a_minus: int
    predicted_a_plus: int
    predicted_height: int = field(init=False)
    predicted_diameter: int = field(init=False)
    mirrored: bool = False

    def __post_init__(self):
        object.__setattr__(self, "predicted_height", max(self.predicted_a_plus, -self.predicted_a_minus))
        object.__setattr__(self, "predicted_diameter", self.predicted_a_plus - self.predicted_a_minus)

    def mirror(self) -> "CaseClassification":
        return CaseClassification(
            self.case_id, -self.predicted_a_plus, -self.predicted_a_minus, mirrored=not self.mirrored
        )

    @property
    def coeff_set(self) -> frozenset:
        return frozenset(range(self.predicted_a_minus, self.predicted_a_plus + 1))

    def as_dict(self) -> dict:
        return {
            "case": self.case_id,
            "a_minus": self.predicted_a_minus,
            "a_plus": self.predicted_a_plus,
            "height": self.predicted_height,
            "diameter": self.predicted_diameter,
            "mirrored": self.mirrored,
        }


def classify_case(p: int, t: int) -> CaseClassification:
    if p < 3 or not 1 <= t <= p - 1:
        raise ValueError(f"need p >= 3 and 1 <= t <= p-1, got p={p}, t={t}")
    if gcd(t, p) != 1:
        raise NotInvertibleError(f"gcd(t={t}, p={p}) != 1")
    s = mod_inverse(t, p)
    ut, us = min(t, p - t), min(s, p - s)
    if t == 1:
        assert s == 1
        return CaseClassification("i", -1, 1)
    if us < ut:
        return CaseClassification("ii", -us - 1, us + 1)
    same = (ut, us) in ((t, s), (p - t, p - s))
    crossed = (ut, us) in ((t, p - s), (p - t, s))
    assert same != crossed, f"case membership ambiguous for p={p}, t={t}"
    if same:
        return CaseClassification("iii", -us, us + 1)
    return CaseClassification("iv", -us - 1, us)


def predict_profile(p: int, t: int, q: int, r: int, strict: bool = True) -> CaseClassification:
    """Predicted extremes of a conforming triple, mirrored for the ``-1`` family."""
    report = check_conforming(p, t, q, r, strict=strict)
    if not report.conforming:
        raise NotConformingError("; ".join(report.violations))
    cls = classify_case(p, t)
    return cls.mirror() if report.mirrored else cls
