"""Executable checks of the window identities behind the case table.

Everything here is brute force on explicit arrays: ``chi`` is tabulated over
a range covering every argument that occurs, coefficients come from the
streaming kernel, and each claim is tested at every index it speaks about.

Notation, for a conforming triple (``r*t = 1 mod pq``, ``q > p**2``,
``r > pq``) and signs ``Q = +-q``, ``R = +-r``:

* ``I_x = (x-p, x]`` and ``N_M = I_M u I_{M+Q} u I_{M+R} u I_{M+Q+R}``;
* ``S(Q,R;M) = sum_{n in I_M} chi(n) - chi(n+Q) - chi(n+R) + chi(n+Q+R)``;
* ``x_n = <n>_p``, ``x'_Q = p - x_Q``, ``x'_R = p - x_R``.

A triple ``(Q,R;M)`` is *admissible* when ``I_M`` holds a multiple ``l`` of
``r`` with ``chi(l) = 1``, ``chi(l+R) = 0``, and ``I_M u I_{M+Q+R}`` holds a
multiple ``l'`` of ``q`` with ``chi(l') = 1`` and ``chi(l' +- Q) = 0`` for
whichever of ``l' +- Q`` lies in ``N_M``.  Admissible triples split by where
``l'`` sits: ``l' = l`` (case 1), ``l' in I_M`` otherwise (case 2), or
``l' in I_{M+Q+R}`` (case 3).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numba
import numpy as np

from .engine import ChiContext, chi, chi_array, coeff_array, profile_stream
from .errors import NotConformingError, OutOfDomainError
from .modmath import crt_decompose, mod_inverse, next_in_class, next_prime_in_progression
from .theorem3 import TernaryParams, check_conforming, derive_params
from .triple import Triple

LEMMAS = ("L5", "L6", "L10", "L11", "L12", "L14", "completion")
CONFORMING_LEMMAS = ("L10", "L11", "L12", "L14", "completion")
# t = 1 reduces to the flat case; these maxima only claim t > 1
NEEDS_T_ABOVE_1 = ("L11", "L14", "completion")
L1_CAP = 30


@dataclass(frozen=True)
class AuditReport:
    lemma_id: str
    triple: tuple
    instances_checked: int
    passed: bool
    first_counterexample: dict | None = None
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "lemma": self.lemma_id,
            "triple": list(self.triple),
            "instances_checked": self.instances_checked,
            "passed": self.passed,
            "first_counterexample": self.first_counterexample,
            "details": self.details,
        }


# --------------------------------------------------------------------------
# sums over windows


@dataclass(frozen=True)
class SumSpec:
    """One ``S(Q, R; M)`` together with the sign-dependent parameters."""

    q_sign: int
    r_sign: int
    M: int
    context: ChiContext
    params: TernaryParams

    def __post_init__(self):
        if self.q_sign not in (1, -1) or self.r_sign not in (1, -1):
            raise ValueError("signs must be +1 or -1")

    @property
    def p(self):
        return self.context.triple.p

    @property
    def Q(self):
        return self.q_sign * self.context.triple.q

    @property
    def R(self):
        return self.r_sign * self.context.triple.r

    @property
    def x_Q(self):
        return crt_decompose(self.Q, self.context.triple).x

    @property
    def x_R(self):
        return crt_decompose(self.R, self.context.triple).x

    @property
    def y_R(self):
        return crt_decompose(self.R, self.context.triple).y

    @property
    def xp_Q(self):
        return self.p - self.x_Q

    @property
    def xp_R(self):
        return self.p - self.x_R

    @property
    def yp_R(self):
        return self.context.triple.q - self.y_R

    @property
    def eta_R(self):
        return self.params.eta if self.r_sign > 0 else self.params.t - self.params.eta


def conforming_context(p: int, q: int, r: int, strict: bool = True) -> tuple[ChiContext, TernaryParams]:
    params = derive_params(p, q)
    rep = check_conforming(p, params.t, q, r, strict=strict)
    if rep.status.name != "PLUS":
        raise NotConformingError(f"({p},{q},{r}) is not conforming with r*t = 1 (mod pq): {rep.violations}")
    return ChiContext(Triple(p, q, r)), params


def s_sum(spec: SumSpec) -> int:
    ctx, Q, R, p = spec.context, spec.Q, spec.R, spec.p
    total = 0
    for n in range(spec.M - p + 1, spec.M + 1):
        total += chi(n, ctx) - chi(n + Q, ctx) - chi(n + R, ctx) + chi(n + Q + R, ctx)
    return total


# --------------------------------------------------------------------------
# multiples of q and r in the window of a_m


def _window_offsets(q, r):
    return (0, q, r, q + r)


def count_window_multiples(triple, m: int) -> tuple[int, int]:
    """Distinct multiples of ``q`` and of ``r`` among the arguments of ``a_m``.

    The window is ``I_m u I_{m-q} u I_{m-r} u I_{m-q-r}`` for the triple in
    ascending order.
    """
    p, q, r = Triple.of(triple).sorted()
    args = set()
    for off in _window_offsets(q, r):
        args.update(range(m - off - p + 1, m - off + 1))
    return sum(1 for n in args if n % q == 0), sum(1 for n in args if n % r == 0)


def _subrange_multiples(m: np.ndarray, p: int, d: int, offs) -> np.ndarray:
    """Per subrange ``I_{m-off}``, the multiple of ``d`` it holds or a sentinel.

    Requires ``d > p`` so that each subrange holds at most one.
    """
    out = np.empty((len(offs), len(m)), dtype=np.int64)
    for k, off in enumerate(offs):
        x = m - off
        rem = x % d
        out[k] = np.where(rem < p, x - rem, _NONE)
    return out


_NONE = np.iinfo(np.int64).min


def _distinct_count(vals: np.ndarray) -> np.ndarray:
    s = np.sort(vals, axis=0)
    present = s != _NONE
    fresh = np.ones_like(present)
    fresh[1:] = s[1:] != s[:-1]
    return (present & fresh).sum(axis=0)


class _Tables:
    """Coefficients and ``chi`` tabulated for one triple (ascending order)."""

    def __init__(self, triple):
        self.triple = t = Triple.of(triple).sorted()
        self.p, self.q, self.r = t
        self.degree = t.degree
        self.ctx = ChiContext(t)
        self.coeffs = coeff_array(t)
        pad = self.q + self.r + 2 * self.p
        self.lo = -pad
        self.hi = min(self.degree + pad + 1, t.product)
        self.chi = chi_array(self.ctx, self.lo, self.hi)
        self._cum = np.concatenate([[0], np.cumsum(self.chi, dtype=np.int64)])

    def chi_at(self, n):
        n = np.asarray(n, dtype=np.int64)
        if np.any((n < self.lo) | (n >= self.hi)):
            raise IndexError("chi table does not cover the requested arguments")
        return self.chi[n - self.lo].astype(np.int64)

    def a_at(self, m):
        m = np.asarray(m, dtype=np.int64)
        ok = (m >= 0) & (m <= self.degree)
        return np.where(ok, self.coeffs[np.clip(m, 0, self.degree)], 0)

    def window(self, x):
        """``sum_{n in (x-p, x]} chi(n)``."""
        x = np.asarray(x, dtype=np.int64)
        return self._cum[x - self.lo + 1] - self._cum[x - self.p - self.lo + 1]


def _first(mask: np.ndarray) -> int | None:
    idx = np.flatnonzero(mask)
    return int(idx[0]) if len(idx) else None


def audit_L5(tab: _Tables) -> AuditReport:
    p, q, r = tab.p, tab.q, tab.r
    m = np.arange(tab.degree + 1, dtype=np.int64)
    offs = _window_offsets(q, r)
    n_r = _distinct_count(_subrange_multiples(m, p, r, offs))
    n_q = _distinct_count(_subrange_multiples(m, p, q, offs))
    a = tab.a_at(m)
    bad_r = (n_r == 0) & (a != tab.a_at(m - p * q))
    bad_q = (n_q == 0) & (a != tab.a_at(m - p * r))
    checked = int((n_r == 0).sum() + (n_q == 0).sum())
    ce = None
    for bad, shift, kind in ((bad_r, p * q, "no multiple of r"), (bad_q, p * r, "no multiple of q")):
        i = _first(bad)
        if i is not None:
            ce = {"m": i, "condition": kind, "a_m": int(a[i]), "a_shifted": int(tab.a_at(i - shift))}
            break
    return AuditReport("L5", tab.triple.as_tuple(), checked, ce is None, ce)


def audit_L6(tab: _Tables) -> AuditReport:
    p, q, r = tab.p, tab.q, tab.r
    m = np.arange(tab.degree + 1, dtype=np.int64)
    offs = _window_offsets(q, r)
    a = tab.a_at(m)
    checked = 0
    unpaired = 0
    ambiguous = 0
    ce = None
    for d, shift in ((r, p * q), (q, p * r)):
        sub = _subrange_multiples(m, p, d, offs)
        two = _distinct_count(sub) == 2
        lhs = a - tab.a_at(m - shift)
        npairs = np.zeros(len(m), dtype=np.int64)
        good = np.ones(len(m), dtype=bool)
        # l sits in I_m or I_{m-q-r}; its partner l -+ d in I_{m-q} or I_{m-r}
        for ka in (0, 3):
            for kb in (1, 2):
                la, lb = sub[ka], sub[kb]
                ok = two & (la != _NONE) & (lb != _NONE) & (np.abs(la - lb) == d)
                if not ok.any():
                    continue
                npairs += ok
                idx = np.flatnonzero(ok)
                rhs = tab.chi_at(la[idx]) - tab.chi_at(lb[idx])
                good[idx] &= lhs[idx] == rhs
        applicable = two & (npairs > 0)
        # the same pair can be reached through overlapping subranges; what must be unique is the partner
        checked += int(applicable.sum())
        unpaired += int((two & (npairs == 0)).sum())
        ambiguous += int((npairs > 2).sum())
        i = _first(applicable & ~good)
        if ce is None and i is not None:
            ce = {"m": i, "divisor": d, "lhs": int(lhs[i]), "multiples": sorted(set(int(v) for v in sub[:, i] if v != _NONE))}
    details = {"two_multiples_without_partner": unpaired}
    return AuditReport("L6", tab.triple.as_tuple(), checked, ce is None, ce, details)


# --------------------------------------------------------------------------
# the same two checks, fused and swept over every small triple


@numba.njit(cache=True)
def _inverse(a, m):
    old_r, r_ = a % m, m
    old_s, s_ = 1, 0
    while r_:
        k = old_r // r_
        old_r, r_ = r_, old_r - k * r_
        old_s, s_ = s_, old_s - k * s_
    return old_s % m


# stats layout
_T_TRIPLES, _T_L5, _T_L6, _T_L5_BAD, _T_L6_BAD, _T_UNPAIRED, _T_LEAD = 0, 1, 2, 3, 4, 5, 6
_T_FAIL = 7  # p, q, r, m, lemma (5 or 6)
_T_LEN = _T_FAIL + 5


@numba.njit(cache=True)
def _scan_triple(p, q, r, chi, a, stats):
    pq = p * q
    deg = (p - 1) * (q - 1) * (r - 1)
    base = q + r + p
    r_star = _inverse(r % pq, pq)
    qr_inv = _inverse(q * r % p, p)
    chi[:base] = 0
    res, xq, quo, rem = 0, 0, 0, 0
    uq = qr_inv * q
    for n in range(deg + 1):
        chi[n + base] = 1 if (xq <= res and res <= quo) else 0
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
    acc = 0
    for m in range(deg + 1):
        acc += chi[m + base] - chi[m - q + base] - chi[m - r + base] + chi[m - q - r + base]
        k = m - p
        acc -= chi[k + base] - chi[k - q + base] - chi[k - r + base] + chi[k - q - r + base]
        a[m] = acc
    if a[deg] != 1:
        stats[_T_LEAD] += 1
    _check_windows(p, q, r, r, p * q, chi, a, base, deg, stats)
    _check_windows(p, q, r, q, p * r, chi, a, base, deg, stats)
    stats[_T_TRIPLES] += 1


@numba.njit(cache=True)
def _record(stats, p, q, r, m, lemma):
    if stats[_T_FAIL] == 0:
        stats[_T_FAIL], stats[_T_FAIL + 1], stats[_T_FAIL + 2] = p, q, r
        stats[_T_FAIL + 3], stats[_T_FAIL + 4] = m, lemma


@numba.njit(cache=True)
def _check_windows(p, q, r, d, shift, chi, a, base, deg, stats):
    """Both window identities for multiples of ``d`` (``q`` or ``r``).

    Subranges sit at offsets 0, q, r, q+r below ``m``.  Only the two middle
    ones can overlap (when ``r - q < p``), so only they can share a multiple.
    """
    o1, o2, o3 = q % d, r % d, (q + r) % d
    mm = 0
    l5 = l6 = unpaired = 0
    for m in range(deg + 1):
        # remainder of m - off mod d for each subrange, and the multiple it gives
        e0 = mm
        e1 = mm - o1
        if e1 < 0:
            e1 += d
        e2 = mm - o2
        if e2 < 0:
            e2 += d
        e3 = mm - o3
        if e3 < 0:
            e3 += d
        h0, h1, h2, h3 = e0 < p, e1 < p, e2 < p, e3 < p
        v0, v1, v2, v3 = m - e0, m - q - e1, m - r - e2, m - q - r - e3
        count = h0 + h1 + h2 + h3
        if h1 and h2 and v1 == v2:
            count -= 1
        prev = a[m - shift] if m >= shift else 0
        if count == 0:
            l5 += 1
            if a[m] != prev:
                stats[_T_L5_BAD] += 1
                _record(stats, p, q, r, m, 5)
        elif count == 2:
            lhs = a[m] - prev
            pairs = 0
            ok = True
            if h0 and h1 and abs(v0 - v1) == d:
                pairs += 1
                ok &= lhs == chi[v0 + base] - chi[v1 + base]
            if h0 and h2 and abs(v0 - v2) == d:
                pairs += 1
                ok &= lhs == chi[v0 + base] - chi[v2 + base]
            if h3 and h1 and abs(v3 - v1) == d:
                pairs += 1
                ok &= lhs == chi[v3 + base] - chi[v1 + base]
            if h3 and h2 and abs(v3 - v2) == d:
                pairs += 1
                ok &= lhs == chi[v3 + base] - chi[v2 + base]
            if pairs == 0:
                unpaired += 1
            else:
                l6 += 1
                if not ok:
                    stats[_T_L6_BAD] += 1
                    _record(stats, p, q, r, m, 6)
        mm += 1
        if mm == d:
            mm = 0
    stats[_T_L5] += l5
    stats[_T_L6] += l6
    stats[_T_UNPAIRED] += unpaired


@numba.njit(cache=True)
def _scan_r(p, q, max_degree, chi, a, stats):
    r = q + 1
    while (p - 1) * (q - 1) * (r - 1) <= max_degree:
        if _gcd(p, r) == 1 and _gcd(q, r) == 1:
            _scan_triple(p, q, r, chi, a, stats)
        r += 1


@numba.njit(cache=True)
def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class SweepReport:
    max_degree: int
    triples: int
    l5: AuditReport
    l6: AuditReport


def window_lemma_sweep(max_degree: int, p_values=None) -> SweepReport:
    """Check the no-multiple and two-multiple window identities on every
    pairwise coprime ``3 <= p < q < r`` with degree at most ``max_degree``.

    Coefficients are rebuilt inside the sweep from a ``chi`` table, so the
    run also confirms the leading coefficient is 1 for every triple.
    """
    # q + r <= degree + 2p bounds the padding, and r <= degree + 1
    size = 3 * max_degree + 8
    chi = np.zeros(size, dtype=np.int8)
    a = np.zeros(max_degree + 1, dtype=np.int64)
    stats = np.zeros(_T_LEN, dtype=np.int64)
    p = 3
    while (p - 1) * p * (p + 1) <= max_degree:
        if p_values is None or p in p_values:
            q = p + 1
            while (p - 1) * (q - 1) * q <= max_degree:
                if _gcd(p, q) == 1:
                    _scan_r(p, q, max_degree, chi, a, stats)
                q += 1
        p += 1
    fail = None
    if stats[_T_FAIL]:
        fail = {"triple": [int(v) for v in stats[_T_FAIL : _T_FAIL + 3]], "m": int(stats[_T_FAIL + 3])}
    lead = int(stats[_T_LEAD])
    n = int(stats[_T_TRIPLES])
    l5_ce = fail if fail and stats[_T_FAIL + 4] == 5 else None
    l6_ce = fail if fail and stats[_T_FAIL + 4] == 6 else None
    if lead and l5_ce is None:
        l5_ce = {"problem": f"leading coefficient not 1 on {lead} triples"}
    l5 = AuditReport("L5", (), int(stats[_T_L5]), not stats[_T_L5_BAD] and not lead, l5_ce,
                     {"triples": n, "failures": int(stats[_T_L5_BAD])})
    l6 = AuditReport("L6", (), int(stats[_T_L6]), not stats[_T_L6_BAD] and not lead, l6_ce,
                     {"triples": n, "failures": int(stats[_T_L6_BAD]),
                      "two_multiples_without_partner": int(stats[_T_UNPAIRED])})
    return SweepReport(max_degree, n, l5, l6)


# --------------------------------------------------------------------------
# conforming triples


class _Admissible:
    """Tabulate ``S`` and the admissibility conditions for one sign pair."""

    def __init__(self, tab: _Tables, q_sign: int, r_sign: int):
        p, q, r = tab.p, tab.q, tab.r
        Q, R = q_sign * q, r_sign * r
        self.Q, self.R = Q, R
        M = np.arange(tab.degree + 1, dtype=np.int64)
        self.M = M
        self.S = tab.window(M) - tab.window(M + Q) - tab.window(M + R) + tab.window(M + Q + R)

        def in_N(n):
            hit = np.zeros(len(M), dtype=bool)
            for o in (0, Q, R, Q + R):
                hit |= (M + o - p < n) & (n <= M + o)
            return hit

        def lprime_ok(lp, has):
            ok = has & (tab.chi_at(np.where(has, lp, 0)) == 1)
            for sgn in (1, -1):
                nb = lp + sgn * Q
                inside = has & in_N(nb)
                ok &= ~inside | (tab.chi_at(np.where(inside, nb, 0)) == 0)
            return ok

        rem = M % r
        has_l = rem < p
        l = M - rem
        self.l = l
        self.l_ok = has_l & (tab.chi_at(np.where(has_l, l, 0)) == 1) & (tab.chi_at(np.where(has_l, l + R, 0)) == 0)
        rem1 = M % q
        l1 = M - rem1
        ok1 = lprime_ok(l1, rem1 < p)
        x = M + Q + R
        rem2 = x % q
        l2 = x - rem2
        ok2 = lprime_ok(l2, rem2 < p)
        self.l1, self.l2 = l1, l2
        self.case1 = self.l_ok & ok1 & (l1 == l)
        self.case2 = self.l_ok & ok1 & (l1 != l)
        self.case3 = self.l_ok & ok2
        self.member = self.case1 | self.case2 | self.case3


def _sign_pairs():
    return ((1, 1), (-1, -1), (1, -1), (-1, 1))


def _x(n, p):
    return n % p


def _case_params(tab: _Tables, Q: int, R: int):
    p = tab.p
    xQ, xR = _x(Q, p), _x(R, p)
    return xQ, xR, p - xQ, p - xR


def audit_L10(tab: _Tables, params: TernaryParams) -> AuditReport:
    p, r = tab.p, tab.r
    ls = np.arange(0, tab.degree + 1, r, dtype=np.int64)
    ce = None
    for i in range(1, p):
        vals = tab.chi_at(ls + i)
        j = _first(vals != 0)
        if j is not None:
            ce = {"l": int(ls[j]), "i": i, "chi": 1}
            break
    return AuditReport("L10", tab.triple.as_tuple(), len(ls) * (p - 1), ce is None, ce)


def audit_L11(tab: _Tables, params: TernaryParams) -> AuditReport:
    q, r = tab.q, tab.r
    checked, ce, details = 0, None, {}
    for qs, rs in _sign_pairs():
        adm = _Admissible(tab, qs, rs)
        xQ, xR, xpQ, xpR = _case_params(tab, adm.Q, adm.R)
        idx = np.flatnonzero(adm.case1)
        checked += len(idx)
        S = adm.S[idx]
        a = adm.l[idx] // (q * r)
        expected = min(xR + 1, xpR, xpQ)
        observed = int(S.max()) if len(idx) else None
        details[f"{qs:+d}{rs:+d}"] = {"max": observed, "formula": expected, "instances": len(idx)}
        if ce is not None:
            continue
        bound = np.minimum(a, xR) + 1
        bad = (a > xpR - 1) | (a > xpQ - 1) | (S > bound)
        if bad.any():
            i = idx[_first(bad)]
            ce = {"signs": [qs, rs], "M": int(i), "S": int(adm.S[i]), "a": int(adm.l[i] // (q * r))}
        elif observed != expected:
            ce = {"signs": [qs, rs], "max": observed, "expected": expected}
        else:
            attained = set(int(v) for v in a[S == bound])
            want = set(range(0, min(xpR, xpQ)))
            if attained != want:
                ce = {"signs": [qs, rs], "a_attaining_bound": sorted(attained), "expected_a": sorted(want)}
    return AuditReport("L11", tab.triple.as_tuple(), checked, ce is None, ce, details)


def audit_L12(tab: _Tables, params: TernaryParams) -> AuditReport:
    checked, ce, details = 0, None, {}
    for qs, rs in _sign_pairs():
        adm = _Admissible(tab, qs, rs)
        S = adm.S[adm.case2]
        checked += len(S)
        observed = int(S.max()) if len(S) else None
        details[f"{qs:+d}{rs:+d}"] = {"max": observed, "instances": int(len(S))}
        if ce is None and len(S) and observed != 0:
            ce = {"signs": [qs, rs], "max": observed, "expected": 0}
    return AuditReport("L12", tab.triple.as_tuple(), checked, ce is None, ce, details)


def lemma13_instances(tab: _Tables, params: TernaryParams, Q: int, R: int, variant: str = "unprimed"):
    """``(l, M)`` pairs generated from the ``(a, b)`` parametrization of case 3.

    ``variant`` picks the constraint on ``b``: ``"unprimed"`` uses
    ``max(1, x'_Q - a) <= b < x_R``; ``"primed"`` swaps in the primed
    quantities, ``max(1, x_Q - a) <= b < x'_R``.
    """
    p, q, r = tab.p, tab.q, tab.r
    theta, t = params.theta, params.t
    xQ, xR, xpQ, xpR = _case_params(tab, Q, R)
    eta_R = params.eta if R > 0 else t - params.eta
    if variant == "primed":
        b_lo_from, b_hi = xQ, xpR
    else:
        b_lo_from, b_hi = xpQ, xR
    out = set()
    for a in range(0, xpR):
        for b in range(max(1, b_lo_from - a), b_hi):
            y = theta * b + eta_R - t
            if not 0 <= y < q:
                continue
            l = a * q * r + y * p * r
            for M in range(l + p + b - xR, l + p):
                if 0 <= M <= tab.degree:
                    out.add((l, M))
    return out


def audit_L14(tab: _Tables, params: TernaryParams) -> AuditReport:
    p = tab.p
    theta, t = params.theta, params.t
    checked, ce, details = 0, None, {}
    for qs, rs in _sign_pairs():
        adm = _Admissible(tab, qs, rs)
        Q, R = adm.Q, adm.R
        xQ, xR, xpQ, xpR = _case_params(tab, Q, R)
        eta_R = params.eta if rs > 0 else t - params.eta
        idx = np.flatnonzero(adm.case3)
        checked += len(idx)
        expected = min(xpR + 1, xR, xQ)
        observed = int(adm.S[idx].max()) if len(idx) else None
        direct = set(zip(adm.l[idx].tolist(), idx.tolist()))
        variants = {v: lemma13_instances(tab, params, Q, R, v) == direct for v in ("unprimed", "primed")}
        nonempty_unprimed = xQ > 1 and xR > 1
        nonempty_primed = xpQ > 1 and xpR > 1
        details[f"{qs:+d}{rs:+d}"] = {
            "max": observed,
            "formula": expected,
            "instances": len(idx),
            "parametrization_matches": variants,
            "nonempty_iff_xQ_xR_gt_1": nonempty_unprimed == bool(len(idx)),
            "nonempty_iff_primed_gt_1": nonempty_primed == bool(len(idx)),
        }
        if ce is not None:
            continue
        if not variants["unprimed"]:
            ce = {"signs": [qs, rs], "problem": "case-3 instances differ from the (a, b) parametrization"}
            continue
        if nonempty_unprimed != bool(len(idx)):
            ce = {"signs": [qs, rs], "problem": "case 3 nonempty does not match x_Q, x_R > 1"}
            continue
        if not len(idx):
            continue
        if observed != expected:
            ce = {"signs": [qs, rs], "max": observed, "expected": expected}
            continue
        for i in idx:
            l = int(adm.l[i])
            dec = crt_decompose(l, tab.triple)
            a = dec.x
            b, rem = divmod(dec.y - eta_R + t, theta)
            bound = min(xR - b, a + 1) + 1
            if rem or adm.S[i] > bound:
                ce = {"signs": [qs, rs], "M": int(i), "l": l, "S": int(adm.S[i]), "bound": bound}
                break
            M_best = l + p + b - xR
            if adm.S[M_best] != bound:
                ce = {"signs": [qs, rs], "l": l, "M_best": M_best, "S": int(adm.S[M_best]), "bound": bound}
                break
    return AuditReport("L14", tab.triple.as_tuple(), checked, ce is None, ce, details)


def audit_completion(tab: _Tables, params: TernaryParams) -> AuditReport:
    """Overall maximum per sign pair, and the extremes it reproduces."""
    prof = profile_stream(tab.triple)
    maxima = {}
    ce = None
    checked = 0
    for qs, rs in _sign_pairs():
        adm = _Admissible(tab, qs, rs)
        xQ, xR, xpQ, xpR = _case_params(tab, adm.Q, adm.R)
        S = adm.S[adm.member]
        checked += len(S)
        observed = int(S.max()) if len(S) else None
        expected = max(min(xR + 1, xpR, xpQ), min(xpR + 1, xR, xQ))
        maxima[(qs, rs)] = observed
        if ce is None and observed != expected:
            ce = {"signs": [qs, rs], "max": observed, "expected": expected}
    a_plus = max(maxima[(1, 1)], maxima[(-1, -1)])
    neg_a_minus = max(maxima[(1, -1)], maxima[(-1, 1)])
    if ce is None and (a_plus, -neg_a_minus) != (prof.a_plus, prof.a_minus):
        ce = {"from_sums": [-neg_a_minus, a_plus], "computed": [prof.a_minus, prof.a_plus]}
    details = {"maxima": {f"{k[0]:+d}{k[1]:+d}": v for k, v in maxima.items()}, "a_plus": prof.a_plus, "a_minus": prof.a_minus}
    return AuditReport("completion", tab.triple.as_tuple(), checked, ce is None, ce, details)


_CONFORMING = {
    "L10": audit_L10,
    "L11": audit_L11,
    "L12": audit_L12,
    "L14": audit_L14,
    "completion": audit_completion,
}


def audit_lemma(triple, lemma_id: str, tables: _Tables | None = None) -> AuditReport:
    """Run one lemma check exhaustively over its index space.

    Conforming checks take the triple as ``(p, q, r)`` in that role order and
    shift ``r`` by multiples of ``pq`` until ``r > pq`` (the coefficient set
    does not change).
    """
    if lemma_id not in LEMMAS:
        raise ValueError(f"unknown lemma {lemma_id!r}; choose from {LEMMAS}")
    t = Triple.of(triple)
    if lemma_id in ("L5", "L6"):
        tab = tables if tables is not None else _Tables(t)
        return audit_L5(tab) if lemma_id == "L5" else audit_L6(tab)
    p, q, r = t
    while r <= p * q:
        r += p * q
    _, params = conforming_context(p, q, r)
    if params.t == 1 and lemma_id in NEEDS_T_ABOVE_1:
        raise OutOfDomainError(
            f"{lemma_id} is stated for t > 1; with t = 1 the triple is flat and is checked by its profile instead"
        )
    tab = tables if tables is not None and tables.triple == Triple(p, q, r).sorted() else _Tables((p, q, r))
    if (tab.p, tab.q, tab.r) != (p, q, r):
        raise NotConformingError("conforming audits need p < q < r")
    return _CONFORMING[lemma_id](tab, params)


def audit_triples(p: int, cap: int = 10**7) -> list[Triple]:
    """Conforming triples for every ``t`` coprime to ``p``: least prime ``q`` above
    ``p**2`` with ``q = t (mod p)``, and least ``r > pq`` with ``r*t = 1 (mod pq)``."""
    out = []
    for t in range(1, p):
        if gcd(t, p) != 1:
            continue
        q = next_prime_in_progression(t, p, p * p, cap=cap)
        r = next_in_class(mod_inverse(t, p * q), p * q, p * q)
        out.append(Triple(p, q, r))
    return out


def check_L1(n: int, cap: int = L1_CAP) -> bool:
    """Whether ``prod_{i=1..n} (1 + i n)`` has a prime factor above ``2n + 1``."""
    if n < 4:
        raise ValueError(f"n={n} must be >= 4")
    if n > cap:
        raise ValueError(f"n={n} exceeds the configured cap {cap}")
    F = 1
    for i in range(1, n + 1):
        F *= 1 + i * n
    for d in range(2, 2 * n + 2):
        while F % d == 0:
            F //= d
    return F > 1
