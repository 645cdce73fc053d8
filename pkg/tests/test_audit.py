from math import gcd

import numpy as np
import pytest

from conftest import triples_up_to_degree
from ternpoly.audit import (
    LEMMAS,
    SumSpec,
    _Tables,
    audit_L5,
    audit_L6,
    audit_L11,
    audit_L14,
    audit_lemma,
    audit_triples,
    check_L1,
    conforming_context,
    count_window_multiples,
    lemma13_instances,
    s_sum,
    window_lemma_sweep,
)
from ternpoly.engine import coeff_array
from ternpoly.errors import NotConformingError, OutOfDomainError


@pytest.fixture(scope="module")
def t5():
    ctx, params = conforming_context(5, 37, 278)
    return ctx, params, coeff_array((5, 37, 278))


def test_s_sum_reproduces_coefficients(t5):
    ctx, params, a = t5
    r = 278
    for m in range(0, len(a), 97):
        assert s_sum(SumSpec(-1, -1, m, ctx, params)) == a[m]
        assert s_sum(SumSpec(-1, 1, m - r, ctx, params)) == -a[m]


def test_sumspec_identities(t5):
    ctx, params, _ = t5
    p, q = 5, 37
    for qs in (1, -1):
        for rs in (1, -1):
            sp = SumSpec(qs, rs, 0, ctx, params)
            assert sp.xp_Q == p - sp.x_Q and sp.xp_R == p - sp.x_R and sp.yp_R == q - sp.y_R
            # x_R q + y_R p = eps_R + pq and x_R theta + y_R + eta_R = q
            assert sp.x_R * q + sp.y_R * p == rs + p * q
            assert sp.x_R * params.theta + sp.y_R + sp.eta_R == q
    assert SumSpec(1, 1, 0, ctx, params).x_Q == params.t
    assert SumSpec(1, 1, 0, ctx, params).x_R == params.s
    with pytest.raises(ValueError):
        SumSpec(2, 1, 0, ctx, params)


def test_window_multiples():
    assert count_window_multiples((3, 5, 7), 0)[0] >= 1
    assert count_window_multiples((3, 5, 7), 0)[1] >= 1
    for m in range(0, 5 * 37 * 277, 7):
        cq, cr = count_window_multiples((5, 37, 278), m)
        assert cq in (0, 2) and cr in (0, 2)


def test_window_multiples_by_hand():
    # m = 20 on {3,5,7}: windows (17,20], (12,15], (10,13], (5,8] hold 20, 15 and 14, 7
    assert count_window_multiples((3, 5, 7), 20) == (2, 2)


def test_small_lemmas_on_example():
    for lid in ("L5", "L6"):
        rep = audit_lemma((3, 5, 7), lid)
        assert rep.passed and rep.instances_checked > 0


def test_l11_l12_example():
    rep = audit_lemma((5, 37, 93), "L11")
    assert rep.passed and rep.triple == (5, 37, 278)
    for v in rep.details.values():
        assert v["max"] == v["formula"]
    rep = audit_lemma((5, 37, 93), "L12")
    assert rep.passed
    assert all(v["max"] == 0 for v in rep.details.values() if v["instances"])


def test_l14_parametrization_variant():
    rep = audit_lemma((5, 37, 278), "L14")
    assert rep.passed
    for v in rep.details.values():
        assert v["parametrization_matches"]["unprimed"]
        assert v["nonempty_iff_xQ_xR_gt_1"]


def test_primed_variant_disagrees_somewhere():
    tab = _Tables((5, 37, 278))
    _, params = conforming_context(5, 37, 278)
    direct = lemma13_instances(tab, params, 37, 278, "unprimed")
    primed = lemma13_instances(tab, params, 37, 278, "primed")
    assert direct != primed


def test_all_conforming_lemmas_small_p():
    for p in (3, 5):
        for t in audit_triples(p):
            tab = _Tables(t)
            for lid in LEMMAS[2:]:
                try:
                    rep = audit_lemma(t, lid, tables=tab)
                except OutOfDomainError:
                    assert t.q % p == 1
                    continue
                assert rep.passed, (t, lid, rep.first_counterexample)


def test_t_equal_one_is_outside_the_maxima():
    t = audit_triples(5)[0]
    assert t.q % 5 == 1
    with pytest.raises(OutOfDomainError):
        audit_lemma(t, "L11")
    # the case-1 and case-3 formulas really do overshoot here
    _, params = conforming_context(*t)
    tab = _Tables(t)
    assert not audit_L11(tab, params).passed
    assert not audit_L14(tab, params).passed
    assert audit_lemma(t, "L12").passed and audit_lemma(t, "L10").passed


def test_non_conforming_rejected():
    with pytest.raises(NotConformingError):
        audit_lemma((5, 37, 94), "L11")
    with pytest.raises(ValueError):
        audit_lemma((3, 5, 7), "L99")


def test_corrupted_coefficients_are_caught():
    tab = _Tables((5, 7, 11))
    assert audit_L5(tab).passed and audit_L6(tab).passed
    tab.coeffs = tab.coeffs.copy()
    tab.coeffs[100] += 1
    assert not audit_L5(tab).passed or not audit_L6(tab).passed


def test_sweep_matches_per_triple_audits():
    bound = 3000
    triples = triples_up_to_degree(bound)
    l5 = l6 = 0
    for t in triples:
        tab = _Tables(t)
        a, b = audit_L5(tab), audit_L6(tab)
        assert a.passed and b.passed
        l5 += a.instances_checked
        l6 += b.instances_checked
    sweep = window_lemma_sweep(bound)
    assert sweep.triples == len(triples)
    assert (sweep.l5.instances_checked, sweep.l6.instances_checked) == (l5, l6)
    assert sweep.l5.passed and sweep.l6.passed
    assert sweep.l6.details["two_multiples_without_partner"] == 0


def test_audit_triples_shape():
    for p in (3, 5, 7):
        ts = audit_triples(p)
        assert len(ts) == sum(1 for t in range(1, p) if gcd(t, p) == 1)
        for tr in ts:
            assert tr.q > p * p and tr.r > p * tr.q
            assert tr.r * (tr.q % p) % (p * tr.q) == 1


@pytest.mark.parametrize("n", [4, 5, 12])
def test_check_L1_examples(n):
    assert check_L1(n)


def test_check_L1_by_factoring():
    # independent: largest prime factor of F(n) by full trial division
    def largest_prime_factor(x):
        best, d = 1, 2
        while d * d <= x:
            while x % d == 0:
                best, x = d, x // d
            d += 1
        return max(best, x)

    for n in range(4, 12):
        F = 1
        for i in range(1, n + 1):
            F *= 1 + i * n
        assert check_L1(n) == (largest_prime_factor(F) > 2 * n + 1)


def test_check_L1_limits():
    with pytest.raises(ValueError):
        check_L1(3)
    with pytest.raises(ValueError):
        check_L1(31)


def test_report_dict():
    d = audit_lemma((3, 5, 7), "L5").as_dict()
    assert d["lemma"] == "L5" and d["passed"] and d["first_counterexample"] is None
    assert isinstance(np.int64(d["instances_checked"]), np.int64)


def test_compiled_window_check_catches_corrupted_coefficients():
    from ternpoly.audit import _T_L5_BAD, _T_L6_BAD, _T_LEN, _check_windows, _scan_triple

    p, q, r = 5, 7, 11
    deg = (p - 1) * (q - 1) * (r - 1)
    base = p + q + r
    chi = np.zeros(base + deg + 1, dtype=np.int8)
    a = np.zeros(deg + 1, dtype=np.int64)
    stats = np.zeros(_T_LEN, dtype=np.int64)
    _scan_triple(p, q, r, chi, a, stats)
    assert stats[_T_L5_BAD] == 0 and stats[_T_L6_BAD] == 0
    a[deg // 2 :] += 3
    stats[:] = 0
    _check_windows(p, q, r, r, p * q, chi, a, base, deg, stats)
    _check_windows(p, q, r, q, p * r, chi, a, base, deg, stats)
    assert stats[_T_L5_BAD] + stats[_T_L6_BAD] > 0
