import sys
from math import gcd

import pytest


def small_triples(bound=40):
    """Pairwise coprime 3 <= p < q < r <= bound."""
    out = []
    for p in range(3, bound + 1):
        for q in range(p + 1, bound + 1):
            if gcd(p, q) != 1:
                continue
            for r in range(q + 1, bound + 1):
                if gcd(p, r) == 1 and gcd(q, r) == 1:
                    out.append((p, q, r))
    return out


def trial_division_is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@pytest.fixture(scope="session")
def corpus40():
    return small_triples(40)


def triples_up_to_degree(bound):
    """Pairwise coprime 3 <= p < q < r with (p-1)(q-1)(r-1) <= bound."""
    out = []
    p = 3
    while (p - 1) * p * (p + 1) <= bound:
        q = p + 1
        while (p - 1) * (q - 1) * q <= bound:
            if gcd(p, q) == 1:
                r = q + 1
                while (p - 1) * (q - 1) * (r - 1) <= bound:
                    if gcd(p, r) == 1 and gcd(q, r) == 1:
                        out.append((p, q, r))
                    r += 1
            q += 1
        p += 1
    return out


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
