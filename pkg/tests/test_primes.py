import math

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from wordmaps.primes import (
    NotCovered,
    PrimeError,
    center_exponent_D,
    check_special_primes,
    multiplicative_order,
    ppd,
    ppd_star,
    scan_lemma_pair,
    special_primes,
)


def test_ppd_examples():
    assert ppd(2, 6) is None
    assert ppd(2, 10) == 11
    assert ppd(3, 5) == 11
    assert ppd(3, 2) is None          # 3 + 1 is a power of two
    assert ppd(2, 1) is None
    with pytest.raises(PrimeError):
        ppd(1, 3)


def test_ppd_star_examples():
    assert ppd_star(2, 13, -1) == 2731
    assert ppd_star(2, 13, 1) == 8191
    assert ppd_star(2, 14, 1) == 43 * 127
    with pytest.raises(PrimeError):
        ppd_star(2, 5, 1)
    assert ppd_star(2, 5, 1, allow_small=True) == 31


def test_center_exponent():
    assert center_exponent_D(2, 3, "SL") == 432
    assert center_exponent_D(1, 2, "Sp") == 4
    assert center_exponent_D(3, 2, "SU") == 32


def test_special_rows():
    assert special_primes("Sp", 24, 2).primes == (7, 13, 241)
    assert special_primes("Sp", 12, 2).primes == (3, 7, 13)
    assert special_primes("SL", 6, 2).primes == (31,)
    with pytest.raises(NotCovered):
        special_primes("Spin+", 8, 2)


@pytest.mark.parametrize("a", range(2, 10))
def test_ppd_congruence_and_minimality(a):
    for n in range(1, 41):
        p = ppd(a, n)
        if p is None:
            continue
        assert multiplicative_order(a, p) == n
        if p > 2:
            assert p % n == 1 or n == 1
        smaller = [r for r in sympy.primerange(2, min(p, 10 ** 5)) if (a ** n - 1) % r == 0]
        assert all(multiplicative_order(a, r) < n for r in smaller if a % r)


@settings(deadline=None)
@given(st.integers(2, 30), st.integers(1, 30))
def test_ppd_is_primitive(a, n):
    p = ppd(a, n)
    if p is None:
        return
    assert (a ** n - 1) % p == 0
    assert all((a ** i - 1) % p for i in range(1, n))


def test_special_primes_divide_orders():
    checked = 0
    for fam, dims in (("SL", range(4, 13)), ("SU", range(4, 13)), ("Sp", range(6, 13, 2)),
                      ("Spin", range(7, 13, 2)), ("Spin+", range(8, 13, 2)), ("Spin-", range(8, 13, 2))):
        for n in dims:
            for q in (2, 3, 4, 5, 7, 8, 9):
                if fam == "Spin" and q % 2 == 0:
                    continue
                try:
                    S = special_primes(fam, n, q)
                except NotCovered:
                    continue
                res = check_special_primes(fam, n, q, S)
                assert res.ok, (fam, n, q, res.detail)
                checked += 1
    assert checked > 100


def test_scan_examples():
    v, _ = scan_lemma_pair(2, 26)
    assert v == []
    # (26, +) and (13, +) share 8191, which is allowed
    assert math.gcd(ppd_star(2, 26, 1), ppd_star(2, 13, 1)) > 1
