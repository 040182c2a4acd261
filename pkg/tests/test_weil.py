import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wordmaps import linalg as L
from wordmaps.construct import construct, legal_deltas
from wordmaps.corpus import get_group, get_table
from wordmaps.cyclo import Cyclotomic
from wordmaps.ff import GF, Poly
from wordmaps.weil import (
    WeilError,
    WeilParams,
    match_weil_rows,
    sp_weil_profile,
    tau_magnitude_hypothesis,
    weil_degree,
    weil_value,
)


def _blockdiag(*blocks):
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n), dtype=np.int64)
    i = 0
    for b in blocks:
        k = b.shape[0]
        out[i:i + k, i:i + k] = b
        i += k
    return out


def test_gl3_identity():
    F = GF(3)
    assert weil_value(WeilParams(1, 3, 3, 0, 0), L.identity(F, 3)) == 12


def test_gu3_identity():
    F9 = GF(3, 2)
    one = L.identity(F9, 3)
    assert weil_value(WeilParams(-1, 3, 3, 0, 0), one) == 6
    for i in (1, 2, 3):
        assert weil_value(WeilParams(-1, 3, 3, i, 0), one) == 7


def test_no_rational_eigenvalue_gives_zero():
    F = GF(3)
    singer = L.companion(F, Poly(F, [1, 2, 0, 1]))     # x^3 + 2x + 1, irreducible
    for i in (1,):
        assert weil_value(WeilParams(1, 3, 3, i, 0), singer).is_zero()


def test_unique_fixed_line():
    F = GF(5)
    p = WeilParams(1, 3, 5, 1, 0)
    block = L.companion(F, Poly(F, [2, 0, 1]))            # x^2 + 2 has no root mod 5
    for l0 in range(4):
        a = int(F.pow(p.root, l0))
        x = _blockdiag(np.array([[a]]), block)
        for i in (1, 2, 3):
            assert weil_value(p.with_indices(i, 0), x) == Cyclotomic.zeta(4, i * l0)


def test_index_range():
    with pytest.raises(WeilError):
        WeilParams(1, 2, 5, 4, 0)
    with pytest.raises(WeilError):
        WeilParams(-1, 2, 3, 0, 4)
    WeilParams(-1, 2, 3, 3, 3)


def test_lambda_factor():
    F = GF(5)
    x = np.diag([2, 1, 1])
    base = weil_value(WeilParams(1, 3, 5, 1, 0), x)
    p = WeilParams(1, 3, 5, 1, 1)
    k = next(k for k in range(4) if F.pow(p.root, k) == 2)
    assert weil_value(p, x) == base * Cyclotomic.zeta(4, k)


@pytest.mark.parametrize("eps,n,q", [(1, 2, 3), (1, 2, 5), (1, 3, 3), (-1, 2, 3), (-1, 3, 2), (-1, 3, 3)])
def test_rows_in_table(eps, n, q):
    name = f"{'GL' if eps == 1 else 'GU'}{n}({q})"
    m = match_weil_rows(get_table(name), get_group(name), eps, n, q)
    assert m.ok, m.unmatched


@pytest.mark.parametrize("eps", [1, -1])
def test_degree_identities(eps):
    for q in (2, 3, 4, 5, 7):
        if eps == 1 and q == 2:
            continue
        top = q - 2 if eps == 1 else q
        for n in range(1, 5):
            F = WeilParams(eps, n, q, 0, 0).field
            one = L.identity(F, n)
            for i in range(top + 1):
                assert weil_value(WeilParams(eps, n, q, i, 0), one) == weil_degree(eps, n, q, i)


def test_sp_profile():
    prof = sp_weil_profile(2, 3)
    assert sorted(prof.degrees) == [4, 4, 5, 5]
    g, _ = construct("Sp", 2, 3)
    assert prof.bound(g.a) == 1
    F = GF(3)
    assert prof.bound(L.identity(F, 4)) == (9 + 1) / 2
    with pytest.raises(WeilError):
        sp_weil_profile(2, 4)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["GL", "GU"]), st.integers(1, 4), st.sampled_from([3, 5, 7]), st.data())
def test_magnitude_on_constructions(fam, n, q, data):
    eps = 1 if fam == "GL" else -1
    d = data.draw(st.sampled_from(legal_deltas(fam, q, eps)))
    g, _ = construct(fam, n, q, eps, d)
    p = WeilParams(eps, n, q, 0, 0)
    if not tau_magnitude_hypothesis(p, g.a):
        return
    top = q - 2 if eps == 1 else q
    for i in range(1, top + 1):
        for j in range(top + 1):
            assert abs(complex(weil_value(p.with_indices(i, j), g.a).to_complex())) <= 1 + 1e-12
