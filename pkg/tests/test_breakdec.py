import random

import numpy as np
import pytest

from wordmaps import linalg as L
from wordmaps.breakdec import (
    BreakabilityError,
    brute_force_breakable,
    form_module_decomposition,
    is_breakable,
    omega_perfect,
    sample_bound_check,
    sp_perfect,
    verify_decomposition,
)
from wordmaps.classical import build_group, isometric_basis, membership, random_member
from wordmaps.ff import GF, Poly


def _blockdiag(*blocks):
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n), dtype=np.int64)
    i = 0
    for b in blocks:
        k = b.shape[0]
        out[i:i + k, i:i + k] = b
        i += k
    return out


def _jordan(F, m, lam=1):
    J = np.eye(m, dtype=np.int64) * lam
    for i in range(m - 1):
        J[i, i + 1] = 1
    return J % F.p


def _sp_from_hyperbolic(spec, x0):
    """Transport x0, an isometry of the standard alternating form, into spec's coordinates."""
    F, n = spec.F, spec.n
    h = n // 2
    S = np.zeros((n, n), dtype=np.int64)
    S[:h, h:] = np.eye(h, dtype=np.int64)
    S[h:, :h] = (F.p - 1) * np.eye(h, dtype=np.int64)
    A = isometric_basis(F, spec.G, S, spec.sigma, random.Random(0))
    y = L.matmul(F, L.matmul(F, A, x0), L.inverse(F, A))
    assert membership(spec, y)
    return y


class TestGL42:
    spec = build_group("GL", 4, 2, verify=False)
    F = GF(2)

    def test_one_plus_three(self):
        x = _blockdiag(np.eye(1, dtype=np.int64), L.companion(self.F, Poly(self.F, [1, 1, 0, 1])))
        assert is_breakable(self.spec, x)

    def test_regular_unipotent(self):
        assert not is_breakable(self.spec, _jordan(self.F, 4))

    def test_singer_order_five(self):
        x = L.companion(self.F, Poly(self.F, [1, 1, 1, 1, 1]))
        assert not is_breakable(self.spec, x)

    def test_two_plus_two_forbidden(self):
        f = L.companion(self.F, Poly(self.F, [1, 1, 1]))
        assert not is_breakable(self.spec, _blockdiag(f, f))

    def test_large_q_any_split(self):
        spec = build_group("GL", 4, 5, verify=False)
        F = GF(5)
        f = L.companion(F, Poly(F, [2, 0, 1]))
        assert is_breakable(spec, _blockdiag(f, f))


def test_regular_unipotent_is_single_V():
    for h, q in ((2, 3), (3, 3), (2, 5)):
        spec = build_group("Sp", 2 * h, q, verify=False)
        F = spec.F
        J = _jordan(F, h)
        x0 = np.eye(2 * h, dtype=np.int64)
        x0[:h, :h] = J
        x0[h:, h:] = L.transpose(L.inverse(F, J))
        N = np.zeros((h, h), dtype=np.int64)
        N[h - 1, h - 1] = 1
        x0[:h, h:] = L.matmul(F, J, N)          # couples the halves into one Jordan block
        y = _sp_from_hyperbolic(spec, x0)
        dec = form_module_decomposition(spec, y)
        assert dec.labels() == [f"V({2 * h})"]


def test_paired_odd_jordan_blocks_are_W():
    spec = build_group("Sp", 6, 3, verify=False)
    F = spec.F
    J = _jordan(F, 3)
    y = _sp_from_hyperbolic(spec, _blockdiag(J, L.transpose(L.inverse(F, J))))
    dec = form_module_decomposition(spec, y)
    assert dec.labels() == ["W(3)"]


def test_non_self_dual_pair():
    spec = build_group("Sp", 2, 5, verify=False)
    dec = form_module_decomposition(spec, np.diag([2, 3]))
    assert dec.dims == [2] and dec.atoms[0].tag == "paired"
    ver = verify_decomposition(spec, np.diag([2, 3]), dec)
    assert ver["nondegenerate"] and ver["orthogonal"] and ver["spans"]


@pytest.mark.parametrize("fam,n,q", [("Sp", 4, 3), ("GU", 3, 3), ("SO", 4, 3), ("SO", 5, 3)])
def test_reassembly_is_conjugate(fam, n, q):
    spec = build_group(fam, n, q)
    G = spec.enumerated
    # conjugacy is tested in the full isometry group, where SO classes may fuse
    amb = build_group("GO", n, q, spec.eps).enumerated if fam == "SO" else G
    for c in range(G.num_classes):
        x = G.element(int(G.reps[c]))
        dec = form_module_decomposition(spec, x.a, seed=c)
        assert sum(dec.dims) == n
        ver = verify_decomposition(spec, x.a, dec)
        assert ver["spans"] and ver["nondegenerate"] and ver["orthogonal"]
        y = ver["reassembled"]
        assert amb.class_of(type(x)(spec.F, y)) == amb.class_of(x)


@pytest.mark.parametrize("fam,n,q,eps", [("Sp", 4, 2, 1), ("SO", 4, 3, 1), ("SO", 4, 3, -1), ("SO", 3, 5, 1)])
def test_brute_force_agreement(fam, n, q, eps):
    spec = build_group(fam, n, q, eps)
    G = spec.enumerated
    for c in range(G.num_classes):
        x = G.element(int(G.reps[c]))
        assert bool(is_breakable(spec, x.a)) == brute_force_breakable(spec, x.a), c


@pytest.mark.parametrize("fam,n,q", [("Sp", 6, 3), ("GU", 4, 3), ("SO", 7, 3), ("GL", 6, 2)])
def test_class_function(fam, n, q):
    spec = build_group(fam, n, q, verify=False)
    rng = random.Random(11)
    F = spec.F
    for _ in range(100):
        x, h = random_member(spec, rng), random_member(spec, rng)
        y = L.matmul(F, L.matmul(F, h, x), L.inverse(F, h))
        assert bool(is_breakable(spec, x, seed=1)) == bool(is_breakable(spec, y, seed=2))


def test_perfection_table():
    assert not sp_perfect(2, 2) and not sp_perfect(2, 3) and not sp_perfect(4, 2)
    assert sp_perfect(2, 5) and sp_perfect(4, 3) and sp_perfect(6, 2)
    assert omega_perfect(1, 3, 1)
    assert not omega_perfect(2, 5, 1)
    assert not omega_perfect(3, 3, 1) and omega_perfect(3, 5, 1)
    assert not omega_perfect(4, 3, 1) and omega_perfect(4, 3, -1)
    assert omega_perfect(5, 3, 1)


def test_char2_orthogonal_rejected():
    spec = build_group("GO", 4, 2, 1, verify=False)
    with pytest.raises(BreakabilityError):
        is_breakable(spec, L.identity(spec.F, 4))


def test_sample_bound_small():
    rep = sample_bound_check(build_group("GL", 7, 2, verify=False), "gl2-centralizer", samples=300, seed=4)
    assert rep.ok and rep.samples == 300 and rep.checked + rep.skipped == rep.unbreakable
    rep = sample_bound_check(build_group("Sp", 8, 3, verify=False), "eigenspace", samples=200, seed=4)
    assert rep.ok
    with pytest.raises(BreakabilityError):
        sample_bound_check(build_group("GL", 4, 2, verify=False), "gl2-centralizer", samples=1)
    with pytest.raises(BreakabilityError):
        sample_bound_check(build_group("GL", 7, 2, verify=False), "no-such-bound", samples=1)
