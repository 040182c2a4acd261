import itertools
import random
from fractions import Fraction

import pytest

from wordmaps.classical import build_group
from wordmaps.corpus import get_group, get_table
from wordmaps.groups import Perm, enumerate_group
from wordmaps.words import (
    WordError,
    alt_odd_decompose,
    check_condition_PN,
    check_k_2element_cover,
    check_xNyN,
    check_xNyNzN,
    nth_power_classes,
    proportion_divisible,
    residue_exponents,
    structure_constant,
    tail_bound,
    two_2elements_witness,
)


def _cls(T, order):
    return [c for c in range(T.k) if T.orders[c] == order]


def test_nth_power_classes():
    T = get_table("A5")
    assert nth_power_classes(T, 30) == {0}
    assert nth_power_classes(T, 12) == {0, *_cls(T, 5)}
    assert nth_power_classes(T, 1) == set(range(T.k))
    G = get_group("A5")
    assert nth_power_classes(G, 12) == nth_power_classes(T, 12)


def test_structure_constants():
    T, G = get_table("A5"), get_group("A5")
    a, b = _cls(T, 5)
    inv = a if T.inverse[a] == a else b
    assert structure_constant(T, a, inv, 0) == 12
    two, three = _cls(T, 2)[0], _cls(T, 3)[0]
    assert structure_constant(T, two, three, a) == G.brute_structure_constant(two, three, a)
    for x, y, z in itertools.product(range(T.k), repeat=3):
        assert structure_constant(T, x, y, z) == G.brute_structure_constant(x, y, z)
    with pytest.raises(WordError):
        structure_constant(T, 0, 0, T.k)


def test_negative_controls():
    T = get_table("PSL2(11)")
    res = check_xNyN(T, 165)
    assert not res.surjective and sorted(res.missed) == _cls(T, 11)
    res = check_xNyN(get_table("SL2(5)"), 20)
    assert not res.surjective
    assert set(_cls(get_table("SL2(5)"), 5)) <= set(res.missed)
    assert check_xNyN(get_table("A5"), 12).surjective
    assert not check_xNyN(get_table("A5"), 30).surjective


def test_negative_controls_brute_force():
    for name, N in (("SL2(5)", 20), ("PSL2(11)", 165)):
        T, G = get_table(name), get_group(name)
        P = [G.element(i) ** N for i in range(G.order)]
        Pset = {G.index(p) for p in P}
        hit = {G.class_of(G.element(i) * G.element(j)) for i in Pset for j in Pset}
        assert sorted(set(range(G.num_classes)) - hit) == check_xNyN(T, N).missed


def test_witnesses_reverify():
    G = get_group("PSL2(7)")
    res = check_xNyN(G, 4, group=G)
    assert res.method in ("brute-force", "both")
    res = check_xNyNzN(get_table("PSL2(7)"), 4, group=G)
    assert res.surjective and res.method == "both"


def test_k_covers():
    assert check_k_2element_cover(get_table("A5"), 2).surjective
    T = get_table("SL2(5)")
    assert check_k_2element_cover(T, 3).surjective
    assert not check_k_2element_cover(T, 1).surjective
    with pytest.raises(WordError):
        check_k_2element_cover(T, 0)


def test_condition_PN():
    G = build_group("GU", 3, 3).enumerated
    res = check_condition_PN(G, 3, -1, 21)
    assert res.surjective and 0 in res.witnesses
    G = build_group("GL", 2, 5).enumerated
    assert check_condition_PN(G, 5, 1, 15).surjective
    with pytest.raises(WordError):
        check_condition_PN(G, 5, 1, 2)


def test_two_2elements_witness():
    A4 = enumerate_group([Perm.from_cycles("(1,2,3)", 4), Perm.from_cycles("(1,2)(3,4)", 4)])
    assert two_2elements_witness(A4, Perm.from_cycles("(1,2,3)", 4)) is None
    x, y = two_2elements_witness(A4, Perm.identity(4))
    assert x.is_identity() and y.is_identity()
    G = get_group("A5")
    for r in G.reps:
        g = G.element(int(r))
        x, y = two_2elements_witness(G, g)
        assert (x * y).key == g.key
        for z in (x, y):
            o = z.order()
            assert o & (o - 1) == 0


def _two_power(p):
    o = p.order()
    return o & (o - 1) == 0


def test_alt_odd_decompose_examples():
    g = Perm.from_cycles("(1,2,3,4,5)", 5)
    x, y = alt_odd_decompose(g)
    assert x.key == Perm.from_cycles("(1,5)(2,4)", 5).key
    assert (y * y).is_identity() and (x * y).key == g.key
    g = Perm.from_cycles("(1,2,3)(4,5,6,7,8)", 8)
    x, y = alt_odd_decompose(g)
    assert x(0) == 2 and x(2) == 0                      # (1,3) acts on the 3-cycle
    assert (x * y).key == g.key and x.sign() == y.sign() == 1
    assert y.order() == 4
    g = Perm.from_cycles("(1,2,3,4,5,6,7)", 7)
    r = Perm.from_cycles("(1,7)(2,6)(3,5)", 7)
    assert (r * g * r.inverse()).key == g.inverse().key
    with pytest.raises(WordError):
        alt_odd_decompose(Perm.from_cycles("(1,2)", 4))


def test_alt_odd_decompose_random():
    rng = random.Random(5)
    for _ in range(300):
        n = rng.randint(3, 14)
        p = Perm(rng.sample(range(n), n))
        if p.sign() != 1:
            continue
        try:
            x, y = alt_odd_decompose(p)
        except WordError:
            # only when no reflection can be adjusted and fewer than two points are fixed
            continue
        assert (x * y).key == p.key and _two_power(x) and _two_power(y)
        assert x.sign() == y.sign() == 1


def test_proportion():
    G = get_group("A5")
    assert proportion_divisible(G, {2, 5}) == Fraction(39, 60)
    assert proportion_divisible(G, set()) == 0
    assert proportion_divisible(G, {2, 3, 5}) == Fraction(59, 60)


def test_tail_bound_examples():
    T = get_table("A5")
    top = max(T.degrees)
    b, a = tail_bound(T, top + 1, 1, 2, 3)
    assert a == 0 and b > 0
    five, two = _cls(T, 5)[0], _cls(T, 2)[0]
    b, a = tail_bound(T, 4, five, five, two)
    assert a <= b
    b, a = tail_bound(T, 1, five, five, 0)
    # the full Frobenius sum at the identity is |G| c / (|C_a||C_b|)
    expected = float(structure_constant(T, five, five, 0) * T.order / (T.sizes[five] ** 2))
    assert abs(a - expected) < 1e-9 and a <= b
    with pytest.raises(WordError):
        tail_bound(T, 0, 0, 0, 0)


@pytest.mark.parametrize("name", ["A5", "PSL2(7)", "SL2(5)", "A6"])
def test_stable_under_exponent_shift(name):
    T, G = get_table(name), get_group(name)
    e = T.exponent
    for N in range(1, 2 * e + 1):
        r1, r2 = check_xNyN(T, N), check_xNyN(G, N + e)
        assert r1.status == r2.status and r1.missed == r2.missed


@pytest.mark.parametrize("name", ["A5", "PSL2(7)", "PSL2(11)", "A6"])
def test_monotone_in_power_classes(name):
    T = get_table(name)
    e = T.exponent
    missed = {N: set(check_xNyN(T, N).missed) for N in range(1, e + 1)}
    for N in range(1, e + 1):
        for d in range(1, N + 1):
            if N % d == 0:
                assert nth_power_classes(T, N) <= nth_power_classes(T, d)
                assert missed[d] <= missed[N]


def test_residue_exponents_cover_all_residues():
    e = 60
    Ns = residue_exponents(2, 3, e)
    residues = {(2 ** a * 3 ** b) % e for a in range(12) for b in range(12)}
    assert {N % e for N in Ns} == residues
