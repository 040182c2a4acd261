import random
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wordmaps.classical import build_group
from wordmaps.groups import (
    CapExceeded,
    Perm,
    alternating_generators,
    cyclic_generators,
    enumerate_group,
    format_matrix,
    parse_matrix,
    random_element,
    symmetric_generators,
)


def A(n):
    return enumerate_group(alternating_generators(n), label=f"A{n}")


def test_composition_applies_right_factor_first():
    f = Perm.from_cycles("(1,2)", 3)
    g = Perm.from_cycles("(2,3)", 3)
    # (fg)(1) = f(g(1)) = f(1) = 2
    assert (f * g)(0) == 1
    assert (g * f)(0) == 2


def test_a4():
    G = enumerate_group([Perm.from_cycles("(1,2,3)", 4), Perm.from_cycles("(1,2)(3,4)", 4)])
    assert G.order == 12 and G.num_classes == 4
    assert sorted(G.sizes) == [1, 3, 4, 4]


def test_sl23():
    G = build_group("SL", 2, 3).enumerated
    assert G.order == 24 and G.num_classes == 7


def test_trivial_group():
    G = enumerate_group([Perm.identity(3)])
    assert G.order == 1 and G.num_classes == 1


def test_class_of_examples():
    S5 = enumerate_group(symmetric_generators(5))
    c = Perm.from_cycles("(1,2,3,4,5)", 5)
    t = Perm([1, 0, 2, 3, 4])
    assert S5.class_of(Perm.identity(5)) == 0
    assert S5.class_of(c) == S5.class_of(t * c * t.inverse())
    # inside A5 the 5-cycles split, and an odd conjugator swaps the halves
    G = A(5)
    assert G.class_of(c) != G.class_of(Perm.from_cycles("(1,3,5,2,4)", 5))
    assert G.class_of(c) != G.class_of(t * c * t.inverse())


def test_power_maps():
    G = A(5)
    assert G.power_class_map(1) == list(range(G.num_classes))
    five = [c for c in range(G.num_classes) if G.orders[c] == 5]
    pm = G.power_class_map(12)
    assert pm[five[0]] == five[1] and pm[five[1]] == five[0]
    S = build_group("SL", 2, 5).enumerated
    pm = S.power_class_map(20)
    for c in range(S.num_classes):
        if S.orders[c] == 3:
            assert S.orders[pm[c]] == 3
        if S.orders[c] == 5:
            assert pm[c] == 0


def test_power_map_periodic():
    for G in (A(5), A(6), build_group("SL", 2, 5).enumerated):
        e = G.exponent
        for N in range(1, 40):
            assert G.power_class_map(N) == G.power_class_map(N + e)


def test_brute_structure_constants():
    G = A(5)
    cls = {o: [c for c in range(G.num_classes) if G.orders[c] == o] for o in (1, 2, 3, 5)}
    a5 = cls[5][0]
    inv = int(G.class_of(G.element(int(G.reps[a5])).inverse()))
    assert G.brute_structure_constant(a5, inv, 0) == 12
    assert G.brute_structure_constant(cls[2][0], cls[3][0], a5) > 0
    C3 = enumerate_group(cyclic_generators(3))
    for a in range(3):
        for b in range(3):
            for c in range(3):
                x, y, z = (C3.element(int(C3.reps[i])) for i in (a, b, c))
                assert (C3.brute_structure_constant(a, b, c) > 0) == (C3.index(x * y) == C3.index(z))


@pytest.mark.parametrize("gens", ["A5", "S4", "SL2(3)", "A6"])
def test_structure_constant_inversion_symmetry(gens):
    G = {"A5": lambda: A(5), "S4": lambda: enumerate_group(symmetric_generators(4)),
         "SL2(3)": lambda: build_group("SL", 2, 3).enumerated, "A6": lambda: A(6)}[gens]()
    assert G.num_classes <= 20
    inv = [int(G.class_of(G.element(int(r)).inverse())) for r in G.reps]
    sizes = G.sizes
    k = G.num_classes
    for a in range(k):
        for b in range(k):
            for c in range(k):
                lhs = G.brute_structure_constant(a, b, c) * sizes[c]
                rhs = G.brute_structure_constant(inv[b], inv[a], inv[c]) * sizes[inv[c]]
                assert lhs == rhs


def test_invariants():
    for G in (A(5), A(6), enumerate_group(symmetric_generators(5)), build_group("GL", 2, 3).enumerated):
        assert sum(G.sizes) == G.order
        orders = [G.element_order_of_id(i) for i in range(G.order)]
        assert G.exponent == np.lcm.reduce(orders)


def test_class_of_constant_on_conjugates():
    G = build_group("SL", 2, 5).enumerated
    rng = random.Random(3)
    for _ in range(1000):
        g = G.element(rng.randrange(G.order))
        h = G.element(rng.randrange(G.order))
        assert G.class_of(h * g * h.inverse()) == G.class_of(g)


def test_random_element_determinism_and_membership():
    gens = alternating_generators(5)
    G = A(5)
    a = random_element(gens, seed=7, burn_in=20)
    b = random_element(gens, seed=7, burn_in=20)
    assert a.key == b.key
    assert G.contains(a)


def test_random_element_distribution():
    G = A(5)
    gens = alternating_generators(5)
    counts = Counter(G.class_of(random_element(gens, seed=s)) for s in range(10_000))
    for c in range(G.num_classes):
        expected = 10_000 * G.sizes[c] / G.order
        assert expected / 5 <= counts[c] <= expected * 5


def test_cap():
    with pytest.raises(CapExceeded):
        enumerate_group(alternating_generators(7), cap=1000)


def test_matrix_literal_roundtrip():
    spec = build_group("GL", 3, 4, verify=False)
    for g in spec.generators:
        assert parse_matrix(format_matrix(spec.F, g.a)).key == g.key


@settings(max_examples=50)
@given(st.permutations(list(range(7))), st.permutations(list(range(7))))
def test_perm_group_laws(p, q):
    f, g = Perm(p), Perm(q)
    assert (f * g).inverse().key == (g.inverse() * f.inverse()).key
    assert (f * f.inverse()).is_identity()
    assert (f * g).sign() == f.sign() * g.sign()
    assert sum(f.cycle_type()) == 7
    assert Perm.from_cycles(f.cycles(), 7).key == f.key
