import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wordmaps.ff import (
    GF,
    FieldError,
    Poly,
    discrete_log,
    embedding,
    factor_poly,
    field_of_order,
    format_element,
    is_irreducible,
    norm_to_subfield,
    parse_element,
    roots,
    trace_to_subfield,
)

FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2)]


@st.composite
def field_and_elements(draw, count=3):
    p, k = draw(st.sampled_from(FIELDS))
    F = GF(p, k)
    return F, [F.element(draw(st.lists(st.integers(0, p - 1), min_size=k, max_size=k))) for _ in range(count)]


@st.composite
def polys(draw):
    p, k = draw(st.sampled_from(FIELDS[:7]))
    F = GF(p, k)
    coeffs = draw(st.lists(st.integers(0, F.q - 1), min_size=2, max_size=9))
    coeffs[-1] = coeffs[-1] or 1
    return Poly(F, coeffs)


def test_f9_arithmetic():
    F = GF(3, 2)
    t = F.element([0, 1])
    assert t * t == F.element(2)
    assert F.element(2) ** 3 == F.element(2)
    assert F.element(2).frobenius() == F.element(2)
    assert norm_to_subfield(t, 1) == GF(3).element(1)


def test_discrete_log_examples():
    F = GF(5)
    assert discrete_log(F.element(4), F.element(2)) == 2
    assert discrete_log(F.element(1), F.element(2)) == 0
    # in F_9 with t^2 = -1: (t+1)^2 = 2t and (t+1)^4 = 2
    G = GF(3, 2)
    g = G.element([1, 1])
    assert discrete_log(G.element(2), g) == 4
    assert g ** 4 == G.element(2)


def test_discrete_log_rejects():
    F = GF(7)
    with pytest.raises(FieldError):
        discrete_log(F.element(0), F.element(3))
    with pytest.raises(FieldError):
        discrete_log(F.element(2), F.element(2))     # 2 has order 3


def test_factor_examples():
    F2, F5 = GF(2), GF(5)
    f = Poly(F2, [1, 1, 1, 1, 1])
    assert factor_poly(f) == [(f, 1)]
    assert is_irreducible(f)
    assert sorted(roots(Poly(F5, [1, 0, 1]))) == [2, 3]
    assert sorted(roots(Poly(F5, [4, 0, 1]))) == [1, 4]
    assert [m for _, m in factor_poly(Poly(F5, [1, 2, 1]))] == [2]


def test_element_literal_roundtrip():
    for p, k in FIELDS:
        F = GF(p, k)
        for c in range(F.q):
            a = F.element(F.digits(c))
            assert parse_element(format_element(a)) == a
    with pytest.raises(FieldError):
        parse_element("3^2:[3,0]")


def test_field_of_order():
    assert field_of_order(9) == GF(3, 2)
    with pytest.raises(FieldError):
        field_of_order(12)


@given(field_and_elements())
def test_field_axioms(data):
    F, (a, b, c) = data
    assert (a + b) * c == a * c + b * c
    assert a * (b * c) == (a * b) * c
    assert a - a == F.element(0)
    if a:
        assert a * a.inverse() == F.element(1)
        assert (F.q - 1) % a.order() == 0


@given(field_and_elements(count=2))
def test_frobenius_is_automorphism(data):
    F, (a, b) = data
    assert (a * b).frobenius() == a.frobenius() * b.frobenius()
    assert (a + b).frobenius() == a.frobenius() + b.frobenius()
    assert a.frobenius(F.k) == a


@given(field_and_elements(count=2))
def test_norm_and_trace_are_homomorphisms(data):
    F, (a, b) = data
    assert norm_to_subfield(a * b, 1) == norm_to_subfield(a, 1) * norm_to_subfield(b, 1)
    assert trace_to_subfield(a + b, 1) == trace_to_subfield(a, 1) + trace_to_subfield(b, 1)


@given(field_and_elements(count=1), st.integers(0, 500))
def test_discrete_log_inverts_pow(data, e):
    F, (a,) = data
    g = F.element(F.digits(F.generator))
    x = g ** e
    assert discrete_log(x, g) == e % (F.q - 1)


@settings(max_examples=150)
@given(polys())
def test_factorization_reassembles(f):
    fac = factor_poly(f)
    prod = Poly.const(f.spec, f.lead())
    for g, m in fac:
        assert g.lead() == 1 and is_irreducible(g)
        for _ in range(m):
            prod = prod * g
    assert prod == f
    assert sum(g.deg * m for g, m in fac) == f.deg


def test_embedding_is_ring_map():
    sub, sup = GF(2, 2), GF(2, 4)
    emb = embedding(sub, sup)
    for a in range(sub.q):
        for b in range(sub.q):
            assert emb(sub.mul(a, b)) == sup.mul(emb(a), emb(b))
            assert emb(sub.add(a, b)) == sup.add(emb(a), emb(b))


@pytest.mark.parametrize("q", [2, 3, 4, 5, 9])
def test_factorization_bulk(q):
    F = field_of_order(q)
    rng = random.Random(q)
    for _ in range(1000):
        deg = rng.randint(1, 12)
        f = Poly(F, [rng.randrange(q) for _ in range(deg)] + [rng.randrange(1, q)])
        prod = Poly.const(F, f.lead())
        for g, m in factor_poly(f, seed=rng.randrange(1 << 30)):
            for _ in range(m):
                prod = prod * g
        assert prod == f


def test_fermat():
    for p, k in FIELDS:
        F = GF(p, k)
        for c in range(1, F.q):
            assert F.pow(c, F.q - 1) == 1
