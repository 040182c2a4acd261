import cmath
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wordmaps.chartab import (
    TableSemanticError,
    TableSyntaxError,
    check_orthogonality,
    check_power_maps,
    dixon_schneider,
    nonvanishing_profile,
    parse_table,
    validate_table,
    write_table,
)
from wordmaps.classical import build_group
from wordmaps.corpus import get_group, get_table
from wordmaps.cyclo import Cyclotomic, format_cyclotomic, parse_cyclotomic
from wordmaps.groups import cyclic_generators, enumerate_group, symmetric_generators

C4_TABLE = """\
group C4
order 4
exponent 4
classes 4
sizes 1 1 1 1
orders 1 2 4 4
inverse 0 1 3 2
powermap 2 0 0 1 1
char 0 1 1 1 1
char 1 1 -1 1*E^1 -1*E^1
char 2 1 1 -1 -1
char 3 1 -1 -1*E^1 1*E^1
"""


def test_cyclic_three():
    T = dixon_schneider(enumerate_group(cyclic_generators(3)))
    assert T.degrees == [1, 1, 1]
    w = Cyclotomic.zeta(3)
    vals = {tuple(str(T.value(i, j)) for j in range(3)) for i in range(3)}
    expected = {tuple(str(w ** (a * b)) for b in range(3)) for a in range(3)}
    # the rows are the three characters of C3 up to the order of the non-identity classes
    assert {frozenset(v) for v in vals} == {frozenset(v) for v in expected}


def test_degrees():
    assert sorted(get_table("A5").degrees) == [1, 3, 3, 4, 5]
    S3 = dixon_schneider(enumerate_group(symmetric_generators(3)))
    assert sorted(S3.degrees) == [1, 1, 2]


@pytest.mark.parametrize("name", ["A5", "SL2(5)", "PSL2(7)", "GL2(3)", "M11"])
def test_table_invariants(name):
    T = get_table(name)
    assert check_orthogonality(T).ok
    assert sum(d * d for d in T.degrees) == T.order
    assert all(T.order % d == 0 for d in T.degrees)
    assert all(T.value(0, j) == 1 for j in range(T.k))
    assert check_power_maps(T)[0]
    for j in range(T.k):
        assert nonvanishing_profile(T, j) <= T.centralizer_orders[j]


def test_perturbed_table_is_rejected():
    T = parse_table(write_table(get_table("A5")))
    T.values[2, 3, 0] += 1
    res = check_orthogonality(T)
    assert not res.ok
    assert res.pair is not None and 3 in res.pair or 2 in res.pair


def test_nonvanishing_examples():
    T = get_table("A5")
    assert nonvanishing_profile(T, 0) == T.k
    five = T.orders.index(5)
    assert nonvanishing_profile(T, five) <= 5
    C2 = dixon_schneider(enumerate_group(cyclic_generators(2)))
    assert nonvanishing_profile(C2, 1) == 2


def test_roundtrip():
    for name in ("A5", "SL2(7)", "GU2(3)"):
        T = get_table(name)
        text = write_table(T)
        U = parse_table(text)
        assert write_table(U) == text
        assert np.array_equal(U.values, T.values)


def test_missing_power_map():
    text = write_table(get_table("A5"))
    broken = "\n".join(line for line in text.splitlines() if not line.startswith("powermap 5"))
    with pytest.raises(TableSemanticError, match="powermap incomplete"):
        parse_table(broken)


def test_syntax_error_has_position():
    text = write_table(get_table("A5")).replace("order 60", "order sixty")
    with pytest.raises(TableSyntaxError, match="line"):
        parse_table(text)


def test_hand_written_c4():
    T = parse_table(C4_TABLE)
    assert T.degrees == [1, 1, 1, 1]
    assert check_orthogonality(T).ok


def test_m11_fixture(m11_fixture):
    from wordmaps.groups import Perm

    gens = [Perm.from_cycles(c, m11_fixture["degree"]) for c in m11_fixture["generators"]]
    G = enumerate_group(gens, label="M11")
    assert G.order == 7920
    T = parse_table(write_table(dixon_schneider(G)))
    assert check_orthogonality(T).ok
    assert sorted(T.degrees) == [1, 10, 10, 10, 11, 16, 16, 44, 45, 55]


def test_dixon_deterministic():
    G = get_group("PSL2(7)")
    assert write_table(dixon_schneider(G, seed=3)) == write_table(dixon_schneider(G, seed=3))
    validate_table(dixon_schneider(G, seed=5))


def test_table_matches_group_classes():
    G = build_group("SL", 2, 3).enumerated
    T = dixon_schneider(G)
    assert T.sizes == list(G.sizes) and T.orders == list(G.orders)


@st.composite
def cyclos(draw, e=12):
    from wordmaps.cyclo import field

    phi = field(e).phi
    return Cyclotomic(e, [Fraction(draw(st.integers(-5, 5)), draw(st.integers(1, 3))) for _ in range(phi)])


@settings(max_examples=60)
@given(cyclos(), cyclos())
def test_cyclotomic_matches_complex(a, b):
    za, zb = complex(a.to_complex()), complex(b.to_complex())
    assert cmath.isclose(complex((a * b).to_complex()), za * zb, abs_tol=1e-9)
    assert cmath.isclose(complex((a + b).to_complex()), za + zb, abs_tol=1e-9)
    assert cmath.isclose(complex(a.conj().to_complex()), za.conjugate(), abs_tol=1e-9)
    assert parse_cyclotomic(format_cyclotomic(a), 12) == a


def test_cyclotomic_basics():
    z = Cyclotomic.zeta(5)
    one = Cyclotomic.integer(5, 1)
    total = one + z + z ** 2 + z ** 3 + z ** 4
    assert total.is_zero()
    assert (z ** 5) == one
    assert (z * z.conj()).rational() == 1
    lo_hi = (z + one).abs_interval()
    assert abs(float(lo_hi.mid) - abs(1 + cmath.exp(2j * cmath.pi / 5))) < 1e-12
    assert float(lo_hi.delta) < 1e-20
