"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line in the summary."""
import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from wordmaps import linalg as L
from wordmaps.breakdec import brute_force_breakable, is_breakable, sample_bound_check
from wordmaps.chartab import (
    check_orthogonality,
    check_power_maps,
    dixon_schneider,
    nonvanishing_profile,
    parse_table,
    structure_tensor_from_table,
    write_table,
)
from wordmaps.classical import build_group
from wordmaps.construct import construction_suite
from wordmaps.corpus import SIMPLE, TWO_ELEMENT, get_group, get_table
from wordmaps.groups import Perm, enumerate_group
from wordmaps.primes import NotCovered, check_special_primes, scan_lemma_pair, special_primes
from wordmaps.weil import WeilParams, match_weil_rows, weil_degree, weil_value
from wordmaps.words import (
    check_det_triple_cover,
    check_k_2element_cover,
    check_xNyN,
    nth_power_classes,
    proportion_divisible,
    sweep_xNyN,
    tail_bound,
)

WEIL_GROUPS = (("GL2(3)", 1, 2, 3), ("GL2(5)", 1, 2, 5), ("GL3(3)", 1, 3, 3),
               ("GU2(3)", -1, 2, 3), ("GU3(2)", -1, 3, 2), ("GU3(3)", -1, 3, 3))
CORPUS = sorted(set(SIMPLE) | set(TWO_ELEMENT) | {"M11"} | {g for g, *_ in WEIL_GROUPS})
PRIME_POWERS = (2, 3, 4, 5, 7, 8, 9)


def _classes_of_order(T, orders):
    return sorted(c for c in range(T.k) if T.orders[c] in orders)


def test_criterion_01_power_words_on_simple_groups(criterion):
    with criterion(1, "x^N y^N surjective on 11 simple groups, all residues of N = p^a r^b") as notes:
        failures = []
        checks = 0
        for name in SIMPLE:
            T = get_table(name)
            for N, res in sweep_xNyN(T, T.order, T.exponent).items():
                checks += 1
                if not res.surjective:
                    failures.append((name, N, res.missed))
        notes.append(f"{checks} (group, N) checks")
        assert not failures, failures


def test_criterion_02_negative_controls(criterion):
    with criterion(2, "negative controls SL2(5) N=20, PSL2(11) N=165, A5 N=30") as notes:
        problems = []
        T = get_table("SL2(5)")
        res = check_xNyN(T, 20)
        brute = check_xNyN(get_group("SL2(5)"), 20)
        order5 = _classes_of_order(T, {5})
        if res.missed != brute.missed:
            problems.append(f"SL2(5): table path {res.missed} vs brute force {brute.missed}")
        if res.surjective or res.missed != order5:
            extra = [(c, T.orders[c]) for c in res.missed if c not in order5]
            problems.append(f"SL2(5) N=20 misses {res.missed}, expected order-5 classes {order5};"
                            f" extra (class, order) = {extra}")
        T = get_table("PSL2(11)")
        res = check_xNyN(T, 165)
        if res.surjective or res.missed != _classes_of_order(T, {11}):
            problems.append(f"PSL2(11) N=165 misses {res.missed}")
        T = get_table("A5")
        if nth_power_classes(T, 30) != {0}:
            problems.append(f"A5 N=30 image {nth_power_classes(T, 30)}")
        notes.extend(problems)
        assert not problems, "; ".join(problems)


def test_criterion_03_two_element_covers(criterion):
    with criterion(3, "products of three 2-elements (quasisimple), of two (A5..A8)"):
        failures = []
        for name in TWO_ELEMENT:
            res = check_k_2element_cover(get_table(name), 3)
            if not res.surjective:
                failures.append((name, 3, res.missed))
        for n in (5, 6, 7, 8):
            res = check_k_2element_cover(get_table(f"A{n}"), 2)
            if not res.surjective:
                failures.append((f"A{n}", 2, res.missed))
        assert not failures, failures


def test_criterion_04_gu33_det_triple(criterion):
    with criterion(4, "GU3(3): xyz with 2-elements x, y, z and det x = det y = 1") as notes:
        G = get_group("GU3(3)")
        assert G.order == 24192
        res = check_det_triple_cover(G)
        notes.append(f"{G.num_classes} classes")
        assert res.surjective, res.missed
        # re-verify one triple per class by multiplying class representatives' classes
        S = G.structure_tensor
        dets = G.class_det()
        for c, (a, b, d) in res.witnesses.items():
            assert dets[a] == dets[b] == 1
            assert all(G.orders[i] & (G.orders[i] - 1) == 0 for i in (a, b, d))
            assert any(S[a, b, e] and S[e, d, c] for e in range(G.num_classes))


def test_criterion_05_weil_characters(criterion):
    with criterion(5, "Weil rows match Dixon tables; degree identities n <= 6, q <= 9") as notes:
        for name, eps, n, q in WEIL_GROUPS:
            m = match_weil_rows(get_table(name), get_group(name), eps, n, q)
            assert m.ok, (name, m.unmatched)
            notes.append(f"{name}:{m.distinct}")
        count = 0
        for eps in (1, -1):
            for q in PRIME_POWERS:
                for n in range(1, 7):
                    p = WeilParams(eps, n, q, 0, 0)
                    one = L.identity(p.field, n)
                    for i in range(q - 1 if eps == 1 else q + 1):
                        v = weil_value(p.with_indices(i, 0), one)
                        assert v.is_rational() and v.rational() == weil_degree(eps, n, q, i), (eps, n, q, i)
                        count += 1
        notes.append(f"{count} degree identities")


def test_criterion_06_construction_suite(criterion):
    with criterion(6, "regular 2-element constructions, n <= 12, q in {3..17}") as notes:
        res = construction_suite()
        notes.append(f"{res.total} certificates")
        assert res.ok, res.failures[:5]


def test_criterion_07_prime_tables(criterion):
    with criterion(7, "special prime sets and the l* pair scan") as notes:
        ok = skipped = 0
        for fam in ("SL", "SU", "Sp", "Spin", "Spin+", "Spin-"):
            for q in PRIME_POWERS:
                for n in range(1, 13):
                    if fam in ("Sp", "Spin+", "Spin-") and n % 2 or fam == "Spin" and n % 2 == 0:
                        continue
                    try:
                        S = special_primes(fam, n, q)
                    except NotCovered:
                        skipped += 1
                        continue
                    chk = check_special_primes(fam, n, q, S)
                    assert chk.ok, (fam, n, q, chk)
                    ok += 1
        notes.append(f"{ok} sets verified, {skipped} outside the table")
        assert special_primes("Sp", 24, 2).primes == (7, 13, 241)
        assert special_primes("Sp", 12, 2).primes == (3, 7, 13)
        assert special_primes("SL", 6, 2).primes == (31,)
        assert special_primes("SL", 7, 2).primes == (127,)
        assert special_primes("SU", 4, 2).primes == (5,)
        violations, _ = scan_lemma_pair(9, 40)
        assert violations == []


def _m11_ingested(m11_fixture):
    gens = [Perm.from_cycles(c, m11_fixture["degree"]) for c in m11_fixture["generators"]]
    G = enumerate_group(gens, label="M11")
    assert G.order == m11_fixture["order"]
    return G, parse_table(write_table(dixon_schneider(G)))


def test_criterion_08_character_engine(criterion, m11_fixture):
    with criterion(8, "table orthogonality, power maps, nonvanishing bound, Frobenius = brute force") as notes:
        tables = {name: get_table(name) for name in CORPUS}
        groups = {name: get_group(name) for name in CORPUS}
        groups["M11 (ingested)"], tables["M11 (ingested)"] = _m11_ingested(m11_fixture)
        exhaustive = 0
        for name, T in tables.items():
            assert check_orthogonality(T).ok, name
            assert sum(d * d for d in T.degrees) == T.order, name
            ok, msg = check_power_maps(T)
            assert ok, (name, msg)
            C = T.centralizer_orders
            for j in range(T.k):
                assert nonvanishing_profile(T, j) <= C[j], (name, j)
            if T.order <= 20_000:
                G = groups[name]
                A = np.asarray(structure_tensor_from_table(T), dtype=np.int64)
                assert np.array_equal(A, G.structure_tensor), name
                exhaustive += 1
        notes.append(f"{len(tables)} tables, {exhaustive} groups compared on all triples")


def _nondegenerate_planes(spec):
    F, n = spec.F, spec.n
    J = np.array(spec.form.gram, dtype=np.int64)
    planes = []
    seen = set()
    for u, v in itertools.combinations(itertools.product(range(F.q), repeat=n), 2):
        U = np.array([u, v], dtype=np.int64).T
        if L.rank(F, U) != 2:
            continue
        R, _ = L.rref(F, U.T)
        key = R.tobytes()
        if key in seen:
            continue
        seen.add(key)
        if L.rank(F, L.matmul(F, L.matmul(F, U.T, J), U)) == 2:
            planes.append(U)
    return planes


def _sp2_perfect(q):
    """Is Sp_2(q) perfect?  Computed from the commutator subgroup of the enumerated group."""
    G = build_group("Sp", 2, q).enumerated
    comm = {G.index(G.element(i).inverse() * G.element(j).inverse() * G.element(i) * G.element(j))
            for i in range(G.order) for j in range(G.order)}
    D = enumerate_group([G.element(i) for i in comm], label="D")
    return D.order == G.order


def test_criterion_09_breakability(criterion):
    with criterion(9, "breakability oracle on Sp4(3); bound samples on GL7(2), GL8(2), GL7(3), Sp8(3)") as notes:
        spec = build_group("Sp", 4, 3)
        G = spec.enumerated
        F = spec.F
        planes = _nondegenerate_planes(spec)
        assert len(planes) == 90
        perfect = _sp2_perfect(3)
        mats = np.stack([G.element(i).a for i in range(G.order)])
        # an invariant nondegenerate plane U; U-perp is then invariant too
        invariant = np.zeros((G.order, len(planes)), dtype=bool)
        scalar_on = np.zeros((G.order, len(planes)), dtype=bool)
        for k, U in enumerate(planes):
            ann = L.left_nullspace(F, U).T               # rows killing U
            img = np.einsum("gij,jk->gik", mats, U) % 3
            invariant[:, k] = ~(np.einsum("ri,gik->grk", ann, img) % 3).any(axis=(1, 2))
            for s in (1, 2):
                scalar_on[:, k] |= ~((img - s * U) % 3).any(axis=(1, 2))
        # breakable iff some split has Sp(U-perp) perfect and (Sp(U) perfect or x|U = +-1)
        oracle = (invariant & perfect & (perfect | scalar_on)).any(axis=1)
        rng = random.Random(0)
        for i in rng.sample(range(G.order), 6):
            assert brute_force_breakable(spec, mats[i]) == oracle[i]
        ours = np.array([bool(is_breakable(spec, mats[i])) for i in range(G.order)])
        notes.append(f"{int(invariant.any(axis=1).sum())} of {G.order} elements fix a nondegenerate plane,"
                     f" {int(oracle.sum())} breakable")
        assert np.array_equal(ours, oracle), np.nonzero(ours != oracle)[0][:10]
        for fam, n, q, lemma in (("GL", 7, 2, "gl2-centralizer"), ("GL", 8, 2, "gl2-centralizer"),
                                 ("GL", 7, 3, "q3-centralizer"), ("Sp", 8, 3, "eigenspace")):
            rep = sample_bound_check(build_group(fam, n, q, verify=False), lemma, samples=10_000, seed=1)
            notes.append(f"{rep.group}: {rep.checked} checked, {rep.skipped} skipped")
            assert rep.ok, rep.summary()
            assert rep.skipped == 0


def test_criterion_10_tail_bound_and_proportion(criterion):
    with criterion(10, "Cauchy-Schwarz tail bound on 10^3 draws per table; A5 proportion 39/60") as notes:
        worst = 0.0
        for name in CORPUS:
            T = get_table(name)
            rng = random.Random(name)
            for _ in range(1000):
                D = rng.randint(1, max(T.degrees) + 1)
                a, b, c = (rng.randrange(T.k) for _ in range(3))
                bound, actual = tail_bound(T, D, a, b, c)
                assert actual <= bound * (1 + 1e-12), (name, D, a, b, c, actual, bound)
                worst = max(worst, actual / bound)
        notes.append(f"max actual/bound = {worst:.3f}")
        assert proportion_divisible(get_group("A5"), {2, 5}) == Fraction(39, 60)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
