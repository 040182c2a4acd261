"""Power-word surjectivity, 2-element product coverage and related class-level checks.

All positivity decisions use exact integers: structure constants come either
from the character table (multi-prime exact Frobenius sums) or from brute-force
class multiplication on an enumerated group.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np
import sympy

from .chartab import CharacterTable, structure_tensor_from_table
from .cyclo import Cyclotomic
from .groups import EnumeratedGroup, Perm

SURJECTIVE, NOT_SURJECTIVE, INCONCLUSIVE = "surjective", "not-surjective", "inconclusive"


class WordError(ValueError):
    pass


@dataclass
class WordCheckResult:
    status: str
    witnesses: dict = field(default_factory=dict)      # class -> tuple of classes
    missed: list = field(default_factory=list)
    method: str = "character-formula"
    note: str = ""

    @property
    def surjective(self) -> bool:
        return self.status == SURJECTIVE


# ---------------------------------------------------------------------------
# class data shared by tables and enumerated groups

_TENSORS: dict[int, tuple[object, np.ndarray]] = {}


def class_tensor(target) -> np.ndarray:
    """S[a, b, c] = #{(x, y) in C_a x C_b : xy = z} for a fixed z in C_c."""
    key = id(target)
    hit = _TENSORS.get(key)
    if hit is not None and hit[0] is target:
        return hit[1]
    if isinstance(target, CharacterTable):
        S = structure_tensor_from_table(target)
    elif isinstance(target, EnumeratedGroup):
        S = target.structure_tensor
    else:
        raise WordError("target must be a CharacterTable or an EnumeratedGroup")
    S = np.asarray(S, dtype=object)
    _TENSORS[key] = (target, S)
    return S


def _num_classes(target) -> int:
    return target.k if isinstance(target, CharacterTable) else target.num_classes


def _orders(target) -> list[int]:
    return list(target.orders)


def _method(target) -> str:
    return "character-formula" if isinstance(target, CharacterTable) else "brute-force"


def nth_power_classes(target, N: int) -> set[int]:
    """Classes of g^N as g ranges over the group."""
    if N < 0:
        raise WordError("N must be nonnegative")
    if isinstance(target, CharacterTable):
        pm = target.power_map(N)
        if pm is None:
            raise WordError(f"table lacks a power map needed for N = {N}")
        return set(pm)
    if isinstance(target, EnumeratedGroup):
        return set(target.power_class_map(N))
    raise WordError("target must be a CharacterTable or an EnumeratedGroup")


def structure_constant(T, a: int, b: int, c: int) -> Fraction:
    """(|C_a||C_b|/|G|) sum_chi chi(a) chi(b) conj(chi(c)) / chi(1), exactly."""
    if isinstance(T, EnumeratedGroup):
        return Fraction(T.brute_structure_constant(a, b, c))
    k = T.k
    if not all(0 <= i < k for i in (a, b, c)):
        raise WordError("class index out of range")
    total = Cyclotomic.integer(T.exponent, 0)
    for chi in range(k):
        total = total + T.value(chi, a) * T.value(chi, b) * T.value(chi, c).conj() / T.degrees[chi]
    if not total.is_rational():
        raise WordError("Frobenius sum is not rational: table corrupted")
    return total.rational() * T.sizes[a] * T.sizes[b] / T.order


def _verify_witnesses(G: EnumeratedGroup, res: WordCheckResult) -> None:
    for c, w in res.witnesses.items():
        if len(w) == 2:
            ok = G.brute_structure_constant(w[0], w[1], c) > 0
        else:
            S = class_tensor(G)
            ok = any(S[w[0], w[1], e] and S[e, w[2], c] for e in range(G.num_classes))
        if not ok:
            raise WordError(f"witness for class {c} fails brute-force verification")
    res.method = "both" if res.method == "character-formula" else res.method


def _cover_pairs(S, A: list[int], B: list[int], k: int) -> dict:
    """c -> (a, b) with a in A, b in B and S[a, b, c] > 0 (first found)."""
    out: dict = {}
    for a in A:
        for b in B:
            for c in np.nonzero(np.asarray(S[a, b] > 0, dtype=bool))[0]:
                out.setdefault(int(c), (a, b))
        if len(out) == k:
            break
    return out


def _result(k: int, wit: dict, method: str) -> WordCheckResult:
    missed = [c for c in range(k) if c not in wit]
    return WordCheckResult(NOT_SURJECTIVE if missed else SURJECTIVE, dict(sorted(wit.items())), missed, method)


def check_xNyN(target, N: int, group: EnumeratedGroup | None = None) -> WordCheckResult:
    """Is every class hit by x^N y^N?  With `group`, witnesses are re-verified by brute force."""
    try:
        P = sorted(nth_power_classes(target, N))
    except WordError as exc:
        return WordCheckResult(INCONCLUSIVE, method=_method(target), note=str(exc))
    k = _num_classes(target)
    res = _result(k, _cover_pairs(class_tensor(target), P, P, k), _method(target))
    if group is not None:
        _verify_witnesses(group, res)
    return res


def check_xNyNzN(target, N: int, group: EnumeratedGroup | None = None) -> WordCheckResult:
    try:
        P = sorted(nth_power_classes(target, N))
    except WordError as exc:
        return WordCheckResult(INCONCLUSIVE, method=_method(target), note=str(exc))
    k = _num_classes(target)
    S = class_tensor(target)
    two = _cover_pairs(S, P, P, k)
    three = _cover_pairs(S, sorted(two), P, k)
    wit = {c: two[e] + (d,) for c, (e, d) in three.items()}
    res = _result(k, wit, _method(target))
    if group is not None:
        _verify_witnesses(group, res)
    return res


def two_element_classes(target) -> list[int]:
    return [c for c, o in enumerate(_orders(target)) if o & (o - 1) == 0]


def check_k_2element_cover(target, k: int) -> WordCheckResult:
    """Which classes are products of k elements of 2-power order?  Witness: the chain of classes."""
    if k < 1:
        raise WordError("k must be positive")
    S = class_tensor(target)
    kk = _num_classes(target)
    two = two_element_classes(target)
    reach: dict = {c: (c,) for c in two}
    for _ in range(k - 1):
        step = _cover_pairs(S, sorted(reach), two, kk)
        reach = {c: reach[e] + (d,) for c, (e, d) in step.items()}
    return _result(kk, reach, _method(target))


def cube_class_cover(T: CharacterTable, s: int) -> list[int]:
    """Classes c with sum_chi chi(s)^3 conj(chi(c)) / chi(1)^2 != 0, i.e. c inside (s^G)^3."""
    out = []
    for c in range(T.k):
        total = Cyclotomic.integer(T.exponent, 0)
        for chi in range(T.k):
            v = T.value(chi, s)
            total = total + v * v * v * T.value(chi, c).conj() / (T.degrees[chi] ** 2)
        if not total.is_zero():
            out.append(c)
    return out


def check_det_triple_cover(G: EnumeratedGroup) -> WordCheckResult:
    """Every element as xyz with x, y, z of 2-power order and det x = det y = 1 (matrix groups)."""
    S = class_tensor(G)
    k = G.num_classes
    dets = G.class_det()
    two = two_element_classes(G)
    two1 = [c for c in two if dets[c] == 1]
    first = _cover_pairs(S, two1, two1, k)
    final = _cover_pairs(S, sorted(first), two, k)
    return _result(k, {c: first[e] + (d,) for c, (e, d) in final.items()}, "brute-force")


def check_condition_PN(G: EnumeratedGroup, q: int, eps: int, N: int, unbreakable_only: bool = False,
                       spec=None) -> WordCheckResult:
    """For each class g: C_a of N-th powers with det 1 and C_b of N-th powers with det(C_b) = det(g)
    such that g is in C_a C_b."""
    p = sympy.primefactors(q)[0]
    for t in sympy.primefactors(N):
        if t != p and (q - eps) % t == 0:
            raise WordError(f"prime {t} of N divides q - eps = {q - eps}")
    dets = G.class_det()
    for c in range(G.num_classes):            # det is a class function
        mem = G.class_members(c)
        sample = mem[:: max(1, len(mem) // 8)]
        if any(G.element(int(i)).det() != dets[c] for i in sample):
            raise WordError("determinant is not constant on a class")
    P = sorted(set(G.power_class_map(N)))
    A = [c for c in P if dets[c] == 1]
    S = class_tensor(G)
    targets = list(range(G.num_classes))
    if unbreakable_only:
        if spec is None:
            raise WordError("unbreakable_only needs the classical group spec")
        from .breakdec import is_breakable
        targets = [c for c in targets if not is_breakable(spec, G.element(int(G.reps[c])))]
    wit = {}
    for c in targets:
        for a in A:
            b = next((b for b in P if dets[b] == dets[c] and S[a, b, c] > 0), None)
            if b is not None:
                wit[c] = (a, b)
                break
    missed = [c for c in targets if c not in wit]
    return WordCheckResult(NOT_SURJECTIVE if missed else SURJECTIVE, wit, missed, "brute-force",
                           note=f"{len(targets)} classes checked")


# ---------------------------------------------------------------------------
# N sweeps

def residue_exponents(p: int, r: int, e: int) -> list[int]:
    """Smallest N = p^a r^b representing each residue class mod e."""
    pa = []
    x = 1
    seen = set()
    while x % e not in seen:
        seen.add(x % e)
        pa.append(x)
        x *= p
    rb = []
    x = 1
    seen = set()
    while x % e not in seen:
        seen.add(x % e)
        rb.append(x)
        x *= r
    best: dict[int, int] = {}
    for u in pa:
        for v in rb:
            N = u * v
            if N % e not in best or N < best[N % e]:
                best[N % e] = N
    return sorted(best.values())


def sweep_xNyN(target, order: int, exponent: int) -> dict:
    """check_xNyN over all N = p^a r^b (distinct primes p, r dividing |G|), one N per residue mod exp(G)."""
    primes = sympy.primefactors(order)
    Ns = set()
    for p, r in itertools.combinations(primes, 2):
        Ns.update(residue_exponents(p, r, exponent))
    return {N: check_xNyN(target, N) for N in sorted(Ns)}


# ---------------------------------------------------------------------------
# constructive 2-element factorizations

def _is_two_power(n: int) -> bool:
    return n & (n - 1) == 0


def two_2elements_witness(G: EnumeratedGroup, g):
    """(x, y) of 2-power order with xy = g, via an element inverting g; None if g is not real."""
    gi = G.index(g)
    ginv = int(G.inverse_ids[gi])
    P = G.perms.astype(np.int64)
    row = P[gi]
    conj = np.take_along_axis(P, row[G.inv_perms.astype(np.int64)], axis=1)   # t g t^-1
    hits = np.nonzero(G.ids_of(conj, check=False) == ginv)[0]
    if not len(hits):
        return None
    t = int(hits[0])
    o = G.element_order_of_id(t)
    odd = o
    while odd % 2 == 0:
        odd //= 2
    x = G.element(t) ** odd
    y = x * G.element(gi)
    return x.inverse(), y


def _reflection(cycle: tuple, fix_first: bool) -> list[tuple[int, int]]:
    """Transpositions of a reflection inverting the cycle."""
    m = len(cycle)
    if fix_first:
        return [(cycle[i], cycle[m - i]) for i in range(1, (m + 1) // 2) if i != m - i]
    return [(cycle[i], cycle[m - 1 - i]) for i in range(m // 2)]


def alt_odd_decompose(g: Perm) -> tuple[Perm, Perm]:
    """x, y of 2-power order in the alternating group with xy = g (g even).

    Each cycle is inverted by a reflection; odd cycles of length >= 5 may drop the
    last transposition (then y has order 4 there), 3-cycles use (a1 a3)(a1 a2),
    and even cycles choose between the two reflection types, to make x even.
    """
    if g.sign() != 1:
        raise WordError("g must be an even permutation")
    n = g.degree
    cycles = [c for c in g.cycles() if len(c) > 1]
    fixed = [i + 1 for i in range(n) if g(i) == i]
    choices = []          # per cycle: list of (x transpositions, y transpositions or None)
    for c in cycles:
        m = len(c)
        if m == 3:
            choices.append([([(c[0], c[2])], [(c[0], c[1])])])
        elif m % 2:
            full = _reflection(c, fix_first=False)
            choices.append([(full, None), (full[:-1], None)])
        else:
            choices.append([(_reflection(c, True), None), (_reflection(c, False), None)])
    pick = [0] * len(choices)
    parity = sum(len(ch[0][0]) for ch in choices) % 2
    extra: list[tuple[int, int]] = []
    if parity:
        alt = next((i for i, ch in enumerate(choices) if len(ch) > 1), None)
        if alt is not None:
            pick[alt] = 1
        elif len(fixed) >= 2:
            extra = [(fixed[0], fixed[1])]
        else:
            raise WordError("no even choice of reflections; use two_2elements_witness on the group")
    tr = [t for ch, i in zip(choices, pick) for t in ch[i][0]] + extra
    x = Perm.from_cycles([t for t in tr], n) if tr else Perm.identity(n)
    # y = x^-1 g, with x an involution
    y = x.inverse() * g
    if x * y != g or not (_is_two_power(x.order()) and _is_two_power(y.order())):
        raise WordError("decomposition failed to verify")
    if x.sign() != 1 or y.sign() != 1:
        raise WordError("decomposition left the alternating group")
    return x, y


# ---------------------------------------------------------------------------
# counts and bounds

def proportion_divisible(G, primes) -> Fraction:
    """Proportion of elements whose order is divisible by some prime in `primes`."""
    primes = set(primes)
    hit = sum(s for s, o in zip(G.sizes, G.orders) if any(o % p == 0 for p in primes))
    return Fraction(hit, G.order)


_COMPLEX: dict[tuple[int, int], tuple[object, list]] = {}


def _complex_table(T: CharacterTable, dps: int) -> list:
    """Character values as mpmath complex numbers, computed once per table and precision."""
    key = (id(T), dps)
    hit = _COMPLEX.get(key)
    if hit is not None and hit[0] is T:
        return hit[1]
    with mpmath.workdps(dps + 10):
        z = [mpmath.expjpi(mpmath.mpf(2 * t) / T.exponent) for t in range(T.exponent)]
        rows = []
        for chi in range(T.k):
            row = []
            for c in range(T.k):
                v = T.value(chi, c)
                row.append(mpmath.fsum(mpmath.mpf(Fraction(x).numerator) / Fraction(x).denominator * z[t]
                                       for t, x in enumerate(v.c) if x))
            rows.append(row)
    _COMPLEX[key] = (T, rows)
    return rows


def tail_bound(T: CharacterTable, D: int, a: int, b: int, c: int, dps: int = 50) -> tuple[float, float]:
    """(sqrt(|C(a)||C(b)||C(c)|)/D, |sum over chi(1) >= D of chi(a)chi(b)conj(chi(c))/chi(1)|)."""
    if D < 1:
        raise WordError("D must be at least 1")
    if not all(0 <= i < T.k for i in (a, b, c)):
        raise WordError("class index out of range")
    C = T.centralizer_orders
    V = _complex_table(T, dps)
    with mpmath.workdps(dps):
        total = mpmath.fsum(V[chi][a] * V[chi][b] * mpmath.conj(V[chi][c]) / T.degrees[chi]
                            for chi in range(T.k) if T.degrees[chi] >= D)
        actual = abs(total)
        bound = mpmath.sqrt(mpmath.mpf(C[a]) * C[b] * C[c]) / D
        return float(bound), float(actual)


def nonvanishing_lower_bound(T: CharacterTable, c: int) -> int:
    """Number of characters nonzero at class c."""
    return sum(1 for chi in range(T.k) if not T.value(chi, c).is_zero())

