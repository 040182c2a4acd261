"""Closed-form Weil character values of GL_n(q) and GU_n(q), and symplectic Weil bounds.

For x in GL_n(q) with fixed generator delta of F_q^*:

    tau_{i,0}(x) = 1/(q-1) * sum_l dt^(i l) q^e(x, delta^l)  -  2 [i = 0]
    tau_{i,j}(x) = dt^(j log_delta det x) * tau_{i,0}(x)

and for x in GU_n(q) with xi of order q+1 in F_{q^2}:

    zeta_{i,0}(x) = (-1)^n/(q+1) * sum_l xt^(i l) (-q)^e(x, xi^l)

where e(x, a) = dim Ker(x - a) and dt, xt are complex roots of unity of
orders q-1 and q+1 (powers of the table's zeta_e).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg as L
from .chartab import CharacterTable
from .cyclo import Cyclotomic
from .ff import GF, FieldSpec, field_of_order
from .groups import EnumeratedGroup, Mat


class WeilError(ValueError):
    pass


@dataclass(frozen=True)
class WeilParams:
    eps: int
    n: int
    q: int
    i: int
    j: int
    conductor: int | None = None

    def __post_init__(self):
        if self.eps not in (1, -1):
            raise WeilError("eps must be +1 or -1")
        if self.n < 1:
            raise WeilError("n must be positive")
        top = self.q - 2 if self.eps == 1 else self.q
        for v in (self.i, self.j):
            if not 0 <= v <= top:
                raise WeilError(f"index {v} outside 0..{top}")
        if self.conductor is not None and self.conductor % self.mu:
            raise WeilError(f"conductor {self.conductor} is not a multiple of {self.mu}")

    @property
    def mu(self) -> int:
        return self.q - self.eps

    @property
    def e(self) -> int:
        return self.conductor or self.mu

    @property
    def field(self) -> FieldSpec:
        F = field_of_order(self.q)
        return F if self.eps == 1 else GF(F.p, 2 * F.k)

    @property
    def root(self) -> int:
        """delta (eps = +) or xi (eps = -): least exponent power of the field generator of that order."""
        F = self.field
        return int(F.pow(F.generator, (F.q - 1) // self.mu))

    def with_indices(self, i: int, j: int) -> "WeilParams":
        return WeilParams(self.eps, self.n, self.q, i, j, self.conductor)


def _matrix(x) -> np.ndarray:
    return x.a if isinstance(x, Mat) else L.asmat(x)


def eigenspace_dims(params: WeilParams, x) -> list[int]:
    """e(x, root^l) for l = 0 .. mu-1."""
    F = params.field
    a = _matrix(x)
    n = a.shape[0]
    I = L.identity(F, n)
    out = []
    cur = 1
    for _ in range(params.mu):
        out.append(L.kernel_dim(F, L.sub(F, a, L.scalar_mul(F, cur, I))))
        cur = int(F.mul(cur, params.root))
    return out


def root_log(params: WeilParams, a: int) -> int:
    """k with root^k = a, for a in the cyclic group of order mu."""
    F = params.field
    cur = 1
    for k in range(params.mu):
        if cur == int(a):
            return k
        cur = int(F.mul(cur, params.root))
    raise WeilError("determinant outside the subgroup of order q - eps")


def _weil_value(params: WeilParams, x, base: int, scale: Fraction, shift: int) -> Cyclotomic:
    e, mu = params.e, params.mu
    step = e // mu
    dims = eigenspace_dims(params, x)
    full = [0] * e
    for l, d in enumerate(dims):
        full[(params.i * l % mu) * step] += base ** d
    val = Cyclotomic(e, [Fraction(c) * scale for c in full])
    if shift:
        val = val - shift
    if params.j:
        k = root_log(params, L.det(params.field, _matrix(x)))
        val = val * Cyclotomic.zeta(e, params.j * k * step)
    if not val.is_integral():
        raise WeilError("non-integral Weil value: element outside the group?")
    return val


def weil_gl_value(params: WeilParams, x) -> Cyclotomic:
    if params.eps != 1:
        raise WeilError("GL Weil values need eps = +1")
    a = _matrix(x)
    if a.shape[0] != params.n:
        raise WeilError("dimension mismatch")
    q = params.q
    return _weil_value(params, a, q, Fraction(1, q - 1), 2 if params.i == 0 else 0)


def weil_gu_value(params: WeilParams, x) -> Cyclotomic:
    if params.eps != -1:
        raise WeilError("GU Weil values need eps = -1")
    a = _matrix(x)
    if a.shape[0] != params.n:
        raise WeilError("dimension mismatch")
    q, n = params.q, params.n
    return _weil_value(params, a, -q, Fraction((-1) ** n, q + 1), 0)


def weil_value(params: WeilParams, x) -> Cyclotomic:
    return weil_gl_value(params, x) if params.eps == 1 else weil_gu_value(params, x)


def weil_degree(eps: int, n: int, q: int, i: int) -> int:
    """tau_{i,0}(1) or zeta_{i,0}(1)."""
    d0 = 1 if i == 0 else 0
    if eps == 1:
        return (q ** n - 1) // (q - 1) - d0
    return (q ** n - (-1) ** n) // (q + 1) + (-1) ** n * d0


# ---------------------------------------------------------------------------
# rows over an enumerated group

def weil_rows(G: EnumeratedGroup, eps: int, n: int, q: int, conductor: int) -> dict:
    """{(i, j): tuple of Cyclotomic values over the classes of G}."""
    reps = [G.element(int(r)) for r in G.reps]
    out = {}
    top = q - 2 if eps == 1 else q
    for i in range(top + 1):
        base = WeilParams(eps, n, q, i, 0, conductor)
        col0 = [weil_value(base, x) for x in reps]
        for j in range(top + 1):
            if j == 0:
                out[(i, j)] = tuple(col0)
                continue
            p = base.with_indices(i, j)
            step = conductor // p.mu
            vals = []
            for x, v in zip(reps, col0):
                k = root_log(p, L.det(p.field, x.a))
                vals.append(v * Cyclotomic.zeta(conductor, j * k * step))
            out[(i, j)] = tuple(vals)
    return out


@dataclass
class WeilMatch:
    """Distinct formula rows against table rows.

    Different index pairs can give the same character (for n = 2 the induced
    characters satisfy tau_{i,j} = tau_{-i,j+i}), so rows are compared as a set.
    """
    ok: bool
    assignment: dict            # (i, j) -> character index
    unmatched: list
    distinct: int


def match_weil_rows(T: CharacterTable, G: EnumeratedGroup, eps: int, n: int, q: int) -> WeilMatch:
    e = T.exponent
    rows = weil_rows(G, eps, n, q, e)
    table_rows: dict[tuple, int] = {}
    for chi in range(T.k):
        key = tuple(tuple(int(c) for c in T.values[chi, c]) for c in range(T.k))
        table_rows.setdefault(key, chi)
    assignment: dict = {}
    unmatched: list = []
    seen = set()
    for ij, vals in sorted(rows.items()):
        key = tuple(tuple(int(c) for c in v.c) for v in vals)
        seen.add(key)
        if key in table_rows:
            assignment[ij] = table_rows[key]
        else:
            unmatched.append(ij)
    return WeilMatch(not unmatched, assignment, unmatched, len(seen))


def tau_magnitude_hypothesis(params: WeilParams, x) -> bool:
    """e(x, delta^l) <= 1 for all l, with at most one l attaining 1."""
    dims = eigenspace_dims(params, x)
    return all(d <= 1 for d in dims) and sum(dims) <= 1


# ---------------------------------------------------------------------------
# symplectic Weil profile

@dataclass(frozen=True)
class SpWeilProfile:
    """Degrees of the four Weil characters of Sp_2n(q), q odd, and their magnitude bound."""
    n: int
    q: int

    @property
    def degrees(self) -> list[int]:
        a, b = (self.q ** self.n - 1) // 2, (self.q ** self.n + 1) // 2
        return [a, a, b, b]

    def bound(self, g) -> float:
        """(B(g) + B(-g)) / 2 with B(g) = q^(dim Ker(g - 1) / 2)."""
        F = field_of_order(self.q)
        a = _matrix(g)
        I = L.identity(F, a.shape[0])
        k_plus = L.kernel_dim(F, L.sub(F, a, I))
        k_minus = L.kernel_dim(F, L.add(F, a, I))
        return (math.sqrt(self.q ** k_plus) + math.sqrt(self.q ** k_minus)) / 2


def sp_weil_profile(n: int, q: int) -> SpWeilProfile:
    if q % 2 == 0:
        raise WeilError("symplectic Weil characters need q odd")
    if n < 1:
        raise WeilError("n must be positive")
    return SpWeilProfile(n, q)
