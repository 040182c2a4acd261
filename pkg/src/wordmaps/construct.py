"""Explicit regular 2-elements in GL^eps_n(q), Sp_2n(q) and SO^eps_n(q), q odd.

Every element is assembled from small blocks on an orthogonal (or direct) sum
decomposition, then carried onto the fixed Gram matrix of the ambient group by
an explicit isometry.  The returned Certificate lists the claims made by the
construction; `verify_certificate` rechecks each one with the classical module.

Block vocabulary:
  s_m      element of order (q^(2^m)-1)_2 coming from GL_1(q^(2^m)), realized
           as a companion matrix (GL), or as diag(A, A^-T) / diag(A, conj(A)^-T)
           on a pair of dual totally isotropic subspaces (Sp, SO, GU).
  s2(d)    2x2 block of determinant d: diag(1, d), or the order 4 element
           [[0,-1],[1,0]] when d = 1.
  so2      element of SO^tau_2(q) on a plane of Witt type tau.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import linalg as L
from .classical import (ClassicalError, ClassicalGroupSpec, build_group, eigen_profile,
                        hyperbolic_gram, is_regular_semisimple, isometric_basis, membership,
                        mu_subgroup, spinor_norm, wall_spinor_norm, symplectic_gram)
from .ff import FieldElement, FieldSpec, GF, Poly, factor_poly, field_of_order
from .groups import Mat, format_matrix


class ConstructionError(ValueError):
    pass


def two_part(n: int) -> int:
    n = abs(n)
    return n & -n


def _bits(n: int) -> list[int]:
    """Exponents of the binary expansion of n, largest first."""
    return [i for i in range(n.bit_length() - 1, -1, -1) if n >> i & 1]


def _rewrite_tail(ms: list[int]) -> list[int]:
    """Replace a trailing 2^a (a >= 2) by 2^(a-1) + ... + 2 + 2."""
    a = ms[-1]
    if a < 2:
        return list(ms)
    return list(ms[:-1]) + list(range(a - 1, 0, -1)) + [1]


# ---------------------------------------------------------------------------
# the base element gamma and its minimal polynomials

class _Subfield:
    """Coordinates of a subfield K inside E = GF(p, k_E) with K = GF(p, k_K)."""

    def __init__(self, K: FieldSpec, E: FieldSpec):
        from .ff import roots

        self.K, self.E = K, E
        Fp = GF(K.p)
        self.Fp = Fp
        if K.k == 1:
            r = 0
        else:
            rs = roots(Poly(E, list(K.modulus)))
            if not rs:
                raise ConstructionError("subfield modulus has no root in the extension")
            r = rs[0]
        cols = []
        cur = 1
        for _ in range(K.k):
            cols.append(E.digits(cur))
            cur = int(E.mul(cur, r)) if K.k > 1 else cur
        self.M = np.array(cols, dtype=np.int64).T
        self.r = r

    def to_sub(self, c: int) -> int:
        if self.K.k == 1:
            if c >= self.K.p:
                raise ConstructionError("value does not lie in the prime field")
            return int(c)
        x = L.solve(self.Fp, self.M, np.array(self.E.digits(int(c)), dtype=np.int64))
        if x is None:
            raise ConstructionError("value does not lie in the subfield")
        return self.K.from_digits([int(v) for v in x])


@lru_cache(maxsize=None)
def _subfield(K: FieldSpec, E: FieldSpec) -> _Subfield:
    return _Subfield(K, E)


@lru_cache(maxsize=None)
def gamma_data(q: int, m: int, over_square: bool = False):
    """gamma of order (q^(2^m)-1)_2 and minimal polynomials over K.

    gamma is g^((|E|-1)/N) for the canonical generator g of E = F_{q^(2^m)},
    the least exponent among its Galois conjugates.  K is F_q, or F_{q^2}
    when `over_square`.  Returns (order, min poly of gamma, min poly of
    gamma^-1, min poly of gamma^-q) as Polys over K.
    """
    Fq = field_of_order(q)
    E = GF(Fq.p, Fq.k * 2 ** m)
    K = GF(Fq.p, 2 * Fq.k) if over_square else Fq
    if E.k % K.k:
        raise ConstructionError("gamma does not live over this subfield")
    N = two_part(E.q - 1)
    g = E.pow(E.generator, (E.q - 1) // N)
    sub = _subfield(K, E)

    def minpoly(x: int) -> Poly:
        conj = [x]
        while True:
            y = E.pow(conj[-1], K.q)
            if y == x:
                break
            conj.append(y)
        P = Poly(E, [1])
        for c in conj:
            P = P * Poly(E, [int(E.neg(c)), 1])
        return Poly(K, [sub.to_sub(c) for c in P.c])

    ginv = E.inv(g)
    return N, minpoly(g), minpoly(ginv), minpoly(E.pow(ginv, q))


# ---------------------------------------------------------------------------
# blocks and certificates

@dataclass
class Block:
    label: str
    matrix: np.ndarray
    gram: np.ndarray | None
    order: int
    factors: list                         # claimed [(irreducible Poly, multiplicity)]
    spinor: int | None = None

    @property
    def size(self) -> int:
        return self.matrix.shape[0]


@dataclass
class Certificate:
    family: str
    n: int
    q: int
    eps: int
    delta: int                            # field code (GL/GU) or +-1 (SO); 1 for Sp
    order: int
    determinant: int
    spinor: int | None
    factors: list                         # [(Poly, multiplicity)]
    regular: bool
    blocks: list[str]
    block_dets: list[int]
    base_change: np.ndarray | None = None
    block_gram: np.ndarray | None = None
    spec: ClassicalGroupSpec | None = field(default=None, repr=False)

    def eigenvalue_lines(self) -> list[str]:
        return [f"({poly!r})^{m}" for poly, m in self.factors]

    def to_text(self) -> str:
        F = self.spec.F
        lines = [f"group {self.spec.label}",
                 f"claimed order {self.order}",
                 f"claimed det {FieldElement(F, self.determinant)}"]
        if self.spinor is not None:
            lines.append(f"claimed spinor norm {self.spinor:+d}")
        lines.append("claimed charpoly factors " + " * ".join(self.eigenvalue_lines()))
        lines.append(f"claimed regular {'yes' if self.regular else 'no'}")
        lines.append("blocks " + ", ".join(self.blocks))
        if self.base_change is not None:
            lines.append("base change " + format_matrix(F, self.base_change))
        return "\n".join(lines)


def _factor_key(fm):
    f, m = fm
    return (f.deg, tuple(int(c) for c in f.c), m)


def _merge(factors: list) -> list:
    acc: dict = {}
    for f, m in factors:
        key = tuple(int(c) for c in f.monic().c)
        if key in acc:
            acc[key] = (acc[key][0], acc[key][1] + m)
        else:
            acc[key] = (f.monic(), m)
    return sorted(acc.values(), key=_factor_key)


def _block_factors(F: FieldSpec, a: np.ndarray) -> list:
    return factor_poly(L.charpoly(F, a))


def _order2(F: FieldSpec, a: np.ndarray) -> int:
    """Order of a matrix known to have 2-power order."""
    o = 1
    cur = L.asmat(a)
    while not L.is_identity(cur):
        cur = L.matmul(F, cur, cur)
        o *= 2
        if o > 1 << 40:
            raise ConstructionError("block is not a 2-element")
    return o


# ---------------------------------------------------------------------------
# linear and unitary groups

def _as_code(F: FieldSpec, delta) -> int:
    if isinstance(delta, FieldElement):
        if delta.spec != F:
            raise ConstructionError(f"delta lies in {delta.spec}, expected {F}")
        return delta.code
    d = int(delta)
    return int(F.neg(1)) if d == -1 else d


def _s2(F: FieldSpec, d: int) -> tuple[np.ndarray, int]:
    if d == 1:
        return np.array([[0, F.neg(1)], [1, 0]], dtype=np.int64), 4
    return np.array([[1, 0], [0, d]], dtype=np.int64), F.element_order(d)


def _glu_base(spec: ClassicalGroupSpec, m: int) -> Block:
    F, q = spec.F, spec.q
    if not spec.unitary:
        N, f, _, _ = gamma_data(q, m)
        return Block(f"s_{m}", L.companion(F, f), None, N, [(f, 1)])
    N, f, _, fq = gamma_data(q, m, over_square=True)
    A = L.companion(F, f)
    B = L.transpose(L.inverse(F, L.conj(F, A, spec.sigma)))
    h = 2 ** (m - 1)
    return Block(f"s_{m}", L.block_diag([A, B]), hyperbolic_gram(2 * h), N, [(f, 1), (fq, 1)])


def glu_layout(n: int) -> list:
    """Block plan: ('s', m), ('s2',) or ('scalar',); the last entry absorbs the determinant."""
    if n == 1:
        return [("scalar",)]
    if n % 2:
        return [("s", m) for m in _bits(n - 1)] + [("scalar",)]
    a = _rewrite_tail(_bits(n))
    return [("s", m) for m in a[:-1]] + [("s2",)]


def construct_glu_2element(n: int, q: int, eps: int, delta) -> tuple[Mat, Certificate]:
    """Regular 2-element of GL^eps_n(q) (GU for eps = -1) with determinant delta."""
    if q % 2 == 0:
        raise ConstructionError("q must be odd")
    if n < 1:
        raise ConstructionError("n must be positive")
    if eps not in (1, -1):
        raise ConstructionError("eps must be +1 or -1")
    spec = build_group("GL" if eps == 1 else "GU", n, q, ngens=0, verify=False)
    F = spec.F
    d = _as_code(F, delta)
    mu = q - eps
    two = two_part(mu)
    if d == 0 or F.pow(d, mu) != 1:
        raise ConstructionError(f"delta must lie in mu_{mu}")
    if F.pow(d, two) != 1:
        raise ConstructionError("delta is not a 2-element")
    blocks: list[Block] = []
    rest = d
    layout = glu_layout(n)
    for item in layout[:-1]:
        b = _glu_base(spec, item[1])
        blocks.append(b)
        rest = int(F.mul(rest, F.inv(L.det(F, b.matrix))))
    if layout[-1][0] == "s2":
        a, o = _s2(F, rest)
        blocks.append(Block(f"s2({FieldElement(F, rest)})", a, np.eye(2, dtype=np.int64) if spec.unitary else None,
                            o, _block_factors(F, a)))
    else:
        a = np.array([[rest]], dtype=np.int64)
        blocks.append(Block(f"({FieldElement(F, rest)})", a, np.eye(1, dtype=np.int64) if spec.unitary else None,
                            F.element_order(rest), _block_factors(F, a)))
    return _finish(spec, blocks, d, None)


# ---------------------------------------------------------------------------
# symplectic groups

def _sp_base(F: FieldSpec, q: int, m: int) -> Block:
    N, f, finv, _ = gamma_data(q, m)
    A = L.companion(F, f)
    B = L.transpose(L.inverse(F, A))
    return Block(f"s_{m}", L.block_diag([A, B]), symplectic_gram(F, 2 ** (m + 1)), N, [(f, 1), (finv, 1)])


def sp_layout(n: int) -> list:
    ms = _bits(n)
    if ms[-1] == 0:
        return [("s", m) for m in ms[:-1]] + [("s2",)]
    return [("s", m) for m in ms]


def construct_sp_2element(n: int, q: int) -> tuple[Mat, Certificate]:
    """Regular 2-element of Sp_2n(q) with neither 1 nor -1 as an eigenvalue."""
    if q % 2 == 0:
        raise ConstructionError("q must be odd")
    if n < 1:
        raise ConstructionError("n must be positive")
    spec = build_group("Sp", 2 * n, q, ngens=0, verify=False)
    F = spec.F
    blocks = []
    for item in sp_layout(n):
        if item[0] == "s":
            blocks.append(_sp_base(F, q, item[1]))
        else:
            a, o = _s2(F, 1)
            blocks.append(Block("s2(1)", a, symplectic_gram(F, 2), o, _block_factors(F, a)))
    return _finish(spec, blocks, 1, None)


# ---------------------------------------------------------------------------
# orthogonal groups

def _plane_gram(F: FieldSpec, tau: int) -> np.ndarray:
    if tau == 1:
        return hyperbolic_gram(2)
    return np.array([[1, 0], [0, F.neg(F.nonsquare())]], dtype=np.int64)


@lru_cache(maxsize=None)
def _so2_sylow(F: FieldSpec, tau: int) -> tuple:
    """Least generator of the Sylow 2-subgroup of SO^tau_2(q) in standard coordinates."""
    q = F.q
    target = two_part(q - tau)
    if tau == 1:
        a = F.pow(F.generator, (q - 1) // target)
        return ((a, 0), (0, int(F.inv(a))))
    nu = F.nonsquare()
    for a in range(q):
        for b in range(q):
            if int(F.sub(F.mul(a, a), F.mul(nu, F.mul(b, b)))) != 1:
                continue
            M = np.array([[a, F.mul(nu, b)], [b, a]], dtype=np.int64)
            if _order_exact(F, M) == target:
                return tuple(map(tuple, M.tolist()))
    raise ConstructionError("no Sylow generator in the anisotropic torus")


def _order_exact(F: FieldSpec, M: np.ndarray) -> int:
    o, cur = 1, L.asmat(M)
    while not L.is_identity(cur):
        cur = L.matmul(F, cur, M)
        o += 1
    return o


def _minus_one_plane_spinor(q: int, tau: int) -> int:
    """-I_2 on a plane of type tau: spinor norm is the discriminant, a square iff 4 | q - tau."""
    return 1 if (q - tau) % 4 == 0 else -1


def _so2_block(F: FieldSpec, tau: int, kind: str) -> Block:
    """kind: 'gen' (Sylow generator, spinor -1), 'minus' (-I_2) or 'one' (I_2)."""
    q = F.q
    tag = "+" if tau == 1 else "-"
    if kind == "one":
        a = L.identity(F, 2)
        return Block(f"I2[{tag}]", a, _plane_gram(F, tau), 1, _block_factors(F, a), 1)
    if kind == "minus":
        a = L.scalar_mul(F, F.neg(1), L.identity(F, 2))
        return Block(f"-I2[{tag}]", a, _plane_gram(F, tau), 2, _block_factors(F, a),
                     _minus_one_plane_spinor(q, tau))
    a = np.array(_so2_sylow(F, tau), dtype=np.int64)
    return Block(f"so2[{tag}]", a, _plane_gram(F, tau), two_part(q - tau), _block_factors(F, a), -1)


def _so2_element(F: FieldSpec, eps: int, delta: int) -> list[Block]:
    """s^eps_2(delta): I_2 for delta = 1, a Sylow generator for delta = -1."""
    return [_so2_block(F, eps, "one" if delta == 1 else "gen")]


def _so4_element(F: FieldSpec, eps: int, delta: int) -> list[Block]:
    """s^eps_4(delta) inside SO^alpha_2 x SO^(eps alpha)_2, q = alpha (mod 4)."""
    q = F.q
    alpha = 1 if q % 4 == 1 else -1
    if eps == 1 and delta == 1:
        return [_so2_block(F, alpha, "minus"), _so2_block(F, alpha, "one")]
    if eps == -1 and delta == 1:
        return [_so2_block(F, alpha, "gen"), _so2_block(F, -alpha, "minus")]
    if eps == 1 and delta == -1:
        return [_so2_block(F, alpha, "gen"), _so2_block(F, alpha, "minus")]
    return [_so2_block(F, alpha, "gen"), _so2_block(F, -alpha, "one")]


def _so_base(F: FieldSpec, q: int, m: int) -> Block:
    N, f, finv, _ = gamma_data(q, m)
    A = L.companion(F, f)
    B = L.transpose(L.inverse(F, A))
    return Block(f"s_{m}", L.block_diag([A, B]), hyperbolic_gram(2 ** (m + 1)), N, [(f, 1), (finv, 1)], -1)


def so_layout(n: int, eps: int, delta: int, q: int) -> list:
    """Block plan as a list of ('s', m) / ('so2', tau, d) / ('so4', tau, d) / ('so2x', tau, kind) / ('one',)."""
    if n == 2:
        return [("so2", eps, delta)]
    if n == 4:
        return [("so4", eps, delta)]
    if n % 2 == 0:
        if n % 4 == 2:
            ms = _bits((n - 2) // 2)
            return [("s", m) for m in ms] + [("so2", eps, (-1) ** len(ms) * delta)]
        a = _rewrite_tail(_bits(n // 2))
        k = len(a)
        return [("s", m) for m in a[:-1]] + [("so4", eps, (-1) ** (k - 1) * delta)]
    alpha = 1 if q % 4 == 1 else -1
    ms = _bits((n - 1) // 2)
    t = len(ms)
    if ms[-1] == 0:
        head = [("s", m) for m in ms[:-1]]
        if delta == (-1) ** t:
            return head + [("so2x", alpha, "gen"), ("one",)]
        return head + [("so2x", alpha, "minus"), ("one",)]
    a = _rewrite_tail(ms)
    k = len(a)
    beta = (-1) ** k * delta
    return [("s", m) for m in a[:-1]] + [("so4", beta, -beta), ("one",)]


def construct_so_2element(n: int, q: int, eps: int, delta: int) -> tuple[Mat, Certificate]:
    """Regular 2-element of SO^eps_n(q) with spinor norm delta (eps ignored for odd n)."""
    if q % 2 == 0:
        raise ConstructionError("q must be odd")
    if n < 2:
        raise ConstructionError("n must be at least 2")
    if delta not in (1, -1):
        raise ConstructionError("delta must be +1 or -1")
    if n % 2:
        eps = 0
    elif eps not in (1, -1):
        raise ConstructionError("eps must be +1 or -1 for even n")
    spec = build_group("SO", n, q, eps, ngens=0, verify=False)
    F = spec.F
    blocks: list[Block] = []
    for item in so_layout(n, eps, delta, q):
        kind = item[0]
        if kind == "s":
            blocks.append(_so_base(F, q, item[1]))
        elif kind == "so2":
            blocks += _so2_element(F, item[1], item[2])
        elif kind == "so4":
            blocks += _so4_element(F, item[1], item[2])
        elif kind == "so2x":
            blocks.append(_so2_block(F, item[1], item[2]))
        else:
            one = np.eye(1, dtype=np.int64)
            blocks.append(Block("(1)", one, one.copy(), 1, _block_factors(F, one), 1))
    if n % 2:
        # the last coordinate carries <c>, chosen so the block form matches the ambient discriminant
        Bg = L.block_diag([b.gram for b in blocks])
        if not F.is_square(int(F.mul(L.det(F, Bg), L.det(F, spec.G)))):
            blocks[-1].gram = np.array([[F.nonsquare()]], dtype=np.int64)
    return _finish(spec, blocks, delta, int(np.prod([b.spinor for b in blocks])))


# ---------------------------------------------------------------------------
# assembly

def _finish(spec: ClassicalGroupSpec, blocks: list[Block], delta: int, spinor: int | None):
    F = spec.F
    gB = L.block_diag([b.matrix for b in blocks])
    dets = [L.det(F, b.matrix) for b in blocks]
    det = 1
    for d in dets:
        det = int(F.mul(det, d))
    A = Bgram = None
    if spec.form.kind == "none":
        g = gB
    else:
        Bgram = L.block_diag([b.gram for b in blocks])
        if not F.is_square(int(F.mul(L.det(F, Bgram), L.det(F, spec.G)))) and spec.form.kind == "symmetric":
            raise ConstructionError("block decomposition has the wrong discriminant")
        if np.array_equal(Bgram, spec.G):
            A = L.identity(F, spec.n)
        else:
            A = isometric_basis(F, spec.G, Bgram, spec.sigma, random.Random(0))
        g = L.matmul(F, L.matmul(F, A, gB), L.inverse(F, A))
    order = max(b.order for b in blocks)
    cert = Certificate(
        family=spec.family, n=spec.n, q=spec.q, eps=spec.eps, delta=delta,
        order=order, determinant=det, spinor=spinor,
        factors=_merge([fm for b in blocks for fm in b.factors]),
        regular=True, blocks=[b.label for b in blocks], block_dets=dets,
        base_change=A, block_gram=Bgram, spec=spec)
    return Mat(F, g), cert


# ---------------------------------------------------------------------------
# verification

@dataclass
class CertificateCheck:
    results: dict

    @property
    def ok(self) -> bool:
        return all(self.results.values())

    def failures(self) -> list[str]:
        return [k for k, v in self.results.items() if not v]


def _check_order(F: FieldSpec, a: np.ndarray, claimed: int) -> bool:
    if claimed & (claimed - 1):
        return False
    cur = L.asmat(a)
    o = 1
    while o < claimed:
        if L.is_identity(cur):
            return False
        cur = L.matmul(F, cur, cur)
        o *= 2
    return L.is_identity(cur)


def verify_certificate(g: Mat, cert: Certificate) -> CertificateCheck:
    """Recompute every claim of a construction certificate."""
    spec = cert.spec
    F = spec.F
    a = g.a
    res: dict[str, bool] = {}
    res["member"] = bool(membership(spec, a))
    res["order"] = _check_order(F, a, cert.order)
    det = L.det(F, a)
    prod = 1
    for d in cert.block_dets:
        prod = int(F.mul(prod, d))
    res["det composition"] = det == prod == cert.determinant
    if spec.family in ("GL", "GU"):
        res["det = delta"] = det == cert.delta
    if spec.family == "SO":
        sn = spinor_norm(spec, a)
        res["spinor = delta"] = sn == cert.delta == cert.spinor
        res["spinor (Wall form)"] = wall_spinor_norm(spec, a) == sn
    if cert.base_change is not None:
        A = cert.base_change
        lhs = L.matmul(F, L.matmul(F, L.transpose(A), spec.G), spec.twist(A))
        res["base change"] = bool(np.array_equal(lhs, cert.block_gram))
    res["charpoly factors"] = _merge(factor_poly(L.charpoly(F, a))) == cert.factors
    try:
        res["regular semisimple"] = is_regular_semisimple(spec, a, both=True) == cert.regular
    except Exception:   # noqa: BLE001 - a disagreement between criteria is a failed check
        res["regular semisimple"] = False
    res["eigenvalue clause"] = eigenvalue_clause(spec, a)
    return CertificateCheck(res)


def eigenvalue_clause(spec: ClassicalGroupSpec, a: np.ndarray) -> bool:
    F = spec.F
    fac = factor_poly(L.charpoly(F, a))
    if spec.family in ("GL", "GU"):
        prof = eigen_profile(spec, a)
        mults = [prof.multiplicity(b) for b in prof.e_values]
        return all(m <= 1 for m in mults) and sum(mults) <= 2
    pm = {1, int(F.neg(1))}
    for f, m in fac:
        root = int(F.neg(f.c[0])) if f.deg == 1 else None
        if spec.family == "Sp":
            if root in pm or m > 1:
                return False
        elif m > (2 if root in pm else 1):
            return False
    return True


def legal_deltas(family: str, q: int, eps: int = 1) -> list:
    """All admissible delta for the construction (field codes, or +-1 for SO)."""
    if family == "Sp":
        return [1]
    if family == "SO":
        return [1, -1]
    F = field_of_order(q) if eps == 1 else GF(field_of_order(q).p, 2 * field_of_order(q).k)
    mu = q - eps
    return [c for c in mu_subgroup(F, two_part(mu))]


def construct(family: str, n: int, q: int, eps: int = 1, delta=1) -> tuple[Mat, Certificate]:
    if family in ("GL", "GU"):
        return construct_glu_2element(n, q, 1 if family == "GL" else -1, delta)
    if family == "Sp":
        return construct_sp_2element(n, q)
    if family == "SO":
        return construct_so_2element(n, q, eps, delta)
    raise ConstructionError(f"no construction for family {family}")


def base_element(family: str, m: int, q: int) -> tuple[Mat, Certificate]:
    """The base block s_m alone: in GL_{2^m}, GU_{2^m}, Sp_{2^(m+1)} or SO^+_{2^(m+1)}."""
    if q % 2 == 0:
        raise ConstructionError("q must be odd")
    if family in ("GL", "GU"):
        if m < (1 if family == "GU" else 0):
            raise ConstructionError("m too small")
        spec = build_group(family, 2 ** m, q, ngens=0, verify=False)
        b = _glu_base(spec, m)
        if spec.unitary:
            b.gram = hyperbolic_gram(2 ** m)
        return _finish(spec, [b], L.det(spec.F, b.matrix), None)
    if m < 1:
        raise ConstructionError("m must be at least 1")
    if family == "Sp":
        spec = build_group("Sp", 2 ** (m + 1), q, ngens=0, verify=False)
        return _finish(spec, [_sp_base(spec.F, q, m)], 1, None)
    if family == "SO":
        spec = build_group("SO", 2 ** (m + 1), q, 1, ngens=0, verify=False)
        return _finish(spec, [_so_base(spec.F, q, m)], -1, -1)
    raise ConstructionError(f"no base element for {family}")


@dataclass
class SuiteResult:
    total: int
    failures: list                 # (family, n, q, eps, delta, failed checks)

    @property
    def ok(self) -> bool:
        return not self.failures


def construction_suite(families=("GL", "GU", "Sp", "SO"), n_max: int = 12,
                       qs=(3, 5, 7, 9, 11, 13, 17)) -> SuiteResult:
    """Build and verify every legal (family, n, q, eps, delta) with n <= n_max."""
    total = 0
    failures = []
    for fam in families:
        for q in qs:
            for n in range(1, n_max + 1):
                if fam == "SO" and n < 2:
                    continue
                for eps in ((1, -1) if fam == "SO" and n % 2 == 0 else (1,)):
                    for d in legal_deltas(fam, q, -1 if fam == "GU" else 1):
                        g, cert = construct(fam, n, q, eps, d)
                        chk = verify_certificate(g, cert)
                        total += 1
                        if not chk.ok:
                            failures.append((fam, n, q, eps, d, chk.failures()))
    return SuiteResult(total, failures)
