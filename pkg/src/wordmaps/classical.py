"""Classical groups over small finite fields as matrix groups with forms.

Fixed forms (all on column vectors, f(u, v) = u^T G v^sigma):

* symplectic, dimension 2m: G = [[0, I_m], [-I_m, 0]]
* hermitian: G = I over F_{q^2}, sigma = x -> x^q
* orthogonal, odd q: Q(v) = f(v, v)/2 with
  type +: hyperbolic pairs G = [[0, I_m], [I_m, 0]];
  type -: m-1 hyperbolic pairs plus diag(1, -nu), nu the least nonsquare;
  odd dimension: m hyperbolic pairs plus <1>
* orthogonal, q even: Q = sum x_i y_i (type +), plus x^2 + xy + c y^2 on the last
  pair for type -, where t^2 + t + c is irreducible (c least).
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from . import linalg as L
from .ff import GF, FieldElement, FieldSpec, Poly, factor_poly, field_of_order
from .groups import EnumeratedGroup, GroupError, Mat, enumerate_group

FAMILIES = ("GL", "SL", "GU", "SU", "Sp", "GO", "SO", "Omega")
ENUMERATION_VERIFY_LIMIT = 200_000
SAMPLE_RETRIES = 5000


class ClassicalError(ValueError):
    pass


class CriteriaDisagreement(RuntimeError):
    pass


def _prime_power(q: int) -> tuple[int, int]:
    F = field_of_order(q)
    return F.p, F.k


# ---------------------------------------------------------------------------
# orders

def group_order(family: str, n: int, q: int, eps: int = 1) -> int:
    p, _ = _prime_power(q)
    if family in ("GL", "SL"):
        o = q ** (n * (n - 1) // 2) * math.prod(q ** i - 1 for i in range(1, n + 1))
        return o if family == "GL" else o // (q - 1)
    if family in ("GU", "SU"):
        o = q ** (n * (n - 1) // 2) * math.prod(q ** i - (-1) ** i for i in range(1, n + 1))
        return o if family == "GU" else o // (q + 1)
    if family == "Sp":
        m = n // 2
        return q ** (m * m) * math.prod(q ** (2 * i) - 1 for i in range(1, m + 1))
    if family in ("GO", "SO", "Omega"):
        if n % 2:
            m = n // 2
            go = 2 * q ** (m * m) * math.prod(q ** (2 * i) - 1 for i in range(1, m + 1))
        else:
            m = n // 2
            go = 2 * q ** (m * (m - 1)) * (q ** m - eps) * math.prod(q ** (2 * i) - 1 for i in range(1, m))
        if family == "GO":
            return go
        if p == 2:
            # determinant is always 1; Omega has index 2 (Dickson invariant)
            return go if family == "SO" else go // 2
        so = go // 2
        if family == "SO":
            return so
        return so // 2 if n >= 2 else so
    raise ClassicalError(f"unknown family {family}")


# ---------------------------------------------------------------------------
# forms

@dataclass(frozen=True)
class FormSpec:
    kind: str                      # none | symplectic | symmetric | quadratic | hermitian
    gram: tuple                    # polar / sesquilinear Gram matrix (codes)
    qmat: tuple | None = None      # q even: upper triangular matrix with Q(v) = v^T qmat v
    eps: int = 0

    @property
    def G(self) -> np.ndarray:
        return np.array(self.gram, dtype=np.int64)

    @property
    def Qm(self) -> np.ndarray | None:
        return None if self.qmat is None else np.array(self.qmat, dtype=np.int64)


def _tup(A) -> tuple:
    return tuple(tuple(int(x) for x in row) for row in np.asarray(A))


def symplectic_gram(F: FieldSpec, n: int) -> np.ndarray:
    m = n // 2
    G = np.zeros((n, n), dtype=np.int64)
    for i in range(m):
        G[i, m + i] = 1
        G[m + i, i] = F.neg(1)
    return G


def hyperbolic_gram(n: int) -> np.ndarray:
    m = n // 2
    G = np.zeros((n, n), dtype=np.int64)
    for i in range(m):
        G[i, m + i] = 1
        G[m + i, i] = 1
    return G


@lru_cache(maxsize=None)
def anisotropic_constant(F: FieldSpec) -> int:
    """q even: least c with t^2 + t + c irreducible."""
    for c in range(1, F.q):
        if not any(int(F.add(F.mul(t, t), F.add(t, c))) == 0 for t in range(F.q)):
            return c
    raise ClassicalError("no anisotropic constant")


def orthogonal_form(F: FieldSpec, n: int, eps: int) -> FormSpec:
    if F.p == 2:
        if n % 2:
            raise ClassicalError("odd-dimensional orthogonal groups in characteristic 2 are not supported")
        m = n // 2
        G = hyperbolic_gram(n)
        Q = np.zeros((n, n), dtype=np.int64)
        for i in range(m):
            Q[i, m + i] = 1
        if eps == -1:
            # last pair (m-1, 2m-1): x^2 + x y + c y^2
            Q[m - 1, m - 1] = 1
            Q[n - 1, n - 1] = anisotropic_constant(F)
        return FormSpec("quadratic", _tup(G), _tup(Q), eps)
    if n % 2:
        m = n // 2
        G = np.zeros((n, n), dtype=np.int64)
        G[: 2 * m, : 2 * m] = hyperbolic_gram(2 * m)
        G[n - 1, n - 1] = 1
        return FormSpec("symmetric", _tup(G), None, 0)
    if eps == 1:
        return FormSpec("symmetric", _tup(hyperbolic_gram(n)), None, 1)
    m = n // 2
    G = np.zeros((n, n), dtype=np.int64)
    G[: 2 * (m - 1), : 2 * (m - 1)] = hyperbolic_gram(2 * (m - 1))
    G[n - 2, n - 2] = 1
    G[n - 1, n - 1] = F.neg(F.nonsquare())
    return FormSpec("symmetric", _tup(G), None, -1)


# ---------------------------------------------------------------------------

@dataclass
class ClassicalGroupSpec:
    family: str
    n: int
    q: int
    eps: int
    F: FieldSpec                 # field of matrix entries (F_{q^2} for unitary families)
    form: FormSpec
    generators: list = field(default_factory=list)
    seed: int = 0

    @property
    def p(self) -> int:
        return self.F.p

    @property
    def unitary(self) -> bool:
        return self.family in ("GU", "SU")

    @property
    def sigma(self) -> int:
        """Frobenius power for the form twist (x -> x^q on F_{q^2})."""
        return self.F.k // 2 if self.unitary else 0

    @property
    def base_field(self) -> FieldSpec:
        return field_of_order(self.q)

    @property
    def order(self) -> int:
        return group_order(self.family, self.n, self.q, self.eps)

    @property
    def label(self) -> str:
        sign = {1: "+", -1: "-", 0: ""}[self.eps] if self.family in ("GO", "SO", "Omega") else ""
        return f"{self.family}{sign}{self.n}({self.q})"

    @property
    def G(self) -> np.ndarray:
        return self.form.G

    def twist(self, A: np.ndarray) -> np.ndarray:
        return L.conj(self.F, A, self.sigma) if self.sigma else L.asmat(A)

    def bilinear(self, u: np.ndarray, v: np.ndarray):
        """f(u, v) = u^T G v^sigma, vectorized over trailing columns of v."""
        return L.matmul(self.F, L.matmul(self.F, np.atleast_2d(u), self.G), self.twist(v))

    def quad(self, v: np.ndarray) -> int:
        """Quadratic form value (orthogonal families)."""
        v = L.asmat(v).reshape(-1)
        if self.form.kind == "quadratic":
            return int(L.matmul(self.F, L.matmul(self.F, v[None, :], self.form.Qm), v[:, None])[0, 0])
        if self.form.kind == "symmetric":
            b = int(L.matmul(self.F, L.matmul(self.F, v[None, :], self.G), v[:, None])[0, 0])
            return int(self.F.mul(b, self.F.inv(2)))
        raise ClassicalError("no quadratic form")

    def reflection(self, v: np.ndarray) -> np.ndarray:
        """Orthogonal reflection (transvection in char 2) in an anisotropic vector v."""
        F = self.F
        v = L.asmat(v).reshape(-1)
        Qv = self.quad(v)
        if Qv == 0:
            raise ClassicalError("reflection needs an anisotropic vector")
        fv = L.matmul(F, v[None, :], self.G)[0]            # x -> f(v, x) (symmetric)
        c = F.inv(Qv)
        coef = F.mul(fv, c)
        return L.sub(F, L.identity(F, self.n), L.asmat(F.mul(v[:, None], coef[None, :])))

    @cached_property
    def enumerated(self) -> EnumeratedGroup:
        return enumerate_classical(self)


# ---------------------------------------------------------------------------
# random isometries via random bases with the standard Gram matrix

def _solve_affine(F: FieldSpec, A: np.ndarray, c: np.ndarray, n: int):
    if A.shape[0] == 0:
        return np.zeros(n, dtype=np.int64), np.eye(n, dtype=np.int64)
    x0 = L.solve(F, A, c)
    if x0 is None:
        raise ClassicalError("inconsistent linear constraints")
    return x0, L.nullspace(F, A)


def isometric_basis(F: FieldSpec, T: np.ndarray, S: np.ndarray, sigma: int, rng: random.Random,
                    diag_check=None) -> np.ndarray:
    """Columns b_i with b_i^T T b_j^sigma = S[i, j]: an isometry from (F^n, S) into (F^n, T).

    Built one vector at a time; by Witt's theorem every partial solution extends, so
    sampling each step uniformly gives a uniform isometry. `diag_check(i, b)` replaces
    the diagonal condition (used for quadratic forms in characteristic 2).
    """
    n = S.shape[0]
    T = L.asmat(T)
    S = L.asmat(S)

    def tw(v):
        return L.conj(F, v, sigma) if sigma else v

    B = np.zeros((T.shape[0], n), dtype=np.int64)
    m = T.shape[0]
    for i in range(n):
        rows = [L.matvec(F, T, tw(B[:, j])) for j in range(i)]
        A = np.array(rows, dtype=np.int64).reshape(len(rows), m)
        x0, N = _solve_affine(F, A, S[i, :i].copy(), m)
        for _ in range(SAMPLE_RETRIES):
            r = np.array([rng.randrange(F.q) for _ in range(N.shape[1])], dtype=np.int64)
            b = L.add(F, x0, L.matvec(F, N, r)) if N.shape[1] else x0.copy()
            if not b.any() or (i and L.rank(F, np.concatenate([B[:, :i], b[:, None]], axis=1)) <= i):
                continue
            if diag_check is not None:
                ok = diag_check(i, b)
            else:
                val = L.matmul(F, L.matmul(F, b[None, :], T), tw(b)[:, None])[0, 0]
                ok = int(val) == int(S[i, i])
            if ok:
                B[:, i] = b
                break
        else:
            raise ClassicalError("basis extension failed: forms are not isometric")
    return B


def random_isometry(spec: ClassicalGroupSpec, rng: random.Random) -> np.ndarray:
    """Uniform element of the full isometry group (or GL for GL/SL)."""
    F, n = spec.F, spec.n
    if spec.family in ("GL", "SL"):
        while True:
            A = np.array([[rng.randrange(F.q) for _ in range(n)] for _ in range(n)], dtype=np.int64)
            if L.det(F, A):
                return A
    check = None
    if spec.form.kind == "symplectic":
        def check(i, b):
            return True
    elif spec.form.kind == "quadratic":
        Qm = spec.form.Qm

        def check(i, b):
            return spec.quad(b) == int(Qm[i, i])
    return isometric_basis(F, spec.G, spec.G, spec.sigma, rng, check)


def _fixers(spec: ClassicalGroupSpec):
    """Elements used to move a random isometry into the requested subgroup."""
    F = spec.F
    n = spec.n
    out = {}
    if spec.family in ("SO", "Omega") and F.p != 2 and n >= 1:
        v = _anisotropic_with_class(spec, square=True)
        out["det"] = spec.reflection(v)
        if spec.family == "Omega" and n >= 2:
            # two reflections with nonsquare product of norms
            u = _anisotropic_with_class(spec, square=True)
            w = _anisotropic_with_class(spec, square=False)
            out["spin"] = L.matmul(F, spec.reflection(u), spec.reflection(w))
    if spec.family == "Omega" and F.p == 2:
        v = _anisotropic_with_class(spec, square=True)
        out["dickson"] = spec.reflection(v)
    return out


def _anisotropic_with_class(spec, square: bool) -> np.ndarray:
    F, n = spec.F, spec.n
    for i in range(n):
        for j in range(i, n):
            for a in range(1, F.q):
                for b in (range(F.q) if j > i else [0]):
                    v = np.zeros(n, dtype=np.int64)
                    v[i] = a
                    if j > i:
                        v[j] = b
                    Qv = spec.quad(v)
                    if Qv and (F.p == 2 or F.is_square(Qv) == square):
                        return v
    raise ClassicalError("no anisotropic vector of the required class")


def random_member(spec: ClassicalGroupSpec, rng: random.Random) -> np.ndarray:
    F = spec.F
    g = random_isometry(spec, rng)
    fam = spec.family
    if fam == "SL":
        d = L.det(F, g)
        g = g.copy()
        g[:, 0] = F.mul(g[:, 0], F.inv(d))
    elif fam == "SU":
        d = L.det(F, g)
        D = L.identity(F, spec.n)
        D[0, 0] = F.inv(d)
        g = L.matmul(F, g, D)
    elif fam in ("SO", "Omega") and F.p != 2:
        fx = _fixers(spec)
        if L.det(F, g) != 1:
            g = L.matmul(F, g, fx["det"])
        if fam == "Omega" and spec.n >= 2 and spinor_norm(spec, g) == -1:
            g = L.matmul(F, g, fx["spin"])
    elif fam == "Omega" and F.p == 2:
        if dickson_invariant(spec, g) == 1:
            g = L.matmul(F, g, _fixers(spec)["dickson"])
    return g


# ---------------------------------------------------------------------------

def _check_params(family: str, n: int, q: int, eps: int) -> int:
    if family not in FAMILIES:
        raise ClassicalError(f"unknown family {family!r}")
    if n < 1:
        raise ClassicalError("dimension must be positive")
    p, _ = _prime_power(q)
    if family == "Sp" and n % 2:
        raise ClassicalError("Sp needs even dimension")
    if family in ("GO", "SO", "Omega"):
        if n % 2:
            if p == 2:
                raise ClassicalError("odd-dimensional orthogonal groups need odd q")
            return 0
        if eps not in (1, -1):
            raise ClassicalError("even-dimensional orthogonal groups need eps = +1 or -1")
        return eps
    return 1 if family not in ("GU", "SU") else -1


def build_group(family: str, n: int, q: int, eps: int = 1, seed: int = 0, ngens: int = 2,
                verify: bool = True) -> ClassicalGroupSpec:
    """Group spec with seeded random generators; order-verified when small enough."""
    eps = _check_params(family, n, q, eps)
    p, f = _prime_power(q)
    if family in ("GU", "SU"):
        F = GF(p, 2 * f)
        form = FormSpec("hermitian", _tup(np.eye(n, dtype=np.int64)), None, -1)
    else:
        F = GF(p, f)
        if family == "Sp":
            form = FormSpec("symplectic", _tup(symplectic_gram(F, n)), None, 0)
        elif family in ("GO", "SO", "Omega"):
            form = orthogonal_form(F, n, eps)
        else:
            form = FormSpec("none", _tup(np.eye(n, dtype=np.int64)), None, 0)
    spec = ClassicalGroupSpec(family, n, q, eps, F, form, [], seed)
    rng = random.Random(seed)
    spec.generators = [Mat(F, random_member(spec, rng)) for _ in range(ngens)]
    if verify and spec.order <= ENUMERATION_VERIFY_LIMIT:
        for _ in range(8):
            G = enumerate_group(spec.generators, cap=spec.order, label=spec.label)
            if G.order == spec.order:
                spec.__dict__["enumerated"] = G
                break
            spec.generators.append(Mat(F, random_member(spec, rng)))
        else:
            raise ClassicalError("could not generate the full group")
    return spec


def enumerate_classical(spec: ClassicalGroupSpec, cap: int | None = None) -> EnumeratedGroup:
    G = enumerate_group(spec.generators, cap=cap or max(spec.order, 1), label=spec.label)
    if G.order != spec.order:
        raise ClassicalError(f"generated subgroup has order {G.order}, expected {spec.order}")
    return G


# ---------------------------------------------------------------------------
# membership

@dataclass
class Membership:
    ok: bool
    reason: str

    def __bool__(self):
        return self.ok


def preserves_form(spec: ClassicalGroupSpec, g: np.ndarray) -> bool:
    F = spec.F
    g = L.asmat(g)
    if spec.form.kind == "none":
        return True
    G = spec.G
    lhs = L.matmul(F, L.matmul(F, L.transpose(g), G), spec.twist(g))
    if not np.array_equal(lhs, G):
        return False
    if spec.form.kind == "quadratic":
        return all(spec.quad(g[:, i]) == int(spec.form.Qm[i, i]) for i in range(spec.n))
    return True


def membership(spec: ClassicalGroupSpec, g) -> Membership:
    a = g.a if isinstance(g, Mat) else L.asmat(g)
    if isinstance(g, Mat) and g.F != spec.F:
        raise ClassicalError("field mismatch")
    if a.shape != (spec.n, spec.n):
        raise ClassicalError("dimension mismatch")
    F = spec.F
    d = L.det(F, a)
    if d == 0:
        return Membership(False, "singular")
    if not preserves_form(spec, a):
        return Membership(False, "form not preserved")
    fam = spec.family
    if fam in ("SL", "SU") and d != 1:
        return Membership(False, f"determinant {FieldElement(F, d)} != 1")
    if fam in ("SO", "Omega") and F.p != 2 and d != 1:
        return Membership(False, "determinant -1")
    if fam == "Omega":
        if F.p != 2 and spec.n >= 2 and spinor_norm(spec, a) != 1:
            return Membership(False, "spinor norm -1")
        if F.p == 2 and dickson_invariant(spec, a) != 0:
            return Membership(False, "Dickson invariant 1")
    return Membership(True, "member")


# ---------------------------------------------------------------------------
# spinor norm and Dickson invariant

def reflection_factorization(spec: ClassicalGroupSpec, g: np.ndarray, seed: int = 0) -> list[np.ndarray]:
    """Anisotropic vectors v_1..v_r with g = r_{v_1} ... r_{v_r}."""
    F, n = spec.F, spec.n
    rng = random.Random(seed)
    h = L.asmat(g).copy()
    vecs: list[np.ndarray] = []
    I = L.identity(F, n)
    def singular_image(k: np.ndarray) -> bool:
        W = L.span_basis(F, L.sub(F, k, I))
        if W.shape[1] == 0:
            return False
        M = L.matmul(F, L.matmul(F, L.transpose(W), spec.G), W)
        return not M.any() and all(spec.quad(W[:, t]) == 0 for t in range(W.shape[1]))

    for _ in range(8 * n + 16):
        if np.array_equal(h, I):
            break
        D = L.sub(F, h, I)
        cand = [np.eye(n, dtype=np.int64)[:, i] for i in range(n)]
        cand += [np.array([rng.randrange(F.q) for _ in range(n)], dtype=np.int64) for _ in range(4 * n)]
        w = None
        first = None
        for x in cand:
            y = L.matvec(F, D, x)
            if not (y.any() and spec.quad(y)):
                continue
            nxt = L.matmul(F, spec.reflection(y), h)
            if first is None:
                first = y
            # avoid landing on an element whose moved space is totally singular
            if np.array_equal(nxt, I) or not singular_image(nxt):
                w = y
                break
        if w is None:
            w = first
        if w is None:
            # im(h - 1) is totally singular: leave it with a random reflection
            while True:
                u = np.array([rng.randrange(F.q) for _ in range(n)], dtype=np.int64)
                if spec.quad(u):
                    break
            w = u
        # r_w h; record w so that h_old = r_w (r_w h_old)
        h = L.matmul(F, spec.reflection(w), h)
        vecs.append(w)
    else:
        raise ClassicalError("reflection factorization did not terminate")
    prod = I
    for v in vecs:
        prod = L.matmul(F, prod, spec.reflection(v))
    if not np.array_equal(prod, L.asmat(g)):
        raise ClassicalError("reflection factorization failed verification")
    return vecs


def spinor_norm(spec: ClassicalGroupSpec, g) -> int:
    """+1 or -1: product of Q(v_i) over a reflection factorization, modulo squares."""
    a = g.a if isinstance(g, Mat) else L.asmat(g)
    F = spec.F
    if F.p == 2:
        raise ClassicalError("spinor norm is for odd characteristic; use dickson_invariant")
    if spec.form.kind != "symmetric":
        raise ClassicalError("spinor norm needs an orthogonal group")
    val = 1
    for v in reflection_factorization(spec, a):
        val = int(F.mul(val, spec.quad(v)))
    return 1 if F.is_square(val) else -1


def wall_spinor_norm(spec: ClassicalGroupSpec, g) -> int:
    """Spinor norm from the discriminant of the Wall form on im(g - 1).

    On W = im(g - 1) put [u, v] = f(u, y) with v = (g - 1) y; the spinor norm is
    (-1)^dim W * det[ , ] modulo squares; for a reflection r_v this is Q(v).
    """
    a = g.a if isinstance(g, Mat) else L.asmat(g)
    F, n = spec.F, spec.n
    D = L.sub(F, a, L.identity(F, n))
    W = L.span_basis(F, D)
    r = W.shape[1]
    if r == 0:
        return 1
    Y = L.solve(F, D, W)
    M = L.matmul(F, L.matmul(F, L.transpose(W), spec.G), Y)
    det = L.det(F, M)
    c = F.pow(int(F.neg(1)), r)
    val = int(F.mul(det, c))
    return 1 if F.is_square(val) else -1


def dickson_invariant(spec: ClassicalGroupSpec, g) -> int:
    a = g.a if isinstance(g, Mat) else L.asmat(g)
    F = spec.F
    return L.rank(F, L.sub(F, a, L.identity(F, spec.n))) % 2


# ---------------------------------------------------------------------------
# eigenvalues

@dataclass
class EigenProfile:
    factors: list              # [(monic irreducible Poly, multiplicity)]
    e_values: dict             # alpha code -> dim Ker(x - alpha)
    field: FieldSpec

    @property
    def degree_total(self) -> int:
        return sum(f.deg * m for f, m in self.factors)

    def multiplicity(self, alpha: int) -> int:
        """Algebraic multiplicity of an eigenvalue alpha lying in the matrix field."""
        F = self.field
        for f, m in self.factors:
            if f.deg == 1 and int(F.neg(f.c[0])) == int(alpha):
                return m
        return 0

    def eigenvalue_multiplicities(self) -> list[int]:
        """Multiplicity of every eigenvalue over the closure (one entry per eigenvalue)."""
        return [m for f, m in self.factors for _ in range(f.deg)]

    def roots_in(self, ext: FieldSpec) -> list[tuple[int, int]]:
        """Eigenvalues as codes of `ext` (must contain all splitting fields) with multiplicities."""
        from .ff import embedding, roots as proots

        emb = embedding(self.field, ext)
        out = []
        for f, m in self.factors:
            g = Poly(ext, [emb(c) for c in f.c])
            for r in proots(g):
                out.append((r, m))
        return sorted(out)


def mu_subgroup(F: FieldSpec, order: int) -> list[int]:
    """Codes of the subgroup of F^* of the given order."""
    if (F.q - 1) % order:
        raise ClassicalError("order does not divide |F^*|")
    z = F.pow(F.generator, (F.q - 1) // order)
    out = [1]
    for _ in range(order - 1):
        out.append(int(F.mul(out[-1], z)))
    return out


def eigen_profile(spec: ClassicalGroupSpec, g, alphas: list[int] | None = None) -> EigenProfile:
    a = g.a if isinstance(g, Mat) else L.asmat(g)
    F = spec.F
    fac = factor_poly(L.charpoly(F, a))
    if alphas is None:
        q = spec.q
        alphas = mu_subgroup(F, q + 1 if spec.unitary else q - 1)
    ev = {}
    I = L.identity(F, spec.n)
    for al in alphas:
        ev[int(al)] = L.kernel_dim(F, L.sub(F, a, L.scalar_mul(F, al, I)))
    return EigenProfile(fac, ev, F)


def e_value(spec, g, alpha: int) -> int:
    a = g.a if isinstance(g, Mat) else L.asmat(g)
    F = spec.F
    return L.kernel_dim(F, L.sub(F, a, L.scalar_mul(F, alpha, L.identity(F, spec.n))))


def is_semisimple(F: FieldSpec, a: np.ndarray) -> bool:
    fac = factor_poly(L.charpoly(F, a))
    rad = Poly(F, [1])
    for f, _ in fac:
        rad = rad * f
    return not L.poly_eval_matrix(F, rad, a).any()


def rank_of(spec: ClassicalGroupSpec) -> int:
    if spec.family in ("GL", "SL", "GU", "SU"):
        return spec.n
    return spec.n // 2


def _regular_by_multiplicity(spec, a: np.ndarray) -> bool:
    F = spec.F
    fac = factor_poly(L.charpoly(F, a))
    if not is_semisimple(F, a):
        return False
    one, mone = 1, int(F.neg(1))
    mult = {}
    others = []
    for f, m in fac:
        if f.deg == 1 and int(F.neg(f.c[0])) in (one, mone):
            mult[int(F.neg(f.c[0]))] = mult.get(int(F.neg(f.c[0])), 0) + m
        else:
            others.append(m)
    if any(m > 1 for m in others):
        return False
    fam = spec.family
    m1, mm1 = mult.get(one, 0), mult.get(mone, 0)
    if fam in ("GL", "SL", "GU", "SU"):
        return all(v <= 1 for v in mult.values())
    if fam == "Sp":
        return m1 == 0 and mm1 == 0
    if F.p == 2:
        return m1 <= (2 if spec.n % 2 == 0 else 1)
    if spec.n % 2 == 0:
        return m1 <= 2 and mm1 <= 2
    return m1 == 1 and mm1 <= 2


def lie_centralizer_dim(spec: ClassicalGroupSpec, a: np.ndarray) -> int:
    """dim of {X in Lie algebra : Xg = gX} (gl_n for the linear and unitary families)."""
    F, n = spec.F, spec.n
    fam = spec.family
    params: list[np.ndarray] = []
    if fam in ("GL", "SL", "GU", "SU"):
        for i in range(n):
            for j in range(n):
                E = np.zeros((n, n), dtype=np.int64)
                E[i, j] = 1
                params.append(E)
    else:
        Ginv = L.inverse(F, spec.G)
        for i in range(n):
            for j in range(i, n):
                S = np.zeros((n, n), dtype=np.int64)
                if fam == "Sp":
                    S[i, j] = 1
                    S[j, i] = 1
                else:
                    if i == j:
                        continue
                    S[i, j] = 1
                    S[j, i] = F.neg(1)
                params.append(L.matmul(F, Ginv, S))
    cols = []
    for X in params:
        C = L.sub(F, L.matmul(F, X, a), L.matmul(F, a, X))
        cols.append(C.reshape(-1))
    M = np.array(cols, dtype=np.int64).T
    return len(params) - L.rank(F, M)


def is_regular_semisimple(spec: ClassicalGroupSpec, g, both: bool = True) -> bool:
    a = g.a if isinstance(g, Mat) else L.asmat(g)
    ra = _regular_by_multiplicity(spec, a)
    if not both:
        return ra
    semis = is_semisimple(spec.F, a)
    rb = semis and lie_centralizer_dim(spec, a) == rank_of(spec)
    if ra != rb:
        raise CriteriaDisagreement(f"multiplicity criterion {ra} vs Lie centralizer criterion {rb}")
    return ra


# ---------------------------------------------------------------------------
# centralizers in GL

def _conjugate_partition(lam: list[int]) -> list[int]:
    return [sum(1 for x in lam if x > i) for i in range(max(lam, default=0))]


def gl_centralizer_order(q: int, data) -> int:
    """|C_{GL_n(q)}(x)| from elementary divisor data [(deg f, partition), ...]."""
    total = Fraction(1)
    for deg, lam in data:
        lam = [int(x) for x in lam if x]
        if deg < 1 or not lam:
            raise ClassicalError("inconsistent elementary divisor data")
        Q = q ** deg
        conj = _conjugate_partition(lam)
        t = Fraction(Q) ** sum(c * c for c in conj)
        for part in set(lam):
            m = lam.count(part)
            for j in range(1, m + 1):
                t *= 1 - Fraction(1, Q ** j)
        total *= t
    if total.denominator != 1:
        raise ClassicalError("non-integral centralizer order")
    return int(total)


def elementary_divisors(F: FieldSpec, a: np.ndarray) -> list[tuple[Poly, list[int]]]:
    """[(irreducible f, Jordan partition)] for each distinct irreducible factor of the char poly."""
    a = L.asmat(a)
    n = a.shape[0]
    out = []
    for f, m in factor_poly(L.charpoly(F, a)):
        fa = L.poly_eval_matrix(F, f, a)
        ranks = [n]
        P = L.identity(F, n)
        while True:
            P = L.matmul(F, P, fa)
            ranks.append(L.rank(F, P))
            if ranks[-1] == ranks[-2] or len(ranks) > m + 1:
                break
        # number of blocks of size >= j
        ge = [(ranks[j - 1] - ranks[j]) // f.deg for j in range(1, len(ranks))]
        lam = []
        for j in range(len(ge)):
            nxt = ge[j + 1] if j + 1 < len(ge) else 0
            lam += [j + 1] * (ge[j] - nxt)
        out.append((f, sorted(lam, reverse=True)))
    return out


def gl_centralizer_of(F: FieldSpec, a: np.ndarray) -> int:
    return gl_centralizer_order(F.q, [(f.deg, lam) for f, lam in elementary_divisors(F, a)])


def commuting_algebra_basis(F: FieldSpec, a: np.ndarray) -> list[np.ndarray]:
    a = L.asmat(a)
    n = a.shape[0]
    rows = []
    for i in range(n):
        for j in range(n):
            E = np.zeros((n, n), dtype=np.int64)
            E[i, j] = 1
            rows.append(L.sub(F, L.matmul(F, E, a), L.matmul(F, a, E)).reshape(-1))
    M = np.array(rows, dtype=np.int64).T
    N = L.nullspace(F, M)
    return [N[:, t].reshape(n, n) for t in range(N.shape[1])]


def brute_centralizer_order(spec: ClassicalGroupSpec, g, limit: int = 1 << 24) -> int:
    """|C_G(g)| by enumerating the commuting algebra and filtering by membership."""
    a = g.a if isinstance(g, Mat) else L.asmat(g)
    F = spec.F
    basis = commuting_algebra_basis(F, a)
    d = len(basis)
    if F.q ** d > limit:
        raise ClassicalError(f"commuting algebra too large ({F.q}^{d})")
    count = 0
    Bs = np.array(basis, dtype=np.int64)                     # d x n x n
    for coeffs in itertools.product(range(F.q), repeat=d):
        X = np.zeros((spec.n, spec.n), dtype=np.int64)
        for c, B in zip(coeffs, Bs):
            if c:
                X = L.add(F, X, L.scalar_mul(F, c, B))
        if L.det(F, X) and membership(spec, X).ok:
            count += 1
    return count


def witt_type(spec: ClassicalGroupSpec) -> int:
    """Witt type (+1/-1) of an even-dimensional orthogonal form."""
    F, n = spec.F, spec.n
    if n % 2:
        return 0
    if F.p != 2:
        m = n // 2
        d = L.det(F, spec.G)
        if m % 2:
            d = int(F.neg(d))
        return 1 if F.is_square(d) else -1
    # Arf invariant over a symplectic basis of the polar form
    basis = _symplectic_basis(F, spec.G)
    arf = 0
    for e, f in basis:
        arf = int(F.add(arf, F.mul(spec.quad(e), spec.quad(f))))
    image = {int(F.add(F.mul(t, t), t)) for t in range(F.q)}
    return 1 if arf in image else -1


def _symplectic_basis(F: FieldSpec, G: np.ndarray) -> list[tuple[np.ndarray, np.ndarray]]:
    n = G.shape[0]
    remaining = [np.eye(n, dtype=np.int64)[:, i] for i in range(n)]
    V = np.eye(n, dtype=np.int64)
    pairs = []

    def f(u, v):
        return int(L.matmul(F, L.matmul(F, u[None, :], G), v[:, None])[0, 0])

    W = V
    while W.shape[1]:
        e = W[:, 0]
        partner = None
        for t in range(1, W.shape[1]):
            if f(e, W[:, t]):
                partner = W[:, t]
                break
        if partner is None:
            raise ClassicalError("degenerate form")
        partner = L.asmat(F.mul(partner, F.inv(f(e, partner))))
        pairs.append((e, partner))
        # project the rest onto the complement of <e, partner>
        rest = []
        for t in range(W.shape[1]):
            w = W[:, t]
            w2 = L.sub(F, w, L.add(F, L.asmat(F.mul(e, f(w, partner))), L.asmat(F.mul(partner, F.neg(f(w, e))))))
            # f(e,partner)=1 and f(partner,e) = -1 (alternating)
            rest.append(w2)
        R = np.array(rest, dtype=np.int64).T
        W = L.span_basis(F, R) if R.size else np.zeros((n, 0), dtype=np.int64)
    return pairs
