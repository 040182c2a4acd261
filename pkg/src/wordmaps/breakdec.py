"""Breakability of elements of classical groups and orthogonal form-module decompositions.

Symplectic / orthogonal groups: x is breakable if some proper nonzero
nondegenerate x-invariant U gives x = x1 x2 in Cl(U) x Cl(U^perp) with either
both factors' groups perfect, or Cl(U^perp) perfect and x1 = +-1.  Here Cl is
Sp, or Omega for orthogonal spaces.

Linear / unitary groups: x is breakable if it lies in a natural GL_a x GL_b
(GU_a x GU_b on an orthogonal splitting) with a + b = n, 1 <= a <= b, and
a, b != 2 for q = 2, 3 (additionally != 3 for GU over F_4).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg as L
from .classical import (ClassicalError, ClassicalGroupSpec, FormSpec, brute_centralizer_order, elementary_divisors,
                        gl_centralizer_of, mu_subgroup, random_member, spinor_norm)
from .ff import GF, FieldSpec, Poly, embedding
from .groups import Mat

DECOMP_TRIES = 400


class BreakabilityError(ValueError):
    pass


# ---------------------------------------------------------------------------
# perfection of small classical groups

def sp_perfect(dim: int, q: int) -> bool:
    """Sp_dim(q) is perfect except Sp_2(2), Sp_2(3), Sp_4(2)."""
    return (dim, q) not in {(2, 2), (2, 3), (4, 2)}


def omega_perfect(dim: int, q: int, wtype: int) -> bool:
    """Omega(U) for a nondegenerate quadratic space of dimension dim and Witt type wtype."""
    if dim <= 1:
        return True                     # trivial group
    if dim == 2:
        # cyclic of order (q - wtype) / gcd(2, q - 1): perfect only when trivial
        return (q - wtype) // (1 if q % 2 == 0 else 2) == 1
    if dim == 3:
        return q >= 4                   # PSL_2(q)
    if dim == 4:
        return wtype == -1 or q >= 4    # PSL_2(q^2), or SL_2(q) o SL_2(q)
    return True


# ---------------------------------------------------------------------------
# Jordan data

def _monic_key(f: Poly) -> tuple:
    return tuple(int(c) for c in f.monic().c)


def jordan_data(F: FieldSpec, a: np.ndarray) -> list[tuple[Poly, list[int]]]:
    """[(monic irreducible f, block sizes of the f-primary part, descending)]."""
    return [(f.monic(), lam) for f, lam in elementary_divisors(F, L.asmat(a))]


def bilinear_dual(f: Poly) -> Poly:
    """Monic polynomial whose roots are the inverses of those of f."""
    F = f.spec
    c = list(f.c)
    if c[0] == 0:
        raise BreakabilityError("zero root has no dual")
    return Poly(F, list(reversed(c))).monic()


def unitary_dual(f: Poly, sigma: int) -> Poly:
    """Roots lambda -> lambda^(-q), where x -> x^q is the field involution."""
    F = f.spec
    c = [int(F.frob(int(x), sigma)) for x in f.c]
    return bilinear_dual(Poly(F, c))


# ---------------------------------------------------------------------------
# atoms: indecomposable nondegenerate summands described by their invariants

@dataclass
class Atom:
    dim: int
    tag: str                       # block | paired | selfdual | V | W
    poly: tuple                    # key of the primary polynomial (first of a dual pair)
    size: int                      # Jordan block size
    sign: int = 0                  # +-1 for unipotent-times-sign pieces, 0 otherwise
    disc: int = 1                  # square class of the Gram determinant (orthogonal)
    det: int = 1                   # determinant of x on the atom (+-1, orthogonal)
    theta: int = 1                 # spinor norm of x on the atom (orthogonal)
    basis: np.ndarray | None = field(default=None, repr=False)

    @property
    def group_key(self) -> tuple:
        return (self.tag, self.poly, self.size, self.sign)

    @property
    def scalar(self) -> bool:
        return self.sign != 0 and self.size == 1


def _sign_of(F: FieldSpec, f: Poly) -> int:
    if f.deg != 1:
        return 0
    root = int(F.neg(f.c[0]))
    if root == 1:
        return 1
    if root == int(F.neg(1)):
        return -1
    return 0


def gl_atoms(F: FieldSpec, a: np.ndarray) -> list[Atom]:
    out = []
    for f, sizes in jordan_data(F, a):
        for k in sizes:
            out.append(Atom(k * f.deg, "block", _monic_key(f), k))
    return out


def gu_atoms(F: FieldSpec, a: np.ndarray, sigma: int) -> list[Atom]:
    data = jordan_data(F, a)
    out = []
    for f, sizes in data:
        fd = unitary_dual(f, sigma)
        kf, kd = _monic_key(f), _monic_key(fd)
        if kf == kd:
            out += [Atom(k * f.deg, "selfdual", kf, k) for k in sizes]
        elif kf < kd:
            out += [Atom(2 * k * f.deg, "paired", kf, k) for k in sizes]
    return out


def sp_atoms(F: FieldSpec, a: np.ndarray) -> list[Atom]:
    """Indecomposable summands of a symplectic module in odd characteristic."""
    if F.p == 2:
        raise BreakabilityError("use the concrete decomposition in characteristic 2")
    out = []
    for f, sizes in jordan_data(F, a):
        fd = bilinear_dual(f)
        kf, kd = _monic_key(f), _monic_key(fd)
        s = _sign_of(F, f)
        if s:
            for k in sorted(set(sizes), reverse=True):
                r = sizes.count(k)
                if k % 2 == 0:
                    out += [Atom(k, "V", kf, k, s) for _ in range(r)]
                else:
                    if r % 2:
                        raise BreakabilityError("odd Jordan blocks of +-1 must pair in a symplectic space")
                    out += [Atom(2 * k, "W", kf, k, s) for _ in range(r // 2)]
        elif kf == kd:
            out += [Atom(k * f.deg, "selfdual", kf, k) for k in sizes]
        elif kf < kd:
            out += [Atom(2 * k * f.deg, "paired", kf, k) for k in sizes]
    return out


# ---------------------------------------------------------------------------
# concrete orthogonal decomposition

@dataclass
class FormModuleDecomposition:
    family: str
    n: int
    atoms: list[Atom]

    @property
    def dims(self) -> list[int]:
        return [a.dim for a in self.atoms]

    def labels(self) -> list[str]:
        out = []
        for a in self.atoms:
            if a.tag in ("V", "W"):
                sgn = "" if a.sign == 1 else "-"
                out.append(f"{sgn}{a.tag}({a.dim if a.tag == 'V' else a.size})")
            else:
                out.append(f"{a.tag}[deg {a.dim}, J{a.size}]")
        return out


def _form(spec: ClassicalGroupSpec, U: np.ndarray, W: np.ndarray) -> np.ndarray:
    return L.matmul(spec.F, L.matmul(spec.F, L.transpose(U), spec.G), spec.twist(W))


def _krylov(F: FieldSpec, a: np.ndarray, vs: list[np.ndarray]) -> np.ndarray:
    cols = []
    for v in vs:
        cur = v
        for _ in range(a.shape[0]):
            cols.append(cur)
            cur = L.matvec(F, a, cur)
    return L.span_basis(F, np.array(cols, dtype=np.int64).T)


def _perp_within(spec: ClassicalGroupSpec, W: np.ndarray, S: np.ndarray) -> np.ndarray:
    """{w in span(W) : f(w, s) = 0 for s in S}."""
    M = _form(spec, W, S)                 # (dim W, dim S): row i = f(w_i, s_j)
    C = L.nullspace(spec.F, L.transpose(M))
    return L.matmul(spec.F, W, C) if C.shape[1] else np.zeros((W.shape[0], 0), dtype=np.int64)


def _split_component(spec, a, W, y, rng, sign, poly_key, self_dual, deg):
    F = spec.F
    out = []
    while W.shape[1]:
        # height of the nilpotent y on W
        k, P = 0, W
        while P.any():
            P = L.matmul(F, y, P)
            k += 1
        top = L.mat_pow(F, y, k - 1)

        def top_vec():
            while True:
                c = np.array([rng.randrange(F.q) for _ in range(W.shape[1])], dtype=np.int64)
                v = L.matvec(F, W, c)
                if L.matvec(F, top, v).any():
                    return v

        found = None
        for attempt in range(DECOMP_TRIES):
            gens = [top_vec()] if attempt < DECOMP_TRIES // 2 else [top_vec(), top_vec()]
            C = _krylov(F, a, gens)
            blk = k * deg * (1 if self_dual else 2)
            if C.shape[1] != blk * len(gens):
                continue
            if L.rank(F, _form(spec, C, C)) == C.shape[1]:
                found = (C, len(gens))
                break
        if found is None:
            raise BreakabilityError("failed to split off a nondegenerate summand")
        C, ng = found
        if sign:
            tag = "V" if ng == 1 else "W"
        else:
            tag = "selfdual" if self_dual else "paired"
            if ng == 2:
                tag += "2"
        out.append(Atom(C.shape[1], tag, poly_key, k, sign, basis=C))
        W = _perp_within(spec, W, C)
    return out


def _restrict(F: FieldSpec, a: np.ndarray, B: np.ndarray) -> np.ndarray:
    X = L.solve(F, B, L.matmul(F, a, B))
    if X is None:
        raise BreakabilityError("subspace is not invariant")
    return X


def _square_class(F: FieldSpec, v: int) -> int:
    return 1 if F.is_square(int(v)) else -1


def _atom_invariants(spec: ClassicalGroupSpec, a: np.ndarray, atom: Atom):
    F = spec.F
    B = atom.basis
    Gs = _form(spec, B, B)
    xs = _restrict(F, a, B)
    atom.disc = _square_class(F, L.det(F, Gs))
    d = L.det(F, xs)
    atom.det = 1 if d == 1 else -1
    sub = ClassicalGroupSpec("GO", B.shape[1], spec.q, 0, F, FormSpec("symmetric", tuple(map(tuple, Gs.tolist()))))
    atom.theta = spinor_norm(sub, xs)


def form_module_decomposition(spec: ClassicalGroupSpec, x, seed: int = 0) -> FormModuleDecomposition:
    """Orthogonal decomposition of the natural module into indecomposable nondegenerate summands."""
    a = x.a if isinstance(x, Mat) else L.asmat(x)
    F, n = spec.F, spec.n
    fam = spec.family
    if fam in ("GL", "SL"):
        return FormModuleDecomposition(fam, n, gl_atoms(F, a))
    if spec.form.kind == "quadratic":
        raise BreakabilityError("orthogonal decompositions in characteristic 2 are not implemented")
    rng = random.Random(seed)
    data = jordan_data(F, a)
    done: set = set()
    atoms: list[Atom] = []
    for f, sizes in data:
        kf = _monic_key(f)
        if kf in done:
            continue
        fd = unitary_dual(f, spec.sigma) if spec.unitary else bilinear_dual(f)
        kd = _monic_key(fd)
        done |= {kf, kd}
        m = sum(sizes)
        Vf = L.nullspace(F, L.poly_eval_matrix(F, _ppow(f, m), a))
        yf = L.poly_eval_matrix(F, f, a)
        if kd == kf:
            W, y, self_dual = Vf, yf, True
        else:
            md = sum(dict((_monic_key(g), s) for g, s in data)[kd])
            Vd = L.nullspace(F, L.poly_eval_matrix(F, _ppow(fd, md), a))
            W = np.concatenate([Vf, Vd], axis=1)
            y = L.matmul(F, yf, L.poly_eval_matrix(F, fd, a))
            self_dual = False
        sign = _sign_of(F, f) if not spec.unitary else 0
        atoms += _split_component(spec, a, W, y, rng, sign, min(kf, kd), self_dual, f.deg)
    if spec.form.kind == "symmetric":
        for at in atoms:
            _atom_invariants(spec, a, at)
    if sum(at.dim for at in atoms) != n:
        raise BreakabilityError("summand dimensions do not add up")
    return FormModuleDecomposition(fam, n, atoms)


def _ppow(f: Poly, m: int) -> Poly:
    out = Poly(f.spec, [1])
    for _ in range(m):
        out = out * f
    return out


def verify_decomposition(spec: ClassicalGroupSpec, x, dec: FormModuleDecomposition) -> dict:
    """Nondegeneracy, mutual orthogonality, invariance and a reassembled conjugate element."""
    from .classical import isometric_basis

    a = x.a if isinstance(x, Mat) else L.asmat(x)
    F = spec.F
    B = np.concatenate([at.basis for at in dec.atoms], axis=1)
    res = {"spans": L.rank(F, B) == spec.n}
    Gb = _form(spec, B, B)
    blocks = []
    grams = []
    i = 0
    ok_orth = True
    ok_nd = True
    for at in dec.atoms:
        d = at.dim
        Gi = Gb[i:i + d, i:i + d]
        ok_nd &= L.rank(F, Gi) == d
        rest = np.concatenate([Gb[i:i + d, :i], Gb[i:i + d, i + d:]], axis=1)
        ok_orth &= not rest.any()
        blocks.append(_restrict(F, a, at.basis))
        grams.append(Gi)
        i += d
    res["nondegenerate"] = ok_nd
    res["orthogonal"] = ok_orth
    # rebuild an element from the restricted blocks on a fresh isometric basis
    A = isometric_basis(F, spec.G, L.block_diag(grams), spec.sigma, random.Random(1))
    y = L.matmul(F, L.matmul(F, A, L.block_diag(blocks)), L.inverse(F, A))
    res["reassembled"] = y
    return res


# ---------------------------------------------------------------------------
# breakability

@dataclass
class BreakResult:
    breakable: bool
    witness: str
    atoms: list[Atom]

    def __bool__(self):
        return self.breakable


def _allowed_gl(n: int, q: int, unitary: bool):
    out = []
    for a in range(1, n // 2 + 1):
        b = n - a
        if q in (2, 3) and 2 in (a, b):
            continue
        if unitary and q == 2 and 3 in (a, b):
            continue
        out.append(a)
    return out


def _subset_sums(dims: list[int]) -> set[int]:
    sums = {0}
    for d in dims:
        sums |= {s + d for s in sums}
    return sums


def _linear_breakable(spec, atoms) -> BreakResult:
    n, q = spec.n, spec.q
    sums = _subset_sums([at.dim for at in atoms])
    for a in _allowed_gl(n, q, spec.unitary):
        if a in sums or (n - a) in sums:
            return BreakResult(True, f"{a}+{n - a}", atoms)
    return BreakResult(False, "", atoms)


def _sp_breakable(spec, atoms) -> BreakResult:
    n, q = spec.n, spec.q
    sums = _subset_sums([at.dim for at in atoms])
    for d in sorted(sums):
        if 0 < d < n and sp_perfect(d, q) and sp_perfect(n - d, q):
            return BreakResult(True, f"Sp_{d} x Sp_{n - d}", atoms)
    for s in (1, -1):
        fixed = [at.dim for at in atoms if at.scalar and at.sign == s]
        for c in range(1, len(fixed) + 1):
            d = sum(fixed[:c])
            if 0 < d < n and sp_perfect(n - d, q):
                return BreakResult(True, f"{'+' if s == 1 else '-'}1 on dim {d}", atoms)
    return BreakResult(False, "", atoms)


def _wtype(F: FieldSpec, dim: int, disc: int) -> int:
    if dim % 2:
        return 0
    sgn = _square_class(F, F.neg(1)) ** (dim // 2)
    return 1 if disc * sgn == 1 else -1


def _orth_options(F: FieldSpec, group: list[Atom]):
    """(count, dim, disc, det, theta) choices for the part of U inside one isotypic group."""
    at0 = group[0]
    r = len(group)
    flexible = at0.tag == "V" and at0.sign != 0 and at0.size % 2 == 1
    two = _square_class(F, 2)
    out = [(0, 0, 1, 1, 1)]
    total_disc = 1
    for at in group:
        total_disc *= at.disc
    for c in range(1, r + 1):
        dim = c * at0.dim
        if flexible:
            discs = [1, -1] if c < r else [total_disc]
            for dsc in discs:
                det = at0.sign ** dim
                theta = dsc * two ** dim if at0.sign == -1 else 1
                out.append((c, dim, dsc, det, theta))
        else:
            dsc = at0.disc ** c
            out.append((c, dim, dsc, at0.det ** c, at0.theta ** c))
    return out


def _orth_breakable(spec, dec: FormModuleDecomposition) -> BreakResult:
    F, n, q = spec.F, spec.n, spec.q
    atoms = dec.atoms
    groups: dict = {}
    for at in atoms:
        groups.setdefault(at.group_key, []).append(at)
    glist = list(groups.values())
    opts = [_orth_options(F, g) for g in glist]
    tot_disc = _square_class(F, L.det(F, spec.G))
    tot_det = 1
    tot_theta = 1
    for at in atoms:
        tot_det *= at.det
        tot_theta *= at.theta
    for choice in itertools.product(*opts):
        dim = sum(c[1] for c in choice)
        if not 0 < dim < n:
            continue
        disc = det = theta = 1
        for c in choice:
            disc *= c[2]
            det *= c[3]
            theta *= c[4]
        cdisc, cdet, ctheta = tot_disc * disc, tot_det * det, tot_theta * theta
        if det != 1 or theta != 1 or cdet != 1 or ctheta != 1:
            continue
        pu = omega_perfect(dim, q, _wtype(F, dim, disc))
        pc = omega_perfect(n - dim, q, _wtype(F, n - dim, cdisc))
        if pu and pc:
            return BreakResult(True, f"Omega_{dim} x Omega_{n - dim}", atoms)
        scalar = all(c[0] == 0 or (g[0].scalar) for c, g in zip(choice, glist))
        signs = {g[0].sign for c, g in zip(choice, glist) if c[0]}
        if pc and scalar and len(signs) == 1:
            return BreakResult(True, f"scalar on dim {dim}", atoms)
    return BreakResult(False, "", atoms)


def is_breakable(spec: ClassicalGroupSpec, x, seed: int = 0) -> BreakResult:
    a = x.a if isinstance(x, Mat) else L.asmat(x)
    F = spec.F
    fam = spec.family
    if fam in ("GL", "SL"):
        return _linear_breakable(spec, gl_atoms(F, a))
    if fam in ("GU", "SU"):
        return _linear_breakable(spec, gu_atoms(F, a, spec.sigma))
    if fam == "Sp":
        if F.p == 2:
            dec = form_module_decomposition(spec, a, seed)
            return _sp_breakable(spec, dec.atoms)
        return _sp_breakable(spec, sp_atoms(F, a))
    if fam in ("GO", "SO", "Omega"):
        if F.p == 2:
            raise BreakabilityError("orthogonal breakability in characteristic 2 is not implemented")
        return _orth_breakable(spec, form_module_decomposition(spec, a, seed))
    raise BreakabilityError(f"unsupported family {fam}")


# ---------------------------------------------------------------------------
# brute-force reference: scan every subspace

def iter_subspaces(F: FieldSpec, n: int, k: int):
    """Bases (n x k) of all k-dimensional subspaces of F^n, one per subspace (row-reduced)."""
    q = F.q
    for pivots in itertools.combinations(range(n), k):
        free = [(r, c) for r in range(k) for c in range(pivots[r] + 1, n) if c not in pivots]
        for vals in itertools.product(range(q), repeat=len(free)):
            M = np.zeros((k, n), dtype=np.int64)
            for r, c in enumerate(pivots):
                M[r, c] = 1
            for (r, c), v in zip(free, vals):
                M[r, c] = v
            yield M.T


def _sub_spec(spec: ClassicalGroupSpec, Gs: np.ndarray) -> ClassicalGroupSpec:
    return ClassicalGroupSpec("GO", Gs.shape[0], spec.q, 0, spec.F,
                              FormSpec("symmetric", tuple(map(tuple, Gs.tolist()))))


def brute_force_breakable(spec: ClassicalGroupSpec, x) -> bool:
    """Literal check over all nondegenerate x-invariant subspaces (small spaces only)."""
    a = x.a if isinstance(x, Mat) else L.asmat(x)
    F, n, q = spec.F, spec.n, spec.q
    sym = spec.family in ("GO", "SO", "Omega")
    if spec.family not in ("Sp", "GO", "SO", "Omega") or (sym and F.p == 2):
        raise BreakabilityError("reference check covers symplectic and odd-q orthogonal groups")
    I = L.identity(F, n)

    def info(B):
        d = B.shape[1]
        Gs = _form(spec, B, B)
        xs = _restrict(F, a, B)
        scal = [s for s in (1, -1) if not L.sub(F, xs, L.scalar_mul(F, s % F.p, L.identity(F, d))).any()]
        if not sym:
            return True, sp_perfect(d, q), bool(scal)
        ok = L.det(F, xs) == 1 and spinor_norm(_sub_spec(spec, Gs), xs) == 1
        disc = _square_class(F, L.det(F, Gs))
        return ok, omega_perfect(d, q, _wtype(F, d, disc)), bool(scal)

    dims = range(2, n, 2) if not sym else range(1, n)
    for k in dims:
        for U in iter_subspaces(F, n, k):
            if L.rank(F, _form(spec, U, U)) != k:
                continue
            if L.rank(F, np.concatenate([U, L.matmul(F, a, U)], axis=1)) != k:
                continue
            W = _perp_within(spec, I, U)
            ok_u, perf_u, scal_u = info(U)
            ok_w, perf_w, _ = info(W)
            if ok_u and ok_w and perf_w and (perf_u or scal_u):
                return True
    return False


# ---------------------------------------------------------------------------
# centralizer orders and sampled bound checks

def gu_centralizer_order(spec: ClassicalGroupSpec, x) -> int:
    """|C_GU(x)| from elementary divisors over F_{q^2}."""
    a = x.a if isinstance(x, Mat) else L.asmat(x)
    q = spec.q
    total = Fraction(1)
    for f, lam in jordan_data(spec.F, a):
        kf, kd = _monic_key(f), _monic_key(unitary_dual(f, spec.sigma))
        if kf > kd:
            continue                     # counted with its partner
        conj = [sum(1 for part in lam if part >= i) for i in range(1, lam[0] + 1)]
        if kf == kd:
            Q, sgn = q ** f.deg, -1
        else:
            Q, sgn = q ** (2 * f.deg), 1
        t = Fraction(Q) ** sum(c * c for c in conj)
        for part in set(lam):
            for j in range(1, lam.count(part) + 1):
                t *= 1 - Fraction(1, (sgn * Q) ** j)
        total *= t
    if total.denominator != 1:
        raise BreakabilityError("non-integral centralizer order")
    return int(total)


def centralizer_order(spec: ClassicalGroupSpec, x, limit: int = 1 << 22) -> int:
    """Closed form for GL / GU; commuting-algebra enumeration (up to limit) otherwise."""
    a = x.a if isinstance(x, Mat) else L.asmat(x)
    if spec.family == "GL":
        return gl_centralizer_of(spec.F, a)
    if spec.family == "GU":
        return gu_centralizer_order(spec, a)
    return brute_centralizer_order(spec, a, limit)


def _sp_table_bound(m: int, q: int) -> int:
    """Centralizer bound for unbreakable elements of Sp_2m(q)."""
    if q == 2:
        return 9 * 2 ** (2 * m + 9)
    if q == 3:
        return 24 * 3 ** (2 * m - 2) if m % 2 else 48 * 3 ** (2 * m + 1)
    if m % 2:
        return q ** (2 * m - 1) * (q * q - 1) if q % 2 else 2 * q ** (2 * m) * (q + 1)
    return 2 * q ** m if q % 2 else q ** (2 * m) * (q * q - 1)


def _orth_table_bound(dim: int, q: int) -> int:
    m = dim // 2
    if q == 2:
        return 3 * 2 ** (2 * m + 6)
    if q == 3:
        return 2 ** 6 * 3 ** (2 * m + 4) if dim % 2 == 0 else 2 ** 4 * 3 ** (2 * m + 3)
    return q ** (2 * m - 2) * (q + 1) ** 2


def _eigen_dims(spec: ClassicalGroupSpec, a: np.ndarray) -> list[int]:
    """dim Ker(x - alpha) over F_{q^2} for alpha^(q-1) = 1 or alpha^(q+1) = 1."""
    F = spec.F
    E = GF(F.p, 2 * F.k)
    emb = embedding(F, E)
    b = np.vectorize(lambda v: int(emb(int(v))))(a) if F != E else a
    I = L.identity(E, a.shape[0])
    alphas = sorted(set(mu_subgroup(E, spec.q - 1)) | set(mu_subgroup(E, spec.q + 1)))
    return [L.kernel_dim(E, L.sub(E, b, L.scalar_mul(E, al, I))) for al in alphas]


LEMMAS = ("sp-centralizer", "orthogonal-centralizer", "eigenspace", "gl2-centralizer",
          "gu2-centralizer", "q3-centralizer", "large-q-centralizer")


def _hypothesis(spec: ClassicalGroupSpec, lemma: str):
    """(statistic, test) for the bound; raises when the group is outside its range."""
    fam, n, q = spec.family, spec.n, spec.q
    orth = fam in ("GO", "SO", "Omega")

    def need(cond, msg):
        if not cond:
            raise BreakabilityError(f"{lemma}: {msg}")

    if lemma == "gl2-centralizer":
        need(fam == "GL" and q == 2 and n >= 7, "needs GL_n(2), n >= 7")
        return "centralizer", lambda c: c <= 2 ** (n + 2) or (n % 2 == 0 and c == 9 * 2 ** n)
    if lemma == "gu2-centralizer":
        need(fam == "GU" and q == 2 and n >= 10, "needs GU_n(2), n >= 10")
        return "centralizer", lambda c: c <= 2 ** (n + 4) * 9
    if lemma == "q3-centralizer":
        need(fam in ("GL", "GU") and q == 3 and n >= 7, "needs GL_n(3) or GU_n(3), n >= 7")
        return "centralizer", lambda c: c <= 3 ** (n + 2) * 16
    if lemma == "large-q-centralizer":
        need(fam in ("GL", "GU") and q >= 4, "needs GL_n(q) or GU_n(q), q >= 4")
        bound = q ** n - 1 if fam == "GL" else q ** (n - 1) * (q + 1)
        return "centralizer", lambda c: c <= bound
    if lemma == "sp-centralizer":
        m = n // 2
        need(fam == "Sp" and m >= 2 and (q != 3 or m >= 4) and (q != 2 or m >= 7), "dimension outside range")
        bound = _sp_table_bound(m, q)
        return "centralizer", lambda c: c <= bound
    if lemma == "orthogonal-centralizer":
        need(orth and spec.F.p != 2 and n >= (13 if q <= 3 else 7), "needs odd q and large dimension")
        bound = _orth_table_bound(n, q)
        return "centralizer", lambda c: c <= bound
    if lemma == "eigenspace":
        if q in (2, 3):
            need(fam == "Sp" or orth, "needs a symplectic or orthogonal group")
            need(n >= (8 if fam == "Sp" and q == 3 else 14 if fam == "Sp" else 13), "dimension outside range")
            return "eigen", lambda dims: max(dims) <= 4
        need(orth and q == 5 and n % 2 == 0 and n >= 10, "needs O_2n(5), n >= 5")
        return "eigen", lambda dims: max(dims) <= 2
    raise BreakabilityError(f"unknown bound {lemma!r}; expected one of {LEMMAS}")


@dataclass
class BoundViolation:
    sample: int
    value: object
    matrix: np.ndarray = field(repr=False)


@dataclass
class BoundReport:
    lemma: str
    group: str
    samples: int
    unbreakable: int
    checked: int
    skipped: int
    violations: list[BoundViolation]

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        return (f"{self.lemma} on {self.group}: {self.samples} samples, {self.unbreakable} unbreakable, "
                f"{self.checked} checked, {self.skipped} skipped, {len(self.violations)} violations")


def sample_bound_check(spec: ClassicalGroupSpec, lemma: str, samples: int = 10_000, seed: int = 0,
                       centralizer_limit: int = 1 << 22) -> BoundReport:
    """Draw seeded uniform elements, keep the unbreakable ones and test the stated bound."""
    kind, test = _hypothesis(spec, lemma)
    rng = random.Random(seed)
    unb = checked = skipped = 0
    viol: list[BoundViolation] = []
    for s in range(samples):
        a = random_member(spec, rng)
        if is_breakable(spec, a, seed=s):
            continue
        unb += 1
        if kind == "eigen":
            val = _eigen_dims(spec, a)
        else:
            try:
                val = centralizer_order(spec, a, centralizer_limit)
            except ClassicalError:
                skipped += 1
                continue
        checked += 1
        if not test(val):
            viol.append(BoundViolation(s, val, a))
    return BoundReport(lemma, spec.label, samples, unb, checked, skipped, viol)
