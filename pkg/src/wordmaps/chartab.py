"""Exact character tables: Dixon-Schneider over F_l, cyclotomic lift, checks and a text format."""
from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np
import sympy

from . import linalg as L
from .cyclo import (Cyclotomic, crt_symmetric, embed, field as cfield, format_cyclotomic,
                    parse_cyclotomic, primes_for_bound, primitive_roots_mod)
from .ff import GF
from .groups import EnumeratedGroup

SPLIT_RETRIES = 32


class DixonError(RuntimeError):
    pass


class TableSyntaxError(ValueError):
    def __init__(self, msg: str, line: int, col: int = 1):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


class TableSemanticError(ValueError):
    pass


@dataclass
class CharacterTable:
    label: str
    order: int
    exponent: int
    sizes: list[int]
    orders: list[int]
    inverse: list[int]
    powermaps: dict[int, list[int]]
    values: np.ndarray          # (chars, classes, phi(exponent)) python ints

    @property
    def k(self) -> int:
        return len(self.sizes)

    @property
    def num_classes(self) -> int:
        return len(self.sizes)

    @property
    def conductor(self) -> int:
        return self.exponent

    @cached_property
    def degrees(self) -> list[int]:
        return [int(self.values[i, 0, 0]) for i in range(self.k)]

    @property
    def centralizer_orders(self) -> list[int]:
        return [self.order // s for s in self.sizes]

    def value(self, i: int, j: int) -> Cyclotomic:
        return Cyclotomic(self.exponent, list(self.values[i, j]))

    def row(self, i: int) -> list[Cyclotomic]:
        return [self.value(i, j) for j in range(self.k)]

    @cached_property
    def values_i64(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.int64)

    def __eq__(self, other):
        if not isinstance(other, CharacterTable):
            return NotImplemented
        return (self.label, self.order, self.exponent, self.sizes, self.orders, self.inverse,
                self.powermaps) == (other.label, other.order, other.exponent, other.sizes, other.orders,
                                    other.inverse, other.powermaps) and \
            np.array_equal(np.asarray(self.values, dtype=object), np.asarray(other.values, dtype=object))

    def power_map(self, N: int) -> list[int] | None:
        """Class map g -> g^N from stored prime power maps and Galois action; None if undetermined."""
        if N < 0:
            raise ValueError("N must be nonnegative")
        ident = list(range(self.k))
        if N == 0:
            return [0] * self.k
        out = ident
        for p, mult in sympy.factorint(N).items():
            pm = self.prime_power_map(p)
            if pm is None:
                return None
            for _ in range(mult):
                out = [pm[c] for c in out]
        return out

    def prime_power_map(self, p: int) -> list[int] | None:
        if p in self.powermaps:
            return self.powermaps[p]
        if math.gcd(p, self.exponent) == 1:
            return self.galois_class_map(p)
        return None

    def galois_class_map(self, r: int) -> list[int]:
        """For r coprime to the exponent: class j -> class whose column is sigma_r(column j)."""
        e = self.exponent
        G = np.asarray(cfield(e).galois_matrix(r % e or e), dtype=object)
        cols = {tuple(np.asarray(self.values[:, j], dtype=object).flatten()): j for j in range(self.k)}
        out = []
        for j in range(self.k):
            img = np.asarray(self.values[:, j], dtype=object) @ G
            key = tuple(img.flatten())
            if key not in cols:
                raise TableSemanticError("table columns are not closed under Galois action")
            out.append(cols[key])
        return out


# ---------------------------------------------------------------------------
# Dixon-Schneider

def dixon_prime(exponent: int, order: int) -> int:
    """Least prime l = 1 (mod exponent) with l > 2*sqrt(order)."""
    l = exponent + 1
    while not (l * l > 4 * order and sympy.isprime(l)):
        l += exponent
    return l


def _roots_mod(coeffs: list[int], l: int) -> list[int]:
    xs = np.arange(l, dtype=np.int64)
    acc = np.zeros(l, dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc * xs + c) % l
    return [int(x) for x in np.nonzero(acc == 0)[0]]


def _restrict(F, M: np.ndarray, W: np.ndarray) -> np.ndarray:
    """Matrix B with M W = W B for a column basis W of an M-invariant subspace."""
    MW = L.matmul(F, M, W)
    _, piv = L.rref(F, W.T)
    rows = piv  # pivot columns of W^T = independent rows of W
    Wsub = W[rows]
    return L.matmul(F, L.inverse(F, Wsub), MW[rows])


def common_eigenvectors(mats: list[np.ndarray], l: int, seed: int) -> list[np.ndarray]:
    """Split F_l^k into simultaneous eigenlines of commuting diagonalizable matrices."""
    F = GF(l)
    k = mats[0].shape[0]
    rng = random.Random(seed)
    todo = [np.eye(k, dtype=np.int64)]
    lines = []
    while todo:
        W = todo.pop()
        m = W.shape[1]
        if m == 1:
            lines.append(W[:, 0])
            continue
        for attempt in range(SPLIT_RETRIES):
            coef = [rng.randrange(l) for _ in mats]
            M = np.zeros((k, k), dtype=np.int64)
            for c, A in zip(coef, mats):
                if c:
                    M = (M + c * A) % l
            B = _restrict(F, M, W)
            cp = L.charpoly(F, B)
            rts = _roots_mod(list(cp.c), l)
            if len(rts) >= 2:
                pieces = []
                for lam in rts:
                    N = L.nullspace(F, (B - lam * np.eye(m, dtype=np.int64)) % l)
                    pieces.append(L.matmul(F, W, N))
                if sum(p.shape[1] for p in pieces) != m:
                    raise DixonError("class matrices not diagonalizable mod l")
                todo.extend(pieces)
                break
        else:
            raise DixonError(f"eigenspace splitting failed after {SPLIT_RETRIES} retries")
    return lines


def _power_class_sequences(G: EnumeratedGroup) -> list[np.ndarray]:
    seqs = []
    for r, o in zip(G.reps, G.orders):
        g = G.perms[r].astype(np.int64)
        rows = np.empty((o, G.degree), dtype=np.int64)
        cur = np.arange(G.degree)
        for s in range(o):
            rows[s] = cur
            cur = g[cur]
        seqs.append(G.class_of_id[G.ids_of(rows)])
    return seqs


def dixon_schneider(G: EnumeratedGroup, seed: int = 0, verify: bool = True) -> CharacterTable:
    k = G.num_classes
    e = G.exponent
    n = G.order
    l = dixon_prime(e, n)
    T = G.structure_tensor % l
    mats = [T[a] for a in range(1, k)] or [np.zeros((1, 1), dtype=np.int64)]
    lines = common_eigenvectors(mats, l, seed) if k > 1 else [np.ones(1, dtype=np.int64)]
    if len(lines) != k:
        raise DixonError("wrong number of eigenlines")
    sizes = np.array(G.sizes, dtype=np.int64)
    inv = np.array(G.inverse_class)
    size_inv = np.array([pow(int(s), -1, l) for s in sizes], dtype=np.int64)
    chi = np.zeros((k, k), dtype=np.int64)
    degs = []
    for i, w in enumerate(lines):
        if w[0] == 0:
            raise DixonError("eigenline vanishes at the identity class")
        w = (w * pow(int(w[0]), -1, l)) % l
        S = int(np.sum((w * w[inv]) % l * size_inv % l) % l)
        target = n % l * pow(S, -1, l) % l
        d = next((d for d in range(1, math.isqrt(n) + 1) if d * d % l == target), None)
        if d is None:
            raise DixonError("no admissible degree")
        degs.append(d)
        chi[i] = w * d % l * size_inv % l
    # lift to cyclotomic integers
    F = cfield(e)
    z = primitive_roots_mod(e, l)[0]
    seqs = _power_class_sequences(G)
    V = np.zeros((k, k, F.phi), dtype=object)
    degs_arr = np.array(degs)
    for c in range(k):
        o = G.orders[c]
        zo = pow(z, e // o, l)
        Z = np.array([[pow(zo, (-t * s) % o, l) for s in range(o)] for t in range(o)], dtype=np.int64)
        X = chi[:, seqs[c]]                                   # chars x o
        m = np.zeros((k, o), dtype=np.int64)
        for s in range(o):                                     # m = X @ Z.T without overflow
            m = (m + X[:, s:s + 1] * Z[:, s][None, :]) % l
        m = m * pow(o, -1, l) % l
        if (m > degs_arr[:, None]).any() or not np.array_equal(m.sum(axis=1), degs_arr):
            raise DixonError(f"multiplicity lift failed at class {c}")
        basis = np.array([F.R[(t * (e // o)) % e] for t in range(o)], dtype=object)
        V[:, c, :] = m.astype(object) @ basis
    rows = list(range(k))
    flat = [tuple(int(x) for x in V[i].flatten()) for i in rows]
    trivial = [all(int(V[i, j, 0]) == 1 and not any(V[i, j, 1:]) for j in range(k)) for i in rows]
    rows.sort(key=lambda i: (degs[i], not trivial[i], flat[i]))
    V = V[rows]
    pms = {p: G.power_class_map(p) for p in sympy.primefactors(e)}
    table = CharacterTable(G.label, n, e, list(G.sizes), list(G.orders), list(G.inverse_class), pms, V)
    if verify:
        cert = check_orthogonality(table)
        if not cert.ok:
            raise DixonError(f"computed table fails orthogonality: {cert}")
    return table


# ---------------------------------------------------------------------------
# exact checks

@dataclass
class OrthogonalityResult:
    ok: bool
    kind: str = ""
    pair: tuple[int, int] | None = None
    defect: str = ""
    primes: tuple[int, ...] = ()

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return f"certificate (primes {list(self.primes)})"
        return f"violation: {self.kind} {self.pair} defect {self.defect}"


def _conj_index(e: int) -> np.ndarray:
    units = cfield(e).units
    pos = {u: i for i, u in enumerate(units)}
    return np.array([pos[(-u) % e or e] if e > 1 else 0 for u in units])


def _col_l1_bound(e: int) -> int:
    R = cfield(e).R
    return max(sum(abs(int(R[w, t])) for w in range(R.shape[0])) for t in range(R.shape[1]))


def _product_coeff_bound(e: int, c1: int, c2: int) -> int:
    """Coefficient bound for a*conj(b) with |coeffs| <= c1, c2 in the power basis."""
    kappa = _col_l1_bound(e)
    phi = cfield(e).phi
    return phi * c1 * c2 * kappa * kappa


def check_orthogonality(T: CharacterTable) -> OrthogonalityResult:
    k, e, n = T.k, T.exponent, T.order
    degs = T.degrees
    if sum(d * d for d in degs) != n:
        return OrthogonalityResult(False, "degree-sum", None, str(sum(d * d for d in degs) - n))
    c = max(abs(int(x)) for x in np.asarray(T.values, dtype=object).flat)
    pb = _product_coeff_bound(e, c, c)
    bound_row = n * pb + n
    bound_col = k * pb + n
    primes = primes_for_bound(e, max(bound_row, bound_col))
    ci = _conj_index(e)
    sizes = np.array(T.sizes, dtype=np.int64)
    cents = np.array(T.centralizer_orders, dtype=np.int64)
    for P in primes:
        X = embed(T.values, e, P)                              # (chars, classes, roots)
        for r in range(X.shape[2]):
            A = X[:, :, r]
            B = X[:, :, ci[r]]
            Rw = (A * (sizes % P)) % P @ B.T % P
            target = np.diag(np.full(k, n % P))
            bad = np.argwhere(Rw != target)
            if len(bad):
                i, j = map(int, bad[0])
                return OrthogonalityResult(False, "row", (i, j), str(_exact_row_sum(T, i, j) - (n if i == j else 0)))
            Cw = A.T @ B % P
            target = np.diag(cents % P)
            bad = np.argwhere(Cw != target)
            if len(bad):
                i, j = map(int, bad[0])
                tgt = T.centralizer_orders[i] if i == j else 0
                return OrthogonalityResult(False, "column", (i, j), str(_exact_col_sum(T, i, j) - tgt))
    return OrthogonalityResult(True, primes=primes)


def _exact_row_sum(T, i, j) -> Cyclotomic:
    acc = Cyclotomic.integer(T.exponent, 0)
    for c in range(T.k):
        acc = acc + T.value(i, c) * T.value(j, c).conj() * T.sizes[c]
    return acc


def _exact_col_sum(T, a, b) -> Cyclotomic:
    acc = Cyclotomic.integer(T.exponent, 0)
    for i in range(T.k):
        acc = acc + T.value(i, a) * T.value(i, b).conj()
    return acc


def _batch_mul_mod(A: np.ndarray, B: np.ndarray, e: int, p: int) -> np.ndarray:
    """Products of cyclotomic vectors (rows of A, B) reduced mod p."""
    F = cfield(e)
    Rm = np.mod(F.R.astype(object), p).astype(np.int64)
    phi = F.phi
    full = np.zeros((A.shape[0], e), dtype=np.int64)
    for t in range(phi):
        if not A[:, t].any():
            continue
        idx = (np.arange(phi) + t) % e
        np.add.at(full, (slice(None), idx), (A[:, t:t + 1] * B) % p)
        full %= p
    return full @ Rm % p


def check_power_maps(T: CharacterTable) -> tuple[bool, str]:
    """chi(g^p) against the stored maps: Galois equality when p does not divide |g|,
    the congruence chi(g^p) = chi(g)^p mod p otherwise."""
    e = T.exponent
    V = np.asarray(T.values, dtype=object)
    for p, pm in sorted(T.powermaps.items()):
        for j in range(T.k):
            o = T.orders[j]
            if T.orders[pm[j]] != o // math.gcd(o, p):
                return False, f"powermap {p}: class {j} maps to wrong element order"
            col = V[:, j, :]
            tgt = V[:, pm[j], :]
            if o % p:
                r = next(r for r in range(p, p + o * e + 1, o) if math.gcd(r, e) == 1)
                img = col @ cfield(e).galois_matrix(r % e or e)
                if not np.array_equal(img, tgt):
                    return False, f"powermap {p}: Galois mismatch at class {j}"
            else:
                base = np.mod(col, p).astype(np.int64)
                acc = np.zeros_like(base)
                acc[:, 0] = 1
                ex = p
                cur = base
                while ex:
                    if ex & 1:
                        acc = _batch_mul_mod(acc, cur, e, p)
                    cur = _batch_mul_mod(cur, cur, e, p)
                    ex >>= 1
                if not np.array_equal(acc, np.mod(tgt, p).astype(np.int64)):
                    return False, f"powermap {p}: congruence fails at class {j}"
    return True, "ok"


def nonvanishing_profile(T: CharacterTable, j: int) -> int:
    V = np.asarray(T.values, dtype=object)
    return int(sum(1 for i in range(T.k) if any(V[i, j])))


def validate_table(T: CharacterTable) -> None:
    """Raise TableSemanticError naming the first violated invariant."""
    k = T.k
    if len(T.orders) != k or len(T.inverse) != k or T.values.shape[:2] != (k, k):
        raise TableSemanticError("class data length mismatch")
    if T.values.shape[2] != cfield(T.exponent).phi:
        raise TableSemanticError("value vectors do not match the conductor")
    if sum(T.sizes) != T.order:
        raise TableSemanticError("class sizes do not sum to the order")
    if any(T.order % s for s in T.sizes):
        raise TableSemanticError("class size does not divide the order")
    if T.sizes[0] != 1 or T.orders[0] != 1:
        raise TableSemanticError("class 0 is not the identity class")
    if any(T.exponent % o for o in T.orders) or math.lcm(*T.orders) != T.exponent:
        raise TableSemanticError("exponent is not the lcm of element orders")
    if any(T.inverse[T.inverse[j]] != j for j in range(k)):
        raise TableSemanticError("inverse map is not an involution")
    needed = set(sympy.primefactors(T.exponent))
    if not needed <= set(T.powermaps):
        raise TableSemanticError("powermap incomplete")
    if any(len(m) != k or any(not 0 <= x < k for x in m) for m in T.powermaps.values()):
        raise TableSemanticError("powermap malformed")
    V = np.asarray(T.values, dtype=object)
    if any(isinstance(x, __import__("fractions").Fraction) for x in V.flat):
        raise TableSemanticError("character values must be algebraic integers")
    if any(V[0, j, 0] != 1 or any(V[0, j, 1:]) for j in range(k)):
        raise TableSemanticError("first character is not trivial")
    degs = T.degrees
    if any(d <= 0 or T.order % d or any(V[i, 0, 1:]) for i, d in enumerate(degs)):
        raise TableSemanticError("degrees must be positive divisors of the order")
    cert = check_orthogonality(T)
    if not cert.ok:
        raise TableSemanticError(f"orthogonality {cert}")
    ok, msg = check_power_maps(T)
    if not ok:
        raise TableSemanticError(msg)
    for j in range(k):
        if nonvanishing_profile(T, j) > T.centralizer_orders[j]:
            raise TableSemanticError(f"nonvanishing bound fails at class {j}")


# ---------------------------------------------------------------------------
# text format

def write_table(T: CharacterTable) -> str:
    e = T.exponent
    lines = [
        f"group {T.label}",
        f"order {T.order}",
        f"exponent {e}",
        f"classes {T.k}",
        "sizes " + " ".join(map(str, T.sizes)),
        "orders " + " ".join(map(str, T.orders)),
        "inverse " + " ".join(map(str, T.inverse)),
    ]
    for p in sorted(T.powermaps):
        lines.append(f"powermap {p} " + " ".join(map(str, T.powermaps[p])))
    for i in range(T.k):
        lines.append(f"char {i} " + " ".join(format_cyclotomic(T.value(i, j)) for j in range(T.k)))
    return "\n".join(lines) + "\n"


_HEADER = ["group", "order", "exponent", "classes", "sizes", "orders", "inverse"]


def _ints(tokens: list[str], lineno: int, line: str) -> list[int]:
    out = []
    for t in tokens:
        if not re.fullmatch(r"-?\d+", t):
            raise TableSyntaxError(f"expected integer, got {t!r}", lineno, line.find(t) + 1)
        out.append(int(t))
    return out


def parse_table(text: str, validate: bool = True) -> CharacterTable:
    header: dict[str, object] = {}
    powermaps: dict[int, list[int]] = {}
    chars: dict[int, list[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        tok = line.split()
        key = tok[0]
        if key == "group":
            if len(tok) != 2:
                raise TableSyntaxError("group takes one label", lineno)
            header["group"] = tok[1]
        elif key in ("order", "exponent", "classes"):
            if len(tok) != 2:
                raise TableSyntaxError(f"{key} takes one integer", lineno)
            header[key] = _ints(tok[1:], lineno, line)[0]
        elif key in ("sizes", "orders", "inverse"):
            header[key] = _ints(tok[1:], lineno, line)
        elif key == "powermap":
            vals = _ints(tok[1:], lineno, line)
            if not vals:
                raise TableSyntaxError("powermap needs a prime", lineno)
            powermaps[vals[0]] = vals[1:]
        elif key == "char":
            if len(tok) < 2:
                raise TableSyntaxError("char needs an index", lineno)
            idx = _ints(tok[1:2], lineno, line)[0]
            chars[idx] = (lineno, tok[2:], line)
        else:
            raise TableSyntaxError(f"unknown keyword {key!r}", lineno)
    for h in _HEADER:
        if h not in header:
            raise TableSemanticError(f"missing {h} line")
    k = header["classes"]
    e = header["exponent"]
    for h in ("sizes", "orders", "inverse"):
        if len(header[h]) != k:
            raise TableSemanticError(f"{h} has {len(header[h])} entries, expected {k}")
    if sorted(chars) != list(range(k)):
        raise TableSemanticError("char indices must be 0..k-1")
    phi = cfield(e).phi
    V = np.zeros((k, k, phi), dtype=object)
    for i, (lineno, toks, line) in chars.items():
        if len(toks) != k:
            raise TableSyntaxError(f"char {i} has {len(toks)} values, expected {k}", lineno)
        for j, t in enumerate(toks):
            try:
                z = parse_cyclotomic(t, e)
            except ValueError as exc:
                raise TableSyntaxError(str(exc), lineno, line.find(t) + 1) from None
            V[i, j] = list(z.c)
    T = CharacterTable(header["group"], header["order"], e, header["sizes"], header["orders"],
                       header["inverse"], powermaps, V)
    if validate:
        validate_table(T)
    return T


# ---------------------------------------------------------------------------
# Frobenius sums

def frobenius_integer_tensor(T: CharacterTable) -> np.ndarray:
    """S[a,b,c] = sum_chi (|G|/chi(1)) chi(a) chi(b) conj(chi(c)), exact integers.

    The structure constant is then |C_a||C_b| S[a,b,c] / |G|^2.
    """
    k, e, n = T.k, T.exponent, T.order
    V = np.asarray(T.values, dtype=object)
    c = max(abs(int(x)) for x in V.flat)
    F = cfield(e)
    kappa = _col_l1_bound(e)
    # coefficient bound for chi(a) chi(b) conj chi(c): two products
    c2 = F.phi * c * c * kappa
    c3 = F.phi * c2 * c * kappa * kappa
    bound = k * n * c3
    primes = primes_for_bound(e, bound)
    w = [n // d for d in T.degrees]
    ci = _conj_index(e)
    residues = []
    for P in primes:
        X = embed(V, e, P)
        # rationality check at a second embedding when available
        r_list = [0, X.shape[2] - 1] if X.shape[2] > 1 else [0]
        imgs = []
        for r in r_list:
            A = X[:, :, r]
            Cc = X[:, :, ci[r]]
            wa = (A * (np.array(w, dtype=np.int64) % P)[:, None]) % P
            S = np.zeros((k, k, k), dtype=np.int64)
            for a in range(k):
                Y = (wa[:, a:a + 1] * A) % P                   # chi x b
                S[a] = Y.T @ Cc % P
            imgs.append(S)
        if any(not np.array_equal(imgs[0], s) for s in imgs[1:]):
            raise TableSemanticError("Frobenius sums are not rational: table corrupted")
        residues.append(imgs[0])
    M = math.prod(primes)
    out = np.zeros((k, k, k), dtype=object)
    if len(primes) == 1:
        R = residues[0].astype(object)
        out = np.where(R > M // 2, R - M, R)
    else:
        for idx in np.ndindex(k, k, k):
            out[idx] = crt_symmetric([r[idx] for r in residues], primes)
    return out


def structure_tensor_from_table(T: CharacterTable) -> np.ndarray:
    S = frobenius_integer_tensor(T)
    n = T.order
    k = T.k
    out = np.zeros((k, k, k), dtype=object)
    for a in range(k):
        for b in range(k):
            num = T.sizes[a] * T.sizes[b]
            for c in range(k):
                v = num * int(S[a, b, c])
                if v % (n * n):
                    raise TableSemanticError("non-integral structure constant")
                out[a, b, c] = v // (n * n)
    return out
