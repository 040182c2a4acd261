"""Permutation and matrix group elements, BFS enumeration, classes and power maps.

Composition convention: ``(f*g)(i) = f(g(i))``, i.e. the right factor acts
first.  Matrices act on column vectors from the left.
"""
from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Sequence, Union

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import linalg as L
from .ff import FieldSpec, FieldElement

DEFAULT_CAP = 20_000_000


class GroupError(ValueError):
    pass


class CapExceeded(GroupError):
    def __init__(self, count: int, cap: int):
        super().__init__(f"enumeration cap {cap} exceeded after {count} elements")
        self.count = count


# ---------------------------------------------------------------------------
# elements

class Perm:
    """Permutation of {0, ..., n-1} stored as its image array."""

    __slots__ = ("images", "_key")

    def __init__(self, images: Sequence[int]):
        arr = np.asarray(images, dtype=np.int64)
        if arr.ndim != 1 or not np.array_equal(np.sort(arr), np.arange(len(arr))):
            raise GroupError("not a permutation")
        self.images = arr
        self._key = None

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(np.arange(n))

    @classmethod
    def from_cycles(cls, cycles, n: int) -> "Perm":
        """Cycles given 1-based, either as a string "(1,2,3)(4,5)" or a list of tuples."""
        if isinstance(cycles, str):
            cycles = [tuple(int(x) for x in c.split(",")) for c in re.findall(r"\(([^()]*)\)", cycles) if c.strip()]
        img = np.arange(n)
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a - 1] = b - 1
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Perm") -> "Perm":
        return Perm(self.images[other.images])

    def __call__(self, i: int) -> int:
        return int(self.images[i])

    def inverse(self) -> "Perm":
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(len(self.images))
        return Perm(inv)

    def __pow__(self, e: int) -> "Perm":
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        out = Perm.identity(self.degree)
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 1-based, each starting at its least point."""
        seen = np.zeros(self.degree, dtype=bool)
        out = []
        for i in range(self.degree):
            if seen[i]:
                continue
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j + 1)
                j = int(self.images[j])
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> list[int]:
        seen = np.zeros(self.degree, dtype=bool)
        out = []
        for i in range(self.degree):
            if seen[i]:
                continue
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = int(self.images[j])
                length += 1
            out.append(length)
        return sorted(out)

    def order(self) -> int:
        return reduce(math.lcm, self.cycle_type(), 1)

    def sign(self) -> int:
        return -1 if sum(c - 1 for c in self.cycle_type()) % 2 else 1

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.images, np.arange(self.degree)))

    @property
    def key(self) -> bytes:
        if self._key is None:
            self._key = self.images.astype(np.int32).tobytes()
        return self._key

    def __eq__(self, other):
        return isinstance(other, Perm) and np.array_equal(self.images, other.images)

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        cyc = self.cycles()
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc) or "()"


class Mat:
    """Invertible square matrix over a finite field (entries are field codes)."""

    __slots__ = ("F", "a", "_key")

    def __init__(self, F: FieldSpec, a):
        arr = L.asmat(a)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise GroupError("matrix must be square")
        self.F = F
        self.a = arr
        self._key = None

    @classmethod
    def identity(cls, F: FieldSpec, n: int) -> "Mat":
        return cls(F, L.identity(F, n))

    @property
    def degree(self) -> int:
        return self.a.shape[0]

    def __mul__(self, other: "Mat") -> "Mat":
        if other.F != self.F:
            raise GroupError("matrices over different fields")
        return Mat(self.F, L.matmul(self.F, self.a, other.a))

    def inverse(self) -> "Mat":
        return Mat(self.F, L.inverse(self.F, self.a))

    def __pow__(self, e: int) -> "Mat":
        return Mat(self.F, L.mat_pow(self.F, self.a, e))

    def det(self) -> int:
        return L.det(self.F, self.a)

    def is_identity(self) -> bool:
        return L.is_identity(self.a)

    def order(self, limit: int = 10 ** 7) -> int:
        """Multiplicative order via the order of GL_n(q) factors."""
        return matrix_order(self.F, self.a, limit)

    @property
    def key(self) -> bytes:
        if self._key is None:
            self._key = self.a.astype(np.int32).tobytes()
        return self._key

    def __eq__(self, other):
        return isinstance(other, Mat) and self.F == other.F and np.array_equal(self.a, other.a)

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return format_matrix(self.F, self.a)


Element = Union[Perm, Mat]


def format_matrix(F: FieldSpec, a: np.ndarray) -> str:
    """Rows separated by ';', entries as field literals."""
    rows = []
    for row in L.asmat(a):
        rows.append(" ".join(str(FieldElement(F, int(x))) for x in row))
    return "; ".join(rows)


def parse_matrix(text: str) -> Mat:
    from .ff import parse_element

    rows = [r.split() for r in text.strip().split(";")]
    elems = [[parse_element(x) for x in r] for r in rows]
    F = elems[0][0].spec
    if any(e.spec != F for r in elems for e in r) or any(len(r) != len(elems) for r in elems):
        raise GroupError("malformed matrix literal")
    return Mat(F, [[e.code for e in r] for r in elems])


def matrix_order(F: FieldSpec, a: np.ndarray, limit: int = 10 ** 7) -> int:
    """Order of an invertible matrix, computed from a multiple of it."""
    import sympy

    a = L.asmat(a)
    n = a.shape[0]
    if L.det(F, a) == 0:
        raise GroupError("singular matrix")
    # the order divides p^e * lcm(q^i - 1 : i <= n) for p^e >= n
    q = F.q
    m = 1
    for i in range(1, n + 1):
        m = math.lcm(m, q ** i - 1)
    pe = 1
    while pe < n:
        pe *= F.p
    m *= pe
    order = m
    for r in sympy.primefactors(m):
        while order % r == 0 and L.is_identity(L.mat_pow(F, a, order // r)):
            order //= r
    if order > limit:
        raise GroupError("order exceeds limit")
    return order


# ---------------------------------------------------------------------------
# permutation representation of matrix groups

@dataclass
class PointAction:
    """Faithful action of a matrix group on an orbit of vectors or lines."""
    F: FieldSpec
    n: int
    projective: bool
    points: np.ndarray                    # (d, n) codes
    index: dict = field(default_factory=dict)

    def encode(self, V: np.ndarray) -> np.ndarray:
        w = np.array([self.F.q ** i for i in range(self.n)], dtype=object)
        return np.array([int(x) for x in (V.astype(object) @ w)], dtype=object) if self.F.q ** self.n >= 2 ** 62 \
            else V.astype(np.int64) @ np.array([self.F.q ** i for i in range(self.n)], dtype=np.int64)

    def normalize(self, V: np.ndarray) -> np.ndarray:
        """Scale each row so its first nonzero coordinate is 1 (projective case)."""
        if not self.projective:
            return V
        V = V.copy()
        nz = V != 0
        first = np.argmax(nz, axis=1)
        lead = V[np.arange(len(V)), first]
        inv = self.F.inv(lead.astype(np.int64))
        return L.asmat(self.F.mul(V, np.asarray(inv)[:, None]))

    def images(self, M: np.ndarray) -> np.ndarray:
        W = L.matmul(self.F, self.points, L.transpose(M))      # rows are M v
        W = self.normalize(W)
        keys = self.encode(W)
        return np.array([self.index[int(k)] for k in keys], dtype=np.int64)

    def matrix_from_images(self, img: np.ndarray) -> np.ndarray:
        """Recover the matrix (up to scalars in the projective case) from point images."""
        if not self.projective:
            cols = [self.points[img[self.basis_pos[i]]] for i in range(self.n)]
            return L.asmat(np.array(cols).T)
        raise GroupError("projective images do not determine a matrix")

    @cached_property
    def basis_pos(self) -> list[int]:
        out = []
        for i in range(self.n):
            e = np.zeros(self.n, dtype=np.int64)
            e[i] = 1
            out.append(self.index[int(self.encode(e[None, :])[0])])
        return out


def orbit_action(F: FieldSpec, gens: list[np.ndarray], projective: bool = False) -> PointAction:
    n = gens[0].shape[0]
    act = PointAction(F, n, projective, np.zeros((0, n), dtype=np.int64))
    start = L.identity(F, n)
    if projective:
        frame = np.ones((1, n), dtype=np.int64)
        start = np.concatenate([start, frame], axis=0)
    pts: list[np.ndarray] = []
    frontier = []
    for row in start:
        k = int(act.encode(row[None, :])[0])
        if k not in act.index:
            act.index[k] = len(pts)
            pts.append(row)
            frontier.append(row)
    while frontier:
        block = np.array(frontier)
        frontier = []
        for g in gens:
            W = act.normalize(L.matmul(F, block, L.transpose(g)))
            for row, k in zip(W, act.encode(W)):
                k = int(k)
                if k not in act.index:
                    act.index[k] = len(pts)
                    pts.append(row)
                    frontier.append(row)
    act.points = np.array(pts, dtype=np.int64)
    return act


# ---------------------------------------------------------------------------

@dataclass
class EnumeratedGroup:
    label: str
    generators: list
    perms: np.ndarray                  # (|G|, d) images, row 0 is the identity
    action: PointAction | None = None
    field_spec: FieldSpec | None = None

    # filled in by _finish
    class_of_id: np.ndarray = None
    reps: list[int] = None
    sizes: list[int] = None
    orders: list[int] = None
    inverse_class: list[int] = None
    base: list[int] = None
    _skeys: np.ndarray = None
    _sids: np.ndarray = None

    @property
    def order(self) -> int:
        return len(self.perms)

    @property
    def degree(self) -> int:
        return self.perms.shape[1]

    @property
    def num_classes(self) -> int:
        return len(self.reps)

    @cached_property
    def exponent(self) -> int:
        return reduce(math.lcm, self.orders, 1)

    @property
    def centralizer_orders(self) -> list[int]:
        return [self.order // s for s in self.sizes]

    @cached_property
    def inv_perms(self) -> np.ndarray:
        inv = np.empty_like(self.perms)
        rows = np.arange(self.order)[:, None]
        inv[rows, self.perms] = np.arange(self.degree, dtype=self.perms.dtype)[None, :]
        return inv

    @cached_property
    def inverse_ids(self) -> np.ndarray:
        return self.ids_of(self.inv_perms)

    # -- element lookup -------------------------------------------------------
    def keys_of(self, rows: np.ndarray) -> np.ndarray:
        rows = np.asarray(rows)
        if rows.ndim == 1:
            rows = rows[None, :]
        sub = rows[:, self.base].astype(np.int64)
        radix = np.array([self.degree ** j for j in range(len(self.base))], dtype=np.int64)
        return sub @ radix

    def ids_of(self, rows: np.ndarray, check: bool = True) -> np.ndarray:
        keys = self.keys_of(rows)
        pos = np.searchsorted(self._skeys, keys)
        pos = np.minimum(pos, len(self._skeys) - 1)
        ok = self._skeys[pos] == keys
        if check and not ok.all():
            raise GroupError("element not in group")
        out = self._sids[pos]
        out[~ok] = -1
        return out

    def to_row(self, g: Element) -> np.ndarray:
        if isinstance(g, Perm):
            if g.degree != self.degree:
                raise GroupError("degree mismatch")
            return g.images
        if self.action is None:
            raise GroupError("matrix given for a permutation group")
        return self.action.images(g.a)

    def index(self, g: Element) -> int:
        return int(self.ids_of(self.to_row(g)[None, :])[0])

    def contains(self, g: Element) -> bool:
        try:
            return int(self.ids_of(self.to_row(g)[None, :], check=False)[0]) >= 0
        except KeyError:
            return False

    def element(self, i: int) -> Element:
        row = self.perms[int(i)]
        if self.action is not None and not self.action.projective:
            return Mat(self.field_spec, self.action.matrix_from_images(row))
        return Perm(row)

    def perm_of(self, i: int) -> Perm:
        return Perm(self.perms[int(i)])

    def mul_ids(self, i, j):
        """ids of g_i * g_j (vectorized over array arguments)."""
        i = np.atleast_1d(i)
        j = np.atleast_1d(j)
        rows = np.take_along_axis(self.perms[i], self.perms[j].astype(np.int64), axis=1)
        return self.ids_of(rows)

    def pow_row(self, i: int, e: int) -> np.ndarray:
        base = self.perms[int(i)].astype(np.int64)
        out = np.arange(self.degree)
        while e:
            if e & 1:
                out = out[base]
            base = base[base]
            e >>= 1
        return out

    def pow_id(self, i: int, e: int) -> int:
        return int(self.ids_of(self.pow_row(i, e)[None, :])[0])

    # -- classes --------------------------------------------------------------
    def class_of(self, g: Element) -> int:
        return int(self.class_of_id[self.index(g)])

    def class_members(self, c: int) -> np.ndarray:
        return self._members[c]

    @cached_property
    def _members(self) -> list[np.ndarray]:
        order = np.argsort(self.class_of_id, kind="stable")
        splits = np.cumsum(self.sizes)[:-1]
        return np.split(order, splits)

    def element_order_of_id(self, i: int) -> int:
        return Perm(self.perms[int(i)]).order()

    def power_class_map(self, N: int) -> list[int]:
        if N < 0:
            raise GroupError("N must be nonnegative")
        e = N % self.exponent
        return [int(self.class_of_id[self.pow_id(r, e)]) for r in self.reps]

    @cached_property
    def _power_maps(self) -> dict:
        return {}

    def prime_power_map(self, p: int) -> list[int]:
        if p not in self._power_maps:
            self._power_maps[p] = self.power_class_map(p)
        return self._power_maps[p]

    # -- structure constants --------------------------------------------------
    def class_product_counts(self, c: int) -> np.ndarray:
        """M[a, b] = #{(x, y) in C_a x C_b : x y = z} for the representative z of class c."""
        z = self.perms[self.reps[c]].astype(np.int64)
        k = self.num_classes
        out = np.zeros((k, k), dtype=np.int64)
        chunk = max(1, 4_000_000 // max(self.degree, 1))
        for s in range(0, self.order, chunk):
            xinv = self.inv_perms[s:s + chunk]
            yrows = xinv[:, z]                       # y = x^{-1} z
            ys = self.ids_of(yrows)
            ca = self.class_of_id[s:s + chunk]
            cb = self.class_of_id[ys]
            out += np.bincount(ca * k + cb, minlength=k * k).reshape(k, k)
        return out

    @cached_property
    def structure_tensor(self) -> np.ndarray:
        """T[a, b, c] = brute-force structure constants."""
        k = self.num_classes
        T = np.zeros((k, k, k), dtype=np.int64)
        for c in range(k):
            T[:, :, c] = self.class_product_counts(c)
        return T

    def brute_structure_constant(self, a: int, b: int, c: int) -> int:
        z = self.perms[self.reps[c]].astype(np.int64)
        xs = self.class_members(a)
        ys = self.ids_of(self.inv_perms[xs][:, z])
        return int(np.count_nonzero(self.class_of_id[ys] == b))

    def class_det(self) -> list[int]:
        """Determinant of each class representative (matrix groups only)."""
        if self.action is None or self.action.projective:
            raise GroupError("determinants need a linear matrix group")
        return [self.element(r).det() for r in self.reps]


def _row_bytes(rows: np.ndarray) -> list[bytes]:
    return [r.tobytes() for r in rows]


def enumerate_group(generators: Sequence[Element], cap: int = DEFAULT_CAP, label: str = "G",
                    projective: bool = False) -> EnumeratedGroup:
    """Breadth-first closure of the generators, then classes and power data."""
    gens = list(generators)
    if not gens:
        raise GroupError("need at least one generator")
    kinds = {type(g) for g in gens}
    if len(kinds) != 1:
        raise GroupError("generators of mixed type")
    action = None
    F = None
    if isinstance(gens[0], Mat):
        F = gens[0].F
        if any(g.F != F or g.degree != gens[0].degree for g in gens):
            raise GroupError("inconsistent matrix generators")
        action = orbit_action(F, [g.a for g in gens], projective)
        gen_rows = [action.images(g.a) for g in gens]
    else:
        if any(g.degree != gens[0].degree for g in gens):
            raise GroupError("inconsistent permutation degrees")
        gen_rows = [g.images for g in gens]
    d = len(gen_rows[0])
    dtype = np.int16 if d < 2 ** 15 else np.int32
    gen_rows = [np.asarray(r, dtype=np.int64) for r in gen_rows]

    ident = np.arange(d, dtype=dtype)
    seen = {ident.tobytes(): 0}
    rows = [ident]
    frontier = ident[None, :]
    while len(frontier):
        new = []
        for s in gen_rows:
            cand = frontier[:, s]                    # g * s
            for r, b in zip(cand, _row_bytes(cand)):
                if b not in seen:
                    seen[b] = len(rows)
                    rows.append(r)
                    new.append(r)
                    if len(rows) > cap:
                        raise CapExceeded(len(rows), cap)
        frontier = np.array(new, dtype=dtype) if new else np.zeros((0, d), dtype=dtype)
    del seen
    perms = np.array(rows, dtype=dtype)
    G = EnumeratedGroup(label, gens, perms, action, F)
    _finish(G, gen_rows)
    return G


def _choose_base(G: EnumeratedGroup) -> list[int]:
    if G.action is not None and not G.action.projective:
        return list(G.action.basis_pos)
    P = G.perms.astype(np.int64)
    d = G.degree
    base: list[int] = []
    key = np.zeros(G.order, dtype=np.int64)
    count = 1
    limit = 2 ** 62
    for pt in range(d):
        if count == G.order:
            break
        if d ** (len(base) + 1) >= limit:
            raise GroupError("base too long for integer keys")
        cand = key + P[:, pt] * d ** len(base)
        c = len(np.unique(cand))
        if c > count:
            base.append(pt)
            key = cand
            count = c
    return base


def _finish(G: EnumeratedGroup, gen_rows: list[np.ndarray]) -> None:
    G.base = _choose_base(G)
    keys = G.keys_of(G.perms)
    order = np.argsort(keys, kind="stable")
    G._skeys = keys[order]
    G._sids = order.astype(np.int64)
    if len(np.unique(G._skeys)) != G.order:
        raise GroupError("base does not separate elements")
    # conjugation graph under generators: g -> s g s^-1
    n = G.order
    src, dst = [np.arange(n)], [np.arange(n)]
    for s in gen_rows:
        sinv = np.argsort(s)
        conj = s[G.perms[:, sinv]]
        src.append(np.arange(n))
        dst.append(G.ids_of(conj))
    graph = coo_matrix((np.ones(sum(len(a) for a in src)), (np.concatenate(src), np.concatenate(dst))), shape=(n, n))
    ncomp, labels = connected_components(graph, directed=True, connection="weak")
    # least element id per component
    least = np.full(ncomp, n, dtype=np.int64)
    np.minimum.at(least, labels, np.arange(n))
    sizes = np.bincount(labels, minlength=ncomp)
    orders = [Perm(G.perms[r]).order() for r in least]
    ranking = sorted(range(ncomp), key=lambda c: (orders[c], sizes[c], least[c]))
    relabel = np.empty(ncomp, dtype=np.int64)
    relabel[ranking] = np.arange(ncomp)
    G.class_of_id = relabel[labels]
    G.reps = [int(least[c]) for c in ranking]
    G.sizes = [int(sizes[c]) for c in ranking]
    G.orders = [int(orders[c]) for c in ranking]
    inv_rep = G.ids_of(G.inv_perms[G.reps])
    G.inverse_class = [int(G.class_of_id[i]) for i in inv_rep]
    assert G.reps[0] == 0 and G.sizes[0] == 1


# ---------------------------------------------------------------------------
# product replacement

class ProductReplacement:
    """Seeded product-replacement random walk over a generating list."""

    def __init__(self, generators: Sequence[Element], seed: int = 0, burn_in: int = 50, slots: int = 10):
        if not generators:
            raise GroupError("need generators")
        self.rng = random.Random(seed)
        gens = list(generators)
        self.state = [gens[i % len(gens)] for i in range(max(slots, len(gens)))]
        self.acc = gens[0] * gens[0].inverse()
        for _ in range(burn_in):
            self._step()

    def _step(self):
        s = self.state
        i, j = self.rng.sample(range(len(s)), 2)
        other = s[j] if self.rng.random() < 0.5 else s[j].inverse()
        if self.rng.random() < 0.5:
            s[i] = s[i] * other
        else:
            s[i] = other * s[i]
        self.acc = self.acc * s[i]
        return self.acc

    def next(self) -> Element:
        return self._step()


def random_element(generators: Sequence[Element], seed: int = 0, burn_in: int = 50) -> Element:
    return ProductReplacement(generators, seed, burn_in).next()


# ---------------------------------------------------------------------------
# small standard groups

def alternating_generators(n: int) -> list[Perm]:
    if n < 3:
        return [Perm.identity(max(n, 1))]
    g1 = Perm.from_cycles([(1, 2, 3)], n)
    if n == 3:
        return [g1]
    if n % 2:
        g2 = Perm.from_cycles([tuple(range(1, n + 1))], n)
    else:
        g2 = Perm.from_cycles([tuple(range(2, n + 1))], n)
    return [g1, g2]


def symmetric_generators(n: int) -> list[Perm]:
    if n < 2:
        return [Perm.identity(max(n, 1))]
    return [Perm.from_cycles([(1, 2)], n), Perm.from_cycles([tuple(range(1, n + 1))], n)]


def cyclic_generators(n: int) -> list[Perm]:
    return [Perm.from_cycles([tuple(range(1, n + 1))], n) if n > 1 else Perm.identity(1)]
