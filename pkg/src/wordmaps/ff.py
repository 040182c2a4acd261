"""Finite fields F_{p^k}, univariate polynomials over them, and factorization.

Field elements are encoded as integers ``c0 + c1*p + ... + c_{k-1}*p^(k-1)``
where ``c_i`` are the coefficients of the residue class modulo the field
modulus.  All vectorized helpers accept either Python ints or numpy arrays
of such codes.
"""
from __future__ import annotations

import functools
import random
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
import sympy

TABLE_LIMIT = 1024          # build full add/mul tables up to this field size
DLOG_LIMIT = 1 << 24        # table-based discrete logarithms up to this size
EDF_RETRIES = 64


class FieldError(ValueError):
    pass


# ---------------------------------------------------------------------------
# prime-field polynomial helpers (plain int lists, low degree first)

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmod_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = list(a)
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], p - 2, p)
    db = len(b) - 1
    quo = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % p
        if c:
            quo[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return _trim(quo), _trim(a[:db])


def _pmod_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pmod_powmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _pmod_divmod(_pmod_mul(result, base, p), mod, p)[1]
        base = _pmod_divmod(_pmod_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def _pmod_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod_divmod(a, b, p)[1]
    return a


def _is_irreducible_prime(f: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    x = [0, 1]
    if _pmod_powmod(x, p ** n, f, p) != [0, 1]:
        return False
    for r in sympy.primefactors(n):
        h = _pmod_powmod(x, p ** (n // r), f, p)
        h = h + [0] * max(0, 2 - len(h))
        h[1] = (h[1] - 1) % p
        if len(_pmod_gcd(f, _trim(h), p)) > 1:
            return False
    return True


@functools.lru_cache(maxsize=None)
def conway_free_modulus(p: int, k: int) -> tuple[int, ...]:
    """Least monic irreducible of degree k over F_p.

    Candidates ``x^k + c_{k-1}x^{k-1} + ... + c_0`` are ordered by the integer
    ``sum c_i p^i``; the first irreducible one is returned.
    """
    if not sympy.isprime(p):
        raise FieldError(f"{p} is not prime")
    if k == 1:
        return (0, 1)
    for code in range(p ** k):
        low = [(code // p ** i) % p for i in range(k)]
        if low[0] == 0:
            continue
        f = low + [1]
        if _is_irreducible_prime(f, p):
            return tuple(f)
    raise FieldError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    p: int
    k: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if len(self.modulus) != self.k + 1 or self.modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree k")

    @property
    def q(self) -> int:
        return self.p ** self.k

    @property
    def is_prime(self) -> bool:
        return self.k == 1

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})"

    # -- code <-> digits -------------------------------------------------
    def digits(self, a: int) -> list[int]:
        return [(a // self.p ** i) % self.p for i in range(self.k)]

    def from_digits(self, d: Sequence[int]) -> int:
        out = 0
        for i in reversed(range(self.k)):
            out = out * self.p + (d[i] % self.p if i < len(d) else 0)
        return out

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, (list, tuple)):
            return FieldElement(self, self.from_digits(value))
        return FieldElement(self, int(value) % self.p if self.k == 1 else self.from_digits([int(value)]))

    # -- vectorized arithmetic on codes ------------------------------------
    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        t = _tables(self)
        if t is not None:
            return t.add[a, b]
        return _vec2(self, _slow_add, a, b)

    def neg(self, a):
        if self.k == 1:
            return (-a) % self.p
        t = _tables(self)
        if t is not None:
            return t.neg[a]
        return _vec1(self, _slow_neg, a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.k == 1:
            if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
                return (np.asarray(a, dtype=np.int64) * np.asarray(b, dtype=np.int64)) % self.p
            return (a * b) % self.p
        t = _tables(self)
        if t is not None:
            return t.mul[a, b]
        return _vec2(self, _slow_mul, a, b)

    def inv(self, a):
        if self.k == 1:
            if isinstance(a, np.ndarray):
                if np.any(a % self.p == 0):
                    raise ZeroDivisionError("inverse of zero")
                return _vec_powmod(a, self.p - 2, self.p)
            if a % self.p == 0:
                raise ZeroDivisionError("inverse of zero")
            return pow(int(a), self.p - 2, self.p)
        t = _tables(self)
        if isinstance(a, np.ndarray):
            if np.any(a == 0):
                raise ZeroDivisionError("inverse of zero")
            if t is not None:
                return t.inv[a]
            return np.vectorize(lambda x: self.pow(int(x), self.q - 2))(a)
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if t is not None:
            return int(t.inv[a])
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        a = int(a)
        if e < 0:
            a, e = self.inv(a), -e
        if self.k == 1:
            return pow(a, e, self.p)
        if a == 0:
            return 0 if e else 1
        e %= self.q - 1
        result = 1
        while e:
            if e & 1:
                result = int(self.mul(result, a))
            a = int(self.mul(a, a))
            e >>= 1
        return result

    def frob(self, a, times: int = 1):
        """x -> x^(p^times)."""
        times %= self.k
        if times == 0 or self.k == 1:
            return a
        t = _tables(self)
        if t is not None:
            return t.frob_power(times)[a]
        if isinstance(a, np.ndarray):
            return np.vectorize(lambda x: self.pow(int(x), self.p ** times))(a)
        return self.pow(a, self.p ** times)

    # -- structure ----------------------------------------------------------
    @functools.cached_property
    def generator(self) -> int:
        """Least code of a primitive element."""
        return _primitive_code(self)

    def element_order(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        n = self.q - 1
        order = n
        for r in sympy.primefactors(n):
            while order % r == 0 and self.pow(a, order // r) == 1:
                order //= r
        return order

    def is_square(self, a: int) -> bool:
        if a == 0:
            return True
        if self.p == 2:
            return True
        return self.pow(a, (self.q - 1) // 2) == 1

    def nonsquare(self) -> int:
        for a in range(1, self.q):
            if not self.is_square(a):
                return a
        raise FieldError("characteristic 2 has no nonsquares")

    def sqrt(self, a: int) -> int | None:
        a = int(a)
        if a == 0:
            return 0
        if self.q <= TABLE_LIMIT or self.k == 1 and self.p < 1 << 16:
            sq = _square_roots(self)
            return sq.get(a)
        raise FieldError("sqrt only implemented for small fields")


@dataclass
class _Tables:
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray
    spec: FieldSpec

    @functools.lru_cache(maxsize=None)
    def frob_power(self, times: int) -> np.ndarray:
        codes = np.arange(self.spec.q)
        acc = np.ones(self.spec.q, dtype=np.int64)
        base = codes.copy()
        e = self.spec.p
        while e:
            if e & 1:
                acc = self.mul[acc, base]
            base = self.mul[base, base]
            e >>= 1
        acc[0] = 0
        out = codes
        for _ in range(times):
            out = acc[out]
        return out

    def __hash__(self):
        return id(self)


def _slow_add(spec: FieldSpec, a: int, b: int) -> int:
    da, db = spec.digits(a), spec.digits(b)
    return spec.from_digits([(x + y) % spec.p for x, y in zip(da, db)])


def _slow_neg(spec: FieldSpec, a: int) -> int:
    return spec.from_digits([(-x) % spec.p for x in spec.digits(a)])


def _slow_mul(spec: FieldSpec, a: int, b: int) -> int:
    prod = _pmod_mul(_trim(spec.digits(a)), _trim(spec.digits(b)), spec.p)
    rem = _pmod_divmod(prod, list(spec.modulus), spec.p)[1]
    return spec.from_digits(rem)


def _vec1(spec, fn, a):
    if isinstance(a, np.ndarray):
        return np.vectorize(lambda x: fn(spec, int(x)), otypes=[np.int64])(a)
    return fn(spec, int(a))


def _vec2(spec, fn, a, b):
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return np.vectorize(lambda x, y: fn(spec, int(x), int(y)), otypes=[np.int64])(a, b)
    return fn(spec, int(a), int(b))


def _vec_powmod(a: np.ndarray, e: int, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64) % p
    out = np.ones_like(a)
    while e:
        if e & 1:
            out = out * a % p
        a = a * a % p
        e >>= 1
    return out


@functools.lru_cache(maxsize=None)
def _tables(spec: FieldSpec) -> _Tables | None:
    if spec.k == 1 or spec.q > TABLE_LIMIT:
        return None
    q, p, k = spec.q, spec.p, spec.k
    codes = np.arange(q)
    dig = np.stack([(codes // p ** i) % p for i in range(k)], axis=1)
    weights = p ** np.arange(k)
    add = (((dig[:, None, :] + dig[None, :, :]) % p) * weights).sum(axis=2)
    neg = (((-dig) % p) * weights).sum(axis=1)
    # multiplication: x^i reduced mod modulus as digit vectors
    red = np.zeros((2 * k - 1, k), dtype=np.int64)
    for i in range(2 * k - 1):
        r = _pmod_divmod([0] * i + [1], list(spec.modulus), p)[1]
        red[i, :len(r)] = r
    conv = np.zeros((q, q, 2 * k - 1), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            conv[:, :, i + j] += dig[:, None, i] * dig[None, :, j]
    prod = (conv % p) @ red % p
    mul = (prod * weights).sum(axis=2)
    inv = np.zeros(q, dtype=np.int64)
    nz = np.argwhere(mul == 1)
    inv[nz[:, 0]] = nz[:, 1]
    return _Tables(add.astype(np.int64), mul.astype(np.int64), neg.astype(np.int64), inv, spec)


@functools.lru_cache(maxsize=None)
def _square_roots(spec: FieldSpec) -> dict[int, int]:
    out: dict[int, int] = {}
    for x in range(spec.q - 1, 0, -1):
        out[int(spec.mul(x, x))] = x
    # prefer the least root
    for x in range(1, spec.q):
        s = int(spec.mul(x, x))
        if out[s] > x:
            out[s] = x
    return out


def _primitive_code(spec: FieldSpec) -> int:
    n = spec.q - 1
    if n == 1:
        return 1
    rs = sympy.primefactors(n)
    for a in range(1, spec.q):
        if all(spec.pow(a, n // r) != 1 for r in rs):
            return a
    raise FieldError("no primitive element")  # unreachable


@functools.lru_cache(maxsize=None)
def GF(p: int, k: int = 1) -> FieldSpec:
    """The field of order p^k with the fixed least modulus."""
    return FieldSpec(p, k, conway_free_modulus(p, k))


def field_of_order(q: int) -> FieldSpec:
    fac = sympy.factorint(q)
    if len(fac) != 1:
        raise FieldError(f"{q} is not a prime power")
    (p, k), = fac.items()
    return GF(p, k)


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    code: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.spec.digits(self.code))

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldError("incompatible fields")
            return other.code
        return self.spec.element(other).code

    def __add__(self, o):
        return FieldElement(self.spec, int(self.spec.add(self.code, self._coerce(o))))

    __radd__ = __add__

    def __sub__(self, o):
        return FieldElement(self.spec, int(self.spec.sub(self.code, self._coerce(o))))

    def __rsub__(self, o):
        return FieldElement(self.spec, int(self.spec.sub(self._coerce(o), self.code)))

    def __neg__(self):
        return FieldElement(self.spec, int(self.spec.neg(self.code)))

    def __mul__(self, o):
        return FieldElement(self.spec, int(self.spec.mul(self.code, self._coerce(o))))

    __rmul__ = __mul__

    def __truediv__(self, o):
        return self * FieldElement(self.spec, self.spec.inv(self._coerce(o))).code

    def __pow__(self, e: int):
        return FieldElement(self.spec, self.spec.pow(self.code, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.code))

    def frobenius(self, times: int = 1) -> "FieldElement":
        return FieldElement(self.spec, int(self.spec.frob(self.code, times)))

    def order(self) -> int:
        return self.spec.element_order(self.code)

    def is_zero(self) -> bool:
        return self.code == 0

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.code == other.code
        if isinstance(other, int):
            return self.code == self.spec.element(other).code
        return NotImplemented

    def __hash__(self):
        return hash((self.spec, self.code))

    def __str__(self):
        return format_element(self)

    __repr__ = __str__


def format_element(a: FieldElement) -> str:
    return f"{a.spec.p}^{a.spec.k}:[{','.join(map(str, a.coeffs))}]"


_LIT = re.compile(r"^(\d+)\^(\d+):\[([0-9,\s]*)\]$")


def parse_element(text: str) -> FieldElement:
    m = _LIT.match(text.strip())
    if not m:
        raise FieldError(f"bad element literal {text!r}")
    p, k = int(m.group(1)), int(m.group(2))
    body = m.group(3).strip()
    coeffs = [int(c) for c in body.split(",")] if body else []
    if len(coeffs) > k or any(not 0 <= c < p for c in coeffs):
        raise FieldError(f"bad coefficients in {text!r}")
    spec = GF(p, k)
    return FieldElement(spec, spec.from_digits(coeffs))


def field_arithmetic(a: FieldElement, b: FieldElement | None, op: str, arg=None) -> FieldElement:
    """Dispatcher over the basic field operations.

    ``pow`` takes the exponent in ``arg``; ``norm_to_subfield`` and
    ``trace_to_subfield`` take the subfield degree in ``arg`` and return an
    element of that subfield.
    """
    if b is not None and b.spec != a.spec:
        raise FieldError("incompatible fields")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** int(arg)
    if op == "frobenius":
        return a.frobenius()
    if op in ("norm_to_subfield", "trace_to_subfield"):
        return (norm_to_subfield if op.startswith("norm") else trace_to_subfield)(a, int(arg))
    raise FieldError(f"unknown op {op}")


# ---------------------------------------------------------------------------
# subfield embeddings

@dataclass(frozen=True)
class Embedding:
    sub: FieldSpec
    sup: FieldSpec
    image: tuple[int, ...]       # sub code -> sup code

    @functools.cached_property
    def preimage(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.image)}

    def __call__(self, a):
        if isinstance(a, np.ndarray):
            return np.asarray(self.image)[a]
        return self.image[int(a)]

    def back(self, a):
        if isinstance(a, np.ndarray):
            return np.vectorize(lambda x: self.preimage[int(x)], otypes=[np.int64])(a)
        try:
            return self.preimage[int(a)]
        except KeyError:
            raise FieldError("element does not lie in the subfield") from None


@functools.lru_cache(maxsize=None)
def embedding(sub: FieldSpec, sup: FieldSpec) -> Embedding:
    """Embedding of F_{p^d} into F_{p^k}, sending t to the least root of sub's modulus."""
    if sub.p != sup.p or sup.k % sub.k:
        raise FieldError("not a subfield")
    if sup.q > DLOG_LIMIT:
        raise FieldError("embedding tables only for fields up to 2^24")
    mod = Poly(sup, [sup.element(c).code for c in sub.modulus])
    root = None
    for x in range(sup.q):
        if mod(x) == 0:
            root = x
            break
    assert root is not None
    powers = [1]
    for _ in range(sub.k - 1):
        powers.append(int(sup.mul(powers[-1], root)))
    image = []
    for code in range(sub.q):
        acc = 0
        for i, d in enumerate(sub.digits(code)):
            if d:
                acc = int(sup.add(acc, sup.mul(sup.element(d).code, powers[i])))
        image.append(acc)
    return Embedding(sub, sup, tuple(image))


def norm_to_subfield(a: FieldElement, d: int) -> FieldElement:
    spec = a.spec
    if spec.k % d:
        raise FieldError("subfield degree must divide k")
    acc = a
    x = a
    for _ in range(spec.k // d - 1):
        x = x.frobenius(d)
        acc = acc * x
    sub = GF(spec.p, d)
    return FieldElement(sub, embedding(sub, spec).back(acc.code))


def trace_to_subfield(a: FieldElement, d: int) -> FieldElement:
    spec = a.spec
    if spec.k % d:
        raise FieldError("subfield degree must divide k")
    acc = a
    x = a
    for _ in range(spec.k // d - 1):
        x = x.frobenius(d)
        acc = acc + x
    sub = GF(spec.p, d)
    return FieldElement(sub, embedding(sub, spec).back(acc.code))


# ---------------------------------------------------------------------------
# discrete logarithms

@functools.lru_cache(maxsize=16)
def _log_table(spec: FieldSpec, g: int) -> np.ndarray:
    q = spec.q
    if q > DLOG_LIMIT:
        raise FieldError("field too large for table-based discrete log")
    log = np.full(q, -1, dtype=np.int64)
    if spec.k == 1:
        p = spec.p
        block = 4096
        powers = np.empty(q - 1, dtype=np.int64)
        first = np.empty(min(block, q - 1), dtype=np.int64)
        x = 1
        for i in range(len(first)):
            first[i] = x
            x = x * g % p
        step = x
        cur = 1
        for start in range(0, q - 1, block):
            end = min(start + block, q - 1)
            powers[start:end] = first[: end - start] * cur % p
            cur = cur * step % p
    else:
        powers = np.empty(q - 1, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            powers[i] = x
            x = int(spec.mul(x, g))
    log[powers] = np.arange(q - 1)
    if np.any(log[1:] < 0):
        raise FieldError("g is not a generator")
    return log


def discrete_log(x: FieldElement | int, g: FieldElement | int, spec: FieldSpec | None = None) -> int:
    if isinstance(x, FieldElement):
        spec = x.spec
        x = x.code
    if isinstance(g, FieldElement):
        g = g.code
    assert spec is not None
    if x == 0:
        raise FieldError("log of zero")
    if spec.element_order(g) != spec.q - 1:
        raise FieldError("g is not a generator")
    return int(_log_table(spec, int(g))[int(x)])


# ---------------------------------------------------------------------------
# polynomials over a FieldSpec

class Poly:
    """Univariate polynomial with coefficient codes, lowest degree first."""

    __slots__ = ("spec", "c")

    def __init__(self, spec: FieldSpec, coeffs: Iterable[int]):
        self.spec = spec
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def x(cls, spec):
        return cls(spec, [0, 1])

    @classmethod
    def const(cls, spec, a):
        return cls(spec, [a])

    @property
    def deg(self) -> int:
        return len(self.c) - 1

    def lead(self) -> int:
        return self.c[-1] if self.c else 0

    def is_zero(self) -> bool:
        return not self.c

    def __eq__(self, o):
        return isinstance(o, Poly) and self.spec == o.spec and self.c == o.c

    def __hash__(self):
        return hash((self.spec, self.c))

    def __repr__(self):
        if not self.c:
            return "0"
        terms = []
        for i, a in enumerate(self.c):
            if a:
                terms.append(f"{a}" if i == 0 else (f"{a}*x^{i}" if a != 1 else f"x^{i}"))
        return " + ".join(reversed(terms))

    def __add__(self, o: "Poly") -> "Poly":
        f = self.spec
        n = max(len(self.c), len(o.c))
        a = self.c + (0,) * (n - len(self.c))
        b = o.c + (0,) * (n - len(o.c))
        return Poly(f, [int(f.add(x, y)) for x, y in zip(a, b)])

    def __neg__(self):
        return Poly(self.spec, [int(self.spec.neg(x)) for x in self.c])

    def __sub__(self, o):
        return self + (-o)

    def scale(self, a: int) -> "Poly":
        return Poly(self.spec, [int(self.spec.mul(a, x)) for x in self.c])

    def __mul__(self, o: "Poly") -> "Poly":
        f = self.spec
        if not self.c or not o.c:
            return Poly(f, [])
        if f.k == 1:
            return Poly(f, _pmod_mul(list(self.c), list(o.c), f.p))
        out = [0] * (len(self.c) + len(o.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(o.c):
                    if y:
                        out[i + j] = int(f.add(out[i + j], f.mul(x, y)))
        return Poly(f, out)

    def divmod(self, o: "Poly") -> tuple["Poly", "Poly"]:
        f = self.spec
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if f.k == 1:
            qq, rr = _pmod_divmod(list(self.c), list(o.c), f.p)
            return Poly(f, qq), Poly(f, rr)
        a = list(self.c)
        inv = f.inv(o.lead())
        db = o.deg
        quo = [0] * max(len(a) - db, 0)
        for i in range(len(a) - 1, db - 1, -1):
            c = int(f.mul(a[i], inv))
            if c:
                quo[i - db] = c
                for j in range(db + 1):
                    a[i - db + j] = int(f.sub(a[i - db + j], f.mul(c, o.c[j])))
        return Poly(f, quo), Poly(f, a[:db])

    def __mod__(self, o):
        return self.divmod(o)[1]

    def __floordiv__(self, o):
        return self.divmod(o)[0]

    def monic(self) -> "Poly":
        if not self.c:
            return self
        return self.scale(self.spec.inv(self.lead()))

    def __call__(self, a: int) -> int:
        f = self.spec
        acc = 0
        for x in reversed(self.c):
            acc = int(f.add(f.mul(acc, a), x))
        return acc

    def derivative(self) -> "Poly":
        f = self.spec
        return Poly(f, [int(f.mul(f.element(i).code, x)) for i, x in enumerate(self.c)][1:])

    def powmod(self, e: int, mod: "Poly") -> "Poly":
        result = Poly(self.spec, [1])
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def gcd(self, o: "Poly") -> "Poly":
        a, b = self, o
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def pth_root(self) -> "Poly":
        """For f(x) = g(x^p), return g with coefficients raised to p^(k-1)."""
        f = self.spec
        out = []
        for i in range(0, len(self.c), f.p):
            out.append(int(f.frob(self.c[i], f.k - 1)) if f.k > 1 else self.c[i])
        return Poly(f, out)

    def reciprocal(self) -> "Poly":
        """Monic polynomial whose roots are the inverses of the roots of self."""
        return Poly(self.spec, list(reversed(self.c))).monic()


def poly_from_roots(spec: FieldSpec, roots: Iterable[int]) -> Poly:
    out = Poly(spec, [1])
    for r in roots:
        out = out * Poly(spec, [int(spec.neg(r)), 1])
    return out


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Monic squarefree factors with multiplicities (Yun, with p-th roots)."""
    spec = f.spec
    f = f.monic()
    if f.deg <= 0:
        return []
    out: list[tuple[Poly, int]] = []
    df = f.derivative()
    if df.is_zero():
        return [(g, m * spec.p) for g, m in squarefree_decomposition(f.pth_root())]
    c = f.gcd(df)
    w = f // c
    i = 1
    while w.deg > 0:
        y = w.gcd(c)
        z = w // y
        if z.deg > 0:
            out.append((z.monic(), i))
        i += 1
        w = y
        c = c // y
    if c.deg > 0:
        out.extend((g, m * spec.p) for g, m in squarefree_decomposition(c.pth_root()))
    # merge equal factors
    merged: dict[Poly, int] = {}
    for g, m in out:
        merged[g] = merged.get(g, 0) + m
    return list(merged.items())


def distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """Split a monic squarefree f into products of irreducibles of equal degree."""
    spec = f.spec
    out = []
    x = Poly.x(spec)
    h = x
    d = 0
    rest = f
    while rest.deg >= 2 * (d + 1):
        d += 1
        h = h.powmod(spec.q, rest)
        g = (h - x).gcd(rest)
        if g.deg > 0:
            out.append((g, d))
            rest = rest // g
            h = h % rest
    if rest.deg > 0:
        out.append((rest.monic(), rest.deg))
    return out


def _random_poly(spec: FieldSpec, deg: int, rng: random.Random) -> Poly:
    return Poly(spec, [rng.randrange(spec.q) for _ in range(deg + 1)])


def equal_degree(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus splitting of a product of distinct degree-d irreducibles."""
    spec = f.spec
    if f.deg == d:
        return [f.monic()]
    r = f.deg // d
    for _ in range(EDF_RETRIES):
        a = _random_poly(spec, f.deg - 1, rng)
        if a.deg <= 0:
            continue
        if spec.p == 2:
            # absolute trace map a + a^2 + ... + a^(2^(kd-1))
            t = a
            acc = a
            for _ in range(spec.k * d - 1):
                t = (t * t) % f
                acc = acc + t
            b = acc
        else:
            b = a.powmod((spec.q ** d - 1) // 2, f) - Poly(spec, [1])
        g = b.gcd(f)
        if 0 < g.deg < f.deg:
            return equal_degree(g, d, rng) + equal_degree(f // g, d, rng)
    raise FieldError(f"equal-degree splitting failed after {EDF_RETRIES} tries ({r} factors)")


def factor_poly(f: Poly, seed: int = 0) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicities, sorted by (degree, coefficients)."""
    if f.is_zero():
        raise FieldError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    out: list[tuple[Poly, int]] = []
    for g, m in squarefree_decomposition(f):
        for h, d in distinct_degree(g):
            for irr in equal_degree(h, d, rng):
                out.append((irr, m))
    out.sort(key=lambda t: (t[0].deg, tuple(reversed(t[0].c)), t[1]))
    return out


def is_irreducible(f: Poly) -> bool:
    fac = factor_poly(f)
    return len(fac) == 1 and fac[0][1] == 1


def roots(f: Poly) -> list[int]:
    """Distinct roots of f in its coefficient field (sorted codes)."""
    return sorted(int(f.spec.neg(g.c[0])) for g, _ in factor_poly(f) if g.deg == 1)
