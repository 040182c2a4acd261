"""Exact arithmetic in Z[zeta_e] / Q(zeta_e) using the power basis mod Phi_e.

Bulk identities over many values (orthogonality, Frobenius sums) are decided
by reduction modulo several primes P = 1 (mod e) at every primitive e-th root
of unity, combined with an explicit coefficient bound so that agreement modulo
the product of the primes implies exact equality.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np
import sympy

MOD_PRIME_BITS = 24


@lru_cache(maxsize=None)
def cyclotomic_poly(e: int) -> tuple[int, ...]:
    """Coefficients of Phi_e, constant term first."""
    x = sympy.Symbol("x")
    coeffs = sympy.Poly(sympy.cyclotomic_poly(e, x), x).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


class CycloField:
    """Reduction data for Q(zeta_e)."""

    def __init__(self, e: int):
        if e < 1:
            raise ValueError("conductor must be positive")
        self.e = e
        self.phi_poly = cyclotomic_poly(e)
        self.phi = len(self.phi_poly) - 1
        # R[j] = coefficients of x^j mod Phi_e for 0 <= j < e
        R = np.zeros((e, self.phi), dtype=object)
        cur = [0] * self.phi
        cur[0] = 1
        for j in range(e):
            R[j] = cur
            # multiply by x and reduce
            top = cur[-1]
            nxt = [0] + cur[:-1]
            if top:
                nxt = [a - top * c for a, c in zip(nxt, self.phi_poly[:-1])]
            cur = nxt
        self.R = R
        self.rho = max(sum(abs(int(v)) for v in row) for row in R)
        self.R_int = R.astype(np.int64) if self.rho < 2 ** 40 else None

    def reduce_full(self, v) -> np.ndarray:
        """Reduce a coefficient vector indexed by exponents mod e."""
        v = np.asarray(v, dtype=object)
        if v.shape[-1] != self.e:
            full = np.zeros(v.shape[:-1] + (self.e,), dtype=object)
            for j in range(v.shape[-1]):
                full[..., j % self.e] += v[..., j]
            v = full
        if v.ndim == 1:
            # literals are sparse: only combine the rows that occur
            nz = [j for j in range(self.e) if v[j]]
            if self.R_int is not None and all(isinstance(v[j], (int, np.integer)) for j in nz):
                acc = np.zeros(self.phi, dtype=object)
                for j in nz:
                    acc += int(v[j]) * self.R_int[j].astype(object)
                return acc
            return sum((v[j] * self.R[j] for j in nz), np.zeros(self.phi, dtype=object))
        return v @ self.R

    def zeta_power(self, j: int) -> np.ndarray:
        return self.R[j % self.e].copy()

    @cached_property
    def units(self) -> list[int]:
        return [k for k in range(1, self.e + 1) if math.gcd(k, self.e) == 1] if self.e > 1 else [1]

    def galois_matrix(self, k: int) -> np.ndarray:
        """Matrix (phi x phi) of zeta -> zeta^k acting on coefficient row vectors."""
        if math.gcd(k, self.e) != 1:
            raise ValueError("Galois exponent must be coprime to the conductor")
        return np.array([self.R[(t * k) % self.e] for t in range(self.phi)], dtype=object)

    @cached_property
    def conj_matrix(self) -> np.ndarray:
        return self.galois_matrix(-1 % self.e if self.e > 1 else 1)

    def mul_vec(self, a, b) -> np.ndarray:
        a = [int(x) if not isinstance(x, Fraction) else x for x in a]
        b = [int(x) if not isinstance(x, Fraction) else x for x in b]
        full = [0] * self.e
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        full[(i + j) % self.e] += x * y
        return np.array(full, dtype=object) @ self.R


@lru_cache(maxsize=None)
def field(e: int) -> CycloField:
    return CycloField(e)


def _norm_coeff(c):
    if isinstance(c, Fraction):
        return int(c) if c.denominator == 1 else c
    return int(c)


class Cyclotomic:
    """Element of Q(zeta_e) in the power basis 1, zeta, ..., zeta^(phi-1)."""

    __slots__ = ("e", "c")

    def __init__(self, e: int, coeffs):
        F = field(e)
        cs = [_norm_coeff(x) for x in coeffs]
        if len(cs) != F.phi:
            cs = list(F.reduce_full(cs + [0] * max(0, F.e - len(cs))))
            cs = [_norm_coeff(x) for x in cs]
        self.e = e
        self.c = tuple(cs)

    @classmethod
    def integer(cls, e: int, n) -> "Cyclotomic":
        F = field(e)
        return cls(e, [n] + [0] * (F.phi - 1))

    @classmethod
    def zeta(cls, e: int, j: int = 1) -> "Cyclotomic":
        return cls(e, list(field(e).zeta_power(j)))

    @property
    def F(self) -> CycloField:
        return field(self.e)

    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.e != self.e:
                raise ValueError("conductor mismatch")
            return other
        if isinstance(other, (int, Fraction, np.integer)):
            return Cyclotomic.integer(self.e, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.e, [a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.e, [-a for a in self.c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.e, [a - b for a, b in zip(self.c, o.c)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.e, list(self.F.mul_vec(self.c, o.c)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.e, [Fraction(a) / other for a in self.c])
        return NotImplemented

    def __pow__(self, n: int):
        out = Cyclotomic.integer(self.e, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.c == o.c

    def __hash__(self):
        return hash((self.e, self.c))

    def galois(self, k: int) -> "Cyclotomic":
        return Cyclotomic(self.e, list(np.array(self.c, dtype=object) @ self.F.galois_matrix(k % self.e or self.e)))

    def conj(self) -> "Cyclotomic":
        return Cyclotomic(self.e, list(np.array(self.c, dtype=object) @ self.F.conj_matrix))

    def is_zero(self) -> bool:
        return not any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("value is not rational")
        return Fraction(self.c[0])

    def is_integral(self) -> bool:
        return all(not isinstance(x, Fraction) for x in self.c)

    def to_complex(self, dps: int = 30):
        import mpmath

        with mpmath.workdps(dps):
            z = mpmath.exp(2j * mpmath.pi / self.e)
            return mpmath.fsum(mpmath.mpf(Fraction(c).numerator) / Fraction(c).denominator * z ** t
                               for t, c in enumerate(self.c) if c)

    def abs_interval(self, dps: int = 30):
        """Certified interval containing |self| (mpmath interval arithmetic)."""
        from mpmath import iv

        iv.dps = dps
        re_ = iv.mpf(0)
        im_ = iv.mpf(0)
        for t, c in enumerate(self.c):
            if not c:
                continue
            c = Fraction(c)
            cv = iv.mpf(c.numerator) / c.denominator
            ang = 2 * iv.pi * t / self.e
            re_ += cv * iv.cos(ang)
            im_ += cv * iv.sin(ang)
        return iv.sqrt(re_ ** 2 + im_ ** 2)

    # text form: c0+c1*E^1+...
    def __str__(self):
        return format_cyclotomic(self)

    def __repr__(self):
        return f"Cyclotomic({self.e}, {format_cyclotomic(self)})"


def format_cyclotomic(z: Cyclotomic) -> str:
    parts = []
    for t, c in enumerate(z.c):
        if not c:
            continue
        s = str(c)
        term = s if t == 0 else f"{s}*E^{t}"
        if parts and not term.startswith("-"):
            term = "+" + term
        parts.append(term)
    return "".join(parts) or "0"


_TERM = re.compile(r"([+-]?)(\d+(?:/\d+)?)(?:\*E\^(\d+))?")


def parse_cyclotomic(text: str, e: int) -> Cyclotomic:
    pos = 0
    full = [0] * e
    if not text:
        raise ValueError("empty cyclotomic literal")
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or (pos > 0 and not m.group(1)):
            raise ValueError(f"bad cyclotomic literal at offset {pos}: {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = Fraction(m.group(2)) * sign
        j = int(m.group(3)) if m.group(3) is not None else 0
        full[j % e] += coef
        pos = m.end()
    return Cyclotomic(e, list(field(e).reduce_full(full)))


# ---------------------------------------------------------------------------
# modular embeddings

@lru_cache(maxsize=None)
def embedding_primes(e: int, count: int, bits: int = MOD_PRIME_BITS) -> tuple[int, ...]:
    """The `count` largest primes P = 1 (mod e) below 2**bits."""
    out = []
    P = ((2 ** bits - 2) // e) * e + 1
    while len(out) < count:
        if P < 3:
            raise ValueError("ran out of embedding primes")
        if sympy.isprime(P):
            out.append(P)
        P -= e
    return tuple(out)


@lru_cache(maxsize=None)
def primitive_roots_mod(e: int, P: int) -> tuple[int, ...]:
    """All primitive e-th roots of unity mod P, listed as z^k for units k (z fixed)."""
    g = sympy.primitive_root(P)
    z = pow(g, (P - 1) // e, P)
    return tuple(pow(z, k, P) for k in field(e).units)


def embed(V: np.ndarray, e: int, P: int, all_roots: bool = True) -> np.ndarray:
    """Images of integer coefficient vectors (last axis phi) under embeddings mod P.

    Returns shape V.shape[:-1] + (r,) with r = phi (all roots) or 1.
    """
    F = field(e)
    roots = primitive_roots_mod(e, P) if all_roots else primitive_roots_mod(e, P)[:1]
    W = np.array([[pow(r, t, P) for r in roots] for t in range(F.phi)], dtype=np.int64)
    Vm = np.mod(np.asarray(V, dtype=object), P).astype(np.int64)
    out = np.zeros(Vm.shape[:-1] + (len(roots),), dtype=np.int64)
    # accumulate in chunks to stay within int64
    for t in range(F.phi):
        out = (out + Vm[..., t:t + 1] * W[t]) % P
    return out


def primes_for_bound(e: int, bound: int) -> tuple[int, ...]:
    """Enough embedding primes for their product to exceed 2*bound."""
    count = 1
    while True:
        ps = embedding_primes(e, count)
        if math.prod(ps) > 2 * bound + 1:
            return ps
        count += 1


def crt_symmetric(residues: list[int], moduli: tuple[int, ...]) -> int:
    from sympy.ntheory.modular import crt

    M = math.prod(moduli)
    r = int(crt(list(moduli), [int(x) for x in residues])[0]) % M
    return r - M if r > M // 2 else r


def coeff_bound(V: np.ndarray) -> int:
    V = np.asarray(V, dtype=object)
    return int(max((abs(int(x)) for x in V.flat), default=0))
