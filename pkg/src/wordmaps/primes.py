"""Primitive prime divisors, the ell* variants, special prime sets and the D(k, Q) exponent."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import sympy

from .classical import group_order

TRIAL_LIMIT = 1 << 20


class PrimeError(ValueError):
    pass


class NotCovered(PrimeError):
    """Parameters in an exception column with no replacement set."""


def _prime_power(q: int) -> tuple[int, int]:
    fac = sympy.factorint(q)
    if len(fac) != 1:
        raise PrimeError(f"{q} is not a prime power")
    (p, f), = fac.items()
    return int(p), int(f)


def multiplicative_order(a: int, p: int) -> int:
    return int(sympy.n_order(a % p, p))


def _least_prime_factor(N: int, n: int) -> int:
    """Least prime factor of N, all of whose prime factors are 1 mod n."""
    c = n + 1
    while c < TRIAL_LIMIT and c * c <= N:
        if N % c == 0 and sympy.isprime(c):
            return c
        c += n
    if sympy.isprime(N):
        return N
    return min(sympy.primefactors(N))


@lru_cache(maxsize=None)
def ppd(a: int, n: int) -> int | None:
    """Least prime dividing a^n - 1 but no a^i - 1 with i < n; None if there is none."""
    if a < 2 or n < 1:
        raise PrimeError("need a >= 2 and n >= 1")
    N = int(sympy.cyclotomic_poly(n, a))
    # primes dividing both Phi_n(a) and n are never primitive
    for r in sympy.primefactors(n):
        while N % r == 0:
            N //= r
    if N == 1:
        return None
    p = _least_prime_factor(N, n)
    if multiplicative_order(a, p) != n:
        raise PrimeError(f"internal error: {p} is not primitive for ({a}, {n})")
    return p


def ppd_star(q: int, n: int, eps: int, allow_small: bool = False) -> int:
    """ell*(q^n - eps): ppd(q,n) (times ppd(q,n/2) for even n) if eps = +, ppd(q,2n) if eps = -."""
    if eps not in (1, -1):
        raise PrimeError("eps must be +1 or -1")
    if n < 13 and not allow_small:
        raise PrimeError("ell* is defined here for n >= 13; pass allow_small for smaller n")
    parts = [(q, 2 * n)] if eps == -1 else ([(q, n), (q, n // 2)] if n % 2 == 0 else [(q, n)])
    out = 1
    for a, k in parts:
        r = ppd(a, k)
        if r is None:
            raise PrimeError(f"no primitive prime divisor of {a}^{k} - 1")
        out *= r
    return out


# ---------------------------------------------------------------------------
# special prime sets

@dataclass(frozen=True)
class SpecialPrimeSet:
    r: int
    s1: int
    s2: int
    row: str
    exponents: tuple[int, int, int]     # k with r, s1, s2 primitive for p^k - 1

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(sorted({self.r, self.s1, self.s2}))


# replacement sets for the exceptional (n, q, eps) of linear and unitary groups
_SLU_EXCEPTIONS = {
    ("SL", 4, 4): (17, 7, 7),
    ("SU", 6, 4): (41, 7, 7),
    ("SU", 7, 4): (113, 7, 7),
    ("SL", 6, 2): (31, 31, 31),
    ("SL", 7, 2): (127, 127, 127),
    ("SU", 4, 2): (5, 5, 5),
}
_SP_ROWS = {(12, 2): (13, 3, 7), (24, 2): (241, 13, 7)}

FAMILIES = ("SL", "SU", "Sp", "Spin", "Spin+", "Spin-")


def _need(p: int, k: int) -> int:
    r = ppd(p, k)
    if r is None:
        raise NotCovered(f"ppd({p}, {k}) does not exist")
    return r


def _from_exponents(p: int, ks: tuple[int, int, int], row: str) -> SpecialPrimeSet:
    return SpecialPrimeSet(_need(p, ks[0]), _need(p, ks[1]), _need(p, ks[2]), row, ks)


def _fixed(p: int, primes: tuple[int, int, int], row: str) -> SpecialPrimeSet:
    return SpecialPrimeSet(*primes, row=row, exponents=tuple(multiplicative_order(p, t) for t in primes))


def special_primes(family: str, n: int, q: int) -> SpecialPrimeSet:
    """R(G) for the quasisimple group named by family and natural dimension n.

    Families: SL_n, SU_n, Sp_n (n even), Spin_n (n odd, same primes as
    Sp_{n-1}), Spin+_n / Spin-_n (n even).  Omega names are accepted for the
    spin groups; the relevant torus orders coincide.
    """
    family = {"Omega": "Spin", "Omega+": "Spin+", "Omega-": "Spin-", "SO": "Spin"}.get(family, family)
    if family not in FAMILIES:
        raise PrimeError(f"unknown family {family}")
    p, f = _prime_power(q)
    if family == "SL":
        if n < 4:
            raise NotCovered("SL_n needs n >= 4")
        if ("SL", n, q) in _SLU_EXCEPTIONS:
            return _fixed(p, _SLU_EXCEPTIONS[("SL", n, q)], f"SL_{n}({q}) exceptional set")
        return _from_exponents(p, (n * f, (n - 1) * f, (n - 1) * f), "SL_n, n >= 4")
    if family == "SU":
        if ("SU", n, q) in _SLU_EXCEPTIONS:
            return _fixed(p, _SLU_EXCEPTIONS[("SU", n, q)], f"SU_{n}({q}) exceptional set")
        if n % 2:
            if n < 5:
                raise NotCovered("SU_n with n odd needs n >= 5")
            k = (n - 1) * f if n % 4 == 1 else (n - 1) * f // 2
            return _from_exponents(p, (2 * n * f, k, k), "SU_n, n >= 5 odd")
        if n < 4:
            raise NotCovered("SU_n with n even needs n >= 4")
        k = n * f if n % 4 == 0 else n * f // 2
        return _from_exponents(p, ((2 * n - 2) * f, k, k), "SU_n, n >= 4 even")
    if family in ("Sp", "Spin"):
        if family == "Sp":
            if n % 2:
                raise PrimeError("symplectic dimension must be even")
            m = n // 2
        else:
            if n % 2 == 0:
                raise PrimeError("use Spin+ / Spin- for even dimension")
            m = (n - 1) // 2
        if (2 * m, q) in _SP_ROWS:
            return _fixed(p, _SP_ROWS[(2 * m, q)], f"Sp_{2 * m}({q}) row")
        if m % 2:
            if m < 3 or (m, q) == (3, 4):
                raise NotCovered(f"{family} with m = {m}, q = {q} not covered")
            return _from_exponents(p, (2 * m * f, m * f, m * f), "Sp_2n / Spin_2n+1, n >= 3 odd")
        if m < 6:
            raise NotCovered(f"{family} with m = {m} even needs m >= 6")
        return _from_exponents(p, (2 * m * f, m * f, m * f // 2), "Sp_2n / Spin_2n+1, n >= 6 even")
    if n % 2:
        raise PrimeError("Spin+/- need even dimension")
    m = n // 2
    if m < 4 or (m, q) == (4, 2):
        raise NotCovered(f"{family}_{n}({q}) not covered")
    if family == "Spin+":
        k = m * f if m % 2 else (m - 1) * f
        return _from_exponents(p, ((2 * m - 2) * f, k, k), "Spin+_2n, n >= 4")
    return _from_exponents(p, (2 * m * f, (2 * m - 2) * f, (2 * m - 2) * f), "Spin-_2n, n >= 4")


def family_order(family: str, n: int, q: int) -> int:
    """Order of the group used to check divisibility (Spin_2n+1 via Sp_2n)."""
    family = {"Omega": "Spin", "Omega+": "Spin+", "Omega-": "Spin-", "SO": "Spin"}.get(family, family)
    if family == "SL":
        return group_order("SL", n, q)
    if family == "SU":
        return group_order("SU", n, q)
    if family == "Sp":
        return group_order("Sp", n, q)
    if family == "Spin":
        return group_order("Sp", n - 1, q)
    return group_order("Omega", n, q, 1 if family == "Spin+" else -1)


@dataclass
class PrimeCheck:
    ok: bool
    divides: bool
    coprime_to_q: bool
    primitive: bool
    detail: str


def check_special_primes(family: str, n: int, q: int, S: SpecialPrimeSet) -> PrimeCheck:
    p, f = _prime_power(q)
    order = family_order(family, n, q)
    divides = all(order % t == 0 for t in S.primes)
    coprime = all(t != p for t in S.primes) and all(sympy.isprime(t) for t in S.primes)
    # each prime is primitive for the exponent it was drawn with
    primitive = all(t != p and multiplicative_order(p, t) == k
                    for t, k in zip((S.r, S.s1, S.s2), S.exponents))
    return PrimeCheck(divides and coprime and primitive, divides, coprime, primitive,
                      f"|G| = {order}, R = {S.primes}")


# ---------------------------------------------------------------------------
# pairs of ell* values

@dataclass(frozen=True)
class PairViolation:
    q: int
    n: int
    alpha: int
    m: int
    beta: int
    common: int


def _prime_powers_upto(Q: int) -> list[int]:
    return [x for x in range(2, Q + 1) if len(sympy.factorint(x)) == 1]


def scan_lemma_pair(q_max: int, n_max: int, n_min: int = 13) -> tuple[list[PairViolation], list[str]]:
    """All (n, alpha), (m, beta) with n_min <= m <= n <= n_max sharing a prime in their ell* values.

    A shared prime is allowed when (n, alpha) = (m, beta), or alpha = + and n in {2m, 4m}.
    Returns (violations, notes) where notes record skipped values.
    """
    violations: list[PairViolation] = []
    notes: list[str] = []
    for q in _prime_powers_upto(q_max):
        vals: dict[tuple[int, int], int] = {}
        for n in range(n_min, n_max + 1):
            for a in (1, -1):
                try:
                    vals[(n, a)] = ppd_star(q, n, a, allow_small=n_min < 13)
                except PrimeError as exc:
                    notes.append(f"q={q} n={n} eps={a:+d}: {exc}")
        keys = sorted(vals)
        for (n, a) in keys:
            for (m, b) in keys:
                if m > n:
                    continue
                g = math.gcd(vals[(n, a)], vals[(m, b)])
                if g == 1:
                    continue
                if (n, a) == (m, b) or (a == 1 and n in (2 * m, 4 * m)):
                    continue
                violations.append(PairViolation(q, n, a, m, b, g))
    return violations, notes


def center_exponent_D(k: int, Q: int, family: str) -> int:
    """D(k, Q): 2 (Q!)^(k+1) for SL/SU, 2^(k+1) for Sp and Omega+."""
    if k < 1 or Q < 2:
        raise PrimeError("need k >= 1 and Q >= 2")
    if family in ("SL", "SU"):
        return 2 * math.factorial(Q) ** (k + 1)
    if family in ("Sp", "Omega+", "O+"):
        return 2 ** (k + 1)
    raise PrimeError(f"no D(k, Q) for family {family}")
