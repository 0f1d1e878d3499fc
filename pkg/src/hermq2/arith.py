"""Exact rational kernels: Bernoulli numbers, quadratic characters,
generalized Bernoulli numbers, Cohen's function H(r, N) and p-adic valuations.

Everything here works over :class:`fractions.Fraction`; no floating point.
Bernoulli numbers use the convention ``B_1 = -1/2``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from math import comb

__all__ = [
    "INF",
    "bernoulli",
    "bernoulli_poly",
    "is_prime",
    "is_fundamental",
    "kronecker_chi",
    "generalized_bernoulli",
    "cohen_H",
    "p_valuation",
    "divisors",
    "sigma",
    "moebius",
    "fundamental_split",
]

#: valuation of zero
INF = math.inf


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization of ``|n|`` (desk-scale inputs only)."""
    n = abs(n)
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    if n <= 0:
        raise ValueError(f"divisors of non-positive integer {n}")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def sigma(k: int, n: int) -> int:
    return sum(d**k for d in divisors(n))


def moebius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """B_n from ``sum_{j<=n} C(n+1, j) B_j = 0``, so ``B_1 = -1/2``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return Fraction(1)
    if n > 1 and n % 2:
        return Fraction(0)
    s = sum((comb(n + 1, j) * bernoulli(j) for j in range(n)), Fraction(0))
    return -s / (n + 1)


def bernoulli_poly(n: int, x: Fraction) -> Fraction:
    return sum((comb(n, j) * bernoulli(j) * x ** (n - j) for j in range(n + 1)), Fraction(0))


def _jacobi(a: int, n: int) -> int:
    # n odd positive
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_fundamental(D: int) -> bool:
    """Fundamental discriminants, with 1 counted (trivial character)."""
    if D == 1:
        return True
    if D == 0:
        return False
    if D % 4 == 1:
        return all(e == 1 for e in factorize(D).values())
    if D % 4 == 0:
        m = D // 4
        if m % 4 not in (2, 3):
            return False
        return all(e == 1 for e in factorize(m).values())
    return False


def kronecker_chi(D: int, n: int) -> int:
    """The Kronecker symbol (D/n) for a fundamental discriminant D."""
    if not is_fundamental(D):
        raise ValueError(f"{D} is not a fundamental discriminant")
    if n == 0:
        return 1 if abs(D) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if D < 0:
            result = -1
    while n % 2 == 0:
        n //= 2
        if D % 2 == 0:
            return 0
        if D % 8 in (3, 5):
            result = -result
    return result * _jacobi(D, n) if n > 1 else result


@lru_cache(maxsize=None)
def generalized_bernoulli(D: int, n: int) -> Fraction:
    """B_{n,chi_D} = f^(n-1) sum_{a=1}^{f} chi_D(a) B_n(a/f), f = |D|."""
    if n < 1:
        raise ValueError("n must be >= 1")
    f = abs(D)
    total = Fraction(0)
    for a in range(1, f + 1):
        c = kronecker_chi(D, a)
        if c:
            total += c * bernoulli_poly(n, Fraction(a, f))
    return f ** (n - 1) * total


def fundamental_split(N: int) -> tuple[int, int]:
    """Write a discriminant N (N = 0, 1 mod 4, N != 0) as D f^2, D fundamental."""
    if N == 0 or N % 4 not in (0, 1):
        raise ValueError(f"{N} is not a discriminant")
    fac = factorize(N)
    core = -1 if N < 0 else 1
    f = 1
    for q, e in fac.items():
        f *= q ** (e // 2)
        if e % 2:
            core *= q
    if core % 4 != 1:
        # core = 2, 3 mod 4: absorb a factor 4 from f
        core *= 4
        f //= 2
    return core, f


@lru_cache(maxsize=None)
def cohen_H(r: int, N: int) -> Fraction:
    """Cohen's function H(r, N).

    ``H(r, 0) = zeta(1 - 2r)``; zero unless ``(-1)^r N`` is 0 or 1 mod 4;
    otherwise ``L(1 - r, chi_D) * sum_{d | f} mu(d) chi_D(d) d^(r-1) sigma_{2r-1}(f/d)``
    with ``(-1)^r N = D f^2``.  ``H(1, N)`` is the Hurwitz class number.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    if N < 0:
        raise ValueError("N must be >= 0")
    if N == 0:
        return -bernoulli(2 * r) / (2 * r)
    disc = (-1) ** r * N
    if disc % 4 not in (0, 1):
        return Fraction(0)
    D, f = fundamental_split(disc)
    if D == 1:
        # conductor 1: B_{r,1} = B_r(1), which differs from B_r only at r = 1
        L = -bernoulli_poly(r, Fraction(1)) / r
    else:
        L = -generalized_bernoulli(D, r) / r
    s = 0
    for d in divisors(f):
        mu = moebius(d)
        if mu:
            s += mu * kronecker_chi(D, d) * d ** (r - 1) * sigma(2 * r - 1, f // d)
    return L * s


def p_valuation(q, p: int):
    """v_p(q) for rational q; ``INF`` for zero."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    q = Fraction(q)
    if q == 0:
        return INF
    v = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v
