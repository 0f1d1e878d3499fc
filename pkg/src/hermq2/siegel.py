"""Elliptic and degree-2 Siegel Eisenstein series, the generators
G4, G6, X10, X12 of the even-weight ring for Sp_2(Z), and the Siegel
Sturm-type check used as a subroutine of the Hermitian criteria.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor

import numpy as np

from .arith import bernoulli, cohen_H, divisors, is_prime, sigma
from .lattice import SiegIndex, content, enumerate_siegel
from .linalg import Echelon, Underdetermined
from .qexp import Kind, QSeries, SeriesError, index_space, linear_combination, phi
from .reports import CongruenceReport, SturmBox, Verdict

#: the normalizing index [[1, 1/2], [1/2, 1]]
T1 = SiegIndex(1, 1, 1)


def _check_weight(k: int) -> None:
    if k % 2 or k < 4:
        raise ValueError(f"Eisenstein series need even weight >= 4, got {k}")


def elliptic_eisenstein(k: int, T: int) -> QSeries:
    """1 - (2k / B_k) sum sigma_{k-1}(n) q^n up to q^T."""
    _check_weight(k)
    c = -Fraction(2 * k) / bernoulli(k)
    coeffs = {0: 1}
    coeffs.update({n: c * sigma(k - 1, n) for n in range(1, T + 1)})
    return QSeries.from_dict(Kind.ELLIPTIC, None, k, T, coeffs)


@lru_cache(maxsize=None)
def _siegel_eisenstein_cached(k: int, T: int) -> QSeries:
    # shape: a(T') = c * sum_{d | e(T')} d^{k-1} H(k-1, det(2T')/d^2) for T' != 0,
    # with c fixed by Phi(E_k) = elliptic E_k on the rank-1 column
    rank1 = -Fraction(2 * k) / bernoulli(k)
    c = rank1 / cohen_H(k - 1, 0)
    coeffs = {}
    for t in enumerate_siegel(T):
        if t.is_zero():
            coeffs[t] = 1
            continue
        D = 4 * t.m * t.n - t.r * t.r
        s = sum(d ** (k - 1) * cohen_H(k - 1, D // (d * d)) for d in divisors(content(t)))
        coeffs[t] = c * s
    f = QSeries.from_dict(Kind.SIEGEL2, None, k, T, coeffs)
    if phi(f) != elliptic_eisenstein(k, T):
        raise AssertionError(f"Phi(E_{k}) does not match the elliptic Eisenstein series")
    return f


def siegel_eisenstein(k: int, T: int) -> QSeries:
    """Degree-2 Siegel Eisenstein series of even weight k >= 4, a(0) = 1."""
    _check_weight(k)
    return _siegel_eisenstein_cached(k, T)


def siegel_cusp_space_basis(k: int, gens: "SiegelGenerators") -> list[QSeries]:
    """Monomials in G4, G6, X10, X12 of weight k with at least one X factor."""
    from .ringstruct import SIEGEL_WEIGHTS, _exponent_vectors

    out = []
    for e in _exponent_vectors(SIEGEL_WEIGHTS, k):
        if e[2] or e[3]:
            out.append(gens.monomial(e))
    return out


@dataclass(frozen=True, eq=False)
class SiegelGenerators:
    G4: QSeries
    G6: QSeries
    X10: QSeries
    X12: QSeries

    @property
    def trunc(self) -> int:
        return self.G4.trunc

    @property
    def series(self) -> tuple[QSeries, ...]:
        return (self.G4, self.G6, self.X10, self.X12)

    @property
    def names(self) -> tuple[str, ...]:
        return ("G4", "G6", "X10", "X12")

    @property
    def weights(self) -> tuple[int, ...]:
        return (4, 6, 10, 12)

    def monomial(self, exps) -> QSeries:
        return _siegel_monomial(self, tuple(exps))

    def zero(self, weight: int) -> QSeries:
        return QSeries.zero(Kind.SIEGEL2, None, weight, self.trunc)


@lru_cache(maxsize=None)
def _siegel_monomial(gens: SiegelGenerators, exps: tuple[int, ...]) -> QSeries:
    if not any(exps):
        return QSeries.one(Kind.SIEGEL2, None, gens.trunc)
    i = next(j for j, e in enumerate(exps) if e)
    rest = list(exps)
    rest[i] -= 1
    return _siegel_monomial(gens, tuple(rest)) * gens.series[i]


def _solve_cusp_combination(basis: list[QSeries], T: int, name: str) -> list[Fraction]:
    """Coefficients of the unique combination with zero singular column and a(T1) = 1."""
    n = len(basis)
    ech = Echelon(n)
    space = basis[0].space
    rank1 = [i for i, t in enumerate(space.indices) if 4 * t.m * t.n == t.r * t.r]
    for i in rank1:
        ech.add([b.numerators[i] * Fraction(1, b.denominator) for b in basis] + [0], tag=space.indices[i])
    ech.add([b[T1] for b in basis] + [1], tag="a(T1)=1")
    if ech.rank < n:
        raise Underdetermined(ech.rank, n, ech.free_columns())
    sol = ech.solve()
    combo = linear_combination(sol, basis)
    if combo[T1] != 1:
        raise AssertionError(f"{name} normalization failed")
    return sol


@lru_cache(maxsize=None)
def siegel_generators(T: int) -> SiegelGenerators:
    """G4, G6, X10, X12 with a_G(0) = 1 and a_X(T1) = 1, to trace T."""
    if T < 2:
        raise ValueError("need trace >= 2 so that T1 is materialized")
    G4 = siegel_eisenstein(4, T)
    G6 = siegel_eisenstein(6, T)
    basis10 = [G4 * G6, siegel_eisenstein(10, T)]
    X10 = linear_combination(_solve_cusp_combination(basis10, T, "X10"), basis10)
    basis12 = [G4 * G4 * G4, G6 * G6, siegel_eisenstein(12, T)]
    X12 = linear_combination(_solve_cusp_combination(basis12, T, "X12"), basis12)
    for X in (X10, X12):
        if not phi(X).is_zero():
            raise AssertionError("Siegel cusp generator has nonzero Phi-image")
    return SiegelGenerators(G4, G6, X10, X12)


def siegel_box(k: int, t: int = 1, n_le_m: bool = False) -> SturmBox:
    """0 <= m <= (kt+2)/10, 0 <= n <= (3kt+1)/30, floored."""
    if k % 2:
        raise ValueError("weight must be even")
    return SturmBox("siegel", k, floor(Fraction(k * t + 2, 10)), floor(Fraction(3 * k * t + 1, 30)), n_le_m)


def siegel_sturm_check(f: QSeries, p: int, k: int | None = None, t: int = 1,
                       n_le_m: bool = False, corroborate: bool = True) -> CongruenceReport:
    """Check the Siegel Sturm box of f mod p; ZERO_MOD_P means f = 0 mod p."""
    if f.kind is not Kind.SIEGEL2:
        raise SeriesError("siegel_sturm_check needs a Siegel series")
    if not is_prime(p) or p < 5:
        raise ValueError("p must be a prime >= 5")
    k = f.weight if k is None else k
    box = siegel_box(k, t, n_le_m)
    if f.trunc < box.max_trace:
        raise SeriesError(f"truncation {f.trunc} smaller than the box trace {box.max_trace}")
    r = f.reduce_mod(p)
    witness = None
    for i, T in enumerate(f.space.indices):
        if box.contains(T.m, T.n) and r[i]:
            witness = T
            break
    corr = None
    if corroborate:
        corr = not np.any(r) if witness is None else True
    verdict = Verdict.ZERO_MOD_P if witness is None else Verdict.NONZERO_MOD_P
    return CongruenceReport(verdict, "siegel-sturm", p=p, trunc=f.trunc, witness=witness, box=box,
                            corroborated=corr)
