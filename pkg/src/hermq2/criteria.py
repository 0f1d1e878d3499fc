"""Sturm-box vanishing test, p-integrality test and the p-adic weight
congruence check for symmetric Hermitian forms of degree 2.

Each check re-reads the materialized coefficients and records whether the
full truncation agrees with the box verdict (``corroborated``).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

import numpy as np

from .arith import is_prime
from .lattice import FieldData, FieldTag
from .qexp import INFINITY, Kind, NotPIntegral, QSeries, SeriesError, congruent_mod, is_symmetric, ord_p
from .reports import CongruenceReport, SturmBox, Verdict
from .siegel import siegel_box


def _box_corners(field: FieldData, k: int) -> tuple[Fraction, Fraction]:
    if field.tag is FieldTag.GAUSS:
        return Fraction(5 * k + 8, 40), Fraction(15 * k + 4, 120)
    return Fraction(5 * k + 9, 45), Fraction(10 * k + 3, 90)


def sturm_box(field: FieldData, k: int, n_le_m: bool = False) -> SturmBox:
    """Integral box 0 <= m <= M(k), 0 <= n <= N(k) of the Hermitian Sturm bound."""
    if k % 2:
        raise ValueError("weight must be even")
    if k < 0:
        raise ValueError("weight must be non-negative")
    M, N = _box_corners(field, k)
    return SturmBox(field.name, k, floor(M), floor(N), n_le_m)


def siegel_box_dominated(field: FieldData, k: int) -> bool:
    """Strict comparison of the Siegel corners against the Hermitian ones.

    This is what lets a Hermitian box test imply the Siegel box test for the
    restriction.  It holds exactly for k > 0; at k = 0 the corners coincide.
    """
    M, N = _box_corners(field, k)
    S = siegel_box(k)
    return Fraction(k + 2, 10) < M and Fraction(3 * k + 1, 30) < N and S.m_max <= floor(M) and S.n_max <= floor(N)


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p < 5:
        raise ValueError("p must be >= 5")


def _check_form(f: QSeries) -> None:
    if f.kind is not Kind.HERMITIAN:
        raise SeriesError("a Hermitian series is required")
    if f.weight % 2:
        raise SeriesError("weight must be even")
    if not is_symmetric(f):
        raise SeriesError("f is not symmetric")


def _box_positions(f: QSeries, box: SturmBox) -> np.ndarray:
    return np.fromiter((i for i, H in enumerate(f.space.indices) if box.contains(H.m, H.n)), dtype=np.int64)


def check_sturm_zero(f: QSeries, p: int, n_le_m: bool = True, corroborate: bool = True) -> CongruenceReport:
    """ZERO_MOD_P iff every box coefficient vanishes mod p; else the least witness."""
    _check_prime(p)
    _check_form(f)
    box = sturm_box(f.field, f.weight, n_le_m)
    if f.trunc < box.max_trace:
        raise SeriesError(f"truncation {f.trunc} smaller than the box trace {box.max_trace}")
    r = f.reduce_mod(p)
    pos = _box_positions(f, box)
    hit = pos[r[pos] != 0]
    witness = f.space.indices[hit[0]] if len(hit) else None
    verdict = Verdict.ZERO_MOD_P if witness is None else Verdict.NONZERO_MOD_P
    details = {"weight": f.weight, "field": f.field.name}
    corr = None
    if corroborate:
        nz = np.flatnonzero(r)
        corr = len(nz) == 0 if witness is None else True
        if not corr:
            details["full_truncation_witness"] = list(f.space.indices[nz[0]])
    return CongruenceReport(verdict, "sturm", p=p, trunc=f.trunc, witness=witness, box=box,
                            corroborated=corr, details=details)


def check_integrality(f: QSeries, p: int, mode: str = "p-integral", n_le_m: bool = True,
                      corroborate: bool = True) -> CongruenceReport:
    """Box test for p-integrality (mode "p-integral") or exact vanishing (mode "zero")."""
    _check_prime(p)
    _check_form(f)
    if mode not in ("p-integral", "zero"):
        raise ValueError("mode must be 'p-integral' or 'zero'")
    box = sturm_box(f.field, f.weight, n_le_m)
    if f.trunc < box.max_trace:
        raise SeriesError(f"truncation {f.trunc} smaller than the box trace {box.max_trace}")
    pos = _box_positions(f, box)
    num, den = f.numerators, f.denominator
    details = {"weight": f.weight, "field": f.field.name, "mode": mode}
    witness = None
    if mode == "zero":
        for i in pos:
            if num[i]:
                witness = f.space.indices[i]
                break
        verdict = Verdict.ZERO if witness is None else Verdict.NONZERO
        corr = (f.is_zero() if witness is None else True) if corroborate else None
    else:
        if den % p:
            bad = []
        else:
            bad = [i for i in pos if Fraction(num[i], den).denominator % p == 0]
        if bad:
            witness = f.space.indices[bad[0]]
            details["value"] = str(f[witness])
        verdict = Verdict.P_INTEGRAL if witness is None else Verdict.NOT_P_INTEGRAL
        corr = ((f.p_integral_violation(p) is None) if witness is None else True) if corroborate else None
    return CongruenceReport(verdict, "integrality", p=p, trunc=f.trunc, witness=witness, box=box,
                            corroborated=corr, details=details)


@dataclass(frozen=True)
class WeightClass:
    """Image of a weight in Z / (p-1) p^(l-1) Z."""

    p: int
    l: int
    residue: int

    @property
    def modulus(self) -> int:
        return (self.p - 1) * self.p ** (self.l - 1)

    def __post_init__(self):
        object.__setattr__(self, "residue", self.residue % self.modulus)


def weight_class(k: int, p: int, l: int) -> WeightClass:
    _check_prime(p)
    if l < 1:
        raise ValueError("level must be >= 1")
    return WeightClass(p, l, k)


def padic_weight_check(f: QSeries, g: QSeries, p: int, l: int) -> CongruenceReport:
    """Given f != 0 mod p and f = g mod p^l, the weights agree mod (p-1)p^(l-1)."""
    _check_prime(p)
    if l < 1:
        raise ValueError("level must be >= 1")
    for s in (f, g):
        if s.kind is not f.kind or s.field != f.field:
            raise SeriesError("f and g must be of the same kind and field")
        if s.weight % 2:
            raise SeriesError("weights must be even")
        if s.kind is Kind.HERMITIAN and not is_symmetric(s):
            raise SeriesError("inputs must be symmetric")
    T = min(f.trunc, g.trunc)
    f, g = f.truncate(T), g.truncate(T)
    cf, cg = weight_class(f.weight, p, l), weight_class(g.weight, p, l)
    details = {"k": f.weight, "k_prime": g.weight, "modulus": cf.modulus,
               "residue_k": cf.residue, "residue_k_prime": cg.residue}

    def report(verdict, witness=None, **extra):
        return CongruenceReport(verdict, "padic-weight", p=p, l=l, trunc=T, witness=witness,
                                details={**details, **extra})

    for label, s in (("f", f), ("g", g)):
        bad = s.p_integral_violation(p)
        if bad is not None:
            return report(Verdict.PREMISE_FAILED, bad, premise=f"{label} is p-integral")
    o = ord_p(f, p)
    if o is INFINITY:
        return report(Verdict.PREMISE_FAILED, premise="f is not = 0 mod p")
    try:
        ok, w = congruent_mod(f, g, p, l)
    except NotPIntegral as e:  # pragma: no cover - excluded above
        return report(Verdict.PREMISE_FAILED, premise=str(e))
    if not ok:
        return report(Verdict.PREMISE_FAILED, w, premise="f = g mod p^l")
    if cf.residue != cg.residue:
        return report(Verdict.THEOREM_VIOLATION, o)
    return report(Verdict.WEIGHTS_CONGRUENT, None, ord_p=list(o))
