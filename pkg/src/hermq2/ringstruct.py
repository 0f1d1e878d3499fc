"""Isobaric polynomials in modular-form generators: monomial bases, exact
decomposition of a form into generators, and the split
f = P(non-distinguished generators) + chi * g.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .linalg import Echelon, Inconsistent, Underdetermined
from .qexp import QSeries, linear_combination

HERMITIAN_WEIGHTS = {
    "Q(i)": (4, 6, 8, 10, 12),
    "Q(sqrt-3)": (4, 6, 10, 12, 18),
}
SIEGEL_WEIGHTS = (4, 6, 10, 12)


class DecompositionError(ValueError):
    pass


def _exponent_vectors(weights: Sequence[int], k: int) -> list[tuple[int, ...]]:
    """All e >= 0 with sum w_i e_i = k, in descending lexicographic order."""
    out: list[tuple[int, ...]] = []

    def rec(i: int, rest: int, acc: list[int]) -> None:
        if i == len(weights) - 1:
            if rest % weights[i] == 0:
                out.append(tuple(acc + [rest // weights[i]]))
            return
        for e in range(rest // weights[i], -1, -1):
            rec(i + 1, rest - e * weights[i], acc + [e])

    if k < 0 or k % 2:
        return []
    rec(0, k, [])
    return out


def monomial_basis(field_or_weights, weight: int) -> list[tuple[int, ...]]:
    """Exponent vectors of all generator monomials of the given weight."""
    if weight < 0 or weight % 2:
        raise ValueError("weight must be a non-negative even integer")
    weights = _weights_of(field_or_weights)
    return _exponent_vectors(weights, weight)


def _weights_of(obj) -> tuple[int, ...]:
    if isinstance(obj, tuple):
        return obj
    if hasattr(obj, "weights"):
        return tuple(obj.weights)
    name = getattr(obj, "name", obj)
    return HERMITIAN_WEIGHTS[name]


@dataclass
class IsobaricPoly:
    """sum c_e x^e over exponent vectors e, all of one generator-weight."""

    weights: tuple[int, ...]
    weight: int
    terms: dict[tuple[int, ...], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for e, c in self.terms.items():
            e = tuple(e)
            if len(e) != len(self.weights):
                raise ValueError(f"exponent vector {e} has wrong length")
            if sum(w * x for w, x in zip(self.weights, e)) != self.weight:
                raise ValueError(f"monomial {e} is not of weight {self.weight}")
            c = Fraction(c)
            if c:
                clean[e] = c
        self.terms = dict(sorted(clean.items(), reverse=True))

    def __eq__(self, other) -> bool:
        if not isinstance(other, IsobaricPoly):
            return NotImplemented
        return self.weights == other.weights and self.weight == other.weight and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def is_zero_mod(self, p: int) -> bool:
        for c in self.terms.values():
            if c.denominator % p == 0:
                raise ValueError(f"coefficient {c} is not {p}-integral")
            if c.numerator % p:
                return False
        return True

    def to_json(self) -> dict:
        return {",".join(map(str, e)): f"{c.numerator}/{c.denominator}" for e, c in self.terms.items()}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, weights: tuple[int, ...], weight: int, obj: Mapping[str, str]) -> "IsobaricPoly":
        return cls(weights, weight, {tuple(int(v) for v in k.split(",")): Fraction(c) for k, c in obj.items()})


def evaluate(P: IsobaricPoly, gens, trunc: int | None = None) -> QSeries:
    """P(generators) as an exact series."""
    if tuple(gens.weights) != P.weights:
        raise ValueError("polynomial and generator weights differ")
    if not P.terms:
        return gens.zero(P.weight)
    exps = list(P.terms)
    series = [gens.monomial(e) for e in exps]
    out = linear_combination([P.terms[e] for e in exps], series)
    return out if trunc is None else out.truncate(trunc)


def decompose(f: QSeries, gens) -> IsobaricPoly:
    """The unique P with f = P(generators) on every materialized index.

    Rows are consumed in canonical index order until the rank reaches the
    number of monomials; the remaining rows are then checked for consistency.
    """
    k = f.weight
    weights = tuple(gens.weights)
    if k % 2:
        raise DecompositionError("odd weight")
    if f.trunc > gens.trunc:
        f = f.truncate(gens.trunc)
    basis = monomial_basis(weights, k)
    if not basis:
        if f.is_zero():
            return IsobaricPoly(weights, k, {})
        raise DecompositionError(f"no monomials of weight {k}; f is not in the ring")
    mons = [gens.monomial(e).truncate(f.trunc) for e in basis]
    n = len(mons)
    ech = Echelon(n)
    rows = list(range(len(f.space)))
    fn, fd = f.numerators, f.denominator
    col_num = [m.numerators for m in mons]
    col_den = [m.denominator for m in mons]
    consumed = 0
    try:
        for i in rows:
            consumed = i + 1
            ech.add([Fraction(col_num[j][i], col_den[j]) for j in range(n)] + [Fraction(fn[i], fd)],
                    tag=f.space.indices[i])
            if ech.rank == n:
                break
        if ech.rank < n:
            raise DecompositionError(
                f"generator monomials are dependent at trace {f.trunc} (rank {ech.rank} of {n}); "
                "increase the truncation")
        sol = ech.solve()
        P = IsobaricPoly(weights, k, dict(zip(basis, sol)))
        # remaining rows as consistency equations
        for i in rows[consumed:]:
            v = sum((Fraction(col_num[j][i], col_den[j]) * sol[j] for j in range(n) if sol[j]), Fraction(0))
            if v != Fraction(fn[i], fd):
                raise Inconsistent(f.space.indices[i])
    except Inconsistent as e:
        raise DecompositionError(f"not in the ring at this truncation (witness {e.row_tag})") from None
    except Underdetermined as e:  # pragma: no cover - guarded above
        raise DecompositionError(str(e)) from None
    return P


def decomposition_rank(gens, weight: int, trunc: int | None = None) -> tuple[int, int]:
    """(rank, number of monomials) of the evaluation matrix at the given weight."""
    basis = monomial_basis(tuple(gens.weights), weight)
    if not basis:
        return 0, 0
    mons = [gens.monomial(e) if trunc is None else gens.monomial(e).truncate(trunc) for e in basis]
    n = len(mons)
    ech = Echelon(n)
    for i in range(len(mons[0].space)):
        ech.add([Fraction(m.numerators[i], m.denominator) for m in mons] + [0])
        if ech.rank == n:
            break
    return ech.rank, n


def chi_split(f: QSeries, gens) -> tuple[IsobaricPoly, QSeries]:
    """f = P(other generators) + chi * g with chi the distinguished cusp generator.

    P is returned over the four non-distinguished generators, g as a series
    of weight k - weight(chi).
    """
    full = decompose(f, gens)
    ci = gens.distinguished_slot
    cw = gens.weights[ci]
    other = tuple(w for i, w in enumerate(gens.weights) if i != ci)
    P_terms, g_terms = {}, {}
    for e, c in full.terms.items():
        if e[ci] == 0:
            P_terms[e[:ci] + e[ci + 1:]] = c
        else:
            g_terms[e[:ci] + (e[ci] - 1,) + e[ci + 1:]] = c
    P = IsobaricPoly(other, f.weight, P_terms)
    G = IsobaricPoly(tuple(gens.weights), f.weight - cw, g_terms)
    if f.weight - cw < 0:
        g = None
    else:
        g = evaluate(G, gens, f.trunc) if G.terms else gens.zero(f.weight - cw).truncate(f.trunc)
    return P, g


def evaluate_partial(P: IsobaricPoly, gens) -> QSeries:
    """Evaluate a polynomial in the non-distinguished generators."""
    ci = gens.distinguished_slot
    full = IsobaricPoly(tuple(gens.weights), P.weight,
                        {e[:ci] + (0,) + e[ci:]: c for e, c in P.terms.items()})
    return evaluate(full, gens)
