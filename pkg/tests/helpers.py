"""Random series and polynomials for property tests."""
from __future__ import annotations

import random
from fractions import Fraction

from hermq2.lattice import conj
from hermq2.qexp import Character, Kind, QSeries


def random_series(rng: random.Random, field, T: int, density: float = 0.3, bound: int = 20,
                  weight: int = 4, symmetric: bool = False) -> QSeries:
    kind = Kind.HERMITIAN if field is not None else Kind.SIEGEL2
    from hermq2.qexp import index_space

    space = index_space(kind, field, T)
    coeffs = {}
    for H in space.indices:
        if rng.random() < density:
            coeffs[H] = rng.randint(-bound, bound)
    if symmetric and field is not None:
        for H in list(coeffs):
            coeffs[conj(field, H)] = coeffs[H]
    return QSeries.from_dict(kind, field, weight, T, coeffs,
                             Character.NU_K if field is not None else Character.TRIVIAL)


def series_with_ord(rng: random.Random, field, T: int, lead_pos: int, p: int) -> QSeries:
    """Random integral series whose first p-unit coefficient sits at position lead_pos."""
    from hermq2.qexp import index_space

    space = index_space(Kind.HERMITIAN, field, T)
    coeffs = {}
    for i, H in enumerate(space.indices):
        if i < lead_pos:
            coeffs[H] = p * rng.randint(-5, 5)
        elif i == lead_pos:
            coeffs[H] = rng.choice([v for v in range(-3 * p, 3 * p) if v % p])
        elif rng.random() < 0.5:
            coeffs[H] = rng.randint(-50, 50)
    return QSeries.from_dict(Kind.HERMITIAN, field, 4, T, coeffs)


def zp_rational(rng: random.Random, p: int, bound: int = 30) -> Fraction:
    """A random element of Z_(p)."""
    den = rng.choice([d for d in (1, 1, 1, 2, 3, 4, 6, 9) if d % p])
    return Fraction(rng.randint(-bound, bound), den)
