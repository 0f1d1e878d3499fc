"""Exact linear algebra over Q (fraction-free) and over F_p.

Rows are fed one at a time into an echelon builder; this lets callers stop
once the rank has stabilized and then replay the remaining rows as pure
consistency checks.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


class LinAlgError(ValueError):
    pass


class Inconsistent(LinAlgError):
    def __init__(self, row_tag=None):
        super().__init__(f"inconsistent linear system (row {row_tag!r})")
        self.row_tag = row_tag


class Underdetermined(LinAlgError):
    def __init__(self, rank: int, ncols: int, free=()):
        super().__init__(f"solution space has dimension {ncols - rank} (rank {rank} of {ncols})")
        self.rank = rank
        self.ncols = ncols
        self.free = tuple(free)


def _to_int_row(row: Sequence) -> list[int]:
    fr = [Fraction(v) for v in row]
    den = 1
    for v in fr:
        den = den * v.denominator // gcd(den, v.denominator)
    return [int(v * den) for v in fr]


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for v in row:
        if v:
            g = gcd(g, v)
            if g == 1:
                return row
    return row if g in (0, 1) else [v // g for v in row]


class Echelon:
    """Incremental row echelon form of an augmented system ``A x = b`` over Q.

    Each row is ``ncols`` coefficients followed by the right-hand side.
    Elimination is fraction-free: rows are integer vectors reduced by
    cross-multiplication and divided by their content.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, list[int]] = {}  # pivot column -> row

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: list[int]) -> list[int]:
        for c in sorted(self.pivots):
            v = row[c]
            if v:
                prow = self.pivots[c]
                pv = prow[c]
                g = gcd(pv, v)
                a, b = pv // g, v // g
                row = _primitive([a * x - b * y for x, y in zip(row, prow)])
        return row

    def add(self, row: Sequence, tag=None) -> str:
        """Insert a row; returns "pivot" or "dependent"; raises Inconsistent."""
        if len(row) != self.ncols + 1:
            raise LinAlgError("row length does not match the system")
        r = self.reduce(_primitive(_to_int_row(row)))
        lead = next((c for c in range(self.ncols) if r[c]), None)
        if lead is None:
            if r[self.ncols]:
                raise Inconsistent(tag)
            return "dependent"
        if r[lead] < 0:
            r = [-v for v in r]
        self.pivots[lead] = r
        return "pivot"

    def check(self, row: Sequence) -> bool:
        """True if the row is implied by the rows inserted so far."""
        r = self.reduce(_primitive(_to_int_row(row)))
        return not any(r)

    def free_columns(self) -> list[int]:
        return [c for c in range(self.ncols) if c not in self.pivots]

    def solve(self, free_values: dict[int, Fraction] | None = None) -> list[Fraction]:
        """Back-substitution; free columns take ``free_values`` (default: error)."""
        free = self.free_columns()
        free_values = dict(free_values or {})
        missing = [c for c in free if c not in free_values]
        if missing:
            raise Underdetermined(self.rank, self.ncols, missing)
        x: list[Fraction | None] = [None] * self.ncols
        for c in free:
            x[c] = Fraction(free_values[c])
        for c in sorted(self.pivots, reverse=True):
            row = self.pivots[c]
            s = Fraction(row[self.ncols])
            for j in range(c + 1, self.ncols):
                if row[j]:
                    s -= row[j] * x[j]
            x[c] = s / row[c]
        return x  # type: ignore[return-value]

    def nullspace(self) -> list[list[Fraction]]:
        """Basis of the homogeneous solution space, one vector per free column."""
        basis = []
        rhs_zero = {c: list(r[:-1]) + [0] for c, r in self.pivots.items()}
        saved = self.pivots
        self.pivots = rhs_zero
        try:
            for f in self.free_columns():
                vals = {c: Fraction(int(c == f)) for c in self.free_columns()}
                basis.append(self.solve(vals))
        finally:
            self.pivots = saved
        return basis


def solve_unique(rows: Sequence[Sequence], ncols: int) -> list[Fraction]:
    """Solve an augmented system with a unique solution (exact)."""
    ech = Echelon(ncols)
    for i, r in enumerate(rows):
        ech.add(r, tag=i)
    if ech.rank < ncols:
        raise Underdetermined(ech.rank, ncols, ech.free_columns())
    return ech.solve()


def rank_exact(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    ech = Echelon(len(rows[0]))
    for r in rows:
        ech.add(list(r) + [0])
    return ech.rank


# --- F_p -------------------------------------------------------------------

class EchelonModP:
    """Row echelon form over F_p (augmented, like :class:`Echelon`)."""

    def __init__(self, ncols: int, p: int):
        self.ncols = ncols
        self.p = p
        self.pivots: dict[int, list[int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: list[int]) -> list[int]:
        p = self.p
        row = [v % p for v in row]
        for c in sorted(self.pivots):
            v = row[c]
            if v:
                prow = self.pivots[c]
                row = [(x - v * y) % p for x, y in zip(row, prow)]
        return row

    def add(self, row: Sequence[int], tag=None) -> str:
        r = self.reduce(list(row))
        lead = next((c for c in range(self.ncols) if r[c]), None)
        if lead is None:
            if r[self.ncols]:
                raise Inconsistent(tag)
            return "dependent"
        inv = pow(r[lead], -1, self.p)
        r = [v * inv % self.p for v in r]
        # keep the basis fully reduced so back-substitution is trivial
        for c, prow in self.pivots.items():
            v = prow[lead]
            if v:
                self.pivots[c] = [(x - v * y) % self.p for x, y in zip(prow, r)]
        self.pivots[lead] = r
        return "pivot"

    def free_columns(self) -> list[int]:
        return [c for c in range(self.ncols) if c not in self.pivots]

    def solve(self) -> list[int]:
        """A particular solution with free columns set to 0."""
        x = [0] * self.ncols
        for c, row in self.pivots.items():
            x[c] = row[self.ncols]
        return x

    def nullspace(self) -> list[list[int]]:
        p = self.p
        basis = []
        for f in self.free_columns():
            v = [0] * self.ncols
            v[f] = 1
            for c, row in self.pivots.items():
                v[c] = (-row[f]) % p
            basis.append(v)
        return basis


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    if not rows:
        return 0
    ech = EchelonModP(len(rows[0]), p)
    for r in rows:
        ech.add(list(r) + [0])
    return ech.rank


def nullspace_mod_p(rows: Sequence[Sequence[int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of {x : rows . x == 0 mod p}."""
    ech = EchelonModP(ncols, p)
    for r in rows:
        ech.add(list(r) + [0])
    return ech.nullspace()
