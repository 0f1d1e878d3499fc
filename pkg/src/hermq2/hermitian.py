"""Hermitian generator expansions over Q(i) and Q(sqrt-3).

Eisenstein series have Maass shape: for rank-2 H

    a(H) = sum_{d | eps(H)} d^(k-1) alpha_k(Delta(H) / d^2),

and on rank-1 H the coefficient depends on eps(H) alone (read off the
elliptic Eisenstein series through Phi).  E4 and E6 are obtained by solving
for alpha_k from the restriction identities E_k|S2 = G_k.  Every other
Eisenstein series uses the one-parameter family

    alpha_k(N) = C * sum_{d | N} (chi(N/d) - chi(d)) d^(k-2) / (1 + |chi(N)|)

with chi the quadratic character of K, where C is solved from
E_k|S2 - G_k in span(Siegel cusp monomials) and then checked on every
Siegel index of the truncation.  Cusp generators are exact linear solves.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import IO, Callable, Iterable, Sequence

import numpy as np

from .arith import bernoulli, divisors, factorize, generalized_bernoulli, is_prime, kronecker_chi, sigma
from .lattice import (
    EISENSTEIN,
    GAUSS,
    FieldData,
    FieldTag,
    HermIndex,
    SiegIndex,
    content,
    delta,
    enumerate_psd,
    field_from_name,
    is_semipositive,
)
from .linalg import Echelon, EchelonModP, Inconsistent, Underdetermined
from .qexp import (
    Character,
    Kind,
    QSeries,
    SeriesError,
    congruent_mod,
    index_space,
    is_symmetric,
    linear_combination,
    phi,
    restrict,
)
from .ringstruct import HERMITIAN_WEIGHTS, SIEGEL_WEIGHTS, _exponent_vectors
from .siegel import elliptic_eisenstein, siegel_cusp_space_basis, siegel_eisenstein, siegel_generators

TABLE_SCHEMA = "hermq2-gentable-1"

#: a_chi8(H0) = 1 over Q(i); H0 = [[1, (-1-i)/2], [(-1+i)/2, 1]]
H0_GAUSS = HermIndex(1, 1, -1, -1)
#: a_chi18 = 1 at [[2, *], [*, 2]] with beta = -2 over Q(sqrt-3)
H_CHI18 = HermIndex(2, 2, -2, 0)

GENERATOR_NAMES = {
    FieldTag.GAUSS: ("E4", "E6", "CHI8", "F10", "F12"),
    FieldTag.EISENSTEIN: ("E4", "E6", "F10", "F12", "CHI18"),
}
DISTINGUISHED = {FieldTag.GAUSS: ("CHI8", H0_GAUSS), FieldTag.EISENSTEIN: ("CHI18", H_CHI18)}

# name -> (Siegel generator, multiplier); None means the restriction vanishes
RESTRICTION_IDENTITIES = {
    FieldTag.GAUSS: {"E4": ("G4", 1), "E6": ("G6", 1), "CHI8": (None, 0), "F10": ("X10", 6), "F12": ("X12", 1)},
    FieldTag.EISENSTEIN: {"E4": ("G4", 1), "E6": ("G6", 1), "F10": ("X10", 2), "F12": ("X12", 2),
                          "CHI18": (None, 0)},
}
CUSP_NAMES = {"CHI8", "F10", "F12", "CHI18"}
INTEGRALITY_PRIMES = (5, 7, 11, 13)

FIXTURE_ENV = "HERMQ2_FIXTURES"


class GeneratorError(ValueError):
    pass


class ValidationError(GeneratorError):
    """A generator violates a named identity; ``witness`` is the least failing index."""

    def __init__(self, name: str, identity: str, witness=None, detail: str = ""):
        msg = f"{name}: violates {identity}"
        if witness is not None:
            msg += f" at {tuple(witness)}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.name = name
        self.identity = identity
        self.witness = witness


class TableError(GeneratorError):
    pass


def _field_slug(field: FieldData) -> str:
    return "gauss" if field.tag is FieldTag.GAUSS else "eisenstein"


# --- Maass-shape Eisenstein series ------------------------------------------

@dataclass(frozen=True)
class ArithFunctionTable:
    """N -> alpha_k(N) for 0 <= N <= n_max; alpha_k(0) = 1 is the constant term."""

    field: FieldData
    k: int
    values: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.values.get(0, 1) != 1:
            raise ValueError("alpha_k(0) must be 1")
        object.__setattr__(self, "values", {0: Fraction(1), **{n: Fraction(v) for n, v in self.values.items()}})

    def __call__(self, N: int) -> Fraction:
        try:
            return self.values[N]
        except KeyError:
            raise KeyError(f"alpha_{self.k}({N}) not tabulated") from None

    @property
    def n_max(self) -> int:
        return max(self.values)


def maass_kernel(field: FieldData, k: int, N: int) -> Fraction:
    """sum_{d | N} (chi(N/d) - chi(d)) d^(k-2) / (1 + |chi(N)|), for N >= 1."""
    D = field.d_K
    tot = sum((kronecker_chi(D, N // d) - kronecker_chi(D, d)) * d ** (k - 2) for d in divisors(N))
    return Fraction(tot, 1 + abs(kronecker_chi(D, N)))


def eisenstein_constant_formula(field: FieldData, k: int) -> Fraction:
    """-4k(k-1) / (B_k B_{k-1,chi}); used only to cross-check the solved constant."""
    return Fraction(-4 * k * (k - 1)) / (bernoulli(k) * generalized_bernoulli(field.d_K, k - 1))


def _rank1_column(k: int, T: int) -> Callable[[int], Fraction]:
    ell = elliptic_eisenstein(k, T)
    return lambda e: ell[e]


def maass_series(field: FieldData, k: int, T: int, alpha: Callable[[int], Fraction],
                 rank1: Callable[[int], Fraction], constant=1) -> QSeries:
    """Series with a(0) = constant, a(H) = rank1(eps(H)) on rank 1, Maass shape on rank 2."""
    coeffs = {}
    for H in enumerate_psd(field, T):
        if H.is_zero():
            coeffs[H] = constant
            continue
        D = delta(field, H)
        e = content(H)
        if D == 0:
            coeffs[H] = rank1(e)
        else:
            coeffs[H] = sum((d ** (k - 1) * alpha(D // (d * d)) for d in divisors(e)), Fraction(0))
    return QSeries.from_dict(Kind.HERMITIAN, field, k, T, coeffs, Character.NU_K)


def _siegel_cusp_basis(k: int, T: int) -> list[QSeries]:
    if k < 10:
        return []
    return siegel_cusp_space_basis(k, siegel_generators(T))


def _pin_constant(field: FieldData, k: int, T: int) -> tuple[Fraction, list[Fraction]]:
    """Solve E_k(C)|S2 = G_k + sum c_j (Siegel cusp monomials) for (C, c_j), exactly.

    Every Siegel index of trace <= T is used; an inconsistent row means the
    Maass shape is wrong at this precision.
    """
    zero = lambda N: Fraction(0)  # noqa: E731
    low = restrict(maass_series(field, k, T, zero, _rank1_column(k, T)))
    top = restrict(maass_series(field, k, T, lambda N: maass_kernel(field, k, N), lambda e: 0, constant=0))
    G = siegel_eisenstein(k, T)
    cusp = _siegel_cusp_basis(k, T)
    n = 1 + len(cusp)
    ech = Echelon(n)
    try:
        for t in G.space.indices:
            ech.add([top[t]] + [-b[t] for b in cusp] + [G[t] - low[t]], tag=t)
    except Inconsistent as e:
        raise GeneratorError(f"E_{k} over {field.name}: restriction has no Maass-shape solution "
                             f"(witness {e.row_tag})") from None
    if ech.rank < n:
        raise Underdetermined(ech.rank, n, ech.free_columns())
    sol = ech.solve()
    return sol[0], sol[1:]


@lru_cache(maxsize=None)
def _eisenstein_cached(field: FieldData, k: int, T: int) -> QSeries:
    Tp = max(T, 4)
    C, _ = _pin_constant(field, k, Tp)
    ref = eisenstein_constant_formula(field, k)
    if C != ref:
        raise GeneratorError(f"E_{k} over {field.name}: solved constant {C} disagrees with {ref}")
    f = maass_series(field, k, Tp, lambda N: C * maass_kernel(field, k, N), _rank1_column(k, Tp))
    return f.truncate(T)


def hermitian_eisenstein(field: FieldData, k: int, T: int) -> QSeries:
    """Hermitian Eisenstein series of even weight k >= 4 (Maass shape, pinned constant)."""
    if k % 2 or k < 4:
        raise ValueError(f"Eisenstein series need even weight >= 4, got {k}")
    return _eisenstein_cached(field, k, T)


def eisenstein_alpha(field: FieldData, k: int, n_max: int, T: int = 4) -> ArithFunctionTable:
    """The coefficient function of hermitian_eisenstein as a table."""
    C, _ = _pin_constant(field, k, max(T, 4))
    return ArithFunctionTable(field, k, {N: C * maass_kernel(field, k, N) for N in range(1, n_max + 1)})


@dataclass(frozen=True, eq=False)
class BootstrapResult:
    series: QSeries
    alpha: ArithFunctionTable
    #: alpha-arguments left free by the restriction equations (filled from the closed form)
    free: tuple[int, ...]


def bootstrap_eisenstein(field: FieldData, k: int, T: int) -> BootstrapResult:
    """Solve alpha_k from restrict(E_k) = G_k on every Siegel index of trace <= T.

    Unknowns are alpha_k(N) for the N >= 1 that occur; the rank-1 column is
    fixed by Phi.  All rows are fed to the solver, so the system is checked
    for consistency in full.  Unknowns the equations do not determine (this
    happens over Q(i), where Delta also takes values = 2 mod 4) are filled
    from the closed form, and the whole identity is re-verified afterwards.
    """
    if k not in (4, 6):
        raise ValueError("the bootstrap is defined for k = 4, 6")
    indices = enumerate_psd(field, T)
    rank1 = _rank1_column(k, T)
    needed = sorted({delta(field, H) // (d * d) for H in indices if not H.is_zero() and delta(field, H)
                     for d in divisors(content(H))})
    col = {N: j for j, N in enumerate(needed)}
    G = siegel_eisenstein(k, T)
    rows: dict[SiegIndex, list[Fraction]] = {t: [Fraction(0)] * (len(needed) + 1) for t in G.space.indices}
    for t in G.space.indices:
        rows[t][-1] = G[t]
    for H in indices:
        t = SiegIndex(H.m, H.n, H.y)
        row = rows[t]
        if H.is_zero():
            row[-1] -= 1
            continue
        D = delta(field, H)
        if D == 0:
            row[-1] -= rank1(content(H))
            continue
        for d in divisors(content(H)):
            row[col[D // (d * d)]] += d ** (k - 1)
    ech = Echelon(len(needed))
    try:
        for t in G.space.indices:
            ech.add(rows[t], tag=t)
    except Inconsistent as e:
        raise GeneratorError(f"E_{k} over {field.name}: restriction equations inconsistent at {e.row_tag}") from None
    free_cols = ech.free_columns()
    free = tuple(needed[c] for c in free_cols)
    fill = {}
    if free_cols:
        closed = eisenstein_alpha(field, k, max(free))
        fill = {c: closed(needed[c]) for c in free_cols}
    sol = ech.solve(fill)
    table = ArithFunctionTable(field, k, dict(zip(needed, sol)))
    f = maass_series(field, k, T, table, rank1)
    if restrict(f) != G:
        raise GeneratorError(f"E_{k} over {field.name}: bootstrap does not reproduce G_{k}")
    return BootstrapResult(f, table, free)


def hermitian_eisenstein_bootstrap(field: FieldData, k: int, T: int) -> QSeries:
    return bootstrap_eisenstein(field, k, T).series


# --- cusp generators -----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CuspConstraints:
    """Linear conditions on sum lambda_j A_j.

    ``fixed_zero`` (columns set to 0) and ``pin_coeffs`` ((index, value)
    pairs) remove a documented residual ambiguity; the solver checks that
    exactly that many dimensions remain before applying them.
    """

    cusp: bool = True
    restrict_to: QSeries | None = None
    normalize: tuple | None = None  # (index, value)
    fixed_zero: tuple[int, ...] = ()
    pin_coeffs: tuple = ()


def solve_cusp_generator(field: FieldData, weight: int, available: Sequence[QSeries],
                         constraints: CuspConstraints, name: str = "generator") -> tuple[QSeries, list[Fraction]]:
    """The unique combination of ``available`` meeting ``constraints``; returns (series, lambdas)."""
    if not available:
        raise GeneratorError(f"{name}: nothing to combine")
    for a in available:
        if a.weight != weight or a.field != field:
            raise GeneratorError(f"{name}: candidate of weight {a.weight} over {a.field} does not fit")
    T = min(a.trunc for a in available)
    A = [a.truncate(T) for a in available]
    n = len(A)
    ech = Echelon(n)
    space = A[0].space
    try:
        if constraints.cusp:
            for i, H in enumerate(space.indices):
                if delta(field, H) == 0:
                    ech.add([Fraction(a.numerators[i], a.denominator) for a in A] + [0], tag=H)
        if constraints.restrict_to is not None:
            tgt = constraints.restrict_to.truncate(T)
            R = [restrict(a) for a in A]
            for i, t in enumerate(tgt.space.indices):
                ech.add([Fraction(r.numerators[i], r.denominator) for r in R]
                        + [Fraction(tgt.numerators[i], tgt.denominator)], tag=t)
        if constraints.normalize is not None:
            H, v = constraints.normalize
            ech.add([a[H] for a in A] + [v], tag=H)
        ambiguity = n - ech.rank
        expected = len(constraints.fixed_zero) + len(constraints.pin_coeffs)
        if ambiguity != expected:
            raise GeneratorError(f"{name}: solution space has dimension {ambiguity}, expected {expected}")
        for j in constraints.fixed_zero:
            ech.add([int(i == j) for i in range(n)] + [0], tag=f"lambda_{j}=0")
        for H, v in constraints.pin_coeffs:
            ech.add([a[H] for a in A] + [v], tag=H)
    except Inconsistent as e:
        raise GeneratorError(f"{name}: constraints are inconsistent (row {e.row_tag})") from None
    if ech.rank < n:
        raise GeneratorError(f"{name}: pinning leaves dimension {n - ech.rank}")
    lam = ech.solve()
    return linear_combination(lam, A).with_weight(weight, Character.NU_K), lam


# --- generator sets -----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GeneratorSet:
    field: FieldData
    names: tuple[str, ...]
    series: tuple[QSeries, ...]

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(s.weight for s in self.series)

    @property
    def trunc(self) -> int:
        return self.series[0].trunc

    def __getitem__(self, name: str) -> QSeries:
        try:
            return self.series[self.names.index(name)]
        except ValueError:
            raise KeyError(name) from None

    @property
    def distinguished(self) -> str:
        return DISTINGUISHED[self.field.tag][0]

    @property
    def distinguished_slot(self) -> int:
        return self.names.index(self.distinguished)

    def monomial(self, exps) -> QSeries:
        return _gen_monomial(self, tuple(exps))

    def zero(self, weight: int) -> QSeries:
        return QSeries.zero(Kind.HERMITIAN, self.field, weight, self.trunc, Character.NU_K)

    def restricted(self) -> tuple[QSeries, ...]:
        """Images under restriction, in generator order."""
        return tuple(restrict(s) for s in self.series)

    def truncate(self, T: int) -> "GeneratorSet":
        if T == self.trunc:
            return self
        return GeneratorSet(self.field, self.names, tuple(s.truncate(T) for s in self.series))


@lru_cache(maxsize=None)
def _gen_monomial(gens: GeneratorSet, exps: tuple[int, ...]) -> QSeries:
    if len(exps) != len(gens.series):
        raise ValueError("exponent vector length does not match the generators")
    if not any(exps):
        return QSeries.one(Kind.HERMITIAN, gens.field, gens.trunc).with_weight(0, Character.NU_K)
    i = max(j for j, e in enumerate(exps) if e)
    rest = list(exps)
    rest[i] -= 1
    return (_gen_monomial(gens, tuple(rest)) * gens.series[i]).with_weight(
        sum(w * e for w, e in zip(gens.weights, exps)), Character.NU_K)


def _identity_label(field: FieldData, name: str) -> str:
    tgt, c = RESTRICTION_IDENTITIES[field.tag][name]
    if tgt is None:
        return f"{name}|S2 = 0"
    return f"{name}|S2 = {tgt}" if c == 1 else f"{name}|S2 = {c} {tgt}"


def _siegel_target(field: FieldData, name: str, T: int) -> QSeries:
    tgt, c = RESTRICTION_IDENTITIES[field.tag][name]
    w = HERMITIAN_WEIGHTS[field.name][GENERATOR_NAMES[field.tag].index(name)]
    if tgt is None:
        return QSeries.zero(Kind.SIEGEL2, None, w, T)
    if tgt in ("G4", "G6"):
        return siegel_eisenstein(int(tgt[1:]), T)
    sg = getattr(siegel_generators(max(T, 2)), tgt).truncate(T)
    return sg if c == 1 else linear_combination([c], [sg])


def validate_generator(field: FieldData, name: str, f: QSeries) -> None:
    """Run the validation contract; raises ValidationError naming the identity."""
    names = GENERATOR_NAMES[field.tag]
    if name not in names:
        raise ValidationError(name, f"generator names {names}")
    w = HERMITIAN_WEIGHTS[field.name][names.index(name)]
    if f.kind is not Kind.HERMITIAN or f.field != field:
        raise ValidationError(name, f"Hermitian series over {field.name}")
    if f.weight != w:
        raise ValidationError(name, f"weight {w}", detail=f"got {f.weight}")
    P = f.space.conj_perm
    for i, H in enumerate(f.space.indices):
        if f.numerators[i] != f.numerators[P[i]]:
            raise ValidationError(name, "symmetry a(H) = a(tH)", H)
    # only 2 and 3 may divide a denominator
    bad = {q for q in factorize(f.denominator) if q >= 5}
    if bad:
        for H, c in f.items():
            if any(c.denominator % q == 0 for q in bad):
                raise ValidationError(name, f"p-integrality for p >= 5", H, detail=f"coefficient {c}")
    if name in ("E4", "E6"):
        if f.get(HermIndex(0, 0, 0, 0)) != 1:
            raise ValidationError(name, "a(0) = 1", HermIndex(0, 0, 0, 0))
    if name in CUSP_NAMES:
        for t, v in phi(f).items():
            raise ValidationError(name, "Phi(f) = 0", HermIndex(t, 0, 0, 0), detail=f"coefficient {v}")
    label = _identity_label(field, name)
    got = restrict(f)
    want = _siegel_target(field, name, f.trunc)
    if got != want:
        for t in got.space.indices:
            if got[t] != want[t]:
                raise ValidationError(name, label, t, detail=f"{got[t]} != {want[t]}")
    dname, dH = DISTINGUISHED[field.tag]
    if name == dname and f.trunc >= dH.m + dH.n and f[dH] != 1:
        raise ValidationError(name, f"a({tuple(dH)}) = 1", dH, detail=f"got {f[dH]}")


def validate_generator_set(gens: GeneratorSet) -> None:
    for name, s in zip(gens.names, gens.series):
        validate_generator(gens.field, name, s)


def _compute_cusp_generators(field: FieldData, T: int, E4: QSeries, E6: QSeries) -> dict[str, QSeries]:
    Tw = max(T, 4)
    E = {k: hermitian_eisenstein(field, k, Tw) for k in (8, 10, 12)}
    E4w, E6w = E4, E6
    out = {}
    X = siegel_generators(Tw)
    if field.tag is FieldTag.GAUSS:
        chi8, _ = solve_cusp_generator(field, 8, [E4w * E4w, E[8]],
                                       CuspConstraints(restrict_to=QSeries.zero(Kind.SIEGEL2, None, 8, Tw),
                                                       normalize=(H0_GAUSS, 1)), "CHI8")
        F10, _ = solve_cusp_generator(field, 10, [E4w * E6w, E[10]],
                                      CuspConstraints(restrict_to=linear_combination([6], [X.X10])), "F10")
        # E4*chi8 restricts to 0, so F12 is only fixed up to that monomial.
        # Setting its E4*chi8 coefficient to 0 leaves 5 and 73 in a
        # denominator; a(H0) = 0 instead lands on an integral member.
        F12, _ = solve_cusp_generator(field, 12, [E4w ** 3, E6w * E6w, E4w * chi8, E[12]],
                                      CuspConstraints(restrict_to=X.X12, pin_coeffs=((H0_GAUSS, 0),)), "F12")
        out = {"CHI8": chi8, "F10": F10, "F12": F12}
    else:
        F10, _ = solve_cusp_generator(field, 10, [E4w * E6w, E[10]],
                                      CuspConstraints(restrict_to=linear_combination([2], [X.X10])), "F10")
        F12, _ = solve_cusp_generator(field, 12, [E4w ** 3, E6w * E6w, E[12]],
                                      CuspConstraints(restrict_to=linear_combination([2], [X.X12])), "F12")
        E18 = hermitian_eisenstein(field, 18, Tw)
        chi18, _ = solve_cusp_generator(
            field, 18, [E4w ** 3 * E6w, E6w ** 3, E4w * E4w * F10, E6w * F12, E18],
            CuspConstraints(restrict_to=QSeries.zero(Kind.SIEGEL2, None, 18, Tw), normalize=(H_CHI18, 1)),
            "CHI18")
        out = {"F10": F10, "F12": F12, "CHI18": chi18}
    return {k: v.truncate(T) for k, v in out.items()}


def default_fixture_dir() -> Path | None:
    v = os.environ.get(FIXTURE_ENV)
    return Path(v) if v else None


def table_path(directory: Path, field: FieldData, name: str) -> Path:
    return Path(directory) / f"{_field_slug(field)}_{name}.jsonl"


@lru_cache(maxsize=None)
def _generator_set_cached(field: FieldData, T: int, source: str) -> GeneratorSet:
    Tw = max(T, 4)
    E4 = hermitian_eisenstein_bootstrap(field, 4, Tw)
    E6 = hermitian_eisenstein_bootstrap(field, 6, Tw)
    names = GENERATOR_NAMES[field.tag]
    if source == "compute":
        cusp = _compute_cusp_generators(field, Tw, E4, E6)
    else:
        cusp = {}
        for name in names:
            if name in ("E4", "E6"):
                continue
            path = table_path(Path(source), field, name)
            if not path.exists():
                raise GeneratorError(f"missing fixture for {name} over {field.name}: {path}")
            cusp[name] = load_generator_table(path, field=field, name=name, min_trace=T)
    series = {"E4": E4, "E6": E6, **cusp}
    gens = GeneratorSet(field, names, tuple(series[n].truncate(T) for n in names))
    validate_generator_set(gens)
    return gens


def generator_set(field: FieldData, T: int, source: str | os.PathLike | None = "compute") -> GeneratorSet:
    """Validated generators to trace T.

    ``source`` is "compute" (exact linear solves), or a fixture directory
    holding ``<gauss|eisenstein>_<NAME>.jsonl`` tables for the cusp
    generators; E4 and E6 always come from the bootstrap.
    """
    if T < 0:
        raise ValueError("trace bound must be >= 0")
    src = "compute" if source in (None, "compute") else str(Path(source).resolve())
    return _generator_set_cached(field, T, src)


# --- tables -----------------------------------------------------------------------

def _fmt(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def dumps_table(f: QSeries, name: str) -> str:
    if f.kind is Kind.HERMITIAN:
        header = {"schema": TABLE_SCHEMA, "field": f.field.name, "name": name, "weight": f.weight,
                  "character": "nu_k", "trace_bound": f.trunc}
    elif f.kind is Kind.SIEGEL2:
        header = {"schema": TABLE_SCHEMA, "field": "siegel", "name": name, "weight": f.weight,
                  "character": "trivial", "trace_bound": f.trunc}
    else:
        raise TableError("only degree-2 series have a table format")
    lines = [json.dumps(header, separators=(",", ":"))]
    for H, c in f.items():
        if f.kind is Kind.HERMITIAN:
            rec = {"m": H.m, "n": H.n, "x": H.x, "y": H.y, "c": _fmt(c)}
        else:
            rec = {"m": H.m, "n": H.n, "r": H.r, "c": _fmt(c)}
        lines.append(json.dumps(rec, separators=(",", ":")))
    return "\n".join(lines) + "\n"


def write_table(path: str | os.PathLike, f: QSeries, name: str) -> None:
    Path(path).write_text(dumps_table(f, name), encoding="utf-8", newline="\n")


def _parse_rational(s) -> Fraction:
    if not isinstance(s, str):
        raise TableError(f"coefficient must be a string 'num/den', got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise TableError(f"bad rational {s!r}") from None


def loads_table(text: str) -> tuple[dict, QSeries]:
    lines = [ln for ln in text.split("\n") if ln.strip()]
    if not lines:
        raise TableError("empty table")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as e:
        raise TableError(f"header is not JSON: {e}") from None
    if not isinstance(header, dict) or header.get("schema") != TABLE_SCHEMA:
        raise TableError(f"header schema must be {TABLE_SCHEMA!r}")
    for key, typ in (("field", str), ("name", str), ("weight", int), ("trace_bound", int), ("character", str)):
        if not isinstance(header.get(key), typ):
            raise TableError(f"header field {key!r} missing or of wrong type")
    T = header["trace_bound"]
    if T < 0:
        raise TableError("trace_bound must be >= 0")
    siegel = header["field"] == "siegel"
    if siegel:
        kind, field = Kind.SIEGEL2, None
        keys = ("m", "n", "r", "c")
    else:
        try:
            field = field_from_name(header["field"])
        except (KeyError, ValueError):
            raise TableError(f"unknown field {header['field']!r}") from None
        kind = Kind.HERMITIAN
        keys = ("m", "n", "x", "y", "c")
        if header["character"] != "nu_k":
            raise TableError("Hermitian tables carry character 'nu_k'")
    space = index_space(kind, field, T)
    coeffs = {}
    last = -1
    for lineno, ln in enumerate(lines[1:], start=2):
        try:
            rec = json.loads(ln)
        except json.JSONDecodeError as e:
            raise TableError(f"line {lineno}: not JSON ({e})") from None
        if not isinstance(rec, dict) or set(rec) != set(keys):
            raise TableError(f"line {lineno}: record keys must be {keys}")
        if not all(isinstance(rec[k], int) and not isinstance(rec[k], bool) for k in keys[:-1]):
            raise TableError(f"line {lineno}: index entries must be integers")
        H = SiegIndex(rec["m"], rec["n"], rec["r"]) if siegel else HermIndex(rec["m"], rec["n"], rec["x"], rec["y"])
        if H not in space.pos:
            raise TableError(f"line {lineno}: index {tuple(H)} is not semi-positive with trace <= {T}")
        i = space.pos[H]
        if i <= last:
            raise TableError(f"line {lineno}: records out of canonical order")
        last = i
        c = _parse_rational(rec["c"])
        if c == 0:
            raise TableError(f"line {lineno}: zero coefficients must be omitted")
        coeffs[H] = c
    char = Character.TRIVIAL if siegel else Character.NU_K
    return header, QSeries.from_dict(kind, field, header["weight"], T, coeffs, char)


def read_table(path: str | os.PathLike) -> tuple[dict, QSeries]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise TableError(f"cannot read {path}: {e}") from None
    return loads_table(text)


def load_generator_table(path, field: FieldData | None = None, name: str | None = None,
                         weight: int | None = None, min_trace: int | None = None) -> QSeries:
    """Read a generator table, check its metadata and run the validation contract."""
    header, f = read_table(path)
    if f.kind is not Kind.HERMITIAN:
        raise TableError("generator tables must be Hermitian")
    if field is not None and f.field != field:
        raise TableError(f"table is over {f.field.name}, expected {field.name}")
    if name is not None and header["name"] != name:
        raise TableError(f"table holds {header['name']!r}, expected {name!r}")
    if weight is not None and f.weight != weight:
        raise TableError(f"table has weight {f.weight}, expected {weight}")
    if min_trace is not None and f.trunc < min_trace:
        raise TableError(f"table trace bound {f.trunc} < required {min_trace}")
    validate_generator(f.field, header["name"], f)
    return f


# --- F_{p-1} ------------------------------------------------------------------------

def construct_one_form(field: FieldData, p: int, T: int, gens: GeneratorSet | None = None) -> QSeries:
    """A weight p-1 integral combination of generator monomials that is = 1 mod p to trace T."""
    if not is_prime(p) or p < 5:
        raise ValueError("p must be a prime >= 5")
    gens = generator_set(field, T) if gens is None else gens.truncate(T)
    k = p - 1
    basis = _exponent_vectors(tuple(gens.weights), k)
    if not basis:
        raise GeneratorError(f"no monomials of weight {k}")
    mons = [gens.monomial(e) for e in basis]
    red = np.stack([m.reduce_mod(p) for m in mons], axis=1)
    ech = EchelonModP(len(basis), p)
    try:
        for i in range(red.shape[0]):
            ech.add([int(v) for v in red[i]] + [1 if i == 0 else 0], tag=mons[0].space.indices[i])
    except Inconsistent as e:
        raise GeneratorError(f"no weight-{k} form = 1 mod {p} at trace {T} (row {e.row_tag})") from None
    lam = ech.solve()
    F = linear_combination(lam, mons).with_weight(k, Character.NU_K)
    one = QSeries.one(Kind.HERMITIAN, field, T)
    ok, w = congruent_mod(F, one, p, 1)
    if not ok:
        raise AssertionError(f"F_{k} is not = 1 mod {p} at {w}")
    return F
