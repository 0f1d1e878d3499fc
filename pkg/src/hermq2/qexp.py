"""Trace-truncated Fourier expansions with exact rational coefficients.

A :class:`QSeries` materializes every index of trace ``<= trunc``.  Indices
are enumerated once per ``(kind, field, trunc)`` in the canonical order
(trace first), so a smaller truncation is always a prefix of a larger one.
Coefficients are kept as integer numerators over one common denominator;
products go through a precomputed plan of index pairs (see ``kernels``).
"""
from __future__ import annotations

import enum
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Iterator, Mapping

import numpy as np

from . import kernels
from .arith import is_prime
from .lattice import (
    FieldData,
    HermIndex,
    SiegIndex,
    conj,
    enumerate_psd,
    enumerate_siegel,
    lex_key,
    siegel_key,
)


class Kind(enum.Enum):
    HERMITIAN = "hermitian"
    SIEGEL2 = "siegel"
    ELLIPTIC = "elliptic"


class Character(enum.Enum):
    NU_K = "nu_k"
    TRIVIAL = "trivial"
    DET_NEG_HALFK = "det^-k/2"


# For even k, det^{-k/2} and nu_k coincide on U_2(O_K) for both fields
# (det M is a unit square), so the two tags label the same character.
_CHAR_CLASS = {
    Character.NU_K: Character.NU_K,
    Character.DET_NEG_HALFK: Character.NU_K,
    Character.TRIVIAL: Character.TRIVIAL,
}


class SeriesError(ValueError):
    pass


class NotPIntegral(SeriesError):
    def __init__(self, index, value, p):
        super().__init__(f"coefficient {value} at {index} is not {p}-integral")
        self.index = index
        self.value = value
        self.p = p


class _Infinity:
    """ord_p of a series that vanishes mod p on its truncation."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


class IndexSpace:
    """All semi-positive indices of one kind with trace <= trunc."""

    def __init__(self, kind: Kind, field: FieldData | None, trunc: int):
        self.kind = kind
        self.field = field
        self.trunc = trunc
        if kind is Kind.HERMITIAN:
            idx: tuple = tuple(enumerate_psd(field, trunc))
            traces = [H.m + H.n for H in idx]
        elif kind is Kind.SIEGEL2:
            idx = tuple(enumerate_siegel(trunc))
            traces = [T.m + T.n for T in idx]
        else:
            idx = tuple(range(trunc + 1))
            traces = list(idx)
        self.indices = idx
        self.pos = {H: i for i, H in enumerate(idx)}
        self.traces = np.asarray(traces, dtype=np.int64)
        # starts[t] = first position of trace t; starts[trunc + 1] = len
        self.starts = np.searchsorted(self.traces, np.arange(trunc + 2), side="left")
        self._plan = None

    def __len__(self) -> int:
        return len(self.indices)

    def __repr__(self) -> str:
        fld = f", {self.field.name}" if self.field else ""
        return f"IndexSpace({self.kind.value}{fld}, trunc={self.trunc})"

    def key(self, H):
        if self.kind is Kind.HERMITIAN:
            return lex_key(self.field, H)
        if self.kind is Kind.SIEGEL2:
            return siegel_key(H)
        return (H,)

    def _coords(self) -> np.ndarray:
        if self.kind is Kind.ELLIPTIC:
            return np.asarray(self.indices, dtype=np.int64).reshape(-1, 1)
        return np.asarray(self.indices, dtype=np.int64).reshape(len(self), -1)

    def mul_plan(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Arrays (I, J, K): indices[I] + indices[J] == indices[K], all pairs."""
        if self._plan is None:
            self._plan = self._build_plan()
        return self._plan

    def _build_plan(self):
        C = self._coords()
        lo = C.min(axis=0)
        width = C.max(axis=0) - lo + 1
        # sums of two materialized indices inside the truncation are
        # themselves materialized, so twice the width is a safe radix
        radix = 2 * width + 1

        def encode(X):
            k = np.zeros(X.shape[0], dtype=np.int64)
            for c in range(X.shape[1]):
                k = k * radix[c] + (X[:, c] - 2 * lo[c])
            return k

        own = encode(C)
        order = np.argsort(own, kind="stable")
        sorted_keys = own[order]
        Is, Js, Ks = [], [], []
        T = self.trunc
        for t1 in range(T + 1):
            a0, a1 = self.starts[t1], self.starts[t1 + 1]
            b1 = self.starts[T - t1 + 1]
            if a1 == a0 or b1 == 0:
                continue
            ii = np.repeat(np.arange(a0, a1, dtype=np.int64), b1)
            jj = np.tile(np.arange(0, b1, dtype=np.int64), a1 - a0)
            keys = encode(C[ii] + C[jj])
            loc = np.searchsorted(sorted_keys, keys)
            if np.any(loc >= len(sorted_keys)) or np.any(sorted_keys[np.minimum(loc, len(sorted_keys) - 1)] != keys):
                raise AssertionError("index sum escaped the enumeration")
            Is.append(ii)
            Js.append(jj)
            Ks.append(order[loc])
        I = np.concatenate(Is)
        J = np.concatenate(Js)
        K = np.concatenate(Ks)
        return I, J, K

    @property
    def conj_perm(self) -> np.ndarray:
        if self.kind is not Kind.HERMITIAN:
            raise SeriesError("conjugation is defined on Hermitian indices only")
        if not hasattr(self, "_conj"):
            self._conj = np.fromiter((self.pos[conj(self.field, H)] for H in self.indices), dtype=np.int64, count=len(self))
        return self._conj

    def restrict_targets(self) -> np.ndarray:
        if not hasattr(self, "_restr"):
            sp = index_space(Kind.SIEGEL2, None, self.trunc)
            self._restr = np.fromiter((sp.pos[SiegIndex(H.m, H.n, H.y)] for H in self.indices), dtype=np.int64, count=len(self))
        return self._restr

    def phi_positions(self) -> np.ndarray:
        if self.kind is Kind.HERMITIAN:
            diag = [HermIndex(t, 0, 0, 0) for t in range(self.trunc + 1)]
        elif self.kind is Kind.SIEGEL2:
            diag = [SiegIndex(t, 0, 0) for t in range(self.trunc + 1)]
        else:
            raise SeriesError("phi is not defined on elliptic series")
        return np.asarray([self.pos[H] for H in diag], dtype=np.int64)


@lru_cache(maxsize=None)
def index_space(kind: Kind, field: FieldData | None, trunc: int) -> IndexSpace:
    if trunc < 0:
        raise SeriesError("truncation must be >= 0")
    if kind is not Kind.HERMITIAN:
        field = None
    elif field is None:
        raise SeriesError("Hermitian series need a field")
    return IndexSpace(kind, field, trunc)


def _obj(values) -> np.ndarray:
    arr = np.empty(len(values), dtype=object)
    arr[:] = list(values)
    return arr


class QSeries:
    """Exact truncated expansion ``sum a(H) q^H`` of one kind, weight and character."""

    __slots__ = ("space", "weight", "character", "_num", "_den")

    def __init__(self, space: IndexSpace, weight: int, character: Character, num, den: int = 1):
        if len(num) != len(space):
            raise SeriesError("numerator vector does not match the index space")
        if den <= 0:
            raise SeriesError("denominator must be positive")
        num = num if isinstance(num, np.ndarray) and num.dtype == object else _obj([int(v) for v in num])
        g = gcd(den, *num) if len(num) else den
        if g > 1:
            num = _obj([v // g for v in num])
            den //= g
        self.space = space
        self.weight = weight
        self.character = character
        self._num = num
        self._den = den

    # --- construction -------------------------------------------------
    @classmethod
    def from_dict(cls, kind: Kind, field, weight: int, trunc: int, coeffs: Mapping,
                  character: Character | None = None) -> "QSeries":
        space = index_space(kind, field, trunc)
        character = character or _default_char(kind)
        fr = {}
        for H, c in coeffs.items():
            if H not in space.pos:
                raise SeriesError(f"index {H} is not semi-positive with trace <= {trunc}")
            c = Fraction(c)
            if c:
                fr[space.pos[H]] = c
        den = 1
        for c in fr.values():
            den = den * c.denominator // gcd(den, c.denominator)
        num = [0] * len(space)
        for i, c in fr.items():
            num[i] = c.numerator * (den // c.denominator)
        return cls(space, weight, character, _obj(num), den)

    @classmethod
    def zero(cls, kind: Kind, field, weight: int, trunc: int, character: Character | None = None) -> "QSeries":
        space = index_space(kind, field, trunc)
        return cls(space, weight, character or _default_char(kind), _obj([0] * len(space)), 1)

    @classmethod
    def one(cls, kind: Kind, field, trunc: int) -> "QSeries":
        space = index_space(kind, field, trunc)
        num = [0] * len(space)
        num[0] = 1
        return cls(space, 0, _default_char(kind), _obj(num), 1)

    @classmethod
    def monomial(cls, kind: Kind, field, H, trunc: int, weight: int = 0, coeff=1) -> "QSeries":
        return cls.from_dict(kind, field, weight, trunc, {H: coeff})

    # --- accessors ----------------------------------------------------
    @property
    def kind(self) -> Kind:
        return self.space.kind

    @property
    def field(self) -> FieldData | None:
        return self.space.field

    @property
    def trunc(self) -> int:
        return self.space.trunc

    @property
    def numerators(self) -> np.ndarray:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def __getitem__(self, H) -> Fraction:
        try:
            i = self.space.pos[H]
        except KeyError:
            raise KeyError(f"{H} is not materialized at trunc {self.trunc}") from None
        return Fraction(self._num[i], self._den)

    def get(self, H, default=Fraction(0)) -> Fraction:
        i = self.space.pos.get(H)
        return default if i is None else Fraction(self._num[i], self._den)

    def items(self) -> Iterator[tuple[object, Fraction]]:
        """Nonzero coefficients in canonical order."""
        d = self._den
        for H, v in zip(self.space.indices, self._num):
            if v:
                yield H, Fraction(v, d)

    @property
    def coeffs(self) -> dict:
        return dict(self.items())

    def is_zero(self) -> bool:
        return not any(self._num)

    def __repr__(self) -> str:
        nz = sum(1 for v in self._num if v)
        fld = f" over {self.field.name}" if self.field else ""
        return f"<QSeries {self.kind.value}{fld} weight={self.weight} trunc={self.trunc} nonzero={nz}>"

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.space is other.space and self._den == other._den
                and all(a == b for a, b in zip(self._num, other._num)))

    __hash__ = None  # type: ignore[assignment]

    # --- structure ----------------------------------------------------
    def truncate(self, T: int) -> "QSeries":
        if T == self.trunc:
            return self
        if T > self.trunc:
            raise SeriesError(f"cannot extend truncation {self.trunc} to {T}")
        space = index_space(self.kind, self.field, T)
        return QSeries(space, self.weight, self.character, self._num[: len(space)], self._den)

    def with_weight(self, weight: int, character: Character | None = None) -> "QSeries":
        return QSeries(self.space, weight, character or self.character, self._num, self._den)

    def _align(self, other: "QSeries") -> tuple["QSeries", "QSeries"]:
        if self.kind is not other.kind or self.field != other.field:
            raise SeriesError(f"kind mismatch: {self.kind.value}/{other.kind.value}")
        T = min(self.trunc, other.trunc)
        return self.truncate(T), other.truncate(T)

    def __add__(self, other: "QSeries") -> "QSeries":
        return series_add(self, other)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return series_add(self, series_scale(-1, other))

    def __neg__(self) -> "QSeries":
        return series_scale(-1, self)

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return series_mul(self, other)
        return series_scale(other, self)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "QSeries":
        if e < 0:
            raise SeriesError("negative powers are not supported")
        result = QSeries.one(self.kind, self.field, self.trunc).with_weight(0, self.character if e else _default_char(self.kind))
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # --- modular reduction --------------------------------------------
    def reduce_mod(self, p: int, l: int = 1) -> np.ndarray:
        """Residues mod p^l as int64; raises :class:`NotPIntegral`."""
        M = p**l
        if M >= 2**31:
            raise SeriesError("modulus too large for the int64 kernels")
        den = self._den
        if den % p:
            inv = pow(den, -1, M)
            return np.fromiter(((v % M) * inv % M for v in self._num), dtype=np.int64, count=len(self._num))
        out = np.zeros(len(self._num), dtype=np.int64)
        for i, v in enumerate(self._num):
            if v:
                c = Fraction(v, den)
                if c.denominator % p == 0:
                    raise NotPIntegral(self.space.indices[i], c, p)
                out[i] = (c.numerator % M) * pow(c.denominator, -1, M) % M
        return out

    def p_integral_violation(self, p: int):
        """The least index whose coefficient is not p-integral, or None."""
        if self._den % p:
            return None
        for i, v in enumerate(self._num):
            if v and Fraction(v, self._den).denominator % p == 0:
                return self.space.indices[i]
        return None


def _default_char(kind: Kind) -> Character:
    return Character.NU_K if kind is Kind.HERMITIAN else Character.TRIVIAL


def _chars_compatible(a: Character, b: Character) -> bool:
    return _CHAR_CLASS[a] is _CHAR_CLASS[b]


def series_add(f: QSeries, g: QSeries) -> QSeries:
    f, g = f._align(g)
    if f.weight != g.weight:
        raise SeriesError(f"weight mismatch: {f.weight} vs {g.weight}")
    if not _chars_compatible(f.character, g.character):
        raise SeriesError(f"character mismatch: {f.character.value} vs {g.character.value}")
    d1, d2 = f._den, g._den
    L = d1 * d2 // gcd(d1, d2)
    num = f._num * (L // d1) + g._num * (L // d2)
    return QSeries(f.space, f.weight, f.character, num, L)


def series_scale(c, f: QSeries) -> QSeries:
    c = Fraction(c)
    return QSeries(f.space, f.weight, f.character, f._num * c.numerator, f._den * c.denominator)


def linear_combination(coeffs: Iterable, series: list[QSeries]) -> QSeries:
    """Exact sum c_i f_i of series of a common weight."""
    coeffs = [Fraction(c) for c in coeffs]
    if len(coeffs) != len(series) or not series:
        raise SeriesError("need one coefficient per series")
    T = min(s.trunc for s in series)
    series = [s.truncate(T) for s in series]
    for s in series[1:]:
        series[0]._align(s)
    den = 1
    for c, s in zip(coeffs, series):
        if c:
            dd = c.denominator * s._den
            den = den * dd // gcd(den, dd)
    num = np.zeros(len(series[0].space), dtype=object)
    num[:] = 0
    for c, s in zip(coeffs, series):
        if c:
            num = num + s._num * (c.numerator * (den // (c.denominator * s._den)))
    return QSeries(series[0].space, series[0].weight, series[0].character, num, den)


def series_mul(f: QSeries, g: QSeries) -> QSeries:
    f, g = f._align(g)
    I, J, K = f.space.mul_plan()
    num = kernels.conv_exact(f._num, g._num, I, J, K, len(f.space))
    char = _default_char(f.kind)
    return QSeries(f.space, f.weight + g.weight, char, num, f._den * g._den)


def series_mul_mod(a: np.ndarray, b: np.ndarray, space: IndexSpace, modulus: int) -> np.ndarray:
    """Product of two residue vectors on ``space`` modulo ``modulus``."""
    I, J, K = space.mul_plan()
    return kernels.conv_mod(np.ascontiguousarray(a, dtype=np.int64), np.ascontiguousarray(b, dtype=np.int64),
                            I, J, K, len(space), modulus)


def brute_force_mul(f: QSeries, g: QSeries) -> dict:
    """Reference convolution by a double loop over nonzero terms (test oracle)."""
    f, g = f._align(g)
    T = f.trunc
    tr = (lambda H: H) if f.kind is Kind.ELLIPTIC else (lambda H: H.m + H.n)
    out: dict = {}
    for H1, a in f.items():
        for H2, b in g.items():
            if tr(H1) + tr(H2) <= T:
                H = H1 + H2
                out[H] = out.get(H, 0) + a * b
    return {H: v for H, v in out.items() if v}


def phi(f: QSeries) -> QSeries:
    """Siegel Phi-operator on coefficients: t -> a(diag(t, 0))."""
    if f.kind is Kind.ELLIPTIC:
        raise SeriesError("phi needs a degree-2 series")
    P = f.space.phi_positions()
    space = index_space(Kind.ELLIPTIC, None, f.trunc)
    return QSeries(space, f.weight, Character.TRIVIAL, f._num[P], f._den)


def restrict(f: QSeries) -> QSeries:
    """Restriction of a Hermitian series to the Siegel half-space.

    a(m, n, r) = sum of a(m, n, beta) over beta = x + r*omega with
    N(beta) <= |d_K| m n.
    """
    if f.kind is not Kind.HERMITIAN:
        raise SeriesError("restrict needs a Hermitian series")
    tg = f.space.restrict_targets()
    space = index_space(Kind.SIEGEL2, None, f.trunc)
    num = kernels.scatter_exact(f._num, tg, len(space))
    return QSeries(space, f.weight, Character.TRIVIAL, num, f._den)


def is_symmetric(f: QSeries) -> bool:
    """a(m, n, beta) == a(m, n, conj(beta)) for every materialized index."""
    P = f.space.conj_perm
    return all(a == b for a, b in zip(f._num, f._num[P]))


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise SeriesError(f"{p} is not prime")


def ord_p(f: QSeries, p: int):
    """Least index (canonical order) whose coefficient is a p-adic unit."""
    _check_prime(p)
    r = f.reduce_mod(p)
    nz = np.flatnonzero(r)
    if len(nz) == 0:
        return INFINITY
    return f.space.indices[nz[0]]


def add_ord(a, b):
    """Index sum of two ord_p results (INFINITY absorbs)."""
    if a is INFINITY or b is INFINITY:
        return INFINITY
    return a + b


def congruent_mod(f: QSeries, g: QSeries, p: int, l: int = 1):
    """(True, None) if v_p(a_f - a_g) >= l everywhere, else (False, least witness)."""
    _check_prime(p)
    if l < 1:
        raise SeriesError("congruence depth must be >= 1")
    f, g = f._align(g)
    d1, d2 = f._den, g._den
    L = d1 * d2 // gcd(d1, d2)
    diff = QSeries(f.space, f.weight, f.character, f._num * (L // d1) - g._num * (L // d2), L)
    # integrality of each side is part of the contract
    for s in (f, g):
        bad = s.p_integral_violation(p)
        if bad is not None:
            raise NotPIntegral(bad, s[bad], p)
    r = diff.reduce_mod(p, l)
    nz = np.flatnonzero(r)
    if len(nz) == 0:
        return True, None
    return False, f.space.indices[nz[0]]
