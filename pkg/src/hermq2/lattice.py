"""Fourier index sets for degree-2 Hermitian and Siegel forms.

A Hermitian index ``H = [[m, alpha], [conj(alpha), n]]`` in Lambda_2(K) is
stored integrally as ``(m, n, x, y)`` with ``beta = sqrt(d_K) * alpha =
x + y*omega`` in O_K, ``omega = (d_K + sqrt(d_K)) / 2``.  A Siegel index
``[[m, r/2], [r/2, n]]`` is stored as ``(m, n, r)``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt
from typing import NamedTuple


class FieldTag(enum.Enum):
    GAUSS = "Q(i)"
    EISENSTEIN = "Q(sqrt-3)"


@dataclass(frozen=True)
class FieldData:
    tag: FieldTag
    d_K: int
    omega_trace: int
    omega_norm: int
    unit_count: int

    @property
    def abs_disc(self) -> int:
        return -self.d_K

    @property
    def name(self) -> str:
        return self.tag.value

    def norm(self, x: int, y: int) -> int:
        return x * x + self.omega_trace * x * y + self.omega_norm * y * y

    def conj(self, x: int, y: int) -> tuple[int, int]:
        return x + self.omega_trace * y, -y

    def order_coords(self, x: int, y: int) -> tuple[int, int]:
        """(a, b) with a = Tr(alpha); b the scaled imaginary part of alpha."""
        if self.tag is FieldTag.GAUSS:
            return y, 2 * y - x
        return y, 3 * y - 2 * x

    def __repr__(self) -> str:
        return f"FieldData({self.tag.value})"


def _make_field(tag: FieldTag, d: int, units: int) -> FieldData:
    # omega = (d + sqrt(d)) / 2: trace d, norm (d^2 - d) / 4
    return FieldData(tag, d, d, (d * d - d) // 4, units)


GAUSS = _make_field(FieldTag.GAUSS, -4, 4)
EISENSTEIN = _make_field(FieldTag.EISENSTEIN, -3, 6)

_FIELD_NAMES = {
    "gauss": GAUSS, "Q(i)": GAUSS, "Q(sqrt-1)": GAUSS,
    "eisenstein": EISENSTEIN, "Q(sqrt-3)": EISENSTEIN,
}


def field_from_name(name: str) -> FieldData:
    try:
        return _FIELD_NAMES[name]
    except KeyError:
        raise ValueError(f"unknown field {name!r}") from None


class IntElem(NamedTuple):
    """x + y*omega in O_K."""

    x: int
    y: int


class HermIndex(NamedTuple):
    m: int
    n: int
    x: int
    y: int

    @property
    def beta(self) -> IntElem:
        return IntElem(self.x, self.y)

    @property
    def trace(self) -> int:
        return self.m + self.n

    def __add__(self, other):  # type: ignore[override]
        return HermIndex(self.m + other.m, self.n + other.n, self.x + other.x, self.y + other.y)

    def scale(self, k: int) -> "HermIndex":
        return HermIndex(k * self.m, k * self.n, k * self.x, k * self.y)

    def is_zero(self) -> bool:
        return not (self.m or self.n or self.x or self.y)


class SiegIndex(NamedTuple):
    m: int
    n: int
    r: int

    @property
    def trace(self) -> int:
        return self.m + self.n

    def __add__(self, other):  # type: ignore[override]
        return SiegIndex(self.m + other.m, self.n + other.n, self.r + other.r)

    def scale(self, k: int) -> "SiegIndex":
        return SiegIndex(k * self.m, k * self.n, k * self.r)

    def is_zero(self) -> bool:
        return not (self.m or self.n or self.r)


def conj(field: FieldData, H: HermIndex) -> HermIndex:
    """The index (m, n, conj(beta)) used to test symmetry."""
    cx, cy = field.conj(H.x, H.y)
    return HermIndex(H.m, H.n, cx, cy)


def delta(field: FieldData, H: HermIndex) -> int:
    """|d_K| det H = |d_K| m n - N(beta)."""
    d = field.abs_disc * H.m * H.n - field.norm(H.x, H.y)
    if d < 0 or H.m < 0 or H.n < 0:
        raise ValueError(f"{H} is not semi-positive over {field.name}")
    return d


def is_semipositive(field: FieldData, H: HermIndex) -> bool:
    return H.m >= 0 and H.n >= 0 and field.abs_disc * H.m * H.n >= field.norm(H.x, H.y)


def content(H) -> int:
    """Largest l with H / l still in the index lattice (Hermitian or Siegel)."""
    if H.is_zero():
        raise ValueError("content of the zero index is undefined")
    g = 0
    for v in H:
        g = gcd(g, v)
    return g


def rank(field: FieldData | None, H) -> int:
    if H.is_zero():
        return 0
    if isinstance(H, SiegIndex):
        return 2 if 4 * H.m * H.n - H.r * H.r > 0 else 1
    return 2 if delta(field, H) > 0 else 1


def lex_key(field: FieldData, H: HermIndex) -> tuple[int, int, int, int]:
    a, b = field.order_coords(H.x, H.y)
    return (H.m + H.n, H.m, a, b)


def siegel_key(T: SiegIndex) -> tuple[int, int, int]:
    return (T.m + T.n, T.m, T.r)


def cmp_lex(field: FieldData, H: HermIndex, H2: HermIndex, field2: FieldData | None = None) -> int:
    """-1, 0, 1 as H <, =, > H2 in the (trace, m, a, b) order."""
    if field2 is not None and field2 != field:
        raise ValueError("cannot compare indices over different fields")
    k1, k2 = lex_key(field, H), lex_key(field, H2)
    return (k1 > k2) - (k1 < k2)


@lru_cache(maxsize=None)
def _psd_cached(field: FieldData, T: int) -> tuple[HermIndex, ...]:
    out = []
    D = field.abs_disc
    for m in range(T + 1):
        for n in range(T - m + 1):
            bound = D * m * n
            # N(x + y w) = (x + y d/2)^2 + y^2 |d| / 4, so y^2 <= 4 m n
            ymax = isqrt(4 * m * n)
            for y in range(-ymax, ymax + 1):
                # (2x + y d)^2 <= 4 bound - |d| y^2
                rad = 4 * bound - D * y * y
                if rad < 0:
                    continue
                s = isqrt(rad)
                lo = (-s - y * field.d_K) // 2 - 1
                hi = (s - y * field.d_K) // 2 + 1
                for x in range(lo, hi + 1):
                    if field.norm(x, y) <= bound:
                        out.append(HermIndex(m, n, x, y))
    out.sort(key=lambda H: lex_key(field, H))
    return tuple(out)


def enumerate_psd(field: FieldData, T: int) -> list[HermIndex]:
    """All semi-positive H in Lambda_2(K) with trace <= T, ascending in cmp_lex."""
    if T < 0:
        raise ValueError("trace bound must be >= 0")
    return list(_psd_cached(field, T))


@lru_cache(maxsize=None)
def _siegel_cached(T: int) -> tuple[SiegIndex, ...]:
    out = []
    for m in range(T + 1):
        for n in range(T - m + 1):
            rmax = isqrt(4 * m * n)
            out.extend(SiegIndex(m, n, r) for r in range(-rmax, rmax + 1))
    out.sort(key=siegel_key)
    return tuple(out)


def enumerate_siegel(T: int) -> list[SiegIndex]:
    """All semi-positive half-integral T' with trace <= T, sorted by (tr, m, r)."""
    if T < 0:
        raise ValueError("trace bound must be >= 0")
    return list(_siegel_cached(T))
