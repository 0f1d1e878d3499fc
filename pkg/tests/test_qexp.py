import random
from fractions import Fraction

import numpy as np
import pytest

from hermq2 import kernels
from hermq2.hermitian import H0_GAUSS, hermitian_eisenstein
from hermq2.lattice import EISENSTEIN, GAUSS, HermIndex, SiegIndex, conj
from hermq2.qexp import (
    INFINITY,
    Character,
    Kind,
    NotPIntegral,
    QSeries,
    SeriesError,
    add_ord,
    brute_force_mul,
    congruent_mod,
    index_space,
    is_symmetric,
    linear_combination,
    ord_p,
    phi,
    restrict,
    series_add,
    series_scale,
)
from hermq2.siegel import elliptic_eisenstein, siegel_eisenstein
from helpers import random_series, series_with_ord


def test_add_scale_basics(field):
    E4 = hermitian_eisenstein(field, 4, 4)
    zero = QSeries.zero(Kind.HERMITIAN, field, 4, 4)
    assert series_add(E4, zero) == E4
    assert series_scale(1, E4) == E4
    assert series_add(E4, series_scale(-1, E4)).is_zero()


def test_add_mismatch_errors(field):
    E4, E6 = hermitian_eisenstein(field, 4, 4), hermitian_eisenstein(field, 6, 4)
    with pytest.raises(SeriesError):
        series_add(E4, E6)
    with pytest.raises(SeriesError):
        series_add(E4, siegel_eisenstein(4, 4))
    with pytest.raises(SeriesError):
        series_add(E4, E4.with_weight(4, Character.TRIVIAL))


def test_character_tags_identified(field):
    E4 = hermitian_eisenstein(field, 4, 3)
    other = E4.with_weight(4, Character.DET_NEG_HALFK)
    assert series_add(E4, other) == series_scale(2, E4)


def test_add_truncates_to_min(field):
    a = hermitian_eisenstein(field, 4, 5)
    b = hermitian_eisenstein(field, 4, 3)
    assert (a + b).trunc == 3


def test_monomial_product(field):
    H1, H2 = HermIndex(1, 0, 0, 0), HermIndex(1, 1, 0, 0)
    a = QSeries.monomial(Kind.HERMITIAN, field, H1, 4, 2)
    b = QSeries.monomial(Kind.HERMITIAN, field, H2, 4, 2)
    assert (a * b).coeffs == {H1 + H2: 1}
    assert (a * b).weight == 4
    one = QSeries.one(Kind.HERMITIAN, field, 4)
    E4 = hermitian_eisenstein(field, 4, 4)
    assert one * E4 == E4


@pytest.mark.parametrize("T", [0, 1, 2, 3])
def test_series_mul_brute_force(field, backend, T):
    rng = random.Random(T)
    for _ in range(5):
        f = random_series(rng, field, T, density=0.6)
        g = random_series(rng, field, T, density=0.6)
        assert (f * g).coeffs == brute_force_mul(f, g)


@pytest.mark.parametrize("T", [0, 2, 3])
def test_siegel_mul_brute_force(backend, T):
    rng = random.Random(10 + T)
    f = random_series(rng, None, T, density=0.7)
    g = random_series(rng, None, T, density=0.7)
    assert (f * g).coeffs == brute_force_mul(f, g)


def test_backends_agree(field):
    rng = random.Random(5)
    f = random_series(rng, field, 5, bound=10 ** 30)
    g = random_series(rng, field, 5)
    small = random_series(rng, field, 5)
    out = {}
    for be in ("python", "cython"):
        try:
            kernels.use_backend(be)
        except ImportError:
            pytest.skip("compiled kernels not built")
        out[be] = (f * g, small * g, restrict(f), (small * g).reduce_mod(7))
    kernels.use_backend("cython")
    a, b = out["python"], out["cython"]
    assert a[0] == b[0] and a[1] == b[1] and a[2] == b[2]
    assert np.array_equal(a[3], b[3])


def test_mul_mod_matches_exact(field):
    from hermq2.qexp import series_mul_mod

    rng = random.Random(3)
    f = random_series(rng, field, 4)
    g = random_series(rng, field, 4)
    r = series_mul_mod(f.reduce_mod(11), g.reduce_mod(11), f.space, 11)
    assert np.array_equal(r, (f * g).reduce_mod(11))


def test_phi():
    f = hermitian_eisenstein(GAUSS, 4, 5)
    assert phi(f) == elliptic_eisenstein(4, 5)
    assert phi(siegel_eisenstein(4, 5)) == elliptic_eisenstein(4, 5)
    one = QSeries.one(Kind.HERMITIAN, GAUSS, 3)
    assert phi(one).coeffs == {0: 1}
    with pytest.raises(SeriesError):
        phi(elliptic_eisenstein(4, 3))


def test_restrict_term_count():
    # Siegel (1, 1, r=1) collects beta = x + omega, x in {1, 2, 3}, over Q(i)
    sp = index_space(Kind.HERMITIAN, GAUSS, 2)
    tg = sp.restrict_targets()
    ssp = index_space(Kind.SIEGEL2, None, 2)
    hits = [sp.indices[i] for i in range(len(sp)) if tg[i] == ssp.pos[SiegIndex(1, 1, 1)]]
    assert sorted(H.x for H in hits) == [1, 2, 3]
    assert all(H.y == 1 for H in hits)


def test_restrict_properties(field):
    rng = random.Random(1)
    for _ in range(100):
        f = random_series(rng, field, 4, density=0.4)
        g = random_series(rng, field, 4, density=0.4)
        assert restrict(f * g) == restrict(f) * restrict(g)
        assert phi(restrict(f)) == phi(f)


def test_symmetry(field):
    rng = random.Random(2)
    E4 = hermitian_eisenstein(field, 4, 4)
    assert is_symmetric(E4)
    assert is_symmetric(QSeries.one(Kind.HERMITIAN, field, 4))
    H = HermIndex(1, 1, -1, -1)
    Ht = conj(field, H)
    assert H != Ht
    asym = QSeries.from_dict(Kind.HERMITIAN, field, 0, 3, {H: 1, Ht: -1})
    assert not is_symmetric(asym)
    for _ in range(30):
        f = random_series(rng, field, 4, symmetric=True)
        g = random_series(rng, field, 4, symmetric=True)
        assert is_symmetric(f * g)
        R = restrict(f)
        for t, v in R.items():
            assert R[SiegIndex(t.m, t.n, -t.r)] == v


def test_ord_p_examples():
    from hermq2.hermitian import generator_set

    chi8 = generator_set(GAUSS, 6)["CHI8"]
    for p in (5, 7, 11, 13):
        assert ord_p(chi8, p) == H0_GAUSS
    assert ord_p(chi8 * chi8, 5) == HermIndex(2, 2, -2, -2)
    assert ord_p(series_scale(5, chi8), 5) is INFINITY


def test_ord_p_rejects_nonintegral(field):
    f = QSeries.from_dict(Kind.HERMITIAN, field, 0, 2, {HermIndex(1, 0, 0, 0): Fraction(1, 5)})
    with pytest.raises(NotPIntegral):
        ord_p(f, 5)


@pytest.mark.parametrize("p", [5, 7])
def test_ord_p_additivity(field, p):
    rng = random.Random(p)
    T = 6
    space = index_space(Kind.HERMITIAN, field, T)
    half = int(space.starts[4])  # leading index of trace <= 3
    for _ in range(100):
        f = series_with_ord(rng, field, T, rng.randrange(half), p)
        g = series_with_ord(rng, field, T, rng.randrange(half), p)
        assert ord_p(f * g, p) == add_ord(ord_p(f, p), ord_p(g, p))


def test_congruent_mod(field):
    E4 = hermitian_eisenstein(field, 4, 4)
    H = HermIndex(1, 1, 0, 0)
    for p, l in ((5, 1), (7, 2)):
        assert congruent_mod(E4, E4, p, l) == (True, None)
        bump = QSeries.monomial(Kind.HERMITIAN, field, H, 4, 4, p ** l)
        assert congruent_mod(E4, E4 + bump, p, l)[0]
        small = QSeries.monomial(Kind.HERMITIAN, field, H, 4, 4, p ** (l - 1))
        assert congruent_mod(E4, E4 + small, p, l) == (False, H)
    bad = QSeries.monomial(Kind.HERMITIAN, field, H, 4, 4, Fraction(1, 5))
    with pytest.raises(NotPIntegral):
        congruent_mod(E4, E4 + bad, 5, 1)


def test_linear_combination_and_pow(field):
    E4 = hermitian_eisenstein(field, 4, 4)
    assert linear_combination([2, -1], [E4, E4]) == E4
    assert E4 ** 3 == E4 * E4 * E4
    assert (E4 ** 0).coeffs == {HermIndex(0, 0, 0, 0): 1}
