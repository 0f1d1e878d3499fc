import random
from fractions import Fraction

import pytest

from hermq2.criteria import (
    WeightClass,
    check_integrality,
    check_sturm_zero,
    padic_weight_check,
    siegel_box_dominated,
    sturm_box,
    weight_class,
)
from hermq2.hermitian import H0_GAUSS, construct_one_form, generator_set
from hermq2.lattice import EISENSTEIN, GAUSS, HermIndex, conj
from hermq2.qexp import Kind, QSeries, SeriesError, restrict, series_scale
from hermq2.reports import Verdict
from hermq2.siegel import siegel_sturm_check


@pytest.mark.parametrize("fld, k, box", [(GAUSS, 12, (1, 1)), (GAUSS, 8, (1, 1)), (EISENSTEIN, 12, (1, 1)),
                                         (GAUSS, 16, (2, 2)), (EISENSTEIN, 16, (1, 1)), (GAUSS, 0, (0, 0))])
def test_sturm_box_values(fld, k, box):
    b = sturm_box(fld, k)
    assert (b.m_max, b.n_max) == box


def test_sturm_box_errors():
    with pytest.raises(ValueError):
        sturm_box(GAUSS, 7)


def test_box_monotone(field):
    for k in range(0, 200, 2):
        a, b = sturm_box(field, k), sturm_box(field, k + 2)
        assert a.m_max <= b.m_max and a.n_max <= b.n_max


def test_siegel_box_comparison(field):
    assert not siegel_box_dominated(field, 0)  # corners coincide at k = 0
    for k in range(2, 300, 2):
        assert siegel_box_dominated(field, k)


def test_n_le_m_filter():
    b = sturm_box(GAUSS, 40, n_le_m=True)
    assert all(n <= m for m, n in b.pairs)
    assert b.contains(2, 1) and not b.contains(1, 2)


def test_check_sturm_examples():
    chi8 = generator_set(GAUSS, 6)["CHI8"]
    r = check_sturm_zero(series_scale(5, chi8), 5)
    assert r.verdict is Verdict.ZERO_MOD_P and r.corroborated
    r = check_sturm_zero(chi8, 5)
    assert r.verdict is Verdict.NONZERO_MOD_P and r.witness == H0_GAUSS
    assert r.to_json()["witness"] == {"m": 1, "n": 1, "x": -1, "y": -1}


def test_check_sturm_rejections(field):
    g = generator_set(field, 4)
    H = HermIndex(1, 1, -1, -1)
    asym = g["E4"] + QSeries.monomial(Kind.HERMITIAN, field, H, 4, 4, 1)
    assert conj(field, H) != H
    with pytest.raises(SeriesError, match="symmetric"):
        check_sturm_zero(asym, 5)
    with pytest.raises(ValueError):
        check_sturm_zero(g["E4"], 3)
    with pytest.raises(ValueError):
        check_sturm_zero(g["E4"], 9)
    with pytest.raises(SeriesError, match="truncation"):
        check_sturm_zero((g["E6"] ** 4).truncate(1), 5)


def test_sturm_restriction_consistency(gens6):
    """Box = 0 mod p for f implies the Siegel box test for f|S2."""
    rng = random.Random(8)
    from hermq2.ringstruct import monomial_basis

    for k in (8, 10, 12, 16):
        basis = monomial_basis(gens6.weights, k)
        for _ in range(10):
            lam = [7 * rng.randint(-3, 3) for _ in basis]
            if rng.random() < 0.5:
                lam[0] += 1
            f = sum((series_scale(c, gens6.monomial(e)) for c, e in zip(lam, basis)),
                    gens6.zero(k))
            r = check_sturm_zero(f, 7)
            if r.verdict is Verdict.ZERO_MOD_P:
                assert siegel_sturm_check(restrict(f), 7, k).verdict is Verdict.ZERO_MOD_P


def test_integrality_examples(field):
    g = generator_set(field, 4)
    r = check_integrality(g["E4"], 7)
    assert r.verdict is Verdict.P_INTEGRAL and r.corroborated
    bad = g["E4"] + QSeries.monomial(Kind.HERMITIAN, field, HermIndex(0, 0, 0, 0), 4, 4, Fraction(1, 7))
    r = check_integrality(bad, 7)
    assert r.verdict is Verdict.NOT_P_INTEGRAL and r.witness == HermIndex(0, 0, 0, 0)
    zero = QSeries.zero(Kind.HERMITIAN, field, 4, 4)
    assert check_integrality(zero, 5, mode="zero").verdict is Verdict.ZERO
    r = check_integrality(g["E4"], 5, mode="zero")
    assert r.verdict is Verdict.NONZERO and r.witness == HermIndex(0, 0, 0, 0)


def test_weight_class():
    w = weight_class(-2, 5, 2)
    assert w == WeightClass(5, 2, 18) and w.modulus == 20
    assert weight_class(4, 5, 1) == weight_class(8, 5, 1)


def test_padic_examples():
    g = generator_set(GAUSS, 6)
    F4 = construct_one_form(GAUSS, 5, 6)
    E4 = g["E4"]
    r = padic_weight_check(E4, E4 * F4, 5, 1)
    assert r.verdict is Verdict.WEIGHTS_CONGRUENT and r.details["residue_k"] == 0
    r = padic_weight_check(series_scale(5, E4), E4, 5, 1)
    assert r.verdict is Verdict.PREMISE_FAILED and "= 0 mod p" in r.details["premise"]
    r = padic_weight_check(E4, E4 * F4, 5, 2)
    assert r.verdict is Verdict.PREMISE_FAILED  # F4 is only = 1 mod 5
    r = padic_weight_check(E4, E4 * F4 ** 5, 5, 2)
    assert r.verdict is Verdict.WEIGHTS_CONGRUENT
    # a congruence between forms of incompatible weights must be flagged
    fake = (E4 * F4).with_weight(10)
    assert padic_weight_check(E4, fake, 5, 1).verdict is Verdict.THEOREM_VIOLATION
