"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` (the lines are also written
when output capture is on).
"""
import random
import sys
import time
from fractions import Fraction

import pytest

from helpers import series_with_ord, zp_rational
from oracles import brute_psd, hurwitz_class_number

from hermq2.arith import cohen_H
from hermq2.criteria import check_sturm_zero, padic_weight_check, sturm_box
from hermq2.hermitian import GENERATOR_NAMES, H0_GAUSS, H_CHI18, construct_one_form, generator_set
from hermq2.lattice import EISENSTEIN, GAUSS, enumerate_psd
from hermq2.linalg import nullspace_mod_p
from hermq2.qexp import (INFINITY, Kind, QSeries, add_ord, index_space, linear_combination, ord_p, phi,
                         restrict, series_mul, series_scale)
from hermq2.reports import Verdict
from hermq2.ringstruct import IsobaricPoly, decompose, decomposition_rank, evaluate, monomial_basis
from hermq2.siegel import T1, SiegelGenerators, elliptic_eisenstein, siegel_eisenstein, siegel_generators

FIELDS = (GAUSS, EISENSTEIN)
CUSP = {GAUSS: ("CHI8", "F10", "F12"), EISENSTEIN: ("F10", "F12", "CHI18")}


def verdict(request, n, label, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {label}" + (f" ({detail})" if detail else "")
    capman = request.config.pluginmanager.getplugin("capturemanager")
    if capman is not None:
        with capman.global_and_fixture_disabled():
            sys.stdout.write("\n" + line + "\n")
    else:  # pragma: no cover
        print(line)
    assert ok, line


def test_c01_restriction_of_eisenstein(request):
    bad = []
    for fld in FIELDS:
        g = generator_set(fld, 6)
        for name, k in (("E4", 4), ("E6", 6)):
            if restrict(g[name]) != siegel_eisenstein(k, 6):
                bad.append(f"{fld.name} {name}")
    verdict(request, 1, "restrict(E4)=G4, restrict(E6)=G6 at trace <= 6", not bad, ", ".join(bad))


def test_c02_cusp_generator_contract(request):
    sg = siegel_generators(6)
    expected = {
        GAUSS: {"CHI8": None, "F10": series_scale(6, sg.X10), "F12": sg.X12},
        EISENSTEIN: {"F10": series_scale(2, sg.X10), "F12": series_scale(2, sg.X12), "CHI18": None},
    }
    bad = []
    for fld in FIELDS:
        g = generator_set(fld, 6)
        for name, tgt in expected[fld].items():
            r = restrict(g[name])
            if (r.is_zero() if tgt is None else r == tgt) is False:
                bad.append(f"{fld.name} {name}|S2")
        for name in CUSP[fld]:
            if not phi(g[name]).is_zero():
                bad.append(f"{fld.name} Phi({name})")
    if generator_set(GAUSS, 6)["CHI8"][H0_GAUSS] != 1:
        bad.append("a_chi8(H0)")
    if generator_set(EISENSTEIN, 6)["CHI18"][H_CHI18] != 1:
        bad.append("a_chi18((2,2,(-2,0)))")
    verdict(request, 2, "cusp generator restrictions, normalizations and Phi = 0", not bad, ", ".join(bad))


def test_c03_siegel_normalizations(request):
    sg = siegel_generators(6)
    zero = sg.G4.space.indices[0]
    bad = []
    if sg.G4[zero] != 1 or sg.G6[zero] != 1:
        bad.append("a_G(0)")
    if sg.X10[T1] != 1 or sg.X12[T1] != 1:
        bad.append("a_X(T1)")
    for k in (4, 6, 8, 10, 12):
        if phi(siegel_eisenstein(k, 6)) != elliptic_eisenstein(k, 6):
            bad.append(f"Phi(E_{k})")
    verdict(request, 3, "Siegel normalizations and Phi(E_k) = elliptic E_k", not bad, ", ".join(bad))


def test_c04_ord_additivity(request):
    rng = random.Random(4)
    T = 6
    fails, total = [], 0
    for fld in FIELDS:
        space = index_space(Kind.HERMITIAN, fld, T)
        low = [i for i, H in enumerate(space.indices) if H.trace <= 3]
        for p in (5, 7):
            for _ in range(500):
                f = series_with_ord(rng, fld, T, rng.choice(low), p)
                g = series_with_ord(rng, fld, T, rng.choice(low), p)
                of, og = ord_p(f, p), ord_p(g, p)
                total += 1
                if of is INFINITY or og is INFINITY or ord_p(series_mul(f, g), p) != add_ord(of, og):
                    fails.append((fld.name, p, of, og))
    verdict(request, 4, f"ord_p(fg) = ord_p(f) + ord_p(g) on {total} pairs", not fails,
            f"{len(fails)} failures" if fails else "")


def _int_matrix_mod(series, p):
    cols = [s.reduce_mod(p) for s in series]
    return [[int(c[i]) for c in cols] for i in range(len(cols[0]))]


def test_c05_sturm_soundness(request):
    t0 = time.time()
    rng = random.Random(5)
    T = 8
    counter, zeros, total, kdim = [], 0, 0, 0
    for fld in FIELDS:
        gens = generator_set(fld, T)
        for k in (8, 10, 12, 16):
            basis = monomial_basis(gens.weights, k)
            mons = [gens.monomial(e) for e in basis]
            space = mons[0].space
            box = sturm_box(fld, k, n_le_m=True)
            for p in (5, 7):
                cols = [m.reduce_mod(p) for m in mons]
                box_rows = [[int(c[i]) for c in cols] for i, H in enumerate(space.indices)
                            if box.contains(H.m, H.n)]
                kernel = nullspace_mod_p(box_rows, len(mons), p)
                kdim += len(kernel)
                for j in range(200):
                    mode = j % 4
                    if mode == 0:
                        lam = [zp_rational(rng, p) for _ in mons]
                    elif mode == 1:
                        lam = [p * zp_rational(rng, p) for _ in mons]
                    else:
                        lam = [p * zp_rational(rng, p, 5) for _ in mons]
                        for v in kernel:
                            c = rng.randrange(p)
                            lam = [a + c * b for a, b in zip(lam, v)]
                        if mode == 3:
                            lam[rng.randrange(len(lam))] += 1  # one step off the kernel
                    f = linear_combination(lam, mons)
                    rep = check_sturm_zero(f, p, corroborate=False)
                    full_zero = not f.reduce_mod(p).any()
                    zeros += full_zero
                    total += 1
                    if (rep.verdict is Verdict.ZERO_MOD_P) != full_zero:
                        counter.append((fld.name, k, p, lam))
    dt = time.time() - t0
    ok = not counter and dt <= 600
    verdict(request, 5, f"Sturm box soundness on {total} forms ({zeros} = 0 mod p)", ok,
            f"{len(counter)} counterexamples, box kernel dim total {kdim}, {dt:.0f}s")


def test_c06_one_form(request):
    bad = []
    for fld in FIELDS:
        for p in (5, 7, 11, 13):
            F = construct_one_form(fld, p, 6)
            r = F.reduce_mod(p)
            if F.weight != p - 1 or r[0] != 1 or r[1:].any():
                bad.append(f"{fld.name} p={p}")
    verdict(request, 6, "construct_one_form gives F_{p-1} = 1 mod p at trace <= 6", not bad, ", ".join(bad))


def test_c07_padic_weight_congruence(request):
    rng = random.Random(7)
    T = 4
    counts = {v: 0 for v in Verdict}
    pairs = 0
    for fld in FIELDS:
        gens = generator_set(fld, T)
        for p in (5, 7):
            F = construct_one_form(fld, p, T, gens)
            for l in (1, 2):
                Fl = F ** (p ** (l - 1))
                powers = {1: Fl}
                for _ in range(50):
                    k = rng.choice([4, 6, 8, 10, 12])
                    basis = monomial_basis(gens.weights, k)
                    while True:
                        lam = [zp_rational(rng, p, 6) for _ in basis]
                        f = linear_combination(lam, [gens.monomial(e) for e in basis])
                        if ord_p(f, p) is not INFINITY:
                            break
                    a = rng.randint(1, 3)
                    if a not in powers:
                        powers[a] = Fl ** a
                    g = f * powers[a]
                    counts[padic_weight_check(f, g, p, l).verdict] += 1
                    pairs += 1
    ok = counts[Verdict.WEIGHTS_CONGRUENT] == pairs and counts[Verdict.THEOREM_VIOLATION] == 0
    verdict(request, 7, f"weight congruence on {pairs} pairs (f, f F^(a p^(l-1)))", ok,
            ", ".join(f"{v.value}={c}" for v, c in counts.items() if c))


def _random_poly(rng, weights, k, bound=9):
    basis = monomial_basis(weights, k)
    terms = {e: Fraction(rng.randint(-bound, bound), rng.choice([1, 1, 2, 3, 5])) for e in basis
             if rng.random() < 0.7}
    return IsobaricPoly(weights, k, terms)


def test_c08_decomposition_roundtrip(request):
    rng = random.Random(8)
    bad = []
    for fld in FIELDS:
        gens = generator_set(fld, 6)
        for k in range(0, 25, 2):
            r, n = decomposition_rank(gens, k, 6)
            if r != n:
                bad.append(f"{fld.name} rank {r}/{n} at weight {k}")
        for _ in range(100):
            k = rng.choice([k for k in range(0, 25, 2) if monomial_basis(gens.weights, k)])
            P = _random_poly(rng, tuple(gens.weights), k)
            if decompose(evaluate(P, gens), gens) != P:
                bad.append(f"{fld.name} weight {k}")
    verdict(request, 8, "decompose(P(gens)) = P on 200 polynomials, full rank at trace 6", not bad,
            ", ".join(bad[:5]))


def test_c09_siegel_mod_p_kernel(request):
    rng = random.Random(9)
    sg = siegel_generators(8)
    gens = SiegelGenerators(sg.G4, sg.G6, series_scale(6, sg.X10), sg.X12)
    bad = []
    for p in (5, 7):
        for k in range(4, 25, 2):
            mons = [gens.monomial(e) for e in monomial_basis(gens.weights, k)]
            if mons and nullspace_mod_p(_int_matrix_mod(mons, p), len(mons), p):
                bad.append(f"kernel at p={p}, k={k}")
    checked = 0
    for j in range(100):
        p = (5, 7)[j % 2]
        k = rng.choice([k for k in range(4, 25, 2) if monomial_basis(gens.weights, k)])
        P = _random_poly(rng, gens.weights, k, bound=p - 1)
        P = IsobaricPoly(P.weights, k, {e: Fraction(c.numerator) for e, c in P.terms.items()})
        if j % 3 == 0:
            P = IsobaricPoly(P.weights, k, {e: p * c for e, c in P.terms.items()})
        image_zero = not evaluate(P, gens).reduce_mod(p).any()
        if image_zero != P.is_zero_mod(p):
            bad.append(f"p={p} P={P.to_json()}")
        checked += 1
    verdict(request, 9, f"P(G4,G6,6X10,X12) = 0 mod p iff P = 0 mod p ({checked} polynomials)", not bad,
            ", ".join(bad[:5]))


def _brute_mul(f, g):
    out = {}
    pos = f.space.pos
    for A, a in f.items():
        for B, b in g.items():
            C = A + B
            if C in pos:
                out[C] = out.get(C, 0) + a * b
    return QSeries.from_dict(f.kind, f.field, f.weight + g.weight, f.trunc, out, f.character)


def test_c10_oracles(request):
    rng = random.Random(10)
    bad = []
    for fld in (GAUSS, EISENSTEIN, None):
        kind = Kind.SIEGEL2 if fld is None else Kind.HERMITIAN
        for T in range(0, 4):
            space = index_space(kind, fld, T)
            for _ in range(5):
                f, g = (QSeries.from_dict(kind, fld, 4, T, {H: Fraction(rng.randint(-9, 9), rng.randint(1, 4))
                                                            for H in space.indices if rng.random() < 0.6})
                        for _ in range(2))
                if series_mul(f, g) != _brute_mul(f, g):
                    bad.append(f"mul {kind.value} T={T}")
    for fld in FIELDS:
        for T in range(0, 5):
            if {tuple(H) for H in enumerate_psd(fld, T)} != brute_psd(fld.d_K, T):
                bad.append(f"enumerate_psd {fld.name} T={T}")
    for N in range(0, 201):
        if cohen_H(1, N) != hurwitz_class_number(N):
            bad.append(f"H(1,{N})")
    verdict(request, 10, "series_mul, enumerate_psd and cohen_H(1, N) agree with oracles", not bad,
            ", ".join(bad[:5]))
