"""Acceptance suite: one test per criterion, printing a pass/fail line each.

All comparisons are exact rational equality of every coefficient strictly
below the stated truncation order (given in halves of q: x = q^(1/2), so
cutoff 200 means q^100).  There are no tolerances anywhere.
"""

import json
import random
import subprocess
import sys
import time
from fractions import Fraction

from qbailey.qparams import QParam
from qbailey.qfunctions import jacobi_triple, poch
from qbailey.pairs import make_pair
from qbailey.corollaries import finite_n_check
from qbailey.catalog import (check_table_row, evaluate_identity,
                             mb_rhs_odd_i, specialization_table)
from qbailey.bressoud import bressoud_F, bressoud_G, bressoud_lhs, bressoud_rhs
from qbailey.checks import composition_checks, draw_param, transform_soundness
from qbailey.oracle import CongruenceSpec, DenseSeries, dense_invert, dense_mul, partition_gf
from qbailey.series import INF, Series, product_at, series_equal
from qbailey.transforms import REGISTRY

fin = QParam.finite
inf = QParam.infinity


def announce(number, label):
    def deco(fn):
        def wrapped(*args, **kw):
            t0 = time.time()
            try:
                fn(*args, **kw)
            except BaseException:
                print(f"[FAIL] criterion {number}: {label} ({time.time() - t0:.1f}s)")
                raise
            print(f"[PASS] criterion {number}: {label} ({time.time() - t0:.1f}s)")
        wrapped.__name__ = fn.__name__
        return wrapped
    return deco


def assert_identity(name, params, cutoff):
    rep = evaluate_identity(name, params, cutoff)
    assert rep.passed, (name, params, rep.first_divergence)
    assert rep.compared >= cutoff
    return rep


@announce(1, "Rogers-Ramanujan pair at q^100 against the partition DP")
def test_criterion_1_rogers_ramanujan():
    for i in (0, 1):
        t0 = time.time()
        rep = assert_identity("rr", {"i": i}, 200)
        assert time.time() - t0 < 1.0
        # the product side keeps parts congruent to +-(2-i) mod 5
        excluded = frozenset({0, 1 + i, 5 - (1 + i)})
        dp = partition_gf(CongruenceSpec(5, excluded), 200)
        assert dp.to_terms() == rep.rhs.terms
        assert dp.to_terms() == rep.lhs.terms


@announce(2, "odd-moduli families r in {2..5}, all legal i, at q^60")
def test_criterion_2_andrews_gordon_family():
    t0 = time.time()
    for r in (2, 3, 4, 5):
        for i in range(1, r + 1):
            assert_identity("ag", {"r": r, "i": i}, 120)
        for i in range(0, r):
            assert_identity("br33", {"r": r, "i": i}, 120)
    assert time.time() - t0 < 10.0


@announce(3, "m-version of the odd-moduli family with m=0 and m=1 reductions")
def test_criterion_3_m_version_odd():
    for m in range(0, 5):
        for r in (2, 3, 4):
            for i in range(0, r + 1):
                assert_identity("mag", {"m": m, "r": r, "i": i}, 80)
    for r in (2, 3, 4):
        for i in range(0, r):
            mag0 = evaluate_identity("mag", {"m": 0, "r": r, "i": i}, 80)
            b33 = evaluate_identity("br33", {"r": r, "i": i}, 80)
            assert series_equal(mag0.lhs, b33.lhs, upto=80)
            assert series_equal(mag0.rhs, b33.rhs, upto=80)
            mag1 = evaluate_identity("mag", {"m": 1, "r": r, "i": i}, 80)
            ag = evaluate_identity("ag", {"r": r, "i": i + 1}, 80)
            assert series_equal(mag1.lhs, ag.lhs, upto=80)
            assert series_equal(mag1.rhs, ag.rhs, upto=80)


@announce(4, "even-moduli families and their m-versions at x^80")
def test_criterion_4_even_moduli_family():
    for r in (2, 3):
        for i in range(1, r + 1):
            assert_identity("bressoud_even", {"r": r, "i": i}, 80)
            assert_identity("fij0", {"r": r, "i": i}, 80)
        for i in range(0, r):
            assert_identity("br35", {"r": r, "i": i}, 80)
            assert_identity("fij", {"r": r, "i": i}, 80)
    for m in range(0, 4):
        for r in (2, 3):
            for i in range(0, r):
                rep = assert_identity("mb", {"m": m, "r": r, "i": i}, 80)
                if i % 2 == 1:
                    closed = mb_rhs_odd_i({"m": m, "r": r, "i": i}, 80)
                    assert series_equal(rep.rhs, closed, upto=80)
                assert_identity("mfij", {"m": m, "r": r, "i": i}, 80)


@announce(5, "half-lattice families, m-versions, and base-doubling reductions")
def test_criterion_5_half_lattice_family():
    for i in (0, 1):
        assert_identity("gg", {"i": i}, 80)
    for r in (2, 3):
        for i in range(0, r):
            for name in ("b36", "b37", "b38", "b39", "new1", "new2"):
                assert_identity(name, {"r": r, "i": i}, 80)
    for m in range(0, 4):
        for r in (2, 3):
            for i in range(0, r):
                for name in ("mbr36", "mbr37", "mbr38", "mbr39"):
                    assert_identity(name, {"m": m, "r": r, "i": i}, 80)

    def times_prod(series, neg_halves, cutoff):
        mult = poch(fin(-1, neg_halves), INF, cutoff, base=4)
        return product_at(cutoff, [(lambda c: series, series.val()),
                                   (lambda c: mult, mult.val())])

    for r in (2, 3):
        for i in range(0, r - 1):
            m0 = evaluate_identity("mbr36", {"m": 0, "r": r, "i": i}, 40)
            b = evaluate_identity("b36", {"r": r, "i": i}, 80)
            assert series_equal(times_prod(m0.lhs.scale_exponents(2), 2, 80),
                                b.lhs, upto=80)
            m1 = evaluate_identity("mbr37", {"m": 1, "r": r, "i": i}, 40)
            b = evaluate_identity("b37", {"r": r, "i": i}, 80)
            assert series_equal(times_prod(m1.lhs.scale_exponents(2), 6, 80),
                                b.lhs, upto=80)
            for src, tgt in (("mbr38", "b38"), ("mbr39", "b39")):
                m1 = evaluate_identity(src, {"m": 1, "r": r, "i": i}, 40)
                b = evaluate_identity(tgt, {"r": r, "i": i}, 80)
                assert series_equal(m1.lhs.scale_exponents(2), b.lhs, upto=80)
                assert series_equal(m1.rhs.scale_exponents(2), b.rhs, upto=80)


@announce(6, "transform soundness: 18 transforms, 5 seeded specializations each")
def test_criterion_6_transform_soundness():
    t0 = time.time()
    for name in sorted(REGISTRY):
        results = transform_soundness(name, trials=5, seed=2024, cutoff=60,
                                      n_min=-6, n_max=6)
        assert len(results) == 5
        for r in results:
            assert r["passed"], (name, r)
    assert time.time() - t0 < 60.0


@announce(7, "structural equalities between transforms")
def test_criterion_7_structural_equalities():
    checks = composition_checks(seed=99, cutoff=36)
    labels = {c["label"] for c in checks}
    for needle in ("lattice = bailey_lemma(a/q) after key1",
                   "new_lattice = bailey_lemma(a/q) after key2",
                   "general(b) = key1/(1-b) - b*key2/(1-b)",
                   "key1 then lovejoy_inv(0) = identity",
                   "nlattice(b1..bN) = chained general(b_i)",
                   "nlattice1(N) = nlattice(all b = 0)",
                   "nlattice([]) = identity",
                   "w1 = bailey_lemma(aq^-N) after nlattice1",
                   "w2 = nlattice1 after bailey_lemma",
                   "analog_w1 = bailey_lemma(aq^-N) after nlattice2",
                   "analog_w2 = nlattice2 after bailey_lemma"):
        assert needle in labels
    for c in checks:
        assert c["passed"], c


@announce(8, "lattice kernel: recurrence, closed forms, binomial lemmas, Pascal")
def test_criterion_8_lattice_kernel():
    # these live in test_transforms.py as fine-grained tests; replay them here
    from test_transforms import (test_f_direct_all_b_zero_closed_form,
                                 test_f_direct_recurrence,
                                 test_f_direct_top_b_coefficient,
                                 test_pascal_extension_lemmas_exhaustive)
    from test_qfunctions import test_qbinom_symmetry_and_pascal
    test_f_direct_recurrence()
    test_f_direct_all_b_zero_closed_form()
    test_f_direct_top_b_coefficient()
    test_pascal_extension_lemmas_exhaustive()
    test_qbinom_symmetry_and_pascal()


@announce(9, "finite-n chain theorems with mixed finite/infinite parameters")
def test_criterion_9_finite_n():
    param_sets = [
        ([fin(3, 2), fin(7, 2)], [inf(), inf()]),
        ([inf(), fin(5, 4)], [fin(2, 4), inf()]),
        ([fin(3, 2), inf()], [inf(), fin(2, 4)]),
        ([inf(), fin(5, 2)], [fin(3, 4), inf()]),
    ]
    # bilateral version: shifted pairs (odd m; the even-m chain is degenerate
    # at a = q^m, see the decisions ledger) plus the m = 0 pair at n = 0
    for pair in (make_pair("shifted", m=1), make_pair("shifted", m=3)):
        for r in (1, 2):
            for i in range(0, r + 1):
                for n in range(0, 4):
                    rhos, sigmas = param_sets[(r + i + n) % len(param_sets)]
                    rep = finite_n_check("Thm2_1", pair, r, i, n,
                                         rhos[:r], sigmas[:r], 50)
                    assert rep.passed, (pair.label, r, i, n, rep.first_divergence)
    rep = finite_n_check("Thm2_1", make_pair("shifted", m=0), 1, 1, 0,
                         [fin(3, 2)], [inf()], 50)
    assert rep.passed
    # unilateral twisted version on the delta pairs at a = q, q^2
    for a in (fin(1, 2), fin(1, 4)):
        pair = make_pair("unit", a=a)
        for r in (1, 2):
            for i in range(0, r + 1):
                for n in range(0, 4):
                    rhos, sigmas = param_sets[(r + i + n + 1) % len(param_sets)]
                    rep = finite_n_check("Thm4_2", pair, r, i, n,
                                         rhos[:r], sigmas[:r], 50)
                    assert rep.passed, (str(a), r, i, n, rep.first_divergence)


@announce(10, "master identity: seeded grids, r = k limit, F = G, table rows")
def test_criterion_10_master_identity():
    rng = random.Random(77)
    q = fin(1, 2)
    for k in (2, 3):
        for r in range(1, k):
            for trial in range(3):
                while True:
                    a = fin(rng.choice([2, 3, Fraction(1, 2), Fraction(5, 2)]),
                            rng.randint(1, 3))
                    aq = a.q_shift(2)
                    c1 = draw_param(rng)
                    c2 = draw_param(rng)
                    bs = [draw_param(rng) for _ in range(2 * r - 1)]
                    derived = [a / p for p in bs] + [aq / c1, aq / c2,
                                                     (aq / c1) / c2]
                    derived += [(a / bs[d - 1]) / bs[2 * r - d]
                                for d in range(2, r + 1)]
                    if all(not x.is_finite or x.coeff != 1 for x in derived):
                        break
                L = bressoud_lhs(k, r, a, c1, c2, bs, 60)
                R = bressoud_rhs(k, r, a, c1, c2, bs, 60)
                assert series_equal(L, R, upto=60), (k, r, trial)
            L = bressoud_lhs(k, r, q, inf(), inf(), [inf()] * (2 * r - 1), 60)
            R = bressoud_rhs(k, r, q, inf(), inf(), [inf()] * (2 * r - 1), 60)
            assert series_equal(L, R, upto=60), (k, r, "all-inf")
    # the r = k boundary under c1, c2 -> oo
    for k in (2, 3):
        bs = [fin(2, 2), fin(5, 4), fin(7, 2), fin(4, 4), fin(9, 6)][:2 * k - 1]
        L = bressoud_lhs(k, k, fin(3, 2), inf(), inf(), bs, 50)
        R = bressoud_rhs(k, k, fin(3, 2), inf(), inf(), bs, 50)
        assert series_equal(L, R, upto=50), ("r=k", k)
    # F = G at specializations, including a trailing infinite insertion
    for bs in ([fin(2, 2), fin(3, 4), fin(5, 2)], [fin(7, 2), fin(4, 4), inf()]):
        F = bressoud_F(3, 2, fin(2, 4), fin(3, 2), fin(5, 4), bs, 40)
        G = bressoud_G(3, 2, fin(2, 4), fin(3, 2), fin(5, 4), bs, 40)
        assert series_equal(F, G, upto=40)
    # at least 4 documented specialization-table rows, both routes
    rows = specialization_table()
    assert len(rows) >= 4
    for row in rows:
        ok, detail = check_table_row(row, 40)
        assert ok, (row["label"], detail)


@announce(11, "engine hygiene: dense differential, triple products, faults")
def test_criterion_11_engine_hygiene():
    rng = random.Random(123)
    ops = 0
    while ops < 100:
        terms1 = {rng.randint(-6, 20): Fraction(rng.randint(-9, 9),
                                                rng.randint(1, 6))
                  for _ in range(7)}
        terms1 = {e: c for e, c in terms1.items() if c}
        terms2 = {rng.randint(-6, 20): Fraction(rng.randint(-9, 9),
                                                rng.randint(1, 6))
                  for _ in range(7)}
        terms2 = {e: c for e, c in terms2.items() if c}
        sparse = Series(terms1, 80) * Series(terms2)
        dense = dense_mul(DenseSeries.from_terms(terms1, 80),
                          DenseSeries.from_terms(terms2))
        assert sparse.terms == dense.to_terms()
        ops += 1
        if terms1:
            si = Series(terms1).invert(40)
            di = dense_invert(DenseSeries.from_terms(terms1), 40)
            assert si.terms == di.to_terms()
            ops += 1
    zs = [(Fraction(1), 2, 10), (Fraction(1), 6, 10), (Fraction(2), 1, 2),
          (Fraction(-1), 2, 4), (Fraction(1), -4, 10), (Fraction(1, 2), 3, 6),
          (Fraction(-1), 1, 4), (Fraction(3), 5, 8), (Fraction(1), 4, 8),
          (Fraction(-2), 3, 6)]
    assert len(zs) == 10
    for c, h, base in zs:
        s_side, p_side = jacobi_triple(fin(c, h), 40, base=base)
        assert series_equal(s_side, p_side, upto=40), (c, h, base)
    # injected fault through the CLI returns exit code 1 with the divergence
    r = subprocess.run([sys.executable, "-m", "qbailey.cli", "--format", "json",
                        "verify", "--identity", "ag", "--r", "2", "--i", "1",
                        "--cutoff", "40", "--inject-fault", "10"],
                       capture_output=True, text=True)
    assert r.returncode == 1
    payload = json.loads(r.stdout)
    fd = payload["first_divergence"]
    assert fd["exponent_halves"] == 10
    assert Fraction(fd["lhs_coeff"]) - Fraction(fd["rhs_coeff"]) == 1
