"""Identity catalog: reductions, cross-checks, and dual derivation routes."""

import pytest

from qbailey.errors import BadParam, UnknownIdentity
from qbailey.qparams import QParam
from qbailey.qfunctions import poch
from qbailey.pairs import make_pair
from qbailey.corollaries import corollary_sum
from qbailey.catalog import (check_table_row, evaluate_identity,
                             identity_names, mb_rhs_odd_i, specialization_table)
from qbailey.series import INF, Series, first_diff, product_at, series_equal

fin = QParam.finite
Q = fin(1, 2)


def both(name, params, cutoff):
    rep = evaluate_identity(name, params, cutoff)
    assert rep.passed, (name, params, rep.first_divergence)
    return rep


def test_multisum_eval_first_sum_is_partition_count():
    # depth 1, q^{s^2}/(q)_s: parts differing by >= 2 (oracle DP comparison)
    rep = both("rr", {"i": 1}, 60)
    counts = [rep.lhs.terms.get(2 * n, 0) for n in range(10)]
    assert counts == [1, 1, 1, 1, 2, 2, 3, 3, 4, 5]


def test_ag_collapse_to_rr():
    # the bottom chains coincide with the two single-sum left sides
    assert series_equal(both("ag", {"r": 2, "i": 1}, 60).lhs,
                        both("rr", {"i": 0}, 60).lhs, upto=60)
    assert series_equal(both("ag", {"r": 2, "i": 2}, 60).lhs,
                        both("rr", {"i": 1}, 60).lhs, upto=60)


def test_mag_reduction_m0_and_m1():
    for r in (2, 3):
        for i in range(0, r):
            mag0 = both("mag", {"m": 0, "r": r, "i": i}, 60)
            b33 = both("br33", {"r": r, "i": i}, 60)
            assert series_equal(mag0.lhs, b33.lhs, upto=60)
            assert series_equal(mag0.rhs, b33.rhs, upto=60)
            mag1 = both("mag", {"m": 1, "r": r, "i": i}, 60)
            ag = both("ag", {"r": r, "i": i + 1}, 60)
            assert series_equal(mag1.lhs, ag.lhs, upto=60)
            assert series_equal(mag1.rhs, ag.rhs, upto=60)


def test_mb_reduction_m0_and_m1():
    for r in (2, 3):
        for i in range(0, r - 1):
            mb0 = both("mb", {"m": 0, "r": r, "i": i}, 50)
            b35 = both("br35", {"r": r, "i": i}, 50)
            assert series_equal(mb0.lhs * 2, b35.lhs, upto=50)
            mb1 = both("mb", {"m": 1, "r": r, "i": i}, 50)
            be = both("bressoud_even", {"r": r, "i": i + 1}, 50)
            assert series_equal(mb1.lhs, be.lhs, upto=50)
            assert series_equal(mb1.rhs, be.rhs, upto=50)


def test_mb_odd_i_closed_form():
    for m in range(0, 4):
        for r in (2, 3):
            for i in range(1, r, 2):
                rep = both("mb", {"m": m, "r": r, "i": i}, 50)
                closed = mb_rhs_odd_i({"m": m, "r": r, "i": i}, 50)
                assert series_equal(rep.rhs, closed, upto=50), (m, r, i)


def test_mfij_reduction_m0_and_m1():
    for r in (2, 3):
        for i in range(0, r - 1):
            m0 = both("mfij", {"m": 0, "r": r, "i": i}, 50)
            f = both("fij", {"r": r, "i": i}, 50)
            assert series_equal(m0.lhs, f.lhs, upto=50)
            assert series_equal(m0.rhs, f.rhs, upto=50)
            m1 = both("mfij", {"m": 1, "r": r, "i": i}, 50)
            f0 = both("fij0", {"r": r, "i": i + 1}, 50)
            assert series_equal(m1.lhs, f0.lhs, upto=50)
            assert series_equal(m1.rhs, f0.rhs, upto=50)


def _times_inf_product(series, coeff_halves, cutoff):
    mult = poch(fin(-1, coeff_halves), INF, cutoff, base=4)
    return product_at(cutoff, [(lambda c: series, series.val()),
                               (lambda c: mult, mult.val())])


def test_mbr36_reductions():
    for r in (2, 3):
        for i in range(0, r - 1):
            m0 = both("mbr36", {"m": 0, "r": r, "i": i}, 40)
            b = both("b36", {"r": r, "i": i}, 80)
            lhs = _times_inf_product(m0.lhs.scale_exponents(2), 2, 80)
            rhs = _times_inf_product(m0.rhs.scale_exponents(2), 2, 80)
            assert series_equal(lhs, b.lhs, upto=80)
            assert series_equal(rhs, b.rhs, upto=80)
            m1 = both("mbr36", {"m": 1, "r": r, "i": i}, 40)
            be = both("bressoud_even", {"r": r, "i": i + 1}, 40)
            assert series_equal(m1.lhs, be.lhs, upto=40)
            assert series_equal(m1.rhs, be.rhs, upto=40)


def test_mbr37_reductions():
    for r in (2, 3):
        for i in range(0, r - 1):
            m0 = both("mbr37", {"m": 0, "r": r, "i": i}, 40)
            b35 = both("br35", {"r": r, "i": i}, 40)
            assert series_equal(m0.lhs, b35.lhs, upto=40)
            assert series_equal(m0.rhs, b35.rhs, upto=40)
            m1 = both("mbr37", {"m": 1, "r": r, "i": i}, 40)
            b = both("b37", {"r": r, "i": i}, 80)
            lhs = _times_inf_product(m1.lhs.scale_exponents(2), 6, 80)
            rhs = _times_inf_product(m1.rhs.scale_exponents(2), 6, 80)
            assert series_equal(lhs, b.lhs, upto=80)
            assert series_equal(rhs, b.rhs, upto=80)


def test_mbr38_mbr39_reductions():
    for r in (2, 3):
        for i in range(0, r - 1):
            m0 = both("mbr38", {"m": 0, "r": r, "i": i}, 40)
            n1 = both("new1", {"r": r, "i": i}, 40)
            assert series_equal(m0.lhs, n1.lhs, upto=40)
            assert series_equal(m0.rhs, n1.rhs, upto=40)
            m1 = both("mbr38", {"m": 1, "r": r, "i": i}, 40)
            b = both("b38", {"r": r, "i": i}, 80)
            assert series_equal(m1.lhs.scale_exponents(2), b.lhs, upto=80)
            assert series_equal(m1.rhs.scale_exponents(2), b.rhs, upto=80)
            m0 = both("mbr39", {"m": 0, "r": r, "i": i}, 40)
            n2 = both("new2", {"r": r, "i": i}, 40)
            assert series_equal(m0.lhs, n2.lhs, upto=40)
            assert series_equal(m0.rhs, n2.rhs, upto=40)
            m1 = both("mbr39", {"m": 1, "r": r, "i": i}, 40)
            b = both("b39", {"r": r, "i": i}, 80)
            assert series_equal(m1.lhs.scale_exponents(2), b.lhs, upto=80)
            assert series_equal(m1.rhs.scale_exponents(2), b.rhs, upto=80)


def test_documented_divergence_at_i_equal_r():
    # the printed m-version statements overreach at i = r: the two sides
    # genuinely differ there, which is why the catalog domain stops at r-1
    from qbailey.catalog import CATALOG
    for name in ("mb", "mfij", "mbr36"):
        desc = CATALOG[name]
        lhs = desc.lhs({"m": 0, "r": 2, "i": 2}, 30)
        rhs = desc.rhs({"m": 0, "r": 2, "i": 2}, 30)
        _, diff = first_diff(lhs, rhs, 30)
        assert diff is not None, name
        with pytest.raises(BadParam):
            evaluate_identity(name, {"m": 0, "r": 2, "i": 2}, 20)


def test_mag_derivation_route_equality():
    # catalog route == chain-corollary route on the shifted pair, after the
    # (q)_m bookkeeping
    for m, r, i in ((0, 2, 1), (2, 2, 1), (3, 3, 2)):
        pair = make_pair("shifted", m=m)
        lhs_c, rhs_c = corollary_sum(pair, r, i, "plain", 50)
        rep = both("mag", {"m": m, "r": r, "i": i}, 50)
        qm = poch(Q, m)
        assert series_equal(lhs_c, rep.lhs * qm, upto=50)
        assert series_equal(rhs_c, rep.rhs * qm, upto=50)


def test_mb_derivation_route_equality():
    for m, r, i in ((1, 2, 1), (2, 2, 0)):
        pair = make_pair("shifted_D4", m=m)
        lhs_c, rhs_c = corollary_sum(pair, r - 1, i, "plain", 40)
        rep = both("mb", {"m": m, "r": r, "i": i}, 40)
        norm = poch(Q, m) * (Series.one() + Series.monomial(1, 2 * m))
        assert series_equal(lhs_c, rep.lhs * norm, upto=40)
        assert series_equal(rhs_c, rep.rhs * norm, upto=40)


def test_mfij_derivation_route_equality():
    for m, r, i in ((1, 2, 1), (2, 2, 0)):
        pair = make_pair("shifted_D1", m=m)
        lhs_c, rhs_c = corollary_sum(pair, r - 1, i, "plain", 40)
        rep = both("mfij", {"m": m, "r": r, "i": i}, 40)
        qm = poch(Q, m)
        assert series_equal(lhs_c, rep.lhs * qm, upto=40)
        assert series_equal(rhs_c, rep.rhs * qm, upto=40)


def test_mbr38_derivation_route_equality():
    for m, r, i in ((1, 2, 0), (2, 2, 1)):
        pair = make_pair("shifted", m=m)
        lhs_c, rhs_c = corollary_sum(pair, r, i, ("bc", fin(-1, m), None), 40)
        rep = both("mbr38", {"m": m, "r": r, "i": i}, 40)
        qm = poch(Q, m)
        assert series_equal(lhs_c, rep.lhs * qm, upto=40)
        assert series_equal(rhs_c, rep.rhs * qm, upto=40)


def test_specialization_table_rows():
    rows = specialization_table()
    assert len(rows) == 8
    for row in rows:
        ok, detail = check_table_row(row, 40)
        assert ok, (row["label"], detail)


def test_specialization_table_rejects_malformed_row():
    with pytest.raises(BadParam):
        check_table_row({}, 20)


def test_catalog_validation_errors():
    with pytest.raises(UnknownIdentity):
        evaluate_identity("nope", {}, 20)
    with pytest.raises(BadParam):
        evaluate_identity("mag", {"m": -1, "r": 2, "i": 0}, 20)
    with pytest.raises(BadParam):
        evaluate_identity("ag", {"r": 1, "i": 1}, 20)
    with pytest.raises(BadParam):
        evaluate_identity("ag", {"r": 2}, 20)
    with pytest.raises(BadParam):
        evaluate_identity("bressoud_master",
                          {"k": 2, "r": 2, "a": Q, "c1": fin(2, 2),
                           "c2": QParam.infinity(), "bs": [Q, Q, Q]}, 20)


def test_identity_names_exposed():
    names = identity_names()
    for expected in ("rr", "ag", "mag", "gg", "bressoud_master", "lambda1"):
        assert expected in names
