"""Dense-oracle differential checks and the partition-counting DP."""

import random
from fractions import Fraction

from qbailey.oracle import (CongruenceSpec, DenseSeries, dense_invert,
                            dense_mul, partition_gf)
from qbailey.series import Series
from qbailey.qparams import QParam
from qbailey.qfunctions import poch_recip, triple_product
from qbailey.series import product_at


def random_terms(rng, n_terms=7, span=20):
    terms = {}
    for _ in range(n_terms):
        e = rng.randint(-6, span)
        c = Fraction(rng.randint(-9, 9), rng.randint(1, 6))
        if c:
            terms[e] = c
    return terms


def test_dense_and_sparse_agree_on_products():
    rng = random.Random(23)
    for _ in range(60):
        t1, t2 = random_terms(rng), random_terms(rng)
        sparse = Series(t1, 80) * Series(t2)
        dense = dense_mul(DenseSeries.from_terms(t1, 80), DenseSeries.from_terms(t2))
        assert sparse.terms == dense.to_terms()
        assert sparse.cutoff == dense.cutoff


def test_dense_and_sparse_agree_on_inversion():
    rng = random.Random(29)
    for _ in range(40):
        t = random_terms(rng)
        if not t:
            continue
        sparse = Series(t).invert(40)
        dense = dense_invert(DenseSeries.from_terms(t), 40)
        assert sparse.terms == dense.to_terms()
        # round trip
        back = dense_mul(DenseSeries.from_terms(t), dense)
        want = {0: 1} if min(t) <= 0 or True else None
        got = {e: c for e, c in back.to_terms().items()}
        assert got.get(0, 0) == 1
        assert all(c == 0 or e == 0 for e, c in got.items() if e < back.cutoff)


def test_geometric_telescoping():
    one_minus_q = DenseSeries.from_terms({0: 1, 2: -1})
    geo = DenseSeries.from_terms({2 * k: 1 for k in range(12)}, 24)
    assert dense_mul(one_minus_q, geo).to_terms() == {0: 1}


def test_partition_gf_difference_two_numbers():
    # partitions into parts = +-1 mod 5: the classical difference-2 counts
    spec = CongruenceSpec(5, frozenset({0, 2, 3}))
    got = partition_gf(spec, 30)
    counts = [got.to_terms().get(2 * n, 0) for n in range(15)]
    assert counts == [1, 1, 1, 1, 2, 2, 3, 3, 4, 5, 6, 7, 9, 10, 12]


def test_partition_gf_all_excluded():
    spec = CongruenceSpec(3, frozenset({0, 1, 2}))
    assert partition_gf(spec, 40).to_terms() == {0: 1}


def test_partition_gf_matches_product_assembly():
    # modulus 7, excluded {0, +-1}: the r=3, i=1 odd-moduli product
    spec = CongruenceSpec(7, frozenset({0, 1, 6}))
    dp = partition_gf(spec, 100)
    prod = product_at(100, [
        (lambda c: triple_product(QParam.finite(1, 2), c, base=14), 0),
        (lambda c: poch_recip(QParam.finite(1, 2), float("inf"), c), 0),
    ])
    assert dp.to_terms() == prod.terms
