"""The generic nested-sum evaluator."""

from qbailey.multisum import MultisumSpec, multisum_eval
from qbailey.qparams import QParam
from qbailey.qfunctions import poch_recip
from qbailey.series import Series

Q = QParam.finite(1, 2)


def test_single_sum_matches_partition_counts():
    spec = MultisumSpec(
        depth=1, lower_bound=0,
        term=lambda ch, c: poch_recip(Q, ch[0], c).times_monomial(1, 2 * ch[0] ** 2),
        level_floor=lambda d, s: 2 * s * s)
    got = multisum_eval(spec, 20)
    assert [got.terms.get(2 * n, 0) for n in range(10)] == \
        [1, 1, 1, 1, 2, 2, 3, 3, 4, 5]


def test_empty_chain_range_gives_zero():
    spec = MultisumSpec(depth=2, lower_bound=3,
                        term=lambda ch, c: Series.one(),
                        level_floor=lambda d, s: 2 * s * s,
                        last_upper=1)  # lower bound above the cap: no chains
    got = multisum_eval(spec, 10)
    assert got.is_zero_below_cutoff()
    assert got.cutoff == 10


def test_double_sum_with_delta_weight_collapses_to_single():
    # the two-fold chain weighted by a delta at the inner index collapses to
    # the single sum (the inner variable is pinned to zero)
    def term(ch, c):
        s1, s2 = ch
        if s2 != 0:
            return Series.zero()
        t = poch_recip(Q, s1 - s2, c) * poch_recip(Q, s2, c)
        return t.times_monomial(1, 2 * (s1 * s1 + s2 * s2 + s2))

    spec = MultisumSpec(depth=2, lower_bound=0, term=term,
                        level_floor=lambda d, s: 2 * s * s, last_upper=0)
    double = multisum_eval(spec, 40)
    single = MultisumSpec(
        depth=1, lower_bound=0,
        term=lambda ch, c: poch_recip(Q, ch[0], c).times_monomial(1, 2 * ch[0] ** 2),
        level_floor=lambda d, s: 2 * s * s)
    assert multisum_eval(single, 40).terms == double.terms
