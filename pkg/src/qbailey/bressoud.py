"""The multi-parameter Bressoud identity and its lattice-route relatives.

The master identity equates a (k-1)-fold multisum with paired parameter
insertions (b_d, b_{2r+1-d}) at levels d = 2..r against a single j-sum with
a (2r-1)-parameter correction bracket.  Trailing b parameters may be
infinite, which lowers the effective number of insertions; the r = k
boundary case is admitted only with both c parameters infinite.

``bressoud_F``/``bressoud_G`` are the raw function forms (the j-sum dressed
with its (a/b_t)_oo normalization, and the multisum written with
(q^{1-s}/b)_s insertions and per-chain infinite tails); their equality is an
independent route through the same identity.
"""

from __future__ import annotations

from .errors import BadParam, PoleError, TruncationUnreachable
from .qparams import QParam
from .qfunctions import FactorProduct, fp_pp, poch, poch_recip, poch_val
from .multisum import MultisumSpec, multisum_eval
from .series import INF, Series, product_at

_Q = QParam.finite(1, 2)
_STREAK = 4


def _sign(k):
    return 1 if k % 2 == 0 else -1


def _pp_floor(p: QParam, s: int):
    """Certified valuation (halves) of (p)_s / p^s; (-1)^s q^C(s,2) at p = oo."""
    if p.is_infinite:
        return s * (s - 1)
    v, kind = poch_val(p, s)
    if kind == "zero":
        return INF
    if kind == "pole":
        raise PoleError(f"({p})_{s} pole")
    return v - s * p.halves


def _recip_floor(p: QParam, s: int):
    if p.is_zero:
        return 0
    v, kind = poch_val(p, s)
    if kind == "pole":
        return INF  # the reciprocal is exactly zero
    if kind == "zero":
        raise PoleError(f"1/({p})_{s} pole")
    return -v


def _poch_floor(p: QParam, s: int):
    if p.is_zero:
        return 0
    v, kind = poch_val(p, s)
    if kind == "zero":
        return INF
    if kind == "pole":
        raise PoleError(f"({p})_{s} pole")
    return v


def _jsum(coeff_fp_fn, floor_fn, cutoff, label):
    """sum_{j >= 0} coeff(j), truncated once floor_fn certifies the tail."""
    out = Series.zero()
    j = 0
    streak = 0
    steps = 0
    cap = 10 * max(cutoff, 1) + 200
    while True:
        steps += 1
        if steps > cap:
            raise TruncationUnreachable(f"{label}: j-sum did not truncate")
        fl = floor_fn(j)
        if fl >= cutoff:
            streak += 1
            if streak >= _STREAK:
                break
            j += 1
            continue
        streak = 0
        fp = coeff_fp_fn(j)
        if fp is not None:
            out = out + fp.series(cutoff)
        j += 1
    return out.truncate(cutoff)


def _times_a_quotient(fp, a: QParam, j: int):
    """Multiply by (a)_j/(a)_oo = 1/(a q^j)_oo.

    The quotient form stays finite at a = 1 (where (a)_j and (a)_oo vanish
    separately).  When a q^j is an exact nonpositive q-power, the vanishing
    factor of (a q^j)_oo is split off into the cancellable denominator
    multiset, where a matching (1 - a q^{2j'})-type zero from the correction
    bracket can absorb it; the nonvanishing rest is inverted lazily.
    """
    arg = a.q_shift(2 * j)
    v, kind = poch_val(arg, INF)
    if kind == "zero":
        t0 = -arg.halves // 2  # (1 - arg q^{t0}) is the vanishing factor
        fp.times_factor(arg, 2 * t0, den=True)
        head = arg
        rest_head_val, _ = poch_val(head, t0)
        tail = arg.q_shift(2 * (t0 + 1))
        rest_tail_val, _ = poch_val(tail, INF)

        def rest_recip(c, h=head, t=tail, n=t0, vh=rest_head_val, vt=rest_tail_val):
            prod = poch(h, n, c + 2 * (vh + vt)) * poch(t, INF, c + 2 * (vh + vt))
            return prod.invert(c)

        fp.times_lazy(rest_recip, -(rest_head_val + rest_tail_val))
        return fp
    fp.times_lazy(lambda c, p=arg: poch_recip(p, INF, c), -v)
    return fp


def _a_quotient_floor(a: QParam, j: int):
    arg = a.q_shift(2 * j)
    v, kind = poch_val(arg, INF)
    if kind == "zero":
        t0 = -arg.halves // 2
        vh, _ = poch_val(arg, t0)
        vt, _ = poch_val(arg.q_shift(2 * (t0 + 1)), INF)
        return -(vh + vt)  # the split-off zero factor cancels a bracket zero
    return -v


def _geom_X(a: QParam, j: int, top: int) -> Series:
    """G_top(X) = 1 + X + ... + X^top with X = a q^{2j}."""
    X = a.q_shift(4 * j)
    out = Series.zero()
    for t in range(top + 1):
        out = out + X.monomial(t)
    return out


def _bracket_all_inf(fp, a: QParam, j: int, top: int):
    """Install 1 - X^{top+1} = (1 - X) G_top(X) in cancellable factored form."""
    fp.times_factor(a, 4 * j)
    fp.times_series(_geom_X(a, j, top))
    return fp


def _bracket_all_inf_floor(a: QParam, j: int, top: int):
    h = a.halves + 4 * j
    return min(0, h) + min(0, top * h)


def _master_validate(k, r, a, c1, c2, bs):
    if not (isinstance(k, int) and isinstance(r, int)):
        raise BadParam("k and r must be integers")
    if k < 2 or not (0 < r <= k):
        raise BadParam("master identity needs integers 0 < r < k")
    if r == k and not (c1.is_infinite and c2.is_infinite):
        raise BadParam("r = k is admitted only in the c1,c2 -> oo limit")
    if len(bs) != 2 * r - 1:
        raise BadParam(f"master identity needs 2r-1 = {2 * r - 1} b-parameters")
    if not a.is_finite:
        raise BadParam("master identity needs finite a")
    for p in list(bs) + [c1, c2]:
        if p.is_zero:
            raise BadParam("b and c parameters must be nonzero (infinite allowed)")


# ---------------------------------------------------------------------------
# master identity, both sides
# ---------------------------------------------------------------------------

def bressoud_lhs(k, r, a, c1, c2, bs, cutoff) -> Series:
    """(k-1)-fold multisum side:

    sum (-1)^{s_1} a^{sum s} q^{s_1^2/2 - s_1/2 + s_r + s_{r+1}^2 + ... + s_{k-1}^2}
        * (b_1)_{s_1}/b_1^{s_1} * prod_{d=2..r} (b_d, b')_{s_d}/(b_d b')^{s_d}
        * prod_{d=2..r} (a/b_d b')_{s_{d-1}-s_d} / (a/b_d, a/b')_{s_{d-1}}
        * (aq/c1c2)_{s_{k-1}} / ((q, aq/c1, aq/c2)_{s_{k-1}})
        / ((q)_{s_1-s_2} ... (q)_{s_{k-2}-s_{k-1}})
    """
    _master_validate(k, r, a, c1, c2, bs)
    depth = k - 1
    virtual = (r == k)  # level r exists only as s_r = 0: its couplings survive
    aq_c1 = a.q_shift(2) / c1
    aq_c2 = a.q_shift(2) / c2
    aq_c1c2 = aq_c1 / c2

    def pair_params(d):
        return bs[d - 1], bs[2 * r - d]

    def expo(d, s):
        # pure q-power; the a^s monomial is applied separately
        e = 0
        if d == 1:
            e += s * s - s
        if d == r:
            e += 2 * s
        if d > r:
            e += 2 * s * s
        return e

    # the (a/b b')_{s_{d-1}-s_d} couplings can have negative valuation; their
    # worst drift is linear in s_{d-1} and is charged to the outer level.
    coupling_drop = [0] * (depth + 2)
    for d in range(2, r + 1):
        p1, p2 = pair_params(d)
        ab = (a / p1) / p2
        if ab.is_finite and ab.halves < 0:
            coupling_drop[min(d - 1, depth)] += ab.halves

    def level_floor(d, s):
        e = expo(d, s) + a.halves * s
        if d == 1:
            e += _pp_floor(bs[0], s)
        elif d <= r:
            p1, p2 = pair_params(d)
            e += _pp_floor(p1, s) + _pp_floor(p2, s)
        if d == depth:
            e += _recip_floor(aq_c1, s) + _recip_floor(aq_c2, s) + _poch_floor(aq_c1c2, s)
        if coupling_drop[d]:
            e += coupling_drop[d] * max(s, 0)
        # the (a/b_d, a/b')_{s_{d-1}} denominators live at the outer level
        if d + 1 <= r and (d + 1 <= depth or virtual):
            q1, q2 = pair_params(d + 1)
            e += _recip_floor(a / q1, s) + _recip_floor(a / q2, s)
        return e

    def term(chain, cut):
        fp = FactorProduct()
        fp.times_scalar(_sign(chain[0]))
        for d in range(1, depth + 1):
            s = chain[d - 1]
            fp.times_param_pow(a, s)
            fp.times_qpow(expo(d, s))
            if d == 1:
                fp_pp(fp, bs[0], s)
            elif d <= r:
                p1, p2 = pair_params(d)
                fp_pp(fp, p1, s)
                fp_pp(fp, p2, s)
                fp.times_poch((a / p1) / p2, chain[d - 2] - s)
                fp.times_poch(a / p1, chain[d - 2], den=True)
                fp.times_poch(a / p2, chain[d - 2], den=True)
            if d >= 2:
                fp.times_poch(_Q, chain[d - 2] - s, den=True)
        s_last = chain[depth - 1]
        if virtual:
            p1, p2 = pair_params(r)
            fp.times_poch((a / p1) / p2, s_last)
            fp.times_poch(a / p1, s_last, den=True)
            fp.times_poch(a / p2, s_last, den=True)
        fp.times_poch(aq_c1c2, s_last)
        fp.times_poch(_Q, s_last, den=True)
        fp.times_poch(aq_c1, s_last, den=True)
        fp.times_poch(aq_c2, s_last, den=True)
        return fp.series(cut)

    spec = MultisumSpec(depth=depth, lower_bound=0, term=term, level_floor=level_floor)
    return multisum_eval(spec, cutoff)


def _bracket(a, r, bs, j):
    """(num, den) of 1 + a^r q^j prod(1-b q^j)/(prod b (1-aq^j/b)); b=oo -> -q^j."""
    num_t = a.monomial(r).times_monomial(1, 2 * j)
    den = Series.one()
    for b in bs:
        if b.is_infinite:
            num_t = num_t.times_monomial(-1, 2 * j)
        else:
            num_t = num_t * (Series.one() - b.monomial().times_monomial(1, 2 * j))
            den = den * (b.monomial() - a.monomial().times_monomial(1, 2 * j))
    if den.is_zero_below_cutoff():
        raise PoleError("a b-parameter collides with a q^j")
    return den + num_t, den


def bressoud_rhs(k, r, a, c1, c2, bs, cutoff) -> Series:
    """j-sum side:

    (a/b_1)_oo/(a)_oo sum_{j>=0} (b..., c1, c2, a)_j (prod b c1 c2)^{-j}
        a^{kj} q^{(k-r)j^2+j} / ((a/b...)_j (aq/c1, aq/c2, q)_j) * bracket(j)
    """
    _master_validate(k, r, a, c1, c2, bs)
    a_b1 = a / bs[0]

    all_inf = all(b.is_infinite for b in bs)

    def coeff(j):
        fp = FactorProduct()
        fp.times_param_pow(a, k * j)
        fp.times_qpow(2 * (k - r) * j * j + 2 * j)
        for b in bs:
            fp_pp(fp, b, j)
            fp.times_poch(a / b, j, den=True)
        for c in (c1, c2):
            fp_pp(fp, c, j)
            fp.times_poch(a.q_shift(2) / c, j, den=True)
        _times_a_quotient(fp, a, j)
        fp.times_poch(_Q, j, den=True)
        if all_inf:
            _bracket_all_inf(fp, a, j, r - 1)
        else:
            num, den = _bracket(a, r, bs, j)
            if num.is_zero_below_cutoff():
                return None
            fp.times_series(num)
            if not (len(den.terms) == 1 and den.val() == 0 and den.coeff(0) == 1):
                fp.times_series_den(den)
        return fp

    def floor(j):
        e = a.halves * k * j + 2 * (k - r) * j * j + 2 * j
        for b in bs:
            e += _pp_floor(b, j) + _recip_floor(a / b, j)
        for c in (c1, c2):
            e += _pp_floor(c, j) + _recip_floor(a.q_shift(2) / c, j)
        e += _a_quotient_floor(a, j)
        if all_inf:
            e += _bracket_all_inf_floor(a, j, r - 1)
        else:
            num, den = _bracket(a, r, bs, j)
            if num.is_zero_below_cutoff():
                return INF
            e += num.val() - den.val()
        return e

    v_ab, kind_ab = poch_val(a_b1, INF)
    if kind_ab == "zero":
        return Series.zero(cutoff)
    body = _jsum(coeff, floor, cutoff - v_ab, "master rhs")
    return product_at(cutoff, [
        (lambda c: poch(a_b1, INF, c), v_ab),
        (lambda c, s=body: s, body.val()),
    ])


# ---------------------------------------------------------------------------
# the F and G function forms
# ---------------------------------------------------------------------------

def bressoud_F(k, r, a, c1, c2, bs, cutoff) -> Series:
    """F = (j-sum side) * (a/b_2, ..., a/b_{2r-1})_oo."""
    parts = [(lambda c: bressoud_rhs(k, r, a, c1, c2, bs, c), 0)]
    for b in bs[1:]:
        ab = a / b
        v, kind = poch_val(ab, INF)
        if kind == "zero":
            return Series.zero(cutoff)
        parts.append(((lambda p: (lambda c: poch(p, INF, c)))(ab), v))
    return product_at(cutoff, parts)


def bressoud_G(k, r, a, c1, c2, bs, cutoff) -> Series:
    """G in its raw printed shape, with (q^{1-s}/b)_s insertions and
    per-chain infinite tails (a q^{s_{d-1}}/b_d, a q^{s_{d-1}}/b')_oo."""
    _master_validate(k, r, a, c1, c2, bs)
    depth = k - 1
    virtual = (r == k)
    aq_c1 = a.q_shift(2) / c1
    aq_c2 = a.q_shift(2) / c2
    aq_c1c2 = aq_c1 / c2

    def pair_params(d):
        return bs[d - 1], bs[2 * r - d]

    def q1s(p: QParam, s: int):
        # (q^{1-s}/p)_s; every factor tends to 1 as p -> oo
        return None if p.is_infinite else (QParam.finite(1, 2 - 2 * s) / p, s)

    def expo(d, s):
        return a.halves * s + 2 * s * s - (2 * s if d <= r - 1 else 0)

    def tail_args(d, s_prev):
        # infinite products attached to the pair at level d, indexed by s_{d-1}
        out = []
        for p in pair_params(d):
            if not p.is_infinite:
                out.append(a.q_shift(2 * s_prev) / p)
        return out

    coupling_drop = [0] * (depth + 2)
    for d in range(2, r + 1):
        p1, p2 = pair_params(d)
        ab = (a / p1) / p2
        if ab.is_finite and ab.halves < 0:
            coupling_drop[d - 1] += ab.halves

    def level_floor(d, s):
        e = expo(d, s)
        if coupling_drop[d]:
            e += coupling_drop[d] * max(s, 0)
        ins = q1s(bs[0], s) if d == 1 else None
        if ins is not None:
            e += _poch_floor(*ins)
        if 2 <= d <= r:
            for p in pair_params(d):
                ins = q1s(p, s)
                if ins is not None:
                    e += _poch_floor(*ins)
        if d == depth:
            e += _recip_floor(aq_c1, s) + _recip_floor(aq_c2, s) + _poch_floor(aq_c1c2, s)
        # tails at the next level are indexed by this level's value and are
        # nondecreasing in it, so their value here is a certified floor
        if d + 1 <= r:
            for arg in tail_args(d + 1, s):
                v, kind = poch_val(arg, INF)
                e = INF if kind == "zero" else e + v
                if e == INF:
                    return INF
        return e

    def term(chain, cut):
        fp = FactorProduct()
        tails = []
        tail_v = 0
        for d in range(2, r + 1):
            for arg in tail_args(d, chain[d - 2]):
                v, kind = poch_val(arg, INF)
                if kind == "zero":
                    return Series.zero()
                tails.append((arg, v))
                tail_v += v
        for d in range(1, depth + 1):
            s = chain[d - 1]
            fp.times_param_pow(a, s)
            fp.times_qpow(2 * s * s - (2 * s if d <= r - 1 else 0))
            if d >= 2:
                fp.times_poch(_Q, chain[d - 2] - s, den=True)
        ins = q1s(bs[0], chain[0])
        if ins is not None:
            fp.times_poch(*ins)
        for d in range(2, r + 1):
            s = chain[d - 1] if d <= depth else 0  # virtual s_r = 0 at r = k
            fp.times_poch((a / pair_params(d)[0]) / pair_params(d)[1],
                          chain[d - 2] - s)
            for p in pair_params(d):
                got = q1s(p, s)
                if got is not None:
                    fp.times_poch(*got)
        s_last = chain[depth - 1]
        fp.times_poch(aq_c1c2, s_last)
        fp.times_poch(_Q, s_last, den=True)
        fp.times_poch(aq_c1, s_last, den=True)
        fp.times_poch(aq_c2, s_last, den=True)
        base_v = fp.val_bound()
        if base_v == INF:
            return Series.zero()
        for arg, v in tails:
            fp.times_series(poch(arg, INF, cut - base_v - (tail_v - v) + max(0, -v)))
        return fp.series(cut)

    spec = MultisumSpec(depth=depth, lower_bound=0, term=term, level_floor=level_floor)
    return multisum_eval(spec, cutoff)
