"""Named multisum-equals-product identities and their evaluation.

Each entry builds its left side as a nested multisum (via ``multisum``) and
its right side as a finite combination of triple products over (q)_oo, read
off the statement being verified.  Half-integer exponents are evaluated
natively on the q^(1/2) lattice; the base-doubling reductions are separate
cross-checks, not the implementation.

All (q)_m-style normalizations live inside the builders, so the series a
caller sees are the stated forms of the identities.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadParam, UnknownIdentity
from .qparams import QParam
from .qfunctions import (FactorProduct, fp_pp, poch, poch_recip, poch_val,
                         qbinom, triple_product)
from .multisum import MultisumSpec, multisum_eval
from .series import INF, Series, first_diff, product_at
from . import bressoud

_Q = QParam.finite(1, 2)


def _sign(k):
    return 1 if k % 2 == 0 else -1


def _neg(h):
    return QParam.finite(-1, h)


def _tp(mod_halves, z_halves, cutoff) -> Series:
    """(Q, q^(z/2), Q/q^(z/2); Q)_oo with Q = q^(mod/2)."""
    return triple_product(QParam.finite(1, z_halves), cutoff, base=mod_halves)


def _over_qinf(body: Series, cutoff) -> Series:
    return product_at(cutoff, [
        (lambda c: poch_recip(_Q, INF, c), 0),
        (lambda c: body, body.val()),
    ])


def _tail_qinf(terms, cutoff) -> Series:
    """sum of (coeff, qpow_halves, mod_halves, z_halves) triple products over (q)_oo."""
    body = Series.zero()
    for coeff, h, mod, z in terms:
        body = body + _tp(mod, z, cutoff - min(0, h)).times_monomial(coeff, h)
    return _over_qinf(body.truncate(cutoff), cutoff)


@dataclass
class EvalReport:
    identity: str
    params: dict
    cutoff: int
    lhs: Series
    rhs: Series
    passed: bool
    compared: float
    first_divergence: dict | None
    runtime_ms: float = 0.0

    def to_json(self):
        out = {
            "identity": self.identity,
            "params": {k: (str(v) if isinstance(v, QParam) else
                           [str(x) for x in v] if isinstance(v, list) else v)
                       for k, v in self.params.items()},
            "cutoff_halves": self.cutoff,
            "passed": self.passed,
            "compared_halves": "inf" if self.compared == INF else self.compared,
            "lhs_terms": self.lhs.to_json(),
            "rhs_terms": self.rhs.to_json(),
            "runtime_ms": round(self.runtime_ms, 3),
        }
        if self.first_divergence is not None:
            fd = dict(self.first_divergence)
            fd["lhs_coeff"] = str(Fraction(fd["lhs_coeff"]))
            fd["rhs_coeff"] = str(Fraction(fd["rhs_coeff"]))
            out["first_divergence"] = fd
        return out


@dataclass(frozen=True)
class IdentityDescriptor:
    name: str
    summary: str
    int_params: tuple = ()        # names of required integer parameters
    qparam_params: tuple = ()     # names of required QParam parameters
    list_params: tuple = ()       # names of QParam-list parameters
    validate: object = None       # params dict -> None, raises BadParam
    lhs: object = None            # (params, cutoff) -> Series
    rhs: object = None            # (params, cutoff) -> Series
    domain_doc: str = ""

    def to_json(self):
        return {
            "name": self.name,
            "summary": self.summary,
            "int_params": list(self.int_params),
            "qparam_params": list(self.qparam_params),
            "list_params": list(self.list_params),
            "domain": self.domain_doc,
        }


CATALOG: dict = {}


def _register(**kw):
    d = IdentityDescriptor(**kw)
    CATALOG[d.name] = d
    return d


def _need(cond, msg):
    if not cond:
        raise BadParam(msg)


# ---------------------------------------------------------------------------
# generic chain builder
# ---------------------------------------------------------------------------

def _chain_spec(depth, lb, expo, extra=None, links=None, tail=None, last_upper=None,
                extra_floor=None):
    """Multisum over s_1 >= ... >= s_depth >= lb.

    expo(d, s): halves of the q-power carried by s_d (certified floor as well).
    extra(fp, chain): install remaining factors on the FactorProduct.
    links: list of base_halves for the denominators (q^b)_{s_d - s_{d+1}},
           one entry per link d = 1..depth-1; default all base q.
    tail(fp, chain): factors indexed by the last variable.
    extra_floor(d, s): certified extra valuation carried by s_d.
    """
    link_bases = links or [2] * (depth - 1)

    def term(chain, cut):
        fp = FactorProduct()
        for d in range(1, depth + 1):
            fp.times_qpow(expo(d, chain[d - 1]))
            if d >= 2:
                fp.times_poch(QParam.finite(1, link_bases[d - 2]),
                              chain[d - 2] - chain[d - 1],
                              base=link_bases[d - 2], den=True)
        if extra is not None:
            extra(fp, chain)
        if tail is not None:
            tail(fp, chain)
        return fp.series(cut)

    def level_floor(d, s):
        e = expo(d, s)
        if extra_floor is not None:
            e += extra_floor(d, s)
        return e

    return MultisumSpec(depth=depth, lower_bound=lb, term=term,
                        level_floor=level_floor, last_upper=last_upper)


# ---------------------------------------------------------------------------
# classical identities
# ---------------------------------------------------------------------------

def _v_rr(p):
    _need(p["i"] in (0, 1), "rr needs i in {0, 1}")


def _lhs_rr(p, cutoff):
    i = p["i"]
    spec = _chain_spec(1, 0, lambda d, s: 2 * (s * s + (1 - i) * s),
                       tail=lambda fp, ch: fp.times_poch(_Q, ch[0], den=True))
    return multisum_eval(spec, cutoff)


def _rhs_rr(p, cutoff):
    i = p["i"]
    parts = []
    for e in (2 - i, 3 + i):
        arg = QParam.finite(1, 2 * e)
        parts.append(((lambda aa: (lambda c: poch_recip(aa, INF, c, base=10)))(arg), 0))
    return product_at(cutoff, parts)


_register(name="rr", summary="two single-sum identities with modulus-5 products",
          int_params=("i",), validate=_v_rr, lhs=_lhs_rr, rhs=_rhs_rr,
          domain_doc="i in {0,1}")


def _v_ag(p):
    _need(p["r"] >= 2, "r >= 2 required")
    _need(1 <= p["i"] <= p["r"], "needs 1 <= i <= r")


def _lhs_ag(p, cutoff):
    r, i = p["r"], p["i"]
    spec = _chain_spec(
        r - 1, 0,
        lambda d, s: 2 * s * s + (2 * s if d >= i else 0),
        tail=lambda fp, ch: fp.times_poch(_Q, ch[-1], den=True))
    return multisum_eval(spec, cutoff)


def _rhs_ag(p, cutoff):
    r, i = p["r"], p["i"]
    return _tail_qinf([(1, 0, 2 * (2 * r + 1), 2 * i)], cutoff)


_register(name="ag", summary="odd-moduli multisum family", int_params=("r", "i"),
          validate=_v_ag, lhs=_lhs_ag, rhs=_rhs_ag, domain_doc="r >= 2, 1 <= i <= r")


def _v_i_upto_rm1(p):
    _need(p["r"] >= 2, "r >= 2 required")
    _need(0 <= p["i"] <= p["r"] - 1, "needs 0 <= i <= r-1")


def _lhs_br33(p, cutoff):
    r, i = p["r"], p["i"]
    spec = _chain_spec(
        r - 1, 0,
        lambda d, s: 2 * s * s - (2 * s if d <= i else 0),
        tail=lambda fp, ch: fp.times_poch(_Q, ch[-1], den=True))
    return multisum_eval(spec, cutoff)


def _rhs_br33(p, cutoff):
    r, i = p["r"], p["i"]
    return _tail_qinf([(1, 0, 2 * (2 * r + 1), 2 * (r - i + k)) for k in range(i + 1)],
                      cutoff)


_register(name="br33", summary="odd-moduli companion with k-indexed tail",
          int_params=("r", "i"), validate=_v_i_upto_rm1, lhs=_lhs_br33, rhs=_rhs_br33,
          domain_doc="r >= 2, 0 <= i <= r-1")


def _v_m_family(p, i_hi_off=0):
    _need(p["m"] >= 0, "m >= 0 required (negative m is not specified)")
    _need(p["r"] >= 2, "r >= 2 required")
    _need(0 <= p["i"] <= p["r"] + i_hi_off, "i out of range")


def _shifted_binom_tail(fp, m, s, base=2, with_csq=False):
    """(-1)^s [m+s over m+2s] with optional q^C(s,2), shared by the m-versions."""
    b = qbinom(m + s, m + 2 * s, base=base)
    if b.is_zero_below_cutoff():
        fp.times_scalar(0)
        return
    fp.times_scalar(_sign(s))
    if with_csq:
        fp.times_qpow(s * (s - 1))
    fp.times_series(b)


def _lhs_mag(p, cutoff):
    m, r, i = p["m"], p["r"], p["i"]

    def expo(d, s):
        e = 2 * s * s + 2 * m * s - (2 * s if d <= i else 0)
        if d == r:
            e += s * (s - 1)
        return e

    spec = _chain_spec(
        r, -(m // 2), expo,
        tail=lambda fp, ch: _shifted_binom_tail(fp, m, ch[-1]),
        last_upper=0)
    return multisum_eval(spec, cutoff)


def _rhs_mag(p, cutoff):
    m, r, i = p["m"], p["r"], p["i"]
    return _tail_qinf(
        [(1, 2 * m * k, 2 * (2 * r + 1), 2 * ((m + 1) * r - i + 2 * k))
         for k in range(i + 1)], cutoff)


_register(name="mag", summary="m-interpolated odd-moduli family",
          int_params=("m", "r", "i"), validate=_v_m_family, lhs=_lhs_mag,
          rhs=_rhs_mag, domain_doc="m >= 0, r >= 2, 0 <= i <= r")


def _v_beven(p):
    _need(p["r"] >= 2, "r >= 2 required")
    _need(1 <= p["i"] <= p["r"], "needs 1 <= i <= r")


def _lhs_beven(p, cutoff):
    r, i = p["r"], p["i"]
    q2 = QParam.finite(1, 4)
    spec = _chain_spec(
        r - 1, 0,
        lambda d, s: 2 * s * s + (2 * s if d >= i else 0),
        tail=lambda fp, ch: fp.times_poch(q2, ch[-1], base=4, den=True))
    return multisum_eval(spec, cutoff)


def _rhs_beven(p, cutoff):
    r, i = p["r"], p["i"]
    return _tail_qinf([(1, 0, 4 * r, 2 * i)], cutoff)


_register(name="bressoud_even", summary="even-moduli multisum family",
          int_params=("r", "i"), validate=_v_beven, lhs=_lhs_beven, rhs=_rhs_beven,
          domain_doc="r >= 2, 1 <= i <= r")


def _lhs_br35(p, cutoff):
    r, i = p["r"], p["i"]
    q2 = QParam.finite(1, 4)
    spec = _chain_spec(
        r - 1, 0,
        lambda d, s: 2 * s * s - (2 * s if d <= i else 0),
        tail=lambda fp, ch: fp.times_poch(q2, ch[-1], base=4, den=True))
    return multisum_eval(spec, cutoff)


def _rhs_br35(p, cutoff):
    r, i = p["r"], p["i"]
    return _tail_qinf([(1, 0, 4 * r, 2 * (r - i + 2 * k)) for k in range(i + 1)],
                      cutoff)


_register(name="br35", summary="even-moduli companion with k-indexed tail",
          int_params=("r", "i"), validate=_v_i_upto_rm1, lhs=_lhs_br35, rhs=_rhs_br35,
          domain_doc="r >= 2, 0 <= i <= r-1")


def _lhs_mb(p, cutoff):
    m, r, i = p["m"], p["r"], p["i"]
    links = [2] * (r - 2) + [4]

    def expo(d, s):
        return 2 * s * s + (2 * m * s if d <= r - 1 else 0) - (2 * s if d <= i else 0)

    def tail(fp, ch):
        s = ch[-1]
        fp.times_poch(_neg(2), m + 2 * s - 1)
        _shifted_binom_tail(fp, m, s, base=4)

    spec = _chain_spec(r, -(m // 2), expo, links=links, tail=tail, last_upper=0)
    return multisum_eval(spec, cutoff)


def _rhs_mb(p, cutoff):
    m, r, i = p["m"], p["r"], p["i"]
    if m % 2 == 0:
        mm = m // 2
        terms = [(Fraction(_sign(l), 2), 4 * mm * k + 4 * mm * l, 4 * r,
                  2 * (2 * mm * (r - 1) + r - i + 2 * k + 2 * l))
                 for k in range(i + 1) for l in range(2 * mm + 1)]
        return _tail_qinf(terms, cutoff)
    mm = (m - 1) // 2
    pre = 2 * ((2 - r) * mm * mm + (1 + i - r) * mm)
    terms = [(_sign(mm), pre + 4 * l, 4 * r, 2 * (2 * r - 2 * mm - 1 - i + 4 * l))
             for l in range(mm + 1)]
    return _tail_qinf(terms, cutoff)


def mb_rhs_odd_i(p, cutoff):
    """The single closed form valid for odd i and every m >= 0."""
    m, r, i = p["m"], p["r"], p["i"]
    _need(i % 2 == 1, "closed form only for odd i")
    terms = [(1, 4 * m * k, 4 * r, 2 * (m * (r - 1) + r - i + 4 * k))
             for k in range((i - 1) // 2 + 1)]
    return _tail_qinf(terms, cutoff)


_register(name="mb", summary="m-interpolated even-moduli family (parity-split tail)",
          int_params=("m", "r", "i"),
          validate=lambda p: _v_m_family(p, i_hi_off=-1), lhs=_lhs_mb, rhs=_rhs_mb,
          domain_doc="m >= 0, r >= 2, 0 <= i <= r-1 (the i = r edge diverges)")


def _lhs_fij0(p, cutoff):
    r, i = p["r"], p["i"]
    q2 = QParam.finite(1, 4)

    def expo(d, s):
        e = 2 * s * s + (2 * s if d >= i else 0)
        if d == r - 1:
            e += 2 * s
        return e

    def tail(fp, ch):
        fp.times_poch(q2, ch[-1], base=4, den=True)
        fp.times_series(Series({0: 1, 2: 1}))  # the (1+q) prefactor

    spec = _chain_spec(r - 1, 0, expo, tail=tail)
    return multisum_eval(spec, cutoff)


def _rhs_fij0(p, cutoff):
    r, i = p["r"], p["i"]
    return _tail_qinf([(1, 0, 4 * r, 2 * (2 * r - i - 1)),
                       (1, 2, 4 * r, 2 * (2 * r - i + 1))], cutoff)


_register(name="fij0", summary="doubled even-moduli companion, two-product tail",
          int_params=("r", "i"), validate=_v_beven, lhs=_lhs_fij0, rhs=_rhs_fij0,
          domain_doc="r >= 2, 1 <= i <= r")


def _lhs_fij(p, cutoff):
    r, i = p["r"], p["i"]
    q2 = QParam.finite(1, 4)

    def expo(d, s):
        e = 2 * s * s - (2 * s if d <= i else 0)
        if d == r - 1:
            e += 2 * s
        return e

    spec = _chain_spec(r - 1, 0, expo,
                       tail=lambda fp, ch: fp.times_poch(q2, ch[-1], base=4, den=True))
    return multisum_eval(spec, cutoff)


def _rhs_fij(p, cutoff):
    r, i = p["r"], p["i"]
    return _tail_qinf([(1, 0, 4 * r, 2 * (r - i + 2 * k - 1)) for k in range(i + 1)],
                      cutoff)


_register(name="fij", summary="even-moduli companion with shifted tail products",
          int_params=("r", "i"), validate=_v_i_upto_rm1, lhs=_lhs_fij, rhs=_rhs_fij,
          domain_doc="r >= 2, 0 <= i <= r-1")


def _lhs_mfij(p, cutoff):
    m, r, i = p["m"], p["r"], p["i"]
    links = [2] * (r - 2) + [4]

    def expo(d, s):
        e = 2 * s * s + (2 * m * s if d <= r - 1 else 0) - (2 * s if d <= i else 0)
        if d == r - 1:
            e += 2 * s
        if d == r:
            e -= 4 * s
        return e

    def tail(fp, ch):
        s = ch[-1]
        fp.times_poch(_neg(2), m + 2 * s)
        _shifted_binom_tail(fp, m, s, base=4)

    spec = _chain_spec(r, -(m // 2), expo, links=links, tail=tail, last_upper=0)
    return multisum_eval(spec, cutoff)


def _rhs_mfij(p, cutoff):
    m, r, i = p["m"], p["r"], p["i"]
    return _tail_qinf(
        [(1, 2 * m * k, 4 * r, 2 * ((m + 1) * (r - 1) - i + 2 * k))
         for k in range(i + 1)], cutoff)


_register(name="mfij", summary="m-interpolated doubled-companion family",
          int_params=("m", "r", "i"),
          validate=lambda p: _v_m_family(p, i_hi_off=-1), lhs=_lhs_mfij,
          rhs=_rhs_mfij,
          domain_doc="m >= 0, r >= 2, 0 <= i <= r-1 (the i = r edge diverges)")


def _v_gg(p):
    _need(p["i"] in (0, 1), "gg needs i in {0, 1}")


def _lhs_gg(p, cutoff):
    i = p["i"]
    q2 = QParam.finite(1, 4)

    def tail(fp, ch):
        s = ch[0]
        fp.times_poch(_neg(2), s, base=4)
        fp.times_poch(q2, s, base=4, den=True)

    spec = _chain_spec(1, 0, lambda d, s: 2 * (s * s + 2 * (1 - i) * s), tail=tail)
    return multisum_eval(spec, cutoff)


def _rhs_gg(p, cutoff):
    i = p["i"]
    parts = []
    for e in (3 - 2 * i, 4, 5 + 2 * i):
        arg = QParam.finite(1, 2 * e)
        parts.append(((lambda aa: (lambda c: poch_recip(aa, INF, c, base=16)))(arg), 0))
    return product_at(cutoff, parts)


_register(name="gg", summary="single-sum modulus-8 pair", int_params=("i",),
          validate=_v_gg, lhs=_lhs_gg, rhs=_rhs_gg, domain_doc="i in {0,1}")


# ---------------------------------------------------------------------------
# the doubled-base quadruple and their m-versions
# ---------------------------------------------------------------------------

def _lhs_b36(p, cutoff):
    r, i = p["r"], p["i"]
    q2 = QParam.finite(1, 4)

    def tail(fp, ch):
        s = ch[-1]
        fp.times_poch(q2, s, base=4, den=True)

    def extra(fp, ch):
        s = ch[-1]
        arg = _neg(2 + 4 * s)  # -q^{1+2 s_{r-1}} in base q^2
        v, kind = poch_val(arg, INF, base=4)
        fp.times_series(poch(arg, INF, cutoff + max(0, -v) + 4, base=4))

    spec = _chain_spec(r - 1, 0,
                       lambda d, s: 4 * (s * s - (s if d <= i else 0)),
                       links=[4] * (r - 2), extra=extra, tail=tail)
    return multisum_eval(spec, cutoff)


def _rhs_b36(p, cutoff):
    r, i = p["r"], p["i"]
    return _b3x_rhs([(1, 0, 8 * r, 2 * (2 * r - 2 * i + 2 * k - 1))
                     for k in range(i + 1)], cutoff)


def _b3x_rhs(terms, cutoff):
    """(-q;q^2)_oo/(q^2;q^2)_oo times a finite sum of triple products."""
    body = Series.zero()
    for coeff, h, mod, z in terms:
        body = body + _tp(mod, z, cutoff - min(0, h)).times_monomial(coeff, h)
    body = body.truncate(cutoff)
    v1, _ = poch_val(_neg(2), INF, base=4)
    return product_at(cutoff, [
        (lambda c: poch(_neg(2), INF, c, base=4), v1),
        (lambda c: poch_recip(QParam.finite(1, 4), INF, c, base=4), 0),
        (lambda c: body, body.val()),
    ])


_register(name="b36", summary="doubled-base modulus-4r family, k-tail",
          int_params=("r", "i"), validate=_v_i_upto_rm1, lhs=_lhs_b36, rhs=_rhs_b36,
          domain_doc="r >= 2, 0 <= i <= r-1")


def _lhs_b37(p, cutoff):
    r, i = p["r"], p["i"]
    q2 = QParam.finite(1, 4)

    def extra(fp, ch):
        s = ch[-1]
        arg = _neg(6 + 4 * s)  # -q^{3+2 s_{r-1}} in base q^2
        v, kind = poch_val(arg, INF, base=4)
        fp.times_series(poch(arg, INF, cutoff + max(0, -v) + 4, base=4))

    spec = _chain_spec(r - 1, 0,
                       lambda d, s: 4 * (s * s + (s if d >= i + 1 else 0)),
                       links=[4] * (r - 2), extra=extra,
                       tail=lambda fp, ch: fp.times_poch(q2, ch[-1], base=4, den=True))
    return multisum_eval(spec, cutoff)


def _rhs_b37(p, cutoff):
    r, i = p["r"], p["i"]
    return _b3x_rhs([(_sign(k), 2 * k, 8 * r, 2 * (2 * i + 1 - 2 * k))
                     for k in range(i + 1)], cutoff)


_register(name="b37", summary="doubled-base modulus-4r family, signed k-tail",
          int_params=("r", "i"), validate=_v_i_upto_rm1, lhs=_lhs_b37, rhs=_rhs_b37,
          domain_doc="r >= 2, 0 <= i <= r-1")


def _lhs_b38(p, cutoff, last_base=4):
    r, i = p["r"], p["i"]

    def extra(fp, ch):
        s1 = ch[0]
        fp.times_poch(_neg(2 - 4 * s1), s1, base=4)  # (-q^{1-2s_1};q^2)_{s_1}

    def extra_floor(d, s):
        # the insertion at s_1 dips below valuation 0 (exponents 1-2s_1, ...)
        if d == 1:
            v, _ = poch_val(_neg(2 - 4 * s), s, base=4)
            return v
        return 0

    spec = _chain_spec(r - 1, 0,
                       lambda d, s: 4 * (s * s + (s if d >= i + 1 else 0)),
                       links=[4] * (r - 2), extra=extra, extra_floor=extra_floor,
                       tail=lambda fp, ch: fp.times_poch(
                           QParam.finite(1, last_base), ch[-1], base=last_base,
                           den=True))
    return multisum_eval(spec, cutoff)


def _rhs_b38(p, cutoff):
    r, i = p["r"], p["i"]
    return _b3x_rhs([(1, 0, 8 * r, 2 * (2 * i + 1))], cutoff)


_register(name="b38", summary="doubled-base single-product family",
          int_params=("r", "i"), validate=_v_i_upto_rm1, lhs=_lhs_b38, rhs=_rhs_b38,
          domain_doc="r >= 2, 0 <= i <= r-1")


def _lhs_b39(p, cutoff):
    return _lhs_b38(p, cutoff, last_base=8)


def _rhs_b39(p, cutoff):
    r, i = p["r"], p["i"]
    return _b3x_rhs([(1, 0, 8 * r - 4, 2 * (2 * i + 1))], cutoff)


_register(name="b39", summary="doubled-base single-product family, shifted modulus",
          int_params=("r", "i"), validate=_v_i_upto_rm1, lhs=_lhs_b39, rhs=_rhs_b39,
          domain_doc="r >= 2, 0 <= i <= r-1")


def _lhs_mbr36(p, cutoff):
    m, r, i = p["m"], p["r"], p["i"]

    def expo(d, s):
        e = 2 * s * s + 2 * m * s - (2 * s if d <= i else 0)
        if d == r:
            e -= (m + 1) * s
        return e

    def extra(fp, ch):
        fp.times_poch(_neg(m + 1), ch[-1])
        if r >= 2:
            fp.times_poch(_neg(m + 1), ch[-2], den=True)

    spec = _chain_spec(r, -(m // 2), expo, extra=extra,
                       tail=lambda fp, ch: _shifted_binom_tail(fp, m, ch[-1]),
                       last_upper=0)
    return multisum_eval(spec, cutoff)


def _rhs_mbr36(p, cutoff):
    m, r, i = p["m"], p["r"], p["i"]
    return _tail_qinf(
        [(1, 2 * m * k, 4 * r, 2 * ((m + 1) * r - i + 2 * k) - (m + 1))
         for k in range(i + 1)], cutoff)


_register(name="mbr36", summary="half-lattice m-version, even and doubled pair",
          int_params=("m", "r", "i"),
          validate=lambda p: _v_m_family(p, i_hi_off=-1), lhs=_lhs_mbr36,
          rhs=_rhs_mbr36,
          domain_doc="m >= 0, r >= 2, 0 <= i <= r-1 (the i = r edge diverges)")


def _lhs_mbr37(p, cutoff):
    m, r, i = p["m"], p["r"], p["i"]

    def expo(d, s):
        e = 2 * s * s - (2 * s if d <= i else 0)
        if d <= r - 1:
            e += 2 * m * s
        if d == r:
            e += m * s
        return e

    def extra(fp, ch):
        fp.times_poch(_neg(m), ch[-1])
        if r >= 2:
            fp.times_poch(_neg(2 + m), ch[-2], den=True)

    spec = _chain_spec(r, -(m // 2), expo, extra=extra,
                       tail=lambda fp, ch: _shifted_binom_tail(fp, m, ch[-1]),
                       last_upper=0)
    return multisum_eval(spec, cutoff)


def _rhs_mbr37(p, cutoff):
    m, r, i = p["m"], p["r"], p["i"]
    if m % 2 == 0:
        mm = m // 2
        one_plus = Series.one() + Series.monomial(1, 2 * mm)  # 1 + q^m
        terms = [(Fraction(_sign(l), 2), 4 * mm * k + 2 * mm * l, 4 * r,
                  2 * (2 * mm * r + r - i - mm + 2 * k + l))
                 for k in range(i + 1) for l in range(2 * mm + 1)]
    else:
        mm = (m - 1) // 2
        one_plus = Series.one() + Series.monomial(1, 2 * mm + 1)  # 1 + q^{(2m+1)/2}
        pre = 2 * (1 - r) * mm * mm + (1 + 2 * i - 2 * r) * mm
        terms = []
        for k in range(i + 1):
            for l in range(mm + 1):
                h = pre + 2 * k + 2 * l
                terms.append((Fraction(_sign(mm), 2), h, 4 * r,
                              2 * (2 * r - i - mm + 2 * k + 2 * l) - 1))
                terms.append((Fraction(-_sign(mm), 2), h + 1, 4 * r,
                              2 * (2 * r - i - mm + 2 * k + 2 * l) + 1))
    body = _tail_qinf(terms, cutoff)
    return product_at(cutoff, [
        (lambda c: one_plus, 0),
        (lambda c: body, body.val()),
    ])


_register(name="mbr37", summary="half-lattice m-version with parity-split tail",
          int_params=("m", "r", "i"),
          validate=lambda p: _v_m_family(p, i_hi_off=-1), lhs=_lhs_mbr37,
          rhs=_rhs_mbr37, domain_doc="m >= 0, r >= 2, 0 <= i <= r-1")


def _mbr89_expo(m, i, r):
    # the a^{s_r} weight of the underlying chain keeps its full m s_r part at
    # the last level; the two-parameter refinement halves only the s_1 weight
    def expo(d, s):
        if d == 1:
            e = s * s + m * s + s - 2 * s * (1 if 1 <= i else 0)
        else:
            e = 2 * s * s + 2 * m * s - (2 * s if d <= i else 0)
        return e

    return expo


def _lhs_mbr38(p, cutoff):
    m, r, i = p["m"], p["r"], p["i"]

    def extra(fp, ch):
        fp.times_poch(_neg(m), ch[0])

    spec = _chain_spec(r, -(m // 2), _mbr89_expo(m, i, r), extra=extra,
                       tail=lambda fp, ch: _shifted_binom_tail(fp, m, ch[-1],
                                                               with_csq=True),
                       last_upper=0)
    return multisum_eval(spec, cutoff)


def _rhs_mbr38(p, cutoff):
    m, r, i = p["m"], p["r"], p["i"]
    if m % 2 == 0:
        mm = m // 2
        terms = [(Fraction(_sign(l), 2), 2 * mm * (k + l), 4 * r,
                  2 * (2 * mm * r + r - i - mm + k + l))
                 for k in range(2 * i + 1) for l in range(2 * mm + 1)]
        pre = _neg(2 * mm)
    else:
        mm = (m - 1) // 2
        h0 = 2 * (1 - r) * mm * mm + (1 + 2 * i - 2 * r) * mm
        terms = [(_sign(mm), h0 + 2 * l, 4 * r,
                  2 * (2 * r - i - mm + 2 * l) - 1) for l in range(mm + 1)]
        pre = _neg(2 * mm + 1)
    body = _tail_qinf(terms, cutoff)
    v1, _ = poch_val(pre, INF)
    return product_at(cutoff, [
        (lambda c: poch(pre, INF, c), v1),
        (lambda c: body, body.val()),
    ])


_register(name="mbr38", summary="half-lattice m-version with 2i-tail",
          int_params=("m", "r", "i"),
          validate=lambda p: _v_m_family(p, i_hi_off=-1), lhs=_lhs_mbr38,
          rhs=_rhs_mbr38, domain_doc="m >= 0, r >= 2, 0 <= i <= r-1")


def _lhs_mbr39(p, cutoff):
    m, r, i = p["m"], p["r"], p["i"]

    def expo(d, s):
        e = _mbr89_expo(m, i, r)(d, s)
        if d == r:
            e -= (m + 1) * s
        return e

    def extra(fp, ch):
        fp.times_poch(_neg(m), ch[0])
        fp.times_poch(_neg(m + 1), ch[-1])
        if r >= 2:
            fp.times_poch(_neg(m + 1), ch[-2], den=True)

    spec = _chain_spec(r, -(m // 2), expo, extra=extra,
                       tail=lambda fp, ch: _shifted_binom_tail(fp, m, ch[-1]),
                       last_upper=0)
    return multisum_eval(spec, cutoff)


def _rhs_mbr39(p, cutoff):
    m, r, i = p["m"], p["r"], p["i"]
    if m % 2 == 0:
        mm = m // 2
        terms = [(Fraction(_sign(l), 2), 2 * mm * (k + l), 4 * r - 2,
                  2 * (2 * mm * r + r - i - 2 * mm + k + l) - 1)
                 for k in range(2 * i + 1) for l in range(2 * mm + 1)]
        pre = _neg(2 * mm)
    else:
        mm = (m - 1) // 2
        h0 = (3 - 2 * r) * mm * mm + 2 * (1 + i - r) * mm
        terms = [(_sign(mm), h0 + 2 * l, 4 * r - 2,
                  2 * (2 * r - i - mm + 2 * l) - 3) for l in range(mm + 1)]
        pre = _neg(2 * mm + 1)
    body = _tail_qinf(terms, cutoff)
    v1, _ = poch_val(pre, INF)
    return product_at(cutoff, [
        (lambda c: poch(pre, INF, c), v1),
        (lambda c: body, body.val()),
    ])


_register(name="mbr39", summary="half-lattice m-version, shifted modulus",
          int_params=("m", "r", "i"),
          validate=lambda p: _v_m_family(p, i_hi_off=-1), lhs=_lhs_mbr39,
          rhs=_rhs_mbr39, domain_doc="m >= 0, r >= 2, 0 <= i <= r-1")


def _lhs_new1(p, cutoff, with_half_tail=False):
    r, i = p["r"], p["i"]

    def expo(d, s):
        if d == 1:
            return s * s + s - 2 * s * (1 if 1 <= i else 0)
        return 2 * s * s - (2 * s if d <= i else 0)

    def extra(fp, ch):
        fp.times_poch(_neg(0), ch[0])
        if with_half_tail:
            fp.times_poch(_neg(1), ch[-1], den=True)

    spec = _chain_spec(r - 1, 0, expo, extra=extra,
                       tail=lambda fp, ch: fp.times_poch(_Q, ch[-1], den=True))
    return multisum_eval(spec, cutoff)


def _rhs_new1(p, cutoff):
    r, i = p["r"], p["i"]
    terms = [(1, 0, 4 * r, 2 * (r - i + k)) for k in range(2 * i + 1)]
    body = _tail_qinf(terms, cutoff)
    v1, _ = poch_val(_neg(2), INF)
    return product_at(cutoff, [
        (lambda c: poch(_neg(2), INF, c), v1),
        (lambda c: body, body.val()),
    ])


_register(name="new1", summary="companion with (-1)_{s_1} insertion",
          int_params=("r", "i"), validate=_v_i_upto_rm1, lhs=_lhs_new1,
          rhs=_rhs_new1, domain_doc="r >= 2, 0 <= i <= r-1")


def _lhs_new2(p, cutoff):
    return _lhs_new1(p, cutoff, with_half_tail=True)


def _rhs_new2(p, cutoff):
    r, i = p["r"], p["i"]
    terms = [(1, 0, 4 * r - 2, 2 * (r - i + k) - 1) for k in range(2 * i + 1)]
    body = _tail_qinf(terms, cutoff)
    v1, _ = poch_val(_neg(2), INF)
    return product_at(cutoff, [
        (lambda c: poch(_neg(2), INF, c), v1),
        (lambda c: body, body.val()),
    ])


_register(name="new2", summary="half-lattice companion with (-1)_{s_1} insertion",
          int_params=("r", "i"), validate=_v_i_upto_rm1, lhs=_lhs_new2,
          rhs=_rhs_new2, domain_doc="r >= 2, 0 <= i <= r-1")


# ---------------------------------------------------------------------------
# master identity and the lattice-route identities
# ---------------------------------------------------------------------------

def _v_master(p):
    bressoud._master_validate(p["k"], p["r"], p["a"], p["c1"], p["c2"], p["bs"])


def _lhs_master(p, cutoff):
    return bressoud.bressoud_lhs(p["k"], p["r"], p["a"], p["c1"], p["c2"],
                                 p["bs"], cutoff)


def _rhs_master(p, cutoff):
    return bressoud.bressoud_rhs(p["k"], p["r"], p["a"], p["c1"], p["c2"],
                                 p["bs"], cutoff)


_register(name="bressoud_master", summary="multi-parameter master identity",
          int_params=("k", "r"), qparam_params=("a", "c1", "c2"),
          list_params=("bs",), validate=_v_master, lhs=_lhs_master,
          rhs=_rhs_master,
          domain_doc="0 < r < k (r = k with infinite c1, c2); len(bs) = 2r-1")


def _v_lambda1(p):
    _need(p["r"] >= 2, "r >= 2 required")
    _need(1 <= p["i"] <= p["r"], "needs 1 <= i <= r")
    for name in ("b1", "c1", "c2", "a"):
        _need(not p[name].is_zero, f"{name} must be nonzero")
    _need(p["a"].is_finite, "a must be finite")


def _lhs_lambda1(p, cutoff):
    r, i = p["r"], p["i"]
    a, b1, c1, c2 = p["a"], p["b1"], p["c1"], p["c2"]
    aq_c1 = a.q_shift(2) / c1
    aq_c2 = a.q_shift(2) / c2
    aq_c1c2 = aq_c1 / c2

    def expo(d, s):
        if d == 1:
            e = s * s - s
            if i == 1:
                e += 2 * s  # collapsed +s_i weight when the insertion level is first
            return e
        e = 2 * s * s - (2 * s if d <= i - 1 else 0)
        return e

    def extra(fp, ch):
        fp.times_scalar(_sign(ch[0]))
        fp.times_param_pow(a, sum(ch))
        fp_pp(fp, b1, ch[0])

    def tail(fp, ch):
        s = ch[-1]
        fp.times_poch(_Q, s, den=True)
        fp.times_poch(aq_c1c2, s)
        fp.times_poch(aq_c1, s, den=True)
        fp.times_poch(aq_c2, s, den=True)

    def extra_floor(d, s):
        e = a.halves * s
        if d == 1:
            e += bressoud._pp_floor(b1, s)
        if d == r - 1:
            e += (bressoud._recip_floor(aq_c1, s) + bressoud._recip_floor(aq_c2, s)
                  + bressoud._poch_floor(aq_c1c2, s))
        return e

    spec = _chain_spec(r - 1, 0, expo, extra=extra, tail=tail,
                       extra_floor=extra_floor)
    return multisum_eval(spec, cutoff)


def _rhs_lambda1(p, cutoff):
    r, i = p["r"], p["i"]
    a, b1, c1, c2 = p["a"], p["b1"], p["c1"], p["c2"]
    a_b1 = a / b1

    def coeff(j):
        fp = FactorProduct()
        fp.times_param_pow(a, r * j)
        fp.times_qpow(2 * (r - 1) * j * j + 2 * (2 - i) * j)
        fp_pp(fp, b1, j)
        fp.times_poch(a_b1, j, den=True)
        for c in (c1, c2):
            fp_pp(fp, c, j)
            fp.times_poch(a.q_shift(2) / c, j, den=True)
        bressoud._times_a_quotient(fp, a, j)
        fp.times_poch(_Q, j, den=True)
        # the bracket is 1 + a^i q^{(2i-1)j} (1-b1 q^j)/(b1 (1-a q^j/b1));
        # at b1 = oo it collapses to 1 - X^i with X = a q^{2j}
        if b1.is_infinite:
            bressoud._bracket_all_inf(fp, a, j, i - 1)
        else:
            t = a.monomial(i).times_monomial(1, 2 * (2 * i - 1) * j)
            den = b1.monomial() - a.monomial().times_monomial(1, 2 * j)
            num = den + t * (Series.one() - b1.monomial().times_monomial(1, 2 * j))
            if num.is_zero_below_cutoff():
                return None
            fp.times_series(num)
            fp.times_series_den(den)
        return fp

    def floor(j):
        e = a.halves * r * j + 2 * (r - 1) * j * j + 2 * (2 - i) * j
        e += bressoud._pp_floor(b1, j) + bressoud._recip_floor(a_b1, j)
        for c in (c1, c2):
            e += bressoud._pp_floor(c, j)
            e += bressoud._recip_floor(a.q_shift(2) / c, j)
        e += bressoud._a_quotient_floor(a, j)
        if b1.is_infinite:
            e += bressoud._bracket_all_inf_floor(a, j, i - 1)
        else:
            t_val = (a.halves * i + 2 * (2 * i - 1) * j
                     + min(0, b1.halves + 2 * j))
            den_val = min(b1.halves, a.halves + 2 * j)
            e += min(den_val, t_val) - den_val
        return e

    v_ab, kind_ab = poch_val(a_b1, INF)
    if kind_ab == "zero":
        return Series.zero(cutoff)
    body = bressoud._jsum(coeff, floor, cutoff - v_ab, "lambda1 rhs")
    return product_at(cutoff, [
        (lambda c: poch(a_b1, INF, c), v_ab),
        (lambda c: body, body.val()),
    ])


_register(name="lambda1", summary="one-insertion lattice-route identity",
          int_params=("r", "i"), qparam_params=("a", "b1", "c1", "c2"),
          validate=_v_lambda1, lhs=_lhs_lambda1, rhs=_rhs_lambda1,
          domain_doc="r >= 2, 1 <= i <= r; b1, c1, c2 nonzero (infinite allowed)")


def _v_latroute(p):
    _need(p["r"] >= 2, "r >= 2 required")
    _need(1 <= p["i"] <= p["r"] - 1, "needs 1 <= i <= r-1")
    _need(p["a"].is_finite, "a must be finite")
    _need(len(p["rhos"]) == p["i"] - 1 and len(p["sigmas"]) == p["i"] - 1,
          "needs i-1 inner rho/sigma parameters")


def _latroute_lhs(p, cutoff, twisted):
    r, i = p["r"], p["i"]
    a, rho1, rho, sigma = p["a"], p["rho1"], p["rho"], p["sigma"]
    rhos, sigmas = p["rhos"], p["sigmas"]
    aq_r = a.q_shift(2) / rho
    aq_s = a.q_shift(2) / sigma
    aq_rs = aq_r / sigma

    def expo(d, s):
        e = 0
        if d == 1:
            e += s * s - s
        elif d > i:
            e += 2 * s * s
        if twisted and d == i:
            e += 2 * s
        return e

    def extra(fp, ch):
        fp.times_scalar(_sign(ch[0]))
        fp.times_param_pow(a, sum(ch))
        fp_pp(fp, rho1, ch[0])
        for d in range(2, i + 1):
            rd, sd = rhos[d - 2], sigmas[d - 2]
            s = ch[d - 1]
            fp_pp(fp, rd, s)
            fp_pp(fp, sd, s)
            fp.times_poch((a / rd) / sd, ch[d - 2] - s)
            fp.times_poch(a / rd, ch[d - 2], den=True)
            fp.times_poch(a / sd, ch[d - 2], den=True)

    def tail(fp, ch):
        s = ch[-1]
        fp.times_poch(_Q, s, den=True)
        fp.times_poch(aq_rs, s)
        fp.times_poch(aq_r, s, den=True)
        fp.times_poch(aq_s, s, den=True)

    def extra_floor(d, s):
        e = a.halves * s
        if d == 1:
            e += bressoud._pp_floor(rho1, s)
        elif d <= i:
            rd, sd = rhos[d - 2], sigmas[d - 2]
            e += bressoud._pp_floor(rd, s) + bressoud._pp_floor(sd, s)
        if d + 1 <= i:
            rd, sd = rhos[d - 1], sigmas[d - 1]
            e += (bressoud._recip_floor(a / rd, s)
                  + bressoud._recip_floor(a / sd, s))
            ab = (a / rd) / sd
            if ab.is_finite and ab.halves < 0:
                e += ab.halves * max(s, 0)
        if d == r - 1:
            e += (bressoud._recip_floor(aq_r, s) + bressoud._recip_floor(aq_s, s)
                  + bressoud._poch_floor(aq_rs, s))
        return e

    spec = _chain_spec(r - 1, 0, expo, extra=extra, tail=tail,
                       extra_floor=extra_floor)
    return multisum_eval(spec, cutoff)


def _latroute_rhs(p, cutoff, twisted):
    r, i = p["r"], p["i"]
    a, rho1, rho, sigma = p["a"], p["rho1"], p["rho"], p["sigma"]
    block = [rho1] + [x for pair in zip(p["rhos"], p["sigmas"]) for x in pair]
    a_r1 = a / rho1

    all_inf = all(t.is_infinite for t in block)

    def coeff(j):
        fp = FactorProduct()
        fp.times_param_pow(a, r * j)
        if twisted:
            fp.times_qpow(2 * (r - i) * j * j + 2 * j)
        else:
            fp.times_qpow(2 * (r - i) * j * j)
        for t in block:
            fp_pp(fp, t, j)
            fp.times_poch(a / t, j, den=True)
        for c in (rho, sigma):
            fp_pp(fp, c, j)
            fp.times_poch(a.q_shift(2) / c, j, den=True)
        bressoud._times_a_quotient(fp, a, j)
        fp.times_poch(_Q, j, den=True)
        if all_inf:
            bressoud._bracket_all_inf(fp, a, j, i - 1 if twisted else i)
            return fp
        if twisted:
            power = a.monomial(i).times_monomial(1, 2 * j)
        else:
            power = a.monomial(i + 1).times_monomial(1, 6 * j)
        num_t = power
        den = Series.one()
        for t in block:
            if t.is_infinite:
                num_t = num_t.times_monomial(-1, 2 * j)
            else:
                num_t = num_t * (Series.one() - t.monomial().times_monomial(1, 2 * j))
                den = den * (t.monomial() - a.monomial().times_monomial(1, 2 * j))
        num = den + num_t
        if num.is_zero_below_cutoff():
            return None
        fp.times_series(num)
        if not (len(den.terms) == 1 and den.val() == 0 and den.coeff(0) == 1):
            fp.times_series_den(den)
        return fp

    def floor(j):
        e = a.halves * r * j + 2 * (r - i) * j * j + (2 * j if twisted else 0)
        for t in block:
            e += bressoud._pp_floor(t, j) + bressoud._recip_floor(a / t, j)
        for c in (rho, sigma):
            e += bressoud._pp_floor(c, j)
            e += bressoud._recip_floor(a.q_shift(2) / c, j)
        e += bressoud._a_quotient_floor(a, j)
        if all_inf:
            return e + bressoud._bracket_all_inf_floor(a, j, i - 1 if twisted else i)
        # bracket numerator valuation >= min(val(den), val(a-power part))
        if twisted:
            t_val = a.halves * i + 2 * j
        else:
            t_val = a.halves * (i + 1) + 6 * j
        den_val = 0
        for t in block:
            if t.is_infinite:
                t_val += 2 * j
            else:
                t_val += min(0, t.halves + 2 * j)
                den_val += min(t.halves, a.halves + 2 * j)
        return e + min(den_val, t_val) - den_val

    v_ab, kind_ab = poch_val(a_r1, INF)
    if kind_ab == "zero":
        return Series.zero(cutoff)
    body = bressoud._jsum(coeff, floor, cutoff - v_ab, "lattice-route rhs")
    return product_at(cutoff, [
        (lambda c: poch(a_r1, INF, c), v_ab),
        (lambda c: body, body.val()),
    ])


_register(name="newlattice3", summary="twisted lattice-route identity",
          int_params=("r", "i"),
          qparam_params=("a", "rho1", "rho", "sigma"),
          list_params=("rhos", "sigmas"), validate=_v_latroute,
          lhs=lambda p, c: _latroute_lhs(p, c, twisted=True),
          rhs=lambda p, c: _latroute_rhs(p, c, twisted=True),
          domain_doc="r >= 2, 1 <= i <= r-1; i-1 inner parameter pairs")

_register(name="lattice3", summary="classical lattice-route identity",
          int_params=("r", "i"),
          qparam_params=("a", "rho1", "rho", "sigma"),
          list_params=("rhos", "sigmas"), validate=_v_latroute,
          lhs=lambda p, c: _latroute_lhs(p, c, twisted=False),
          rhs=lambda p, c: _latroute_rhs(p, c, twisted=False),
          domain_doc="r >= 2, 1 <= i <= r-1; i-1 inner parameter pairs")


# ---------------------------------------------------------------------------
# evaluation and the specialization table
# ---------------------------------------------------------------------------

def identity_names():
    return sorted(CATALOG)


def evaluate_identity(name: str, params: dict, cutoff: int) -> EvalReport:
    """Build both sides independently and compare them exactly below cutoff."""
    try:
        desc = CATALOG[name]
    except KeyError:
        raise UnknownIdentity(f"unknown identity {name!r}; see identity_names()")
    for key in desc.int_params:
        if key not in params or not isinstance(params[key], int):
            raise BadParam(f"{name} needs integer parameter {key!r}")
    for key in desc.qparam_params:
        if key not in params or not isinstance(params[key], QParam):
            raise BadParam(f"{name} needs parameter {key!r}")
    for key in desc.list_params:
        if key not in params or not isinstance(params[key], (list, tuple)):
            raise BadParam(f"{name} needs parameter list {key!r}")
    if desc.validate is not None:
        desc.validate(params)
    t0 = time.perf_counter()
    lhs = desc.lhs(params, cutoff)
    rhs = desc.rhs(params, cutoff)
    compared, diff = first_diff(lhs, rhs, cutoff)
    fd = None
    if diff is not None:
        fd = {"exponent_halves": diff[0], "lhs_coeff": diff[1], "rhs_coeff": diff[2]}
    return EvalReport(identity=name, params=params, cutoff=cutoff, lhs=lhs,
                      rhs=rhs, passed=diff is None, compared=compared,
                      first_divergence=fd,
                      runtime_ms=(time.perf_counter() - t0) * 1000.0)


def specialization_table():
    """Documented specializations of the one-insertion lattice-route identity.

    Each row: lambda1 at the given parameters, with exponents doubled when
    scale=2 and multiplied by the named infinite product, reproduces the
    target identity -- both sides, coefficient by coefficient.
    """
    inf = QParam.infinity()
    one = QParam.finite(1, 0)
    q = QParam.finite(1, 2)
    rows = [
        {"label": "ag", "source": {"r": 3, "i": 2, "b1": inf, "c1": inf,
                                   "c2": inf, "a": q},
         "scale": 1, "multiplier": None, "target": "ag",
         "target_params": {"r": 3, "i": 2}},
        {"label": "br33", "source": {"r": 3, "i": 2, "b1": inf, "c1": inf,
                                     "c2": inf, "a": one},
         "scale": 1, "multiplier": None, "target": "br33",
         "target_params": {"r": 3, "i": 1}},
        {"label": "bressoud_even", "source": {"r": 3, "i": 2, "b1": inf,
                                              "c1": _neg(2), "c2": inf, "a": q},
         "scale": 1, "multiplier": None, "target": "bressoud_even",
         "target_params": {"r": 3, "i": 2}},
        {"label": "br35", "source": {"r": 3, "i": 2, "b1": inf, "c1": _neg(0),
                                     "c2": inf, "a": one},
         "scale": 1, "multiplier": None, "target": "br35",
         "target_params": {"r": 3, "i": 1}},
        {"label": "b36", "source": {"r": 3, "i": 2, "b1": inf, "c1": _neg(1),
                                    "c2": inf, "a": one},
         "scale": 2, "multiplier": "neg_q_qsq", "target": "b36",
         "target_params": {"r": 3, "i": 1}},
        {"label": "b37", "source": {"r": 3, "i": 2, "b1": inf, "c1": _neg(1),
                                    "c2": inf, "a": q},
         "scale": 2, "multiplier": "neg_q3_qsq", "target": "b37",
         "target_params": {"r": 3, "i": 1}},
        {"label": "b38", "source": {"r": 3, "i": 2, "b1": _neg(1), "c1": inf,
                                    "c2": inf, "a": q},
         "scale": 2, "multiplier": None, "target": "b38",
         "target_params": {"r": 3, "i": 1}},
        {"label": "b39", "source": {"r": 3, "i": 2, "b1": _neg(1), "c1": _neg(2),
                                    "c2": inf, "a": q},
         "scale": 2, "multiplier": None, "target": "b39",
         "target_params": {"r": 3, "i": 1}},
    ]
    return rows


_MULTIPLIERS = {
    None: None,
    "neg_q_qsq": lambda cutoff: poch(_neg(2), INF, cutoff, base=4),
    "neg_q3_qsq": lambda cutoff: poch(_neg(6), INF, cutoff, base=4),
}


def check_table_row(row: dict, cutoff: int):
    """Verify one specialization row by both routes; returns (ok, detail)."""
    for key in ("source", "target", "target_params", "scale"):
        if key not in row:
            raise BadParam(f"specialization row is missing {key!r}")
    scale = row["scale"]
    src_cut = cutoff // scale
    src = evaluate_identity("lambda1", row["source"], src_cut)
    tgt = evaluate_identity(row["target"], row["target_params"], cutoff)
    mult = _MULTIPLIERS[row.get("multiplier")]
    results = []
    for side_src, side_tgt, which in ((src.lhs, tgt.lhs, "lhs"),
                                      (src.rhs, tgt.rhs, "rhs")):
        s = side_src.scale_exponents(scale)
        if mult is not None:
            mseries = mult(cutoff)
            s = product_at(cutoff, [(lambda c: s, s.val()),
                                    (lambda c: mseries, mseries.val())])
        _, diff = first_diff(s, side_tgt, cutoff)
        results.append((which, diff))
    ok = src.passed and tgt.passed and all(d is None for _, d in results)
    return ok, {"source_passed": src.passed, "target_passed": tgt.passed,
                "sides": results}
