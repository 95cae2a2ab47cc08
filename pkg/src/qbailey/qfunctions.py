"""q-Pochhammer symbols, q-binomials, symmetric polynomials, triple products.

Conventions:
  (a;q)_k   = prod_{j=0..k-1} (1 - a q^j)            for k >= 0
  (a;q)_k   = 1 / prod_{l=1..-k} (1 - a q^(-l))      for k < 0  (quotient form)
  (a;q)_oo  = prod_{j>=0} (1 - a q^j)

All bases are powers of the global half-integer lattice: ``base`` counts
halves, so base=2 is q itself, base=4 is q^2, base=8 is q^4.

Negative-index Pochhammers with a vanishing denominator factor are poles:
``poch`` raises, ``poch_recip`` maps them to the zero series (the convention
that makes bilateral Bailey sums truncate).

``FactorProduct`` assembles a monomial times a ratio of products of factors
(1 - c x^h) with exact multiset cancellation of identical factors.  The
paper's specializations (a = q^m, c^2 = aq, b^2 = a) produce removable 0/0
ratios everywhere; cancelling equal factors before expanding is what makes
them evaluable.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache

from .errors import BadParam, NegativeN, PoleError, TruncationUnreachable
from .qparams import QParam
from .series import INF, Series, product_at

_ONE_MONO = (Fraction(1), 0)


# ---------------------------------------------------------------------------
# factor bookkeeping
# ---------------------------------------------------------------------------

def _factor_val(mono):
    """Valuation of (1 - c x^h): h when h < 0, else 0 (the factor leads with 1)."""
    return min(0, mono[1])


def _factor_series(mono):
    c, h = mono
    if h == 0:
        return Series.monomial(1 - c)
    return Series({0: 1, h: -c})


@lru_cache(maxsize=100000)
def _factor_inverse(mono, cutoff):
    return _factor_series(mono).invert(cutoff)


def _poch_monos(a: QParam, k: int, base: int):
    """Factor monomials of (a;q^base)_k and whether they sit in a denominator."""
    if a.is_zero:
        return [], False
    if not a.is_finite:
        raise BadParam("infinite parameter inside a Pochhammer symbol")
    if k >= 0:
        return [(a.coeff, a.halves + j * base) for j in range(k)], False
    return [(a.coeff, a.halves - l * base) for l in range(1, -k + 1)], True


# ---------------------------------------------------------------------------
# pochhammer symbols
# ---------------------------------------------------------------------------

def poch_val(a: QParam, k, base: int = 2):
    """(valuation_halves, kind) of (a;q^base)_k without building the series.

    kind is "ok", "zero" (the product is exactly the zero series) or "pole"
    (negative index with a vanishing denominator factor).  The valuation of a
    zero product == INF; a pole has no valuation (None).
    """
    if a.is_zero:
        return 0, "ok"
    if not a.is_finite:
        raise BadParam("infinite parameter inside a Pochhammer symbol")
    c, h = a.coeff, a.halves
    if k == INF:
        if c == 1 and h <= 0 and h % base == 0:
            return INF, "zero"
        v = 0
        j = 0
        while h + j * base < 0:
            v += h + j * base
            j += 1
        return v, "ok"
    if k >= 0:
        v = 0
        for j in range(k):
            d = h + j * base
            if d == 0 and c == 1:
                return INF, "zero"
            v += min(0, d)
        return v, "ok"
    v = 0
    for l in range(1, -k + 1):
        d = h - l * base
        if d == 0 and c == 1:
            return None, "pole"
        v -= min(0, d)
    return v, "ok"


@lru_cache(maxsize=100000)
def _poch_cached(kind, coeff, halves, k, cutoff, base):
    a = QParam(kind, coeff, halves)
    if a.is_zero:
        return Series.one()
    if k == "inf":
        return _poch_inf(a, cutoff, base)
    if k >= 0:
        monos = [(a.coeff, a.halves + j * base) for j in range(k)]
        # Factors below valuation 0 shift the product downward; intermediate
        # truncation must leave room for the drift still to come.
        drift = sum(min(0, m[1]) for m in monos)
        out = Series.one()
        seen = 0
        for m in monos:
            out = out * _factor_series(m)
            seen += min(0, m[1])
            if cutoff is not None:
                out = out.truncate(cutoff - (drift - seen))
        return out
    monos, _ = _poch_monos(a, k, base)
    for m in monos:
        if m[0] == 1 and m[1] == 0:
            raise PoleError(f"({a})_{k} has a vanishing denominator factor")
    if cutoff is None:
        raise BadParam("negative-index Pochhammer needs a cutoff")
    prod = Series.one()
    for m in monos:
        prod = prod * _factor_series(m)
    return prod.invert(cutoff)


def _poch_inf(a: QParam, cutoff, base):
    if cutoff is None or cutoff == INF:
        raise BadParam("infinite Pochhammer product needs a finite cutoff")
    c, h = a.coeff, a.halves
    if c == 1 and h <= 0 and h % base == 0:
        return Series.zero()  # a factor (1 - q^0) makes the product exactly 0
    # Factors with nonpositive-valuation deviation are multiplied exactly
    # first; truncating before they are absorbed would lose low-order terms.
    head = Series.one()
    j = 0
    while h + j * base <= 0:
        head = head * _factor_series((c, h + j * base))
        j += 1
        if j > 10 * (abs(h) + base):
            raise TruncationUnreachable("infinite product head does not terminate")
    v0 = head.val()
    if v0 == INF:
        return Series.zero()
    work = cutoff - min(0, v0)
    tail = Series.one()
    steps = 0
    while h + j * base < work:
        tail = (tail * _factor_series((c, h + j * base))).truncate(work)
        j += 1
        steps += 1
        if steps > 10 * max(work, 1) + 100:
            raise TruncationUnreachable("infinite product does not converge formally")
    return (head * tail).truncate(cutoff)


def poch(a: QParam, k, cutoff=None, base: int = 2) -> Series:
    """(a;q^base)_k as a truncated series; k may be a negative int or INF."""
    key_k = "inf" if k == INF else int(k)
    return _poch_cached(a.kind, a.coeff, a.halves, key_k, cutoff, base)


def poch_recip(a: QParam, k, cutoff, base: int = 2) -> Series:
    """1/(a;q^base)_k; a pole of the Pochhammer maps to the exact zero series."""
    if a.is_zero:
        return Series.one()
    v, kind = poch_val(a, k, base)
    if kind == "pole":
        return Series.zero()
    if kind == "zero":
        raise PoleError(f"reciprocal of the vanishing product ({a})_{k}")
    if cutoff <= -v:
        # the reciprocal has valuation -v, so below the cutoff it is all zero
        return Series.zero(cutoff)
    # the input must be exact below cutoff + 2v for the inverse to reach cutoff
    return poch(a, k, cutoff + 2 * v, base).invert(cutoff)


# ---------------------------------------------------------------------------
# q-binomials and elementary symmetric polynomials
# ---------------------------------------------------------------------------

_QBINOM_MEMO = {(0, 0): Series.one()}


def qbinom(N: int, j: int, base: int = 2) -> Series:
    """Gaussian binomial [N choose j] in base q^(base/2); zero outside 0<=j<=N."""
    if N < 0:
        raise NegativeN(f"q-binomial with negative upper index {N}")
    if j < 0 or j > N:
        return Series.zero()
    if base % 2 or base <= 0:
        raise BadParam("q-binomial base must be a positive even number of halves")
    got = _QBINOM_MEMO.get((N, j))
    if got is None:
        # [N,j] = q^j [N-1,j] + [N-1,j-1]
        if j == 0 or j == N:
            got = Series.one()
        else:
            got = qbinom(N - 1, j).times_monomial(1, 2 * j) + qbinom(N - 1, j - 1)
        _QBINOM_MEMO[(N, j)] = got
    if base == 2:
        return got
    return got.scale_exponents(base // 2)


def esym(M: int, values) -> Series:
    """Elementary symmetric polynomial e_M evaluated at monomial parameters."""
    vals = list(values)
    if M < 0 or M > len(vals):
        return Series.zero()
    e = [Series.one()] + [Series.zero() for _ in range(M)]
    for v in vals:
        if v.is_zero:
            continue
        mono = v.monomial()
        for k in range(min(M, len(vals)), 0, -1):
            e[k] = e[k] + e[k - 1] * mono
    return e[M]


# ---------------------------------------------------------------------------
# Jacobi triple product
# ---------------------------------------------------------------------------

def jtp_sum(z: QParam, cutoff, base: int = 2) -> Series:
    """sum_j (-1)^j z^j Q^(j(j-1)/2) with Q = q^(base/2), truncated."""
    if not z.is_finite:
        raise BadParam("triple product argument must be finite")
    h = z.halves

    def tval(j):
        return j * h + base * (j * (j - 1) // 2)

    def term(j):
        sign = 1 if j % 2 == 0 else -1
        return z.monomial(j).times_monomial(sign, base * (j * (j - 1) // 2))

    out = Series.zero(cutoff)
    j = 0
    while tval(j) < cutoff or tval(j + 1) <= tval(j):
        if tval(j) < cutoff:
            out = out + term(j)
        j += 1
        if j > 10 * (cutoff + abs(h)) + 100:
            raise TruncationUnreachable("triple product sum does not truncate")
    j = -1
    while tval(j) < cutoff or tval(j - 1) <= tval(j):
        if tval(j) < cutoff:
            out = out + term(j)
        j -= 1
        if j < -10 * (cutoff + abs(h)) - 100:
            raise TruncationUnreachable("triple product sum does not truncate")
    return out.truncate(cutoff)


def triple_product(z: QParam, cutoff, base: int = 2) -> Series:
    """(Q, z, Q/z; Q)_oo with Q = q^(base/2): the product side of the identity."""
    Qp = QParam.finite(1, base)
    parts = []
    for p in (Qp, z, Qp / z):
        v, kind = poch_val(p, INF, base)
        if kind == "zero":
            return Series.zero(cutoff)
        parts.append(((lambda pp: (lambda c: poch(pp, INF, c, base)))(p), v))
    return product_at(cutoff, parts)


def jacobi_triple(z: QParam, cutoff, base: int = 2):
    """Both sides of the triple product identity, each exact below cutoff."""
    return jtp_sum(z, cutoff, base), triple_product(z, cutoff, base)


# ---------------------------------------------------------------------------
# exact products of (1 - c x^h) factors with cancellation
# ---------------------------------------------------------------------------

@lru_cache(maxsize=100000)
def _factors_series(num_key, den_key, cutoff):
    num = Series.one()
    for (mono, mult) in num_key:
        f = _factor_series(mono)
        for _ in range(mult):
            num = num * f
    if not den_key:
        return num.truncate(cutoff) if cutoff is not None else num
    v_num = sum(_factor_val(m) * k for m, k in num_key)
    den = Series.one()
    for (mono, mult) in den_key:
        f = _factor_series(mono)
        for _ in range(mult):
            den = den * f
    inv = den.invert(cutoff - v_num)
    return (num * inv).truncate(cutoff)


def fp_pp(fp, p: QParam, n: int):
    """Multiply fp by (p)_n / p^n, using the limit (-1)^n q^C(n,2) at p = oo."""
    if p.is_infinite:
        fp.times_scalar(1 if n % 2 == 0 else -1).times_qpow(n * (n - 1))
        return fp
    if p.is_zero:
        raise BadParam("(0)_n / 0^n is undefined")
    fp.times_poch(p, n)
    fp.times_param_pow(p, -n)
    return fp


class FactorProduct:
    """monomial * prod(1 - m) / prod(1 - m') * extra series, evaluated exactly.

    Identical factors in numerator and denominator cancel as multisets before
    anything is expanded, so removable singularities at specialized
    parameters evaluate exactly instead of raising 0/0.
    """

    __slots__ = ("coeff", "halves", "num", "den", "extras", "extra_dens",
                 "lazies", "annihilated")

    def __init__(self):
        self.coeff = Fraction(1)
        self.halves = 0
        self.num = Counter()
        self.den = Counter()
        self.extras = []
        self.extra_dens = []
        self.lazies = []
        self.annihilated = False

    def copy(self):
        fp = FactorProduct()
        fp.coeff = self.coeff
        fp.halves = self.halves
        fp.num = Counter(self.num)
        fp.den = Counter(self.den)
        fp.extras = list(self.extras)
        fp.extra_dens = list(self.extra_dens)
        fp.lazies = list(self.lazies)
        fp.annihilated = self.annihilated
        return fp

    def times_scalar(self, c):
        c = Fraction(c)
        if c == 0:
            self.annihilated = True
        else:
            self.coeff *= c
        return self

    def times_qpow(self, halves: int):
        self.halves += halves
        return self

    def times_param_pow(self, p: QParam, n: int):
        if p.is_zero:
            if n > 0:
                self.annihilated = True
                return self
            if n == 0:
                return self
            raise BadParam("negative power of the zero parameter")
        if not p.is_finite:
            raise BadParam("monomial power of an infinite parameter")
        self.coeff *= p.coeff ** n
        self.halves += p.halves * n
        return self

    def times_factor(self, p: QParam, offset_halves: int = 0, den: bool = False):
        """Multiply by (1 - p q^(offset/2)) or its reciprocal."""
        if p.is_zero:
            return self
        if not p.is_finite:
            raise BadParam("factor with infinite parameter")
        mono = (p.coeff, p.halves + offset_halves)
        (self.den if den else self.num)[mono] += 1
        return self

    def times_poch(self, p: QParam, k: int, base: int = 2, den: bool = False):
        """Multiply by (p;q^base)_k (or its reciprocal when den=True)."""
        monos, inverted = _poch_monos(p, k, base)
        side = self.den if (den ^ inverted) else self.num
        for m in monos:
            side[m] += 1
        return self

    def times_series(self, s: Series):
        self.extras.append(s)
        return self

    def times_series_den(self, s: Series):
        """Divide by an explicitly built series (inverted at evaluation time)."""
        if s.is_zero_below_cutoff():
            raise PoleError("division by a series with no visible terms")
        self.extra_dens.append(s)
        return self

    def times_lazy(self, build, val_bound):
        """Multiply by build(cutoff), a factor with the given valuation bound."""
        self.lazies.append((build, val_bound))
        return self

    def _cancelled(self):
        common = self.num & self.den
        return self.num - common, self.den - common

    def val_bound(self):
        """Exact valuation of the assembled product (INF when it is zero)."""
        if self.annihilated:
            return INF
        num, den = self._cancelled()
        if any(m == _ONE_MONO for m in num):
            return INF
        v = self.halves
        v += sum(_factor_val(m) * k for m, k in num.items())
        v -= sum(_factor_val(m) * k for m, k in den.items())
        for s in self.extras:
            sv = s.val()
            if sv == INF:
                return INF
            v += sv
        for s in self.extra_dens:
            v -= s.val()
        for _, lv in self.lazies:
            v += lv
        return v

    def series(self, cutoff) -> Series:
        if self.annihilated:
            return Series.zero()
        num, den = self._cancelled()
        if any(m == _ONE_MONO for m in num):
            return Series.zero()
        if any(m == _ONE_MONO for m in den):
            raise PoleError("uncancelled vanishing denominator factor")
        parts = []
        num_key = tuple(sorted(num.items()))
        den_key = tuple(sorted(den.items()))
        v_ratio = (sum(_factor_val(m) * k for m, k in num_key)
                   - sum(_factor_val(m) * k for m, k in den_key))
        parts.append((lambda c: _factors_series(num_key, den_key, c), v_ratio))
        for s in self.extras:
            parts.append(((lambda ss: (lambda c: ss))(s), s.val()))
        for s in self.extra_dens:
            parts.append(((lambda ss: (lambda c: ss.invert(c)))(s), -s.val()))
        parts.extend(self.lazies)
        out = product_at(cutoff - self.halves, parts)
        return out.times_monomial(self.coeff, self.halves)
