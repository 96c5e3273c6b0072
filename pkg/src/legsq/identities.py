"""Coefficientwise verification of the generating-function identities.

Every check builds both sides as exact truncated series and compares them
through the requested order. Sums over an index ``n`` are cut at ``n <= N``
only after asserting that the ``n``-th term has valuation at least ``n``.

Keyword arguments named after a constant (``u_override``, ``k_weight``, ...)
exist for negative controls: changing them must make the check fail.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import RootBracketError, UsageError
from .exact import GUARD, FixedReal, QuadExt, binomial
from .polynomial import PolyQ, poly
from .powerseries import (
    LaurentQ,
    SeriesQ,
    first_mismatch,
    hypergeom_series,
    ratfun_series,
)
from .report import VerifyReport, timed
from .sequences import aux_sequence, inner_coefficients, legendre, u_table

# ---------------------------------------------------------------- helpers


def _assert_valuation(term: SeriesQ, n: int, what: str) -> None:
    if term.valuation() < min(n, term.order + 1):
        raise AssertionError(f"{what}: term {n} has valuation {term.valuation()} < {n}")


def _series_report(identity_id: str, order: int, failure) -> VerifyReport:
    return VerifyReport(identity_id, "series", order, failure is None, failure)


def _min_failure(*failures):
    found = [f for f in failures if f is not None]
    return min(found) if found else None


def _zero_failure(s: SeriesQ, through: int | None = None):
    top = s.order if through is None else through
    v = s.valuation()
    return v if v <= top else None


def _combine(coeffs, powers, order):
    """``sum coeffs[k] * powers[k]`` computed coefficientwise."""
    out = [Fraction(0)] * (order + 1)
    for c, p in zip(coeffs, powers):
        if not c:
            continue
        pc = p.coeffs
        for i in range(p.valuation(), order + 1):
            out[i] += c * pc[i]
    return SeriesQ(out, order)


def _powers(x: SeriesQ, count: int) -> list[SeriesQ]:
    out = [SeriesQ.constant(1, x.order)]
    for _ in range(count - 1):
        out.append(out[-1] * x)
    return out


def x_of_v(order: int, denominator=(1, 5, 8)) -> SeriesQ:
    """``v / (1 + 5v + 8v^2)`` (the denominator is overridable)."""
    return ratfun_series(poly(0, 1), poly(*denominator), order)


def z_of_v(order: int) -> SeriesQ:
    """``v (1 + 5v + 8v^2) / ((1 + 2v)^2 (1 + 4v)^2)``."""
    return ratfun_series(poly(0, 1, 5, 8), poly(1, 2) ** 2 * poly(1, 4) ** 2, order)


def w_of_v(order: int) -> SeriesQ:
    """``v / (1 + 4v)^3``."""
    return ratfun_series(poly(0, 1), poly(1, 4) ** 3, order)


def _legendre_sq_sum(z: SeriesQ, x: SeriesQ, order: int, weight=None) -> SeriesQ:
    """``sum_n C(2n,n) z^n sum_k c_{n,k} weight(n,k) x^k`` through ``order``.

    ``weight(n)`` returns a pair ``(A, B)`` of series meaning ``A + k*B``; when
    omitted the weight is 1.
    """
    xp = _powers(x, order + 1)
    total = SeriesQ.constant(0, order)
    zn = SeriesQ.constant(1, order)
    for n in range(order + 1):
        cs = inner_coefficients(n)
        s_n = _combine(cs, xp, order)
        if weight is None:
            inner = s_n
        else:
            a, b = weight(n)
            inner = a * s_n
            if b is not None:
                inner = inner + b * _combine([k * c for k, c in enumerate(cs)], xp, order)
        term = zn * inner * binomial(2 * n, n)
        _assert_valuation(term, n, "binomial double sum")
        total = total + term
        zn = zn * z
    return total


def _u_series(order: int, u_override=None) -> SeriesQ:
    us = list(u_table(order))
    for n, val in (u_override or {}).items():
        if n <= order:
            us[n] = val
    return SeriesQ(us, order)


def main1_lhs(order: int) -> SeriesQ:
    return _legendre_sq_sum(z_of_v(order), x_of_v(order), order)


def main1_rhs(order: int, u_override=None) -> SeriesQ:
    pref = ratfun_series(poly(1, 2), poly(1, 4), order)
    return pref * _u_series(order, u_override).compose(w_of_v(order))


# ---------------------------------------------------------------- main identity


@timed
def verify_main1(order: int = 40, u_override: dict[int, int] | None = None) -> VerifyReport:
    """Series identity in v between the squared-Legendre generating function and sum u_n w^n."""
    if order < 1:
        raise UsageError("order must be >= 1")
    lhs = main1_lhs(order)
    rhs = main1_rhs(order, u_override)
    return _series_report("main1", order, first_mismatch(lhs, rhs))


@timed
def verify_equivalent_pn_form(order: int = 40, x_denominator=(1, 5, 8)) -> VerifyReport:
    """The P_n(y)^2 form with y^2 = (1+v)(1+8v)/(1+5v+8v^2).

    Checks ``1 + 4x(v) = y^2`` and then assembles the left side twice: via the
    Clausen sum at ``(y^2 - 1)/4`` and via Legendre polynomials at the series
    ``y = sqrt(y^2)``. Both must match the right side.
    """
    if order < 1:
        raise UsageError("order must be >= 1")
    ysq = ratfun_series(poly(1, 1) * poly(1, 8), poly(1, 5, 8), order)
    x = x_of_v(order, x_denominator)
    fail_x = first_mismatch(1 + 4 * x, ysq)

    z = z_of_v(order)
    rhs = main1_rhs(order)
    clausen = _legendre_sq_sum(z, (ysq - 1) * Fraction(1, 4), order)
    fail_clausen = first_mismatch(clausen, rhs)

    y = ysq.sqrt()
    p_prev, p_cur = SeriesQ.constant(0, order), SeriesQ.constant(1, order)
    direct = SeriesQ.constant(0, order)
    zn = SeriesQ.constant(1, order)
    for n in range(order + 1):
        term = zn * (p_cur * p_cur) * binomial(2 * n, n)
        _assert_valuation(term, n, "P_n^2 sum")
        direct = direct + term
        zn = zn * z
        # (n+1) P_{n+1} = (2n+1) y P_n - n P_{n-1}
        p_prev, p_cur = p_cur, (y * p_cur * (2 * n + 1) - p_prev * n) * Fraction(1, n + 1)
    fail_direct = first_mismatch(direct, rhs)
    return _series_report("equivalent-pn", order, _min_failure(fail_x, fail_clausen, fail_direct))


# ---------------------------------------------------------------- satellite


@timed
def verify_satellite(order: int = 40, k_weight: int = 4) -> VerifyReport:
    """Vanishing of the twisted sum with bracket 2x(3+4x) - n(1-x)(3+5x) + 4k(1+x)(1+4x)."""
    if order < 1:
        raise UsageError("order must be >= 1")
    x = SeriesQ.variable(order)
    z = ratfun_series(poly(0, 1), poly(1, 2, 1), order)
    const = SeriesQ.from_poly(poly(0, 6, 8), order)
    lin_n = SeriesQ.from_poly(-(poly(1, -1) * poly(3, 5)), order)
    lin_k = SeriesQ.from_poly(poly(1, 1) * poly(1, 4) * k_weight, order)

    def weight(n):
        return const + lin_n * n, lin_k

    total = _legendre_sq_sum(z, x, order, weight)
    return _series_report("satellite", order, _zero_failure(total))


# ---------------------------------------------------------------- differential operator


@dataclass(frozen=True)
class OdeOperator:
    """``c3 f''' + c2 f'' + c1 f' + c0 f`` with polynomial coefficients in v."""

    c3: PolyQ
    c2: PolyQ
    c1: PolyQ
    c0: PolyQ

    @classmethod
    def level7(cls, constant: int = 4) -> OdeOperator:
        """The third-order operator annihilating both sides of the rewritten identity."""
        return cls(
            c3=poly(0, 0, 1) * poly(1, 1) * poly(1, 8) * poly(1, 5, 8),
            c2=poly(0, 3) * poly(1, 21, 122, 280, 192),
            c1=poly(1, 50, 454, 1408, 1216),
            c0=poly(1, 22, 108, 128) * constant,
        )

    def apply(self, f: SeriesQ) -> SeriesQ:
        """Result is known through order ``f.order - 3``."""
        d1 = f.derivative()
        d2 = d1.derivative()
        d3 = d2.derivative()
        n = d3.order
        return (
            SeriesQ.from_poly(self.c3, n) * d3
            + SeriesQ.from_poly(self.c2, n) * d2.truncate(n)
            + SeriesQ.from_poly(self.c1, n) * d1.truncate(n)
            + SeriesQ.from_poly(self.c0, n) * f.truncate(n)
        )


def rewritten_sides(order: int) -> tuple[SeriesQ, SeriesQ]:
    """Both sides with the explicit denominators (1+2v)^(2n+1)(1+4v)^(2n+1) and (1+4v)^(3n+2)."""
    inv = ratfun_series(poly(1), poly(1, 2) * poly(1, 4), order)
    lhs = _legendre_sq_sum(z_of_v(order) , x_of_v(order), order) * inv
    inv_sq = ratfun_series(poly(1), poly(1, 4) ** 2, order)
    rhs = inv_sq * _u_series(order).compose(w_of_v(order))
    return lhs, rhs


@timed
def verify_ode_annihilation(order: int = 40, operator: OdeOperator | None = None) -> VerifyReport:
    """The operator kills both rewritten sides through order ``order - 3``."""
    if order < 4:
        raise UsageError("order must be >= 4")
    op = operator or OdeOperator.level7()
    lhs, rhs = rewritten_sides(order)
    fail = _min_failure(_zero_failure(op.apply(lhs)), _zero_failure(op.apply(rhs)))
    return _series_report("ode", order, fail)


def ode_residuals(order: int, operator: OdeOperator | None = None) -> tuple[SeriesQ, SeriesQ]:
    op = operator or OdeOperator.level7()
    lhs, rhs = rewritten_sides(order)
    return op.apply(lhs), op.apply(rhs)


# ---------------------------------------------------------------- v-derivative


def derivative_sides(order: int, rhs_sign: int = -1) -> tuple[SeriesQ, SeriesQ]:
    """Both sides of the v-derivative identity multiplied by v(1+2v)(1+4v)(1+5v+8v^2)."""
    pa = poly(1, 0, -8) * poly(1, 4, 8)
    pb = poly(1, 0, -8) * poly(1, 2) * poly(1, 4)
    sa = SeriesQ.from_poly(pa, order)
    sb = SeriesQ.from_poly(pb, order)
    lhs = _legendre_sq_sum(z_of_v(order), x_of_v(order), order, lambda n: (sa * n, sb))

    pc = poly(1, -8) * poly(1, 2) * poly(1, 5, 8)
    pe = poly(0, 2) * poly(1, 5, 8)
    us = u_table(order)
    w = w_of_v(order)
    n_weighted = SeriesQ([n * u for n, u in enumerate(us)], order).compose(w)
    plain = SeriesQ(us, order).compose(w)
    pref = ratfun_series(poly(1, 2), poly(1, 4), order)
    rhs = pref * (SeriesQ.from_poly(pc, order) * n_weighted + SeriesQ.from_poly(pe, order) * plain * rhs_sign)
    return lhs, rhs


@timed
def verify_derivative_identity(order: int = 30, rhs_sign: int = -1) -> VerifyReport:
    """v-derivative identity after clearing denominators, plus a cross-check
    against ``v d/dv`` of the series from :func:`verify_main1`."""
    if order < 1:
        raise UsageError("order must be >= 1")
    lhs, rhs = derivative_sides(order, rhs_sign)
    fail = first_mismatch(lhs, rhs)
    clear = SeriesQ.from_poly(poly(1, 2) * poly(1, 4) * poly(1, 5, 8), order)
    cross = clear * main1_lhs(order + 1).derivative().shift(1)
    fail_cross = first_mismatch(lhs, cross)
    return _series_report("derivative", order, _min_failure(fail, fail_cross))


# ---------------------------------------------------------------- two-variable Legendre


def _rational_sqrt(q: Fraction) -> Fraction | None:
    from math import isqrt

    if q < 0:
        return None
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def bailey_wan_lhs(x, y, order: int) -> SeriesQ:
    """``sum_n P_n(x) P_n(y) z^n``."""
    return SeriesQ([legendre(n)(x) * legendre(n)(y) for n in range(order + 1)], order)


def bailey_wan_rhs(which: str, x, y, order: int) -> SeriesQ:
    x, y = Fraction(x), Fraction(y)
    z = SeriesQ.variable(order)
    prod = (1 - x * x) * (1 - y * y)
    if which == "bailey":
        s = _rational_sqrt(prod)
        if s is None:
            raise UsageError(f"(1-x^2)(1-y^2) = {prod} is not a rational square")
        q = 1 + z * (z - 2 * s - 2 * x * y)
        return hypergeom_series([Fraction(1, 2), Fraction(1, 2)], [1], -4 * s * z / q) / q.sqrt()
    if which == "wan":
        r = 1 - 2 * x * y * z + z * z
        return hypergeom_series([Fraction(1, 4), Fraction(3, 4)], [1], 4 * prod * z * z / (r * r)) / r.sqrt()
    raise UsageError(f"unknown identity {which!r}; expected bailey or wan")


@timed
def verify_bailey_wan(which: str = "wan", x=Fraction(3, 5), y=Fraction(4, 5), order: int = 30) -> VerifyReport:
    """Bilinear Legendre generating function against its 2F1 closed form."""
    x, y = Fraction(x), Fraction(y)
    if abs(x) >= 1 or abs(y) >= 1:
        raise UsageError("need |x| < 1 and |y| < 1")
    rhs = bailey_wan_rhs(which, x, y, order)
    lhs = bailey_wan_lhs(x, y, order)
    return _series_report(which, order, first_mismatch(lhs, rhs))


# ---------------------------------------------------------------- hypergeometric forms in h


def cooper_forms(order: int) -> tuple[SeriesQ, SeriesQ, SeriesQ]:
    c13 = SeriesQ.from_poly(poly(1, 13, 49), order)
    c245 = SeriesQ.from_poly(poly(1, 245, 2401), order)
    c5 = SeriesQ.from_poly(poly(1, 5, 1), order)
    h = SeriesQ.variable(order)
    upper, lower = [Fraction(1, 6), Fraction(1, 2), Fraction(5, 6)], [1, 1]

    f1 = _u_series(order).compose(h / c13) / c13.sqrt()
    f2 = hypergeom_series(upper, lower, 1728 * h / (c13 * c245**3)) / c245.sqrt()
    f3 = hypergeom_series(upper, lower, 1728 * h**7 / (c13 * c5**3)) / c5.sqrt()
    return f1, f2, f3


@timed
def verify_cooper_forms(order: int = 30) -> VerifyReport:
    """The u_n generating function against two 3F2(1/6,1/2,5/6;1,1) forms."""
    if order < 7:
        raise UsageError("order must be >= 7")
    f1, f2, f3 = cooper_forms(order)
    return _series_report("cooper-forms", order, _min_failure(first_mismatch(f1, f2), first_mismatch(f1, f3)))


# ---------------------------------------------------------------- A_n chains


def an_chain_first(order: int, threefac_power: int = 6) -> list[SeriesQ]:
    """The four expressions of the chain with (1-2v+4v^2), Apery, Domb and (3n)!/n!^3 terms.

    The last expression carries ``(1+4v-8v^2)^(threefac_power*n + 2)`` in the
    denominator; only ``threefac_power = 6`` makes the chain consistent.
    """
    N = order
    p = poly(0, 1) * poly(1, -1) * poly(1, -4)  # v(1-v)(1-4v)

    # C(2n,n) A_n chain
    zz = ratfun_series(p, poly(1, -2, 4) ** 2, N)
    xx = ratfun_series(p, poly(1, 0, -4) ** 2, N)
    a_rows = [aux_sequence(n, "A_poly").coeffs for n in range(N + 1)]
    xp = _powers(xx, N + 1)
    e1 = SeriesQ.constant(0, N)
    zn = SeriesQ.constant(1, N)
    for n in range(N + 1):
        term = zn * _combine(a_rows[n], xp, N) * binomial(2 * n, n)
        _assert_valuation(term, n, "A_n chain")
        e1 = e1 + term
        zn = zn * zz
    e1 = e1 * ratfun_series(poly(1), poly(1, -2, 4) * poly(1, 0, -4), N)

    def gf(seq, arg_num, arg_den, pref_den):
        arg = ratfun_series(arg_num, arg_den, N)
        s = SeriesQ(seq, N).compose(arg)
        return s * ratfun_series(poly(1), pref_den, N)

    e2 = gf(
        [aux_sequence(n, "apery") for n in range(N + 1)],
        poly(0, 1) * poly(1, -2) * poly(1, -4) ** 2,
        poly(1, -1) * poly(1, 2),
        poly(1, -1) * poly(1, 2),
    )
    e3 = gf(
        [(-1) ** n * aux_sequence(n, "domb") for n in range(N + 1)],
        poly(0, 1) * poly(1, -1) * poly(1, 0, -4),
        poly(1, -4) ** 2,
        poly(1, -4) ** 2,
    )
    e4 = gf(
        [aux_sequence(n, "threefac") * binomial(2 * n, n) for n in range(N + 1)],
        poly(0, 1) * poly(1, -1) * poly(1, 0, -4) * poly(1, -4) ** 4,
        poly(1, 4, -8) ** threefac_power,
        poly(1, 4, -8) ** 2,
    )
    return [e1, e2, e3, e4]


def an_chain_second(order: int) -> tuple[SeriesQ, SeriesQ]:
    """Both sides of the identity with (1+10v+27v^2); the inner powers ((1+9v+27v^2)/v)^k are Laurent."""
    N = order
    t = LaurentQ(-1, [1, 9, 27])
    inv = ratfun_series(poly(1), poly(1, 10, 27), N)
    inv_sq = inv * inv
    lhs = SeriesQ.constant(0, N)
    outer = inv
    for n in range(N + 1):
        a = aux_sequence(n, "A_poly").coeffs
        inner = LaurentQ(0, [])
        tk = LaurentQ(0, [1])
        for c in a:
            inner = inner + tk * c
            tk = tk * t
        shifted = inner.shift(2 * n)
        if shifted.coeffs and shifted.valuation < n:
            raise AssertionError(f"second A_n chain: term {n} has valuation {shifted.valuation}")
        term = outer * shifted.to_series(N) * binomial(2 * n, n)
        lhs = lhs + term
        outer = outer * inv_sq
    arg = ratfun_series(poly(0, 1, 9, 27), poly(1, 9) ** 6, N)
    seq = [aux_sequence(n, "threefac") * binomial(2 * n, n) for n in range(N + 1)]
    rhs = SeriesQ(seq, N).compose(arg) * ratfun_series(poly(1), poly(1, 9) ** 2, N)
    return lhs, rhs


@timed
def verify_an_chain(which: str = "first", order: int = 25, threefac_power: int = 6) -> VerifyReport:
    if order < 1:
        raise UsageError("order must be >= 1")
    if which == "first":
        exprs = an_chain_first(order, threefac_power)
        fail = _min_failure(*(first_mismatch(exprs[0], e) for e in exprs[1:]))
        return _series_report("an-chain-1", order, fail)
    if which == "second":
        lhs, rhs = an_chain_second(order)
        return _series_report("an-chain-2", order, first_mismatch(lhs, rhs))
    raise UsageError(f"unknown chain {which!r}; expected first or second")


# ---------------------------------------------------------------- Table 1, exact


def table1_relations(row) -> tuple[bool, bool, bool]:
    """(z == X/(1+X)^2, x == -X, w == v/(1+4v)^3) for a parametrised row."""
    v = row.v
    big_x = v / (1 + 5 * v + 8 * v * v)
    return (
        row.z == big_x / (1 + big_x) ** 2,
        row.x == -big_x,
        row.w == v / (1 + 4 * v) ** 3,
    )


@timed
def verify_table1_exact(rows=None) -> VerifyReport:
    """Exact relations between the x, z, v, w columns; ``first_failure`` is a row index."""
    from .table1 import parametrised_rows

    rows = parametrised_rows() if rows is None else rows
    fail = None
    for i, row in enumerate(rows):
        if not all(table1_relations(row)):
            fail = i
            break
    return VerifyReport("table1", "exact", len(rows), fail is None, fail)


# ---------------------------------------------------------------- quartic example

QUARTIC = (1, 56, 96, 448, 64)  # 64v^4 + 448v^3 + 96v^2 + 56v + 1, low degree first
QUARTIC_BRACKETS = ((Fraction(-7), Fraction(-13, 2)), (Fraction(-1, 10), Fraction(0)))


def _bisect(f, lo, hi, digits: int) -> FixedReal:
    lo, hi = FixedReal(lo, digits), FixedReal(hi, digits)
    flo, fhi = f(lo), f(hi)
    if flo * fhi > 0 or not flo or not fhi:
        if not flo:
            return lo
        if not fhi:
            return hi
        raise RootBracketError(f"no sign change on [{lo}, {hi}]")
    eps = FixedReal(10, digits) ** (-(digits - 2))
    while hi - lo > eps * (1 + abs(lo)):
        mid = (lo + hi) / 2
        fm = f(mid)
        if not fm:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2


def quartic_roots(digits: int) -> list[FixedReal]:
    work = digits + GUARD

    def f(v):
        acc = FixedReal(0, work)
        for c in reversed(QUARTIC):
            acc = acc * v + c
        return acc

    return [_bisect(f, lo, hi, work).with_digits(digits) for lo, hi in QUARTIC_BRACKETS]


@timed
def verify_quartic_example(digits: int = 40) -> VerifyReport:
    """Real roots of the quartic reproduce the Q(sqrt 11) values of x and z."""
    if digits < 30:
        raise UsageError("quartic example needs at least 30 digits")
    work = digits + GUARD
    x_exact = QuadExt(Fraction(23, 175), Fraction(-8, 175), 11).to_fixed(work)
    z_exact = QuadExt(Fraction(83, 1100), Fraction(-32, 1100), 11).to_fixed(work)
    residual = FixedReal(0, work)
    for v in quartic_roots(work):
        xv = v / (1 + 5 * v + 8 * v * v)
        zv = xv / ((1 + xv) * (1 + xv))
        residual = max(residual, abs(xv - x_exact), abs(zv - z_exact))
    tol = FixedReal(10, work) ** (-(digits - 10))
    ok = residual < tol
    return VerifyReport("quartic", "numeric", digits, ok, None if ok else 0, residual.with_digits(digits).sci())
