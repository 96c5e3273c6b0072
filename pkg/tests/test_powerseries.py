from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from legsq.errors import (
    CompositionError,
    HypergeometricParameterError,
    NonConvergenceError,
    NonInvertibleError,
    SeriesError,
    SqrtBranchError,
    UsageError,
)
from legsq.exact import FixedReal, QuadExt
from legsq.polynomial import poly
from legsq.powerseries import (
    LaurentQ,
    SeriesQ,
    first_mismatch,
    hypergeom_coefficients,
    hypergeom_series,
    numeric_sum,
    ratfun_series,
    series_alg,
)
from legsq.sequences import u_table

t = sympy.symbols("t")
N = 8

small = st.fractions(min_value=-9, max_value=9, max_denominator=9)


def series_st(order=N, const=None):
    coeffs = st.lists(small, min_size=order + 1, max_size=order + 1)
    if const is not None:
        coeffs = coeffs.map(lambda cs: [F(const)] + cs[1:])
    return coeffs.map(lambda cs: SeriesQ(cs, order))


def sympy_coeffs(expr, order):
    s = sympy.series(expr, t, 0, order + 1).removeO()
    return [F(int(sympy.Rational(s.coeff(t, i)).p), int(sympy.Rational(s.coeff(t, i)).q)) for i in range(order + 1)]


def to_sympy(s):
    return sum(sympy.Rational(c.numerator, c.denominator) * t**i for i, c in enumerate(s.coeffs))


# ---------------------------------------------------------------- examples


def test_ratfun_examples():
    assert ratfun_series(poly(1), poly(1, -1), 3).coeffs == [1, 1, 1, 1]
    assert ratfun_series(poly(0, 1), poly(1, 4) ** 3, 3).coeffs == [0, 1, -12, 96]
    assert ratfun_series(poly(0, 1), poly(1, 5, 8), 3).coeffs == [0, 1, -5, 17]


def test_ratfun_against_sympy():
    num, den = poly(0, 1, 5, 8), poly(1, 2) ** 2 * poly(1, 4) ** 2
    expr = (t + 5 * t**2 + 8 * t**3) / ((1 + 2 * t) ** 2 * (1 + 4 * t) ** 2)
    assert ratfun_series(num, den, 12).coeffs == sympy_coeffs(expr, 12)


def test_ratfun_rejects_zero_constant_term():
    with pytest.raises(NonInvertibleError):
        ratfun_series(poly(1), poly(0, 1), 3)


def test_series_alg_examples():
    v = SeriesQ.variable(2)
    assert series_alg("sqrt", 1 + v).coeffs == [1, F(1, 2), F(-1, 8)]
    assert series_alg("derivative", SeriesQ([1, 2, 3])).coeffs == [2, 6]
    x = ratfun_series(poly(0, 1), poly(1, 5, 8), 10)
    z = series_alg("div", x, (1 + x) ** 2)
    assert z.coeffs[:3] == [0, 1, -7]
    assert z == ratfun_series(poly(0, 1, 5, 8), poly(1, 2) ** 2 * poly(1, 4) ** 2, 10)
    outer = SeriesQ([1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1])
    assert series_alg("compose", outer, x) == 1 / (1 - x)


def test_series_alg_errors():
    v = SeriesQ.variable(4)
    with pytest.raises(NonInvertibleError):
        series_alg("div", 1 + v, v)
    with pytest.raises(CompositionError):
        series_alg("compose", 1 + v, 1 + v)
    with pytest.raises(SqrtBranchError):
        series_alg("sqrt", 4 + v)
    with pytest.raises(SqrtBranchError):
        series_alg("sqrt", v)
    with pytest.raises(UsageError):
        series_alg("mul", v)
    with pytest.raises(UsageError):
        series_alg("integrate", v)


def test_hypergeom_examples():
    v = SeriesQ.variable(3)
    assert hypergeom_series([1, 1], [1], v).coeffs == [1, 1, 1, 1]
    assert hypergeom_series([F(1, 2), F(1, 2)], [1], v.truncate(2)).coeffs == [1, F(1, 4), F(9, 64)]
    h = SeriesQ.variable(2)
    upper = [F(1, 6), F(1, 2), F(5, 6)]
    assert hypergeom_series(upper, [1, 1], 1728 * h)[1] == 120


def test_hypergeom_against_sympy():
    upper, lower = [F(1, 4), F(3, 4)], [1]
    cs = hypergeom_coefficients(upper, lower, 10)
    for k, c in enumerate(cs):
        ref = sympy.rf(sympy.Rational(1, 4), k) * sympy.rf(sympy.Rational(3, 4), k) / sympy.factorial(k) ** 2
        assert c == F(int(ref.p), int(ref.q))


def test_hypergeom_geometric_equals_ratfun():
    for order in (0, 5, 17):
        v = SeriesQ.variable(order) if order else SeriesQ([0], 0)
        assert hypergeom_series([1, 1], [1], v) == ratfun_series(poly(1), poly(1, -1), order)


def test_hypergeom_parameter_errors():
    with pytest.raises(HypergeometricParameterError):
        hypergeom_coefficients([1], [-2], 5)
    with pytest.raises(CompositionError):
        hypergeom_series([1], [1], SeriesQ([1, 1], 3))


def test_sqrt_against_sympy():
    s = SeriesQ([1, 3, F(-1, 2), 7, 0, 2], 10)
    expr = sympy.sqrt(to_sympy(s))
    assert s.sqrt().coeffs == sympy_coeffs(expr, 10)


# ---------------------------------------------------------------- algebraic laws


@settings(max_examples=40, deadline=None)
@given(series_st(), series_st(), series_st())
def test_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a - a == SeriesQ([0], N)


@settings(max_examples=40, deadline=None)
@given(series_st(), series_st().filter(lambda s: s[0] != 0))
def test_div_roundtrip(a, b):
    assert (a / b) * b == a


@settings(max_examples=40, deadline=None)
@given(series_st(const=1))
def test_sqrt_squares_back(s):
    r = s.sqrt()
    assert r * r == s
    assert r[0] == 1


@settings(max_examples=30, deadline=None)
@given(series_st(), series_st(const=0), series_st(const=0))
def test_compose_associative(a, b, c):
    assert a.compose(b.compose(c)) == a.compose(b).compose(c)


@settings(max_examples=30, deadline=None)
@given(series_st(), series_st(), small)
def test_derivative_linear_and_leibniz(a, b, k):
    assert (a + k * b).derivative() == a.derivative() + k * b.derivative()
    lhs = (a * b).derivative()
    rhs = a.derivative() * b.truncate(N - 1) + a.truncate(N - 1) * b.derivative()
    assert lhs == rhs


@settings(max_examples=30, deadline=None)
@given(series_st(), series_st())
def test_multiplication_against_sympy(a, b):
    assert (a * b).coeffs == sympy_coeffs(sympy.expand(to_sympy(a) * to_sympy(b)), N)


def test_order_contract():
    a = SeriesQ([1, 2, 3, 4], 3)
    b = SeriesQ([1, 1], 1)
    assert (a * b).order == 1
    assert (a + b).order == 1
    assert a.derivative().order == 2
    assert a.shift(2).coeffs == [0, 0, 1, 2]
    with pytest.raises(SeriesError):
        a.truncate(5)
    with pytest.raises(SeriesError):
        a.shift(-1)


def test_quadratic_coefficients_promote():
    r = QuadExt(0, 1, 2)
    s = SeriesQ([1, r], 4)
    assert s.radicand == 2
    assert (s * s)[2] == 2
    assert ((s * s).coeffs[1]) == QuadExt(0, 2, 2)
    inv = 1 / s
    assert inv * s == SeriesQ.constant(QuadExt(1, 0, 2), 4)


def test_first_mismatch():
    a = SeriesQ([1, 2, 3, 4])
    assert first_mismatch(a, a) is None
    assert first_mismatch(a, SeriesQ([1, 2, 0, 4])) == 2
    assert first_mismatch(a, SeriesQ([1, 2, 0, 4]), order=1) is None


# ---------------------------------------------------------------- Laurent


def test_laurent_exact_polynomial_powers():
    t_inv = LaurentQ(-1, [1, 9, 27])  # (1 + 9v + 27v^2)/v
    sq = t_inv**2
    assert sq.valuation == -2
    assert sq.coeffs == [1, 18, 135, 486, 729]
    assert sq.order == LaurentQ.EXACT
    assert (t_inv + 1).coeffs == [1, 10, 27]
    assert (2 + t_inv).coeffs == [1, 11, 27]


def test_laurent_to_series_requires_nonnegative_valuation():
    t_inv = LaurentQ(-1, [1, 9, 27])
    with pytest.raises(SeriesError):
        t_inv.to_series(3)
    s = (t_inv**3).shift(3).to_series(4)
    assert s.coeffs == sympy_coeffs((1 + 9 * t + 27 * t**2) ** 3, 4)


def test_laurent_truncated_product_order():
    a = LaurentQ.from_series(SeriesQ([1, 1, 1], 2))
    b = LaurentQ(-1, [1])
    p = a * b
    assert p.valuation == -1 and p.order == 1
    with pytest.raises(SeriesError):
        p.to_series(2)


# ---------------------------------------------------------------- numeric_sum


def test_numeric_sum_geometric():
    got = numeric_sum(lambda n: FixedReal(F(1, 2**n), 30), 20)
    assert abs(got - 2) < FixedReal(10, 30) ** -20


def test_numeric_sum_precision_doubling():
    us = u_table(200)
    lo = numeric_sum(lambda n: FixedReal(F(us[n], 125**n), 50), 30)
    hi = numeric_sum(lambda n: FixedReal(F(us[n], 125**n), 60), 40)
    assert abs(lo - hi) < FixedReal(10, 40) ** -28


def test_numeric_sum_slow_geometric_converges():
    # n * 0.85^n -> 0.85 / 0.15^2
    q = FixedReal("0.85", 40)
    got = numeric_sum(lambda n: n * q**n, 25)
    assert abs(got - q / (FixedReal("0.15", 40) ** 2)) < FixedReal(10, 40) ** -23


def test_numeric_sum_rejects_too_slow_ratio():
    # ratio 0.99 never shrinks the envelope by 0.9^5 over five steps
    q = FixedReal("0.99", 40)
    with pytest.raises(NonConvergenceError):
        numeric_sum(lambda n: n * q**n, 20, max_terms=5000)


def test_numeric_sum_divergent():
    with pytest.raises(NonConvergenceError):
        numeric_sum(lambda n: FixedReal(F(11, 10), 30) ** n, 20)
