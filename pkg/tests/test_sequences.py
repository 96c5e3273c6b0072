import random
from fractions import Fraction as F

import pytest
import sympy

from legsq.errors import UsageError
from legsq.exact import QuadExt
from legsq.polynomial import PolyQ, horner, poly
from legsq.sequences import (
    AUX_FAMILIES,
    aux_sequence,
    clausen_square,
    inner_coefficients,
    inner_sum,
    legendre,
    legendre_hypergeometric,
    u_table,
    u_value,
)

# first terms of the u_n sequence, computed once by direct binomial summation
U_FROZEN = [1, 4, 48, 760, 13840, 273504, 5703096, 123519792, 2751843600, 62659854400, 1451780950048]


def test_polyq_basics():
    p = poly(1, 2, 3)
    assert p.degree == 2
    assert p(2) == 17
    assert p.derivative() == poly(2, 6)
    assert (p * p)(F(1, 3)) == p(F(1, 3)) ** 2
    assert poly(1, 0, 0) == poly(1) and poly(0).degree < 0
    assert PolyQ.monomial(3, 5) == poly(0, 0, 0, 5)
    assert horner([1, 1], QuadExt(0, 1, 2)) == QuadExt(1, 1, 2)


def test_legendre_small():
    assert legendre(0) == poly(1)
    assert legendre(1) == poly(0, 1)
    assert legendre(2) == poly(F(-1, 2), 0, F(3, 2))


def test_legendre_against_hypergeometric_and_sympy():
    y = sympy.symbols("y")
    for n in range(11):
        assert legendre(n) == legendre_hypergeometric(n)
        ref = sympy.Poly(sympy.legendre(n, y), y).all_coeffs()[::-1]
        assert list(legendre(n).coeffs) == [F(int(c.p), int(c.q)) for c in ref]


def test_inner_sum_examples():
    x = sympy.symbols("x")
    assert inner_sum(0, F(7, 3)) == 1
    assert inner_coefficients(1) == (1, 4)
    assert inner_coefficients(2) == (1, 12, 36)
    assert inner_sum(1, F(1, 2)) == 3


@pytest.mark.parametrize("n,y,expected", [(0, F(5), 1), (2, F(3), 169), (1, F(2, 7), F(4, 49))])
def test_clausen_examples(n, y, expected):
    assert clausen_square(n, y) == expected


def test_clausen_property_random_rationals():
    rng = random.Random(20261017)
    ys = [F(rng.randint(-40, 40), rng.randint(1, 30)) for _ in range(10)]
    for y in ys:
        for n in range(21):
            assert clausen_square(n, y) == legendre(n)(y) ** 2
            assert inner_sum(n, -(1 - y * y) / 4) == clausen_square(n, y)


def test_clausen_in_quadratic_field():
    y = QuadExt(F(1, 3), F(1, 5), 7)
    for n in range(8):
        assert clausen_square(n, y) == legendre(n)(y) ** 2


def test_u_spot_values():
    assert [u_value(n) for n in range(3)] == [1, 4, 48]
    assert u_table(10) == U_FROZEN


def _u_oracle(n):
    # independent evaluation of the first binomial sum through sympy
    return int(sum(sympy.binomial(n, k) ** 2 * sympy.binomial(n + k, n) * sympy.binomial(2 * k, n) for k in range(n + 1)))


def test_u_against_sympy_oracle():
    for n in range(25):
        assert u_value(n, "sum1") == _u_oracle(n)


def test_u_triple_agreement_to_300():
    table = u_table(300)
    for n in range(301):
        assert u_value(n, "sum1") == u_value(n, "sum2") == table[n], n


def test_u_growth_ratio():
    table = u_table(300)
    ratios = [F(table[n + 1], table[n]) for n in range(1, 300)]
    assert all(u > 0 for u in table)
    assert all(a < b for a, b in zip(ratios, ratios[1:]))
    assert ratios[-1] < 28


def test_u_bad_method():
    with pytest.raises(UsageError):
        u_value(3, "magic")
    with pytest.raises(UsageError):
        u_value(-1)


def test_aux_sequences():
    assert aux_sequence(1, "A_poly") == poly(1, 2)
    assert aux_sequence(1, "A_poly", F(3)) == 7
    assert aux_sequence(1, "apery") == 5
    assert aux_sequence(1, "domb") == 4
    assert aux_sequence(1, "threefac") == 6
    # OEIS-style values computed by hand: Apery 1, 5, 73, 1445; Domb 1, 4, 28, 256
    assert [aux_sequence(n, "apery") for n in range(4)] == [1, 5, 73, 1445]
    assert [aux_sequence(n, "domb") for n in range(4)] == [1, 4, 28, 256]
    assert [aux_sequence(n, "threefac") for n in range(4)] == [1, 6, 90, 1680]
    assert set(AUX_FAMILIES) == {"A_poly", "apery", "domb", "threefac"}
    with pytest.raises(UsageError):
        aux_sequence(2, "fibonacci")
