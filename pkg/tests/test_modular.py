from fractions import Fraction as F

import mpmath
import pytest

from legsq.errors import NonConvergenceError, UsageError
from legsq.exact import FixedReal, QuadExt
from legsq.modular import (
    Tau,
    e2_value,
    eisenstein_combination,
    eisenstein_combo_check,
    eta_value,
    pi_check,
    pi_target,
    u_series_value,
    w_of_tau,
)
from legsq.table1 import parametrised_rows


def _mp(x):
    return mpmath.mpf(str(x.value))


def _mp_nome(tau):
    return mpmath.exp(-2 * mpmath.pi * mpmath.sqrt(mpmath.mpf(tau.radicand_num) / tau.radicand_den))


def _mp_eta(tau):
    q = _mp_nome(tau)
    return q ** (mpmath.mpf(1) / 24) * mpmath.qp(q)


def _mp_e2(tau):
    q = _mp_nome(tau)
    return 1 - 24 * mpmath.nsum(lambda n: n * q**n / (1 - q**n), [1, mpmath.inf])


def test_tau_normalises():
    assert Tau(8, 14) == Tau(4, 7)
    assert Tau(4, 7).scaled(7) == Tau(28, 1)
    with pytest.raises(UsageError):
        Tau(0, 7)


@pytest.mark.parametrize("tau", [Tau(4, 7), Tau(3, 7), Tau(19, 7), Tau(28), Tau(1, 100)])
def test_eta_against_mpmath(tau):
    with mpmath.workdps(70):
        assert abs(_mp(eta_value(tau, 50)) - _mp_eta(tau)) < _mp_eta(tau) * mpmath.mpf(10) ** -48


@pytest.mark.parametrize("tau", [Tau(4, 7), Tau(6, 7), Tau(21, 1), Tau(1, 50)])
def test_e2_against_mpmath(tau):
    with mpmath.workdps(70):
        ref = _mp_e2(tau)
        assert abs(_mp(e2_value(tau, 50)) - ref) < abs(ref) * mpmath.mpf(10) ** -48


def test_e2_is_not_the_divisor_free_lambert_series():
    # the series without the factor n disagrees at order q^2
    tau = Tau(1, 4)
    with mpmath.workdps(40):
        q = _mp_nome(tau)
        wrong = 1 - 24 * mpmath.nsum(lambda n: q**n / (1 - q**n), [1, mpmath.inf])
        assert abs(_mp(e2_value(tau, 30)) - wrong) > q**2


def test_large_imaginary_part_limits():
    tau = Tau(100)
    q = tau.nome(40)
    eta = eta_value(tau, 40)
    q24 = (-(tau.two_pi_imag(50) / 24)).exp()
    assert abs(eta - q24) < q24 * FixedReal(10, 40) ** -30 + q24 * q * 2
    assert abs(e2_value(tau, 40) - 1) < 25 * q
    # (7 E_2(7 tau) - E_2(tau)) / 6 = 1 + 4q + O(q^2)
    assert abs(eisenstein_combination(tau, 40) - 1 - 4 * q) < FixedReal(10, 40) ** -38
    assert eisenstein_combo_check(tau, 40).passed


def test_e2_below_one():
    assert e2_value(Tau(1, 3), 30) < 1


@pytest.mark.parametrize("kind", ["eta", "e2"])
def test_precision_doubling(kind):
    fn = eta_value if kind == "eta" else e2_value
    a, b = fn(Tau(4, 7), 40), fn(Tau(4, 7), 50)
    assert abs(a - b) < abs(b) * FixedReal(10, 50) ** -38


def test_w_values():
    assert abs(w_of_tau(Tau(4, 7), 40) - F(1, 125)) < FixedReal(10, 40) ** -30
    w3 = QuadExt(F(188, 10648), F(-42, 10648), 14).to_fixed(50)
    assert abs(w_of_tau(Tau(6, 7), 40) - w3) < FixedReal(10, 40) ** -30
    w5 = w_of_tau(Tau(3, 7), 40)
    assert str(w5.value).startswith("0.014076")
    assert abs(w5 - QuadExt(F(-34, 216), F(14, 216), 7).to_fixed(50)) < FixedReal(10, 40) ** -30


def test_w_against_mpmath():
    tau = Tau(10, 7)
    with mpmath.workdps(60):
        e1, e7 = _mp_eta(tau) ** 4, _mp_eta(tau.scaled(7)) ** 4
        ref = e1 * e7 / (e1**2 + 13 * e1 * e7 + 49 * e7**2)
        assert abs(_mp(w_of_tau(tau, 45)) - ref) < ref * mpmath.mpf(10) ** -43


@pytest.mark.parametrize("row", parametrised_rows(), ids=lambda r: r.id)
def test_eisenstein_rows(row):
    rep = eisenstein_combo_check(row.tau, 40, label=row.id)
    assert rep.passed, rep.line()


def test_eisenstein_residual_shrinks_with_digits():
    lo = eisenstein_combo_check(Tau(3, 7), 20)
    hi = eisenstein_combo_check(Tau(3, 7), 40)
    assert lo.passed and hi.passed
    assert hi.residual == "0" or float(hi.residual) <= float(lo.residual)


def test_u_series_radius_guard():
    with pytest.raises(NonConvergenceError):
        u_series_value(F(1, 27), 20)
    with pytest.raises(NonConvergenceError):
        u_series_value(F(-1, 20), 20)


def test_pi_check_trivial_case():
    target = pi_target(60)
    rep = pi_check(target, 0, 0, 40)
    assert rep.passed


def test_pi_check_negative_control():
    a = pi_target(60) + FixedReal("1e-5", 60)
    rep = pi_check(a, 0, 0, 40)
    assert not rep.passed
    assert rep.residual.startswith("1.00E-5")


def test_pi_target_value():
    with mpmath.workdps(60):
        ref = 1 / (mpmath.pi * mpmath.sqrt(7))
        assert abs(_mp(pi_target(50)) - ref) < ref * mpmath.mpf(10) ** -48


def test_pi_check_passes_user_constants_through():
    # a made-up (a, b, w): the check reports whatever the sum gives
    rep = pi_check(F(1, 3), F(2, 5), F(1, 125), 30)
    assert not rep.passed
    w = FixedReal(F(1, 125), 45)
    direct = u_series_value(w, 30, weight=lambda n: F(1, 3) + F(2, 5) * n)
    resid = abs(direct - pi_target(30))
    assert rep.residual == resid.with_digits(30).sci()
