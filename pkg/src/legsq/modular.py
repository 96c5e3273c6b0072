"""Eta quotients and Eisenstein series at purely imaginary tau.

For ``tau = i*sqrt(r)`` the nome ``q = exp(-2*pi*sqrt(r))`` is real and in
(0, 1), so every q-series below has positive, decreasing terms. All numeric
work runs at ``digits + GUARD`` and is rounded once at the end.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import NonConvergenceError, UsageError
from .exact import GUARD, FixedReal, QuadExt, pi_fixed
from .powerseries import numeric_sum
from .report import VerifyReport, timed
from .sequences import u_table

#: The u_n series converges for |w| < 1/27.
U_RADIUS = Fraction(1, 27)


@dataclass(frozen=True)
class Tau:
    """The point ``tau = i*sqrt(radicand_num / radicand_den)`` of the upper half-plane."""

    radicand_num: int
    radicand_den: int = 1

    def __post_init__(self):
        if self.radicand_num <= 0 or self.radicand_den <= 0:
            raise UsageError("Tau radicand must be positive")
        g = gcd(self.radicand_num, self.radicand_den)
        object.__setattr__(self, "radicand_num", self.radicand_num // g)
        object.__setattr__(self, "radicand_den", self.radicand_den // g)

    @property
    def radicand(self) -> Fraction:
        return Fraction(self.radicand_num, self.radicand_den)

    def scaled(self, k: int) -> Tau:
        """The point ``k*tau``."""
        return Tau(self.radicand_num * k * k, self.radicand_den)

    def two_pi_imag(self, digits: int) -> FixedReal:
        """``2*pi*Im(tau)``, so that ``q = exp(-two_pi_imag)``."""
        return 2 * pi_fixed(digits) * FixedReal(self.radicand, digits).sqrt()

    def nome(self, digits: int) -> FixedReal:
        return (-self.two_pi_imag(digits)).exp()

    def __str__(self):
        return f"i*sqrt({self.radicand})"


def _tolerance(exponent: int, digits: int) -> FixedReal:
    return FixedReal(10, digits) ** exponent


def eta_value(tau: Tau, digits: int) -> FixedReal:
    """Dedekind eta ``q^(1/24) * prod_{m>=1} (1 - q^m)``."""
    if digits < 10:
        raise UsageError("eta_value needs at least 10 digits")
    work = digits + GUARD
    x = tau.two_pi_imag(work)
    q = (-x).exp()
    q24 = (-(x / 24)).exp()
    eps = _tolerance(-(digits + 5), work)
    tail = 1 / (1 - q)
    prod = FixedReal(1, work)
    qm = q
    while True:
        prod = prod * (1 - qm)
        qm = qm * q
        # the omitted factors change the product by at most q^(M+1)/(1-q)
        if qm * tail < eps:
            break
    return (q24 * prod).with_digits(digits)


def e2_value(tau: Tau, digits: int) -> FixedReal:
    """Quasi-modular E_2 = 1 - 24 * sum n q^n / (1 - q^n) = 1 - 24 * sum sigma(n) q^n."""
    if digits < 10:
        raise UsageError("e2_value needs at least 10 digits")
    work = digits + GUARD
    q = tau.nome(work)
    eps = _tolerance(-(digits + 5), work)
    bound = 24 / ((1 - q) ** 3)
    total = FixedReal(0, work)
    qn = q
    n = 1
    while True:
        total = total + n * qn / (1 - qn)
        qn = qn * q
        n += 1
        # sum_{m>=n} m q^m / (1 - q^m) <= n q^n / (1 - q)^3
        if n * qn * bound < eps:
            break
    return (1 - 24 * total).with_digits(digits)


def w_of_tau(tau: Tau, digits: int) -> FixedReal:
    """Level-7 Hauptmodul ``eta(t)^4 eta(7t)^4 / (eta(t)^8 + 13 eta(t)^4 eta(7t)^4 + 49 eta(7t)^8)``."""
    if digits < 10:
        raise UsageError("w_of_tau needs at least 10 digits")
    work = digits + GUARD
    e1 = eta_value(tau, work) ** 4
    e7 = eta_value(tau.scaled(7), work) ** 4
    w = e1 * e7 / (e1 * e1 + 13 * e1 * e7 + 49 * e7 * e7)
    return w.with_digits(digits)


def eisenstein_combination(tau: Tau, digits: int) -> FixedReal:
    """``(7 E_2(7 tau) - E_2(tau)) / 6``."""
    work = digits + GUARD
    return ((7 * e2_value(tau.scaled(7), work) - e2_value(tau, work)) / 6).with_digits(digits)


class _PowerTerms:
    """``n -> weight(n) * u_n * w^n`` for sequential ``n``, caching ``w^n``."""

    def __init__(self, w: FixedReal, weight=None):
        self.w = w
        self.weight = weight
        self.power = FixedReal(1, w.digits)
        self.next_n = 0
        self.us = u_table(64)

    def __call__(self, n: int) -> FixedReal:
        if n != self.next_n:
            self.power = self.w**n
        if n >= len(self.us):
            self.us = u_table(2 * n)
        t = self.power * self.us[n]
        if self.weight is not None:
            t = t * self.weight(n)
        self.power = self.power * self.w
        self.next_n = n + 1
        return t


def u_series_value(w, digits: int, weight=None) -> FixedReal:
    """Numeric ``sum_n weight(n) u_n w^n``; ``weight`` defaults to 1."""
    work = digits + GUARD
    if not isinstance(w, FixedReal) and abs(w) >= U_RADIUS:
        raise NonConvergenceError(f"|w| = {abs(w)} is not below 1/27")
    wf = _to_fixed(w, work)
    if abs(wf) >= U_RADIUS:
        raise NonConvergenceError(f"|w| = {abs(wf).sci()} is not below 1/27")
    return numeric_sum(_PowerTerms(wf, weight), digits)


def _numeric_report(identity_id: str, lhs: FixedReal, rhs: FixedReal, digits: int) -> VerifyReport:
    residual = abs(lhs - rhs)
    ok = residual < _tolerance(-(digits - 10), digits + GUARD)
    return VerifyReport(identity_id, "numeric", digits, ok, None if ok else 0, residual.sci())


@timed
def eisenstein_combo_check(tau: Tau, digits: int = 40, label: str | None = None) -> VerifyReport:
    """Compare ``sum u_n w(tau)^n`` with ``(7 E_2(7 tau) - E_2(tau)) / 6``."""
    work = digits + GUARD
    w = w_of_tau(tau, work)
    lhs = u_series_value(w, digits)
    rhs = eisenstein_combination(tau, digits)
    return _numeric_report(f"eisenstein:{label or tau}", lhs, rhs, digits)


def _to_fixed(value, digits: int) -> FixedReal:
    if isinstance(value, FixedReal):
        return value.with_digits(min(value.digits, digits))
    if isinstance(value, QuadExt):
        return value.to_fixed(digits)
    return FixedReal(value, digits)


def pi_target(digits: int) -> FixedReal:
    """``1 / (pi * sqrt(7))``."""
    work = digits + GUARD
    return (1 / (pi_fixed(work) * FixedReal(7, work).sqrt())).with_digits(digits)


@timed
def pi_check(a, b, w, digits: int = 40) -> VerifyReport:
    """Check ``sum (a + b n) u_n w^n == 1 / (pi sqrt 7)`` for caller-supplied constants."""
    work = digits + GUARD
    af, bf, wf = (_to_fixed(c, work) for c in (a, b, w))
    lhs = u_series_value(wf, digits, weight=lambda n: af + bf * n)
    return _numeric_report("pi-check", lhs, pi_target(digits), digits)
