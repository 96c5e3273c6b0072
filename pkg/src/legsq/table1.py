"""Parameter table for the seven level-7 rows, and numeric checks at those rows.

Rows VII2 and VII7 carry only ``x`` and ``z``; the others also carry ``v``,
``w = v/(1+4v)^3`` and the point ``tau`` with ``w(tau) = w``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as F

from .errors import UsageError
from .exact import GUARD, FixedReal, QuadExt, binomial
from .modular import Tau, _numeric_report, u_series_value, w_of_tau
from .powerseries import numeric_sum
from .report import VerifyReport, timed
from .sequences import inner_coefficients, inner_sum


@dataclass(frozen=True)
class Table1Row:
    id: str
    x: object
    z: object
    v: object = None
    w: object = None
    tau: Tau | None = None

    def __post_init__(self):
        present = [self.v is not None, self.w is not None, self.tau is not None]
        if any(present) and not all(present):
            raise ValueError(f"row {self.id}: v, w and tau must be given together")

    @property
    def parametrised(self) -> bool:
        return self.v is not None


def _q(a, b, d):
    return QuadExt(a, b, d)


ROWS: tuple[Table1Row, ...] = (
    Table1Row("VII1", F(-1, 14), F(14, 225), F(1), F(1, 125), Tau(4, 7)),
    Table1Row("VII2", F(9, 20), F(-5, 196)),
    Table1Row(
        "VII3",
        F(-1, 21),
        F(21, 484),
        _q(1, F(1, 4), 14),
        _q(F(188, 22**3), F(-42, 22**3), 14),
        Tau(6, 7),
    ),
    Table1Row(
        "VII4",
        F(-1, 45),
        F(45, 2116),
        _q(F(5, 2), F(7, 4), 2),
        _q(F(8, 46), F(-3, 46), 2) ** 3,
        Tau(10, 7),
    ),
    Table1Row(
        "VII5",
        F(1, 7),
        F(-7, 36),
        _q(F(-3, 4), F(-1, 4), 7),
        _q(F(-34, 216), F(14, 216), 7),
        Tau(3, 7),
    ),
    Table1Row(
        "VII6",
        F(1, 175),
        F(-175, 30276),
        _q(F(-45, 4), F(-17, 4), 7),
        _q(F(-13, 174), F(7, 174), 7) ** 3,
        Tau(19, 7),
    ),
    Table1Row("VII7", F(-576, 3025), F(3025, 188356)),
)

ROW_IDS = tuple(r.id for r in ROWS)


def get_row(row_id: str) -> Table1Row:
    for r in ROWS:
        if r.id == row_id:
            return r
    raise UsageError(f"unknown row {row_id!r}; expected one of {', '.join(ROW_IDS)}")


def parametrised_rows() -> list[Table1Row]:
    return [r for r in ROWS if r.parametrised]


def x_of_v(v):
    """X = v / (1 + 5v + 8v^2)."""
    return v / (1 + 5 * v + 8 * v * v)


def _to_fixed(value, digits):
    if isinstance(value, FixedReal):
        return value.with_digits(min(value.digits, digits))
    return value.to_fixed(digits) if isinstance(value, QuadExt) else FixedReal(value, digits)


def _inner_sum_fixed(n: int, x, digits: int) -> FixedReal:
    """S_n(x) evaluated exactly, then rounded."""
    if isinstance(x, QuadExt) and not x.b:
        x = x.a
    if isinstance(x, (F, int)):
        x = F(x)
        p, q = x.numerator, x.denominator
        # integer Horner for sum c_k p^k q^(n-k)
        acc = 0
        qpow = 1
        for c in reversed(inner_coefficients(n)):
            acc = acc * p + c * qpow
            qpow *= q
        return FixedReal(F(acc, q**n), digits)
    return _to_fixed(inner_sum(n, x), digits)


def main1_sides(v, z, w, digits: int) -> tuple[FixedReal, FixedReal]:
    """Numeric values of both sides of the v-parametrised identity.

    LHS ``sum C(2n,n) z^n S_n(X)`` with ``X = v/(1+5v+8v^2)``; RHS
    ``(1+2v)/(1+4v) * sum u_n w^n``. ``z`` and ``w`` are passed in so that
    callers can use tabulated values or perturb them.
    """
    work = digits + GUARD
    x = x_of_v(v)
    zf = _to_fixed(z, work)

    def lhs_term(n):
        return binomial(2 * n, n) * zf**n * _inner_sum_fixed(n, x, work)

    lhs = numeric_sum(lhs_term, digits)
    pref = _to_fixed((1 + 2 * v) / (1 + 4 * v), work)
    rhs = (pref * u_series_value(_to_fixed(w, work), digits)).with_digits(digits)
    return lhs, rhs


@timed
def eval_main1_at(v, digits: int = 40) -> VerifyReport:
    """Numeric check of the v-parametrised identity at a rational or quadratic ``v``."""
    if digits < 20:
        raise UsageError("eval_main1_at needs at least 20 digits")
    x = x_of_v(v)
    z = x / (1 + x) ** 2
    w = v / (1 + 4 * v) ** 3
    lhs, rhs = main1_sides(v, z, w, digits)
    return _numeric_report(f"eval:v={v}", lhs, rhs, digits)


@timed
def eval_at_row(row: Table1Row, digits: int = 40, w_shift=0) -> VerifyReport:
    """Sum both sides of the v-parametrised identity numerically at a table row.

    Uses the row's tabulated ``z`` and ``w``. ``w_shift`` perturbs ``w``
    (negative control).
    """
    if digits < 20:
        raise UsageError("eval_at_row needs at least 20 digits")
    if not row.parametrised:
        raise UsageError(f"row {row.id} has no v parameter")
    w = _to_fixed(row.w, digits + GUARD) + FixedReal(w_shift, digits + GUARD)
    lhs, rhs = main1_sides(row.v, row.z, w, digits)
    return _numeric_report(f"eval:{row.id}", lhs, rhs, digits)


@timed
def w_bridge_check(row: Table1Row, digits: int = 40) -> VerifyReport:
    """Compare the eta quotient at the row's tau with the row's exact ``w``."""
    if not row.parametrised:
        raise UsageError(f"row {row.id} has no tau")
    numeric = w_of_tau(row.tau, digits)
    exact = _to_fixed(row.w, digits + GUARD)
    return _numeric_report(f"w-bridge:{row.id}", numeric, exact, digits)
