"""Exact generators for the integer and polynomial sequences.

Values are cached per process; the caches are pure memoisation.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache

from . import kernels
from .errors import UsageError
from .exact import binomial
from .polynomial import PolyQ, horner

__all__ = [
    "PolyQ",
    "aux_sequence",
    "clausen_square",
    "inner_coefficients",
    "inner_sum",
    "legendre",
    "legendre_hypergeometric",
    "u_table",
    "u_value",
]


def _check_n(n: int) -> None:
    if n < 0:
        raise UsageError(f"index must be >= 0, got {n}")


@lru_cache(maxsize=None)
def legendre(n: int) -> PolyQ:
    """Legendre polynomial P_n from (n+1) P_{n+1} = (2n+1) y P_n - n P_{n-1}."""
    _check_n(n)
    if n == 0:
        return PolyQ([1])
    if n == 1:
        return PolyQ([0, 1])
    p1, p0 = legendre(n - 1), legendre(n - 2)
    m = n - 1
    return (PolyQ([0, 2 * m + 1]) * p1 - p0 * m) * Fraction(1, n)


def legendre_hypergeometric(n: int) -> PolyQ:
    """P_n from the terminating 2F1(-n, n+1; 1; (1-y)/2).

    Kept as an independent construction for cross-checking :func:`legendre`.
    """
    _check_n(n)
    half_one_minus_y = PolyQ([Fraction(1, 2), Fraction(-1, 2)])
    total = PolyQ()
    term = Fraction(1)
    power = PolyQ([1])
    for k in range(n + 1):
        total = total + power * term
        # ratio of consecutive terms: (-n+k)(n+1+k) / ((1+k)(k+1))
        term = term * (k - n) * (n + 1 + k) / ((k + 1) * (k + 1))
        power = power * half_one_minus_y
    return total


@lru_cache(maxsize=None)
def inner_coefficients(n: int) -> tuple[int, ...]:
    """c_k = C(n,k) C(n+k,n) C(2k,k) for k = 0..n."""
    _check_n(n)
    return tuple(binomial(n, k) * binomial(n + k, n) * binomial(2 * k, k) for k in range(n + 1))


def inner_sum(n: int, x):
    """S_n(x) = sum_k C(n,k) C(n+k,n) C(2k,k) x^k.

    ``x`` may be a Fraction, QuadExt, SeriesQ, PolyQ or anything closed under
    ``+`` and ``*``; the result has the same kind.
    """
    return horner(inner_coefficients(n), x)


def clausen_square(n: int, y):
    """Terminating 3F2 form of P_n(y)^2: S_n evaluated at -(1 - y^2)/4."""
    _check_n(n)
    return inner_sum(n, (y * y - 1) * Fraction(1, 4))


@lru_cache(maxsize=None)
def _u_sum1(n: int) -> int:
    return sum(binomial(n, k) ** 2 * binomial(n + k, n) * binomial(2 * k, n) for k in range(n + 1))


@lru_cache(maxsize=None)
def _u_sum2(n: int) -> int:
    return sum(
        (-1) ** (n - k) * binomial(3 * n + 1, n - k) * binomial(n + k, n) ** 3 for k in range(n + 1)
    )


_u_lock = threading.Lock()
_u_cache: list[int] = [1]


def u_table(n_max: int) -> list[int]:
    """u_0..u_{n_max} from the three-term recurrence (a copy)."""
    _check_n(n_max)
    if len(_u_cache) <= n_max:
        with _u_lock:
            if len(_u_cache) <= n_max:
                fresh = kernels.apery_like_table(max(n_max, 2 * len(_u_cache)), 13, 4, 3, 3)
                _u_cache[:] = fresh
    return _u_cache[: n_max + 1]


def u_value(n: int, method: str = "recurrence") -> int:
    """u_n by ``sum1``, ``sum2`` or ``recurrence``; all three agree."""
    _check_n(n)
    if method == "recurrence":
        return u_table(n)[n]
    if method == "sum1":
        return _u_sum1(n)
    if method == "sum2":
        return _u_sum2(n)
    raise UsageError(f"unknown method {method!r}")


@lru_cache(maxsize=None)
def _a_poly(n: int) -> PolyQ:
    return PolyQ([binomial(n, k) ** 2 * binomial(n + k, n) for k in range(n + 1)])


@lru_cache(maxsize=None)
def _apery(n: int) -> int:
    return sum(binomial(n, k) ** 2 * binomial(n + k, n) ** 2 for k in range(n + 1))


@lru_cache(maxsize=None)
def _domb(n: int) -> int:
    return sum(
        binomial(n, k) ** 2 * binomial(2 * k, k) * binomial(2 * n - 2 * k, n - k) for k in range(n + 1)
    )


def _threefac(n: int) -> int:
    return binomial(2 * n, n) * binomial(3 * n, n)


AUX_FAMILIES = ("A_poly", "apery", "domb", "threefac")


def aux_sequence(n: int, family: str, x=None):
    """Auxiliary families used by the A_n identity chains.

    ``A_poly`` gives the polynomial A_n (or its value at ``x``); ``apery``,
    ``domb`` and ``threefac`` give integers.
    """
    _check_n(n)
    if family == "A_poly":
        p = _a_poly(n)
        return p if x is None else p(x)
    if family == "apery":
        return _apery(n)
    if family == "domb":
        return _domb(n)
    if family == "threefac":
        return _threefac(n)
    raise UsageError(f"unknown family {family!r}")
