"""Truncated formal power series over Q or Q(sqrt(d)).

A :class:`SeriesQ` of order ``N`` stores the coefficients of ``t^0 .. t^N``;
everything above ``t^N`` is unknown and never read. Binary operations use the
smaller of the two orders. Ints are promoted to Fractions and Fractions to
QuadExt when the other operand lives in a quadratic field.
"""

from __future__ import annotations

import operator
from collections import deque
from fractions import Fraction
from math import lcm

from . import kernels
from .errors import (
    CompositionError,
    HypergeometricParameterError,
    NonConvergenceError,
    NonInvertibleError,
    SeriesError,
    SqrtBranchError,
    UsageError,
)
from .exact import GUARD, FixedReal, QuadExt
from .polynomial import PolyQ

DEFAULT_ORDER = 40


def _scalar(c):
    if isinstance(c, (Fraction, QuadExt)):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"unsupported series coefficient {type(c).__name__}")


def _normalise(coeffs):
    cs = [_scalar(c) for c in coeffs]
    d = next((c.d for c in cs if isinstance(c, QuadExt)), None)
    if d is not None:
        cs = [c if isinstance(c, QuadExt) else QuadExt(c, 0, d) for c in cs]
    return cs, d


def _rational_product(a, b, n):
    """Truncated product of two Fraction lists through a single integer convolution."""
    da = lcm(*(c.denominator for c in a)) if a else 1
    db = lcm(*(c.denominator for c in b)) if b else 1
    ai = [c.numerator * (da // c.denominator) for c in a]
    bi = [c.numerator * (db // c.denominator) for c in b]
    den = da * db
    return [Fraction(p, den) for p in kernels.convolve(ai, bi, n)]


class SeriesQ:
    """Truncated power series ``sum_{i<=order} coeffs[i] t^i``."""

    __slots__ = ("coeffs", "order", "radicand")

    def __init__(self, coeffs, order: int | None = None):
        cs, d = _normalise(coeffs)
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise UsageError("series order must be >= 0")
        zero = Fraction(0) if d is None else QuadExt(0, 0, d)
        if len(cs) > order + 1:
            cs = cs[: order + 1]
        else:
            cs.extend([zero] * (order + 1 - len(cs)))
        self.coeffs = cs
        self.order = order
        self.radicand = d

    @classmethod
    def _raw(cls, cs, order, radicand):
        s = cls.__new__(cls)
        s.coeffs = cs
        s.order = order
        s.radicand = radicand
        return s

    # constructors

    @classmethod
    def constant(cls, c, order: int = DEFAULT_ORDER) -> SeriesQ:
        return cls([c], order)

    @classmethod
    def variable(cls, order: int = DEFAULT_ORDER) -> SeriesQ:
        return cls([0, 1], order)

    @classmethod
    def from_poly(cls, p, order: int = DEFAULT_ORDER) -> SeriesQ:
        cs = p.coeffs if isinstance(p, PolyQ) else p
        return cls(list(cs)[: order + 1], order)

    # basic protocol

    def __len__(self):
        return self.order + 1

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6])
        more = ", ..." if self.order >= 6 else ""
        return f"SeriesQ([{head}{more}], order={self.order})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"({c})" if i == 0 else f"({c})*t^{i}")
        return (" + ".join(terms) or "0") + f" + O(t^{self.order + 1})"

    def valuation(self) -> int:
        """Index of the first nonzero coefficient; ``order + 1`` if all are zero."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return self.order + 1

    def is_zero(self) -> bool:
        return self.valuation() > self.order

    def truncate(self, order: int) -> SeriesQ:
        if order > self.order:
            raise SeriesError(f"cannot extend a series of order {self.order} to {order}")
        return SeriesQ._raw(self.coeffs[: order + 1], order, self.radicand)

    def _coerce(self, other):
        if isinstance(other, SeriesQ):
            return other
        if isinstance(other, (int, Fraction, QuadExt)):
            return SeriesQ([other], self.order)
        return None

    # ring operations

    def __add__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            cs = list(self.coeffs)
            cs[0] = cs[0] + other
            return SeriesQ(cs, self.order)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self.order, o.order)
        return SeriesQ([a + b for a, b in zip(self.coeffs[: n + 1], o.coeffs[: n + 1])], n)

    __radd__ = __add__

    def __neg__(self):
        return SeriesQ._raw([-c for c in self.coeffs], self.order, self.radicand)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            return SeriesQ([c * other for c in self.coeffs], self.order)
        if isinstance(other, PolyQ):
            other = SeriesQ.from_poly(other, self.order)
        if not isinstance(other, SeriesQ):
            return NotImplemented
        n = min(self.order, other.order)
        if self.radicand is None and other.radicand is None:
            return SeriesQ._raw(_rational_product(self.coeffs, other.coeffs, n), n, None)
        return SeriesQ(kernels.convolve(self.coeffs, other.coeffs, n), n)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            if not other:
                raise ZeroDivisionError("series divided by zero scalar")
            return SeriesQ([c / other for c in self.coeffs], self.order)
        if isinstance(other, PolyQ):
            other = SeriesQ.from_poly(other, self.order)
        if not isinstance(other, SeriesQ):
            return NotImplemented
        return series_div(self, other)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return series_div(o, self)

    def __pow__(self, e: int):
        e = operator.index(e)
        if e < 0:
            return SeriesQ.constant(1, self.order) / (self**-e)
        result = SeriesQ.constant(1, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, SeriesQ):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    __hash__ = None

    # calculus and composition

    def derivative(self) -> SeriesQ:
        """Term-by-term derivative; the result has order ``order - 1``."""
        if self.order == 0:
            raise SeriesError("derivative of an order-0 series is undefined")
        return SeriesQ([i * c for i, c in enumerate(self.coeffs) if i], self.order - 1)

    def shift(self, k: int) -> SeriesQ:
        """Multiply by ``t^k`` (``k >= 0``), keeping the order."""
        if k < 0:
            raise SeriesError("use LaurentQ for negative shifts")
        return SeriesQ([0] * k + self.coeffs[: self.order + 1 - k], self.order)

    def compose(self, inner: SeriesQ) -> SeriesQ:
        return series_compose(self, inner)

    def sqrt(self) -> SeriesQ:
        return series_sqrt(self)

    __call__ = compose


def first_mismatch(a: SeriesQ, b: SeriesQ, order: int | None = None):
    """Lowest index where ``a`` and ``b`` differ (through ``order``), or None."""
    n = min(a.order, b.order) if order is None else order
    for i in range(n + 1):
        if a.coeffs[i] != b.coeffs[i]:
            return i
    return None


def series_div(a: SeriesQ, b: SeriesQ) -> SeriesQ:
    n = min(a.order, b.order)
    b0 = b.coeffs[0]
    if not b0:
        raise NonInvertibleError("divisor has zero constant term")
    bs = b.coeffs
    q = []
    for i in range(n + 1):
        acc = a.coeffs[i]
        for k in range(1, i + 1):
            bk = bs[k]
            if bk:
                acc = acc - bk * q[i - k]
        q.append(acc / b0)
    return SeriesQ(q, n)


def series_sqrt(a: SeriesQ) -> SeriesQ:
    """Square root with constant term 1 of a series with constant term 1."""
    if a.coeffs[0] != 1:
        raise SqrtBranchError("sqrt needs constant term 1")
    s = [a.coeffs[0]]
    for i in range(1, a.order + 1):
        acc = a.coeffs[i]
        for k in range(1, i):
            acc = acc - s[k] * s[i - k]
        s.append(acc * Fraction(1, 2))
    return SeriesQ(s, a.order)


def series_compose(outer: SeriesQ, inner: SeriesQ) -> SeriesQ:
    """outer(inner(t)) by Horner's rule; ``inner`` must have zero constant term."""
    if inner.coeffs[0]:
        raise CompositionError("inner series must have zero constant term")
    n = min(outer.order, inner.order)
    inner = inner.truncate(n)
    val = inner.valuation()
    if val > n:
        return SeriesQ([outer.coeffs[0]], n)
    top = n // val
    acc = SeriesQ([outer.coeffs[top]], n)
    for i in range(top - 1, -1, -1):
        acc = acc * inner + outer.coeffs[i]
    return acc


def series_alg(op: str, a: SeriesQ, b: SeriesQ | None = None) -> SeriesQ:
    """Dispatch ``mul``, ``div``, ``compose``, ``sqrt`` or ``derivative``."""
    if op in ("mul", "div", "compose") and b is None:
        raise UsageError(f"{op} needs two series")
    if op == "mul":
        return a * b
    if op == "div":
        return series_div(a, b)
    if op == "compose":
        return series_compose(a, b)
    if op == "sqrt":
        return series_sqrt(a)
    if op == "derivative":
        return a.derivative()
    raise UsageError(f"unknown series operation {op!r}")


def ratfun_series(numerator, denominator, order: int = DEFAULT_ORDER) -> SeriesQ:
    """Expansion of ``numerator / denominator`` (polynomials) through ``t^order``."""
    num = numerator if isinstance(numerator, PolyQ) else PolyQ(numerator)
    den = denominator if isinstance(denominator, PolyQ) else PolyQ(denominator)
    if den[0] == 0:
        raise NonInvertibleError("denominator has zero constant term")
    d0 = den[0]
    dc = den.coeffs
    out = []
    for i in range(order + 1):
        acc = num[i]
        for k in range(1, min(i, len(dc) - 1) + 1):
            acc -= dc[k] * out[i - k]
        out.append(acc / d0)
    return SeriesQ._raw(out, order, None)


def hypergeom_coefficients(upper, lower, count: int) -> list[Fraction]:
    """Coefficients prod (a)_k / prod (b)_k / k! for k = 0..count-1."""
    upper = [Fraction(a) for a in upper]
    lower = [Fraction(b) for b in lower]
    for b in lower:
        if b <= 0 and b.denominator == 1:
            raise HypergeometricParameterError(f"lower parameter {b} is a nonpositive integer")
    out = []
    t = Fraction(1)
    for k in range(count):
        out.append(t)
        num = Fraction(1)
        for a in upper:
            num *= a + k
        den = Fraction(k + 1)
        for b in lower:
            den *= b + k
        t = t * num / den
    return out


def hypergeom_series(upper, lower, arg: SeriesQ, order: int | None = None) -> SeriesQ:
    """pFq(upper; lower; arg) truncated at ``order`` (default: order of ``arg``)."""
    n = arg.order if order is None else min(order, arg.order)
    coeffs = hypergeom_coefficients(upper, lower, n + 1)
    if arg.coeffs[0]:
        raise CompositionError("hypergeometric argument must have zero constant term")
    return series_compose(SeriesQ(coeffs, n), arg.truncate(n))


class LaurentQ:
    """Truncated Laurent series ``sum_{i >= valuation} c_i t^i`` known through ``t^order``.

    ``coeffs[j]`` multiplies ``t^(valuation + j)``; coefficients past the end of
    ``coeffs`` and up to ``order`` are zero. ``order`` is absolute, and
    :data:`EXACT` marks a Laurent polynomial known to all orders.
    """

    __slots__ = ("valuation", "coeffs", "order")

    EXACT = 1 << 62

    def __init__(self, valuation: int, coeffs, order: int = EXACT):
        cs, _ = _normalise(coeffs)
        if order - valuation + 1 < 0:
            raise SeriesError("order below valuation")
        del cs[order - valuation + 1 :]
        while cs and not cs[-1]:
            cs.pop()
        lead = 0
        while lead < len(cs) and not cs[lead]:
            lead += 1
        self.coeffs = cs[lead:]
        self.valuation = valuation + lead if self.coeffs else order + 1
        self.order = order

    @classmethod
    def from_series(cls, s: SeriesQ) -> LaurentQ:
        return cls(0, s.coeffs, s.order)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            return LaurentQ(self.valuation, [c * other for c in self.coeffs], self.order)
        if isinstance(other, SeriesQ):
            other = LaurentQ.from_series(other)
        if not isinstance(other, LaurentQ):
            return NotImplemented
        order = min(_plus(self.order, other.valuation), _plus(other.order, self.valuation))
        if not self.coeffs or not other.coeffs:
            return LaurentQ(0, [], order)
        val = self.valuation + other.valuation
        n = min(order - val, len(self.coeffs) + len(other.coeffs) - 2)
        if n < 0:
            return LaurentQ(0, [], order)
        return LaurentQ(val, kernels.convolve(self.coeffs, other.coeffs, n), order)

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            other = LaurentQ(0, [other])
        elif isinstance(other, SeriesQ):
            other = LaurentQ.from_series(other)
        if not isinstance(other, LaurentQ):
            return NotImplemented
        order = min(self.order, other.order)
        parts = [p for p in (self, other) if p.coeffs]
        if not parts:
            return LaurentQ(0, [], order)
        val = min(p.valuation for p in parts)
        top = min(order, max(p.valuation + len(p.coeffs) - 1 for p in parts))
        cs = [Fraction(0)] * (top - val + 1)
        for p in parts:
            for j, c in enumerate(p.coeffs):
                i = p.valuation + j - val
                if i < len(cs):
                    cs[i] += c
        return LaurentQ(val, cs, order)

    __radd__ = __add__

    def __pow__(self, e: int):
        if e < 0:
            raise SeriesError("negative powers of LaurentQ are not supported")
        result = LaurentQ(0, [1])
        for _ in range(e):
            result = result * self
        return result

    def shift(self, k: int) -> LaurentQ:
        """Multiply by ``t^k`` for any integer ``k``."""
        order = _plus(self.order, k)
        return LaurentQ(self.valuation + k, self.coeffs, order)

    def to_series(self, order: int) -> SeriesQ:
        if self.coeffs and self.valuation < 0:
            raise SeriesError(f"negative valuation {self.valuation}")
        if order > self.order:
            raise SeriesError(f"only known through t^{self.order}, asked for t^{order}")
        cs = [Fraction(0)] * (order + 1)
        for j, c in enumerate(self.coeffs):
            i = self.valuation + j
            if i <= order:
                cs[i] = c
        return SeriesQ(cs, order)

    def __repr__(self):
        return f"LaurentQ(valuation={self.valuation}, order={self.order}, coeffs={self.coeffs[:5]}...)"


def _plus(order: int, k: int) -> int:
    """``order + k`` with :data:`LaurentQ.EXACT` treated as infinity."""
    return order if order == LaurentQ.EXACT else order + k


def numeric_sum(
    term,
    digits: int,
    *,
    burn_in: int = 50,
    window: int = 5,
    stop_ratio: float = 0.9,
    max_terms: int = 10**6,
) -> FixedReal:
    """Sum ``term(0) + term(1) + ...`` to ``digits`` significant digits.

    Terms are monitored through their envelope ``e_n = max |t_{n-window+1..n}|``.
    Summation stops once ``e_n < 10^-(digits+5)`` and the envelope has shrunk by
    at least ``stop_ratio`` per step over the last ``window`` steps. After
    ``burn_in`` terms a new term exceeding every term in the previous window
    means the series is not converging.
    """
    work = digits + GUARD
    eps = FixedReal(10, work) ** (-(digits + 5))
    shrink = FixedReal(str(stop_ratio), work) ** window
    total = FixedReal(0, work)
    recent = deque(maxlen=window)
    envelopes = deque(maxlen=window + 1)
    for n in range(max_terms):
        t = term(n)
        if not isinstance(t, FixedReal):
            t = FixedReal(t, work)
        total = total + t
        mag = abs(t)
        if n >= burn_in and recent and mag > max(recent):
            raise NonConvergenceError(f"term {n} grew past the previous {len(recent)} terms")
        recent.append(mag)
        env = max(recent)
        envelopes.append(env)
        if (
            n >= window
            and len(envelopes) == window + 1
            and env < eps
            and (not env or env <= shrink * envelopes[0])
        ):
            return total.with_digits(digits)
    raise NonConvergenceError(f"no convergence after {max_terms} terms")
