"""Exact scalars and the decimal fixed-point real.

``Rational`` is :class:`fractions.Fraction`. :class:`QuadExt` is an element
``a + b*sqrt(d)`` of a real quadratic field with rational ``a`` and ``b``.
:class:`FixedReal` is a decimal floating value rounded to a fixed number of
significant digits; the transcendental functions live in :func:`fixed_fn`.
"""

from __future__ import annotations

import decimal
import math
import operator
import re
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC

from .errors import DomainError, RadicandMismatchError, UsageError

Rational = Fraction

#: Extra working digits carried by every numeric pipeline.
GUARD = 10

_EMAX = 10**8


def binomial(n: int, k: int) -> int:
    """Binomial coefficient C(n, k); zero for k outside 0..n."""
    if n < 0:
        raise UsageError(f"binomial requires n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def is_squarefree(d: int) -> bool:
    if d < 1:
        return False
    m = 2
    while m * m <= d:
        if d % (m * m) == 0:
            return False
        m += 1
    return True


class QuadExt:
    """Exact element ``a + b*sqrt(d)`` of Q(sqrt(d)), ``d`` squarefree and >= 2.

    Ints and Fractions mix freely (they are promoted with ``b = 0``). Mixing two
    different radicands raises :class:`RadicandMismatchError`.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 2):
        d = operator.index(d)
        if d < 2 or not is_squarefree(d):
            raise UsageError(f"radicand must be a squarefree integer >= 2, got {d}")
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise RadicandMismatchError(f"cannot combine sqrt({self.d}) and sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(other, 0, self.d)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadExt(self.a * other, self.b * other, self.d)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a * o.a + self.b * o.b * self.d, self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero in Q(sqrt(%d))" % self.d)
        if o.b == 0:
            return QuadExt(self.a / o.a, self.b / o.a, self.d)
        n = o.norm()
        return self * QuadExt(o.a / n, -o.b / n, self.d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, e: int):
        e = operator.index(e)
        if e < 0:
            return QuadExt(1, 0, self.d) / (self**-e)
        result = QuadExt(1, 0, self.d)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            if other.d == self.d:
                return self.a == other.a and self.b == other.b
            return self.b == 0 and other.b == 0 and self.a == other.a
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def conjugate(self) -> QuadExt:
        return QuadExt(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def sign(self) -> int:
        """Exact sign of the real number ``a + b*sqrt(d)``."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0 or sa == sb:
            return sa or sb
        if sa == 0:
            return sb
        # opposite signs: the larger square wins (equality would make sqrt(d) rational)
        return sa if self.a * self.a > self.b * self.b * self.d else sb

    def _cmp(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign()

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def is_rational(self) -> bool:
        return self.b == 0

    def to_fixed(self, digits: int) -> FixedReal:
        """Numeric value to ``digits`` significant digits.

        When ``a`` and ``b*sqrt(d)`` have opposite signs the value is taken as
        ``norm / (a - b*sqrt(d))`` so no digits cancel.
        """
        work = digits + GUARD
        if self.b == 0:
            return FixedReal(self.a, digits)
        root = FixedReal(self.d, work).sqrt()
        if self.a == 0 or (self.a > 0) == (self.b > 0):
            val = FixedReal(self.a, work) + root * FixedReal(self.b, work)
        else:
            val = FixedReal(self.norm(), work) / (FixedReal(self.a, work) - root * FixedReal(self.b, work))
        return val.with_digits(digits)

    def __float__(self):
        return float(self.to_fixed(20))

    def __repr__(self):
        return f"QuadExt({self.a}, {self.b}, {self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}*sqrt({self.d})"


def quad_arith(lhs, rhs, op: str):
    """Field operation ``op`` (add, sub, mul, div) on two elements of Q(sqrt(d))."""
    ops = {"add": operator.add, "sub": operator.sub, "mul": operator.mul, "div": operator.truediv}
    try:
        fn = ops[op]
    except KeyError:
        raise UsageError(f"unknown operation {op!r}") from None
    if isinstance(lhs, QuadExt) and isinstance(rhs, QuadExt) and lhs.d != rhs.d:
        raise RadicandMismatchError(f"radicands differ: {lhs.d} vs {rhs.d}")
    return fn(lhs, rhs)


_SCALAR_RE = re.compile(
    r"^\s*(?P<a>[+-]?\d+(?:/\d+)?)?\s*"
    r"(?:(?P<sign>[+-])\s*(?:(?P<b>\d+(?:/\d+)?)\s*\*\s*)?sqrt\(\s*(?P<d>\d+)\s*\))?\s*$"
)


def parse_scalar(text: str):
    """Parse ``p/q`` or ``p/q+r/s*sqrt(d)`` into a Fraction or QuadExt."""
    m = _SCALAR_RE.match(text)
    if not m or (m.group("a") is None and m.group("d") is None):
        raise UsageError(f"cannot parse scalar {text!r}")
    a = Fraction(m.group("a") or 0)
    if m.group("d") is None:
        return a
    b = Fraction(m.group("b") or 1)
    if m.group("sign") == "-":
        b = -b
    d = int(m.group("d"))
    r = math.isqrt(d)
    if r * r == d:
        return a + b * r
    # pull square factors out so the radicand is squarefree
    f = 1
    m2 = 2
    while m2 * m2 <= d:
        while d % (m2 * m2) == 0:
            d //= m2 * m2
            f *= m2
        m2 += 1
    return QuadExt(a, b * f, d)


def _context(digits: int) -> decimal.Context:
    return decimal.Context(
        prec=digits,
        rounding=decimal.ROUND_HALF_EVEN,
        Emax=_EMAX,
        Emin=-_EMAX,
        traps=[decimal.InvalidOperation, decimal.DivisionByZero, decimal.Overflow],
    )


def _as_decimal(value, digits: int) -> Decimal:
    if isinstance(value, FixedReal):
        return value.value
    if isinstance(value, Decimal):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a numeric value here")
    if isinstance(value, int):
        return Decimal(value)
    if isinstance(value, _RationalABC):
        ctx = _context(digits)
        return ctx.divide(Decimal(value.numerator), Decimal(value.denominator))
    if isinstance(value, QuadExt):
        return value.to_fixed(digits).value
    if isinstance(value, str):
        return Decimal(value)
    raise TypeError(f"cannot convert {type(value).__name__} to FixedReal")


class FixedReal:
    """Real number ``mantissa * 10**exponent`` rounded to ``digits`` significant digits.

    Binary operations work at the smaller of the two operand precisions; exact
    operands (int, Fraction, QuadExt) are converted at the FixedReal's precision.
    """

    __slots__ = ("value", "digits")

    def __init__(self, value, digits: int):
        if digits < 1:
            raise UsageError(f"precision must be positive, got {digits}")
        object.__setattr__(self, "digits", digits)
        object.__setattr__(self, "value", _context(digits).plus(_as_decimal(value, digits + GUARD)))

    def __setattr__(self, name, value):
        raise AttributeError("FixedReal is immutable")

    @property
    def mantissa(self) -> int:
        t = self.value.as_tuple()
        m = int("".join(map(str, t.digits)) or "0")
        return -m if t.sign else m

    @property
    def exponent(self) -> int:
        return self.value.as_tuple().exponent

    def with_digits(self, digits: int) -> FixedReal:
        return FixedReal(self.value, digits)

    def _binary(self, other, fn):
        if isinstance(other, FixedReal):
            p = min(self.digits, other.digits)
            o = other.value
        else:
            try:
                o = _as_decimal(other, self.digits + GUARD)
            except TypeError:
                return NotImplemented
            p = self.digits
        return FixedReal(fn(_context(p), self.value, o), p)

    def _rbinary(self, other, fn):
        try:
            o = _as_decimal(other, self.digits + GUARD)
        except TypeError:
            return NotImplemented
        return FixedReal(fn(_context(self.digits), o, self.value), self.digits)

    def __add__(self, other):
        return self._binary(other, decimal.Context.add)

    def __radd__(self, other):
        return self._rbinary(other, decimal.Context.add)

    def __sub__(self, other):
        return self._binary(other, decimal.Context.subtract)

    def __rsub__(self, other):
        return self._rbinary(other, decimal.Context.subtract)

    def __mul__(self, other):
        return self._binary(other, decimal.Context.multiply)

    def __rmul__(self, other):
        return self._rbinary(other, decimal.Context.multiply)

    def __truediv__(self, other):
        if not isinstance(other, FixedReal) and isinstance(other, (int, Fraction, QuadExt)) and not other:
            raise ZeroDivisionError("FixedReal division by zero")
        if isinstance(other, FixedReal) and not other.value:
            raise ZeroDivisionError("FixedReal division by zero")
        return self._binary(other, decimal.Context.divide)

    def __rtruediv__(self, other):
        if not self.value:
            raise ZeroDivisionError("FixedReal division by zero")
        return self._rbinary(other, decimal.Context.divide)

    def __pow__(self, e: int):
        e = operator.index(e)
        return FixedReal(_context(self.digits).power(self.value, e), self.digits)

    def __neg__(self):
        return FixedReal(self.value.copy_negate(), self.digits)

    def __pos__(self):
        return self

    def __abs__(self):
        return FixedReal(self.value.copy_abs(), self.digits)

    def __bool__(self):
        return bool(self.value)

    def _cmp_value(self, other):
        if isinstance(other, FixedReal):
            return other.value
        return _as_decimal(other, self.digits + GUARD)

    def __eq__(self, other):
        try:
            return self.value == self._cmp_value(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __lt__(self, other):
        return self.value < self._cmp_value(other)

    def __le__(self, other):
        return self.value <= self._cmp_value(other)

    def __gt__(self, other):
        return self.value > self._cmp_value(other)

    def __ge__(self, other):
        return self.value >= self._cmp_value(other)

    def __float__(self):
        return float(self.value)

    def __repr__(self):
        return f"FixedReal('{self.value}', digits={self.digits})"

    def __str__(self):
        return str(self.value)

    def sqrt(self) -> FixedReal:
        return fixed_fn("sqrt", self, self.digits)

    def exp(self) -> FixedReal:
        return fixed_fn("exp", self, self.digits)

    def log(self) -> FixedReal:
        return fixed_fn("log", self, self.digits)

    def sci(self, sig: int = 3) -> str:
        """Short scientific string, e.g. ``'1.23E-31'``; used for residuals."""
        if not self.value:
            return "0"
        return format(self.value, f".{sig - 1}E")


def _bs_chudnovsky(a: int, b: int):
    if b - a == 1:
        if a == 0:
            p = q = 1
        else:
            p = (6 * a - 5) * (2 * a - 1) * (6 * a - 1)
            q = a * a * a * 10939058860032000  # 640320**3 // 24
        t = p * (13591409 + 545140134 * a)
        return p, q, -t if a & 1 else t
    m = (a + b) // 2
    p1, q1, t1 = _bs_chudnovsky(a, m)
    p2, q2, t2 = _bs_chudnovsky(m, b)
    return p1 * p2, q1 * q2, q2 * t1 + p1 * t2


@lru_cache(maxsize=64)
def _pi_decimal(digits: int) -> Decimal:
    # each Chudnovsky term adds about 14.18 digits
    terms = digits // 14 + 2
    _, q, t = _bs_chudnovsky(0, terms)
    ctx = _context(digits)
    root = ctx.sqrt(Decimal(10005))
    return ctx.divide(ctx.multiply(Decimal(q * 426880), root), Decimal(t))


def fixed_fn(kind: str, arg=None, digits: int = 40) -> FixedReal:
    """Evaluate ``exp``, ``log``, ``sqrt`` or ``pi_const`` to ``digits`` significant digits.

    The computation runs with :data:`GUARD` extra digits and is rounded once.
    ``arg`` is ignored for ``pi_const``.
    """
    if digits < 1:
        raise UsageError(f"precision must be positive, got {digits}")
    work = digits + GUARD
    if kind == "pi_const":
        return FixedReal(_pi_decimal(work), digits)
    if arg is None:
        raise UsageError(f"{kind} needs an argument")
    x = _as_decimal(arg, work)
    ctx = _context(work)
    if kind == "exp":
        try:
            r = ctx.exp(x)
        except decimal.Overflow:
            raise DomainError(f"exp argument {x} too large") from None
        if r.is_zero():
            raise DomainError(f"exp argument {x} underflows")
    elif kind == "log":
        if x <= 0:
            raise DomainError(f"log of nonpositive value {x}")
        r = ctx.ln(x)
    elif kind == "sqrt":
        if x <= 0:
            raise DomainError(f"sqrt of nonpositive value {x}")
        r = ctx.sqrt(x)
    else:
        raise UsageError(f"unknown function kind {kind!r}")
    return FixedReal(r, digits)


def pi_fixed(digits: int) -> FixedReal:
    return fixed_fn("pi_const", None, digits)
