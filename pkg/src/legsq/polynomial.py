"""Dense univariate polynomials with exact coefficients."""

from __future__ import annotations

from fractions import Fraction
from itertools import zip_longest


def horner(coeffs, x):
    """Evaluate ``sum(coeffs[i] * x**i)``; the result has the kind of ``x``.

    Works for any ``x`` supporting ``+`` and ``*`` with ints/Fractions: scalars,
    :class:`~legsq.exact.QuadExt`, :class:`~legsq.powerseries.SeriesQ`, FixedReal.
    """
    acc = x * 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


class PolyQ:
    """Polynomial with Rational coefficients, ``coeffs[i]`` multiplying ``y**i``.

    Trailing zeros are stripped, so ``coeffs`` is empty for the zero polynomial.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, k: int, c=1) -> PolyQ:
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __call__(self, x):
        return horner(self.coeffs, x)

    def __add__(self, other):
        if not isinstance(other, PolyQ):
            other = PolyQ([other])
        return PolyQ(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0))

    __radd__ = __add__

    def __neg__(self):
        return PolyQ(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other if isinstance(other, PolyQ) else PolyQ([-Fraction(other)]))

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        if not isinstance(other, PolyQ):
            if isinstance(other, (int, Fraction)):
                return PolyQ(c * other for c in self.coeffs)
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return PolyQ()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PolyQ(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = PolyQ([1])
        for _ in range(e):
            result = result * self
        return result

    def derivative(self) -> PolyQ:
        return PolyQ(i * c for i, c in enumerate(self.coeffs) if i)

    def __eq__(self, other):
        if isinstance(other, PolyQ):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == PolyQ([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"PolyQ({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mon = "" if i == 0 else ("y" if i == 1 else f"y^{i}")
            if mon and c == 1:
                parts.append(mon)
            elif mon and c == -1:
                parts.append("-" + mon)
            else:
                parts.append(f"{c}*{mon}" if mon else str(c))
        return " + ".join(parts).replace("+ -", "- ")


def poly(*coeffs) -> PolyQ:
    """Shorthand: ``poly(1, 5, 8)`` is ``1 + 5y + 8y^2``."""
    return PolyQ(coeffs)
