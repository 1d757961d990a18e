"""Exact arithmetic in a real quadratic field Q(w).

The generator w is the positive root of ``w**2 = e + f*w`` (so
``w = (f + sqrt(f**2 + 4e))/2``) and every element is stored as an exact
pair ``r + i*w`` with rational r, i.  All comparisons route through
:meth:`QuadNum.sign`, the single certified comparison primitive.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import isqrt

Rational = Fraction


def _sgn_fraction(x: Fraction) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def _is_square_fraction(x: Fraction) -> bool:
    """True iff x is the square of a rational."""
    if x < 0:
        return False
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    return rn * rn == n and rd * rd == d


def _floor_sqrt_fraction(x: Fraction) -> int:
    """Largest integer t >= 0 with t**2 <= x (x >= 0)."""
    n, d = x.numerator, x.denominator
    t = isqrt(n // d)
    while (t + 1) * (t + 1) * d <= n:
        t += 1
    while t * t * d > n:
        t -= 1
    return t


@dataclass(frozen=True)
class FieldSpec:
    """Defining data of Q(w) with w**2 = e + f*w, positive root, w > 1."""

    e: Fraction
    f: Fraction
    label: str = ""
    m: Fraction = dc_field(init=False, compare=False)  # discriminant f^2 + 4e

    def __post_init__(self) -> None:
        e = Fraction(self.e)
        f = Fraction(self.f)
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "f", f)
        m = f * f + 4 * e
        object.__setattr__(self, "m", m)
        if m <= 0:
            raise ValueError(f"f^2 + 4e = {m} must be positive")
        if _is_square_fraction(m):
            raise ValueError(f"f^2 + 4e = {m} is a rational square; w would be rational")
        # w > 1  <=>  sqrt(m) > 2 - f
        if 2 - f > 0 and m <= (2 - f) ** 2:
            raise ValueError("positive root w is not > 1")

    def from_rational(self, x: Fraction | int) -> QuadNum:
        return QuadNum(Fraction(x), Fraction(0), self)

    @property
    def zero(self) -> QuadNum:
        return self.from_rational(0)

    @property
    def one(self) -> QuadNum:
        return self.from_rational(1)

    @property
    def w(self) -> QuadNum:
        return QuadNum(Fraction(0), Fraction(1), self)

    def w_float(self) -> float:
        return (float(self.f) + float(self.m) ** 0.5) / 2.0


class QuadNum:
    """Immutable exact element r + i*w of a fixed real quadratic field."""

    __slots__ = ("r", "i", "field")

    def __init__(self, r: Fraction | int, i: Fraction | int, field: FieldSpec) -> None:
        object.__setattr__(self, "r", Fraction(r))
        object.__setattr__(self, "i", Fraction(i))
        object.__setattr__(self, "field", field)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("QuadNum is immutable")

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other: QuadNum | Fraction | int) -> QuadNum:
        if isinstance(other, QuadNum):
            if other.field != self.field:
                raise ValueError("mixed quadratic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadNum(other, 0, self.field)
        return NotImplemented  # type: ignore[return-value]

    # -- ring operations --------------------------------------------------

    def __add__(self, other: QuadNum | Fraction | int) -> QuadNum:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadNum(self.r + o.r, self.i + o.i, self.field)

    __radd__ = __add__

    def __sub__(self, other: QuadNum | Fraction | int) -> QuadNum:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadNum(self.r - o.r, self.i - o.i, self.field)

    def __rsub__(self, other: QuadNum | Fraction | int) -> QuadNum:
        return (-self) + other

    def __neg__(self) -> QuadNum:
        return QuadNum(-self.r, -self.i, self.field)

    def __mul__(self, other: QuadNum | Fraction | int) -> QuadNum:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        # (r1 + i1 w)(r2 + i2 w) with w^2 = e + f w
        e, f = self.field.e, self.field.f
        return QuadNum(
            self.r * o.r + e * self.i * o.i,
            self.r * o.i + self.i * o.r + f * self.i * o.i,
            self.field,
        )

    __rmul__ = __mul__

    def conjugate(self) -> QuadNum:
        """Image under w -> f - w (the other root)."""
        return QuadNum(self.r + self.i * self.field.f, -self.i, self.field)

    def norm(self) -> Fraction:
        """Rational norm self * self.conjugate()."""
        return self.r * self.r + self.r * self.i * self.field.f - self.i * self.i * self.field.e

    def inverse(self) -> QuadNum:
        if self.r == 0 and self.i == 0:
            raise ZeroDivisionError("inverse of zero")
        n = self.norm()
        return QuadNum((self.r + self.i * self.field.f) / n, -self.i / n, self.field)

    def __truediv__(self, other: QuadNum | Fraction | int) -> QuadNum:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: QuadNum | Fraction | int) -> QuadNum:
        return self.inverse() * other

    # -- ordering ---------------------------------------------------------

    def sign(self) -> int:
        """Sign of r + i*w under the positive real embedding, exactly.

        Rewrites the value as p + q*sqrt(m) and decides by rational case
        analysis, comparing p^2 with q^2 m when the signs differ.
        """
        f, m = self.field.f, self.field.m
        p = self.r + self.i * f / 2
        q = self.i / 2
        if q == 0:
            return _sgn_fraction(p)
        if p == 0:
            return _sgn_fraction(q)
        sp, sq = _sgn_fraction(p), _sgn_fraction(q)
        if sp == sq:
            return sp
        lhs, rhs = p * p, q * q * m
        if lhs == rhs:  # impossible for non-square m; kept as a guard
            return 0
        return sp if lhs > rhs else sq

    def is_zero(self) -> bool:
        return self.r == 0 and self.i == 0

    def is_rational(self) -> bool:
        return self.i == 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QuadNum):
            return self.field == other.field and self.r == other.r and self.i == other.i
        if isinstance(other, (int, Fraction)):
            return self.i == 0 and self.r == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.r, self.i))

    def __lt__(self, other: QuadNum | Fraction | int) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: QuadNum | Fraction | int) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: QuadNum | Fraction | int) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: QuadNum | Fraction | int) -> bool:
        return (self - other).sign() >= 0

    def __abs__(self) -> QuadNum:
        return -self if self.sign() < 0 else self

    # -- floor / mod ------------------------------------------------------

    def floor(self) -> int:
        """Unique n with n <= self < n+1, certified by sign() checks."""
        f, m = self.field.f, self.field.m
        p = self.r + self.i * f / 2
        q = self.i / 2
        if q == 0:
            return p.numerator // p.denominator
        t = _floor_sqrt_fraction(q * q * m)
        if q > 0:
            fs = t
        else:
            fs = -t - 1  # q*sqrt(m) < 0 is irrational, never an integer
        n = p.numerator // p.denominator + fs
        # frac(p) + frac(q sqrt m) may carry; adjust and certify
        if (self - (n + 1)).sign() >= 0:
            n += 1
        if (self - n).sign() < 0 or (self - (n + 1)).sign() >= 0:
            raise ArithmeticError(f"floor certification failed for {self!r}")
        return n

    def ceil(self) -> int:
        return -((-self).floor())

    def __float__(self) -> float:
        return float(self.r) + float(self.i) * self.field.w_float()

    # -- text form ---------------------------------------------------------

    def __str__(self) -> str:
        r, i = self.r, self.i
        sep = "+" if i >= 0 else "-"
        ai = abs(i)
        return f"{r.numerator}/{r.denominator}{sep}{ai.numerator}/{ai.denominator}*w"

    def __repr__(self) -> str:
        return f"QuadNum({self.r!r}, {self.i!r})"


_QUADNUM_RE = re.compile(
    r"""^\s*(?P<r>[+-]?\d+(?:/\d+)?)\s*
         (?:(?P<sep>[+-])\s*(?P<i>\d+(?:/\d+)?)\s*\*\s*w)?\s*$""",
    re.VERBOSE,
)


def parse_quadnum(text: str, field: FieldSpec) -> QuadNum:
    """Parse the textual form "r+i*w" with r, i as reduced fractions.

    Round-trips bit-exactly with str(QuadNum); bare rationals are accepted.
    """
    mo = _QUADNUM_RE.match(text)
    if mo is None:
        raise ValueError(f"cannot parse quadratic number: {text!r}")
    r = Fraction(mo.group("r"))
    if mo.group("i") is None:
        i = Fraction(0)
    else:
        i = Fraction(mo.group("i"))
        if mo.group("sep") == "-":
            i = -i
    return QuadNum(r, i, field)


def reduce_mod(a: QuadNum, p: QuadNum) -> tuple[int, QuadNum]:
    """Division with remainder: a = q*p + rem with 0 <= rem < p.

    The quotient is computed exactly in the field and floored; requires p > 0.
    """
    if not isinstance(p, QuadNum):
        raise TypeError("modulus must be a QuadNum")
    if p.sign() <= 0:
        raise ValueError("modulus must be positive")
    q = (a / p).floor()
    rem = a - p * q
    if rem.sign() < 0 or (p - rem).sign() <= 0:
        raise ArithmeticError("reduce_mod postcondition failed")
    return q, rem


def qmax(first: QuadNum, *rest: QuadNum) -> QuadNum:
    out = first
    for x in rest:
        if x > out:
            out = x
    return out


def qmin(first: QuadNum, *rest: QuadNum) -> QuadNum:
    out = first
    for x in rest:
        if x < out:
            out = x
    return out
