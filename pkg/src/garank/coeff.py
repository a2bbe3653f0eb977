"""Complex coefficients in the two supported arithmetic modes.

``float`` mode uses Python's built-in :class:`complex` (a pair of binary64
values). ``exact`` mode uses :class:`GaussianRational`, a complex number whose
real and imaginary parts are :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational, Real, Complex
from typing import Union

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)

Scalar = Union[int, float, complex, Fraction, "GaussianRational"]


class GaussianRational:
    """An element of Q(i), immutable and hashable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def convert(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (Rational, Real)) and not isinstance(value, bool):
            return cls(Fraction(value))
        if isinstance(value, Complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        raise TypeError(f"cannot convert {value!r} to an exact coefficient")

    @classmethod
    def parse(cls, re: str, im: str = "0") -> "GaussianRational":
        return cls(Fraction(re), Fraction(im))

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        try:
            other = GaussianRational.convert(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = GaussianRational.convert(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.convert(other) - self

    def __mul__(self, other):
        try:
            other = GaussianRational.convert(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = GaussianRational.convert(other)
        except TypeError:
            return NotImplemented
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return GaussianRational.convert(other) * self.reciprocal()

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def reciprocal(self) -> "GaussianRational":
        d = self.abs2()
        if d == 0:
            raise ZeroDivisionError("reciprocal of exact zero")
        return GaussianRational(self.re / d, -self.im / d)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus, exact."""
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return abs(complex(self))

    @property
    def real(self) -> Fraction:
        return self.re

    @property
    def imag(self) -> Fraction:
        return self.im

    # comparisons / conversions ---------------------------------------
    def __eq__(self, other):
        try:
            other = GaussianRational.convert(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}i"


I_POWERS_EXACT = (
    GaussianRational(1),
    GaussianRational(0, 1),
    GaussianRational(-1),
    GaussianRational(0, -1),
)
I_POWERS_FLOAT = (1 + 0j, 1j, -1 + 0j, -1j)


def coerce(value, mode: str):
    """Convert ``value`` into the coefficient type of ``mode``."""
    if mode == FLOAT:
        if isinstance(value, GaussianRational):
            return complex(value)
        return complex(value)
    if mode == EXACT:
        return GaussianRational.convert(value)
    raise ValueError(f"unknown coefficient mode {mode!r}")


def zero(mode: str):
    return GaussianRational() if mode == EXACT else 0j


def one(mode: str):
    return GaussianRational(1) if mode == EXACT else 1 + 0j


def modulus2(value):
    """Squared modulus; a Fraction in exact mode, a float otherwise."""
    if isinstance(value, GaussianRational):
        return value.abs2()
    return value.real * value.real + value.imag * value.imag


def fraction_str(x: Fraction) -> str:
    """Always ``num/den``, as used by the JSON wire format."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"
