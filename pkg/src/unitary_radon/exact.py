"""Exact complex-rational scalars.

The whole symbolic layer runs on Gaussian rationals so that orthogonality
tables, projection idempotence and inversion round trips can be asserted with
``==`` instead of tolerances.  Floats enter only at pointwise-evaluation and
Monte-Carlo boundaries; mixing a QC with a float/complex deliberately degrades
the result to ``complex``.
"""

from __future__ import annotations

from fractions import Fraction


class QC:
    """A complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    @staticmethod
    def from_complex(z):
        """Exact embedding of a float complex (binary fractions, no rounding)."""
        return QC(Fraction(z.real), Fraction(z.imag))

    def conjugate(self):
        return QC(self.re, -self.im)

    def __add__(self, other):
        if isinstance(other, QC):
            return QC(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return QC(self.re + other, self.im)
        if isinstance(other, (float, complex)):
            return complex(self) + other
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return QC(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QC):
            return QC(self.re * other.re - self.im * other.im,
                      self.re * other.im + self.im * other.re)
        if isinstance(other, (int, Fraction)):
            return QC(self.re * other, self.im * other)
        if isinstance(other, (float, complex)):
            return complex(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return QC(self.re / other, self.im / other)
        if isinstance(other, QC):
            d = other.re * other.re + other.im * other.im
            if d == 0:
                raise ZeroDivisionError("division by exact zero")
            return (self * other.conjugate()) / d
        if isinstance(other, (float, complex)):
            return complex(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return QC(other) / self
        if isinstance(other, (float, complex)):
            return other / complex(self)
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("QC powers must be non-negative integers")
        out = QC(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, QC):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, complex):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return abs(complex(self))

    def __repr__(self):
        if not self.im:
            return f"QC({self.re})"
        return f"QC({self.re}, {self.im})"


QC_ZERO = QC(0)
QC_ONE = QC(1)
QC_I = QC(0, 1)


def as_qc(value):
    """Coerce int/Fraction/QC to QC; floats embed exactly (documented caveat)."""
    if isinstance(value, QC):
        return value
    if isinstance(value, (int, Fraction)):
        return QC(value)
    if isinstance(value, complex):
        return QC.from_complex(value)
    if isinstance(value, float):
        return QC(Fraction(value))
    raise TypeError(f"cannot interpret {type(value).__name__} as QC")


def to_complex(value):
    if isinstance(value, QC):
        return complex(value)
    return complex(value)
