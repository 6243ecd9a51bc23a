"""Log-domain arithmetic for positive quantities far beyond float range.

A :class:`LogMagnitude` stores the natural log of a nonnegative real, with
``-inf`` as the distinguished zero.  Products and powers become additions on
the log scale, so expressions like ``C(n, ell)`` stay computable when n has
millions of binary digits.  Sums accumulate largest-term-first through
``log1p``; for sums of at most a few hundred terms the relative error stays
within a few hundred ulp, far inside the 1e-9 budget the certificate checks
assume.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

LN2 = math.log(2.0)

_NEG_INF = float("-inf")


@dataclass(frozen=True)
class LogMagnitude:
    """A nonnegative real represented by its natural logarithm."""

    ln: float

    @staticmethod
    def zero() -> "LogMagnitude":
        return LogMagnitude(_NEG_INF)

    @staticmethod
    def one() -> "LogMagnitude":
        return LogMagnitude(0.0)

    @staticmethod
    def from_value(x) -> "LogMagnitude":
        if x < 0:
            raise ValueError("LogMagnitude represents nonnegative reals only")
        if x == 0:
            return LogMagnitude.zero()
        if isinstance(x, Fraction):
            return LogMagnitude(_ln_int(x.numerator) - _ln_int(x.denominator))
        if isinstance(x, int):
            return LogMagnitude(_ln_int(x))
        return LogMagnitude(math.log(x))

    @staticmethod
    def from_ln(ln_value: float) -> "LogMagnitude":
        return LogMagnitude(float(ln_value))

    @staticmethod
    def from_log2(log2_value: float) -> "LogMagnitude":
        return LogMagnitude(float(log2_value) * LN2)

    @property
    def is_zero(self) -> bool:
        return self.ln == _NEG_INF

    @property
    def log2(self) -> float:
        return self.ln / LN2

    def to_float(self) -> float:
        """The plain float value; overflows to ``inf`` past ~1e308."""
        return math.exp(self.ln)

    def __mul__(self, other: "LogMagnitude") -> "LogMagnitude":
        return LogMagnitude(self.ln + other.ln)

    def __truediv__(self, other: "LogMagnitude") -> "LogMagnitude":
        if other.is_zero:
            raise ZeroDivisionError("division by LogMagnitude zero")
        if self.is_zero:
            return LogMagnitude.zero()
        return LogMagnitude(self.ln - other.ln)

    def __pow__(self, exponent: float) -> "LogMagnitude":
        if self.is_zero:
            if exponent == 0:
                return LogMagnitude.one()
            if exponent < 0:
                raise ZeroDivisionError("zero to a negative power")
            return LogMagnitude.zero()
        return LogMagnitude(self.ln * exponent)

    def __add__(self, other: "LogMagnitude") -> "LogMagnitude":
        return LogMagnitude(log_sum_ln((self.ln, other.ln)))

    # Comparisons are exact on the log scale.
    def __lt__(self, other: "LogMagnitude") -> bool:
        return self.ln < other.ln

    def __le__(self, other: "LogMagnitude") -> bool:
        return self.ln <= other.ln

    def __gt__(self, other: "LogMagnitude") -> bool:
        return self.ln > other.ln

    def __ge__(self, other: "LogMagnitude") -> bool:
        return self.ln >= other.ln


def _ln_int(k: int) -> float:
    # math.log handles arbitrary-precision ints exactly enough (full 53 bits).
    if k == 0:
        return _NEG_INF
    return math.log(k)


def log_sum_ln(ln_terms: Iterable[float]) -> float:
    """ln(sum(exp(t))) accumulated largest-first for bounded relative error."""
    terms = sorted((t for t in ln_terms if t != _NEG_INF), reverse=True)
    if not terms:
        return _NEG_INF
    acc = terms[0]
    for t in terms[1:]:
        acc += math.log1p(math.exp(t - acc))
    return acc


def log_sum(terms: Iterable[LogMagnitude]) -> LogMagnitude:
    return LogMagnitude(log_sum_ln(t.ln for t in terms))


def ln_shifted(ln_n: float, a: int) -> float:
    """ln(n - a) computed from ln(n), for integer a with 0 <= a < n.

    For astronomically large n the correction a/n underflows and the result
    is ln(n) itself, which is exact to within float resolution.
    """
    if a < 0:
        raise ValueError("shift must be nonnegative")
    if a == 0:
        return ln_n
    gap = math.log(a) - ln_n
    if gap >= 0:
        raise ValueError("ln(n - a) undefined: a >= n")
    x = math.exp(gap) if gap > -745.0 else 0.0
    return ln_n + math.log1p(-x)


def ln_comb_shifted(ln_n: float, shift: int, k: int) -> float:
    """ln C(n - shift, k) from ln(n), for small integers shift and k."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    total = 0.0
    for i in range(k):
        total += ln_shifted(ln_n, shift + i)
    return total - math.lgamma(k + 1)


def ln_comb(n: int, k: int) -> float:
    """ln C(n, k) for exact integers (0 when the coefficient is 1)."""
    return _ln_int(math.comb(n, k))
