"""Exact phase angles stored as rational multiples of pi."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

PhaseLike = Union["Phase", Fraction, int, str]


@dataclass(frozen=True, order=True)
class Phase:
    """A phase ``(numerator / denominator) * pi`` reduced to ``[0, 2*pi)``.

    The rational multiple of pi is kept in lowest terms by :class:`Fraction`,
    so two phases compare equal exactly when they denote the same angle.

    >>> Phase(Fraction(-8, 3))
    Phase(4/3)
    >>> Phase(1) + Phase(Fraction(3, 2))
    Phase(1/2)
    """

    value: Fraction

    def __post_init__(self):
        value = self.value
        if isinstance(value, Phase):
            value = value.value
        if isinstance(value, str):
            value = Fraction(value)
        if not isinstance(value, Rational):
            raise TypeError(f"phase must be an exact rational multiple of pi, got {value!r}")
        object.__setattr__(self, "value", Fraction(value) % 2)

    @classmethod
    def of(cls, value: PhaseLike) -> "Phase":
        return value if isinstance(value, Phase) else cls(value)

    @property
    def numerator(self) -> int:
        return self.value.numerator

    @property
    def denominator(self) -> int:
        return self.value.denominator

    @property
    def radians(self) -> float:
        return float(self.value) * math.pi

    def __add__(self, other: PhaseLike) -> "Phase":
        return Phase(self.value + Phase.of(other).value)

    __radd__ = __add__

    def __sub__(self, other: PhaseLike) -> "Phase":
        return Phase(self.value - Phase.of(other).value)

    def __neg__(self) -> "Phase":
        return Phase(-self.value)

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        return f"Phase({self.value})"


ZERO = Phase(0)
PI = Phase(1)
