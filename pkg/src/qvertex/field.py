"""Exact scalar arithmetic and the evaluation-point container.

Every quantity in this package is a rational function of q^(1/2), of the
spectral parameter, and (in generic-weight mode) of half-integer powers of
the weights.  Evaluating those functions over exact rationals turns every
identity check into a zero-tolerance equality.  The evaluation point stores
r with q = r*r, so each half-integer power of q is an integer power of r,
and it stores the *square* of the spectral parameter as the primary datum:
most formulas are even in lambda, and some checks pin lambda^2 to a value
whose square root is irrational.  Operations that genuinely need an odd
power of lambda demand that it was supplied.

A double-precision backend for timing runs reuses the same code paths by
duck typing (see :meth:`EvalPoint.as_float`); acceptance checks never use
it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

Scalar = Fraction

ScalarLike = Union[Scalar, int, str]


class ResonanceError(ArithmeticError):
    """An evaluation point made a denominator vanish.

    Resonant points are rejected, never regularized; samplers retry with a
    fresh point instead.
    """


class RegularizationError(ResonanceError):
    """A series denominator vanished before the series truncated."""


class UnsupportedInputError(ValueError):
    """Input outside the exactly-computable domain of an operation."""


def scalar(value: ScalarLike, den: Optional[int] = None) -> Scalar:
    """Coerce ints, 'p/q' strings, or Fractions into a canonical Scalar."""
    if den is not None:
        return Fraction(value, den)
    if isinstance(value, str):
        return Fraction(value)
    return Fraction(value)


def power(base: Scalar, exponent: int) -> Scalar:
    """base**exponent for signed integer exponents.

    Raises ZeroDivisionError when base is 0 and the exponent is negative.
    """
    if base == 0 and exponent < 0:
        raise ZeroDivisionError("zero base with negative exponent")
    return base**exponent


def format_scalar(x: Scalar) -> str:
    """Canonical lowest-terms string: '3/4', '-7', '0'."""
    return str(x)


def parse_scalar(text: str) -> Scalar:
    return Fraction(text)


@dataclass(frozen=True)
class EvalPoint:
    """One exact evaluation point: r (with q = r^2) plus spectral data.

    ``lam2`` is the square of the spectral parameter and is always set;
    ``lam`` is the parameter itself and may be None when only the square
    was pinned.  ``mu`` is the second spectral parameter used by the
    Yang-Baxter and RLL checks.
    """

    r: Scalar
    lam2: Scalar
    lam: Optional[Scalar] = None
    mu: Optional[Scalar] = None

    def __post_init__(self) -> None:
        if self.r == 0:
            raise ValueError("r must be nonzero (negative powers occur)")
        if self.lam2 == 0:
            raise ValueError("lambda^2 must be nonzero")
        if self.lam is not None and self.lam * self.lam != self.lam2:
            raise ValueError("lam does not square to lam2")
        if self.mu is not None and self.mu == 0:
            raise ValueError("mu must be nonzero when given")

    @classmethod
    def at(
        cls,
        r: ScalarLike,
        lam: ScalarLike,
        mu: Optional[ScalarLike] = None,
    ) -> "EvalPoint":
        lam_ = scalar(lam)
        return cls(
            r=scalar(r),
            lam2=lam_ * lam_,
            lam=lam_,
            mu=None if mu is None else scalar(mu),
        )

    @classmethod
    def at_square(cls, r: ScalarLike, lam2: ScalarLike) -> "EvalPoint":
        """Point pinned through lambda^2 only (lambda itself may be irrational)."""
        return cls(r=scalar(r), lam2=scalar(lam2))

    @property
    def q(self) -> Scalar:
        return self.r * self.r

    @property
    def qq(self) -> Scalar:
        """q^2, the base of most Pochhammer symbols here."""
        q = self.r * self.r
        return q * q

    def lam_required(self) -> Scalar:
        if self.lam is None:
            raise UnsupportedInputError(
                "operation needs an odd power of lambda, but only lambda^2 was supplied"
            )
        return self.lam

    def mu_required(self) -> Scalar:
        if self.mu is None:
            raise UnsupportedInputError("operation needs the second spectral parameter mu")
        return self.mu

    def with_lambda(self, lam: ScalarLike) -> "EvalPoint":
        lam_ = scalar(lam)
        return EvalPoint(r=self.r, lam2=lam_ * lam_, lam=lam_, mu=self.mu)

    def as_float(self) -> "EvalPoint":
        """Double-precision copy for timing runs only; not exact."""
        lam_f = None if self.lam is None else float(self.lam)
        lam2_f = float(self.lam2) if lam_f is None else lam_f * lam_f
        return EvalPoint(
            r=float(self.r),  # type: ignore[arg-type]
            lam2=lam2_f,  # type: ignore[arg-type]
            lam=lam_f,  # type: ignore[arg-type]
            mu=None if self.mu is None else float(self.mu),  # type: ignore[arg-type]
        )


def random_scalar(
    rng: random.Random,
    bound: int = 97,
    positive: bool = False,
    exclude: tuple[Scalar, ...] = (),
) -> Scalar:
    """Nonzero rational with numerator and denominator bounded by `bound`.

    Identity checks evaluate both sides at a handful of such points; exact
    agreement at random rational points is the whole verification story.
    """
    while True:
        num = rng.randint(1, bound)
        if not positive and rng.random() < 0.5:
            num = -num
        den = rng.randint(1, bound)
        x = Fraction(num, den)
        if x not in exclude:
            return x
