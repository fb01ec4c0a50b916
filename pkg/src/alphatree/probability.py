"""Exact probability vectors and small log helpers shared by the code builders."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Rational = Union[Fraction, int, str]


def as_fraction(value: Rational) -> Fraction:
    if isinstance(value, float):
        raise TypeError("floats are not exact; convert with Fraction(value) explicitly")
    return Fraction(value)


@dataclass(frozen=True)
class ProbDist:
    """Ordered probabilities phi_1..phi_m summing to exactly one."""

    probs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        probs = tuple(as_fraction(p) for p in self.probs)
        object.__setattr__(self, "probs", probs)
        if not probs:
            raise ValueError("a distribution needs at least one symbol")
        if any(p < 0 for p in probs):
            raise ValueError("probabilities must be nonnegative")
        total = sum(probs, Fraction(0))
        if total != 1:
            raise ValueError(f"probabilities sum to {total}, not 1")

    @classmethod
    def of(cls, probs: Iterable[Rational]) -> ProbDist:
        return cls(tuple(as_fraction(p) for p in probs))

    def __len__(self) -> int:
        return len(self.probs)

    def __getitem__(self, i: int) -> Fraction:
        return self.probs[i]

    def __iter__(self):
        return iter(self.probs)


def neg_log2_ceil(p: Fraction) -> int:
    """ceil(-log2 p) for 0 < p <= 1, computed exactly."""
    if p <= 0:
        raise ValueError(f"log of nonpositive value {p}")
    num, den = p.numerator, p.denominator
    c = max(den.bit_length() - num.bit_length(), 0)
    while (num << c) < den:
        c += 1
    while c > 0 and (num << (c - 1)) >= den:
        c -= 1
    return c


def log2(p: Fraction) -> float:
    return math.log2(p.numerator) - math.log2(p.denominator)


def is_power_of_half(p: Fraction) -> bool:
    den = p.denominator
    return p.numerator == 1 and den & (den - 1) == 0


def normalize_floats(values: Iterable[float], tol: float = 1e-12) -> tuple[ProbDist, Fraction]:
    """Exact binary expansions of ``values`` rescaled to sum to one.

    Returns the distribution and the original exact total.  Rejects totals
    further than ``tol`` from one.
    """
    fracs = [Fraction(float(v)) for v in values]
    total = sum(fracs, Fraction(0))
    if abs(total - 1) > Fraction(tol):
        raise ValueError(f"probabilities sum to {float(total)!r}, outside 1 +/- {tol}")
    return ProbDist(tuple(f / total for f in fracs)), total
