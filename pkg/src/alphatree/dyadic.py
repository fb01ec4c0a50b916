"""Exact nonnegative binary fractions.

A ``DyadicFraction`` is ``mantissa * 2**-scale`` kept in canonical form
(odd mantissa, or the pair ``(0, 0)``).  Values may exceed one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True, slots=True)
class DyadicFraction:
    mantissa: int = 0
    scale: int = 0

    def __post_init__(self) -> None:
        m, e = self.mantissa, self.scale
        if m < 0 or e < 0:
            raise ValueError(f"DyadicFraction needs mantissa, scale >= 0, got ({m}, {e})")
        if m == 0:
            e = 0
        elif e and not m & 1:
            shift = min((m & -m).bit_length() - 1, e)
            m >>= shift
            e -= shift
        object.__setattr__(self, "mantissa", m)
        object.__setattr__(self, "scale", e)

    @classmethod
    def from_fraction(cls, value: Fraction | int) -> DyadicFraction:
        value = Fraction(value)
        den = value.denominator
        if value < 0 or den & (den - 1):
            raise ValueError(f"{value} is not a nonnegative dyadic rational")
        return cls(value.numerator, den.bit_length() - 1)

    @classmethod
    def pow2(cls, a: int) -> DyadicFraction:
        """The value 2**-a for a >= 0."""
        return cls(1, a)

    def to_fraction(self) -> Fraction:
        return Fraction(self.mantissa, 1 << self.scale)

    def __float__(self) -> float:
        return self.mantissa / (1 << self.scale) if self.scale < 1000 else float(self.to_fraction())

    def numerator_at(self, scale: int) -> int:
        """Integer n with value == n / 2**scale; scale must be >= self.scale."""
        if scale < self.scale:
            raise ValueError(f"scale {scale} too small for {self}")
        return self.mantissa << (scale - self.scale)

    def _cmp_key(self, other: DyadicFraction) -> tuple[int, int]:
        e = max(self.scale, other.scale)
        return self.mantissa << (e - self.scale), other.mantissa << (e - other.scale)

    def __lt__(self, other: DyadicFraction) -> bool:
        a, b = self._cmp_key(other)
        return a < b

    def __le__(self, other: DyadicFraction) -> bool:
        a, b = self._cmp_key(other)
        return a <= b

    def __gt__(self, other: DyadicFraction) -> bool:
        a, b = self._cmp_key(other)
        return a > b

    def __ge__(self, other: DyadicFraction) -> bool:
        a, b = self._cmp_key(other)
        return a >= b

    def __add__(self, other: DyadicFraction) -> DyadicFraction:
        e = max(self.scale, other.scale)
        a, b = self._cmp_key(other)
        return DyadicFraction(a + b, e)

    def __sub__(self, other: DyadicFraction) -> DyadicFraction:
        e = max(self.scale, other.scale)
        a, b = self._cmp_key(other)
        return DyadicFraction(a - b, e)

    def bit(self, position: int) -> int:
        """Bit ``position`` (1-based) of the fractional expansion."""
        if position > self.scale:
            return 0
        return (self.mantissa >> (self.scale - position)) & 1

    def integer_part(self) -> int:
        return self.mantissa >> self.scale

    def to_binary(self) -> str:
        """Binary text form ``n.b1b2...bk`` (integer part in binary)."""
        whole = bin(self.integer_part())[2:]
        if self.scale == 0:
            return whole + ".0"
        frac = self.mantissa & ((1 << self.scale) - 1)
        return f"{whole}.{frac:0{self.scale}b}"

    @classmethod
    def from_binary(cls, text: str) -> DyadicFraction:
        whole, _, frac = text.strip().partition(".")
        if not whole:
            whole = "0"
        if set(whole) - {"0", "1"} or set(frac) - {"0", "1"}:
            raise ValueError(f"not a binary fraction: {text!r}")
        return cls((int(whole, 2) << len(frac)) + (int(frac, 2) if frac else 0), len(frac))

    def to_json(self) -> dict:
        return {"mantissa": str(self.mantissa), "scale": self.scale}

    @classmethod
    def from_json(cls, obj: dict) -> DyadicFraction:
        return cls(int(obj["mantissa"]), int(obj["scale"]))

    def __str__(self) -> str:
        return self.to_binary()


ZERO = DyadicFraction()
ONE = DyadicFraction(1, 0)


def trunc(i: int, x: DyadicFraction) -> DyadicFraction:
    """Keep only the first ``i`` fractional bits of ``x`` (floor(2**i x) / 2**i)."""
    if i < 1:
        raise ValueError(f"trunc needs i >= 1, got {i}")
    if x.scale <= i:
        return x
    return DyadicFraction(x.mantissa >> (x.scale - i), i)


def add_pow2(x: DyadicFraction, a: int) -> DyadicFraction:
    """Return x + 2**-a exactly."""
    if a < 1:
        raise ValueError(f"add_pow2 needs a >= 1, got {a}")
    if x.scale >= a:
        return DyadicFraction(x.mantissa + (1 << (x.scale - a)), x.scale)
    return DyadicFraction((x.mantissa << (a - x.scale)) + 1, a)


def xor(x: DyadicFraction, y: DyadicFraction) -> DyadicFraction:
    """Bitwise XOR of the aligned binary expansions of x and y."""
    e = max(x.scale, y.scale)
    return DyadicFraction((x.mantissa << (e - x.scale)) ^ (y.mantissa << (e - y.scale)), e)


def ceil_neg_log2(x: DyadicFraction) -> int:
    """ceil(-log2 x) for 0 < x <= 1; the position of the leading fractional one bit."""
    if x.mantissa == 0:
        raise ValueError("ceil_neg_log2 is undefined at 0")
    if x.integer_part() >= 1 and x != ONE:
        raise ValueError(f"ceil_neg_log2 needs x <= 1, got {x}")
    return x.scale - (x.mantissa.bit_length() - 1)
