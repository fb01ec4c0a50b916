"""Nakatsu's ``sum`` recursion over a list of codeword lengths.

``sum_sequence(L)[m-1] < 1`` exactly when an alphabetic code with lengths
``L`` exists, and the leading bits of each partial sum give such a code.
Indices here are 0-based: ``sums[0]`` is the first symbol.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .dyadic import ONE, ZERO, DyadicFraction, add_pow2, trunc


def check_lengths(lengths: Sequence[int]) -> tuple[int, ...]:
    lengths = tuple(lengths)
    if not lengths:
        raise ValueError("length list must be non-empty")
    for ell in lengths:
        if not isinstance(ell, int) or isinstance(ell, bool) or ell < 1:
            raise ValueError(f"lengths must be positive integers, got {ell!r}")
    return lengths


@dataclass(frozen=True)
class SumSequence:
    sums: tuple[DyadicFraction, ...]
    # alphas[k] = min(L[k], L[k+1]) is the exponent used to produce sums[k+1]
    alphas: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.sums)

    def __getitem__(self, i: int) -> DyadicFraction:
        return self.sums[i]

    @property
    def last(self) -> DyadicFraction:
        return self.sums[-1]


def sum_step(prev: DyadicFraction, alpha: int) -> DyadicFraction:
    return add_pow2(trunc(alpha, prev), alpha)


def sum_sequence(lengths: Sequence[int]) -> SumSequence:
    lengths = check_lengths(lengths)
    sums = [ZERO]
    alphas = []
    cur = ZERO
    for a, b in zip(lengths, lengths[1:]):
        alpha = a if a < b else b
        cur = sum_step(cur, alpha)
        sums.append(cur)
        alphas.append(alpha)
    return SumSequence(tuple(sums), tuple(alphas))


def is_feasible(lengths: Sequence[int]) -> bool:
    """True iff some alphabetic code has exactly these codeword lengths."""
    return sum_sequence(lengths).last < ONE


@dataclass(frozen=True)
class AlphabeticCode:
    codewords: tuple[str, ...]

    def __post_init__(self) -> None:
        words = tuple(self.codewords)
        object.__setattr__(self, "codewords", words)
        if not words:
            raise ValueError("a code needs at least one codeword")
        for w in words:
            if set(w) - {"0", "1"}:
                raise ValueError(f"codeword {w!r} is not a bit string")
        # adjacent checks suffice: a prefix would sit right next to its extension
        for a, b in zip(words, words[1:]):
            if not a < b:
                raise ValueError(f"codewords out of order: {a!r} !< {b!r}")
            if b.startswith(a):
                raise ValueError(f"{a!r} is a prefix of {b!r}")

    def __len__(self) -> int:
        return len(self.codewords)

    def __getitem__(self, i: int) -> str:
        return self.codewords[i]

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(w) for w in self.codewords)


def nakatsu_code(lengths: Sequence[int]) -> AlphabeticCode:
    """Codeword i is the first ``L[i]`` bits of the expansion of sum(L, i).

    A single symbol gets the empty codeword.
    """
    lengths = check_lengths(lengths)
    if len(lengths) == 1:
        return AlphabeticCode(("",))
    seq = sum_sequence(lengths)
    if not seq.last < ONE:
        raise ValueError(f"lengths {list(lengths)} admit no alphabetic code (sum = {seq.last})")
    words = []
    for ell, s in zip(lengths, seq.sums):
        bits = s.mantissa >> (s.scale - ell) if s.scale >= ell else s.mantissa << (ell - s.scale)
        words.append(format(bits, f"0{ell}b"))
    return AlphabeticCode(tuple(words))
