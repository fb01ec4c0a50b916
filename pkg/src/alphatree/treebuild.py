"""Linear-time top-down bisection of the partial sums into a code tree.

Each range of partial sums is split at the first bit position on which its
two ends differ.  The split point is found with a midpoint probe followed by
a doubling search from the nearer end, so a split costs
O(log min(left size, right size)) comparisons and the whole build is O(m).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .dyadic import ONE, add_pow2, ceil_neg_log2, trunc, xor
from .feasibility import SumSequence, sum_sequence
from .trees import CodeTree, Leaf, Node


@dataclass
class ProbeCounter:
    """Counts comparisons of a partial sum against a split threshold."""

    probes: int = 0
    splits: int = 0


def t_index(sums: SumSequence, i: int, j: int) -> int:
    """First bit on which sums[i] and sums[j] differ (0-based, i < j)."""
    if not 0 <= i < j < len(sums):
        raise ValueError(f"t_index needs 0 <= i < j < {len(sums)}, got ({i}, {j})")
    return ceil_neg_log2(xor(sums[i], sums[j]))


def split_index(
    sums: SumSequence, i: int, j: int, t: int, counter: Optional[ProbeCounter] = None
) -> int:
    """The k in [i, j) with sums[k] < trunc(t, sums[i]) + 2**-t <= sums[k+1]."""
    if t != t_index(sums, i, j):
        raise ValueError(f"t={t} is not the split level of range ({i}, {j})")
    threshold = add_pow2(trunc(t, sums[i]), t)
    s = sums.sums
    probes = 0

    def below(x: int) -> bool:
        nonlocal probes
        probes += 1
        return s[x] < threshold

    # below(i) holds and below(j) fails; k is the last index where it holds
    r = (i + j) // 2
    if below(r):
        lo, hi = r, j
        step = 1
        while j - step > r:
            if below(j - step):
                lo = j - step
                break
            hi = j - step
            step <<= 1
    else:
        lo, hi = i, r
        step = 1
        while i + step < r:
            if not below(i + step):
                hi = i + step
                break
            lo = i + step
            step <<= 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if below(mid):
            lo = mid
        else:
            hi = mid
    if counter is not None:
        counter.probes += probes
        counter.splits += 1
    return lo


def construct_tree(lengths: Sequence[int], counter: Optional[ProbeCounter] = None) -> CodeTree:
    """Alphabetic code tree whose leaf i has depth at most min(L[i], m - 1)."""
    seq = sum_sequence(lengths)
    m = len(seq)
    if not seq.last < ONE:
        raise ValueError(f"lengths admit no alphabetic code (sum = {seq.last})")
    return _bisect(seq, 0, m - 1, counter)


def _bisect(seq: SumSequence, first: int, last: int, counter: Optional[ProbeCounter]) -> CodeTree:
    out: list[CodeTree] = []
    stack: list[Optional[tuple[int, int]]] = [(first, last)]
    while stack:
        item = stack.pop()
        if item is None:
            right = out.pop()
            left = out.pop()
            out.append(Node(left, right))
            continue
        i, j = item
        if i == j:
            out.append(Leaf(i))
        elif i + 1 == j:
            out.append(Node(Leaf(i), Leaf(j)))
        else:
            k = split_index(seq, i, j, t_index(seq, i, j), counter)
            stack.append(None)
            stack.append((k + 1, j))
            stack.append((i, k))
    return out[0]
