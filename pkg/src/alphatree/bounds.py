"""Closed-form bounds on alphabetic-code and search-tree costs.

Float arithmetic throughout (logs of non-dyadic rationals are irrational);
compare against exact costs with ``TOL``.  Entropy is also kept exactly for
dyadic inputs, and the sums of neighbour minima are exact rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .probability import ProbDist, is_power_of_half, log2, neg_log2_ceil

TOL = 1e-9


@dataclass(frozen=True)
class BoundEntry:
    key: str
    label: str
    source: str
    value: Optional[float]
    applicable: bool
    kind: str = "upper"  # "upper", "lower" or "diagnostic"
    valid: bool = True
    # True when build_alphabetic / build_bst provably stays under this bound
    guaranteed: bool = False
    exact: Optional[Fraction] = None
    note: str = ""

    def satisfied_by(self, cost: Union[Fraction, float]) -> Optional[bool]:
        if not self.applicable or self.value is None or self.kind == "diagnostic":
            return None
        if self.kind == "lower":
            return float(cost) >= self.value - TOL
        if self.exact is not None:
            return Fraction(cost) <= self.exact
        return float(cost) <= self.value + TOL


@dataclass
class BoundsReport:
    entropy: float
    entropy_exact: Optional[Fraction] = None
    entries: dict[str, BoundEntry] = field(default_factory=dict)

    def add(self, entry: BoundEntry) -> None:
        self.entries[entry.key] = entry

    def __getitem__(self, key: str) -> BoundEntry:
        return self.entries[key]

    def value(self, key: str) -> float:
        entry = self.entries[key]
        if not entry.applicable:
            raise KeyError(f"bound {key!r} is not applicable here")
        return entry.value

    def applicable(self) -> list[BoundEntry]:
        return [e for e in self.entries.values() if e.applicable]


def entropy(probs: Union[ProbDist, Sequence[Fraction]]) -> Union[Fraction, float]:
    """Shannon entropy in bits; an exact Fraction when every nonzero p is a power of 1/2."""
    probs = [Fraction(p) for p in probs]
    exact = entropy_exact(probs)
    if exact is not None:
        return exact
    return entropy_float(probs)


def entropy_float(probs: Sequence[Fraction]) -> float:
    return math.fsum(-float(p) * log2(Fraction(p)) for p in probs if p > 0)


def entropy_exact(probs: Sequence[Fraction]) -> Optional[Fraction]:
    if not all(p == 0 or is_power_of_half(Fraction(p)) for p in probs):
        return None
    return sum((p * neg_log2_ceil(Fraction(p)) for p in probs if p > 0), Fraction(0))


def sum_adjacent_min(values: Sequence[Fraction]) -> Fraction:
    return sum((min(a, b) for a, b in zip(values, values[1:])), Fraction(0))


def endpoint_credit(p: Fraction, offset: int = 2) -> float:
    """p * (offset - log2 p - ceil(-log2 p)); zero when p is zero."""
    if p == 0:
        return 0.0
    return float(p) * (offset - log2(p) - neg_log2_ceil(p))


def bump_counts(phi: Sequence[Fraction]) -> list[int]:
    """How often each symbol is the smaller of a neighbouring pair.

    Ties go to the left element, so the counts weighted by phi add up to the
    sum of neighbour minima exactly.
    """
    counts = [0] * len(phi)
    for a in range(len(phi) - 1):
        counts[a if phi[a] <= phi[a + 1] else a + 1] += 1
    return counts


def bump_sets(phi: Sequence[Fraction]) -> dict[str, set[int]]:
    """Split 0-based indices into S1 (bumped twice), S2 (once), S3 (bumped endpoints), S4 (never)."""
    m = len(phi)
    counts = bump_counts(phi)
    interior = range(1, m - 1)
    return {
        "S1": {i for i in interior if counts[i] == 2},
        "S2": {i for i in interior if counts[i] == 1},
        "S3": {i for i in {0, m - 1} if counts[i] >= 1},
        "S4": {i for i in interior if counts[i] == 0},
    }


def _dyadic(phi: Sequence[Fraction]) -> bool:
    return all(p == 0 or is_power_of_half(p) for p in phi)


def alphabetic_bounds(phi: ProbDist) -> BoundsReport:
    probs = list(phi)
    m = len(probs)
    H = entropy_float(probs)
    report = BoundsReport(H, entropy_exact(probs))
    if m < 2:
        return report

    first, last = probs[0], probs[-1]
    mins = sum_adjacent_min(probs)
    dyadic = _dyadic(probs)
    positive_ends = first > 0 and last > 0
    all_positive = all(p > 0 for p in probs)
    H_exact = report.entropy_exact

    report.add(BoundEntry("gilbert_moore", "Gilbert-Moore", "H+2", H + 2, True, guaranteed=True))
    report.add(BoundEntry(
        "horibe", "Horibe", "H+2-(m+2)p_min", H + 2 - (m + 2) * float(min(probs)), True,
        note="bound on the optimum, not on this construction"))
    # the endpoint credits assume no zero symbols: (1/2, 0, 1/2) would get 1 < 3/2
    report.add(BoundEntry(
        "yeung_refined", "Yeung (refined)", "H+2-endpoint credits",
        H + 2 - endpoint_credit(first) - endpoint_credit(last) if all_positive else None,
        all_positive, note="bound on the optimum, not on this construction"))
    report.add(BoundEntry(
        "yeung", "Yeung", "H+2-p_1-p_m", H + 2 - float(first + last), True,
        note="bound on the optimum, not on this construction"))
    report.add(BoundEntry(
        "dagan", "Dagan et al.", "H+2-p_1-p_m-sum min", H + 2 - float(first + last + mins), True,
        note="bound on the optimum, not on this construction"))

    dyadic_positive = dyadic and all_positive
    report.add(BoundEntry(
        "dyadic_endpoint", "dyadic endpoints", "H+1-p_1-p_m",
        H + 1 - float(first + last) if dyadic_positive else None, dyadic_positive,
        guaranteed=dyadic_positive,
        exact=(H_exact + 1 - first - last) if dyadic_positive else None))

    interleaved_ok = (not dyadic and positive_ends) or (dyadic_positive and m >= 4)
    via = "via dyadic limit" if dyadic else ""
    inter = H + 2 - endpoint_credit(first) - endpoint_credit(last) - float(mins)
    report.add(BoundEntry(
        "interleaved", "interleaved fillers", "H+2-endpoint credits-sum min",
        inter if interleaved_ok else None, interleaved_ok, guaranteed=interleaved_ok,
        exact=(H_exact + 2 - 2 * first - 2 * last - mins) if interleaved_ok and dyadic else None,
        note=via))
    report.add(BoundEntry(
        "interleaved_loose", "interleaved fillers (loose)", "H+2-p_1-p_m-sum min",
        H + 2 - float(first + last + mins) if interleaved_ok else None, interleaved_ok,
        guaranteed=interleaved_ok, note=via))

    zero_ok = not dyadic and not positive_ends
    if zero_ok:
        pos = [i for i, p in enumerate(probs) if p > 0]
        lo, hi = pos[0], pos[-1]
        value = (H + 2 - endpoint_credit(probs[lo], 1) - endpoint_credit(probs[hi], 1)
                 - float(sum_adjacent_min(probs[lo : hi + 1])))
    report.add(BoundEntry(
        "zero_endpoint", "zero endpoints", "core bound + tail costs",
        value if zero_ok else None, zero_ok, guaranteed=zero_ok))

    refined_ok = not dyadic and m >= 2 and all(p > 0 for p in (probs[0], probs[1], probs[-2], probs[-1]))
    if refined_ok:
        c = [neg_log2_ceil(p) for p in (probs[0], probs[1], probs[-2], probs[-1])]
        value = (inter - float(first) * max(0, c[0] - c[1] - 2)
                 - float(last) * max(0, c[3] - c[2] - 2))
    report.add(BoundEntry(
        "endpoint_refined", "endpoint depth refinement", "interleaved - extra endpoint lifts",
        value if refined_ok else None, refined_ok, guaranteed=refined_ok))

    sets_ok = not dyadic and all_positive
    if sets_ok:
        sets = bump_sets(probs)
        lifted = sets["S1"] | sets["S2"] | {0, m - 1}
        value = (H + 2 - math.fsum(endpoint_credit(probs[i]) for i in lifted)
                 - float(sum(probs[i] for i in sets["S1"]) + sum(probs[i] for i in sets["S3"])))
        exact = (sum(probs[i] * (neg_log2_ceil(probs[i]) + 1) for i in sets["S4"])
                 + sum(probs[i] * neg_log2_ceil(probs[i]) for i in lifted)
                 - sum(probs[i] for i in sets["S1"]) - sum(probs[i] for i in sets["S3"]))
    report.add(BoundEntry(
        "bump_sets", "bump-set refinement", "H+2-credits over S1,S2,ends-S1-S3",
        value if sets_ok else None, sets_ok, guaranteed=sets_ok,
        note="ties: the left element of an equal pair counts as the smaller"))
    report.add(BoundEntry(
        "bump_sets_exact", "bump-set refinement (exact)", "sum p*len - sum min",
        float(exact) if sets_ok else None, sets_ok, guaranteed=sets_ok,
        exact=Fraction(exact) if sets_ok else None))
    return report


def bst_bounds(sigma) -> BoundsReport:
    """Bounds on search-tree cost for sigma = (p_0, q_1, p_1, ..., q_n, p_n)."""
    probs = list(sigma.probs)
    p, q = list(sigma.p), list(sigma.q)
    H = entropy_float(probs)
    report = BoundsReport(H, entropy_exact(probs))
    sum_p, sum_q = float(sum(p)), float(sum(q))
    mins_sigma = float(sum_adjacent_min(probs))
    mins_p = float(sum_adjacent_min(p))
    ends = float(probs[0] + probs[-1])

    mehlhorn = H + 1 + sum_p
    report.add(BoundEntry("mehlhorn", "Mehlhorn", "H+1+sum p", mehlhorn, True, guaranteed=True))
    report.add(BoundEntry(
        "de_prisco", "De Prisco-De Santis (claimed)", "H+1-p_0-p_n+p_max",
        H + 1 - float(p[0] + p[-1]) + float(max(p)), True, valid=False,
        note="INVALID: fails on known counterexamples"))
    corrected = H + 2 - ends - mins_sigma - sum_q - mins_p
    report.add(BoundEntry(
        "bst_corrected", "folded interleaved code", "H+2-s_1-s_2n+1-sum min s-sum q-sum min p",
        corrected, True, guaranteed=True))
    hlog = H * math.log2(H) if H > 0 else 0.0
    lower = H + sum_q + hlog - (H + 1) * math.log2(H + 1)
    report.add(BoundEntry(
        "bst_lower", "entropy lower bound", "H+sum q+H log H-(H+1)log(H+1)", lower, True,
        kind="lower", note="may be negative; reported unclamped"))
    report.add(BoundEntry("bst_gap", "upper-lower gap", "corrected - lower", corrected - lower,
                          True, kind="diagnostic"))
    report.add(BoundEntry(
        "bst_gap_bound", "gap estimate", "2+log(H+1)+log e-...",
        2 + math.log2(H + 1) + math.log2(math.e) - ends - mins_sigma - 2 * sum_q - mins_p,
        True, kind="diagnostic"))
    return report
