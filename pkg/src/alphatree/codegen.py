"""Probability-driven alphabetic code construction.

Routes, chosen by ``build_alphabetic``:

* dyadic, all positive: Yeung-style lengths (endpoints ceil(-log2 p), interior
  one more), and for m >= 4 also the limit lengths of the interleaved
  construction on a perturbed distribution; the cheaper code wins.
* otherwise with positive endpoints: interleave a filler symbol of length k
  between neighbours, build the tree, then prune the fillers.  Pruning a
  filler lifts its sibling subtree, which holds one of its two neighbours.
* zero endpoints: build on the positive core, then hang the zero symbols off
  the first/last core leaf as combs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .dyadic import ONE
from .feasibility import AlphabeticCode, check_lengths, sum_sequence
from .probability import ProbDist, is_power_of_half, neg_log2_ceil
from .treebuild import ProbeCounter, construct_tree
from .trees import CodeTree, Leaf, Node, codewords, comb, leaf_depths, rebuild, relabel


class ContractViolation(RuntimeError):
    """An internal guarantee failed; this indicates a bug, not bad input."""


@dataclass(frozen=True)
class ExtendedDist:
    """phi interleaved with auxiliary zeros.

    ``kind == "partial"``: (phi_1, 0, phi_2, ..., 0, phi_m), length 2m-1.
    ``kind == "full"``: (0, phi_1, 0, ..., phi_m, 0), length 2m+1.
    """

    values: tuple[Fraction, ...]
    kind: str = "partial"

    def __post_init__(self) -> None:
        if self.kind not in ("partial", "full"):
            raise ValueError(f"unknown extension kind {self.kind!r}")
        if len(self.values) % 2 == 0:
            raise ValueError("extended distributions have odd length")

    def is_auxiliary(self, position: int) -> bool:
        return position % 2 == (1 if self.kind == "partial" else 0)

    def symbol_of(self, position: int) -> int:
        return position // 2 if self.kind == "partial" else (position - 1) // 2

    @property
    def m(self) -> int:
        return (len(self.values) + 1) // 2 if self.kind == "partial" else (len(self.values) - 1) // 2


def partially_extended(phi: ProbDist) -> ExtendedDist:
    vals: list[Fraction] = []
    for p in phi:
        if vals:
            vals.append(Fraction(0))
        vals.append(p)
    return ExtendedDist(tuple(vals), "partial")


def fully_extended(phi: ProbDist) -> ExtendedDist:
    vals = [Fraction(0)]
    for p in phi:
        vals += [p, Fraction(0)]
    return ExtendedDist(tuple(vals), "full")


def is_dyadic(phi: ProbDist) -> bool:
    """Every nonzero probability is a power of one half."""
    return all(p == 0 or is_power_of_half(p) for p in phi)


def dyadic_lengths(phi: ProbDist) -> list[int]:
    if any(p == 0 for p in phi):
        raise ValueError("dyadic_lengths needs strictly positive probabilities")
    m = len(phi)
    lengths = [neg_log2_ceil(p) + (0 if i in (0, m - 1) else 1) for i, p in enumerate(phi)]
    if m == 1:
        return lengths
    if not sum_sequence(lengths).last < ONE:
        raise ContractViolation(f"Yeung lengths {lengths} are infeasible")
    return lengths


def _core_lengths(phi: ProbDist, pad_endpoints: bool = False) -> list[int | None]:
    m = len(phi)
    out: list[int | None] = []
    for i, p in enumerate(phi):
        if p == 0:
            out.append(None)
        else:
            endpoint = i in (0, m - 1) and not pad_endpoints
            out.append(neg_log2_ceil(p) + (0 if endpoint else 1))
    return out


def _interleaved_bound(core: Sequence[int | None], k: int) -> Fraction:
    """Upper bound on the final partial sum of the interleaved list.

    Every alpha in the list is either a neighbour's length or k, so summing
    2**-alpha over all steps bounds the final sum.
    """
    total = Fraction(0)
    last = len(core) - 1
    for i, ell in enumerate(core):
        if ell is None:
            total += Fraction(2, 2**k)
        else:
            total += Fraction(1 if i in (0, last) else 2, 2**ell)
    return total


def choose_k(phi: ProbDist) -> int:
    """Smallest filler length k >= max ceil(-log2 phi_j) + 2 keeping the list feasible.

    Feasibility is certified by the additive bound, which is monotone in k,
    so a doubling search followed by bisection finds the smallest k.
    """
    if len(phi) < 2:
        raise ValueError("choose_k needs m >= 2")
    if phi[0] == 0 or phi[-1] == 0:
        raise ValueError("choose_k needs positive endpoint probabilities")
    if is_dyadic(phi):
        raise ValueError("choose_k needs a non-dyadic distribution")
    return _choose_k(_core_lengths(phi), max(neg_log2_ceil(p) for p in phi if p > 0) + 2)


def _choose_k(core: Sequence[int | None], floor: int) -> int:
    def ok(k: int) -> bool:
        return _interleaved_bound(core, k) < 1

    if ok(floor):
        return floor
    if _interleaved_bound([c for c in core if c is not None], floor) >= 1:
        raise ContractViolation("no filler length can make the interleaved list feasible")
    step = 1
    while not ok(floor + step):
        step *= 2
    lo, hi = floor + step // 2, floor + step
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


def interleave(core: Sequence[int | None], k: int) -> list[int]:
    """Put a filler of length k between neighbours; zero symbols also get k."""
    out: list[int] = []
    for ell in core:
        if out:
            out.append(k)
        out.append(k if ell is None else ell)
    return out


def extended_lengths(phi: ProbDist, k: int, pad_endpoints: bool = False) -> list[int]:
    """Lengths over the partially extended distribution.

    Fillers and zero symbols get k; the two endpoints get ceil(-log2 p);
    other positive symbols get ceil(-log2 p) + 1.  ``pad_endpoints`` gives the
    endpoints the +1 as well.
    """
    if len(phi) < 2:
        raise ValueError("extended_lengths needs m >= 2")
    if phi[0] == 0 or phi[-1] == 0:
        raise ValueError("extended_lengths needs positive endpoint probabilities")
    lengths = interleave(_core_lengths(phi, pad_endpoints), k)
    check_lengths(lengths)
    if not sum_sequence(lengths).last < ONE:
        raise ContractViolation(f"interleaved lengths with k={k} are infeasible")
    return lengths


def prune_nulls(tree: CodeTree, nu: ExtendedDist) -> CodeTree:
    """Delete the auxiliary-zero leaves and contract their parents.

    Leaves are relabelled with their index in the original distribution.
    """
    n_leaves = sum(1 for _ in leaf_depths(tree))
    if n_leaves != len(nu.values):
        raise ValueError(f"tree has {n_leaves} leaves but the distribution has {len(nu.values)}")

    def keep(leaf: Leaf):
        if nu.is_auxiliary(leaf.symbol):
            return None
        return Leaf(nu.symbol_of(leaf.symbol))

    pruned = rebuild(tree, keep)
    if pruned is None:
        raise ContractViolation("pruning removed every leaf")
    return pruned


def attach_zero_tails(tree: CodeTree, first: int, last: int, m: int) -> CodeTree:
    """Hang symbols 0..first-1 and last+1..m-1 off the core's end leaves.

    ``tree`` is labelled 0..last-first.  The first core leaf drops one level
    and gets a left comb of the head symbols as its left sibling; the last core
    leaf likewise gets a right comb of the tail symbols on its right.
    """
    if first == 0 and last == m - 1:
        raise ValueError("no zero tails to attach")
    if not 0 <= first <= last < m:
        raise ValueError(f"bad core range [{first}, {last}] for m={m}")
    out = relabel(tree, first) if first else tree
    if first > 0:
        head = comb(list(range(first)), "left")
        out = rebuild(out, lambda leaf: Node(head, leaf) if leaf.symbol == first else leaf)
    if last < m - 1:
        tail = comb(list(range(last + 1, m)), "right")
        out = rebuild(out, lambda leaf: Node(leaf, tail) if leaf.symbol == last else leaf)
    return out


def dyadic_limit_lengths(phi: ProbDist) -> list[int]:
    """Core lengths of the interleaved construction on (phi_1, phi_2 - e, phi_3 + e, ...) as e -> 0.

    For dyadic phi_2, ceil(-log2(phi_2 - e)) = ceil(-log2 phi_2) + 1, and for
    phi_3 + e the ceiling is unchanged.
    """
    m = len(phi)
    if m < 4:
        raise ValueError("the dyadic limit construction needs m >= 4; use dyadic_lengths")
    if not is_dyadic(phi) or any(p == 0 for p in phi):
        raise ValueError("dyadic_limit_lengths needs a strictly positive dyadic distribution")
    core = _core_lengths(phi)
    core[1] += 1
    return core


class Construction(NamedTuple):
    tree: CodeTree
    code: AlphabeticCode
    cost: Fraction
    route: str


def tree_cost(tree: CodeTree, phi: Sequence[Fraction]) -> Fraction:
    return sum((phi[i] * d for i, d in enumerate(leaf_depths(tree))), Fraction(0))


def avg_length(code: AlphabeticCode, phi: ProbDist) -> Fraction:
    if len(code) != len(phi):
        raise ValueError(f"code has {len(code)} words but phi has {len(phi)} symbols")
    return sum((p * len(w) for p, w in zip(phi, code.codewords)), Fraction(0))


def _finish(tree: CodeTree, phi: ProbDist, route: str) -> Construction:
    code = AlphabeticCode(tuple(codewords(tree)))
    return Construction(tree, code, avg_length(code, phi), route)


def _interleaved_tree(phi: ProbDist, core: list[int | None], floor: int, counter) -> CodeTree:
    k = _choose_k(core, floor)
    lengths = interleave(core, k)
    if not sum_sequence(lengths).last < ONE:
        raise ContractViolation(f"interleaved lengths with k={k} are infeasible")
    return prune_nulls(construct_tree(lengths, counter), partially_extended(phi))


def build_alphabetic(phi: ProbDist, counter: ProbeCounter | None = None) -> Construction:
    m = len(phi)
    if m == 1:
        return _finish(Leaf(0), phi, "single")
    if phi[0] == 0 or phi[-1] == 0:
        return _with_zero_tails(phi, counter)
    if is_dyadic(phi) and all(p > 0 for p in phi):
        tree = construct_tree(dyadic_lengths(phi), counter)
        best = _finish(tree, phi, "dyadic-lengths")
        if m >= 4:
            core = dyadic_limit_lengths(phi)
            alt = _finish(_interleaved_tree(phi, core, max(core) + 1, counter), phi, "dyadic-limit")
            if alt.cost < best.cost:
                best = alt
        return best
    if is_dyadic(phi):
        # dyadic with interior zeros: no slack for fillers unless endpoints get +1 too
        core = _core_lengths(phi, pad_endpoints=True)
        tree = _interleaved_tree(phi, core, max(c for c in core if c is not None) + 1, counter)
        return _finish(tree, phi, "interleaved-padded")
    core = _core_lengths(phi)
    floor = max(neg_log2_ceil(p) for p in phi if p > 0) + 2
    return _finish(_interleaved_tree(phi, core, floor, counter), phi, "interleaved")


def _with_zero_tails(phi: ProbDist, counter) -> Construction:
    m = len(phi)
    positive = [i for i, p in enumerate(phi) if p > 0]
    first, last = positive[0], positive[-1]
    core_phi = ProbDist(phi.probs[first : last + 1])
    inner = build_alphabetic(core_phi, counter)
    tree = attach_zero_tails(inner.tree, first, last, m)
    return _finish(tree, phi, f"zero-tails({inner.route})")
