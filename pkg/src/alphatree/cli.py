"""Command-line entry point.

Input is JSON: inline as the positional argument, from ``--input FILE``, or
on stdin.  Rationals may be given as ints, "a/b" strings, or
{"num": "a", "den": "b"} objects; floats only with ``--float-input``.
Exit status: 0 ok, 1 invalid input, 2 internal contract violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import bst as bst_mod
from . import trees
from .bench import DEFAULT_SIZES, bench_csv, run_bench
from .bounds import BoundsReport, alphabetic_bounds, bst_bounds
from .codegen import ContractViolation, build_alphabetic
from .feasibility import check_lengths, sum_sequence
from .oracle import (
    appendix_b_check,
    default_filler_cap,
    feasible_by_enumeration,
    optimal_alphabetic_dp,
    optimal_bst_dp,
)
from .probability import ProbDist, normalize_floats
from .treebuild import ProbeCounter, construct_tree

COMMANDS = ("encode", "bst", "bounds", "check-lengths", "tree-from-lengths", "oracle", "bench")
ORACLE_MODES = ("alphabetic", "bst", "feasible", "appendix-b")


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    payload: Optional[str] = None
    input_path: Optional[str] = None
    output_format: str = "json"
    float_input: bool = False
    sizes: tuple[int, ...] = DEFAULT_SIZES
    fast_bst_dp: bool = False
    oracle_mode: str = "alphabetic"
    search: bool = False
    x_max: Optional[int] = None
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if any(b <= a for a, b in zip(self.sizes, self.sizes[1:])):
            raise InputError("benchmark sizes must be strictly increasing")


@dataclass
class RunResult:
    status: int
    stdout: str = ""
    stderr: str = ""
    data: Any = field(default=None, repr=False)


# --- serialization ---------------------------------------------------------


def rational_json(x: Fraction) -> dict[str, str]:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def parse_rational(value: Any, float_ok: bool = False) -> Fraction:
    if isinstance(value, bool):
        raise InputError(f"not a number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not float_ok:
            raise InputError(f"float {value!r} given; pass --float-input or use exact 'a/b' strings")
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
    if isinstance(value, dict) and set(value) == {"num", "den"}:
        try:
            return Fraction(int(value["num"]), int(value["den"]))
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise InputError(f"bad rational object: {value!r}") from exc
    raise InputError(f"not a rational: {value!r}")


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _load(config: RunConfig, stdin) -> Any:
    if config.payload is not None and config.input_path is not None:
        raise InputError("give inline JSON or --input, not both")
    if config.payload is not None:
        text, source = config.payload, "<argument>"
    elif config.input_path is not None:
        try:
            with open(config.input_path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {config.input_path}: {exc}") from exc
        source = config.input_path
    else:
        text, source = stdin.read(), "<stdin>"
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}:{exc.lineno}:{exc.colno}: malformed JSON: {exc.msg}") from exc


def _number_list(data: Any, *keys: str) -> list:
    if isinstance(data, dict):
        found = [k for k in keys if k in data]
        if not found:
            raise InputError(f"expected a JSON list or an object with {keys[0]!r}")
        data = data[found[0]]
    if not isinstance(data, list) or not data:
        raise InputError("expected a non-empty JSON list")
    return data


def _prob_dist(data: Any, config: RunConfig) -> ProbDist:
    values = [parse_rational(v, config.float_input) for v in _number_list(data, "probabilities", "probs")]
    if config.float_input:
        try:
            dist, _ = normalize_floats([float(v) for v in values])
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        return dist
    try:
        return ProbDist(tuple(values))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _search_dist(data: Any, config: RunConfig) -> bst_mod.SearchDist:
    if isinstance(data, dict) and "p" in data and "q" in data:
        p = [parse_rational(v, config.float_input) for v in data["p"]]
        q = [parse_rational(v, config.float_input) for v in data["q"]]
        if len(p) != len(q) + 1:
            raise InputError("need len(p) == len(q) + 1")
        flat = [p[0]]
        for qi, pi in zip(q, p[1:]):
            flat += [qi, pi]
    else:
        flat = [parse_rational(v, config.float_input) for v in _number_list(data, "sigma")]
    if len(flat) % 2 == 0:
        raise InputError("sigma needs odd length 2n+1 (p_0, q_1, p_1, ..., q_n, p_n)")
    if config.float_input:
        try:
            dist, _ = normalize_floats([float(v) for v in flat])
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        flat = list(dist.probs)
    try:
        sigma = bst_mod.SearchDist(tuple(flat))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if sigma.n < 1:
        raise InputError("sigma needs at least one key")
    return sigma


def _lengths(data: Any) -> tuple[int, ...]:
    raw = _number_list(data, "lengths")
    if any(isinstance(v, bool) or not isinstance(v, int) for v in raw):
        raise InputError("lengths must be positive integers")
    try:
        return check_lengths(raw)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


# --- report rendering ------------------------------------------------------


def _fmt(value: Optional[float]) -> str:
    return "-" if value is None else f"{value:.6f}"


def _satisfies(entry, cost) -> str:
    if cost is None:
        return "-"
    verdict = entry.satisfied_by(cost)
    return "-" if verdict is None else ("yes" if verdict else "NO")


def render_report(report: BoundsReport, cost: Optional[Fraction] = None) -> str:
    """Plain-text table, one row per bound in insertion order."""
    header = ("bound", "formula", "value", "applicable", "satisfied", "note")
    rows = [("entropy", "H", _fmt(report.entropy), "yes", "-", "")]
    for e in report.entries.values():
        note = e.note
        if not e.valid:
            note = "INVALID (does not hold in general)"
        rows.append((e.label, e.source, _fmt(e.value), "yes" if e.applicable else "no",
                     _satisfies(e, cost), note))
    widths = [max(len(r[c]) for r in rows + [header]) for c in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
             for row in [header] + rows]
    if cost is not None:
        lines.append(f"construction cost: {cost} ({float(cost):.6f})")
    return "\n".join(lines) + "\n"


def report_json(report: BoundsReport, cost: Optional[Fraction] = None) -> dict:
    entries = []
    for e in report.entries.values():
        entries.append({
            "key": e.key,
            "label": e.label,
            "formula": e.source,
            "value": e.value,
            "exact": rational_json(e.exact) if e.exact is not None else None,
            "applicable": e.applicable,
            "kind": e.kind,
            "valid": e.valid,
            "guaranteed": e.guaranteed,
            "satisfied": e.satisfied_by(cost) if cost is not None else None,
            "note": e.note if e.valid else "INVALID (does not hold in general)",
        })
    return {
        "entropy": report.entropy,
        "entropy_exact": rational_json(report.entropy_exact) if report.entropy_exact is not None else None,
        "bounds": entries,
    }


def _check_guarantees(report: BoundsReport, cost: Fraction) -> None:
    for e in report.applicable():
        if e.guaranteed and e.satisfied_by(cost) is False:
            raise ContractViolation(f"cost {cost} exceeds guaranteed bound {e.key} = {e.value}")


def _table(pairs: Sequence[tuple[str, Any]]) -> str:
    width = max(len(k) for k, _ in pairs)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in pairs)


# --- commands --------------------------------------------------------------


def _encode(config: RunConfig, data: Any) -> tuple[dict, str]:
    phi = _prob_dist(data, config)
    result = build_alphabetic(phi)
    report = alphabetic_bounds(phi)
    _check_guarantees(report, result.cost)
    out = {
        "bounds": [{"key": e.key, "value": e.value} for e in report.applicable() if e.guaranteed],
        "probs": [rational_json(p) for p in phi],
        "codewords": list(result.code.codewords),
        "lengths": list(result.code.lengths),
        "cost": rational_json(result.cost),
        "route": result.route,
        "tree": trees.to_json(result.tree),
    }
    table = _table([("codewords", " ".join(w or "''" for w in result.code.codewords)),
                    ("cost", f"{result.cost} ({float(result.cost):.6f})"),
                    ("route", result.route)])
    return out, table


def _bst(config: RunConfig, data: Any) -> tuple[dict, str]:
    sigma = _search_dist(data, config)
    result = bst_mod.build_bst(sigma)
    _check_guarantees(bst_bounds(sigma), result.cost)
    out = {
        "sigma": [rational_json(s) for s in sigma.probs],
        "cost": rational_json(result.cost),
        "alphabetic_cost": rational_json(result.alphabetic.cost),
        "tree": bst_mod.to_json(result.tree),
        "inorder": bst_mod.inorder_labels(result.tree),
    }
    table = _table([("inorder", " ".join(out["inorder"])),
                    ("cost", f"{result.cost} ({float(result.cost):.6f})"),
                    ("alphabetic cost", str(result.alphabetic.cost))])
    return out, table


def _bounds(config: RunConfig, data: Any) -> tuple[dict, str]:
    if config.search:
        sigma = _search_dist(data, config)
        report, cost = bst_bounds(sigma), bst_mod.build_bst(sigma).cost
    else:
        phi = _prob_dist(data, config)
        report = alphabetic_bounds(phi)
        cost = build_alphabetic(phi).cost if len(phi) >= 2 else None
    if cost is not None:
        _check_guarantees(report, cost)
    out = report_json(report, cost)
    out["cost"] = rational_json(cost) if cost is not None else None
    return out, render_report(report, cost)


def _check_lengths(config: RunConfig, data: Any) -> tuple[dict, str]:
    lengths = _lengths(data)
    seq = sum_sequence(lengths)
    feasible = seq.last.to_fraction() < 1
    out = {
        "lengths": list(lengths),
        "verdict": "feasible" if feasible else "infeasible",
        "sums": [s.to_binary() for s in seq.sums],
        "final_sum": seq.last.to_binary(),
        "final_sum_exact": rational_json(seq.last.to_fraction()),
    }
    table = _table([("verdict", out["verdict"]), ("final sum", out["final_sum"])])
    return out, table


def _tree_from_lengths(config: RunConfig, data: Any) -> tuple[dict, str]:
    lengths = _lengths(data)
    counter = ProbeCounter()
    try:
        tree = construct_tree(lengths, counter)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    words = trees.codewords(tree)
    out = {
        "lengths": list(lengths),
        "codewords": words,
        "depths": trees.leaf_depths(tree),
        "probes": counter.probes,
        "tree": trees.to_json(tree),
    }
    return out, _table([("codewords", " ".join(words)), ("probes", counter.probes)])


def _oracle(config: RunConfig, data: Any) -> tuple[dict, str]:
    mode = config.oracle_mode
    if mode == "alphabetic":
        cost, tree = optimal_alphabetic_dp(_prob_dist(data, config))
        out = {"cost": rational_json(cost), "tree": trees.to_json(tree)}
        return out, _table([("optimal cost", f"{cost} ({float(cost):.6f})")])
    if mode == "bst":
        cost, tree = optimal_bst_dp(_search_dist(data, config), fast=config.fast_bst_dp)
        out = {"cost": rational_json(cost), "tree": bst_mod.to_json(tree)}
        return out, _table([("optimal cost", f"{cost} ({float(cost):.6f})")])
    if mode == "feasible":
        lengths = _lengths(data)
        try:
            verdict = feasible_by_enumeration(lengths)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        return {"lengths": list(lengths), "feasible": verdict}, _table([("feasible", verdict)])
    if mode == "appendix-b":
        phi = _prob_dist(data, config)
        x_max = config.x_max or default_filler_cap(phi)
        try:
            holds = appendix_b_check(phi, x_max)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        out = {"probs": [rational_json(p) for p in phi], "x_max": x_max, "all_infeasible": holds}
        return out, _table([("x_max", x_max), ("all infeasible", holds)])
    raise InputError(f"unknown oracle mode {mode!r}")


HANDLERS = {
    "encode": _encode,
    "bst": _bst,
    "bounds": _bounds,
    "check-lengths": _check_lengths,
    "tree-from-lengths": _tree_from_lengths,
    "oracle": _oracle,
}


def run(config: RunConfig, stdin=None) -> RunResult:
    try:
        if config.command == "bench":
            rows = run_bench(config.sizes, config.seed)
            return RunResult(0, bench_csv(rows), data=rows)
        data = _load(config, stdin if stdin is not None else sys.stdin)
        out, table = HANDLERS[config.command](config, data)
    except ContractViolation as exc:
        return RunResult(2, stderr=f"contract violation: {exc}\n")
    except (InputError, ValueError, TypeError) as exc:
        return RunResult(1, stderr=f"invalid input: {exc}\n")
    text = dumps(out) if config.output_format == "json" else table
    return RunResult(0, text, data=out)


def _parse_sizes(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="alphatree", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        if name == "bench":
            p.add_argument("--sizes", type=_parse_sizes, default=DEFAULT_SIZES,
                           help="comma-separated, strictly increasing")
            p.add_argument("--seed", type=int, default=None)
            continue
        p.add_argument("payload", nargs="?", help="inline JSON input")
        p.add_argument("--input", dest="input_path")
        p.add_argument("--format", dest="output_format", choices=("json", "table"), default="json")
        p.add_argument("--float-input", action="store_true")
        if name == "bounds":
            p.add_argument("--search", action="store_true",
                           help="input is a search distribution (p_0, q_1, ..., p_n)")
        if name == "oracle":
            p.add_argument("--mode", dest="oracle_mode", choices=ORACLE_MODES, default="alphabetic")
            p.add_argument("--fast-bst-dp", action="store_true")
            p.add_argument("--x-max", type=int, default=None)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = vars(build_parser().parse_args(argv))
    try:
        config = RunConfig(**args)
    except InputError as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return 1
    result = run(config)
    sys.stdout.write(result.stdout)
    sys.stderr.write(result.stderr)
    return result.status


if __name__ == "__main__":
    sys.exit(main())
