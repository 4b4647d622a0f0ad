"""Command-line front end: decompose, factorize, verify-base, bench."""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional

import numpy as np

from .groups import build_group, spec_from_json, spec_to_json
from .intervals import (
    GradeSequence,
    decompose_optimal,
    decomposition_to_json,
    lemma_bound,
    sequence_from_json,
)
from .rewriting import StepBudgetExceeded, algebra_from_json
from .spanning import (
    NOT_WITNESSED,
    VIOLATED,
    WITNESSED,
    check_graded_theorem,
    is_shirshov_base,
    report_to_json,
)
from .words import (
    alphabet_from_json,
    factorization_to_json,
    factorize,
    height_bound,
    power_count,
    word_from_json,
)

# Exit codes: 0 ok / witnessed, 1 internal invariant violation, 2 malformed
# input, 3 not-witnessed, 4 step budget exhausted.
EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_BAD_INPUT = 2
EXIT_NOT_WITNESSED = 3
EXIT_BUDGET = 4


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load_payload(args: argparse.Namespace, required: bool = True) -> Optional[object]:
    if args.json is not None and args.input is not None:
        raise _CliError(EXIT_BAD_INPUT, "give either --input or --json, not both.")
    text: Optional[str] = None
    if args.json is not None:
        text = args.json
    elif args.input is not None:
        try:
            with open(args.input, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise _CliError(EXIT_BAD_INPUT, f"cannot read {args.input}: {exc}") from exc
    if text is None:
        if required:
            raise _CliError(EXIT_BAD_INPUT, "an input is required: --input FILE or --json STRING.")
        return None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise _CliError(EXIT_BAD_INPUT, f"bad JSON: {exc}") from exc


def _emit(doc: object, lines: list[str], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(doc))
    else:
        for line in lines:
            print(line)


def _cmd_decompose(args: argparse.Namespace) -> int:
    payload = _load_payload(args)
    try:
        seq = sequence_from_json(payload)
    except ValueError as exc:
        raise _CliError(EXIT_BAD_INPUT, str(exc)) from exc
    dec = decompose_optimal(seq)
    n, m = len(seq), seq.group.order
    bound = lemma_bound(n, m)
    bound_ok = dec.coverage >= bound
    doc = decomposition_to_json(dec)
    doc["bound_ok"] = bound_ok
    lines = [
        "intervals: " + (" ".join(f"[{a},{b}]" for a, b in dec.intervals) or "(none)"),
        "uncovered: " + (" ".join(str(p) for p in dec.uncovered) or "(none)"),
        f"coverage {dec.coverage} >= n-|G|+1 = {bound}: {str(bound_ok).lower()}",
    ]
    _emit(doc, lines, args.format)
    return EXIT_OK if bound_ok else EXIT_INTERNAL


def _cmd_factorize(args: argparse.Namespace) -> int:
    payload = _load_payload(args)
    if not isinstance(payload, dict) or "alphabet" not in payload or "word" not in payload:
        raise _CliError(EXIT_BAD_INPUT, "factorize needs \"alphabet\" and \"word\" fields.")
    try:
        alphabet = alphabet_from_json(payload["alphabet"])
        word = word_from_json(payload["word"])
        fact = factorize(alphabet, word)
    except ValueError as exc:
        raise _CliError(EXIT_BAD_INPUT, str(exc)) from exc
    doc: dict = {
        "segments": factorization_to_json(fact),
        "k": fact.k,
        "y_total": fact.y_total,
    }
    lines = [
        "segments: " + (" ".join(f"{s.tag}[{s.start},{s.end}]" for s in fact.segments) or "(empty)"),
        f"k = {fact.k}, y letters = {fact.y_total}",
    ]
    h = args.h if args.h is not None else payload.get("h")
    if h is not None:
        if not isinstance(h, int) or h < 1:
            raise _CliError(EXIT_BAD_INPUT, f"height must be a positive integer, got {h!r}.")
        count = power_count(fact, h)
        bound = height_bound(h, alphabet.group.order)
        doc.update({"power_count": count, "height_bound": bound, "within_bound": count <= bound})
        lines.append(
            f"power_count(h={h}) = {count} <= height_bound = {bound}: "
            f"{str(count <= bound).lower()}"
        )
    _emit(doc, lines, args.format)
    return EXIT_OK


def _cmd_verify_base(args: argparse.Namespace) -> int:
    payload = _load_payload(args)
    if not isinstance(payload, dict) or "algebra" not in payload or "base" not in payload:
        raise _CliError(EXIT_BAD_INPUT, "verify-base needs \"algebra\" and \"base\" fields.")
    h = args.h if args.h is not None else payload.get("h")
    d = args.d if args.d is not None else payload.get("d")
    D = args.D if args.D is not None else payload.get("D")
    graded = args.graded or bool(payload.get("graded", False))
    if not isinstance(h, int) or not isinstance(d, int):
        raise _CliError(EXIT_BAD_INPUT, "verify-base needs integer \"h\" and \"d\" (flags or fields).")
    if not isinstance(payload["base"], list):
        raise _CliError(EXIT_BAD_INPUT, "\"base\" must be a list of words.")
    try:
        spec = algebra_from_json(payload["algebra"])
        base = [word_from_json(w) for w in payload["base"]]
        check = check_graded_theorem if graded else is_shirshov_base
        report = check(spec, base, h, d, D, step_budget=args.steps)
    except StepBudgetExceeded as exc:
        raise _CliError(EXIT_BUDGET, str(exc)) from exc
    except ValueError as exc:
        raise _CliError(EXIT_BAD_INPUT, str(exc)) from exc
    lines = [
        f"verdict: {report.verdict}",
        f"height {report.height}, d {report.degree_cap}, D {report.expansion_cap}",
        f"rank products {report.rank_products}, rank joint {report.rank_joint}",
    ]
    if report.missing:
        lines.append("missing: " + ", ".join(" ".join(w) for w in report.missing))
    if report.neutral is not None:
        lines.append(
            f"identity-grade phase: {report.neutral.verdict} "
            f"(rank products {report.neutral.rank_products}, "
            f"rank joint {report.neutral.rank_joint})"
        )
    _emit(report_to_json(report), lines, args.format)
    if report.verdict == WITNESSED:
        return EXIT_OK
    if report.verdict == NOT_WITNESSED:
        return EXIT_NOT_WITNESSED
    return EXIT_INTERNAL


def _cmd_bench(args: argparse.Namespace) -> int:
    payload = _load_payload(args, required=False)
    cfg = payload if isinstance(payload, dict) else {}
    group_json = cfg.get("group", {"cyclic": 17})
    n = cfg.get("n", 1_000_000)
    trials = args.trials if args.trials is not None else cfg.get("trials", 3)
    seed = args.seed if args.seed is not None else cfg.get("seed", 0)
    if not isinstance(n, int) or n < 0:
        raise _CliError(EXIT_BAD_INPUT, f"n must be a nonnegative integer, got {n!r}.")
    if not isinstance(trials, int) or trials < 1:
        raise _CliError(EXIT_BAD_INPUT, f"trials must be >= 1, got {trials!r}.")
    try:
        group = build_group(spec_from_json(group_json))
    except ValueError as exc:
        raise _CliError(EXIT_BAD_INPUT, str(exc)) from exc
    m = group.order
    rng = np.random.default_rng(seed)
    arrays = [rng.integers(0, m, size=n) for _ in range(trials)]
    # Warm up allocator and dispatch outside the timed region.
    decompose_optimal(GradeSequence(group, np.zeros(8192, dtype=np.int64)))
    results = []
    for t, arr in enumerate(arrays):
        seq = GradeSequence(group, arr)
        t0 = time.perf_counter()
        dec = decompose_optimal(seq)
        dt = time.perf_counter() - t0
        results.append(
            {
                "trial": t,
                "seconds": dt,
                "ns_per_elem": (dt / n * 1e9) if n else 0.0,
                "coverage": dec.coverage,
                "bound_ok": dec.coverage >= lemma_bound(n, m),
            }
        )
    doc = {
        "group": spec_to_json(group.spec) if group.spec is not None else group_json,
        "n": n,
        "trials": trials,
        "seed": seed,
        "results": results,
    }
    lines = [f"group order {m}, n {n}, {trials} trials, seed {seed}"] + [
        f"trial {r['trial']}: {r['seconds']:.4f} s, {r['ns_per_elem']:.1f} ns/elem, "
        f"coverage {r['coverage']} (bound {'ok' if r['bound_ok'] else 'VIOLATED'})"
        for r in results
    ]
    _emit(doc, lines, args.format)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shirshov",
        description="Identity-product interval decompositions, graded word "
        "factorizations, and spanning checks for finitely presented algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--input", metavar="FILE", help="read the JSON payload from a file")
        p.add_argument("--json", metavar="STRING", help="take the JSON payload inline")
        p.add_argument("--format", choices=("json", "human"), default="json")

    p = sub.add_parser("decompose", help="optimal identity-product interval decomposition")
    common(p)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("factorize", help="Y/A-segment factorization of a graded word")
    common(p)
    p.add_argument("--h", type=int, default=None, help="height for the power count")
    p.set_defaults(func=_cmd_factorize)

    p = sub.add_parser("verify-base", help="witnessed-spanning check for a base set")
    common(p)
    p.add_argument("--h", type=int, default=None, help="height of the powered products")
    p.add_argument("--d", type=int, default=None, help="degree cap for target monomials")
    p.add_argument("--D", type=int, default=None, help="expansion-length cap (default 2*d)")
    p.add_argument("--graded", action="store_true", help="run the two-phase graded check")
    p.add_argument("--steps", type=int, default=None, help="rewrite step budget per word")
    p.set_defaults(func=_cmd_verify_base)

    p = sub.add_parser("bench", help="time decompose_optimal on seeded random sequences")
    common(p)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except StepBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
