"""Command-line interface: solve, check, oracle, gen, bench, lift, verify."""

from __future__ import annotations

import argparse
import csv
import os
import sys
import time
from pathlib import Path

from . import io as gio
from .core import GameGraph, is_finite, lift_to_simple
from .errors import GameError, TooLargeError
from .gamegen import Family, GenSpec, generate, generate_simple
from .oracle import (
    oracle_values,
    value_iteration_en_minus,
    value_iteration_en_plus,
)
from .layers import verify_trace
from .solver import Mode, check_certificate, solve, SidePartition


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except GameError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gkk",
        description="Solve mean-payoff and energy games by potential reduction.",
    )
    sub = parser.add_subparsers(required=True)

    p = sub.add_parser("solve", help="solve a game file and print the result JSON")
    p.add_argument("file", type=Path)
    p.add_argument("--general", action="store_true",
                   help="do not assume the game lacks zero-sum simple cycles")
    p.add_argument("--lift", action="store_true",
                   help="rescale weights first so no simple cycle sums to zero")
    p.add_argument("--trace", type=Path, metavar="OUT_JSON",
                   help="write a self-contained trace document for `verify`")
    p.set_defaults(handler=_cmd_solve)

    p = sub.add_parser("check", help="cross-check the solver against baselines")
    p.add_argument("file", type=Path)
    p.add_argument("--lift", action="store_true")
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("oracle", help="print brute-force values of a small game")
    p.add_argument("file", type=Path)
    p.add_argument("--n-limit", type=int, default=6)
    p.set_defaults(handler=_cmd_oracle)

    p = sub.add_parser("gen", help="generate a game file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--maxw", type=int, required=True)
    p.add_argument("--seed", type=int, default=None,
                   help="defaults to $GKK_SEED, then 0")
    p.add_argument("--family", choices=[f.value for f in Family],
                   default=Family.RANDOM.value)
    p.add_argument("--owner-ratio", type=float, default=0.5)
    p.add_argument("--simple", action="store_true",
                   help="lift the generated game so it has no zero-sum cycle")
    p.add_argument("-o", "--output", type=Path, required=True)
    p.set_defaults(handler=_cmd_gen)

    p = sub.add_parser("bench", help="solve every game in a directory to CSV")
    p.add_argument("--dir", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(handler=_cmd_bench)

    p = sub.add_parser("lift", help="rescale a game so no simple cycle sums to 0")
    p.add_argument("file", type=Path)
    p.add_argument("-o", "--output", type=Path, required=True)
    p.set_defaults(handler=_cmd_lift)

    p = sub.add_parser("verify", help="check a trace document against all claims")
    p.add_argument("--trace", type=Path, required=True)
    p.set_defaults(handler=_cmd_verify)

    return parser


def _load(path: Path) -> GameGraph:
    return gio.parse(path.read_text())


def _cmd_solve(args) -> int:
    game = _load(args.file)
    if args.lift:
        game = lift_to_simple(game)
    mode = Mode.GENERAL if args.general else Mode.SIMPLE
    result = solve(game, mode=mode, want_trace=args.trace is not None)
    print(gio.dumps(gio.result_to_doc(result)), end="")
    if args.trace is not None:
        args.trace.write_text(gio.dumps(gio.trace_doc(game, result)))
    return 0


def _cmd_check(args) -> int:
    game = _load(args.file)
    if args.lift:
        game = lift_to_simple(game)
    result = solve(game)
    failures: list[str] = []

    vi_plus = value_iteration_en_plus(game)
    vi_minus = value_iteration_en_minus(game)
    if result.values.en_plus != vi_plus.values:
        failures.append("en_plus disagrees with value iteration")
    if result.values.en_minus != vi_minus.values:
        failures.append("en_minus disagrees with value iteration")

    try:
        oracle = oracle_values(game)
        if result.values.en_plus != oracle.en_plus:
            failures.append("en_plus disagrees with the brute-force oracle")
        if result.values.en_minus != oracle.en_minus:
            failures.append("en_minus disagrees with the brute-force oracle")
        if oracle.mp_sign is not None and result.values.mp_sign != oracle.mp_sign:
            failures.append("mp_sign disagrees with the brute-force oracle")
    except TooLargeError:
        pass  # brute force only runs on small instances

    part = SidePartition(
        neg_side=result.neg_side,
        pos_side=result.pos_side,
        min_exits=frozenset(),
        max_exits=frozenset(),
    )
    if not check_certificate(game, result.potential, part):
        failures.append("certificate check failed")

    for f in failures:
        print(f"FAIL: {f}", file=sys.stderr)
    if not failures:
        print("ok: solver, baselines and certificate agree")
    return 1 if failures else 0


def _cmd_oracle(args) -> int:
    game = _load(args.file)
    res = oracle_values(game, n_limit=args.n_limit, require_nonzero_mp=False)
    doc = {
        "vertices": [
            {
                "id": v,
                "en_plus": gio._encode_ext(res.en_plus[v]),
                "en_minus": gio._encode_ext(res.en_minus[v]),
                "mp": str(res.mp[v]),
                "mp_sign": None if res.mp_sign is None else res.mp_sign[v].value,
            }
            for v in range(game.n)
        ]
    }
    print(gio.dumps(doc), end="")
    return 0


def _cmd_gen(args) -> int:
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("GKK_SEED", "0"))
    spec = GenSpec(
        n=args.n,
        m=args.m,
        max_abs_weight=args.maxw,
        seed=seed,
        family=Family(args.family),
        owner_ratio=args.owner_ratio,
    )
    game = generate_simple(spec) if args.simple else generate(spec)
    args.output.write_text(gio.serialize(game))
    return 0


def _cmd_bench(args) -> int:
    files = sorted(args.dir.glob("*.game"))
    if not files:
        print(f"error: no .game files in {args.dir}", file=sys.stderr)
        return 2
    with args.out.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            [
                "file", "n", "m", "N", "iterations", "E_plus", "E_minus",
                "bound_thm3", "bound_nN", "wall_time_s", "vi_lift_count",
            ]
        )
        for path in files:
            game = _load(path)
            start = time.perf_counter()
            result = solve(game)
            elapsed = time.perf_counter() - start
            vi = value_iteration_en_plus(game)
            vi_minus = value_iteration_en_minus(game)
            writer.writerow(
                [
                    path.name,
                    result.n,
                    result.m,
                    result.max_abs_weight,
                    result.iterations,
                    result.e_plus,
                    result.e_minus,
                    result.max_abs_weight + result.e_plus + result.e_minus + 1,
                    result.n * result.max_abs_weight + 1,
                    f"{elapsed:.6f}",
                    vi.lifts + vi_minus.lifts,
                ]
            )
    return 0


def _cmd_lift(args) -> int:
    game = _load(args.file)
    args.output.write_text(gio.serialize(lift_to_simple(game)))
    return 0


def _cmd_verify(args) -> int:
    doc = gio.loads(args.trace.read_text())
    game, result = gio.trace_doc_load(doc)
    if result.trace is None:
        print("error: document carries no trace", file=sys.stderr)
        return 2
    e_plus_vals = value_iteration_en_plus(game).values
    e_minus_vals = value_iteration_en_minus(game).values
    e_plus = max((x for x in e_plus_vals if is_finite(x)), default=0)
    e_minus = -min((x for x in e_minus_vals if is_finite(x)), default=0)
    report = verify_trace(result.trace, result, (e_plus, e_minus))
    for line in report.lines():
        print(line)
    return 0 if report.all_passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
