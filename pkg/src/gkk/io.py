"""Text game format and structured JSON result documents.

Game files are line based: optional `#` comments, a `game <n>` header,
one `vertex <id> <MIN|MAX>` line per vertex, and `edge <src> <dst> <w>`
lines. Writing canonicalises the order (vertices ascending, edges sorted
by (src, dst, weight)), so parse(serialize(g)) restores a canonical game
exactly. Result documents are plain JSON with the string sentinels "inf"
and "-inf" for extended values.
"""

from __future__ import annotations

import json
from typing import Any

from .core import (
    INF,
    NEG_INF,
    Edge,
    ExtInt,
    GameGraph,
    Owner,
    Sign,
    is_finite,
    validate,
)
from .errors import GameParseError
from .layers import IterationRecord, VerificationReport
from .solver import Mode, SolveResult, ValueVector


def parse(text: str) -> GameGraph:
    """Parse a game file; raises GameParseError with the offending line."""
    n: int | None = None
    owners: dict[int, Owner] = {}
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "game":
            if n is not None:
                raise GameParseError(lineno, "duplicate game header")
            n = _int_token(lineno, tokens, 1, "vertex count")
            if len(tokens) != 2:
                raise GameParseError(lineno, "game header takes one field")
            if n < 1:
                raise GameParseError(lineno, "vertex count must be positive")
        elif kind == "vertex":
            if n is None:
                raise GameParseError(lineno, "vertex line before game header")
            if len(tokens) != 3:
                raise GameParseError(lineno, "vertex line takes id and owner")
            vid = _int_token(lineno, tokens, 1, "vertex id")
            if not 0 <= vid < n:
                raise GameParseError(lineno, f"vertex id {vid} outside 0..{n - 1}")
            if vid in owners:
                raise GameParseError(lineno, f"vertex {vid} declared twice")
            if tokens[2] not in ("MIN", "MAX"):
                raise GameParseError(lineno, f"unknown owner {tokens[2]!r}")
            owners[vid] = Owner(tokens[2])
        elif kind == "edge":
            if n is None:
                raise GameParseError(lineno, "edge line before game header")
            if len(tokens) != 4:
                raise GameParseError(lineno, "edge line takes src, dst and weight")
            src = _int_token(lineno, tokens, 1, "source")
            dst = _int_token(lineno, tokens, 2, "destination")
            w = _int_token(lineno, tokens, 3, "weight")
            edges.append(Edge(src, dst, w))
        else:
            raise GameParseError(lineno, f"unknown directive {kind!r}")
    if n is None:
        raise GameParseError(0, "missing game header")
    missing = [v for v in range(n) if v not in owners]
    if missing:
        raise GameParseError(0, f"vertices {missing} never declared")
    game = GameGraph(
        n=n,
        owners=tuple(owners[v] for v in range(n)),
        edges=tuple(edges),
    )
    return validate(game)


def _int_token(lineno: int, tokens: list[str], idx: int, what: str) -> int:
    try:
        return int(tokens[idx])
    except (IndexError, ValueError):
        raise GameParseError(lineno, f"expected an integer {what}") from None


def serialize(g: GameGraph) -> str:
    """Canonical text form: vertices ascending, edges by (src, dst, weight)."""
    lines = [f"game {g.n}"]
    for v in range(g.n):
        lines.append(f"vertex {v} {g.owners[v].value}")
    for e in sorted(g.edges, key=lambda e: (e.src, e.dst, e.weight)):
        lines.append(f"edge {e.src} {e.dst} {e.weight}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Result documents.
# ---------------------------------------------------------------------------


def _encode_ext(x: ExtInt | None) -> int | str | None:
    if x is None:
        return None
    if is_finite(x):
        return x
    return "inf" if x == INF else "-inf"


def _decode_ext(x: int | str | None) -> ExtInt | None:
    if x is None:
        return None
    if x == "inf":
        return INF
    if x == "-inf":
        return NEG_INF
    if isinstance(x, int):
        return x
    raise ValueError(f"bad extended integer {x!r}")


def result_to_doc(result: SolveResult, include_trace: bool = False) -> dict[str, Any]:
    """Structured document for one solve run.

    bound_thm3 is N + E+ + E- + 1 and bound_nN is n*N + 1; both are null
    in GENERAL mode, where dual-energy values are not certified.
    """
    vertices = []
    for v in range(result.n):
        en_minus = (
            None if result.values.en_minus is None else result.values.en_minus[v]
        )
        vertices.append(
            {
                "id": v,
                "en_plus": _encode_ext(result.values.en_plus[v]),
                "en_minus": _encode_ext(en_minus),
                "mp_sign": result.values.mp_sign[v].value,
                "potential": result.potential[v],
            }
        )
    simple = result.mode is Mode.SIMPLE
    run = {
        "iterations": result.iterations,
        "mode": result.mode.value,
        "n": result.n,
        "m": result.m,
        "maxAbsWeight": result.max_abs_weight,
        "E_plus": result.e_plus,
        "E_minus": result.e_minus,
        "bound_thm3": (
            result.max_abs_weight + result.e_plus + result.e_minus + 1
            if simple
            else None
        ),
        "bound_nN": result.n * result.max_abs_weight + 1,
        "neg_side": sorted(result.neg_side),
        "pos_side": sorted(result.pos_side),
    }
    doc: dict[str, Any] = {"vertices": vertices, "run": run}
    if include_trace and result.trace is not None:
        doc["trace"] = [record_to_doc(rec) for rec in result.trace]
    return doc


def record_to_doc(rec: IterationRecord) -> dict[str, Any]:
    return {
        "step": rec.step,
        "delta": rec.step_size,
        "delta_sum": rec.step_size_sum,
        "neg_side": sorted(rec.neg_side),
        "pos_side": sorted(rec.pos_side),
        "neg_set": sorted(rec.neg_set),
        "zero_set": sorted(rec.zero_set),
        "pos_set": sorted(rec.pos_set),
        "k": rec.k,
        "signed_sizes_neg": (
            None if rec.signed_sizes_neg is None else list(rec.signed_sizes_neg)
        ),
        "signed_sizes_pos": (
            None if rec.signed_sizes_pos is None else list(rec.signed_sizes_pos)
        ),
        "alpha_minus": rec.alpha_minus,
        "alpha_plus": rec.alpha_plus,
        "phi": list(rec.phi),
    }


def record_from_doc(doc: dict[str, Any]) -> IterationRecord:
    return IterationRecord(
        step=doc["step"],
        step_size=doc["delta"],
        step_size_sum=doc["delta_sum"],
        neg_side=frozenset(doc["neg_side"]),
        pos_side=frozenset(doc["pos_side"]),
        neg_set=frozenset(doc["neg_set"]),
        zero_set=frozenset(doc["zero_set"]),
        pos_set=frozenset(doc["pos_set"]),
        k=doc["k"],
        signed_sizes_neg=(
            None
            if doc["signed_sizes_neg"] is None
            else tuple(doc["signed_sizes_neg"])
        ),
        signed_sizes_pos=(
            None
            if doc["signed_sizes_pos"] is None
            else tuple(doc["signed_sizes_pos"])
        ),
        alpha_minus=doc["alpha_minus"],
        alpha_plus=doc["alpha_plus"],
        phi=tuple(doc["phi"]),
    )


def result_from_doc(doc: dict[str, Any]) -> SolveResult:
    """Rebuild a SolveResult from its document; inverse of result_to_doc."""
    run = doc["run"]
    mode = Mode(run["mode"])
    vertices = doc["vertices"]
    en_plus = tuple(_decode_ext(v["en_plus"]) for v in vertices)
    if mode is Mode.SIMPLE:
        en_minus = tuple(_decode_ext(v["en_minus"]) for v in vertices)
    else:
        en_minus = None
    mp_sign = tuple(Sign(v["mp_sign"]) for v in vertices)
    potential = tuple(v["potential"] for v in vertices)
    trace = None
    if "trace" in doc:
        trace = tuple(record_from_doc(rec) for rec in doc["trace"])
    return SolveResult(
        values=ValueVector(en_plus=en_plus, en_minus=en_minus, mp_sign=mp_sign),
        potential=potential,
        iterations=run["iterations"],
        mode=mode,
        neg_side=frozenset(run["neg_side"]),
        pos_side=frozenset(run["pos_side"]),
        e_plus=run["E_plus"],
        e_minus=run["E_minus"],
        n=run["n"],
        m=run["m"],
        max_abs_weight=run["maxAbsWeight"],
        trace=trace,
    )


def trace_doc(game: GameGraph, result: SolveResult) -> dict[str, Any]:
    """Self-contained document for later verification: game plus traced run."""
    return {
        "game": serialize(game),
        "result": result_to_doc(result, include_trace=True),
    }


def trace_doc_load(doc: dict[str, Any]) -> tuple[GameGraph, SolveResult]:
    return parse(doc["game"]), result_from_doc(doc["result"])


def report_to_doc(report: VerificationReport) -> dict[str, Any]:
    return {
        "all_passed": report.all_passed,
        "iterations": report.iterations,
        "bound_energy": _encode_ext(report.bound_energy),
        "bound_pseudo": report.bound_pseudo,
        "bound_combinatorial": report.bound_combinatorial,
        "checks": [
            {
                "name": c.name,
                "passed": c.passed,
                "first_violation_step": c.first_violation_step,
                "detail": c.detail,
            }
            for c in report.checks
        ],
    }


def dumps(doc: dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def loads(text: str) -> dict[str, Any]:
    return json.loads(text)
