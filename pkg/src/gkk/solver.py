"""Iterated potential reduction for mean-payoff and energy games.

Each round splits the vertices into a negative side (Min can force the
first nonzero weight seen to be negative) and a positive side (Max can
force it positive), measures the smallest weight magnitude delta that
separates the sides, and raises the positive side's potential by delta.
Crossing edges gain or lose delta; internal edges are untouched. The loop
stops when no finite delta exists, at which point energy values of the
reweighted game are 0 or infinite and the accumulated potential spells out
the original game's energy values.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .core import (
    INF,
    INT64_MAX,
    NEG_INF,
    ExtInt,
    GameGraph,
    Owner,
    Sign,
    apply_potential,
    is_finite,
    sign_sets,
)
from .errors import IterationCapError, SolverInternalError, WeightOverflowError
from .layers import IterationRecord, alpha_encoding, alternation_depths


class Mode(Enum):
    SIMPLE = "SIMPLE"
    GENERAL = "GENERAL"


@dataclass(frozen=True)
class SidePartition:
    """The negative/positive split plus the forced-exit vertex sets.

    min_exits are Min vertices on the negative side whose every edge back
    into it is positive (staying put would cost them); max_exits are the
    mirror image on the positive side.
    """

    neg_side: frozenset[int]
    pos_side: frozenset[int]
    min_exits: frozenset[int]
    max_exits: frozenset[int]


@dataclass(frozen=True)
class StepSizes:
    """The six crossing-weight extremes and the resulting step size.

    min_neg / max_neg bound the least bad negative weight Min / Max can be
    forced to, combined into neg; min_pos / max_pos are the positive
    mirror, combined into pos. step = min(-neg, pos) is how far the
    positive side's potential can rise; an infinite step means the game is
    already reduced.
    """

    min_neg: ExtInt
    max_neg: ExtInt
    neg: ExtInt
    min_pos: ExtInt
    max_pos: ExtInt
    pos: ExtInt
    step: ExtInt


@dataclass(frozen=True)
class ValueVector:
    """Per-vertex energy values and mean-payoff signs.

    en_minus is None when the run could not certify dual-energy values
    (general mode).
    """

    en_plus: tuple[ExtInt, ...]
    en_minus: tuple[ExtInt, ...] | None
    mp_sign: tuple[Sign, ...]


@dataclass(frozen=True)
class SolveResult:
    values: ValueVector
    potential: tuple[int, ...]  # cumulative potential over all steps
    iterations: int
    mode: Mode
    neg_side: frozenset[int]  # final partition
    pos_side: frozenset[int]
    e_plus: int
    e_minus: int | None
    n: int
    m: int
    max_abs_weight: int
    trace: tuple[IterationRecord, ...] | None


# ---------------------------------------------------------------------------
# Partition and step-size computation (shared by the public operations and
# the solve loop, which runs on mutable weight arrays).
# ---------------------------------------------------------------------------


def _positive_side(
    n: int,
    is_min: Sequence[bool],
    out_ids: Sequence[Sequence[int]],
    esrc: Sequence[int],
    edst: Sequence[int],
    ew: Sequence[int],
) -> bytearray:
    """Attractor for the positive side, as a membership bytearray.

    Max vertices join on a positive edge, or on a zero edge into the set;
    Min vertices join once every edge is positive or is a zero edge into
    the set. Min vertices with any negative edge can never join. Runs in
    O(n + m) with per-edge counters over reverse adjacency.
    """
    in_pos = bytearray(n)
    blockers = [0] * n  # per Min vertex: edges with w <= 0 not yet into the set
    queue: deque[int] = deque()
    for v in range(n):
        if is_min[v]:
            c = 0
            for eid in out_ids[v]:
                if ew[eid] <= 0:
                    c += 1
            blockers[v] = c
            if c == 0:
                in_pos[v] = 1
                queue.append(v)
        else:
            for eid in out_ids[v]:
                if ew[eid] > 0:
                    in_pos[v] = 1
                    queue.append(v)
                    break
    rev_zero: list[list[int]] = [[] for _ in range(n)]
    for eid in range(len(ew)):
        if ew[eid] == 0:
            rev_zero[edst[eid]].append(esrc[eid])
    while queue:
        u = queue.popleft()
        for v in rev_zero[u]:
            if in_pos[v]:
                continue
            if is_min[v]:
                blockers[v] -= 1
                if blockers[v] == 0:
                    in_pos[v] = 1
                    queue.append(v)
            else:
                in_pos[v] = 1
                queue.append(v)
    return in_pos


def _exit_sets(
    n: int,
    is_min: Sequence[bool],
    out_ids: Sequence[Sequence[int]],
    edst: Sequence[int],
    ew: Sequence[int],
    in_pos: Sequence[int],
) -> tuple[set[int], set[int]]:
    """Forced-exit vertices of both sides (per-edge quantification)."""
    min_exits: set[int] = set()
    max_exits: set[int] = set()
    for v in range(n):
        if is_min[v] and not in_pos[v]:
            if all(ew[eid] > 0 for eid in out_ids[v] if not in_pos[edst[eid]]):
                min_exits.add(v)
        elif not is_min[v] and in_pos[v]:
            if all(ew[eid] < 0 for eid in out_ids[v] if in_pos[edst[eid]]):
                max_exits.add(v)
    return min_exits, max_exits


def _step_sizes(
    is_min: Sequence[bool],
    out_ids: Sequence[Sequence[int]],
    esrc: Sequence[int],
    edst: Sequence[int],
    ew: Sequence[int],
    in_pos: Sequence[int],
    min_exits: set[int],
    max_exits: set[int],
) -> StepSizes:
    max_neg: ExtInt = NEG_INF
    for eid in range(len(ew)):
        v = esrc[eid]
        if not is_min[v] and not in_pos[v] and in_pos[edst[eid]]:
            if ew[eid] > max_neg:
                max_neg = ew[eid]
    min_neg: ExtInt = NEG_INF
    for v in min_exits:
        worst = min(ew[eid] for eid in out_ids[v])
        if worst > min_neg:
            min_neg = worst
    neg = max(min_neg, max_neg)

    min_pos: ExtInt = INF
    for eid in range(len(ew)):
        v = esrc[eid]
        if is_min[v] and in_pos[v] and not in_pos[edst[eid]]:
            if ew[eid] < min_pos:
                min_pos = ew[eid]
    max_pos: ExtInt = INF
    for v in max_exits:
        best = max(ew[eid] for eid in out_ids[v])
        if best < max_pos:
            max_pos = best
    pos = min(min_pos, max_pos)

    if neg >= 0 or pos <= 0:
        raise SolverInternalError(
            f"crossing extremes have the wrong sign: neg={neg}, pos={pos}"
        )
    return StepSizes(
        min_neg=min_neg,
        max_neg=max_neg,
        neg=neg,
        min_pos=min_pos,
        max_pos=max_pos,
        pos=pos,
        step=min(-neg, pos),
    )


def _arrays(g: GameGraph):
    is_min = [g.owners[v] is Owner.MIN for v in range(g.n)]
    esrc = [e.src for e in g.edges]
    edst = [e.dst for e in g.edges]
    ew = [e.weight for e in g.edges]
    return is_min, list(g.out_edges), esrc, edst, ew


def compute_partition(g: GameGraph) -> SidePartition:
    """Split the vertices into the negative and positive sides.

    The positive side is the least set closed under: a Max vertex with a
    positive edge or a non-negative edge into the set joins; a Min vertex
    all of whose edges are positive or non-negative into the set joins.
    The negative side is the complement, so vertices from which neither
    player controls the first nonzero sign fall on the negative side. On
    games without zero-sum simple cycles this coincides with the direct
    attractor for the negative side.
    """
    is_min, out_ids, esrc, edst, ew = _arrays(g)
    in_pos = _positive_side(g.n, is_min, out_ids, esrc, edst, ew)
    min_exits, max_exits = _exit_sets(g.n, is_min, out_ids, edst, ew, in_pos)
    pos = frozenset(v for v in range(g.n) if in_pos[v])
    return SidePartition(
        neg_side=frozenset(range(g.n)) - pos,
        pos_side=pos,
        min_exits=frozenset(min_exits),
        max_exits=frozenset(max_exits),
    )


def compute_deltas(g: GameGraph, part: SidePartition) -> StepSizes:
    """Crossing-weight extremes and the step size for a computed partition."""
    is_min, out_ids, esrc, edst, ew = _arrays(g)
    in_pos = bytearray(g.n)
    for v in part.pos_side:
        in_pos[v] = 1
    return _step_sizes(
        is_min,
        out_ids,
        esrc,
        edst,
        ew,
        in_pos,
        set(part.min_exits),
        set(part.max_exits),
    )


def gkk_step(
    g: GameGraph, part: SidePartition, deltas: StepSizes
) -> tuple[tuple[int, ...], GameGraph]:
    """One potential step: raise the positive side by the step size.

    Returns the applied potential and the reweighted game. Edges from the
    negative side into the positive side gain the step, the reverse
    crossing edges lose it, internal edges are unchanged.
    """
    if not is_finite(deltas.step):
        raise SolverInternalError("step size is infinite; the game is reduced")
    phi = tuple(deltas.step if v in part.pos_side else 0 for v in range(g.n))
    return phi, apply_potential(g, phi)


def _reduced_violations(
    g: GameGraph, neg: frozenset[int], pos: frozenset[int]
) -> list[str]:
    """Violations of the four local conditions of a reduced game."""
    issues: list[str] = []
    if neg & pos or (neg | pos) != frozenset(range(g.n)):
        issues.append("the two sides do not partition the vertices")
        return issues
    for v in range(g.n):
        out = [g.edges[i] for i in g.out_edges[v]]
        if v in neg:
            if g.is_min(v):
                if not any(e.weight <= 0 and e.dst in neg for e in out):
                    issues.append(
                        f"Min vertex {v} on the negative side has no "
                        "non-positive edge staying there"
                    )
            else:
                for e in out:
                    if e.weight > 0 or e.dst in pos:
                        issues.append(
                            f"Max vertex {v} on the negative side has "
                            f"edge ({e.src}->{e.dst}, {e.weight}) that is "
                            "positive or leaves the side"
                        )
                        break
        else:
            if g.is_min(v):
                for e in out:
                    if e.weight < 0 or e.dst in neg:
                        issues.append(
                            f"Min vertex {v} on the positive side has "
                            f"edge ({e.src}->{e.dst}, {e.weight}) that is "
                            "negative or leaves the side"
                        )
                        break
            else:
                if not any(e.weight >= 0 and e.dst in pos for e in out):
                    issues.append(
                        f"Max vertex {v} on the positive side has no "
                        "non-negative edge staying there"
                    )
    return issues


def is_reduced(g: GameGraph, part: SidePartition) -> bool:
    """True iff the game satisfies all four reduced-game conditions."""
    return not _reduced_violations(g, part.neg_side, part.pos_side)


def certificate_violations(
    g: GameGraph, phi: Sequence[int], neg: frozenset[int], pos: frozenset[int]
) -> list[str]:
    """Diagnostics for a claimed certificate (empty list means valid).

    Valid means: reweighting g by phi yields a game satisfying the four
    reduced-game conditions under the claimed partition. Linear time and
    independent of the solver's internals.
    """
    return _reduced_violations(apply_potential(g, phi), neg, pos)


def check_certificate(
    g: GameGraph, phi: Sequence[int], claimed: SidePartition
) -> bool:
    return not certificate_violations(g, phi, claimed.neg_side, claimed.pos_side)


def extract_strategies(
    g_final: GameGraph, part: SidePartition
) -> tuple[dict[int, int], dict[int, int]]:
    """Positional strategies read off a reduced game, as vertex -> edge id.

    Min keeps the play non-positive on the negative side; Max keeps it
    non-negative on the positive side; on the opposite side any edge does
    (all are safe there in a reduced game). Ties break on lowest
    destination, then lowest edge index.
    """
    sigma: dict[int, int] = {}
    tau: dict[int, int] = {}
    for v in range(g_final.n):
        out = list(g_final.out_edges[v])
        if g_final.is_min(v):
            if v in part.neg_side:
                candidates = [
                    eid
                    for eid in out
                    if g_final.edges[eid].weight <= 0
                    and g_final.edges[eid].dst in part.neg_side
                ]
                if not candidates:
                    raise SolverInternalError(
                        f"Min vertex {v} lacks a non-positive edge into the "
                        "negative side; the game is not reduced"
                    )
            else:
                candidates = out
            sigma[v] = min(candidates, key=lambda i: (g_final.edges[i].dst, i))
        else:
            if v in part.pos_side:
                candidates = [
                    eid
                    for eid in out
                    if g_final.edges[eid].weight >= 0
                    and g_final.edges[eid].dst in part.pos_side
                ]
                if not candidates:
                    raise SolverInternalError(
                        f"Max vertex {v} lacks a non-negative edge into the "
                        "positive side; the game is not reduced"
                    )
            else:
                candidates = out
            tau[v] = min(candidates, key=lambda i: (g_final.edges[i].dst, i))
    return sigma, tau


# ---------------------------------------------------------------------------
# The solve loop.
# ---------------------------------------------------------------------------


def solve(
    g: GameGraph, mode: Mode = Mode.SIMPLE, want_trace: bool = False
) -> SolveResult:
    """Run potential steps to the reduced game and read off the values.

    In SIMPLE mode the caller asserts the game has no zero-sum simple
    cycle (for instance, the output of lift_to_simple); full energy and
    dual-energy values are produced and the loop is capped at n*N + 1
    steps, beyond which IterationCapError signals a violated claim or a
    bug. In GENERAL mode no simplicity is assumed: only en_plus and the
    negative-side claims are emitted, en_minus is None, and a much larger
    safety cap applies.
    """
    n = g.n
    top = g.max_abs_weight
    cap = n * top + 1 if mode is Mode.SIMPLE else n * n * top + n + 1
    is_min, out_ids, esrc, edst, ew = _arrays(g)
    m = len(ew)
    phi_total = [0] * n
    step_sum = 0
    iterations = 0
    records: list[IterationRecord] = [] if want_trace else None  # type: ignore[assignment]

    while True:
        in_pos = _positive_side(n, is_min, out_ids, esrc, edst, ew)
        min_exits, max_exits = _exit_sets(n, is_min, out_ids, edst, ew, in_pos)
        sizes = _step_sizes(
            is_min, out_ids, esrc, edst, ew, in_pos, min_exits, max_exits
        )
        step = sizes.step

        snapshot = None
        if want_trace:
            snapshot = _trace_snapshot(
                g, ew, in_pos, min_exits, max_exits, mode
            )

        if not is_finite(step):
            if want_trace:
                records.append(
                    _make_record(
                        step=iterations,
                        step_size=None,
                        step_sum=step_sum,
                        phi=tuple(phi_total),
                        snapshot=snapshot,
                    )
                )
            break

        iterations += 1
        if iterations > cap:
            raise IterationCapError(
                f"{iterations} potential steps exceed the cap {cap}; "
                "the input is not simple or there is a bug"
            )
        step_sum += step
        for eid in range(m):
            s_pos = in_pos[esrc[eid]]
            d_pos = in_pos[edst[eid]]
            if s_pos != d_pos:
                w = ew[eid] + step if d_pos else ew[eid] - step
                if abs(w) > INT64_MAX:
                    raise WeightOverflowError(
                        "reweighted edge left the 64-bit envelope"
                    )
                ew[eid] = w
        for v in range(n):
            if in_pos[v]:
                phi_total[v] += step
                if phi_total[v] > INT64_MAX:
                    raise WeightOverflowError(
                        "cumulative potential left the 64-bit envelope"
                    )
        if want_trace:
            records.append(
                _make_record(
                    step=iterations - 1,
                    step_size=step,
                    step_sum=step_sum,
                    phi=tuple(phi_total),
                    snapshot=snapshot,
                )
            )

    final_pos = frozenset(v for v in range(n) if in_pos[v])
    final_neg = frozenset(range(n)) - final_pos
    g_final = GameGraph(
        n=n,
        owners=g.owners,
        edges=tuple(
            type(g.edges[0])(esrc[i], edst[i], ew[i]) for i in range(m)
        ),
    )
    leftover = _reduced_violations(g_final, final_neg, final_pos)
    if leftover:
        raise SolverInternalError(
            "loop ended on a non-reduced game: " + "; ".join(leftover)
        )

    phi = tuple(phi_total)
    top_phi = max(phi)
    en_plus = tuple(INF if v in final_pos else phi[v] for v in range(n))
    mp_sign = tuple(
        Sign.POS if v in final_pos else Sign.NEG for v in range(n)
    )
    e_plus = max((phi[v] for v in final_neg), default=0)
    en_minus: tuple[ExtInt, ...] | None
    e_minus: int | None
    if mode is Mode.SIMPLE:
        if phi and min(phi) != 0:
            raise SolverInternalError(
                "cumulative potential has no zero entry on a simple game"
            )
        en_minus = tuple(
            phi[v] - top_phi if v in final_pos else NEG_INF for v in range(n)
        )
        e_minus = max((top_phi - phi[v] for v in final_pos), default=0)
    else:
        en_minus = None
        e_minus = None

    return SolveResult(
        values=ValueVector(en_plus=en_plus, en_minus=en_minus, mp_sign=mp_sign),
        potential=phi,
        iterations=iterations,
        mode=mode,
        neg_side=final_neg,
        pos_side=final_pos,
        e_plus=e_plus,
        e_minus=e_minus,
        n=n,
        m=m,
        max_abs_weight=top,
        trace=tuple(records) if want_trace else None,
    )


def _trace_snapshot(
    g: GameGraph,
    ew: Sequence[int],
    in_pos: Sequence[int],
    min_exits: set[int],
    max_exits: set[int],
    mode: Mode,
) -> dict:
    """Sets, layers and encodings of the current game state."""
    current = GameGraph(
        n=g.n,
        owners=g.owners,
        edges=tuple(
            type(e)(e.src, e.dst, ew[i]) for i, e in enumerate(g.edges)
        ),
    )
    pos_side = frozenset(v for v in range(g.n) if in_pos[v])
    neg_side = frozenset(range(g.n)) - pos_side
    neg_set, zero_set, pos_set = sign_sets(current)
    snapshot = {
        "neg_side": neg_side,
        "pos_side": pos_side,
        "neg_set": neg_set,
        "zero_set": zero_set,
        "pos_set": pos_set,
        "signed_neg": None,
        "signed_pos": None,
        "alpha_minus": None,
        "alpha_plus": None,
    }
    if mode is Mode.SIMPLE:
        part = SidePartition(
            neg_side=neg_side,
            pos_side=pos_side,
            min_exits=frozenset(min_exits),
            max_exits=frozenset(max_exits),
        )
        neg_layers, pos_layers = alternation_depths(current, part)
        snapshot["signed_neg"] = neg_layers.signed_sizes
        snapshot["signed_pos"] = pos_layers.signed_sizes
        snapshot["alpha_minus"] = alpha_encoding(
            neg_layers, len(pos_side), len(pos_set)
        )
        snapshot["alpha_plus"] = alpha_encoding(
            pos_layers, len(neg_side), len(neg_set)
        )
    return snapshot


def _make_record(
    step: int,
    step_size: int | None,
    step_sum: int,
    phi: tuple[int, ...],
    snapshot: dict,
) -> IterationRecord:
    return IterationRecord(
        step=step,
        step_size=step_size,
        step_size_sum=step_sum,
        neg_side=snapshot["neg_side"],
        pos_side=snapshot["pos_side"],
        neg_set=snapshot["neg_set"],
        zero_set=snapshot["zero_set"],
        pos_set=snapshot["pos_set"],
        k=len(snapshot["neg_set"]) + len(snapshot["pos_set"]),
        signed_sizes_neg=snapshot["signed_neg"],
        signed_sizes_pos=snapshot["signed_pos"],
        alpha_minus=snapshot["alpha_minus"],
        alpha_plus=snapshot["alpha_plus"],
        phi=phi,
    )
