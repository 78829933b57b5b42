"""Alternation-depth layers, integer layer encodings, and trace checking.

The solver's progress on a game without zero-sum simple cycles can be
measured combinatorially: inside the negative side, vertices are ranked by
the minimal number of ownership alternations of a zero-weight path to the
negative-extremal set. Between solver steps that keep the extremal sets
fixed, the signed sequence of layer sizes strictly grows lexicographically,
and an integer encoding of the layers grows by a quantified amount. This
module computes those decompositions and verifies a whole trace against
every such claim, together with the global step-count bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Sequence

from .core import ExtInt, GameGraph, Owner, is_finite, sign_sets
from .errors import SolverInternalError

if TYPE_CHECKING:  # imported for annotations only; no runtime dependency
    from .solver import SidePartition, SolveResult


@dataclass(frozen=True)
class LayerDecomposition:
    """Layers of one side of the partition by alternation depth.

    layers[0] is the base (the extremal-sign set of this side); layers[i]
    holds the vertices of depth i. Intermediate layers may be empty; any
    trailing empty layers are trimmed. depth maps every vertex of the side
    to its layer index.
    """

    layers: tuple[frozenset[int], ...]
    depth: dict[int, int]

    @property
    def base(self) -> frozenset[int]:
        return self.layers[0]

    @property
    def signed_sizes(self) -> tuple[int, ...]:
        """(-|layers[1]|, +|layers[2]|, -|layers[3]|, ...)."""
        return tuple(
            -len(layer) if i % 2 == 1 else len(layer)
            for i, layer in enumerate(self.layers[1:], start=1)
        )


def _side_depths(
    g: GameGraph,
    side: frozenset[int],
    base: frozenset[int],
    odd_owner: Owner,
) -> LayerDecomposition:
    """Layered closure of zero paths from the side's vertices to its base.

    Depth-l vertices reach the previous block by a zero path staying in
    the side whose vertices before the endpoint all belong to odd_owner
    when l is odd (the other owner when l is even). A vertex one zero step
    from the base but of the wrong owner for depth 1 therefore lands at
    depth 2 through an empty depth-1 layer.
    """
    # Reverse adjacency over zero edges internal to the side.
    rev: dict[int, list[int]] = {v: [] for v in side}
    for e in g.edges:
        if e.weight == 0 and e.src in side and e.dst in side:
            rev[e.dst].append(e.src)

    depth: dict[int, int] = {v: 0 for v in base}
    covered = set(base)
    layers: list[frozenset[int]] = [frozenset(base)]
    level = 0
    while len(covered) < len(side) and level < g.n:
        level += 1
        want = odd_owner if level % 2 == 1 else _other(odd_owner)
        # Backward reachability from everything covered so far through
        # not-yet-covered vertices of the required owner.
        reached: set[int] = set()
        stack = list(covered)
        while stack:
            u = stack.pop()
            for v in rev[u]:
                if v in covered or v in reached or g.owners[v] is not want:
                    continue
                reached.add(v)
                stack.append(v)
        for v in reached:
            depth[v] = level
        covered |= reached
        layers.append(frozenset(reached))
    if len(covered) != len(side):
        missing = sorted(side - covered)
        raise SolverInternalError(
            f"vertices {missing} have no finite alternation depth; "
            "the input has a zero cycle or the partition is wrong"
        )
    while len(layers) > 1 and not layers[-1]:
        layers.pop()
    return LayerDecomposition(layers=tuple(layers), depth=depth)


def _other(owner: Owner) -> Owner:
    return Owner.MAX if owner is Owner.MIN else Owner.MIN


def alternation_depths(
    g: GameGraph, part: "SidePartition"
) -> tuple[LayerDecomposition, LayerDecomposition]:
    """Layer decompositions of both sides of the partition.

    On the negative side the base is the set of vertices with negative
    extremal weight and odd layers hold MAX vertices; the positive side is
    the mirror image. Requires a game whose zero paths cannot cycle.
    """
    neg_base, _, pos_base = sign_sets(g)
    neg_side = _side_depths(g, part.neg_side, neg_base, odd_owner=Owner.MAX)
    pos_side = _side_depths(g, part.pos_side, pos_base, odd_owner=Owner.MIN)
    return neg_side, pos_side


def alpha_encoding(
    layers: LayerDecomposition, other_star_size: int, other_base_size: int
) -> int:
    """Pack the layer sizes of one side into one big integer.

    Reading most-significant bit first: a 0-run per odd layer, a 1-run per
    even layer (empty layers contribute nothing), a single 1, then
    (other_star_size - other_base_size) zeros, where "other" refers to the
    opposite side of the partition. The nominal bit width is
    (side size - base size) + 1 + (other_star_size - other_base_size).
    """
    value = 0
    for i, layer in enumerate(layers.layers[1:], start=1):
        size = len(layer)
        value <<= size
        if i % 2 == 0:
            value |= (1 << size) - 1
    value = (value << 1) | 1
    return value << (other_star_size - other_base_size)


def alpha_bit_width(
    layers: LayerDecomposition, other_star_size: int, other_base_size: int
) -> int:
    """Nominal width in bits of the layer encoding (leading zeros count)."""
    side_size = sum(len(layer) for layer in layers.layers)
    return (side_size - len(layers.base)) + 1 + (other_star_size - other_base_size)


def step_bound_energy(max_abs_weight: int, e_plus: int, e_minus: int) -> int:
    """Step-count bound from the largest weight and extreme finite energies."""
    return max_abs_weight + e_plus + e_minus + 1


def step_bound_pseudo(n: int, max_abs_weight: int) -> int:
    """Generic step-count cap n*N + 1; always at least step_bound_energy."""
    return n * max_abs_weight + 1


class Ordering(Enum):
    LT = -1
    EQ = 0
    GT = 1


def lex_compare(a: Sequence[int], b: Sequence[int]) -> Ordering:
    """Lexicographic order on signed size sequences, zero-padded to match."""
    width = max(len(a), len(b))
    pa = tuple(a) + (0,) * (width - len(a))
    pb = tuple(b) + (0,) * (width - len(b))
    if pa < pb:
        return Ordering.LT
    if pa > pb:
        return Ordering.GT
    return Ordering.EQ


@dataclass(frozen=True)
class IterationRecord:
    """Snapshot of one solver state along a traced run.

    Records 0..t-1 describe the game before each of the t executed
    potential steps together with that step's size and the cumulative
    sums including it; a final record with step_size None describes the
    terminal reduced game. Layer fields are None when the run could not
    compute layers (general mode).
    """

    step: int
    step_size: int | None
    step_size_sum: int
    neg_side: frozenset[int]
    pos_side: frozenset[int]
    neg_set: frozenset[int]
    zero_set: frozenset[int]
    pos_set: frozenset[int]
    k: int
    signed_sizes_neg: tuple[int, ...] | None
    signed_sizes_pos: tuple[int, ...] | None
    alpha_minus: int | None
    alpha_plus: int | None
    phi: tuple[int, ...]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    first_violation_step: int | None = None
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckResult, ...]
    iterations: int
    bound_energy: ExtInt  # N + E+ + E- + 1
    bound_pseudo: int  # n*N + 1
    bound_combinatorial: float  # sum over observed k of 4 * 2**((n-k)/2)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            status = "pass" if c.passed else "FAIL"
            where = "" if c.first_violation_step is None else f" at step {c.first_violation_step}"
            detail = f": {c.detail}" if c.detail and not c.passed else ""
            out.append(f"[{status}] {c.name}{where}{detail}")
        out.append(
            f"iterations={self.iterations} "
            f"bound_energy={self.bound_energy} bound_pseudo={self.bound_pseudo} "
            f"bound_combinatorial={self.bound_combinatorial:.1f}"
        )
        return out


def _check_sets_shrink(trace: Sequence[IterationRecord]) -> CheckResult:
    for prev, cur in zip(trace, trace[1:]):
        if not cur.neg_set <= prev.neg_set:
            return CheckResult(
                "extremal_sets_shrink",
                False,
                cur.step,
                f"negative set gained {sorted(cur.neg_set - prev.neg_set)}",
            )
        if not cur.pos_set <= prev.pos_set:
            return CheckResult(
                "extremal_sets_shrink",
                False,
                cur.step,
                f"positive set gained {sorted(cur.pos_set - prev.pos_set)}",
            )
    return CheckResult("extremal_sets_shrink", True)


def _check_k_monotone(trace: Sequence[IterationRecord]) -> CheckResult:
    for prev, cur in zip(trace, trace[1:]):
        if cur.k > prev.k:
            return CheckResult(
                "k_monotone", False, cur.step, f"k rose from {prev.k} to {cur.k}"
            )
    return CheckResult("k_monotone", True)


def _check_potential_support(trace: Sequence[IterationRecord]) -> CheckResult:
    for rec in trace:
        for v in rec.neg_set:
            if rec.phi[v] != 0:
                return CheckResult(
                    "cumulative_potential_support",
                    False,
                    rec.step,
                    f"phi[{v}]={rec.phi[v]} on a negative-extremal vertex",
                )
        for v in rec.pos_set:
            if rec.phi[v] != rec.step_size_sum:
                return CheckResult(
                    "cumulative_potential_support",
                    False,
                    rec.step,
                    f"phi[{v}]={rec.phi[v]} != running sum {rec.step_size_sum}",
                )
    return CheckResult("cumulative_potential_support", True)


def _stable_pairs(trace: Sequence[IterationRecord]):
    for prev, cur in zip(trace, trace[1:]):
        if prev.neg_set == cur.neg_set and prev.pos_set == cur.pos_set:
            yield prev, cur


def _check_lex_growth(trace: Sequence[IterationRecord]) -> CheckResult:
    for prev, cur in _stable_pairs(trace):
        if prev.signed_sizes_neg is None or cur.signed_sizes_neg is None:
            continue
        if lex_compare(prev.signed_sizes_neg, cur.signed_sizes_neg) is not Ordering.LT:
            return CheckResult(
                "layer_lex_growth",
                False,
                cur.step,
                f"negative side {prev.signed_sizes_neg} !< {cur.signed_sizes_neg}",
            )
        if lex_compare(prev.signed_sizes_pos, cur.signed_sizes_pos) is not Ordering.LT:
            return CheckResult(
                "layer_lex_growth",
                False,
                cur.step,
                f"positive side {prev.signed_sizes_pos} !< {cur.signed_sizes_pos}",
            )
    return CheckResult("layer_lex_growth", True)


def _check_alpha_growth(trace: Sequence[IterationRecord]) -> CheckResult:
    """Claimed margin for layer-code growth between stable steps.

    This transcribes the claimed bound verbatim. Empirically it is
    refuted: whenever a step keeps the extremal sets fixed, some vertex
    crosses sides and can land in the deepest layer, flipping bits at or
    below the old separator block, so the code grows by less than the
    claimed power of two (see alpha_monotone for what does hold). The
    check is retained so the violation is reported, not hidden.
    """
    for prev, cur in _stable_pairs(trace):
        if prev.alpha_minus is None or cur.alpha_minus is None:
            continue
        gap_minus = 1 << (len(prev.pos_side) - len(prev.pos_set))
        if not cur.alpha_minus > prev.alpha_minus + gap_minus:
            return CheckResult(
                "alpha_growth",
                False,
                cur.step,
                f"alpha- {cur.alpha_minus} <= {prev.alpha_minus} + {gap_minus}",
            )
        gap_plus = 1 << (len(prev.neg_side) - len(prev.neg_set))
        if not cur.alpha_plus > prev.alpha_plus + gap_plus:
            return CheckResult(
                "alpha_growth",
                False,
                cur.step,
                f"alpha+ {cur.alpha_plus} <= {prev.alpha_plus} + {gap_plus}",
            )
    return CheckResult("alpha_growth", True)


def _check_alpha_monotone(trace: Sequence[IterationRecord]) -> CheckResult:
    """Strict growth of both layer codes between stable steps (no margin)."""
    for prev, cur in _stable_pairs(trace):
        if prev.alpha_minus is None or cur.alpha_minus is None:
            continue
        if not cur.alpha_minus > prev.alpha_minus:
            return CheckResult(
                "alpha_monotone",
                False,
                cur.step,
                f"alpha- {cur.alpha_minus} <= {prev.alpha_minus}",
            )
        if not cur.alpha_plus > prev.alpha_plus:
            return CheckResult(
                "alpha_monotone",
                False,
                cur.step,
                f"alpha+ {cur.alpha_plus} <= {prev.alpha_plus}",
            )
    return CheckResult("alpha_monotone", True)


def _check_step_bounds(
    iterations: int, bound_energy: ExtInt, bound_pseudo: int
) -> CheckResult:
    if is_finite(bound_energy) and iterations > bound_energy:
        return CheckResult(
            "step_count_bounds",
            False,
            None,
            f"{iterations} steps exceed the energy bound {bound_energy}",
        )
    if iterations > bound_pseudo:
        return CheckResult(
            "step_count_bounds",
            False,
            None,
            f"{iterations} steps exceed the weight bound {bound_pseudo}",
        )
    return CheckResult("step_count_bounds", True)


def _check_same_k_budget(trace: Sequence[IterationRecord], n: int) -> CheckResult:
    # Executed steps only; the terminal record does not consume budget.
    steps = [rec for rec in trace if rec.step_size is not None]
    i = 0
    while i < len(steps):
        j = i
        while j < len(steps) and steps[j].k == steps[i].k:
            j += 1
        run = j - i
        k = steps[i].k
        # run <= 4 * 2**((n-k)/2), compared exactly via squares.
        if run * run > 16 * (1 << (n - k)):
            return CheckResult(
                "same_k_budget",
                False,
                steps[i].step,
                f"{run} consecutive steps with k={k} exceed the budget",
            )
        i = j
    return CheckResult("same_k_budget", True)


def verify_trace(
    trace: Sequence[IterationRecord],
    result: "SolveResult",
    oracle_e: tuple[ExtInt, ExtInt],
) -> VerificationReport:
    """Check a traced run against every per-step and global claim.

    oracle_e supplies (E+, E-) recomputed independently (value iteration)
    so the step-count bound does not trust the solver's own outputs.
    Failures become report entries, never exceptions.
    """
    e_plus, e_minus = oracle_e
    n = result.n
    top_weight = result.max_abs_weight
    bound_energy: ExtInt
    if is_finite(e_plus) and is_finite(e_minus):
        bound_energy = step_bound_energy(top_weight, e_plus, e_minus)
    else:
        bound_energy = float("inf")
    bound_pseudo = step_bound_pseudo(n, top_weight)

    seen_k = sorted({rec.k for rec in trace if rec.step_size is not None})
    bound_comb = sum(4.0 * 2 ** ((n - k) / 2) for k in seen_k)

    checks = (
        _check_sets_shrink(trace),
        _check_k_monotone(trace),
        _check_potential_support(trace),
        _check_lex_growth(trace),
        _check_alpha_growth(trace),
        _check_alpha_monotone(trace),
        _check_step_bounds(result.iterations, bound_energy, bound_pseudo),
        _check_same_k_budget(trace, n),
    )
    return VerificationReport(
        checks=checks,
        iterations=result.iterations,
        bound_energy=bound_energy,
        bound_pseudo=bound_pseudo,
        bound_combinatorial=bound_comb,
    )
