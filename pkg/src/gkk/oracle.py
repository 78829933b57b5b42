"""Independent ground-truth engines for small and medium games.

Nothing in this module shares code with the potential-reduction solver:
the brute-force engine enumerates positional strategies directly from the
definitions, the value-iteration baselines compute energy values as Kleene
fixpoints, and the partition oracle evaluates the defining condition of
the negative/positive split as a naive logical fixpoint. These engines are
the reference that the solver is tested against.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import (
    INF,
    NEG_INF,
    ExtInt,
    GameGraph,
    Owner,
    Sign,
    is_finite,
)
from .errors import TooLargeError, ZeroMeanPayoffError

DEFAULT_N_LIMIT = 6
MAX_STRATEGY_PAIRS = 10**7


@dataclass(frozen=True)
class Lasso:
    """Eventually-periodic play induced by one positional strategy pair."""

    stem: tuple[int, ...]  # vertices before the cycle is entered
    cycle: tuple[int, ...]  # vertices of the repeated cycle, nonempty


@dataclass(frozen=True)
class OracleResult:
    en_plus: tuple[ExtInt, ...]
    en_minus: tuple[ExtInt, ...]
    mp: tuple[Fraction, ...]
    mp_sign: tuple[Sign, ...] | None  # None when a vertex has mp == 0
    # First lexicographic Min strategy optimal for en_plus at every vertex,
    # as a map vertex -> edge index.
    sigma_en_plus: dict[int, int]


def _successor_map(
    g: GameGraph, sigma: dict[int, int], tau: dict[int, int]
) -> list[int]:
    succ = [0] * g.n
    for v in range(g.n):
        eid = sigma[v] if g.is_min(v) else tau[v]
        succ[v] = eid
    return succ


def induced_lasso(g: GameGraph, succ_edge: Sequence[int], start: int) -> Lasso:
    """Follow the strategy-pair successor function until a vertex repeats."""
    seen: dict[int, int] = {}
    order: list[int] = []
    v = start
    while v not in seen:
        seen[v] = len(order)
        order.append(v)
        v = g.edges[succ_edge[v]].dst
    k = seen[v]
    return Lasso(stem=tuple(order[:k]), cycle=tuple(order[k:]))


def _evaluate_lasso(
    g: GameGraph, succ_edge: Sequence[int], lasso: Lasso
) -> tuple[ExtInt, ExtInt, Fraction]:
    """(en_plus, en_minus, mean payoff) of the unique play along a lasso."""
    path = list(lasso.stem) + list(lasso.cycle)
    weights = [g.edges[succ_edge[v]].weight for v in path]
    cycle_weights = weights[len(lasso.stem) :]
    cycle_sum = sum(cycle_weights)
    mp = Fraction(cycle_sum, len(lasso.cycle))

    prefix = 0
    hi, lo = 0, 0  # prefix-sum extremes, k = 0 included
    for w in weights:
        prefix += w
        hi = max(hi, prefix)
        lo = min(lo, prefix)
    en_plus: ExtInt = INF if cycle_sum > 0 else hi
    en_minus: ExtInt = NEG_INF if cycle_sum < 0 else lo
    return en_plus, en_minus, mp


def _strategy_space(g: GameGraph, owner: Owner) -> list[tuple[int, tuple[int, ...]]]:
    return [(v, g.out_edges[v]) for v in range(g.n) if g.owners[v] is owner]


def oracle_values(
    g: GameGraph,
    n_limit: int = DEFAULT_N_LIMIT,
    *,
    require_nonzero_mp: bool = True,
) -> OracleResult:
    """Exact values by exhausting positional strategy pairs.

    For each start vertex the value is the min over Min strategies of the
    max over Max strategies of the lasso valuation. With
    require_nonzero_mp, a vertex of mean payoff exactly 0 raises
    ZeroMeanPayoffError since the caller claimed no zero-sum simple cycle.
    """
    if g.n > n_limit:
        raise TooLargeError(f"n={g.n} exceeds the oracle limit {n_limit}")
    min_space = _strategy_space(g, Owner.MIN)
    max_space = _strategy_space(g, Owner.MAX)
    pairs = 1
    for _, opts in min_space + max_space:
        pairs *= len(opts)
    if pairs > MAX_STRATEGY_PAIRS:
        raise TooLargeError(f"{pairs} strategy pairs exceed the oracle budget")

    n = g.n
    best_plus: list[ExtInt] = [INF] * n
    best_minus: list[ExtInt] = [INF] * n  # min over sigma still to come
    best_mp: list[Fraction | None] = [None] * n
    sigma_plus_ceiling: list[list[ExtInt]] = []  # per sigma: max-over-tau en_plus
    sigmas: list[dict[int, int]] = []

    for min_choice in itertools.product(*(opts for _, opts in min_space)):
        sigma = {v: eid for (v, _), eid in zip(min_space, min_choice)}
        worst_plus: list[ExtInt] = [NEG_INF] * n
        worst_minus: list[ExtInt] = [NEG_INF] * n
        worst_mp: list[Fraction | None] = [None] * n
        for max_choice in itertools.product(*(opts for _, opts in max_space)):
            tau = {v: eid for (v, _), eid in zip(max_space, max_choice)}
            succ = _successor_map(g, sigma, tau)
            for start in range(n):
                lasso = induced_lasso(g, succ, start)
                ep, em, mp = _evaluate_lasso(g, succ, lasso)
                if ep > worst_plus[start]:
                    worst_plus[start] = ep
                if em > worst_minus[start]:
                    worst_minus[start] = em
                if worst_mp[start] is None or mp > worst_mp[start]:
                    worst_mp[start] = mp
        sigmas.append(sigma)
        sigma_plus_ceiling.append(list(worst_plus))
        for v in range(n):
            if worst_plus[v] < best_plus[v]:
                best_plus[v] = worst_plus[v]
            if worst_minus[v] < best_minus[v]:
                best_minus[v] = worst_minus[v]
            if best_mp[v] is None or worst_mp[v] < best_mp[v]:
                best_mp[v] = worst_mp[v]

    sigma_opt = next(
        sigma
        for sigma, ceiling in zip(sigmas, sigma_plus_ceiling)
        if all(ceiling[v] == best_plus[v] for v in range(n))
    )

    mp_tuple = tuple(best_mp)  # type: ignore[arg-type]
    signs: tuple[Sign, ...] | None
    if any(x == 0 for x in mp_tuple):
        if require_nonzero_mp:
            raise ZeroMeanPayoffError(next(v for v in range(n) if mp_tuple[v] == 0))
        signs = None
    else:
        signs = tuple(Sign.NEG if x < 0 else Sign.POS for x in mp_tuple)
    return OracleResult(
        en_plus=tuple(best_plus),
        en_minus=tuple(best_minus),
        mp=mp_tuple,
        mp_sign=signs,
        sigma_en_plus=sigma_opt,
    )


@dataclass(frozen=True)
class ValueIterationResult:
    values: tuple[ExtInt, ...]
    lifts: int  # number of value-raising (or -lowering) updates performed


def value_iteration_en_plus(g: GameGraph) -> ValueIterationResult:
    """Least fixpoint of v -> max(0, opt(w + value(dst))), from all zeros.

    opt is min on MIN vertices and max on MAX vertices. Finite energy
    values never exceed (n-1)*N, so any value pushed past that cap is
    infinite. Worklist discipline: when a vertex rises, its predecessors
    are re-examined.
    """
    n = g.n
    cap = (n - 1) * g.max_abs_weight
    values: list[ExtInt] = [0] * n
    pending = deque(range(n))
    queued = [True] * n
    lifts = 0

    def bellman(v: int) -> ExtInt:
        best: ExtInt | None = None
        for eid in g.out_edges[v]:
            e = g.edges[eid]
            x = INF if values[e.dst] is INF else e.weight + values[e.dst]
            if best is None:
                best = x
            elif g.is_min(v):
                best = x if x < best else best
            else:
                best = x if x > best else best
        assert best is not None
        return best if best > 0 else 0

    while pending:
        v = pending.popleft()
        queued[v] = False
        new = bellman(v)
        if new > values[v]:
            values[v] = INF if (new is INF or new > cap) else new
            lifts += 1
            for eid in g.in_edges[v]:
                u = g.edges[eid].src
                if not queued[u]:
                    queued[u] = True
                    pending.append(u)
    return ValueIterationResult(values=tuple(values), lifts=lifts)


def value_iteration_en_minus(g: GameGraph) -> ValueIterationResult:
    """Greatest fixpoint of v -> min(0, opt(w + value(dst))), from zeros.

    Dual of value_iteration_en_plus: values descend, and anything below
    -(n-1)*N is -infinity.
    """
    n = g.n
    cap = (n - 1) * g.max_abs_weight
    values: list[ExtInt] = [0] * n
    pending = deque(range(n))
    queued = [True] * n
    lifts = 0

    def bellman(v: int) -> ExtInt:
        best: ExtInt | None = None
        for eid in g.out_edges[v]:
            e = g.edges[eid]
            x = NEG_INF if values[e.dst] is NEG_INF else e.weight + values[e.dst]
            if best is None:
                best = x
            elif g.is_min(v):
                best = x if x < best else best
            else:
                best = x if x > best else best
        assert best is not None
        return best if best < 0 else 0

    while pending:
        v = pending.popleft()
        queued[v] = False
        new = bellman(v)
        if new < values[v]:
            values[v] = NEG_INF if (new is NEG_INF or new < -cap) else new
            lifts += 1
            for eid in g.in_edges[v]:
                u = g.edges[eid].src
                if not queued[u]:
                    queued[u] = True
                    pending.append(u)
    return ValueIterationResult(values=tuple(values), lifts=lifts)


def oracle_partition(g: GameGraph) -> tuple[frozenset[int], frozenset[int]]:
    """Naive fixpoint for the side split, independent of the attractor code.

    A vertex is on the negative side when Min can force the first nonzero
    weight seen to be negative: Min vertices join if some edge is negative
    or zero into the current set; Max vertices join if every edge is
    negative or zero into the current set. Intended for games without
    zero-sum simple cycles, where zero paths cannot cycle.
    """
    current: set[int] = set()
    for _ in range(g.n + 1):
        added = False
        for v in range(g.n):
            if v in current:
                continue
            joins: bool
            conds = [
                e.weight < 0 or (e.weight == 0 and e.dst in current)
                for e in (g.edges[i] for i in g.out_edges[v])
            ]
            joins = any(conds) if g.is_min(v) else all(conds)
            if joins:
                current.add(v)
                added = True
        if not added:
            break
    neg = frozenset(current)
    return neg, frozenset(range(g.n)) - neg


def check_simple(g: GameGraph, n_limit: int = 8) -> bool:
    """True iff no simple cycle has weight sum zero, by full enumeration.

    Cycles are enumerated at the edge level, so parallel edges yield
    distinct cycles. Exponential; guarded by n_limit.
    """
    if g.n > n_limit:
        raise TooLargeError(f"n={g.n} exceeds the simplicity-check limit {n_limit}")
    # Enumerate simple cycles whose smallest vertex is the DFS root.
    for root in range(g.n):
        on_path = [False] * g.n
        found_zero = _zero_cycle_dfs(g, root, root, 0, on_path)
        if found_zero:
            return False
    return True


def _zero_cycle_dfs(
    g: GameGraph, root: int, v: int, total: int, on_path: list[bool]
) -> bool:
    on_path[v] = True
    try:
        for eid in g.out_edges[v]:
            e = g.edges[eid]
            if e.dst == root:
                if total + e.weight == 0:
                    return True
            elif e.dst > root and not on_path[e.dst]:
                if _zero_cycle_dfs(g, root, e.dst, total + e.weight, on_path):
                    return True
        return False
    finally:
        on_path[v] = False


def check_optimal_prefix_bound(
    g: GameGraph, n_limit: int = DEFAULT_N_LIMIT
) -> bool:
    """Consistency of energy-optimal play with per-vertex energy drops.

    Take the oracle's en_plus-optimal Min strategy. Every finite path
    consistent with it that ends in a vertex of finite energy value must
    satisfy sum(path) <= en_plus(start) - en_plus(end); otherwise the
    strategy could be beaten from the start vertex. Paths are enumerated
    up to length 2n.
    """
    res = oracle_values(g, n_limit, require_nonzero_mp=False)
    sigma = res.sigma_en_plus
    en = res.en_plus
    limit = 2 * g.n

    def consistent_edges(v: int) -> list[int]:
        if g.is_min(v):
            return [sigma[v]]
        return list(g.out_edges[v])

    for start in range(g.n):
        if not is_finite(en[start]):
            continue
        # DFS over (vertex, running sum, depth); the empty path included.
        stack: list[tuple[int, int, int]] = [(start, 0, 0)]
        while stack:
            v, total, depth = stack.pop()
            if is_finite(en[v]) and total > en[start] - en[v]:
                return False
            if depth == limit:
                continue
            for eid in consistent_edges(v):
                e = g.edges[eid]
                stack.append((e.dst, total + e.weight, depth + 1))
    return True
