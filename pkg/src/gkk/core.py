"""Weighted game graphs, potentials, and the zero-cycle-removing lift.

Vertices are dense integers 0..n-1, each owned by MIN or MAX. Edges are
(src, dst, weight) triples; parallel edges and self-loops are allowed and
every vertex must keep at least one outgoing edge. All arithmetic is exact
integer arithmetic: input weights are capped at 2**40 so that lifted
weights and cumulative potentials stay inside a signed 64-bit envelope,
and any excursion beyond that envelope raises WeightOverflowError rather
than wrapping.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Sequence

from .errors import BadEdgeEndpointError, SinkVertexError, WeightOverflowError

INF = float("inf")
NEG_INF = float("-inf")

# Extended integer: a plain int, or one of the two float infinities.
# Finite values are always ints; floats never carry finite values.
ExtInt = int | float

WEIGHT_CAP = 2**40  # magnitude cap for input weights
INT64_MAX = 2**63 - 1  # envelope for derived weights and potentials


class Owner(Enum):
    MIN = "MIN"
    MAX = "MAX"


class Sign(Enum):
    NEG = "neg"
    POS = "pos"


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    weight: int


@dataclass(frozen=True)
class GameGraph:
    """Immutable sinkless weighted game graph.

    Adjacency indices are derived lazily and cached; instances are safe to
    share between threads once constructed.
    """

    n: int
    owners: tuple[Owner, ...]
    edges: tuple[Edge, ...]

    @cached_property
    def max_abs_weight(self) -> int:
        return max((abs(e.weight) for e in self.edges), default=0)

    @cached_property
    def out_edges(self) -> tuple[tuple[int, ...], ...]:
        """Edge indices grouped by source vertex, in input order."""
        out: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            out[e.src].append(i)
        return tuple(tuple(ids) for ids in out)

    @cached_property
    def in_edges(self) -> tuple[tuple[int, ...], ...]:
        """Edge indices grouped by destination vertex, in input order."""
        rev: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            rev[e.dst].append(i)
        return tuple(tuple(ids) for ids in rev)

    @property
    def m(self) -> int:
        return len(self.edges)

    def is_min(self, v: int) -> bool:
        return self.owners[v] is Owner.MIN


def make_game(
    owners: Sequence[Owner | str],
    edges: Iterable[tuple[int, int, int]],
) -> GameGraph:
    """Convenience constructor from owner tags and (src, dst, weight) triples."""
    tags = tuple(Owner(o) if isinstance(o, str) else o for o in owners)
    return GameGraph(
        n=len(tags),
        owners=tags,
        edges=tuple(Edge(s, d, w) for s, d, w in edges),
    )


def validate(g: GameGraph) -> GameGraph:
    """Check structural invariants of an input game.

    Raises BadEdgeEndpointError, SinkVertexError or WeightOverflowError.
    Returns the game unchanged so calls can be chained.
    """
    if g.n < 1:
        raise BadEdgeEndpointError("a game needs at least one vertex")
    if len(g.owners) != g.n:
        raise BadEdgeEndpointError(
            f"owner vector has length {len(g.owners)}, expected {g.n}"
        )
    has_out = [False] * g.n
    for e in g.edges:
        if not (0 <= e.src < g.n and 0 <= e.dst < g.n):
            raise BadEdgeEndpointError(f"edge {e} endpoint out of range 0..{g.n - 1}")
        if abs(e.weight) > WEIGHT_CAP:
            raise WeightOverflowError(
                f"edge {e} weight exceeds the input cap 2**40"
            )
        has_out[e.src] = True
    for v in range(g.n):
        if not has_out[v]:
            raise SinkVertexError(v)
    return g


def _checked(x: int) -> int:
    if abs(x) > INT64_MAX:
        raise WeightOverflowError(f"derived value {x} left the 64-bit envelope")
    return x


def modified_weight(g: GameGraph, phi: Sequence[int], e: Edge) -> int:
    """Weight of edge e after reweighting by potential phi.

    Each edge weight w becomes w + phi[dst] - phi[src]; cycle sums are
    unchanged because the potential telescopes along any cycle.
    """
    if len(phi) != g.n:
        raise ValueError(f"potential has length {len(phi)}, expected {g.n}")
    return _checked(e.weight + phi[e.dst] - phi[e.src])


def apply_potential(g: GameGraph, phi: Sequence[int]) -> GameGraph:
    """Return the game with every edge reweighted by potential phi.

    Composition law: applying phi then psi equals applying phi + psi.
    """
    if len(phi) != g.n:
        raise ValueError(f"potential has length {len(phi)}, expected {g.n}")
    new_edges = tuple(
        Edge(e.src, e.dst, _checked(e.weight + phi[e.dst] - phi[e.src]))
        for e in g.edges
    )
    return GameGraph(n=g.n, owners=g.owners, edges=new_edges)


def lift_to_simple(g: GameGraph) -> GameGraph:
    """Rescale weights so no simple cycle can sum to zero.

    Every weight w becomes (n+1)*w - 1. A simple cycle of length L and
    original sum S then sums to (n+1)*S - L, which is zero only if
    (n+1)*S = L; impossible since L is in 1..n. Vertices whose optimal
    long-run average is positive are exactly preserved: positive averages
    are at least 1/n, so scaling by n+1 dominates the -1 shift.
    """
    factor = g.n + 1
    new_edges = tuple(
        Edge(e.src, e.dst, _checked(factor * e.weight - 1)) for e in g.edges
    )
    return GameGraph(n=g.n, owners=g.owners, edges=new_edges)


def extremal_weight(g: GameGraph, v: int) -> int:
    """Best one-step weight from v for its owner: min for MIN, max for MAX."""
    weights = [g.edges[i].weight for i in g.out_edges[v]]
    return min(weights) if g.is_min(v) else max(weights)


def sign_sets(g: GameGraph) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
    """Partition vertices by the sign of their extremal weight.

    Returns (negative, zero, positive) vertex sets.
    """
    neg, zero, pos = set(), set(), set()
    for v in range(g.n):
        w = extremal_weight(g, v)
        (neg if w < 0 else pos if w > 0 else zero).add(v)
    return frozenset(neg), frozenset(zero), frozenset(pos)


def zero_potential(n: int) -> tuple[int, ...]:
    return (0,) * n


def shift_to_nonpositive(phi: Sequence[int]) -> tuple[int, ...]:
    """Shifted form of a potential: subtract its maximum entry.

    The result is everywhere <= 0 with at least one zero; it reweights the
    game identically to phi because constant shifts cancel.
    """
    top = max(phi)
    return tuple(p - top for p in phi)


def add_potentials(phi: Sequence[int], psi: Sequence[int]) -> tuple[int, ...]:
    return tuple(_checked(a + b) for a, b in zip(phi, psi, strict=True))


def is_finite(x: ExtInt) -> bool:
    return isinstance(x, int)
