"""Deterministic game instance generation for tests, fuzzing and benchmarks.

All randomness flows through splitmix64 with documented derivations, so a
(spec, seed) pair reproduces the same game on any platform or language.
Every generated game is sinkless by construction: each vertex receives one
guaranteed outgoing edge before the remaining edges are sampled.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .core import Edge, GameGraph, Owner, lift_to_simple, validate
from .errors import GenSpecError

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """splitmix64: 64-bit state advanced by the golden-gamma constant.

    next_u64: state += 0x9E3779B97F4A7C15; z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB; return z ^ (z >> 31).
    Bounded draws use plain modulo (bias is negligible for the tiny bounds
    used here and keeps the algorithm trivially portable).
    """

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform-ish integer in [0, bound)."""
        return self.next_u64() % bound

    def randint(self, lo: int, hi: int) -> int:
        """Uniform-ish integer in [lo, hi], inclusive."""
        return lo + self.below(hi - lo + 1)

    def chance(self, probability: float) -> bool:
        return self.next_u64() < int(probability * 2**64)


class Family(Enum):
    RANDOM = "RANDOM"
    CHAIN = "CHAIN"
    BIPARTITE = "BIPARTITE"
    CYCLE_MIX = "CYCLE_MIX"


@dataclass(frozen=True)
class GenSpec:
    n: int
    m: int
    max_abs_weight: int
    seed: int
    family: Family = Family.RANDOM
    owner_ratio: float = 0.5  # probability that a vertex belongs to Min

    def check(self) -> "GenSpec":
        if self.n < 1:
            raise GenSpecError("n must be at least 1")
        if self.m < self.n:
            raise GenSpecError("m must be at least n so every vertex has an edge")
        if self.max_abs_weight < 1:
            raise GenSpecError("max_abs_weight must be at least 1")
        if not 0.0 <= self.owner_ratio <= 1.0:
            raise GenSpecError("owner_ratio must lie in [0, 1]")
        if self.family is Family.BIPARTITE and self.n < 2:
            raise GenSpecError("BIPARTITE needs at least 2 vertices")
        return self


def _owners(spec: GenSpec, rng: SplitMix64) -> tuple[Owner, ...]:
    return tuple(
        Owner.MIN if rng.chance(spec.owner_ratio) else Owner.MAX
        for _ in range(spec.n)
    )


def _weight(spec: GenSpec, rng: SplitMix64) -> int:
    return rng.randint(-spec.max_abs_weight, spec.max_abs_weight)


def _gen_random(spec: GenSpec, rng: SplitMix64) -> GameGraph:
    owners = _owners(spec, rng)
    edges = [
        Edge(v, rng.below(spec.n), _weight(spec, rng)) for v in range(spec.n)
    ]
    for _ in range(spec.m - spec.n):
        edges.append(Edge(rng.below(spec.n), rng.below(spec.n), _weight(spec, rng)))
    return GameGraph(n=spec.n, owners=owners, edges=tuple(edges))


def _gen_chain(spec: GenSpec, rng: SplitMix64) -> GameGraph:
    """Zero-edge chain draining into a negative self-loop at vertex 0.

    Long zero chains maximise alternation-layer churn. Extra edges beyond
    the chain are sampled like the RANDOM family.
    """
    owners = _owners(spec, rng)
    edges = [Edge(0, 0, -rng.randint(1, spec.max_abs_weight))]
    for v in range(1, spec.n):
        edges.append(Edge(v, v - 1, 0))
    for _ in range(spec.m - spec.n):
        edges.append(Edge(rng.below(spec.n), rng.below(spec.n), _weight(spec, rng)))
    return GameGraph(n=spec.n, owners=owners, edges=tuple(edges))


def _gen_bipartite(spec: GenSpec, rng: SplitMix64) -> GameGraph:
    """Min vertices 0..split-1, Max vertices split..n-1, edges cross sides."""
    split = max(1, min(spec.n - 1, round(spec.n * spec.owner_ratio)))
    owners = tuple(
        Owner.MIN if v < split else Owner.MAX for v in range(spec.n)
    )

    def opposite(v: int) -> int:
        if v < split:
            return split + rng.below(spec.n - split)
        return rng.below(split)

    edges = [Edge(v, opposite(v), _weight(spec, rng)) for v in range(spec.n)]
    for _ in range(spec.m - spec.n):
        src = rng.below(spec.n)
        edges.append(Edge(src, opposite(src), _weight(spec, rng)))
    return GameGraph(n=spec.n, owners=owners, edges=tuple(edges))


def _gen_cycle_mix(spec: GenSpec, rng: SplitMix64) -> GameGraph:
    """Disjoint cycles of controlled sign, plus random filler edges.

    Vertices are chunked into cycles of length 1..4. Each cycle carries
    exactly one nonzero edge, alternating sign from cycle to cycle, so its
    total sign is controlled; the other cycle edges are zero.
    """
    owners = _owners(spec, rng)
    edges: list[Edge] = []
    start = 0
    cycle_index = 0
    while start < spec.n:
        length = min(rng.randint(1, 4), spec.n - start)
        magnitude = rng.randint(1, spec.max_abs_weight)
        signed = magnitude if cycle_index % 2 == 0 else -magnitude
        for i in range(length):
            src = start + i
            dst = start + (i + 1) % length
            edges.append(Edge(src, dst, signed if i == 0 else 0))
        start += length
        cycle_index += 1
    for _ in range(spec.m - spec.n):
        edges.append(Edge(rng.below(spec.n), rng.below(spec.n), _weight(spec, rng)))
    return GameGraph(n=spec.n, owners=owners, edges=tuple(edges))


_BUILDERS = {
    Family.RANDOM: _gen_random,
    Family.CHAIN: _gen_chain,
    Family.BIPARTITE: _gen_bipartite,
    Family.CYCLE_MIX: _gen_cycle_mix,
}


def generate(spec: GenSpec) -> GameGraph:
    """Deterministically generate a game from a spec; always validates."""
    spec.check()
    rng = SplitMix64(spec.seed)
    return validate(_BUILDERS[spec.family](spec, rng))


def generate_simple(spec: GenSpec) -> GameGraph:
    """Generate then lift, so the result has no zero-sum simple cycle.

    Output weights are bounded by (n+1) * max_abs_weight + 1.
    """
    return lift_to_simple(generate(spec))
