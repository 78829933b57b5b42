"""Shared fixtures and small-game enumeration helpers."""

from __future__ import annotations

import itertools
from typing import Iterator

import pytest

from gkk import Edge, GameGraph, Owner, make_game


@pytest.fixture
def example_a() -> GameGraph:
    """Canonical 2-vertex instance: Min 0 -> 1 weight -1, Max 1 -> 0 weight 2."""
    return make_game(["MIN", "MAX"], [(0, 1, -1), (1, 0, 2)])


@pytest.fixture
def zero_chain() -> GameGraph:
    """Min self-loop -1 at 0; Min zero edge 1 -> 0; Max zero edge 2 -> 1."""
    return make_game(["MIN", "MIN", "MAX"], [(0, 0, -1), (1, 0, 0), (2, 1, 0)])


def single_vertex(owner: str, weight: int) -> GameGraph:
    return make_game([owner], [(0, 0, weight)])


def enumerate_games(
    n: int, weights: tuple[int, ...], max_out_degree: int = 2
) -> Iterator[GameGraph]:
    """Every game on n vertices with out-degree <= max_out_degree.

    Per-vertex options are all nonempty multisets of (dst, weight) pairs up
    to the degree bound; owners range over all assignments. Deterministic
    order.
    """
    single = [
        ((dst, w),) for dst in range(n) for w in weights
    ]
    multi = list(single)
    if max_out_degree >= 2:
        multi += [
            (a, b)
            for i, a in enumerate([p[0] for p in single])
            for b in [p[0] for p in single][i:]
        ]
    for owner_bits in itertools.product((Owner.MIN, Owner.MAX), repeat=n):
        for combo in itertools.product(multi, repeat=n):
            edges = tuple(
                Edge(src, dst, w)
                for src, bundle in enumerate(combo)
                for dst, w in bundle
            )
            yield GameGraph(n=n, owners=owner_bits, edges=edges)
