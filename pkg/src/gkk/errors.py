"""Exception types shared by the solver, baselines, generators and IO layers."""

from __future__ import annotations


class GameError(Exception):
    """Base class for every error raised by this library."""


class SinkVertexError(GameError):
    """A vertex has no outgoing edge; games must be sinkless."""

    def __init__(self, vertex: int):
        super().__init__(f"vertex {vertex} has no outgoing edge")
        self.vertex = vertex


class BadEdgeEndpointError(GameError):
    """An edge endpoint is outside the vertex range 0..n-1."""


class WeightOverflowError(GameError):
    """A weight or derived integer left the checked 64-bit envelope."""


class SolverInternalError(GameError):
    """An internal consistency assertion failed; indicates a bug."""


class IterationCapError(GameError):
    """The solve loop exceeded its iteration cap.

    On inputs without zero-sum simple cycles this signals a bug; otherwise
    the input violated the caller's simplicity claim.
    """


class TooLargeError(GameError):
    """The instance exceeds the size limits of a brute-force engine."""


class ZeroMeanPayoffError(GameError):
    """A vertex has mean-payoff value exactly zero, contradicting the
    caller's claim that the game has no zero-sum simple cycle."""

    def __init__(self, vertex: int):
        super().__init__(f"vertex {vertex} has mean-payoff value 0")
        self.vertex = vertex


class GenSpecError(GameError):
    """An instance-generator spec is inconsistent."""


class GameParseError(GameError):
    """A game file could not be parsed."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason
