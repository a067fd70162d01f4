"""Adversarial channel graphs over small integer alphabets.

A channel is a directed graph on symbols: an edge (i, j) with i != j means a
sent symbol i may be delivered as j at the cost of one adversary error.
Every symbol always has the free self-loop (i, i), so doing nothing is
always admissible.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

# Sentinel symbol for the hub node of the star channel.  It is a valid
# symbol everywhere a plain int is accepted, including JSON output.
STAR = -1


@dataclass(frozen=True)
class ChannelGraph:
    """Immutable channel graph.

    q is the size of the base alphabet {0, .., q-1}; symbols may extend it
    (the star channel adds the STAR hub).  edges holds ordered pairs
    (sent, received).
    """

    name: str
    q: int
    symbols: tuple[int, ...]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.q < 2:
            raise ValueError(f"alphabet size must be at least 2, got {self.q}")
        sym = set(self.symbols)
        if len(sym) != len(self.symbols):
            raise ValueError("duplicate symbols")
        for i, j in self.edges:
            if i not in sym or j not in sym:
                raise ValueError(f"edge ({i}, {j}) leaves the symbol set")
        for s in self.symbols:
            if (s, s) not in self.edges:
                raise ValueError(f"symbol {s} is missing its self-loop")

    def outputs(self, sent: int) -> tuple[int, ...]:
        """All symbols the adversary can deliver for a given sent symbol."""
        if sent not in self.symbols:
            raise ValueError(f"{sent} is not a channel symbol")
        return tuple(sorted(j for i, j in self.edges if i == sent))

    def corruptions(self, sent: int) -> tuple[int, ...]:
        """Outputs that differ from the sent symbol (each costs one error)."""
        return tuple(j for j in self.outputs(sent) if j != sent)

    def admissible_outputs(self, sent: int, budget_left: int) -> tuple[int, ...]:
        if budget_left > 0:
            return self.outputs(sent)
        return (sent,)

    def can_corrupt(self, sent: int, received: int) -> bool:
        return sent != received and (sent, received) in self.edges

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "edges": sorted([i, j] for i, j in self.edges),
        }

    @staticmethod
    def from_json_dict(data: dict, name: str = "channel") -> "ChannelGraph":
        q = int(data["q"])
        edges = frozenset((int(i), int(j)) for i, j in data["edges"])
        symbols = sorted({s for e in edges for s in e} | set(range(q)))
        return ChannelGraph(name=name, q=q, symbols=tuple(symbols), edges=edges)


def _with_self_loops(symbols: Iterable[int], extra: Iterable[tuple[int, int]]) -> frozenset:
    loops = {(s, s) for s in symbols}
    return frozenset(loops | set(extra))


def make_z_channel(q: int) -> ChannelGraph:
    """Channel where each positive symbol may decay by one: i -> i - 1."""
    symbols = tuple(range(q))
    extra = [(i, i - 1) for i in range(1, q)]
    return ChannelGraph("z", q, symbols, _with_self_loops(symbols, extra))


def make_inverse_z_channel(q: int) -> ChannelGraph:
    """Mirror of the Z channel: each symbol below q-1 may grow by one."""
    symbols = tuple(range(q))
    extra = [(i, i + 1) for i in range(q - 1)]
    return ChannelGraph("inverse_z", q, symbols, _with_self_loops(symbols, extra))


def make_symmetric_channel(q: int) -> ChannelGraph:
    """Complete channel: any symbol can become any other."""
    symbols = tuple(range(q))
    extra = [(i, j) for i in symbols for j in symbols if i != j]
    return ChannelGraph("symmetric", q, symbols, _with_self_loops(symbols, extra))


def make_star_channel(q: int) -> ChannelGraph:
    """Cycle-like channel on q ordinary symbols plus a hub.

    Ordinary symbol i may become i + 1 (for i <= q - 2), the hub may become
    q - 1, and symbol 0 may become the hub, closing the cycle.
    """
    symbols = (STAR,) + tuple(range(q))
    extra = [(i, i + 1) for i in range(q - 1)]
    extra += [(STAR, q - 1), (0, STAR)]
    return ChannelGraph("star", q, symbols, _with_self_loops(symbols, extra))


class DirectionState(enum.Enum):
    """Which way a unidirectional adversary has committed."""

    UNDECIDED = "undecided"
    POSITIVE = "positive"
    NEGATIVE = "negative"


@dataclass(frozen=True)
class UnidirectionalChannel:
    """Adversary that may only ever push symbols one way within a block.

    The direction is not fixed in advance: it becomes committed at the first
    nonzero error.  positive errors follow the inverse Z channel (i -> i + 1),
    negative errors the Z channel (i -> i - 1).
    """

    q: int
    positive_channel: ChannelGraph
    negative_channel: ChannelGraph

    def outputs_for(self, sent: int, direction: DirectionState) -> tuple[int, ...]:
        if direction is DirectionState.POSITIVE:
            return self.positive_channel.outputs(sent)
        if direction is DirectionState.NEGATIVE:
            return self.negative_channel.outputs(sent)
        merged = set(self.positive_channel.outputs(sent))
        merged |= set(self.negative_channel.outputs(sent))
        return tuple(sorted(merged))

    def direction_after(self, direction: DirectionState, sent: int, received: int) -> DirectionState:
        """Direction state once (sent, received) has happened.

        Raises ValueError if the step is inconsistent with the committed
        direction or is not a single-step move.
        """
        delta = received - sent
        if delta == 0:
            return direction
        if delta == 1:
            if direction is DirectionState.NEGATIVE:
                raise ValueError("positive error after negative commitment")
            return DirectionState.POSITIVE
        if delta == -1:
            if direction is DirectionState.POSITIVE:
                raise ValueError("negative error after positive commitment")
            return DirectionState.NEGATIVE
        raise ValueError(f"step from {sent} to {received} is not admissible")

    def accepts_error_vector(self, errors: Sequence[int]) -> bool:
        """True if the componentwise error vector fits one direction."""
        if any(e not in (-1, 0, 1) for e in errors):
            return False
        has_pos = any(e > 0 for e in errors)
        has_neg = any(e < 0 for e in errors)
        return not (has_pos and has_neg)


def make_unidirectional_pair(q: int) -> UnidirectionalChannel:
    return UnidirectionalChannel(
        q=q,
        positive_channel=make_inverse_z_channel(q),
        negative_channel=make_z_channel(q),
    )
