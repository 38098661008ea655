"""Per-connection pheromone values and their update rules.

Each directed connection carries a scalar value built from two kinds of
confirmation events: a detected-attack confirmation adds a fixed boost, a
clean confirmation multiplies the whole value by a decay factor.  The value
is algebraically the sum, over past bad events, of boost * decay^(number of
clean events seen since that bad event).  The live representation is the
O(1) running value; the literal sum is kept only in history mode, where it
doubles as an independent cross-check.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from enum import Enum


class NotAConnection(Exception):
    """Queried node pair is not a connection of the topology."""


class PheromoneEvent(Enum):
    GOOD = "good"
    BAD = "bad"


@dataclass(frozen=True)
class PheromoneParams:
    """Update parameters: boost per bad event, decay per good event, and the
    level above which agents treat a connection as part of a track."""

    increase: float = 20.0
    decay: float = 0.95
    threshold: float = 10.0

    def __post_init__(self):
        if self.increase <= 0:
            raise ValueError(f"increase must be > 0, got {self.increase}")
        if not 0 < self.decay < 1:
            raise ValueError(f"decay must be in (0, 1), got {self.decay}")
        if self.threshold <= 0:
            raise ValueError(f"threshold must be > 0, got {self.threshold}")


@dataclass
class PheromoneState:
    """Running pheromone value for one direction of a connection.

    With ``track_history`` the state also records, per bad event, how many
    good events arrived while it was the latest bad; the exposed
    ``goods_since`` list feeds the closed-form cross-check.
    """

    value: float = 0.0
    bad_count: int = 0
    track_history: bool = False
    # good count at the time of each bad event, plus the running good total;
    # goods_since is reconstructed from these in O(b) instead of being
    # incremented element-wise on every good event
    _good_marks: list[int] = field(default_factory=list, repr=False)
    _good_total: int = field(default=0, repr=False)

    def apply_good(self, params: PheromoneParams) -> None:
        """A clean confirmation traversed this direction: decay the value."""
        self.value *= params.decay
        if self.track_history:
            self._good_total += 1

    def apply_bad(self, params: PheromoneParams) -> None:
        """A detected-attack confirmation traversed this direction."""
        self.value += params.increase
        self.bad_count += 1
        if self.track_history:
            self._good_marks.append(self._good_total)

    @property
    def goods_since(self) -> list[int]:
        """Good events seen after each bad event (history mode only)."""
        if not self.track_history:
            raise ValueError("state was not built with track_history=True")
        return [self._good_total - mark for mark in self._good_marks]

    def live_bytes(self) -> bytes:
        """Serialized live state: the running value alone."""
        return struct.pack("<d", self.value)


def closed_form_value(events, params: PheromoneParams) -> float:
    """Evaluate the pheromone sum literally from an ordered event list.

    For every bad event, count the good events that follow it and sum
    increase * decay^count.  Serves as the independent oracle for the
    incremental updates.
    """
    good_total = 0
    goods_at_bad = []
    for ev in events:
        if ev is PheromoneEvent.GOOD:
            good_total += 1
        elif ev is PheromoneEvent.BAD:
            goods_at_bad.append(good_total)
        else:
            raise TypeError(f"not a PheromoneEvent: {ev!r}")
    return sum(params.increase * params.decay ** (good_total - g) for g in goods_at_bad)


class PheromoneField:
    """Directed pheromone states for every connection of a topology.

    Both directions of a connection are independent.  Directions that were
    never touched read as zero without materializing state, so read paths
    cannot perturb the field.
    """

    def __init__(self, topology, track_history: bool = False):
        self._topology = topology
        self._track_history = track_history
        self._states: dict[tuple[int, int], PheromoneState] = {}

    def _check_connection(self, from_node: int, to_node: int) -> None:
        if not self._topology.has_edge(from_node, to_node):
            raise NotAConnection(f"({from_node}, {to_node}) is not a connection")

    def state(self, from_node: int, to_node: int) -> PheromoneState:
        """State for a direction, created on first use."""
        self._check_connection(from_node, to_node)
        key = (from_node, to_node)
        st = self._states.get(key)
        if st is None:
            st = PheromoneState(track_history=self._track_history)
            self._states[key] = st
        return st

    def apply_good(self, from_node: int, to_node: int, params: PheromoneParams) -> float:
        st = self.state(from_node, to_node)
        st.apply_good(params)
        return st.value

    def apply_bad(self, from_node: int, to_node: int, params: PheromoneParams) -> float:
        st = self.state(from_node, to_node)
        st.apply_bad(params)
        return st.value

    def read_level(self, from_node: int, to_node: int) -> float:
        """Current value for a direction; 0.0 if never touched."""
        self._check_connection(from_node, to_node)
        st = self._states.get((from_node, to_node))
        return st.value if st is not None else 0.0

    def above_threshold(self, from_node: int, to_node: int, params: PheromoneParams) -> bool:
        """Strictly greater than the threshold; the boundary is not a track."""
        return self.read_level(from_node, to_node) > params.threshold

    def items(self):
        """Touched (direction, state) pairs in sorted direction order."""
        return sorted(self._states.items())

    def snapshot(self) -> dict[tuple[int, int], float]:
        """Copy of all touched direction values."""
        return {k: st.value for k, st in self._states.items()}
