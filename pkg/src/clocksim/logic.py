"""Core value, time, net, event, and trace types shared by every module.

Signals carry one of three levels.  ``Unknown`` models a net that has never
been driven: it never produces a clock edge, and it propagates through
logic unless a defined operand forces the result (a conducting diode wins
over an undriven branch in :func:`resolve_wired_or`, a Low wins in an AND).

Time is integer nanoseconds from simulation start so that a full simulated
day (86,400 * 10^9 ticks) is exact 64-bit arithmetic with no float drift.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

# Raw codes shared with the array kernel; Level/Edge wrap them for the API.
LOW, HIGH, UNKNOWN = 0, 1, 2
EDGE_NONE, EDGE_RISING, EDGE_FALLING = 0, 1, 2

SimTime = int
NS_PER_US = 1_000
NS_PER_MS = 1_000_000
NS_PER_SEC = 1_000_000_000
TICKS_PER_DAY = 86_400 * NS_PER_SEC


class Level(enum.IntEnum):
    """Three-valued logic level carried on a net."""

    LOW = LOW
    HIGH = HIGH
    UNKNOWN = UNKNOWN

    @property
    def glyph(self) -> str:
        """Single-character form used by trace exports: 0, 1 or X."""
        return "01X"[self.value]

    @classmethod
    def from_glyph(cls, g: str) -> "Level":
        try:
            return {"0": cls.LOW, "1": cls.HIGH, "X": cls.UNKNOWN}[g]
        except KeyError:
            raise ValueError(f"not a level glyph: {g!r}") from None


class Edge(enum.IntEnum):
    """Transition classification between two successive levels."""

    NONE = EDGE_NONE
    RISING = EDGE_RISING
    FALLING = EDGE_FALLING


@dataclass(frozen=True)
class Event:
    """A scheduled level change: at `time`, the net named `net` becomes `level`."""

    time: SimTime
    net: str
    level: Level

    def __post_init__(self) -> None:
        if self.time < 0:
            raise ValueError(f"event time must be >= 0, got {self.time}")


def edge_of(prev: Level, nxt: Level) -> Edge:
    """Classify the transition from ``prev`` to ``nxt``.

    Only the two fully defined transitions count; anything involving
    Unknown is not an edge, so a net that has never been driven cannot
    clock a counter.
    """
    if prev == Level.HIGH and nxt == Level.LOW:
        return Edge.FALLING
    if prev == Level.LOW and nxt == Level.HIGH:
        return Edge.RISING
    return Edge.NONE


def resolve_wired_or(drivers: Sequence[Level]) -> Level:
    """Resolve a diode-OR net with a pull-down from its driver levels.

    Any conducting diode (High) wins outright; otherwise an undriven
    branch makes the node Unknown; otherwise the pull-down supplies Low.
    """
    if len(drivers) == 0:
        raise ValueError("wired-or net needs at least one driver")
    if any(d == Level.HIGH for d in drivers):
        return Level.HIGH
    if any(d == Level.UNKNOWN for d in drivers):
        return Level.UNKNOWN
    return Level.LOW


class UnwatchedNetError(KeyError):
    """Raised when a trace is sampled on a net that was never watched."""


@dataclass
class Trace:
    """Per-watched-net change points recorded by a simulation run.

    The watched-net set is fixed when the run starts.  Change points are
    (time, level) pairs with strictly increasing times and no two equal
    consecutive levels.  Sampling before a net's first change point yields
    Unknown.
    """

    t_end: SimTime
    _times: dict[str, np.ndarray] = field(default_factory=dict)
    _levels: dict[str, np.ndarray] = field(default_factory=dict)

    @classmethod
    def from_points(
        cls,
        points: Mapping[str, Iterable[tuple[SimTime, Level]]],
        t_end: SimTime,
    ) -> "Trace":
        tr = cls(t_end=t_end)
        for net, pts in points.items():
            pts = list(pts)
            tr._times[net] = np.array([p[0] for p in pts], dtype=np.int64)
            tr._levels[net] = np.array([int(p[1]) for p in pts], dtype=np.int8)
        return tr

    def nets(self) -> tuple[str, ...]:
        return tuple(self._times)

    def __contains__(self, net: str) -> bool:
        return net in self._times

    def arrays(self, net: str) -> tuple[np.ndarray, np.ndarray]:
        """Raw (times, levels) arrays for ``net``; levels use the int codes."""
        if net not in self._times:
            raise UnwatchedNetError(net)
        return self._times[net], self._levels[net]

    def change_points(self, net: str) -> list[tuple[SimTime, Level]]:
        times, levels = self.arrays(net)
        return [(int(t), Level(int(v))) for t, v in zip(times, levels)]

    def sample(self, net: str, t: SimTime) -> Level:
        """Level of the last change point at or before ``t`` (Unknown if none)."""
        times, levels = self.arrays(net)
        i = int(np.searchsorted(times, t, side="right")) - 1
        if i < 0:
            return Level.UNKNOWN
        return Level(int(levels[i]))

    def sample_many(self, net: str, ts: np.ndarray) -> np.ndarray:
        """Vectorized :meth:`sample`: int8 level codes at each time in ``ts``."""
        times, levels = self.arrays(net)
        idx = np.searchsorted(times, ts, side="right") - 1
        out = np.where(idx >= 0, levels[np.clip(idx, 0, None)], np.int8(UNKNOWN))
        return out.astype(np.int8)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Trace):
            return NotImplemented
        if self.t_end != other.t_end or self.nets() != other.nets():
            return False
        return all(
            np.array_equal(self._times[n], other._times[n])
            and np.array_equal(self._levels[n], other._levels[n])
            for n in self._times
        )


def sample_trace(trace: Trace, net: str, t: SimTime) -> Level:
    """Level of ``net`` in ``trace`` at time ``t``; see :meth:`Trace.sample`."""
    return trace.sample(net, t)
