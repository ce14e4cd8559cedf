"""Behavioral models for the circuit's parts.

Every model is a pure function of (state, inputs), so the engine can
schedule evaluations deterministically: a dual 4-bit ripple counter half
with asynchronous master reset, a 2-input AND gate in three-valued logic,
an inverting Schmitt stage with a first-order RC node at its input, a
bouncing push button, and an ideal square-wave source.

The single-underscore ``*_code`` functions operate on raw int/float codes
and are the exact source the array kernel compiles; the public functions
wrap them in :class:`~clocksim.logic.Level` terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

from .logic import (
    EDGE_FALLING,
    EDGE_NONE,
    EDGE_RISING,
    HIGH,
    LOW,
    NS_PER_SEC,
    UNKNOWN,
    Event,
    Level,
    SimTime,
)

# ---------------------------------------------------------------------------
# Raw primitives (numba-compatible: ints, floats, math only)
# ---------------------------------------------------------------------------


def _edge_code(prev, nxt):
    if prev == HIGH and nxt == LOW:
        return EDGE_FALLING
    if prev == LOW and nxt == HIGH:
        return EDGE_RISING
    return EDGE_NONE


def _and2_code(a, b):
    if a == LOW or b == LOW:
        return LOW
    if a == HIGH and b == HIGH:
        return HIGH
    return UNKNOWN


def _counter_next(value, last_clock, clock_now, mr_now):
    # Master reset is level-sensitive and dominates the clock.
    if mr_now == HIGH:
        return 0
    if _edge_code(last_clock, clock_now) == EDGE_FALLING:
        return (value + 1) & 15
    return value


def _rc_value(v0, drive, dt_ns, tau_ns):
    """Node voltage after ``dt_ns`` of first-order relaxation toward ``drive``."""
    if drive == UNKNOWN:
        return v0
    target = 1.0 if drive == HIGH else 0.0
    return target + (v0 - target) * math.exp(-dt_ns / tau_ns)


def _crossing_delay_ns(v0, drive, tau_ns, vt_hi, vt_lo):
    """Delay until the RC node first reaches the relevant threshold.

    Rising trajectories (drive High) aim at vt_hi, falling ones at vt_lo.
    Returns -1.0 when the threshold is not ahead on the trajectory: the
    node is already strictly past it, or the drive moves away from it, or
    the drive is Unknown (the node holds).
    """
    if drive == HIGH:
        if v0 > vt_hi:
            return -1.0
        if v0 == vt_hi:
            return 0.0
        return tau_ns * math.log((v0 - 1.0) / (vt_hi - 1.0))
    if drive == LOW:
        if v0 < vt_lo:
            return -1.0
        if v0 == vt_lo:
            return 0.0
        return tau_ns * math.log(v0 / vt_lo)
    return -1.0


def _schmitt_out_code(prev_out, v, vt_hi, vt_lo):
    # Inverting comparator with hysteresis: holds between the thresholds.
    if v >= vt_hi:
        return LOW
    if v <= vt_lo:
        return HIGH
    return prev_out


# ---------------------------------------------------------------------------
# Counter half
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CounterHalf:
    """One 4-bit half of a dual ripple counter.

    Power-on state is value 0 with the clock history unknown, so the first
    observed transition can never be mistaken for a falling edge.
    """

    value: int = 0
    last_clock: Level = Level.UNKNOWN

    def __post_init__(self) -> None:
        if not 0 <= self.value <= 15:
            raise ValueError(f"counter value out of range: {self.value}")

    def q(self, i: int) -> Level:
        """Output bit ``i`` (q0 = weight 1 ... q3 = weight 8)."""
        if not 0 <= i <= 3:
            raise ValueError(f"counter output index out of range: {i}")
        return Level.HIGH if (self.value >> i) & 1 else Level.LOW

    @property
    def outputs(self) -> tuple[Level, Level, Level, Level]:
        return (self.q(0), self.q(1), self.q(2), self.q(3))


def counter_half_step(state: CounterHalf, clock_now: Level, mr_now: Level) -> CounterHalf:
    """Advance one counter half given its current clock and master-reset levels.

    Reset (mr High) forces the value to 0 regardless of clock activity;
    otherwise a High-to-Low clock transition increments mod 16.  The clock
    history is updated either way, so releasing reset never counts as an
    edge of its own.
    """
    value = _counter_next(state.value, int(state.last_clock), int(clock_now), int(mr_now))
    return CounterHalf(value=value, last_clock=clock_now)


def and2_eval(a: Level, b: Level) -> Level:
    """Three-valued AND: Low dominates, two Highs make High, else Unknown."""
    return Level(_and2_code(int(a), int(b)))


# ---------------------------------------------------------------------------
# Schmitt stage with RC input node
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SchmittRcState:
    """State of one inverting Schmitt stage: RC node voltage and output.

    ``node_voltage`` is normalized to the supply (0..1).  The output only
    moves when the node crosses vt_hi upward or vt_lo downward.
    """

    node_voltage: float = 0.0
    output: Level = Level.HIGH
    pending_crossing: Optional[SimTime] = None


def schmitt_crossing_time(
    state: SchmittRcState,
    drive: Level,
    tau_ns: float,
    vt_hi: float,
    vt_lo: float,
) -> Optional[SimTime]:
    """Delay (ns from now) until the RC node first crosses the relevant threshold.

    The node relaxes exponentially toward the driven rail; the closed form
    is dt = tau * ln((V0 - Vtarget) / (Vthresh - Vtarget)).  Returns None
    when no crossing lies ahead (already past the threshold, the drive
    moves away from it, or the drive is Unknown and the node holds).
    """
    if not 0.0 < vt_lo < vt_hi < 1.0:
        raise ValueError("thresholds must satisfy 0 < vt_lo < vt_hi < 1")
    if tau_ns <= 0:
        raise ValueError("tau must be positive")
    d = _crossing_delay_ns(state.node_voltage, int(drive), float(tau_ns), vt_hi, vt_lo)
    if d < 0:
        return None
    return int(d + 0.5)


def schmitt_output(output_prev: Level, v_now: float, vt_hi: float, vt_lo: float) -> Level:
    """Inverting output with hysteresis: Low at/above vt_hi, High at/below vt_lo."""
    if not 0.0 < vt_lo < vt_hi < 1.0:
        raise ValueError("thresholds must satisfy 0 < vt_lo < vt_hi < 1")
    return Level(_schmitt_out_code(int(output_prev), v_now, vt_hi, vt_lo))


# ---------------------------------------------------------------------------
# Button with contact bounce
# ---------------------------------------------------------------------------

_SM64_MASK = (1 << 64) - 1


def _splitmix64(state: int) -> tuple[int, int]:
    """One step of the splitmix64 sequence: (next_state, output).

    Fixed public constants; documented here so bounce trains are
    reproducible bit-for-bit from a seed alone.
    """
    state = (state + 0x9E3779B97F4A7C15) & _SM64_MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _SM64_MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _SM64_MASK
    return state, (z ^ (z >> 31)) & _SM64_MASK


@dataclass(frozen=True)
class BounceSpec:
    """Contact-bounce model for one mechanical switch.

    Each press (and each release) emits ``2 * n_bounces + 1`` transitions,
    all within ``bounce_window_ns`` of the nominal instant, ending at the
    nominal rail.  Intervals come from a seeded splitmix64 stream.
    """

    n_bounces: int = 0
    bounce_window_ns: SimTime = 2_000_000
    seed: int = 1
    closes_to: Level = Level.HIGH

    def __post_init__(self) -> None:
        if self.n_bounces < 0:
            raise ValueError("n_bounces must be >= 0")
        if self.bounce_window_ns <= 0:
            raise ValueError("bounce_window_ns must be positive")
        if self.closes_to not in (Level.HIGH, Level.LOW):
            raise ValueError("closes_to must be a defined level")

    @property
    def opens_to(self) -> Level:
        return Level.LOW if self.closes_to == Level.HIGH else Level.HIGH


def _bounce_offsets(spec: BounceSpec, stream_key: int) -> list[int]:
    """2 * n_bounces strictly increasing offsets in (0, window)."""
    n = 2 * spec.n_bounces
    if n == 0:
        return []
    state = (spec.seed * 0x9E3779B97F4A7C15 + stream_key) & _SM64_MASK
    raw = []
    for _ in range(n):
        state, val = _splitmix64(state)
        raw.append(1 + val % (spec.bounce_window_ns - 1))
    raw.sort()
    for i in range(1, n):
        if raw[i] <= raw[i - 1]:
            raw[i] = min(raw[i - 1] + 1, spec.bounce_window_ns - 1)
    return raw


def _toggle_train(at: SimTime, final: Level, spec: BounceSpec, key: int, net: str) -> list[Event]:
    other = Level.LOW if final == Level.HIGH else Level.HIGH
    events = [Event(at, net, final)]
    for i, off in enumerate(_bounce_offsets(spec, key)):
        events.append(Event(at + off, net, other if i % 2 == 0 else final))
    return events


def gen_button_events(
    press_at: SimTime,
    release_at: SimTime,
    spec: BounceSpec,
    net: str = "btn",
) -> list[Event]:
    """Raw switch waveform for one press/release pair on net ``net``.

    The press train settles at the closed rail, the mirrored release train
    at the open rail.  With ``n_bounces=0`` this is a clean two-event
    output.  Press and release windows must not overlap.
    """
    if press_at < 0:
        raise ValueError("press must not be before t=0")
    if press_at + spec.bounce_window_ns >= release_at:
        raise ValueError(
            f"press at {press_at} ns with bounce window {spec.bounce_window_ns} ns "
            f"overlaps release at {release_at} ns"
        )
    events = _toggle_train(press_at, spec.closes_to, spec, 2 * press_at + 1, net)
    events += _toggle_train(release_at, spec.opens_to, spec, 2 * release_at, net)
    return events


# ---------------------------------------------------------------------------
# Square-wave clock source
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClockSourceSpec:
    """Ideal square-wave source.

    Starts Low with the first rising edge at ``duty * period`` before the
    first whole period, so the falling (active) edges land exactly on
    multiples of the period: at 1 Hz that is every whole second.
    """

    freq_hz: float = 1.0
    duty: float = 0.5

    def __post_init__(self) -> None:
        if self.freq_hz <= 0:
            raise ValueError("frequency must be positive")
        if not 0.0 < self.duty < 1.0:
            raise ValueError("duty must be in (0, 1)")

    @property
    def period_ns(self) -> SimTime:
        return int(NS_PER_SEC / self.freq_hz + 0.5)


def gen_clock_events(spec: ClockSourceSpec, until: SimTime, net: str = "clk") -> list[Event]:
    """All source transitions with time <= ``until``, in time order."""
    period = spec.period_ns
    high_ns = int(spec.duty * period + 0.5)
    events = []
    k = 1
    while True:
        fall = k * period
        rise = fall - high_ns
        if rise > until:
            break
        events.append(Event(rise, net, Level.HIGH))
        if fall <= until:
            events.append(Event(fall, net, Level.LOW))
        k += 1
    return events
