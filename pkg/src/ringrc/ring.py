"""Amplitude-envelope model of a delay-line active-ring oscillator.

The ring is reduced to a single real amplitude a(t) >= 0 that relaxes toward
a delayed, voltage-gained, saturably-damped image of itself:

    relax_time * da/dt = g(v(t)) * f(a(t - T_r)) - a(t) + noise

with f(a) = a / (1 + (a / sat_amplitude)^2).  For a constant drive with
linear loop gain g > 1 the amplitude settles at the auto-oscillation fixed
point a* = sat_amplitude * sqrt(g - 1); for g <= 1 it decays to the noise
floor.  Integration is explicit Euler on a grid of ``dt`` with an exact
delay buffer of ``round_trip_time / dt`` samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from numba import njit

__all__ = [
    "RingParams",
    "RingState",
    "ConfigurationError",
    "loop_gain",
    "nl_transfer",
    "diode_response",
    "step",
    "simulate",
]

# Intervals integrated per engine call; noise is drawn chunk by chunk so long
# runs never materialize a full-length normal array.
_CHUNK_INTERVALS = 4096


class ConfigurationError(ValueError):
    """Raised when parameters or drive timing are inconsistent."""


@dataclass(frozen=True)
class RingParams:
    """Physical constants of the simulated ring.

    ``relax_time`` defaults to twice the round-trip time and ``dt`` to one
    sixty-fourth of it; both may be overridden.  ``linear_feedback`` replaces
    the saturable transfer with the identity (diagnostic mode; requires
    subcritical gain).  ``power_readout`` makes the diode report amplitude
    squared instead of the amplitude itself.
    """

    round_trip_time: float = 236e-9
    gain_db: float = 0.0
    v_low: float = -0.025
    v_high: float = 0.125
    attenuation_span_db: float = 6.0
    sat_amplitude: float = 1.0
    relax_time: float = field(default=0.0)
    noise_rms: float = 1e-6
    dt: float = field(default=0.0)
    linear_feedback: bool = False
    power_readout: bool = False

    def __post_init__(self):
        if self.relax_time == 0.0:
            object.__setattr__(self, "relax_time", 2.0 * self.round_trip_time)
        if self.dt == 0.0:
            object.__setattr__(self, "dt", self.round_trip_time / 64.0)
        if self.round_trip_time <= 0:
            raise ConfigurationError("round_trip_time must be positive")
        if self.dt <= 0:
            raise ConfigurationError("dt must be positive")
        if self.dt > self.round_trip_time / 8 + 1e-30:
            raise ConfigurationError("dt must not exceed round_trip_time/8")
        if self.relax_time <= 0:
            raise ConfigurationError("relax_time must be positive")
        if self.sat_amplitude <= 0:
            raise ConfigurationError("sat_amplitude must be positive")
        if not self.v_low < self.v_high:
            raise ConfigurationError("require v_low < v_high")
        if self.noise_rms < 0:
            raise ConfigurationError("noise_rms must be nonnegative")
        ratio = self.round_trip_time / self.dt
        if abs(ratio - round(ratio)) > 1e-6:
            raise ConfigurationError(
                f"round_trip_time/dt = {ratio} is not an integer; "
                "the delay buffer length must be exact"
            )

    @property
    def delay_steps(self) -> int:
        return round(self.round_trip_time / self.dt)

    @property
    def relax_factor(self) -> float:
        """Euler step fraction dt/relax_time."""
        return self.dt / self.relax_time

    def with_gain(self, gain_db: float) -> "RingParams":
        return replace(self, gain_db=gain_db)


def loop_gain(v, params: RingParams):
    """Linear (dimensionless) loop gain at control voltage ``v``.

    The switch attenuation is linear in voltage: 0 dB at ``v_high`` and
    ``-attenuation_span_db`` at ``v_low``; voltages outside the range are
    clamped.  Accepts scalars or arrays.
    """
    v = np.clip(v, params.v_low, params.v_high)
    atten_db = -params.attenuation_span_db * (params.v_high - v) / (
        params.v_high - params.v_low
    )
    return 10.0 ** ((params.gain_db + atten_db) / 20.0)


def nl_transfer(a, params: RingParams):
    """Saturable round-trip transfer a / (1 + (a/x_sat)^2).

    Strictly increasing below ``sat_amplitude`` and bounded above by
    ``sat_amplitude / 2``.
    """
    x = np.asarray(a, dtype=float)
    out = x / (1.0 + (x / params.sat_amplitude) ** 2)
    return float(out) if np.isscalar(a) or out.ndim == 0 else out


def diode_response(a, params: RingParams):
    """Detector reading for amplitude ``a`` (amplitude or power law)."""
    return a * a if params.power_readout else a


@dataclass
class RingState:
    """Sequential integrator state: delay history plus the noise stream.

    ``history`` holds the last ``delay_steps`` amplitudes; ``pos`` indexes the
    oldest entry, i.e. the amplitude one round trip in the past.
    """

    history: np.ndarray
    pos: int
    amplitude: float
    rng: np.random.Generator

    @classmethod
    def initial(
        cls,
        params: RingParams,
        seed: int = 0,
        start_amplitude: float | None = None,
    ) -> "RingState":
        """Fresh state; history filled with noise-floor draws by default.

        Pass ``start_amplitude`` for reproducible zero-noise starts (with
        ``noise_rms == 0`` the default all-zero history is a fixed point and
        the ring never starts up).
        """
        rng = np.random.default_rng(seed)
        depth = params.delay_steps
        if start_amplitude is None:
            history = np.abs(rng.normal(0.0, params.noise_rms, depth))
        else:
            if start_amplitude < 0:
                raise ConfigurationError("start_amplitude must be nonnegative")
            history = np.full(depth, float(start_amplitude))
        return cls(history=history, pos=0, amplitude=float(history[-1]), rng=rng)

    def check(self):
        if not np.all(np.isfinite(self.history)) or not math.isfinite(self.amplitude):
            raise FloatingPointError("non-finite amplitude in ring state")


def _noise_sigma(params: RingParams) -> float:
    # Euler-Maruyama scaling: the stationary sub-threshold amplitude
    # fluctuation then equals noise_rms independent of dt.
    return params.noise_rms * math.sqrt(2.0 * params.relax_factor)


def step(state: RingState, v: float, params: RingParams) -> tuple[RingState, float]:
    """Advance one ``dt`` under control voltage ``v``; returns diode reading.

    Mutates ``state`` in place and returns it alongside the reading.  This is
    the single-step reference path; :func:`simulate` runs the identical
    update compiled, consuming the same noise stream.
    """
    state.check()
    g = float(loop_gain(v, params))
    if params.linear_feedback and g >= 1.0:
        raise ConfigurationError("linear_feedback requires loop gain < 1")
    a_delayed = float(state.history[state.pos])
    if params.linear_feedback:
        fb = g * a_delayed
    else:
        # Same expression order as the compiled kernel, for bitwise parity.
        inv_sat2 = 1.0 / params.sat_amplitude**2
        fb = g * a_delayed / (1.0 + a_delayed * a_delayed * inv_sat2)
    a = state.amplitude + params.relax_factor * (fb - state.amplitude)
    sigma = _noise_sigma(params)
    if sigma > 0.0:
        a += sigma * state.rng.standard_normal()
    if a < 0.0:
        a = 0.0
    state.history[state.pos] = a
    state.pos = (state.pos + 1) % len(state.history)
    state.amplitude = a
    return state, diode_response(a, params)


@njit(cache=True, nogil=True)
def _advance(gains, steps_per_interval, alpha, inv_sat2, linear,
             noise, history, pos, a, offsets, samples):  # pragma: no cover
    n_off = offsets.shape[0]
    depth = history.shape[0]
    idx = 0
    for i in range(gains.shape[0]):
        g = gains[i]
        ptr = 0
        for s in range(steps_per_interval):
            a_d = history[pos]
            if linear:
                fb = g * a_d
            else:
                fb = g * a_d / (1.0 + a_d * a_d * inv_sat2)
            a = a + alpha * (fb - a) + noise[idx]
            if a < 0.0:
                a = 0.0
            history[pos] = a
            pos += 1
            if pos == depth:
                pos = 0
            if ptr < n_off and s == offsets[ptr]:
                samples[i, ptr] = a
                ptr += 1
            idx += 1
    return pos, a


def steps_per_interval(interval: float, params: RingParams) -> int:
    """Grid length of one drive interval; errors unless it divides exactly."""
    ratio = interval / params.dt
    steps = round(ratio)
    if steps < 1 or abs(ratio - steps) > 1e-6:
        raise ConfigurationError(
            f"drive interval {interval} s is not a positive integer multiple "
            f"of dt = {params.dt} s"
        )
    return steps


def run_sampled(
    voltages: np.ndarray,
    interval: float,
    params: RingParams,
    state: RingState,
    offsets: np.ndarray,
) -> np.ndarray:
    """Drive the ring with one voltage per interval, sampling inside each.

    ``offsets`` are step indices within an interval (sorted, in
    ``[0, steps_per_interval)``); returns an (intervals, len(offsets)) array
    of amplitudes.  Advances ``state`` in place.  Noise comes from
    ``state.rng`` one draw per step (chunked internally; numpy generator
    streams are sequential, so chunking does not change the values).
    """
    voltages = np.asarray(voltages, dtype=float)
    if voltages.ndim != 1 or voltages.size == 0:
        raise ConfigurationError("drive must be a non-empty 1-D voltage array")
    spi = steps_per_interval(interval, params)
    offsets = np.asarray(offsets, dtype=np.int64)
    if offsets.size and (offsets[0] < 0 or offsets[-1] >= spi):
        raise ConfigurationError("sample offsets fall outside the interval grid")
    gains = np.asarray(loop_gain(voltages, params), dtype=float)
    if params.linear_feedback and gains.max() >= 1.0:
        raise ConfigurationError("linear_feedback requires loop gain < 1")
    sigma = _noise_sigma(params)
    alpha = params.relax_factor
    inv_sat2 = 1.0 / params.sat_amplitude**2
    samples = np.empty((voltages.size, offsets.size))
    pos, a = state.pos, state.amplitude
    for lo in range(0, voltages.size, _CHUNK_INTERVALS):
        hi = min(lo + _CHUNK_INTERVALS, voltages.size)
        nsteps = (hi - lo) * spi
        if sigma > 0.0:
            noise = sigma * state.rng.standard_normal(nsteps)
        else:
            noise = np.zeros(nsteps)
        pos, a = _advance(
            gains[lo:hi], spi, alpha, inv_sat2, params.linear_feedback,
            noise, state.history, pos, a, offsets, samples[lo:hi],
        )
    state.pos, state.amplitude = pos, float(a)
    state.check()
    return samples


def simulate(
    voltages: np.ndarray,
    interval: float,
    params: RingParams,
    seed: int = 0,
    start_amplitude: float | None = None,
) -> np.ndarray:
    """Full amplitude trace for a piecewise-constant drive.

    One voltage per interval; the trace has one entry per ``dt`` step
    (length ``len(voltages) * interval / dt``) and is bit-reproducible for a
    fixed seed.
    """
    spi = steps_per_interval(interval, params)
    state = RingState.initial(params, seed=seed, start_amplitude=start_amplitude)
    samples = run_sampled(
        np.asarray(voltages, dtype=float), interval, params, state,
        np.arange(spi, dtype=np.int64),
    )
    return samples.ravel()
