"""Time multiplexing: input vectors -> voltage drives -> reservoir readings.

Each entry of an input vector in [-1, 1] is held on the control voltage for
one interval; within each interval the diode is sampled ``n`` times, and
groups of ``group`` consecutive intervals are stacked into one output
column (``group == 1`` for binary tasks, ``group == n_theta`` for sound
units).  The ring state is carried continuously across the whole drive:
there is no reset between inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import ring
from .ring import ConfigurationError, RingParams, RingState

__all__ = [
    "Drive",
    "OutputMatrix",
    "encode",
    "encode_bits",
    "sample_offsets",
    "sample_outputs",
    "run_reservoir",
]


class InputError(ValueError):
    """Raised for out-of-range or malformed reservoir inputs."""


@dataclass(frozen=True)
class Drive:
    """Piecewise-constant control-voltage waveform."""

    values: np.ndarray
    interval: float

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        if self.values.ndim != 1 or self.values.size == 0:
            raise InputError("drive needs a non-empty 1-D voltage sequence")
        if self.interval <= 0:
            raise InputError("drive interval must be positive")

    @property
    def duration(self) -> float:
        return self.values.size * self.interval


@dataclass
class OutputMatrix:
    """Reservoir readings, one column per input step or sound unit.

    ``data`` has ``n * group`` rows; ``meta`` records how it was produced.
    """

    data: np.ndarray
    n: int
    group: int
    interval: float
    gain_db: float
    seed: int

    @property
    def n_columns(self) -> int:
        return self.data.shape[1]

    def regroup(self, group: int) -> "OutputMatrix":
        """Restack columns so each holds ``group`` consecutive intervals."""
        if self.group != 1:
            raise InputError("can only regroup an ungrouped matrix")
        n_int = self.data.shape[1]
        if group < 1 or n_int % group:
            raise InputError(f"{n_int} intervals do not group evenly by {group}")
        data = self.data.T.reshape(n_int // group, group * self.n).T
        return OutputMatrix(np.ascontiguousarray(data), self.n, group,
                            self.interval, self.gain_db, self.seed)


def encode(x, interval: float, params: RingParams) -> Drive:
    """Map values in [-1, 1] affinely onto [v_low, v_high], one per interval."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise InputError("encode expects a non-empty 1-D vector")
    if not np.all(np.isfinite(x)):
        raise InputError("encode input contains non-finite entries")
    bound = np.max(np.abs(x))
    if bound > 1.0 + 1e-12:
        raise InputError(f"encode input exceeds [-1, 1] (max |x| = {bound})")
    volts = params.v_low + (np.clip(x, -1.0, 1.0) + 1.0) * 0.5 * (
        params.v_high - params.v_low
    )
    return Drive(values=volts, interval=interval)


def encode_bits(bits, interval: float, params: RingParams) -> Drive:
    """Binary convenience: bit 0 -> v_low, bit 1 -> v_high."""
    bits = np.asarray(bits)
    if not np.isin(bits, (0, 1)).all():
        raise InputError("encode_bits expects entries in {0, 1}")
    return encode(bits * 2.0 - 1.0, interval, params)


def sample_offsets(spi: int, n: int) -> np.ndarray:
    """Step indices of ``n`` uniformly spaced samples inside an interval.

    Sample k sits at the end of the (k+1)-th of n equal subintervals, so the
    last sample always falls on the final step.  For ``n == 1`` this reduces
    to end-of-interval readout.
    """
    if n < 1:
        raise ConfigurationError("need at least one sample per interval")
    if n > spi:
        raise ConfigurationError(
            f"cannot take {n} samples from {spi} integration steps per interval"
        )
    return ((np.arange(1, n + 1) * spi) // n - 1).astype(np.int64)


def sample_outputs(
    trace: np.ndarray,
    interval: float,
    n: int,
    params: RingParams,
    group: int = 1,
    gain_db: float | None = None,
    seed: int = -1,
) -> OutputMatrix:
    """Sample a simulated trace into an output matrix.

    ``trace`` is one amplitude per ``dt`` step covering whole intervals.
    """
    trace = np.asarray(trace, dtype=float)
    spi = ring.steps_per_interval(interval, params)
    if trace.ndim != 1 or trace.size == 0 or trace.size % spi:
        raise ConfigurationError(
            f"trace length {trace.size} does not cover whole intervals of {spi} steps"
        )
    offs = sample_offsets(spi, n)
    per_interval = trace.reshape(-1, spi)[:, offs]
    out = OutputMatrix(
        data=np.ascontiguousarray(ring.diode_response(per_interval.T, params)),
        n=n,
        group=1,
        interval=interval,
        gain_db=params.gain_db if gain_db is None else gain_db,
        seed=seed,
    )
    return out if group == 1 else out.regroup(group)


def run_reservoir(
    inputs,
    interval: float,
    n: int,
    params: RingParams,
    seed: int = 0,
    group: int | None = None,
    warmup_intervals: int = 0,
    start_amplitude: float | None = None,
) -> OutputMatrix:
    """Encode, simulate, and sample in one deterministic pipeline.

    ``inputs`` is either a 1-D sequence in [-1, 1] (``group`` defaults to 1)
    or a sequence of equal-length vectors, each becoming one output column
    (``group`` defaults to the vector length).  ``warmup_intervals`` mid-range
    intervals are prepended to the drive and excluded from the output so the
    first column does not reflect ring start-up.
    """
    arr = np.asarray(inputs, dtype=float)
    if arr.size == 0:
        raise InputError("empty input sequence")
    if arr.ndim == 1:
        flat, auto_group = arr, 1
    elif arr.ndim == 2:
        flat, auto_group = arr.ravel(), arr.shape[1]
    else:
        raise InputError("inputs must be a 1-D sequence or a matrix of row vectors")
    group = auto_group if group is None else group

    drive = encode(flat, interval, params)
    volts = drive.values
    if warmup_intervals:
        pad = np.zeros(warmup_intervals)
        volts = np.concatenate([encode(pad, interval, params).values, volts])

    spi = ring.steps_per_interval(interval, params)
    offs = sample_offsets(spi, n)
    state = RingState.initial(params, seed=seed, start_amplitude=start_amplitude)
    samples = ring.run_sampled(volts, interval, params, state, offs)
    if warmup_intervals:
        samples = samples[warmup_intervals:]
    out = OutputMatrix(
        data=np.ascontiguousarray(ring.diode_response(samples.T, params)),
        n=n,
        group=1,
        interval=interval,
        gain_db=params.gain_db,
        seed=seed,
    )
    return out if group == 1 else out.regroup(group)
