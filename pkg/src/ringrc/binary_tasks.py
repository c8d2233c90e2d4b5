"""Binary benchmark tasks: recall and parity targets, capacity scoring.

A random bit series drives the reservoir; for each delay d a separate linear
readout tries to reconstruct either the input d steps back (memory recall) or
the parity of the window ending d steps back.  The squared correlation on
held-out columns, summed over delays, is the capacity.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import readout
from .multiplex import OutputMatrix

__all__ = [
    "SplitSpec",
    "CapacityResult",
    "gen_binary",
    "stm_target",
    "pc_target",
    "capacity",
    "stm_capacity",
    "pc_capacity",
]


@dataclass(frozen=True)
class SplitSpec:
    """Washout / train / test column counts."""

    washout: int = 200
    train: int = 1000
    test: int = 1000

    def __post_init__(self):
        if min(self.washout, self.train, self.test) < 0 or self.train < 2 or self.test < 2:
            raise ValueError("invalid split sizes")

    @property
    def total(self) -> int:
        return self.washout + self.train + self.test


@dataclass
class CapacityResult:
    per_delay: dict[int, float] = field(default_factory=dict)

    @property
    def capacity(self) -> float:
        return float(sum(self.per_delay.values()))


def gen_binary(length: int, seed: int) -> np.ndarray:
    """I.i.d. uniform bits, deterministic per seed."""
    if length <= 0:
        raise ValueError("length must be positive")
    return np.random.default_rng(seed).integers(0, 2, size=length).astype(np.int8)


def stm_target(bits, d: int) -> np.ndarray:
    """Recall target y_k = s_{k-d}; the first d entries are NaN (invalid)."""
    bits = np.asarray(bits)
    if not 0 <= d < bits.size:
        raise ValueError(f"delay {d} outside [0, {bits.size})")
    y = np.empty(bits.size)
    y[:d] = np.nan
    y[d:] = bits[: bits.size - d]
    return y


def pc_target(bits, d: int) -> np.ndarray:
    """Parity target y_k = s_k xor s_{k-1} xor ... xor s_{k-d}; NaN head."""
    bits = np.asarray(bits, dtype=np.int64)
    if not 0 <= d < bits.size:
        raise ValueError(f"delay {d} outside [0, {bits.size})")
    csum = np.concatenate([[0], np.cumsum(bits)])
    y = np.empty(bits.size)
    y[:d] = np.nan
    k = np.arange(d, bits.size)
    y[d:] = (csum[k + 1] - csum[k - d]) % 2
    return y


def capacity(
    outputs: OutputMatrix | np.ndarray,
    targets_by_delay: dict[int, np.ndarray],
    split: SplitSpec = SplitSpec(),
    ridge: float = 1e-8,
) -> CapacityResult:
    """Sum of held-out squared correlations over per-delay readouts.

    ``outputs`` columns align with the targets index by index.  Each delay
    gets its own readout fit on the training columns; targets containing NaN
    inside the fitted range are rejected (the washout must cover the largest
    delay).
    """
    V = outputs.data if isinstance(outputs, OutputMatrix) else np.asarray(outputs)
    V = np.atleast_2d(V)
    if V.shape[1] < split.total:
        raise ValueError(
            f"{V.shape[1]} output columns cannot cover washout+train+test = {split.total}"
        )
    tr = slice(split.washout, split.washout + split.train)
    te = slice(split.washout + split.train, split.total)
    result = CapacityResult()
    for d, y in sorted(targets_by_delay.items()):
        y = np.asarray(y, dtype=float)
        if y.size != V.shape[1]:
            raise ValueError(f"target for delay {d} has length {y.size}, "
                             f"expected {V.shape[1]}")
        if np.isnan(y[tr]).any() or np.isnan(y[te]).any():
            raise ValueError(
                f"delay {d} targets are invalid inside the fit range; "
                "increase the washout"
            )
        w = readout.train(V[:, tr], y[tr], ridge=ridge)
        pred = readout.predict(w, V[:, te]).ravel()
        result.per_delay[d] = readout.squared_correlation(pred, y[te])
    return result


def _delay_range(d_max: int, include_zero: bool) -> range:
    if d_max < 1:
        raise ValueError("d_max must be at least 1")
    return range(0 if include_zero else 1, d_max + 1)


def stm_capacity(outputs, bits, split: SplitSpec = SplitSpec(), d_max: int = 20,
                 ridge: float = 1e-8, include_zero: bool = False) -> CapacityResult:
    targets = {d: stm_target(bits, d) for d in _delay_range(d_max, include_zero)}
    return capacity(outputs, targets, split, ridge)


def pc_capacity(outputs, bits, split: SplitSpec = SplitSpec(), d_max: int = 20,
                ridge: float = 1e-8, include_current: bool = True) -> CapacityResult:
    """Parity capacity; the window includes the current bit by default."""
    if include_current:
        targets = {d: pc_target(bits, d) for d in _delay_range(d_max, False)}
    else:
        # Window shifted entirely into the past: y_k = s_{k-1} ^ ... ^ s_{k-d}.
        targets = {}
        for d in _delay_range(d_max, False):
            shifted = pc_target(bits, d - 1)
            y = np.empty_like(shifted)
            y[:1] = np.nan
            y[1:] = shifted[:-1]
            targets[d] = y
    return capacity(outputs, targets, split, ridge)
