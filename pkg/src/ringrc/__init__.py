"""Spin-wave delay-line active-ring reservoir computer, simulated end to end.

A single nonlinear ring oscillator is time-multiplexed into a reservoir:
input values are held on the ring's gain-control voltage for fixed intervals,
the circulating amplitude is sampled, and a linear readout is trained on the
samples.  The package covers the envelope-level ring model, input encoding,
binary memory/parity capacity tasks, a spoken-digit pipeline with a
synthetic corpus, and a reproducible benchmark CLI.
"""

__version__ = "0.1.0"

from .bench import DEVICE_REFERENCE, ExperimentConfig, RunReport
from .binary_tasks import SplitSpec, gen_binary, pc_capacity, stm_capacity
from .multiplex import OutputMatrix, encode, run_reservoir
from .ring import RingParams, RingState, loop_gain, nl_transfer, simulate
from .speech import DigitSample, MaskMatrix, make_mask, synth_corpus

__all__ = [
    "__version__",
    "DEVICE_REFERENCE",
    "ExperimentConfig",
    "RunReport",
    "SplitSpec",
    "gen_binary",
    "pc_capacity",
    "stm_capacity",
    "OutputMatrix",
    "encode",
    "run_reservoir",
    "RingParams",
    "RingState",
    "loop_gain",
    "nl_transfer",
    "simulate",
    "DigitSample",
    "MaskMatrix",
    "make_mask",
    "synth_corpus",
]
