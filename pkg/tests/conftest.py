"""Shared fixtures: kernel warm-up and a small reusable corpus."""

import numpy as np
import pytest

from ringrc import speech
from ringrc.ring import RingParams, simulate


@pytest.fixture(scope="session", autouse=True)
def warm_kernel():
    """Trigger the compiled integrator once so tests time physics, not JIT."""
    params = RingParams(gain_db=0.0, noise_rms=0.0)
    simulate(np.zeros(2), params.round_trip_time, params, start_amplitude=0.1)


@pytest.fixture(scope="session")
def small_corpus():
    """2 speakers x 3 utterances x 10 digits = 60 samples."""
    return speech.synth_corpus(n_speakers=2, n_utterances=3, seed=11)
