"""Digit corpus handling, spectral features, masking, synthetic speech."""

import numpy as np
import pytest
from scipy.io import wavfile

from ringrc import speech
from ringrc.speech import (
    N_FEATURES,
    SAMPLE_RATE,
    UNIT_LEN,
    CorpusError,
    DigitSample,
    MaskMatrix,
    corpus_hash,
    ingest_wav,
    load_corpus,
    load_features,
    make_mask,
    mask_and_normalize,
    preprocess_sample,
    save_features,
    segment,
    spectral_features,
    synth_corpus,
    write_corpus,
)


def test_constants_consistent():
    assert UNIT_LEN == 250                     # 20 ms at 12.5 kHz
    assert SAMPLE_RATE * 0.020 == UNIT_LEN
    assert N_FEATURES == UNIT_LEN // 2 + 1 == 126


# ---------------------------------------------------------------------------
# Segmentation and features
# ---------------------------------------------------------------------------

def test_segment_pads_final_unit():
    w = np.ones(620)
    units = segment(w)
    assert units.shape == (3, UNIT_LEN)
    assert np.all(units[:2] == 1.0)
    assert np.all(units[2, :120] == 1.0)
    assert np.all(units[2, 120:] == 0.0)
    assert segment(np.ones(500)).shape == (2, UNIT_LEN)
    with pytest.raises(CorpusError):
        segment(np.array([]))


def test_spectral_features_known_tone():
    # A cosine on the 50 Hz bin grid concentrates in one real-part bin.
    t = np.arange(UNIT_LEN) / SAMPLE_RATE
    unit = np.cos(2 * np.pi * 500.0 * t)      # bin 10
    k = spectral_features(unit)
    assert k.shape == (N_FEATURES,)
    assert k[10] == pytest.approx(UNIT_LEN / 2, rel=1e-9)
    others = np.delete(k, 10)
    assert np.max(np.abs(others)) < 1e-9 * UNIT_LEN


def test_spectral_features_linear_map():
    rng = np.random.default_rng(0)
    a = rng.standard_normal(UNIT_LEN)
    b = rng.standard_normal(UNIT_LEN)
    lhs = spectral_features(3.0 * a - 2.0 * b)
    rhs = 3.0 * spectral_features(a) - 2.0 * spectral_features(b)
    assert np.max(np.abs(lhs - rhs)) < 1e-9
    with pytest.raises(CorpusError):
        spectral_features(np.zeros(UNIT_LEN + 1))


def test_spectral_features_matrix_input():
    rng = np.random.default_rng(1)
    units = rng.standard_normal((4, UNIT_LEN))
    K = spectral_features(units)
    assert K.shape == (4, N_FEATURES)
    assert np.allclose(K[2], spectral_features(units[2]))


# ---------------------------------------------------------------------------
# Masking
# ---------------------------------------------------------------------------

def test_make_mask_entries_and_determinism():
    m = make_mask(n_theta=40, seed=5)
    assert m.entries.shape == (40, N_FEATURES)
    assert set(np.unique(m.entries)) == {-1.0, 1.0}
    assert np.array_equal(m.entries, make_mask(n_theta=40, seed=5).entries)
    assert not np.array_equal(m.entries, make_mask(n_theta=40, seed=6).entries)
    with pytest.raises(CorpusError):
        MaskMatrix(entries=np.array([[0.5, 1.0]]), seed=0)


def test_mask_and_normalize_per_unit():
    m = make_mask(n_theta=10, seed=0)
    rng = np.random.default_rng(2)
    k = rng.standard_normal((3, N_FEATURES))
    x = mask_and_normalize(k, m)
    assert x.shape == (3, 10)
    # Each unit is scaled to unit max independently.
    assert np.allclose(np.max(np.abs(x), axis=1), 1.0)
    # Direction within each row is untouched by the scaling.
    raw = k @ m.entries.T
    for i in range(3):
        assert np.allclose(x[i] * np.max(np.abs(raw[i])), raw[i])


def test_mask_and_normalize_per_digit_shares_scale():
    m = make_mask(n_theta=10, seed=0)
    k = np.vstack([np.ones(N_FEATURES), 0.1 * np.ones(N_FEATURES)])
    x = mask_and_normalize(k, m, per_digit=True)
    assert np.max(np.abs(x)) == pytest.approx(1.0)
    # Second row keeps its 10x smaller scale relative to the first.
    ratio = np.max(np.abs(x[1])) / np.max(np.abs(x[0]))
    assert ratio == pytest.approx(0.1, rel=1e-9)


def test_mask_and_normalize_edge_cases():
    m = make_mask(n_theta=5, seed=1)
    zero = mask_and_normalize(np.zeros(N_FEATURES), m)
    assert zero.shape == (5,)
    assert np.all(zero == 0.0)
    with pytest.raises(CorpusError):
        mask_and_normalize(np.zeros(N_FEATURES - 1), m)


# ---------------------------------------------------------------------------
# Samples and corpus I/O
# ---------------------------------------------------------------------------

def test_digit_sample_validation():
    with pytest.raises(CorpusError):
        DigitSample(samples=np.array([]), label=0, speaker="a", utterance=0)
    with pytest.raises(CorpusError):
        DigitSample(samples=np.zeros((2, 2)), label=0, speaker="a", utterance=0)
    with pytest.raises(CorpusError):
        DigitSample(samples=np.zeros(10), label=11, speaker="a", utterance=0)
    s = DigitSample(samples=np.zeros(10), label=9, speaker="a", utterance=1)
    assert s.n_units == 1


def test_write_and_load_corpus_round_trip(tmp_path, small_corpus):
    subset = small_corpus[:8]
    outdir = tmp_path / "wavs"
    manifest = write_corpus(subset, outdir)
    assert manifest.exists()

    via_dir = load_corpus(outdir)
    via_manifest = load_corpus(manifest)
    for loaded in (via_dir, via_manifest):
        assert len(loaded) == len(subset)
        keys = [(s.label, s.speaker, s.utterance) for s in loaded]
        assert keys == sorted(keys)
        assert set(keys) == {(s.label, s.speaker, s.utterance) for s in subset}
    # 16-bit quantization bounds the waveform error.
    orig = {(s.label, s.speaker, s.utterance): s for s in subset}
    for s in via_dir:
        ref = orig[(s.label, s.speaker, s.utterance)]
        assert s.samples.size == ref.samples.size
        assert np.max(np.abs(s.samples - ref.samples)) < 2e-4


def test_ingest_wav_resamples_and_normalizes(tmp_path):
    rate = 25000
    t = np.arange(rate) / rate
    wave = 0.25 * np.sin(2 * np.pi * 440 * t)
    path = tmp_path / "4_anna_2.wav"
    wavfile.write(path, rate, np.round(wave * 32767).astype(np.int16))
    s = ingest_wav(path)
    assert s.label == 4 and s.speaker == "anna" and s.utterance == 2
    assert abs(s.samples.size - SAMPLE_RATE) <= 1     # 1 s at the target rate
    assert np.max(np.abs(s.samples)) == pytest.approx(1.0)


def test_ingest_wav_rejects_unparseable_name(tmp_path):
    path = tmp_path / "digit.wav"
    wavfile.write(path, SAMPLE_RATE, np.zeros(100, dtype=np.int16))
    with pytest.raises(CorpusError):
        ingest_wav(path)


def test_load_corpus_missing_manifest_columns(tmp_path):
    bad = tmp_path / "manifest.csv"
    bad.write_text("path,label\nx.wav,3\n")
    with pytest.raises(CorpusError):
        load_corpus(bad)


# ---------------------------------------------------------------------------
# Synthetic corpus
# ---------------------------------------------------------------------------

def test_synth_corpus_grid_and_determinism(small_corpus):
    assert len(small_corpus) == 10 * 2 * 3
    keys = {(s.label, s.speaker, s.utterance) for s in small_corpus}
    assert len(keys) == 60
    labels = {s.label for s in small_corpus}
    assert labels == set(range(10))
    again = synth_corpus(n_speakers=2, n_utterances=3, seed=11)
    assert corpus_hash(again) == corpus_hash(small_corpus)
    other = synth_corpus(n_speakers=2, n_utterances=3, seed=12)
    assert corpus_hash(other) != corpus_hash(small_corpus)


def test_synth_corpus_waveform_properties(small_corpus):
    for s in small_corpus:
        assert np.max(np.abs(s.samples)) == pytest.approx(1.0)
        dur = s.samples.size / SAMPLE_RATE
        assert 0.25 <= dur <= 0.75
    with pytest.raises(CorpusError):
        synth_corpus(n_speakers=9)
    with pytest.raises(CorpusError):
        synth_corpus(n_utterances=0)


def test_preprocess_sample_shape(small_corpus):
    mask = make_mask(n_theta=30, seed=3)
    x = preprocess_sample(small_corpus[0], mask)
    assert x.shape == (small_corpus[0].n_units, 30)
    assert np.max(np.abs(x)) <= 1.0 + 1e-12


def test_feature_cache_round_trip(tmp_path, small_corpus):
    subset = small_corpus[:6]
    mask = make_mask(n_theta=20, seed=7)
    path = tmp_path / "features.npz"
    save_features(path, subset, mask)
    rows = load_features(path, subset, mask)
    assert rows is not None and len(rows) == 6
    for row, s in zip(rows, subset):
        assert np.allclose(row, preprocess_sample(s, mask))
    # Any identity mismatch invalidates the cache.
    assert load_features(path, subset, make_mask(n_theta=20, seed=8)) is None
    assert load_features(path, subset[:5], mask) is None
    assert load_features(tmp_path / "absent.npz", subset, mask) is None
