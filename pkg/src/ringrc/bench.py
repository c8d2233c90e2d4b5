"""Benchmark harness: configuration, capacity sweep, digit recognition, baseline.

Every experiment is a pure function of an ExperimentConfig, so rerunning a
persisted config reproduces the CSV outputs byte for byte.  Results are
written as plot-ready CSV plus a JSON report carrying the config snapshot,
code version, and reference values measured on the hardware prototype that
this simulator models.
"""

from __future__ import annotations

import dataclasses
import json
import subprocess
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import readout, speech
from .binary_tasks import SplitSpec, gen_binary, pc_capacity, stm_capacity
from .multiplex import OutputMatrix, run_reservoir, sample_offsets
from .ring import ConfigurationError, RingParams, simulate, steps_per_interval
from .speech import CorpusError, DigitSample, MaskMatrix

__all__ = [
    "DEVICE_REFERENCE",
    "ExperimentConfig",
    "RunReport",
    "SweepPoint",
    "capacity_point",
    "run_sweep",
    "run_digits",
    "run_baseline",
    "run_simulate",
    "run_gen_synthetic",
    "louo_folds",
    "validate_corpus",
]

# Values measured on the physical spin-wave ring prototype, reported next to
# simulator results for orientation.  They characterize one specific device
# and are not targets for the phenomenological model.
DEVICE_REFERENCE = {
    "c_stm_max": 4.77,           # at theta_int = 0.295 us, high gain
    "c_pc_max": 1.47,            # at theta_int = 1.95 us, G = 0.49 dB
    "c_stm_at_pc_point": 2.14,
    "digit_accuracy_saturation": 0.93,
    "digit_accuracy_400_outputs": 0.80,
    "baseline_accuracy": 0.252,
    "baseline_accuracy_std": 0.037,
    "chance_accuracy": 0.10,
}

_SEED_STRIDE = 7919  # per-point noise-seed offset, fixed so runs are reproducible


@dataclass(frozen=True)
class ExperimentConfig:
    """Full description of a benchmark run.

    Times with the ``_tr`` suffix are in units of the ring round-trip time;
    ``dt = round_trip_time / <dt_divisor>``.  All randomness is owned by the
    four explicit seeds, so identical configs give identical outputs.
    """

    # Ring physics shared by every experiment.  The envelope relax time is
    # short against the loop delay, so the effective memory of the ring is
    # set by the loop gain (slow settling near threshold, fast far above);
    # that emergent gain-dependent relaxation is what the benchmarks probe.
    # The diode is a power detector, so readings are squared amplitudes.
    round_trip_time: float = 236e-9
    relax_time_tr: float = 0.125
    sat_amplitude: float = 1.0
    noise_rms: float = 1e-6
    v_low: float = -0.025
    v_high: float = 0.125
    attenuation_span_db: float = 0.3
    power_readout: bool = True

    # Capacity sweep over (theta_int, gain) for the binary tasks.  The grid
    # spans gains from just above threshold (long settling, deep linear
    # memory) to strong feedback (fast settling, early nonlinear mixing),
    # chosen so the parity-capacity peak of every curve falls inside the
    # theta grid rather than beyond its upper edge.
    theta_grid_tr: tuple[float, ...] = tuple(m + 0.25 for m in range(1, 10))
    gain_grid_db: tuple[float, ...] = (0.35, 1.4, 1.6, 2.0)
    sweep_dt_divisor: int = 128
    n_samples: int = 20
    d_max: int = 20
    washout: int = 200
    train: int = 1000
    test: int = 1000
    ridge: float = 1e-8

    # Digit recognition task.
    n_theta: int = 100
    digit_theta_tr: float = 8.25
    digit_gain_db: float = 0.49
    digit_dt_divisor: int = 16
    n_grid: tuple[int, ...] = (1, 2, 4)
    digit_ridge: float = 0.0
    digit_warmup_intervals: int = 200
    per_digit_norm: bool = False

    # Dataset: "synthetic" or a path to a WAV directory / manifest CSV.
    corpus: str = "synthetic"
    n_speakers: int = 5
    n_utterances: int = 10

    # Seeds (explicit; never wall clock).
    mask_seed: int = 1
    series_seed: int = 2
    noise_seed: int = 3
    corpus_seed: int = 4

    # Execution / output.
    workers: int = 1
    outdir: str = "runs/latest"
    simulate_interval_tr: float = 1.0

    def __post_init__(self):
        if not self.theta_grid_tr or not self.gain_grid_db or not self.n_grid:
            raise ConfigurationError("theta, gain, and n grids must be non-empty")
        if min(self.theta_grid_tr) <= 0:
            raise ConfigurationError("theta grid entries must be positive")
        if min(self.n_grid) < 1:
            raise ConfigurationError("n grid entries must be >= 1")
        if self.sweep_dt_divisor < 1 or self.digit_dt_divisor < 1:
            raise ConfigurationError("dt divisors must be positive integers")
        if self.n_theta < 1 or self.d_max < 1 or self.n_samples < 1:
            raise ConfigurationError("n_theta, d_max, n_samples must be >= 1")
        if self.workers < 1:
            raise ConfigurationError("workers must be >= 1")
        if self.digit_warmup_intervals < 0:
            raise ConfigurationError("warmup interval count cannot be negative")
        for name in ("mask_seed", "series_seed", "noise_seed", "corpus_seed"):
            if not isinstance(getattr(self, name), int):
                raise ConfigurationError(f"{name} must be an explicit integer")
        SplitSpec(self.washout, self.train, self.test)  # validates sizes

    @property
    def split(self) -> SplitSpec:
        return SplitSpec(self.washout, self.train, self.test)

    def ring_params(self, gain_db: float, dt_divisor: int,
                    linear_feedback: bool = False) -> RingParams:
        # The linearized variant strips every nonlinearity, including the
        # square-law detector, so its outputs are affine in the drive history.
        return RingParams(
            round_trip_time=self.round_trip_time,
            gain_db=gain_db,
            v_low=self.v_low,
            v_high=self.v_high,
            attenuation_span_db=self.attenuation_span_db,
            sat_amplitude=self.sat_amplitude,
            relax_time=self.relax_time_tr * self.round_trip_time,
            noise_rms=self.noise_rms,
            dt=self.round_trip_time / dt_divisor,
            linear_feedback=linear_feedback,
            power_readout=self.power_readout and not linear_feedback,
        )

    @classmethod
    def desk(cls, **overrides) -> "ExperimentConfig":
        """Desk-scale preset: 2 speakers x 4 utterances, N_theta = 50."""
        base = dict(n_speakers=2, n_utterances=4, n_theta=50)
        base.update(overrides)
        return cls(**base)

    def replace(self, **changes) -> "ExperimentConfig":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        for key, value in d.items():
            if isinstance(value, tuple):
                d[key] = list(value)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        known = {f.name: f for f in dataclasses.fields(cls)}
        unknown = set(d) - set(known)
        if unknown:
            raise ConfigurationError(f"unknown config keys: {sorted(unknown)}")
        kwargs = {}
        for key, value in d.items():
            if isinstance(value, list):
                value = tuple(value)
            kwargs[key] = value
        return cls(**kwargs)

    def save(self, path):
        Path(path).write_text(json.dumps(self.to_dict(), indent=2,
                                         sort_keys=True) + "\n")

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        try:
            return cls.from_dict(json.loads(Path(path).read_text()))
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"cannot parse config '{path}': {exc}") from exc


def _code_version() -> dict:
    from . import __version__
    try:
        rev = subprocess.run(
            ["git", "rev-parse", "--short", "HEAD"],
            capture_output=True, text=True, timeout=5,
            cwd=Path(__file__).parent,
        ).stdout.strip() or "unknown"
    except Exception:
        rev = "unknown"
    return {"version": __version__, "revision": rev}


@dataclass
class RunReport:
    """Persisted record of one command: config, results, provenance."""

    command: str
    config: dict
    results: dict
    version: dict = field(default_factory=_code_version)
    reference: dict = field(default_factory=lambda: dict(DEVICE_REFERENCE))
    wall_time_s: float = 0.0
    failures: list = field(default_factory=list)

    def save(self, path):
        payload = dataclasses.asdict(self)
        Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _write_csv(path, header: list[str], rows: list[tuple]):
    """Deterministic CSV writer: fixed %.12g float formatting, LF endings."""
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for cell in row:
            if isinstance(cell, float):
                cells.append(f"{cell:.12g}")
            else:
                cells.append(str(cell))
        lines.append(",".join(cells))
    Path(path).write_text("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# Capacity sweep
# ---------------------------------------------------------------------------

@dataclass
class SweepPoint:
    theta_tr: float
    gain_db: float
    c_stm: float
    c_pc: float
    stm_per_delay: dict[int, float] = field(default_factory=dict)
    pc_per_delay: dict[int, float] = field(default_factory=dict)


def capacity_point(config: ExperimentConfig, theta_tr: float, gain_db: float,
                   dt_divisor: int | None = None, linear_feedback: bool = False,
                   seed_offset: int = 0) -> SweepPoint:
    """Run the binary series through the ring at one (theta, gain) point."""
    params = config.ring_params(
        gain_db,
        config.sweep_dt_divisor if dt_divisor is None else dt_divisor,
        linear_feedback=linear_feedback,
    )
    split = config.split
    bits = gen_binary(split.total, config.series_seed)
    outputs = run_reservoir(
        bits * 2.0 - 1.0,
        theta_tr * config.round_trip_time,
        config.n_samples,
        params,
        seed=config.noise_seed + _SEED_STRIDE * seed_offset,
    )
    stm = stm_capacity(outputs, bits, split, config.d_max, config.ridge)
    pc = pc_capacity(outputs, bits, split, config.d_max, config.ridge)
    return SweepPoint(theta_tr, gain_db, stm.capacity, pc.capacity,
                      stm.per_delay, pc.per_delay)


def _dense_theta_grid(config: ExperimentConfig) -> tuple[float, ...]:
    """Quarter-steps of T_r spanning the default grid, including integer
    multiples, for synchronization-sensitivity studies."""
    top = max(config.theta_grid_tr)
    return tuple(np.round(np.arange(0.25, top + 1e-9, 0.25), 6))


def run_sweep(config: ExperimentConfig, dense_theta: bool = False) -> RunReport:
    """Capacity over the (theta_int, gain) grid; writes capacities.csv."""
    t0 = time.perf_counter()
    thetas = _dense_theta_grid(config) if dense_theta else config.theta_grid_tr
    points = [(g, th) for g in config.gain_grid_db for th in thetas]

    def work(item):
        idx, (gain_db, theta_tr) = item
        return capacity_point(config, theta_tr, gain_db, seed_offset=idx)

    results: list[SweepPoint | None] = [None] * len(points)
    failures = []
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            futures = {pool.submit(work, item): item for item in enumerate(points)}
            for fut, (idx, (gain_db, theta_tr)) in futures.items():
                try:
                    results[idx] = fut.result()
                except Exception as exc:
                    failures.append({"theta_tr": theta_tr, "gain_db": gain_db,
                                     "error": str(exc)})
    else:
        for item in enumerate(points):
            idx, (gain_db, theta_tr) = item
            try:
                results[idx] = work(item)
            except Exception as exc:
                failures.append({"theta_tr": theta_tr, "gain_db": gain_db,
                                 "error": str(exc)})

    rows = []
    point_dicts = []
    for (gain_db, theta_tr), pt in zip(points, results):
        if pt is None:
            rows.append((theta_tr * config.round_trip_time, gain_db,
                         float("nan"), float("nan")))
            continue
        rows.append((pt.theta_tr * config.round_trip_time, pt.gain_db,
                     pt.c_stm, pt.c_pc))
        point_dicts.append({
            "theta_tr": pt.theta_tr,
            "theta_int_s": pt.theta_tr * config.round_trip_time,
            "gain_db": pt.gain_db,
            "c_stm": pt.c_stm,
            "c_pc": pt.c_pc,
            "stm_per_delay": {str(k): v for k, v in pt.stm_per_delay.items()},
            "pc_per_delay": {str(k): v for k, v in pt.pc_per_delay.items()},
        })

    outdir = Path(config.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    _write_csv(outdir / "capacities.csv",
               ["theta_int", "gain_db", "c_stm", "c_pc"], rows)
    report = RunReport(
        command="sweep",
        config=config.to_dict(),
        results={"points": point_dicts, "dense_theta": dense_theta},
        failures=failures,
        wall_time_s=time.perf_counter() - t0,
    )
    report.save(outdir / "report.json")
    return report


# ---------------------------------------------------------------------------
# Digit corpus handling
# ---------------------------------------------------------------------------

def _resolve_corpus(config: ExperimentConfig) -> list[DigitSample]:
    if config.corpus == "synthetic":
        return speech.synth_corpus(config.n_speakers, config.n_utterances,
                                   seed=config.corpus_seed)
    return speech.load_corpus(config.corpus)


def validate_corpus(samples: list[DigitSample]) -> tuple[list[str], int]:
    """Check the utterance grid is complete; returns (speakers, n_utterances).

    Every (digit, speaker) pair must contribute utterances 0..U-1 exactly
    once; anything else raises with the explicit list of gaps.
    """
    if not samples:
        raise CorpusError("empty corpus")
    speakers = sorted({s.speaker for s in samples})
    n_utt = max(s.utterance for s in samples) + 1
    expected = set(range(n_utt))
    gaps = []
    for digit in range(10):
        for spk in speakers:
            got = sorted(s.utterance for s in samples
                         if s.label == digit and s.speaker == spk)
            if got != sorted(expected):
                missing = sorted(expected - set(got))
                extra = sorted(set(got) - expected) + [
                    u for u in expected if got.count(u) > 1]
                gaps.append(f"digit {digit} speaker {spk}: "
                            f"missing {missing}, unexpected {extra}")
    if gaps:
        raise CorpusError(
            "corpus is not a complete digits x speakers x utterances grid:\n  "
            + "\n  ".join(gaps)
        )
    return speakers, n_utt


def louo_folds(samples: list[DigitSample]) -> list[tuple[list[int], list[int]]]:
    """Leave-one-utterance-out folds over sample indices.

    Fold u tests every sample whose utterance index is u and trains on the
    rest, so each sample is tested exactly once across folds.
    """
    _, n_utt = validate_corpus(samples)
    folds = []
    for u in range(n_utt):
        test = [i for i, s in enumerate(samples) if s.utterance == u]
        train = [i for i, s in enumerate(samples) if s.utterance != u]
        folds.append((train, test))
    return folds


def _masked_inputs(samples: list[DigitSample],
                   config: ExperimentConfig) -> tuple[list[np.ndarray], MaskMatrix]:
    mask = speech.make_mask(config.n_theta, speech.N_FEATURES, config.mask_seed)
    rows = [speech.preprocess_sample(s, mask, per_digit=config.per_digit_norm)
            for s in samples]
    return rows, mask


def _reservoir_unit_matrices(config: ExperimentConfig,
                             rows: list[np.ndarray]) -> dict[int, np.ndarray]:
    """Reservoir output matrix (n * n_theta rows, one column per sound unit)
    for every configured n, from as few engine runs as possible.

    Sample instants for a divisor n are a subset of those for the largest n
    whenever the offsets line up, in which case smaller-n matrices are row
    slices of the same run; otherwise the point is rerun with the identical
    noise seed (the trajectory does not depend on where it is sampled).
    """
    all_units = np.concatenate(rows, axis=0)
    interval = config.digit_theta_tr * config.round_trip_time
    params = config.ring_params(config.digit_gain_db, config.digit_dt_divisor)
    spi = steps_per_interval(interval, params)
    n_max = max(config.n_grid)

    base = run_reservoir(all_units, interval, n_max, params,
                         seed=config.noise_seed, group=1,
                         warmup_intervals=config.digit_warmup_intervals)
    offs_max = sample_offsets(spi, n_max)
    matrices: dict[int, np.ndarray] = {}
    for n in sorted(set(config.n_grid)):
        offs_n = sample_offsets(spi, n)
        pos = np.searchsorted(offs_max, offs_n)
        if pos.max() < offs_max.size and np.array_equal(offs_max[pos], offs_n):
            sub = OutputMatrix(np.ascontiguousarray(base.data[pos]), n, 1,
                               interval, params.gain_db, config.noise_seed)
        else:
            sub = run_reservoir(all_units, interval, n, params,
                                seed=config.noise_seed, group=1,
                                warmup_intervals=config.digit_warmup_intervals)
        matrices[n] = sub.regroup(config.n_theta).data
    return matrices


def _unit_slices(rows: list[np.ndarray]) -> list[slice]:
    bounds = np.concatenate([[0], np.cumsum([r.shape[0] for r in rows])])
    return [slice(int(bounds[i]), int(bounds[i + 1])) for i in range(len(rows))]


def _classify_folds(V: np.ndarray, samples: list[DigitSample],
                    slices: list[slice],
                    folds: list[tuple[list[int], list[int]]],
                    ridge: float) -> tuple[list[float], list[np.ndarray]]:
    """Per-fold accuracy and confusion for one state matrix V.

    Readouts are trained on per-unit one-hot targets over the training
    utterances; each test digit is the argmax of its units' mean output, ties
    resolved toward the lower digit.
    """
    unit_labels = np.concatenate(
        [np.full(s.stop - s.start, smp.label)
         for s, smp in zip(slices, samples)]
    )
    accuracies = []
    confusions = []
    for train_idx, test_idx in folds:
        cols = np.concatenate([np.arange(slices[i].start, slices[i].stop)
                               for i in train_idx])
        Y = readout.one_hot_targets(unit_labels[cols])
        W = readout.train(V[:, cols], Y, ridge=ridge)
        confusion = np.zeros((10, 10), dtype=np.int64)
        correct = 0
        for i in test_idx:
            pred = readout.vote(readout.predict(W, V[:, slices[i]]))
            confusion[samples[i].label, pred] += 1
            correct += pred == samples[i].label
        accuracies.append(correct / len(test_idx))
        confusions.append(confusion)
    return accuracies, confusions


def _accuracy_rows(per_n: dict[int, list[float]], n_features: dict[int, int]):
    rows = []
    for n in sorted(per_n):
        for fold, acc in enumerate(per_n[n]):
            rows.append((n, n_features[n], fold, float(acc)))
    return rows


def _summary(per_n: dict[int, list[float]], n_features: dict[int, int]) -> list[dict]:
    out = []
    for n in sorted(per_n):
        accs = np.asarray(per_n[n], dtype=float)
        out.append({
            "n": n,
            "n_outputs": n_features[n],
            "fold_accuracies": [float(a) for a in accs],
            "mean_accuracy": float(accs.mean()),
            "std_accuracy": float(accs.std()),
        })
    return out


def run_digits(config: ExperimentConfig) -> RunReport:
    """Digit benchmark: reservoir states, LOUO folds, accuracy vs n N_theta."""
    t0 = time.perf_counter()
    samples = _resolve_corpus(config)
    folds = louo_folds(samples)
    rows, mask = _masked_inputs(samples, config)
    slices = _unit_slices(rows)
    matrices = _reservoir_unit_matrices(config, rows)

    per_n: dict[int, list[float]] = {}
    confusion_by_fold = None
    for n, V in sorted(matrices.items()):
        accs, confusions = _classify_folds(V, samples, slices, folds,
                                           config.digit_ridge)
        per_n[n] = accs
        confusion_by_fold = confusions  # kept for the largest n

    n_features = {n: n * config.n_theta for n in per_n}
    outdir = Path(config.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    _write_csv(outdir / "accuracy.csv",
               ["n", "n_outputs", "fold", "accuracy"],
               _accuracy_rows(per_n, n_features))
    for k, confusion in enumerate(confusion_by_fold):
        _write_csv(outdir / f"confusion_fold{k}.csv",
                   ["true"] + [f"pred_{d}" for d in range(10)],
                   [(d, *confusion[d].tolist()) for d in range(10)])

    report = RunReport(
        command="digits",
        config=config.to_dict(),
        results={
            "n_samples_total": len(samples),
            "n_folds": len(folds),
            "units_total": int(slices[-1].stop),
            "accuracy": _summary(per_n, n_features),
            "confusion_n": max(per_n),
        },
        wall_time_s=time.perf_counter() - t0,
    )
    report.save(outdir / "report.json")
    return report


def run_baseline(config: ExperimentConfig) -> RunReport:
    """No-reservoir control: the same folds and voting on masked inputs."""
    t0 = time.perf_counter()
    samples = _resolve_corpus(config)
    folds = louo_folds(samples)
    rows, mask = _masked_inputs(samples, config)
    slices = _unit_slices(rows)
    X = np.concatenate(rows, axis=0).T  # n_theta rows, one column per unit

    accs, confusions = _classify_folds(X, samples, slices, folds,
                                       config.digit_ridge)
    per_n = {0: accs}
    n_features = {0: config.n_theta}

    outdir = Path(config.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    _write_csv(outdir / "accuracy.csv",
               ["n", "n_outputs", "fold", "accuracy"],
               _accuracy_rows(per_n, n_features))
    report = RunReport(
        command="baseline",
        config=config.to_dict(),
        results={
            "n_samples_total": len(samples),
            "n_folds": len(folds),
            "accuracy": _summary(per_n, n_features),
            "confusion": [c.tolist() for c in confusions],
        },
        wall_time_s=time.perf_counter() - t0,
    )
    report.save(outdir / "report.json")
    return report


# ---------------------------------------------------------------------------
# Trace dump and corpus generation
# ---------------------------------------------------------------------------

def _read_drive_file(path) -> np.ndarray:
    """One control voltage per line; a single header line is tolerated."""
    text = Path(path).read_text().strip()
    if not text:
        raise ConfigurationError(f"drive file '{path}' is empty")
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    try:
        float(lines[0].split(",")[0])
    except ValueError:
        lines = lines[1:]
    if not lines:
        raise ConfigurationError(f"drive file '{path}' has no voltage rows")
    try:
        return np.array([float(ln.split(",")[0]) for ln in lines])
    except ValueError as exc:
        raise ConfigurationError(f"cannot parse drive file '{path}': {exc}") from exc


def run_simulate(config: ExperimentConfig, drive_file=None,
                 constant_voltage: float | None = None,
                 n_intervals: int = 100) -> RunReport:
    """Run the ring on an explicit drive and dump the raw trace.

    The drive is either a voltage-per-line file or a constant level held for
    ``n_intervals`` intervals.  Writes trace.csv with time,voltage_in,
    diode_out rows, one per integration step.
    """
    t0 = time.perf_counter()
    if (drive_file is None) == (constant_voltage is None):
        raise ConfigurationError(
            "simulate needs exactly one of a drive file or a constant voltage"
        )
    if drive_file is not None:
        volts = _read_drive_file(drive_file)
    else:
        if n_intervals < 1:
            raise ConfigurationError("n_intervals must be positive")
        volts = np.full(n_intervals, float(constant_voltage))

    interval = config.simulate_interval_tr * config.round_trip_time
    params = config.ring_params(config.digit_gain_db, config.digit_dt_divisor)
    trace = simulate(volts, interval, params, seed=config.noise_seed)
    readings = np.square(trace) if config.power_readout else trace
    spi = steps_per_interval(interval, params)

    rows = []
    for k in range(trace.size):
        rows.append(((k + 1) * params.dt, float(volts[k // spi]),
                     float(readings[k])))
    outdir = Path(config.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    _write_csv(outdir / "trace.csv", ["time", "voltage_in", "diode_out"], rows)
    report = RunReport(
        command="simulate",
        config=config.to_dict(),
        results={
            "n_intervals": int(volts.size),
            "n_steps": int(trace.size),
            "final_amplitude": float(trace[-1]),
        },
        wall_time_s=time.perf_counter() - t0,
    )
    report.save(outdir / "report.json")
    return report


def run_gen_synthetic(config: ExperimentConfig, corpus_dir=None) -> RunReport:
    """Generate the synthetic corpus and write WAVs plus a manifest CSV."""
    t0 = time.perf_counter()
    samples = speech.synth_corpus(config.n_speakers, config.n_utterances,
                                  seed=config.corpus_seed)
    outdir = Path(corpus_dir) if corpus_dir else Path(config.outdir) / "corpus"
    manifest = speech.write_corpus(samples, outdir)
    report = RunReport(
        command="gen-synthetic",
        config=config.to_dict(),
        results={
            "n_samples": len(samples),
            "manifest": str(manifest),
            "corpus_hash": speech.corpus_hash(samples),
        },
        wall_time_s=time.perf_counter() - t0,
    )
    Path(config.outdir).mkdir(parents=True, exist_ok=True)
    report.save(Path(config.outdir) / "report.json")
    return report
