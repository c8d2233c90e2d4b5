"""End-to-end acceptance checks for the simulator and benchmark harness.

Each test prints a single PASS/FAIL line with the measured values next to
the thresholds it enforces.  Capacity and accuracy targets are trend and
property checks; the hardware reference numbers shipped in
``DEVICE_REFERENCE`` are printed alongside for comparison, never asserted.
"""

import math
import time

import numpy as np
import pytest

from ringrc import speech
from ringrc.bench import (
    DEVICE_REFERENCE,
    ExperimentConfig,
    capacity_point,
    louo_folds,
    run_baseline,
    run_digits,
    run_gen_synthetic,
    run_simulate,
    run_sweep,
)
from ringrc.readout import train
from ringrc.ring import simulate
from ringrc.speech import N_FEATURES, UNIT_LEN, spectral_features

TR = 236e-9


def _verdict(label: str, ok: bool, detail: str):
    print(f"{'PASS' if ok else 'FAIL'} {label}: {detail}")
    assert ok, f"{label}: {detail}"


# ---------------------------------------------------------------------------
# Shared expensive runs
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def default_sweep(tmp_path_factory):
    """One full default-grid capacity sweep, shared by the capacity checks."""
    outdir = tmp_path_factory.mktemp("sweep")
    config = ExperimentConfig(outdir=str(outdir))
    t0 = time.perf_counter()
    report = run_sweep(config)
    elapsed = time.perf_counter() - t0
    assert not report.failures, report.failures
    return {"config": config, "points": report.results["points"],
            "elapsed": elapsed}


@pytest.fixture(scope="module")
def default_digit_runs(tmp_path_factory):
    """Full-corpus digit benchmark and its no-reservoir control."""
    config = ExperimentConfig(
        outdir=str(tmp_path_factory.mktemp("digits")))
    t0 = time.perf_counter()
    digits = run_digits(config)
    baseline = run_baseline(config.replace(
        outdir=str(tmp_path_factory.mktemp("baseline"))))
    elapsed = time.perf_counter() - t0
    return {"config": config, "digits": digits.results,
            "baseline": baseline.results, "elapsed": elapsed}


# ---------------------------------------------------------------------------
# Ring physics
# ---------------------------------------------------------------------------

def test_fixed_point_amplitude():
    """Settled zero-noise amplitude matches sat * sqrt(g - 1) to 0.1%."""
    config = ExperimentConfig(noise_rms=0.0)
    t0 = time.perf_counter()
    worst = 0.0
    details = []
    for g in (1.06, 1.2, 1.5):
        params = config.ring_params(20 * math.log10(g), 64)
        trace = simulate(np.full(300, params.v_high), TR, params,
                         start_amplitude=0.05)
        settled = trace[-20 * params.delay_steps:].mean()
        expected = params.sat_amplitude * math.sqrt(g - 1.0)
        rel = abs(settled - expected) / expected
        worst = max(worst, rel)
        details.append(f"g={g} rel_err={rel:.2e}")
    elapsed = time.perf_counter() - t0
    _verdict("fixed-point amplitude",
             worst < 1e-3 and elapsed < 1.0,
             f"{'; '.join(details)}; worst {worst:.2e} < 1e-3, "
             f"{elapsed:.2f}s < 1s")


def test_integration_step_convergence():
    """Halving dt moves the operating-point capacities by < 2% relative."""
    config = ExperimentConfig()
    theta, gain = config.digit_theta_tr, config.digit_gain_db
    t0 = time.perf_counter()
    coarse = capacity_point(config, theta, gain)
    fine = capacity_point(config, theta, gain,
                          dt_divisor=2 * config.sweep_dt_divisor)
    elapsed = time.perf_counter() - t0
    d_stm = abs(fine.c_stm - coarse.c_stm) / coarse.c_stm
    d_pc = abs(fine.c_pc - coarse.c_pc) / coarse.c_pc
    _verdict("integration-step convergence",
             d_stm < 0.02 and d_pc < 0.02 and elapsed < 300.0,
             f"theta={theta}*T_r gain={gain}dB: C_STM {coarse.c_stm:.3f}->"
             f"{fine.c_stm:.3f} ({d_stm:.2%}), C_PC {coarse.c_pc:.3f}->"
             f"{fine.c_pc:.3f} ({d_pc:.2%}), both < 2%, {elapsed:.0f}s < 300s")


# ---------------------------------------------------------------------------
# Capacity structure
# ---------------------------------------------------------------------------

def test_nonlinearity_necessity(default_sweep):
    """Parity needs the nonlinearity: the identity-feedback ring scores
    C_PC < 0.3 where the full model reaches C_PC >= 0.8."""
    points = default_sweep["points"]
    best = max(points, key=lambda p: p["c_pc"])
    linear = capacity_point(default_sweep["config"], best["theta_tr"],
                            gain_db=-0.1, linear_feedback=True)
    ok = (linear.c_pc < 0.3 and best["c_pc"] >= 0.8
          and default_sweep["elapsed"] < 600.0)
    _verdict("nonlinearity necessity", ok,
             f"linear C_PC={linear.c_pc:.3f} < 0.3; full C_PC="
             f"{best['c_pc']:.3f} >= 0.8 at theta={best['theta_tr']}*T_r, "
             f"G={best['gain_db']}dB (device reference "
             f"{DEVICE_REFERENCE['c_pc_max']}); sweep "
             f"{default_sweep['elapsed']:.0f}s < 600s")


def test_capacity_trends(default_sweep):
    """Recall capacity decays with slower multiplexing (0.2 tolerance band);
    the parity envelope peaks strictly inside the interval grid."""
    config = default_sweep["config"]
    points = default_sweep["points"]
    thetas = list(config.theta_grid_tr)

    worst_rise = -np.inf
    for gain in config.gain_grid_db:
        curve = [p["c_stm"] for p in points if p["gain_db"] == gain]
        assert len(curve) == len(thetas)
        running_min = curve[0]
        for value in curve[1:]:
            worst_rise = max(worst_rise, value - running_min)
            running_min = min(running_min, value)

    envelope = [max(p["c_pc"] for p in points if p["theta_tr"] == th)
                for th in thetas]
    peak = int(np.argmax(envelope))
    interior = 0 < peak < len(thetas) - 1
    margin = envelope[peak] - max(envelope[0], envelope[-1])

    ok = worst_rise <= 0.2 and interior
    _verdict("capacity trends", ok,
             f"max C_STM rise {worst_rise:+.3f} within 0.2 band; C_PC "
             f"envelope peak at theta={thetas[peak]}*T_r "
             f"({envelope[peak]:.2f}, edges {envelope[0]:.2f}/"
             f"{envelope[-1]:.2f}, margin {margin:+.2f}) is interior "
             f"(device reference C_STM max {DEVICE_REFERENCE['c_stm_max']}, "
             f"C_PC max {DEVICE_REFERENCE['c_pc_max']})")


def test_quarter_offset_synchronization():
    """Offsetting the interval to 1.25 T_r breaks the degeneracy of
    loop-synchronous multiplexing and recovers recall capacity."""
    config = ExperimentConfig()
    t0 = time.perf_counter()
    synced = capacity_point(config, 1.0, 0.25)
    offset = capacity_point(config, 1.25, 0.25)
    elapsed = time.perf_counter() - t0
    gap = offset.c_stm - synced.c_stm
    _verdict("quarter-offset synchronization",
             gap > 0 and elapsed < 120.0,
             f"C_STM(1.25 T_r)={offset.c_stm:.3f} > C_STM(1.0 T_r)="
             f"{synced.c_stm:.3f} at G=0.25dB (gap {gap:+.3f}), "
             f"{elapsed:.0f}s < 120s")


# ---------------------------------------------------------------------------
# Readout and preprocessing oracles
# ---------------------------------------------------------------------------

def test_readout_recovery():
    """Training recovers a planted weight matrix to 1e-8 and inverts the
    identity exactly."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(1234)
    W0 = rng.standard_normal((4, 12))
    V = rng.standard_normal((12, 400))
    err = np.max(np.abs(train(V, W0 @ V).W - W0))

    Y = rng.standard_normal((3, 7))
    exact = np.array_equal(train(np.eye(7), Y).W, Y)
    elapsed = time.perf_counter() - t0
    _verdict("readout recovery",
             err < 1e-8 and exact and elapsed < 1.0,
             f"planted-weight error {err:.2e} < 1e-8; identity inversion "
             f"exact: {exact}; {elapsed:.2f}s < 1s")


def test_feature_map_linearity():
    """Spectral features are additive and homogeneous to 1e-9 and map
    250-sample units to 126 values."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(99)
    worst = 0.0
    for _ in range(100):
        a = rng.standard_normal(UNIT_LEN)
        b = rng.standard_normal(UNIT_LEN)
        c = rng.uniform(-3, 3)
        add = np.max(np.abs(spectral_features(a + b)
                            - spectral_features(a) - spectral_features(b)))
        hom = np.max(np.abs(spectral_features(c * a)
                            - c * spectral_features(a)))
        worst = max(worst, add, hom)
    n_out = spectral_features(np.zeros(UNIT_LEN)).size
    elapsed = time.perf_counter() - t0
    _verdict("feature-map linearity",
             worst < 1e-9 and n_out == N_FEATURES == 126 and elapsed < 1.0,
             f"worst deviation {worst:.2e} < 1e-9 over 100 pairs; "
             f"{UNIT_LEN} -> {n_out} features; {elapsed:.2f}s < 1s")


# ---------------------------------------------------------------------------
# Digit pipeline
# ---------------------------------------------------------------------------

def test_digit_pipeline(default_digit_runs):
    """Full synthetic corpus: exhaustive folds, a >= 20-point margin over
    the no-reservoir control at 400 outputs, and no accuracy collapse as
    outputs grow from 100 to 400."""
    config = default_digit_runs["config"]
    samples = speech.synth_corpus(config.n_speakers, config.n_utterances,
                                  seed=config.corpus_seed)
    folds = louo_folds(samples)
    tested = sorted(i for _, test in folds for i in test)
    exhaustive = tested == list(range(len(samples)))

    acc = {e["n_outputs"]: e["mean_accuracy"]
           for e in default_digit_runs["digits"]["accuracy"]}
    base = default_digit_runs["baseline"]["accuracy"][0]["mean_accuracy"]
    gap = acc[400] - base
    trend = acc[400] - acc[100]
    elapsed = default_digit_runs["elapsed"]

    ok = (exhaustive and gap >= 0.20 and trend >= -0.02 and elapsed < 1800.0)
    _verdict("digit pipeline", ok,
             f"folds exhaustive over {len(samples)} samples: {exhaustive}; "
             f"reservoir@400={acc[400]:.1%} vs control={base:.1%} "
             f"(gap {gap:+.1%} >= 20%); accuracy 100->400 outputs "
             f"{acc[100]:.1%}->{acc[400]:.1%} (change {trend:+.1%} >= -2%); "
             f"{elapsed:.0f}s < 1800s (device references: control "
             f"{DEVICE_REFERENCE['baseline_accuracy']:.1%}+-"
             f"{DEVICE_REFERENCE['baseline_accuracy_std']:.1%}, reservoir "
             f"{DEVICE_REFERENCE['digit_accuracy_400_outputs']:.0%}@400, "
             f"saturating at {DEVICE_REFERENCE['digit_accuracy_saturation']:.0%})")


# ---------------------------------------------------------------------------
# Reproducibility
# ---------------------------------------------------------------------------

def test_output_determinism(tmp_path):
    """Every command rerun with an identical config writes byte-identical
    CSV files."""
    small_sweep = dict(theta_grid_tr=(1.25, 2.25), gain_grid_db=(0.35,),
                       sweep_dt_divisor=32, n_samples=4, d_max=4,
                       washout=30, train=60, test=60)
    small_digits = dict(n_speakers=2, n_utterances=2, n_theta=16,
                        n_grid=(1, 2), digit_warmup_intervals=8)

    def run_all(root):
        cfg = ExperimentConfig(outdir=str(root / "sweep"), **small_sweep)
        run_sweep(cfg)
        dcfg = ExperimentConfig(outdir=str(root / "digits"), **small_digits)
        run_digits(dcfg)
        run_baseline(dcfg.replace(outdir=str(root / "baseline")))
        scfg = ExperimentConfig(outdir=str(root / "sim"))
        run_simulate(scfg, constant_voltage=scfg.v_high, n_intervals=50)
        gcfg = ExperimentConfig(outdir=str(root / "gen"), n_speakers=1,
                                n_utterances=1)
        run_gen_synthetic(gcfg)

    run_all(tmp_path / "first")
    run_all(tmp_path / "second")

    compared = []
    mismatched = []
    for path in sorted((tmp_path / "first").rglob("*")):
        if path.suffix not in (".csv", ".wav"):
            continue
        twin = tmp_path / "second" / path.relative_to(tmp_path / "first")
        compared.append(path.name)
        if path.read_bytes() != twin.read_bytes():
            mismatched.append(str(path.relative_to(tmp_path / "first")))

    n_csv = sum(name.endswith(".csv") for name in compared)
    _verdict("output determinism",
             n_csv >= 6 and not mismatched,
             f"{n_csv} CSV and {len(compared) - n_csv} WAV outputs from 5 "
             f"commands byte-identical across reruns"
             + (f"; MISMATCHED: {mismatched}" if mismatched else ""))
