#!/usr/bin/env python3
"""Run the full benchmark set and print a summary against the hardware
reference numbers.

Executes the capacity sweep, the spoken-digit benchmark, and its
no-reservoir control with one shared configuration, writing each run into
its own subdirectory.  With --desk the corpus and virtual-node count shrink
to the quick preset.
"""

import argparse
import time
from pathlib import Path

from ringrc.bench import (
    DEVICE_REFERENCE,
    ExperimentConfig,
    run_baseline,
    run_digits,
    run_sweep,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", type=Path, default=Path("runs"),
                    help="root directory for run outputs (default: runs/)")
    ap.add_argument("--desk", action="store_true",
                    help="quick preset: 2 speakers x 4 utterances, N_theta=50")
    ap.add_argument("--workers", type=int, default=1,
                    help="threads for the capacity sweep")
    ap.add_argument("--dense-theta", action="store_true",
                    help="sweep quarter-steps of T_r (4x more points)")
    args = ap.parse_args()

    make = ExperimentConfig.desk if args.desk else ExperimentConfig
    t0 = time.perf_counter()

    sweep = run_sweep(
        make(outdir=str(args.outdir / "sweep"), workers=args.workers),
        dense_theta=args.dense_theta,
    )
    points = sweep.results["points"]
    best_stm = max(points, key=lambda p: p["c_stm"])
    best_pc = max(points, key=lambda p: p["c_pc"])
    print(f"sweep      {len(points)} points in {sweep.wall_time_s:.0f}s")
    print(f"  C_STM max {best_stm['c_stm']:.2f} at "
          f"theta={best_stm['theta_tr']}*T_r, G={best_stm['gain_db']}dB "
          f"(device: {DEVICE_REFERENCE['c_stm_max']})")
    print(f"  C_PC  max {best_pc['c_pc']:.2f} at "
          f"theta={best_pc['theta_tr']}*T_r, G={best_pc['gain_db']}dB "
          f"(device: {DEVICE_REFERENCE['c_pc_max']})")

    digits = run_digits(make(outdir=str(args.outdir / "digits")))
    print(f"digits     {digits.results['n_samples_total']} samples, "
          f"{digits.results['n_folds']} folds in {digits.wall_time_s:.0f}s")
    for entry in digits.results["accuracy"]:
        print(f"  {entry['n_outputs']:>4} outputs: "
              f"{entry['mean_accuracy']:.1%} +- {entry['std_accuracy']:.1%}")
    print(f"  (device: {DEVICE_REFERENCE['digit_accuracy_400_outputs']:.0%} "
          f"at 400 outputs, saturation "
          f"{DEVICE_REFERENCE['digit_accuracy_saturation']:.0%})")

    baseline = run_baseline(make(outdir=str(args.outdir / "baseline")))
    entry = baseline.results["accuracy"][0]
    print(f"baseline   {entry['mean_accuracy']:.1%} +- "
          f"{entry['std_accuracy']:.1%} in {baseline.wall_time_s:.0f}s "
          f"(device: {DEVICE_REFERENCE['baseline_accuracy']:.1%} +- "
          f"{DEVICE_REFERENCE['baseline_accuracy_std']:.1%}, chance "
          f"{DEVICE_REFERENCE['chance_accuracy']:.0%})")

    print(f"total      {time.perf_counter() - t0:.0f}s; outputs under "
          f"{args.outdir}/")


if __name__ == "__main__":
    main()
