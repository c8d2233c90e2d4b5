#!/usr/bin/env python3
"""Render benchmark CSV outputs as figures.

Reads the files a run directory contains (capacities.csv from `ringrc sweep`,
accuracy.csv from `ringrc digits` / `ringrc baseline`, trace.csv from
`ringrc simulate`) and writes one PNG per file found.  Requires matplotlib
(install the `plot` extra).
"""

import argparse
import csv
import sys
from collections import defaultdict
from pathlib import Path

import numpy as np

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    sys.exit("matplotlib is required: pip install 'ringrc[plot]'")


def read_csv(path):
    with open(path, newline="") as f:
        rows = list(csv.DictReader(f))
    return rows


def plot_capacities(path, outdir):
    rows = read_csv(path)
    by_gain = defaultdict(list)
    for r in rows:
        by_gain[float(r["gain_db"])].append(
            (float(r["theta_int"]), float(r["c_stm"]), float(r["c_pc"])))

    fig, axes = plt.subplots(1, 2, figsize=(9, 3.6), sharex=True)
    for gain in sorted(by_gain):
        pts = np.array(sorted(by_gain[gain]))
        theta_us = pts[:, 0] * 1e6
        axes[0].plot(theta_us, pts[:, 1], "o-", ms=4, label=f"{gain} dB")
        axes[1].plot(theta_us, pts[:, 2], "o-", ms=4, label=f"{gain} dB")
    axes[0].set_ylabel("C_STM")
    axes[1].set_ylabel("C_PC")
    for ax in axes:
        ax.set_xlabel("input interval (us)")
        ax.grid(alpha=0.3)
    axes[0].legend(title="gain", fontsize=8)
    fig.tight_layout()
    out = outdir / "capacities.png"
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


def plot_accuracy(path, outdir):
    rows = read_csv(path)
    by_n = defaultdict(list)
    for r in rows:
        by_n[int(r["n_outputs"])].append(float(r["accuracy"]))

    n_outputs = sorted(by_n)
    means = [np.mean(by_n[n]) for n in n_outputs]
    stds = [np.std(by_n[n]) for n in n_outputs]

    fig, ax = plt.subplots(figsize=(4.8, 3.4))
    ax.errorbar(n_outputs, means, yerr=stds, fmt="o-", capsize=3)
    ax.set_xlabel("outputs per sound unit (n N_theta)")
    ax.set_ylabel("fold accuracy")
    ax.set_ylim(0, 1)
    ax.axhline(0.1, color="gray", ls=":", lw=1, label="chance")
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    out = outdir / "accuracy.png"
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


def plot_trace(path, outdir):
    rows = read_csv(path)
    t = np.array([float(r["time"]) for r in rows]) * 1e6
    v = np.array([float(r["voltage_in"]) for r in rows])
    d = np.array([float(r["diode_out"]) for r in rows])

    fig, axes = plt.subplots(2, 1, figsize=(7, 4.2), sharex=True)
    axes[0].plot(t, v, lw=0.8)
    axes[0].set_ylabel("drive (V)")
    axes[1].plot(t, d, lw=0.8)
    axes[1].set_ylabel("diode reading")
    axes[1].set_xlabel("time (us)")
    for ax in axes:
        ax.grid(alpha=0.3)
    fig.tight_layout()
    out = outdir / "trace.png"
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("rundir", type=Path, help="directory with benchmark CSVs")
    ap.add_argument("--out", type=Path, default=None,
                    help="figure directory (default: the run directory)")
    args = ap.parse_args()

    outdir = args.out or args.rundir
    outdir.mkdir(parents=True, exist_ok=True)

    found = False
    for name, renderer in (("capacities.csv", plot_capacities),
                           ("accuracy.csv", plot_accuracy),
                           ("trace.csv", plot_trace)):
        path = args.rundir / name
        if path.exists():
            renderer(path, outdir)
            found = True
    if not found:
        sys.exit(f"no benchmark CSVs found in {args.rundir}")


if __name__ == "__main__":
    main()
