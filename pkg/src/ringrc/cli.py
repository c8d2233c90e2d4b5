"""Command-line entry point for the ring benchmark harness.

Subcommands: sweep, digits, baseline, simulate, gen-synthetic.  Every
ExperimentConfig field is exposed as a flag; a JSON config file can seed the
run, with explicit flags taking precedence.  Exit codes: 0 success, 1
validation error, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from . import bench
from .bench import ExperimentConfig
from .multiplex import InputError
from .ring import ConfigurationError
from .speech import CorpusError

_VALIDATION_ERRORS = (ConfigurationError, InputError, CorpusError,
                      FileNotFoundError, NotADirectoryError)


def _flag(name: str) -> str:
    return "--" + name.replace("_", "-")


def _add_config_flags(parser: argparse.ArgumentParser):
    """One flag per ExperimentConfig field, defaulting to 'not provided'."""
    for f in dataclasses.fields(ExperimentConfig):
        default = f.default
        if isinstance(default, bool):
            parser.add_argument(_flag(f.name), dest=f.name, default=None,
                                action=argparse.BooleanOptionalAction,
                                help=f"(default {default})")
        elif isinstance(default, tuple):
            elem = type(default[0])
            parser.add_argument(
                _flag(f.name), dest=f.name, default=None,
                type=lambda s, e=elem: tuple(e(v) for v in s.split(",")),
                metavar="V1,V2,...",
                help=f"comma-separated (default {','.join(map(str, default))})",
            )
        else:
            parser.add_argument(_flag(f.name), dest=f.name, default=None,
                                type=type(default),
                                help=f"(default {default})")


def _build_config(args) -> ExperimentConfig:
    if args.config:
        config = ExperimentConfig.load(args.config)
    elif args.desk:
        config = ExperimentConfig.desk()
    else:
        config = ExperimentConfig()
    overrides = {
        f.name: getattr(args, f.name)
        for f in dataclasses.fields(ExperimentConfig)
        if getattr(args, f.name, None) is not None
    }
    if args.desk and args.config:
        raise ConfigurationError("--desk and --config are mutually exclusive")
    return config.replace(**overrides) if overrides else config


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringrc",
        description="Spin-wave active-ring reservoir: benchmarks and traces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    specs = {
        "sweep": "capacity over the (theta_int, gain) grid -> capacities.csv",
        "digits": "spoken-digit benchmark with LOUO folds -> accuracy.csv",
        "baseline": "no-reservoir digit control -> accuracy.csv",
        "simulate": "dump a raw drive/readout trace -> trace.csv",
        "gen-synthetic": "write the synthetic digit corpus as WAVs + manifest",
    }
    parsers = {}
    for name, help_text in specs.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="JSON config file (flags override it)")
        p.add_argument("--desk", action="store_true",
                       help="desk-scale preset (2 speakers x 4 utterances, "
                            "N_theta=50)")
        _add_config_flags(p)
        parsers[name] = p

    parsers["sweep"].add_argument(
        "--dense-theta", action="store_true",
        help="sweep quarter-steps of T_r instead of the (m+1/4) grid")
    parsers["simulate"].add_argument("--drive", help="voltage-per-line file")
    parsers["simulate"].add_argument("--constant-voltage", type=float,
                                     help="hold one level for --n-intervals")
    parsers["simulate"].add_argument("--n-intervals", type=int, default=100)
    parsers["gen-synthetic"].add_argument(
        "--corpus-dir", help="WAV output directory (default <outdir>/corpus)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _build_config(args)
        if args.command == "sweep":
            report = bench.run_sweep(config, dense_theta=args.dense_theta)
            if report.failures:
                for failure in report.failures:
                    print(f"sweep point failed: {failure}", file=sys.stderr)
                return 2
            print(f"sweep: {len(report.results['points'])} points -> "
                  f"{config.outdir}")
        elif args.command == "digits":
            report = bench.run_digits(config)
            for entry in report.results["accuracy"]:
                print(f"digits: n_outputs={entry['n_outputs']} "
                      f"accuracy={entry['mean_accuracy']:.3f}"
                      f"+-{entry['std_accuracy']:.3f}")
            print(f"digits: results -> {config.outdir}")
        elif args.command == "baseline":
            report = bench.run_baseline(config)
            entry = report.results["accuracy"][0]
            print(f"baseline: accuracy={entry['mean_accuracy']:.3f}"
                  f"+-{entry['std_accuracy']:.3f} -> {config.outdir}")
        elif args.command == "simulate":
            report = bench.run_simulate(config, drive_file=args.drive,
                                        constant_voltage=args.constant_voltage,
                                        n_intervals=args.n_intervals)
            print(f"simulate: {report.results['n_steps']} steps, final "
                  f"amplitude {report.results['final_amplitude']:.6g} -> "
                  f"{config.outdir}")
        elif args.command == "gen-synthetic":
            report = bench.run_gen_synthetic(config, corpus_dir=args.corpus_dir)
            print(f"gen-synthetic: {report.results['n_samples']} samples -> "
                  f"{report.results['manifest']}")
        return 0
    except _VALIDATION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # runtime failure
        print(f"runtime failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
