"""Command-line harness: run, compare, validate and sweep scenarios.

Exit codes: 0 success, 1 configuration error, 2 diverged simulation.
"""

from __future__ import annotations

import argparse
import copy
import sys
from pathlib import Path

import yaml

from .config import ConfigError, config_from_dict, load_config, validate_config
from .scenarios import compare_variants, lift_report, run_scenario

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DIVERGED = 2


def _print_metrics(record) -> None:
    print(f"run: {record.name} mode={record.mode} seed={record.seed}")
    print(f"rows: {record.rows.shape[0]}")
    for key in sorted(record.metrics):
        print(f"{key} = {record.metrics[key]!r}")
    for key in sorted(record.extra_metrics):
        print(f"{key} = {record.extra_metrics[key]!r}")


def _cmd_run(args: argparse.Namespace) -> int:
    try:
        config = load_config(args.config)
    except ConfigError as exc:
        for message in exc.errors:
            print(f"config error: {message}", file=sys.stderr)
        return EXIT_CONFIG
    out = args.out if args.out else f"{config.name}_run.csv"
    record = run_scenario(config, seed=args.seed, out=out, duration=args.duration)
    _print_metrics(record)
    print(f"csv: {out}")
    if record.status != 0:
        print("run diverged", file=sys.stderr)
        return EXIT_DIVERGED
    return EXIT_OK


def _cmd_validate(args: argparse.Namespace) -> int:
    errors = validate_config(args.config)
    if errors:
        for message in errors:
            print(f"config error: {message}", file=sys.stderr)
        return EXIT_CONFIG
    print("ok")
    return EXIT_OK


def _cmd_compare(args: argparse.Namespace) -> int:
    try:
        config_a = load_config(args.config_a)
        config_b = load_config(args.config_b)
    except ConfigError as exc:
        for message in exc.errors:
            print(f"config error: {message}", file=sys.stderr)
        return EXIT_CONFIG
    report = compare_variants(config_a, config_b)
    print(f"a: {config_a.name}    b: {config_b.name}")
    for metric, values in report.items():
        print(
            f"{metric}: a={values['a']!r} b={values['b']!r} "
            f"ratio={values['ratio']!r}"
        )
    print(f"note: {lift_report(config_a.vehicle)['note']}")
    return EXIT_OK


def _set_by_path(raw: dict, dotted: str, value) -> None:
    keys = dotted.split(".")
    node = raw
    for key in keys[:-1]:
        node = node.setdefault(key, {})
        if not isinstance(node, dict):
            raise ConfigError([f"{dotted}: path crosses a non-mapping node"])
    node[keys[-1]] = value


def _cmd_sweep(args: argparse.Namespace) -> int:
    path = Path(args.config)
    try:
        base_raw = yaml.safe_load(path.read_text())
    except yaml.YAMLError as exc:
        print(f"config error: invalid YAML: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if base_raw is None:
        base_raw = {}
    out_dir = Path(args.out) if args.out else Path(".")
    out_dir.mkdir(parents=True, exist_ok=True)

    worst = EXIT_OK
    leaf = args.param.split(".")[-1]
    for text in args.values.split(","):
        value = yaml.safe_load(text)
        raw = copy.deepcopy(base_raw)
        try:
            _set_by_path(raw, args.param, value)
            config = config_from_dict(raw)
        except ConfigError as exc:
            for message in exc.errors:
                print(f"config error ({text}): {message}", file=sys.stderr)
            return EXIT_CONFIG
        out = out_dir / f"{config.name}__{leaf}_{text.strip()}.csv"
        record = run_scenario(config, seed=args.seed, out=out, duration=args.duration)
        summary = " ".join(
            f"{key}={record.metrics[key]!r}" for key in sorted(record.metrics)
        )
        status = "ok" if record.status == 0 else "diverged"
        print(f"{args.param}={text.strip()} [{status}] {summary}")
        if record.status != 0:
            worst = EXIT_DIVERGED
    return worst


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="flapsim",
        description="Flight simulator for a four-winged flapping micro air vehicle",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario and write its CSV")
    p_run.add_argument("config", help="scenario file")
    p_run.add_argument("--seed", type=int, default=None, help="override the config seed")
    p_run.add_argument("--out", default=None, help="CSV output path")
    p_run.add_argument(
        "--duration", type=float, default=None, help="override the run duration [s]"
    )
    p_run.set_defaults(func=_cmd_run)

    p_val = sub.add_parser("validate", help="check a scenario file")
    p_val.add_argument("config")
    p_val.set_defaults(func=_cmd_validate)

    p_cmp = sub.add_parser("compare", help="compare two vehicle variants")
    p_cmp.add_argument("config_a")
    p_cmp.add_argument("config_b")
    p_cmp.set_defaults(func=_cmd_compare)

    p_sweep = sub.add_parser("sweep", help="run a scenario over a parameter sweep")
    p_sweep.add_argument("config")
    p_sweep.add_argument(
        "--param", required=True, help="dotted config path, e.g. control.altitude_kp_n_per_m"
    )
    p_sweep.add_argument(
        "--values", required=True, help="comma-separated values, parsed as YAML scalars"
    )
    p_sweep.add_argument("--seed", type=int, default=None)
    p_sweep.add_argument("--duration", type=float, default=None)
    p_sweep.add_argument("--out", default=None, help="output directory for the CSVs")
    p_sweep.set_defaults(func=_cmd_sweep)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
