"""Command-line entry point.

    h2plan run      --instance DIR --scenario LIST --out DIR [--mode ...]
    h2plan export   --instance DIR --scenario LIST --out DIR
    h2plan validate --instance DIR

Exit codes: 0 success (validate: no violations), 1 usage/data error,
2 at least one scenario did not solve to optimality.

All behavior is controlled by flags; the single environment variable
H2PLAN_LOG (debug|info|warning) selects log verbosity.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .core.io import InstanceParseError, load_instance
from .core.validate import ValidationError, validate_network
from .expansion import apply_scenario, build_handle
from .lp.mps import export_standard
from .lp.problem import SolveOptions
from .reporting import build_report, emit_suite_csv
from .scenario import resolve, run_suite

log = logging.getLogger("h2plan")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_OPTIMAL = 2


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="h2plan",
        description="Electricity + hydrogen expansion planning with "
                    "gas-pipeline conversion to hydrogen.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scenarios=True):
        p.add_argument("--instance", required=True, help="instance directory")
        if scenarios:
            p.add_argument("--scenario", required=True,
                           help="comma-separated preset names or scenario files")
            p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--tol", type=float, default=None,
                       help="feasibility/optimality tolerance override")
        p.add_argument("--seed", type=int, default=None,
                       help="seed for fixture generators (test hook)")
        p.add_argument("--quiet", action="store_true",
                       help="suppress per-scenario summary lines")

    run_p = sub.add_parser("run", help="solve scenarios and write reports")
    common(run_p)
    run_p.add_argument("--mode", choices=("embedded", "export"),
                       default="embedded",
                       help="embedded: solve in-process; export: write LP "
                            "files instead of solving")

    export_p = sub.add_parser("export", help="write MPS files, no solving")
    common(export_p)

    val_p = sub.add_parser("validate", help="check instance invariants")
    common(val_p, scenarios=False)
    return parser


def _load(instance_dir):
    try:
        return load_instance(instance_dir)
    except (InstanceParseError, ValidationError, OSError) as exc:
        log.error("%s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return None


def _scenario_list(spec: str):
    configs = []
    for token in spec.split(","):
        token = token.strip()
        if not token:
            continue
        configs.append(resolve(token))
    if not configs:
        raise KeyError("empty scenario list")
    return configs


def cmd_run(args) -> int:
    if args.mode == "export":
        return cmd_export(args)
    network = _load(args.instance)
    if network is None:
        return EXIT_USAGE
    try:
        configs = _scenario_list(args.scenario)
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    options = SolveOptions()
    if args.tol is not None:
        options.feasibility_tol = args.tol
        options.optimality_tol = args.tol

    try:
        results = run_suite(network, configs, options)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    reports = {}
    failed = []
    for config in configs:
        result = results[config.name]
        if result.is_optimal:
            reports[config.name] = build_report(result, network, config)
            if not args.quiet:
                rep = reports[config.name]
                print(f"{config.name}: objective {rep.objective:.6e} EUR, "
                      f"CO2 {rep.total_co2:.3f} t, "
                      f"{result.iterations} iterations")
        else:
            failed.append(config.name)
            if not args.quiet:
                print(f"{config.name}: {result.status.value}")

    try:
        files = emit_suite_csv(reports, args.out)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    log.info("wrote %d files under %s", len(files), args.out)
    return EXIT_NOT_OPTIMAL if failed else EXIT_OK


def cmd_export(args) -> int:
    network = _load(args.instance)
    if network is None:
        return EXIT_USAGE
    try:
        configs = _scenario_list(args.scenario)
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        handle = build_handle(network)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for config in configs:
            problem = apply_scenario(handle, network, config)
            target = out / f"{config.name}.mps"
            export_standard(problem, target)
            if not args.quiet:
                print(f"{config.name}: wrote {target}")
    except (ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def cmd_validate(args) -> int:
    try:
        network = load_instance(args.instance)
    except ValidationError as exc:
        for violation in exc.violations:
            print(violation)
        return EXIT_USAGE
    except (InstanceParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    violations = validate_network(network)
    for violation in violations:
        print(violation)
    if not violations and not args.quiet:
        print("ok")
    return EXIT_OK if not violations else EXIT_USAGE


def main(argv=None) -> int:
    logging.basicConfig(
        level=os.environ.get("H2PLAN_LOG", "warning").upper(),
        format="%(levelname)s %(name)s: %(message)s")
    args = _parser().parse_args(argv)
    handlers = {"run": cmd_run, "export": cmd_export, "validate": cmd_validate}
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
