"""Command line interface: run suites, print the coverage map, run the oracle.

Exit code contract for ``verify run``: 0 iff no check failed (skipped checks
do not fail the run; they carry their reason in the report).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction as Q

from . import __version__
from .checks import coverage_map
from .groups import RootSystem
from .verify import SuiteConfig, load_config, run_suite


def _cmd_run(args) -> int:
    config = load_config(args.config)
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.suite:
        overrides["suites"] = tuple(args.suite)
    if args.trials is not None:
        overrides["trials"] = args.trials
    if overrides:
        base = config.__dict__ | overrides
        config = SuiteConfig(**base)
    report = run_suite(config)
    text = report.to_json()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    summary = report.summary()
    print(
        f"checks: {summary['pass']} passed, {summary['fail']} failed, "
        f"{summary['skipped']} skipped",
        file=sys.stderr,
    )
    return 1 if report.failed else 0


def _cmd_coverage(args) -> int:
    cov = coverage_map()
    unmapped = [eq for eq, ids in cov["equations"].items() if not ids]
    print("equation -> checks")
    for eq, ids in cov["equations"].items():
        print(f"  {eq:>8}: {', '.join(ids) if ids else '(UNMAPPED)'}")
    if cov["other"]:
        print("other labels -> checks")
        for label, ids in sorted(cov["other"].items()):
            print(f"  {label:>12}: {', '.join(ids)}")
    if unmapped:
        print(f"unmapped equations: {', '.join(unmapped)}")
        return 1
    print("all catalog equations are covered")
    return 0


def _cmd_oracle(args) -> int:
    kappa = [Q(k) for k in (args.kappa.split(",") if args.kappa else ["1/2", "1"])]
    config = SuiteConfig(
        root_system=RootSystem.z2d(kappa),
        seed=args.seed,
        trials=args.cases,
        mc_samples=args.samples,
        suites=("oracle",),
    )
    report = run_suite(config)
    print(report.to_json())
    return 1 if report.failed else 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="verify",
        description="Mechanical verification of Dunkl operator identities and "
        "uncertainty inequalities on weighted spheres, balls and simplexes.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run the configured suites and emit a JSON report")
    p_run.add_argument("--config", required=True, help="TOML config path")
    p_run.add_argument("--seed", type=int, default=None, help="override the config seed")
    p_run.add_argument(
        "--suite", action="append", default=None,
        help="run only this suite (repeatable)",
    )
    p_run.add_argument("--trials", type=int, default=None, help="override trials per check")
    p_run.add_argument("--output", default=None, help="write the JSON report here")
    p_run.set_defaults(func=_cmd_run)

    p_cov = sub.add_parser("coverage", help="print the equation-to-check coverage map")
    p_cov.set_defaults(func=_cmd_coverage)

    p_or = sub.add_parser("oracle", help="run only the Monte Carlo oracle cross-checks")
    p_or.add_argument("--samples", type=int, default=10**6)
    p_or.add_argument("--seed", type=int, default=12345)
    p_or.add_argument("--cases", type=int, default=30)
    p_or.add_argument("--kappa", default=None, help="comma separated multiplicities")
    p_or.set_defaults(func=_cmd_oracle)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
