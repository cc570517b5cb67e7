"""Command line: run scenario files and work with the fixture catalog.

    slantsub run scenario.json [--samples N] [--seed S] [--mode exact|float]
                               [--report PATH] [--tol-first T] [--tol-second T]
    slantsub fixtures list
    slantsub fixtures emit NAME [-o PATH]

Exit codes: 0 when every check passes or is inapplicable, 1 when any check
fails, 2 for input errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from . import fixtures
from .scenario import ScenarioError, load, run


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="slantsub", description="Verify slant Riemannian submersions from Sasakian manifolds.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run the checks listed in a scenario file")
    r.add_argument("scenario", help="scenario JSON file")
    r.add_argument("--samples", type=int, help="number of sample points (default: from the scenario, else 7)")
    r.add_argument("--seed", type=int, help="sampling seed (default: from the scenario, else 42)")
    r.add_argument("--mode", choices=("exact", "float"), help="evaluation mode (default: from the scenario, else exact)")
    r.add_argument("--report", metavar="PATH", help="write the JSON report here ('-' for stdout)")
    r.add_argument("--tol-first", type=float, help="float-mode tolerance for first-derivative checks (default 1e-9)")
    r.add_argument("--tol-second", type=float, help="float-mode tolerance for curvature checks (default 1e-6)")

    f = sub.add_parser("fixtures", help="list or emit built-in fixtures")
    fsub = f.add_subparsers(dest="action", required=True)
    fsub.add_parser("list", help="list fixture names with descriptions")
    e = fsub.add_parser("emit", help="print the scenario JSON of a fixture")
    e.add_argument("name")
    e.add_argument("-o", "--output", metavar="PATH", help="write to a file instead of stdout")
    return p


def _overrides(args) -> dict:
    pairs = {
        "samples": args.samples,
        "seed": args.seed,
        "mode": args.mode,
        "tol_first": args.tol_first,
        "tol_second": args.tol_second,
    }
    return {k: v for k, v in pairs.items() if v is not None}


def _cmd_run(args, out, err) -> int:
    try:
        sc = load(args.scenario)
        over = _overrides(args)
        if over.get("samples", 1) < 1:
            raise ScenarioError("--samples must be positive")
        sc = dataclasses.replace(sc, **over)
        result = run(sc)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except ScenarioError as exc:
        print(f"error: {exc}", file=err)
        return 2
    summary = out if args.report != "-" else err
    title = sc.name or args.scenario
    print(f"{title}: {len(result.reports)} checks, mode {sc.mode}, {sc.samples} samples, seed {sc.seed}", file=summary)
    for rep in result.reports:
        line = rep.summary_line()
        if rep.reason:
            line += f"  [{rep.reason}]"
        print(line, file=summary)
    if args.report == "-":
        out.write(result.to_json())
    elif args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(result.to_json())
    return result.exit_code


def _cmd_fixtures(args, out, err) -> int:
    if args.action == "list":
        for name in fixtures.names():
            print(f"{name:<10} {fixtures.describe(name)}", file=out)
        return 0
    try:
        data = fixtures.scenario(args.name)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=err)
        return 2
    text = json.dumps(data, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = _parser().parse_args(argv)
    if args.command == "run":
        return _cmd_run(args, out, err)
    return _cmd_fixtures(args, out, err)


if __name__ == "__main__":
    sys.exit(main())
