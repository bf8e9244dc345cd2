"""Command-line front end: run scenario files, list the check catalog.

Exit codes: 0 all checks pass, 1 at least one check fails, 2 input error
(malformed JSON, unknown checks, missing files).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from importlib import resources

from .checks import REGISTRY, ScenarioContext, ScenarioError, catalog
from .reports import CheckRow, Report


class InputError(Exception):
    pass


def load_scenario(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read scenario {path!r}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno}, "
                         f"column {exc.colno}: {exc.msg}") from exc
    for key in ("name", "engine", "model", "checks"):
        if key not in doc:
            raise InputError(f"{path}: scenario is missing the {key!r} field")
    return doc


def _parse_tol_overrides(pairs: list[str]) -> dict[str, float]:
    overrides = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise InputError(f"--tol expects KEY=VALUE, got {pair!r}")
        key, value = pair.split("=", 1)
        try:
            overrides[key] = float(value)
        except ValueError as exc:
            raise InputError(f"--tol value for {key!r} is not a number") from exc
    return overrides


def run_scenario(doc: dict, tol_overrides: dict[str, float] | None = None,
                 seed_override: int | None = None) -> list[CheckRow]:
    tol_overrides = tol_overrides or {}
    engine = doc["engine"]
    if engine not in {"finite", "smooth", "symplectic"}:
        raise InputError(f"unknown engine {engine!r}")
    seed = int(doc.get("seed", 0)) if seed_override is None else seed_override
    ctx = ScenarioContext(doc["name"], engine, doc["model"], seed)
    scenario_tols = doc.get("tolerances", {})

    rows: list[CheckRow] = []
    for entry in doc["checks"]:
        name = entry.get("name")
        if name not in REGISTRY:
            valid = ", ".join(sorted(REGISTRY))
            raise InputError(f"unknown check {name!r}; valid names: {valid}")
        check = REGISTRY[name]
        if check.engine != engine:
            raise InputError(f"check {name!r} belongs to engine {check.engine!r}, "
                             f"scenario uses {engine!r}")
        tol = entry.get("tolerance", scenario_tols.get(name, check.default_tol))
        tol = tol_overrides.get(name, tol)
        try:
            rows.extend(check.runner(ctx, entry.get("params", {}), float(tol)))
        except ScenarioError as exc:
            raise InputError(f"check {name!r}: {exc}") from exc
    return rows


def bundled_scenarios() -> list[str]:
    base = resources.files("groupoid_measures").joinpath("scenarios")
    return sorted(str(p) for p in base.iterdir() if p.name.endswith(".json"))


def _resolve_path(path: str) -> str:
    if os.path.exists(path):
        return path
    bundled = resources.files("groupoid_measures").joinpath("scenarios", path)
    if bundled.is_file():
        return str(bundled)
    bundled_json = resources.files("groupoid_measures").joinpath(
        "scenarios", path + ".json")
    if bundled_json.is_file():
        return str(bundled_json)
    return path


def cmd_run(args) -> int:
    overrides = _parse_tol_overrides(args.tol)
    paths = [_resolve_path(p) for p in args.scenarios]
    seed_override = None
    if "GM_SEED" in os.environ:
        seed_override = int(os.environ["GM_SEED"])

    docs = [load_scenario(p) for p in paths]
    if args.parallel and len(docs) > 1:
        with ThreadPoolExecutor() as pool:
            results = list(pool.map(
                lambda d: run_scenario(d, overrides, seed_override), docs))
    else:
        results = [run_scenario(d, overrides, seed_override) for d in docs]

    report = Report([row for rows in results for row in rows])
    text = report.to_json() if args.format == "json" else report.to_csv()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    summary = report.summary()
    print(f"# {summary['passed']}/{summary['total']} checks passed",
          file=sys.stderr)
    return 0 if report.passed() else 1


def cmd_list_checks(args) -> int:
    for check in catalog():
        if args.engine and check.engine != args.engine:
            continue
        params = check.params_doc or "-"
        print(f"{check.name:32s} {check.engine:10s} tol={check.default_tol:<8g} "
              f"params: {params}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="gm",
        description="Run transverse-measure check suites on groupoid models.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run scenario files and write a report")
    p_run.add_argument("scenarios", nargs="+",
                       help="scenario JSON paths or bundled scenario names")
    p_run.add_argument("--out", help="report output path (default: stdout)")
    p_run.add_argument("--format", choices=("csv", "json"), default="csv")
    p_run.add_argument("--parallel", action="store_true",
                       help="run multiple scenarios concurrently")
    p_run.add_argument("--tol", action="append", metavar="KEY=VAL",
                       help="override the tolerance of a check by name")
    p_run.set_defaults(fn=cmd_run)

    p_list = sub.add_parser("list-checks", help="print the check catalog")
    p_list.add_argument("--engine", help="only checks for this engine")
    p_list.set_defaults(fn=cmd_list_checks)

    p_scen = sub.add_parser("list-scenarios", help="print bundled scenario files")
    p_scen.set_defaults(fn=lambda a: (print("\n".join(bundled_scenarios())), 0)[1])

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
