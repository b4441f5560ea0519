"""Command-line driver: run named verification suites, emit JSON reports.

Exit codes: 0 = every check passed; 1 = usage/config error; 2 = at least one
verification failed.  Without --config the built-in catalogue suite runs
(the closed-form regression cases); each subcommand filters it by kind.
"""

from __future__ import annotations

import argparse
import json
import sys

from .suites import SUITE_KINDS, builtin_catalogue_config, run_config

_KIND_BY_COMMAND = {
    "axioms": "axioms",
    "continuity": "continuity",
    "gateaux": "gateaux",
    "frechet": "frechet",
    "order": "order",
    "suite": None,
}


def _load_config(path):
    if path is None:
        return builtin_catalogue_config()
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _validate(config) -> str | None:
    if not isinstance(config, dict):
        return "config must be a JSON object"
    if "seed" not in config:
        return "config field 'seed' is required (determinism contract)"
    suites = config.get("suites")
    if not isinstance(suites, list):
        return "config field 'suites' must be a list"
    for i, e in enumerate(suites):
        if "name" not in e:
            return f"suites[{i}]: field 'name' is required"
        if e.get("kind") not in SUITE_KINDS:
            return f"suites[{i}] ({e.get('name')}): field 'kind' must be one of {SUITE_KINDS}"
    return None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fsemcalc",
        description="epsilon-delta verification suites for seminorm-structured spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for cmd, help_text in [
        ("axioms", "run F-seminorm axiom suites"),
        ("continuity", "run continuity witnesses"),
        ("gateaux", "run Gateaux derivative witnesses"),
        ("frechet", "run Frechet (DZ)/(DR) witnesses"),
        ("order", "run the ordered-optimization suite"),
        ("suite", "run every suite in the config"),
    ]:
        p = sub.add_parser(cmd, help=help_text)
        p.add_argument("--config", metavar="PATH", help="JSON config (default: built-in catalogue)")
        p.add_argument("--out", metavar="PATH", help="write the report JSON here")
        p.add_argument("--seed", type=int, help="override the config seed")
        p.add_argument("--suite", metavar="NAME", help="run only the named suite")
        p.add_argument("--list", action="store_true", help="list suite names and exit")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _load_config(args.config)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot load config: {exc}", file=sys.stderr)
        return 1
    problem = _validate(config)
    if problem:
        print(f"error: {problem}", file=sys.stderr)
        return 1

    kind = _KIND_BY_COMMAND[args.command]
    if args.list:
        for e in config["suites"]:
            if kind is None or e["kind"] == kind:
                print(f"{e['name']}  [{e['kind']}]")
        return 0

    try:
        report = run_config(config, seed_override=args.seed, name_filter=args.suite, kind_filter=kind)
    except (KeyError, ValueError, TypeError) as exc:
        print(f"error: bad config: {exc}", file=sys.stderr)
        return 1

    out_path = args.out or config.get("out")
    text = json.dumps(report, indent=2, default=str)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    for r in report["suites"]:
        status = "PASS" if r["passed"] else "FAIL"
        print(f"{status}  {r['name']}  ({r['wall_clock_s']:.2f}s)", file=sys.stderr)
    summary = report["summary"]
    print(
        f"{summary['passed']}/{summary['total']} suites passed", file=sys.stderr
    )
    return 0 if summary["failed"] == 0 else 2


if __name__ == "__main__":
    sys.exit(main())
