"""Command-line front end: ``bispace <verb> ...``."""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from bispace import catalog, groups
from bispace.report import COMPUTED, Entry, Report
from bispace.scenario import (
    EXIT_OK, EXIT_PARSE, EXIT_USAGE, FINITE, GL2, ParseError, ScenarioError, load_scenario,
    run_scenario,
)

EXAMPLES = ("example2", "orbit-intersection", "example3-cosets", "theorem3-layers", "problem1")


class _Usage(Exception):
    pass


def _read(path: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read scenario: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ParseError("scenario must be a JSON object")
    return data


def builtin_scenario(name: str) -> dict:
    text = resources.files("bispace").joinpath("scenarios", f"{name}.json").read_text(encoding="utf-8")
    return json.loads(text)


def _with_queries(data: dict, queries: list) -> dict:
    return {**data, "queries": queries}


def _all_points(data: dict) -> list:
    """Every point a normalizer check should visit when none is given."""
    sc = load_scenario(_with_queries(data, []))
    ctx = sc.ctx
    if ctx.world == FINITE:
        return [ctx.render(p) for p in ctx.action.carrier.points]
    if ctx.world == GL2:
        return list(data.get("action", {}).get("points", [])) or [[[1, 0], [0, 1]]]
    return ["x"]


def _catalog_report() -> Report:
    rep = Report("catalog")
    for name in catalog.CATALOG_NAMES:
        G = catalog.get(name)
        subs = groups.all_subgroups(G)
        info = {"order": G.order, "abelian": G.is_abelian(),
                "commutator_order": groups.commutator_subgroup(G).order,
                "subgroups": len(subs), "normal_subgroups": sum(H.is_normal() for H in subs),
                "elements": list(G.names)}
        rep.add(Entry("group", COMPUTED,
                      f"{name}: order {G.order}, {'Abelian' if G.is_abelian() else 'non-Abelian'}, "
                      f"{len(subs)} subgroups", {"name": name, **info}))
    for ex in EXAMPLES:
        rep.add(Entry("example", COMPUTED, f"reproduce {ex}", {"name": ex}))
    return rep


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bispace", description="Orbits and bi-invariant sets of binary G-spaces.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, help_, scenario=True):
        s = sub.add_parser(name, help=help_)
        if scenario:
            s.add_argument("scenario", help="scenario JSON file")
        s.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
        return s

    verb("run", "run every query of a scenario")
    verb("verify-axioms", "check the binary action axioms")
    o = verb("orbit", "orbit layers of a point")
    o.add_argument("--point", required=True, help="point label, word, or JSON matrix literal")
    o.add_argument("--max-depth", type=int, default=None)
    verb("check-distributive", "scan for a distributivity counterexample")
    n = verb("check-normalizer-criterion", "compare both sides of the normalizer criterion")
    n.add_argument("--point", default=None)
    r = verb("reproduce", "run a built-in example", scenario=False)
    r.add_argument("example", help="one of: " + ", ".join(EXAMPLES))
    r.add_argument("--group", default=None, help="catalog group replacing the example's group")
    verb("catalog", "list built-in groups and examples", scenario=False)
    return p


def _point_arg(text: str):
    """Matrix literals come in as JSON; everything else is a label."""
    s = text.strip()
    if s.startswith("["):
        try:
            return json.loads(s)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad point literal {text!r}: {exc}") from None
    return s


def _dispatch(args) -> tuple[Report, int]:
    if args.verb == "catalog":
        return _catalog_report(), EXIT_OK
    if args.verb == "reproduce":
        if args.example not in EXAMPLES:
            raise _Usage(f"unknown example {args.example!r}; choose from {', '.join(EXAMPLES)}")
        data = builtin_scenario(args.example)
        if args.group:
            if args.group not in catalog.CATALOG_NAMES:
                raise _Usage(f"unknown catalog group {args.group!r}")
            data = {**data, "group": args.group, "name": f"{data['name']} ({args.group})"}
        return run_scenario(data)
    data = _read(args.scenario)
    if args.verb == "run":
        return run_scenario(data)
    if args.verb == "verify-axioms":
        q = [{"op": "verify_axioms"}]
    elif args.verb == "orbit":
        q = {"op": "orbit", "point": _point_arg(args.point)}
        if args.max_depth is not None:
            q["max_depth"] = args.max_depth
        q = [q]
    elif args.verb == "check-distributive":
        q = [{"op": "check_distributive"}]
    else:
        pts = [_point_arg(args.point)] if args.point is not None else _all_points(data)
        q = [{"op": "normalizer_criterion", "point": p} for p in pts]
    name = data.get("name", "scenario")
    return run_scenario(_with_queries(data, q), title=f"{name}: {args.verb}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report, code = _dispatch(args)
    except _Usage as exc:
        print(f"bispace: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ScenarioError as exc:
        print(f"bispace: {type(exc).__name__.lower().replace('error', ' error')}: {exc}", file=sys.stderr)
        return exc.exit_code
    except json.JSONDecodeError as exc:
        print(f"bispace: {exc}", file=sys.stderr)
        return EXIT_PARSE
    sys.stdout.write(report.render(args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
