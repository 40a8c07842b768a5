"""``dle`` command line: ``list``, ``run`` and ``script``.

Exit status is 0 when every check passes, 1 when a check fails and 2 on
usage, parameter or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import InvalidParameter, ParseError, UndefinedName, UnknownScenario
from .scenarios import get_scenario, list_scenarios, run_many
from .script import run_script

# run flags forwarded to the scenarios that accept them
_FLAGS = ("prime", "poly", "rmax", "cutoff", "window", "expensive", "f", "g", "seed", "count", "kmax",
          "max_degree", "bound")


def build_parser():
    ap = argparse.ArgumentParser(prog="dle", description="Exact derived exterior powers and Euler characteristics.")
    sub = ap.add_subparsers(dest="command", required=True)

    lp = sub.add_parser("list", help="registered scenarios with parameters and anchors")
    lp.add_argument("--format", choices=("text", "json"), default="text")

    rp = sub.add_parser("run", help="run one or more scenarios ('all' runs every scenario)")
    rp.add_argument("scenarios", nargs="+")
    rp.add_argument("--prime", type=int)
    rp.add_argument("--poly")
    rp.add_argument("--rmax", type=int)
    rp.add_argument("--cutoff", type=int)
    rp.add_argument("--window", type=int)
    rp.add_argument("--expensive", action="store_true", default=None)
    rp.add_argument("--f")
    rp.add_argument("--g")
    rp.add_argument("--seed", type=int)
    rp.add_argument("--count", type=int)
    rp.add_argument("--kmax", type=int)
    rp.add_argument("--max-degree", dest="max_degree", type=int)
    rp.add_argument("--bound", type=int)
    rp.add_argument("--parallel", type=int, default=1, help="scenario-level worker processes")
    rp.add_argument("--format", choices=("text", "json"), default="text")

    sp = sub.add_parser("script", help="run a script file")
    sp.add_argument("path")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    return ap


def _requests(args):
    names = [n for n, _, _ in list_scenarios()] if args.scenarios == ["all"] else args.scenarios
    given = {flag: getattr(args, flag) for flag in _FLAGS if getattr(args, flag) is not None}
    used = set()
    out = []
    for name in names:
        accepted = {p.name for p in get_scenario(name).params}
        params = {k: v for k, v in given.items() if k in accepted}
        used |= set(params)
        out.append((name, params))
    unused = sorted(set(given) - used)
    if unused:
        raise InvalidParameter(f"no selected scenario takes --{', --'.join(u.replace('_', '-') for u in unused)}")
    return out


def _emit(reports, fmt, single):
    if fmt == "json":
        payload = reports[0].to_dict() if single else [r.to_dict() for r in reports]
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n\n".join(r.to_text() for r in reports))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "list":
            rows = list_scenarios()
            if args.format == "json":
                print(json.dumps([{"name": n, "parameters": s, "anchor": a} for n, s, a in rows],
                                 indent=2, sort_keys=True))
            else:
                for n, s, a in rows:
                    params = ", ".join(f"{k}={v['default']}" for k, v in s.items())
                    print(f"{n:20s} [{a}]  {params}")
            return 0
        if args.command == "run":
            if args.parallel < 1:
                raise InvalidParameter("--parallel must be at least 1")
            reqs = _requests(args)
            reports = run_many(reqs, args.parallel)
            _emit(reports, args.format, len(reqs) == 1)
            return 0 if all(r.passed for r in reports) else 1
        report = run_script(args.path)
        _emit([report], args.format, True)
        return 0 if report.passed else 1
    except (UnknownScenario, InvalidParameter, ParseError, UndefinedName) as exc:
        print(f"dle: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
