"""Command-line front end.

Exit codes: 0 report produced and all checks passed, 1 theorem violation or
failed witness check, 2 input or parse error, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import kernels
from .constructors import GroupFormatError, builtin, paper_example, parse_group_file
from .lattice import enumerate_subgroups
from .permcore import DEFAULT_MAX_DEGREE, DEFAULT_MAX_ORDER, CapExceeded, PermGroup
from .verifier import (
    ERROR,
    SKIPPED,
    GroupSpec,
    TheoremReport,
    default_corpus,
    scan_corpus,
    summarize,
    verify_psl_witnesses,
    verify_theorem,
)

log = logging.getLogger("h2m")

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


def _common(sub: bool) -> argparse.ArgumentParser:
    # subcommand copies default to SUPPRESS so they never clobber a value given before the command
    d = (lambda v: argparse.SUPPRESS) if sub else (lambda v: v)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", default=d(False), help="emit JSON")
    p.add_argument("--max-order", type=int, default=d(None), help="element cap (default 20000)")
    p.add_argument("--max-degree", type=int, default=d(DEFAULT_MAX_DEGREE), help="degree cap")
    p.add_argument("--jobs", type=int, default=d(1), help="worker processes across groups")
    p.add_argument("--out", default=d(None), help="write the report here instead of stdout")
    p.add_argument("-v", "--verbose", action="store_true", default=d(False))
    return p


def _input_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin", metavar="NAME[:PARAMS]")
    src.add_argument("--file", metavar="PATH")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="h2m", parents=[_common(False)],
        description="Finite groups whose 2-maximal subgroups are Hall subgroups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common(True)
    p = sub.add_parser("check", parents=[common], help="verify the theorem on one group")
    _input_args(p)
    p = sub.add_parser("scan", parents=[common], help="verify the theorem on the built-in corpus")
    p.add_argument("--include-large", action="store_true", help="add the order-12615 example")
    p.add_argument("--report", metavar="PATH", help="write the report here")
    p = sub.add_parser("lattice", parents=[common], help="dump a subgroup lattice")
    _input_args(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    sub.add_parser("example", parents=[common], help="run the E_{29^2} x| Z_15 showcase")
    sub.add_parser("psl-witnesses", parents=[common], help="non-Hall 2-maximal chains in PSL groups")
    return parser


def _max_order(args) -> int:
    if args.max_order is not None:
        return args.max_order
    env = os.environ.get("H2M_MAX_ORDER")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"H2M_MAX_ORDER is not an integer: {env!r}") from None
    return DEFAULT_MAX_ORDER


def _load(args) -> tuple[str, PermGroup]:
    if args.builtin:
        return args.builtin, builtin(args.builtin, args.max_degree)
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {args.file}: {exc}") from None
    G = parse_group_file(text, args.max_degree)
    name = os.path.basename(args.file)
    G.name = name
    return name, G


# --- rendering -------------------------------------------------------------------------------


def _fmt(v) -> str:
    if isinstance(v, dict):
        return ", ".join(f"{k}={_fmt(x)}" for k, x in v.items())
    if isinstance(v, list):
        return "{" + ",".join(str(x) for x in v) + "}"
    if v is None:
        return "-"
    return str(v).lower() if isinstance(v, bool) else str(v)


def _mark(ok) -> str:
    return {True: "PASS", False: "FAIL", None: "INDETERMINATE"}[ok]


def render_report(rep: TheoremReport) -> str:
    d = rep.to_dict()
    lines = [f"== {d['name']}: order {d['order']}, degree {d['degree']}"]
    if "construction" in d:
        lines.append(f"   construction: {d['construction']}")
    lines.append(f"   pi={_fmt(d['pi'])} sigma={_fmt(d['sigma'])} tau={_fmt(d['tau'])}")
    lines.append(f"   applicability: {d['applicability']}")
    if "skipped_reason" in d:
        lines.append(f"   reason: {d['skipped_reason']}")
    if "hypothesis" in d:
        h = d["hypothesis"]
        text = "holds" if h["holds"] else f"fails ({_fmt(h['witness'])})"
        lines.append(f"   hypothesis (2-maximals Hall): {text}")
    if "squarefree" in d:
        lines.append(f"   [{_mark(d['squarefree']['pass'])}] squarefree order")
    if "derived" in d:
        lines.append(f"   solvable: {_fmt(d['derived']['solvable'])}")
    for k, v in d.get("conclusions", {}).items():
        extra = {x: y for x, y in v.items() if x != "pass"}
        lines.append(f"   [{_mark(v['pass'])}] {k}" + (f": {_fmt(extra)}" if extra else ""))
    return "\n".join(lines)


def render_summary(summary: dict) -> str:
    return "summary: " + ", ".join(f"{k}={v}" for k, v in summary.items())


def render_lattice_text(L) -> str:
    n = L.table.size
    lines = [f"# {len(L)} subgroups of a group of order {n}, {len(L.conj_classes)} conjugacy classes",
             "# index order class normal maximal_in"]
    normal = {N.index for N in L.normal_subgroups()}
    for s in L.subgroups:
        ups = [j for (i, j) in L.hasse if i == s.index]
        lines.append(f"{s.index} {s.order} {int(L.class_of[s.index])} "
                     f"{'y' if s.index in normal else 'n'} {','.join(map(str, ups)) or '-'}")
    return "\n".join(lines)


def lattice_json(L) -> dict:
    normal = {N.index for N in L.normal_subgroups()}
    return {
        "order": L.table.size,
        "subgroups": [
            {"index": s.index, "order": s.order, "class": int(L.class_of[s.index]),
             "normal": s.index in normal,
             "generators": [g.to_cycle_string() for g in s.generators()]}
            for s in L.subgroups
        ],
        "hasse": [[i, j] for i, j in L.hasse],
        "conj_classes": L.conj_classes,
    }


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


# --- commands ---------------------------------------------------------------------------------


def _report_exit(reports: list[TheoremReport]) -> int:
    if any(r.violations() for r in reports):
        return EXIT_VIOLATION
    if any(r.applicability == SKIPPED for r in reports):
        return EXIT_CAP
    if any(r.applicability == ERROR for r in reports):
        return EXIT_INPUT
    return EXIT_OK


def cmd_check(args) -> tuple[str, int]:
    name, G = _load(args)
    rep = verify_theorem(G, name, _max_order(args), args.max_degree)
    text = _dump(rep.to_dict()) if args.json else render_report(rep)
    return text, _report_exit([rep])


def cmd_example(args) -> tuple[str, int]:
    G = paper_example(max(args.max_degree, 841))
    rep = verify_theorem(G, "example", max(_max_order(args), 12615), max(args.max_degree, 841))
    text = _dump(rep.to_dict()) if args.json else render_report(rep)
    code = _report_exit([rep])
    if code == EXIT_OK and rep.applicability != "main-branch":
        code = EXIT_VIOLATION
    return text, code


def cmd_scan(args) -> tuple[str, int]:
    specs = default_corpus(args.include_large)
    max_degree = max(args.max_degree, 841) if args.include_large else args.max_degree
    reports = scan_corpus(specs, _max_order(args), max_degree, max(1, args.jobs))
    summary = summarize(reports)
    if args.json:
        text = _dump({"reports": [r.to_dict() for r in reports], "summary": summary})
    else:
        text = "\n".join([render_report(r) for r in reports] + [render_summary(summary)])
    code = EXIT_VIOLATION if summary["violations"] else EXIT_OK
    if code == EXIT_OK and summary["errors"]:
        code = EXIT_INPUT
    return text, code


def cmd_lattice(args) -> tuple[str, int]:
    _, G = _load(args)
    L = enumerate_subgroups(G, _max_order(args))
    if args.json or args.format == "json":
        return _dump(lattice_json(L)), EXIT_OK
    return render_lattice_text(L), EXIT_OK


def cmd_psl(args) -> tuple[str, int]:
    res = verify_psl_witnesses()
    ok = all(v["pass"] for v in res.values())
    if args.json:
        text = _dump(res)
    else:
        text = "\n".join(f"[{_mark(v['pass'])}] {k}: " + _fmt({x: y for x, y in v.items() if x != 'pass'})
                         for k, v in res.items())
    return text, EXIT_OK if ok else EXIT_VIOLATION


COMMANDS = {"check": cmd_check, "scan": cmd_scan, "lattice": cmd_lattice,
            "example": cmd_example, "psl-witnesses": cmd_psl}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    log.debug("kernel backend: %s", kernels.BACKEND)
    out_path = args.out or getattr(args, "report", None)
    try:
        text, code = COMMANDS[args.command](args)
    except (GroupFormatError, InputError) as exc:
        print(f"h2m: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as exc:
        print(f"h2m: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
