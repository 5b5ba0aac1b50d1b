"""Command-line front end: ``terwcodes <command> [options]``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass

from . import report
from .codes import CodeInputError, CodeTooLarge, FIXTURES, fixture, load_code
from .matgroup import (BUILTIN_NAMES, GeneratorFileError, GroupCapExceeded, SingularGenerator,
                       builtin_generators, generate_group, load_generators)
from .scheme import build_scheme
from .terwilliger import DepthExceeded, build_talgebra

COMMANDS = ("group-info", "scheme", "terwilliger", "invariants", "molien", "epoly", "code", "verify-all")

log = logging.getLogger("terwcodes")


@dataclass(frozen=True)
class RunConfig:
    command: str
    group: str | None
    generators: str | None
    fmt: str = "text"
    n_terms: int = 40
    threads: int = 0
    max_depth: int = 4
    cap: int = 100000
    degree: int | None = None
    fixture: str | None = None
    code_file: str | None = None
    q: int | None = None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="terwcodes", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, group=True):
        if group:
            sel = p.add_mutually_exclusive_group(required=True)
            sel.add_argument("--group", choices=BUILTIN_NAMES)
            sel.add_argument("--generators", metavar="FILE", help="JSON array of 2x2 matrices")
        p.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
        p.add_argument("--terms", dest="n_terms", type=_positive, default=40)
        p.add_argument("--threads", type=_nonneg, default=0, help="0 = auto (TERWILLIGER_THREADS, then cpu count)")
        p.add_argument("--max-depth", type=_positive, default=4)
        p.add_argument("--cap", type=_positive, default=100000)

    for name in COMMANDS:
        p = sub.add_parser(name)
        if name == "code":
            common(p, group=False)
            src = p.add_mutually_exclusive_group(required=True)
            src.add_argument("--fixture", choices=sorted(FIXTURES))
            src.add_argument("--code-file", metavar="FILE")
            p.add_argument("--q", type=int, choices=(2, 3, 4))
        else:
            common(p)
        if name == "epoly":
            p.add_argument("--degree", type=_nonneg, required=True)
    return parser


def parse_config(argv: list[str] | None = None) -> tuple[RunConfig, bool]:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        group=getattr(args, "group", None),
        generators=getattr(args, "generators", None),
        fmt=args.fmt,
        n_terms=args.n_terms,
        threads=args.threads,
        max_depth=args.max_depth,
        cap=args.cap,
        degree=getattr(args, "degree", None),
        fixture=getattr(args, "fixture", None),
        code_file=getattr(args, "code_file", None),
        q=getattr(args, "q", None),
    )
    return cfg, args.verbose


def _group(cfg: RunConfig):
    if cfg.group:
        return generate_group(builtin_generators(cfg.group), cap=cfg.cap, name=f"G_{cfg.group}"), cfg.group
    return generate_group(load_generators(cfg.generators), cap=cfg.cap, name=cfg.generators), None


def run(cfg: RunConfig) -> dict:
    if cfg.command == "code":
        if cfg.fixture:
            return report.code_report(fixture(cfg.fixture), cfg.fixture)
        return report.code_report(load_code(cfg.code_file, cfg.q), cfg.code_file)
    g, name = _group(cfg)
    if cfg.command == "group-info":
        return report.group_report(g, name)
    if cfg.command == "scheme":
        return report.scheme_report(build_scheme(g))
    if cfg.command == "terwilliger":
        t = build_talgebra(build_scheme(g), max_depth=cfg.max_depth, threads=cfg.threads)
        return report.terwilliger_report(t, name)
    if cfg.command == "molien":
        return report.molien_report(g, cfg.n_terms, name)
    if cfg.command == "epoly":
        return report.epoly_report(g, cfg.degree, name)
    if cfg.command == "invariants":
        return report.invariants_report(g, cfg.n_terms, name)
    if cfg.command == "verify-all":
        rep = report.verify_all(g, name, cfg.n_terms, cfg.max_depth, cfg.threads)
        rep["codes"] = report.fixture_reports()
        rep["ok"] = report.report_ok(rep)
        return rep
    raise AssertionError(f"unhandled command {cfg.command}")


def _text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    if v is None:
        return "-"
    return str(v)


def render(rep: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rep, sort_keys=True, indent=2)
    return "\n".join(_text(rep))


def main(argv: list[str] | None = None) -> int:
    cfg, verbose = parse_config(argv)
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        rep = run(cfg)
    except (GeneratorFileError, CodeInputError, CodeTooLarge, SingularGenerator,
            GroupCapExceeded, DepthExceeded, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 1
    print(render(rep, cfg.fmt))
    return 0 if report.report_ok(rep) else 1


if __name__ == "__main__":
    sys.exit(main())
