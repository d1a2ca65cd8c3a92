"""Command-line interface.

Exit codes: 0 success, 1 usage or input error, 2 prime search exhausted,
3 a negative verdict, 4 degenerate elimination.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from .construct import SearchExhausted, build_surfaces, build_wa_surface, check_conditions, tuple_to_json
from .poly import DegenerateElimination
from .report import (
    RunConfig,
    branch_report,
    envelope,
    full_report,
    render,
    resolve_tuple,
    verify_report,
)

EXIT_OK, EXIT_USAGE, EXIT_EXHAUSTED, EXIT_VERDICT, EXIT_DEGENERATE = 0, 1, 2, 3, 4

_INT_KEYS = {"d", "bound", "sample_primes", "jobs"}


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; here 2 means an exhausted search."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def read_config(path: str) -> dict:
    """Flat key=value file; '#' starts a comment, blank lines are ignored."""
    known = {f.name for f in dataclasses.fields(RunConfig)}
    out: dict = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in known:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = int(value) if key in _INT_KEYS else value
    return out


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="key=value file; command-line flags take precedence")
    common.add_argument("--d", type=int, help="L = Q(sqrt(d))")
    common.add_argument("--bound", type=int, help="search bound for the primes (default 300)")
    common.add_argument("--tuple", help="explicit primes p1,...,p6")
    common.add_argument("--variant", choices=["hasse", "wa", "both"])
    common.add_argument("--charts", help="'all' or a comma list such as x1y1,x0y0")
    common.add_argument("--sample-primes", dest="sample_primes", type=int, help="extra places sampled (default 200)")
    common.add_argument("--jobs", type=int, help="worker processes for chart eliminations")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=["json", "markdown"])

    parser = _Parser(prog="hassecheck", description="Construct and verify Hasse-principle counterexample surfaces over Q.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("primes", parents=[common], help="find or check a prime tuple")
    sub.add_parser("surface", parents=[common], help="print f, g, the pencil and the surface equations")
    sub.add_parser("verify", parents=[common], help="conditions, local/global points, torsion")
    sub.add_parser("branch", parents=[common], help="singular fibres and the smoothness certificate")
    sub.add_parser("report", parents=[common], help="verify and branch in one report")
    return parser


def make_config(args: argparse.Namespace) -> RunConfig:
    values = read_config(args.config) if args.config else {}
    for f in dataclasses.fields(RunConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            values[f.name] = v
    cfg = RunConfig(**values)
    cfg.validate()
    return cfg


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _run(command: str, cfg: RunConfig) -> tuple[dict, int]:
    if command == "primes":
        if cfg.d is None:
            raise UsageError("primes needs --d")
        t = resolve_tuple(cfg, _progress)
        report = check_conditions(t)
        body = {"tuple": tuple_to_json(t, report), "overall": report.overall}
        return body, EXIT_OK if report.overall else EXIT_VERDICT
    if command == "surface":
        body = {}
        if cfg.variant in ("hasse", "both"):
            if cfg.d is None:
                raise UsageError("surface needs --d (and optionally --tuple) for the hasse variant")
            t = resolve_tuple(cfg, _progress)
            body["hasse"] = build_surfaces(t, check=False).to_json()
            body["hasse"]["tuple"] = tuple_to_json(t)
        if cfg.variant in ("wa", "both"):
            body["wa"] = build_wa_surface().to_json()
        return body, EXIT_OK
    if command == "verify":
        if cfg.d is None:
            raise UsageError("verify needs --d, with --tuple or a search --bound")
        body = verify_report(cfg, _progress)
        return body, EXIT_OK if body["overall"] else EXIT_VERDICT
    if command == "branch":
        body = branch_report(cfg, _progress)
        return body, EXIT_OK if body["overall"] else EXIT_VERDICT
    if command == "report":
        if cfg.d is None:
            raise UsageError("report needs --d")
        body = full_report(cfg, _progress)
        return body, EXIT_OK if body["overall"] else EXIT_VERDICT
    raise UsageError(f"unknown command {command}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = make_config(args)
        body, code = _run(args.command, cfg)
    except SearchExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except DegenerateElimination as exc:
        print(f"error: degenerate elimination: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(envelope(args.command, cfg, body), cfg.format)
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    if code == EXIT_VERDICT and body.get("failed"):
        print("failed: " + "; ".join(body["failed"]), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
