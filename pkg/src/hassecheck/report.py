"""Run configuration, report assembly and rendering (JSON or Markdown)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Optional

from .branch import Chart, charts_for, conic_pencil_R, format_point, run_branch
from .construct import (
    PrimeTuple,
    Variant,
    build_surfaces,
    build_wa_surface,
    check_conditions,
    find_prime_tuple,
    tuple_to_json,
)
from .elliptic import default_curve, eval_gamma, nagell_lutz_torsion
from .quadfield import QuadField
from .verify import DEFAULT_SAMPLE, verify_Zf, verify_Zg

SCHEMA = "1"
STANDARD_TUPLE = "17,13,53,41,3,13"
STANDARD_D = -1

Progress = Callable[[str], None]


@dataclass
class RunConfig:
    d: Optional[int] = None
    bound: int = 300
    tuple: Optional[str] = None
    variant: str = "hasse"
    charts: str = "all"
    sample_primes: int = DEFAULT_SAMPLE
    jobs: int = 1
    out: Optional[str] = None
    format: str = "json"

    def validate(self) -> None:
        if self.bound < 3:
            raise ValueError("bound must be at least 3")
        if self.sample_primes < 0:
            raise ValueError("sample_primes must be nonnegative")
        if self.variant not in ("hasse", "wa", "both"):
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.format not in ("json", "markdown"):
            raise ValueError(f"unknown format {self.format!r}")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")
        self.chart_list()

    def field(self) -> QuadField:
        if self.d is None:
            raise ValueError("no field given (use --d)")
        return QuadField(self.d)

    def chart_list(self) -> Optional[list[Chart]]:
        if self.charts.strip().lower() == "all":
            return None
        return [Chart.parse(c) for c in self.charts.split(",") if c.strip()]

    def echo(self) -> dict:
        """Only the settings that can change the report content."""
        return {
            "d": self.d,
            "bound": self.bound,
            "tuple": self.tuple,
            "variant": self.variant,
            "charts": self.charts,
            "sample_primes": self.sample_primes,
        }


def resolve_tuple(cfg: RunConfig, progress: Progress | None = None) -> PrimeTuple:
    L = cfg.field()
    if cfg.tuple:
        return PrimeTuple.parse(cfg.tuple, L)
    return find_prime_tuple(L, cfg.bound, progress)


def torsion_report(L: QuadField) -> dict:
    """Torsion of E and of its quadratic twist by d, plus where gamma sends the known points."""
    d = L.d
    curve = default_curve(L)
    tors_E = sorted(nagell_lutz_torsion(0, -16))
    # d*y^2 = x^3 - 16 becomes y^2 = x^3 - 16 d^3 after scaling by d^3.
    tors_twist = sorted(nagell_lutz_torsion(0, -16 * d**3))
    gamma_K = [[str(c) for c in eval_gamma(pt, curve)] for pt in curve.known_K_points]
    gamma_L = [
        [str(c) for c in eval_gamma(pt, curve)] for pt in curve.known_L_points if pt not in curve.known_K_points
    ]
    k_ok = all(eval_gamma(pt, curve)[1] == 0 for pt in curve.known_K_points)
    l_ok = all(
        eval_gamma(pt, curve)[0] == 0 for pt in curve.known_L_points if pt not in curve.known_K_points
    )
    return {
        "E": {"a4": 0, "a6": -16, "torsion": [[str(x), str(y)] for x, y in tors_E]},
        "E_twist": {"a4": 0, "a6": -16 * d**3, "torsion": [[str(x), str(y)] for x, y in tors_twist]},
        "gamma_K_points": gamma_K,
        "gamma_L_points": gamma_L,
        "E_torsion_trivial": not tors_E,
        "gamma_ok": k_ok and l_ok,
        "overall": not tors_E and k_ok and l_ok,
    }


def verify_report(cfg: RunConfig, progress: Progress | None = None) -> dict:
    t = resolve_tuple(cfg, progress)
    conditions = check_conditions(t)
    out: dict = {"tuple": tuple_to_json(t, conditions)}
    failed: list[str] = [f"condition {name}" for name in conditions.failed()]
    if conditions.overall:
        if progress:
            progress("verifying Z^f and Z^g")
        family = build_surfaces(t)
        out["surface"] = family.to_json()
        zf, zg = verify_Zf(t, cfg.sample_primes), verify_Zg(t, cfg.sample_primes)
        out["Zf"], out["Zg"] = zf.to_json(), zg.to_json()
        failed += [f"Zf {x}" for x in zf.failures()] + [f"Zg {x}" for x in zg.failures()]
    tors = torsion_report(t.field)
    out["torsion"] = tors
    if not tors["overall"]:
        failed.append("torsion")
    out["failed"] = failed
    out["overall"] = not failed
    return out


def branch_report(cfg: RunConfig, progress: Progress | None = None) -> dict:
    variants = {"hasse": [Variant.HASSE], "wa": [Variant.WA], "both": [Variant.HASSE, Variant.WA]}[cfg.variant]
    out: dict = {}
    for variant in variants:
        if variant is Variant.HASSE:
            hasse_cfg = cfg
            if cfg.tuple is None and cfg.d is None:
                hasse_cfg = RunConfig(**{**cfg.__dict__, "d": STANDARD_D, "tuple": STANDARD_TUPLE})
            family = build_surfaces(resolve_tuple(hasse_cfg, progress))
            charts = cfg.chart_list()
            key = "hasse"
        else:
            family = build_wa_surface()
            charts = None
            key = "wa"
        if progress:
            progress(f"branch locus for {family.variant.value}")
        rep = run_branch(family, charts or charts_for(family.variant), progress, cfg.jobs)
        body = rep.to_json()
        if variant is Variant.WA:
            det_points = conic_pencil_R(family)
            body["determinant_R"] = [format_point(p) for p in det_points]
            body["routes_agree"] = det_points == rep.R_points_rational
            body["overall"] = body["overall"] and body["routes_agree"]
        out[key] = body
    out["overall"] = all(v["overall"] for v in out.values() if isinstance(v, dict))
    return out


def full_report(cfg: RunConfig, progress: Progress | None = None) -> dict:
    ver = verify_report(cfg, progress)
    br = branch_report(cfg, progress)
    return {**{k: v for k, v in ver.items() if k != "overall"}, "branch": br, "overall": ver["overall"] and br["overall"]}


def envelope(command: str, cfg: RunConfig, body: dict) -> dict:
    return {"schema": SCHEMA, "command": command, "config": cfg.echo(), **body}


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    return _markdown(report)


def _markdown(report: dict) -> str:
    lines = [f"# {report.get('command', 'report')} (schema {report.get('schema')})", ""]
    if "overall" in report:
        lines += [f"**Overall:** {'PASS' if report['overall'] else 'FAIL'}", ""]
    for key, value in report.items():
        if key in ("schema", "command", "overall"):
            continue
        lines.append(f"## {key}")
        lines.append("")
        lines.extend(_md_value(value, 0))
        lines.append("")
    return "\n".join(lines).rstrip() + "\n"


def _md_value(value, depth: int) -> list[str]:
    pad = "  " * depth
    if isinstance(value, dict):
        out = []
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}- **{k}**:")
                out.extend(_md_value(v, depth + 1))
            else:
                out.append(f"{pad}- **{k}**: `{_scalar(v)}`")
        return out
    if isinstance(value, list):
        out = []
        for v in value:
            if isinstance(v, (dict, list)):
                out.append(f"{pad}-")
                out.extend(_md_value(v, depth + 1))
            else:
                out.append(f"{pad}- `{_scalar(v)}`")
        return out
    return [f"{pad}`{_scalar(value)}`"]


def _scalar(v) -> str:
    if v is True:
        return "true"
    if v is False:
        return "false"
    if v is None:
        return "null"
    return str(v)
