"""Command-line interface.

Subcommands:
    verify <scene>         run the inequality checks declared in the scene
    audit <scene>          evaluate the derivation identities per point
    survey <scene>         min-margin table over all interpretation variants
    fixtures               list built-in immersions and their oracle values
    check-ambient <scene>  Kähler and admissibility validation only

Exit codes: 0 all checks hold, 1 error (scene, gate, or per-point), 2 a
falsified check was found (takes precedence over per-point errors).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import KahlergeoError, SceneError
from .report import RENDERERS
from .runner import (Overrides, render_audit_csv, render_audit_json,
                     render_audit_text, render_check_ambient_json,
                     render_check_ambient_text, render_survey_json,
                     render_survey_text, run_audit, run_check_ambient,
                     run_survey, run_verify)
from .scene import parse_scene

FIXTURE_TABLE = """\
built-in immersions (flat C^2 chart unless placed elsewhere by the scene):

  name                 params           closed-form oracles
  sphere               r (default 1)    h = (1/r) I against the inward normal,
                                        ||H||^2 = 1/r^2, ||h||^2 = 2/r^2,
                                        K = Ric = rho = 1/r^2, N_p = {0}
  cylinder             r (default 1)    principal curvatures {1/r, 0},
                                        ||H||^2 = 1/(4 r^2), ||h||^2 = 1/r^2,
                                        K = rho = 0, N_p = axis direction
  torus                r1, r2 (1, 1)    flat (K = rho = 0), anti-invariant,
                                        ||H||^2 = (1/r1^2 + 1/r2^2)/4, N_p = {0}
  complex-line-plane   (none)           invariant (slant 0), totally geodesic,
                                        ||P||^2 = 2
  totally-real-plane   (none)           anti-invariant (slant pi/2), totally
                                        geodesic, ||P||^2 = 0
  slant-plane          theta (pi/3)     slant angle theta, totally geodesic,
                                        ||P||^2 = 2 cos^2(theta)
"""


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("scene", help="scene file path")
    p.add_argument("--tol", type=float, default=None,
                   help="override the check tolerance")
    p.add_argument("--fd-step", type=float, default=None,
                   help="override the default finite-difference base step")
    p.add_argument("--interpretation", default=None,
                   help="single interpretation name (or 'all')")
    p.add_argument("--format", dest="format", default=None,
                   choices=["text", "json", "csv"],
                   help="override the output format")
    p.add_argument("--out", default=None, help="write the report to this path")
    p.add_argument("--point", default=None,
                   help="check a single parameter point, e.g. 0.5,1.2")
    p.add_argument("--direction", default=None,
                   help="single direction as frame coefficients, e.g. 1,0")


def _parse_tuple(text: str | None):
    if text is None:
        return None
    return tuple(float(part) for part in text.split(","))


def _overrides(args) -> Overrides:
    interp = getattr(args, "interpretation", None)
    return Overrides(
        tol=args.tol, fd_step=args.fd_step,
        interpretation=interp if interp != "all" else "all",
        format=args.format, out=args.out,
        point=_parse_tuple(args.point),
        direction=_parse_tuple(args.direction),
    )


def _load_scene(path: str):
    text = Path(path).read_text(encoding="utf-8")
    return parse_scene(text)


def _emit(text: str, cfg_out, overrides: Overrides) -> None:
    path = overrides.out if overrides.out is not None else cfg_out.path
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="kahlergeo",
        description="curvature invariants of submanifolds in Kähler ambient "
                    "spaces, and audits of the associated Ricci bounds")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, descr in (("verify", "run the checks declared in a scene"),
                        ("audit", "evaluate the derivation identities"),
                        ("survey", "margin table over interpretation variants"),
                        ("check-ambient", "validate the ambient only")):
        sp = sub.add_parser(name, help=descr)
        _add_common(sp)

    sub.add_parser("fixtures", help="list built-in immersions and oracles")

    args = parser.parse_args(argv)

    if args.command == "fixtures":
        sys.stdout.write(FIXTURE_TABLE)
        return 0

    overrides = _overrides(args)
    try:
        cfg = _load_scene(args.scene)
    except FileNotFoundError:
        sys.stderr.write(f"error: scene file not found: {args.scene}\n")
        return 1
    except SceneError as exc:
        sys.stderr.write(f"scene error: {exc}\n")
        return 1
    except KahlergeoError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1

    fmt = overrides.format if overrides.format is not None else cfg.output.format

    if args.command == "verify":
        report = run_verify(cfg, overrides)
        _emit(RENDERERS[fmt](report), cfg.output, overrides)
        return report.exit_code()

    if args.command == "audit":
        report = run_audit(cfg, overrides)
        renderer = {"text": render_audit_text, "json": render_audit_json,
                    "csv": render_audit_csv}[fmt]
        _emit(renderer(report), cfg.output, overrides)
        return report.exit_code()

    if args.command == "survey":
        report = run_survey(cfg, overrides)
        renderer = {"text": render_survey_text,
                    "json": render_survey_json}.get(fmt)
        if renderer is None:
            sys.stderr.write("survey supports text and json formats\n")
            return 1
        _emit(renderer(report), cfg.output, overrides)
        return report.exit_code()

    if args.command == "check-ambient":
        report = run_check_ambient(cfg, overrides)
        renderer = {"text": render_check_ambient_text,
                    "json": render_check_ambient_json}.get(fmt)
        if renderer is None:
            sys.stderr.write("check-ambient supports text and json formats\n")
            return 1
        _emit(renderer(report), cfg.output, overrides)
        return report.exit_code()

    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    raise SystemExit(main())
