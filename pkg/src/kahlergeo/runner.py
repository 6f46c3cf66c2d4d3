"""Scene execution: gates, batch sampling, and report assembly.

Row ordering is fixture (scene order), then sample index, then direction
index, then check name, then interpretation name; reruns of the same scene
produce identical reports.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ambient import check_bochner_flat, check_kaehler
from .errors import KahlergeoError, PreconditionError
from .immersion import frames_at
from .inequalities import (BOCHNER_GATE_TOL, check_ricci_bound,
                           check_ricci_bound_slant, check_ricci_bound_special,
                           default_directions, enumerate_interpretations,
                           identity_audit, interpretation_survey,
                           resolve_interpretation)
from .report import ReportRow, RunError, RunReport, format_float, round12
from .scene import SceneConfig, build_ambient, build_immersions, sample_points
from .tensors import DEFAULT_FD_POLICY, FdPolicy

KAEHLER_GATE_TOL = 1e-6
MAX_GATE_PROBES = 3

_SPECIAL = {
    "ricci-bound-einstein": "einstein",
    "ricci-bound-anti-invariant": "anti-invariant",
    "ricci-bound-invariant": "invariant",
}


@dataclass(frozen=True)
class Overrides:
    """Command-line overrides applied on top of the scene file."""

    tol: float | None = None
    fd_step: float | None = None
    interpretation: str | None = None
    format: str | None = None
    out: str | None = None
    point: tuple[float, ...] | None = None
    direction: tuple[float, ...] | None = None


def _policy(overrides: Overrides) -> FdPolicy:
    if overrides.fd_step is None:
        return DEFAULT_FD_POLICY
    return FdPolicy(h0=overrides.fd_step,
                    scheme=DEFAULT_FD_POLICY.scheme,
                    richardson_levels=DEFAULT_FD_POLICY.richardson_levels)


def _resolve_interps(cfg: SceneConfig, overrides: Overrides):
    names = cfg.check.interpretations
    if overrides.interpretation is not None:
        names = (overrides.interpretation,)
    if "all" in names:
        return enumerate_interpretations()
    return tuple(resolve_interpretation(name) for name in names)


def _points_for(cfg: SceneConfig, imm, overrides: Overrides):
    if overrides.point is not None:
        return [np.asarray(overrides.point, dtype=float)]
    return sample_points(cfg, imm)


def _directions_for(cfg: SceneConfig, n: int, overrides: Overrides):
    if overrides.direction is not None:
        d = np.asarray(overrides.direction, dtype=float)
        return [d / np.linalg.norm(d)]
    spec = cfg.check.directions
    if isinstance(spec, int):
        return list(default_directions(n, spec))
    return [np.asarray(d, dtype=float) for d in spec]


def _gate(amb, probe_points, policy) -> dict:
    """Kähler and admissibility residuals over a few probe points."""
    kae = 0.0
    boch = 0.0
    for p in probe_points[:MAX_GATE_PROBES]:
        rep = check_kaehler(amb, p, policy=policy)
        kae = max(kae, rep.max_residual())
        if kae <= KAEHLER_GATE_TOL:
            boch = max(boch, check_bochner_flat(amb, p, policy=policy))
    return {"ambient": amb.name, "kaehler_residual": kae,
            "bochner_residual": boch}


def run_verify(cfg: SceneConfig, overrides: Overrides = Overrides()) -> RunReport:
    report = RunReport()
    tol = overrides.tol if overrides.tol is not None else cfg.check.tol
    eq_tol = cfg.check.eq_tol
    report.gates["tol"] = tol
    policy = _policy(overrides)

    try:
        amb = build_ambient(cfg)
        immersions = build_immersions(cfg)
        interps = _resolve_interps(cfg, overrides)
        fixture_points = [(imm, _points_for(cfg, imm, overrides))
                          for imm in immersions]
    except KahlergeoError as exc:
        report.errors.append(RunError(fixture="scene", point=None,
                                      message=str(exc)))
        return report

    probes = [imm(u) for imm, pts in fixture_points for u in pts[:1]]
    gates = _gate(amb, probes, policy)
    report.gates.update(gates)
    if gates["kaehler_residual"] > KAEHLER_GATE_TOL:
        report.errors.append(RunError(
            fixture="ambient", point=None,
            message=("ambient failed Kähler validity: max structure residual "
                     f"{format_float(gates['kaehler_residual'])} exceeds "
                     f"{KAEHLER_GATE_TOL:g}")))
        return report
    if gates["bochner_residual"] > BOCHNER_GATE_TOL:
        report.errors.append(RunError(
            fixture="ambient", point=None,
            message=("ambient is not of the assembled Bochner-flat type "
                     f"(residual {format_float(gates['bochner_residual'])}); "
                     "inequality checks are not applicable")))
        return report
    ambient_residual = gates["bochner_residual"]

    for imm, points in fixture_points:
        for u in points:
            try:
                base = frames_at(imm, amb, u, policy=policy)
            except KahlergeoError as exc:
                report.errors.append(RunError(
                    fixture=imm.name, point=tuple(float(v) for v in u),
                    message=str(exc)))
                continue
            directions = _directions_for(cfg, base.n, overrides)
            for direction in directions:
                vec = np.asarray(direction, float) @ base.tangent_frame
                try:
                    fp = frames_at(imm, amb, u, lock=vec, policy=policy)
                except KahlergeoError as exc:
                    report.errors.append(RunError(
                        fixture=imm.name, point=tuple(float(v) for v in u),
                        message=str(exc)))
                    continue
                joint = fp.joint_frame()
                orth = float(np.max(np.abs(
                    joint @ fp.metric @ joint.T - np.eye(joint.shape[0]))))
                residuals = {
                    "frame_orthonormality": orth,
                    "h_symmetry": float(np.max(np.abs(
                        fp.h - fp.h.transpose(0, 2, 1)))),
                }
                for check_name in cfg.check.checks:
                    for interp in interps:
                        try:
                            verdict = _run_check(check_name, fp, imm, amb,
                                                 interp, tol, eq_tol,
                                                 ambient_residual)
                        except PreconditionError as exc:
                            report.errors.append(RunError(
                                fixture=imm.name,
                                point=tuple(float(v) for v in u),
                                message=f"{check_name}: {exc}"))
                            continue
                        report.rows.append(ReportRow(
                            fixture=imm.name, point=verdict.point,
                            direction=tuple(round12(c) for c in direction),
                            theorem=verdict.theorem,
                            interpretation=interp.name,
                            lhs=verdict.lhs, rhs=verdict.rhs,
                            margin=verdict.margin,
                            equality_case=verdict.equality_case,
                            residuals=residuals))
    return report


def _run_check(check_name, fp, imm, amb, interp, tol, eq_tol, ambient_residual):
    kwargs = dict(holds_scale=tol, eq_scale=eq_tol,
                  ambient_residual=ambient_residual)
    if check_name == "ricci-bound":
        return check_ricci_bound(fp, imm, amb, interp, **kwargs)
    if check_name == "ricci-bound-slant":
        return check_ricci_bound_slant(fp, imm, amb, interp, **kwargs)
    if check_name in _SPECIAL:
        return check_ricci_bound_special(fp, imm, amb, _SPECIAL[check_name],
                                         interp, **kwargs)
    raise ValueError(f"unknown check {check_name!r}")


# ---------------------------------------------------------------------------
# audit runs

@dataclass
class AuditRunReport:
    entries: list = field(default_factory=list)  # (fixture, IdentityAudit)
    errors: list = field(default_factory=list)
    gates: dict = field(default_factory=dict)

    def exit_code(self) -> int:
        return 1 if self.errors else 0


def run_audit(cfg: SceneConfig, overrides: Overrides = Overrides()) -> AuditRunReport:
    report = AuditRunReport()
    policy = _policy(overrides)
    try:
        amb = build_ambient(cfg)
        immersions = build_immersions(cfg)
        interp = _resolve_interps(cfg, overrides)[0]
        fixture_points = [(imm, _points_for(cfg, imm, overrides))
                          for imm in immersions]
    except KahlergeoError as exc:
        report.errors.append(RunError("scene", None, str(exc)))
        return report
    probes = [imm(u) for imm, pts in fixture_points for u in pts[:1]]
    gates = _gate(amb, probes, policy)
    report.gates.update(gates)
    if gates["kaehler_residual"] > KAEHLER_GATE_TOL:
        report.errors.append(RunError(
            "ambient", None, "ambient failed Kähler validity"))
        return report
    if gates["bochner_residual"] > BOCHNER_GATE_TOL:
        report.errors.append(RunError(
            "ambient", None, "ambient is not of the assembled Bochner-flat type"))
        return report
    for imm, points in fixture_points:
        for u in points:
            try:
                fp = frames_at(imm, amb, u, policy=policy)
                audit = identity_audit(fp, imm, amb, interp,
                                       ambient_residual=gates["bochner_residual"])
            except KahlergeoError as exc:
                report.errors.append(RunError(
                    imm.name, tuple(float(v) for v in u), str(exc)))
                continue
            report.entries.append((imm.name, audit))
    return report


def render_audit_json(report: AuditRunReport) -> str:
    import json

    def step_obj(step):
        return {"lhs": round12(step.lhs), "rhs": round12(step.rhs),
                "residual": round12(step.residual)}

    obj = {
        "gates": {k: (round12(v) if isinstance(v, float) else v)
                  for k, v in sorted(report.gates.items())},
        "entries": [
            {
                "fixture": fixture,
                "point": [round12(v) for v in audit.point],
                "trace_identity": step_obj(audit.trace_identity),
                "block_sum": step_obj(audit.block_sum),
                "square_decomposition": round12(audit.square_decomposition),
            }
            for fixture, audit in report.entries
        ],
        "errors": [e.to_json_obj() for e in report.errors],
    }
    return json.dumps(obj, indent=2) + "\n"


def render_audit_csv(report: AuditRunReport) -> str:
    lines = ["fixture,point,step,lhs,rhs,residual"]
    for fixture, audit in report.entries:
        pt = ";".join(format_float(v) for v in audit.point)
        for step_name, step in (("trace_identity", audit.trace_identity),
                                ("block_sum", audit.block_sum)):
            lines.append(",".join([
                fixture, pt, step_name, format_float(step.lhs),
                format_float(step.rhs), format_float(step.residual)]))
        lines.append(",".join([
            fixture, pt, "square_decomposition", "0", "0",
            format_float(audit.square_decomposition)]))
    return "\n".join(lines) + "\n"


def render_audit_text(report: AuditRunReport) -> str:
    lines = []
    for key, val in sorted(report.gates.items()):
        sval = format_float(val) if isinstance(val, float) else str(val)
        lines.append(f"{key}: {sval}")
    for fixture, audit in report.entries:
        pt = ";".join(format_float(v) for v in audit.point)
        lines.append(f"{fixture} @ {pt}")
        for name, step in (("trace identity", audit.trace_identity),
                           ("block sum", audit.block_sum)):
            lines.append(
                f"  {name}: lhs={format_float(step.lhs)} "
                f"rhs={format_float(step.rhs)} "
                f"residual={format_float(step.residual)}")
        lines.append("  square decomposition residual: "
                     + format_float(audit.square_decomposition))
    for err in report.errors:
        lines.append(f"ERROR [{err.fixture}]: {err.message}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# survey runs

@dataclass
class SurveyRunReport:
    survey: object = None
    errors: list = field(default_factory=list)
    gates: dict = field(default_factory=dict)

    def exit_code(self) -> int:
        if self.errors:
            return 1
        return 2 if self.survey is not None and self.survey.falsified else 0


def run_survey(cfg: SceneConfig, overrides: Overrides = Overrides()) -> SurveyRunReport:
    report = SurveyRunReport()
    policy = _policy(overrides)
    try:
        amb = build_ambient(cfg)
        immersions = build_immersions(cfg)
        fixture_points = [(imm, _points_for(cfg, imm, overrides))
                          for imm in immersions]
    except KahlergeoError as exc:
        report.errors.append(RunError("scene", None, str(exc)))
        return report
    probes = [imm(u) for imm, pts in fixture_points for u in pts[:1]]
    gates = _gate(amb, probes, policy)
    report.gates.update(gates)
    if gates["kaehler_residual"] > KAEHLER_GATE_TOL:
        report.errors.append(RunError(
            "ambient", None, "ambient failed Kähler validity"))
        return report
    if gates["bochner_residual"] > BOCHNER_GATE_TOL:
        report.errors.append(RunError(
            "ambient", None, "ambient is not of the assembled Bochner-flat type"))
        return report
    jobs = []
    for imm, points in fixture_points:
        directions = _directions_for(cfg, imm.param_dim, overrides)
        jobs.append((imm.name, imm, amb, points, directions))
    try:
        report.survey = interpretation_survey(jobs, falsify_tol=cfg.check.tol)
    except KahlergeoError as exc:
        report.errors.append(RunError("survey", None, str(exc)))
    return report


def render_survey_json(report: SurveyRunReport) -> str:
    import json

    obj = {"gates": {k: (round12(v) if isinstance(v, float) else v)
                     for k, v in sorted(report.gates.items())}}
    if report.survey is not None:
        sv = report.survey
        obj.update({
            "variants": list(sv.variants),
            "fixtures": list(sv.fixtures),
            "min_margins": [[round12(v) for v in row] for row in sv.min_margins],
            "falsified": list(sv.falsified),
        })
    obj["errors"] = [e.to_json_obj() for e in report.errors]
    return json.dumps(obj, indent=2) + "\n"


def render_survey_text(report: SurveyRunReport) -> str:
    lines = []
    for key, val in sorted(report.gates.items()):
        sval = format_float(val) if isinstance(val, float) else str(val)
        lines.append(f"{key}: {sval}")
    sv = report.survey
    if sv is not None:
        width = max(len(v) for v in sv.variants) + 2
        cols = [max(len(f), 14) for f in sv.fixtures]
        header = "variant".ljust(width) + "  ".join(
            f.rjust(c) for f, c in zip(sv.fixtures, cols))
        lines.append(header)
        for vi, variant in enumerate(sv.variants):
            cells = [format_float(sv.min_margins[vi][fi]).rjust(cols[fi])
                     for fi in range(len(sv.fixtures))]
            lines.append(variant.ljust(width) + "  ".join(cells))
        lines.append("falsified variants: "
                     + (", ".join(sv.falsified) if sv.falsified else "(none)"))
    for err in report.errors:
        lines.append(f"ERROR [{err.fixture}]: {err.message}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# ambient validation runs

@dataclass
class AmbientCheckReport:
    entries: list = field(default_factory=list)
    errors: list = field(default_factory=list)
    valid: bool = True

    def exit_code(self) -> int:
        return 0 if self.valid and not self.errors else 1


def run_check_ambient(cfg: SceneConfig, overrides: Overrides = Overrides()) -> AmbientCheckReport:
    report = AmbientCheckReport()
    policy = _policy(overrides)
    try:
        amb = build_ambient(cfg)
        immersions = build_immersions(cfg)
        points = _points_for(cfg, immersions[0], overrides)
    except KahlergeoError as exc:
        report.errors.append(RunError("scene", None, str(exc)))
        report.valid = False
        return report
    probes = [immersions[0](u) for u in points[:5]]
    for p in probes:
        try:
            rep = check_kaehler(amb, p, policy=policy)
            boch = (check_bochner_flat(amb, p, policy=policy)
                    if rep.is_valid(KAEHLER_GATE_TOL) else None)
        except KahlergeoError as exc:
            report.errors.append(RunError(amb.name,
                                          tuple(float(v) for v in p), str(exc)))
            report.valid = False
            continue
        if not rep.is_valid(KAEHLER_GATE_TOL):
            report.valid = False
        report.entries.append((tuple(float(v) for v in p), rep, boch))
    return report


def render_check_ambient_json(report: AmbientCheckReport) -> str:
    import json

    obj = {
        "valid": report.valid,
        "points": [
            {
                "point": [round12(v) for v in pt],
                "j_squared": round12(rep.j_squared),
                "hermitian": round12(rep.hermitian),
                "parallel_j": round12(rep.parallel_j),
                "bochner_residual": None if boch is None else round12(boch),
            }
            for pt, rep, boch in report.entries
        ],
        "errors": [e.to_json_obj() for e in report.errors],
    }
    return json.dumps(obj, indent=2) + "\n"


def render_check_ambient_text(report: AmbientCheckReport) -> str:
    lines = []
    for pt, rep, boch in report.entries:
        loc = ";".join(format_float(v) for v in pt)
        lines.append(
            f"point {loc}: J^2+I={format_float(rep.j_squared)} "
            f"hermitian={format_float(rep.hermitian)} "
            f"parallel_J={format_float(rep.parallel_j)} "
            + ("bochner=skipped" if boch is None
               else f"bochner={format_float(boch)}"))
    for err in report.errors:
        lines.append(f"ERROR: {err.message}")
    lines.append("ambient valid" if report.valid else "ambient INVALID")
    return "\n".join(lines) + "\n"
