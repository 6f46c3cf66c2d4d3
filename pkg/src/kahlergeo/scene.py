"""Scene files: a small key-block format describing one verification run.

A scene is a sequence of named blocks with ``key = value`` entries:

    ambient { kind = "flat"  m = 2 }
    immersion { kind = "builtin"  name = "sphere"  params = [1.0] }
    sample { grid = [[0.5, 2.6, 3], [0.3, 5.9, 3]] }
    check { checks = ["ricci-bound"]  interpretations = "all"  tol = 1e-6 }
    output { format = "json"  path = "report.json" }

Values are numbers, quoted strings, or bracketed lists (nesting allowed);
``#`` starts a comment. Blocks ``ambient`` and ``immersion`` are required,
the rest fall back to documented defaults. Unknown blocks, unknown keys and
duplicate blocks are errors; parse errors carry 1-based line/column.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ambient import (AmbientManifold, complex_space_form, flat_space,
                      perturb_j, sphere_product)
from .errors import SceneError
from .exprlang import evaluate, parse_expression
from .immersion import DEFAULT_GRIDS, Immersion, builtin_immersion

BLOCKS = ("ambient", "immersion", "sample", "check", "output")

AMBIENT_KEYS = {"kind", "m", "c", "radii", "j_perturb"}
IMMERSION_KEYS = {"kind", "name", "names", "params", "parameters", "components"}
SAMPLE_KEYS = {"grid", "points"}
CHECK_KEYS = {"checks", "interpretations", "tol", "eq_tol", "directions"}
OUTPUT_KEYS = {"format", "path"}

VALID_CHECKS = ("ricci-bound", "ricci-bound-slant", "ricci-bound-einstein",
                "ricci-bound-anti-invariant", "ricci-bound-invariant")


@dataclass(frozen=True)
class AmbientSpec:
    kind: str = "flat"
    m: int = 2
    c: float | None = None
    radii: tuple[float, float] | None = None
    j_perturb: tuple[int, int, float] | None = None


@dataclass(frozen=True)
class ImmersionSpec:
    kind: str = "builtin"
    names: tuple[str, ...] = ("totally-real-plane",)
    params: tuple[float, ...] | None = None
    parameters: tuple[str, ...] | None = None
    components: tuple[str, ...] | None = None


@dataclass(frozen=True)
class SampleSpec:
    grid: tuple[tuple[float, float, int], ...] | None = None
    points: tuple[tuple[float, ...], ...] | None = None


@dataclass(frozen=True)
class CheckSpec:
    checks: tuple[str, ...] = ("ricci-bound",)
    interpretations: tuple[str, ...] = ("statement-default",)
    tol: float = 1e-6
    eq_tol: float = 1e-5
    directions: int | tuple[tuple[float, ...], ...] = 8


@dataclass(frozen=True)
class OutputSpec:
    format: str = "text"
    path: str | None = None


@dataclass(frozen=True)
class SceneConfig:
    ambient: AmbientSpec = field(default_factory=AmbientSpec)
    immersion: ImmersionSpec = field(default_factory=ImmersionSpec)
    sample: SampleSpec = field(default_factory=SampleSpec)
    check: CheckSpec = field(default_factory=CheckSpec)
    output: OutputSpec = field(default_factory=OutputSpec)


# ---------------------------------------------------------------------------
# tokenizer / parser

@dataclass(frozen=True)
class _Tok:
    kind: str  # name | number | string | punct | end
    value: object
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_line, start_col = line, col
        if ch == '"':
            jx = i + 1
            while jx < n and text[jx] != '"':
                if text[jx] == "\n":
                    raise SceneError("unterminated string", start_line, start_col)
                jx += 1
            if jx >= n:
                raise SceneError("unterminated string", start_line, start_col)
            toks.append(_Tok("string", text[i + 1:jx], start_line, start_col))
            col += jx + 1 - i
            i = jx + 1
            continue
        if ch.isdigit() or ch in "+-." and i + 1 < n and (text[i + 1].isdigit() or text[i + 1] == "."):
            jx = i
            if text[jx] in "+-":
                jx += 1
            seen_dot = seen_exp = False
            while jx < n:
                c = text[jx]
                if c.isdigit():
                    jx += 1
                elif c == "." and not seen_dot and not seen_exp:
                    seen_dot = True
                    jx += 1
                elif c in "eE" and not seen_exp and jx + 1 < n and (
                        text[jx + 1].isdigit() or text[jx + 1] in "+-"):
                    seen_exp = True
                    jx += 1
                    if text[jx] in "+-":
                        jx += 1
                else:
                    break
            raw = text[i:jx]
            value: object
            if seen_dot or seen_exp:
                value = float(raw)
            else:
                value = int(raw)
            toks.append(_Tok("number", value, start_line, start_col))
            col += jx - i
            i = jx
            continue
        if ch.isalpha() or ch == "_":
            jx = i
            while jx < n and (text[jx].isalnum() or text[jx] in "_-"):
                jx += 1
            toks.append(_Tok("name", text[i:jx], start_line, start_col))
            col += jx - i
            i = jx
            continue
        if ch in "{}[]=,":
            toks.append(_Tok("punct", ch, start_line, start_col))
            i += 1
            col += 1
            continue
        raise SceneError(f"unexpected character {ch!r}", start_line, start_col)
    toks.append(_Tok("end", None, line, col))
    return toks


class _SceneParser:
    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.pos = 0

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def advance(self) -> _Tok:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect_punct(self, ch: str) -> _Tok:
        t = self.peek()
        if t.kind != "punct" or t.value != ch:
            raise SceneError(f"expected {ch!r}", t.line, t.col)
        return self.advance()

    def parse(self) -> dict[str, dict]:
        blocks: dict[str, dict] = {}
        while self.peek().kind != "end":
            t = self.peek()
            if t.kind != "name":
                raise SceneError("expected block name", t.line, t.col)
            if t.value not in BLOCKS:
                raise SceneError(f"unknown block {t.value!r}", t.line, t.col)
            if t.value in blocks:
                raise SceneError(f"duplicate block {t.value!r}", t.line, t.col)
            self.advance()
            blocks[t.value] = self.block_body()
        return blocks

    def block_body(self) -> dict:
        self.expect_punct("{")
        entries: dict[str, object] = {}
        while True:
            t = self.peek()
            if t.kind == "punct" and t.value == "}":
                self.advance()
                return entries
            if t.kind != "name":
                raise SceneError("expected key or '}'", t.line, t.col)
            key = self.advance().value
            self.expect_punct("=")
            entries[key] = self.value()

    def value(self):
        t = self.peek()
        if t.kind in ("number", "string"):
            return self.advance().value
        if t.kind == "punct" and t.value == "[":
            self.advance()
            items = []
            first = True
            while True:
                t = self.peek()
                if t.kind == "punct" and t.value == "]":
                    self.advance()
                    return tuple(items)
                if not first:
                    if t.kind == "punct" and t.value == ",":
                        self.advance()
                        t = self.peek()
                        if t.kind == "punct" and t.value == "]":
                            self.advance()
                            return tuple(items)
                    else:
                        raise SceneError("expected ',' or ']'", t.line, t.col)
                items.append(self.value())
                first = False
        raise SceneError("expected a value (number, string, or list)",
                         t.line, t.col)


def _check_keys(block: str, entries: dict, allowed: set[str]) -> None:
    for key in entries:
        if key not in allowed:
            raise SceneError(f"unknown key {key!r}", block=block)


def parse_scene(text: str) -> SceneConfig:
    """Parse scene text into a validated :class:`SceneConfig`."""
    blocks = _SceneParser(_tokenize(text)).parse()
    for required in ("ambient", "immersion"):
        if required not in blocks:
            raise SceneError(f"missing required block {required!r}")

    amb_e = blocks["ambient"]
    _check_keys("ambient", amb_e, AMBIENT_KEYS)
    kind = amb_e.get("kind", "flat")
    if kind not in ("flat", "csf", "s2xs2"):
        raise SceneError(f"unknown ambient kind {kind!r}", block="ambient")
    m = int(amb_e.get("m", 2))
    if m < 1:
        raise SceneError("ambient m must be a positive integer", block="ambient")
    c = amb_e.get("c")
    if kind == "csf" and c is None:
        raise SceneError("csf ambient requires c", block="ambient")
    radii = amb_e.get("radii")
    if kind == "s2xs2":
        if radii is None or len(radii) != 2:
            raise SceneError("s2xs2 ambient requires radii = [r1, r2]",
                             block="ambient")
        radii = (float(radii[0]), float(radii[1]))
        m = 2
    jp = amb_e.get("j_perturb")
    if jp is not None:
        if len(jp) != 3:
            raise SceneError("j_perturb must be [row, col, eps]", block="ambient")
        jp = (int(jp[0]), int(jp[1]), float(jp[2]))
    ambient = AmbientSpec(kind=kind, m=m,
                          c=None if c is None else float(c),
                          radii=radii, j_perturb=jp)

    imm_e = blocks["immersion"]
    _check_keys("immersion", imm_e, IMMERSION_KEYS)
    ikind = imm_e.get("kind", "builtin")
    if ikind not in ("builtin", "expression"):
        raise SceneError(f"unknown immersion kind {ikind!r}", block="immersion")
    if ikind == "builtin":
        if "name" in imm_e and "names" in imm_e:
            raise SceneError("give either name or names, not both",
                             block="immersion")
        if "names" in imm_e:
            names = tuple(str(v) for v in imm_e["names"])
        else:
            names = (str(imm_e.get("name", "totally-real-plane")),)
        params = imm_e.get("params")
        if params is not None:
            if len(names) > 1:
                raise SceneError("params requires a single fixture name",
                                 block="immersion")
            params = tuple(float(v) for v in params)
        immersion = ImmersionSpec(kind="builtin", names=names, params=params)
    else:
        parameters = imm_e.get("parameters")
        components = imm_e.get("components")
        if not parameters or not components:
            raise SceneError("expression immersion requires parameters and "
                             "components", block="immersion")
        parameters = tuple(str(v) for v in parameters)
        components = tuple(str(v) for v in components)
        if len(components) != 2 * m:
            raise SceneError(
                f"component count {len(components)} does not match ambient "
                f"real dimension {2 * m}", block="immersion")
        for comp in components:
            parse_expression(comp, parameters)  # raises ExprError on bad text
        immersion = ImmersionSpec(kind="expression", names=("expression",),
                                  parameters=parameters, components=components)

    sample = SampleSpec()
    if "sample" in blocks:
        smp_e = blocks["sample"]
        _check_keys("sample", smp_e, SAMPLE_KEYS)
        grid = smp_e.get("grid")
        if grid is not None:
            parsed = []
            for axis in grid:
                if len(axis) != 3:
                    raise SceneError("grid axes are [lo, hi, count]",
                                     block="sample")
                lo, hi, count = float(axis[0]), float(axis[1]), int(axis[2])
                if count < 1:
                    raise SceneError("grid counts must be >= 1", block="sample")
                parsed.append((lo, hi, count))
            grid = tuple(parsed)
        points = smp_e.get("points")
        if points is not None:
            points = tuple(tuple(float(v) for v in pt) for pt in points)
        sample = SampleSpec(grid=grid, points=points)

    check = CheckSpec()
    if "check" in blocks:
        chk_e = blocks["check"]
        _check_keys("check", chk_e, CHECK_KEYS)
        checks = chk_e.get("checks", ("ricci-bound",))
        if isinstance(checks, str):
            checks = (checks,)
        for name in checks:
            if name not in VALID_CHECKS:
                raise SceneError(f"unknown check {name!r}; known: "
                                 + ", ".join(VALID_CHECKS), block="check")
        interps = chk_e.get("interpretations", ("statement-default",))
        if isinstance(interps, str):
            interps = ("all",) if interps == "all" else (interps,)
        tol = float(chk_e.get("tol", 1e-6))
        eq_tol = float(chk_e.get("eq_tol", 1e-5))
        if tol <= 0 or eq_tol <= 0:
            raise SceneError("tolerances must be positive", block="check")
        directions = chk_e.get("directions", 8)
        if isinstance(directions, tuple):
            directions = tuple(tuple(float(v) for v in d) for d in directions)
        else:
            directions = int(directions)
            if directions < 1:
                raise SceneError("directions count must be >= 1", block="check")
        check = CheckSpec(checks=tuple(checks), interpretations=tuple(interps),
                          tol=tol, eq_tol=eq_tol, directions=directions)

    output = OutputSpec()
    if "output" in blocks:
        out_e = blocks["output"]
        _check_keys("output", out_e, OUTPUT_KEYS)
        fmt = out_e.get("format", "text")
        if fmt not in ("text", "json", "csv"):
            raise SceneError(f"unknown output format {fmt!r}", block="output")
        path = out_e.get("path")
        output = OutputSpec(format=fmt, path=None if path is None else str(path))

    return SceneConfig(ambient=ambient, immersion=immersion, sample=sample,
                       check=check, output=output)


# ---------------------------------------------------------------------------
# emitter (canonical form; parse_scene(emit_scene(cfg)) == cfg)

def _emit_value(v) -> str:
    if isinstance(v, str):
        return f'"{v}"'
    if isinstance(v, bool):
        raise TypeError("booleans are not part of the scene grammar")
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, tuple):
        return "[" + ", ".join(_emit_value(x) for x in v) + "]"
    raise TypeError(f"cannot emit {v!r}")


def emit_scene(cfg: SceneConfig) -> str:
    lines = []

    def block(name: str, entries: list[tuple[str, object]]):
        lines.append(f"{name} {{")
        for key, val in entries:
            if val is None:
                continue
            lines.append(f"  {key} = {_emit_value(val)}")
        lines.append("}")

    a = cfg.ambient
    block("ambient", [("kind", a.kind), ("m", a.m), ("c", a.c),
                      ("radii", a.radii), ("j_perturb", a.j_perturb)])
    i = cfg.immersion
    if i.kind == "builtin":
        entries = [("kind", i.kind)]
        if len(i.names) == 1:
            entries.append(("name", i.names[0]))
        else:
            entries.append(("names", i.names))
        entries.append(("params", i.params))
        block("immersion", entries)
    else:
        block("immersion", [("kind", i.kind), ("parameters", i.parameters),
                            ("components", i.components)])
    s = cfg.sample
    block("sample", [("grid", s.grid), ("points", s.points)])
    c = cfg.check
    block("check", [("checks", c.checks),
                    ("interpretations", c.interpretations),
                    ("tol", c.tol), ("eq_tol", c.eq_tol),
                    ("directions", c.directions)])
    o = cfg.output
    block("output", [("format", o.format), ("path", o.path)])
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# realization into geometry objects

def build_ambient(cfg: SceneConfig) -> AmbientManifold:
    a = cfg.ambient
    if a.kind == "flat":
        amb = flat_space(a.m)
    elif a.kind == "csf":
        amb = complex_space_form(a.m, a.c)
    else:
        amb = sphere_product(*a.radii)
    if a.j_perturb is not None:
        i, jx, eps = a.j_perturb
        amb = perturb_j(amb, (i, jx), eps)
    return amb


def _expression_immersion(spec: ImmersionSpec, m: int) -> Immersion:
    params = spec.parameters
    asts = [parse_expression(comp, params) for comp in spec.components]

    def f(u):
        bindings = {name: float(u[k]) for k, name in enumerate(params)}
        return np.array([evaluate(ast, bindings) for ast in asts])

    return Immersion(param_dim=len(params), ambient_real_dim=2 * m, map=f,
                     name="expression", kind="expression")


def build_immersions(cfg: SceneConfig) -> list[Immersion]:
    spec = cfg.immersion
    if spec.kind == "expression":
        return [_expression_immersion(spec, cfg.ambient.m)]
    out = []
    for name in spec.names:
        if spec.params is not None:
            if name == "slant-plane":
                out.append(builtin_immersion(name, theta=spec.params[0]))
            elif name == "torus":
                out.append(builtin_immersion(name, *spec.params))
            else:
                out.append(builtin_immersion(name, *spec.params))
        else:
            out.append(builtin_immersion(name))
    return out


def sample_points(cfg: SceneConfig, imm: Immersion) -> list[np.ndarray]:
    s = cfg.sample
    points: list[np.ndarray] = []
    if s.points is not None:
        points.extend(np.asarray(pt, dtype=float) for pt in s.points)
    grid = s.grid
    if grid is None and s.points is None:
        grid = DEFAULT_GRIDS.get(imm.name.split("(")[0])
        if grid is None:
            grid = tuple((-1.0, 1.0, 3) for _ in range(imm.param_dim))
    if grid is not None:
        if len(grid) != imm.param_dim:
            raise SceneError(
                f"grid has {len(grid)} axes but immersion {imm.name!r} has "
                f"{imm.param_dim} parameters", block="sample")
        axes = [np.linspace(lo, hi, count) for lo, hi, count in grid]
        mesh = np.meshgrid(*axes, indexing="ij")
        stacked = np.stack([ax.ravel() for ax in mesh], axis=-1)
        points.extend(np.asarray(row, dtype=float) for row in stacked)
    return points
