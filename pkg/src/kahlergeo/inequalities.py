r"""Ricci/mean-curvature inequality checks and their derivation audit.

The inequality family bounds the Ricci curvature of a submanifold direction
by n^2 ||H||^2 / 4 plus ambient-curvature corrections. Its circulated
statements are not internally consistent (coefficient sign patterns differ
between the stated bound and its re-derivation, and the curvature symbols
are ambiguous between ambient and submanifold readings), so every check here
is parametrised by an explicit :class:`Interpretation` and the module doubles
as an audit tool: a falsified variant on an admissible fixture is a finding,
not an error.

Interpretation axes
-------------------
``coeff_variant``
    "statement": the P-norm coefficient is 3n^2 - 9n + 3.
    "proof": the coefficient recovered by re-deriving the final step,
    3n^2 + 9n - 3.
``ricci_source``
    "ambient": rho is the metric trace of the ambient Ricci tensor and the
    mixed terms use the ambient Ricci form.
    "induced": both are read as tangential partial traces of the ambient
    curvature over the submanifold frame (Ric_t(Y,Z) = sum_k R(Y,e_k,e_k,Z),
    rho_t = sum_{i<j} K(e_i,e_j)). This is the reading under which the
    correction terms vanish in a flat ambient, as every variant must.
``mixed_term_range``
    "row-of-X": the final mixed term sums over j with i pinned to the
    distinguished direction e_1.
    "full-double-sum": it sums over all (i, j).

The remaining two axes are singletons: the operator dropped at a line break
is read as "+", and the dimension constant inside the L-tensor is the
ambient complex dimension.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .ambient import (AmbientManifold, CurvatureBundle, check_bochner_flat,
                      l_tensor, riemann_at)
from .errors import PreconditionError
from .immersion import FramedPoint, Immersion, frames_at, h_norm_sq, mean_curvature
from .invariants import (ROUTE_INTRINSIC, gauss_curvature_frame,
                         induced_curvatures, null_space_residual, p_norm_sq,
                         relative_null_space, slant_angle)

Array = np.ndarray

COEFF_VARIANTS = ("statement", "proof")
RICCI_SOURCES = ("ambient", "induced")
MIXED_RANGES = ("row-of-X", "full-double-sum")

CHECK_MAIN = "ricci-bound"
CHECK_SLANT = "ricci-bound-slant"
CHECK_EINSTEIN = "ricci-bound-einstein"
CHECK_ANTI_INVARIANT = "ricci-bound-anti-invariant"
CHECK_INVARIANT = "ricci-bound-invariant"
ALL_CHECKS = (CHECK_MAIN, CHECK_SLANT, CHECK_EINSTEIN, CHECK_ANTI_INVARIANT,
              CHECK_INVARIANT)

EQ_NONE = "none"
EQ_TOTALLY_GEODESIC = "totally-geodesic"
EQ_UMBILICAL = "umbilical-n2"
EQ_NULL_SPACE = "null-space-membership"
EQ_UNCLASSIFIED = "equality-unclassified"

BOCHNER_GATE_TOL = 1e-5


@dataclass(frozen=True)
class Interpretation:
    """One fully resolved reading of the inequality family."""

    coeff_variant: str = "statement"
    ricci_source: str = "ambient"
    mixed_term_range: str = "row-of-X"
    line_break_sign: str = "plus"
    eq6_dim: str = "ambient-complex-dim"

    def __post_init__(self):
        if self.coeff_variant not in COEFF_VARIANTS:
            raise ValueError(f"coeff_variant must be in {COEFF_VARIANTS}")
        if self.ricci_source not in RICCI_SOURCES:
            raise ValueError(f"ricci_source must be in {RICCI_SOURCES}")
        if self.mixed_term_range not in MIXED_RANGES:
            raise ValueError(f"mixed_term_range must be in {MIXED_RANGES}")
        if self.line_break_sign != "plus":
            raise ValueError("line_break_sign supports only 'plus'")
        if self.eq6_dim != "ambient-complex-dim":
            raise ValueError("eq6_dim supports only 'ambient-complex-dim'")

    @property
    def name(self) -> str:
        rng = "row" if self.mixed_term_range == "row-of-X" else "full"
        return f"{self.coeff_variant}-{self.ricci_source}-{rng}"


DEFAULT_INTERPRETATION = Interpretation()


def enumerate_interpretations() -> tuple[Interpretation, ...]:
    """All enumerable variants, ordered lexicographically by name."""
    interps = [
        Interpretation(coeff_variant=cv, ricci_source=rs, mixed_term_range=mr)
        for cv, rs, mr in itertools.product(COEFF_VARIANTS, RICCI_SOURCES,
                                            MIXED_RANGES)
    ]
    return tuple(sorted(interps, key=lambda it: it.name))


def resolve_interpretation(name: str) -> Interpretation:
    if name in ("statement-default", "default"):
        return DEFAULT_INTERPRETATION
    for interp in enumerate_interpretations():
        if interp.name == name:
            return interp
    known = ", ".join(it.name for it in enumerate_interpretations())
    raise ValueError(f"unknown interpretation {name!r}; known: {known}, "
                     "statement-default")


@dataclass(frozen=True)
class InequalityVerdict:
    theorem: str
    interpretation: Interpretation
    lhs: float
    rhs: float
    margin: float
    holds: bool
    equality_case: str
    point: tuple
    direction: tuple


# ---------------------------------------------------------------------------
# shared pieces

def _p_coefficient(n: int, variant: str, p_sq: float) -> float:
    base = 4 * n**3 - 12 * n**2 - 2 * n + 10
    if variant == "statement":
        return base - (3 * n**2 - 9 * n + 3) * p_sq
    return base - (3 * n**2 + 9 * n - 3) * p_sq


def _denominator(n: int) -> float:
    return 2.0 * (2 * n + 2) * (2 * n + 4)


def curvature_sources(fp: FramedPoint, bundle: CurvatureBundle):
    """(rho, Ric(e_i, J e_j) matrix) per ricci_source, plus g(e_i, J e_j)."""
    e, g, j = fp.tangent_frame, fp.metric, fp.j
    je = e @ j.T  # rows J e_i
    gje = e @ g @ je.T
    ric_e_amb = e @ bundle.ricci @ je.T
    ric_t = np.einsum("abcd,kb,kc->ad", bundle.riemann, e, e)
    ric_e_tan = e @ ric_t @ je.T
    rho_tan = 0.5 * float(np.einsum("ia,ad,id->", e, ric_t, e))
    return {
        "ambient": (float(bundle.scalar), ric_e_amb),
        "induced": (rho_tan, ric_e_tan),
    }, gje


def _upper_block_sum(mat: Array, weight: Array | None) -> float:
    """sum over 2 <= i < j <= n (one-based) of mat[i,j] * weight[i,j]."""
    n = mat.shape[0]
    total = 0.0
    for i in range(1, n):
        for jx in range(i + 1, n):
            w = 1.0 if weight is None else weight[i, jx]
            total += mat[i, jx] * w
    return total


def _last_term_sum(mat: Array, weight: Array | None, mixed_range: str) -> float:
    n = mat.shape[0]
    if mixed_range == "row-of-X":
        idx = [(0, jx) for jx in range(n)]
    else:
        idx = [(i, jx) for i in range(n) for jx in range(n)]
    total = 0.0
    for i, jx in idx:
        w = 1.0 if weight is None else weight[i, jx]
        total += mat[i, jx] * w
    return total


def ricci_bound_rhs(fp: FramedPoint, bundle: CurvatureBundle,
                    interp: Interpretation = DEFAULT_INTERPRETATION) -> float:
    """Right-hand side of the main bound for the direction X = e_1 of ``fp``."""
    n = fp.n
    _, hsq = mean_curvature(fp)
    psq = p_norm_sq(fp)
    sources, gje = curvature_sources(fp, bundle)
    rho, ric_e = sources[interp.ricci_source]
    rhs = n**2 * hsq / 4.0
    rhs += _p_coefficient(n, interp.coeff_variant, psq) * rho / _denominator(n)
    # the operator lost at the line break is read as "+"
    rhs += (6.0 / (2 * n + 4)) * _upper_block_sum(ric_e, gje)
    rhs -= (3.0 / (2 * n + 4)) * _last_term_sum(ric_e, gje,
                                                interp.mixed_term_range)
    return float(rhs)


def ricci_in_direction(fp: FramedPoint, amb: AmbientManifold) -> float:
    """Induced Ricci curvature of the locked direction e_1 (Gauss route)."""
    r4 = gauss_curvature_frame(fp, amb)
    return float(np.einsum("jj->", r4[0, :, :, 0]))


def _classify_equality(fp: FramedPoint, *, h_tol: float = 1e-12,
                       null_tol: float = 1e-8, umb_tol: float = 1e-8) -> str:
    _, hsq = mean_curvature(fp)
    if hsq < h_tol:
        x = np.zeros(fp.n)
        x[0] = 1.0
        if null_space_residual(fp, x) < null_tol:
            return EQ_NULL_SPACE
        return EQ_UNCLASSIFIED
    if h_norm_sq(fp) < 1e-14:
        return EQ_TOTALLY_GEODESIC
    if fp.n == 2:
        devs = [np.max(np.abs(a - (np.trace(a) / 2.0) * np.eye(2)))
                for a in fp.h]
        if max(devs) < umb_tol:
            return EQ_UMBILICAL
    return EQ_UNCLASSIFIED


def _gate_ambient(amb: AmbientManifold, p, ambient_residual: float | None) -> None:
    if ambient_residual is None:
        ambient_residual = check_bochner_flat(amb, p)
    if ambient_residual > BOCHNER_GATE_TOL:
        raise PreconditionError(
            f"ambient is not of the assembled Bochner-flat type at this point "
            f"(residual {ambient_residual:.3e} > {BOCHNER_GATE_TOL:.0e})")


def _lock_frame(fp: FramedPoint, imm: Immersion, amb: AmbientManifold,
                direction) -> FramedPoint:
    coeffs = np.asarray(direction, dtype=float)
    if coeffs.shape != (fp.n,):
        raise ValueError(f"direction must have {fp.n} frame coefficients")
    vec = coeffs @ fp.tangent_frame
    return frames_at(imm, amb, fp.u, lock=vec)


def _verdict(theorem, interp, lhs, rhs, fp, *, holds_scale, eq_scale,
             direction) -> InequalityVerdict:
    margin = rhs - lhs
    tol = holds_scale * max(1.0, abs(rhs))
    eq_tol = eq_scale * max(1.0, abs(rhs))
    holds = margin >= -tol
    equality = abs(margin) < eq_tol
    case = _classify_equality(fp) if equality else EQ_NONE
    return InequalityVerdict(
        theorem=theorem, interpretation=interp, lhs=float(lhs),
        rhs=float(rhs), margin=float(margin), holds=bool(holds),
        equality_case=case, point=tuple(float(v) for v in fp.u),
        direction=tuple(float(v) for v in direction))


def check_ricci_bound(fp: FramedPoint, imm: Immersion, amb: AmbientManifold,
                      interp: Interpretation = DEFAULT_INTERPRETATION, *,
                      direction=None, holds_scale: float = 1e-6,
                      eq_scale: float = 1e-5,
                      ambient_residual: float | None = None) -> InequalityVerdict:
    """Main bound at one point and direction.

    ``direction`` (frame coefficients in ``fp``'s tangent frame) re-frames the
    point with e_1 locked to it; omitted, the existing e_1 is the direction.
    The ambient must pass the Bochner-flat admissibility gate; pass a known
    ``ambient_residual`` to skip recomputing it.
    """
    _gate_ambient(amb, fp.p, ambient_residual)
    if direction is not None:
        fp = _lock_frame(fp, imm, amb, direction)
    else:
        direction = np.eye(fp.n)[0]
    bundle = riemann_at(amb, fp.p)
    lhs = ricci_in_direction(fp, amb)
    rhs = ricci_bound_rhs(fp, bundle, interp)
    return _verdict(CHECK_MAIN, interp, lhs, rhs, fp,
                    holds_scale=holds_scale, eq_scale=eq_scale,
                    direction=direction)


def slant_bound_rhs(fp: FramedPoint, bundle: CurvatureBundle, theta: float,
                    interp: Interpretation = DEFAULT_INTERPRETATION,
                    p_norm_rule: str = "printed") -> float:
    """RHS of the slant form: ||P||^2 -> cos^2(theta) exactly as printed
    (``p_norm_rule="slant-identity"`` substitutes n cos^2(theta) instead), and
    the mixed Ricci terms carry a cos(theta) factor with no metric weight."""
    n = fp.n
    _, hsq = mean_curvature(fp)
    cos_t = float(np.cos(theta))
    psq_sub = cos_t**2 if p_norm_rule == "printed" else n * cos_t**2
    sources, _ = curvature_sources(fp, bundle)
    rho, ric_e = sources[interp.ricci_source]
    rhs = n**2 * hsq / 4.0
    rhs += _p_coefficient(n, interp.coeff_variant, psq_sub) * rho / _denominator(n)
    rhs += (6.0 * cos_t / (2 * n + 4)) * _upper_block_sum(ric_e, None)
    rhs -= (3.0 * cos_t / (2 * n + 4)) * _last_term_sum(
        ric_e, None, interp.mixed_term_range)
    return float(rhs)


def check_ricci_bound_slant(fp: FramedPoint, imm: Immersion,
                            amb: AmbientManifold,
                            interp: Interpretation = DEFAULT_INTERPRETATION, *,
                            theta: float | None = None, direction=None,
                            p_norm_rule: str = "printed",
                            holds_scale: float = 1e-6, eq_scale: float = 1e-5,
                            slant_tol: float = 1e-6,
                            ambient_residual: float | None = None) -> InequalityVerdict:
    """Slant form of the bound; requires a definite slant angle at the point."""
    _gate_ambient(amb, fp.p, ambient_residual)
    if direction is not None:
        fp = _lock_frame(fp, imm, amb, direction)
    else:
        direction = np.eye(fp.n)[0]
    if theta is None:
        theta = slant_angle(fp, tol=slant_tol)
    if theta is None:
        raise PreconditionError(
            f"point u={fp.u.tolist()} is not slant: the J-angle varies across "
            "tangent directions")
    bundle = riemann_at(amb, fp.p)
    lhs = ricci_in_direction(fp, amb)
    rhs = slant_bound_rhs(fp, bundle, theta, interp, p_norm_rule)
    return _verdict(CHECK_SLANT, interp, lhs, rhs, fp,
                    holds_scale=holds_scale, eq_scale=eq_scale,
                    direction=direction)


def special_bound_rhs(fp: FramedPoint, bundle: CurvatureBundle, which: str,
                      interp: Interpretation = DEFAULT_INTERPRETATION, *,
                      einstein_lambda: float | None = None,
                      constant_rule: str = "printed") -> float:
    n = fp.n
    _, hsq = mean_curvature(fp)
    psq = p_norm_sq(fp)
    sources, _ = curvature_sources(fp, bundle)
    rho, ric_e = sources[interp.ricci_source]
    rhs = n**2 * hsq / 4.0
    if which == "einstein":
        rhs += _p_coefficient(n, interp.coeff_variant, psq) * rho / _denominator(n)
        rhs += 3.0 * einstein_lambda * psq / (2 * n + 2)
    elif which == "anti-invariant":
        rhs += _p_coefficient(n, interp.coeff_variant, 0.0) * rho / _denominator(n)
    elif which == "invariant":
        const = 1.0 if constant_rule == "printed" else float(n)
        rhs += _p_coefficient(n, interp.coeff_variant, const) * rho / _denominator(n)
        rhs += (6.0 / (2 * n + 4)) * _upper_block_sum(ric_e, None)
        rhs -= (3.0 / (2 * n + 4)) * _last_term_sum(ric_e, None,
                                                    interp.mixed_term_range)
    else:
        raise ValueError(f"unknown special case {which!r}")
    return float(rhs)


def check_ricci_bound_special(fp: FramedPoint, imm: Immersion,
                              amb: AmbientManifold, which: str,
                              interp: Interpretation = DEFAULT_INTERPRETATION, *,
                              direction=None, constant_rule: str = "printed",
                              holds_scale: float = 1e-6, eq_scale: float = 1e-5,
                              ambient_residual: float | None = None) -> InequalityVerdict:
    """Specialisations of the bound: Einstein ambient, anti-invariant or
    invariant submanifold. The structural hypothesis is verified first and a
    violation raises :class:`PreconditionError` naming the failed check."""
    _gate_ambient(amb, fp.p, ambient_residual)
    if direction is not None:
        fp = _lock_frame(fp, imm, amb, direction)
    else:
        direction = np.eye(fp.n)[0]
    bundle = riemann_at(amb, fp.p)
    lam = None
    if which == "einstein":
        m2 = amb.real_dim
        lam = bundle.scalar / m2
        resid = float(np.max(np.abs(bundle.ricci - lam * fp.metric)))
        if resid > 1e-8:
            raise PreconditionError(
                f"einstein hypothesis fails: |Ric - lambda g| = {resid:.3e}")
    elif which == "anti-invariant":
        psq = p_norm_sq(fp)
        if psq > 1e-8:
            raise PreconditionError(
                f"anti-invariant hypothesis fails: ||P||^2 = {psq:.3e}")
    elif which == "invariant":
        theta = slant_angle(fp)
        if theta is None or theta > 1e-8:
            raise PreconditionError(
                f"invariant hypothesis fails: slant angle is "
                f"{'indefinite' if theta is None else theta}")
    else:
        raise ValueError(f"unknown special case {which!r}")
    lhs = ricci_in_direction(fp, amb)
    rhs = special_bound_rhs(fp, bundle, which, interp, einstein_lambda=lam,
                            constant_rule=constant_rule)
    theorem = {"einstein": CHECK_EINSTEIN,
               "anti-invariant": CHECK_ANTI_INVARIANT,
               "invariant": CHECK_INVARIANT}[which]
    return _verdict(theorem, interp, lhs, rhs, fp, holds_scale=holds_scale,
                    eq_scale=eq_scale, direction=direction)


# ---------------------------------------------------------------------------
# derivation audit

def algebraic_identity_check(h) -> float:
    """Exact square-decomposition identity behind the n^2 ||H||^2 regrouping.

    For each normal slice with diagonal (a_1..a_n) verifies

        sum a_i^2 = 1/2 (sum a_i)^2 + 1/2 (a_1 - a_2 - ... - a_n)^2
                    - 2 sum_{2<=i<j<=n} a_i a_j

    and returns the max residual over slices.
    """
    h = np.asarray(h, dtype=float)
    if h.ndim == 2:
        h = h[None, :, :]
    worst = 0.0
    for mat in h:
        d = np.diagonal(mat)
        tail = d[1:]
        lhs = float(np.sum(d**2))
        cross = 0.5 * (float(np.sum(tail)) ** 2 - float(np.sum(tail**2)))
        rhs = (0.5 * float(np.sum(d)) ** 2
               + 0.5 * (d[0] - float(np.sum(tail))) ** 2
               - 2.0 * cross)
        worst = max(worst, abs(lhs - rhs))
    return worst


@dataclass(frozen=True)
class AuditStep:
    lhs: float
    rhs: float

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs)


@dataclass(frozen=True)
class IdentityAudit:
    """Residuals of the intermediate identities that assemble the bound.

    ``trace_identity``: the full-trace identity 2 rho = 2(n-1) tr L
    + 6 sum L(e_i, J e_j) g(e_i, J e_j) + n^2 ||H||^2 - ||h||^2 with rho the
    induced scalar curvature and L built from ambient data.
    ``block_sum``: the closed form claimed for sum_{2<=i<j<=n} K_ij.
    ``square_decomposition``: max residual of the exact regrouping identity.
    """

    point: tuple
    trace_identity: AuditStep
    block_sum: AuditStep
    square_decomposition: float


def identity_audit(fp: FramedPoint, imm: Immersion, amb: AmbientManifold,
                   interp: Interpretation = DEFAULT_INTERPRETATION, *,
                   ambient_residual: float | None = None) -> IdentityAudit:
    _gate_ambient(amb, fp.p, ambient_residual)
    n = fp.n
    e, g, j = fp.tangent_frame, fp.metric, fp.j
    bundle = riemann_at(amb, fp.p)
    _, hsq = mean_curvature(fp)
    hnsq = h_norm_sq(fp)

    # (a) full-trace identity, induced scalar from the intrinsic route
    _, _, rho_ind = induced_curvatures(fp, imm, amb, route=ROUTE_INTRINSIC)
    big_l = l_tensor(bundle.ricci, bundle.scalar, g, amb.complex_dim)
    je = e @ j.T
    l_tt = e @ big_l @ e.T
    l_e = e @ big_l @ je.T
    gje = e @ g @ je.T
    rhs_a = (2.0 * (n - 1) * float(np.trace(l_tt))
             + 6.0 * float(np.sum(l_e * gje))
             + n**2 * hsq - hnsq)
    step_a = AuditStep(lhs=2.0 * rho_ind, rhs=rhs_a)

    # (b) printed closed form for the sectional block sum
    sectional, _, _ = induced_curvatures(fp, imm, amb, route=ROUTE_INTRINSIC)
    lhs_b = _upper_block_sum(sectional, None)
    psq = p_norm_sq(fp)
    sources, _ = curvature_sources(fp, bundle)
    rho_src, ric_e = sources[interp.ricci_source]
    coeff = (4 * n**3 - 9 * n**2 - n + 6) - (3 * n**2 - 9 * n + 6) * psq
    h = fp.h
    h_block = 0.0
    for i in range(1, n):
        for jx in range(i + 1, n):
            h_block += float(np.dot(h[:, i, i], h[:, jx, jx])
                             - np.dot(h[:, i, jx], h[:, i, jx]))
    rhs_b = (coeff * rho_src / _denominator(n)
             + (6.0 / (2 * n + 4)) * _upper_block_sum(ric_e, gje)
             + h_block)
    step_b = AuditStep(lhs=lhs_b, rhs=rhs_b)

    return IdentityAudit(
        point=tuple(float(v) for v in fp.u),
        trace_identity=step_a,
        block_sum=step_b,
        square_decomposition=algebraic_identity_check(fp.h),
    )


# ---------------------------------------------------------------------------
# interpretation survey

@dataclass(frozen=True)
class SurveyResult:
    """Min-margin table over (variant, fixture), deterministic ordering."""

    variants: tuple[str, ...]
    fixtures: tuple[str, ...]
    min_margins: tuple[tuple[float, ...], ...]  # [variant][fixture]
    falsified: tuple[str, ...]

    def margin(self, variant: str, fixture: str) -> float:
        return self.min_margins[self.variants.index(variant)][
            self.fixtures.index(fixture)]

    def overall_min(self, variant: str) -> float:
        return min(self.min_margins[self.variants.index(variant)])


def interpretation_survey(jobs, *, falsify_tol: float = 1e-6,
                          holds_scale: float = 1e-6) -> SurveyResult:
    """Evaluate the main bound under every variant across all jobs.

    ``jobs`` is a sequence of (fixture_name, immersion, ambient, points,
    directions); points are parameter values and directions frame-coefficient
    vectors. Variants whose min margin on these (Bochner-flat, by gate)
    fixtures drops below ``-falsify_tol`` are flagged as falsified.
    """
    interps = enumerate_interpretations()
    fixtures: list[str] = []
    table: dict[str, list[float]] = {it.name: [] for it in interps}
    for fixture_name, imm, amb, points, directions in jobs:
        fixtures.append(fixture_name)
        mins = {it.name: np.inf for it in interps}
        for u in points:
            base = frames_at(imm, amb, u)
            residual = check_bochner_flat(amb, base.p)
            for direction in directions:
                vec = np.asarray(direction, float) @ base.tangent_frame
                fp = frames_at(imm, amb, u, lock=vec)
                bundle = riemann_at(amb, fp.p)
                lhs = ricci_in_direction(fp, amb)
                _gate_ambient(amb, fp.p, residual)
                for it in interps:
                    rhs = ricci_bound_rhs(fp, bundle, it)
                    mins[it.name] = min(mins[it.name], rhs - lhs)
        for it in interps:
            table[it.name].append(float(mins[it.name]))
    falsified = tuple(name for name in sorted(table)
                      if min(table[name]) < -falsify_tol)
    return SurveyResult(
        variants=tuple(it.name for it in interps),
        fixtures=tuple(fixtures),
        min_margins=tuple(tuple(table[it.name]) for it in interps),
        falsified=falsified,
    )


def default_directions(n: int, count: int = 8, seed: int = 0) -> Array:
    """Deterministic unit direction set in frame coefficients.

    For surfaces: evenly spaced angles over half a turn. Otherwise: frame
    axes followed by seeded random unit vectors.
    """
    if n == 2:
        angles = [np.pi * k / count for k in range(count)]
        return np.array([[np.cos(a), np.sin(a)] for a in angles])
    dirs = [np.eye(n)[i] for i in range(min(n, count))]
    rng = np.random.default_rng(seed)
    while len(dirs) < count:
        v = rng.normal(size=n)
        dirs.append(v / np.linalg.norm(v))
    return np.array(dirs)
