r"""Kähler ambient spaces: metric and complex-structure fields, Levi-Civita
connection and curvature, and the Bochner-type curvature assembler.

Conventions
-----------
Coordinates on a space of complex dimension ``m`` are the ``2m`` reals
``(x_1..x_m, y_1..y_m)`` with ``z_a = x_a + i y_a``. The standard complex
structure is then the constant block matrix ``J = [[0, -I], [I, 0]]``
(columns act on vectors: ``J dx_a = dy_a``, ``J dy_a = -dx_a``).

Rank-4 curvature arrays use the classical slot convention

    R[a, b, c, d] = g(R(e_a, e_b) e_c, e_d),
    R(X, Y)Z = \nabla_X \nabla_Y Z - \nabla_Y \nabla_X Z - \nabla_{[X,Y]} Z,

under which the sectional curvature of the plane (X, Y) is ``R(X,Y,Y,X)``
for orthonormal X, Y and is +1 on a unit sphere. The Ricci tensor is the
trace giving positive Ricci on spheres, and the scalar invariant stored on
a :class:`CurvatureBundle` is the full metric trace of Ricci.

Space forms are realised in one affine chart with the potential
``(1/k) log(1 + k |z|^2)``, ``k = c/4``. The chart is valid for
``|z| < 1/sqrt(-k)`` when ``c < 0`` and everywhere when ``c >= 0``; probe
points are kept inside radius 0.8 to stay clear of coordinate blow-up.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DegeneracyError, PreconditionError
from .tensors import DEFAULT_FD_POLICY, FdPolicy, fd_derivative

Array = np.ndarray

KIND_FLAT = "flat"
KIND_CSF = "complex-space-form"
KIND_CUSTOM = "custom"


def standard_j(m: int) -> Array:
    j = np.zeros((2 * m, 2 * m))
    j[m:, :m] = np.eye(m)
    j[:m, m:] = -np.eye(m)
    return j


@dataclass(frozen=True)
class AmbientManifold:
    """A Kähler ambient space given by metric and complex-structure fields.

    ``metric_at`` and ``j_at`` map a point (2m reals) to 2m x 2m matrices.
    ``kind`` selects closed-form connection/curvature shortcuts where they
    exist; ``custom`` spaces always go through finite differences.
    """

    complex_dim: int
    metric_at: Callable[[Array], Array]
    j_at: Callable[[Array], Array]
    kind: str = KIND_CUSTOM
    hol_curvature: float | None = None
    name: str = "custom"

    @property
    def real_dim(self) -> int:
        return 2 * self.complex_dim

    def metric(self, p) -> Array:
        return np.asarray(self.metric_at(np.asarray(p, dtype=float)), dtype=float)

    def j(self, p) -> Array:
        return np.asarray(self.j_at(np.asarray(p, dtype=float)), dtype=float)


@dataclass(frozen=True)
class CurvatureBundle:
    """Curvature data at one point: rank-4 covariant tensor, Ricci, scalar."""

    riemann: Array
    ricci: Array
    scalar: float
    at_point: Array


@dataclass(frozen=True)
class LMPair:
    """The symmetric/skew pair of bilinear forms driving the curvature assembler.

    ``l`` is symmetric and J-invariant, ``m`` is ``-l(., J.)`` by construction.
    """

    l: Array
    m: Array
    source_ricci: Array
    source_scalar: float

    @classmethod
    def from_ricci(cls, ric: Array, rho: float, g: Array, j: Array,
                   complex_dim: int, tol: float = 1e-10) -> "LMPair":
        l = l_tensor(ric, rho, g, complex_dim)
        sym = np.max(np.abs(l - l.T))
        jinv = np.max(np.abs(j.T @ l @ j - l))
        if sym > tol or jinv > tol:
            raise PreconditionError(
                f"L-tensor symmetry/J-invariance residuals ({sym:.3e}, "
                f"{jinv:.3e}) exceed tolerance {tol:.1e}")
        return cls(l=l, m=m_tensor(l, j), source_ricci=np.asarray(ric, float),
                   source_scalar=float(rho))


# ---------------------------------------------------------------------------
# built-in ambient spaces

def flat_space(m: int) -> AmbientManifold:
    """Flat C^m with the Euclidean metric and standard J."""
    eye = np.eye(2 * m)
    j = standard_j(m)
    return AmbientManifold(
        complex_dim=m,
        metric_at=lambda p: eye,
        j_at=lambda p: j,
        kind=KIND_FLAT,
        name=f"flat-C{m}",
    )


def _split(p: Array, m: int) -> Array:
    return p[:m] + 1j * p[m:]


def _hermitian_to_real(h: Array) -> Array:
    a, b = h.real, h.imag
    top = np.hstack([a, b])
    bot = np.hstack([-b, a])
    return np.vstack([top, bot])


def csf_metric(p: Array, m: int, c: float) -> Array:
    k = c / 4.0
    z = _split(np.asarray(p, dtype=float), m)
    w = 1.0 + k * float(np.vdot(z, z).real)
    if w <= 0:
        raise DegeneracyError("point lies outside the space-form chart")
    h = (w * np.eye(m) - k * np.outer(np.conj(z), z)) / w**2
    return _hermitian_to_real(h)


def csf_christoffels(p: Array, m: int, c: float) -> Array:
    """Closed-form Christoffel symbols of the space-form chart, real indices."""
    k = c / 4.0
    z = _split(np.asarray(p, dtype=float), m)
    w = 1.0 + k * float(np.vdot(z, z).real)
    # holomorphic-index symbols: Gamma^g_{ab} = -k (d_ga conj(z_b) + d_gb conj(z_a)) / w
    gam = np.zeros((m, m, m), dtype=complex)
    for g in range(m):
        for a in range(m):
            for b in range(m):
                val = 0.0 + 0.0j
                if g == a:
                    val += np.conj(z[b])
                if g == b:
                    val += np.conj(z[a])
                gam[g, a, b] = -k * val / w
    A, B = gam.real, gam.imag
    d = 2 * m
    out = np.zeros((d, d, d))
    x, y = slice(0, m), slice(m, 2 * m)
    # nabla_{dx_a} dx_b = A^g dx_g + B^g dy_g, and images under J-rotations
    out[x, x, x] = A
    out[y, x, x] = B
    out[x, x, y] = -B
    out[y, x, y] = A
    out[x, y, x] = -np.swapaxes(B, 1, 2)
    out[y, y, x] = np.swapaxes(A, 1, 2)
    out[x, y, y] = -A
    out[y, y, y] = -B
    return out


def csf_curvature(g: Array, j: Array, c: float) -> Array:
    """Constant-holomorphic-curvature tensor built pointwise from g and J."""
    gj = j.T @ g
    r = (np.einsum("bc,ad->abcd", g, g) - np.einsum("ac,bd->abcd", g, g)
         + np.einsum("bc,ad->abcd", gj, gj) - np.einsum("ac,bd->abcd", gj, gj)
         - 2.0 * np.einsum("ab,cd->abcd", gj, gj))
    return (c / 4.0) * r


def complex_space_form(m: int, c: float) -> AmbientManifold:
    """Space of constant holomorphic sectional curvature ``c`` in one chart."""
    j = standard_j(m)
    return AmbientManifold(
        complex_dim=m,
        metric_at=lambda p: csf_metric(p, m, c),
        j_at=lambda p: j,
        kind=KIND_CSF,
        hol_curvature=float(c),
        name=f"csf(m={m},c={c:g})",
    )


def sphere_product(r1: float, r2: float) -> AmbientManifold:
    """Kähler product of two round 2-spheres, stereographic chart on each factor.

    Each factor is conformal, ``lam_i = 4 r_i^4 / (r_i^2 + |z_i|^2)^2``, with
    Gaussian curvature 1/r_i^2. Unequal radii give a Kähler space that is not
    of the assembled Bochner-flat type, which is exactly what it is for.
    """
    j = standard_j(2)

    def metric(p):
        p = np.asarray(p, dtype=float)
        lam1 = 4.0 * r1**4 / (r1**2 + p[0]**2 + p[2]**2) ** 2
        lam2 = 4.0 * r2**4 / (r2**2 + p[1]**2 + p[3]**2) ** 2
        return np.diag([lam1, lam2, lam1, lam2])

    return AmbientManifold(
        complex_dim=2,
        metric_at=metric,
        j_at=lambda p: j,
        kind=KIND_CUSTOM,
        name=f"s2xs2({r1:g},{r2:g})",
    )


def perturb_j(amb: AmbientManifold, entry: tuple[int, int], eps: float,
              name: str | None = None) -> AmbientManifold:
    """Copy of ``amb`` with one entry of J shifted by ``eps`` (validity-gate fixture)."""
    i, jx = entry

    def j_at(p):
        jm = np.array(amb.j_at(p), dtype=float)
        jm[i, jx] += eps
        return jm

    return AmbientManifold(
        complex_dim=amb.complex_dim,
        metric_at=amb.metric_at,
        j_at=j_at,
        kind=KIND_CUSTOM,
        name=name or f"{amb.name}+jperturb",
    )


# ---------------------------------------------------------------------------
# Levi-Civita machinery over an arbitrary metric field (shared with the
# induced-metric route in `invariants`)

def christoffels_of_field(metric_fn, p, policy: FdPolicy = DEFAULT_FD_POLICY) -> Array:
    """Gamma^k_ij of a metric field at ``p`` from finite differences."""
    p = np.asarray(p, dtype=float)
    g = np.asarray(metric_fn(p), dtype=float)
    try:
        ginv = np.linalg.inv(g)
    except np.linalg.LinAlgError as exc:
        raise DegeneracyError(f"metric is not invertible at {p!r}") from exc
    d = g.shape[0]
    dgt = np.array([fd_derivative(metric_fn, p, axis=a, order=1, policy=policy)
                    for a in range(d)])
    # S[l,i,j] = d_i g_jl + d_j g_il - d_l g_ij
    a = dgt.transpose(2, 0, 1)
    s = a + a.transpose(0, 2, 1) - dgt
    return 0.5 * np.einsum("kl,lij->kij", ginv, s)


def riemann_of_field(metric_fn, p, policy: FdPolicy = DEFAULT_FD_POLICY) -> CurvatureBundle:
    """Covariant curvature, Ricci and scalar of a metric field at ``p``."""
    p = np.asarray(p, dtype=float)
    g = np.asarray(metric_fn(p), dtype=float)
    ginv = np.linalg.inv(g)
    d = g.shape[0]
    gamma = christoffels_of_field(metric_fn, p, policy)

    def gamma_fn(q):
        return christoffels_of_field(metric_fn, q, policy)

    dgam = np.array([fd_derivative(gamma_fn, p, axis=e, order=1, policy=policy)
                     for e in range(d)])
    # R^r_smn = d_m Gamma^r_ns - d_n Gamma^r_ms + Gamma Gamma terms
    t1 = dgam.transpose(1, 3, 0, 2)
    r31 = (t1 - t1.transpose(0, 1, 3, 2)
           + np.einsum("rml,lns->rsmn", gamma, gamma)
           - np.einsum("rnl,lms->rsmn", gamma, gamma))
    riem = np.einsum("lr,lsmn->mnsr", g, r31)
    ricci = np.einsum("rsrn->sn", r31)
    scalar = float(np.einsum("sn,sn->", ginv, ricci))
    return CurvatureBundle(riemann=riem, ricci=ricci, scalar=scalar, at_point=p)


# ---------------------------------------------------------------------------
# ambient-facing operations

def christoffels_at(amb: AmbientManifold, p, method: str = "auto",
                    policy: FdPolicy = DEFAULT_FD_POLICY) -> Array:
    """Christoffel symbols at ``p``: closed form for flat / space-form kinds
    (unless ``method="fd"`` forces the numeric route), finite differences
    otherwise."""
    p = np.asarray(p, dtype=float)
    if method not in ("auto", "fd", "closed"):
        raise ValueError(f"unknown method {method!r}")
    use_closed = method == "closed" or (
        method == "auto" and amb.kind in (KIND_FLAT, KIND_CSF))
    if use_closed:
        if amb.kind == KIND_FLAT:
            d = amb.real_dim
            return np.zeros((d, d, d))
        if amb.kind == KIND_CSF:
            return csf_christoffels(p, amb.complex_dim, amb.hol_curvature)
        raise ValueError(f"no closed-form connection for kind {amb.kind!r}")
    return christoffels_of_field(amb.metric_at, p, policy)


def riemann_at(amb: AmbientManifold, p, method: str = "auto",
               policy: FdPolicy = DEFAULT_FD_POLICY) -> CurvatureBundle:
    """Curvature bundle at ``p``; see module docstring for the conventions."""
    p = np.asarray(p, dtype=float)
    if method not in ("auto", "fd", "closed"):
        raise ValueError(f"unknown method {method!r}")
    use_closed = method == "closed" or (
        method == "auto" and amb.kind in (KIND_FLAT, KIND_CSF))
    if use_closed:
        d = amb.real_dim
        if amb.kind == KIND_FLAT:
            return CurvatureBundle(
                riemann=np.zeros((d, d, d, d)), ricci=np.zeros((d, d)),
                scalar=0.0, at_point=p)
        if amb.kind == KIND_CSF:
            m, c = amb.complex_dim, amb.hol_curvature
            g = amb.metric(p)
            riem = csf_curvature(g, amb.j(p), c)
            ricci = (c * (m + 1) / 2.0) * g
            return CurvatureBundle(riemann=riem, ricci=ricci,
                                   scalar=float(m * (m + 1) * c), at_point=p)
        raise ValueError(f"no closed-form curvature for kind {amb.kind!r}")
    return riemann_of_field(amb.metric_at, p, policy)


def l_tensor(ric: Array, rho: float, g: Array, m: int) -> Array:
    """Symmetric building block of the assembled curvature.

    ``m`` is the ambient complex dimension; the denominators are the standard
    Bochner-flat normalisations 2m+4 and 2(2m+2)(2m+4).
    """
    ric = np.asarray(ric, dtype=float)
    g = np.asarray(g, dtype=float)
    if ric.shape != g.shape:
        raise ValueError(f"shape mismatch: ric {ric.shape} vs g {g.shape}")
    return ric / (2 * m + 4) - rho * g / (2 * (2 * m + 2) * (2 * m + 4))


def m_tensor(l: Array, j: Array) -> Array:
    """Skew companion ``M(Y, Z) = -L(Y, JZ)``, componentwise ``-L @ J``."""
    return -np.asarray(l, dtype=float) @ np.asarray(j, dtype=float)


def assemble_bochner_curvature(lm: LMPair, g: Array, j: Array) -> Array:
    """Rank-4 curvature of the Bochner-flat family generated by (L, M).

    The term list is the standard one consistent with the L/M symmetries and
    with the curvature pair symmetries; the space-form reproduction test
    arbitrates every sign.
    """
    l, mm = lm.l, lm.m
    gj = j.T @ g  # gj[a,b] = g(J e_a, e_b)
    r = (np.einsum("xw,yz->xyzw", g, l) - np.einsum("yw,xz->xyzw", g, l)
         + np.einsum("yz,xw->xyzw", g, l) - np.einsum("xz,yw->xyzw", g, l)
         + np.einsum("yz,xw->xyzw", mm, gj) - np.einsum("xz,yw->xyzw", mm, gj)
         + np.einsum("xw,yz->xyzw", mm, gj) - np.einsum("yw,xz->xyzw", mm, gj)
         - 2.0 * np.einsum("xy,zw->xyzw", mm, gj)
         - 2.0 * np.einsum("zw,xy->xyzw", mm, gj))
    return r


@dataclass(frozen=True)
class KaehlerReport:
    """Max residuals of the three structure identities at a point."""

    j_squared: float
    hermitian: float
    parallel_j: float
    at_point: Array

    def max_residual(self) -> float:
        return max(self.j_squared, self.hermitian, self.parallel_j)

    def is_valid(self, tol: float = 1e-6) -> bool:
        return self.max_residual() < tol


def check_kaehler(amb: AmbientManifold, p, policy: FdPolicy = DEFAULT_FD_POLICY,
                  method: str = "auto") -> KaehlerReport:
    """Residuals of J^2 + I, g(J., J.) - g, and the covariant derivative of J."""
    p = np.asarray(p, dtype=float)
    g = amb.metric(p)
    j = amb.j(p)
    d = g.shape[0]
    res_j2 = float(np.max(np.abs(j @ j + np.eye(d))))
    res_herm = float(np.max(np.abs(j.T @ g @ j - g)))
    gamma = christoffels_at(amb, p, method=method, policy=policy)
    dj = np.array([fd_derivative(amb.j_at, p, axis=e, order=1, policy=policy)
                   for e in range(d)])
    covj = (dj + np.einsum("acl,lb->cab", gamma, j)
            - np.einsum("lcb,al->cab", gamma, j))
    res_nabla = float(np.max(np.abs(covj)))
    return KaehlerReport(j_squared=res_j2, hermitian=res_herm,
                         parallel_j=res_nabla, at_point=p)


def check_bochner_flat(amb: AmbientManifold, p, method: str = "auto",
                       policy: FdPolicy = DEFAULT_FD_POLICY) -> float:
    """Max componentwise gap between actual curvature and the assembled form.

    Zero (up to noise) exactly when the space belongs to the assembled family;
    the value is the admissibility residual for the inequality checks.
    """
    p = np.asarray(p, dtype=float)
    bundle = riemann_at(amb, p, method=method, policy=policy)
    g = amb.metric(p)
    j = amb.j(p)
    lm = LMPair.from_ricci(bundle.ricci, bundle.scalar, g, j,
                           amb.complex_dim, tol=1e-4)
    assembled = assemble_bochner_curvature(lm, g, j)
    return float(np.max(np.abs(bundle.riemann - assembled)))
