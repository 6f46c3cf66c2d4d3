"""Intrinsic and J-related invariants at a framed point.

Two independent routes to the induced curvature are provided. The
``gauss-derived`` route combines ambient curvature on the tangent frame with
the h-quadratic block; the ``intrinsic-fd`` route differentiates the pulled
back metric in the parameter chart and never sees the second fundamental
form. Their agreement is the Gauss equation turned into a regression test.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ambient import AmbientManifold, riemann_at, riemann_of_field
from .immersion import FramedPoint, Immersion, h_norm_sq, jacobian_at, mean_curvature
from .tensors import DEFAULT_FD_POLICY, FdPolicy

Array = np.ndarray

ROUTE_INTRINSIC = "intrinsic-fd"
ROUTE_GAUSS = "gauss-derived"

# The induced metric field below is itself FD-valued (Jacobians), so its
# curvature needs a coarser step: differentiating ~1e-12 noise twice at 1e-4
# would leave ~1e-4 errors, at 4e-3 it leaves ~1e-7.
INTRINSIC_FD_POLICY = FdPolicy(h0=4e-3, scheme="central-4", richardson_levels=1)


def p_operator(fp: FramedPoint) -> Array:
    """Tangential part of J in the tangent frame: P[i, j] = g(J e_i, e_j)."""
    e, g, j = fp.tangent_frame, fp.metric, fp.j
    je = e @ j.T
    return je @ g @ e.T


def p_norm_sq(fp: FramedPoint) -> float:
    """Squared Frobenius norm of the tangential J-projection; lies in [0, n]."""
    p = p_operator(fp)
    return float(np.sum(p * p))


def _direction_angles(fp: FramedPoint, samples: int, seed: int) -> Array:
    """Angle between J X and the tangent space for frame + random unit X."""
    e, g, j = fp.tangent_frame, fp.metric, fp.j
    n = fp.n
    rng = np.random.default_rng(seed)
    coeffs = [np.eye(n)[i] for i in range(n)]
    for _ in range(samples):
        c = rng.normal(size=n)
        coeffs.append(c / np.linalg.norm(c))
    angles = []
    for c in coeffs:
        x = c @ e
        jx = j @ x
        tang_coeff = e @ g @ jx
        tangential = tang_coeff @ e
        normal_part = jx - tangential
        tn = float(np.sqrt(max(tang_coeff @ tang_coeff, 0.0)))
        nn = float(np.sqrt(max(normal_part @ g @ normal_part, 0.0)))
        # atan2 of the two projection norms equals arccos(||PX||) for unit X
        # but stays accurate at both ends of [0, pi/2]
        angles.append(np.arctan2(nn, tn))
    return np.array(angles)


def slant_angle(fp: FramedPoint, tol: float = 1e-6, samples: int = 16,
                seed: int = 0) -> float | None:
    """Common angle between J X and the tangent space, or None when the
    spread over sampled directions exceeds ``tol`` (not slant at this point)."""
    angles = _direction_angles(fp, samples, seed)
    if float(angles.max() - angles.min()) < tol:
        return float(angles.mean())
    return None


def intrinsic_curvature_frame(fp: FramedPoint, imm: Immersion,
                              amb: AmbientManifold,
                              policy: FdPolicy = INTRINSIC_FD_POLICY,
                              jac_policy: FdPolicy = DEFAULT_FD_POLICY) -> Array:
    """Rank-4 induced curvature in the orthonormal frame, intrinsic route."""

    def induced_metric(v):
        jac = jacobian_at(imm, v, jac_policy)
        g = amb.metric(imm(v))
        return jac.T @ g @ jac

    bundle = riemann_of_field(induced_metric, fp.u, policy)
    b = fp.frame_coeffs
    return np.einsum("abcd,ia,jb,kc,ld->ijkl", bundle.riemann, b, b, b, b)


def gauss_curvature_frame(fp: FramedPoint, amb: AmbientManifold) -> Array:
    """Rank-4 induced curvature in the orthonormal frame, ambient + h route."""
    e = fp.tangent_frame
    riem = riemann_at(amb, fp.p).riemann
    rbar = np.einsum("abcd,ia,jb,kc,ld->ijkl", riem, e, e, e, e)
    h = fp.h
    return (rbar + np.einsum("ril,rjk->ijkl", h, h)
            - np.einsum("rik,rjl->ijkl", h, h))


def _tables_from_frame_curvature(r4: Array):
    n = r4.shape[0]
    sectional = np.zeros((n, n))
    for i in range(n):
        for jx in range(n):
            if i != jx:
                sectional[i, jx] = r4[i, jx, jx, i]
    ricci = np.einsum("ijjl->il", r4)
    rho = float(sum(sectional[i, jx] for i in range(n) for jx in range(i + 1, n)))
    return sectional, ricci, rho


def induced_curvatures(fp: FramedPoint, imm: Immersion, amb: AmbientManifold,
                       route: str = ROUTE_GAUSS):
    """Sectional table K_ij, Ricci form (frame slots), and scalar rho.

    rho follows the sum-over-planes convention rho = sum_{i<j} K_ij, so the
    diagonal of the Ricci form is the per-direction Ricci table.
    """
    if route == ROUTE_INTRINSIC:
        r4 = intrinsic_curvature_frame(fp, imm, amb)
    elif route == ROUTE_GAUSS:
        r4 = gauss_curvature_frame(fp, amb)
    else:
        raise ValueError(f"unknown curvature route {route!r}")
    return _tables_from_frame_curvature(r4)


def relative_null_space(fp: FramedPoint, tol: float = 1e-8) -> Array:
    """Basis (rows, frame coordinates) of {X : h(X, .) = 0}.

    Kernel of the stacked map X -> (h(X, e_j))_{j,r} by singular-value
    threshold; rank + dim of the result is n exactly.
    """
    n = fp.n
    stacked = fp.h.reshape(-1, n)
    _, s, vt = np.linalg.svd(stacked)
    rank = int(np.sum(s > tol))
    return vt[rank:]


def null_space_residual(fp: FramedPoint, coeffs, tol: float = 1e-8) -> float:
    """Norm of h(X, .) for X given by frame coefficients (0 on the null space)."""
    c = np.asarray(coeffs, dtype=float)
    return float(np.sqrt(np.sum((fp.h @ c) ** 2)))


@dataclass(frozen=True)
class InvariantReport:
    """Snapshot of the pointwise invariants used by the inequality checks."""

    p_matrix: Array
    p_norm_sq: float
    slant: float | None
    sectional: Array
    ricci: Array
    scalar: float
    null_space_basis: Array
    mean_curvature_sq: float
    h_norm_sq: float
    route: str


def invariant_report(fp: FramedPoint, imm: Immersion, amb: AmbientManifold,
                     route: str = ROUTE_GAUSS, slant_tol: float = 1e-6,
                     null_tol: float = 1e-8) -> InvariantReport:
    sectional, ricci, rho = induced_curvatures(fp, imm, amb, route)
    _, hsq = mean_curvature(fp)
    return InvariantReport(
        p_matrix=p_operator(fp),
        p_norm_sq=p_norm_sq(fp),
        slant=slant_angle(fp, tol=slant_tol),
        sectional=sectional,
        ricci=ricci,
        scalar=rho,
        null_space_basis=relative_null_space(fp, tol=null_tol),
        mean_curvature_sq=hsq,
        h_norm_sq=h_norm_sq(fp),
        route=route,
    )
