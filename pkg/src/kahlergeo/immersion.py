"""Parametrized immersions into an ambient space: frames, second fundamental
form, shape operators, mean curvature, and the Gauss-equation residual.

The second fundamental form is computed from finite differences of the
pushed-forward coordinate frame plus the ambient Christoffel correction,

    Q_ij = Hess_ij f + Gamma(f)[d_i f, d_j f],   h^r_ij = g(Q in frame slots, e_r),

so curved ambients are handled uniformly; in a flat Cartesian ambient this is
just the normal part of the parameter Hessian.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .ambient import AmbientManifold, christoffels_at, riemann_at
from .errors import DegeneracyError, InputError
from .tensors import DEFAULT_FD_POLICY, FdPolicy, fd_derivative, gram_schmidt

Array = np.ndarray

# Second-derivative stencils at the default 1e-4 step would sit on a ~2e-7
# roundoff floor; a coarser step with no extrapolation keeps h-coefficients
# at the ~1e-10 level (truncation h^4 is negligible for the fixtures).
HESSIAN_FD_POLICY = FdPolicy(h0=1e-3, scheme="central-4", richardson_levels=0)


@dataclass(frozen=True)
class Immersion:
    """A smooth map from an n-dimensional parameter domain into 2m ambient reals."""

    param_dim: int
    ambient_real_dim: int
    map: Callable[[Array], Array]
    name: str = "immersion"
    kind: str = "custom"
    params: dict = field(default_factory=dict)

    def __call__(self, u) -> Array:
        return np.asarray(self.map(np.asarray(u, dtype=float)), dtype=float)


@dataclass(frozen=True)
class FramedPoint:
    """A fully evaluated point of an immersion.

    ``tangent_frame`` rows e_1..e_n and ``normal_frame`` rows e_{n+1}..e_{2m}
    are orthonormal for the ambient metric at ``p``. ``h[r, i, j]`` are the
    second-fundamental-form coefficients in those frames, symmetric in (i, j).
    ``frame_coeffs`` expresses e_i in the coordinate Jacobian basis
    (e_i = sum_a frame_coeffs[i, a] d_a f), which the intrinsic curvature
    route needs.
    """

    u: Array
    p: Array
    tangent_frame: Array
    normal_frame: Array
    h: Array
    metric: Array
    j: Array
    jacobian: Array
    frame_coeffs: Array
    lock: Array | None = None

    @property
    def n(self) -> int:
        return self.tangent_frame.shape[0]

    @property
    def codim(self) -> int:
        return self.normal_frame.shape[0]

    @property
    def induced_metric(self) -> Array:
        # identity by construction in the orthonormal frame
        return np.eye(self.n)

    def joint_frame(self) -> Array:
        return np.vstack([self.tangent_frame, self.normal_frame])


def jacobian_at(imm: Immersion, u, policy: FdPolicy = DEFAULT_FD_POLICY) -> Array:
    """Columns are the pushed-forward coordinate directions d_i f (2m x n)."""
    u = np.asarray(u, dtype=float)
    cols = [fd_derivative(imm.map, u, axis=i, order=1, policy=policy)
            for i in range(imm.param_dim)]
    return np.array(cols).T


def _hessian_at(imm: Immersion, u, policy: FdPolicy) -> Array:
    """Hess[i, j] = second partials of the map, shape (n, n, 2m), symmetric."""
    u = np.asarray(u, dtype=float)
    n = imm.param_dim
    hess = np.zeros((n, n, imm.ambient_real_dim))
    for i in range(n):
        hess[i, i] = fd_derivative(imm.map, u, axis=i, order=2, policy=policy)
    for i in range(n):
        def di(q, _i=i):
            return fd_derivative(imm.map, q, axis=_i, order=1, policy=policy)
        for j in range(i + 1, n):
            mixed = fd_derivative(di, u, axis=j, order=1, policy=policy)
            hess[i, j] = mixed
            hess[j, i] = mixed
    return hess


def frames_at(imm: Immersion, amb: AmbientManifold, u, lock=None,
              policy: FdPolicy = DEFAULT_FD_POLICY,
              hessian_policy: FdPolicy = HESSIAN_FD_POLICY) -> FramedPoint:
    """Build the framed point at parameter value ``u``.

    ``lock``, if given, must be an ambient vector lying in the tangent space;
    it becomes e_1 after normalization. The tangent frame otherwise follows
    the Jacobian column order, and the normal frame completes the basis.
    """
    u = np.asarray(u, dtype=float)
    p = imm(u)
    g = amb.metric(p)
    j = amb.j(p)
    jac = jacobian_at(imm, u, policy)
    n = imm.param_dim

    svals = np.linalg.svd(jac, compute_uv=False)
    if svals[-1] <= 1e-8:
        raise DegeneracyError(
            f"immersion is degenerate at u={u.tolist()}: smallest Jacobian "
            f"singular value {svals[-1]:.3e}")

    seeds = []
    if lock is not None:
        lock = np.asarray(lock, dtype=float)
        coeff, *_ = np.linalg.lstsq(jac, lock, rcond=None)
        resid = lock - jac @ coeff
        rn = float(np.sqrt(resid @ g @ resid))
        ln = float(np.sqrt(lock @ g @ lock))
        if rn > 1e-8 * max(ln, 1.0):
            raise InputError(
                f"lock direction is not tangent (normal residual {rn:.3e})")
        seeds.append(lock)
    seeds.extend(jac.T)

    # With a lock the seed list is overcomplete; keep the first n independent
    # outputs in order.
    rows: list[Array] = []
    for v in seeds:
        w = np.array(v, dtype=float)
        for _ in range(2):
            for e in rows:
                w = w - (e @ g @ w) * e
        nrm = float(np.sqrt(max(w @ g @ w, 0.0)))
        if nrm < 1e-10:
            continue
        rows.append(w / nrm)
        if len(rows) == n:
            break
    if len(rows) < n:
        raise DegeneracyError("could not build a full tangent frame")
    tangent = np.array(rows)

    full = gram_schmidt(tangent, g, auto_complete=True)
    normal = full[n:]

    # frame coefficients in the Jacobian basis: jac @ beta_i = e_i
    beta = np.linalg.lstsq(jac, tangent.T, rcond=None)[0].T

    h = _second_fundamental_form(imm, amb, u, p, g, jac, tangent, normal, beta,
                                 hessian_policy)
    return FramedPoint(u=u, p=p, tangent_frame=tangent, normal_frame=normal,
                       h=h, metric=g, j=j, jacobian=jac, frame_coeffs=beta,
                       lock=None if lock is None else tangent[0].copy())


def _second_fundamental_form(imm, amb, u, p, g, jac, tangent, normal, beta,
                             hessian_policy) -> Array:
    hess = _hessian_at(imm, u, hessian_policy)
    gamma = christoffels_at(amb, p)
    # Q[a, b] = Hess_ab + Gamma(p)[d_a f, d_b f], ambient-vector valued
    corr = np.einsum("kbc,bi,cj->ijk", gamma, jac, jac)
    q = hess + corr
    # normal components in coordinate slots, then transform to the frame
    hq = np.einsum("rk,abk->rab", normal @ g, q)
    return np.einsum("ia,jb,rab->rij", beta, beta, hq)


def second_fundamental_form(fp: FramedPoint, imm: Immersion,
                            amb: AmbientManifold,
                            hessian_policy: FdPolicy = HESSIAN_FD_POLICY) -> Array:
    """Recompute h^r_ij for the frames stored on ``fp`` (shape (2m-n, n, n))."""
    return _second_fundamental_form(imm, amb, fp.u, fp.p, fp.metric,
                                    fp.jacobian, fp.tangent_frame,
                                    fp.normal_frame, fp.frame_coeffs,
                                    hessian_policy)


def shape_operator(fp: FramedPoint, r: int) -> Array:
    """A_r in the orthonormal tangent frame; equals the h-slice of normal r."""
    if not 0 <= r < fp.codim:
        raise IndexError(f"normal index {r} out of range [0, {fp.codim})")
    return np.array(fp.h[r])


def mean_curvature(fp: FramedPoint) -> tuple[Array, float]:
    """Mean curvature vector (ambient coordinates) and its squared norm."""
    n = fp.n
    comps = np.trace(fp.h, axis1=1, axis2=2) / n
    vec = comps @ fp.normal_frame
    return vec, float(comps @ comps)


def h_norm_sq(fp: FramedPoint) -> float:
    """Squared norm of the second fundamental form, sum over all slots."""
    return float(np.sum(fp.h**2))


def gauss_residual(fp: FramedPoint, imm: Immersion, amb: AmbientManifold,
                   indices: tuple[int, int, int, int]) -> float:
    """Gauss-equation defect for one frame slot (X, Y, Z, W).

    Compares ambient curvature against intrinsically computed curvature plus
    the h-quadratic terms, under the sign convention fixed in `ambient`
    (sectional slots satisfy K_ij = Kbar_ij + h_ii h_jj - h_ij^2).
    """
    from .invariants import intrinsic_curvature_frame

    x, y, z, w = indices
    e = fp.tangent_frame
    riem = riemann_at(amb, fp.p).riemann
    rbar = float(np.einsum("abcd,a,b,c,d->", riem, e[x], e[y], e[z], e[w]))
    rint = intrinsic_curvature_frame(fp, imm, amb)[x, y, z, w]
    h = fp.h
    hxw_yz = float(np.dot(h[:, x, w], h[:, y, z]))
    hxz_yw = float(np.dot(h[:, x, z], h[:, y, w]))
    return abs(rbar - rint + hxw_yz - hxz_yw)


# ---------------------------------------------------------------------------
# built-in immersion catalogue (all live in the 4-real-dimensional chart of an
# m = 2 ambient; closed-form invariants in the docstrings serve as oracles)

def _plane_map(theta: float):
    st, ct = np.sin(theta), np.cos(theta)

    def f(u):
        return np.array([u[0], u[1] * st, u[1] * ct, 0.0])

    return f


def slant_plane(theta: float) -> Immersion:
    """Flat plane meeting J at constant angle ``theta``.

    theta = 0 is the complex line (u, 0, v, 0); theta = pi/2 the totally real
    plane (u, v, 0, 0). Totally geodesic in the flat ambient: h = 0, H = 0,
    intrinsic curvature 0, ||P||^2 = 2 cos^2(theta).
    """
    return Immersion(param_dim=2, ambient_real_dim=4, map=_plane_map(theta),
                     name=f"slant-plane(theta={theta:g})", kind="builtin",
                     params={"theta": float(theta)})


def complex_line_plane() -> Immersion:
    """The complex line z2 = 0: invariant submanifold, slant angle 0."""
    imm = slant_plane(0.0)
    return Immersion(param_dim=2, ambient_real_dim=4, map=imm.map,
                     name="complex-line-plane", kind="builtin", params={})


def totally_real_plane() -> Immersion:
    """The real plane y = 0: anti-invariant submanifold, slant angle pi/2."""
    imm = slant_plane(np.pi / 2)
    return Immersion(param_dim=2, ambient_real_dim=4, map=imm.map,
                     name="totally-real-plane", kind="builtin", params={})


def sphere(r: float = 1.0) -> Immersion:
    """Round 2-sphere of radius r inside the (x1, x2, y1) hyperplane.

    Oracles: h^r_ij = (1/r) delta_ij against the inward normal, ||H||^2 = 1/r^2,
    ||h||^2 = 2/r^2, K = 1/r^2, Ric(X) = 1/r^2, rho = 1/r^2, N_p = {0}.
    Chart (u, v) = (colatitude, longitude); keep u away from 0 and pi.
    """
    def f(u):
        su, cu = np.sin(u[0]), np.cos(u[0])
        sv, cv = np.sin(u[1]), np.cos(u[1])
        return np.array([r * su * cv, r * su * sv, r * cu, 0.0])

    return Immersion(param_dim=2, ambient_real_dim=4, map=f, name="sphere",
                     kind="builtin", params={"r": float(r)})


def cylinder(r: float = 1.0) -> Immersion:
    """Circular cylinder of radius r, axis along y1.

    Oracles: principal curvatures {1/r, 0}, ||H||^2 = 1/(4 r^2),
    ||h||^2 = 1/r^2, K = 0, rho = 0, N_p = axis direction.
    """
    def f(u):
        return np.array([r * np.cos(u[0]), r * np.sin(u[0]), u[1], 0.0])

    return Immersion(param_dim=2, ambient_real_dim=4, map=f, name="cylinder",
                     kind="builtin", params={"r": float(r)})


def torus(r1: float = 1.0, r2: float = 1.0) -> Immersion:
    """Product of circles z1 = r1 e^{iu}, z2 = r2 e^{iv}: flat and anti-invariant.

    Oracles: K = 0, rho = 0, ||H||^2 = (1/r1^2 + 1/r2^2)/4,
    ||h||^2 = 1/r1^2 + 1/r2^2, slant angle pi/2, N_p = {0}.
    """
    def f(u):
        return np.array([r1 * np.cos(u[0]), r2 * np.cos(u[1]),
                         r1 * np.sin(u[0]), r2 * np.sin(u[1])])

    return Immersion(param_dim=2, ambient_real_dim=4, map=f, name="torus",
                     kind="builtin", params={"r1": float(r1), "r2": float(r2)})


BUILTIN_IMMERSIONS: dict[str, Callable[..., Immersion]] = {
    "sphere": sphere,
    "cylinder": cylinder,
    "torus": torus,
    "complex-line-plane": complex_line_plane,
    "totally-real-plane": totally_real_plane,
    "slant-plane": slant_plane,
}

# sensible parameter-domain sample grids per fixture: (lo, hi, count) per axis
DEFAULT_GRIDS: dict[str, tuple[tuple[float, float, int], ...]] = {
    "sphere": ((0.5, 2.6, 3), (0.3, 5.9, 3)),
    "cylinder": ((0.1, 6.0, 3), (-1.0, 1.0, 3)),
    "torus": ((0.2, 5.9, 3), (0.4, 5.5, 3)),
    "complex-line-plane": ((-1.0, 1.0, 3), (-1.0, 1.0, 3)),
    "totally-real-plane": ((-1.0, 1.0, 3), (-1.0, 1.0, 3)),
    "slant-plane": ((-1.0, 1.0, 3), (-1.0, 1.0, 3)),
}


def builtin_immersion(name: str, **params) -> Immersion:
    if name not in BUILTIN_IMMERSIONS:
        known = ", ".join(sorted(BUILTIN_IMMERSIONS))
        raise InputError(f"unknown builtin immersion {name!r}; known: {known}")
    if name == "slant-plane" and "theta" not in params:
        params["theta"] = np.pi / 3
    return BUILTIN_IMMERSIONS[name](**params)
