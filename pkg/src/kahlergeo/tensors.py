"""Dense multi-index arrays, metric-aware linear algebra, and controlled
finite differences.

Tensors are plain numpy arrays in row-major order, produced by :func:`tensor`,
which validates finiteness and freezes the buffer. Everything in this module
is pure; nothing mutates its inputs.

The finite-difference engine is deliberately small: central stencils of order
2 or 4, optionally sharpened by Richardson extrapolation. Both stencil
families have error series in even powers of the step, so each extrapolation
level cancels the leading term and gains two orders.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DegeneracyError, DimensionMismatchError, FieldEvaluationError

Array = np.ndarray

_SCHEMES = ("central-2", "central-4")


def tensor(data, dtype=float) -> Array:
    """Build an immutable dense tensor from nested sequences or an array.

    Raises ValueError if any entry is non-finite.
    """
    arr = np.array(data, dtype=dtype, order="C")
    if not np.all(np.isfinite(arr)):
        raise ValueError("tensor entries must be finite")
    arr.setflags(write=False)
    return arr


def contract(a: Array, b: Array, pairs: Sequence[tuple[int, int]]) -> Array:
    """Contract ``a`` with ``b`` over the listed axis pairs.

    ``pairs`` is a sequence of ``(axis_in_a, axis_in_b)``. The result shape is
    the uncontracted axes of ``a`` followed by those of ``b``, in their
    original order (the `numpy.tensordot` convention).
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    a_axes: list[int] = []
    b_axes: list[int] = []
    for ia, ib in pairs:
        if not 0 <= ia < a.ndim:
            raise DimensionMismatchError(
                f"axis {ia} out of range for left operand of rank {a.ndim}")
        if not 0 <= ib < b.ndim:
            raise DimensionMismatchError(
                f"axis {ib} out of range for right operand of rank {b.ndim}")
        if ia in a_axes or ib in b_axes:
            raise DimensionMismatchError(
                f"axis pair ({ia}, {ib}) repeats an already contracted axis")
        if a.shape[ia] != b.shape[ib]:
            raise DimensionMismatchError(
                f"axis {ia} of left operand has size {a.shape[ia]} but axis "
                f"{ib} of right operand has size {b.shape[ib]}")
        a_axes.append(ia)
        b_axes.append(ib)
    return np.tensordot(a, b, axes=(a_axes, b_axes))


def _inner(g: Array, u: Array, v: Array) -> float:
    return float(u @ g @ v)


def gram_schmidt(
    vectors,
    metric: Array,
    *,
    tol: float = 1e-10,
    auto_complete: bool = False,
    pivot_tol: float = 1e-8,
) -> Array:
    """Orthonormalize ``vectors`` with respect to an SPD ``metric``.

    Input order is preserved and the first output is the normalized first
    input; the calling conventions downstream rely on that (inequality checks
    pin the first frame vector to a chosen direction). Rank deficiency below
    ``tol`` raises :class:`DegeneracyError`.

    With ``auto_complete=True`` the orthonormal set is extended to a full
    basis using coordinate directions, picking at each step the candidate
    with the largest remaining metric norm and skipping candidates that
    project below ``pivot_tol``.

    Returns a ``(k, d)`` array whose rows are the orthonormal vectors.
    """
    g = np.asarray(metric, dtype=float)
    dim = g.shape[0]
    rows: list[Array] = []

    def project_out(v: Array) -> Array:
        w = np.array(v, dtype=float)
        # two passes of classical Gram-Schmidt for numerical orthogonality
        for _ in range(2):
            for e in rows:
                w = w - _inner(g, e, w) * e
        return w

    for v in vectors:
        v = np.asarray(v, dtype=float)
        scale = max(1.0, np.sqrt(abs(_inner(g, v, v))))
        w = project_out(v)
        nrm = np.sqrt(max(_inner(g, w, w), 0.0))
        if nrm < tol * scale:
            raise DegeneracyError(
                f"input vector {len(rows)} is dependent on its predecessors "
                f"(residual norm {nrm:.3e} below tolerance)")
        rows.append(w / nrm)

    if auto_complete:
        candidates = [np.eye(dim)[i] for i in range(dim)]
        while len(rows) < dim:
            best, best_nrm = None, 0.0
            for cand in candidates:
                w = project_out(cand)
                nrm = np.sqrt(max(_inner(g, w, w), 0.0))
                if nrm > best_nrm:
                    best, best_nrm = w, nrm
            if best is None or best_nrm < pivot_tol:
                raise DegeneracyError("cannot complete frame: no candidate "
                                      "direction has metric norm above threshold")
            rows.append(best / best_nrm)

    return np.array(rows)


@dataclass(frozen=True)
class FdPolicy:
    """Finite-difference policy: base step, stencil scheme, extrapolation depth.

    ``h0`` must lie in [1e-8, 1e-1] and ``richardson_levels`` in {0, 1, 2, 3}.
    """

    h0: float = 1e-4
    scheme: str = "central-4"
    richardson_levels: int = 1

    def __post_init__(self):
        if not 1e-8 <= self.h0 <= 1e-1:
            raise ValueError(f"h0 must lie in [1e-8, 1e-1], got {self.h0}")
        if self.scheme not in _SCHEMES:
            raise ValueError(f"scheme must be one of {_SCHEMES}, got {self.scheme!r}")
        if not 0 <= int(self.richardson_levels) <= 3:
            raise ValueError("richardson_levels must be a small non-negative "
                             f"integer (<= 3), got {self.richardson_levels}")

    @property
    def order(self) -> int:
        return 2 if self.scheme == "central-2" else 4


# Default chosen so curvature (two nested derivatives of a closed-form metric)
# keeps at least 6 significant digits on the built-in fixtures.
DEFAULT_FD_POLICY = FdPolicy(h0=1e-4, scheme="central-4", richardson_levels=1)

# offsets and weights per (scheme, derivative order); weights divide by h**order
_STENCILS = {
    ("central-2", 1): ((1, -1), (0.5, -0.5)),
    ("central-2", 2): ((1, 0, -1), (1.0, -2.0, 1.0)),
    ("central-4", 1): ((2, 1, -1, -2), (-1 / 12, 8 / 12, -8 / 12, 1 / 12)),
    ("central-4", 2): ((2, 1, 0, -1, -2),
                       (-1 / 12, 16 / 12, -30 / 12, 16 / 12, -1 / 12)),
}


def _stencil_eval(field, point, axis, order, scheme, h):
    offsets, weights = _STENCILS[(scheme, order)]
    acc = None
    for off, wgt in zip(offsets, weights):
        q = np.array(point, dtype=float)
        q[axis] += off * h
        val = np.asarray(field(q), dtype=float)
        if not np.all(np.isfinite(val)):
            raise FieldEvaluationError(
                "field returned a non-finite value inside the stencil", point=q)
        acc = wgt * val if acc is None else acc + wgt * val
    return acc / h**order


def fd_derivative(
    field: Callable[[Array], Array],
    point,
    axis: int,
    order: int = 1,
    policy: FdPolicy = DEFAULT_FD_POLICY,
) -> Array:
    """Partial derivative of ``field`` along ``axis`` at ``point``.

    ``order`` is 1 or 2. Richardson extrapolation is applied
    ``policy.richardson_levels`` times, each level halving the step and
    cancelling the leading error term of the (even-power) error series.
    """
    if order not in (1, 2):
        raise ValueError("derivative order must be 1 or 2")
    point = np.asarray(point, dtype=float)
    levels = policy.richardson_levels
    vals = [
        _stencil_eval(field, point, axis, order, policy.scheme,
                      policy.h0 / 2**i)
        for i in range(levels + 1)
    ]
    p = policy.order
    for j in range(1, levels + 1):
        # vals[i+1] uses half the step of vals[i]; cancel the h^(p+2(j-1)) term
        q = 2.0 ** (p + 2 * (j - 1))
        vals = [(q * vals[i + 1] - vals[i]) / (q - 1.0)
                for i in range(len(vals) - 1)]
    return vals[0]
