"""Scalings of finite frames.

A scaling of {phi_i} is a nonnegative weight vector w with
sum_i w_i phi_i phi_i^* = I_d. After vectorizing Hermitian matrices this is
the real linear system ``A w = vec(I_d)`` with A the D x n matrix of
vectorized outer products.

Two regimes:

* independent outer products: the system has at most one solution, so one
  least-squares solve decides scalability;
* dependent outer products: for a unit-norm frame the set
  P = {w >= 0 : A w = vec(I_d)/d} is a bounded polytope (its points sum
  to 1) whose vertices are exactly the minimal scalings divided by d. We
  enumerate them as basic feasible solutions.

Frames that are not unit norm are normalized internally; every result that
leaves this module as an ``ExactScaling`` is in the caller's coordinates.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

import numpy as np
from scipy.optimize import nnls

from .errors import DecompositionError, ExponentialGuardError, RoutingError, ValidationError
from .frames import (
    DEFAULT_MAX_N,
    Frame,
    normalize_frame,
    outer_product_columns,
    vector_rank,
)
from .hermitian import (
    DEFAULT_TOL,
    HermitianMatrix,
    Tolerances,
    least_squares,
    numerical_rank,
    vectorize,
)

log = logging.getLogger(__name__)


class ScalingKind(enum.Enum):
    EXACT = "ExactScaling"
    POLYTOPE_POINT = "PolytopePoint"


class ScalingStatus(enum.Enum):
    NOT_SCALABLE = "NotScalable"
    UNIQUE = "UniqueScaling"
    POLYTOPE = "PolytopeOfScalings"


def _readonly(a) -> np.ndarray:
    a = np.array(a, dtype=np.float64, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class ScalingMatrix:
    """The operator w -> sum_i w_i phi_i phi_i^* as a D x n real matrix."""

    columns: np.ndarray
    target: np.ndarray
    d: int

    @property
    def D(self) -> int:
        return self.columns.shape[0]

    @property
    def n(self) -> int:
        return self.columns.shape[1]

    def apply(self, w) -> np.ndarray:
        return self.columns @ np.asarray(w, dtype=np.float64)

    def rank(self, tol: Tolerances = DEFAULT_TOL) -> int:
        return numerical_rank(self.columns, tol)


@dataclass(frozen=True, eq=False)
class ScalingVector:
    weights: np.ndarray
    kind: ScalingKind = ScalingKind.EXACT

    def __post_init__(self):
        object.__setattr__(self, "weights", _readonly(self.weights))

    @property
    def n(self) -> int:
        return self.weights.size

    def support(self, tol: Tolerances = DEFAULT_TOL) -> tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.weights > tol.nonneg_abs))

    def total(self) -> float:
        return float(self.weights.sum())

    def __eq__(self, other):
        if not isinstance(other, ScalingVector):
            return NotImplemented
        return self.kind is other.kind and np.array_equal(self.weights, other.weights)

    def __repr__(self):
        return f"ScalingVector({self.kind.value}, {np.round(self.weights, 12).tolist()})"


@dataclass(frozen=True)
class ScalingPolytope:
    """Vertices of P for the unit-norm version of a frame.

    ``vertices`` live in unit-norm coordinates (each sums to 1);
    ``scaling(k)`` maps vertex k back to a scaling of the original frame.
    """

    n: int
    d: int
    vertices: tuple[ScalingVector, ...]
    supports: tuple[tuple[int, ...], ...]
    norms: np.ndarray
    residuals: tuple[float, ...] = ()

    @property
    def feasible(self) -> bool:
        return len(self.vertices) > 0

    def vertex_matrix(self) -> np.ndarray:
        """n x K matrix whose columns are the vertices."""
        if not self.vertices:
            return np.zeros((self.n, 0))
        return np.column_stack([v.weights for v in self.vertices])

    def scaling(self, k: int) -> ScalingVector:
        return polytope_point_to_scaling(self.vertices[k].weights, self.d, self.norms)

    def scalings(self) -> list[ScalingVector]:
        return [self.scaling(k) for k in range(len(self.vertices))]

    def dimension(self, tol: Tolerances = DEFAULT_TOL) -> int:
        """Affine dimension of P (-1 when empty)."""
        if not self.vertices:
            return -1
        V = self.vertex_matrix()
        return numerical_rank(np.vstack([V, np.ones((1, V.shape[1]))]), tol) - 1


@dataclass(frozen=True)
class ScalingOutcome:
    status: ScalingStatus
    scaling: ScalingVector | None = None
    polytope: ScalingPolytope | None = None
    diagnostics: dict[str, Any] = field(default_factory=dict)

    @property
    def scalable(self) -> bool:
        return self.status is not ScalingStatus.NOT_SCALABLE


def polytope_point_to_scaling(u, d: int, norms) -> ScalingVector:
    """d * u rescaled from unit-norm coordinates to the original frame."""
    norms = np.asarray(norms, dtype=np.float64)
    return ScalingVector(d * np.asarray(u, dtype=np.float64) / norms**2, ScalingKind.EXACT)


def scaling_to_polytope_point(w, d: int, norms) -> np.ndarray:
    norms = np.asarray(norms, dtype=np.float64)
    return np.asarray(w, dtype=np.float64) * norms**2 / d


def build_scaling_matrix(f: Frame) -> ScalingMatrix:
    """Columns vec(phi_i phi_i^*), target vec(I_d)."""
    target = vectorize(HermitianMatrix.identity(f.d, f.field), f.vec)
    return ScalingMatrix(_readonly(outer_product_columns(f)), _readonly(target), f.d)


def _weights_of(w, n: int) -> np.ndarray:
    if isinstance(w, ScalingVector):
        w = w.weights
    w = np.asarray(w, dtype=np.float64).ravel()
    if w.size != n:
        raise ValidationError(f"expected {n} weights, got {w.size}")
    return w


def verify_scaling(f: Frame, w, tol: Tolerances = DEFAULT_TOL) -> tuple[float, bool]:
    """Frobenius residual ||sum_i w_i phi_i phi_i^* - I_d|| and whether w is a scaling."""
    w = _weights_of(w, f.n)
    V = f.vectors
    S = (V.T * w) @ V.conj()
    residual = float(np.linalg.norm(S - np.eye(f.d)))
    ok = residual <= tol.residual_abs and float(w.min()) >= -tol.nonneg_abs
    return residual, ok


def _require_scaling(f: Frame, w, tol: Tolerances) -> np.ndarray:
    w = _weights_of(w, f.n)
    residual, ok = verify_scaling(f, w, tol)
    if not ok:
        raise ValidationError(
            f"weights are not a scaling (residual {residual:.3e}, min weight {w.min():.3e})"
        )
    return np.where(w > tol.nonneg_abs, w, 0.0)


def solve_unique_scaling(f: Frame, tol: Tolerances = DEFAULT_TOL) -> ScalingOutcome:
    """Decide scalability when the outer products are linearly independent.

    The linear system then has no solution or exactly one; the frame is
    scalable iff that solution exists and is nonnegative.
    """
    A = build_scaling_matrix(f)
    tol.check_dimension(A.D)
    rank = A.rank(tol) if f.n <= A.D else -1
    if rank != f.n:
        raise RoutingError(
            f"outer products are dependent (rank {max(rank, 0)} < n={f.n}); "
            "use enumerate_minimal_scalings"
        )
    w, residual = least_squares(A.columns, A.target)
    diag = {
        "outer_products_independent": True,
        "spans": vector_rank(f, range(f.n), tol) == f.d,
        "residual": residual,
        "min_weight": float(w.min()),
    }
    if residual > tol.residual_abs:
        diag["reason"] = "no solution"
        return ScalingOutcome(ScalingStatus.NOT_SCALABLE, diagnostics=diag)
    if w.min() < -tol.nonneg_abs:
        diag["reason"] = "negative weight"
        return ScalingOutcome(ScalingStatus.NOT_SCALABLE, diagnostics=diag)
    w = np.clip(w, 0.0, None)
    return ScalingOutcome(ScalingStatus.UNIQUE, ScalingVector(w, ScalingKind.EXACT), diagnostics=diag)


def enumerate_minimal_scalings(
    f: Frame,
    tol: Tolerances = DEFAULT_TOL,
    max_n: int = DEFAULT_MAX_N,
    force: bool = False,
) -> ScalingPolytope:
    """All vertices of P, i.e. all minimal scalings divided by d.

    Supports are visited by increasing size up to rank(A). A support is a
    vertex iff its outer products are independent and the restricted system
    A_I w_I = vec(I_d)/d has a strictly positive solution. Supersets of an
    accepted support are skipped: they cannot be minimal.
    """
    if f.n > max_n and not force:
        raise ExponentialGuardError(f.n, max_n, "vertex enumeration")
    unit, norms = normalize_frame(f)
    A = build_scaling_matrix(unit)
    tol.check_dimension(A.D)
    target = A.target / f.d
    rank = A.rank(tol)

    found: list[tuple[tuple[int, ...], np.ndarray, float]] = []
    accepted_masks: list[int] = []
    for size in range(1, rank + 1):
        for support in combinations(range(f.n), size):
            mask = sum(1 << i for i in support)
            if any(m & mask == m for m in accepted_masks):
                continue
            cols = A.columns[:, support]
            if numerical_rank(cols, tol) < size:
                continue
            x, residual = least_squares(cols, target)
            if residual > tol.residual_abs or x.min() <= tol.nonneg_abs:
                continue
            w = np.zeros(f.n)
            w[list(support)] = x
            if any(np.max(np.abs(w - other)) <= tol.dedup_abs for _, other, _ in found):
                continue
            found.append((support, w, residual))
            accepted_masks.append(mask)

    found.sort(key=lambda item: (item[0], tuple(item[1])))
    log.debug("enumerated %d vertices over n=%d, rank=%d", len(found), f.n, rank)
    return ScalingPolytope(
        n=f.n,
        d=f.d,
        vertices=tuple(ScalingVector(w, ScalingKind.POLYTOPE_POINT) for _, w, _ in found),
        supports=tuple(s for s, _, _ in found),
        norms=_readonly(norms),
        residuals=tuple(r for _, _, r in found),
    )


def scaling_outcome(
    f: Frame,
    tol: Tolerances = DEFAULT_TOL,
    max_n: int = DEFAULT_MAX_N,
    force: bool = False,
) -> ScalingOutcome:
    """Route to the unique solve or to vertex enumeration and report the result."""
    A = build_scaling_matrix(f)
    independent = f.n <= A.D and A.rank(tol) == f.n
    if independent:
        return solve_unique_scaling(f, tol)
    P = enumerate_minimal_scalings(f, tol, max_n, force)
    diag = {
        "outer_products_independent": False,
        "spans": vector_rank(f, range(f.n), tol) == f.d,
        "vertex_count": len(P.vertices),
    }
    if not P.feasible:
        diag["reason"] = "empty polytope"
        return ScalingOutcome(ScalingStatus.NOT_SCALABLE, polytope=P, diagnostics=diag)
    return ScalingOutcome(ScalingStatus.POLYTOPE, P.scaling(0), P, diag)


def is_scalable(
    f: Frame,
    tol: Tolerances = DEFAULT_TOL,
    max_n: int = DEFAULT_MAX_N,
    force: bool = False,
) -> tuple[bool, ScalingVector | None]:
    """Whether f is scalable, with a witness scaling when it is."""
    out = scaling_outcome(f, tol, max_n, force)
    return out.scalable, out.scaling


def is_minimal_scaling(
    f: Frame, w, tol: Tolerances = DEFAULT_TOL, max_n: int = DEFAULT_MAX_N
) -> bool:
    """True iff no proper subset of supp(w) indexes a scalable subframe.

    Scalability is inherited by supersets (pad with zero weights), so it is
    enough to test the subsets that drop a single support index.
    """
    w = _require_scaling(f, w, tol)
    support = np.flatnonzero(w > tol.nonneg_abs)
    if support.size - 1 < f.d:
        return True
    for drop in range(support.size):
        rest = np.delete(support, drop)
        if is_scalable(f.subframe(rest), tol, max_n)[0]:
            return False
    return True


def _null_direction(M: np.ndarray) -> np.ndarray:
    """A unit null vector of M (right singular vector of the smallest singular value)."""
    _, _, vh = np.linalg.svd(M)
    z = vh[-1].real
    lead = np.flatnonzero(np.abs(z) > 1e-12)
    if lead.size and z[lead[0]] < 0:
        z = -z
    return z


def _pivot_to_independent(M: np.ndarray, x: np.ndarray, tol: Tolerances) -> np.ndarray:
    """Move x >= 0 along null directions of M until its support columns are independent.

    Each step zeroes at least one coordinate while keeping M x fixed and
    x >= 0; ties drop the smallest index.
    """
    x = x.copy()
    while True:
        support = np.flatnonzero(x > 0)
        if support.size == 0:
            return x
        cols = M[:, support]
        if numerical_rank(cols, tol) == support.size:
            return x
        z = _null_direction(cols)
        if not np.any(z > 1e-12):
            z = -z
        pos = z > 1e-12
        ratios = np.full(support.size, np.inf)
        ratios[pos] = x[support][pos] / z[pos]
        hit = int(np.argmin(ratios))
        x[support] = x[support] - ratios[hit] * z
        x[support[hit]] = 0.0
        x[np.abs(x) <= tol.nonneg_abs * 1e-3] = 0.0
        x = np.clip(x, 0.0, None)


def caratheodory_reduce(f: Frame, w, tol: Tolerances = DEFAULT_TOL) -> ScalingVector:
    """A scaling supported on a subset of supp(w) with independent outer products."""
    w = _require_scaling(f, w, tol)
    A = build_scaling_matrix(f)
    x = _pivot_to_independent(A.columns, w, tol)
    # re-solve on the final support to shed the drift accumulated by pivoting
    support = np.flatnonzero(x > 0)
    sol, _ = least_squares(A.columns[:, support], A.target)
    out = np.zeros(f.n)
    out[support] = np.clip(sol, 0.0, None)
    residual, ok = verify_scaling(f, out, tol)
    if not ok:
        raise ValidationError(f"Caratheodory reduction lost feasibility (residual {residual:.3e})")
    return ScalingVector(out, ScalingKind.EXACT)


def decompose_scaling(
    f: Frame, w, P: ScalingPolytope, tol: Tolerances = DEFAULT_TOL
) -> list[tuple[int, float]]:
    """Write a scaling as a convex combination of the vertices of P.

    Returns ``[(vertex_index, coefficient), ...]`` with positive coefficients
    summing to 1, using at most dim(P) + 1 vertices.
    """
    w = _require_scaling(f, w, tol)
    if not P.feasible:
        raise DecompositionError("polytope has no vertices")
    u = scaling_to_polytope_point(w, f.d, P.norms)
    V = P.vertex_matrix()
    K = V.shape[1]
    # the sum row makes the combination convex; its weight only affects conditioning
    M = np.vstack([V, np.ones((1, K))])
    rhs = np.concatenate([u, [1.0]])
    t, _ = nnls(M, rhs)
    t[t <= tol.nonneg_abs] = 0.0
    t = _pivot_to_independent(M, t, tol)
    support = np.flatnonzero(t > 0)
    if support.size:
        sol, _ = least_squares(M[:, support], rhs)
        if sol.min() >= 0:
            t = np.zeros(K)
            t[support] = sol
    err = float(np.max(np.abs(V @ t - u))) if K else np.inf
    if err > 1e-8 or abs(t.sum() - 1.0) > 1e-8:
        raise DecompositionError(f"no convex decomposition within tolerance (error {err:.3e})")
    return [(int(k), float(t[k])) for k in np.flatnonzero(t > 0)]
