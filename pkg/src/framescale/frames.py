"""Frames and frame-level diagnostics.

Covers the frame operator and frame bounds, linear independence of the
outer products, spark / full spark of the vectors and of their outer
products, the complement property, and seeded random frames.

The spark and complement-property searches are exhaustive and therefore
exponential in n; they refuse to run past ``max_n`` vectors unless forced.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import DimensionError, ExponentialGuardError
from .hermitian import (
    DEFAULT_TOL,
    HermitianMatrix,
    RealVectorization,
    ScalarField,
    Tolerances,
    numerical_rank,
    vectorize,
    outer_product,
)

DEFAULT_MAX_N = 24
ZERO_NORM = 1e-12


@dataclass(frozen=True, eq=False)
class Frame:
    """An ordered collection of n nonzero vectors in R^d or C^d.

    The vectors need not span; use ``tightness(f).is_frame`` to ask.
    ``vectors`` is stored as a read-only n x d array (row i is phi_i).
    """

    vectors: np.ndarray
    field: ScalarField = ScalarField.COMPLEX
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        fld = ScalarField.parse(self.field)
        a = np.asarray(self.vectors)
        if a.ndim == 1:
            a = a[None, :]
        if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
            raise DimensionError(f"expected an n x d array of vectors, got shape {a.shape}")
        if fld is ScalarField.REAL:
            if np.iscomplexobj(a) and np.any(a.imag != 0):
                raise ValueError("real frame has vectors with nonzero imaginary part")
            a = a.real
        a = np.array(a, dtype=fld.dtype)
        if not np.all(np.isfinite(a)):
            raise ValueError("frame vectors contain non-finite entries")
        norms = np.linalg.norm(a, axis=1)
        bad = np.flatnonzero(norms <= ZERO_NORM)
        if bad.size:
            raise ValueError(f"frame vector {int(bad[0])} is zero")
        a.setflags(write=False)
        object.__setattr__(self, "vectors", a)
        object.__setattr__(self, "field", fld)
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != a.shape[0]:
                raise DimensionError(f"{len(labels)} labels given for {a.shape[0]} vectors")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_vectors(cls, vectors: Sequence, field=None, labels=None) -> "Frame":
        a = np.asarray(vectors)
        if field is None:
            field = ScalarField.COMPLEX if np.iscomplexobj(a) else ScalarField.REAL
        return cls(a, ScalarField.parse(field), labels)

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def d(self) -> int:
        return self.vectors.shape[1]

    @property
    def D(self) -> int:
        return self.field.real_dim(self.d)

    @property
    def vec(self) -> RealVectorization:
        return RealVectorization(self.d, self.field)

    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.vectors, axis=1)

    def subframe(self, indices) -> "Frame":
        idx = list(indices)
        labels = None if self.labels is None else tuple(self.labels[i] for i in idx)
        return Frame(self.vectors[idx], self.field, labels)

    def scaled(self, weights) -> "Frame":
        """The frame {sqrt(w_i) phi_i}; zero weights drop the vector."""
        w = np.asarray(weights, dtype=np.float64)
        keep = np.flatnonzero(w > 0)
        return Frame(np.sqrt(w[keep])[:, None] * self.vectors[keep], self.field)

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"Frame(d={self.d}, n={self.n}, field={self.field.value})"


@dataclass(frozen=True)
class TightnessInfo:
    is_frame: bool
    lower_bound: float
    upper_bound: float
    is_tight: bool
    is_parseval: bool

    def as_dict(self) -> dict:
        return {
            "A": self.lower_bound,
            "B": self.upper_bound,
            "is_frame": self.is_frame,
            "is_tight": self.is_tight,
            "is_parseval": self.is_parseval,
        }


def frame_operator(f: Frame) -> HermitianMatrix:
    """S = sum_i phi_i phi_i^*."""
    V = f.vectors
    return HermitianMatrix(V.T @ V.conj(), f.field)


def tightness(f: Frame, tol: Tolerances = DEFAULT_TOL) -> TightnessInfo:
    """Optimal frame bounds A <= B from the spectrum of the frame operator."""
    eig = frame_operator(f).eigenvalues()
    B = float(eig[-1])
    is_frame = vector_rank(f, range(f.n), tol) == f.d
    A = max(float(eig[0]), 0.0) if is_frame else 0.0
    tight = is_frame and abs(A - B) <= tol.residual_abs * max(1.0, B)
    parseval = tight and abs(A - 1.0) <= tol.residual_abs
    return TightnessInfo(is_frame, A, B, tight, parseval)


def outer_product_columns(f: Frame) -> np.ndarray:
    """D x n matrix whose column i is vectorize(phi_i phi_i^*)."""
    v = f.vec
    return np.column_stack([vectorize(outer_product(phi, f.field), v) for phi in f.vectors])


def vector_rank(f: Frame, indices, tol: Tolerances = DEFAULT_TOL) -> int:
    idx = list(indices)
    if not idx:
        return 0
    return numerical_rank(f.vectors[idx].T, tol)


def outer_products_independent(f: Frame, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True iff {phi_i phi_i^*} is linearly independent in the matrix space."""
    if f.n > f.D:
        return False
    return numerical_rank(outer_product_columns(f), tol) == f.n


def affinely_independent_outer_products(f: Frame, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Affine independence of {phi_i phi_i^*}: the differences from the first span n-1 dims."""
    if f.n == 1:
        return True
    cols = outer_product_columns(f)
    diffs = cols[:, 1:] - cols[:, :1]
    scale = float(np.linalg.norm(cols, 2))
    return numerical_rank(diffs, tol, reference=scale) == f.n - 1


def _guard(n: int, max_n: int, force: bool, what: str) -> None:
    if n > max_n and not force:
        raise ExponentialGuardError(n, max_n, what)


def _column_spark(M: np.ndarray, ambient: int, tol: Tolerances) -> int:
    """Smallest number of dependent columns of M, or k+1 if all independent.

    Any ambient+1 columns are dependent, so sizes beyond that are never searched.
    """
    k = M.shape[1]
    for size in range(1, min(k, ambient) + 1):
        for subset in combinations(range(k), size):
            if numerical_rank(M[:, subset], tol) < size:
                return size
    return ambient + 1 if k > ambient else k + 1


def spark(
    f: Frame, max_n: int = DEFAULT_MAX_N, tol: Tolerances = DEFAULT_TOL, force: bool = False
) -> int:
    """Size of the smallest linearly dependent subset of the vectors.

    Returns n + 1 when no subset is dependent.
    """
    _guard(f.n, max_n, force, "spark")
    return _column_spark(f.vectors.T, f.d, tol)


def is_full_spark(
    f: Frame, max_n: int = DEFAULT_MAX_N, tol: Tolerances = DEFAULT_TOL, force: bool = False
) -> bool:
    """spark == d + 1, checked as: every d-subset spans."""
    _guard(f.n, max_n, force, "full spark")
    if f.n < f.d:
        return False
    M = f.vectors.T
    return all(numerical_rank(M[:, s], tol) == f.d for s in combinations(range(f.n), f.d))


def outer_spark(
    f: Frame, max_n: int = DEFAULT_MAX_N, tol: Tolerances = DEFAULT_TOL, force: bool = False
) -> int:
    """Spark of the outer products {phi_i phi_i^*} in the D-dimensional matrix space."""
    _guard(f.n, max_n, force, "outer-product spark")
    return _column_spark(outer_product_columns(f), f.D, tol)


def complement_property(
    f: Frame, max_n: int = DEFAULT_MAX_N, tol: Tolerances = DEFAULT_TOL, force: bool = False
) -> bool:
    """For every index set I, either I or its complement spans the whole space.

    Each pair (I, I^c) is visited once by fixing vector 0 inside I.
    """
    _guard(f.n, max_n, force, "complement property")
    n, d = f.n, f.d
    if n < 2 * d - 1:
        return False
    M = f.vectors.T
    rest = range(1, n)
    spans: dict[tuple[int, ...], bool] = {}

    def spanning(idx: tuple[int, ...]) -> bool:
        if len(idx) < d:
            return False
        hit = spans.get(idx)
        if hit is None:
            hit = spans[idx] = numerical_rank(M[:, idx], tol) == d
        return hit

    for size in range(0, n):
        for others in combinations(rest, size):
            inside = (0,) + others
            outside = tuple(sorted(set(rest) - set(others)))
            if not (spanning(inside) or spanning(outside)):
                return False
    return True


def random_frame(
    d: int,
    n: int,
    field: ScalarField = ScalarField.COMPLEX,
    seed: int = 0,
    unit_norm: bool = False,
) -> Frame:
    """n i.i.d. standard Gaussian vectors in R^d or C^d from a seeded generator.

    Gaussian vectors avoid any fixed measure-zero set with probability one,
    so the outer products of n <= D of them are independent almost surely.
    """
    if d < 1 or n < 1:
        raise DimensionError(f"need d >= 1 and n >= 1, got d={d}, n={n}")
    field = ScalarField.parse(field)
    rng = np.random.default_rng(seed)
    if field is ScalarField.COMPLEX:
        V = rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))
    else:
        V = rng.standard_normal((n, d))
    if unit_norm:
        V = V / np.linalg.norm(V, axis=1, keepdims=True)
    return Frame(V, field)


def normalize_frame(f: Frame) -> tuple[Frame, np.ndarray]:
    """Return the unit-norm frame phi_i/||phi_i|| and the norms ||phi_i||.

    w is a scaling of the unit frame iff w / norms**2 is a scaling of f.
    """
    norms = f.norms()
    unit = f.vectors / norms[:, None]
    return Frame(unit, f.field, f.labels), norms
