"""Hermitian matrices as a real inner-product space.

The d x d Hermitian matrices form a real vector space of dimension d**2
(d*(d+1)/2 for real symmetric matrices). ``vectorize`` maps them onto
R^D with an orthonormal basis, so that ``Trace(S @ T)`` becomes a plain dot
product and every downstream question reduces to real linear algebra.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import DimensionError

SQRT2 = math.sqrt(2.0)


class ScalarField(enum.Enum):
    REAL = "real"
    COMPLEX = "complex"

    def real_dim(self, d: int) -> int:
        """Real dimension of the d x d Hermitian (or symmetric) matrices."""
        return d * d if self is ScalarField.COMPLEX else d * (d + 1) // 2

    @property
    def dtype(self):
        return np.complex128 if self is ScalarField.COMPLEX else np.float64

    @classmethod
    def parse(cls, value) -> "ScalarField":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown field {value!r}; expected 'real' or 'complex'") from None


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds shared by every decision in the package."""

    rank_rel: float = 1e-10
    residual_abs: float = 1e-9
    nonneg_abs: float = 1e-9
    dedup_abs: float = 1e-8

    def __post_init__(self):
        for name in ("rank_rel", "residual_abs", "nonneg_abs", "dedup_abs"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"tolerance {name} must be positive and finite, got {value!r}")

    def check_dimension(self, D: int) -> None:
        eps = np.finfo(np.float64).eps
        if self.residual_abs < eps * D:
            raise ValueError(
                f"residual_abs={self.residual_abs!r} is below machine precision for D={D}"
            )

    def as_dict(self) -> dict:
        return {
            "rank_rel": self.rank_rel,
            "residual_abs": self.residual_abs,
            "nonneg_abs": self.nonneg_abs,
            "dedup_abs": self.dedup_abs,
        }


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """An immutable Hermitian (complex) or symmetric (real) matrix.

    Only the upper triangle of ``entries`` is read; the lower triangle is
    rebuilt as its conjugate so the result is Hermitian bit for bit.
    Inputs that are visibly non-Hermitian are rejected.
    """

    entries: np.ndarray
    field: ScalarField = ScalarField.COMPLEX

    def __post_init__(self):
        fld = ScalarField.parse(self.field)
        a = np.asarray(self.entries)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise DimensionError(f"expected a nonempty square matrix, got shape {a.shape}")
        if fld is ScalarField.REAL:
            if np.iscomplexobj(a) and np.any(a.imag != 0):
                raise ValueError("real symmetric matrix has complex entries")
            a = a.real
        a = a.astype(fld.dtype)
        scale = max(1.0, float(np.max(np.abs(a))))
        if not np.allclose(a, a.conj().T, rtol=0.0, atol=1e-10 * scale):
            raise ValueError("matrix is not Hermitian")
        upper = np.triu(a, 1)
        h = upper + upper.conj().T + np.diag(np.diag(a).real).astype(fld.dtype)
        object.__setattr__(self, "field", fld)
        object.__setattr__(self, "entries", _frozen(h))

    @property
    def d(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def identity(cls, d: int, field: ScalarField = ScalarField.COMPLEX) -> "HermitianMatrix":
        return cls(np.eye(d), field)

    @classmethod
    def zeros(cls, d: int, field: ScalarField = ScalarField.COMPLEX) -> "HermitianMatrix":
        return cls(np.zeros((d, d)), field)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)

    def __add__(self, other: "HermitianMatrix") -> "HermitianMatrix":
        _check_same_dim(self, other)
        return HermitianMatrix(self.entries + other.entries, _join(self.field, other.field))

    def __sub__(self, other: "HermitianMatrix") -> "HermitianMatrix":
        _check_same_dim(self, other)
        return HermitianMatrix(self.entries - other.entries, _join(self.field, other.field))

    def scaled(self, c: float) -> "HermitianMatrix":
        return HermitianMatrix(float(c) * self.entries, self.field)

    def frobenius_norm(self) -> float:
        return float(np.linalg.norm(self.entries))

    def trace(self) -> float:
        return float(np.trace(self.entries).real)

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.entries)

    def __eq__(self, other):
        if not isinstance(other, HermitianMatrix):
            return NotImplemented
        return self.d == other.d and bool(np.array_equal(self.entries, other.entries))

    def __hash__(self):
        return hash((self.d, self.entries.tobytes()))

    def __repr__(self):
        return f"HermitianMatrix(d={self.d}, field={self.field.value}, entries={self.entries.tolist()!r})"


def _join(a: ScalarField, b: ScalarField) -> ScalarField:
    return ScalarField.REAL if a is b is ScalarField.REAL else ScalarField.COMPLEX


def _check_same_dim(S: HermitianMatrix, T: HermitianMatrix) -> None:
    if S.d != T.d:
        raise DimensionError(f"dimension mismatch: {S.d} vs {T.d}")


@dataclass(frozen=True)
class RealVectorization:
    """Coordinates of d x d Hermitian matrices in R^D.

    Basis order: the diagonal entries S_ii, then for each i < j in row-major
    order sqrt(2)*Re(S_ij) followed (complex field only) by sqrt(2)*Im(S_ij).
    """

    d: int
    field: ScalarField = ScalarField.COMPLEX
    D: int = dc_field(init=False)

    def __post_init__(self):
        if self.d < 1:
            raise DimensionError(f"dimension must be positive, got {self.d}")
        fld = ScalarField.parse(self.field)
        object.__setattr__(self, "field", fld)
        object.__setattr__(self, "D", fld.real_dim(self.d))


def outer_product(x, field: ScalarField | None = None) -> HermitianMatrix:
    """Return x x^*, the rank-one projection onto span{x} scaled by ||x||^2."""
    x = np.asarray(x)
    if x.ndim != 1 or x.size < 1:
        raise DimensionError(f"expected a nonempty vector, got shape {x.shape}")
    if field is None:
        field = ScalarField.COMPLEX if np.iscomplexobj(x) else ScalarField.REAL
    field = ScalarField.parse(field)
    x = x.astype(field.dtype) if field is ScalarField.COMPLEX else x.real.astype(np.float64)
    return HermitianMatrix(np.outer(x, x.conj()), field)


def trace_inner(S: HermitianMatrix, T: HermitianMatrix) -> float:
    """Trace(S T), the Frobenius inner product on Hermitian matrices."""
    _check_same_dim(S, T)
    # Trace(ST) = sum_ij S_ij T_ji = sum_ij S_ij conj(T_ij) for Hermitian T
    return float(np.sum(S.entries * T.entries.conj()).real)


def vectorize(S: HermitianMatrix, v: RealVectorization | None = None) -> np.ndarray:
    """Coordinates of S in R^D under the fixed orthonormal basis."""
    if v is None:
        v = RealVectorization(S.d, S.field)
    if S.d != v.d:
        raise DimensionError(f"matrix is {S.d}x{S.d} but vectorization expects d={v.d}")
    if v.field is ScalarField.REAL and S.field is ScalarField.COMPLEX and np.any(S.entries.imag != 0):
        raise DimensionError("complex Hermitian matrix does not lie in the real symmetric space")
    a = S.entries
    out = np.empty(v.D, dtype=np.float64)
    out[: v.d] = np.diag(a).real
    iu, ju = np.triu_indices(v.d, 1)
    off = a[iu, ju]
    if v.field is ScalarField.COMPLEX:
        out[v.d :: 2] = SQRT2 * off.real
        out[v.d + 1 :: 2] = SQRT2 * off.imag
    else:
        out[v.d :] = SQRT2 * off.real
    return out


def devectorize(u, v: RealVectorization) -> HermitianMatrix:
    """Inverse of ``vectorize``."""
    u = np.asarray(u, dtype=np.float64)
    if u.ndim != 1 or u.size != v.D:
        raise DimensionError(f"expected a vector of length {v.D}, got shape {u.shape}")
    d = v.d
    a = np.zeros((d, d), dtype=v.field.dtype)
    a[np.diag_indices(d)] = u[:d]
    iu, ju = np.triu_indices(d, 1)
    if v.field is ScalarField.COMPLEX:
        a[iu, ju] = (u[d::2] + 1j * u[d + 1 :: 2]) / SQRT2
    else:
        a[iu, ju] = u[d:] / SQRT2
    return HermitianMatrix(a + np.triu(a, 1).conj().T, v.field)


def as_column_matrix(columns) -> np.ndarray:
    """Stack a list of equal-length vectors as the columns of a matrix."""
    if isinstance(columns, np.ndarray) and columns.ndim == 2:
        return columns
    cols = [np.asarray(c).ravel() for c in columns]
    if not cols:
        raise DimensionError("need at least one column")
    if len({c.size for c in cols}) != 1:
        raise DimensionError("columns have different lengths")
    return np.column_stack(cols)


def numerical_rank(columns, tol: Tolerances = DEFAULT_TOL, reference: float | None = None) -> int:
    """Number of singular values above ``tol.rank_rel`` times the largest.

    ``columns`` is a list of vectors or a 2-D array whose columns are the
    vectors. Complex vectors are accepted, giving the rank over C.
    ``reference`` replaces the largest singular value as the scale, for
    matrices (such as differences) whose own norm may be pure rounding.
    """
    M = as_column_matrix(columns)
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    scale = (s[0] if s.size else 0.0) if reference is None else reference
    if scale == 0.0:
        return 0
    return int(np.count_nonzero(s > tol.rank_rel * scale))


def least_squares(M, b):
    """Minimise ||M x - b||_2. Returns ``(x, residual)``.

    For rank-deficient M the minimum-norm minimiser is returned.
    """
    M = np.asarray(M, dtype=np.float64)
    if M.ndim == 1:
        M = M[:, None]
    b = np.asarray(b, dtype=np.float64)
    if M.shape[1] < 1:
        raise DimensionError("least_squares needs at least one column")
    if M.shape[0] != b.size:
        raise DimensionError(f"matrix has {M.shape[0]} rows but b has length {b.size}")
    x = np.linalg.lstsq(M, b, rcond=None)[0]
    return x, float(np.linalg.norm(M @ x - b))
