"""Dense-matrix numerics underpinning the stability pipeline.

Column standardization, Pearson correlation, sample correlation matrices,
and a cyclic-Jacobi eigensolver for symmetric matrices. Everything works on
plain float64 numpy arrays; all returned containers are frozen value types
and every operation is a pure function.

Conventions fixed here and relied on everywhere else:

* sample variance uses the n-1 divisor,
* eigenvalues are sorted descending, ties keeping original index order,
* each eigenvector is unit norm with its largest-magnitude entry positive.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    LengthMismatchError,
    NoConvergenceError,
    NonFiniteError,
    NotSymmetricError,
    ZeroVarianceError,
)

# A column whose standard deviation is below this (relative to its mean) is
# constant up to float round-off: averaging identical values can leave
# variances near 1e-34 rather than exactly zero.
_CONSTANT_REL_TOL = 1e-12

_JACOBI_OFFDIAG_TOL = 1e-12
_JACOBI_MAX_SWEEPS = 100
_SYMMETRY_TOL = 1e-10


def _as_matrix(values) -> np.ndarray:
    a = np.array(values, dtype=float)
    if a.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-D matrix, got ndim={a.ndim}")
    return a


@dataclass(frozen=True)
class DataMatrix:
    """An n-by-p observation matrix with named, unit-tagged columns.

    Rows are observations (country-years), columns are indexes. Requires
    n >= 2 and p >= 1, all entries finite, and unique column names.
    """

    values: np.ndarray
    column_names: tuple
    column_units: tuple = ()

    def __post_init__(self):
        a = _as_matrix(self.values)
        a.setflags(write=False)
        object.__setattr__(self, "values", a)
        names = tuple(self.column_names)
        object.__setattr__(self, "column_names", names)
        units = tuple(self.column_units) if self.column_units else ("dimensionless",) * len(names)
        object.__setattr__(self, "column_units", units)

        n, p = a.shape
        if n < 2 or p < 1:
            raise DimensionMismatchError(f"need n >= 2 rows and p >= 1 columns, got {n}x{p}")
        if len(names) != p:
            raise DimensionMismatchError(f"{len(names)} column names for {p} columns")
        if len(units) != p:
            raise DimensionMismatchError(f"{len(units)} column units for {p} columns")
        if len(set(names)) != p:
            raise DimensionMismatchError("column names must be unique")
        bad = ~np.isfinite(a)
        if bad.any():
            i, j = np.argwhere(bad)[0]
            raise NonFiniteError(int(i), names[j])

    @property
    def n_rows(self) -> int:
        return self.values.shape[0]

    @property
    def n_cols(self) -> int:
        return self.values.shape[1]

    def column(self, name: str) -> np.ndarray:
        return self.values[:, self.column_names.index(name)]


@dataclass(frozen=True)
class ColumnStats:
    """Per-column means and sample variances (n-1 divisor)."""

    means: np.ndarray
    sample_variances: np.ndarray

    def __post_init__(self):
        m = np.array(self.means, dtype=float)
        v = np.array(self.sample_variances, dtype=float)
        m.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "means", m)
        object.__setattr__(self, "sample_variances", v)
        if m.shape != v.shape or m.ndim != 1:
            raise DimensionMismatchError("means and variances must be 1-D and equally long")
        if (v < 0).any():
            raise DimensionMismatchError("sample variances must be nonnegative")


@dataclass(frozen=True)
class SymmetricEigen:
    """Eigendecomposition of a symmetric matrix.

    ``eigenvalues`` is sorted descending; column i of ``eigenvectors`` is the
    unit-norm eigenvector paired with ``eigenvalues[i]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        w = np.array(self.eigenvalues, dtype=float)
        v = np.array(self.eigenvectors, dtype=float)
        w.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "eigenvalues", w)
        object.__setattr__(self, "eigenvectors", v)
        p = w.shape[0]
        if v.shape != (p, p):
            raise DimensionMismatchError("eigenvector matrix must be p x p")


def _is_constant(std: float, mean: float) -> bool:
    return std <= _CONSTANT_REL_TOL * max(1.0, abs(mean))


def column_stats(X: DataMatrix) -> ColumnStats:
    """Means and sample variances (n-1 divisor) of every column."""
    means = X.values.mean(axis=0)
    variances = X.values.var(axis=0, ddof=1)
    return ColumnStats(means=means, sample_variances=variances)


def standardize(X: DataMatrix) -> tuple[DataMatrix, ColumnStats]:
    """Center and scale every column to mean 0 and sample variance 1.

    z_ij = (x_ij - mean_j) / sqrt(var_j) with the n-1 variance divisor.
    Raises ZeroVarianceError for constant columns; standardized values have
    no unit, so output columns are tagged dimensionless.
    """
    stats = column_stats(X)
    stds = np.sqrt(stats.sample_variances)
    for j, name in enumerate(X.column_names):
        if _is_constant(stds[j], stats.means[j]):
            raise ZeroVarianceError(name)
    z = (X.values - stats.means) / stds
    Z = DataMatrix(values=z, column_names=X.column_names,
                   column_units=("dimensionless",) * X.n_cols)
    return Z, stats


def pearson(x, y) -> float:
    """Pearson product-moment correlation of two equal-length sequences."""
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if xa.ndim != 1 or ya.ndim != 1:
        raise DimensionMismatchError("pearson expects 1-D sequences")
    if xa.shape[0] != ya.shape[0]:
        raise LengthMismatchError(f"length {xa.shape[0]} vs {ya.shape[0]}")
    if xa.shape[0] < 2:
        raise LengthMismatchError("need at least 2 points")
    for name, arr in (("x", xa), ("y", ya)):
        bad = ~np.isfinite(arr)
        if bad.any():
            raise NonFiniteError(int(np.argwhere(bad)[0][0]), name)

    cx = xa - xa.mean()
    cy = ya - ya.mean()
    sx = float(np.sqrt(cx @ cx))
    sy = float(np.sqrt(cy @ cy))
    if _is_constant(sx, float(xa.mean())):
        raise ZeroVarianceError("x")
    if _is_constant(sy, float(ya.mean())):
        raise ZeroVarianceError("y")
    r = float(cx @ cy) / (sx * sy)
    return float(min(1.0, max(-1.0, r)))


def correlation_matrix(Z: DataMatrix) -> np.ndarray:
    """Sample correlation matrix of the columns of Z.

    Computed as pairwise Pearson coefficients of the raw columns, so the
    diagonal is exactly 1 regardless of any upstream standardization
    round-off. On standardized input this equals the n-1 covariance matrix.
    """
    a = Z.values
    if a.size == 0:
        raise DimensionMismatchError("empty matrix")
    p = Z.n_cols
    centered = a - a.mean(axis=0)
    norms = np.sqrt((centered * centered).sum(axis=0))
    for j, name in enumerate(Z.column_names):
        if _is_constant(norms[j], float(a[:, j].mean())):
            raise ZeroVarianceError(name)
    R = np.eye(p)
    for i in range(p):
        for j in range(i + 1, p):
            r = float(centered[:, i] @ centered[:, j]) / (norms[i] * norms[j])
            R[i, j] = R[j, i] = min(1.0, max(-1.0, r))
    return R


def _off_diagonal_norm(A: np.ndarray) -> float:
    off = A - np.diag(np.diag(A))
    return float(np.sqrt((off * off).sum()))


def symmetric_eigen(R) -> SymmetricEigen:
    """All eigenpairs of a symmetric matrix via cyclic Jacobi rotations.

    Sweeps rotate out each off-diagonal entry in turn until the off-diagonal
    Frobenius norm drops below 1e-12 (budget 100 sweeps, after which
    NoConvergenceError is raised; convergence is quadratic in practice).
    Rotations preserve the trace and keep the accumulated transform
    orthogonal, so the SymmetricEigen invariants hold by construction.
    """
    A = _as_matrix(R).copy()
    p = A.shape[0]
    if A.shape[1] != p:
        raise DimensionMismatchError(f"matrix must be square, got {A.shape}")
    bad = ~np.isfinite(A)
    if bad.any():
        i, j = np.argwhere(bad)[0]
        raise NonFiniteError(int(i), int(j))
    asym = float(np.abs(A - A.T).max())
    if asym > _SYMMETRY_TOL:
        raise NotSymmetricError(f"max asymmetry {asym:.3e} exceeds {_SYMMETRY_TOL:.0e}")
    A = (A + A.T) / 2.0

    V = np.eye(p)
    if p == 1:
        return SymmetricEigen(eigenvalues=np.array([A[0, 0]]), eigenvectors=V)

    converged = _off_diagonal_norm(A) < _JACOBI_OFFDIAG_TOL
    for _ in range(_JACOBI_MAX_SWEEPS):
        if converged:
            break
        for k in range(p - 1):
            for l in range(k + 1, p):
                akl = A[k, l]
                if akl == 0.0:
                    continue
                # Stable rotation angle: t = tan(theta) from the smaller root.
                theta = (A[l, l] - A[k, k]) / (2.0 * akl)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c

                row_k = A[k, :].copy()
                row_l = A[l, :].copy()
                A[k, :] = c * row_k - s * row_l
                A[l, :] = s * row_k + c * row_l
                col_k = A[:, k].copy()
                col_l = A[:, l].copy()
                A[:, k] = c * col_k - s * col_l
                A[:, l] = s * col_k + c * col_l
                A[k, l] = A[l, k] = 0.0

                vk = V[:, k].copy()
                V[:, k] = c * vk - s * V[:, l]
                V[:, l] = s * vk + c * V[:, l]
        converged = _off_diagonal_norm(A) < _JACOBI_OFFDIAG_TOL
    if not converged:
        raise NoConvergenceError(
            f"off-diagonal norm {_off_diagonal_norm(A):.3e} after "
            f"{_JACOBI_MAX_SWEEPS} sweeps")

    eigenvalues = np.diag(A).copy()
    # Descending order; the stable sort keeps tied eigenvalues in original
    # column order.
    order = np.argsort(-eigenvalues, kind="stable")
    eigenvalues = eigenvalues[order]
    vectors = V[:, order]
    for i in range(p):
        col = vectors[:, i]
        if col[int(np.argmax(np.abs(col)))] < 0:
            vectors[:, i] = -col
    return SymmetricEigen(eigenvalues=eigenvalues, eigenvectors=vectors)
